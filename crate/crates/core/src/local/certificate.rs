//! Local weight certificates: text format, the two validity conditions and
//! the resulting upper bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grid::{class_size, directions, Direction};
use crate::local::symmetry::{signed_permutations, Point};
use crate::scalar::{format_rational, parse_rational};
use crate::search::{self, Clause, Problem, Strategy};
use crate::word::Word;
use crate::{BoundReport, Provenance, Rational};

/// One weighted `(start, direction)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub point: Point,
    pub direction: Direction,
    pub weight: Rational,
}

/// A finitely supported nonnegative weight on `(start, direction)` pairs,
/// with the two constants it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCertificate {
    pub word: Word,
    pub dim: usize,
    pub entries: Vec<WeightEntry>,
    pub claimed_k: Rational,
    pub claimed_m: Rational,
    /// When set, only the cells of `window` vary and every other cell holds
    /// this letter.
    pub fixed_letter: Option<u8>,
    pub window: Option<Vec<Point>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionI {
    /// `per_class[j - 1]` is the normalized total weight in class `j`.
    pub per_class: Vec<Rational>,
    pub ok: bool,
}

/// Letters assigned to the varying cells of a local pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPattern {
    pub cells: BTreeMap<Point, u8>,
    /// Letter of every cell not listed, if the certificate fixes one.
    pub background: Option<u8>,
}

impl fmt::Display for LocalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.cells.keys().next().map_or(0, Vec::len);
        if d != 2 {
            for (p, &c) in &self.cells {
                let coords: Vec<String> = p.iter().map(i64::to_string).collect();
                writeln!(f, "{} {}", coords.join(" "), c as char)?;
            }
            return Ok(());
        }
        let xs = self.cells.keys().map(|p| p[0]);
        let ys = self.cells.keys().map(|p| p[1]);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let blank = self.background.map_or('.', |b| b as char);
        // y grows upwards, x to the right
        for y in (y0..=y1).rev() {
            let row: String =
                (x0..=x1).map(|x| self.cells.get(&vec![x, y]).map_or(blank, |&c| c as char)).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionII {
    /// Largest weighted appearance sum over all local patterns.
    pub max: Rational,
    pub witness: LocalPattern,
    pub ok: bool,
    pub varying_cells: usize,
    pub nodes: u64,
}

impl WeightCertificate {
    pub fn label(&self) -> String {
        format!("{}/d{}", self.word, self.dim)
    }

    pub fn total_weight(&self) -> Rational {
        self.entries.iter().map(|e| e.weight.clone()).sum()
    }

    /// Cells read by any supported entry.
    pub fn relevant_cells(&self) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for e in self.entries.iter().filter(|e| e.weight.is_positive()) {
            for i in 0..self.word.len() as i64 {
                out.insert(offset(&e.point, &e.direction, i));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.entries.iter().all(|e| e.weight.is_zero()) {
            return Err(Error::EmptySupport);
        }
        for e in &self.entries {
            if e.point.len() != self.dim || e.direction.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: e.point.len().max(e.direction.dim()),
                });
            }
            if e.weight.is_negative() {
                return Err(Error::CertificateInvalid(format!(
                    "negative weight {} at {:?}",
                    format_rational(&e.weight),
                    e.point
                )));
            }
        }
        if !self.claimed_k.is_positive() {
            return Err(Error::CertificateInvalid("K must be positive".into()));
        }
        if let Some(b) = self.fixed_letter {
            if !self.word.symbols().contains(&b) {
                return Err(Error::CertificateInvalid(format!(
                    "fixed letter {} does not occur in {}",
                    b as char, self.word
                )));
            }
        }
        if let Some(win) = &self.window {
            if win.iter().any(|p| p.len() != self.dim) {
                return Err(Error::DimensionMismatch { expected: self.dim, found: 0 });
            }
        }
        Ok(())
    }

    /// Varying cells: the window when a letter is fixed, otherwise every
    /// relevant cell.
    fn varying_cells(&self) -> Vec<Point> {
        match (self.fixed_letter, &self.window) {
            (Some(_), Some(w)) => {
                let set: BTreeSet<Point> = w.iter().cloned().collect();
                set.into_iter().collect()
            }
            (Some(_), None) => {
                let set: BTreeSet<Point> =
                    self.entries.iter().filter(|e| e.weight.is_positive()).map(|e| e.point.clone()).collect();
                set.into_iter().collect()
            }
            _ => self.relevant_cells().into_iter().collect(),
        }
    }
}

fn offset(p: &[i64], v: &Direction, i: i64) -> Point {
    p.iter().zip(v.components()).map(|(&a, &b)| a + i * b as i64).collect()
}

pub fn check_condition_i(cert: &WeightCertificate) -> Result<ConditionI> {
    cert.validate()?;
    let mut sums = vec![Rational::zero(); cert.dim];
    for e in &cert.entries {
        sums[e.direction.class() - 1] += e.weight.clone();
    }
    let per_class: Vec<Rational> = sums
        .into_iter()
        .enumerate()
        .map(|(j, s)| s / Rational::from_integer(BigInt::from(class_size(cert.dim, j + 1))))
        .collect();
    let ok = per_class.iter().all(|k| *k == cert.claimed_k);
    Ok(ConditionI { per_class, ok })
}

/// Maximizes the weighted appearance sum over every assignment of the
/// varying cells. Weights are scaled to integers, so the result is exact.
pub fn check_condition_ii(
    cert: &WeightCertificate,
    strategy: Strategy,
    budget: Option<u64>,
) -> Result<ConditionII> {
    cert.validate()?;
    let alphabet = cert.word.alphabet();
    let letter_index = |b: u8| alphabet.iter().position(|&a| a == b).unwrap() as u8;
    let cells = cert.varying_cells();
    let index: HashMap<&Point, usize> = cells.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let scale = cert.entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.weight.denom()));
    let mut clauses = Vec::new();
    for e in cert.entries.iter().filter(|e| e.weight.is_positive()) {
        let scaled = (e.weight.clone() * Rational::from_integer(scale.clone())).to_integer();
        let weight = scaled
            .to_u64()
            .ok_or_else(|| Error::CertificateInvalid("weights too large after scaling to integers".into()))?;
        let mut reqs = Vec::new();
        let mut possible = true;
        for (i, &want) in cert.word.symbols().iter().enumerate() {
            let cell = offset(&e.point, &e.direction, i as i64);
            match index.get(&cell) {
                Some(&v) => reqs.push((v, letter_index(want))),
                None => match cert.fixed_letter {
                    Some(b) if b == want => {}
                    Some(_) => {
                        possible = false;
                        break;
                    }
                    None => unreachable!("every relevant cell varies"),
                },
            }
        }
        if possible {
            clauses.push(Clause { reqs, weight });
        }
    }
    let problem = Problem::new(cells.len(), alphabet.len() as u8, clauses);
    let outcome =
        search::solve(&problem, &search::Options { strategy, budget, witness_cap: 1, parallel: true });
    let max = Rational::new(BigInt::from(outcome.best), scale);
    if !outcome.complete {
        return Err(Error::BudgetExceeded { budget: budget.unwrap_or(0), best: max });
    }
    let witness = LocalPattern {
        cells: cells
            .iter()
            .zip(&outcome.witnesses[0])
            .map(|(p, &v)| (p.clone(), alphabet[v as usize]))
            .collect(),
        background: cert.fixed_letter,
    };
    Ok(ConditionII {
        ok: max <= cert.claimed_m,
        max,
        witness,
        varying_cells: cells.len(),
        nodes: outcome.nodes,
    })
}

/// Checks both conditions and returns `M / K` as an upper bound.
pub fn certified_bound(
    cert: &WeightCertificate,
    strategy: Strategy,
    budget: Option<u64>,
) -> Result<BoundReport> {
    let first = check_condition_i(cert)?;
    if !first.ok {
        let detail: Vec<String> = first
            .per_class
            .iter()
            .enumerate()
            .map(|(j, k)| format!("class {} sums to {}", j + 1, format_rational(k)))
            .collect();
        return Err(Error::CertificateInvalid(format!(
            "condition (i) fails: {}, expected K = {}",
            detail.join(", "),
            format_rational(&cert.claimed_k)
        )));
    }
    let second = check_condition_ii(cert, strategy, budget)?;
    if !second.ok {
        return Err(Error::CertificateInvalid(format!(
            "condition (ii) fails: a local pattern reaches {} > M = {}\n{}",
            format_rational(&second.max),
            format_rational(&cert.claimed_m),
            second.witness
        )));
    }
    Ok(BoundReport {
        value: cert.claimed_m.clone() / cert.claimed_k.clone(),
        provenance: Provenance::Certificate { id: cert.label() },
    })
}

/// Weight `2^|v|` on every pair inside the unit cube, for the word `AB`.
///
/// # Panics
/// If `d` is zero or larger than four.
pub fn ab_power_certificate(d: usize) -> WeightCertificate {
    assert!((1..=4).contains(&d), "dimension must be between 1 and 4");
    let mut entries = Vec::new();
    for v in directions(d) {
        for code in 0..1u32 << d {
            let p: Point = (0..d).map(|i| (code >> (d - 1 - i) & 1) as i64).collect();
            let q = offset(&p, &v, 1);
            if q.iter().all(|&c| c == 0 || c == 1) {
                entries.push(WeightEntry {
                    point: p,
                    weight: Rational::from_integer(BigInt::from(1u64 << v.class())),
                    direction: v.clone(),
                });
            }
        }
    }
    WeightCertificate {
        word: Word::new("AB").unwrap(),
        dim: d,
        entries,
        claimed_k: Rational::from_integer(BigInt::from(1u64 << d)),
        claimed_m: Rational::from_integer(BigInt::from(3u64.pow(d as u32 - 1) << d)),
        fixed_letter: None,
        window: None,
    }
}

/// Average of the certificate over all signed permutations of coordinates.
/// Condition (i) is unchanged and the local maximum cannot grow.
pub fn symmetrize(cert: &WeightCertificate) -> WeightCertificate {
    let group = signed_permutations(cert.dim);
    let order = Rational::from_integer(BigInt::from(group.len()));
    let mut acc: BTreeMap<(Point, Direction), Rational> = BTreeMap::new();
    for g in &group {
        for e in &cert.entries {
            *acc.entry((g.apply(&e.point), g.apply_direction(&e.direction)))
                .or_insert_with(Rational::zero) += e.weight.clone() / order.clone();
        }
    }
    let window = cert.window.as_ref().map(|w| {
        let set: BTreeSet<Point> = group.iter().flat_map(|g| w.iter().map(|p| g.apply(p))).collect();
        set.into_iter().collect()
    });
    WeightCertificate {
        entries: acc
            .into_iter()
            .map(|((point, direction), weight)| WeightEntry { point, direction, weight })
            .collect(),
        window,
        ..cert.clone()
    }
}

fn parse_ints(text: &str, line: usize) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| Error::parse(line, format!("bad integer `{t}`"))))
        .collect()
}

impl WeightCertificate {
    /// Reads the header lines `word:`, `dim:`, `K:`, `M:` (plus optional
    /// `fixed-letter:` and `window:`), then one entry per line. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<WeightCertificate> {
        let mut header: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut body: Vec<(usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let key = key.trim();
                if !["word", "dim", "K", "M", "fixed-letter", "window"].contains(&key) {
                    return Err(Error::parse(i + 1, format!("unknown header `{key}`")));
                }
                if header.insert(key, (i + 1, value.trim())).is_some() {
                    return Err(Error::parse(i + 1, format!("repeated header `{key}`")));
                }
            } else {
                body.push((i + 1, line));
            }
        }
        let get = |key: &str| {
            header.get(key).copied().ok_or_else(|| Error::parse(0, format!("missing header `{key}`")))
        };
        let (l, word) = get("word")?;
        let word = Word::new(word).map_err(|e| match e {
            Error::TrivialWord(_) => e,
            other => Error::parse(l, other.to_string()),
        })?;
        let (l, dim) = get("dim")?;
        let dim: usize = dim
            .parse()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::parse(l, "dim must be a positive integer"))?;
        let rational = |key: &str| -> Result<Rational> {
            let (l, v) = get(key)?;
            parse_rational(v).ok_or_else(|| Error::parse(l, format!("bad rational `{v}`")))
        };
        let claimed_k = rational("K")?;
        let claimed_m = rational("M")?;
        let fixed_letter = match header.get("fixed-letter") {
            Some(&(l, v)) => match v.as_bytes() {
                [b] if b.is_ascii_uppercase() => Some(*b),
                _ => return Err(Error::parse(l, "fixed letter must be one uppercase letter")),
            },
            None => None,
        };
        let window = match header.get("window") {
            Some(&(l, v)) => {
                let pts = v.split(';').map(|p| parse_ints(p, l)).collect::<Result<Vec<_>>>()?;
                if pts.iter().any(|p| p.len() != dim) {
                    return Err(Error::parse(l, format!("window points need {dim} coordinates")));
                }
                Some(pts)
            }
            None => None,
        };
        let mut entries = Vec::with_capacity(body.len());
        for (l, line) in body {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 * dim + 1 {
                return Err(Error::parse(
                    l,
                    format!("expected {} fields, found {}", 2 * dim + 1, fields.len()),
                ));
            }
            let nums = parse_ints(&fields[..2 * dim].join(" "), l)?;
            let comps: Vec<i8> = nums[dim..].iter().map(|&c| i8::try_from(c).unwrap_or(i8::MAX)).collect();
            let direction = Direction::new(comps).map_err(|e| Error::parse(l, e.to_string()))?;
            let weight = parse_rational(fields[2 * dim])
                .ok_or_else(|| Error::parse(l, format!("bad weight `{}`", fields[2 * dim])))?;
            entries.push(WeightEntry { point: nums[..dim].to_vec(), direction, weight });
        }
        Ok(WeightCertificate { word, dim, entries, claimed_k, claimed_m, fixed_letter, window })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "word: {}\ndim: {}\nK: {}\nM: {}\n",
            self.word,
            self.dim,
            format_rational(&self.claimed_k),
            format_rational(&self.claimed_m)
        );
        if let Some(b) = self.fixed_letter {
            out.push_str(&format!("fixed-letter: {}\n", b as char));
        }
        if let Some(w) = &self.window {
            let pts: Vec<String> =
                w.iter().map(|p| p.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
            out.push_str(&format!("window: {}\n", pts.join("; ")));
        }
        for e in &self.entries {
            let nums: Vec<String> = e
                .point
                .iter()
                .map(i64::to_string)
                .chain(e.direction.components().iter().map(i8::to_string))
                .collect();
            out.push_str(&format!("{} {}\n", nums.join(" "), format_rational(&e.weight)));
        }
        out
    }
}

/// Certificates shipped with the library, keyed by name.
pub fn shipped_certificate(name: &str) -> Option<WeightCertificate> {
    let text = match name {
        "fig2" => include_str!("../../../../data/fig2-ab.cert"),
        "fig3" => include_str!("../../../../data/fig3-abb.cert"),
        "fig4" => include_str!("../../../../data/fig4-abcc.cert"),
        "fig6" => include_str!("../../../../data/fig6-babbb.cert"),
        "fig8" => include_str!("../../../../data/fig8-abbb.cert"),
        _ => return None,
    };
    Some(WeightCertificate::parse(text).expect("shipped certificates parse"))
}

pub const SHIPPED_CERTIFICATES: [&str; 5] = ["fig2", "fig3", "fig4", "fig6", "fig8"];
