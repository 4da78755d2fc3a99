//! End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
//! 1 when any fails. Every comparison is exact except the spread bound,
//! which uses the tolerance below.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::{all_words, independent_check, naive_grid_count};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordgrid::constructions::{paper_grids, polya_queens, power_queens, queens_to_grid};
use wordgrid::local::{
    ab_power_certificate, box_window, build_lp, certified_bound, shipped_certificate, solve_lp, LpOptions,
    WeightCertificate,
};
use wordgrid::oracle::{lemma72_check, max_concentration, searchline_spread, OracleOptions};
use wordgrid::reductions::{
    check_repetition_inequality, is_parity_respecting, parity_ratio, to_parity_respecting, verify_reduction,
    LetterMap,
};
use wordgrid::scalar::{format_rational, ratio};
use wordgrid::word::{c1, stability_gap};
use wordgrid::{Grid, Rational, Shape, Strategy, Word};

/// Slack allowed when comparing the floating point spread bound.
const SPREAD_TOLERANCE: f64 = 1e-12;
const SEED: u64 = 20240601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word(s: &str) -> Word {
    Word::new(s).unwrap()
}

fn frac(a: usize, b: usize) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn closed_form_vs_oracle() -> Outcome {
    let opts = OracleOptions::default();
    let words: Vec<Word> = (2..=6).flat_map(|l| all_words(2, l)).collect();
    for w in &words {
        let mut best = frac(0, 1);
        for n in 1..=12 {
            best = best.max(
                max_concentration(w, &Shape::new(vec![n]).unwrap(), &opts).map_err(|e| e.to_string())?.max,
            );
        }
        ensure(best == c1(w), || format!("{w}: oracle {best}, closed form {}", c1(w)))?;
    }
    Ok(format!("{} binary words, n <= 12", words.len()))
}

fn concentration_table() -> Outcome {
    let grids = paper_grids();
    let table = [
        ("fig1-left", "ABBB", frac(8, 5)),
        ("fig1-right", "ABBB", frac(3, 2)),
        ("lemma67", "BABBB", frac(8, 5)),
        ("fig7-left", "ABBBBB", frac(40, 36)),
        ("fig7-right", "ABBBBBBB", frac(56, 64)),
        ("fig5", "ABBBBBB", frac(8, 7)),
        ("fig9-diag", "ABB", frac(2, 1)),
        ("fig9-stack", "ABB", frac(2, 1)),
    ];
    for (name, w, want) in &table {
        let g = &grids[name];
        let w = word(w);
        let got = g.concentration(&w);
        ensure(got == *want, || format!("{name}: {got} instead of {want}"))?;
        let naive = frac(naive_grid_count(&w, g) as usize, g.size());
        ensure(naive == *want, || format!("{name}: direct count gives {naive}"))?;
    }
    Ok(format!("{} grids", table.len()))
}

fn bound_of(cert: &WeightCertificate, strategy: Strategy) -> Result<Rational, String> {
    certified_bound(cert, strategy, None).map(|r| r.value).map_err(|e| e.to_string())
}

fn certificate_suite() -> Outcome {
    let cases = [
        ("fig2", shipped_certificate("fig2").unwrap(), Strategy::FullEnum, frac(3, 1)),
        ("fig3", shipped_certificate("fig3").unwrap(), Strategy::FullEnum, frac(2, 1)),
        ("ab_power(3)", ab_power_certificate(3), Strategy::FullEnum, frac(9, 1)),
        ("fig4", shipped_certificate("fig4").unwrap(), Strategy::BranchAndBound, frac(6, 5)),
        ("fig6", shipped_certificate("fig6").unwrap(), Strategy::BranchAndBound, frac(8, 5)),
        ("fig8", shipped_certificate("fig8").unwrap(), Strategy::BranchAndBound, frac(59526, 35459)),
    ];
    let mut detail = Vec::new();
    for (name, cert, strategy, want) in cases {
        let t = Instant::now();
        let got = bound_of(&cert, strategy)?;
        ensure(got == want, || format!("{name}: bound {got} instead of {want}"))?;
        detail.push(format!("{name} {} ({:.2?})", format_rational(&got), t.elapsed()));
    }
    // the construction sits below the certified bound for ABBB
    let lower = paper_grids()["fig1-left"].concentration(&word("ABBB"));
    ensure(lower <= frac(59526, 35459), || "ABBB lower bound above the certificate".into())?;
    Ok(detail.join(", "))
}

fn lp_pipeline() -> Outcome {
    let cases = [("ABB", -1, 1, frac(2, 1)), ("AB", 0, 1, frac(3, 1))];
    let mut detail = Vec::new();
    for (w, lo, hi, want) in cases {
        let lp = build_lp(&word(w), 2, &box_window(&[lo, lo], &[hi, hi]), b'B', None)
            .map_err(|e| e.to_string())?;
        let report = solve_lp(&lp, &LpOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.value == want, || format!("{w}: optimum {} instead of {want}", report.value))?;
        let reparsed = WeightCertificate::parse(&report.certificate.to_text()).map_err(|e| e.to_string())?;
        let bound = bound_of(&reparsed, Strategy::FullEnum)?;
        ensure(bound == want, || format!("{w}: emitted certificate proves {bound}"))?;
        detail.push(format!("{w} {}", format_rational(&want)));
    }
    Ok(detail.join(", "))
}

fn queens() -> Outcome {
    let mut checked = 0;
    for n in (1..=49usize).filter(|n| n % 2 != 0 && n % 3 != 0) {
        let q = polya_queens(n).map_err(|e| e.to_string())?;
        ensure(q.len() == n && independent_check(&q), || format!("Polya placement for n = {n} attacks"))?;
        checked += 1;
    }
    let q = power_queens(11, 3).map_err(|e| e.to_string())?;
    ensure(independent_check(&q), || "power placement (11, 3) attacks".into())?;
    let g = queens_to_grid(&q, 11).map_err(|e| e.to_string())?;
    let w = word("ABBBBBBBBBB");
    let direct = frac(naive_grid_count(&w, &g) as usize, g.size());
    ensure(direct == frac(26, 11), || format!("(11, 3) grid reaches {direct}"))?;
    ensure(g.concentration(&w) == direct, || "library count disagrees".into())?;
    Ok(format!("{checked} Polya boards, power (11, 3) = 26/11"))
}

fn reductions() -> Outcome {
    let abb = word("ABB");
    let instances =
        [("ABCA", "C:B", "ABC"), ("ABBC", "C:A", "ABBCBB"), ("ABBA", "", "ABB"), ("BABB", "", "ABB")];
    for (w, map, base) in instances {
        let w = word(w);
        let pi = LetterMap::parse(map, &w.alphabet()).map_err(|e| e.to_string())?;
        let rc = verify_reduction(&w, &abb, &pi, &Grid::line(base).unwrap(), 9, None)
            .map_err(|e| e.to_string())?;
        ensure(rc.passes() && rc.checked_upto == 9, || format!("{w}: {rc:?}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let ext = vec![2 * rng.gen_range(1..=3), 2 * rng.gen_range(1..=3)];
        let shape = Shape::new(ext).unwrap();
        let g = Grid::from_fn(shape, |_| if rng.gen_bool(0.5) { b'A' } else { b'B' }).unwrap();
        let w = random_word(&mut rng, b"AB");
        let r = check_repetition_inequality(&w, 2, &g).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("repetition fails for {w} on\n{}", g.to_text()))?;
    }

    for w in ["ABA", "ABACA"].map(word) {
        let letters = w.alphabet();
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let cells: String = (0..n).map(|_| letters[rng.gen_range(0..letters.len())] as char).collect();
            let g = Grid::line(&cells).unwrap();
            let out = to_parity_respecting(&w, &g).map_err(|e| e.to_string())?;
            let before = parity_ratio(&w, &g).map_err(|e| e.to_string())?;
            let after = parity_ratio(&w, &out).map_err(|e| e.to_string())?;
            ensure(is_parity_respecting(&w, &out).unwrap(), || format!("{w}: {cells} -> {}", out.letters()))?;
            ensure(after.at_least(&before), || {
                format!("{w}: ratio drops from {cells} to {}", out.letters())
            })?;
        }
    }
    Ok("4 reductions to n = 9, 200 repetition grids, 400 parity grids".into())
}

fn random_grid(rng: &mut ChaCha8Rng, letters: &[u8], max_cells: usize) -> Grid {
    loop {
        let d = rng.gen_range(1..=3);
        let ext: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=6)).collect();
        if ext.iter().product::<usize>() > max_cells {
            continue;
        }
        return Grid::from_fn(Shape::new(ext).unwrap(), |_| letters[rng.gen_range(0..letters.len())])
            .unwrap();
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[u8]) -> Word {
    loop {
        let len = rng.gen_range(2..=5);
        let s: Vec<u8> = (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
        if let Ok(w) = Word::from_symbols(s) {
            return w;
        }
    }
}

fn theorem_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..500 {
        let g = random_grid(&mut rng, b"ABC", 216);
        let w = random_word(&mut rng, b"ABC");
        let factor = frac(3usize.pow(g.dim() as u32) - 1, 2);
        ensure(g.concentration(&w) <= factor * c1(&w), || {
            format!("upper bound fails for {w} on\n{}", g.to_text())
        })?;
        let stacked = g.stack().unwrap().count(&w);
        ensure(stacked == 3 * g.count(&w), || format!("stacking {w} gives {stacked}"))?;
    }
    for _ in 0..500 {
        let w = random_word(&mut rng, b"ABC");
        let n = rng.gen_range(1..=14);
        let cells: String = (0..n).map(|_| b"ABC"[rng.gen_range(0..3)] as char).collect();
        let r = stability_gap(&w, &Grid::line(&cells).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("stability fails for {w} on {cells}"))?;
    }
    for d in 1..=3usize {
        for _ in 0..1000 {
            let denom = rng.gen_range(1..=12);
            let f: Vec<Rational> =
                (0..3usize.pow(d as u32)).map(|_| ratio(rng.gen_range(0..=denom), denom)).collect();
            let r = lemma72_check(d, &f).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("correlation bound fails in d = {d}: {} > {}", r.lhs, r.rhs))?;
        }
    }
    for d in [2usize, 3] {
        for _ in 0..500 {
            let n = rng.gen_range(1..1usize << d);
            let p: f64 = rng.gen();
            let g = Grid::from_fn(Shape::cube(n, d).unwrap(), |_| if rng.gen_bool(p) { b'A' } else { b'B' })
                .unwrap();
            let r = searchline_spread(&g, b'A').map_err(|e| e.to_string())?;
            ensure(r.max_diff as f64 >= r.bound - SPREAD_TOLERANCE, || {
                format!("spread fails on\n{}", g.to_text())
            })?;
        }
    }
    Ok("upper bound, stacking, stability, correlation, spread".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("closed form matches oracle", closed_form_vs_oracle),
        ("concentration table", concentration_table),
        ("certificate suite", certificate_suite),
        ("LP reproduction", lp_pipeline),
        ("queens", queens),
        ("reductions", reductions),
        ("theorem property suites", theorem_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
