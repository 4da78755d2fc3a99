//! `wordgrid`: command-line access to closed forms, counting, certificates,
//! the local linear program, constructions, oracles and reductions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use wordgrid::constructions::{
    paper_grids, polya_queens, power_queens, queens_to_grid, search_queens, QueensPlacement,
};
use wordgrid::local::{
    box_window, build_lp, check_condition_i, check_condition_ii, shipped_certificate, solve_lp, LpOptions,
    WeightCertificate, SHIPPED_CERTIFICATES,
};
use wordgrid::oracle::{lemma72_check, max_concentration, searchline_spread, verify_c1, OracleOptions};
use wordgrid::reductions::{
    apply_map, check_repetition_inequality, is_parity_respecting, parity_classes, parity_ratio, repeat_word,
    to_parity_respecting, verify_reduction, LetterMap,
};
use wordgrid::scalar::{format_rational, parse_rational};
use wordgrid::word::{c1, classify_extremal, construct_pal, construct_rep, profile, ExtremalClass};
use wordgrid::{Error, Grid, Rational, Result, Shape, Strategy, Word};

#[derive(Parser)]
#[command(name = "wordgrid", version, about = "Maximum concentration of words in toroidal grids")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Enumerate every assignment.
    Full,
    /// Branch and bound.
    Bnb,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Full => Strategy::FullEnum,
            StrategyArg::Bnb => Strategy::BranchAndBound,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One-dimensional closed form, word statistics and extremal grids.
    C1 { word: String },
    /// Count appearances of a word in a grid file.
    Count { grid: PathBuf, word: String },
    /// Check a weight certificate (a file path or a shipped name such as `fig3`).
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Solve the local linear program for a window and emit its certificate.
    Lp {
        word: String,
        /// Dimension of the grid.
        #[arg(long)]
        dim: usize,
        /// Box extents such as `3x3`; extent n covers [-(n-1)/2, n/2] (integer division).
        #[arg(long)]
        window: String,
        /// Letter of every cell outside the window.
        #[arg(long)]
        fixed_letter: char,
        /// Seed of the initial constraint sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the optimal certificate to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Cap on the number of window fillings.
        #[arg(long, value_parser = parse_budget)]
        max_grids: Option<u64>,
    },
    /// Nonattacking modular queens and the grid they induce.
    Queens {
        /// Side of the board; the word is A followed by n-1 B's.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Search for this many queens by backtracking instead (dimension 2).
        #[arg(long)]
        search: Option<usize>,
        /// Stop after this many search nodes (accepts `1e8`).
        #[arg(long, value_parser = parse_budget)]
        budget: Option<u64>,
        /// Include the grid in the output, or write it to a file.
        #[arg(long, num_args = 0..=1)]
        emit_grid: Option<Option<PathBuf>>,
    },
    /// Exact maximum concentration over all grids of one shape.
    Oracle {
        word: String,
        /// Extents such as `5,5` or `5x5`.
        #[arg(long)]
        shape: String,
        /// Stop after this many search nodes (accepts `1e8`).
        #[arg(long, value_parser = parse_budget)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Bnb)]
        strategy: StrategyArg,
        /// Number of optimal grids to report.
        #[arg(long, default_value_t = 1)]
        witnesses: usize,
        /// Pin the first cell to the first letter of the word (faster, fewer witnesses).
        #[arg(long)]
        fix_translation: bool,
    },
    /// Compare the closed form with the oracle on every length up to a bound.
    CheckC1 {
        word: String,
        /// Largest grid length to search.
        #[arg(long)]
        upto: usize,
    },
    /// Check a projection reduction on one-dimensional grids.
    Reduce {
        #[arg(long)]
        word: String,
        #[arg(long)]
        target: String,
        /// Comma-separated `X:Y` pairs; unnamed letters map to themselves.
        #[arg(long, default_value = "")]
        map: String,
        /// One-dimensional base grid file.
        #[arg(long)]
        gamma0: PathBuf,
        /// Compare against every grid with at most this many cells.
        #[arg(long)]
        check_upto: usize,
        /// Stop after this many search nodes (accepts `1e8`).
        #[arg(long, value_parser = parse_budget)]
        budget: Option<u64>,
    },
    /// Make a one-dimensional grid alternate between the word's parity classes.
    Parity { word: String, grid: PathBuf },
    /// Repeat every letter k times; optionally check the subsampling inequality on a grid.
    Repeat {
        word: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Numeric checks of the correlation and search-line spread inequalities.
    Fourier {
        #[command(subcommand)]
        action: FourierAction,
    },
    /// List the built-in example grids, print one, or write them all.
    Grids {
        name: Option<String>,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CertAction {
    /// Check both conditions and report the details.
    Verify {
        cert: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Bnb)]
        strategy: StrategyArg,
        /// Stop after this many search nodes (accepts `1e8`).
        #[arg(long, value_parser = parse_budget)]
        budget: Option<u64>,
    },
    /// Check both conditions and print only the bound.
    Bound {
        cert: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Bnb)]
        strategy: StrategyArg,
        /// Stop after this many search nodes (accepts `1e8`).
        #[arg(long, value_parser = parse_budget)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum FourierAction {
    /// Both sides of the three-term correlation bound on (Z/3Z)^d.
    Lemma72 {
        #[arg(long)]
        dim: usize,
        /// 3^d comma-separated values in [0,1], row-major.
        #[arg(long)]
        values: String,
    },
    /// Spread of a letter's count across the search lines of a cubic grid.
    Spread {
        grid: PathBuf,
        #[arg(long)]
        letter: char,
    },
}

/// Accepts integers and scientific notation such as `1e8`.
fn parse_budget(text: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = text.parse::<u64>() {
        return Ok(n);
    }
    match text.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(format!("`{text}` is not a nonnegative integer")),
    }
}

type Report = Map<String, Value>;

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn word_arg(text: &str) -> Result<Word> {
    Word::new(text)
}

fn letter_arg(c: char) -> Result<u8> {
    if c.is_ascii_uppercase() {
        Ok(c as u8)
    } else {
        Err(Error::InvalidSymbol(c))
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse(0, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::DomainError(format!("cannot write {}: {e}", path.display())))
}

fn read_grid(path: &Path) -> Result<Grid> {
    Grid::parse(&read_file(path)?)
}

fn read_cert(source: &str) -> Result<WeightCertificate> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(cert) = shipped_certificate(source) {
            return Ok(cert);
        }
        return Err(Error::parse(
            0,
            format!(
                "no file `{source}` and no shipped certificate of that name ({})",
                SHIPPED_CERTIFICATES.join(", ")
            ),
        ));
    }
    WeightCertificate::parse(&read_file(path)?)
}

fn parse_extents(text: &str) -> Result<Vec<usize>> {
    text.split([',', 'x'])
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| Error::parse(0, format!("bad extent `{t}` in `{text}`")))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Report> {
    let mut out = Report::new();
    match &cli.command {
        Command::C1 { word } => {
            let w = word_arg(word)?;
            let p = profile(&w);
            out.insert("word".into(), json!(w.as_str()));
            out.insert("length".into(), json!(p.length));
            out.insert("c_left".into(), json!(p.palindrome_prefix));
            out.insert("c_right".into(), json!(p.palindrome_suffix));
            out.insert("c_repeat".into(), json!(p.border));
            out.insert("palindrome".into(), json!(w.is_palindrome()));
            out.insert("c1".into(), rat(&c1(&w)));
            let (class, extra) = match classify_extremal(&w) {
                ExtremalClass::RepOnly { .. } => ("RepOnly", None),
                ExtremalClass::PalOnly { .. } => ("PalOnly", None),
                ExtremalClass::Mixed(f) => ("Mixed", Some(f)),
            };
            out.insert("class".into(), json!(class));
            if let Some(f) = extra {
                let s = |v: &[u8]| String::from_utf8_lossy(v).into_owned();
                out.insert("block".into(), json!(s(&f.block)));
                out.insert("alt_block".into(), json!(s(&f.alt_block)));
            }
            out.insert("rep_grid".into(), json!(construct_rep(&w).letters()));
            let pal = construct_pal(&w).map(|g| g.letters()).unwrap_or_else(|_| "none".into());
            out.insert("pal_grid".into(), json!(pal));
        }
        Command::Count { grid, word } => {
            let g = read_grid(grid)?;
            let w = word_arg(word)?;
            out.insert("count".into(), json!(g.count(&w)));
            out.insert("size".into(), json!(g.size()));
            out.insert("concentration".into(), rat(&g.concentration(&w)));
            out.insert("by_class".into(), json!(g.count_by_class(&w)));
        }
        Command::Cert { action } => {
            let (source, strategy, budget, verbose) = match action {
                CertAction::Verify { cert, strategy, budget } => (cert, *strategy, *budget, true),
                CertAction::Bound { cert, strategy, budget } => (cert, *strategy, *budget, false),
            };
            cert_command(&read_cert(source)?, strategy.into(), budget, verbose, &mut out)?;
        }
        Command::Lp { word, dim, window, fixed_letter, seed, emit, max_grids } => {
            let w = word_arg(word)?;
            let ext = parse_extents(window)?;
            if ext.len() != *dim {
                return Err(Error::DimensionMismatch { expected: *dim, found: ext.len() });
            }
            let lo: Vec<i64> = ext.iter().map(|&n| -((n as i64 - 1) / 2)).collect();
            let hi: Vec<i64> = lo.iter().zip(&ext).map(|(&l, &n)| l + n as i64 - 1).collect();
            let lp = build_lp(&w, *dim, &box_window(&lo, &hi), letter_arg(*fixed_letter)?, *max_grids)?;
            let report = solve_lp(&lp, &LpOptions { seed: *seed, ..Default::default() })?;
            out.insert("word".into(), json!(w.as_str()));
            out.insert("window_cells".into(), json!(lp.window.len()));
            out.insert("pairs".into(), json!(lp.pairs.len()));
            out.insert("variables".into(), json!(lp.orbits.len()));
            out.insert("fillings".into(), json!(lp.grids));
            out.insert("filling_orbits".into(), json!(lp.grid_orbits));
            out.insert("constraints".into(), json!(lp.rows.len()));
            out.insert("symmetries".into(), json!(lp.symmetries));
            out.insert("rounds".into(), json!(report.rounds));
            out.insert("active_constraints".into(), json!(report.active_rows));
            out.insert("optimum".into(), rat(&report.value));
            if let Some(path) = emit {
                write_file(path, &report.certificate.to_text())?;
                out.insert("certificate".into(), json!(path.display().to_string()));
            }
        }
        Command::Queens { n, dim, search, budget, emit_grid } => {
            let (method, placement) = match search {
                Some(target) => match search_queens(*n, *dim, *target, *budget)? {
                    Some(q) => ("search", Some(q)),
                    None => ("search", None),
                },
                None if *dim == 2 && polya_queens(*n).is_ok() => ("polya", Some(polya_queens(*n)?)),
                None => ("power", Some(power_queens(*n, *dim)?)),
            };
            out.insert("method".into(), json!(method));
            out.insert("n".into(), json!(n));
            out.insert("dim".into(), json!(dim));
            out.insert("found".into(), json!(placement.is_some()));
            if let Some(q) = placement {
                queens_report(&q, emit_grid, &mut out)?;
            }
        }
        Command::Oracle { word, shape, budget, strategy, witnesses, fix_translation } => {
            let w = word_arg(word)?;
            let shape = Shape::new(parse_extents(shape)?)?;
            let opts = OracleOptions {
                strategy: (*strategy).into(),
                budget: *budget,
                witness_cap: *witnesses,
                fix_translation: *fix_translation,
                parallel: true,
            };
            let r = max_concentration(&w, &shape, &opts)?;
            out.insert("word".into(), json!(w.as_str()));
            out.insert("shape".into(), json!(shape.to_string()));
            out.insert("max".into(), rat(&r.max));
            out.insert("count".into(), json!(r.count));
            out.insert("nodes".into(), json!(r.nodes));
            let grids: Vec<String> = r.witnesses.iter().map(Grid::to_text).collect();
            out.insert("witnesses".into(), json!(grids));
        }
        Command::CheckC1 { word, upto } => {
            let w = word_arg(word)?;
            let r = verify_c1(&w, *upto)?;
            out.insert("closed_form".into(), rat(&r.closed_form));
            out.insert("oracle_max".into(), rat(&r.oracle_max));
            out.insert("attained_at".into(), json!(r.attained_at));
            out.insert("holds".into(), json!(r.holds));
        }
        Command::Reduce { word, target, map, gamma0, check_upto, budget } => {
            let w = word_arg(word)?;
            let t = word_arg(target)?;
            let pi = LetterMap::parse(map, &w.alphabet())?;
            let g0 = read_grid(gamma0)?;
            let rc = verify_reduction(&w, &t, &pi, &g0, *check_upto, *budget)?;
            out.insert("map".into(), json!(pi.to_string()));
            out.insert("gamma0".into(), json!(g0.letters()));
            out.insert("image".into(), json!(apply_map(&pi, &g0)?.letters()));
            out.insert("ratio".into(), rc.ratio_r.as_ref().map_or(Value::Null, rat));
            out.insert("base_extremal".into(), json!(rc.base_extremal));
            out.insert("image_extremal".into(), json!(rc.image_extremal));
            out.insert("ratio_bounded".into(), json!(rc.ratio_bounded));
            out.insert("checked_upto".into(), json!(rc.checked_upto));
            out.insert("all_pass".into(), json!(rc.passes()));
            if let Some(g) = &rc.counterexample {
                out.insert("counterexample".into(), json!(g.letters()));
            }
        }
        Command::Parity { word, grid } => {
            let w = word_arg(word)?;
            let g = read_grid(grid)?;
            let (odd, even) = parity_classes(&w).ok_or_else(|| Error::MixedParity(w.to_string()))?;
            let s = |set: &std::collections::BTreeSet<u8>| set.iter().map(|&b| b as char).collect::<String>();
            let out_grid = to_parity_respecting(&w, &g)?;
            out.insert("odd_letters".into(), json!(s(&odd)));
            out.insert("even_letters".into(), json!(s(&even)));
            out.insert("input_ratio".into(), rat(&parity_ratio(&w, &g)?.value()));
            out.insert("output".into(), json!(out_grid.letters()));
            out.insert("output_ratio".into(), rat(&parity_ratio(&w, &out_grid)?.value()));
            out.insert("parity_respecting".into(), json!(is_parity_respecting(&w, &out_grid)?));
        }
        Command::Repeat { word, k, grid } => {
            let w = word_arg(word)?;
            if *k == 0 {
                return Err(Error::DomainError("k must be positive".into()));
            }
            let r = repeat_word(&w, *k);
            out.insert("repeated".into(), json!(r.as_str()));
            out.insert("c1".into(), rat(&c1(&w)));
            out.insert("c1_repeated".into(), rat(&c1(&r)));
            if let Some(path) = grid {
                let check = check_repetition_inequality(&w, *k, &read_grid(path)?)?;
                out.insert("lhs".into(), json!(check.lhs));
                out.insert("rhs".into(), json!(check.rhs));
                out.insert("holds".into(), json!(check.holds));
            }
        }
        Command::Fourier { action } => match action {
            FourierAction::Lemma72 { dim, values } => {
                let values = values
                    .split(',')
                    .map(|t| parse_rational(t).ok_or_else(|| Error::parse(0, format!("bad value `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let r = lemma72_check(*dim, &values)?;
                out.insert("lhs".into(), rat(&r.lhs));
                out.insert("rhs".into(), rat(&r.rhs));
                out.insert("holds".into(), json!(r.holds));
            }
            FourierAction::Spread { grid, letter } => {
                let r = searchline_spread(&read_grid(grid)?, letter_arg(*letter)?)?;
                out.insert("max_diff".into(), json!(r.max_diff));
                out.insert("bound".into(), json!(r.bound));
                out.insert("holds".into(), json!(r.holds));
            }
        },
        Command::Grids { name, emit_dir } => {
            let grids = paper_grids();
            if let Some(dir) = emit_dir {
                fs::create_dir_all(dir).map_err(|e| Error::DomainError(format!("{}: {e}", dir.display())))?;
                for (n, g) in &grids {
                    write_file(&dir.join(format!("{n}.grid")), &g.to_text())?;
                }
            }
            match name {
                Some(n) => {
                    let g = grids.get(n.as_str()).ok_or_else(|| {
                        Error::DomainError(format!("unknown grid `{n}`; known: {}", grid_names(&grids)))
                    })?;
                    out.insert("name".into(), json!(n));
                    out.insert("grid".into(), json!(g.to_text()));
                }
                None => {
                    for (n, g) in &grids {
                        out.insert(n.to_string(), json!(g.shape().to_string()));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn grid_names(grids: &std::collections::BTreeMap<&str, Grid>) -> String {
    grids.keys().copied().collect::<Vec<_>>().join(", ")
}

fn cert_command(
    cert: &WeightCertificate,
    strategy: Strategy,
    budget: Option<u64>,
    verbose: bool,
    out: &mut Report,
) -> Result<()> {
    let first = check_condition_i(cert)?;
    if !first.ok {
        let sums: Vec<String> = first.per_class.iter().map(format_rational).collect();
        return Err(Error::CertificateInvalid(format!(
            "condition (i) fails: class sums {} but K = {}",
            sums.join(", "),
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
    out.insert("certificate".into(), json!(cert.label()));
    if verbose {
        out.insert("entries".into(), json!(cert.entries.len()));
        out.insert("K".into(), rat(&cert.claimed_k));
        let sums: Vec<Value> = first.per_class.iter().map(rat).collect();
        out.insert("class_sums".into(), Value::Array(sums));
        out.insert("M".into(), rat(&cert.claimed_m));
        out.insert("max".into(), rat(&second.max));
        out.insert("varying_cells".into(), json!(second.varying_cells));
        out.insert("nodes".into(), json!(second.nodes));
        out.insert("witness".into(), json!(second.witness.to_string()));
    }
    out.insert("bound".into(), rat(&(cert.claimed_m.clone() / cert.claimed_k.clone())));
    Ok(())
}

fn queens_report(q: &QueensPlacement, emit: &Option<Option<PathBuf>>, out: &mut Report) -> Result<()> {
    out.insert("queens".into(), json!(q.len()));
    out.insert("nonattacking".into(), json!(q.is_nonattacking()));
    let positions: Vec<Value> = q.positions.iter().map(|p| json!(p)).collect();
    out.insert("positions".into(), Value::Array(positions));
    if q.n >= 2 {
        let w = Word::new(&format!("A{}", "B".repeat(q.n - 1)))?;
        let g = queens_to_grid(q, q.n)?;
        out.insert("word".into(), json!(w.as_str()));
        out.insert("concentration".into(), rat(&g.concentration(&w)));
        out.insert("c1".into(), rat(&c1(&w)));
        match emit {
            Some(Some(path)) => {
                write_file(path, &g.to_text())?;
                out.insert("grid_file".into(), json!(path.display().to_string()));
            }
            Some(None) => {
                out.insert("grid".into(), json!(g.to_text()));
            }
            None => {}
        }
    }
    Ok(())
}

fn print_text(report: &Report) {
    for (key, value) in report {
        match value {
            Value::String(s) if s.contains('\n') => {
                println!("{key}:");
                for line in s.lines() {
                    println!("  {line}");
                }
            }
            Value::String(s) => println!("{key}: {s}"),
            Value::Array(items) if items.iter().any(|v| v.as_str().is_some_and(|s| s.contains('\n'))) => {
                println!("{key}:");
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        println!();
                    }
                    for line in item.as_str().unwrap_or_default().lines() {
                        println!("  {line}");
                    }
                }
            }
            Value::Array(items) => {
                let parts: Vec<String> =
                    items.iter().map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string)).collect();
                println!("{key}: {}", parts.join(", "));
            }
            other => println!("{key}: {other}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("elapsed: {:.3?}", start.elapsed());
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print_text(&report),
                Format::Json => {
                    let mut full = Map::new();
                    full.insert("status".into(), json!("ok"));
                    full.extend(report);
                    println!("{}", Value::Object(full));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!(
                    "{}",
                    json!({ "status": "error", "kind": e.kind(), "exit_code": e.exit_code(), "message": e.to_string() })
                ),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
