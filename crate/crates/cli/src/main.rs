//! `mexlab` — batch front end over the exact q-series laboratory.
//!
//! Subcommands: `compute` (exact coefficients), `verify` (congruence /
//! identity / family / eta suites; exit 1 on any failure), `density`
//! (zero-residue density scans), `asym` (ratio tables against the
//! predicted main terms), `dissect` (arithmetic-progression slices), and
//! `eta` (eta-quotient modularity analysis).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mexlab_core::asym::{self, RealCtx, SeriesWhich};
use mexlab_core::report::Report;
use mexlab_core::{cache, eta, mex, theta, TruncSeries};

#[derive(Parser)]
#[command(name = "mexlab", version, about = "exact q-series laboratory for mex partition statistics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for reports and tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Series cache directory (falls back to MEXLAB_CACHE_DIR; no caching
    /// when neither is set).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads for suite verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Which {
    /// sigma_o mex(n)
    SigmaO,
    /// sigma_e mex(n)
    SigmaE,
    /// sigma mex(n)
    Sigma,
    /// a(n), the difference sigma_o - sigma_e
    A,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Congruences,
    Identities,
    Families,
    Eta,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GSeries {
    #[value(name = "G_o", alias = "g_o")]
    GO,
    #[value(name = "G_e", alias = "g_e")]
    GE,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AsymWhich {
    SigmaO,
    SigmaE,
    Sigma,
    /// sigma row plus the sigma_o/sigma_e column
    Pair,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print exact values of a coefficient sequence.
    Compute {
        #[arg(long, value_enum)]
        which: Which,
        /// A single index `n` or an inclusive range `a..b`.
        range: String,
    },
    /// Run a verification suite; exits nonzero on any failing claim.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Series order for the congruence and family scans.
        #[arg(long, default_value_t = 2000)]
        order: usize,
        /// Primes for the family suite.
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7, 11])]
        p: Vec<u64>,
        /// Largest k for the eta suite.
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
    /// Zero-residue densities of a mex series modulo small powers of two.
    Density {
        #[arg(long, value_enum)]
        series: GSeries,
        #[arg(long = "mod", value_delimiter = ',', default_values_t = [2u64, 4, 8])]
        moduli: Vec<u64>,
        #[arg(long = "X", value_delimiter = ',')]
        x: Vec<usize>,
    },
    /// Ratio of exact coefficients to the predicted main term.
    Asym {
        #[arg(long, value_enum)]
        which: AsymWhich,
        #[arg(long = "n", value_delimiter = ',')]
        checkpoints: Vec<usize>,
        /// Refuse checkpoints beyond this order instead of computing more.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Print one arithmetic-progression slice of a coefficient sequence.
    Dissect {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        order: usize,
        /// Progression step.
        #[arg(short)]
        m: usize,
        /// Progression residue.
        #[arg(short)]
        r: usize,
    },
    /// Eta-quotient analysis: weights, character, cusp orders, S-values.
    Eta {
        /// Analyze the quotients with index 1..=k, plus the weight-one one.
        #[arg(long, default_value_t = 6)]
        k: u32,
        /// Also check the mod-2^(k+1) series congruence up to this order.
        #[arg(long)]
        witness_order: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os("MEXLAB_CACHE_DIR").map(PathBuf::from));
    match run(cli, cache_dir) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn named_series(which: Which, order: usize, cache_dir: &Option<PathBuf>) -> Result<TruncSeries, String> {
    let (name, compute): (&str, Box<dyn FnOnce(usize) -> TruncSeries>) = match which {
        Which::Sigma => ("sigma", Box::new(mex::sigma_mex_series)),
        Which::A => ("a", Box::new(mex::f1sq_series)),
        Which::SigmaO => (
            "sigma_o",
            Box::new(|n| mex::g_series(n).expect("half sums are integral").0),
        ),
        Which::SigmaE => (
            "sigma_e",
            Box::new(|n| mex::g_series(n).expect("half sums are integral").1),
        ),
    };
    match cache_dir {
        Some(dir) => cache::load_or_compute(dir, name, order, compute).map_err(|e| e.to_string()),
        None => Ok(compute(order)),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    if let Some((a, b)) = s.split_once("..") {
        let a = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let b = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        Ok((a, b))
    } else {
        let n = s.trim().parse().map_err(|_| format!("bad index {s:?}"))?;
        Ok((n, n))
    }
}

fn run(cli: Cli, cache_dir: Option<PathBuf>) -> Result<bool, String> {
    match cli.cmd {
        Cmd::Compute { which, range } => {
            let (lo, hi) = parse_range(&range)?;
            let series = named_series(which, hi, &cache_dir)?;
            let vals: Vec<String> = (lo..=hi).map(|n| series.coeff(n).to_string()).collect();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&vals).unwrap()),
                Format::Csv => {
                    println!("n,value");
                    for (n, v) in (lo..=hi).zip(&vals) {
                        println!("{n},{v}");
                    }
                }
                Format::Text => println!("{}", vals.join(" ")),
            }
            Ok(true)
        }
        Cmd::Verify { suite, order, p, k } => verify(suite, order, &p, k, cli.format, cli.jobs),
        Cmd::Density { series, moduli, x } => {
            let order = x.iter().copied().max().ok_or("no checkpoints given")?;
            let which = match series {
                GSeries::GO => Which::SigmaO,
                GSeries::GE => Which::SigmaE,
            };
            let s = named_series(which, order, &cache_dir)?;
            let name = match series {
                GSeries::GO => "G_o",
                GSeries::GE => "G_e",
            };
            if cli.format == Format::Csv {
                println!("series,modulus,X,delta0");
            }
            for &m in &moduli {
                let rows = mex::density_scan(&s, m, &x);
                let monotone = rows.windows(2).all(|w| w[0].1 <= w[1].1);
                for (x, d) in &rows {
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({
                                "series": name, "modulus": m, "X": x,
                                "delta0": d.to_string(), "monotone": monotone,
                            })
                        ),
                        Format::Csv => println!("{name},{m},{x},{d}"),
                        Format::Text => {
                            println!("delta0({name}, {m}; {x}) = {d}  [monotone in X: {monotone}]")
                        }
                    }
                }
            }
            Ok(true)
        }
        Cmd::Asym {
            which,
            checkpoints,
            order,
        } => {
            let max = *checkpoints.iter().max().ok_or("no checkpoints given")?;
            if let Some(order) = order {
                if max > order {
                    return Err(format!(
                        "checkpoint {max} exceeds order {order}; rerun with --order {max}"
                    ));
                }
            }
            let precision = match std::env::var("MEXLAB_PRECISION") {
                Ok(v) => v.parse().map_err(|_| format!("bad MEXLAB_PRECISION {v:?}"))?,
                Err(_) => asym::DEFAULT_PRECISION,
            };
            let mut ctx = RealCtx::new(precision);
            let core_which = match which {
                AsymWhich::SigmaO => SeriesWhich::SigmaOdd,
                AsymWhich::SigmaE => SeriesWhich::SigmaEven,
                AsymWhich::Sigma | AsymWhich::Pair => SeriesWhich::Sigma,
            };
            let rows = ratio_rows(&mut ctx, core_which, &checkpoints)?;
            let pair = which == AsymWhich::Pair;
            if cli.format == Format::Csv {
                if pair {
                    println!("n,coefficient,main_term,ratio,odd_over_even");
                } else {
                    println!("n,coefficient,main_term,ratio");
                }
            }
            for row in rows {
                let main = ctx.format_decimal(&row.main_term, 30);
                let ratio = ctx.format_decimal(&row.ratio, 30);
                let oe = row
                    .odd_over_even
                    .as_ref()
                    .map(|v| ctx.format_decimal(v, 30));
                match cli.format {
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "n": row.n, "coefficient": row.coefficient,
                            "main_term": main, "ratio": ratio,
                            "odd_over_even": if pair { oe.clone() } else { None },
                        })
                    ),
                    Format::Csv | Format::Text => {
                        if pair {
                            println!("{},{},{main},{ratio},{}", row.n, row.coefficient, oe.unwrap());
                        } else {
                            println!("{},{},{main},{ratio}", row.n, row.coefficient);
                        }
                    }
                }
            }
            Ok(true)
        }
        Cmd::Dissect { which, order, m, r } => {
            if r >= m {
                return Err(format!("residue {r} must be smaller than step {m}"));
            }
            let series = named_series(which, order, &cache_dir)?;
            let slice = series.dissect(m, r);
            let vals: Vec<String> = slice.coeffs().iter().map(|c| c.to_string()).collect();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&vals).unwrap()),
                Format::Csv => {
                    println!("n,index,value");
                    for (n, v) in vals.iter().enumerate() {
                        println!("{n},{},{v}", m * n + r);
                    }
                }
                Format::Text => println!("{}", vals.join(" ")),
            }
            Ok(true)
        }
        Cmd::Eta { k, witness_order } => {
            let mut all_pass = true;
            let mut quotients: Vec<(String, eta::EtaQuotient)> =
                vec![("B*".to_string(), eta::build_b_star())];
            for i in 1..=k {
                quotients.push((format!("A_{i}"), eta::build_a_k(i).map_err(|e| e.to_string())?));
            }
            for (name, q) in &quotients {
                let h = q.is_holomorphic_modular_form();
                all_pass &= h.ok;
                match cli.format {
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "name": name, "ok": h.ok, "weight": h.weight.to_string(),
                            "level": h.level, "character": h.character,
                            "failing_cusp": h.failing_cusp,
                        })
                    ),
                    _ => println!(
                        "{name}: holomorphic={} weight={} level={} character={}",
                        h.ok, h.weight, h.level, h.character
                    ),
                }
            }
            if cli.format == Format::Text {
                // S-value table over the divisor classes of 288
                for i in 1..=k {
                    let row: Vec<String> = eta::divisors(288)
                        .iter()
                        .map(|&d| format!("{}", eta::s_value(i, d).unwrap()))
                        .collect();
                    println!("S(k={i}, d | 288): {}", row.join(" "));
                }
            }
            if let Some(order) = witness_order {
                for i in 1..=k.min(3) {
                    let v = eta::congruence_witness(i, order).map_err(|e| e.to_string())?;
                    let claim = format!("series congruence witness k={i} to order {order}");
                    all_pass &= v.is_pass();
                    emit_report(&v.to_report(&claim), cli.format);
                }
            }
            Ok(all_pass)
        }
    }
}

fn ratio_rows(
    ctx: &mut RealCtx,
    which: SeriesWhich,
    checkpoints: &[usize],
) -> Result<Vec<asym::RatioRow>, String> {
    asym::ratio_report(ctx, which, checkpoints).map_err(|e| e.to_string())
}

fn emit_report(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(report).unwrap()),
        _ => match &report.counterexample {
            None => println!("PASS {} ({} checked)", report.claim, report.checked),
            Some(c) => println!(
                "FAIL {} at progression index {} (value {})",
                report.claim, c.n, c.value
            ),
        },
    }
}

fn verify(suite: Suite, order: usize, primes: &[u64], k_max: u32, format: Format, jobs: usize) -> Result<bool, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let mut reports: Vec<Report> = Vec::new();

    if matches!(suite, Suite::Congruences | Suite::All) {
        let (g_o, g_e) = mex::g_series(order).map_err(|e| e.to_string())?;
        use rayon::prelude::*;
        let targets = mex::fixed_congruence_targets();
        let mut batch: Vec<Report> = pool.install(|| {
            targets
                .par_iter()
                .map(|(kind, t)| {
                    let series = match kind {
                        mex::SeriesKind::SigmaOdd => &g_o,
                        mex::SeriesKind::SigmaEven => &g_e,
                        _ => unreachable!("fixed targets only constrain the half sums"),
                    };
                    mex::check_congruence(series, t).to_report(&t.label)
                })
                .collect()
        });
        reports.append(&mut batch);
        for &p in &[5u64, 7, 11] {
            let v = mex::cooper_check(p, order).map_err(|e| e.to_string())?;
            reports.push(v.to_report(&format!("a(pn + (p^2-1)/12) recursion at p = {p}")));
        }
    }

    if matches!(suite, Suite::Identities | Suite::All) {
        let exact = order.min(500);
        for outcome in theta::verify_identity_suite(exact, order) {
            reports.push(outcome.verdict.to_report(&outcome.id));
        }
    }

    if matches!(suite, Suite::Families | Suite::All) {
        for &p in primes {
            for part in [mex::FamilyPart::One, mex::FamilyPart::Two, mex::FamilyPart::Three] {
                let params = mex::FamilyParams { p, part };
                if params.validate().is_err() {
                    continue; // prime not admissible for this clause
                }
                let targets = params.targets().map_err(|e| e.to_string())?;
                let min_order = targets.iter().map(|t| t.modulus * 8).max().unwrap_or(0);
                let (g_o, g_e) = mex::g_series(order.max(min_order)).map_err(|e| e.to_string())?;
                let series = match params.series() {
                    mex::SeriesKind::SigmaOdd => &g_o,
                    _ => &g_e,
                };
                for t in &targets {
                    reports.push(mex::check_congruence(series, t).to_report(&t.label));
                }
            }
        }
    }

    if matches!(suite, Suite::Eta | Suite::All) {
        for k in 1..=k_max {
            let q = eta::build_a_k(k).map_err(|e| e.to_string())?;
            let h = q.is_holomorphic_modular_form();
            let verdict = if h.ok {
                mexlab_core::report::Verdict::Pass {
                    checked: eta::divisors(288).len(),
                }
            } else {
                mexlab_core::report::Verdict::Fail {
                    n: h.failing_cusp.unwrap_or(0) as usize,
                    value: "negative cusp order or failed entry conditions".to_string(),
                }
            };
            reports.push(verdict.to_report(&format!(
                "index-{k} eta quotient is a holomorphic form (weight {})",
                h.weight
            )));
        }
        let witness_order = order.min(600);
        for k in 1..=k_max.min(3) {
            let v = eta::congruence_witness(k, witness_order).map_err(|e| e.to_string())?;
            reports.push(v.to_report(&format!("series congruence witness k={k}")));
        }
    }

    let mut all_pass = true;
    for r in &reports {
        all_pass &= r.status == "pass";
        emit_report(r, format);
    }
    Ok(all_pass)
}
