//! Command-line front end: reproducible CSV datasets for every sweep the
//! library computes, plus a `verify` command running the full cross-route
//! equivalence suite.
//!
//! Output conventions: CSV with one header row, UTF-8, LF line endings,
//! floats at 12 significant digits, rows sorted on their key columns. A
//! fixed command line (including `--seed`) always produces byte-identical
//! output. Exit codes: 0 success, 1 invalid parameters or I/O failure,
//! 2 usage error, 3 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use grover_noise::analysis::{
    compare_iteration_rules, critical_p, default_p_grid, fit_mmax_vs_p, mmax_noisy, pc_sweep,
    probability_curve, scaling_exponent, IterationRule,
};
use grover_noise::analytic::{noisy_success_prob, povm_success_prob};
use grover_noise::verify::{run_verification, VerifyConfig};
use grover_noise::{DatabaseSpec, NoiseSpec, PovmSpec};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "grover-noise",
    version,
    about = "Quantum-search success probabilities under a depolarizing channel: \
             curves, critical-noise thresholds and iteration-count analysis as CSV"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Comma-separated list of noise strengths, e.g. `0.01,0.04,0.083394`.
#[derive(Debug, Clone)]
struct PList(Vec<f64>);

impl FromStr for PList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad noise strength {part:?}: {e}"))
            })
            .collect::<Result<Vec<f64>, String>>()?;
        if values.is_empty() {
            return Err("empty noise-strength list".into());
        }
        Ok(PList(values))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum MRule {
    /// floor(pi sqrt(N) / 4)
    #[default]
    Int,
    /// exact integer argmax of the noise-free success probability
    Argmax,
}

impl From<MRule> for IterationRule {
    fn from(rule: MRule) -> Self {
        match rule {
            MRule::Int => IterationRule::FloorPiSqrtN,
            MRule::Argmax => IterationRule::IntegerArgmax,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Success probability vs iteration count: columns m,p,prob
    Curve {
        /// Database size N
        #[arg(long)]
        n: usize,
        /// Comma-separated noise strengths
        #[arg(long)]
        p: PList,
        /// Largest iteration count (inclusive)
        #[arg(long)]
        m_upper: u32,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal vs detector-error POVM curve:
    /// columns m,p,epsilon,r,prob_ortho,prob_povm
    PovmCurve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: PList,
        /// Detector-error smearing
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Number of POVM outcomes (defaults to N + 3)
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m_upper: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical noise strength for one database size
    Pcrit {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MRule::Int)]
        m_rule: MRule,
        /// Also write a CSV row (columns n,N,p_c)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical noise across power-of-two sizes: columns n,N,p_c
    PcSweep {
        /// Smallest exponent (N = 2^n)
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        /// Largest exponent
        #[arg(long, default_value_t = 21)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = MRule::Int)]
        m_rule: MRule,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peak of the success probability vs noise:
    /// columns p,m_continuous,m_integer,peak_prob
    Mmax {
        #[arg(long)]
        n: usize,
        /// Noise strengths (defaults to 50 points spanning [0, p_c])
        #[arg(long)]
        p: Option<PList>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least-squares line through the peak location vs noise:
    /// single row N,intercept,slope
    Fit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<PList>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Long-format probability surface over (m, p): columns m,p,prob
    Surface {
        #[arg(long)]
        n: usize,
        /// Noise strengths (defaults to 50 points spanning [0, p_c])
        #[arg(long)]
        p: Option<PList>,
        #[arg(long)]
        m_upper: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Success probability under the fitted iteration rule vs the
    /// pi sqrt(N)/4 rule: columns p,m_fit,m_pi,prob_fit,prob_pi,abs_diff
    CompareRules {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<PList>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-route verification suite and report check counts
    Verify {
        /// Largest database size for the dense suites
        #[arg(long, default_value_t = 32)]
        max_n: usize,
        /// Seed for the randomized channel checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Format with 12 significant digits, plain decimal.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn write_csv(out: Option<&PathBuf>, header: &str, rows: &[String]) -> std::io::Result<()> {
    let mut text = String::with_capacity((rows.len() + 1) * 32);
    writeln!(text, "{header}").expect("string write");
    for row in rows {
        writeln!(text, "{row}").expect("string write");
    }
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sorted_strengths(p: &PList) -> Vec<f64> {
    let mut values = p.0.clone();
    values.sort_by(f64::total_cmp);
    values
}

fn grid_or_default(n: usize, p: Option<&PList>) -> Result<Vec<f64>, grover_noise::Error> {
    match p {
        Some(list) => Ok(sorted_strengths(list)),
        None => default_p_grid(n, 50),
    }
}

fn exponent_field(size: usize) -> String {
    if size.is_power_of_two() {
        size.trailing_zeros().to_string()
    } else {
        String::new()
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Curve { n, p, m_upper, out } => {
            let db = DatabaseSpec::of_size(n)?;
            let mut rows = Vec::new();
            for p in sorted_strengths(&p) {
                let noise = NoiseSpec::new(p)?;
                let curve = probability_curve(&db, &noise, None, m_upper)?;
                for (m, prob) in curve.points {
                    rows.push(format!("{m},{},{}", fmt_sig(p), fmt_sig(prob)));
                }
            }
            write_csv(out.as_ref(), "m,p,prob", &rows)?;
        }

        Command::PovmCurve {
            n,
            p,
            epsilon,
            r,
            m_upper,
            out,
        } => {
            let db = DatabaseSpec::of_size(n)?;
            let outcomes = r.unwrap_or(n + 3);
            let povm = PovmSpec::new(epsilon, outcomes)?;
            let mut rows = Vec::new();
            for p in sorted_strengths(&p) {
                let noise = NoiseSpec::new(p)?;
                for m in 0..=m_upper {
                    let ortho = noisy_success_prob(&db, &noise, m);
                    let smeared = povm_success_prob(&db, &noise, &povm, m)?;
                    rows.push(format!(
                        "{m},{},{},{outcomes},{},{}",
                        fmt_sig(p),
                        fmt_sig(epsilon),
                        fmt_sig(ortho),
                        fmt_sig(smeared)
                    ));
                }
            }
            write_csv(out.as_ref(), "m,p,epsilon,r,prob_ortho,prob_povm", &rows)?;
        }

        Command::Pcrit { n, m_rule, out } => {
            let critical = critical_p(n, m_rule.into())?;
            println!(
                "n={},N={},p_c={}",
                exponent_field(critical.size),
                critical.size,
                fmt_sig(critical.p_c)
            );
            if out.is_some() {
                let row = format!(
                    "{},{},{}",
                    exponent_field(critical.size),
                    critical.size,
                    fmt_sig(critical.p_c)
                );
                write_csv(out.as_ref(), "n,N,p_c", &[row])?;
            }
        }

        Command::PcSweep {
            n_min,
            n_max,
            m_rule,
            out,
        } => {
            let sweep = pc_sweep(n_min, n_max, m_rule.into())?;
            let rows: Vec<String> = sweep
                .iter()
                .map(|c| format!("{},{},{}", exponent_field(c.size), c.size, fmt_sig(c.p_c)))
                .collect();
            write_csv(out.as_ref(), "n,N,p_c", &rows)?;
            let slope = scaling_exponent(&sweep)?;
            eprintln!("scaling_exponent={}", fmt_sig(slope));
        }

        Command::Mmax { n, p, out } => {
            let db = DatabaseSpec::of_size(n)?;
            let mut rows = Vec::new();
            for p in grid_or_default(n, p.as_ref())? {
                let noise = NoiseSpec::new(p)?;
                let peak = mmax_noisy(&db, &noise)?;
                rows.push(format!(
                    "{},{},{},{}",
                    fmt_sig(p),
                    fmt_sig(peak.m_continuous),
                    peak.m_integer,
                    fmt_sig(peak.peak_prob)
                ));
            }
            write_csv(out.as_ref(), "p,m_continuous,m_integer,peak_prob", &rows)?;
        }

        Command::Fit { n, p, out } => {
            let db = DatabaseSpec::of_size(n)?;
            let grid = grid_or_default(n, p.as_ref())?;
            let (intercept, slope) = fit_mmax_vs_p(&db, &grid)?;
            let row = format!("{n},{},{}", fmt_sig(intercept), fmt_sig(slope));
            write_csv(out.as_ref(), "N,intercept,slope", &[row])?;
        }

        Command::Surface { n, p, m_upper, out } => {
            let db = DatabaseSpec::of_size(n)?;
            let mut rows = Vec::new();
            for p in grid_or_default(n, p.as_ref())? {
                let noise = NoiseSpec::new(p)?;
                let curve = probability_curve(&db, &noise, None, m_upper)?;
                for (m, prob) in curve.points {
                    rows.push(format!("{m},{},{}", fmt_sig(p), fmt_sig(prob)));
                }
            }
            write_csv(out.as_ref(), "m,p,prob", &rows)?;
        }

        Command::CompareRules { n, p, out } => {
            let db = DatabaseSpec::of_size(n)?;
            let grid = grid_or_default(n, p.as_ref())?;
            let rows: Vec<String> = compare_iteration_rules(&db, &grid)?
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{}",
                        fmt_sig(r.p),
                        r.m_fit,
                        r.m_pi,
                        fmt_sig(r.prob_fit),
                        fmt_sig(r.prob_pi),
                        fmt_sig(r.abs_diff)
                    )
                })
                .collect();
            write_csv(
                out.as_ref(),
                "p,m_fit,m_pi,prob_fit,prob_pi,abs_diff",
                &rows,
            )?;
        }

        Command::Verify { max_n, seed } => {
            let report = run_verification(&VerifyConfig { max_n, seed });
            for suite in &report.suites {
                let status = if suite.passed() { "ok" } else { "FAILED" };
                println!("{}: {} checks {status}", suite.name, suite.checks);
            }
            println!("total: {} checks", report.total_checks());
            if let Some(failure) = report.first_failure() {
                eprintln!("verification failed: {failure}");
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
