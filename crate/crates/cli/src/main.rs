use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use solvdeg::bounds::{bound_report, complexity_estimate};
use solvdeg::groebner::{buchberger, BuchbergerConfig, Strategy, TieBreak};
use solvdeg::harness::{
    example1_check, example1_system, reproduce_tables, run_survey, SurveyConfig, TableKind, TableSpec,
    SCHEMA_VERSION,
};
use solvdeg::hilbert::{lm_ideal, regularity_degrees};
use solvdeg::io::{read_system, write_basis};
use solvdeg::macaulay::{sd_mac, sd_mut};
use solvdeg::regularity::Analysis;
use solvdeg::PolySystem;

#[derive(Parser)]
#[command(name = "solvdeg", version, about = "Solving degrees, Hilbert series and bounds for polynomial systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form bounds as CSV, one row per m.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Degree list; with --m-range it is padded with its last entry.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Inclusive range `a..b` of m values.
        #[arg(long, value_parser = parse_range)]
        m_range: Option<(usize, usize)>,
        #[arg(long)]
        s0: Option<u32>,
        /// Add the complexity estimate at D_new for this omega.
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Reduced Gröbner basis with telemetry.
    Gb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
        #[arg(long, value_enum, default_value = "normal")]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "oldest")]
        tie: TieArg,
        #[arg(long)]
        homogenize: bool,
    },
    /// Macaulay-matrix solving degrees.
    SolveDegree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long)]
        dmax: u32,
    },
    /// Hilbert function, series numerator and regularity degrees.
    Hilbert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        homogenize: bool,
    },
    /// Regularity classification and the structural checks.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Random-system survey; exits 1 on any violation.
    Survey {
        #[arg(long)]
        n: usize,
        /// `6`, `5..7` or `5,6,7`.
        #[arg(long, value_parser = parse_m)]
        m: MList,
        #[arg(long, default_value_t = 2)]
        deg: u32,
        #[arg(long, default_value_t = 31)]
        q: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Include per-trial wall-clock times (output no longer reproducible).
        #[arg(long)]
        timing: bool,
        /// Skip the Macaulay solving degrees.
        #[arg(long)]
        no_solving_degrees: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only print the aggregate, not every trial.
        #[arg(long)]
        summary: bool,
    },
    /// Bound tables for n = 9, 10 as CSV.
    Tables {
        #[arg(long, value_enum, default_value = "all")]
        which: WhichArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Regression check of the worked example over F_73; exits 1 on mismatch.
    Example1 {
        /// Check this system instead of the built-in one.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Drl,
    Hdrl,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Normal,
    Sugar,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Oldest,
    Newest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Mac,
    Mut,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Table1,
    Table2,
    All,
}

#[derive(Clone, Debug)]
struct MList(Vec<usize>);

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_m(s: &str) -> Result<MList, String> {
    if s.contains("..") {
        let (a, b) = parse_range(s)?;
        return Ok(MList((a..=b).collect()));
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("{e}"))).collect::<Result<_, _>>().map(MList)
}

/// Input problems are the caller's fault: exit code 2.
struct UsageError(anyhow::Error);

fn load(path: &PathBuf) -> Result<PolySystem, UsageError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(UsageError)?;
    read_system(&text).with_context(|| format!("parsing {}", path.display())).map_err(UsageError)
}

/// Write to stdout; a closed pipe (`| head`) ends the process quietly.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn degree_list(base: &[u32], m: usize) -> Vec<u32> {
    let last = *base.last().expect("non-empty");
    (0..m).map(|i| base.get(i).copied().unwrap_or(last)).collect()
}

fn bounds_csv(n: usize, degrees: &[u32], m_range: Option<(usize, usize)>, s0: Option<u32>, omega: Option<f64>) -> Result<String> {
    let mut out = format!("# schema={SCHEMA_VERSION}\n");
    out.push_str(&format!("# config: bounds n={n} degrees={degrees:?} m_range={m_range:?} s0={s0:?} omega={omega:?}\n"));
    out.push_str("n,m,degrees,lazard,thm12_main,thm12_refined,d_reg,d_new,two_d_minus_1,two_d_minus_2,d_plus_s0");
    if omega.is_some() {
        out.push_str(",complexity_full,complexity_without_zero_reductions");
    }
    out.push('\n');
    let (a, b) = m_range.unwrap_or((degrees.len(), degrees.len()));
    let opt = |v: Option<u32>| v.map_or(String::new(), |x| x.to_string());
    for m in a..=b {
        let ds = degree_list(degrees, m);
        let r = bound_report(n, &ds, s0)?;
        let shown: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!(
            "{n},{m},{},{},{},{},{},{},{},{},{}",
            shown.join(" "),
            r.lazard,
            opt(r.thm12_main),
            opt(r.thm12_refined),
            r.d_reg_formula,
            r.d_new,
            opt(r.two_d_minus_1),
            opt(r.two_d_minus_2),
            opt(r.d_plus_s0),
        ));
        if let Some(w) = omega {
            match r.d_new.finite() {
                Some(d) => {
                    let c = complexity_estimate(n as u64, m as u64, d as u64, w)?;
                    out.push_str(&format!(",{},{}", c.full, c.without_zero_reductions));
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn run(cmd: Cmd) -> Result<ExitCode, UsageError> {
    let fail = |e: anyhow::Error| UsageError(e);
    match cmd {
        Cmd::Bounds { n, degrees, m_range, s0, omega } => {
            if degrees.is_empty() {
                return Err(UsageError(anyhow::anyhow!("--degrees must not be empty")));
            }
            out!("{}", bounds_csv(n, &degrees, m_range, s0, omega).map_err(fail)?);
        }
        Cmd::Gb { input, order, strategy, tie, homogenize } => {
            let mut sys = load(&input)?;
            let hom = homogenize || (matches!(order, Some(OrderArg::Hdrl)) && !sys.ring().is_homogenized());
            if hom {
                sys = sys.homogenize().map_err(|e| fail(e.into()))?;
            }
            let cfg = BuchbergerConfig {
                strategy: match strategy {
                    StrategyArg::Normal => Strategy::Normal,
                    StrategyArg::Sugar => Strategy::Sugar,
                },
                tie_break: match tie {
                    TieArg::Oldest => TieBreak::Oldest,
                    TieArg::Newest => TieBreak::Newest,
                },
            };
            let trace = buchberger(sys.polys(), cfg);
            outln!("# schema={SCHEMA_VERSION}");
            outln!("# config: {}", json!({"input": input, "homogenize": hom, "strategy": format!("{:?}", cfg.strategy).to_lowercase(), "tie": format!("{:?}", cfg.tie_break).to_lowercase()}));
            out!("{}", write_basis(sys.ring(), &trace.reduced_basis));
            let lms: Vec<String> = trace.leading_monomials().iter().map(|m| sys.ring().fmt_monomial(m)).collect();
            outln!("# lm: {}", lms.join(", "));
            outln!("# telemetry: {}", serde_json::to_string(&trace.telemetry()).expect("serializable"));
        }
        Cmd::SolveDegree { input, method, dmax } => {
            let sys = load(&input)?;
            let gb = buchberger(sys.polys(), BuchbergerConfig::default());
            let method_name = match method {
                MethodArg::Mac => "mac",
                MethodArg::Mut => "mut",
                MethodArg::All => "all",
            };
            let mut v = json!({
                "schema": SCHEMA_VERSION,
                "config": {"input": input, "method": method_name, "dmax": dmax},
                "max_gb_degree": gb.max_gb_degree,
            });
            if method != MethodArg::Mut {
                let r = sd_mac(&sys, dmax).map_err(|e| fail(e.into()))?;
                v["sd_mac"] = json!(r.degree);
                v["matrix_dims_per_degree"] = json!(r.dims);
            }
            if method != MethodArg::Mac {
                let r = sd_mut(&sys, dmax).map_err(|e| fail(e.into()))?;
                v["sd_mut"] = json!(r.degree);
                v["mutant_dims_per_degree"] = json!(r.dims);
                v["mutant_rows_appended"] = json!(r.appended);
            }
            print_json(&v);
        }
        Cmd::Hilbert { input, homogenize } => {
            let mut sys = load(&input)?;
            if homogenize {
                sys = sys.homogenize().map_err(|e| fail(e.into()))?;
            }
            let gb = buchberger(sys.polys(), BuchbergerConfig::default()).reduced_basis;
            let s = regularity_degrees(&lm_ideal(&gb));
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "config": {"input": input, "homogenize": homogenize},
                "hf": s.hf,
                "numerator": s.hs_numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "denominator_power": s.denominator_power,
                "d_reg": s.d_reg,
                "gen_d_reg": s.gen_d_reg,
                "N": s.hilbert_poly_constant.map(|c| c.to_string()),
                "artinian": s.artinian,
                "zero_dimensional": s.zero_dimensional,
            }));
        }
        Cmd::Analyze { input } => {
            let sys = load(&input)?;
            let a = Analysis::new(&sys).map_err(|e| fail(e.into()))?;
            let report = a.report().map_err(|e| fail(e.into()))?;
            let thm = a.theorem_1_1().map_err(|e| fail(e.into()))?;
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "config": {"input": input},
                "report": report,
                "theorem_1_1": thm,
                "lemmas_4x": a.lemmas_4x(),
            }));
        }
        Cmd::Survey { n, m, deg, q, trials, seed, threads, timing, no_solving_degrees, out, summary } => {
            let cfg = SurveyConfig { n, m: m.0, degree: deg, q, trials, seed, threads, timing, solving_degrees: !no_solving_degrees };
            let report = run_survey(&cfg);
            let mut v = serde_json::to_value(&report).expect("serializable");
            if summary {
                v.as_object_mut().expect("object").remove("per_trial");
            }
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            match out {
                Some(p) => std::fs::write(&p, text + "\n").with_context(|| format!("writing {}", p.display())).map_err(fail)?,
                None => outln!("{text}"),
            }
            if report.total_violations() > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Tables { which, n } => {
            let specs: Vec<TableSpec> = TableSpec::all_blocks()
                .into_iter()
                .filter(|s| match which {
                    WhichArg::Table1 => s.which == TableKind::Table1,
                    WhichArg::Table2 => s.which == TableKind::Table2,
                    WhichArg::All => true,
                })
                .filter(|s| n.map_or(true, |n| s.n == n))
                .collect();
            if specs.is_empty() {
                return Err(UsageError(anyhow::anyhow!("no table block matches (n must be 9 or 10)")));
            }
            out!("{}", reproduce_tables(&specs).map_err(|e| fail(e.into()))?);
        }
        Cmd::Example1 { input } => {
            let sys = match &input {
                Some(p) => load(p)?,
                None => example1_system(),
            };
            let verdict = example1_check(&sys).map_err(|e| fail(anyhow::anyhow!(e)))?;
            let mut v = serde_json::to_value(&verdict).expect("serializable");
            v["config"] = json!({"input": input});
            print_json(&v);
            for c in verdict.checks.iter().filter(|c| !c.ok) {
                eprintln!("FAIL {}: expected {}, got {}", c.name, c.expected, c.got);
                for line in &c.diff {
                    eprintln!("    {line}");
                }
            }
            if !verdict.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
