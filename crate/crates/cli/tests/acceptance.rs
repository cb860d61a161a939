//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero on any failure
//! other than the known misprint in the mixed-degree table.

use std::process::Command;
use std::time::Instant;

use solvdeg::harness::{example1_check, example1_system, koszul_oracle_pool, run_survey, SurveyConfig, SurveyReport};
use solvdeg::macaulay::SolvingDegree;

/// Rows as printed: (table, n, lazard, thm12, d_new, d, 2d-1), m = n+1..
type Block = (&'static str, usize, [&'static [u32]; 5]);

const PRINTED: [Block; 4] = [
    (
        "table1",
        9,
        [&[11; 9], &[11; 9], &[11, 6, 6, 5, 5, 4, 4, 4, 4], &[6, 5, 5, 4, 4, 4, 4, 4, 4], &[11, 9, 9, 7, 7, 7, 7, 7, 7]],
    ),
    (
        "table1",
        10,
        [
            &[12; 10],
            &[12; 10],
            &[12, 7, 6, 5, 5, 5, 5, 4, 4, 4],
            &[6, 6, 5, 5, 4, 4, 4, 4, 4, 4],
            &[11, 11, 9, 9, 7, 7, 7, 7, 7, 7],
        ],
    ),
    (
        "table2",
        9,
        [
            &[20; 9],
            &[20, 19, 18, 17, 16, 15, 14, 13, 12],
            &[20, 11, 9, 8, 7, 7, 6, 6, 5],
            &[10, 9, 8, 7, 6, 6, 6, 5, 5],
            &[19, 17, 15, 13, 11, 11, 9, 9, 9],
        ],
    ),
    (
        "table2",
        10,
        [
            &[22; 10],
            &[22, 21, 20, 19, 18, 17, 16, 15, 14, 13],
            &[22, 12, 10, 9, 8, 7, 7, 6, 6, 6],
            &[11, 10, 9, 8, 7, 6, 6, 6, 5, 5],
            &[21, 19, 17, 15, 13, 11, 11, 11, 9, 9],
        ],
    ),
];

const COLUMNS: [&str; 5] = ["lazard", "thm12", "d_new", "d", "two_d_minus_1"];

/// The printed D at table2 n=9 m=16 is 6; its own 2D-1 column says 9, and
/// the series 1+9z+38z^2+93z^3+120z^4-21z^5 gives 5.
const KNOWN_MISPRINT: &str = "table2 n=9 m=16 d: printed 6, got 5";

struct Line {
    id: &'static str,
    ok: bool,
    detail: String,
}

fn solvdeg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_solvdeg")).args(args).output().expect("binary runs")
}

fn tables() -> (Line, Vec<String>) {
    let t = Instant::now();
    let out = solvdeg(&["tables"]);
    let secs = t.elapsed().as_secs_f64();
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').collect()).collect();
    let mut diffs = Vec::new();
    let mut cells = 0;
    for (table, n, cols) in PRINTED {
        for (k, m) in (n + 1..=2 * n).enumerate() {
            let Some(row) = rows.iter().find(|r| r[0] == table && r[1] == n.to_string() && r[2] == m.to_string()) else {
                diffs.push(format!("{table} n={n} m={m}: row missing"));
                continue;
            };
            for (c, name) in COLUMNS.iter().enumerate() {
                cells += 1;
                if row[3 + c] != cols[c][k].to_string() {
                    diffs.push(format!("{table} n={n} m={m} {name}: printed {}, got {}", cols[c][k], row[3 + c]));
                }
            }
        }
    }
    let ok = out.status.success() && diffs.is_empty() && secs < 1.0;
    let detail = format!("{}/{cells} cells equal, {secs:.2}s; {}", cells - diffs.len(), diffs.join("; "));
    (Line { id: "1 table reproduction", ok, detail }, diffs)
}

fn example1() -> Line {
    let t = Instant::now();
    let status = solvdeg(&["example1"]).status;
    let secs = t.elapsed().as_secs_f64();
    let v = example1_check(&example1_system()).unwrap();
    let failed: Vec<&str> = v.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
    Line {
        id: "2 example-1 regression",
        ok: status.success() && v.passed && secs < 1.0,
        detail: format!("{} checks, failed {failed:?}, {secs:.2}s", v.checks.len()),
    }
}

fn surveys() -> Vec<SurveyReport> {
    [(3, 5), (4, 6), (5, 7)]
        .into_iter()
        .map(|(n, m)| run_survey(&SurveyConfig { n, m: vec![m], trials: 50, seed: 2024, ..SurveyConfig::default() }))
        .collect()
}

fn per_cell(reports: &[SurveyReport], f: impl Fn(&SurveyReport) -> String) -> String {
    reports
        .iter()
        .map(|r| format!("({},{}): {}", r.config.n, r.config.m[0], f(r)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let mut lines = Vec::new();
    let (tab, diffs) = tables();
    let only_known = diffs.len() == 1 && diffs[0] == KNOWN_MISPRINT;
    lines.push(tab);
    lines.push(example1());

    let t = Instant::now();
    let reports = surveys();
    let secs = t.elapsed().as_secs_f64();
    let clean = |r: &SurveyReport| r.errors == 0 && r.trials == 50;
    lines.push(Line {
        id: "3 theorem-1.1 survey",
        ok: reports.iter().all(|r| clean(r) && r.thm11_checked > 0 && r.thm11_violations == 0 && r.lemma4x_violations == 0),
        detail: per_cell(&reports, |r| {
            format!("checked {} violations {} lemma {}", r.thm11_checked, r.thm11_violations, r.lemma4x_violations)
        }) + &format!("; {secs:.1}s"),
    });
    let exceeded = |r: &SurveyReport| {
        r.per_trial
            .iter()
            .filter_map(|t| t.solving_degrees.as_ref())
            .filter(|s| matches!(s.sd_mac, SolvingDegree::Exceeded { .. }))
            .count()
    };
    lines.push(Line {
        id: "4 solving-degree chain",
        ok: reports.iter().all(|r| clean(r) && r.chain_violations == 0),
        detail: per_cell(&reports, |r| format!("violations {} sd_mac capped {}", r.chain_violations, exceeded(r))),
    });
    lines.push(Line {
        id: "5 bound suite",
        ok: reports.iter().all(|r| clean(r) && r.bound_violations == 0),
        detail: per_cell(&reports, |r| {
            format!("violations {} csr {:?}", r.bound_violations, r.csr_rate.unwrap_or(0.0))
        }),
    });

    let pool = koszul_oracle_pool(100, 6, 6);
    let skipped = pool.iter().filter(|c| c.skipped).count();
    let disagree = pool.iter().filter(|c| !c.agrees()).count();
    lines.push(Line {
        id: "6 koszul oracle",
        ok: disagree == 0 && skipped == 0,
        detail: format!("{} systems, {disagree} disagreements, {skipped} over the size cap", pool.len()),
    });
    lines.push(Line {
        id: "7 dehomogenization",
        ok: reports.iter().all(|r| clean(r) && r.dehomogenization_violations == 0),
        detail: per_cell(&reports, |r| format!("violations {}", r.dehomogenization_violations)),
    });
    lines.push(Line {
        id: "8 step-degree telemetry",
        ok: reports.iter().all(|r| clean(r) && r.step_degree_violations == 0),
        detail: per_cell(&reports, |r| format!("violations {}", r.step_degree_violations)),
    });

    for l in &lines {
        println!("criterion {:<26} {}  {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.detail);
    }
    let gcsr = reports[1].gcsr_rate.unwrap_or(0.0);
    println!("info gcsr_rate (4,6,q=31): {gcsr:.2} (expected above 0.90, not a gate)");

    let unexpected: Vec<&str> =
        lines.iter().filter(|l| !l.ok && !(l.id.starts_with('1') && only_known)).map(|l| l.id).collect();
    if !only_known && !lines[0].ok {
        println!("table failures beyond the known misprint");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
