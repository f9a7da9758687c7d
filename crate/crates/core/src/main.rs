use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use hopf_bratteli::brat::{analyze, analyze_case, decompose, parse_level, AnalyzeOptions, BundleReport, LevelReport};
use hopf_bratteli::bundles::{build_case2, Case2Form, trivialization_mn, BundleCase, StrongConnectionReport};
use hopf_bratteli::calculus::{calculus_report, parse_subset, CalculusReport};
use hopf_bratteli::report::{all_passed, Check};
use hopf_bratteli::{CycNum, Error};

#[derive(Parser)]
#[command(name = "bratteli", version, about = "Hopf-Galois analysis of Bratteli levels and elementary bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a level file into stages and analyze every piece.
    Analyze {
        file: PathBuf,
        /// Write the JSON report here, or to stdout when no path is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
        /// Also test the undecomposed embedding as a bare subalgebra.
        #[arg(long)]
        direct: bool,
    },
    /// Block-diagonal embedding into M_m with the given block lengths.
    Case1 {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Diagonal embedding M_k ⊂ M_{kn}.
    Case2 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Replication of M_{d_1} ⊕ … into n copies.
    Case3 {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Trivialization of the M_n bundle.
    Trivial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// First-order calculus on M_n induced by a subset of Z_n × Z_n.
    Calculus {
        #[arg(long)]
        n: usize,
        /// Group elements like "(0,1),(1,1)"; empty for the zero calculus.
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long)]
        json: bool,
    },
}

/// 0: everything positive, 1: a negative verdict or failed check.
fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "ok  "
    } else {
        "FAIL"
    }
}

fn print_checks(indent: &str, checks: &[Check]) {
    for c in checks {
        match &c.witness {
            None => println!("{indent}{} {}", mark(c.passed), c.name),
            Some(w) => println!("{indent}{} {}: {w}", mark(c.passed), c.name),
        }
    }
}

fn print_strong(indent: &str, title: &str, r: &StrongConnectionReport) {
    println!("{indent}{title}:");
    print_checks(&format!("{indent}  "), &r.checks);
}

fn print_bundle(indent: &str, r: &BundleReport) {
    println!("{indent}{} — P = {}, H = C[{}], dim A = {}", r.case, r.algebra, r.group, r.coinvariant_dim);
    let v = &r.verdict;
    println!(
        "{indent}  Hopf-Galois: {} (dim P⊗_A P = {}, dim P⊗H = {}{})",
        v.is_hopf_galois,
        v.dims.0,
        v.dims.1,
        v.obstruction.as_ref().map(|o| format!("; {o}")).unwrap_or_default()
    );
    print_checks(&format!("{indent}  "), &[r.back_map.clone(), r.connections_equal.clone()]);
    print_strong(&format!("{indent}  "), "closed-form connection", &r.closed_form);
    print_strong(&format!("{indent}  "), "integral construction", &r.integral_construction);
    for p in &r.printed_formula {
        let reading = match p.reading {
            Case2Form::PrintedBlockIndex => "sums over block indices",
            Case2Form::PrintedRawZm => "sums over Z_m",
            Case2Form::Corrected => "corrected",
        };
        match &p.witness {
            None => println!("{indent}  printed Case 2 formula ({reading}) matches"),
            Some(w) => println!("{indent}  printed Case 2 formula ({reading}) differs: {w}"),
        }
    }
}

fn print_level(r: &LevelReport) {
    println!("level: {}", r.level);
    for s in &r.stages {
        println!("{}:", s.stage);
        for p in &s.pieces {
            match &p.bundle {
                None => println!("  {} — identity", p.label),
                Some(b) => {
                    println!("  {}", p.label);
                    print_bundle("    ", b);
                }
            }
        }
    }
    print_checks("", std::slice::from_ref(&r.composite));
    if let Some(d) = &r.direct {
        println!(
            "direct subalgebra verdict: {} (dim P⊗_A P = {}{})",
            d.is_hopf_galois,
            d.dims.0,
            d.obstruction.as_ref().map(|o| format!("; {o}")).unwrap_or_default()
        );
    }
    println!("{}", if r.all_positive() { "PASS" } else { "FAIL" });
}

fn print_calculus(r: &CalculusReport) {
    println!("H = C[{}], subset {{{}}}", r.group, r.subset.join(", "));
    println!("  {} (rank {}, dim P·dP = {})", r.description, r.rank, r.forms_dim);
    println!(
        "  universal calculus: dim ker m = {}, image rank {}",
        r.universal_dim, r.universal_image_rank
    );
    if let Some(theta) = &r.inner_element {
        println!("  inner element components: {}", theta.join("; "));
    }
    for rel in &r.relations_sample {
        println!("  {rel}");
    }
    print_checks("  ", &r.checks);
}

fn run_case(case: BundleCase, json: bool) -> Result<ExitCode, Error> {
    let r = analyze_case::<CycNum>(&case)?;
    if json {
        print_json(&r);
    } else {
        print_bundle("", &r);
    }
    Ok(status(r.passed()))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze {
            file,
            json,
            max_dim,
            direct,
        } => {
            let text = fs::read_to_string(&file).map_err(|e| Error::Malformed(format!("{}: {e}", file.display())))?;
            let level = parse_level(&text)?;
            let plan = decompose::<CycNum>(&level)?;
            let report = analyze(&plan, &AnalyzeOptions { max_dim, direct })?;
            match json.as_deref() {
                Some("-") => print_json(&report),
                Some(path) => {
                    let body = serde_json::to_string_pretty(&report).expect("serializable");
                    fs::write(path, body).map_err(|e| Error::Malformed(format!("{path}: {e}")))?;
                    print_level(&report);
                }
                None => print_level(&report),
            }
            Ok(status(report.all_positive()))
        }
        Command::Case1 { lengths, json } => run_case(BundleCase::Case1 { lengths }, json),
        Command::Case2 { k, n, json } => run_case(BundleCase::Case2 { k, n }, json),
        Command::Case3 { dims, n, json } => run_case(BundleCase::Case3 { b: dims, n }, json),
        Command::Trivial { n, json } => {
            let t = trivialization_mn::<CycNum>(n)?;
            let group = t.bundle.group();
            if json {
                let fmt = |m: &[Vec<CycNum>]| -> Vec<Vec<String>> {
                    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
                };
                print_json(&json!({
                    "n": n,
                    "beta": fmt(&t.beta),
                    "gamma": fmt(&t.gamma),
                    "phi": group.elements().map(|g| json!({
                        "element": group.format_elem(g),
                        "value": t.phi[g].to_json(),
                    })).collect::<Vec<_>>(),
                    "psi": group.elements().map(|g| json!({
                        "element": group.format_elem(g),
                        "value": t.psi[g].to_json(),
                    })).collect::<Vec<_>>(),
                    "residuals": t.residuals.iter().map(|(k, s, r)| json!([k, s, r.to_string()])).collect::<Vec<_>>(),
                    "checks": t.checks,
                }));
            } else {
                println!("trivialization of M_{n} over C[{group}], β_{{0,k}} = γ_{{k,0}} = 1/{n}");
                print_checks("  ", &t.checks);
            }
            Ok(status(t.passed()))
        }
        Command::Calculus { n, subset, json } => {
            let bundle = build_case2::<CycNum>(1, n)?;
            let subset = parse_subset(bundle.group(), &subset)?;
            let r = calculus_report(&bundle, &subset)?;
            if json {
                print_json(&r);
            } else {
                print_calculus(&r);
            }
            Ok(status(all_passed(&r.checks)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
