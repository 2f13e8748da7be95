//! Command-line front door: verification suites, point classification,
//! circle scans, curve and table emission.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (or a
//! requested computation has no answer, e.g. bisection without a crossing),
//! 2 on usage errors. Output goes to `--out` (default stdout); CSV uses `.`
//! decimals and LF line endings, and rows are emitted in sample order so
//! runs are reproducible. The environment variable `ADSCAUSAL_TOL` overrides
//! the default tolerance; `--tol` overrides both.

use std::f64::consts::PI;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::causal::{circle_roots, Analyzer, CausalClass, DEFAULT_GRID, DEFAULT_TOL};
use crate::exp_group::PointCoords;
use crate::lie_core::{verify_structure, Algebra, StructureDump};
use crate::reductive::{canonical_bases, verify_reductive};

#[derive(Parser, Debug)]
#[command(name = "adscausal", version, about = "Exact so(2,n) structure and AdS causal analysis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for the randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance override (also settable through ADSCAUSAL_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output path, or "-" for stdout.
    #[arg(long, global = true, default_value = "-")]
    out: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the exact structure and reductive suites for 2..=n.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Classify one point given as PointCoords JSON (inline or a file path).
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Classify the compact circle at evenly spaced angles; CSV rows
    /// x,class,s_plus,s_minus,c.
    ScanCircle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// The w2 at which the analytic roots s+- are reported.
        #[arg(long, default_value_t = 0.5)]
        w2: f64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Tabulate the singular-angle curve n_P(x) of an AN point.
    Curve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Bisect the black-hole/free transition along the circle, or along the
    /// compact angle of a given point.
    Horizon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = PI / 4.0)]
        x_lo: f64,
        #[arg(long, default_value_t = 3.0 * PI / 4.0)]
        x_hi: f64,
        #[arg(long, default_value_t = 1e-8)]
        bisect_tol: f64,
        #[arg(long, default_value_t = 65)]
        grid: usize,
    },
    /// Dump labels, structure constants, Killing matrix and the orthonormal
    /// basis as JSON.
    Table {
        #[arg(long)]
        n: usize,
    },
}

fn resolve_tol(flag: Option<f64>) -> f64 {
    flag.or_else(|| std::env::var("ADSCAUSAL_TOL").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_TOL)
}

fn parse_point(raw: &str, n: usize) -> Result<PointCoords, String> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| format!("cannot read point file {raw}: {e}"))?
    };
    let mut p: PointCoords =
        serde_json::from_str(&text).map_err(|e| format!("bad point JSON: {e}"))?;
    // Shorter slice arrays are padded with zeros; longer ones are rejected.
    let want = n - 2;
    if p.nu.zp.len() > want || p.nu.pz.len() > want {
        return Err(format!("point has more than {want} slice coefficients for n = {n}"));
    }
    p.nu.zp.resize(want, 0.0);
    p.nu.pz.resize(want, 0.0);
    Ok(p)
}

fn write_out(out: &str, content: &str) -> Result<(), String> {
    if out == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(content.as_bytes()).map_err(|e| e.to_string())
    } else {
        std::fs::write(out, content).map_err(|e| format!("cannot write {out}: {e}"))
    }
}

fn class_str(c: CausalClass) -> &'static str {
    match c {
        CausalClass::Singular => "singular",
        CausalClass::BlackHole => "black_hole",
        CausalClass::Free => "free",
    }
}

/// Run the CLI on the given arguments (without the program name). Returns
/// the process exit code.
pub fn dispatch<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut argv: Vec<String> = vec!["adscausal".into()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    let tol = resolve_tol(cli.tol);
    match run(cli.cmd, tol, cli.seed, &cli.out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        match e {
            crate::error::Error::InvalidDimension(_) | crate::error::Error::BadPoint(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn run(cmd: Cmd, tol: f64, seed: u64, out: &str) -> Result<i32, Failure> {
    match cmd {
        Cmd::Verify { n } => {
            if n < 2 {
                return Err(Failure::Usage(format!("so(2,n) requires n >= 2, got {n}")));
            }
            let mut report = verify_structure(n)?;
            for m in 2..=n {
                report.merge(verify_reductive(&Algebra::get(m)?));
                report.merge(crate::lie_core::verify_random_properties(
                    &Algebra::get(m)?,
                    seed,
                    25,
                ));
            }
            let ok = report.passed();
            let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Classify { n, point, grid } => {
            let p = parse_point(&point, n).map_err(Failure::Usage)?;
            let an = Analyzer::new(n)?;
            let cl = an.classify_point(&p, grid, tol, seed)?;
            let text = serde_json::to_string_pretty(&cl).unwrap() + "\n";
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(0)
        }
        Cmd::ScanCircle { n, samples, w2, grid, format } => {
            if samples == 0 {
                return Err(Failure::Usage("samples must be positive".into()));
            }
            let an = Analyzer::new(n)?;
            let mut rows = Vec::with_capacity(samples);
            for i in 0..samples {
                let x = std::f64::consts::TAU * i as f64 / samples as f64;
                let cl = an.classify_point(&PointCoords::circle(n, x), grid, tol, seed)?;
                let (sp, sm) = circle_roots(x, w2);
                rows.push((x, cl.class, sp, sm, cl.c));
            }
            let text = match format {
                Format::Csv => {
                    let mut s = String::from("x,class,s_plus,s_minus,c\n");
                    for (x, class, sp, sm, c) in rows {
                        s.push_str(&format!("{x},{},{sp},{sm},{c}\n", class_str(class)));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(x, class, sp, sm, c)| {
                            json!({"x": x, "class": class_str(*class), "s_plus": sp,
                                   "s_minus": sm, "c": c})
                        })
                        .collect();
                    serde_json::to_string_pretty(&items).unwrap() + "\n"
                }
            };
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(0)
        }
        Cmd::Curve { n, point, samples, format } => {
            if samples == 0 {
                return Err(Failure::Usage("samples must be positive".into()));
            }
            let p = parse_point(&point, n).map_err(Failure::Usage)?;
            let an = Analyzer::new(n)?;
            let angles = an.singular_angles(&p)?;
            let params = crate::causal::CurveParams { u: angles.u, v: angles.v };
            let mut rows = Vec::with_capacity(samples);
            for i in 0..samples {
                let x = std::f64::consts::TAU * i as f64 / samples as f64;
                rows.push((x, params.eval(x)));
            }
            let text = match format {
                Format::Csv => {
                    let mut s = String::from("x,n_p\n");
                    for (x, v) in rows {
                        s.push_str(&format!("{x},{v}\n"));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<_> =
                        rows.iter().map(|(x, v)| json!({"x": x, "n_p": v})).collect();
                    serde_json::to_string_pretty(&json!({
                        "u": params.u, "v": params.v, "samples": items
                    }))
                    .unwrap()
                        + "\n"
                }
            };
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(0)
        }
        Cmd::Horizon { n, point, x_lo, x_hi, bisect_tol, grid } => {
            let an = Analyzer::new(n)?;
            let base = match point {
                Some(raw) => Some(parse_point(&raw, n).map_err(Failure::Usage)?),
                None => None,
            };
            let t = an.horizon_bisect(
                |x| match &base {
                    Some(p) => {
                        let mut q = p.clone();
                        q.x = x;
                        an.word(&q)
                    }
                    None => Ok(an.circle_word(x)),
                },
                x_lo,
                x_hi,
                bisect_tol,
                grid,
                tol,
            )?;
            let text = serde_json::to_string_pretty(&json!({
                "t_star": t, "x_lo": x_lo, "x_hi": x_hi
            }))
            .unwrap()
                + "\n";
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(0)
        }
        Cmd::Table { n } => {
            let alg = Algebra::get(n)?;
            let bases = canonical_bases(&alg)?;
            let dump = StructureDump::new(&alg).with_b_basis(
                bases
                    .b_basis
                    .iter()
                    .map(|(l, v)| (l.to_string(), v.coeffs().to_vec()))
                    .collect(),
            );
            let text = serde_json::to_string_pretty(&dump).unwrap() + "\n";
            write_out(out, &text).map_err(Failure::Runtime)?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::Classification;

    fn run_to_file(args: &[&str]) -> (i32, String) {
        let dir = std::env::temp_dir().join(format!("adscausal-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("out-{}.txt", rand::random::<u64>()));
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.push("--out".into());
        full.push(path.to_string_lossy().into_owned());
        let code = dispatch(full);
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        let _ = std::fs::remove_file(&path);
        (code, text)
    }

    #[test]
    fn verify_subcommand_passes() {
        let (code, text) = run_to_file(&["verify", "--n", "4"]);
        assert_eq!(code, 0);
        let report: crate::lie_core::Report = serde_json::from_str(&text).unwrap();
        assert!(report.passed());
        assert!(report.checks.len() > 40);
    }

    #[test]
    fn classify_subcommand_black_hole() {
        let point = r#"{"alpha":[0,0],"nu":{"pp":0,"pm":0,"zp":[0],"pz":[0]},"x":0.7853981633974483}"#;
        let (code, text) = run_to_file(&["classify", "--n", "4", "--point", point, "--grid", "65"]);
        assert_eq!(code, 0);
        let cl: Classification = serde_json::from_str(&text).unwrap();
        assert_eq!(cl.class, CausalClass::BlackHole);
        // Round trip: parse back losslessly.
        let again: Classification =
            serde_json::from_str(&serde_json::to_string(&cl).unwrap()).unwrap();
        assert_eq!(again, cl);
    }

    #[test]
    fn scan_circle_rows_and_quadrants() {
        let (code, text) = run_to_file(&["scan-circle", "--n", "3", "--samples", "8", "--grid", "33"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = text.trim_end().split('\n').collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "x,class,s_plus,s_minus,c");
        let class_of = |line: &str| line.split(',').nth(1).unwrap().to_string();
        assert_eq!(class_of(lines[1]), "singular"); // x = 0
        assert_eq!(class_of(lines[2]), "black_hole"); // x = pi/4
        assert_eq!(class_of(lines[4]), "free"); // x = 3pi/4
        assert_eq!(class_of(lines[5]), "singular"); // x = pi
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(dispatch(["verify", "--n", "1"]), 2);
        assert_eq!(dispatch(["classify", "--n", "3", "--point", "not json"]), 2);
        assert_eq!(dispatch(["no-such-subcommand"]), 2);
        assert_eq!(dispatch(["scan-circle", "--n", "3", "--unknown-flag"]), 2);
    }

    #[test]
    fn horizon_subcommand_finds_pi_half() {
        let (code, text) = run_to_file(&["horizon", "--n", "3", "--grid", "65"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let t = v["t_star"].as_f64().unwrap();
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        // No crossing: both endpoints in the black hole.
        let code = dispatch(["horizon", "--n", "3", "--x-lo", "0.3", "--x-hi", "0.6"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn table_subcommand_dumps_structure() {
        let (code, text) = run_to_file(&["table", "--n", "3"]);
        assert_eq!(code, 0);
        let dump: StructureDump = serde_json::from_str(&text).unwrap();
        assert_eq!(dump.n, 3);
        assert_eq!(dump.labels.len(), 10);
        assert!(dump.b_basis.is_some());
        assert_eq!(dump.b_basis.unwrap().len(), 10);
    }

    #[test]
    fn curve_subcommand_emits_samples() {
        let point = r#"{"alpha":[0,0],"nu":{"pp":0.7,"pm":0,"zp":[],"pz":[]},"x":0}"#;
        let (code, text) = run_to_file(&["curve", "--n", "3", "--point", point, "--samples", "16"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = text.trim_end().split('\n').collect();
        assert_eq!(lines.len(), 17);
        // n_P(0) = 0 on the nose.
        let first: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert!(first.abs() < 1e-12);
    }
}
