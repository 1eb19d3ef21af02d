//! Command-line front end: validation, weight tables, shift export,
//! defect/membership reports, exact classification, and geometry probes.
//!
//! Exit codes are a stable contract: 0 success (or equivalent), 1
//! inequivalent, 2 input error, 3 resource guard exceeded.

/// Writes one stdout line, exiting quietly when the downstream consumer has
/// closed the pipe (`ncdomain shifts .. | head` must not panic).
macro_rules! out {
    ($($arg:tt)*) => {
        $crate::emit(format_args!($($arg)*))
    };
}

fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{args}").is_err() {
        std::process::exit(0);
    }
}

mod input;

use clap::{Parser, Subcommand};
use ncdomain::classify::{
    classify, operator_witness_check_with_cap, Certificate, ClassificationResult,
};
use ncdomain::fock::{
    defect_sparse, is_member, min_eig_hermitian, FockError, MembershipReport, OperatorTuple,
    ShiftExport, ShiftFamily, WeightExport, WeightTable, DEFAULT_DIM_CAP, DEFAULT_MEMBER_TOL,
};
use ncdomain::geometry::{boundary_radius, circle_image, moebius, BallPoint, GeometryError};
use ncdomain::symbol::{format_rat, Symbol};

use input::*;

const EXIT_INEQUIVALENT: i32 = 1;
const EXIT_INPUT_ERROR: i32 = 2;
const EXIT_RESOURCE_GUARD: i32 = 3;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Symbol(#[from] ncdomain::SymbolError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Classify(#[from] ncdomain::classify::ClassifyError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Fock(FockError::ResourceGuard { .. }) => EXIT_RESOURCE_GUARD,
            CliError::Geometry(GeometryError::Fock(FockError::ResourceGuard { .. })) => {
                EXIT_RESOURCE_GUARD
            }
            CliError::Classify(ncdomain::classify::ClassifyError::Fock(
                FockError::ResourceGuard { .. },
            )) => EXIT_RESOURCE_GUARD,
            _ => EXIT_INPUT_ERROR,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ncdomain",
    version,
    about = "Noncommutative domain algebras: universal shifts, membership, exact classification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a symbol; print its canonical form
    Validate {
        /// Symbol text, or @file
        symbol: String,
    },
    /// Exact weight table of a symbol up to a truncation level
    Weights {
        symbol: String,
        /// Truncation level (default: degree + 3)
        #[arg(long = "N", value_name = "LEVEL")]
        level: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Basis-size guard override
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Truncated universal weighted shift matrices
    Shifts {
        symbol: String,
        #[arg(long = "N", value_name = "LEVEL")]
        level: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Defect of the truncated universal shifts and its membership verdict
    Defect {
        symbol: String,
        #[arg(long = "N", value_name = "LEVEL")]
        level: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Membership of a scalar point or a JSON matrix tuple
    Member {
        symbol: String,
        /// Scalar point as a comma list of complex numbers
        #[arg(long, value_name = "LIST")]
        point: Option<String>,
        /// Operator tuple as JSON (`{"mats": [[[re,im],..],..]}`), or @file
        #[arg(long, value_name = "JSON")]
        tuple: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Decide complete isometric isomorphism of two domain algebras
    Classify {
        f: String,
        g: String,
        #[arg(long)]
        json: bool,
        /// Also run the operator-level witness check at this level
        #[arg(long = "check-operators", value_name = "LEVEL")]
        check_operators: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Boundary radius of the scalar domain along a direction
    Boundary {
        symbol: String,
        /// Direction as a comma list of complex numbers
        #[arg(long, value_name = "LIST")]
        dir: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Möbius ball automorphism: map a point, or fit a circle image
    Moebius {
        /// Base point ω as a comma list of complex numbers
        #[arg(long, value_name = "LIST")]
        omega: String,
        /// Point to map through φ_ω
        #[arg(long, value_name = "LIST")]
        z: Option<String>,
        /// Sample the circle {e^{iθ}ω} with this many points and fit its
        /// image
        #[arg(long, value_name = "SAMPLES")]
        circle: Option<usize>,
        /// Unitary to post-compose (JSON rows of `[re,im]` pairs, or @file)
        #[arg(long, value_name = "JSON")]
        unitary: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn load_symbol(arg: &str) -> Result<Symbol, CliError> {
    Ok(Symbol::parse(&resolve_text(arg)?)?)
}

fn default_level(f: &Symbol, level: Option<usize>) -> usize {
    level.unwrap_or(f.degree() + 3)
}

fn print_report(report: &MembershipReport, json: bool) {
    if json {
        out!("{}", serde_json::to_string(report).expect("serializable"));
    } else {
        out!("dim = {}", report.dim);
        out!("min_eig = {:.12e}", report.min_eig);
        out!(
            "member: {} (tol {:e})",
            report.member, report.tolerance
        );
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Validate { symbol } => {
            let s = load_symbol(&symbol)?;
            out!("canonical: {s}");
            out!(
                "valid: n={}, degree={}, terms={}",
                s.arity(),
                s.degree(),
                s.terms()
            );
            Ok(0)
        }

        Cmd::Weights {
            symbol,
            level,
            json,
            cap,
        } => {
            let f = load_symbol(&symbol)?;
            let level = default_level(&f, level);
            let table =
                WeightTable::compute_with_cap(&f, level, cap.unwrap_or(DEFAULT_DIM_CAP))?;
            if json {
                let export = WeightExport::from_table(&table);
                out!("{}", serde_json::to_string(&export).expect("serializable"));
            } else {
                for (word, b) in table.iter() {
                    out!("b({word}) = {}", format_rat(b));
                }
            }
            Ok(0)
        }

        Cmd::Shifts {
            symbol,
            level,
            json,
            cap,
        } => {
            let f = load_symbol(&symbol)?;
            let level = default_level(&f, level);
            let family = ShiftFamily::build_with_cap(&f, level, cap.unwrap_or(DEFAULT_DIM_CAP))?;
            let export = ShiftExport::from_family(&family);
            if json {
                out!("{}", serde_json::to_string(&export).expect("serializable"));
            } else {
                out!(
                    "n={} N={} dim={} order={}",
                    export.n, export.level, export.dim, export.order
                );
                for shift in &export.shifts {
                    for &(row, col, re, im) in &shift.entries {
                        let v = num_complex::Complex64::new(re, im);
                        out!("W{}[{row},{col}] = {}", shift.j, format_complex(v));
                    }
                }
            }
            Ok(0)
        }

        Cmd::Defect {
            symbol,
            level,
            tol,
            json,
            cap,
        } => {
            let f = load_symbol(&symbol)?;
            let level = default_level(&f, level);
            let tol = tol.unwrap_or(DEFAULT_MEMBER_TOL);
            let family = ShiftFamily::build_with_cap(&f, level, cap.unwrap_or(DEFAULT_DIM_CAP))?;
            let delta = defect_sparse(&f, &family.tuple())?;
            let min_eig = min_eig_hermitian(&delta)?;
            let report = MembershipReport {
                min_eig,
                tolerance: tol,
                member: min_eig >= -tol,
                dim: delta.dim(),
            };
            print_report(&report, json);
            Ok(0)
        }

        Cmd::Member {
            symbol,
            point,
            tuple,
            tol,
            json,
        } => {
            let f = load_symbol(&symbol)?;
            let tol = tol.unwrap_or(DEFAULT_MEMBER_TOL);
            let tuple = match (point, tuple) {
                (Some(p), None) => OperatorTuple::from_scalars(&parse_complex_list(&p)?)?,
                (None, Some(t)) => tuple_from_json(&resolve_text(&t)?)?,
                _ => {
                    return Err(CliError::Input(
                        "exactly one of --point or --tuple is required".into(),
                    ))
                }
            };
            let report = is_member(&f, &tuple, tol)?;
            print_report(&report, json);
            Ok(0)
        }

        Cmd::Classify {
            f,
            g,
            json,
            check_operators,
            tol,
            cap,
        } => {
            let f = load_symbol(&f)?;
            let g = load_symbol(&g)?;
            let result = classify(&f, &g);
            if json {
                out!(
                    "{}",
                    serde_json::to_string(&result.to_json()).expect("serializable")
                );
            } else {
                match &result {
                    ClassificationResult::Equivalent(w) => {
                        out!("Equivalent: the domain algebras are completely isometrically isomorphic.");
                        out!("sigma = {:?}", w.sigma());
                        let scales: Vec<String> =
                            w.lambda().iter().map(format_rat).collect();
                        out!("lambda = [{}]", scales.join(", "));
                    }
                    ClassificationResult::Inequivalent(cert) => {
                        out!("Inequivalent: the domain algebras are not completely isometrically isomorphic.");
                        match cert {
                            Certificate::ArityMismatch { left, right } => {
                                out!("certificate: arity mismatch ({left} vs {right})");
                            }
                            Certificate::NoPermutation {
                                sigma,
                                word,
                                expected,
                                found,
                            } => {
                                let fmt = |r: &Option<ncdomain::symbol::Rat>| match r {
                                    Some(r) => format_rat(r),
                                    None => "none".to_string(),
                                };
                                out!(
                                    "certificate: no permutation works; last checked sigma={sigma:?}, word {word}: expected {}, found {}",
                                    fmt(expected),
                                    fmt(found)
                                );
                            }
                        }
                    }
                }
            }
            if let Some(level) = check_operators {
                if let ClassificationResult::Equivalent(w) = &result {
                    let tol = tol.unwrap_or(DEFAULT_MEMBER_TOL);
                    let report = operator_witness_check_with_cap(
                        &f,
                        &g,
                        w,
                        level,
                        tol,
                        cap.unwrap_or(DEFAULT_DIM_CAP),
                    )?;
                    if json {
                        out!("{}", serde_json::to_string(&report).expect("serializable"));
                    } else {
                        out!(
                            "operator check at N={level}: member={}, min_eig = {:.12e}",
                            report.member, report.min_eig
                        );
                    }
                }
            }
            Ok(if result.is_equivalent() {
                0
            } else {
                EXIT_INEQUIVALENT
            })
        }

        Cmd::Boundary {
            symbol,
            dir,
            tol,
            json,
        } => {
            let f = load_symbol(&symbol)?;
            let direction = parse_complex_list(&dir)?;
            let tol = tol.unwrap_or(1e-9);
            let r = boundary_radius(&f, &direction, tol)?;
            if json {
                let dir_json: Vec<[f64; 2]> = direction.iter().map(|z| [z.re, z.im]).collect();
                out!(
                    "{}",
                    serde_json::to_string(&serde_json::json!({
                        "radius": r,
                        "direction": dir_json,
                    }))
                    .expect("serializable")
                );
            } else {
                out!("radius = {r:.10}");
            }
            Ok(0)
        }

        Cmd::Moebius {
            omega,
            z,
            circle,
            unitary,
            json,
        } => {
            let omega = BallPoint::new(parse_complex_list(&omega)?);
            match (z, circle) {
                (Some(z), None) => {
                    let z = BallPoint::new(parse_complex_list(&z)?);
                    let image = moebius(&omega, &z)?;
                    if json {
                        let coords: Vec<[f64; 2]> =
                            image.coords().iter().map(|c| [c.re, c.im]).collect();
                        out!(
                            "{}",
                            serde_json::to_string(&serde_json::json!({ "image": coords }))
                                .expect("serializable")
                        );
                    } else {
                        let coords: Vec<String> =
                            image.coords().iter().map(|&c| format_complex(c)).collect();
                        out!("image = [{}]", coords.join(", "));
                    }
                    Ok(0)
                }
                (None, Some(samples)) => {
                    let u = match unitary {
                        Some(text) => unitary_from_json(&resolve_text(&text)?)?,
                        None => ncdomain::fock::CMat::identity(omega.dim()),
                    };
                    let fit = circle_image(&omega, &u, samples)?;
                    if json {
                        out!(
                            "{}",
                            serde_json::to_string(&fit.to_json()).expect("serializable")
                        );
                    } else {
                        let center: Vec<String> =
                            fit.center().iter().map(|&c| format_complex(c)).collect();
                        out!("center = [{}]", center.join(", "));
                        out!("radius = {:.12}", fit.radius());
                        out!("residual = {:.3e}", fit.residual());
                    }
                    Ok(0)
                }
                _ => Err(CliError::Input(
                    "exactly one of --z or --circle is required".into(),
                )),
            }
        }
    }
}
