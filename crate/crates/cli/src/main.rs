//! Command line front end: exact division and gcd in `Z[sqrt(m)]`, covering
//! sets, certificate search, certificate verification, and figure emission.
//!
//! Rationals are written `p/q`; decimal input is rejected so nothing ever
//! passes through floating point. Exit codes: 0 on success (and successful
//! verification), 1 when verification fails, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quadeuclid::{format, json, plot};
use quadeuclid_core::covering::search::{search, SearchConfig};
use quadeuclid_core::covering::{cover_set, verify, CoverQuery};
use quadeuclid_core::division::{divide_with, gcd};
use quadeuclid_core::exact::{parse_rat, Rat};
use quadeuclid_core::field::{FieldData, FieldElement, RingElement};

#[derive(Parser)]
#[command(name = "quadeuclid", version, about = "Euclidean division and covering certificates for real quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Division with remainder norm bounded by the field's Euclidean minimum.
    Divide {
        #[arg(short)]
        m: i64,
        /// The field element to divide, as `a/b,c/d`.
        #[arg(long)]
        xi: String,
        /// Scan all covering pairs and keep a smallest remainder norm.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Greatest common divisor in the ring of integers, up to units.
    Gcd {
        #[arg(short)]
        m: i64,
        /// First element, as `x,y` (meaning x + y*sqrt(m)).
        #[arg(long)]
        alpha: String,
        /// Second element, as `x,y`.
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Integer shifts within a box whose shifted norm at a point is small.
    Coverset {
        #[arg(short)]
        m: i64,
        /// The point, as `a/b,c/d`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 100)]
        bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Search a covering certificate for the quarter square.
    Search {
        #[arg(short)]
        m: i64,
        /// Norm bound to cover for, as `p/q` (default: the field's Euclidean
        /// minimum). Larger bounds give easier, weaker certificates.
        #[arg(long)]
        m1: Option<String>,
        #[arg(long, default_value_t = 100)]
        bound: u32,
        /// Maximum number of regions before giving up.
        #[arg(long, default_value_t = 200)]
        budget: u32,
        /// Write the certificate here (text format).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Verify a covering certificate file.
    Verify {
        cert: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Render a certificate as a figure (SVG or TikZ).
    Plot {
        cert: PathBuf,
        /// Output path; `.svg` and `.tex` choose the format unless --format is given.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        format: Option<String>,
    },
}

fn parse_rat_pair(s: &str) -> Result<(Rat, Rat), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a/b,c/d`, got {s:?}"))?;
    let pa = parse_rat(a).ok_or_else(|| format!("bad rational {a:?} (decimals are not accepted)"))?;
    let pb = parse_rat(b).ok_or_else(|| format!("bad rational {b:?} (decimals are not accepted)"))?;
    Ok((pa, pb))
}

fn parse_int_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got {s:?}"))?;
    let pa = a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?;
    let pb = b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?;
    Ok((pa, pb))
}

fn field(m: i64) -> Result<FieldData, String> {
    FieldData::builtin(m).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Divide {
            m,
            xi,
            all_pairs,
            format,
        } => {
            let f = field(m)?;
            let (a, b) = parse_rat_pair(&xi)?;
            let element = FieldElement::new(a, b);
            let r = divide_with(&f, &element, all_pairs).map_err(|e| e.to_string())?;
            match format {
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::divide_to_json(m, &element, &r))
                            .unwrap()
                    );
                }
                TextFormat::Text => {
                    println!("xi      = ({}, {})", element.a, element.b);
                    println!("gamma   = {} + {}*w", r.quotient.x, r.quotient.y);
                    println!("norm    = {}", r.remainder_norm);
                    println!("pair    = ({}, {})", r.pair_used.0, r.pair_used.1);
                    println!("|norm| <= M1 = {}", f.m1());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gcd {
            m,
            alpha,
            beta,
            format,
        } => {
            let f = field(m)?;
            let (ax, ay) = parse_int_pair(&alpha)?;
            let (bx, by) = parse_int_pair(&beta)?;
            let a = RingElement::new(ax, ay);
            let b = RingElement::new(bx, by);
            let g = gcd(&f, &a, &b).map_err(|e| e.to_string())?;
            match format {
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::gcd_to_json(m, &a, &b, &g)).unwrap()
                    );
                }
                TextFormat::Text => println!("gcd = {} + {}*w", g.x, g.y),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Coverset {
            m,
            p,
            bound,
            format,
        } => {
            let f = field(m)?;
            let point = parse_rat_pair(&p)?;
            let pairs = cover_set(
                &f,
                &CoverQuery {
                    point: point.clone(),
                    bound,
                },
            );
            match format {
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::coverset_to_json(
                            m, &point, bound, &pairs
                        ))
                        .unwrap()
                    );
                }
                TextFormat::Text => {
                    for (u, v) in &pairs {
                        println!("[{u}, {v}]");
                    }
                    println!("{} pairs", pairs.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            m,
            m1,
            bound,
            budget,
            out,
            format,
        } => {
            let f = field(m)?;
            let f = match m1 {
                None => f,
                Some(text) => {
                    let bound_m = parse_rat(&text)
                        .ok_or_else(|| format!("bad norm bound {text:?} (write it as p/q)"))?;
                    if bound_m < *f.m1() {
                        return Err(format!(
                            "norm bound {bound_m} is below the Euclidean minimum {} of m={m}",
                            f.m1()
                        ));
                    }
                    FieldData::custom(m, bound_m, Vec::new(), Vec::new())
                }
            };
            let outcome = search(
                &f,
                &SearchConfig {
                    bound,
                    max_steps: budget,
                },
            );
            let text = format::serialize(&outcome.certificate);
            if let Some(path) = &out {
                std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            match format {
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::search_to_json(
                            m,
                            outcome.complete,
                            outcome.steps,
                            &outcome.certificate.pairs
                        ))
                        .unwrap()
                    );
                }
                TextFormat::Text => {
                    if out.is_none() {
                        print!("{text}");
                    }
                    println!(
                        "# search {} after {} regions, pairs: {:?}",
                        if outcome.complete { "complete" } else { "INCOMPLETE" },
                        outcome.certificate.regions.len(),
                        outcome.certificate.pairs
                    );
                    for (lo, hi) in &outcome.uncovered {
                        println!("# uncovered a in [{lo}, {hi}]");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cert, format } => {
            let text = std::fs::read_to_string(&cert)
                .map_err(|e| format!("{}: {e}", cert.display()))?;
            let parsed = format::parse(&text).map_err(|e| e.to_string())?;
            let report = verify(&parsed);
            match format {
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::report_to_json(&report)).unwrap()
                    );
                }
                TextFormat::Text => println!("{report}"),
            }
            Ok(if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Plot { cert, out, format } => {
            let text = std::fs::read_to_string(&cert)
                .map_err(|e| format!("{}: {e}", cert.display()))?;
            let parsed = format::parse(&text).map_err(|e| e.to_string())?;
            let kind = match format.as_deref() {
                Some("svg") => "svg",
                Some("tikz") | Some("tex") => "tikz",
                Some(other) => return Err(format!("unknown figure format {other:?}")),
                None => match out.extension().and_then(|e| e.to_str()) {
                    Some("svg") => "svg",
                    Some("tex") => "tikz",
                    _ => return Err("cannot infer figure format from output extension".into()),
                },
            };
            let doc = if kind == "svg" {
                plot::svg(&parsed)
            } else {
                plot::tikz(&parsed)
            };
            std::fs::write(&out, doc).map_err(|e| format!("{}: {e}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
