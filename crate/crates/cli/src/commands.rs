//! Subcommand definitions and execution.
//!
//! Exit-code contract: 0 for success (verdict true or pure computation),
//! 1 when an emitted certificate's verdict is false, 2 for usage, parse, or
//! precondition errors (reported as a one-line diagnostic on stderr).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fgl_core::chern::{expand_product_h, multiplicativity_check, projective_ring_reduce};
use fgl_core::ring::{p_local_integers, rationals, RingRef};
use fgl_core::{
    check_fgl_axioms, hazewinkel_generators, orientation_roundtrip, p_typify, universal_fgl,
    Error as CoreError, FormalGroupLaw, OrientationSeries, TruncatedSeries,
};

use crate::document::{
    bad_input, digest_of, Certificate, Diagnostic, DocFgl, DocPoly, DocResult, DocRing, DocSeries,
    DocViolation,
};

#[derive(Debug, Parser)]
#[command(
    name = "fgl",
    version,
    about = "Exact-arithmetic calculator for formal group laws",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (json is canonical, text is human-oriented)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output document to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Additive,
    Multiplicative,
    Universal,
}

/// Where a law comes from: a JSON document or a named built-in.
#[derive(Debug, Args)]
pub struct FglSource {
    /// Formal group law document (JSON)
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Built-in law (universal requires --degree)
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Truncation degree: required for built-ins, truncates file input
    #[arg(long, value_name = "N")]
    pub degree: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the formal-group-law axioms and emit a certificate
    Check(FglSource),
    /// Logarithm of a law (over the rationalized ring)
    Log(FglSource),
    /// Exponential of a law (compositional inverse of the logarithm)
    Exp(FglSource),
    /// The n-series [n](t) of a law; n is given by --count
    Nseries {
        #[command(flatten)]
        source: FglSource,
        /// The multiplier n (may be negative)
        #[arg(long, value_name = "K", allow_hyphen_values = true)]
        count: i64,
    },
    /// Cartier p-typification: the canonical p-typical law and strict iso
    Ptypify {
        #[command(flatten)]
        source: FglSource,
        #[arg(long, value_name = "P")]
        prime: u64,
    },
    /// The Quillen idempotent: orientation series plus idempotency certificate
    Idempotent {
        #[command(flatten)]
        source: FglSource,
        #[arg(long, value_name = "P")]
        prime: u64,
    },
    /// The universal law over Q[m1, m2, ...] at a truncation degree
    Universal {
        #[arg(long, value_name = "N")]
        degree: u32,
    },
    /// Hazewinkel generators v_1..v_k over the universal ring
    Hazewinkel {
        #[arg(long, value_name = "P")]
        prime: u64,
        /// Number of generators to solve for
        #[arg(long, value_name = "K")]
        count: usize,
        #[arg(long, value_name = "N")]
        degree: u32,
    },
    /// Expand prod h(x_i) in Chern classes; with --m also run the
    /// multiplicativity check against the interleaved product
    ChernExpand {
        /// Univariate series document for h (constant term 1)
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Number of Chern roots
        #[arg(long, value_name = "N")]
        n: usize,
        /// Second variable count for the multiplicativity check
        #[arg(long, value_name = "M")]
        m: Option<usize>,
        /// Weight bound for the expansion
        #[arg(long, value_name = "D")]
        degree: u32,
    },
    /// Round-trip an orientation series through transport and recovery
    OrientRoundtrip {
        /// Univariate orientation series document (strict)
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Base law to transport; built over the orientation's ring
        #[arg(long, value_enum)]
        builtin: Builtin,
        /// Optional truncation (defaults to the orientation's)
        #[arg(long, value_name = "N")]
        degree: Option<u32>,
    },
    /// Reduce a univariate polynomial modulo x^{n+1}
    ProjectiveReduce {
        /// Univariate polynomial document
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Projective dimension n
        #[arg(long, value_name = "N")]
        n: u32,
    },
}

/// A finished command: the canonical JSON document, a human-oriented text
/// rendering, and the exit code.
pub struct Report {
    pub value: Value,
    pub text: String,
    pub exit: i32,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> DocResult<T> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Diagnostic(format!("malformed JSON: {e}")))
}

fn check_degree(n: u32) -> DocResult<()> {
    if n < 2 {
        return bad_input("truncation degree must be >= 2");
    }
    Ok(())
}

impl FglSource {
    /// Load the raw bivariate series plus the canonical document used in
    /// digests (axioms are not checked here).
    fn load_series(&self, prime: Option<u64>) -> DocResult<(TruncatedSeries, DocFgl)> {
        match (&self.input, self.builtin) {
            (Some(_), Some(_)) => bad_input("--input and --builtin are mutually exclusive"),
            (None, None) => bad_input("one of --input or --builtin is required"),
            (Some(path), None) => {
                let doc: DocFgl = read_json(path)?;
                check_degree(doc.truncation)?;
                let mut series = doc.to_series()?;
                if let Some(n) = self.degree {
                    check_degree(n)?;
                    if n > series.truncation() {
                        return bad_input(format!(
                            "cannot raise the truncation of a document ({} > {})",
                            n,
                            series.truncation()
                        ));
                    }
                    series = series.truncated(n);
                }
                let doc = DocFgl::from_series(&series);
                Ok((series, doc))
            }
            (None, Some(builtin)) => {
                let n = match self.degree {
                    Some(n) => n,
                    None => return bad_input("--degree is required with --builtin"),
                };
                check_degree(n)?;
                let law = builtin_law(builtin, n, prime)?;
                let doc = DocFgl::from_series(law.series());
                Ok((law.series().clone(), doc))
            }
        }
    }

    /// Load and validate as a formal group law.
    fn load_law(&self, prime: Option<u64>) -> DocResult<(FormalGroupLaw, DocFgl)> {
        let (series, doc) = self.load_series(prime)?;
        let law = FormalGroupLaw::new(series)?;
        Ok((law, doc))
    }
}

/// Built-in laws. Additive and multiplicative live over the rationals, or
/// over Z_(p) when the command carries a prime; the universal law lives over
/// Q[m1, ...].
fn builtin_law(which: Builtin, degree: u32, prime: Option<u64>) -> DocResult<FormalGroupLaw> {
    let scalar_ring: RingRef = match prime {
        Some(p) => p_local_integers(p)?,
        None => rationals(),
    };
    let law = match which {
        Builtin::Additive => FormalGroupLaw::additive(&scalar_ring, degree)?,
        Builtin::Multiplicative => FormalGroupLaw::multiplicative(&scalar_ring, degree)?,
        Builtin::Universal => universal_fgl(degree)?.law().clone(),
    };
    Ok(law)
}

pub fn execute(command: Command) -> DocResult<Report> {
    match command {
        Command::Check(source) => {
            let (series, doc) = source.load_series(None)?;
            let report = check_fgl_axioms(&series)?;
            let digest = digest_of(&json!({ "command": "check", "law": doc }));
            let violations = report
                .violations
                .iter()
                .map(|v| DocViolation {
                    kind: v.axiom.name().to_string(),
                    exponents: Some(v.exponents.clone()),
                    defect: Some(v.defect.to_string()),
                    detail: None,
                })
                .collect();
            let certificate = Certificate::new("axioms", violations, digest);
            let exit = i32::from(!certificate.verdict);
            let text = if certificate.verdict {
                "axioms: PASS".to_string()
            } else {
                format!("axioms: FAIL\n{report}")
            };
            Ok(Report { value: serde_json::to_value(&certificate).unwrap(), text, exit })
        }

        Command::Log(source) => {
            let (law, _) = source.load_law(None)?;
            let log = law.log()?;
            Ok(Report {
                value: serde_json::to_value(DocSeries::from_series(&log)).unwrap(),
                text: format!("log = {log}"),
                exit: 0,
            })
        }

        Command::Exp(source) => {
            let (law, _) = source.load_law(None)?;
            let exp = law.exp()?;
            Ok(Report {
                value: serde_json::to_value(DocSeries::from_series(&exp)).unwrap(),
                text: format!("exp = {exp}"),
                exit: 0,
            })
        }

        Command::Nseries { source, count } => {
            let (law, _) = source.load_law(None)?;
            let series = law.n_series(count)?;
            let out = json!({
                "count": count,
                "series": DocSeries::from_series(&series),
            });
            Ok(Report { value: out, text: format!("[{count}](t) = {series}"), exit: 0 })
        }

        Command::Ptypify { source, prime } => {
            let (law, doc) = source.load_law(Some(prime))?;
            let (typ, eps) = p_typify(&law, prime)?;
            let digest = digest_of(&json!({
                "command": "ptypify", "law": doc, "prime": prime,
            }));
            // p_typify verified both the coefficient locality and the
            // intertwining of eps; failures surface as errors, so the
            // certificates here always carry a true verdict
            let locality = Certificate::new("p_locality", vec![], digest.clone());
            let strictness = Certificate::new("strict_iso", vec![], digest);
            let out = json!({
                "prime": prime,
                "p_typical": DocFgl::from_series(typ.series()),
                "epsilon": DocSeries::from_series(eps.series()),
                "certificates": [locality, strictness],
            });
            let text = format!(
                "F_typ(x,y) = {}\neps(t) = {}\np-locality: PASS\nstrictness: PASS",
                typ.series(),
                eps.series()
            );
            Ok(Report { value: out, text, exit: 0 })
        }

        Command::Idempotent { source, prime } => {
            let (law, doc) = source.load_law(Some(prime))?;
            let digest = digest_of(&json!({
                "command": "idempotent", "law": doc, "prime": prime,
            }));
            match fgl_core::quillen_idempotent(&law, prime) {
                Ok((orientation, cert)) => {
                    let certificate = Certificate::new("idempotency", vec![], digest);
                    let out = json!({
                        "prime": prime,
                        "orientation": DocSeries::from_series(orientation.series()),
                        "first_pass": {
                            "fgl": DocFgl::from_series(cert.first_pass.0.series()),
                            "iso": DocSeries::from_series(cert.first_pass.1.series()),
                        },
                        "second_pass": {
                            "fgl": DocFgl::from_series(cert.second_pass.0.series()),
                            "iso": DocSeries::from_series(cert.second_pass.1.series()),
                        },
                        "certificate": certificate,
                    });
                    let text = format!(
                        "orientation eps(t) = {}\nidempotency: PASS",
                        orientation.series()
                    );
                    Ok(Report { value: out, text, exit: 0 })
                }
                Err(CoreError::IdempotencyFailure) => {
                    let violations = vec![DocViolation {
                        kind: "idempotency".into(),
                        exponents: None,
                        defect: None,
                        detail: Some("second p-typification pass was not trivial".into()),
                    }];
                    let certificate = Certificate::new("idempotency", violations, digest);
                    let out = json!({ "prime": prime, "certificate": certificate });
                    Ok(Report { value: out, text: "idempotency: FAIL".into(), exit: 1 })
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::Universal { degree } => {
            check_degree(degree)?;
            let ctx = universal_fgl(degree)?;
            let out = json!({
                "truncation": degree,
                "ring": DocRing::from_ring(ctx.ring()),
                "log": DocSeries::from_series(ctx.log()),
                "fgl": DocFgl::from_series(ctx.law().series()),
            });
            let text = format!("log = {}\nF(x,y) = {}", ctx.log(), ctx.law().series());
            Ok(Report { value: out, text, exit: 0 })
        }

        Command::Hazewinkel { prime, count, degree } => {
            check_degree(degree)?;
            let data = hazewinkel_generators(prime, count, degree)?;
            let ring = fgl_core::universal::universal_ring(degree)?;
            let out = json!({
                "prime": prime,
                "count": count,
                "truncation": degree,
                "ring": DocRing::from_ring(&ring),
                "log_coeffs": data.log_coeffs.iter().map(DocPoly::from_poly).collect::<Vec<_>>(),
                "generators": data.generators.iter().map(DocPoly::from_poly).collect::<Vec<_>>(),
            });
            let text = data
                .generators
                .iter()
                .enumerate()
                .map(|(i, v)| format!("v{} = {v}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report { value: out, text, exit: 0 })
        }

        Command::ChernExpand { input, n, m, degree } => {
            if degree < 1 {
                return bad_input("degree must be >= 1");
            }
            let doc: DocSeries = read_json(&input)?;
            let h = doc.to_series()?;
            let (chern, expansion) = expand_product_h(&h, n, degree)?;
            let digest = digest_of(&json!({
                "command": "chern-expand", "h": DocSeries::from_series(&h),
                "n": n, "m": m, "degree": degree,
            }));
            let mut out = serde_json::Map::new();
            out.insert("n".into(), json!(n));
            out.insert("degree".into(), json!(degree));
            out.insert("ring".into(), serde_json::to_value(DocRing::from_ring(chern.ring())).unwrap());
            out.insert("expansion".into(), serde_json::to_value(DocPoly::from_poly(&expansion)).unwrap());
            let mut text = format!("expansion = {expansion}");
            let mut exit = 0;
            if let Some(m) = m {
                let ok = multiplicativity_check(&h, n, m, degree)?;
                let violations = if ok {
                    vec![]
                } else {
                    vec![DocViolation {
                        kind: "multiplicativity".into(),
                        exponents: None,
                        defect: None,
                        detail: Some(format!(
                            "separate and interleaved products differ at n={n}, m={m}, D={degree}"
                        )),
                    }]
                };
                let certificate = Certificate::new("multiplicativity", violations, digest);
                exit = i32::from(!certificate.verdict);
                text.push_str(if ok { "\nmultiplicativity: PASS" } else { "\nmultiplicativity: FAIL" });
                out.insert("m".into(), json!(m));
                out.insert("certificate".into(), serde_json::to_value(&certificate).unwrap());
            }
            Ok(Report { value: Value::Object(out), text, exit })
        }

        Command::OrientRoundtrip { input, builtin, degree } => {
            let doc: DocSeries = read_json(&input)?;
            let mut series = doc.to_series()?;
            if let Some(n) = degree {
                check_degree(n)?;
                if n > series.truncation() {
                    return bad_input(format!(
                        "cannot raise the truncation of a document ({} > {})",
                        n,
                        series.truncation()
                    ));
                }
                series = series.truncated(n);
            }
            check_degree(series.truncation())?;
            let orientation = OrientationSeries::new(series.clone())?;
            let law = match builtin {
                Builtin::Universal => universal_fgl(series.truncation())?.law().clone(),
                Builtin::Additive => FormalGroupLaw::additive(series.ring(), series.truncation())?,
                Builtin::Multiplicative => {
                    FormalGroupLaw::multiplicative(series.ring(), series.truncation())?
                }
            };
            let verdict = orientation_roundtrip(&orientation, &law)?;
            let digest = digest_of(&json!({
                "command": "orient-roundtrip",
                "orientation": DocSeries::from_series(orientation.series()),
                "law": DocFgl::from_series(law.series()),
            }));
            let violations = if verdict {
                vec![]
            } else {
                vec![DocViolation {
                    kind: "roundtrip".into(),
                    exponents: None,
                    defect: None,
                    detail: Some("transport and recovery did not return the inputs".into()),
                }]
            };
            let certificate = Certificate::new("roundtrip", violations, digest);
            let out = json!({
                "orientation": DocSeries::from_series(orientation.series()),
                "law": DocFgl::from_series(law.series()),
                "certificate": certificate,
            });
            let exit = i32::from(!verdict);
            let text = format!("roundtrip: {}", if verdict { "PASS" } else { "FAIL" });
            Ok(Report { value: out, text, exit })
        }

        Command::ProjectiveReduce { input, n } => {
            let doc: DocSeries = read_json(&input)?;
            let series = doc.to_series()?;
            let reduced = projective_ring_reduce(&series, n)?;
            let out = json!({
                "dimension": n,
                "reduced": DocSeries::from_series(&reduced),
            });
            Ok(Report { value: out, text: format!("reduced = {reduced}"), exit: 0 })
        }
    }
}
