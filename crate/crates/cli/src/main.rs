//! Batch verification front end.
//!
//! Loads a JSON problem file, runs one operation against a named module,
//! map or scenario, and prints a machine-readable report.  Exit codes:
//! 0 = PASS/true, 1 = FAIL/false, 2 = precondition or input failure,
//! 3 = theorem violation (the tripwire that must never fire on valid
//! inputs).

mod problem;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use modvar::algmod::{hom_dim, orbit_dim};
use modvar::cusp::{check_long_n, check_p1, check_p1_prime, check_p2, endo_bimodule};
use modvar::degen::{
    certificate_from_submodule, certify_regularity, check_exact, check_split, endo_pair,
    normalize_certificate, theorem2_gap, uniqueness_check, GapStatus, RegularityStatus,
};
use modvar::oracles::{jordan_module, partition_hom, search_thm2, Partition, SearchParams};

use problem::{matrix_to_json, Problem, ScenarioJson};
use report::{Inputs, Report};

#[derive(Parser)]
#[command(
    name = "modvar",
    about = "Exact verification of module-variety degenerations, regularity certificates and cusp-ring module properties",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FileArg {
    /// JSON problem file.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining relations on a named module.
    Validate {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
    },
    /// Compute dim Hom between two named modules.
    Hom {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Compute the orbit dimension d^2 - [M,M] of a named module.
    Orbitdim {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
    },
    /// Verify exactness of a sequence-like scenario.
    Exact {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        cert: String,
    },
    /// Decide splitness of an exact sequence-like scenario.
    Split {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        cert: String,
    },
    /// Run the regularity certification on a certificate scenario.
    Certify {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        cert: String,
    },
    /// Normalize a certificate to radical form.
    Normalize {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        cert: String,
    },
    /// Check the endomorphism-gap bound on a self-extension datum.
    Thm2 {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// Property P1 of a left cusp-module scenario.
    P1 {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
    },
    /// Property P1' of a right cusp-module scenario.
    P1prime {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
    },
    /// Property P2 of a cusp-bimodule scenario.
    P2 {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// The long exact sequence induced by P2, plus P1/P1' of the sides.
    Longn {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// Build the cusp bimodule on End(Y) from a self-extension datum.
    EndoBimodule {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// Build the filtration certificate from a submodule scenario.
    Degenerate {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// Cross-check the Jordan Hom dimension against the partition formula.
    PartitionOracle {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
    },
    /// Enumerate nonsplit self-extension data over a prime field.
    SearchThm2 {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        datum: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check two normalized certificates for equivalence.
    Unique {
        #[command(flatten)]
        file: FileArg,
        /// Certificate scenario; give the flag twice.
        #[arg(long, num_args = 1, action = clap::ArgAction::Append)]
        cert: Vec<String>,
    },
}

struct Loaded {
    problem: Problem,
    inputs: Inputs,
}

fn load(file: &FileArg, names: &[(&str, &str)]) -> Result<Loaded, String> {
    let bytes = std::fs::read(&file.file)
        .map_err(|e| format!("cannot read {}: {e}", file.file.display()))?;
    let digest = format!("sha256:{}", hex_digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| format!("problem file is not UTF-8: {e}"))?;
    let problem = Problem::parse(&text).map_err(|e| e.to_string())?;
    let mut name_map = BTreeMap::new();
    for (k, v) in names {
        name_map.insert((*k).to_string(), (*v).to_string());
    }
    Ok(Loaded {
        problem,
        inputs: Inputs {
            file: file.file.display().to_string(),
            digest,
            names: name_map,
            seed: None,
            budget: None,
            jobs: None,
        },
    })
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn run(command: &Command) -> Result<Report, String> {
    match command {
        Command::Validate { file, module } => {
            let loaded = load(file, &[("module", module)])?;
            let m = loaded.problem.module(module).map_err(|e| e.to_string())?;
            let rep = m.validate().map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("dim".into(), json!(m.dim()));
            let mut details = Vec::new();
            if let Some(i) = rep.first_failing_relation {
                values.insert("first_failing_relation".into(), json!(i));
                details.push(format!("relation {i} does not vanish"));
            }
            Ok(Report {
                command: "validate".into(),
                inputs: loaded.inputs,
                verdict: if rep.pass { "PASS" } else { "FAIL" }.into(),
                values,
                details,
            })
        }
        Command::Hom { file, from, to } => {
            let loaded = load(file, &[("from", from), ("to", to)])?;
            let a = loaded.problem.module(from).map_err(|e| e.to_string())?;
            let b = loaded.problem.module(to).map_err(|e| e.to_string())?;
            let hom = modvar::algmod::hom_basis(a, b).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("hom_dim".into(), json!(hom.dim()));
            values.insert(
                "basis".into(),
                Value::Array(hom.basis().iter().map(matrix_to_json).collect()),
            );
            Ok(Report {
                command: "hom".into(),
                inputs: loaded.inputs,
                verdict: "computed".into(),
                values,
                details: Vec::new(),
            })
        }
        Command::Orbitdim { file, module } => {
            let loaded = load(file, &[("module", module)])?;
            let m = loaded.problem.module(module).map_err(|e| e.to_string())?;
            let od = orbit_dim(m).map_err(|e| e.to_string())?;
            let end = hom_dim(m, m).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("orbit_dim".into(), json!(od));
            values.insert("end_dim".into(), json!(end));
            values.insert("dim".into(), json!(m.dim()));
            Ok(Report {
                command: "orbitdim".into(),
                inputs: loaded.inputs,
                verdict: "computed".into(),
                values,
                details: Vec::new(),
            })
        }
        Command::Exact { file, cert } => {
            let loaded = load(file, &[("cert", cert)])?;
            let seq = loaded.problem.sequence(cert).map_err(|e| e.to_string())?;
            let rep = check_exact(&seq).map_err(|e| e.to_string())?;
            Ok(Report {
                command: "exact".into(),
                inputs: loaded.inputs,
                verdict: if rep.pass { "PASS" } else { "FAIL" }.into(),
                values: BTreeMap::new(),
                details: rep.failures,
            })
        }
        Command::Split { file, cert } => {
            let loaded = load(file, &[("cert", cert)])?;
            let seq = loaded.problem.sequence(cert).map_err(|e| e.to_string())?;
            let split = check_split(&seq).map_err(|e| e.to_string())?;
            Ok(Report {
                command: "split".into(),
                inputs: loaded.inputs,
                verdict: if split { "true" } else { "false" }.into(),
                values: BTreeMap::new(),
                details: Vec::new(),
            })
        }
        Command::Certify { file, cert } => {
            let loaded = load(file, &[("cert", cert)])?;
            let c = loaded.problem.certificate(cert).map_err(|e| e.to_string())?;
            let rep = certify_regularity(&c).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("hom_nz".into(), json!(rep.hom_nz));
            values.insert("hom_mz".into(), json!(rep.hom_mz));
            values.insert("hom_zm".into(), json!(rep.hom_zm));
            values.insert("hom_zn".into(), json!(rep.hom_zn));
            values.insert("hom_zm_m".into(), json!(rep.hom_zm_m));
            values.insert("hom_zm_n".into(), json!(rep.hom_zm_n));
            if let Some(c1) = &rep.codim1 {
                values.insert(
                    "codim1".into(),
                    json!({
                        "hom_mm": c1.hom_mm, "hom_mn": c1.hom_mn,
                        "hom_nm": c1.hom_nm, "hom_nn": c1.hom_nn,
                        "orbit_m": c1.orbit_m, "orbit_n": c1.orbit_n,
                    }),
                );
            }
            let (verdict, details) = match rep.status {
                RegularityStatus::RegularCertified => {
                    ("REGULAR-certified".to_string(), Vec::new())
                }
                RegularityStatus::TheoremViolation => {
                    ("THEOREM-VIOLATION".to_string(), rep.identity_failures)
                }
                RegularityStatus::PreconditionFailure => {
                    ("precondition-failure".to_string(), rep.precondition_failures)
                }
            };
            Ok(Report {
                command: "certify".into(),
                inputs: loaded.inputs,
                verdict,
                values,
                details,
            })
        }
        Command::Normalize { file, cert } => {
            let loaded = load(file, &[("cert", cert)])?;
            let c = loaded.problem.certificate(cert).map_err(|e| e.to_string())?;
            let n = normalize_certificate(&c).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("z_dim".into(), json!(n.z.dim()));
            values.insert(
                "z_mats".into(),
                Value::Array(n.z.mats().iter().map(matrix_to_json).collect()),
            );
            values.insert("f".into(), matrix_to_json(&n.f));
            values.insert("g".into(), matrix_to_json(&n.g));
            Ok(Report {
                command: "normalize".into(),
                inputs: loaded.inputs,
                verdict: "computed".into(),
                values,
                details: Vec::new(),
            })
        }
        Command::Thm2 { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let s = loaded
                .problem
                .self_extension(datum)
                .map_err(|e| e.to_string())?;
            let rep = theorem2_gap(&s).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("gap".into(), json!(rep.gap));
            values.insert("hom_yy".into(), json!(rep.hom_yy));
            values.insert("hom_yz".into(), json!(rep.hom_yz));
            values.insert("hom_zy".into(), json!(rep.hom_zy));
            values.insert("hom_zz".into(), json!(rep.hom_zz));
            let (verdict, details) = match rep.status {
                GapStatus::Pass => ("PASS".to_string(), Vec::new()),
                GapStatus::TheoremViolation => (
                    "THEOREM-VIOLATION".to_string(),
                    vec![format!("gap = {} is below 2", rep.gap)],
                ),
                GapStatus::PreconditionFailure => {
                    ("precondition-failure".to_string(), rep.precondition_failures)
                }
            };
            Ok(Report {
                command: "thm2".into(),
                inputs: loaded.inputs,
                verdict,
                values,
                details,
            })
        }
        Command::P1 { file, module } => {
            let loaded = load(file, &[("module", module)])?;
            let m = loaded
                .problem
                .cusp_module(module)
                .map_err(|e| e.to_string())?;
            let holds = check_p1(&m).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("dim".into(), json!(m.dim()));
            Ok(Report {
                command: "p1".into(),
                inputs: loaded.inputs,
                verdict: if holds { "true" } else { "false" }.into(),
                values,
                details: Vec::new(),
            })
        }
        Command::P1prime { file, module } => {
            let loaded = load(file, &[("module", module)])?;
            let m = loaded
                .problem
                .cusp_module(module)
                .map_err(|e| e.to_string())?;
            let holds = check_p1_prime(&m).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("dim".into(), json!(m.dim()));
            Ok(Report {
                command: "p1prime".into(),
                inputs: loaded.inputs,
                verdict: if holds { "true" } else { "false" }.into(),
                values,
                details: Vec::new(),
            })
        }
        Command::P2 { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let b = loaded
                .problem
                .cusp_bimodule(datum)
                .map_err(|e| e.to_string())?;
            let holds = check_p2(&b).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("dim".into(), json!(b.dim()));
            Ok(Report {
                command: "p2".into(),
                inputs: loaded.inputs,
                verdict: if holds { "true" } else { "false" }.into(),
                values,
                details: Vec::new(),
            })
        }
        Command::Longn { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let b = loaded
                .problem
                .cusp_bimodule(datum)
                .map_err(|e| e.to_string())?;
            if !check_p2(&b).map_err(|e| e.to_string())? {
                return Ok(Report {
                    command: "longn".into(),
                    inputs: loaded.inputs,
                    verdict: "precondition-failure".into(),
                    values: BTreeMap::new(),
                    details: vec!["checkP2 is false".into()],
                });
            }
            let rep = check_long_n(&b).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("position1".into(), json!(rep.position1));
            values.insert("position2".into(), json!(rep.position2));
            values.insert("position3".into(), json!(rep.position3));
            values.insert("p1_left".into(), json!(rep.p1_left));
            values.insert("p1_prime_right".into(), json!(rep.p1_prime_right));
            Ok(Report {
                command: "longn".into(),
                inputs: loaded.inputs,
                verdict: if rep.pass { "PASS" } else { "FAIL" }.into(),
                values,
                details: Vec::new(),
            })
        }
        Command::EndoBimodule { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let s = loaded
                .problem
                .self_extension(datum)
                .map_err(|e| e.to_string())?;
            let (x, y) = endo_pair(&s).map_err(|e| e.to_string())?;
            let b = endo_bimodule(&s.y, &x, &y).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("dim".into(), json!(b.dim()));
            values.insert("x".into(), matrix_to_json(&x));
            values.insert("y".into(), matrix_to_json(&y));
            values.insert("left_m2".into(), matrix_to_json(b.left_m2()));
            values.insert("left_m3".into(), matrix_to_json(b.left_m3()));
            values.insert("right_m2".into(), matrix_to_json(b.right_m2()));
            values.insert("right_m3".into(), matrix_to_json(b.right_m3()));
            values.insert("p2".into(), json!(check_p2(&b).map_err(|e| e.to_string())?));
            Ok(Report {
                command: "endo-bimodule".into(),
                inputs: loaded.inputs,
                verdict: "computed".into(),
                values,
                details: Vec::new(),
            })
        }
        Command::Degenerate { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let ScenarioJson::Submodule { module, basis } =
                loaded.problem.scenario(datum).map_err(|e| e.to_string())?
            else {
                return Err(format!("scenario {datum:?} is not a submodule scenario"));
            };
            let m = loaded.problem.module(module).map_err(|e| e.to_string())?;
            let u = loaded.problem.map(basis).map_err(|e| e.to_string())?;
            let cert = certificate_from_submodule(m, u).map_err(|e| e.to_string())?;
            let exact = cert.check_exact().map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("z_dim".into(), json!(cert.z.dim()));
            values.insert(
                "z_mats".into(),
                Value::Array(cert.z.mats().iter().map(matrix_to_json).collect()),
            );
            values.insert(
                "n_mats".into(),
                Value::Array(cert.n.mats().iter().map(matrix_to_json).collect()),
            );
            values.insert("f".into(), matrix_to_json(&cert.f));
            values.insert("g".into(), matrix_to_json(&cert.g));
            Ok(Report {
                command: "degenerate".into(),
                inputs: loaded.inputs,
                verdict: if exact.pass { "PASS" } else { "FAIL" }.into(),
                values,
                details: exact.failures,
            })
        }
        Command::PartitionOracle { file, datum } => {
            let loaded = load(file, &[("datum", datum)])?;
            let ScenarioJson::PartitionPair { lambda, mu } =
                loaded.problem.scenario(datum).map_err(|e| e.to_string())?
            else {
                return Err(format!("scenario {datum:?} is not a partition pair"));
            };
            let lambda = Partition::new(lambda.clone());
            let mu = Partition::new(mu.clone());
            let expected = partition_hom(&lambda, &mu);
            let ml = jordan_module(&lambda, loaded.problem.field);
            let mm = jordan_module(&mu, loaded.problem.field);
            let computed = hom_dim(&ml, &mm).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("partition_hom".into(), json!(expected));
            values.insert("jordan_hom_dim".into(), json!(computed));
            Ok(Report {
                command: "partition-oracle".into(),
                inputs: loaded.inputs,
                verdict: if expected == computed { "PASS" } else { "FAIL" }.into(),
                values,
                details: Vec::new(),
            })
        }
        Command::SearchThm2 {
            file,
            datum,
            budget,
            seed,
            jobs,
        } => {
            let mut loaded = load(file, &[("datum", datum)])?;
            loaded.inputs.seed = Some(*seed);
            loaded.inputs.budget = Some(*budget);
            loaded.inputs.jobs = Some(*jobs);
            let ScenarioJson::GapSearch { d_z, t } =
                loaded.problem.scenario(datum).map_err(|e| e.to_string())?
            else {
                return Err(format!("scenario {datum:?} is not a search scenario"));
            };
            let params = SearchParams {
                field: loaded.problem.field,
                d_z: *d_z,
                t: *t,
                budget: *budget,
                seed: *seed,
                jobs: *jobs,
            };
            let out = search_thm2(&params).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("examined".into(), json!(out.examined));
            values.insert("budget_exhausted".into(), json!(out.budget_exhausted));
            values.insert(
                "skipped_indecomposability".into(),
                json!(out.skipped_indecomposability),
            );
            values.insert("found_count".into(), json!(out.found.len()));
            let found: Vec<Value> = out
                .found
                .iter()
                .map(|s| {
                    json!({
                        "z_mats": s.z.mats().iter().map(matrix_to_json).collect::<Vec<_>>(),
                        "y_mats": s.y.mats().iter().map(matrix_to_json).collect::<Vec<_>>(),
                        "ftilde": matrix_to_json(&s.ftilde),
                        "gtilde": matrix_to_json(&s.gtilde),
                        "htilde": matrix_to_json(&s.htilde),
                    })
                })
                .collect();
            values.insert("found".into(), Value::Array(found));
            Ok(Report {
                command: "search-thm2".into(),
                inputs: loaded.inputs,
                verdict: "computed".into(),
                values,
                details: if out.budget_exhausted {
                    vec!["budget exhausted: partial enumeration".into()]
                } else {
                    Vec::new()
                },
            })
        }
        Command::Unique { file, cert } => {
            if cert.len() != 2 {
                return Err("unique needs --cert given exactly twice".into());
            }
            let loaded = load(file, &[("cert1", &cert[0]), ("cert2", &cert[1])])?;
            let c1 = loaded
                .problem
                .certificate(&cert[0])
                .map_err(|e| e.to_string())?;
            let c2 = loaded
                .problem
                .certificate(&cert[1])
                .map_err(|e| e.to_string())?;
            let rep = uniqueness_check(&c1, &c2).map_err(|e| e.to_string())?;
            let mut values = BTreeMap::new();
            values.insert("z_isomorphic".into(), json!(rep.z_isomorphic));
            values.insert("equivalent".into(), json!(rep.equivalent));
            let verdict = if !rep.precondition_failures.is_empty() {
                "precondition-failure"
            } else if rep.equivalent {
                "true"
            } else {
                "false"
            };
            Ok(Report {
                command: "unique".into(),
                inputs: loaded.inputs,
                verdict: verdict.into(),
                values,
                details: rep.precondition_failures,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            report.print();
            ExitCode::from(report.exit_code() as u8)
        }
        Err(diagnostic) => {
            eprintln!("error: {diagnostic}");
            ExitCode::from(2)
        }
    }
}
