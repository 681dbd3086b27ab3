//! Command-line front end: queries, table sweeps and the verification suite.
//!
//! Every JSON document carries the schema tag and echoes the flag set that
//! produced it, so any output is reproducible from its own header. Exit
//! codes: 0 on success, 1 when a verification or certification reports a
//! failure, 2 for malformed flags.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use g2bbw::cohom::ExtOptions;
use g2bbw::quiver::{hom_matrix, strict_semistable_exists, DimVector, StabilityParam};
use g2bbw::repring::{BundleDescriptor, BundleSum};
use g2bbw::tiltcert::{certify_tilting, verify_paper, known_suites, Collection, Verdict, VerifyOptions};
use g2bbw::{coh_irreducible, cox_dimension, push_coh_total, TotalSpace};

#[derive(Parser, Debug)]
#[command(name = "g2bbw", version, about = "Exact equivariant cohomology over the G2 homogeneous spaces: queries, Ext tables, tilting certification, stability checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this path instead of stdout. Relative paths resolve
    /// against $G2BBW_OUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum ProperSpace {
    #[value(alias = "G")]
    G,
    #[value(alias = "Q")]
    Q,
    #[value(alias = "F")]
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum PushSpace {
    Yplus,
    Yminus,
    Ytot,
}

impl PushSpace {
    fn total(self) -> TotalSpace {
        match self {
            PushSpace::Yplus => TotalSpace::YPlus,
            PushSpace::Yminus => TotalSpace::YMinus,
            PushSpace::Ytot => TotalSpace::YTot,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct DescriptorArgs {
    /// Symmetric power of the rank-2 bundle dual (G and Q spaces).
    #[arg(long)]
    sym: Option<u32>,
    /// Line-bundle twist (G and Q spaces).
    #[arg(long, allow_negative_numbers = true)]
    twist: Option<i64>,
    /// First flag-variety twist coordinate (F space and the blown-up total space).
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    /// Second flag-variety twist coordinate.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of one irreducible equivariant bundle on G, Q or F.
    Coh {
        #[arg(long, value_enum)]
        space: ProperSpace,
        #[command(flatten)]
        descr: DescriptorArgs,
    },
    /// Pushforward cohomology of a descriptor over a total space.
    Push {
        #[arg(long, value_enum)]
        space: PushSpace,
        #[command(flatten)]
        descr: DescriptorArgs,
        /// Degree-0 stream cutoff (raised to the stabilization level).
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Ext matrix of a named collection.
    Ext {
        #[arg(long)]
        collection: String,
        #[arg(long)]
        schur: bool,
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Certify a named collection as a tilting collection.
    TiltCheck {
        #[arg(long)]
        collection: String,
        #[arg(long)]
        schur: bool,
    },
    /// Degree-0 Hom matrix (arrow-count raw data) of a named collection.
    Hom {
        #[arg(long)]
        collection: String,
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Strict-semistability search for a dimension vector and stability
    /// parameter (comma-separated integer lists).
    Stability {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Graded dimension of the bidegree-(a,b) piece of the section ring.
    Hilbert {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Run the verification suite.
    Verify {
        /// One of: all, bbw, plus, minus, tilt, dual, quiver, serre, cox.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        schur: bool,
        #[arg(long)]
        cutoff: Option<u64>,
        /// Test hook: force one claim to FAIL.
        #[arg(long, hide = true)]
        perturb_claim: Option<String>,
    },
}

fn flag_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn descriptor_for(space: ProperSpace, d: &DescriptorArgs) -> Result<BundleDescriptor, String> {
    match space {
        ProperSpace::G | ProperSpace::Q => {
            let k = d.sym.ok_or("--sym is required on G and Q")?;
            let twist = d.twist.ok_or("--twist is required on G and Q")?;
            if d.a.is_some() || d.b.is_some() {
                return Err("--a/--b only apply on F".into());
            }
            Ok(match space {
                ProperSpace::G => BundleDescriptor::G { k, twist },
                _ => BundleDescriptor::Q { k, twist },
            })
        }
        ProperSpace::F => {
            let a = d.a.ok_or("--a is required on F")?;
            let b = d.b.ok_or("--b is required on F")?;
            if d.sym.is_some() || d.twist.is_some() {
                return Err("--sym/--twist only apply on G and Q".into());
            }
            Ok(BundleDescriptor::F { a, b })
        }
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}

fn coh_to_json(c: &g2bbw::CohResult) -> Value {
    let rows: Vec<Value> = c
        .iter()
        .map(|(deg, ms)| {
            let irreps: Vec<Value> =
                ms.iter().map(|(l, m)| json!([l.to_string(), m])).collect();
            let dim: u64 = ms.iter().map(|(l, m)| l.dim() * m).sum();
            json!({ "degree": deg, "value": { "exact": dim }, "irreps": irreps })
        })
        .collect();
    Value::Array(rows)
}

fn graded_to_json(g: &g2bbw::GradedDims, hull: &std::collections::BTreeMap<u8, g2bbw::cohom::IrrepMultiset>) -> Value {
    let rows: Vec<Value> = g
        .0
        .iter()
        .map(|(deg, v)| {
            let value = match v {
                g2bbw::DimValue::Exact(n) => json!({ "exact": n }),
                g2bbw::DimValue::Interval(lo, hi) => json!({ "interval": [lo, hi] }),
            };
            let irreps: Vec<Value> = hull
                .get(deg)
                .map(|ms| ms.iter().map(|(l, m)| json!([l.to_string(), m])).collect())
                .unwrap_or_default();
            json!({ "degree": deg, "value": value, "irreps": irreps })
        })
        .collect();
    Value::Array(rows)
}

fn dim_value_json(v: g2bbw::DimValue) -> Value {
    match v {
        g2bbw::DimValue::Exact(n) => json!({ "exact": n }),
        g2bbw::DimValue::Interval(lo, hi) => json!({ "interval": [lo, hi] }),
    }
}

fn emit(cli_format: Format, output: &Option<PathBuf>, json_doc: Value, tsv: String) -> Result<(), String> {
    let body = match cli_format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Tsv => tsv,
    };
    match output {
        None => {
            print!("{body}");
            std::io::stdout().flush().map_err(|e| e.to_string())
        }
        Some(path) => {
            let path = if path.is_relative() {
                match std::env::var_os("G2BBW_OUT_DIR") {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| e.to_string())?;
                }
            }
            std::fs::write(&path, body).map_err(|e| e.to_string())
        }
    }
}

fn envelope(command: &str, flags: Value, result: Value) -> Value {
    json!({
        "schema": g2bbw::SCHEMA,
        "command": command,
        "flags": flags,
        "result": result,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let output = cli.output.clone();

    let run = || -> Result<(Value, String, ExitCode), String> {
        match &cli.command {
            Command::Coh { space, descr } => {
                let d = descriptor_for(*space, descr)?;
                let c = coh_irreducible(d);
                let flags = json!({ "space": space, "descriptor": d });
                let mut tsv = String::from("degree\tirrep\tmult\tdim\n");
                for (deg, ms) in c.iter() {
                    for (l, m) in ms {
                        tsv.push_str(&format!("{deg}\t{l}\t{m}\t{}\n", l.dim() * m));
                    }
                }
                if c.is_acyclic() {
                    tsv.push_str("acyclic\n");
                }
                Ok((envelope("coh", flags, coh_to_json(&c)), tsv, ExitCode::SUCCESS))
            }
            Command::Push { space, descr, cutoff } => {
                let d = match space {
                    PushSpace::Yplus => descriptor_for(ProperSpace::G, descr)?,
                    PushSpace::Yminus => descriptor_for(ProperSpace::Q, descr)?,
                    PushSpace::Ytot => descriptor_for(ProperSpace::F, descr)?,
                };
                let sum = BundleSum::from_descriptor(d);
                let r = push_coh_total(space.total(), &sum, *cutoff).map_err(|e| e.to_string())?;
                let flags = json!({ "space": space, "descriptor": d, "cutoff": cutoff });
                let levels: Vec<Value> = r
                    .h0_stream
                    .iter()
                    .enumerate()
                    .map(|(k, ms)| {
                        let irreps: Vec<Value> =
                            ms.iter().map(|(l, m)| json!([l.to_string(), m])).collect();
                        let dim: u64 = ms.iter().map(|(l, m)| l.dim() * m).sum();
                        json!({ "k": k, "dim": dim, "irreps": irreps })
                    })
                    .collect();
                let result = json!({
                    "higher": coh_to_json(&r.higher),
                    "h0_stream": levels,
                    "stabilization_k0": r.stabilization_k0,
                    "cutoff": r.cutoff,
                });
                let mut tsv = String::from("part\tdegree_or_k\tirrep\tmult\n");
                for (deg, ms) in r.higher.iter() {
                    for (l, m) in ms {
                        tsv.push_str(&format!("higher\t{deg}\t{l}\t{m}\n"));
                    }
                }
                for (k, ms) in r.h0_stream.iter().enumerate() {
                    for (l, m) in ms {
                        tsv.push_str(&format!("h0\t{k}\t{l}\t{m}\n"));
                    }
                }
                Ok((envelope("push", flags, result), tsv, ExitCode::SUCCESS))
            }
            Command::Ext { collection, schur, cutoff } => {
                let c = Collection::by_name(collection)
                    .ok_or_else(|| format!("unknown collection {collection:?}; known: {}", Collection::known_names().join(", ")))?;
                let opts = ExtOptions { schur: *schur, cutoff: *cutoff };
                let n = c.summands.len();
                let mut rows = Vec::new();
                let mut tsv = String::from("i\tj\tdegree\tvalue\n");
                for i in 0..n {
                    for j in 0..n {
                        let e = g2bbw::tiltcert::ext_summands(c.space, &c.summands[i], &c.summands[j], &opts)
                            .map_err(|e| e.to_string())?;
                        rows.push(json!({
                            "i": i,
                            "j": j,
                            "source": c.summands[i].name,
                            "target": c.summands[j].name,
                            "higher": graded_to_json(&e.higher, &e.hull),
                            "h0_levels": e.h0_levels.iter().map(|v| dim_value_json(*v)).collect::<Vec<_>>(),
                            "exact": e.exact,
                        }));
                        for d in 1..=6u8 {
                            tsv.push_str(&format!("{i}\t{j}\t{d}\t{}\n", e.higher.at(d)));
                        }
                    }
                }
                let flags = json!({ "collection": collection, "schur": schur, "cutoff": cutoff });
                Ok((envelope("ext", flags, Value::Array(rows)), tsv, ExitCode::SUCCESS))
            }
            Command::TiltCheck { collection, schur } => {
                let c = Collection::by_name(collection)
                    .ok_or_else(|| format!("unknown collection {collection:?}; known: {}", Collection::known_names().join(", ")))?;
                let opts = ExtOptions { schur: *schur, cutoff: None };
                let cert = certify_tilting(&c, &opts).map_err(|e| e.to_string())?;
                let flags = json!({ "collection": collection, "schur": schur });
                let code = if cert.verdict == Verdict::Failed {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                };
                let mut tsv = format!("verdict\t{}\n", cert.verdict);
                for s in &cert.steps {
                    tsv.push_str(&format!(
                        "step\t{}\t{}\tr={}\t{} (rank {})\n",
                        s.source, s.target, s.rank, s.summand, s.summand_rank
                    ));
                }
                tsv.push_str(&format!("produced\t{}\n", cert.produced.join(" + ")));
                let result = serde_json::to_value(&cert).expect("serializable");
                Ok((envelope("tilt-check", flags, result), tsv, code))
            }
            Command::Hom { collection, cutoff } => {
                let c = Collection::by_name(collection)
                    .ok_or_else(|| format!("unknown collection {collection:?}"))?;
                let m = hom_matrix(&c, &ExtOptions { schur: false, cutoff: *cutoff })
                    .map_err(|e| e.to_string())?;
                let flags = json!({ "collection": collection, "cutoff": cutoff });
                let mut tsv = String::from("i\tj\tk\tvalue\n");
                for (i, row) in m.entries.iter().enumerate() {
                    for (j, levels) in row.iter().enumerate() {
                        for (k, v) in levels.iter().enumerate() {
                            tsv.push_str(&format!("{i}\t{j}\t{k}\t{v}\n"));
                        }
                    }
                }
                let result = serde_json::to_value(&m).expect("serializable");
                Ok((envelope("hom", flags, result), tsv, ExitCode::SUCCESS))
            }
            Command::Stability { d, theta } => {
                let dv: Vec<i64> = parse_int_list(d)?;
                if dv.iter().any(|&x| x < 0) {
                    return Err("dimension vector entries must be nonnegative".into());
                }
                let dvec = DimVector(dv.iter().map(|&x| x as u64).collect());
                let tvec = StabilityParam(parse_int_list(theta)?);
                let witness = strict_semistable_exists(&dvec, &tvec).map_err(|e| e.to_string())?;
                let flags = json!({ "d": d, "theta": theta });
                let result = json!({
                    "strict_semistable": witness.as_ref().map(|w| w.to_string()),
                    "candidates": g2bbw::quiver::candidate_count(&dvec),
                });
                let tsv = format!(
                    "strict_semistable\t{}\n",
                    witness.as_ref().map_or("none".to_string(), |w| w.to_string())
                );
                Ok((envelope("stability", flags, result), tsv, ExitCode::SUCCESS))
            }
            Command::Hilbert { a, b } => {
                let dim = cox_dimension(*a, *b);
                let flags = json!({ "a": a, "b": b });
                Ok((
                    envelope("hilbert", flags, json!({ "dim": dim })),
                    format!("{dim}\n"),
                    ExitCode::SUCCESS,
                ))
            }
            Command::Verify { suite, schur, cutoff, perturb_claim } => {
                if !known_suites().contains(&suite.as_str()) {
                    return Err(format!("unknown suite {suite:?}; known: {}", known_suites().join(", ")));
                }
                let opts = VerifyOptions {
                    schur: *schur,
                    cutoff: *cutoff,
                    exec: Default::default(),
                    perturb: perturb_claim.clone(),
                };
                let report = verify_paper(suite, &opts);
                let code = if report.has_failures() { ExitCode::from(1) } else { ExitCode::SUCCESS };
                let doc = serde_json::to_value(&report).expect("serializable");
                Ok((doc, report.to_tsv(), code))
            }
        }
    };

    match run() {
        Err(msg) => flag_error(&msg),
        Ok((doc, tsv, code)) => match emit(format, &output, doc, tsv) {
            Err(msg) => flag_error(&msg),
            Ok(()) => code,
        },
    }
}
