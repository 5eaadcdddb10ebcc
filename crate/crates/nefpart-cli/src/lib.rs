//! Command-line interface for the nef-partition toolkit.
//!
//! Exit codes: 0 = success / mathematically true, 2 = mathematically false,
//! 1 = input or processing error (including exceeded search budgets).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nefpart_core::classify::{classification_csv, classify_vector, fnv64, ClassificationRow};
use nefpart_core::gnp::{all_gnps, dual_gnp, is_gnp, is_irreducible, GnpResult};
use nefpart_core::goodpair::{
    dual_good_pair, equations_from_pair, pair_from_equations, pair_matrix, GoodPair, PairError,
};
use nefpart_core::json::*;
use nefpart_core::linalg::Int;
use nefpart_core::regularity::{is_cy_family, is_quasismooth_ci, QsVerdict, DEFAULT_BUDGET};
use nefpart_core::toric::{CoxSystem, ToricAmbient};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "nefpart",
    version,
    about = "Generalized nef partitions, good pairs, and quasismooth Calabi-Yau families"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test whether a partition of the polar vertices is a generalized nef
    /// partition of the polytope.
    Gnp {
        /// Polytope JSON file (or use --stdin).
        #[arg(long)]
        polytope: Option<PathBuf>,
        /// Partition as inline JSON `{"blocks": [[..],..]}` or a file path.
        #[arg(long)]
        partition: String,
        /// Read the polytope JSON from standard input.
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Enumerate all generalized nef partitions of a polytope.
    AllGnps {
        #[arg(long)]
        polytope: Option<PathBuf>,
        /// Restrict to partitions with exactly S blocks.
        #[arg(long)]
        s: Option<usize>,
        /// Refuse polytopes whose polar has more vertices than this.
        #[arg(long, default_value_t = 20)]
        cap: usize,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Dualize a good pair (or a single generalized nef partition).
    Dual {
        /// Good-pair JSON file (or use --stdin).
        #[arg(long)]
        goodpair: Option<PathBuf>,
        /// Alternatively: a polytope file plus --partition dualizes one GNP.
        #[arg(long)]
        polytope: Option<PathBuf>,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Test irreducibility of a generalized nef partition (for a good pair,
    /// of its inner partition).
    Irreducible {
        #[arg(long)]
        goodpair: Option<PathBuf>,
        #[arg(long)]
        polytope: Option<PathBuf>,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Validate that two nested generalized nef partitions form a good pair.
    Goodpair {
        #[arg(long)]
        goodpair: Option<PathBuf>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the pair matrix A_P of a good pair.
    Matrix {
        #[arg(long)]
        goodpair: Option<PathBuf>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Translate a good pair into a system of equations on its toric ambient.
    Eqs {
        #[arg(long)]
        goodpair: Option<PathBuf>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Translate a system with marked monomials back into a good pair.
    EqsToPol {
        /// System JSON file `{"rays", "supports", "marked"?}` (or --stdin).
        #[arg(long)]
        system: Option<PathBuf>,
        /// Marked monomials as inline JSON `[[..],..]` or a file path;
        /// overrides the "marked" field of the system file.
        #[arg(long)]
        marked: Option<String>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Combinatorial quasismoothness of the complete intersection cut out by
    /// a system (or by the equations of a good pair).
    Qsci {
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        goodpair: Option<PathBuf>,
        #[arg(long)]
        stdin: bool,
        /// Stratum-enumeration budget (default: NEFPART_BUDGET or 1000000).
        #[arg(long)]
        budget: Option<u64>,
        /// Number of worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Verify that a marked system defines a quasismooth, well-formed
    /// Calabi-Yau complete-intersection family.
    Iscy {
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        goodpair: Option<PathBuf>,
        /// Marked monomials as inline JSON or a file path (systems only).
        #[arg(long)]
        marked: Option<String>,
        #[arg(long)]
        stdin: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Classify quasismooth codimension-two K3 families for a weight/degree
    /// vector `m,n,w1,w2,w3,w4,w5` (default: the bundled vector 2,3,1,1,1,1,1).
    ClassifyK3 {
        #[arg(long, default_value = "2,3,1,1,1,1,1")]
        vector: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Append one JSON record per completed (vector, pair) to this file
        /// and reuse completed vectors on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with exit code 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nefpart: error: {e:#}");
            1
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("NEFPART_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // Ignore the error when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn read_stdin() -> Result<String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .context("reading standard input")?;
    Ok(buf)
}

/// Load the primary input JSON from a file or, with --stdin, from stdin.
fn load_value(path: Option<&PathBuf>, use_stdin: bool, what: &str) -> Result<Value> {
    let text = if use_stdin {
        read_stdin()?
    } else {
        let p = path.ok_or_else(|| anyhow!("missing --{what} (or --stdin)"))?;
        std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what} JSON"))
}

/// Parse a flag value as inline JSON, falling back to reading it as a path.
fn inline_or_file(arg: &str, what: &str) -> Result<Value> {
    if let Ok(v) = serde_json::from_str(arg) {
        return Ok(v);
    }
    let text =
        std::fs::read_to_string(arg).with_context(|| format!("--{what}: not valid inline JSON and not a readable file: {arg}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} JSON from file {arg}"))
}

/// Write output atomically (temp file + rename) or to stdout.
fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
            let tmp = match dir {
                Some(d) => d.join(format!(
                    ".{}.tmp-{}",
                    path.file_name().and_then(|f| f.to_str()).unwrap_or("out"),
                    std::process::id()
                )),
                None => PathBuf::from(format!(".nefpart.tmp-{}", std::process::id())),
            };
            std::fs::write(&tmp, format!("{text}\n"))
                .with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, path)
                .with_context(|| format!("renaming into {}", path.display()))?;
            Ok(())
        }
    }
}

/// Add the versioned header and emit as deterministic JSON.
fn emit_json(v: Value, output: Option<&Path>) -> Result<()> {
    let v = match v {
        Value::Object(mut m) => {
            m.insert("nefpart_version".into(), json!(VERSION));
            Value::Object(m)
        }
        other => json!({ "nefpart_version": VERSION, "result": other }),
    };
    emit(&serde_json::to_string_pretty(&v)?, output)
}

fn csv_header() -> String {
    format!("# nefpart {VERSION}")
}

fn bool_code(b: bool) -> i32 {
    if b {
        0
    } else {
        2
    }
}

fn parse_marked(v: &Value, nvars: usize) -> Result<Vec<Vec<Int>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| anyhow!("marked monomials must be an array of exponent vectors"))?;
    arr.iter()
        .map(|e| {
            let row = e
                .as_array()
                .ok_or_else(|| anyhow!("marked monomial must be an exponent vector"))?;
            if row.len() != nvars {
                bail!("marked monomial has {} exponents, expected {nvars}", row.len());
            }
            row.iter()
                .map(|x| {
                    x.as_i64()
                        .map(Int::from)
                        .ok_or_else(|| anyhow!("marked exponents must be integers"))
                })
                .collect()
        })
        .collect()
}

/// Resolve a (system | goodpair | stdin) input into an ambient, a system and
/// optional marked monomials. Good pairs are translated via their equations;
/// their marked monomials are the products of the outer-block variables.
fn resolve_system(
    system: Option<&PathBuf>,
    goodpair: Option<&PathBuf>,
    marked_flag: Option<&str>,
    use_stdin: bool,
) -> Result<(ToricAmbient, CoxSystem, Option<Vec<Vec<Int>>>)> {
    let value = if let Some(p) = system {
        load_value(Some(p), false, "system")?
    } else if let Some(p) = goodpair {
        load_value(Some(p), false, "goodpair")?
    } else if use_stdin {
        load_value(None, true, "input")?
    } else {
        bail!("missing --system or --goodpair (or --stdin)");
    };
    // A good-pair document has "inner"/"outer"; a system has "supports".
    if value.get("supports").is_some() {
        let input = system_from_json(&value, "")?;
        let marked = match marked_flag {
            Some(arg) => Some(parse_marked(
                &inline_or_file(arg, "marked")?,
                input.ambient.num_rays(),
            )?),
            None => input.marked,
        };
        Ok((input.ambient, input.system, marked))
    } else {
        let pair = good_pair_from_json(&value, "")?;
        let (ambient, system) = equations_from_pair(&pair).map_err(|e| anyhow!("{e}"))?;
        let marked = marked_from_pair(&ambient, &pair);
        Ok((ambient, system, Some(marked)))
    }
}

/// Marked monomial of equation i: the product of the variables in outer
/// block I_i (the homogenization of the origin vertex of Delta^1_i).
fn marked_from_pair(ambient: &ToricAmbient, pair: &GoodPair) -> Vec<Vec<Int>> {
    let ray_index = |v: &[nefpart_core::linalg::Rat]| -> usize {
        let iv: Vec<Int> = v.iter().map(|x| x.to_integer()).collect();
        ambient.rays.iter().position(|r| *r == iv).expect("polar vertex is a ray")
    };
    pair.outer
        .partition
        .blocks
        .iter()
        .map(|block| {
            let mut e = vec![Int::from(0); ambient.num_rays()];
            for &bi in block {
                e[ray_index(&pair.outer.delta_polar.vertices[bi])] = Int::from(1);
            }
            e
        })
        .collect()
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Gnp {
            polytope,
            partition,
            stdin,
            output,
        } => {
            let p = polytope_from_json(&load_value(polytope.as_ref(), stdin, "polytope")?, "")?;
            let part = partition_from_json(&inline_or_file(&partition, "partition")?, "")?;
            match is_gnp(&p, &part).map_err(|e| anyhow!("{e}"))? {
                GnpResult::Gnp(g, _) => {
                    emit_json(
                        json!({
                            "is_gnp": true,
                            "witness": null,
                            "gnp": gnp_to_json(&g),
                        }),
                        output.as_deref(),
                    )?;
                    Ok(0)
                }
                GnpResult::NotGnp(w) => {
                    emit_json(
                        json!({
                            "is_gnp": false,
                            "witness": { "part": w.part, "facet": w.facet },
                        }),
                        output.as_deref(),
                    )?;
                    Ok(2)
                }
            }
        }
        Cmd::AllGnps {
            polytope,
            s,
            cap,
            stdin,
            output,
        } => {
            let p = polytope_from_json(&load_value(polytope.as_ref(), stdin, "polytope")?, "")?;
            let gnps = all_gnps(&p, s, cap).map_err(|e| anyhow!("{e}"))?;
            emit_json(
                json!({
                    "count": gnps.len(),
                    "partitions": gnps
                        .iter()
                        .map(|g| partition_to_json(&g.partition))
                        .collect::<Vec<_>>(),
                }),
                output.as_deref(),
            )?;
            Ok(0)
        }
        Cmd::Dual {
            goodpair,
            polytope,
            partition,
            stdin,
            output,
        } => {
            if let Some(part) = partition {
                let p = polytope_from_json(&load_value(polytope.as_ref(), stdin, "polytope")?, "")?;
                let part = partition_from_json(&inline_or_file(&part, "partition")?, "")?;
                let g = match is_gnp(&p, &part).map_err(|e| anyhow!("{e}"))? {
                    GnpResult::Gnp(g, _) => g,
                    GnpResult::NotGnp(w) => bail!(
                        "not a generalized nef partition (part {}, facet {:?})",
                        w.part,
                        w.facet
                    ),
                };
                let dual = dual_gnp(&g).map_err(|e| anyhow!("{e}"))?;
                emit_json(gnp_to_json(&dual), output.as_deref())?;
            } else {
                let pair =
                    good_pair_from_json(&load_value(goodpair.as_ref(), stdin, "goodpair")?, "")?;
                let dual = dual_good_pair(&pair).map_err(|e| anyhow!("{e}"))?;
                emit_json(good_pair_to_json(&dual), output.as_deref())?;
            }
            Ok(0)
        }
        Cmd::Irreducible {
            goodpair,
            polytope,
            partition,
            stdin,
            output,
        } => {
            let g = if let Some(part) = partition {
                let p = polytope_from_json(&load_value(polytope.as_ref(), stdin, "polytope")?, "")?;
                let part = partition_from_json(&inline_or_file(&part, "partition")?, "")?;
                match is_gnp(&p, &part).map_err(|e| anyhow!("{e}"))? {
                    GnpResult::Gnp(g, _) => g,
                    GnpResult::NotGnp(w) => bail!(
                        "not a generalized nef partition (part {}, facet {:?})",
                        w.part,
                        w.facet
                    ),
                }
            } else {
                good_pair_from_json(&load_value(goodpair.as_ref(), stdin, "goodpair")?, "")?.inner
            };
            let (irr, witness) = is_irreducible(&g).map_err(|e| anyhow!("{e}"))?;
            emit_json(
                json!({ "irreducible": irr, "witness_blocks": witness }),
                output.as_deref(),
            )?;
            Ok(bool_code(irr))
        }
        Cmd::Goodpair {
            goodpair,
            stdin,
            output,
        } => {
            let value = load_value(goodpair.as_ref(), stdin, "goodpair")?;
            match good_pair_from_json(&value, "") {
                Ok(pair) => {
                    emit_json(
                        json!({
                            "good": true,
                            "s": pair.s(),
                            "delsarte": nefpart_core::goodpair::is_delsarte(&pair),
                        }),
                        output.as_deref(),
                    )?;
                    Ok(0)
                }
                Err(JsonError::Schema(ptr, msg)) if msg.starts_with("not a good pair") => {
                    emit_json(
                        json!({ "good": false, "diagnosis": format!("{ptr}: {msg}") }),
                        output.as_deref(),
                    )?;
                    Ok(2)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        Cmd::Matrix {
            goodpair,
            stdin,
            format,
            output,
        } => {
            let pair = good_pair_from_json(&load_value(goodpair.as_ref(), stdin, "goodpair")?, "")?;
            let m = pair_matrix(&pair);
            match format {
                Format::Json => emit_json(pair_matrix_to_json(&m), output.as_deref())?,
                Format::Csv => {
                    let mut text = csv_header();
                    for row in &m.entries {
                        text.push('\n');
                        text.push_str(
                            &row.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                        );
                    }
                    emit(&text, output.as_deref())?;
                }
            }
            Ok(0)
        }
        Cmd::Eqs {
            goodpair,
            stdin,
            output,
        } => {
            let pair = good_pair_from_json(&load_value(goodpair.as_ref(), stdin, "goodpair")?, "")?;
            let (ambient, system) = equations_from_pair(&pair).map_err(|e| anyhow!("{e}"))?;
            let marked = marked_from_pair(&ambient, &pair);
            emit_json(
                cox_system_to_json(&ambient, &system, Some(&marked)),
                output.as_deref(),
            )?;
            Ok(0)
        }
        Cmd::EqsToPol {
            system,
            marked,
            stdin,
            output,
        } => {
            let value = load_value(system.as_ref(), stdin, "system")?;
            let input = system_from_json(&value, "")?;
            let marked = match marked.as_deref() {
                Some(arg) => parse_marked(&inline_or_file(arg, "marked")?, input.ambient.num_rays())?,
                None => input
                    .marked
                    .ok_or_else(|| anyhow!("marked monomials required: pass --marked or a \"marked\" field"))?,
            };
            match pair_from_equations(&input.ambient, &input.system, &marked) {
                Ok(pair) => {
                    emit_json(good_pair_to_json(&pair), output.as_deref())?;
                    Ok(0)
                }
                Err(e @ (PairError::Assumption2(_) | PairError::Assumption3(_) | PairError::NotNef(_))) => {
                    emit_json(json!({ "ok": false, "reason": e.to_string() }), output.as_deref())?;
                    Ok(2)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        Cmd::Qsci {
            system,
            goodpair,
            stdin,
            budget,
            jobs,
            output,
        } => {
            set_jobs(jobs);
            let budget = resolve_budget(budget);
            let (ambient, sys, _) =
                resolve_system(system.as_ref(), goodpair.as_ref(), None, stdin)?;
            let verdict = is_quasismooth_ci(&ambient, &sys, budget).map_err(|e| anyhow!("{e}"))?;
            let (qs, witness, exceeded): (Option<bool>, Option<Vec<usize>>, bool) = match &verdict {
                QsVerdict::Quasismooth => (Some(true), None, false),
                QsVerdict::NotQuasismooth { witness } => (Some(false), Some(witness.clone()), false),
                QsVerdict::BudgetExceeded => (None, None, true),
            };
            emit_json(
                json!({
                    "quasismooth": qs,
                    "witness": witness,
                    "budget_exceeded": exceeded,
                }),
                output.as_deref(),
            )?;
            Ok(match verdict {
                QsVerdict::Quasismooth => 0,
                QsVerdict::NotQuasismooth { .. } => 2,
                QsVerdict::BudgetExceeded => 1,
            })
        }
        Cmd::Iscy {
            system,
            goodpair,
            marked,
            stdin,
            budget,
            jobs,
            output,
        } => {
            set_jobs(jobs);
            let budget = resolve_budget(budget);
            let (ambient, sys, marked) =
                resolve_system(system.as_ref(), goodpair.as_ref(), marked.as_deref(), stdin)?;
            let marked = marked
                .ok_or_else(|| anyhow!("marked monomials required: pass --marked or a \"marked\" field"))?;
            let report =
                is_cy_family(&ambient, &sys, &marked, budget).map_err(|e| anyhow!("{e}"))?;
            let code = if report.budget_exceeded {
                1
            } else {
                bool_code(report.cy)
            };
            emit_json(cy_report_to_json(&report), output.as_deref())?;
            Ok(code)
        }
        Cmd::ClassifyK3 {
            vector,
            budget,
            jobs,
            checkpoint,
            format,
            output,
        } => {
            set_jobs(jobs);
            let budget = resolve_budget(budget);
            classify_k3(&vector, budget, checkpoint.as_deref(), format, output.as_deref())
        }
    }
}

fn parse_vector(s: &str) -> Result<(i64, i64, Vec<i64>)> {
    let parts: Vec<i64> = s
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<i64>().context("vector entries must be integers"))
        .collect::<Result<_>>()?;
    if parts.len() != 7 {
        bail!("expected 7 entries m,n,w1..w5, got {}", parts.len());
    }
    Ok((parts[0], parts[1], parts[2..].to_vec()))
}

fn vector_key(m: i64, n: i64, w: &[i64]) -> String {
    let s = format!(
        "{m},{n},{}",
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    format!("{:016x}", fnv64(s.as_bytes()))
}

struct Checkpoint {
    rows: Vec<Value>,
    csv_lines: Vec<String>,
    complete: bool,
}

fn read_checkpoint(path: &Path, vkey: &str) -> Result<Checkpoint> {
    let mut cp = Checkpoint {
        rows: vec![],
        csv_lines: vec![],
        complete: false,
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cp),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let rec: Value =
            serde_json::from_str(line).with_context(|| "parsing checkpoint record")?;
        if rec.get("vector_key").and_then(|k| k.as_str()) != Some(vkey) {
            continue;
        }
        match rec.get("kind").and_then(|k| k.as_str()) {
            Some("pair") => {
                if let (Some(row), Some(csv)) = (rec.get("row"), rec.get("csv").and_then(|c| c.as_str())) {
                    cp.rows.push(row.clone());
                    cp.csv_lines.push(csv.to_string());
                }
            }
            Some("vector") => cp.complete = true,
            _ => {}
        }
    }
    Ok(cp)
}

fn append_checkpoint(path: &Path, records: &[Value]) -> Result<()> {
    use std::io::Write;
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    for r in records {
        writeln!(f, "{}", serde_json::to_string(r)?)?;
    }
    Ok(())
}

fn row_csv_line(row: &ClassificationRow) -> String {
    let csv = classification_csv(std::slice::from_ref(row));
    csv.lines().nth(1).unwrap_or_default().to_string()
}

fn csv_column_header() -> String {
    classification_csv(&[]).lines().next().unwrap_or_default().to_string()
}

fn classify_k3(
    vector: &str,
    budget: u64,
    checkpoint: Option<&Path>,
    format: Format,
    output: Option<&Path>,
) -> Result<i32> {
    let (m, n, weights) = parse_vector(vector)?;
    let vkey = vector_key(m, n, &weights);

    let mut from_checkpoint: Option<Checkpoint> = None;
    if let Some(cpath) = checkpoint {
        let cp = read_checkpoint(cpath, &vkey)?;
        if cp.complete {
            from_checkpoint = Some(cp);
        }
    }

    let (rows_json, csv_lines) = match from_checkpoint {
        Some(cp) => (cp.rows, cp.csv_lines),
        None => {
            let rows = classify_vector(m, n, &weights, budget).map_err(|e| anyhow!("{e}"))?;
            let rows_json: Vec<Value> = rows.iter().map(classification_row_to_json).collect();
            let csv_lines: Vec<String> = rows.iter().map(row_csv_line).collect();
            if let Some(cpath) = checkpoint {
                let mut records: Vec<Value> = rows
                    .iter()
                    .zip(rows_json.iter())
                    .zip(csv_lines.iter())
                    .map(|((row, rj), csv)| {
                        let pkey = format!(
                            "{:016x}",
                            fnv64(format!("{vkey}:{}", row.canonical_key).as_bytes())
                        );
                        json!({
                            "kind": "pair",
                            "key": pkey,
                            "vector_key": vkey,
                            "vector": [m, n, weights[0], weights[1], weights[2], weights[3], weights[4]],
                            "row": rj,
                            "csv": csv,
                        })
                    })
                    .collect();
                records.push(json!({
                    "kind": "vector",
                    "key": vkey,
                    "vector_key": vkey,
                    "vector": [m, n, weights[0], weights[1], weights[2], weights[3], weights[4]],
                    "count": rows.len(),
                }));
                append_checkpoint(cpath, &records)?;
            }
            (rows_json, csv_lines)
        }
    };

    match format {
        Format::Json => emit_json(
            json!({
                "vector": [m, n, weights[0], weights[1], weights[2], weights[3], weights[4]],
                "count": rows_json.len(),
                "rows": rows_json,
            }),
            output,
        )?,
        Format::Csv => {
            let mut text = csv_header();
            text.push('\n');
            text.push_str(&csv_column_header());
            for line in &csv_lines {
                text.push('\n');
                text.push_str(line);
            }
            emit(&text, output)?;
        }
    }
    Ok(0)
}
