use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dpgit::analysis::{profile_document, stability_document, surface_of, AnalysisError, Surface};
use dpgit::catalog::{verify_all, verify_fixture, FixtureReport};
use dpgit::config::TruncationPolicy;
use dpgit::enumer::{bergman_exponents, gh_menu, hj_expansion, is_t_singularity, markov_solutions, noether_check};
use dpgit::germ::SingularityType;
use dpgit::gitstab::{Certificate, Verdict};
use dpgit::input::{parse, Document};
use dpgit::moduli::{
    deg4_divisor_constant, divisor_check_deg3, divisor_check_deg4, divisor_value_deg3, divisor_value_deg4, pencil_to_quintic, quintic_invariants_raw,
    ModuliPoint123,
};
use dpgit::par::{self, Exec};
use dpgit::polyalg::field::fmt_rat;
use dpgit::polyalg::{BinaryForm, Ring, WeightSystem};
use dpgit::singular::SurfaceProfile;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "dpgit", version, about = "Singularities and GIT stability of log del Pezzo surfaces")]
struct Cli {
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Starting truncation order for power-series germs (overrides DPGIT_TRUNCATION).
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<u32>,
    /// Run a file command on every `.dp` file in DIR, writing `<file>.<command>.json` next to each.
    #[arg(long, global = true, value_name = "DIR")]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular points of the surface (or plane curve) in FILE.
    ClassifySingularities { file: Option<PathBuf> },
    /// GIT stability class with a destabilizing certificate when unstable.
    GitStability { file: Option<PathBuf> },
    /// Moduli coordinates of a quadric pencil, or the cubic divisor test on `invariants`.
    ModuliPoint { file: Option<PathBuf> },
    /// Flat limit of `poly` under the one-parameter subgroup given by `weights`.
    Degenerate { file: Option<PathBuf> },
    /// Whether 1/n(1,a) is a T-singularity.
    Tsing { n: u64, a: u64 },
    /// Hirzebruch-Jung continued fraction of n/a.
    Hj { n: u64, a: u64 },
    /// Positive solutions of a^2 + b^2 + 2c^2 = 4abc up to BOUND.
    Markov { bound: u64 },
    /// Singularity types allowed in degree D.
    Menu {
        d: u32,
        /// Also bound ADE Milnor numbers by 9 - d.
        #[arg(long)]
        noether: bool,
    },
    /// Check rho + d + sum of Milnor numbers = 10.
    Noether { d: u32, rho: u32, types: Vec<String> },
    /// Bergman exponents in degree D.
    Bergman { d: u32 },
    /// Re-derive every catalog fixture, or only NAME.
    CatalogVerify { name: Option<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ClassifySingularities { .. } => "classify-singularities",
            Command::GitStability { .. } => "git-stability",
            Command::ModuliPoint { .. } => "moduli-point",
            Command::Degenerate { .. } => "degenerate",
            Command::Tsing { .. } => "tsing",
            Command::Hj { .. } => "hj",
            Command::Markov { .. } => "markov",
            Command::Menu { .. } => "menu",
            Command::Noether { .. } => "noether",
            Command::Bergman { .. } => "bergman",
            Command::CatalogVerify { .. } => "catalog-verify",
        }
    }

    fn file(&self) -> Option<&Option<PathBuf>> {
        match self {
            Command::ClassifySingularities { file }
            | Command::GitStability { file }
            | Command::ModuliPoint { file }
            | Command::Degenerate { file } => Some(file),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Math = 2,
    Parse = 1,
}

impl Status {
    fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Math => 1,
            Status::Parse => 2,
        }
    }
}

struct Outcome {
    status: Status,
    body: Value,
}

fn error_value(kind: &str, message: impl ToString) -> Value {
    json!({"kind": kind, "message": message.to_string()})
}

fn math(e: impl ToString) -> Outcome {
    Outcome {
        status: Status::Math,
        body: json!({"error": error_value("math", e)}),
    }
}

fn math_error<T>(e: impl ToString) -> Result<T, Outcome> {
    Err(math(e))
}

fn type_names(t: &[SingularityType]) -> Vec<String> {
    t.iter().map(|t| t.to_string()).collect()
}

fn profile_json(p: &SurfaceProfile) -> Value {
    let points: Vec<Value> = p
        .points
        .iter()
        .map(|s| {
            json!({
                "coords": s.coords_text(),
                "field": s.field,
                "cluster_size": s.cluster_size,
                "type": s.ty.to_string(),
                "note": s.note,
            })
        })
        .collect();
    json!({
        "summary": p.summary(),
        "profile": type_names(&p.types()),
        "normal": p.is_normal,
        "degree": p.degree,
        "points": points,
    })
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "one_ps": c.one_ps,
        "support_weights": c.support_weights,
        "frame": c.frame,
        "verified": c.verify(),
    })
}

fn ambient_of(doc: &Document) -> Value {
    match surface_of(doc) {
        Ok(Surface::Cubic(_)) => json!("cubic surface in P^3"),
        Ok(Surface::Pencil(_)) => json!("intersection of two quadrics in P^4"),
        Ok(Surface::DoubleCover { base, .. }) => json!(format!("double cover of {base}")),
        Ok(Surface::PlaneCurve(_)) => json!("plane curve in P^2"),
        Ok(Surface::BinaryForm(_)) => json!("binary form on P^1"),
        Err(_) => doc.ring.as_ref().map_or(Value::Null, |r| json!(r.to_string())),
    }
}

fn quintic_text(q: &BinaryForm) -> String {
    q.to_multipoly(&Ring::new(&["l", "m"]), 0, 1).to_string()
}

fn run_document(cmd: &Command, doc: &Document, policy: TruncationPolicy) -> Result<(Value, Option<Value>), Outcome> {
    let m = |e: AnalysisError| math(e);
    match cmd {
        Command::ClassifySingularities { .. } => {
            let p = profile_document(doc, policy).map_err(m)?;
            Ok((profile_json(&p), None))
        }
        Command::GitStability { .. } => {
            let v: Verdict = stability_document(doc).map_err(m)?;
            let profile = profile_document(doc, policy).ok().map(|p| type_names(&p.types()));
            let mut r = json!({"class": v.class.to_string(), "flags": v.flags});
            if let Some(p) = profile {
                r["profile"] = json!(p);
            }
            Ok((r, v.certificate.as_ref().map(|c| json!([certificate_json(c)]))))
        }
        Command::ModuliPoint { .. } => {
            if let Some(z) = doc.invariants() {
                let q: Option<Vec<_>> = z.iter().map(|x| x.as_rational().cloned()).collect();
                let Some(q) = q.filter(|q| q.len() == 5) else {
                    return math_error("invariants must be five rational numbers");
                };
                let z: [_; 5] = q.try_into().unwrap();
                return Ok((
                    json!({
                        "deg3_divisor_value": fmt_rat(&divisor_value_deg3(&z)),
                        "on_deg3_divisor": divisor_check_deg3(&z),
                    }),
                    None,
                ));
            }
            let pencil = match surface_of(doc).map_err(m)? {
                Surface::Pencil(p) => p,
                _ => return math_error("moduli-point needs a pencil of quadrics in P^4 or an invariants statement"),
            };
            let q = pencil_to_quintic(&pencil).map_err(math)?;
            let raw = quintic_invariants_raw(&q).map_err(math)?;
            let point = ModuliPoint123::canonical(raw.clone());
            let c = deg4_divisor_constant();
            Ok((
                json!({
                    "quintic": quintic_text(&q),
                    "invariants": raw.iter().map(fmt_rat).collect::<Vec<_>>(),
                    "point": point.as_ref().map(|p| p.z.iter().map(fmt_rat).collect::<Vec<_>>()),
                    "nullform": point.is_none(),
                    "divisor_constant": fmt_rat(&c),
                    "deg4_divisor_value": point.as_ref().map(|p| fmt_rat(&divisor_value_deg4(&p.z))),
                    "on_deg4_divisor": point.as_ref().map(divisor_check_deg4),
                }),
                None,
            ))
        }
        Command::Degenerate { .. } => {
            let polys = doc.polys();
            let (Some(p), Some(w)) = (polys.first(), doc.weights()) else {
                return math_error("degenerate needs a poly and a weights statement");
            };
            let lam: Vec<i64> = if w.iter().all(|x| x.len() == 1) {
                w.iter().map(|x| x[0]).collect()
            } else if w.len() == 1 {
                w[0].clone()
            } else {
                return math_error("degenerate needs a single weight vector");
            };
            let (limit, weight) = p.degeneration_limit(&WeightSystem(lam.clone())).map_err(math)?;
            Ok((json!({"limit": limit.to_string(), "weight": weight, "one_ps": lam}), None))
        }
        _ => unreachable!("not a file command"),
    }
}

fn run_file(cmd: &Command, path: &Path, policy: TruncationPolicy) -> Outcome {
    let start = Instant::now();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                status: Status::Parse,
                body: json!({"command": cmd.name(), "error": error_value("io", format!("{}: {e}", path.display()))}),
            }
        }
    };
    let doc = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            return Outcome {
                status: Status::Parse,
                body: json!({
                    "command": cmd.name(),
                    "error": {"kind": "parse", "message": e.to_string(), "line": e.line, "column": e.column},
                }),
            }
        }
    };
    let mut body = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cmd.name(),
        "input_echo": doc.to_string(),
        "ambient": ambient_of(&doc),
    });
    let status = match run_document(cmd, &doc, policy) {
        Ok((result, certs)) => {
            body["result"] = result;
            if let Some(c) = certs {
                body["certificates"] = c;
            }
            Status::Ok
        }
        Err(o) => {
            body["error"] = o.body["error"].clone();
            o.status
        }
    };
    body["timings"] = json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3});
    Outcome { status, body }
}

fn report_json(r: &FixtureReport) -> Value {
    json!({
        "name": r.name,
        "ok": r.ok(),
        "expected_profile": r.expected_profile,
        "profile": r.profile.as_ref().map_or_else(|e| json!({"error": e}), |p| json!(p)),
        "expected_class": r.expected_class.to_string(),
        "class": r.class.as_ref().map_or_else(|e| json!({"error": e}), |c| json!(c.to_string())),
        "parametrization": r.parametrization,
        "mismatches": r.mismatches,
    })
}

fn run_pure(cmd: &Command) -> Result<Value, Outcome> {
    let m = |e: dpgit::enumer::EnumError| math(e);
    Ok(match cmd {
        Command::Tsing { n, a } => match is_t_singularity(*n, *a).map_err(m)? {
            Some(t) => json!({
                "t_singularity": true,
                "d": t.d, "n": t.n, "a": t.a,
                "index": t.index(), "weight": t.weight(),
                "type": t.singularity_type().to_string(),
            }),
            None => json!({"t_singularity": false}),
        },
        Command::Hj { n, a } => {
            let h = hj_expansion(*n, *a).map_err(m)?;
            json!({"n": h.n, "a": h.a, "expansion": h.expansion, "string": h.string, "reversed": h.reversed})
        }
        Command::Markov { bound } => json!(markov_solutions(*bound).into_iter().map(|(a, b, c)| [a, b, c]).collect::<Vec<_>>()),
        Command::Menu { d, noether } => json!(type_names(&gh_menu(*d, *noether).map_err(m)?)),
        Command::Noether { d, rho, types } => {
            let parsed: Option<Vec<SingularityType>> = types.iter().map(|s| SingularityType::parse(s)).collect();
            let Some(parsed) = parsed else {
                return Err(Outcome {
                    status: Status::Parse,
                    body: json!({"error": error_value("parse", "unrecognized singularity type")}),
                });
            };
            let holds = noether_check(*d, *rho, &parsed).map_err(m)?;
            let sum: u32 = parsed.iter().filter_map(|t| t.milnor()).sum();
            json!({"holds": holds, "milnor_sum": sum, "total": rho + d + sum})
        }
        Command::Bergman { d } => {
            let b = bergman_exponents(*d).map_err(m)?;
            json!({"step": b.step, "description": b.to_string()})
        }
        Command::CatalogVerify { name } => {
            let reports = match name {
                Some(n) => vec![verify_fixture(n).map_err(math)?],
                None => verify_all(Exec::default()),
            };
            let ok = reports.iter().all(|r| r.ok());
            let all: Vec<Value> = reports.iter().map(report_json).collect();
            if !ok {
                return Err(Outcome {
                    status: Status::Math,
                    body: json!({"error": error_value("mismatch", "catalog mismatches"), "result": all}),
                });
            }
            json!(all)
        }
        _ => unreachable!("file command"),
    })
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).unwrap()
    } else {
        serde_json::to_string(v).unwrap()
    }
}

fn batch_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dp"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(feature = "parallel")]
fn bounded<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let n = std::thread::available_parallelism().map_or(2, |n| n.get()).min(8);
    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn bounded<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn run_batch(cmd: &Command, dir: &Path, policy: TruncationPolicy, pretty: bool) -> (Status, Value) {
    let files = match batch_files(dir) {
        Ok(f) => f,
        Err(e) => return (Status::Parse, json!({"error": error_value("io", format!("{}: {e}", dir.display()))})),
    };
    let outcomes = bounded(|| {
        par::map(Exec::default(), &files, |f| {
            let mut o = run_file(cmd, f, policy);
            let out = f.with_extension(format!("{}.json", cmd.name()));
            if let Some(t) = o.body.get_mut("timings") {
                *t = json!({});
            }
            let written = std::fs::write(&out, render(&o.body, pretty) + "\n").is_ok();
            (o.status, out, written)
        })
    });
    let status = outcomes.iter().map(|o| o.0).max_by_key(|s| s.severity()).unwrap_or(Status::Ok);
    let entries: Vec<Value> = outcomes
        .iter()
        .map(|(s, out, written)| json!({"output": out.display().to_string(), "exit_code": *s as u8, "written": written}))
        .collect();
    (status, json!({"command": cmd.name(), "batch": dir.display().to_string(), "files": entries}))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let policy = TruncationPolicy::resolve(cli.truncation);
    let (status, body) = if let Some(dir) = &cli.batch {
        if cli.command.file().is_none() {
            (Status::Parse, json!({"error": error_value("usage", "--batch applies only to file commands")}))
        } else {
            run_batch(&cli.command, dir, policy, cli.pretty)
        }
    } else if let Some(file) = cli.command.file() {
        match file {
            Some(f) => {
                let o = run_file(&cli.command, f, policy);
                (o.status, o.body)
            }
            None => (Status::Parse, json!({"error": error_value("usage", "missing FILE")})),
        }
    } else {
        let start = Instant::now();
        match run_pure(&cli.command) {
            Ok(r) => (
                Status::Ok,
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": cli.command.name(),
                    "result": r,
                    "timings": {"elapsed_ms": start.elapsed().as_secs_f64() * 1e3},
                }),
            ),
            Err(mut o) => {
                o.body["command"] = json!(cli.command.name());
                (o.status, o.body)
            }
        }
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", render(&body, cli.pretty));
    ExitCode::from(status as u8)
}
