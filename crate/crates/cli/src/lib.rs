//! The `tuplex` command-line tool. `run` is the whole program; `main` only
//! wires it to the process streams.

mod args;
mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use tuplex::destab::{chain_complex_of, injective_words, s_complex_fi, verify_prop44, verify_prop45_fi};
use tuplex::homology::{homological_connectivity, pi1_triviality, ChainComplex};
use tuplex::io::{complex_to_json, parse_complex};
use tuplex::tupling::{hypergraph_matching, matching_complex, verify_link_lemma, verify_tupling_matching_iso};
use tuplex::wcm::{check_wcm, verify_lemma31, verify_theorem1, verify_theorem22};
use tuplex::{r_tuple, Error, Graph, Limits, Simplex, SimplicialComplex, Verdict};

pub use args::{Cli, Format};
use args::{Command, Destab, Gen, Global, HomologyArgs, Input, Op, TableOut, Verify};

/// Environment variable naming a directory that receives a copy of every
/// verification report.
pub const REPORT_DIR_ENV: &str = "TUPLEX_REPORT_DIR";

/// Exit status for each verdict.
pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::PassCertified | Verdict::PassHomological => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive | Verdict::BudgetExceeded => 2,
    }
}

fn error_exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        2
    } else {
        1
    }
}

/// What a subcommand produced.
enum Output {
    Complex(SimplicialComplex),
    Graph(Graph),
    /// Plain data (homology groups, f-vectors, semi-simplicial sets).
    Data(Value),
    Report(Envelope),
}

#[derive(Serialize)]
struct ErrorBody {
    code: &'static str,
    message: String,
}

impl From<&Error> for ErrorBody {
    fn from(e: &Error) -> Self {
        ErrorBody {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Serialize)]
struct Check {
    id: String,
    verdict: Value,
}

/// Collects nested objects that carry a `verdict` or `pass` field.
fn collect_checks(v: &Value, path: &str, out: &mut Vec<Check>) {
    match v {
        Value::Object(m) => {
            if !path.is_empty() {
                let status = match (m.get("verdict"), m.get("pass")) {
                    (Some(v @ Value::String(_)), _) => Some(v.clone()),
                    (None, Some(Value::Bool(b))) => Some(Value::String(Verdict::from_bool(*b).to_string())),
                    _ => None,
                };
                if let Some(verdict) = status {
                    out.push(Check { id: path.to_string(), verdict });
                }
            }
            for (k, x) in m {
                collect_checks(x, &format!("{path}/{k}"), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                collect_checks(x, &format!("{path}/{i}"), out);
            }
        }
        _ => {}
    }
}

/// Common wrapper of every verification and wCM report.
#[derive(Serialize)]
struct Envelope {
    command: String,
    parameters: Value,
    verdict: Verdict,
    /// Every sub-check that reached a verdict, keyed by its JSON pointer
    /// inside `report`.
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
    limits: Limits,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

struct Ctx<'a> {
    global: &'a Global,
    limits: Limits,
    stdin: &'a mut (dyn Read + Send),
}

impl Ctx<'_> {
    fn read(&mut self, input: &Input) -> Result<String, Error> {
        match &input.input {
            Some(p) if p.as_os_str() != "-" => read_file(p),
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
                Ok(s)
            }
        }
    }

    fn complex(&mut self, input: &Input) -> Result<SimplicialComplex, Error> {
        let text = self.read(input)?;
        parse_complex(&text, &self.limits)
    }
}

fn read_file(p: &Path) -> Result<String, Error> {
    std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("reading {}: {e}", p.display())))
}

fn write_table<T: Serialize>(out: &TableOut, table: &T) -> Result<(), Error> {
    if let Some(p) = &out.table_out {
        let text = serde_json::to_string(table)?;
        std::fs::write(p, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", p.display())))?;
    }
    Ok(())
}

/// Runs the tool on `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send), stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let body = json!({"error": {"code": "usage", "message": e.to_string()}});
            let _ = writeln!(stderr, "{body}");
            return 1;
        }
    };
    let format = cli.global.format();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "{}", json!({"error": {"code": "invalid-input", "message": e.to_string()}}));
            return 1;
        }
    };
    let mut ctx = Ctx {
        global: &cli.global,
        limits: cli.global.limits(),
        stdin,
    };
    let result = pool.install(|| dispatch(&cli.command, &mut ctx));
    match result {
        Ok(out) => {
            let code = match &out {
                Output::Report(env) => exit_code(env.verdict),
                _ => 0,
            };
            if let Output::Report(env) = &out {
                if let Err(e) = save_report(env) {
                    let _ = writeln!(stderr, "{}", json!({"error": ErrorBody::from(&e)}));
                }
            }
            let text = match format {
                Format::Json => render::json(&out),
                Format::Human => render::human(&out),
            };
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            match format {
                Format::Json => {
                    let _ = writeln!(stderr, "{}", json!({"error": ErrorBody::from(&e)}));
                }
                Format::Human => {
                    let _ = writeln!(stderr, "error[{}]: {e}", e.code());
                }
            }
            error_exit_code(&e)
        }
    }
}

fn save_report(env: &Envelope) -> Result<(), Error> {
    let Some(dir) = std::env::var_os(REPORT_DIR_ENV) else {
        return Ok(());
    };
    let mut name = env.command.replace(' ', "-");
    if let Value::Object(m) = &env.parameters {
        for (k, v) in m {
            name.push_str(&format!("-{k}{v}"));
        }
    }
    let name: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    let path = PathBuf::from(dir).join(format!("{name}.json"));
    std::fs::write(&path, render::json(&Output::Report(clone_envelope(env))))
        .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display())))
}

fn clone_envelope(env: &Envelope) -> Envelope {
    Envelope {
        command: env.command.clone(),
        parameters: env.parameters.clone(),
        verdict: env.verdict,
        checks: env.checks.clone(),
        report: env.report.clone(),
        error: env.error.as_ref().map(|e| ErrorBody {
            code: e.code,
            message: e.message.clone(),
        }),
        limits: env.limits,
        wall_time_s: env.wall_time_s,
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Output, Error> {
    let limits = ctx.limits;
    match cmd {
        Command::Gen(g) => gen(g, &limits),
        Command::Op(op) => operate(op, ctx),
        Command::Homology(h) => homology(h, ctx),
        Command::Wcm(w) => {
            let x = ctx.complex(&w.input)?;
            Ok(envelope(ctx, "wcm", json!({"dim": w.dim}), || {
                let r = check_wcm(&x, w.dim, &limits)?;
                Ok((r.verdict, serde_json::to_value(&r)?))
            }))
        }
        Command::Verify(v) => verify(v, ctx),
        Command::Destab(d) => destab(d, &limits),
        Command::Bench(b) => {
            let report = tuplex_bench::run_suite(&b.suite, &limits)?;
            Ok(Output::Data(serde_json::to_value(report)?))
        }
    }
}

fn gen(g: &Gen, limits: &Limits) -> Result<Output, Error> {
    Ok(match g {
        Gen::Simplex { n } => Output::Complex(SimplicialComplex::simplex(*n)),
        Gen::Boundary { n } => Output::Complex(SimplicialComplex::boundary(*n)),
        Gen::CompleteGraph { n } => Output::Graph(Graph::complete(*n)),
        Gen::HypergraphMatching { n, r, table } => {
            let (m, t) = hypergraph_matching(*n, *r, limits)?;
            write_table(table, &t)?;
            Output::Complex(m)
        }
    })
}

fn operate(op: &Op, ctx: &mut Ctx) -> Result<Output, Error> {
    let limits = ctx.limits;
    Ok(match op {
        Op::Tuple { r, input, table } => {
            let x = ctx.complex(input)?;
            let t = r_tuple(&x, *r, &limits)?;
            write_table(table, &t.delta_table)?;
            Output::Complex(t.complex)
        }
        Op::Link { simplex, input } => {
            let x = ctx.complex(input)?;
            Output::Complex(x.link(&Simplex::new(simplex.iter().copied())?)?)
        }
        Op::Skeleton { dim, input } => Output::Complex(ctx.complex(input)?.skeleton(*dim)?),
        Op::Join { first, second, table } => {
            let a = parse_complex(&read_file(first)?, &limits)?;
            let b = parse_complex(&read_file(second)?, &limits)?;
            let (j, t) = a.join(&b)?;
            write_table(table, &t)?;
            Output::Complex(j)
        }
        Op::Barycentric { input, table } => {
            let (sx, t) = ctx.complex(input)?.barycentric()?;
            write_table(table, &t)?;
            Output::Complex(sx)
        }
        Op::Xm { m, input, table } => {
            let (xm, t) = ctx.complex(input)?.xm_complex(*m)?;
            write_table(table, &t)?;
            Output::Complex(xm)
        }
        Op::Matching { input, table } => {
            let g = Graph::from_json(&ctx.read(input)?)?;
            let (m, t) = matching_complex(&g, &limits)?;
            write_table(table, &t)?;
            Output::Complex(m)
        }
        Op::Info { input } => {
            let x = ctx.complex(input)?;
            Output::Data(json!({
                "vertices": x.vertex_count(),
                "facets": x.facets().len(),
                "dimension": x.dim(),
                "f_vector": x.f_vector()?,
                "euler_characteristic": x.f_vector()?.euler_characteristic(),
            }))
        }
    })
}

fn homology(h: &HomologyArgs, ctx: &mut Ctx) -> Result<Output, Error> {
    let limits = ctx.limits;
    let x = ctx.complex(&h.input)?;
    if h.connectivity {
        let mut report = homological_connectivity(&x, &limits)?;
        report.pi1_status = pi1_triviality(&x, &limits)?;
        return Ok(Output::Data(serde_json::to_value(report)?));
    }
    let cc = ChainComplex::of_complex(&x, h.degree, &limits)?;
    let degrees: Vec<i64> = match h.degree {
        Some(d) => vec![d as i64],
        None => (0..=x.dim()).collect(),
    };
    if let Some(p) = h.modulus {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::InvalidInput(format!("--mod needs a prime, got {p}")));
        }
        let mut out = Vec::new();
        for &d in &degrees {
            out.push(json!({"degree": d, "prime": p, "betti": cc.betti_mod(d, p)?}));
        }
        return Ok(Output::Data(single_or_list(out, h.degree.is_some())));
    }
    let mut out = Vec::new();
    for &d in &degrees {
        out.push(serde_json::to_value(cc.reduced_homology(d)?)?);
    }
    Ok(Output::Data(single_or_list(out, h.degree.is_some())))
}

fn single_or_list(mut items: Vec<Value>, single: bool) -> Value {
    if single && items.len() == 1 {
        items.pop().unwrap()
    } else {
        Value::Array(items)
    }
}

/// Runs a check and wraps it; budget errors become a `budget-exceeded`
/// report rather than a bare error.
fn envelope(
    ctx: &Ctx,
    command: &str,
    parameters: Value,
    f: impl FnOnce() -> Result<(Verdict, Value), Error>,
) -> Output {
    let start = Instant::now();
    let res = f();
    let wall = ctx.global.timing.then(|| start.elapsed().as_secs_f64());
    let (verdict, report, error) = match res {
        Ok((v, r)) => (v, Some(r), None),
        Err(e) => {
            let v = if e.is_budget() { Verdict::BudgetExceeded } else { Verdict::Fail };
            (v, None, Some(ErrorBody::from(&e)))
        }
    };
    let mut checks = Vec::new();
    if let Some(r) = &report {
        collect_checks(r, "", &mut checks);
    }
    Output::Report(Envelope {
        command: command.to_string(),
        parameters,
        verdict,
        checks,
        report,
        error,
        limits: ctx.limits,
        wall_time_s: wall,
    })
}

fn verify(v: &Verify, ctx: &mut Ctx) -> Result<Output, Error> {
    let limits = ctx.limits;
    fn pack<T: Serialize>(verdict: Verdict, r: &T) -> Result<(Verdict, Value), Error> {
        Ok((verdict, serde_json::to_value(r)?))
    }
    Ok(match v {
        Verify::Theorem1 { n, r, input } => {
            let x = ctx.complex(input)?;
            envelope(ctx, "verify theorem1", json!({"n": n, "r": r}), || {
                let rep = verify_theorem1(&x, *n, *r, &limits)?;
                pack(rep.verdict, &rep)
            })
        }
        Verify::Theorem22 { n, r } => envelope(ctx, "verify theorem22", json!({"n": n, "r": r}), || {
            let rep = verify_theorem22(*n, *r, &limits)?;
            pack(rep.verdict, &rep)
        }),
        Verify::Lemma31 { n, m, input } => {
            let x = ctx.complex(input)?;
            envelope(ctx, "verify lemma31", json!({"n": n, "m": m}), || {
                let rep = verify_lemma31(&x, *n, *m, &limits)?;
                pack(rep.verdict, &rep)
            })
        }
        Verify::LinkLemma { r, input } => {
            let x = ctx.complex(input)?;
            envelope(ctx, "verify link-lemma", json!({"r": r}), || {
                let rep = verify_link_lemma(&x, *r, &limits)?;
                pack(rep.verdict, &rep)
            })
        }
        Verify::Iso { n, r } => envelope(ctx, "verify iso", json!({"n": n, "r": r}), || {
            let rep = verify_tupling_matching_iso(*n, *r, &limits)?;
            pack(rep.verdict, &rep)
        }),
        Verify::Prop44 { n, r } => envelope(ctx, "verify prop44", json!({"n": n, "r": r}), || {
            let rep = verify_prop44(*n, *r, &limits)?;
            pack(rep.verdict, &rep)
        }),
        Verify::Prop45 { n, r } => envelope(ctx, "verify prop45", json!({"n": n, "r": r}), || {
            let rep = verify_prop45_fi(*n, *r, &limits)?;
            pack(rep.verdict, &rep)
        }),
    })
}

fn destab(d: &Destab, limits: &Limits) -> Result<Output, Error> {
    Ok(match d {
        Destab::InjectiveWords { n, homology } => {
            let w = injective_words(*n, limits)?;
            if *homology {
                let cc = chain_complex_of(&w)?;
                let groups: Vec<_> = cc
                    .all_reduced_homology()?
                    .into_iter()
                    .filter(|g| g.degree >= 0)
                    .collect();
                Output::Data(serde_json::to_value(groups)?)
            } else {
                Output::Data(serde_json::to_value(&w)?)
            }
        }
        Destab::SComplex { n, r, table } => {
            let (s, t) = s_complex_fi(*n, *r, limits)?;
            write_table(table, &t)?;
            Output::Complex(s)
        }
    })
}

/// The JSON form of a complex, as written by `gen` and `op`.
pub fn complex_json(x: &SimplicialComplex) -> String {
    complex_to_json(x)
}
