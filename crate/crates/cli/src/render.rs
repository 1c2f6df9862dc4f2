use std::fmt::Write as _;

use serde_json::Value;

use tuplex::io::complex_to_json;

use crate::Output;

/// Machine output: one compact JSON document per line.
pub(crate) fn json(out: &Output) -> String {
    let mut s = match out {
        Output::Complex(x) => complex_to_json(x),
        Output::Graph(g) => g.to_json(),
        Output::Data(v) => v.to_string(),
        Output::Report(env) => serde_json::to_string(env).expect("reports serialize"),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub(crate) fn human(out: &Output) -> String {
    let mut s = String::new();
    match out {
        Output::Complex(x) => {
            let dim = x.dim();
            let _ = writeln!(s, "complex: {} vertices, {} facets, dimension {dim}", x.vertex_count(), x.facets().len());
            if let Ok(f) = x.f_vector() {
                let _ = writeln!(s, "f-vector: {}", join(f.0.iter()));
            }
            let _ = writeln!(s, "facets:");
            for f in x.facets() {
                let _ = writeln!(s, "  {{{}}}", join(f.vertices().iter()));
            }
        }
        Output::Graph(g) => {
            let _ = writeln!(s, "graph: {} vertices, {} edges", g.vertex_count(), g.edges().len());
            for (a, b) in g.edges() {
                let _ = writeln!(s, "  {a} -- {b}");
            }
        }
        Output::Data(v) => match v {
            Value::Array(items) if items.iter().all(is_group) => {
                for g in items {
                    let _ = writeln!(s, "{}", group(g));
                }
            }
            v if is_group(v) => {
                let _ = writeln!(s, "{}", group(v));
            }
            v => value(&mut s, v, 0),
        },
        Output::Report(env) => {
            let _ = writeln!(s, "{}: {}", env.command, env.verdict);
            if let Value::Object(m) = &env.parameters {
                let params: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "parameters: {}", params.join(" "));
            }
            if let Some(e) = &env.error {
                let _ = writeln!(s, "error[{}]: {}", e.code, e.message);
            }
            if let Some(r) = &env.report {
                value(&mut s, r, 0);
            }
            if let Some(t) = env.wall_time_s {
                let _ = writeln!(s, "wall time: {t:.3}s");
            }
        }
    }
    s
}

fn join<T: std::fmt::Display>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn is_group(v: &Value) -> bool {
    v.get("free_rank").is_some() && v.get("torsion").is_some() && v.get("degree").is_some()
}

/// `H̃_d = Z^k ⊕ Z/t ⊕ ...`
fn group(v: &Value) -> String {
    let d = &v["degree"];
    let mut parts = Vec::new();
    match v["free_rank"].as_u64().unwrap_or(0) {
        0 => {}
        1 => parts.push("Z".to_string()),
        k => parts.push(format!("Z^{k}")),
    }
    if let Some(t) = v["torsion"].as_array() {
        for x in t {
            parts.push(format!("Z/{}", x.as_str().map_or_else(|| x.to_string(), str::to_string)));
        }
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("H~_{d} = {}", parts.join(" + "))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) && a.len() <= 16 => {
            Some(format!("[{}]", join(a.iter().filter_map(scalar))))
        }
        _ => None,
    }
}

/// Indented key/value dump. Long lists are summarized by length; nested
/// objects recurse.
fn value(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if let Some(t) = scalar(x) {
                    let _ = writeln!(s, "{pad}{k}: {t}");
                } else if let Value::Array(a) = x {
                    let _ = writeln!(s, "{pad}{k}: {} items", a.len());
                    if let Some(Value::Object(_)) = a.first() {
                        if a.len() <= 8 {
                            for item in a {
                                let _ = writeln!(s, "{pad}  -");
                                value(s, item, depth + 2);
                            }
                        }
                    }
                } else {
                    let _ = writeln!(s, "{pad}{k}:");
                    value(s, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar(other).unwrap_or_else(|| other.to_string()));
        }
    }
}
