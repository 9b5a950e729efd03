//! Line-oriented network format.
//!
//! ```text
//! # comment
//! network example
//! states 0 1 2
//! function f prob 0.5
//!   0 -> 0
//!   1 -> 0
//!   2 -> 0
//! end
//! function g prob 0.5
//!   linear p=3 dim=1 matrix=2
//! end
//! ```
//!
//! `states` may repeat; declaration order fixes matrix row order. A linear
//! body requires the state ids to be exactly the canonical labels of
//! `GF(p)^dim`, and may carry the probability as `prob=<decimal>` instead of
//! the header.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::linfield::{linear_fds, linear_state_ids, GfMatrix};
use crate::network::{Function, Prn, RawPrn};

use super::fmt_sig17;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
        .map(|(b, t)| (text[..b].chars().count() + 1, t))
        .collect()
}

fn is_decimal(s: &str) -> bool {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    (!int.is_empty() || !frac.is_empty())
        && int.chars().all(|c| c.is_ascii_digit())
        && frac.chars().all(|c| c.is_ascii_digit())
}

fn parse_prob(line: usize, column: usize, s: &str) -> Result<f64> {
    if !is_decimal(s) {
        return Err(perr(
            line,
            column,
            format!("expected a decimal probability, found `{s}`"),
        ));
    }
    s.parse()
        .map_err(|_| perr(line, column, format!("bad probability `{s}`")))
}

struct Linear {
    line: usize,
    column: usize,
    p: u32,
    dim: usize,
    matrix: Vec<i64>,
}

enum Body {
    Table(Vec<Option<usize>>),
    Linear(Linear),
}

struct OpenFunction {
    line: usize,
    name: String,
    prob: Option<f64>,
    body: Option<Body>,
}

fn parse_linear(line: usize, toks: &[(usize, &str)]) -> Result<(Linear, Option<f64>)> {
    let (col0, _) = toks[0];
    let mut p = None;
    let mut dim = None;
    let mut matrix = None;
    let mut prob = None;
    for &(col, tok) in &toks[1..] {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| perr(line, col, format!("expected key=value, found `{tok}`")))?;
        let vcol = col + key.chars().count() + 1;
        match key {
            "p" => {
                p = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| perr(line, vcol, format!("bad modulus `{value}`")))?,
                )
            }
            "dim" => {
                dim = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| perr(line, vcol, format!("bad dimension `{value}`")))?,
                )
            }
            "matrix" => {
                matrix = Some(
                    value
                        .split(',')
                        .map(|e| {
                            e.trim()
                                .parse::<i64>()
                                .map_err(|_| perr(line, vcol, format!("bad matrix entry `{e}`")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "prob" => prob = Some(parse_prob(line, vcol, value)?),
            _ => return Err(perr(line, col, format!("unknown linear key `{key}`"))),
        }
    }
    let need = |what: &str| perr(line, col0, format!("linear clause is missing `{what}=`"));
    Ok((
        Linear {
            line,
            column: col0,
            p: p.ok_or_else(|| need("p"))?,
            dim: dim.ok_or_else(|| need("dim"))?,
            matrix: matrix.ok_or_else(|| need("matrix"))?,
        },
        prob,
    ))
}

/// Parse without validating network invariants.
pub fn parse_network_raw(text: &str) -> Result<RawPrn> {
    let mut name: Option<String> = None;
    let mut states: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut functions: Vec<Function> = Vec::new();
    let mut probs: Vec<f64> = Vec::new();
    let mut open: Option<OpenFunction> = None;
    let mut last_line = 0;

    for (k, raw_line) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw_line.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };

        if let Some(f) = open.as_mut() {
            if head == "end" {
                if toks.len() > 1 {
                    return Err(perr(line, toks[1].0, "unexpected text after `end`"));
                }
                let f = open.take().expect("open function");
                let (table, prob) = close_function(f, line, col, &states, &index)?;
                functions.push(table);
                probs.push(prob);
                continue;
            }
            if head == "linear" {
                if f.body.is_some() {
                    return Err(perr(
                        line,
                        col,
                        "linear clause must be the whole function body",
                    ));
                }
                let (lin, prob) = parse_linear(line, &toks)?;
                if let Some(pr) = prob {
                    if f.prob.is_some() {
                        return Err(perr(line, col, "probability given twice"));
                    }
                    f.prob = Some(pr);
                }
                f.body = Some(Body::Linear(lin));
                continue;
            }
            // `src -> dst`, spacing around the arrow optional
            let Some(arrow) = content.find("->") else {
                return Err(perr(
                    line,
                    col,
                    format!("expected `src -> dst` or `end`, found `{head}`"),
                ));
            };
            let src = content[..arrow].trim();
            let dst = content[arrow + 2..].trim();
            let dst_col = content[..arrow + 2].chars().count()
                + 1
                + (content[arrow + 2..].chars().count()
                    - content[arrow + 2..].trim_start().chars().count());
            if src.is_empty() || src.contains(char::is_whitespace) {
                return Err(perr(
                    line,
                    col,
                    "expected a single source state before `->`",
                ));
            }
            if dst.is_empty() || dst.contains(char::is_whitespace) || dst.contains("->") {
                return Err(perr(
                    line,
                    dst_col,
                    "expected a single target state after `->`",
                ));
            }
            let u = *index
                .get(src)
                .ok_or_else(|| perr(line, col, format!("unknown state `{src}`")))?;
            let v = *index
                .get(dst)
                .ok_or_else(|| perr(line, dst_col, format!("unknown state `{dst}`")))?;
            let table = match f
                .body
                .get_or_insert_with(|| Body::Table(vec![None; states.len()]))
            {
                Body::Table(t) => t,
                Body::Linear(_) => {
                    return Err(perr(
                        line,
                        col,
                        "mapping lines cannot follow a linear clause",
                    ))
                }
            };
            if table.len() < states.len() {
                table.resize(states.len(), None);
            }
            if table[u].replace(v).is_some() {
                return Err(perr(
                    line,
                    col,
                    format!("state `{src}` mapped twice in `{}`", f.name),
                ));
            }
            continue;
        }

        match head {
            "network" => {
                if name.is_some() {
                    return Err(perr(line, col, "network name given twice"));
                }
                if toks.len() != 2 {
                    return Err(perr(line, col, "expected `network <name>`"));
                }
                name = Some(toks[1].1.to_string());
            }
            "states" => {
                if name.is_none() {
                    return Err(perr(line, col, "`states` before `network`"));
                }
                if !functions.is_empty() {
                    return Err(perr(line, col, "`states` after the first function"));
                }
                if toks.len() < 2 {
                    return Err(perr(line, col, "expected at least one state id"));
                }
                for &(c, id) in &toks[1..] {
                    if id.contains("->") {
                        return Err(perr(line, c, format!("state id `{id}` contains `->`")));
                    }
                    if index.insert(id.to_string(), states.len()).is_some() {
                        return Err(perr(line, c, format!("duplicate state `{id}`")));
                    }
                    states.push(id.to_string());
                }
            }
            "function" => {
                if states.is_empty() {
                    return Err(perr(line, col, "`function` before `states`"));
                }
                let prob = match toks.len() {
                    2 => None,
                    4 if toks[2].1 == "prob" => Some(parse_prob(line, toks[3].0, toks[3].1)?),
                    _ => return Err(perr(line, col, "expected `function <name> prob <decimal>`")),
                };
                open = Some(OpenFunction {
                    line,
                    name: toks[1].1.to_string(),
                    prob,
                    body: None,
                });
            }
            "end" => return Err(perr(line, col, "`end` without an open function")),
            other => return Err(perr(line, col, format!("unknown directive `{other}`"))),
        }
    }

    if let Some(f) = open {
        return Err(perr(
            f.line,
            1,
            format!("function `{}` is missing `end`", f.name),
        ));
    }
    let name = name.ok_or_else(|| perr(last_line.max(1), 1, "missing `network <name>`"))?;
    if states.is_empty() {
        return Err(perr(last_line.max(1), 1, "missing `states`"));
    }
    if functions.is_empty() {
        return Err(perr(last_line.max(1), 1, "network has no functions"));
    }
    Ok(RawPrn {
        name,
        states,
        functions,
        probs,
    })
}

fn close_function(
    f: OpenFunction,
    line: usize,
    col: usize,
    states: &[String],
    index: &HashMap<String, usize>,
) -> Result<(Function, f64)> {
    let prob = f.prob.ok_or_else(|| {
        perr(
            f.line,
            1,
            format!("function `{}` has no probability", f.name),
        )
    })?;
    let table = match f.body {
        None => {
            return Err(perr(
                line,
                col,
                format!("function `{}` has no body", f.name),
            ))
        }
        Some(Body::Table(t)) => {
            let mut table = Vec::with_capacity(states.len());
            for (u, v) in t
                .iter()
                .chain(std::iter::repeat(&None))
                .take(states.len())
                .enumerate()
            {
                match v {
                    Some(v) => table.push(*v),
                    None => {
                        return Err(perr(
                            line,
                            col,
                            format!(
                                "function `{}` has no mapping for state `{}`",
                                f.name, states[u]
                            ),
                        ))
                    }
                }
            }
            table
        }
        Some(Body::Linear(lin)) => {
            let at = |e: Error| perr(lin.line, lin.column, e.to_string());
            let m = GfMatrix::new(lin.p, lin.dim, lin.dim, &lin.matrix).map_err(at)?;
            let canonical = linear_state_ids(lin.p, lin.dim).map_err(at)?;
            let mut declared: Vec<&String> = states.iter().collect();
            let mut expected: Vec<&String> = canonical.iter().collect();
            declared.sort();
            expected.sort();
            if declared != expected {
                return Err(perr(
                    lin.line,
                    lin.column,
                    format!(
                        "linear clause needs the states of GF({})^{}: {}",
                        lin.p,
                        lin.dim,
                        canonical.join(" ")
                    ),
                ));
            }
            let fds = linear_fds(f.name.clone(), &m).map_err(at)?;
            states
                .iter()
                .map(|s| {
                    let c = canonical.iter().position(|x| x == s).expect("same set");
                    index[&canonical[fds.apply(c)]]
                })
                .collect()
        }
    };
    Ok((Function::new(f.name, table), prob))
}

/// Parse and validate.
pub fn parse_network(text: &str) -> Result<Prn> {
    parse_network_raw(text)?.build()
}

/// The DSL text for `prn`: canonical state order, functions in index order,
/// one mapping per state, probabilities with 17 significant digits.
pub fn serialize_network(prn: &Prn) -> String {
    let mut out = String::new();
    writeln!(out, "network {}", prn.name()).unwrap();
    writeln!(out, "states {}", prn.states().join(" ")).unwrap();
    for (f, p) in prn.functions().iter().zip(prn.probs()) {
        writeln!(out, "function {} prob {}", f.name, fmt_sig17(*p)).unwrap();
        for (u, &v) in f.table.iter().enumerate() {
            writeln!(out, "  {} -> {}", prn.states()[u], prn.states()[v]).unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}
