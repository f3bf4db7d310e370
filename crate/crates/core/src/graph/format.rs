//! Line-oriented graph text format.
//!
//! ```text
//! graph <name>
//! vertex <id> [contact]
//! edge <vid> <vid> [length]     # length: integer or p/q, default 1
//! ```
//!
//! `#` starts a comment. Contact order is the order of the contact-flagged
//! vertex lines.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MetricGraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_length(token: &str) -> Option<BigRational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (token.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn parse(text: &str) -> Result<MetricGraph> {
    let mut name = String::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut declared_at: Vec<usize> = Vec::new();
    let mut contacts = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "graph" => {
                if tokens.len() > 2 {
                    return Err(parse_err(line_no, "graph takes a single name"));
                }
                name = tokens.get(1).copied().unwrap_or("").to_string();
            }
            "vertex" => {
                let id = tokens.get(1).ok_or_else(|| parse_err(line_no, "vertex needs an id"))?;
                let contact = match tokens.get(2) {
                    None => false,
                    Some(&"contact") => true,
                    Some(other) => {
                        return Err(parse_err(line_no, format!("unknown vertex flag `{other}`")))
                    }
                };
                if tokens.len() > 3 {
                    return Err(parse_err(line_no, "trailing tokens after vertex"));
                }
                let index = ids.len();
                if ids.insert(id.to_string(), index).is_some() {
                    return Err(parse_err(line_no, format!("vertex `{id}` declared twice")));
                }
                declared_at.push(line_no);
                if contact {
                    contacts.push(index);
                }
            }
            "edge" => {
                if tokens.len() < 3 || tokens.len() > 4 {
                    return Err(parse_err(line_no, "edge needs two vertex ids and an optional length"));
                }
                let lookup = |t: &str| {
                    ids.get(t).copied().ok_or_else(|| parse_err(line_no, format!("undeclared vertex `{t}`")))
                };
                let u = lookup(tokens[1])?;
                let v = lookup(tokens[2])?;
                let length = match tokens.get(3) {
                    None => BigRational::one(),
                    Some(t) => {
                        parse_length(t).ok_or_else(|| parse_err(line_no, format!("bad length `{t}`")))?
                    }
                };
                if !length.is_positive() {
                    return Err(parse_err(line_no, format!("nonpositive length {length}")));
                }
                edges.push((u, v, length));
            }
            other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let mut used = vec![false; ids.len()];
    for (u, v, _) in &edges {
        used[*u] = true;
        used[*v] = true;
    }
    if let Some(v) = used.iter().position(|u| !u) {
        return Err(parse_err(declared_at[v], "vertex has no incident edges"));
    }
    if edges.is_empty() {
        return Err(parse_err(text.lines().count().max(1), "graph has no edges"));
    }
    Ok(MetricGraph::from_edges(ids.len(), &edges, contacts)?.with_name(name))
}

/// Serializes a graph. Contact vertices are written first, in contact
/// order, so that parsing restores the contact order.
pub fn write(g: &MetricGraph) -> String {
    let mut out = String::new();
    let name = if g.name().is_empty() { "unnamed" } else { g.name() };
    out.push_str(&format!("graph {name}\n"));
    let mut order: Vec<usize> = g.contacts().to_vec();
    order.extend((0..g.vertex_count()).filter(|v| !g.is_contact(*v)));
    for v in order {
        if g.is_contact(v) {
            out.push_str(&format!("vertex v{v} contact\n"));
        } else {
            out.push_str(&format!("vertex v{v}\n"));
        }
    }
    for (u, v, len) in g.edge_triples() {
        if len.is_one() {
            out.push_str(&format!("edge v{u} v{v}\n"));
        } else {
            out.push_str(&format!("edge v{u} v{v} {len}\n"));
        }
    }
    out
}
