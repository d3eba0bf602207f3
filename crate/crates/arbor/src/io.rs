//! Edge-list text format and DOT export.
//!
//! Edge-list format: the first non-comment line is `n m`, followed by `m`
//! lines `u v` with 0-based endpoints. Lines starting with `#` are
//! comments; blank lines are ignored.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut fields = s.split_whitespace();
        let a = fields.next();
        let b = fields.next();
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: format!("expected two fields, got more: {s:?}"),
            });
        }
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected two fields: {s:?}"),
                })
            }
        };
        let parse = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a nonnegative integer: {tok:?}"),
            })
        };
        let (x, y) = (parse(a)?, parse(b)?);
        match header {
            None => header = Some((x, y)),
            Some((_, m)) => {
                if pairs.len() == m {
                    return Err(Error::Parse {
                        line,
                        msg: format!("more than the declared {m} edges"),
                    });
                }
                pairs.push((x, y));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "empty input: missing 'n m' header".into(),
    })?;
    if pairs.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("declared {m} edges but found {}", pairs.len()),
        });
    }
    Graph::build(n, &pairs).map_err(|e| match e {
        Error::Input(msg) => Error::Parse { line: 0, msg },
        other => other,
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const DOT_PALETTE: [&str; 10] = [
    "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4", "magenta", "gold3",
    "steelblue",
];

/// DOT rendering of the graph. With `forests` given, each edge is colored
/// by the first forest (vertex set inducing it) that contains it.
pub fn to_dot(g: &Graph, forests: &[VertexSet]) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for &(u, v) in g.edges() {
        let owner = forests
            .iter()
            .position(|f| f.contains(u) && f.contains(v));
        match owner {
            Some(i) => out.push_str(&format!(
                "  {u} -- {v} [color={}, penwidth=2];\n",
                DOT_PALETTE[i % DOT_PALETTE.len()]
            )),
            None => {
                if forests.is_empty() {
                    out.push_str(&format!("  {u} -- {v};\n"));
                } else {
                    out.push_str(&format!("  {u} -- {v} [color=gray, style=dashed];\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
