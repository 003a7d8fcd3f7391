//! Line-oriented text format for graph stores.
//!
//! ```text
//! # comment
//! graph <n_max> <m_max>
//! v <index> <data>
//! e <src> <slot> <dst> <weight>
//! ```
//!
//! The header comes first. Vertex and edge records may appear in any order
//! after it; absent edge records are null edges. Writers emit vertices in
//! ascending order, then edges by `(src, slot)`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use arraygraph::{GraphStore, StoreConfig, Vertex};

use crate::CliError;

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, CliError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

struct EdgeRecord {
    line: usize,
    src: Vertex,
    dst: Vertex,
    weight: u64,
}

/// Parses the text of a graph file.
pub fn parse_graph(text: &str) -> Result<GraphStore, CliError> {
    let mut cfg: Option<StoreConfig> = None;
    let mut vertices: BTreeMap<Vertex, (usize, u64)> = BTreeMap::new();
    let mut edges: BTreeMap<(Vertex, u32), EdgeRecord> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_ascii_whitespace();
        let tag = toks.next().unwrap_or("");
        let Some(c) = cfg else {
            if tag != "graph" {
                return Err(parse_err(line, "expected header \"graph <n_max> <m_max>\""));
            }
            let n: u64 = field(toks.next(), line, "n_max")?;
            let m: u64 = field(toks.next(), line, "m_max")?;
            if toks.next().is_some() {
                return Err(parse_err(line, "trailing fields in header"));
            }
            cfg = Some(StoreConfig::new(n, m).map_err(|e| parse_err(line, e.to_string()))?);
            continue;
        };
        let in_range = |v: Vertex, what: &str| {
            if v == 0 || v > c.n_max() {
                Err(CliError::Bound {
                    line,
                    msg: format!("{what} {v} outside 1..={} (n_max)", c.n_max()),
                })
            } else {
                Ok(v)
            }
        };
        match tag {
            "v" => {
                let v = in_range(field(toks.next(), line, "vertex index")?, "vertex")?;
                let data: u64 = field(toks.next(), line, "vertex data")?;
                if vertices.insert(v, (line, data)).is_some() {
                    return Err(parse_err(line, format!("duplicate vertex {v}")));
                }
            }
            "e" => {
                let src = in_range(field(toks.next(), line, "edge source")?, "edge source")?;
                let slot: u32 = field(toks.next(), line, "edge slot")?;
                if slot >= c.m_max() {
                    return Err(CliError::Bound {
                        line,
                        msg: format!("slot {slot} not below m_max {}", c.m_max()),
                    });
                }
                let dst = in_range(field(toks.next(), line, "edge target")?, "edge target")?;
                let weight: u64 = field(toks.next(), line, "edge weight")?;
                let rec = EdgeRecord {
                    line,
                    src,
                    dst,
                    weight,
                };
                if edges.insert((src, slot), rec).is_some() {
                    return Err(parse_err(line, format!("duplicate edge record for {src}:{slot}")));
                }
            }
            "graph" => return Err(parse_err(line, "second header")),
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing fields"));
        }
    }

    let cfg = cfg.ok_or_else(|| parse_err(0, "missing header"))?;
    let mut g = GraphStore::new(cfg);
    let top = vertices.keys().next_back().copied().unwrap_or(0);
    // a fresh store hands out 1, 2, .. in order
    for v in 1..=top {
        let got = g.alloc_vertex(0, 0);
        debug_assert_eq!(got, v);
    }
    for v in (1..=top).rev() {
        match vertices.get(&v) {
            Some(&(_, data)) => g.set_data(v, data)?,
            None => g.free_vertex(v)?,
        }
    }
    for ((src, slot), rec) in &edges {
        for (v, what) in [(rec.src, "source"), (rec.dst, "target")] {
            if !vertices.contains_key(&v) {
                return Err(parse_err(rec.line, format!("edge {what} {v} has no vertex record")));
            }
        }
        g.set_edge(*src, *slot, rec.dst)?;
        g.set_weight(*src, *slot, rec.weight)?;
    }
    Ok(g)
}

pub fn load_graph(path: &Path) -> Result<GraphStore, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_graph(&text)
}

/// Writes `g` in the text format.
pub fn write_graph<W: Write>(g: &GraphStore, out: W) -> io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "graph {} {}", g.n_max(), g.m_max())?;
    for v in g.live_vertices() {
        writeln!(w, "v {} {}", v, g.get_data(v).unwrap_or(0))?;
    }
    for v in g.live_vertices() {
        for (slot, t, wt) in g.out_edges(v).into_iter().flatten() {
            writeln!(w, "e {v} {slot} {t} {wt}")?;
        }
    }
    w.flush()
}

pub fn save_graph(g: &GraphStore, path: &Path) -> Result<(), CliError> {
    let f = fs::File::create(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    write_graph(g, f).map_err(|e| CliError::Io(path.display().to_string(), e))
}
