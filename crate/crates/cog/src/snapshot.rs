//! `KGSNAP 1`: the line-oriented text snapshot of a [`Graph`].
//!
//! ```text
//! KGSNAP 1
//! S <schema-id> <name> <dim-name>:<min>:<max> [...]
//! N <id> <kind> <label-quoted> [<schema-id> <v1> <v2> ...] <created_seq>
//! E <id> <src> <rel-quoted> <dst> <valid 0|1> <polarity A|N> <certainty> <provenance>
//! ```
//!
//! Reals are written with six decimals (round half to even). Records are
//! grouped S, N, E and sorted by id inside each group.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::Path;

use cog_core::substrate::{Edge, EdgeId, Graph, GraphError, Node, NodeId, NodeKind, Polarity};
use cog_core::vectors::{Dim, FeatureVector, SchemaId};
use thiserror::Error;

pub const HEADER: &str = "KGSNAP 1";

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("unsupported snapshot header `{0}`")]
    Version(String),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn real(out: &mut String, x: f64) {
    let start = out.len();
    write!(out, "{x:.6}").unwrap();
    if out[start..] == *"-0.000000" {
        out.replace_range(start..start + 1, "");
    }
}

fn quoted(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Renders the whole snapshot into a string.
pub fn to_string(g: &Graph) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for s in g.schemas().iter() {
        write!(out, "S {} {}", s.id().0, s.name()).unwrap();
        for d in s.dims() {
            write!(out, " {}:", d.name).unwrap();
            real(&mut out, d.min);
            out.push(':');
            real(&mut out, d.max);
        }
        out.push('\n');
    }
    for n in g.nodes() {
        write!(out, "N {} {} ", n.id.0, n.kind.as_str()).unwrap();
        quoted(&mut out, &n.label);
        if let Some(v) = &n.vector {
            write!(out, " {}", v.schema().id().0).unwrap();
            for &x in v.values() {
                out.push(' ');
                real(&mut out, x);
            }
        }
        writeln!(out, " {}", n.created_seq).unwrap();
    }
    for e in g.edges() {
        write!(out, "E {} {} ", e.id.0, e.src.0).unwrap();
        quoted(&mut out, g.rel_name(e.rel));
        write!(out, " {} {} {} ", e.dst.0, u8::from(e.valid), e.polarity.as_char()).unwrap();
        real(&mut out, e.certainty);
        writeln!(out, " {}", e.provenance).unwrap();
    }
    out
}

pub fn save<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    w.write_all(to_string(g).as_bytes())?;
    w.flush()
}

pub fn save_file(g: &Graph, path: &Path) -> io::Result<()> {
    std::fs::write(path, to_string(g))
}

/// Splits a record into fields. Quoted fields are unescaped.
fn fields(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        match chars.peek() {
            None => return Ok(out),
            Some(' ') => {
                chars.next();
            }
            Some('"') => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err("unterminated quote".into()),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            other => return Err(format!("bad escape {other:?}")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                if chars.peek().is_some_and(|c| *c != ' ') {
                    return Err("text after closing quote".into());
                }
                out.push(s);
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c == ' ' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push(s);
            }
        }
    }
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("bad {what} `{s}`"))
}

fn parse_dim(s: &str) -> Result<Dim, String> {
    let mut parts = s.rsplitn(3, ':');
    let max = parts.next().ok_or("dim missing max")?;
    let min = parts.next().ok_or("dim missing min")?;
    let name = parts.next().ok_or_else(|| format!("bad dim `{s}`"))?;
    Ok(Dim::new(name, num(min, "min")?, num(max, "max")?))
}

#[derive(PartialEq, PartialOrd)]
enum Section {
    Schemas,
    Nodes,
    Edges,
}

pub fn load<R: BufRead>(r: R) -> Result<Graph, SnapshotError> {
    let mut g = Graph::new();
    let mut lines = r.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header != HEADER {
        return Err(SnapshotError::Version(header));
    }
    let mut section = Section::Schemas;
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        let bad = |msg: String| SnapshotError::Malformed { line: line_no, msg };
        let graph_err = |source: GraphError| SnapshotError::Graph { line: line_no, source };
        let f = fields(&line).map_err(bad)?;
        let tag = f.first().map(String::as_str).unwrap_or("");
        let next = match tag {
            "S" => Section::Schemas,
            "N" => Section::Nodes,
            "E" => Section::Edges,
            _ => return Err(bad(format!("unknown record `{tag}`"))),
        };
        if next < section {
            return Err(bad("records out of order".into()));
        }
        section = next;
        match section {
            Section::Schemas => {
                if f.len() < 4 {
                    return Err(bad("schema needs an id, a name and at least one dim".into()));
                }
                let id = SchemaId(num(&f[1], "schema id").map_err(bad)?);
                let dims = f[3..].iter().map(|d| parse_dim(d)).collect::<Result<Vec<_>, _>>().map_err(bad)?;
                g.restore_schema(id, &f[2], dims).map_err(graph_err)?;
            }
            Section::Nodes => {
                if f.len() < 5 {
                    return Err(bad("node needs id, kind, label and created_seq".into()));
                }
                let id = NodeId(num(&f[1], "node id").map_err(bad)?);
                let kind = NodeKind::parse(&f[2]).ok_or_else(|| bad(format!("unknown kind `{}`", f[2])))?;
                let created_seq: u64 = num(&f[f.len() - 1], "created_seq").map_err(bad)?;
                let vector = if f.len() > 5 {
                    let sid = SchemaId(num(&f[4], "schema id").map_err(bad)?);
                    let schema = g.schemas().get(sid).cloned().ok_or(graph_err(GraphError::UnknownSchemaId(sid)))?;
                    let vals = f[5..f.len() - 1].iter().map(|v| num(v, "value")).collect::<Result<Vec<f64>, _>>().map_err(bad)?;
                    Some(FeatureVector::new(schema, vals).map_err(|e| graph_err(e.into()))?)
                } else {
                    None
                };
                g.restore_node(Node { id, kind, label: f[3].clone(), vector, created_seq }).map_err(graph_err)?;
            }
            Section::Edges => {
                if f.len() != 9 {
                    return Err(bad(format!("edge needs 9 fields, got {}", f.len())));
                }
                let rel = g.rel(&f[3]);
                let valid = match f[5].as_str() {
                    "1" => true,
                    "0" => false,
                    v => return Err(bad(format!("bad valid flag `{v}`"))),
                };
                let polarity = match f[6].as_str() {
                    "A" => Polarity::Affirm,
                    "N" => Polarity::Negate,
                    p => return Err(bad(format!("bad polarity `{p}`"))),
                };
                let edge = Edge {
                    id: EdgeId(num(&f[1], "edge id").map_err(bad)?),
                    src: NodeId(num(&f[2], "src").map_err(bad)?),
                    rel,
                    dst: NodeId(num(&f[4], "dst").map_err(bad)?),
                    valid,
                    polarity,
                    certainty: num(&f[7], "certainty").map_err(bad)?,
                    provenance: num(&f[8], "provenance").map_err(bad)?,
                };
                g.restore_edge(edge).map_err(graph_err)?;
            }
        }
    }
    Ok(g)
}

pub fn load_str(s: &str) -> Result<Graph, SnapshotError> {
    load(s.as_bytes())
}

pub fn load_file(path: &Path) -> Result<Graph, SnapshotError> {
    load(io::BufReader::new(std::fs::File::open(path)?))
}
