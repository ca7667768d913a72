//! Text formats for factorizations, charts and fibration descriptors.
//!
//! All formats are line based, UTF-8, with `#` starting a comment that runs
//! to the end of the line. CRLF line endings are accepted.
//!
//! Factorization files hold one twist per line, either as a matrix
//! `[[a,b],[c,d]]` or as a word in `s1 s1^-1 s2 s2^-1` whose product is the
//! twist.
//!
//! Chart files:
//!
//! ```text
//! vertex <id> <black|boundary|deg6|deg12_negative|deg12_positive>
//! edge <id> <label> <from>:<slot> <to>:<slot>
//! boundary <id> <id> ...
//! hoop <id> <label> [<parent-id>]
//! ```
//!
//! Slots number the edge ends at a vertex counterclockwise, so they carry the
//! rotation system.
//!
//! Descriptor files hold `key=value` lines: `round=yes|no`,
//! `factorization=<path>` or `factorization=<twist>; <twist>; ...`,
//! `twist=id|twisted`, `m=<int>`, and `lower=torus r=<int>` or
//! `lower=pao n=<int> parity=even|odd`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::chart::{Chart, Edge, EdgeEnd, Hoop, Vertex, VertexKind};
use crate::factorization::{Factorization, FactorizationError};
use crate::sblf::{LowerGluing, Parity, SblfDescriptor};
use crate::sl2z::{eval_word, GeneratorWord, Sl2z};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: FactorizationError,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_twist(line: usize, body: &str) -> Result<Sl2z, IoError> {
    if body.starts_with('[') {
        body.parse::<Sl2z>()
            .map_err(|e| parse_err(line, e.to_string()))
    } else {
        body.parse::<GeneratorWord>()
            .map(|w| eval_word(&w))
            .map_err(|e| parse_err(line, e.to_string()))
    }
}

fn check_twists(entries: Vec<(usize, Sl2z)>) -> Result<Factorization, IoError> {
    let lines: Vec<usize> = entries.iter().map(|(l, _)| *l).collect();
    Factorization::new(entries.into_iter().map(|(_, m)| m).collect()).map_err(|source| {
        let line = match &source {
            FactorizationError::NotPositiveTwist { index, .. } => lines[*index],
            _ => 0,
        };
        IoError::Invalid { line, source }
    })
}

pub fn parse_factorization(text: &str) -> Result<Factorization, IoError> {
    let entries = content_lines(text)
        .map(|(line, body)| parse_twist(line, body).map(|m| (line, m)))
        .collect::<Result<Vec<_>, _>>()?;
    check_twists(entries)
}

pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = String::new();
    for m in f.entries() {
        writeln!(out, "{m}").unwrap();
    }
    out
}

pub fn read_factorization(path: &Path) -> Result<Factorization, IoError> {
    parse_factorization(&read_file(path)?)
}

fn parse_end(line: usize, tok: &str) -> Result<EdgeEnd, IoError> {
    let (vertex, slot) = tok
        .rsplit_once(':')
        .ok_or_else(|| parse_err(line, format!("expected <vertex>:<slot>, got {tok:?}")))?;
    let slot = slot
        .parse()
        .map_err(|_| parse_err(line, format!("bad slot in {tok:?}")))?;
    Ok(EdgeEnd {
        vertex: vertex.to_string(),
        slot,
    })
}

fn parse_label(line: usize, tok: &str) -> Result<u8, IoError> {
    match tok {
        "1" => Ok(1),
        "2" => Ok(2),
        _ => Err(parse_err(
            line,
            format!("edge label must be 1 or 2, got {tok:?}"),
        )),
    }
}

/// Parses the chart text format. Only syntax is checked here; use
/// [`crate::chart::validate`] for the chart axioms.
pub fn parse_chart(text: &str) -> Result<Chart, IoError> {
    let mut chart = Chart::empty();
    let mut saw_boundary = false;
    for (line, body) in content_lines(text) {
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", id, kind] => {
                let kind: VertexKind = kind
                    .parse()
                    .map_err(|_| parse_err(line, format!("unknown vertex kind {kind:?}")))?;
                chart.vertices.push(Vertex {
                    id: id.to_string(),
                    kind,
                });
            }
            ["edge", id, label, from, to] => chart.edges.push(Edge {
                id: id.to_string(),
                label: parse_label(line, label)?,
                from: parse_end(line, from)?,
                to: parse_end(line, to)?,
            }),
            ["boundary", ids @ ..] => {
                if saw_boundary {
                    return Err(parse_err(line, "duplicate boundary line"));
                }
                saw_boundary = true;
                chart.boundary_order = ids.iter().map(|s| s.to_string()).collect();
            }
            ["hoop", id, label, rest @ ..] if rest.len() <= 1 => chart.hoops.push(Hoop {
                id: id.to_string(),
                label: parse_label(line, label)?,
                parent: rest.first().map(|s| s.to_string()),
            }),
            _ => return Err(parse_err(line, format!("unrecognized chart line {body:?}"))),
        }
    }
    Ok(chart)
}

pub fn serialize_chart(c: &Chart) -> String {
    let mut out = String::new();
    for v in &c.vertices {
        writeln!(out, "vertex {} {}", v.id, v.kind).unwrap();
    }
    for e in &c.edges {
        writeln!(
            out,
            "edge {} {} {}:{} {}:{}",
            e.id, e.label, e.from.vertex, e.from.slot, e.to.vertex, e.to.slot
        )
        .unwrap();
    }
    if !c.boundary_order.is_empty() {
        writeln!(out, "boundary {}", c.boundary_order.join(" ")).unwrap();
    }
    for h in &c.hoops {
        match &h.parent {
            Some(p) => writeln!(out, "hoop {} {} {}", h.id, h.label, p).unwrap(),
            None => writeln!(out, "hoop {} {}", h.id, h.label).unwrap(),
        }
    }
    out
}

/// Parses a descriptor. A `factorization=` value that is not inline is a
/// path, resolved against `base_dir` when relative.
pub fn parse_descriptor(text: &str, base_dir: Option<&Path>) -> Result<SblfDescriptor, IoError> {
    let mut has_round = None;
    let mut higher = None;
    let mut twist = false;
    let mut framing = 0i64;
    let mut lower = None;
    for (line, body) in content_lines(text) {
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got {body:?}")))?;
        let value = value.trim();
        match key.trim() {
            "round" => {
                has_round = Some(match value {
                    "yes" => true,
                    "no" => false,
                    _ => return Err(parse_err(line, "round must be yes or no")),
                })
            }
            "factorization" => higher = Some(parse_factorization_field(line, value, base_dir)?),
            "twist" => {
                twist = match value {
                    "id" => false,
                    "twisted" => true,
                    _ => return Err(parse_err(line, "twist must be id or twisted")),
                }
            }
            "m" => {
                framing = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad integer {value:?}")))?
            }
            "lower" => lower = Some(parse_lower(line, value)?),
            other => return Err(parse_err(line, format!("unknown key {other:?}"))),
        }
    }
    let has_round = has_round.ok_or_else(|| parse_err(0, "missing round=yes|no"))?;
    Ok(SblfDescriptor {
        has_round,
        higher: higher.unwrap_or_else(Factorization::empty),
        higher_gluing_twist: twist,
        section_framing: framing,
        lower,
    })
}

fn is_inline(value: &str) -> bool {
    value.is_empty() || value.starts_with('[') || value.starts_with("s1") || value.starts_with("s2")
}

fn parse_factorization_field(
    line: usize,
    value: &str,
    base_dir: Option<&Path>,
) -> Result<Factorization, IoError> {
    if is_inline(value) {
        let entries = value
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_twist(line, s).map(|m| (line, m)))
            .collect::<Result<Vec<_>, _>>()?;
        return check_twists(entries);
    }
    let path = Path::new(value);
    let path = match base_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    };
    read_factorization(&path)
}

fn parse_lower(line: usize, value: &str) -> Result<LowerGluing, IoError> {
    let toks: Vec<&str> = value.split_whitespace().collect();
    let num = |tok: &str, key: &str| -> Result<u64, IoError> {
        tok.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| {
                parse_err(
                    line,
                    format!("expected {key}=<non-negative int>, got {tok:?}"),
                )
            })
    };
    match toks.as_slice() {
        ["torus", r] => Ok(LowerGluing::Torus { r: num(r, "r")? }),
        ["pao", n, parity] => {
            let parity = match *parity {
                "parity=even" => Parity::Even,
                "parity=odd" => Parity::Odd,
                _ => return Err(parse_err(line, "parity must be even or odd")),
            };
            Ok(LowerGluing::Pao {
                n: num(n, "n")?,
                parity,
            })
        }
        _ => Err(parse_err(line, format!("bad lower gluing {value:?}"))),
    }
}

pub fn serialize_descriptor(d: &SblfDescriptor) -> String {
    let mut out = String::new();
    writeln!(out, "round={}", if d.has_round { "yes" } else { "no" }).unwrap();
    let twists: Vec<String> = d.higher.entries().iter().map(|m| m.to_string()).collect();
    writeln!(out, "factorization={}", twists.join("; ")).unwrap();
    writeln!(
        out,
        "twist={}",
        if d.higher_gluing_twist {
            "twisted"
        } else {
            "id"
        }
    )
    .unwrap();
    writeln!(out, "m={}", d.section_framing).unwrap();
    match d.lower {
        Some(LowerGluing::Torus { r }) => writeln!(out, "lower=torus r={r}").unwrap(),
        Some(LowerGluing::Pao { n, parity }) => {
            writeln!(out, "lower=pao n={n} parity={parity}").unwrap()
        }
        None => {}
    }
    out
}
