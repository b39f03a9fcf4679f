//! graph6 encoding, a plain edge-list format, and a JSONL line sink.
//!
//! graph6 packs the order and then the upper triangle of the adjacency
//! matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`), six bits
//! per byte, most significant bit first, each byte offset by 63.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";
/// Largest order representable with the 4-byte size prefix.
pub const MAX_ORDER: usize = 258_047;

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

fn size_prefix_len(n: usize) -> usize {
    if n <= 62 {
        1
    } else {
        4
    }
}

/// Line length in bytes (no header, no newline) for a graph of order `n`.
pub fn encoded_len(n: usize) -> usize {
    size_prefix_len(n) + (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "graph6 supports n <= {MAX_ORDER}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(encoded_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line. A leading `>>graph6<<` and trailing whitespace
/// are accepted.
pub fn decode_graph6(line: &str) -> Result<Graph> {
    let body = line.trim_end();
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return parse_err(
            skip + pos,
            format!("byte {} is outside 63..=126", bytes[pos]),
        );
    }
    if bytes.is_empty() {
        return parse_err(skip, "empty graph6 line");
    }
    let (n, prefix) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return parse_err(skip + bytes.len(), "truncated 4-byte order prefix");
        }
        if bytes[1] == 126 {
            return parse_err(
                skip + 1,
                format!("orders above {MAX_ORDER} are not supported"),
            );
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > crate::graph::MAX_ORDER {
        return Err(Error::Capacity(format!(
            "graph of order {n} exceeds the supported maximum {}",
            crate::graph::MAX_ORDER
        )));
    }
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let data = &bytes[prefix..];
    if data.len() != expected {
        return parse_err(
            skip + prefix,
            format!(
                "order {n} needs {expected} edge bytes, found {}",
                data.len()
            ),
        );
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert(u, v);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// A malformed input line; `line` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamError {
    pub line: usize,
    pub error: Error,
}

impl std::fmt::Display for StreamError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for StreamError {}

/// Decodes a graph6 stream line by line. Blank lines and a bare header line
/// are skipped; malformed lines yield an error and reading continues.
pub fn read_stream<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = std::result::Result<Graph, StreamError>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        match line {
            Err(e) => Some(Err(StreamError {
                line: line_no,
                error: e.into(),
            })),
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t == HEADER {
                    None
                } else {
                    Some(decode_graph6(t).map_err(|error| StreamError {
                        line: line_no,
                        error,
                    }))
                }
            }
        }
    })
}

/// Reads the edge-list format: a line `n <count>`, then one `u v` pair per
/// line (0-based). Blank lines and `#` comments are ignored.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let bad = |msg: &str| Error::Input(format!("edge list line {}: {msg}", i + 1));
        match (n, fields.as_slice()) {
            (None, ["n", count]) => {
                n = Some(
                    count
                        .parse::<usize>()
                        .map_err(|_| bad("vertex count is not an integer"))?,
                );
            }
            (None, _) => return Err(bad("expected `n <count>` before any edge")),
            (Some(_), [u, v]) => {
                let u = u
                    .parse::<usize>()
                    .map_err(|_| bad("endpoint is not an integer"))?;
                let v = v
                    .parse::<usize>()
                    .map_err(|_| bad("endpoint is not an integer"))?;
                edges.push((u, v));
            }
            (Some(_), _) => return Err(bad("expected two endpoints")),
        }
    }
    let n = n.ok_or_else(|| Error::Input("edge list is missing the `n <count>` line".into()))?;
    Graph::new(n, &edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "n {}", g.order())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// One JSON object per line.
pub struct JsonlSink<W: Write> {
    writer: W,
}

impl<W: Write> JsonlSink<W> {
    pub fn new(writer: W) -> Self {
        Self { writer }
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<()> {
        serde_json::to_writer(&mut self.writer, record).map_err(|e| Error::Io(e.to_string()))?;
        self.writer.write_all(b"\n")?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.writer
    }
}
