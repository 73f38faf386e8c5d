//! graph6 and JSON edge-list ingestion.

use serde::{Deserialize, Serialize};

use super::Multigraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeListJson,
}

/// `{"n": <int>, "edges": [[tail, head], ...], "name": <optional string>}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl EdgeListJson {
    pub fn into_graph(self) -> Result<Multigraph> {
        let g = Multigraph::new(self.n, self.edges.iter().map(|&[t, h]| (t, h)).collect())?;
        Ok(match self.name {
            Some(name) => g.with_name(name),
            None => g,
        })
    }
}

impl From<&Multigraph> for EdgeListJson {
    fn from(g: &Multigraph) -> Self {
        EdgeListJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(t, h)| [t, h]).collect(),
            name: g.name().map(str::to_owned),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Multigraph> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "empty input".into(),
        });
    }
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeListJson => parse_edge_list_json(text),
    }
}

pub fn to_edge_list_json(g: &Multigraph) -> String {
    serde_json::to_string(&EdgeListJson::from(g)).expect("edge list serializes")
}

fn parse_edge_list_json(text: &str) -> Result<Multigraph> {
    let parsed: EdgeListJson = serde_json::from_str(text).map_err(|e| {
        let offset = byte_offset(text, e.line(), e.column());
        if e.is_data() {
            Error::Schema(e.to_string())
        } else {
            Error::Parse {
                offset,
                message: e.to_string(),
            }
        }
    })?;
    parsed.into_graph()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    before + column.saturating_sub(1)
}

const HEADER: &str = ">>graph6<<";

fn parse_graph6(text: &str) -> Result<Multigraph> {
    let mut base = text.len() - text.trim_start().len();
    let mut line = text.trim_start();
    if let Some(rest) = line.strip_prefix(HEADER) {
        base += HEADER.len();
        line = rest;
    }
    let line = line.lines().next().unwrap_or("").trim_end();
    if let Some(extra) = text[base + line.len()..]
        .lines()
        .find(|l| !l.trim().is_empty())
    {
        let offset = text.find(extra).unwrap_or(base + line.len());
        return Err(Error::Parse {
            offset,
            message: "more than one graph in input".into(),
        });
    }
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Parse {
            offset: base + pos,
            message: format!("byte 0x{:02x} is not a graph6 character", bytes[pos]),
        });
    }
    let (n, start) = decode_order(bytes).ok_or(Error::Parse {
        offset: base,
        message: "truncated vertex count".into(),
    })?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = start + bit_count.div_ceil(6);
    if bytes.len() != expected {
        return Err(Error::Parse {
            offset: base + bytes.len().min(expected),
            message: format!(
                "expected {expected} bytes for {n} vertices, found {}",
                bytes.len()
            ),
        });
    }
    let data = &bytes[start..];
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = data[k / 6] - 63;
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Multigraph::new(n, edges)
}

fn decode_order(bytes: &[u8]) -> Option<(usize, usize)> {
    let first = *bytes.first()?;
    if first < 126 {
        return Some(((first - 63) as usize, 1));
    }
    let (width, start) = if bytes.get(1) == Some(&126) {
        (6, 2)
    } else {
        (3, 1)
    };
    let digits = bytes.get(start..start + width)?;
    let n = digits
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Some((n, start + width))
}

/// Encodes a simple graph as a graph6 line (without header or newline).
pub fn to_graph6(g: &Multigraph) -> Result<String> {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for (id, &(t, h)) in g.edges().iter().enumerate() {
        if t == h {
            return Err(Error::Domain(format!(
                "edge {id} is a loop; graph6 is for simple graphs"
            )));
        }
        if adj[t * n + h] {
            return Err(Error::Domain(format!(
                "edge {id} is parallel to an earlier edge; graph6 is for simple graphs"
            )));
        }
        adj[t * n + h] = true;
        adj[h * n + t] = true;
    }
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | adj[i * n + j] as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, petersen};

    #[test]
    fn k4_from_graph6() {
        let g = parse_graph("C~", GraphFormat::Graph6).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.edges(), complete(4).unwrap().edges());
    }

    #[test]
    fn petersen_graph6_matches_generator() {
        // "IheA@GUAo" is networkx's encoding of the outer-cycle/spoke/pentagram labeling.
        let g = parse_graph("IheA@GUAo\n", GraphFormat::Graph6).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        let mut expected = petersen().edges().to_vec();
        for e in &mut expected {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        expected.sort_unstable();
        assert_eq!(g.edges(), expected.as_slice());
        assert_eq!(to_graph6(&g).unwrap(), "IheA@GUAo");
    }

    #[test]
    fn header_is_accepted() {
        let g = parse_graph(">>graph6<<C~\n", GraphFormat::Graph6).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn long_order_encoding() {
        let path = Multigraph::new(70, (0..69).map(|i| (i, i + 1)).collect()).unwrap();
        let text = to_graph6(&path).unwrap();
        assert!(text.starts_with("~?@E"));
        assert_eq!(parse_graph(&text, GraphFormat::Graph6).unwrap(), path);
    }

    #[test]
    fn bad_character_reports_offset() {
        match parse_graph("C~ x", GraphFormat::Graph6) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncated_data_is_rejected() {
        assert!(matches!(
            parse_graph("I", GraphFormat::Graph6),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn json_parallel_edges() {
        let g = parse_graph(
            r#"{"n":2,"edges":[[0,1],[0,1]]}"#,
            GraphFormat::EdgeListJson,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn json_out_of_range_is_schema_error() {
        let r = parse_graph(r#"{"n":2,"edges":[[0,2]]}"#, GraphFormat::EdgeListJson);
        assert!(matches!(r, Err(Error::Schema(_))));
    }

    #[test]
    fn json_syntax_error_has_offset() {
        let r = parse_graph("{\"n\":2,\n \"edges\": [[0,1]", GraphFormat::EdgeListJson);
        assert!(matches!(r, Err(Error::Parse { offset, .. }) if offset > 8));
    }

    #[test]
    fn graph6_rejects_multigraphs() {
        let g = Multigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(matches!(to_graph6(&g), Err(Error::Domain(_))));
    }
}
