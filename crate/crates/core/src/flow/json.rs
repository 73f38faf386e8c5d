//! Flow JSON: `{"d": <int>, "graph": <edge list object | graph6 string>, "values": [[...], ...]}`.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use super::VectorFlow;
use crate::error::{Error, Result};
use crate::graph::{parse_graph, EdgeListJson, GraphFormat, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    EdgeList(EdgeListJson),
    Graph6(String),
}

impl GraphRef {
    pub fn to_graph(&self) -> Result<Multigraph> {
        match self {
            GraphRef::EdgeList(list) => list.clone().into_graph(),
            GraphRef::Graph6(text) => parse_graph(text, GraphFormat::Graph6),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowDocument {
    pub d: usize,
    pub graph: GraphRef,
    #[serde(serialize_with = "full_precision")]
    pub values: Vec<Vec<f64>>,
}

impl FlowDocument {
    pub fn new(g: &Multigraph, f: &VectorFlow) -> Self {
        FlowDocument {
            d: f.dimension(),
            graph: GraphRef::EdgeList(EdgeListJson::from(g)),
            values: f.vectors().map(<[f64]>::to_vec).collect(),
        }
    }

    /// Accepts a flow document or an optimizer report, which nests one under `flow`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("values").is_none() {
            if let Some(flow) = value.get_mut("flow") {
                value = flow.take();
            }
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("flow document serializes")
    }

    /// Rebuilds the graph and flow, checking that they agree in size.
    pub fn into_parts(self) -> Result<(Multigraph, VectorFlow)> {
        let g = self.graph.to_graph()?;
        let f = VectorFlow::from_vectors(self.d, &self.values)?;
        if f.edge_count() != g.edge_count() {
            return Err(Error::Shape(format!(
                "flow lists {} values for a graph with {} edges",
                f.edge_count(),
                g.edge_count()
            )));
        }
        Ok((g, f))
    }
}

/// Writes every component with 17 significant digits so values round-trip exactly.
fn full_precision<S: Serializer>(values: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let raw: Vec<Vec<Box<RawValue>>> = values
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| RawValue::from_string(format!("{x:.16e}")).expect("finite float is JSON"))
                .collect()
        })
        .collect();
    raw.serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    #[test]
    fn round_trip_is_exact() {
        let g = petersen();
        let values: Vec<f64> = (0..30).map(|i| (i as f64 * 0.7).sin() / 3.0).collect();
        let f = VectorFlow::new(2, values).unwrap();
        let text = FlowDocument::new(&g, &f).to_json();
        assert!(text.contains("e-1") || text.contains("e0"));
        let (g2, f2) = FlowDocument::parse(&text).unwrap().into_parts().unwrap();
        assert_eq!(g2, g);
        assert_eq!(f2, f);
    }

    #[test]
    fn graph6_reference() {
        let text = r#"{"d":1,"graph":"C~","values":[[1],[1],[1],[1],[1],[1]]}"#;
        let (g, f) = FlowDocument::parse(text).unwrap().into_parts().unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(f.dimension(), 1);
    }

    #[test]
    fn size_mismatch_is_shape_error() {
        let text = r#"{"d":1,"graph":"C~","values":[[1]]}"#;
        assert!(matches!(
            FlowDocument::parse(text).unwrap().into_parts(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn nested_report_flow_is_read() {
        let g = petersen();
        let values: Vec<f64> = (0..30).map(|i| (i as f64 * 1.3).cos() / 7.0).collect();
        let f = VectorFlow::new(2, values).unwrap();
        let text = format!(
            r#"{{"best_strength": 3.0, "flow": {}}}"#,
            FlowDocument::new(&g, &f).to_json()
        );
        let (g2, f2) = FlowDocument::parse(&text).unwrap().into_parts().unwrap();
        assert_eq!((g2, f2), (g, f));
    }
}
