use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Parses a whitespace-separated edge list, one `u v` pair per line.
///
/// Blank lines and lines starting with `#` are skipped. The node list is the
/// sorted union of all endpoints.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields.as_slice() else {
            return Err(parse_err(format!(
                "expected two node ids, found {} fields",
                fields.len()
            )));
        };
        let id = |s: &str| {
            s.parse::<NodeId>()
                .map_err(|_| parse_err(format!("`{s}` is not a non-negative integer")))
        };
        edges.push((id(u)?, id(v)?));
    }
    let mut nodes: Vec<NodeId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    Graph::new(nodes, edges)
}

fn schema(field: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

fn node_id(value: &Value, field: &str) -> Result<NodeId> {
    value
        .as_u64()
        .ok_or_else(|| schema(field, format!("{value} is not a non-negative integer")))
}

/// Parses the JSON graph format `{"nodes": [...], "edges": [[u, v], ...], "name": "..."}`.
///
/// The declared node order is preserved.
pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("<root>", "expected a JSON object"))?;

    let nodes = obj
        .get("nodes")
        .ok_or_else(|| schema("nodes", "missing"))?
        .as_array()
        .ok_or_else(|| schema("nodes", "expected an array"))?
        .iter()
        .map(|v| node_id(v, "nodes"))
        .collect::<Result<Vec<_>>>()?;

    let mut edges = Vec::new();
    for item in obj
        .get("edges")
        .ok_or_else(|| schema("edges", "missing"))?
        .as_array()
        .ok_or_else(|| schema("edges", "expected an array"))?
    {
        match item.as_array().map(Vec::as_slice) {
            Some([u, v]) => edges.push((node_id(u, "edges")?, node_id(v, "edges")?)),
            _ => return Err(schema("edges", format!("{item} is not a [u, v] pair"))),
        }
    }

    if let Some(name) = obj.get("name") {
        if !name.is_string() && !name.is_null() {
            return Err(schema("name", "expected a string"));
        }
    }

    Graph::new(nodes, edges).map_err(|e| match e {
        Error::UnknownNode(u) => schema("edges", format!("edge endpoint {u} not declared")),
        other => other,
    })
}

/// Reads a graph file, choosing the JSON parser for `.json` and the
/// edge-list parser otherwise.
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_graph_json(&text)
    } else {
        parse_edge_list(&text)
    }
}

/// Serializable form of the JSON graph format.
#[derive(Debug, Clone, Serialize)]
pub struct GraphFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<[NodeId; 2]>,
}

impl GraphFile {
    pub fn from_graph(graph: &Graph, name: Option<&str>) -> Self {
        Self {
            name: name.map(str::to_string),
            nodes: graph.nodes().to_vec(),
            edges: graph.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_basic() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.nodes(), &[0, 1, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_collapses_reversed_duplicate() {
        let g = parse_edge_list("0 1\n1 0").unwrap();
        assert_eq!(g.nodes(), &[0, 1]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_comments_and_blank_lines() {
        let g = parse_edge_list("# header\n\n  10 2\n# 4 5\n2 7\n").unwrap();
        assert_eq!(g.nodes(), &[2, 7, 10]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_self_loop() {
        assert!(matches!(parse_edge_list("3 3"), Err(Error::SelfLoop(3))));
    }

    #[test]
    fn edge_list_malformed_reports_line() {
        match parse_edge_list("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("# c\n0 1 2") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list("-1 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_basic_and_opaque_ids() {
        let g = parse_graph_json(r#"{"nodes":[0,1],"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.nodes(), &[0, 1]);
        assert_eq!(g.edge_count(), 1);

        let g = parse_graph_json(r#"{"nodes":[7,5],"edges":[[5,7]],"name":"x"}"#).unwrap();
        assert_eq!(g.nodes(), &[7, 5]);
        assert!(g.has_edge(7, 5));
    }

    #[test]
    fn json_undeclared_endpoint() {
        match parse_graph_json(r#"{"nodes":[0],"edges":[[0,1]]}"#) {
            Err(Error::Schema { field, message }) => {
                assert_eq!(field, "edges");
                assert!(message.contains("endpoint 1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_schema_errors_name_the_field() {
        let field_of = |text: &str| match parse_graph_json(text) {
            Err(Error::Schema { field, .. }) => field,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(field_of(r#"{"edges":[]}"#), "nodes");
        assert_eq!(field_of(r#"{"nodes":[1.5],"edges":[]}"#), "nodes");
        assert_eq!(field_of(r#"{"nodes":[0]}"#), "edges");
        assert_eq!(field_of(r#"{"nodes":[0,1],"edges":[[0]]}"#), "edges");
        assert_eq!(field_of(r#"{"nodes":[0],"edges":[],"name":3}"#), "name");
    }

    #[test]
    fn graph_file_round_trip() {
        let g = parse_graph_json(r#"{"nodes":[4,2,9],"edges":[[9,2],[4,2]]}"#).unwrap();
        let text = serde_json::to_string(&GraphFile::from_graph(&g, Some("t"))).unwrap();
        assert_eq!(parse_graph_json(&text).unwrap(), g);
    }
}
