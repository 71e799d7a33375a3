use super::{EdgeBundle, Graph, Multiplicity};
use crate::error::{Error, Result};

/// Parses the line-oriented graph text format.
///
/// ```text
/// # E_3 with two parallel edges
/// vertex w
/// vertex x
/// vertex y
/// edge w x inf
/// edge w y 2
/// ```
pub fn parse_graph(input: &str) -> Result<Graph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut bundles: Vec<(usize, EdgeBundle)> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] => {
                if vertices.iter().any(|v| v == name) {
                    return Err(err(format!("duplicate vertex `{name}`")));
                }
                vertices.push((*name).to_string());
            }
            ["vertex", ..] => return Err(err("expected `vertex <name>`".into())),
            ["edge", src, dst, mult] => {
                let mult = parse_mult(mult).map_err(err)?;
                bundles.push((line_no, EdgeBundle::new(*src, *dst, mult)));
            }
            ["edge", ..] => return Err(err("expected `edge <src> <dst> <mult>`".into())),
            [other, ..] => return Err(err(format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    // Validate bundles one at a time so errors carry the offending line.
    let mut seen = std::collections::BTreeSet::new();
    for (line, b) in &bundles {
        let err = |message: String| Error::Parse { line: *line, message };
        for end in [&b.source, &b.target] {
            if !vertices.contains(end) {
                return Err(err(format!("undeclared vertex `{end}`")));
            }
        }
        if !seen.insert((b.source.clone(), b.target.clone())) {
            return Err(err(format!("duplicate bundle {} -> {}", b.source, b.target)));
        }
    }
    Graph::new(vertices, bundles.into_iter().map(|(_, b)| b))
}

fn parse_mult(token: &str) -> std::result::Result<Multiplicity, String> {
    if token == "inf" {
        return Ok(Multiplicity::Infinite);
    }
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid multiplicity `{token}`"));
    }
    match token.parse::<u64>() {
        Ok(0) => Err("multiplicity must be positive".into()),
        Ok(n) => Ok(Multiplicity::Finite(n)),
        Err(_) => Err(format!("invalid multiplicity `{token}`")),
    }
}
