//! Graphviz rendering of strict orders over acts.

use hopeprep_core::criteria::StrictDigraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes in input order and one edge per covering pair, pointing from the
/// better act to the worse.
pub fn render(name: &str, g: &StrictDigraph) -> String {
    let mut s = format!("digraph {} {{\n", quote(name));
    for n in &g.nodes {
        s.push_str(&format!("  {};\n", quote(n)));
    }
    for &(i, j) in &g.cover {
        s.push_str(&format!("  {} -> {};\n", quote(&g.nodes[i]), quote(&g.nodes[j])));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_cover_edges_are_drawn() {
        let g = StrictDigraph {
            nodes: vec!["a".into(), "b".into(), "c\"".into()],
            edges: vec![(0, 1), (1, 2), (0, 2)],
            cover: vec![(0, 1), (1, 2)],
        };
        let text = render("s", &g);
        assert_eq!(
            text,
            "digraph \"s\" {\n  \"a\";\n  \"b\";\n  \"c\\\"\";\n  \"a\" -> \"b\";\n  \"b\" -> \"c\\\"\";\n}\n"
        );
    }
}
