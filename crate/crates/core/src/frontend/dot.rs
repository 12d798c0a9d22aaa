//! Graphviz export and stable term fingerprints.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::metatheory::ReductionGraph;
use crate::syntax::Term;

const MAX_LABEL: usize = 80;

/// First 16 hex digits of a SHA-256 over the nameless form, so α-equal
/// terms share a hash.
pub fn term_hash(t: &Term) -> String {
    let digest = Sha256::digest(format!("{:?}", t.key()).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn label(t: &Term) -> String {
    let text = t.to_string();
    let text = if text.chars().count() > MAX_LABEL {
        let head: String = text.chars().take(MAX_LABEL).collect();
        format!("{head}... #{}", &term_hash(t)[..8])
    } else {
        text
    };
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(g: &ReductionGraph) -> String {
    let mut out = String::from("digraph reduction {\n  node [shape=box, fontname=\"monospace\"];\n");
    let normal: Vec<_> = g.normal_form_nodes();
    for n in g.graph.node_indices() {
        let mut attrs = format!("label=\"{}\"", label(g.term(n)));
        if n == g.root {
            attrs.push_str(", penwidth=2");
        }
        if normal.contains(&n) {
            attrs.push_str(", peripheries=2");
        }
        let _ = writeln!(out, "  n{} [{}];", n.index(), attrs);
    }
    for e in g.graph.edge_indices() {
        let (a, b) = g.graph.edge_endpoints(e).expect("edge exists");
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", a.index(), b.index(), g.graph[e]);
    }
    out.push_str("}\n");
    out
}
