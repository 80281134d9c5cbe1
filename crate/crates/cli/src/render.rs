//! Plain-text renderings: classification summaries, ASCII trees, DOT.

use std::fmt::Write as _;

use quadval::{Case, Classification, NodeStatus, TreeNode, ValuationTree};

/// One-line summary, e.g. `bounded, case 3(c), ℓ=7, m=2, period 128`.
pub fn summary(cls: &Classification) -> String {
    let label = cls.case.label();
    match cls.case {
        Case::ThreeC => format!(
            "bounded, case {label}, ℓ={}, m={}, period {}",
            cls.ell().expect("case 3(c) has ℓ"),
            cls.m().expect("case 3(c) has m"),
            cls.period.as_ref().expect("case 3(c) has a period"),
        ),
        Case::One | Case::Five => {
            format!(
                "bounded, case {label}, constant valuation {}",
                cls.even_offset
            )
        }
        _ => {
            let k = cls.infinite_branches;
            let noun = if k == 1 { "branch" } else { "branches" };
            format!("unbounded, case {label}, {k} infinite {noun}")
        }
    }
}

pub fn classification_report(cls: &Classification) -> String {
    let mut s = String::new();
    writeln!(s, "{}", summary(cls)).unwrap();
    writeln!(s, "polynomial: {}", cls.poly).unwrap();
    writeln!(s, "case: {}", cls.case.tag()).unwrap();
    writeln!(s, "even offset: {}", cls.even_offset).unwrap();
    if cls.even_offset > 0 {
        writeln!(s, "reduced: {}", cls.reduced).unwrap();
    }
    if let Some(disc) = &cls.disc {
        match (disc.ell(), disc.delta(), disc.m()) {
            (Some(ell), Some(delta), Some(m)) => {
                writeln!(s, "discriminant: {} = 4^{ell}·({delta})", disc.value()).unwrap();
                writeln!(s, "ℓ: {ell}").unwrap();
                writeln!(s, "Δ: {delta}").unwrap();
                writeln!(s, "m: {m}").unwrap();
            }
            _ => writeln!(s, "discriminant: 0").unwrap(),
        }
    }
    match &cls.period {
        Some(p) => writeln!(s, "period: {p}").unwrap(),
        None => writeln!(s, "period: none").unwrap(),
    }
    writeln!(s, "infinite branches: {}", cls.infinite_branches).unwrap();
    s
}

fn node_mark(node: &TreeNode) -> String {
    match node.status {
        NodeStatus::Terminating(v) => format!("ν={v}"),
        NodeStatus::NonTerminating => "*".to_string(),
        NodeStatus::DepthCapped => "…".to_string(),
        NodeStatus::Root => format!("* f({})=0", node.residue),
    }
}

pub fn ascii_tree(tree: &ValuationTree) -> String {
    let mut s = String::new();
    let mut stack = vec![tree.root()];
    while let Some(node) = stack.pop() {
        let indent = "  ".repeat(node.level as usize);
        writeln!(s, "{indent}{} {}", node.label(), node_mark(node)).unwrap();
        if let Some([left, right]) = tree.children(node) {
            stack.push(right);
            stack.push(left);
        }
    }
    s
}

/// A `digraph` with one node per class; terminating nodes are filled.
pub fn dot_tree(tree: &ValuationTree) -> String {
    let mut s = String::new();
    writeln!(s, "digraph valuation_tree {{").unwrap();
    writeln!(s, "  label=\"{}\";", tree.poly).unwrap();
    writeln!(s, "  node [shape=box];").unwrap();
    for (id, node) in tree.nodes.iter().enumerate() {
        let label = format!("{}\\n{}", node.label(), node_mark(node));
        match node.status {
            NodeStatus::Terminating(_) => {
                writeln!(s, "  n{id} [label=\"{label}\", style=filled];").unwrap()
            }
            _ => writeln!(s, "  n{id} [label=\"{label}\"];").unwrap(),
        }
    }
    for (id, node) in tree.nodes.iter().enumerate() {
        if let Some(kids) = node.children {
            for k in kids {
                writeln!(s, "  n{id} -> n{k} [label=\"{}\"];", tree.nodes[k].residue).unwrap();
            }
        }
    }
    writeln!(s, "}}").unwrap();
    s
}
