//! 2-adic valuation trees.
//!
//! Level `i` holds residue classes `{2^i·q + r}`; the children of `(i, r)`
//! are `(i+1, r)` and `(i+1, r + 2^i)`. A node terminates when ν₂(f) is
//! constant on its class.
//!
//! The termination test is exact: write `f(2^i q + r) = A q² + B q + C` and
//! strip the common power `2^w` from `(A, B, C)`. The class has constant
//! valuation iff the stripped quadratic is odd at every `q`, i.e. its
//! constant term is odd and its other two coefficients have equal parity. If
//! it were constant at some positive valuation, the stripped coefficients
//! would have parities (odd, odd, even), which is an unbounded case.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::arith::{mod_pow2, nu2, pow2, Valuation};
use crate::classifier::{classify, Case};
use crate::error::{Error, Result};
use crate::poly::QuadraticPoly;

pub const DEFAULT_DEPTH_CAP: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    /// ν₂(f) equals this value on the whole class.
    Terminating(u64),
    NonTerminating,
    /// Non-terminating, but the tree was cut off at this level.
    DepthCapped,
    /// `f(r) = 0`: an integer root sits at this residue. The class is not
    /// constant (ν₂ is infinite only at the root itself), so the node still
    /// splits; it always lies on an infinite branch.
    Root,
}

impl NodeStatus {
    /// Non-terminating in the mathematical sense (including capped and root nodes).
    pub fn is_open(self) -> bool {
        !matches!(self, NodeStatus::Terminating(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeStatus::Terminating(_) => "terminating",
            NodeStatus::NonTerminating => "non_terminating",
            NodeStatus::DepthCapped => "depth_capped",
            NodeStatus::Root => "root",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub level: u32,
    pub residue: BigUint,
    pub status: NodeStatus,
    /// Indices into [`ValuationTree::nodes`]: `[r, r + 2^level]`.
    pub children: Option<[usize; 2]>,
}

impl TreeNode {
    /// The constant valuation for terminating nodes, `Infinite` at a root.
    pub fn valuation(&self) -> Option<Valuation> {
        match self.status {
            NodeStatus::Terminating(v) => Some(Valuation::Finite(v)),
            NodeStatus::Root => Some(Valuation::Infinite),
            _ => None,
        }
    }

    /// `2^i q + r` as in printed valuation trees: `n`, `2q+1`, `8q+5`.
    pub fn label(&self) -> String {
        match self.level {
            0 => "n".to_string(),
            1 => format!("2q+{}", self.residue),
            i => format!("{}q+{}", pow2(i), self.residue),
        }
    }
}

/// The valuation tree of `poly`, stored as an arena rooted at index 0.
#[derive(Debug, Clone)]
pub struct ValuationTree {
    pub poly: QuadraticPoly,
    pub nodes: Vec<TreeNode>,
    /// Deepest level, when the tree is finite.
    pub levels: Option<u32>,
    pub depth_cap: u32,
}

impl ValuationTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn is_finite(&self) -> bool {
        self.levels.is_some()
    }

    pub fn children(&self, node: &TreeNode) -> Option<[&TreeNode; 2]> {
        node.children.map(|[l, r]| [&self.nodes[l], &self.nodes[r]])
    }

    pub fn depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    pub fn nodes_at(&self, level: u32) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(move |n| n.level == level)
    }

    pub fn open_at(&self, level: u32) -> Vec<&TreeNode> {
        self.nodes_at(level)
            .filter(|n| n.status.is_open())
            .collect()
    }

    pub fn terminating_at(&self, level: u32) -> Vec<(&BigUint, u64)> {
        self.nodes_at(level)
            .filter_map(|n| match n.status {
                NodeStatus::Terminating(v) => Some((&n.residue, v)),
                _ => None,
            })
            .collect()
    }

    pub fn depth_capped(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes
            .iter()
            .filter(|n| n.status == NodeStatus::DepthCapped)
    }

    /// Expands the terminating leaves of a finite tree into a table indexed
    /// by residue mod `2^levels`.
    pub fn flatten(&self) -> Result<Vec<Valuation>> {
        let levels = self.levels.ok_or(Error::InfiniteTree)?;
        let len = 1usize << levels;
        let mut table = vec![None; len];
        for node in &self.nodes {
            if let NodeStatus::Terminating(v) = node.status {
                let step = 1usize << node.level;
                let start = usize::try_from(&node.residue).expect("residue below 2^levels");
                for slot in table.iter_mut().skip(start).step_by(step) {
                    *slot = Some(Valuation::Finite(v));
                }
            }
        }
        Ok(table
            .into_iter()
            .map(|v| v.expect("leaves of a finite tree cover every residue"))
            .collect())
    }
}

/// Decides the status of the class `2^i q + r`.
pub fn node_status(f: &QuadraticPoly, level: u32, residue: &BigUint) -> Result<NodeStatus> {
    if residue >= &pow2(level) {
        return Err(Error::ResidueOutOfRange {
            level,
            residue: BigInt::from(residue.clone()),
        });
    }
    let (a, b, _) = f.coefficients();
    let r = BigInt::from_biguint(Sign::Plus, residue.clone());
    let shift = level as usize;
    let const_term = f.eval(&r);
    if const_term.is_zero() {
        return Ok(NodeStatus::Root);
    }
    let quad = a << (2 * shift);
    let lin = (BigInt::from(2) * a * &r + b) << shift;

    let vq = nu2(&quad);
    let vl = nu2(&lin);
    let vc = nu2(&const_term);
    let w = vq.min(vl).min(vc);
    // parities of the stripped coefficients
    let quad_odd = vq == w;
    let lin_odd = vl == w;
    let const_odd = vc == w;
    Ok(if const_odd && quad_odd == lin_odd {
        NodeStatus::Terminating(w.finite().expect("constant term is nonzero"))
    } else {
        NodeStatus::NonTerminating
    })
}

/// Breadth-first expansion down to `depth_cap`; open nodes at the cap are
/// marked [`NodeStatus::DepthCapped`].
pub fn build_tree(f: &QuadraticPoly, depth_cap: u32) -> Result<ValuationTree> {
    if depth_cap == 0 {
        return Err(Error::ZeroDepthCap);
    }
    let mut nodes = vec![TreeNode {
        level: 0,
        residue: BigUint::zero(),
        status: NodeStatus::NonTerminating,
        children: None,
    }];
    let mut queue = VecDeque::from([0usize]);
    let mut capped = false;
    while let Some(idx) = queue.pop_front() {
        let level = nodes[idx].level;
        let status = node_status(f, level, &nodes[idx].residue)?;
        if !status.is_open() {
            nodes[idx].status = status;
            continue;
        }
        if level == depth_cap {
            nodes[idx].status = NodeStatus::DepthCapped;
            capped = true;
            continue;
        }
        nodes[idx].status = status;
        let left = nodes[idx].residue.clone();
        let right = &left + pow2(level);
        let first = nodes.len();
        for residue in [left, right] {
            nodes.push(TreeNode {
                level: level + 1,
                residue,
                status: NodeStatus::NonTerminating,
                children: None,
            });
        }
        nodes[idx].children = Some([first, first + 1]);
        queue.extend([first, first + 1]);
    }
    let levels = (!capped).then(|| nodes.iter().map(|n| n.level).max().unwrap_or(0));
    Ok(ValuationTree {
        poly: f.clone(),
        nodes,
        levels,
        depth_cap,
    })
}

/// Truncations mod `2^bits` of the 2-adic roots of an unbounded quadratic,
/// one entry per infinite branch (sorted; the two roots of case 3(b) may
/// share a truncation when `bits ≤ ℓ`).
pub fn infinite_branch_residues(f: &QuadraticPoly, bits: u32) -> Result<Vec<BigUint>> {
    if bits == 0 {
        return Err(Error::ZeroDepthCap);
    }
    let cls = classify(f);
    if cls.is_bounded() {
        return Err(Error::NoInfiniteBranches);
    }
    // the two roots of case 3(b) agree modulo 2^ℓ and separate at bit ℓ
    let depth = match cls.case {
        Case::ThreeB => bits.max(cls.ell().expect("case 3(b) has ℓ") + 1),
        _ => bits,
    };
    let tree = build_tree(f, depth)?;
    let mut residues: Vec<BigUint> = tree
        .depth_capped()
        .map(|n| mod_pow2(&BigInt::from(n.residue.clone()), bits))
        .collect();
    residues.sort();
    debug_assert_eq!(residues.len(), usize::from(cls.infinite_branches));
    Ok(residues)
}

/// Whether a finite tree has type (ℓ,1): `ℓ ≥ 2` and at every level
/// `1 ≤ i < ℓ` the only non-terminating node has residue `2^i − 1`.
pub fn is_type_ell_1(tree: &ValuationTree) -> Result<bool> {
    let levels = tree.levels.ok_or(Error::InfiniteTree)?;
    if levels < 2 {
        return Ok(false);
    }
    Ok((1..levels).all(|i| {
        let open = tree.open_at(i);
        open.len() == 1 && open[0].residue == pow2(i) - 1u32
    }))
}
