//! Cross-checks between the closed form, the tree and the brute-force oracle.
//!
//! Level `i` of a tree means residues mod `2^i`. Per-case laws checked on
//! trees (`o` is the even-reduction offset):
//!
//! * case 2: one open node per level; the terminating sibling at level `i`
//!   has valuation `i − 1 + o`.
//! * case 4: two open nodes per level `i ≥ 1`; from level 2 on, two
//!   terminating nodes per level, each of valuation `i − 1 + o`.
//! * case 3(a): one open node per level; terminal valuation `2(i − 1) + o`.
//! * case 3(b): one open node per level up to `ℓ`, two below it.
//! * case 3(c): finite with `ℓ` levels; one terminal node of valuation
//!   `2(i − 1) + o` at each level `i < ℓ`, two at level `ℓ` with values drawn
//!   from `{2(ℓ−1), 2ℓ−1, 2ℓ} + o`.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::arith::{pow2, Valuation};
use crate::classifier::{classify, Case, Classification};
use crate::closed_form::{ClosedForm, MAX_TABLE_ELL};
use crate::oracle::{period_of, valuation_at, valuation_sequence};
use crate::poly::QuadraticPoly;
use crate::tree::{build_tree, infinite_branch_residues, NodeStatus, ValuationTree};

/// Samples `q = 0..SAMPLES` per node when checking termination decisions.
pub const NODE_SAMPLES: u64 = 33;

/// Deepest tree level examined by [`verify`] for unbounded sequences.
pub const MAX_VERIFY_DEPTH: u32 = 20;

/// Largest `ℓ` for which [`verify`] runs the oracle over whole periods.
pub const MAX_VERIFY_ELL: u32 = 20;

/// Compares the closed form against the oracle on `[0, horizon)`, returning
/// the first disagreeing `n`.
pub fn closed_form_counterexample(cf: &ClosedForm, f: &QuadraticPoly, horizon: u64) -> Option<u64> {
    (0..horizon).find(|&n| cf.valuation(&BigUint::from(n)) != valuation_at(f, &BigInt::from(n)))
}

/// Checks every node's status against sampled oracle values.
pub fn check_node_exactness(tree: &ValuationTree, samples: u64) -> Result<(), String> {
    let f = &tree.poly;
    for node in &tree.nodes {
        let step = BigInt::from(pow2(node.level));
        let r = BigInt::from(node.residue.clone());
        let at = |q: u64| valuation_at(f, &(&step * BigInt::from(q) + &r));
        match node.status {
            NodeStatus::Terminating(v) => {
                if let Some(q) = (0..samples).find(|&q| at(q) != Valuation::Finite(v)) {
                    return Err(format!(
                        "node {} claims valuation {v} but q={q} gives {}",
                        node.label(),
                        at(q)
                    ));
                }
            }
            _ => {
                let first = at(0);
                if (1..samples).all(|q| at(q) == first) {
                    return Err(format!(
                        "node {} is open but constant over {samples} samples",
                        node.label()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn expect_count(level: u32, what: &str, got: usize, want: usize) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("level {level}: {got} {what}, expected {want}"))
    }
}

fn expect_values(level: u32, got: &[(&BigUint, u64)], want: u64) -> Result<(), String> {
    match got.iter().find(|(_, v)| *v != want) {
        None => Ok(()),
        Some((r, v)) => Err(format!(
            "level {level}: terminal residue {r} has valuation {v}, expected {want}"
        )),
    }
}

/// Checks the per-case branch-count and terminal-valuation laws on every
/// level of `tree` below its cap.
pub fn check_tree_laws(tree: &ValuationTree, cls: &Classification) -> Result<(), String> {
    let o = cls.even_offset;
    let depth = tree.depth();
    match cls.case {
        Case::One | Case::Five => {
            if tree.nodes.len() != 1 || tree.root().status != NodeStatus::Terminating(o) {
                return Err(format!("expected a single root terminating at {o}"));
            }
        }
        Case::Two | Case::ThreeA => {
            for i in 1..=depth {
                expect_count(i, "open nodes", tree.open_at(i).len(), 1)?;
                let term = tree.terminating_at(i);
                expect_count(i, "terminating nodes", term.len(), 1)?;
                let want = if cls.case == Case::Two {
                    u64::from(i) - 1
                } else {
                    2 * (u64::from(i) - 1)
                };
                expect_values(i, &term, want + o)?;
            }
        }
        Case::Four => {
            for i in 1..=depth {
                expect_count(i, "open nodes", tree.open_at(i).len(), 2)?;
                let term = tree.terminating_at(i);
                expect_count(
                    i,
                    "terminating nodes",
                    term.len(),
                    if i == 1 { 0 } else { 2 },
                )?;
                expect_values(i, &term, u64::from(i) - 1 + o)?;
            }
        }
        Case::ThreeB => {
            let ell = cls.ell().expect("case 3(b) has ℓ");
            for i in 1..=depth {
                let want = if i <= ell { 1 } else { 2 };
                expect_count(i, "open nodes", tree.open_at(i).len(), want)?;
            }
        }
        Case::ThreeC => {
            let ell = cls.ell().expect("case 3(c) has ℓ");
            if tree.levels != Some(ell) {
                return Err(format!("tree has {:?} levels, expected {ell}", tree.levels));
            }
            for i in 1..ell {
                expect_count(i, "open nodes", tree.open_at(i).len(), 1)?;
                let term = tree.terminating_at(i);
                expect_count(i, "terminating nodes", term.len(), 1)?;
                expect_values(i, &term, 2 * (u64::from(i) - 1) + o)?;
            }
            let last = tree.terminating_at(ell);
            expect_count(ell, "terminating nodes", last.len(), 2)?;
            let e = u64::from(ell);
            let allowed = [2 * (e - 1) + o, 2 * e - 1 + o, 2 * e + o];
            if let Some((r, v)) = last.iter().find(|(_, v)| !allowed.contains(v)) {
                return Err(format!("level {ell}: residue {r} has valuation {v}"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub classification: Classification,
    pub horizon: u64,
    pub checks: Vec<Check>,
    /// First `n` where the closed form and the oracle disagree.
    pub counterexample: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The default horizon: four periods for bounded sequences, `2^12` otherwise.
pub fn default_horizon(cls: &Classification) -> u64 {
    match cls.case {
        Case::ThreeC => {
            let ell = cls.ell().expect("case 3(c) has ℓ").min(MAX_VERIFY_ELL);
            4 << ell
        }
        Case::One | Case::Five => 64,
        _ => 1 << 12,
    }
}

fn check_bounded(
    f: &QuadraticPoly,
    cls: &Classification,
    horizon: u64,
    report: &mut VerificationReport,
) {
    let ell = cls.ell().expect("case 3(c) has ℓ");
    if ell > MAX_VERIFY_ELL {
        report.checks.push(Check::new(
            "size",
            Err(format!(
                "ℓ = {ell} exceeds the verification limit {MAX_VERIFY_ELL}"
            )),
        ));
        return;
    }
    let cf = ClosedForm::from_classification(cls).expect("case 3(c)");
    let cex = closed_form_counterexample(&cf, f, horizon);
    report.counterexample = cex;
    report.checks.push(Check::new(
        "closed form = oracle",
        match cex {
            None => Ok(format!("n in [0, {horizon})")),
            Some(n) => Err(format!(
                "n={n}: closed form {} vs oracle {}",
                cf.valuation(&BigUint::from(n)),
                valuation_at(f, &BigInt::from(n))
            )),
        },
    ));

    let values = valuation_sequence(f, 0, horizon as usize).values;
    let period = 1u64 << ell;
    report.checks.push(Check::new(
        "empirical period",
        match period_of(&values) {
            Some(p) if p == period => Ok(format!("{p}")),
            other => Err(format!("found {other:?}, expected {period}")),
        },
    ));

    let outcome = build_tree(f, ell.max(1))
        .map_err(|e| e.to_string())
        .and_then(|tree| {
            check_tree_laws(&tree, cls)?;
            check_node_exactness(&tree, NODE_SAMPLES)?;
            if ell <= MAX_TABLE_ELL {
                let table = cf.period_table().map_err(|e| e.to_string())?;
                if tree.flatten().map_err(|e| e.to_string())? != table.entries {
                    return Err("flattened tree differs from the period table".into());
                }
            }
            Ok(format!("finite, {ell} levels"))
        });
    report.checks.push(Check::new("tree", outcome));
}

fn check_constant(
    f: &QuadraticPoly,
    cls: &Classification,
    horizon: u64,
    report: &mut VerificationReport,
) {
    let want = Valuation::Finite(cls.even_offset);
    let values = valuation_sequence(f, 0, horizon as usize).values;
    let bad = values.iter().position(|v| *v != want);
    report.counterexample = bad.map(|n| n as u64);
    report.checks.push(Check::new(
        "constant valuation",
        match bad {
            None => Ok(format!("{want} on [0, {horizon})")),
            Some(n) => Err(format!("n={n} gives {}", values[n])),
        },
    ));
    let outcome = build_tree(f, 1)
        .map_err(|e| e.to_string())
        .and_then(|tree| check_tree_laws(&tree, cls).map(|_| "single node".to_string()));
    report.checks.push(Check::new("tree", outcome));
}

fn check_unbounded(
    f: &QuadraticPoly,
    cls: &Classification,
    horizon: u64,
    report: &mut VerificationReport,
) {
    let depth = horizon.max(2).ilog2().clamp(1, MAX_VERIFY_DEPTH);
    let outcome = build_tree(f, depth)
        .map_err(|e| e.to_string())
        .and_then(|tree| {
            check_tree_laws(&tree, cls)?;
            check_node_exactness(&tree, NODE_SAMPLES)?;
            Ok(format!("depth {depth}"))
        });
    report.checks.push(Check::new("tree laws", outcome));

    let outcome = infinite_branch_residues(f, depth)
        .map_err(|e| e.to_string())
        .and_then(|residues| {
            if residues.len() != usize::from(cls.infinite_branches) {
                return Err(format!(
                    "{} branch residues, expected {}",
                    residues.len(),
                    cls.infinite_branches
                ));
            }
            let floor = Valuation::Finite(u64::from(depth));
            match residues
                .iter()
                .find(|r| valuation_at(f, &BigInt::from((*r).clone())) < floor)
            {
                Some(r) => Err(format!("residue {r} has valuation below {depth}")),
                None => Ok(format!("{} residue(s) mod 2^{depth}", residues.len())),
            }
        });
    report.checks.push(Check::new("branch residues", outcome));
}

/// Runs every applicable cross-check for `f`.
pub fn verify(f: &QuadraticPoly, horizon: Option<u64>) -> VerificationReport {
    let cls = classify(f);
    let horizon = horizon.unwrap_or_else(|| default_horizon(&cls));
    let mut report = VerificationReport {
        classification: cls.clone(),
        horizon,
        checks: Vec::new(),
        counterexample: None,
    };
    match cls.case {
        Case::ThreeC => check_bounded(f, &cls, horizon, &mut report),
        Case::One | Case::Five => check_constant(f, &cls, horizon, &mut report),
        _ => check_unbounded(f, &cls, horizon, &mut report),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(a: i64, b: i64, c: i64) -> QuadraticPoly {
        QuadraticPoly::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn reference_polynomials_verify() {
        for f in [
            poly(4, 13, -25),
            poly(13, 12, -28),
            poly(15, 1142, 25559),
            poly(5, 106, 1125),
        ] {
            let report = verify(&f, None);
            assert!(report.passed(), "{f}: {:?}", report.checks);
        }
    }

    #[test]
    fn other_cases_verify() {
        for f in [
            poly(1, 1, 1),
            poly(4, 8, 2),
            poly(1, 2, 1),
            poly(1, 0, 0),
            poly(1, 0, -1),
            poly(1, 1, 2),
            poly(3, 5, 0),
            poly(2, 1, 0),
            poly(8, 16, 40),
            poly(-6, 20, 2),
            poly(1, 2, -4),
        ] {
            let report = verify(&f, None);
            assert!(report.passed(), "{f}: {:?}", report.checks);
        }
    }

    #[test]
    fn short_horizon_fails_the_period_check() {
        let report = verify(&poly(5, 106, 1125), Some(40));
        assert!(!report.passed());
        assert_eq!(report.counterexample, None);
    }

    #[test]
    fn laws_reject_a_mismatched_classification() {
        let tree = build_tree(&poly(1, 1, 2), 6).unwrap();
        let wrong = classify(&poly(4, 13, -25));
        assert!(check_tree_laws(&tree, &wrong).is_err());
    }
}
