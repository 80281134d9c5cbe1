//! 2-adic valuation sequences `ν₂(an² + bn + c)` of integer quadratics.
//!
//! * [`classifier`] decides boundedness, period and branch count from the
//!   coefficients alone.
//! * [`closed_form`] gives every valuation of a bounded sequence.
//! * [`tree`] builds the valuation tree, with depth-capped infinite branches
//!   for unbounded sequences.
//! * [`operators`] holds translation, dilation and the S-operator, and the
//!   reduction of bounded quadratics to type (ℓ,1).
//! * [`oracle`] evaluates sequences by brute force; [`verify`] compares the
//!   rest against it.

pub mod arith;
pub mod classifier;
pub mod closed_form;
pub mod error;
pub mod operators;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod tree;
pub mod verify;

pub use arith::{
    factor_discriminant, inverse_mod_pow2, is_square_in_z2, nu, nu2, nu_product_check,
    DiscFactorization, Valuation,
};
pub use classifier::{classify, constant_valuation, reduce_even, Case, Classification};
pub use closed_form::{
    closed_form_valuation, max_valuation, period_table, ClosedForm, PeriodTable,
};
pub use error::{Error, Result};
pub use operators::{
    canonicalize_to_type_ell_1, dilate, s_operator, table_s_law, table_translate_law, translate,
    Canonical, Direction, OperatorDescriptor,
};
pub use oracle::{empirical_period, valuation_sequence, ValuationSequence};
pub use poly::QuadraticPoly;
pub use tree::{
    build_tree, infinite_branch_residues, is_type_ell_1, node_status, NodeStatus, TreeNode,
    ValuationTree, DEFAULT_DEPTH_CAP,
};
