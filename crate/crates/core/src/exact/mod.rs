//! Exact evaluation and optimal strategies.
//!
//! [`opt_value`] brute-forces the optimum on small graphs. [`solve_sparse`]
//! computes it in polynomial time (for fixed `d`) on graphs whose
//! components have at most `d` more edges than nodes.

mod decompose;
mod family;
mod oracle;
mod path;
mod sparse;
mod tree;

pub use decompose::{decompose, PathComponent, SparseDecomposition};
pub use family::{
    evaluate_cdt, expand_cdt, family_actions, family_size, outcomes, Cdt, CdtFamily, CdtStrategy,
    FamilySolver, Outcomes,
};
pub use oracle::{
    opt_online, opt_strategy, opt_strategy_with, opt_value, opt_value_with, OptStrategy,
    OracleConfig,
};
pub use path::{path_dp, path_dp_probs, path_sweep_strategy, sweep_order, PathDpResult};
pub use sparse::{solve_sparse, solve_sparse_with, SparseStrategy, DEFAULT_MEMO_LIMIT};
pub use tree::{evaluate_tree, exhaustive_value, expand_strategy, DecisionTree, TreeStrategy};
