//! Ground truth at small orders: exhaustive labeling search, free-tree
//! enumeration and seeded tree generators.

pub mod enumerate;
pub mod generate;
pub mod search;

pub use enumerate::{
    canonical_form, enumerate_trees, enumerate_trees_by_prufer, prufer_decode, MAX_ENUMERATION_ORDER,
    MAX_PRUFER_ENUMERATION_ORDER,
};
pub use generate::{generate, random_caterpillar, random_lobster, random_tree, Family, GeneratorSpec};
pub use search::{
    brute_force, brute_force_each, find_graceful, is_zero_rotatable, Constraint, SearchMode, SearchOptions,
    SearchOutcome, ZeroRotation,
};
