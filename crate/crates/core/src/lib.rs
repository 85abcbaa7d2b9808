//! Graceful labelings of trees.
//!
//! The crate builds graceful labelings constructively: Rosa's labeling of
//! caterpillars, the delta and delta-plus-one compositions with per-edge
//! attachment freedom, and the pipelines that label trees with an almost
//! perfect (or perfect) matching whose contree is a caterpillar. A
//! backtracking oracle, free-tree enumeration and seeded generators check
//! every construction at small orders.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod labeling;
pub mod matching;
pub mod oracle;
pub mod sweep;
pub mod tree;

pub use constructions::{
    assign_roles, delta, delta_plus_one, label_lobster_apm, label_lobster_apm_with, label_tree_pm_strong,
    rosa_caterpillar, ApmLabeling, AttachmentPlan, CompositionInput, ContreeSource, Role, RoleAssignment,
};
pub use error::{Error, Result};
pub use labeling::{complement, edge_weights, verify_graceful, verify_strongly_graceful, Labeling, VerificationReport, Violation};
pub use matching::{contract, matching_avoiding, matching_missing, max_matching, ContractionMap, Group, Matching};
pub use tree::{parse_tree, Bipartition, ParsedTree, Tree, TreeClass, TreeKind};
