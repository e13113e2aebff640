//! Polyspherical coordinate trees: the naming-language parser, tree counts,
//! coordinate transforms, and hyperspherical harmonics from node eigenfactors.

pub mod coords;
pub mod count;
pub mod harmonics;
pub mod parse;
pub mod tree;

pub use coords::{
    check_angles, cos_separation, hopf_g_recursion, hopf_heap_angles_to_preorder, hopf_heap_to_preorder,
    surface_measure, to_cartesian,
};
pub use count::{class_count_table, count_equivalence_classes, count_trees, tree_count_table};
pub use harmonics::{
    addition_residual, addition_sum, addition_theorem_rhs, check_key, condon_shortley_phase, degree_shell_sums,
    enumerate_keys, harmonic, harmonic_dimension, node_factor, spherical_harmonic, FixedAzimuth, QuantumKey,
};
pub use parse::{parse_tree, ParseError, MAX_NODES};
pub use tree::{format_tree, Child, NodeType, Shape, Tree, TreeNode};
