//! Plane 3-trees: decomposition, curve construction and the optimal
//! dynamic program.

mod augment;
mod bundle;
mod decomp;
mod dp;
mod generate;

pub use bundle::{build_curve_bundle, check_counting_bounds, ladder_chord, node_bundles, CountItem, CountReport, BundleError, CurveBundle, CyclePoint, Ladder, NodeBundle};
pub use decomp::{decompose, is_plane_3tree, outer_triangle, Node, ThreeTreeDecomp, ThreeTreeError, VertexType};
pub use generate::{plane_3tree_from_choices, random_plane_3tree, Stacker};
pub use dp::{dp_optimal_collinear, dp_table, Cut, DpResult, DpTable};
pub use augment::augment_to_plane_3tree;
