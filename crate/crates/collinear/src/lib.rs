pub mod applications;
pub mod cubic;
pub mod curves;
pub mod geometry;
pub mod oracle;
pub mod plane_graph;
pub mod realize;
pub mod three_tree;
pub mod treewidth;
