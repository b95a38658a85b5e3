//! Wired uniform spanning trees on planar graphs: loop-erased walks,
//! Wilson's algorithm, Temperley's bijection and winding.

pub mod erase;
pub mod error;
pub mod graph;
pub mod temperley;
pub mod tree;
pub mod walk;
pub mod winding;

pub use erase::{
    backward_erase, backward_loop_erase, forward_erase, forward_loop_erase, mixed_erase, mixed_loop_erase,
    BackwardEraser, EraserRegistry, ForwardEraser, LoopEraser, MixedEraser, StoppingRule,
};
pub use error::{Result, UstError};
pub use graph::{GraphDoc, GraphEdge, PlanarGraph, VertexDoc};
pub use temperley::{enumerate_square_matchings, Fine, SquareHeights, SquareMatching, TemperleyPatch};
pub use tree::{
    enumerate_wired_trees, subtree_spanning, wilson_subtree, wilson_ust, wilson_ust_with, Subtree, TreeDoc,
    WiredTree,
};
pub use walk::{random_walk, walk_to_boundary, WalkPath};
pub use winding::{is_simple, turn_angle, turns, winding_from_endpoints, winding_intrinsic, winding_topological};
