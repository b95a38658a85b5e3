//! Geometry and combinatorics of the hexagonal lattice: domains, lozenge
//! matchings, height functions, boundary curves and local windows.

pub mod boundary;
pub mod coords;
pub mod dimer;
pub mod domain;
pub mod error;
pub mod height;
pub mod window;

pub use boundary::{boundary_curve, BoundaryCurve};
pub use coords::{face_dist_sq, vertex_dist_sq, Color, Edge, FaceCoord, Kind, Rational, Vertex, DIRECTIONS};
pub use dimer::DimerConfig;
pub use domain::{DomainDoc, EdgeRef, HexDomain, Step};
pub use error::{HexError, Result};
pub use height::{
    boundary_heights, domain_extremal_heights, extremal_heights, height_field, heights, increment, lipschitz_bound,
    Extremal, HeightField,
};
pub use window::{local_distance_sq, local_window, local_window_sq, WindowPattern};
