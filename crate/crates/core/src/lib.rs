//! Random walks on Cayley graphs of finite reflection groups.
//!
//! The crate builds the rank-3 groups A3, B3 and H3 (and other finite Coxeter
//! groups) numerically, assembles the invariant transition operators `P_X`
//! on their Cayley graphs, and studies the second-highest eigenvalue
//! `lambda_1(X)` together with its spectral embedding. The Cayley graphs of
//! A3, B3 and H3 are the one-skeleta of the Archimedean solids (4,6,6),
//! (4,6,8) and (4,6,10).

pub mod coxeter;
pub mod coxmaps;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod mesh;
pub mod randwalk;
pub mod solids;
pub mod spectral;
pub mod verify;

pub use coxeter::{
    cayley_graph, generate_group, reflection_matrix, simple_roots, Builtin, CayleyGraph,
    CoxeterDatum, Edge, ReflectionGroup,
};
pub use coxmaps::{FundamentalDomain, FundamentalPoint};
pub use error::{Error, Result};
pub use linalg::{EigenDecomposition, Matrix};
pub use mesh::MeshDocument;
pub use randwalk::{build_operator, SimplexPoint, TransitionOperator};
pub use solids::{CayleySystem, Curve};
pub use spectral::{Embedding, SpectralCluster};

/// `(1 + sqrt 5) / 2 = 2 cos(pi / 5)`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_894_8;
