//! Magnitude of the category of indecomposable projectives of a monomial
//! bound-quiver algebra, computed exactly, together with the homological data
//! (minimal resolutions, Ext dimensions, Euler form) it is compared against.
//!
//! The pipeline is
//!
//! ```
//! use quivermag::{enumerate_paths, ext_table, euler_matrix, magnitude, parse_quiver};
//!
//! let bq = parse_quiver("quiver { vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; relations: b*a; }")?;
//! let pb = enumerate_paths(bq)?;
//! let z = pb.cartan_matrix();
//! let e = euler_matrix(&ext_table(&pb, pb.total_dim()))?;
//! assert!((&z * &e).is_identity());
//! assert_eq!(magnitude(&z)?.value.unwrap().to_string(), "2");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod automaton;
pub mod euler;
pub mod linalg;
pub mod paths;
pub mod quiver;
pub mod representation;
pub mod resolution;
pub mod serde_q;
pub mod verify;

pub use euler::{
    class_of_projective, duality_pairing, euler_form, euler_matrix, magnitude,
    simple_in_projective_basis, weighted_euler_sum, EulerError, GrothClass, MagnitudeEvidence,
    MagnitudeResult, MagnitudeStatus,
};
pub use linalg::{LinalgError, Matrix, Rational};
pub use paths::{enumerate_paths, InfiniteDimensional, PathBasis};
pub use quiver::{parse_any, parse_quiver, serialize_quiver, BoundQuiver, Format, Path, Quiver, QuiverError};
pub use representation::{projective_cover, ModuleMap, Representation, RepresentationError};
pub use resolution::{
    default_max_degree, ext_table, minimal_projective_resolution, simple_resolutions, ExtTable,
    GlobalDimension, MinimalResolution,
};
pub use verify::{verify, verify_with_cartan, Check, CheckOutcome, VerificationReport, VerifyStatus};
