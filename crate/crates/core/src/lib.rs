//! Cubical Morton and tetrahedral Morton (TM) space-filling curves, the
//! face-connectivity of their segments, and an exact census of connected
//! segments.
//!
//! - [`cube`]: encode/decode, reversal, quadrant boxes, face neighbors and
//!   the two-piece split of a segment on the `d`-dimensional Morton curve.
//! - [`simplex`]: Bey refinement, simplex types and the TM order for
//!   triangles and tetrahedra.
//! - [`mesh`]: component counts of segments over uniform refinements, the
//!   incremental all-segments scan and its derived checks.
//! - [`census`]: the recursive enumeration of disconnected / weakly /
//!   strongly connected segments, its brute-force oracle and component
//!   histograms.
//! - [`verify`]: named check suites shared by the CLI and the tests.

pub mod census;
pub mod cube;
pub mod dsu;
pub mod error;
pub mod mesh;
pub mod segment;
pub mod simplex;
pub mod verify;

pub use error::{Error, Result};
pub use segment::Segment;
