//! Extended persistence, block functors on the strip and interval sheaves on the real line.
//!
//! The crate computes extended persistence diagrams of piecewise-linear
//! functions, reads them as multisets of points of the strip `-π ≤ x + y ≤ π`,
//! and manipulates finite direct sums of interval sheaves `F_I[-d]` on the real
//! line: Hom spaces, composition, mapping cones, presented functors, their
//! projective resolutions, Betti and Euler functions, and Grothendieck-group
//! arithmetic.
//!
//! All arithmetic is exact: coordinates are of the form `nπ + arctan t` with
//! rational `t`, and linear algebra runs over a prime field `F_p`.

pub mod dcat;
pub mod epd;
pub mod error;
pub mod field;
pub mod grid;
pub mod homology;
pub mod k0;
pub mod presj;
pub mod strip;

pub use dcat::{DcatMorphism, DcatObject};
pub use epd::{Diagram, RawPair};
pub use error::{Error, Result};
pub use field::{Fp, Mat};
pub use homology::{Complex, SimplicialFunction};
pub use k0::K0Element;
pub use presj::{IntStripFunction, PresentedFunctor};
pub use strip::{CanonicalPoint, ExactCoord, ExtRat, Kind, StripPoint};
