//! Homotopy and homology invariants of spaces of commuting elements in
//! compact Lie groups, with brute-force oracles for every formula.

pub mod alcove;
pub mod arith;
pub mod error;
pub mod geom;
pub mod homology;
pub mod invariants;
pub mod rootdatum;
pub mod simplicial;
pub mod verify;
pub mod weyl;
pub mod wps;

pub use error::{Error, Result};
pub use alcove::AlcoveGeometry;
pub use geom::{PrismPoint, S4Point, SU2Point};
pub use homology::{FinAbGroup, IntMatrix};
pub use invariants::{ExtensionReport, Pi2Report};
pub use rootdatum::{build_root_datum, FaceIndex, Family, LieType, RootDatum};
pub use simplicial::{EquivariantComplex, SimplicialComplex};
pub use weyl::{WeylElement, WeylGroup};
pub use wps::{SpinParity, WeightedProjectiveSpace, WpsPoint};
