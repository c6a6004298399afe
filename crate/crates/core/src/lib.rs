//! Weighted F4 varieties: root data, Weyl group, representations, Hilbert
//! series, variety builds and the quadric equations of the F4 orbit closure.

pub mod equations;
pub mod hilbert;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod reps;
pub mod variety;
pub mod weyl;

pub use equations::{Quadric, QuadricSet};
pub use hilbert::{HilbertError, HilbertParams, HilbertSeries};
pub use lattice::{Coweight, RootSystemF4, WeightVec, Q};
pub use laurent::LaurentPoly;
pub use linalg::RankMethod;
pub use variety::{Recipe, VarietyBuild};
pub use weyl::{WeylElement, WeylGroup};
