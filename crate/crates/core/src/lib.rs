//! k-shapes, surjective pistols and the bijection between irreducible
//! k-shapes and surjective pistols.

pub mod bijection;
pub mod error;
pub mod oracle;
pub mod partial;
pub mod pistol;
pub mod poly;
pub mod shape;
pub mod verify;

pub use bijection::{classify_sites, phi, s_sequence_shape, varphi, SiteClassification};
pub use error::{Error, PistolError, Result};
pub use oracle::{box_enumerate_irreducible, check_confluence, BoxBound};
pub use partial::{PartialColumn, PartialKShape, ScanOrder};
pub use pistol::{point_stats, Pistol, PointStats};
pub use poly::{dumont_foata, gamma, gandhi, genocchi, MultiPoly, Var, Weighting};
pub use shape::{is_irreducible, is_k_shape, shape_stats, Cell, Partition, ShapeStats, SkewShape};
