//! Exact computation with real simplicial hyperplane arrangements and their
//! Deligne groupoids: chambers, the 1-skeleton, atoms, normal forms, the
//! positive word problem, and the combinatorial order/degree shadows.

pub mod arrangement;
pub mod check;
pub mod cone;
pub mod deligne;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod paths;
pub mod shadow;
pub mod skeleton;

pub use arrangement::{Arrangement, Chamber, Hyperplane};
pub use error::{Error, Result};
