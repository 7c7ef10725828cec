//! Exact algebra over Q(zeta_12), branch analysis, blow-up charts and a
//! catalog of cyclic quotient singularity models.

pub mod batch;
pub mod branch;
pub mod catalog;
pub mod chart;
pub mod detect;
pub mod error;
pub mod field;
pub mod gcd;
pub mod hensel;
pub mod jet;
pub mod linalg;
pub mod poly;
pub mod roots;

pub use error::{AlgebraError, BranchError, CatalogError, ChartError};
pub use field::AlgNum;
pub use poly::{MPoly, Order};
