//! Brute-force finite-field engine: enumerated matrix groups, flags and
//! stabilizers, Jordan decomposition, indecomposability classification,
//! adjoint-equation solving, exact character sums, and fixed-point counts
//! feeding the interpolated tables.

pub mod analogue;
pub mod adscan;
pub mod charsum;
pub mod classes;
pub mod fq;
pub mod group;
pub mod mat;
pub mod model;

pub use fq::{Felt, FqField};
pub use group::FqGroup;
pub use mat::FqMat;
pub use model::{model, MatrixModel, ModelName};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("group order {0} exceeds the enumeration budget {1}")]
    TooLarge(u64, u64),
    #[error("field error: {0}")]
    Field(#[from] fq::FqError),
    #[error("extension budget exceeded: element not toral over F_q^{0}")]
    ExtensionBudgetExceeded(u8),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(u64),
    #[error("scan error: {0}")]
    Scan(#[from] classes::ScanError),
    #[error("character sum is not integral: {0}")]
    NonIntegralResult(String),
    #[error("no valid generic linear character exists for this group")]
    NoValidTheta,
    #[error("no finite-field generic tuple exists over the budgeted extensions")]
    NoGenericTuple,
    #[error("preset {0} has no oracle matrix model")]
    UnsupportedPreset(String),
}
