//! Parallel drivers, JSON and CSV reports, and the verification suites behind the
//! `maxcurve` binary.

pub mod report;
pub mod runner;
pub mod suite;

use maxcurve_core::curves::CurveError;
use maxcurve_core::genus::GenusError;
use maxcurve_core::GfError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("field of order {order} exceeds the resource bound {bound}; pass --force to run anyway")]
    Resource { order: u64, bound: u64 },
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<GfError> for AppError {
    fn from(e: GfError) -> Self {
        AppError::Curve(e.into())
    }
}

impl From<GenusError> for AppError {
    fn from(e: GenusError) -> Self {
        AppError::Curve(e.into())
    }
}
