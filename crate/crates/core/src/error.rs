use std::path::PathBuf;

use thiserror::Error;

use crate::metrics::MetricsError;
use crate::model::Violation;
use crate::network::NetworkError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {}", join(.0))]
    InvalidParams(Vec<Violation>),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("config {}: {message}", .path.display())]
    Config { path: PathBuf, message: String },
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("`{0}` is not a sweepable parameter (expected one of: {list})", list = crate::experiments::SweepParam::NAMES.join(", "))]
    NotSweepable(String),
    #[error("sweep over {param}: {message}")]
    Sweep { param: String, message: String },
    #[error("replication needs at least one seed")]
    NoSeeds,
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
