use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dims(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    Hermiticity(f64),
    #[error("photon index {n} needs n + 2 <= nmax, got nmax = {nmax}")]
    Truncation { n: usize, nmax: usize },
    #[error("state norm {0} deviates from 1")]
    Norm(f64),
    #[error("negative eigenvalue {0:e}")]
    Positivity(f64),
    #[error("state is not pure (purity {0})")]
    Purity(f64),
    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
