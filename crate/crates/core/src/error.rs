use thiserror::Error;

use crate::operators::OperatorError;
use crate::root_system::RootSystemError;
use crate::scalars::ScalarError;
use crate::tilted::TiltedError;
use crate::weyl::WeylError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Tilted(#[from] TiltedError),
}
