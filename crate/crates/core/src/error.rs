use crate::corpus::CorpusError;
use crate::eval::EvalError;
use crate::influence::InfluenceError;
use crate::output::OutputError;
use crate::scholar::ScholarError;
use crate::vectors::VectorError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Vectors(#[from] VectorError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Influence(#[from] InfluenceError),
    #[error(transparent)]
    Scholar(#[from] ScholarError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Output(#[from] OutputError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
