use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word {0:?}: expected letters from 0,1,2,3,t")]
    InvalidWord(String),

    #[error("invalid polynomial {0:?}")]
    InvalidPoly(String),

    #[error("{elem} is not in a {side} string for the pair {pair}")]
    NotInString {
        elem: String,
        pair: String,
        side: &'static str,
    },

    #[error("cannot certify whether a({elem}) >= {threshold}")]
    Uncertifiable { elem: String, threshold: u32 },

    #[error("a({elem}) is not certified: bounds [{lower}, {upper}]")]
    AUncertified { elem: String, lower: u32, upper: u32 },

    #[error("gamma table does not cover the product t_{x} * t_{y}")]
    MissingGamma { x: String, y: String },

    #[error("{elem} is not certified to lie in the cell {cell}")]
    NotInCell { elem: String, cell: &'static str },

    #[error("{0} is outside the family pattern")]
    NotInFamily(String),

    #[error("supplied facts disagree with the computed ring: {0}")]
    FactMismatch(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
