use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    EmptyPermutation,

    #[error("value {value} at index {index} is out of range 1..={n}")]
    ValueOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },

    #[error("value {value} at index {index} repeats index {first}")]
    RepeatedValue {
        index: usize,
        first: usize,
        value: usize,
    },

    #[error("cannot parse permutation {0:?}")]
    Parse(String),

    #[error("grid is not square: row {row} has {len} cells, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("unknown tile character {ch:?} at ({row}, {col})")]
    UnknownTile { row: usize, col: usize, ch: char },

    #[error("bump tile at ({row}, {col}) is not allowed in a raw pipe dream")]
    BumpInInput { row: usize, col: usize },

    #[error("edge violation: {0}")]
    Edge(String),

    #[error("permutation {0} is not vexillary")]
    NotVexillary(String),

    #[error("brute-force enumeration refuses n = {n} (bound is {bound})")]
    OracleBound { n: usize, bound: usize },

    #[error("degree {k} lies outside [{low}, {high}]")]
    DegreeOutOfRange { k: usize, low: usize, high: usize },

    #[error("homogeneous component of degree {0} is empty")]
    EmptyComponent(usize),

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("i/o: {0}")]
    Io(String),
}
