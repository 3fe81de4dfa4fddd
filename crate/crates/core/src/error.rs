use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("color {color} outside I = {{0, ..., {max}}}")]
    ColorOutOfRange { color: usize, max: usize },

    #[error("diagram needs {needed} strands at one level, width bound is {bound}")]
    WidthExceeded { needed: usize, bound: usize },

    #[error("Jones-Wenzl projector f_{0} is undefined at this root of unity")]
    DegenerateColor(usize),

    #[error("malformed diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid link: {0}")]
    InvalidLink(String),

    #[error("sublink {0} is not characteristic")]
    NotCharacteristic(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("cochain is not a cocycle")]
    NotCocycle,

    #[error("cohomology class belongs to a different complex")]
    ForeignClass,

    #[error("{what} = {value} is not an integer")]
    NotInteger { what: String, value: String },

    #[error("genus must be at least 1")]
    InvalidGenus,

    #[error("index {index} out of range ({len})")]
    OutOfRange { index: usize, len: usize },
}
