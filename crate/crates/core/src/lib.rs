pub mod degree;
pub mod eglie;
pub mod error;
pub mod formal;
pub mod freelie;
pub mod johnson;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod tensor;
pub mod words;

pub use degree::Degree;
pub use error::{Error, Result};
pub use scalar::{CoefficientRing, Scalar};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/tensor.md")]
    mod tensor {}
    #[doc = include_str!("../../../book/src/freelie.md")]
    mod freelie {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/johnson.md")]
    mod johnson {}
    #[doc = include_str!("../../../book/src/formal.md")]
    mod formal {}
}
