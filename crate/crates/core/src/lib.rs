pub mod algebra;
pub mod appendix;
pub mod bar;
pub mod contraction;
pub mod dwl;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod gauss_manin;
pub mod lin;
pub mod linalg;
pub mod linf;
pub mod monomial;
pub mod omega;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod sign;
pub mod space;
pub mod suites;
pub mod tensor_trick;
pub mod word;

pub use error::{Error, Result};
pub use lin::{Basis, Lin, Tensor};
pub use operator::Op;
pub use scalar::Scalar;
