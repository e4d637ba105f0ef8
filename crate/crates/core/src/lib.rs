pub mod analysis;
pub mod error;
pub mod expvec;
pub mod criterion;
pub mod field;
mod fastmul;
pub mod generator;
pub mod json;
pub mod logdist;
mod lp;
pub mod parse;
pub mod polytope;
pub mod qo;
pub mod resultant;
pub mod series;
pub mod ypoly;
mod zpoly;

pub use analysis::{analyze, Analysis};
pub use error::{Error, Result};
pub use expvec::ExpVec;
pub use field::{AlgNum, Tower, UPoly};
pub use series::{FracSeries, Order, Precision};
pub use ypoly::YPoly;
pub use polytope::{Facet, Polytope};
pub use resultant::{discriminant, quasi_ordinary_test, resultant, QoCertificate};
pub use parse::{parse_document, parse_series, parse_ypoly, InputDocument};
