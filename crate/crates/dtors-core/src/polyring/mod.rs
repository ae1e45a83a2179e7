//! Polynomial arithmetic over F_q[t] and the bivariate ring F_q[t][z]:
//! gcds and resultants via the subresultant remainder sequence, contents and
//! heights, cofactor identities, and gcd-preserving random combinations.

pub mod bezout;
pub mod bipoly;
pub mod matrix;
pub mod ratfunc;
pub mod sample;
pub mod upoly;

pub use bezout::{bezout_cofactors, combine_with, random_combine, BezoutCofactors, Combination, SampleSet};
pub use bipoly::{gcd_primitive, resultant, BiPoly};
pub use ratfunc::{fq_linearly_independent, RatFunc};
pub use upoly::UPoly;
