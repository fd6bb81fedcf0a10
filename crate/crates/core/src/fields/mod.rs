//! The coefficient field `k = F_p(t1..tm)` and semilinear algebra over `k^p`.

mod ratfunc;
mod semilinear;
mod tpoly;

pub use ratfunc::{FieldCtx, RatFunc};
pub use semilinear::{
    in_kp_span, kp_independent, ppow_decompose, recompose_span, Independence,
    PPowerDecomposition,
};
pub use tpoly::{TExp, TPoly};
