//! Exact computations for Lie bialgebra structures on sl(n) and su(n) over
//! quadratic extensions of Q: tower fields, matrices with the
//! conjugate-transpose involution, tensor calculus on gl(n), Belavin–Drinfeld
//! r-matrices, Hilbert symbols and norm equations, and the diagonal,
//! anti-diagonal and twisted cocycle families.

pub mod arith;
pub mod bd;
pub mod cocycle;
pub mod field;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod normeq;
pub mod quaternion;

pub use field::{
    field_arith, is_norm_from_quadratic, is_square_rational, rat, ratio, ArithOp, FieldError, Rational, SpecRef,
    TowerElem, TowerSpec, Verdict,
};
pub use matrix::{build_j, build_s, mat_arith, MatError, MatK, MatOp, MatValue};
pub use normeq::{solve_norm_equation, Budget, NormSolution};
pub use quaternion::{hilbert_symbol, is_split, quat_iso, quat_mul, quat_norm, Place, QuatAlg, QuatElem};
pub use lie::{
    bracket, casimir, coboundary, cyb, rdj, verify_manin_and_r, GlElem, GlIndex, LieError, ManinReport, Tensor2,
    Tensor3,
};
pub use bd::{build_rbd, validate_triple, AdmissibleTriple, BDMatrix, BdError};
pub use cocycle::{
    cohomologous_diag, construct_cocycle, is_antidiag_cocycle, is_diag_cocycle, is_twisted_cocycle, lambda_classify,
    normalize_antidiag, CocycleError, DiagCocycle, LambdaClass,
};
