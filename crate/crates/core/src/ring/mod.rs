//! Exact coefficient arithmetic: commutative Laurent polynomials in the
//! exponentiated shear coordinates and the quantum torus over them.

mod expvec;
mod halfint;
pub(crate) mod laurent;
mod mat2;
mod qcoeff;
mod torus;

pub use expvec::{ExpVector, Var};
pub use halfint::{HalfInt, QExp};
pub use laurent::LaurentElem;
pub use mat2::{Mat2, RingElem};
pub use qcoeff::QCoeff;
pub use torus::{torus_mul, TorusElem, ORIENTATION};

use std::collections::HashMap;

use crate::error::Result;

pub fn evaluate(a: &LaurentElem, at: &HashMap<Var, f64>) -> Result<f64> {
    a.evaluate(at)
}

pub fn classical_limit(a: &TorusElem) -> LaurentElem {
    a.classical_limit()
}

pub fn hermitian_conjugate(a: &TorusElem) -> TorusElem {
    a.hermitian_conjugate()
}
