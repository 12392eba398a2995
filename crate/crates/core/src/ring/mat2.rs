use super::{LaurentElem, TorusElem};

/// Minimal ring interface shared by the exact and numeric matrix entries.
pub trait RingElem: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_i64_like(&self, k: i64) -> Self;
}

impl RingElem for f64 {
    fn zero_like(&self) -> f64 {
        0.0
    }
    fn one_like(&self) -> f64 {
        1.0
    }
    fn plus(&self, o: &f64) -> f64 {
        self + o
    }
    fn times(&self, o: &f64) -> f64 {
        self * o
    }
    fn negate(&self) -> f64 {
        -self
    }
    fn from_i64_like(&self, k: i64) -> f64 {
        k as f64
    }
}

impl RingElem for LaurentElem {
    fn zero_like(&self) -> Self {
        LaurentElem::zero()
    }
    fn one_like(&self) -> Self {
        LaurentElem::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_i64_like(&self, k: i64) -> Self {
        LaurentElem::constant(k)
    }
}

impl RingElem for TorusElem {
    fn zero_like(&self) -> Self {
        TorusElem::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        TorusElem::one(self.ctx())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_i64_like(&self, k: i64) -> Self {
        TorusElem::one(self.ctx()).scale_i(k)
    }
}

/// 2×2 matrix over a [`RingElem`], row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: RingElem> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    /// Integer matrix with entries built from a template element.
    pub fn int(t: &T, a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(t.from_i64_like(a), t.from_i64_like(b), t.from_i64_like(c), t.from_i64_like(d))
    }

    pub fn identity(t: &T) -> Self {
        Mat2::int(t, 1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        let e = |i: usize, j: usize| self.m[i][0].times(&o.m[0][j]).plus(&self.m[i][1].times(&o.m[1][j]));
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn trace(&self) -> T {
        self.m[0][0].plus(&self.m[1][1])
    }

    pub fn det(&self) -> T {
        self.m[0][0].times(&self.m[1][1]).plus(&self.m[0][1].times(&self.m[1][0]).negate())
    }
}

impl Mat2<f64> {
    pub fn max_abs_diff(&self, o: &Mat2<f64>) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j] - o.m[i][j]).abs());
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()))
    }

    /// Möbius action z ↦ (az+b)/(cz+d).
    pub fn mobius(&self, z: f64) -> f64 {
        (self.m[0][0] * z + self.m[0][1]) / (self.m[1][0] * z + self.m[1][1])
    }
}
