use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A number on the lattice ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(t: i64) -> Self {
        HalfInt(t)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn scale(self, k: i64) -> Self {
        HalfInt(self.0.checked_mul(k).expect("half-integer overflow"))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0.checked_add(o.0).expect("half-integer overflow"))
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        *self = *self + o;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        self + (-o)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        self.scale(k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exponent of q, stored in quarter units.
///
/// Products of monomials carrying e^{Z/2} factors produce pairings in ¼ℤ,
/// so the q-lattice is one step finer than [`HalfInt`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExp(i64);

impl QExp {
    pub const ZERO: QExp = QExp(0);

    pub const fn from_quarters(n: i64) -> Self {
        QExp(n)
    }

    pub const fn from_int(n: i64) -> Self {
        QExp(4 * n)
    }

    pub const fn quarters(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 4.0
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, o: QExp) -> QExp {
        QExp(self.0.checked_add(o.0).expect("q-exponent overflow"))
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0;
        if n % 4 == 0 {
            write!(f, "{}", n / 4)
        } else if n % 2 == 0 {
            write!(f, "{}/2", n / 2)
        } else {
            write!(f, "{}/4", n)
        }
    }
}
