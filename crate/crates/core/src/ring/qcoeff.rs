use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::QExp;

/// Integer Laurent polynomial in q (exponents on the quarter lattice).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QCoeff {
    terms: BTreeMap<QExp, BigInt>,
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff::default()
    }

    pub fn one() -> Self {
        QCoeff::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QCoeff::mono(QExp::ZERO, c)
    }

    pub fn mono(e: QExp, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QCoeff { terms }
    }

    /// c·q^k for integer k.
    pub fn q(k: i64, c: i64) -> Self {
        QCoeff::mono(QExp::from_int(k), BigInt::from(c))
    }

    /// ξ = q² − q⁻².
    pub fn xi() -> Self {
        QCoeff::q(2, 1).sub(&QCoeff::q(-2, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QExp, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: QExp, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &QCoeff) -> QCoeff {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &QCoeff) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }

    pub fn sub(&self, o: &QCoeff) -> QCoeff {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QCoeff {
        QCoeff { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, o: &QCoeff) -> QCoeff {
        let mut r = QCoeff::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(*e1 + *e2, &(c1 * c2));
            }
        }
        r
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: QExp) -> QCoeff {
        QCoeff { terms: self.terms.iter().map(|(k, c)| (*k + e, c.clone())).collect() }
    }

    /// q → q⁻¹.
    pub fn conj(&self) -> QCoeff {
        QCoeff { terms: self.terms.iter().map(|(k, c)| (-*k, c.clone())).collect() }
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.conj()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if *e == QExp::ZERO {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                }
                s.push_str(&format!("q^{}", e));
            }
        }
        s
    }
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_render_and_limit() {
        let xi = QCoeff::xi();
        assert_eq!(xi.render(), "-q^-2+q^2");
        assert!(xi.at_one().is_zero());
        assert_eq!(xi.conj(), xi.neg());
    }

    #[test]
    fn product() {
        let a = QCoeff::q(1, 1).add(&QCoeff::q(-1, 1));
        let b = a.mul(&a);
        assert_eq!(b, QCoeff::q(2, 1).add(&QCoeff::q(0, 2)).add(&QCoeff::q(-2, 1)));
    }
}
