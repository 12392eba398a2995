use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExpVector, Var};
use crate::error::{Error, Result};

/// Commutative Laurent polynomial in e^{Z_α/2} with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    terms: BTreeMap<ExpVector, BigInt>,
}

impl LaurentElem {
    pub fn zero() -> Self {
        LaurentElem::default()
    }

    pub fn one() -> Self {
        LaurentElem::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        LaurentElem::mono(ExpVector::zero(), BigInt::from(c))
    }

    pub fn mono(u: ExpVector, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(u, c);
        }
        LaurentElem { terms }
    }

    pub fn exp(u: ExpVector) -> Self {
        LaurentElem::mono(u, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &ExpVector) -> BigInt {
        self.terms.get(u).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, u: ExpVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentElem {
        if k.is_zero() {
            return LaurentElem::zero();
        }
        LaurentElem { terms: self.terms.iter().map(|(u, c)| (u.clone(), c * k)).collect() }
    }

    pub fn scale_i(&self, k: i64) -> LaurentElem {
        self.scale(&BigInt::from(k))
    }

    pub fn pow(&self, n: u32) -> LaurentElem {
        let mut r = LaurentElem::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|u| u.vars().collect::<Vec<_>>()).collect()
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> LaurentElem {
        let mut r = LaurentElem::zero();
        for (u, c) in &self.terms {
            r.add_term(u.map_vars(&f), c.clone());
        }
        r
    }

    /// True when every coefficient is a positive integer.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: i64) -> Option<LaurentElem> {
        let d = BigInt::from(d);
        let mut out = LaurentElem::zero();
        for (u, c) in &self.terms {
            if !(c % &d).is_zero() {
                return None;
            }
            out.add_term(u.clone(), c / &d);
        }
        Some(out)
    }

    pub fn evaluate(&self, at: &HashMap<Var, f64>) -> Result<f64> {
        let missing: BTreeSet<Var> = self.vars().into_iter().filter(|v| !at.contains_key(v)).collect();
        if !missing.is_empty() {
            let names: Vec<String> = missing.iter().map(|v| format!("x{}", v.0)).collect();
            return Err(Error::Assignment(names.join(",")));
        }
        Ok(self.eval_with(|v| at[&v]))
    }

    /// Evaluates with a total assignment given as a function.
    pub fn eval_with(&self, at: impl Fn(Var) -> f64) -> f64 {
        let mut s = 0.0;
        for (u, c) in &self.terms {
            let x: f64 = u.entries().iter().map(|&(v, e)| e.to_f64() * at(v)).sum();
            s += c.to_f64().unwrap_or(f64::NAN) * x.exp();
        }
        s
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (u, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mag = c.abs();
            if u.is_zero() {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&format!("e^{{{}}}", u.render(names)));
        }
        out
    }
}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{}", v.0)))
    }
}

impl Add for &LaurentElem {
    type Output = LaurentElem;
    fn add(self, o: &LaurentElem) -> LaurentElem {
        let mut r = self.clone();
        for (u, c) in &o.terms {
            r.add_term(u.clone(), c.clone());
        }
        r
    }
}

impl Sub for &LaurentElem {
    type Output = LaurentElem;
    fn sub(self, o: &LaurentElem) -> LaurentElem {
        let mut r = self.clone();
        for (u, c) in &o.terms {
            r.add_term(u.clone(), -c);
        }
        r
    }
}

impl Neg for &LaurentElem {
    type Output = LaurentElem;
    fn neg(self) -> LaurentElem {
        LaurentElem { terms: self.terms.iter().map(|(u, c)| (u.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentElem {
    type Output = LaurentElem;
    fn mul(self, o: &LaurentElem) -> LaurentElem {
        let mut r = LaurentElem::zero();
        for (u, c) in &self.terms {
            for (v, d) in &o.terms {
                r.add_term(u.add(v), c * d);
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(LaurentElem);
