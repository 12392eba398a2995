use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExpVector, LaurentElem, QCoeff, QExp};
use crate::error::{Error, Result};
use crate::poisson::PoissonMatrix;

/// Sign of ω in :e^u:·:e^v: = q^{±ω(u,v)} :e^{u+v}:.
pub const ORIENTATION: i64 = 1;

/// Element of the quantum torus in Weyl normal form: Σ c_u(q) :e^{u·Z}:.
#[derive(Clone, Debug)]
pub struct TorusElem {
    terms: BTreeMap<ExpVector, QCoeff>,
    ctx: Arc<PoissonMatrix>,
}

impl PartialEq for TorusElem {
    fn eq(&self, o: &TorusElem) -> bool {
        self.terms == o.terms && same_ctx(&self.ctx, &o.ctx)
    }
}

fn same_ctx(a: &Arc<PoissonMatrix>, b: &Arc<PoissonMatrix>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TorusElem {
    pub fn zero(ctx: &Arc<PoissonMatrix>) -> Self {
        TorusElem { terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn scalar(ctx: &Arc<PoissonMatrix>, c: QCoeff) -> Self {
        TorusElem::mono(ctx, ExpVector::zero(), c)
    }

    pub fn one(ctx: &Arc<PoissonMatrix>) -> Self {
        TorusElem::scalar(ctx, QCoeff::one())
    }

    pub fn mono(ctx: &Arc<PoissonMatrix>, u: ExpVector, c: QCoeff) -> Self {
        let mut t = TorusElem::zero(ctx);
        if !c.is_zero() {
            t.terms.insert(u, c);
        }
        t
    }

    /// The Weyl-ordered exponential :e^{u·Z}:.
    pub fn weyl(ctx: &Arc<PoissonMatrix>, u: ExpVector) -> Self {
        TorusElem::mono(ctx, u, QCoeff::one())
    }

    /// Weyl ordering of a classical expansion, with no q-corrections.
    pub fn from_laurent(ctx: &Arc<PoissonMatrix>, a: &LaurentElem) -> Self {
        let mut t = TorusElem::zero(ctx);
        for (u, c) in a.terms() {
            t.add_term(u.clone(), &QCoeff::constant(c.clone()));
        }
        t
    }

    pub fn ctx(&self) -> &Arc<PoissonMatrix> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVector, &QCoeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &ExpVector) -> QCoeff {
        self.terms.get(u).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, u: ExpVector, c: &QCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, u: ExpVector, e: QExp, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(u.clone()).or_default();
        slot.add_term(e, c);
        if slot.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn try_add(&self, o: &TorusElem) -> Result<TorusElem> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(Error::Context);
        }
        let mut r = self.clone();
        for (u, c) in &o.terms {
            r.add_term(u.clone(), c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &TorusElem) -> Result<TorusElem> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(Error::Context);
        }
        let mut r = TorusElem::zero(&self.ctx);
        for (u, cu) in &self.terms {
            for (v, cv) in &o.terms {
                let w = u.add(v);
                let shift = QExp::from_quarters(ORIENTATION * self.ctx.omega4(u, v));
                for (e1, c1) in cu.terms() {
                    for (e2, c2) in cv.terms() {
                        r.add_scaled(w.clone(), *e1 + *e2 + shift, &(c1 * c2));
                    }
                }
            }
        }
        Ok(r)
    }

    /// Multiplication by a central q-coefficient.
    pub fn scale(&self, c: &QCoeff) -> TorusElem {
        let mut r = TorusElem::zero(&self.ctx);
        for (u, d) in &self.terms {
            r.add_term(u.clone(), &d.mul(c));
        }
        r
    }

    /// Multiplication by q^k.
    pub fn qshift(&self, k: i64) -> TorusElem {
        let e = QExp::from_int(k);
        TorusElem { terms: self.terms.iter().map(|(u, c)| (u.clone(), c.shift(e))).collect(), ctx: self.ctx.clone() }
    }

    pub fn scale_i(&self, k: i64) -> TorusElem {
        self.scale(&QCoeff::constant(BigInt::from(k)))
    }

    pub fn hermitian_conjugate(&self) -> TorusElem {
        TorusElem { terms: self.terms.iter().map(|(u, c)| (u.clone(), c.conj())).collect(), ctx: self.ctx.clone() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(QCoeff::is_symmetric)
    }

    pub fn classical_limit(&self) -> LaurentElem {
        let mut r = LaurentElem::zero();
        for (u, c) in &self.terms {
            r.add_term(u.clone(), c.at_one());
        }
        r
    }

    /// Shifts the q-exponents of each monomial class by a common amount so
    /// that every coefficient becomes invariant under q → q⁻¹.
    pub fn center_classes(&self) -> Result<TorusElem> {
        let mut r = TorusElem::zero(&self.ctx);
        for (u, c) in &self.terms {
            let total = c.at_one();
            let moment: BigInt = c.terms().map(|(e, k)| k * BigInt::from(e.quarters())).sum();
            let bad = || Error::Ordering(u.render(&|v| self.ctx.name(v).to_string()));
            if total.is_zero() {
                return Err(bad());
            }
            if !(&moment % &total).is_zero() {
                return Err(bad());
            }
            let mean: BigInt = &moment / &total;
            let mean: i64 = i64::try_from(mean).map_err(|_| bad())?;
            let centered = c.shift(QExp::from_quarters(-mean));
            if !centered.is_symmetric() {
                return Err(bad());
            }
            r.add_term(u.clone(), &centered);
        }
        Ok(r)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = |v| self.ctx.name(v).to_string();
        let mut parts = Vec::new();
        for (u, c) in &self.terms {
            let coeff = if c.len() == 1 {
                let (e, k) = c.terms().next().unwrap();
                if *e == QExp::ZERO && k.is_one() && !u.is_zero() {
                    String::new()
                } else if *e == QExp::ZERO && k.is_negative() && k.abs().is_one() && !u.is_zero() {
                    "-".into()
                } else {
                    c.render()
                }
            } else {
                format!("({})", c.render())
            };
            if u.is_zero() {
                parts.push(if coeff.is_empty() { "1".to_string() } else { coeff });
            } else {
                parts.push(format!("{}e^{{{}}}", coeff, u.render(&names)));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Product in the quantum torus; fails on mismatched contexts.
pub fn torus_mul(a: &TorusElem, b: &TorusElem) -> Result<TorusElem> {
    a.try_mul(b)
}

impl Add for &TorusElem {
    type Output = TorusElem;
    fn add(self, o: &TorusElem) -> TorusElem {
        self.try_add(o).expect("torus context mismatch")
    }
}

impl Sub for &TorusElem {
    type Output = TorusElem;
    fn sub(self, o: &TorusElem) -> TorusElem {
        self + &(-o)
    }
}

impl Neg for &TorusElem {
    type Output = TorusElem;
    fn neg(self) -> TorusElem {
        TorusElem { terms: self.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect(), ctx: self.ctx.clone() }
    }
}

impl Mul for &TorusElem {
    type Output = TorusElem;
    fn mul(self, o: &TorusElem) -> TorusElem {
        self.try_mul(o).expect("torus context mismatch")
    }
}

super::laurent::owned_ops!(TorusElem);
