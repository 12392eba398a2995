//! Tropical layer: measures on long branches, foliation-shear coordinates
//! and their piecewise-linear flips.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, Traversal};
use crate::geodesic::{Component, Multicurve};
use crate::moves::{flip_inner, flip_pending, phi, CoordRule, FlipResult};
use crate::ring::Var;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// φ_H(x) = max(x, 0).
pub fn phi_h(x: &Q) -> Q {
    if x.is_positive() {
        x.clone()
    } else {
        Q::zero()
    }
}

/// Transverse measure on the long branches, one per edge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreewayMeasure {
    pub mu: BTreeMap<Var, Q>,
}

impl FreewayMeasure {
    pub fn get(&self, e: Var) -> Q {
        self.mu.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    /// Strand counts of a multicurve: every dart on an edge adds one. A visit
    /// to a window crosses its pending edge twice, an arc ending there once.
    pub fn from_darts<'a>(strands: impl IntoIterator<Item = (&'a [Traversal], u32)>) -> Self {
        let mut mu: BTreeMap<Var, Q> = BTreeMap::new();
        for (ds, s) in strands {
            for t in ds {
                *mu.entry(t.edge).or_insert_with(Q::zero) += q(s as i64);
            }
        }
        FreewayMeasure { mu }
    }

    pub fn from_multicurve(m: &Multicurve) -> Self {
        let parts: Vec<(Vec<Traversal>, u32)> = m
            .components
            .iter()
            .filter_map(|(c, s)| match c {
                Component::Closed(w) => Some((w.darts(), *s)),
                Component::Arc(a) => Some((a.clone(), *s)),
                Component::DotLoop(_) => None,
            })
            .collect();
        FreewayMeasure::from_darts(parts.iter().map(|(d, s)| (d.as_slice(), *s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FoliationShear {
    pub zeta: BTreeMap<Var, Q>,
}

impl FoliationShear {
    pub fn get(&self, e: Var) -> Q {
        self.zeta.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn zero(g: &FatGraph) -> Self {
        FoliationShear { zeta: g.vars().map(|v| (v, Q::zero())).collect() }
    }

    /// Parses `edge=value` lines; values may be fractions like `-3/2`.
    pub fn parse(g: &FatGraph, text: &str) -> Result<Self> {
        let mut zs = FoliationShear::zero(g);
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: k + 1, msg: msg.to_string() };
            let (name, val) = line.split_once('=').ok_or_else(|| bad("expected edge=value"))?;
            let e = g.var(name.trim()).ok_or_else(|| bad(&format!("unknown edge {}", name.trim())))?;
            let x: Q = val.trim().parse().map_err(|_| bad(&format!("bad rational {}", val.trim())))?;
            zs.zeta.insert(e, x);
        }
        Ok(zs)
    }

    pub fn render(&self, g: &FatGraph) -> String {
        self.zeta.iter().map(|(v, x)| format!("{}={}\n", g.name(*v), x)).collect()
    }
}

/// Neighbours (A, B, C, D) of an edge: A and C receive +φ(Z) under the flip,
/// B and D receive −φ(−Z). A pending edge has no C and D.
fn neighbours(g: &FatGraph, z: Var) -> (Var, Var, Option<(Var, Var)>) {
    let info = g.edge(z);
    let (u, s) = info.ends[0];
    let a = g.at(u, (s + 2) % 3).0;
    let b = g.at(u, (s + 1) % 3).0;
    if info.is_pending() {
        return (a, b, None);
    }
    let (w, t) = info.ends[1];
    (a, b, Some((g.at(w, (t + 2) % 3).0, g.at(w, (t + 1) % 3).0)))
}

/// ζ = ½(μ(A) − μ(B) + μ(C) − μ(D)), with μ(C) = μ(D) = 0 on pending edges.
pub fn shear_from_measure(g: &FatGraph, m: &FreewayMeasure) -> FoliationShear {
    let mut zeta = BTreeMap::new();
    for z in g.vars() {
        let (a, b, cd) = neighbours(g, z);
        let mut x = m.get(a) - m.get(b);
        if let Some((c, d)) = cd {
            x += m.get(c) - m.get(d);
        }
        zeta.insert(z, x / q(2));
    }
    FoliationShear { zeta }
}

/// Σ ζ around each boundary component, pending edges counted twice.
pub fn face_sums(g: &FatGraph, zs: &FoliationShear) -> Vec<Q> {
    g.trace_faces().iter().map(|f| f.walk.iter().fold(Q::zero(), |acc, t| acc + zs.get(t.edge))).collect()
}

pub fn face_conditions_hold(g: &FatGraph, zs: &FoliationShear) -> bool {
    face_sums(g, zs).iter().all(Zero::is_zero)
}

/// The tropical version of a flip rule: φ replaced by φ_H.
pub fn tropical_apply(rule: &CoordRule, zs: &FoliationShear) -> FoliationShear {
    let z = zs.get(rule.flipped);
    let mut out = zs.clone();
    for (e, terms) in &rule.shifts {
        let d = terms.iter().fold(Q::zero(), |acc, &(c, k)| acc + q(c) * phi_h(&(q(k) * &z)));
        *out.zeta.entry(*e).or_insert_with(Q::zero) += d;
    }
    out.zeta.insert(rule.flipped, -z);
    out
}

pub fn tropical_flip_inner(g: &FatGraph, zs: &FoliationShear, z: Var) -> Result<(FlipResult, FoliationShear)> {
    let fr = flip_inner(g, z)?;
    let out = tropical_apply(&fr.rule, zs);
    Ok((fr, out))
}

pub fn tropical_flip_pending(g: &FatGraph, zs: &FoliationShear, z: Var) -> Result<(FlipResult, FoliationShear)> {
    let fr = flip_pending(g, z)?;
    let out = tropical_apply(&fr.rule, zs);
    Ok((fr, out))
}

pub fn tropical_flip(g: &FatGraph, zs: &FoliationShear, z: Var) -> Result<(FlipResult, FoliationShear)> {
    if g.is_pending(z) {
        tropical_flip_pending(g, zs, z)
    } else {
        tropical_flip_inner(g, zs, z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitRow {
    pub lambda: f64,
    pub scaled: f64,
    pub deviation: f64,
}

/// φ(λx)/λ against φ_H(x) for each λ. The deviation is log(1 + e^{−λ|x|})/λ
/// evaluated directly so that it survives when it is far below rounding.
pub fn tropical_limit_check(x: f64, lambdas: &[f64]) -> Vec<LimitRow> {
    lambdas
        .iter()
        .map(|&l| LimitRow { lambda: l, scaled: phi(l * x) / l, deviation: (-(l * x).abs()).exp().ln_1p() / l })
        .collect()
}
