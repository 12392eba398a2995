//! Closed paths on a fatgraph and their holonomy traces.
//!
//! Matrices: X_Z = (0, −e^{Z/2}; e^{−Z/2}, 0), R = (1, 1; −1, 0),
//! L = (0, 1; −1, −1), F = (0, 1; −1, 0). A path is read in path order
//! while the matrix product is written right to left, so the first step
//! of the path is the rightmost factor.

mod lift;
mod multicurve;

pub use lift::{lift_assignment, lift_to_double};
pub use multicurve::{multicurve_check, multicurve_length, Component, Multicurve, MulticurveStatus};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, Traversal};
use crate::poisson::PoissonMatrix;
use crate::ring::{ExpVector, HalfInt, LaurentElem, Mat2, RingElem, TorusElem, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn letter(self) -> char {
        match self {
            Turn::L => 'L',
            Turn::R => 'R',
        }
    }
}

/// One matrix factor. `X(e, k)` is X_{kZ_e}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    X(Var, i64),
    L,
    R,
    F,
}

/// A path step: an inner-edge traversal or a round trip to a dot-vertex,
/// which contributes X_Z F X_Z = X_{2Z}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Pass(Traversal),
    Visit(Var),
}

/// Cyclic word of steps with the turn taken after each one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    steps: Vec<Step>,
    turns: Vec<Turn>,
}

fn step_arrival(g: &FatGraph, s: Step) -> (usize, u8) {
    match s {
        Step::Pass(t) => g.arrival(t).expect("inner edge"),
        Step::Visit(z) => g.edge(z).ends[0],
    }
}

fn step_departure(g: &FatGraph, s: Step) -> (usize, u8) {
    match s {
        Step::Pass(t) => g.departure(t).expect("inner edge"),
        Step::Visit(z) => g.edge(z).ends[0],
    }
}

impl PathWord {
    /// Validates the steps as a closed non-backtracking path and derives the
    /// turns.
    pub fn new(g: &FatGraph, steps: Vec<Step>) -> Result<PathWord> {
        for s in &steps {
            match *s {
                Step::Pass(t) if g.is_pending(t.edge) => {
                    return Err(Error::Word(format!("{} is pending, it can only be visited", g.name(t.edge))))
                }
                Step::Visit(z) if !g.is_pending(z) => {
                    return Err(Error::Word(format!("{} is not pending, it cannot be visited", g.name(z))))
                }
                _ => {}
            }
        }
        let n = steps.len();
        let mut turns = Vec::with_capacity(n);
        for i in 0..n {
            let (v, a) = step_arrival(g, steps[i]);
            let (w, d) = step_departure(g, steps[(i + 1) % n]);
            if v != w {
                return Err(Error::Word(format!("step {} does not end where step {} starts", i, (i + 1) % n)));
            }
            turns.push(match (d + 3 - a) % 3 {
                1 => Turn::R,
                2 => Turn::L,
                _ => return Err(Error::Word(format!("backtracking after step {}", i))),
            });
        }
        Ok(PathWord { steps, turns })
    }

    pub fn empty() -> PathWord {
        PathWord { steps: Vec::new(), turns: Vec::new() }
    }

    /// Word visiting the listed pending edges in order, each from the last.
    pub fn visits(g: &FatGraph, names: &[&str]) -> Result<PathWord> {
        let steps = names.iter().map(|n| g.var_or_err(n).map(Step::Visit)).collect::<Result<Vec<_>>>()?;
        PathWord::new(g, steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn visit_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Visit(_))).count()
    }

    pub fn rotate(&self, k: usize) -> PathWord {
        let mut w = self.clone();
        if !w.steps.is_empty() {
            let k = k % w.steps.len();
            w.steps.rotate_left(k);
            w.turns.rotate_left(k);
        }
        w
    }

    /// The same curve run backwards.
    pub fn reversed(&self, g: &FatGraph) -> PathWord {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match *s {
                Step::Pass(t) => Step::Pass(Traversal { edge: t.edge, forward: !t.forward }),
                v => v,
            })
            .collect();
        PathWord::new(g, steps).expect("reverse of a valid word")
    }

    /// n-fold concatenation.
    pub fn repeat(&self, n: usize) -> PathWord {
        PathWord { steps: self.steps.repeat(n), turns: self.turns.repeat(n) }
    }

    /// Factors in written order, leftmost first.
    pub fn factors(&self) -> Vec<Factor> {
        let mut path = Vec::with_capacity(2 * self.steps.len());
        for (s, t) in self.steps.iter().zip(&self.turns) {
            path.push(match *s {
                Step::Pass(tr) => Factor::X(tr.edge, 1),
                Step::Visit(z) => Factor::X(z, 2),
            });
            path.push(match t {
                Turn::L => Factor::L,
                Turn::R => Factor::R,
            });
        }
        path.reverse();
        path
    }

    /// Comma-separated `edge:dir:turn` steps; a visit is written as the
    /// inbound half with turn `!` followed by the outbound half.
    pub fn parse(g: &FatGraph, text: &str) -> Result<PathWord> {
        let mut toks = Vec::new();
        for raw in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let f: Vec<&str> = raw.split(':').collect();
            if f.len() != 3 {
                return Err(Error::Word(format!("step '{}' is not edge:dir:turn", raw)));
            }
            let e = g.var(f[0]).ok_or_else(|| Error::Word(format!("unknown edge '{}'", f[0])))?;
            let fwd = match f[1] {
                "+" => true,
                "-" => false,
                d => return Err(Error::Word(format!("bad direction '{}'", d))),
            };
            let turn = match f[2] {
                "L" => Some(Turn::L),
                "R" => Some(Turn::R),
                "!" => None,
                t => return Err(Error::Word(format!("bad turn '{}'", t))),
            };
            toks.push((e, fwd, turn));
        }
        if toks.last().is_some_and(|t| t.2.is_none()) {
            toks.rotate_right(1);
        }
        let mut steps = Vec::new();
        let mut given = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            let (e, fwd, turn) = toks[i];
            match turn {
                None => {
                    let next = toks.get(i + 1).filter(|n| n.0 == e && n.2.is_some());
                    let Some(&(_, _, t)) = next else {
                        return Err(Error::Word(format!("'{}:!' must be followed by a step on {}", g.name(e), g.name(e))));
                    };
                    if !g.is_pending(e) {
                        return Err(Error::Word(format!("{} is not pending", g.name(e))));
                    }
                    steps.push(Step::Visit(e));
                    given.push(t.unwrap());
                    i += 2;
                }
                Some(t) => {
                    if g.is_pending(e) {
                        return Err(Error::Word(format!("{} is pending and needs a '!' arrival", g.name(e))));
                    }
                    steps.push(Step::Pass(Traversal { edge: e, forward: fwd }));
                    given.push(t);
                    i += 1;
                }
            }
        }
        let w = PathWord::new(g, steps)?;
        if let Some(k) = (0..w.len()).find(|&k| w.turns[k] != given[k]) {
            return Err(Error::Word(format!("turn after step {} must be {}", k, w.turns[k].letter())));
        }
        Ok(w)
    }

    pub fn to_text(&self, g: &FatGraph) -> String {
        let mut parts = Vec::new();
        for (s, t) in self.steps.iter().zip(&self.turns) {
            match *s {
                Step::Pass(tr) => parts.push(format!("{}:{}:{}", g.name(tr.edge), if tr.forward { '+' } else { '-' }, t.letter())),
                Step::Visit(z) => {
                    parts.push(format!("{}:+:!", g.name(z)));
                    parts.push(format!("{}:-:{}", g.name(z), t.letter()));
                }
            }
        }
        parts.join(",")
    }

    /// Path darts with each visit expanded into its inbound and outbound halves.
    pub fn darts(&self) -> Vec<Traversal> {
        let mut out = Vec::new();
        for s in &self.steps {
            match *s {
                Step::Pass(t) => out.push(t),
                Step::Visit(z) => {
                    out.push(Traversal { edge: z, forward: true });
                    out.push(Traversal { edge: z, forward: false });
                }
            }
        }
        out
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::X(v, k) => write!(f, "X[{}*x{}]", k, v.0),
            Factor::L => write!(f, "L"),
            Factor::R => write!(f, "R"),
            Factor::F => write!(f, "F"),
        }
    }
}

fn factor_matrix<T: RingElem>(f: Factor, one: &T, exp: &dyn Fn(ExpVector) -> T) -> Mat2<T> {
    match f {
        Factor::L => Mat2::int(one, 0, 1, -1, -1),
        Factor::R => Mat2::int(one, 1, 1, -1, 0),
        Factor::F => Mat2::int(one, 0, 1, -1, 0),
        Factor::X(v, k) => {
            let up = ExpVector::unit(v, HalfInt::from_twice(k));
            Mat2::new(one.zero_like(), exp(up.clone()).negate(), exp(up.neg()), one.zero_like())
        }
    }
}

fn product<T: RingElem>(factors: &[Factor], one: &T, exp: &dyn Fn(ExpVector) -> T) -> Mat2<T> {
    factors.iter().fold(Mat2::identity(one), |acc, &f| acc.mul(&factor_matrix(f, one, exp)))
}

pub fn holonomy_matrix_factors(factors: &[Factor]) -> Mat2<LaurentElem> {
    product(factors, &LaurentElem::one(), &LaurentElem::exp)
}

pub fn trace_factors(factors: &[Factor]) -> LaurentElem {
    holonomy_matrix_factors(factors).trace()
}

pub fn holonomy_matrix(w: &PathWord) -> Mat2<LaurentElem> {
    holonomy_matrix_factors(&w.factors())
}

/// G_γ as an exact Laurent polynomial.
pub fn holonomy_trace(w: &PathWord) -> LaurentElem {
    trace_factors(&w.factors())
}

pub fn numeric_matrix(factors: &[Factor], at: &dyn Fn(Var) -> f64) -> Mat2<f64> {
    product(factors, &1.0, &|u: ExpVector| u.entries().iter().map(|&(v, e)| e.to_f64() * at(v)).sum::<f64>().exp())
}

/// Trace of the numerically multiplied matrices.
pub fn numeric_trace(w: &PathWord, at: &HashMap<Var, f64>) -> Result<f64> {
    let f = w.factors();
    for x in &f {
        if let Factor::X(v, _) = x {
            if !at.contains_key(v) {
                return Err(Error::Assignment(format!("x{}", v.0)));
            }
        }
    }
    Ok(numeric_matrix(&f, &|v| at[&v]).trace())
}

/// Product of the torus-valued matrices in written order, traced, with each
/// monomial class recentred so that its q-coefficient is symmetric.
pub fn quantum_trace_factors(factors: &[Factor], ctx: &Arc<PoissonMatrix>) -> Result<TorusElem> {
    let one = TorusElem::one(ctx);
    let m = product(factors, &one, &|u| TorusElem::weyl(ctx, u));
    m.trace().center_classes()
}

pub fn quantum_trace(w: &PathWord, ctx: &Arc<PoissonMatrix>) -> Result<TorusElem> {
    quantum_trace_factors(&w.factors(), ctx)
}

/// 2T_n(G/2) through t_k = G t_{k−1} − t_{k−2}.
pub fn chebyshev_trace<T: RingElem>(g: &T, n: u32) -> T {
    let mut prev = g.from_i64_like(2);
    let mut cur = g.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = g.times(&cur).plus(&prev.negate());
        prev = cur;
        cur = next;
    }
    cur
}

/// Trace of the n-fold concatenation.
pub fn power_trace(w: &PathWord, n: i64) -> Result<LaurentElem> {
    if n < 1 {
        return Err(Error::Argument(format!("power must be at least 1, got {}", n)));
    }
    Ok(holonomy_trace(&w.repeat(n as usize)))
}

/// Length ℓ with G = 2cosh(ℓ/2).
pub fn proper_length(value: f64) -> Result<f64> {
    if value.is_nan() || value < 2.0 {
        return Err(Error::NonHyperbolic(value));
    }
    Ok(2.0 * (value / 2.0).acosh())
}

/// Random closed word of at most `max_len` steps, or `None` after `tries`
/// failed attempts.
pub fn random_closed_word(g: &FatGraph, rng: &mut impl Rng, max_len: usize, tries: usize) -> Option<PathWord> {
    for _ in 0..tries {
        let start = (rng.gen_range(0..g.n_vertices()), rng.gen_range(0..3u8));
        let mut state = start;
        let mut steps = Vec::new();
        while steps.len() < max_len {
            let d = (state.1 + rng.gen_range(1..3u8)) % 3;
            let t = g.leave(state.0, d);
            if g.is_pending(t.edge) {
                steps.push(Step::Visit(t.edge));
                state = (state.0, d);
            } else {
                steps.push(Step::Pass(t));
                state = g.arrival(t).unwrap();
            }
            if state == start {
                if let Ok(w) = PathWord::new(g, steps.clone()) {
                    return Some(w);
                }
                break;
            }
        }
    }
    None
}

/// Uniform coordinates in [-r, r] for every edge.
pub fn random_assignment(g: &FatGraph, rng: &mut impl Rng, r: f64) -> HashMap<Var, f64> {
    g.vars().map(|v| (v, rng.gen_range(-r..=r))).collect()
}
