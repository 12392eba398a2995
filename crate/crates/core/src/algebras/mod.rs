//! Generator systems of the A_n and D_n algebras, braid-group actions on
//! them and their matrix invariants.
//!
//! Indices are 1-based throughout. In the quantum regime the diagonal of
//! the A_n matrix is q⁻¹ and the braid blocks are (qG, −q²; 1, 0): this is
//! the orientation fixed by the A₃ product rule of the torus.

mod braid;
mod invariants;
mod relations;

pub use braid::{
    b_matrix, braid_coordinates, braid_generators, braid_generators_alt, braid_inverse, braid_relation_sides,
    chain, chain_power, conjugate, d_second_relation_witness, BraidWitness,
};
pub use invariants::{
    determinant, invariant_matrices, p_action, pfaffian, r_matrix, s_matrix, s_rank_one, shift_matrices, Invariants,
};
pub use relations::{
    a_classical_relations, cyclically_descending, d2_central_elements, verify_braid, verify_invariants,
    verify_quantum_relations, CheckLine, RelationCase, Report,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, StandardKind, Traversal};
use crate::geodesic::{holonomy_trace, quantum_trace, PathWord, Step};
use crate::poisson::{wp_matrix, PoissonMatrix};
use crate::ring::{LaurentElem, RingElem, TorusElem, Var};

/// Ring elements that know about q and Hermitian conjugation. On
/// commutative rings both act trivially.
pub trait QRing: RingElem {
    /// Multiplication by q^k.
    fn qmul(&self, k: i64) -> Self;
    fn dagger(&self) -> Self;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
}

impl QRing for f64 {
    fn qmul(&self, _: i64) -> f64 {
        *self
    }
    fn dagger(&self) -> f64 {
        *self
    }
}

impl QRing for LaurentElem {
    fn qmul(&self, _: i64) -> Self {
        self.clone()
    }
    fn dagger(&self) -> Self {
        self.clone()
    }
}

impl QRing for TorusElem {
    fn qmul(&self, k: i64) -> Self {
        self.qshift(k)
    }
    fn dagger(&self) -> Self {
        self.hermitian_conjugate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    A,
    D,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::A => "A",
            AlgebraKind::D => "D",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Classical,
    Quantum,
}

/// Square matrix with 1-based accessors.
#[derive(Clone, Debug, PartialEq)]
pub struct SqMat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: QRing> SqMat<T> {
    pub fn filled(n: usize, x: &T) -> Self {
        SqMat { n, data: vec![x.clone(); n * n] }
    }

    pub fn identity(n: usize, one: &T) -> Self {
        let mut m = SqMat::filled(n, &one.zero_like());
        for i in 1..=n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        SqMat { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self, i: usize, j: usize) -> &T {
        &self.data[(i - 1) * self.n + j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[(i - 1) * self.n + j - 1] = x;
    }

    pub fn mul(&self, o: &SqMat<T>) -> SqMat<T> {
        let zero = self.data[0].zero_like();
        SqMat::from_fn(self.n, |i, j| {
            (1..=self.n).fold(zero.clone(), |acc, k| acc.plus(&self.g(i, k).times(o.g(k, j))))
        })
    }

    pub fn transpose(&self) -> SqMat<T> {
        SqMat::from_fn(self.n, |i, j| self.g(j, i).clone())
    }

    /// Transpose with every entry conjugated.
    pub fn dagger(&self) -> SqMat<T> {
        SqMat::from_fn(self.n, |i, j| self.g(j, i).dagger())
    }

    pub fn plus(&self, o: &SqMat<T>) -> SqMat<T> {
        SqMat::from_fn(self.n, |i, j| self.g(i, j).plus(o.g(i, j)))
    }

    pub fn minus(&self, o: &SqMat<T>) -> SqMat<T> {
        SqMat::from_fn(self.n, |i, j| self.g(i, j).minus(o.g(i, j)))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> SqMat<U> {
        SqMat { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, x)| ((k / n + 1, k % n + 1), x))
    }
}

impl SqMat<f64> {
    /// Largest entrywise difference relative to the larger entry (floored at 1).
    pub fn rel_diff(&self, o: &SqMat<f64>) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max)
    }
}

/// The generators G_ij as a matrix: upper triangular for A_n, full for D_n.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix<T> {
    pub kind: AlgebraKind,
    pub m: SqMat<T>,
}

impl<T: QRing> GeneratorMatrix<T> {
    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn g(&self, i: usize, j: usize) -> &T {
        self.m.g(i, j)
    }

    pub fn map<U: QRing>(&self, f: impl Fn(&T) -> U) -> GeneratorMatrix<U> {
        GeneratorMatrix { kind: self.kind, m: self.m.map(f) }
    }

    /// The entries that are generators, in row-major order.
    pub fn generator_indices(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if self.kind == AlgebraKind::D || i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn check_size(kind: AlgebraKind, n: usize) -> Result<()> {
    let ok = match kind {
        AlgebraKind::A => (3..=8).contains(&n),
        AlgebraKind::D => (2..=6).contains(&n),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Argument(format!("{}_{} is not supported", kind, n)))
    }
}

/// Vertex of the A_n chain carrying Z_i.
fn chain_vertex(n: usize, i: usize) -> usize {
    (i.saturating_sub(1)).clamp(1, n - 2)
}

fn pass(g: &FatGraph, name: &str, forward: bool) -> Result<Step> {
    Ok(Step::Pass(Traversal { edge: g.var_or_err(name)?, forward }))
}

/// Word of G_ij (i < j) on the A_n chain: out to Z_j along the chain and back.
fn a_word(g: &FatGraph, n: usize, i: usize, j: usize) -> Result<PathWord> {
    let (a, b) = (chain_vertex(n, i), chain_vertex(n, j));
    let mut steps = vec![Step::Visit(g.var_or_err(&format!("Z{}", i))?)];
    for k in a + 1..=b {
        steps.push(pass(g, &format!("Y{}", k), true)?);
    }
    steps.push(Step::Visit(g.var_or_err(&format!("Z{}", j))?));
    for k in (a + 1..=b).rev() {
        steps.push(pass(g, &format!("Y{}", k), false)?);
    }
    PathWord::new(g, steps)
}

/// Word of G_ij on the D_n ring. Off the diagonal it runs forward from
/// window i to window j and comes back; G_ii winds once around the hole.
fn d_word(g: &FatGraph, n: usize, i: usize, j: usize) -> Result<PathWord> {
    let mut ring = Vec::new();
    let mut k = i;
    loop {
        ring.push(format!("Y{}", k));
        k = k % n + 1;
        if k == j {
            break;
        }
    }
    let mut steps = vec![Step::Visit(g.var_or_err(&format!("Z{}", i))?)];
    for y in &ring {
        steps.push(pass(g, y, true)?);
    }
    if i != j {
        steps.push(Step::Visit(g.var_or_err(&format!("Z{}", j))?));
        for y in ring.iter().rev() {
            steps.push(pass(g, y, false)?);
        }
    }
    PathWord::new(g, steps)
}

/// The standard graph of an algebra together with the words of its generators.
#[derive(Clone, Debug)]
pub struct GeneratorSystem {
    pub kind: AlgebraKind,
    pub n: usize,
    pub graph: FatGraph,
    pub words: BTreeMap<(usize, usize), PathWord>,
    ctx: Arc<PoissonMatrix>,
}

impl GeneratorSystem {
    pub fn new(kind: AlgebraKind, n: usize) -> Result<Self> {
        check_size(kind, n)?;
        let graph = FatGraph::standard(
            match kind {
                AlgebraKind::A => StandardKind::A,
                AlgebraKind::D => StandardKind::D,
            },
            n,
        )?;
        let mut words = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                match kind {
                    AlgebraKind::A if i < j => {
                        words.insert((i, j), a_word(&graph, n, i, j)?);
                    }
                    AlgebraKind::D => {
                        words.insert((i, j), d_word(&graph, n, i, j)?);
                    }
                    _ => {}
                }
            }
        }
        let ctx = Arc::new(wp_matrix(&graph));
        Ok(GeneratorSystem { kind, n, graph, words, ctx })
    }

    pub fn ctx(&self) -> &Arc<PoissonMatrix> {
        &self.ctx
    }

    fn assemble<T: QRing>(&self, zero: T, diag: T, entry: impl Fn(&PathWord) -> Result<T>) -> Result<GeneratorMatrix<T>> {
        let mut m = SqMat::filled(self.n, &zero);
        if self.kind == AlgebraKind::A {
            for i in 1..=self.n {
                m.set(i, i, diag.clone());
            }
        }
        for (&(i, j), w) in &self.words {
            m.set(i, j, entry(w)?);
        }
        Ok(GeneratorMatrix { kind: self.kind, m })
    }

    pub fn classical(&self) -> GeneratorMatrix<LaurentElem> {
        self.assemble(LaurentElem::zero(), LaurentElem::one(), |w| Ok(holonomy_trace(w)))
            .expect("classical traces always exist")
    }

    pub fn quantum(&self) -> Result<GeneratorMatrix<TorusElem>> {
        let one = TorusElem::one(&self.ctx);
        self.assemble(TorusElem::zero(&self.ctx), one.qmul(-1), |w| quantum_trace(w, &self.ctx))
    }

    pub fn numeric(&self, at: &HashMap<Var, f64>) -> Result<GeneratorMatrix<f64>> {
        let c = self.classical();
        let mut m = SqMat::filled(self.n, &0.0);
        for ((i, j), x) in c.m.entries() {
            m.set(i, j, x.evaluate(at)?);
        }
        Ok(GeneratorMatrix { kind: self.kind, m })
    }
}

/// Classical generator matrix of the standard A_n or D_n graph.
pub fn build_generators(kind: AlgebraKind, n: usize) -> Result<GeneratorMatrix<LaurentElem>> {
    Ok(GeneratorSystem::new(kind, n)?.classical())
}
