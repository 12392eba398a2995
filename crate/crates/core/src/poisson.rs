//! The Weil–Petersson bracket on shear coordinates and its extension to
//! Laurent polynomials.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fatgraph::FatGraph;
use crate::ring::{ExpVector, LaurentElem, Var};

/// Antisymmetric integer pairing {Z_a, Z_b} on the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonMatrix {
    names: Vec<String>,
    data: Vec<i64>,
}

impl PoissonMatrix {
    pub fn zero(names: Vec<String>) -> Self {
        let n = names.len();
        PoissonMatrix { names, data: vec![0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.idx()]
    }

    pub fn get(&self, a: Var, b: Var) -> i64 {
        self.data[a.idx() * self.dim() + b.idx()]
    }

    /// {a, b} += k and {b, a} −= k.
    pub fn add_pair(&mut self, a: Var, b: Var, k: i64) {
        let n = self.dim();
        self.data[a.idx() * n + b.idx()] += k;
        self.data[b.idx() * n + a.idx()] -= k;
    }

    /// 4ω(u, v) for exponent vectors given in half-units.
    pub fn omega4(&self, u: &ExpVector, v: &ExpVector) -> i64 {
        let n = self.dim();
        let mut s = 0i64;
        for &(a, x) in u.entries() {
            let row = &self.data[a.idx() * n..(a.idx() + 1) * n];
            for &(b, y) in v.entries() {
                let p = row[b.idx()];
                if p != 0 {
                    s += p * x.twice() * y.twice();
                }
            }
        }
        s
    }

    /// Image of an exponent vector: (P·u)_a = Σ_b {Z_a, Z_b} u_b, in half-units.
    pub fn apply(&self, u: &ExpVector) -> Vec<i64> {
        let n = self.dim();
        (0..n).map(|a| u.entries().iter().map(|&(b, y)| self.data[a * n + b.idx()] * y.twice()).sum()).collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| self.data[a * n + b] == -self.data[b * n + a]))
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.rows())
    }

    pub fn corank(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim().max(1)).map(|r| r.to_vec()).collect()
    }
}

/// Rank over ℚ by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sum over trivalent vertices of the cyclic pairs of incident edges.
pub fn wp_matrix(g: &FatGraph) -> PoissonMatrix {
    let mut p = PoissonMatrix::zero(g.names());
    for v in 0..g.n_vertices() {
        for s in 0..3u8 {
            let (a, _) = g.at(v, s);
            let (b, _) = g.at(v, (s + 1) % 3);
            p.add_pair(a, b, 1);
        }
    }
    p
}

/// Four times the bracket; always integral.
pub fn bracket4(f: &LaurentElem, g: &LaurentElem, pm: &PoissonMatrix) -> LaurentElem {
    let mut r = LaurentElem::zero();
    for (u, c) in f.terms() {
        for (v, d) in g.terms() {
            let w = pm.omega4(u, v);
            if w != 0 {
                r.add_term(u.add(v), c * d * w);
            }
        }
    }
    r
}

/// {f, g}, extended bilinearly from {e^u, e^v} = ω(u,v) e^{u+v}.
pub fn bracket(f: &LaurentElem, g: &LaurentElem, pm: &PoissonMatrix) -> Result<LaurentElem> {
    let b4 = bracket4(f, g, pm);
    b4.div_exact(4).ok_or_else(|| Error::NonIntegral(b4.render(&|v| pm.name(v).to_string())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirReport {
    pub face_sums: Vec<ExpVector>,
    pub faces_central: bool,
    pub kernel_dim: usize,
    pub faces_rank: usize,
    pub holes: usize,
}

impl CasimirReport {
    pub fn ok(&self) -> bool {
        self.faces_central && self.kernel_dim == self.holes && self.faces_rank == self.holes
    }
}

/// Checks that face sums are central and span the whole kernel.
pub fn casimir_check(g: &FatGraph) -> CasimirReport {
    let pm = wp_matrix(g);
    let faces = g.trace_faces();
    let face_sums: Vec<ExpVector> = faces.iter().map(|f| f.sum()).collect();
    let faces_central = face_sums.iter().all(|u| pm.apply(u).iter().all(|x| *x == 0));
    let n = g.n_edges();
    let face_rows: Vec<Vec<i64>> = face_sums
        .iter()
        .map(|u| (0..n).map(|i| u.get(Var(i as u32)).twice()).collect())
        .collect();
    CasimirReport {
        faces_central,
        kernel_dim: pm.corank(),
        faces_rank: rational_rank(&face_rows),
        holes: faces.len(),
        face_sums,
    }
}

/// Largest absolute entry; the pairing takes only the values 0, ±1, ±2.
pub fn max_entry(pm: &PoissonMatrix) -> i64 {
    pm.data.iter().map(|x| x.abs()).max().unwrap_or(0)
}
