use std::fmt;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    b_matrix, braid_coordinates, braid_generators, braid_generators_alt, braid_inverse, braid_relation_sides,
    chain_power, conjugate, d_second_relation_witness, determinant, invariant_matrices, p_action, r_matrix,
    s_rank_one, shift_matrices, AlgebraKind, GeneratorMatrix, GeneratorSystem, QRing, Regime,
};
use crate::error::Result;
use crate::geodesic::random_assignment;
use crate::poisson::bracket;
use crate::ring::{LaurentElem, RingElem, TorusElem, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.name, if self.pass { "PASS" } else { "FAIL" })?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), pass, detail: detail.into() });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{}", l)?;
        }
        Ok(())
    }
}

fn comm(a: &TorusElem, b: &TorusElem) -> TorusElem {
    a.times(b).minus(&b.times(a))
}

/// q·ab − q⁻¹·ba.
fn qcomm(a: &TorusElem, b: &TorusElem) -> TorusElem {
    a.times(b).qmul(1).minus(&b.times(a).qmul(-1))
}

fn xi(x: &TorusElem) -> TorusElem {
    x.qmul(2).minus(&x.qmul(-2))
}

/// (q + q⁻¹)·x
fn qsum(x: &TorusElem) -> TorusElem {
    x.qmul(1).plus(&x.qmul(-1))
}

/// (q − q⁻¹)·x
fn qdiff(x: &TorusElem) -> TorusElem {
    x.qmul(1).minus(&x.qmul(-1))
}

/// The intersection patterns of two D_n generators. Each case is stated on
/// letters listed in alphabetical order; it applies when the assigned
/// indices descend cyclically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationCase {
    A,
    B,
    /// Case (b) with the right-hand side that holds in the ring representation.
    BCorrected,
    C,
    D,
    E,
    F,
    G1,
    G2,
    H,
}

impl RelationCase {
    pub const ALL: [RelationCase; 10] = [
        RelationCase::A,
        RelationCase::B,
        RelationCase::BCorrected,
        RelationCase::C,
        RelationCase::D,
        RelationCase::E,
        RelationCase::F,
        RelationCase::G1,
        RelationCase::G2,
        RelationCase::H,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RelationCase::A => "a",
            RelationCase::B => "b",
            RelationCase::BCorrected => "b-corrected",
            RelationCase::C => "c",
            RelationCase::D => "d",
            RelationCase::E => "e",
            RelationCase::F => "f",
            RelationCase::G1 => "g1",
            RelationCase::G2 => "g2",
            RelationCase::H => "h",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RelationCase::A | RelationCase::C => 4,
            RelationCase::B | RelationCase::BCorrected | RelationCase::D | RelationCase::F => 3,
            _ => 2,
        }
    }

    /// Left side minus right side at the index tuple `t`.
    pub fn residual(self, m: &GeneratorMatrix<TorusElem>, t: &[usize]) -> TorusElem {
        let g = |a: usize, b: usize| m.g(t[a], t[b]).clone();
        let (p, r, s, u) = (0, 1, 2, 3);
        match self {
            RelationCase::A => {
                // letters i j k l
                let inner = g(s, r)
                    .times(&g(u, p))
                    .minus(&g(r, s).times(&g(p, u)))
                    .plus(&g(r, u).times(&g(p, s)))
                    .minus(&g(u, r).times(&g(s, p)))
                    .plus(&qsum(&g(p, u).times(&g(r, r)).times(&g(s, s)).minus(&g(s, r).times(&g(u, u)).times(&g(p, p)))));
                comm(&g(p, r), &g(s, u)).minus(&xi(&inner))
            }
            RelationCase::B => {
                // letters i j l
                let lhs = qcomm(&g(r, s), &g(p, r));
                let inner = g(p, s).from_i64_like(2).times(&g(p, s)).minus(&g(s, p)).minus(&g(p, s).times(&g(r, r)).times(&g(r, r)));
                let rhs = xi(&inner).plus(&xi(&qsum(&g(p, p).times(&g(s, s))))).plus(&qdiff(&g(s, r).times(&g(r, p))));
                lhs.minus(&rhs)
            }
            RelationCase::BCorrected => {
                let lhs = qcomm(&g(r, s), &g(p, r));
                let rhs = xi(&g(p, s).times(&g(r, r)).times(&g(r, r))).negate()
                    .plus(&xi(&g(p, p).times(&g(s, s)).qmul(-1).plus(&g(s, s).times(&g(p, p)).qmul(1))))
                    .plus(&qcomm(&g(s, r), &g(r, p)));
                lhs.minus(&rhs)
            }
            RelationCase::C => {
                // letters i j k l
                let inner = g(r, s).times(&g(p, u)).minus(&g(r, p).times(&g(u, s)));
                comm(&g(p, s), &g(r, u)).minus(&xi(&inner))
            }
            // letters j k l
            RelationCase::D => qcomm(&g(p, s), &g(r, p)).minus(&xi(&g(r, s))),
            RelationCase::E => {
                // letters j l
                let inner = g(r, r).times(&g(r, r)).minus(&g(p, p).times(&g(p, p)));
                comm(&g(p, r), &g(r, p)).minus(&xi(&inner))
            }
            RelationCase::F => {
                // letters i j l
                let inner = g(r, p).times(&g(s, s)).minus(&g(p, s).times(&g(r, r)));
                comm(&g(r, s), &g(p, p)).minus(&xi(&inner))
            }
            // letters j k
            RelationCase::G1 => qcomm(&g(p, p), &g(r, p)).minus(&xi(&g(r, r))),
            RelationCase::G2 => qcomm(&g(p, r), &g(p, p)).minus(&xi(&g(r, r))),
            // letters i k
            RelationCase::H => comm(&g(p, p), &g(r, r)).minus(&qdiff(&g(p, r).minus(&g(r, p)))),
        }
    }
}

/// Distinct tuples whose entries descend cyclically, i.e. rise exactly once
/// around the cycle.
pub fn cyclically_descending(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let rises = (0..k).filter(|&p| cur[p] < cur[(p + 1) % k]).count();
            if rises == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 1..=n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn fmt_tuple(t: &[usize]) -> String {
    t.iter().map(|x| x.to_string()).collect()
}

fn d_relations(m: &GeneratorMatrix<TorusElem>, jacobi: bool, rep: &mut Report) {
    let n = m.n();
    for case in RelationCase::ALL {
        let tuples = cyclically_descending(n, case.arity());
        if tuples.is_empty() {
            continue;
        }
        let bad: Vec<String> = tuples.iter().filter(|t| !case.residual(m, t).is_zero()).map(|t| fmt_tuple(t)).collect();
        let detail = if bad.is_empty() {
            format!("{} index tuples, holds in representation", tuples.len())
        } else {
            format!("fails at {} of {} tuples, first {}", bad.len(), tuples.len(), bad[0])
        };
        rep.push(format!("D{}-case-{}", n, case.label()), bad.is_empty(), detail);
    }
    if jacobi {
        let idx = m.generator_indices();
        let mut count = 0;
        let mut bad = None;
        for x in 0..idx.len() {
            for y in x + 1..idx.len() {
                let ab = comm(m.g(idx[x].0, idx[x].1), m.g(idx[y].0, idx[y].1));
                for z in y + 1..idx.len() {
                    let (a, b, c) = (m.g(idx[x].0, idx[x].1), m.g(idx[y].0, idx[y].1), m.g(idx[z].0, idx[z].1));
                    let j = comm(&ab, c).plus(&comm(&comm(b, c), a)).plus(&comm(&comm(c, a), b));
                    count += 1;
                    if !j.is_zero() && bad.is_none() {
                        bad = Some((idx[x], idx[y], idx[z]));
                    }
                }
            }
        }
        let detail = match bad {
            None => format!("{} generator triples", count),
            Some(t) => format!("fails at {:?}", t),
        };
        rep.push(format!("D{}-jacobi", n), bad.is_none(), detail);
    }
}

fn a_relations(m: &GeneratorMatrix<TorusElem>, rep: &mut Report) {
    let n = m.n();
    let g = |a: usize, b: usize| m.g(a, b);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let rels = [
                    ("jk,ij", qcomm(g(j, k), g(i, j)).minus(&xi(g(i, k)))),
                    ("ik,jk", qcomm(g(i, k), g(j, k)).minus(&xi(g(i, j)))),
                    ("ij,ik", qcomm(g(i, j), g(i, k)).minus(&xi(g(j, k)))),
                ];
                for (name, r) in rels {
                    rep.push(format!("A{}-q2comm-{}{}{}-{}", n, i, j, k, name), r.is_zero(), "");
                }
            }
        }
    }
    // disjoint and nested pairs commute
    let mut count = 0;
    let mut bad = None;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    for (a, b) in [((i, j), (k, l)), ((i, l), (j, k))] {
                        count += 1;
                        if !comm(g(a.0, a.1), g(b.0, b.1)).is_zero() && bad.is_none() {
                            bad = Some((a, b));
                        }
                    }
                }
            }
        }
    }
    if count > 0 {
        let detail = match bad {
            None => format!("{} pairs", count),
            Some(p) => format!("fails at {:?}", p),
        };
        rep.push(format!("A{}-commuting-pairs", n), bad.is_none(), detail);
    }
}

/// Checks the quantum relations of A_n or D_n as exact identities in the
/// torus representation of the standard graph. The Jacobi check runs for
/// D_n with n ≤ `jacobi_bound`.
pub fn verify_quantum_relations(kind: AlgebraKind, n: usize, jacobi_bound: usize) -> Result<Report> {
    let sys = GeneratorSystem::new(kind, n)?;
    let m = sys.quantum()?;
    let mut rep = Report::default();
    match kind {
        AlgebraKind::A => a_relations(&m, &mut rep),
        AlgebraKind::D => d_relations(&m, n <= jacobi_bound, &mut rep),
    }
    Ok(rep)
}

/// The two central elements of D₂, classical and quantum, each checked to
/// commute with all four generators.
pub fn d2_central_elements() -> Result<Report> {
    let sys = GeneratorSystem::new(AlgebraKind::D, 2)?;
    let mut rep = Report::default();
    let c = sys.classical();
    let g = |a: usize, b: usize| c.g(a, b);
    let c1 = &(&(g(1, 1) * g(2, 2)) - g(1, 2)) - g(2, 1);
    let c2 = &(&(g(1, 2) * g(2, 1)) - &g(2, 2).pow(2)) - &g(1, 1).pow(2);
    for (name, x) in [("D2-central-1-classical", &c1), ("D2-central-2-classical", &c2)] {
        let mut ok = true;
        for (i, j) in c.generator_indices() {
            ok &= bracket(x, g(i, j), sys.ctx())? == LaurentElem::zero();
        }
        rep.push(name, ok, "Poisson-commutes with G11 G12 G21 G22");
    }
    let q = sys.quantum()?;
    let g = |a: usize, b: usize| q.g(a, b);
    let c1 = g(1, 1).times(g(2, 2)).minus(&g(1, 2).qmul(1)).minus(&g(2, 1).qmul(-1));
    let c2 = g(1, 2)
        .times(g(2, 1))
        .minus(&g(2, 2).times(g(2, 2)).qmul(2))
        .minus(&g(1, 1).times(g(1, 1)).qmul(-2));
    for (name, x) in [("D2-central-1-quantum", &c1), ("D2-central-2-quantum", &c2)] {
        let ok = q.generator_indices().iter().all(|&(i, j)| comm(x, g(i, j)).is_zero());
        rep.push(name, ok, "commutes with G11 G12 G21 G22");
    }
    Ok(rep)
}

/// Classical bracket relations of A_n computed with the Poisson bracket of
/// the shear coordinates: the three-window relations on every triple and
/// the crossing relation on every quadruple.
pub fn a_classical_relations(n: usize) -> Result<Report> {
    let sys = GeneratorSystem::new(AlgebraKind::A, n)?;
    let c = sys.classical();
    let g = |a: usize, b: usize| c.g(a, b);
    let br = |x: (usize, usize), y: (usize, usize)| bracket(g(x.0, x.1), g(y.0, y.1), sys.ctx());
    let mut rep = Report::default();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for (x, y, z) in [((i, j), (j, k), (i, k)), ((j, k), (i, k), (i, j)), ((i, k), (i, j), (j, k))] {
                    let rhs = &(g(x.0, x.1) * g(y.0, y.1)) - &g(z.0, z.1).scale_i(2);
                    rep.push(format!("A{}-bracket-G{}{}-G{}{}", n, x.0, x.1, y.0, y.1), br(x, y)? == rhs, "");
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let rhs = (&(g(i, j) * g(k, l)) - &(g(i, l) * g(j, k))).scale_i(2);
                    rep.push(format!("A{}-bracket-G{}{}-G{}{}", n, i, k, j, l), br((i, k), (j, l))? == rhs, "");
                }
            }
        }
    }
    Ok(rep)
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn point_text(g: &crate::fatgraph::FatGraph, at: &HashMap<Var, f64>) -> String {
    let mut v: Vec<(String, f64)> = at.iter().map(|(k, x)| (g.name(*k).to_string(), *x)).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v.iter().map(|(k, x)| format!("{}={:.6}", k, x)).collect::<Vec<_>>().join(",")
}

fn exact_braid<T: QRing + PartialEq>(m: &GeneratorMatrix<T>, tag: &str, quantum: bool, rep: &mut Report) -> Result<()> {
    let n = m.n();
    for i in 2..n {
        let (l, r) = braid_relation_sides(i, m)?;
        rep.push(format!("{}-braid-relation-{}", tag, i), l == r, format!("R{0}{1}R{1}{2}R{0}{1} = R{1}{2}R{0}{1}R{1}{2}", i - 1, i, i + 1));
    }
    for i in 1..n {
        let t = braid_generators(i, m)?;
        rep.push(format!("{}-inverse-{}", tag, i), braid_inverse(i, &t)? == *m, "inverse of R undoes R");
        if quantum {
            rep.push(format!("{}-orderings-{}", tag, i), braid_generators_alt(i, m)? == t, "both operator orderings agree");
        }
        if m.kind == AlgebraKind::A {
            let b = b_matrix(i, m)?;
            rep.push(format!("{}-b-conjugation-{}", tag, i), conjugate(&b, &m.m) == t.m, "R acts as B A B-dagger");
        }
    }
    if m.kind == AlgebraKind::A {
        rep.push(format!("{}-second-relation", tag), chain_power(m, n)? == *m, "(R(n-1,n)...R(1,2))^n = Id");
    }
    Ok(())
}

/// Braid-group checks for A_n or D_n. Exact identities are checked up to
/// size 4 (5 for classical A_n); seeded numeric checks run at `samples`
/// random points in the classical regime.
pub fn verify_braid(kind: AlgebraKind, n: usize, regime: Regime, samples: usize, seed: u64, tol: f64) -> Result<Report> {
    let sys = GeneratorSystem::new(kind, n)?;
    if n < 3 && kind == AlgebraKind::D {
        return Err(crate::error::Error::Argument("braid checks need n >= 3".into()));
    }
    let mut rep = Report::default();
    let tag = format!("{}{}-{}", kind, n, if regime == Regime::Quantum { "quantum" } else { "classical" });
    match regime {
        Regime::Quantum if n <= 4 => exact_braid(&sys.quantum()?, &tag, true, &mut rep)?,
        Regime::Classical if n <= 4 || (kind == AlgebraKind::A && n <= 5) => exact_braid(&sys.classical(), &tag, false, &mut rep)?,
        _ => {}
    }
    if regime == Regime::Classical || n > 4 {
        let mut rng = seeded(seed);
        let mut worst = (0.0f64, String::new(), String::new());
        let mut note = |d: f64, what: &str, at: &HashMap<Var, f64>| {
            if d > worst.0 {
                worst = (d, what.to_string(), point_text(&sys.graph, at));
            }
        };
        for _ in 0..samples {
            let at = random_assignment(&sys.graph, &mut rng, 1.0);
            let m = sys.numeric(&at)?;
            for i in 2..n {
                let (l, r) = braid_relation_sides(i, &m)?;
                note(l.m.rel_diff(&r.m), &format!("braid relation at {}", i), &at);
            }
            if kind == AlgebraKind::A {
                note(chain_power(&m, n)?.m.rel_diff(&m.m), "second relation", &at);
                for i in 1..n {
                    let moved = sys.numeric(&braid_coordinates(&sys.graph, i, &at)?)?;
                    note(moved.m.rel_diff(&braid_generators(i, &m)?.m), &format!("coordinates vs generators at {}", i), &at);
                }
            }
        }
        let pass = worst.0 <= tol;
        let detail = if pass {
            format!("{} samples, max deviation {:.2e}", samples, worst.0)
        } else {
            format!("{} violated by {:.2e} at {}", worst.1, worst.0, worst.2)
        };
        rep.push(format!("{}{}-numeric", kind, n), pass, detail);
    }
    if kind == AlgebraKind::D {
        let w = d_second_relation_witness(n, seed, samples.max(1), tol)?;
        let detail = match &w {
            Some(w) => format!(
                "(R(n-1,n)...R(1,2))^n moves G{}{} from {:.6} to {:.6} at {}",
                w.entry.0,
                w.entry.1,
                w.before,
                w.after,
                w.point.iter().map(|(k, x)| format!("{}={:.6}", k, x)).collect::<Vec<_>>().join(",")
            ),
            None => "no violation found".into(),
        };
        rep.push(format!("D{}-second-relation-lost", n), w.is_some(), detail);
    }
    Ok(rep)
}

/// Matrix invariants of D_n: ℛ and 𝒮 covariance under every braid step,
/// Pfaffian invariance for even n, rank one of 𝒮, and the cyclic relabeling.
pub fn verify_invariants(n: usize) -> Result<Report> {
    let sys = GeneratorSystem::new(AlgebraKind::D, n)?;
    let mut rep = Report::default();
    let m = sys.classical();
    let inv = invariant_matrices(&m)?;
    rep.push(format!("D{}-R-antisymmetric", n), inv.r.transpose() == inv.r.map(|x| -x), "");
    rep.push(format!("D{}-S-rank-one", n), s_rank_one(&inv.s), "S(i,j) = G(i,i)G(j,j)");
    rep.push(format!("D{}-det-S-zero", n), determinant(&inv.s).is_zero(), "");
    for i in 1..n {
        let t = braid_generators(i, &m)?;
        let b = b_matrix(i, &m)?;
        let moved = invariant_matrices(&t)?;
        rep.push(format!("D{}-R-covariant-{}", n, i), moved.r == conjugate(&b, &inv.r), "R(RD) = B R(D) B^T");
        rep.push(format!("D{}-S-covariant-{}", n, i), moved.s == conjugate(&b, &inv.s), "S(RD) = B S(D) B^T");
        if n % 2 == 0 {
            rep.push(format!("D{}-pfaffian-invariant-{}", n, i), moved.pfaffian == inv.pfaffian, "Pf R unchanged");
        }
    }
    if n <= 3 {
        let q = sys.quantum()?;
        let r = r_matrix(&q)?;
        for i in 1..n {
            let t = braid_generators(i, &q)?;
            let b = b_matrix(i, &q)?;
            rep.push(format!("D{}-quantum-R-covariant-{}", n, i), r_matrix(&t)? == conjugate(&b, &r), "R(RD) = B R(D) B-dagger");
        }
        let (s1, s2) = shift_matrices(n, &q.g(1, 1).one_like());
        rep.push(format!("D{}-quantum-cyclic-shift", n), r_matrix(&p_action(&q))? == s1.mul(&r).mul(&s2), "R(PD) = S1 R(D) S2");
    }
    if n == 2 {
        rep.lines.extend(d2_central_elements()?.lines);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descending_tuples() {
        assert_eq!(cyclically_descending(3, 2).len(), 6);
        let t = cyclically_descending(3, 3);
        assert_eq!(t, vec![vec![1, 3, 2], vec![2, 1, 3], vec![3, 2, 1]]);
        assert!(cyclically_descending(2, 3).is_empty());
    }

    #[test]
    fn a3_quantum() {
        let r = verify_quantum_relations(AlgebraKind::A, 3, 0).unwrap();
        assert_eq!(r.lines.len(), 3);
        assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn a4_quantum() {
        let r = verify_quantum_relations(AlgebraKind::A, 4, 0).unwrap();
        assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn d3_cases() {
        let r = verify_quantum_relations(AlgebraKind::D, 3, 3).unwrap();
        print!("{}", r);
        for c in ["d", "e", "g1", "g2", "h", "f", "b-corrected"] {
            assert!(r.get(&format!("D3-case-{}", c)).unwrap().pass, "{}", c);
        }
        assert!(!r.get("D3-case-b").unwrap().pass);
        assert!(r.get("D3-jacobi").unwrap().pass);
    }

    #[test]
    fn d4_cases() {
        let r = verify_quantum_relations(AlgebraKind::D, 4, 4).unwrap();
        print!("{}", r);
        for l in &r.lines {
            assert_eq!(l.pass, l.name != "D4-case-b", "{}", l);
        }
    }

    #[test]
    fn d2_centrals() {
        let r = d2_central_elements().unwrap();
        assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn braid_reports() {
        for (kind, n, regime) in [
            (AlgebraKind::A, 3, Regime::Quantum),
            (AlgebraKind::A, 4, Regime::Quantum),
            (AlgebraKind::A, 5, Regime::Classical),
            (AlgebraKind::A, 6, Regime::Classical),
            (AlgebraKind::D, 3, Regime::Quantum),
            (AlgebraKind::D, 3, Regime::Classical),
        ] {
            let r = verify_braid(kind, n, regime, 5, 7, 1e-9).unwrap();
            assert!(r.all_pass(), "{}", r);
        }
    }

    #[test]
    fn invariant_reports() {
        for n in [2, 3, 4] {
            let r = verify_invariants(n).unwrap();
            assert!(r.all_pass(), "{}", r);
        }
    }

    #[test]
    fn classical_a() {
        let r = a_classical_relations(3).unwrap();
        assert_eq!(r.lines.len(), 3);
        assert!(r.all_pass(), "{}", r);
        let r = a_classical_relations(5).unwrap();
        assert_eq!(r.lines.len(), 35);
        assert!(r.all_pass(), "{}", r);
    }
}
