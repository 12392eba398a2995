//! Flips of inner and pending edges: the new graph, the coordinate change
//! and the rewriting of closed paths.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, GraphBuilder, Traversal};
use crate::geodesic::{PathWord, Step};
use crate::poisson::wp_matrix;
use crate::ring::Var;

/// φ(x) = log(1 + e^x), computed without overflow.
pub fn phi(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    Inner,
    Pending,
}

/// new_e = old_e + Σ c·φ(k·Z) for listed edges e ≠ Z, and new_Z = −Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordRule {
    pub flipped: Var,
    pub shifts: BTreeMap<Var, Vec<(i64, i64)>>,
}

impl CoordRule {
    pub fn apply(&self, at: &HashMap<Var, f64>) -> HashMap<Var, f64> {
        let z = at[&self.flipped];
        let mut out = at.clone();
        for (e, terms) in &self.shifts {
            let d: f64 = terms.iter().map(|&(c, k)| c as f64 * phi(k as f64 * z)).sum();
            *out.get_mut(e).expect("edge present") += d;
        }
        out.insert(self.flipped, -z);
        out
    }

    /// Jacobian at e^Z = r, exact.
    pub fn jacobian(&self, n: usize, r: &BigRational) -> Vec<Vec<BigRational>> {
        let mut j: Vec<Vec<BigRational>> =
            (0..n).map(|a| (0..n).map(|b| if a == b { BigRational::one() } else { BigRational::zero() }).collect()).collect();
        let z = self.flipped.idx();
        for (e, terms) in &self.shifts {
            let mut d = BigRational::zero();
            for &(c, k) in terms {
                let p = if k >= 0 { r.pow(k as i32) } else { r.recip().pow((-k) as i32) };
                let sigma = &p / (BigRational::one() + &p);
                d += sigma * BigRational::from_integer(BigInt::from(c * k));
            }
            j[e.idx()][z] += d;
        }
        j[z][z] = -BigRational::one();
        j
    }

    pub fn render(&self, g: &FatGraph) -> Vec<String> {
        let z = g.name(self.flipped);
        let mut out = vec![format!("{}' = -{}", z, z)];
        for (e, terms) in &self.shifts {
            let mut s = format!("{}' = {}", g.name(*e), g.name(*e));
            for &(c, k) in terms {
                let sign = if c < 0 { '-' } else { '+' };
                let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
                let arg = match k {
                    1 => z.to_string(),
                    -1 => format!("-{}", z),
                    k => format!("{}*{}", k, z),
                };
                s.push_str(&format!(" {} {}log(1+e^({}))", sign, mag, arg));
            }
            out.push(s);
        }
        out
    }
}

impl fmt::Display for FlipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlipKind::Inner => "inner",
            FlipKind::Pending => "pending",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FlipResult {
    pub kind: FlipKind,
    pub old: FatGraph,
    pub graph: FatGraph,
    pub rule: CoordRule,
    /// (vertex, slot) of every old edge end in the new graph.
    end_map: HashMap<(usize, u8), (usize, u8)>,
}

fn rebuild(g: &FatGraph, map: &HashMap<(usize, u8), (usize, u8)>) -> Result<FatGraph> {
    let mut b = GraphBuilder::with_vertices(g.vertex_names());
    let vn = |v: usize| g.vertex_name(v).to_string();
    for e in g.vars() {
        let info = g.edge(e);
        let m = |k: usize| map.get(&info.ends[k]).copied().unwrap_or(info.ends[k]);
        b = if info.is_pending() {
            let (v, s) = m(0);
            b.pedge(&info.name, &vn(v), s)
        } else {
            let ((v, s), (w, t)) = (m(0), m(1));
            b.edge(&info.name, &vn(v), s, &vn(w), t)
        };
    }
    b.build()
}

fn push_shift(shifts: &mut BTreeMap<Var, Vec<(i64, i64)>>, e: Var, c: i64, k: i64) {
    let v = shifts.entry(e).or_default();
    match v.iter_mut().find(|t| t.1 == k) {
        Some(t) => t.0 += c,
        None => v.push((c, k)),
    }
    v.retain(|t| t.0 != 0);
}

/// Flip of an inner edge Z joining u = (Z, a₁, a₂) and w = (Z, b₁, b₂)
/// into x = (Z, b₂, a₁) and y = (Z, a₂, b₁).
pub fn flip_inner(g: &FatGraph, z: Var) -> Result<FlipResult> {
    let info = g.edge(z);
    if info.is_pending() {
        return Err(Error::WrongMove(format!("{} is pending, use a pending flip", info.name)));
    }
    let ((u, s), (w, t)) = (info.ends[0], info.ends[1]);
    if u == w {
        return Err(Error::WrongMove(format!("{} is a loop", info.name)));
    }
    let (s1, s2, t1, t2) = ((s + 1) % 3, (s + 2) % 3, (t + 1) % 3, (t + 2) % 3);
    let mut map = HashMap::new();
    map.insert((u, s), (u, 0));
    map.insert((w, t), (w, 0));
    map.insert((u, s1), (u, 2));
    map.insert((w, t2), (u, 1));
    map.insert((u, s2), (w, 1));
    map.insert((w, t1), (w, 2));
    let graph = rebuild(g, &map)?;
    let mut shifts = BTreeMap::new();
    for (end, c, k) in [((u, s2), 1, 1), ((w, t2), 1, 1), ((u, s1), -1, -1), ((w, t1), -1, -1)] {
        push_shift(&mut shifts, g.at(end.0, end.1).0, c, k);
    }
    shifts.retain(|_, v| !v.is_empty());
    Ok(FlipResult { kind: FlipKind::Inner, old: g.clone(), graph, rule: CoordRule { flipped: z, shifts }, end_map: map })
}

/// Flip of a pending edge Z at v = (Z, Y₁, Y₂): the order becomes (Z, Y₂, Y₁).
pub fn flip_pending(g: &FatGraph, z: Var) -> Result<FlipResult> {
    let info = g.edge(z);
    if !info.is_pending() {
        return Err(Error::WrongMove(format!("{} is inner, use an inner flip", info.name)));
    }
    let (v, k) = info.ends[0];
    let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
    let mut map = HashMap::new();
    map.insert((v, k1), (v, k2));
    map.insert((v, k2), (v, k1));
    let graph = rebuild(g, &map)?;
    let mut shifts = BTreeMap::new();
    push_shift(&mut shifts, g.at(v, k1).0, -1, -2);
    push_shift(&mut shifts, g.at(v, k2).0, 1, 2);
    shifts.retain(|_, v| !v.is_empty());
    Ok(FlipResult { kind: FlipKind::Pending, old: g.clone(), graph, rule: CoordRule { flipped: z, shifts }, end_map: map })
}

fn ends_of(g: &FatGraph, s: Step) -> ((usize, u8), (usize, u8)) {
    match s {
        Step::Pass(t) => (g.departure(t).unwrap(), g.arrival(t).unwrap()),
        Step::Visit(z) => (g.edge(z).ends[0], g.edge(z).ends[0]),
    }
}

impl FlipResult {
    fn new_end(&self, e: (usize, u8)) -> (usize, u8) {
        self.end_map.get(&e).copied().unwrap_or(e)
    }

    /// The same closed curve as a word on the flipped graph.
    pub fn transport(&self, w: &PathWord) -> Result<PathWord> {
        let g = &self.old;
        let z = self.rule.flipped;
        let is_z = |s: &Step| match s {
            Step::Pass(t) => t.edge == z,
            Step::Visit(e) => *e == z,
        };
        let kept: Vec<(usize, Step)> = w.steps().iter().copied().enumerate().filter(|(_, s)| !is_z(s)).collect();
        if kept.is_empty() {
            return Err(Error::Word("word runs only along the flipped edge".into()));
        }
        let n = w.len();
        let mut out = Vec::new();
        for (idx, &(i, s)) in kept.iter().enumerate() {
            out.push(s);
            let (j, next) = kept[(idx + 1) % kept.len()];
            let between = (j + n - i - 1) % n;
            let (_, arr) = ends_of(g, s);
            let (dep, _) = ends_of(g, next);
            let (na, nd) = (self.new_end(arr), self.new_end(dep));
            match self.kind {
                FlipKind::Inner => {
                    if na.0 != nd.0 {
                        let (x, _) = self.graph.edge(z).ends[0];
                        out.push(Step::Pass(Traversal { edge: z, forward: na.0 == x }));
                    }
                }
                FlipKind::Pending => {
                    let v = g.edge(z).ends[0].0;
                    let through = arr.0 == v && arr.1 != dep.1;
                    let had = between % 2 == 1;
                    let visit = if through { !had } else { had };
                    if visit {
                        out.push(Step::Visit(z));
                    }
                }
            }
        }
        PathWord::new(&self.graph, out)
    }

    /// Checks J P Jᵀ = P' exactly at e^Z = r.
    pub fn poisson_preserved_at(&self, r: &BigRational) -> bool {
        let p = wp_matrix(&self.old);
        let pn = wp_matrix(&self.graph);
        let n = p.dim();
        let j = self.rule.jacobian(n, r);
        let pr: Vec<Vec<BigRational>> =
            p.rows().iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        for a in 0..n {
            for b in 0..n {
                let mut s = BigRational::zero();
                for c in 0..n {
                    if j[a][c].is_zero() {
                        continue;
                    }
                    for d in 0..n {
                        if !pr[c][d].is_zero() && !j[b][d].is_zero() {
                            s += &j[a][c] * &pr[c][d] * &j[b][d];
                        }
                    }
                }
                if s != BigRational::from_integer(pn.get(Var(a as u32), Var(b as u32)).into()) {
                    return false;
                }
            }
        }
        true
    }
}

/// How a path crosses the vertex of a flipped pending edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Passage {
    /// From one Y-side to the other through the dot.
    ThroughDot,
    /// U-turn around the dot, on the first Y-side.
    UturnFirst,
    /// From one Y-side to the other directly.
    Direct,
    /// U-turn around the dot, on the second Y-side.
    UturnSecond,
}

impl FlipResult {
    /// Passages of a word through the vertex of a flipped pending edge.
    pub fn passages(&self, w: &PathWord) -> Vec<Passage> {
        if self.kind != FlipKind::Pending {
            return Vec::new();
        }
        let g = &self.old;
        let z = self.rule.flipped;
        let (v, k) = g.edge(z).ends[0];
        let steps = w.steps();
        let n = steps.len();
        let mut out = Vec::new();
        for i in 0..n {
            if steps[i] == Step::Visit(z) {
                let (_, a) = ends_of(g, steps[(i + n - 1) % n]);
                let (d, _) = ends_of(g, steps[(i + 1) % n]);
                out.push(if a.1 != d.1 {
                    Passage::ThroughDot
                } else if a.1 == (k + 1) % 3 {
                    Passage::UturnFirst
                } else {
                    Passage::UturnSecond
                });
            } else if steps[(i + 1) % n] != Step::Visit(z) && steps[i] != Step::Visit(z) {
                let (_, a) = ends_of(g, steps[i]);
                let (d, _) = ends_of(g, steps[(i + 1) % n]);
                if a.0 == v && d.0 == v && a.1 != k && d.1 != k {
                    out.push(Passage::Direct);
                }
            }
        }
        out
    }
}

/// Residuals of the four pending-flip matrix identities at (Y₁, Y₂, Z),
/// with the second one both in its R…R form and with the
/// L on the right that makes it hold.
pub fn pending_identities(y1: f64, y2: f64, z: f64) -> Vec<(&'static str, f64)> {
    use crate::geodesic::{numeric_matrix, Factor};
    let (a, b, c) = (Var(0), Var(1), Var(2));
    let (t1, t2, tz) = (Var(3), Var(4), Var(5));
    let vals = [y1, y2, z, y1 - phi(-2.0 * z), y2 + phi(2.0 * z), -z];
    let at = |v: Var| vals[v.idx()];
    let m = |f: &[Factor]| numeric_matrix(f, &at);
    use Factor::{F, L, R, X};
    let x = |v| X(v, 1);
    let cases: Vec<(&'static str, Vec<Factor>, Vec<Factor>)> = vec![
        ("Y2 L Z F Z L Y1", vec![x(b), L, x(c), F, x(c), L, x(a)], vec![x(t2), L, x(t1)]),
        ("Y1 R Z F Z R Y1", vec![x(a), R, x(c), F, x(c), R, x(a)], vec![x(t1), L, x(tz), F, x(tz), R, x(t1)]),
        ("Y1 R Z F Z L Y1", vec![x(a), R, x(c), F, x(c), L, x(a)], vec![x(t1), L, x(tz), F, x(tz), R, x(t1)]),
        ("Y2 R Y1", vec![x(b), R, x(a)], vec![x(t2), R, x(tz), F, x(tz), R, x(t1)]),
        ("Y2 L Z F Z R Y2", vec![x(b), L, x(c), F, x(c), R, x(b)], vec![x(t2), R, x(tz), F, x(tz), L, x(t2)]),
    ];
    cases.into_iter().map(|(name, l, r)| (name, m(&l).max_abs_diff(&m(&r)) / m(&l).max_abs().max(1.0))).collect()
}

/// Flips by name, choosing the inner or pending variant.
pub fn flip(g: &FatGraph, name: &str) -> Result<FlipResult> {
    let z = g.var_or_err(name)?;
    if g.is_pending(z) {
        flip_pending(g, z)
    } else {
        flip_inner(g, z)
    }
}

pub fn transport_path(w: &PathWord, fr: &FlipResult) -> Result<PathWord> {
    fr.transport(w)
}
