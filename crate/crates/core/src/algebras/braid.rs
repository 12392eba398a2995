use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraKind, GeneratorMatrix, GeneratorSystem, QRing, SqMat};
use crate::error::{Error, Result};
use crate::fatgraph::FatGraph;
use crate::geodesic::random_assignment;
use crate::ring::Var;

fn check_step<T: QRing>(m: &GeneratorMatrix<T>, i: usize) -> Result<()> {
    if i == 0 || i >= m.n() {
        return Err(Error::Argument(format!("braid step {} out of range 1..{}", i, m.n() - 1)));
    }
    Ok(())
}

/// q·a·b − q²·c.
fn twist<T: QRing>(a: &T, b: &T, c: &T) -> T {
    a.times(b).qmul(1).minus(&c.qmul(2))
}

/// R_{i,i+1} on the generators.
pub fn braid_generators<T: QRing>(i: usize, m: &GeneratorMatrix<T>) -> Result<GeneratorMatrix<T>> {
    check_step(m, i)?;
    let n = m.n();
    let (a, b) = (i, i + 1);
    let g = m.g(a, b).clone();
    let mut out = m.clone();
    for k in 1..=n {
        if k == a || k == b {
            continue;
        }
        if m.kind == AlgebraKind::D || k > b {
            out.m.set(b, k, m.g(a, k).clone());
            out.m.set(a, k, twist(&g, m.g(a, k), m.g(b, k)));
        }
        if m.kind == AlgebraKind::D || k < a {
            out.m.set(k, b, m.g(k, a).clone());
            out.m.set(k, a, twist(&g, m.g(k, a), m.g(k, b)));
        }
    }
    if m.kind == AlgebraKind::D {
        let (gaa, gbb) = (m.g(a, a), m.g(b, b));
        out.m.set(b, b, gaa.clone());
        out.m.set(a, a, twist(&g, gaa, gbb));
        let back = m
            .g(b, a)
            .plus(&gaa.times(&g).times(gaa))
            .minus(&gbb.times(gaa).qmul(-1))
            .minus(&gaa.times(gbb).qmul(1));
        out.m.set(b, a, back);
    }
    Ok(out)
}

/// R_{i,i+1} written with the generator G_{i,i+1} on the right:
/// q⁻¹·x·G_{i,i+1} − q⁻²·y. Agrees with [`braid_generators`] on valid
/// representations.
pub fn braid_generators_alt<T: QRing>(i: usize, m: &GeneratorMatrix<T>) -> Result<GeneratorMatrix<T>> {
    check_step(m, i)?;
    let (a, b) = (i, i + 1);
    let g = m.g(a, b).clone();
    let twist_r = |x: &T, y: &T| x.times(&g).qmul(-1).minus(&y.qmul(-2));
    let mut out = braid_generators(i, m)?;
    for k in 1..=m.n() {
        if k == a || k == b {
            continue;
        }
        if m.kind == AlgebraKind::D || k > b {
            out.m.set(a, k, twist_r(m.g(a, k), m.g(b, k)));
        }
        if m.kind == AlgebraKind::D || k < a {
            out.m.set(k, a, twist_r(m.g(k, a), m.g(k, b)));
        }
    }
    if m.kind == AlgebraKind::D {
        out.m.set(a, a, twist_r(m.g(a, a), m.g(b, b)));
    }
    Ok(out)
}

/// Inverse of R_{i,i+1}.
pub fn braid_inverse<T: QRing>(i: usize, t: &GeneratorMatrix<T>) -> Result<GeneratorMatrix<T>> {
    check_step(t, i)?;
    let (a, b) = (i, i + 1);
    let g = t.g(a, b).clone();
    // x = q·g·y − q²·z  ⇒  z = q⁻¹·g·y − q⁻²·x
    let untwist = |y: &T, x: &T| g.times(y).qmul(-1).minus(&x.qmul(-2));
    let mut out = t.clone();
    for k in 1..=t.n() {
        if k == a || k == b {
            continue;
        }
        if t.kind == AlgebraKind::D || k > b {
            out.m.set(a, k, t.g(b, k).clone());
            out.m.set(b, k, untwist(t.g(b, k), t.g(a, k)));
        }
        if t.kind == AlgebraKind::D || k < a {
            out.m.set(k, a, t.g(k, b).clone());
            out.m.set(k, b, untwist(t.g(k, b), t.g(k, a)));
        }
    }
    if t.kind == AlgebraKind::D {
        let gaa = t.g(b, b).clone();
        let gbb = untwist(t.g(b, b), t.g(a, a));
        let back = t
            .g(b, a)
            .minus(&gaa.times(&g).times(&gaa))
            .plus(&gbb.times(&gaa).qmul(-1))
            .plus(&gaa.times(&gbb).qmul(1));
        out.m.set(a, a, gaa);
        out.m.set(b, b, gbb);
        out.m.set(b, a, back);
    }
    Ok(out)
}

/// Both sides of R_{i−1,i}R_{i,i+1}R_{i−1,i} = R_{i,i+1}R_{i−1,i}R_{i,i+1}.
pub fn braid_relation_sides<T: QRing>(i: usize, m: &GeneratorMatrix<T>) -> Result<(GeneratorMatrix<T>, GeneratorMatrix<T>)> {
    if i < 2 || i + 1 > m.n() {
        return Err(Error::Argument(format!("braid relation index {} out of range 2..{}", i, m.n() - 1)));
    }
    let l = braid_generators(i - 1, &braid_generators(i, &braid_generators(i - 1, m)?)?)?;
    let r = braid_generators(i, &braid_generators(i - 1, &braid_generators(i, m)?)?)?;
    Ok((l, r))
}

/// R_{n−1,n}⋯R_{2,3}R_{1,2}: R_{1,2} acts first.
pub fn chain<T: QRing>(m: &GeneratorMatrix<T>) -> Result<GeneratorMatrix<T>> {
    (1..m.n()).try_fold(m.clone(), |acc, i| braid_generators(i, &acc))
}

pub fn chain_power<T: QRing>(m: &GeneratorMatrix<T>, k: usize) -> Result<GeneratorMatrix<T>> {
    (0..k).try_fold(m.clone(), |acc, _| chain(&acc))
}

/// Identity except for the block (q·G_{i,i+1}, −q²; 1, 0) in rows i, i+1.
pub fn b_matrix<T: QRing>(i: usize, m: &GeneratorMatrix<T>) -> Result<SqMat<T>> {
    check_step(m, i)?;
    let g = m.g(i, i + 1);
    let one = g.one_like();
    let mut b = SqMat::identity(m.n(), &one);
    b.set(i, i, g.qmul(1));
    b.set(i, i + 1, one.qmul(2).negate());
    b.set(i + 1, i, one.clone());
    b.set(i + 1, i + 1, one.zero_like());
    Ok(b)
}

/// B·X·B†.
pub fn conjugate<T: QRing>(b: &SqMat<T>, x: &SqMat<T>) -> SqMat<T> {
    b.mul(x).mul(&b.dagger())
}

/// R_{i,i+1} on the shear coordinates of the A_n chain, with Y₁ ≡ Z₁ and
/// Y_{n−1} ≡ Z_n.
pub fn braid_coordinates(g: &FatGraph, i: usize, at: &HashMap<Var, f64>) -> Result<HashMap<Var, f64>> {
    let n = g.pending().len();
    if n < 3 || i == 0 || i >= n {
        return Err(Error::Argument(format!("braid step {} out of range for {} windows", i, n)));
    }
    let z = |k: usize| g.var_or_err(&format!("Z{}", k));
    let y = |k: usize| -> Result<Var> {
        if k == 1 {
            z(1)
        } else if k == n - 1 {
            z(n)
        } else {
            g.var_or_err(&format!("Y{}", k))
        }
    };
    let val = |v: Var| at.get(&v).copied().ok_or_else(|| Error::Assignment(g.name(v).to_string()));
    let ln1p_exp = |x: f64| crate::moves::phi(x);
    let mut out = at.clone();
    if i == 1 || i == n - 1 {
        let (zi, zo, ye) = if i == 1 { (z(1)?, z(2)?, y(2)?) } else { (z(n - 1)?, z(n)?, y(n - 2)?) };
        let (a, b, c) = (val(zi)?, val(zo)?, val(ye)?);
        out.insert(zi, b - ln1p_exp(-2.0 * a));
        out.insert(zo, -a);
        out.insert(ye, c + ln1p_exp(2.0 * a));
        return Ok(out);
    }
    let (zi, zj) = (z(i)?, z(i + 1)?);
    let (yp, yi, yn) = (y(i - 1)?, y(i)?, y(i + 1)?);
    let (a, b, u) = (val(zi)?, val(zj)?, val(yi)?);
    // log(1 + e^{2Z}(1 + e^Y)) and log(1 + e^{2Z}(1 + e^Y)²)
    let s1 = ln1p_exp(2.0 * a + ln1p_exp(u));
    let s2 = ln1p_exp(2.0 * a + 2.0 * ln1p_exp(u));
    out.insert(yp, val(yp)? + s1);
    out.insert(yi, u - s2);
    out.insert(yn, val(yn)? + s2 - s1);
    out.insert(zi, 2.0 * a + b + u - s1);
    out.insert(zj, -a - u + s1);
    Ok(out)
}

/// A point where (R_{n−1,n}⋯R_{1,2})ⁿ moves some generator of D_n.
#[derive(Clone, Debug)]
pub struct BraidWitness {
    pub point: Vec<(String, f64)>,
    pub entry: (usize, usize),
    pub before: f64,
    pub after: f64,
}

/// Searches seeded random points of D_n for a violation of the second braid
/// relation larger than `tol`.
pub fn d_second_relation_witness(n: usize, seed: u64, tries: usize, tol: f64) -> Result<Option<BraidWitness>> {
    let sys = GeneratorSystem::new(AlgebraKind::D, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let at = random_assignment(&sys.graph, &mut rng, 1.0);
        let m = sys.numeric(&at)?;
        let p = chain_power(&m, n)?;
        let mut worst: Option<((usize, usize), f64)> = None;
        for ((i, j), x) in m.m.entries() {
            let d = (x - p.g(i, j)).abs() / x.abs().max(1.0);
            if d > tol && worst.map_or(true, |w| d > w.1) {
                worst = Some(((i, j), d));
            }
        }
        if let Some((e, _)) = worst {
            let mut point: Vec<(String, f64)> = at.iter().map(|(v, x)| (sys.graph.name(*v).to_string(), *x)).collect();
            point.sort_by(|a, b| a.0.cmp(&b.0));
            return Ok(Some(BraidWitness { point, entry: e, before: *m.g(e.0, e.1), after: *p.g(e.0, e.1) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LaurentElem, TorusElem};

    fn sys(kind: AlgebraKind, n: usize) -> GeneratorSystem {
        GeneratorSystem::new(kind, n).unwrap()
    }

    #[test]
    fn coordinates_match_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 3..=6 {
            let s = sys(AlgebraKind::A, n);
            for _ in 0..3 {
                let at = random_assignment(&s.graph, &mut rng, 1.0);
                let m = s.numeric(&at).unwrap();
                for i in 1..n {
                    let moved = s.numeric(&braid_coordinates(&s.graph, i, &at).unwrap()).unwrap();
                    let rule = braid_generators(i, &m).unwrap();
                    assert!(moved.m.rel_diff(&rule.m) < 1e-9, "n={} i={}", n, i);
                }
            }
        }
    }

    #[test]
    fn symmetric_point() {
        let s = sys(AlgebraKind::A, 4);
        let mut at: HashMap<Var, f64> = s.graph.vars().map(|v| (v, 0.0)).collect();
        let z2 = s.graph.var("Z2").unwrap();
        at.insert(z2, 0.7);
        let out = braid_coordinates(&s.graph, 1, &at).unwrap();
        let z1 = s.graph.var("Z1").unwrap();
        assert!((out[&z1].exp() - 0.7f64.exp() / 2.0).abs() < 1e-12);
        assert!(matches!(braid_coordinates(&s.graph, 4, &at), Err(Error::Argument(_))));
    }

    #[test]
    fn b_conjugation_classical() {
        let s = sys(AlgebraKind::A, 5);
        let m = s.classical();
        for i in 1..5 {
            let b = b_matrix(i, &m).unwrap();
            assert_eq!(conjugate(&b, &m.m), braid_generators(i, &m).unwrap().m);
        }
    }

    #[test]
    fn b_conjugation_quantum() {
        let s = sys(AlgebraKind::A, 4);
        let m = s.quantum().unwrap();
        for i in 1..4 {
            let b = b_matrix(i, &m).unwrap();
            assert_eq!(conjugate(&b, &m.m), braid_generators(i, &m).unwrap().m);
        }
    }

    #[test]
    fn orderings_agree() {
        for (kind, n) in [(AlgebraKind::A, 4), (AlgebraKind::D, 3), (AlgebraKind::D, 4)] {
            let m = sys(kind, n).quantum().unwrap();
            for i in 1..n {
                assert_eq!(braid_generators(i, &m).unwrap(), braid_generators_alt(i, &m).unwrap(), "{}{} {}", kind, n, i);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        for (kind, n) in [(AlgebraKind::A, 4), (AlgebraKind::D, 3)] {
            let m = sys(kind, n).quantum().unwrap();
            for i in 1..n {
                let t = braid_generators(i, &m).unwrap();
                assert_eq!(braid_inverse(i, &t).unwrap(), m);
            }
        }
    }

    #[test]
    fn d_tilde_rule() {
        let m = sys(AlgebraKind::D, 3).classical();
        let t = braid_generators(1, &m).unwrap();
        let want = &(m.g(2, 1) + &(m.g(1, 2) * &m.g(1, 1).pow(2))) - &(m.g(1, 1) * m.g(2, 2)).scale_i(2);
        assert_eq!(t.g(2, 1), &want);
        let _: &LaurentElem = t.g(1, 1);
    }

    #[test]
    fn a_braid_relations_exact() {
        for n in [3, 4] {
            let m: GeneratorMatrix<TorusElem> = sys(AlgebraKind::A, n).quantum().unwrap();
            for i in 2..n {
                let (l, r) = braid_relation_sides(i, &m).unwrap();
                assert_eq!(l, r);
            }
            assert_eq!(chain_power(&m, n).unwrap(), m);
        }
    }

    #[test]
    fn chain_is_permutation() {
        let m = sys(AlgebraKind::A, 5).classical();
        let c = chain(&m).unwrap();
        for j in 2..=5 {
            assert_eq!(c.g(j - 1, 5), m.g(1, j));
        }
        for i in 2..5 {
            for j in i + 1..=5 {
                assert_eq!(c.g(i - 1, j - 1), m.g(i, j));
            }
        }
    }

    #[test]
    fn d3_relations() {
        let m = sys(AlgebraKind::D, 3).quantum().unwrap();
        let (l, r) = braid_relation_sides(2, &m).unwrap();
        assert_eq!(l, r);
        let w = d_second_relation_witness(3, 1, 10, 1e-6).unwrap().expect("a witness");
        assert!((w.before - w.after).abs() > 1e-6);
    }
}
