use super::{AlgebraKind, GeneratorMatrix, QRing, SqMat};
use crate::error::{Error, Result};

fn check_d<T: QRing>(m: &GeneratorMatrix<T>) -> Result<()> {
    if m.kind != AlgebraKind::D {
        return Err(Error::Argument("invariant matrices need a D_n generator matrix".into()));
    }
    Ok(())
}

/// ℛ: zero diagonal, G_ji + q²G_ij − q·G_iiG_jj above it and
/// −G_ij − q⁻²G_ji + q⁻¹·G_iiG_jj below.
pub fn r_matrix<T: QRing>(m: &GeneratorMatrix<T>) -> Result<SqMat<T>> {
    check_d(m)?;
    let zero = m.g(1, 1).zero_like();
    Ok(SqMat::from_fn(m.n(), |i, j| {
        let d = m.g(i, i).times(m.g(j, j));
        if i < j {
            m.g(j, i).plus(&m.g(i, j).qmul(2)).minus(&d.qmul(1))
        } else if i > j {
            m.g(i, j).negate().minus(&m.g(j, i).qmul(-2)).plus(&d.qmul(-1))
        } else {
            zero.clone()
        }
    }))
}

/// 𝒮_ij = G_iiG_jj.
pub fn s_matrix<T: QRing>(m: &GeneratorMatrix<T>) -> Result<SqMat<T>> {
    check_d(m)?;
    Ok(SqMat::from_fn(m.n(), |i, j| m.g(i, i).times(m.g(j, j))))
}

/// Whether every 2×2 minor of 𝒮 vanishes.
pub fn s_rank_one<T: QRing + PartialEq>(s: &SqMat<T>) -> bool {
    let n = s.n();
    let zero = s.g(1, 1).zero_like();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    let minor = s.g(i, j).times(s.g(k, l)).minus(&s.g(i, l).times(s.g(k, j)));
                    if minor != zero {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn sub_indices(idx: &[usize], skip: &[usize]) -> Vec<usize> {
    idx.iter().copied().filter(|k| !skip.contains(k)).collect()
}

fn pf_rec<T: QRing>(a: &SqMat<T>, idx: &[usize]) -> T {
    let zero = a.g(1, 1).zero_like();
    if idx.is_empty() {
        return zero.one_like();
    }
    let first = idx[0];
    let mut acc = zero;
    for (p, &j) in idx.iter().enumerate().skip(1) {
        let term = a.g(first, j).times(&pf_rec(a, &sub_indices(idx, &[first, j])));
        acc = if p % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Pfaffian of an antisymmetric matrix. Zero for odd size.
pub fn pfaffian<T: QRing>(a: &SqMat<T>) -> T {
    if a.n() % 2 == 1 {
        return a.g(1, 1).zero_like();
    }
    let idx: Vec<usize> = (1..=a.n()).collect();
    pf_rec(a, &idx)
}

fn det_rec<T: QRing>(a: &SqMat<T>, row: usize, cols: &[usize]) -> T {
    if cols.is_empty() {
        return a.g(1, 1).one_like();
    }
    let mut acc = a.g(1, 1).zero_like();
    for (p, &c) in cols.iter().enumerate() {
        let term = a.g(row, c).times(&det_rec(a, row + 1, &sub_indices(cols, &[c])));
        acc = if p % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Laplace expansion along rows, factors taken left to right.
pub fn determinant<T: QRing>(a: &SqMat<T>) -> T {
    let cols: Vec<usize> = (1..=a.n()).collect();
    det_rec(a, 1, &cols)
}

/// Relabels i → i+1 cyclically: (PD)_ab = D_{a+1,b+1}.
pub fn p_action<T: QRing>(m: &GeneratorMatrix<T>) -> GeneratorMatrix<T> {
    let n = m.n();
    let mut out = m.clone();
    out.m = SqMat::from_fn(n, |a, b| m.g(a % n + 1, b % n + 1).clone());
    out
}

/// The pair of shift matrices conjugating ℛ under the cyclic relabeling:
/// ones above the diagonal and −q⁻² in the corner (n,1), and ones below the
/// diagonal and −q² in the corner (1,n).
pub fn shift_matrices<T: QRing>(n: usize, one: &T) -> (SqMat<T>, SqMat<T>) {
    let zero = one.zero_like();
    let s1 = SqMat::from_fn(n, |i, j| {
        if j == i + 1 {
            one.clone()
        } else if i == n && j == 1 {
            one.qmul(-2).negate()
        } else {
            zero.clone()
        }
    });
    let s2 = SqMat::from_fn(n, |i, j| {
        if i == j + 1 {
            one.clone()
        } else if i == 1 && j == n {
            one.qmul(2).negate()
        } else {
            zero.clone()
        }
    });
    (s1, s2)
}

#[derive(Clone, Debug)]
pub struct Invariants<T> {
    pub r: SqMat<T>,
    pub s: SqMat<T>,
    pub pfaffian: T,
}

pub fn invariant_matrices<T: QRing>(m: &GeneratorMatrix<T>) -> Result<Invariants<T>> {
    let r = r_matrix(m)?;
    let s = s_matrix(m)?;
    let pfaffian = pfaffian(&r);
    Ok(Invariants { r, s, pfaffian })
}
