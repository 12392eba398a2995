use std::cmp::Ordering;
use std::fmt;

use super::HalfInt;

/// Index of a shear coordinate (an edge of the graph the element lives on).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Sparse exponent vector of e^{Σ v_α Z_α}. Entries are sorted by variable
/// and never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVector {
    entries: Vec<(Var, HalfInt)>,
}

impl ExpVector {
    pub fn zero() -> Self {
        ExpVector::default()
    }

    pub fn unit(v: Var, e: HalfInt) -> Self {
        let mut out = ExpVector::zero();
        if !e.is_zero() {
            out.entries.push((v, e));
        }
        out
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, HalfInt)>>(pairs: I) -> Self {
        let mut entries: Vec<(Var, HalfInt)> = Vec::new();
        let mut raw: Vec<(Var, HalfInt)> = pairs.into_iter().collect();
        raw.sort_by_key(|p| p.0);
        for (v, e) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => entries.push((v, e)),
            }
        }
        entries.retain(|p| !p.1.is_zero());
        ExpVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Var, HalfInt)] {
        &self.entries
    }

    pub fn get(&self, v: Var) -> HalfInt {
        match self.entries.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => HalfInt::ZERO,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.entries.iter().map(|p| p.0)
    }

    pub fn add(&self, o: &ExpVector) -> ExpVector {
        let (a, b) = (&self.entries, &o.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1 + b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ExpVector { entries: out }
    }

    pub fn neg(&self) -> ExpVector {
        ExpVector { entries: self.entries.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    pub fn scale(&self, k: i64) -> ExpVector {
        if k == 0 {
            return ExpVector::zero();
        }
        ExpVector { entries: self.entries.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    /// Renames variables; colliding targets are summed.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> ExpVector {
        ExpVector::from_pairs(self.entries.iter().map(|&(v, e)| (f(v), e)))
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        for (k, &(v, e)) in self.entries.iter().enumerate() {
            let neg = e.twice() < 0;
            let mag = if neg { -e } else { e };
            if k > 0 || neg {
                s.push(if neg { '-' } else { '+' });
            }
            if mag != HalfInt::from_int(1) {
                s.push_str(&mag.to_string());
                s.push('*');
            }
            s.push_str(&names(v));
        }
        s
    }
}

impl fmt::Display for ExpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{}", v.0)))
    }
}
