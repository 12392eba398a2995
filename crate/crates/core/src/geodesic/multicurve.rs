use std::collections::BTreeMap;

use super::{holonomy_trace, proper_length, PathWord, Step};
use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, Traversal};
use crate::ring::{LaurentElem, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Closed(PathWord),
    /// Strand from one window to another: starts by leaving a dot along a
    /// pending edge and ends by arriving at a dot.
    Arc(Vec<Traversal>),
    /// Loop around a single dot-vertex.
    DotLoop(Var),
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Multicurve {
    pub components: Vec<(Component, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MulticurveStatus {
    Valid(LaurentElem),
    Vanishing,
    Invalid(String),
}

fn turn_is_right(g: &FatGraph, from: Traversal, to: Traversal) -> bool {
    let (_, a) = g.arrival(from).expect("trivalent junction");
    let (_, d) = g.departure(to).expect("trivalent junction");
    (d + 3 - a) % 3 == 1
}

fn reverse(d: &[Traversal]) -> Vec<Traversal> {
    d.iter().rev().map(|t| Traversal { edge: t.edge, forward: !t.forward }).collect()
}

/// Whether two cyclic dart sequences cross. A maximal shared run is a
/// crossing when a strand enters and leaves it on different sides.
fn crosses(g: &FatGraph, a: &[Traversal], b: &[Traversal], same: bool) -> bool {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return false;
    }
    for (bb, flipped) in [(b.to_vec(), false), (reverse(b), true)] {
        for i in 0..n {
            for j in 0..m {
                if same && !flipped && i == j {
                    continue;
                }
                if a[i] != bb[j] || a[(i + n - 1) % n] == bb[(j + m - 1) % m] {
                    continue;
                }
                let mut k = 1;
                while k < n.min(m) && a[(i + k) % n] == bb[(j + k) % m] {
                    k += 1;
                }
                if k >= n.min(m) {
                    continue;
                }
                let in_right = turn_is_right(g, a[(i + n - 1) % n], a[i]);
                let out_right = turn_is_right(g, a[(i + k - 1) % n], a[(i + k) % n]);
                if in_right != out_right {
                    return true;
                }
            }
        }
    }
    false
}

fn check_arc(g: &FatGraph, arc: &[Traversal]) -> Result<(Var, Var)> {
    let bad = |m: &str| Error::Word(format!("arc {}", m));
    let (first, last) = match (arc.first(), arc.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(bad("is empty")),
    };
    if !g.is_pending(first.edge) || first.forward || !g.is_pending(last.edge) || !last.forward || arc.len() < 2 {
        return Err(bad("must leave a dot and end at a dot"));
    }
    for w in arc.windows(2) {
        if g.is_pending(w[0].edge) && w[0].forward {
            if w[1].edge != w[0].edge || w[1].forward {
                return Err(bad("reaches a dot and does not come back"));
            }
            continue;
        }
        let (v, a) = g.arrival(w[0]).ok_or_else(|| bad("is broken"))?;
        let (u, d) = g.departure(w[1]).ok_or_else(|| bad("is broken"))?;
        if u != v || a == d {
            return Err(bad("is broken or backtracks"));
        }
    }
    Ok((first.edge, last.edge))
}

fn darts_to_word(g: &FatGraph, darts: &[Traversal]) -> Result<PathWord> {
    let mut steps = Vec::new();
    let mut i = 0;
    while i < darts.len() {
        let t = darts[i];
        if g.is_pending(t.edge) {
            match darts.get(i + 1) {
                Some(n) if t.forward && n.edge == t.edge && !n.forward => {
                    steps.push(Step::Visit(t.edge));
                    i += 2;
                }
                _ => return Err(Error::Word("strands do not pair at a window".into())),
            }
        } else {
            steps.push(Step::Pass(t));
            i += 1;
        }
    }
    PathWord::new(g, steps)
}

/// Joins arc strands pairwise at each window into closed words.
fn join_arcs(g: &FatGraph, arcs: &[Vec<Traversal>]) -> Result<Vec<PathWord>> {
    let mut at_window: BTreeMap<Var, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, arc) in arcs.iter().enumerate() {
        let (s, e) = check_arc(g, arc)?;
        at_window.entry(s).or_default().push((k, 0));
        at_window.entry(e).or_default().push((k, 1));
    }
    let mut partner = BTreeMap::new();
    for ends in at_window.values() {
        for p in ends.chunks(2) {
            partner.insert(p[0], p[1]);
            partner.insert(p[1], p[0]);
        }
    }
    let mut used = vec![false; arcs.len()];
    let mut out = Vec::new();
    for start in 0..arcs.len() {
        if used[start] {
            continue;
        }
        let mut darts = Vec::new();
        let (mut k, mut side) = (start, 0);
        loop {
            used[k] = true;
            if side == 0 {
                darts.extend_from_slice(&arcs[k]);
            } else {
                darts.extend(reverse(&arcs[k]));
            }
            let (nk, nside) = partner[&(k, 1 - side)];
            if nk == start && nside == 0 {
                break;
            }
            if used[nk] {
                return Err(Error::Word("arc strands close up inconsistently".into()));
            }
            k = nk;
            side = nside;
        }
        darts.rotate_left(1);
        out.push(darts_to_word(g, &darts)?);
    }
    Ok(out)
}

/// Classifies a multicurve and, when valid, returns its function Π G^{s}.
pub fn multicurve_check(g: &FatGraph, m: &Multicurve) -> MulticurveStatus {
    let mut closed: Vec<(PathWord, u32)> = Vec::new();
    let mut arcs = Vec::new();
    let mut parity: BTreeMap<Var, u32> = BTreeMap::new();
    let mut vanishing = false;
    for (c, s) in &m.components {
        match c {
            Component::Closed(w) => closed.push((w.clone(), *s)),
            Component::DotLoop(_) => vanishing = true,
            Component::Arc(a) => {
                if let (Some(f), Some(l)) = (a.first(), a.last()) {
                    *parity.entry(f.edge).or_default() += s;
                    *parity.entry(l.edge).or_default() += s;
                }
                for _ in 0..*s {
                    arcs.push(a.clone());
                }
            }
        }
    }
    if let Some((z, _)) = parity.iter().find(|(_, &p)| p % 2 == 1) {
        return MulticurveStatus::Invalid(format!("odd number of strands at window {}", g.name(*z)));
    }
    if vanishing {
        return MulticurveStatus::Vanishing;
    }
    match join_arcs(g, &arcs) {
        Ok(ws) => closed.extend(ws.into_iter().map(|w| (w, 1))),
        Err(e) => return MulticurveStatus::Invalid(e.to_string()),
    }
    let darts: Vec<Vec<Traversal>> = closed.iter().map(|(w, _)| w.darts()).collect();
    for i in 0..darts.len() {
        if crosses(g, &darts[i], &darts[i], true) {
            return MulticurveStatus::Invalid(format!("component {} is not simple", i));
        }
        for j in 0..i {
            if crosses(g, &darts[i], &darts[j], false) {
                return MulticurveStatus::Invalid(format!("components {} and {} intersect", j, i));
            }
        }
    }
    let mut f = LaurentElem::one();
    for (w, s) in &closed {
        f = &f * &holonomy_trace(w).pow(*s);
    }
    MulticurveStatus::Valid(f)
}

/// Σ s_i ℓ_i from the component trace values.
pub fn multicurve_length(parts: &[(f64, u32)]) -> Result<f64> {
    parts.iter().try_fold(0.0, |acc, &(g, s)| Ok(acc + s as f64 * proper_length(g)?))
}
