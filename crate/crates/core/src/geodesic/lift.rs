use std::collections::HashMap;

use super::{PathWord, Step};
use crate::error::{Error, Result};
use crate::fatgraph::{FatGraph, Traversal};
use crate::ring::Var;

fn twin(g: &FatGraph, dg: &FatGraph, e: Var, copy: bool) -> Result<Var> {
    let name = if copy { format!("{}~", g.name(e)) } else { g.name(e).to_string() };
    dg.var(&name).ok_or_else(|| Error::Argument(format!("{} is not an edge of the double", name)))
}

/// Lift of a closed word to the double built by `double_graph`. Each visit
/// crosses to the other copy, so a word with an odd number of visits lifts
/// to a curve running twice around.
pub fn lift_to_double(g: &FatGraph, dg: &FatGraph, w: &PathWord) -> Result<PathWord> {
    let mut copy = false;
    let mut steps = Vec::new();
    loop {
        for s in w.steps() {
            match *s {
                Step::Pass(t) => steps.push(Step::Pass(Traversal { edge: twin(g, dg, t.edge, copy)?, forward: t.forward })),
                Step::Visit(z) => {
                    steps.push(Step::Pass(Traversal { edge: twin(g, dg, z, false)?, forward: !copy }));
                    copy = !copy;
                }
            }
        }
        if !copy {
            break;
        }
    }
    PathWord::new(dg, steps)
}

/// Coordinates on the double: twins copy their originals and each glued
/// pending edge carries twice its coordinate.
pub fn lift_assignment(g: &FatGraph, dg: &FatGraph, at: &HashMap<Var, f64>) -> Result<HashMap<Var, f64>> {
    let mut out = HashMap::new();
    for e in g.vars() {
        let x = *at.get(&e).ok_or_else(|| Error::Assignment(g.name(e).to_string()))?;
        if g.is_pending(e) {
            out.insert(twin(g, dg, e, false)?, 2.0 * x);
        } else {
            out.insert(twin(g, dg, e, false)?, x);
            out.insert(twin(g, dg, e, true)?, x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatgraph::StandardKind;
    use crate::geodesic::numeric_trace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn annulus_lengths_double() {
        let g = FatGraph::standard(StandardKind::AnnulusOneMarked, 0).unwrap();
        let dg = g.double_graph().unwrap();
        let w = PathWord::parse(&g, "Z:+:L,Y:+:L,Z:+:!").unwrap();
        let lw = lift_to_double(&g, &dg, &w).unwrap();
        assert_eq!(lw.len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let at: HashMap<Var, f64> = g.vars().map(|v| (v, rng.gen_range(-1.5..1.5))).collect();
            let t = numeric_trace(&w, &at).unwrap();
            let lt = numeric_trace(&lw, &lift_assignment(&g, &dg, &at).unwrap()).unwrap();
            assert!((lt - (t * t - 2.0)).abs() < 1e-9 * lt.abs().max(1.0));
        }
    }
}
