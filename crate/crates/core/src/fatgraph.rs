//! Spines of bordered surfaces: trivalent fatgraphs with pending edges.
//!
//! Every non-pending edge runs from end 0 to end 1; a pending edge has its
//! end 0 at a trivalent vertex and ends at a dot-vertex. Slots 0, 1, 2 give
//! the cyclic order at a vertex.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{ExpVector, HalfInt, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub name: String,
    /// (vertex, slot) of end 0 and, for inner edges, of end 1.
    pub ends: Vec<(usize, u8)>,
}

impl EdgeInfo {
    pub fn is_pending(&self) -> bool {
        self.ends.len() == 1
    }
}

/// One directed traversal of an edge. For a pending edge, `forward` means
/// towards the dot-vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Traversal {
    pub edge: Var,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGraph {
    edges: Vec<EdgeInfo>,
    /// slots[v][s] = (edge, end)
    slots: Vec<[(Var, u8); 3]>,
    vertex_names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Traversal>,
}

impl Face {
    /// Coordinate sum around the face; a pending edge contributes twice.
    pub fn sum(&self) -> ExpVector {
        ExpVector::from_pairs(self.walk.iter().map(|t| (t.edge, HalfInt::from_int(1))))
    }

    pub fn dots(&self, g: &FatGraph) -> usize {
        self.walk.iter().filter(|t| t.forward && g.is_pending(t.edge)).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub delta: Vec<u32>,
}

impl SurfaceSignature {
    pub fn new(genus: u32, delta: Vec<u32>) -> Result<Self> {
        let sig = SurfaceSignature { genus, delta };
        let s = sig.holes() as i64;
        let marks: i64 = sig.delta.iter().map(|&d| d as i64).sum();
        if s == 0 || 2 * genus as i64 - 2 + s + (marks + 1) / 2 <= 0 {
            return Err(Error::Argument(format!("non-hyperbolic signature g={} delta={:?}", genus, sig.delta)));
        }
        Ok(sig)
    }

    pub fn holes(&self) -> u32 {
        self.delta.len() as u32
    }

    pub fn marks(&self) -> u32 {
        self.delta.iter().sum()
    }

    pub fn edge_count(&self) -> i64 {
        6 * self.genus as i64 - 6 + 3 * self.holes() as i64 + 2 * self.marks() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSignature {
    pub genus: u32,
    pub holes: u32,
    /// No marked points at all: the closed-up surface is two disjoint copies.
    pub degenerate: bool,
}

/// Genus and hole count of the double.
pub fn double(sig: &SurfaceSignature) -> DoubleSignature {
    let odd = sig.delta.iter().filter(|&&d| d % 2 == 1).count() as u32;
    let two_g = 2 * (2 * sig.genus as i64 - 1) + (sig.marks() + odd) as i64;
    DoubleSignature {
        genus: (two_g / 2).max(0) as u32,
        holes: 2 * sig.holes() - odd,
        degenerate: sig.marks() == 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    A,
    D,
    AnnulusOneMarked,
}

/// Incremental construction of a graph; `build` validates.
#[derive(Default)]
pub struct GraphBuilder {
    edges: Vec<EdgeInfo>,
    vertex_ids: BTreeMap<String, usize>,
    vertex_names: Vec<String>,
    slot_use: HashMap<(usize, u8), usize>,
    err: Option<Error>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        GraphBuilder::default()
    }

    /// Builder whose vertex numbering starts with the given names, in order.
    pub fn with_vertices<S: AsRef<str>>(names: &[S]) -> Self {
        let mut b = GraphBuilder::new();
        for n in names {
            b.vertex(n.as_ref());
        }
        b
    }

    fn vertex(&mut self, v: &str) -> usize {
        if let Some(&i) = self.vertex_ids.get(v) {
            return i;
        }
        let i = self.vertex_names.len();
        self.vertex_ids.insert(v.to_string(), i);
        self.vertex_names.push(v.to_string());
        i
    }

    fn claim(&mut self, v: usize, s: u8) {
        if self.err.is_some() {
            return;
        }
        if s > 2 {
            self.err = Some(Error::Graph(format!("slot {} out of range at vertex {}", s, self.vertex_names[v])));
        } else if self.slot_use.insert((v, s), self.edges.len()).is_some() {
            self.err = Some(Error::Graph(format!("duplicate slot {} at vertex {}", s, self.vertex_names[v])));
        }
    }

    fn check_name(&mut self, name: &str) {
        if self.err.is_none() && self.edges.iter().any(|e| e.name == name) {
            self.err = Some(Error::Graph(format!("duplicate edge name {}", name)));
        }
    }

    pub fn edge(mut self, name: &str, v1: &str, s1: u8, v2: &str, s2: u8) -> Self {
        self.check_name(name);
        let (a, b) = (self.vertex(v1), self.vertex(v2));
        self.claim(a, s1);
        self.claim(b, s2);
        self.edges.push(EdgeInfo { name: name.into(), ends: vec![(a, s1), (b, s2)] });
        self
    }

    pub fn pedge(mut self, name: &str, v: &str, s: u8) -> Self {
        self.check_name(name);
        let a = self.vertex(v);
        self.claim(a, s);
        self.edges.push(EdgeInfo { name: name.into(), ends: vec![(a, s)] });
        self
    }

    pub fn build(self) -> Result<FatGraph> {
        if let Some(e) = self.err {
            return Err(e);
        }
        FatGraph::from_parts(self.edges, self.vertex_names)
    }
}

impl FatGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    fn from_parts(edges: Vec<EdgeInfo>, vertex_names: Vec<String>) -> Result<FatGraph> {
        let nv = vertex_names.len();
        if edges.is_empty() {
            return Err(Error::Graph("no edges".into()));
        }
        let mut slots: Vec<[Option<(Var, u8)>; 3]> = vec![[None; 3]; nv];
        for (i, e) in edges.iter().enumerate() {
            for (end, &(v, s)) in e.ends.iter().enumerate() {
                if s > 2 {
                    return Err(Error::Graph(format!("slot {} out of range", s)));
                }
                if slots[v][s as usize].replace((Var(i as u32), end as u8)).is_some() {
                    return Err(Error::Graph(format!("duplicate slot {} at vertex {}", s, vertex_names[v])));
                }
            }
        }
        let mut full = Vec::with_capacity(nv);
        for (v, row) in slots.iter().enumerate() {
            let mut out = [(Var(0), 0u8); 3];
            for s in 0..3 {
                out[s] = row[s].ok_or_else(|| Error::Graph(format!("vertex {} is not trivalent (slot {} empty)", vertex_names[v], s)))?;
            }
            full.push(out);
        }
        let g = FatGraph { edges, slots: full, vertex_names };
        if !g.connected() {
            return Err(Error::Graph("graph is disconnected".into()));
        }
        Ok(g)
    }

    fn connected(&self) -> bool {
        let n = self.slots.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, _) in &self.slots[v] {
                for &(w, _) in &self.edges[e.idx()].ends {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Parses the line format `edge NAME V1 S1 V2 S2` / `pedge NAME V S`.
    pub fn parse(text: &str) -> Result<FatGraph> {
        let mut b = GraphBuilder::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            let slot = |s: &str| -> Result<u8> {
                s.parse::<u8>().ok().filter(|&x| x < 3).ok_or(Error::Parse { line, msg: format!("bad slot '{}'", s) })
            };
            b = match (f[0], f.len()) {
                ("edge", 6) => b.edge(f[1], f[2], slot(f[3])?, f[4], slot(f[5])?),
                ("pedge", 4) => b.pedge(f[1], f[2], slot(f[3])?),
                ("edge", _) | ("pedge", _) => return Err(Error::Parse { line, msg: format!("wrong field count for '{}'", f[0]) }),
                (kw, _) => return Err(Error::Parse { line, msg: format!("unknown keyword '{}'", kw) }),
            };
            if let Some(e) = b.err.take() {
                return Err(Error::Parse { line, msg: e.to_string() });
            }
        }
        b.build()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            let (v, sl) = e.ends[0];
            if e.is_pending() {
                let _ = writeln!(s, "pedge {} {} {}", e.name, self.vertex_names[v], sl);
            } else {
                let (w, tl) = e.ends[1];
                let _ = writeln!(s, "edge {} {} {} {} {}", e.name, self.vertex_names[v], sl, self.vertex_names[w], tl);
            }
        }
        s
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.slots.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.edges.len() as u32).map(Var)
    }

    pub fn edge(&self, v: Var) -> &EdgeInfo {
        &self.edges[v.idx()]
    }

    pub fn name(&self, v: Var) -> &str {
        &self.edges[v.idx()].name
    }

    pub fn names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.edges.iter().position(|e| e.name == name).map(|i| Var(i as u32))
    }

    pub fn var_or_err(&self, name: &str) -> Result<Var> {
        self.var(name).ok_or_else(|| Error::Argument(format!("no edge named {}", name)))
    }

    pub fn is_pending(&self, v: Var) -> bool {
        self.edges[v.idx()].is_pending()
    }

    pub fn pending(&self) -> Vec<Var> {
        self.vars().filter(|&v| self.is_pending(v)).collect()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    /// (edge, end) sitting in slot `s` of vertex `v`.
    pub fn at(&self, v: usize, s: u8) -> (Var, u8) {
        self.slots[v][s as usize]
    }

    /// Vertex and slot where a traversal ends; `None` at a dot-vertex.
    pub fn arrival(&self, t: Traversal) -> Option<(usize, u8)> {
        let e = &self.edges[t.edge.idx()];
        if e.is_pending() {
            if t.forward {
                None
            } else {
                Some(e.ends[0])
            }
        } else {
            Some(e.ends[if t.forward { 1 } else { 0 }])
        }
    }

    /// Vertex and slot a traversal leaves from; `None` when leaving a dot.
    pub fn departure(&self, t: Traversal) -> Option<(usize, u8)> {
        self.arrival(Traversal { edge: t.edge, forward: !t.forward })
    }

    /// Traversal leaving vertex `v` through slot `s`.
    pub fn leave(&self, v: usize, s: u8) -> Traversal {
        let (e, end) = self.at(v, s);
        Traversal { edge: e, forward: end == 0 }
    }

    /// Boundary components, traced by always turning right.
    pub fn trace_faces(&self) -> Vec<Face> {
        let mut all = Vec::new();
        for v in self.vars() {
            all.push(Traversal { edge: v, forward: true });
            all.push(Traversal { edge: v, forward: false });
        }
        let mut used = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for &start in &all {
            if used.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut t = start;
            loop {
                used.insert(t);
                walk.push(t);
                t = match self.arrival(t) {
                    None => Traversal { edge: t.edge, forward: false },
                    Some((v, s)) => self.leave(v, (s + 1) % 3),
                };
                if t == start {
                    break;
                }
            }
            faces.push(Face { walk });
        }
        faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = (self.slots.len() + self.pending().len()) as i64;
        v - self.edges.len() as i64 + self.trace_faces().len() as i64
    }

    pub fn signature(&self) -> SurfaceSignature {
        let faces = self.trace_faces();
        let chi = self.euler_characteristic();
        SurfaceSignature { genus: ((2 - chi) / 2) as u32, delta: faces.iter().map(|f| f.dots(self) as u32).collect() }
    }

    /// Builds the A_n chain, the D_n ring or the one-marked annulus.
    pub fn standard(kind: StandardKind, n: usize) -> Result<FatGraph> {
        match kind {
            StandardKind::A => {
                if n < 3 {
                    return Err(Error::Argument("A_n needs n >= 3".into()));
                }
                let m = n - 2;
                let v = |k: usize| format!("v{}", k);
                if m == 1 {
                    return FatGraph::builder().pedge("Z1", "v1", 0).pedge("Z2", "v1", 1).pedge("Z3", "v1", 2).build();
                }
                let mut b = FatGraph::builder().pedge("Z1", "v1", 0).pedge("Z2", "v1", 1).edge("Y2", "v1", 2, "v2", 0);
                for k in 2..m {
                    b = b.pedge(&format!("Z{}", k + 1), &v(k), 1).edge(&format!("Y{}", k + 1), &v(k), 2, &v(k + 1), 0);
                }
                b.pedge(&format!("Z{}", n - 1), &v(m), 1).pedge(&format!("Z{}", n), &v(m), 2).build()
            }
            StandardKind::D => {
                if n < 2 {
                    return Err(Error::Argument("D_n needs n >= 2".into()));
                }
                let mut b = FatGraph::builder();
                for i in 1..=n {
                    let j = i % n + 1;
                    b = b.pedge(&format!("Z{}", i), &format!("v{}", i), 0).edge(&format!("Y{}", i), &format!("v{}", i), 1, &format!("v{}", j), 2);
                }
                b.build()
            }
            StandardKind::AnnulusOneMarked => FatGraph::builder().pedge("Z", "v", 0).edge("Y", "v", 2, "v", 1).build(),
        }
    }

    /// Splits inner edge `e` with a new vertex carrying a pending edge; `left`
    /// picks the side of the edge the new window faces.
    pub fn with_window(&self, e: Var, name: &str, left: bool) -> Result<FatGraph> {
        let info = self.edge(e).clone();
        if info.is_pending() {
            return Err(Error::Argument("cannot split a pending edge".into()));
        }
        let mut b = GraphBuilder::new();
        for (i, other) in self.edges.iter().enumerate() {
            if i == e.idx() {
                continue;
            }
            let vn = |k: usize| self.vertex_names[other.ends[k].0].clone();
            b = if other.is_pending() {
                b.pedge(&other.name, &vn(0), other.ends[0].1)
            } else {
                b.edge(&other.name, &vn(0), other.ends[0].1, &vn(1), other.ends[1].1)
            };
        }
        let x = format!("w{}", self.vertex_names.len());
        let (u, su) = info.ends[0];
        let (w, sw) = info.ends[1];
        let (sp, sb) = if left { (1, 2) } else { (2, 1) };
        b.edge(&info.name, &self.vertex_names[u].clone(), su, &x, 0)
            .edge(&format!("{}'", info.name), &x, sb, &self.vertex_names[w].clone(), sw)
            .pedge(name, &x, sp)
            .build()
    }

    /// Two copies with the same cyclic orders, each pending end joined to its
    /// twin.
    ///
    /// Edge `E` of the original keeps its name, its twin is `E~`, and each
    /// glued pending edge keeps the name of its original.
    pub fn double_graph(&self) -> Result<FatGraph> {
        if self.pending().is_empty() {
            return Err(Error::Degenerate("no pending edges, the double is two disjoint copies".into()));
        }
        let vn = |v: usize, c: bool| if c { format!("{}~", self.vertex_names[v]) } else { self.vertex_names[v].clone() };
        let mut b = GraphBuilder::new();
        for e in &self.edges {
            let (v, s) = e.ends[0];
            if e.is_pending() {
                b = b.edge(&e.name, &vn(v, false), s, &vn(v, true), s);
            } else {
                let (w, t) = e.ends[1];
                b = b.edge(&e.name, &vn(v, false), s, &vn(w, false), t);
            }
        }
        for e in self.edges.iter().filter(|e| !e.is_pending()) {
            let ((v, s), (w, t)) = (e.ends[0], e.ends[1]);
            b = b.edge(&format!("{}~", e.name), &vn(v, true), s, &vn(w, true), t);
        }
        b.build()
    }
}

pub fn standard_graph(kind: StandardKind, n: usize) -> Result<FatGraph> {
    FatGraph::standard(kind, n)
}

pub fn trace_faces(g: &FatGraph) -> Vec<Face> {
    g.trace_faces()
}

pub fn double_graph(g: &FatGraph) -> Result<FatGraph> {
    g.double_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sums(g: &FatGraph) -> Vec<String> {
        let mut v: Vec<String> = g.trace_faces().iter().map(|f| f.sum().render(&|x| g.name(x).to_string())).collect();
        v.sort();
        v
    }

    #[test]
    fn annulus_faces() {
        let g = FatGraph::standard(StandardKind::AnnulusOneMarked, 0).unwrap();
        assert_eq!(g.n_edges(), 2);
        assert_eq!(sums(&g), vec!["2*Z+Y", "Y"]);
    }

    #[test]
    fn d4_faces() {
        let g = FatGraph::standard(StandardKind::D, 4).unwrap();
        assert_eq!(g.n_edges(), 8);
        assert_eq!(sums(&g), vec!["2*Z1+Y1+2*Z2+Y2+2*Z3+Y3+2*Z4+Y4", "Y1+Y2+Y3+Y4"]);
    }

    #[test]
    fn a3_single_face() {
        let g = FatGraph::standard(StandardKind::A, 3).unwrap();
        assert_eq!(sums(&g), vec!["2*Z1+2*Z2+2*Z3"]);
        assert_eq!(g.signature(), SurfaceSignature { genus: 0, delta: vec![3] });
    }

    #[test]
    fn double_formula() {
        let d = double(&SurfaceSignature::new(0, vec![1, 0]).unwrap());
        assert_eq!((d.genus, d.holes), (0, 3));
        let d = double(&SurfaceSignature::new(0, vec![3]).unwrap());
        assert_eq!((d.genus, d.holes), (1, 1));
        let d = double(&SurfaceSignature::new(1, vec![0]).unwrap());
        assert_eq!((d.genus, d.holes, d.degenerate), (1, 2, true));
    }

    #[test]
    fn glued_graphs() {
        let a = FatGraph::standard(StandardKind::AnnulusOneMarked, 0).unwrap().double_graph().unwrap();
        assert_eq!((a.signature().genus, a.trace_faces().len()), (0, 3));
        let s = FatGraph::standard(StandardKind::A, 3).unwrap().double_graph().unwrap();
        assert_eq!((s.signature().genus, s.trace_faces().len()), (1, 1));
    }

    #[test]
    fn parse_errors() {
        let e = FatGraph::parse("pedge Z v 0\nedge Y v 1 v 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "invalid graph: duplicate slot 1 at vertex v".into() });
        assert!(matches!(FatGraph::parse("pedge Z v 0\n"), Err(Error::Graph(_))));
        assert!(matches!(FatGraph::parse("bogus 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn roundtrip() {
        let g = FatGraph::standard(StandardKind::D, 3).unwrap();
        assert_eq!(FatGraph::parse(&g.to_text()).unwrap(), g);
    }
}
