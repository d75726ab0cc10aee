//! Genus-decorated multigraphs: the dual graphs of stable curves.
//!
//! Vertices carry the geometric genus of an irreducible component; edges are
//! nodes of the curve. A loop is an internal node (both branches on one
//! component) and contributes 2 to the degree of its vertex.
//!
//! Two validation levels exist. [`StableGraph::new`] enforces the full
//! invariants of a stable dual graph (connected, per-vertex stability,
//! arithmetic genus at least 2). [`StableGraph::relaxed`] only checks index
//! bounds: partial normalizations are generally disconnected and unstable,
//! and many operations must run on them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// How a single node (edge) sits in the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Both branches on one component: a loop in the dual graph.
    Internal,
    /// Deleting the edge disconnects the graph.
    Separating,
    /// External (two distinct components) but not separating.
    NonseparatingExternal,
}

/// JSON wire form: `{"genus_labels":[0,0],"edges":[[0,1],[0,1]]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    genus_labels: Vec<u32>,
    edges: Vec<[usize; 2]>,
}

/// A genus-decorated multigraph with stable edge indices.
///
/// Edges are stored as an ordered list of unordered vertex pairs; the index
/// of an edge in that list is its identity and is what [`NodeSet`] refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableGraph {
    genus: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

/// A subset of the edges of a graph, by stable index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct NodeSet {
    members: BTreeSet<usize>,
}

impl NodeSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        NodeSet {
            members: members.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// All edges of `g`.
    pub fn full(g: &StableGraph) -> Self {
        Self::new(0..g.num_edges())
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    /// Checks that every member is a valid edge index of `g`.
    pub fn check(&self, g: &StableGraph) -> Result<()> {
        for &e in &self.members {
            if e >= g.num_edges() {
                return Err(Error::InvalidInput(format!(
                    "edge index {e} out of range (graph has {} edges)",
                    g.num_edges()
                )));
            }
        }
        Ok(())
    }

    /// Bitmask form; requires fewer than 64 edges.
    pub fn to_mask(&self, g: &StableGraph) -> Result<u64> {
        if g.num_edges() >= 64 {
            return Err(Error::Infeasible(
                "edge masks support at most 63 edges".into(),
            ));
        }
        self.check(g)?;
        Ok(self.members.iter().fold(0u64, |m, &e| m | (1 << e)))
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::new((0..64).filter(|b| mask >> b & 1 == 1))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl StableGraph {
    /// Validated construction of a stable dual graph: connected, every vertex
    /// satisfies 2g_v - 2 + deg(v) > 0, arithmetic genus at least 2.
    pub fn new(genus: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::relaxed(genus, edges)?;
        g.check_stable()?;
        Ok(g)
    }

    /// Index-validity only. Used for partial normalizations and other
    /// intermediates that may be disconnected or unstable.
    pub fn relaxed(genus: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if genus.is_empty() {
            return Err(Error::InvalidGraph("graph must have a vertex".into()));
        }
        let n = genus.len();
        let edges = edges
            .into_iter()
            .map(|(u, v)| {
                if u >= n || v >= n {
                    Err(Error::InvalidGraph(format!(
                        "edge ({u},{v}) out of range for {n} vertices"
                    )))
                } else {
                    Ok((u.min(v), u.max(v)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StableGraph { genus, edges })
    }

    fn check_stable(&self) -> Result<()> {
        if self.connected_components() != 1 {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        for v in 0..self.num_vertices() {
            let d = self.degree(v);
            if 2 * self.genus[v] as i64 - 2 + d as i64 <= 0 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} (genus {}, degree {d}) violates stability",
                    self.genus[v]
                )));
            }
        }
        if self.arithmetic_genus() < 2 {
            return Err(Error::InvalidGraph(format!(
                "arithmetic genus {} < 2",
                self.arithmetic_genus()
            )));
        }
        Ok(())
    }

    pub fn is_stable_valid(&self) -> bool {
        self.check_stable().is_ok()
    }

    pub fn num_vertices(&self) -> usize {
        self.genus.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn genus_labels(&self) -> &[u32] {
        &self.genus
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges
            .get(e)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("edge index {e} out of range")))
    }

    pub fn is_loop(&self, e: usize) -> Result<bool> {
        let (u, v) = self.edge(e)?;
        Ok(u == v)
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Sum of the geometric genera of the vertices.
    pub fn genus_sum(&self) -> i64 {
        self.genus.iter().map(|&g| g as i64).sum()
    }

    /// Number of connected components (isolated vertices count).
    pub fn connected_components(&self) -> usize {
        let mut dsu: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru != rv {
                dsu[ru] = rv;
            }
        }
        (0..self.num_vertices())
            .filter(|&v| find(&mut dsu, v) == v)
            .count()
    }

    /// First Betti number delta - gamma + gamma_c; loops count as edges.
    pub fn betti_1(&self) -> i64 {
        self.num_edges() as i64 - self.num_vertices() as i64 + self.connected_components() as i64
    }

    /// Arithmetic genus: sum of vertex genera + delta - gamma + gamma_c.
    pub fn arithmetic_genus(&self) -> i64 {
        self.genus_sum() + self.betti_1()
    }

    /// Deletes the edges in `sigma`, keeping every vertex: the dual graph of
    /// the normalization of the curve at those nodes. The result is relaxed
    /// (generally disconnected and unstable).
    pub fn normalize_at(&self, sigma: &NodeSet) -> Result<StableGraph> {
        sigma.check(self)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !sigma.contains(*i))
            .map(|(_, &e)| e)
            .collect();
        StableGraph::relaxed(self.genus.clone(), edges)
    }

    /// Internal iff a loop; separating iff deleting it raises the component
    /// count; otherwise nonseparating-external.
    pub fn classify_node(&self, e: usize) -> Result<NodeKind> {
        if self.is_loop(e)? {
            return Ok(NodeKind::Internal);
        }
        let deleted = self.normalize_at(&NodeSet::new([e]))?;
        if deleted.connected_components() > self.connected_components() {
            Ok(NodeKind::Separating)
        } else {
            Ok(NodeKind::NonseparatingExternal)
        }
    }

    /// True iff every edge is separating (equivalently no cycles and no loops).
    pub fn is_compact_type(&self) -> bool {
        (0..self.num_edges())
            .all(|e| matches!(self.classify_node(e), Ok(NodeKind::Separating)))
    }

    /// Contracts rational tails and smooths rational bridges until the graph
    /// is stable. The input must be connected of arithmetic genus >= 2;
    /// genus-0 vertices of degree 1 or 2 are allowed and removed.
    ///
    /// Arithmetic genus is preserved.
    pub fn stabilize(&self) -> Result<StableGraph> {
        if self.connected_components() != 1 {
            return Err(Error::InvalidInput(
                "stabilize requires a connected graph".into(),
            ));
        }
        if self.arithmetic_genus() < 2 {
            return Err(Error::InvalidInput(format!(
                "stabilize requires genus >= 2, got {}",
                self.arithmetic_genus()
            )));
        }
        let mut genus = self.genus.clone();
        let mut edges = self.edges.clone();
        loop {
            let degree = |edges: &Vec<(usize, usize)>, v: usize| -> usize {
                edges
                    .iter()
                    .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
                    .sum()
            };
            let n = genus.len();
            let unstable = (0..n).find(|&v| genus[v] == 0 && degree(&edges, v) <= 2);
            let Some(v) = unstable else { break };
            let incident: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect();
            match incident.len() {
                1 => {
                    let (a, b) = edges[incident[0]];
                    if a == v && b == v {
                        // lone loop on a rational vertex: an isolated genus-1
                        // piece, impossible in a connected genus >= 2 graph
                        return Err(Error::InvalidInput(
                            "rational vertex carrying only a loop".into(),
                        ));
                    }
                    edges.remove(incident[0]);
                }
                2 => {
                    let other = |(a, b): (usize, usize)| if a == v { b } else { a };
                    let x = other(edges[incident[0]]);
                    let y = other(edges[incident[1]]);
                    edges.remove(incident[1]);
                    edges.remove(incident[0]);
                    edges.push((x.min(y), x.max(y)));
                }
                0 => {
                    return Err(Error::InvalidInput(
                        "isolated rational vertex cannot be stabilized".into(),
                    ));
                }
                _ => unreachable!("degree <= 2 vertex has at most 2 incident edges"),
            }
            // drop v, shifting indices
            genus.remove(v);
            for e in edges.iter_mut() {
                if e.0 > v {
                    e.0 -= 1;
                }
                if e.1 > v {
                    e.1 -= 1;
                }
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
        }
        let out = StableGraph::new(genus, edges)?;
        debug_assert_eq!(out.arithmetic_genus(), self.arithmetic_genus());
        Ok(out)
    }

    /// Two rational vertices joined by exactly g+1 parallel edges, no loops.
    pub fn is_split(&self, g: i64) -> bool {
        self.num_vertices() == 2
            && self.genus == [0, 0]
            && self.num_edges() as i64 == g + 1
            && self.edges.iter().all(|&(u, v)| u != v)
            && self.arithmetic_genus() == g
    }

    /// Four rational vertices meeting pairwise once: K4, all genera zero.
    pub fn is_polygonal_g3(&self) -> bool {
        if self.num_vertices() != 4 || self.num_edges() != 6 || self.genus != [0, 0, 0, 0] {
            return false;
        }
        let mut pairs = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v || !pairs.insert((u, v)) {
                return false;
            }
        }
        pairs.len() == 6
    }

    fn multiplicity_matrix(&self) -> Vec<u64> {
        let n = self.num_vertices();
        let mut m = vec![0u64; n * n];
        for &(u, v) in &self.edges {
            m[u * n + v] += 1;
            if u != v {
                m[v * n + u] += 1;
            }
        }
        m
    }

    /// Iterated neighbourhood refinement with hashed colors. Hash collisions
    /// can only merge classes, which costs time in the canonical search but
    /// never changes its result; the final key is computed from exact data.
    fn refine_colors(&self, mult: &[u64]) -> Vec<u64> {
        fn mix(mut x: u64, y: u64) -> u64 {
            // splitmix-style combine, deterministic across runs
            x ^= y.wrapping_add(0x9e3779b97f4a7c15)
                .wrapping_add(x << 6)
                .wrapping_add(x >> 2);
            x = x.wrapping_mul(0xbf58476d1ce4e5b9);
            x ^= x >> 27;
            x.wrapping_mul(0x94d049bb133111eb)
        }
        let n = self.num_vertices();
        let mut colors: Vec<u64> = (0..n)
            .map(|v| {
                mix(
                    mix(self.genus[v] as u64 + 1, self.degree(v) as u64),
                    mult[v * n + v],
                )
            })
            .collect();
        let mut next = vec![0u64; n];
        let mut buf: Vec<(u64, u64)> = Vec::with_capacity(n);
        let mut distinct = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            for v in 0..n {
                buf.clear();
                for u in 0..n {
                    let m = mult[v * n + u];
                    if u != v && m > 0 {
                        buf.push((m, colors[u]));
                    }
                }
                buf.sort_unstable();
                let mut h = colors[v];
                for &(m, c) in &buf {
                    h = mix(h, mix(m, c));
                }
                next[v] = h;
            }
            std::mem::swap(&mut colors, &mut next);
            let d = {
                let mut c = colors.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            if d == distinct {
                break;
            }
            distinct = d;
        }
        colors
    }

    /// Canonical key: the lexicographically least encoding of (genus labels,
    /// multiplicity matrix) over all vertex orders that respect the refined
    /// color classes. Equal keys iff isomorphic as genus-decorated
    /// multigraphs.
    ///
    /// The encoding is built position by position (each placed vertex
    /// contributes its genus, its multiplicities to the already-placed
    /// vertices, and its loop count), so the search prunes as soon as a
    /// partial order is worse than the best complete one.
    pub fn canonical_form(&self) -> CanonicalKey {
        let n = self.num_vertices();
        let mult = self.multiplicity_matrix();
        let colors = self.refine_colors(&mult);

        // class id per vertex, classes ordered by color value
        let mut palette: Vec<u64> = colors.clone();
        palette.sort_unstable();
        palette.dedup();
        let class_of: Vec<usize> = colors
            .iter()
            .map(|c| palette.binary_search(c).unwrap())
            .collect();
        // class occupying each position block
        let mut pos_class: Vec<usize> = Vec::with_capacity(n);
        for (ci, _) in palette.iter().enumerate() {
            for v in 0..n {
                if class_of[v] == ci {
                    pos_class.push(ci);
                }
            }
        }

        struct Search<'a> {
            n: usize,
            genus: &'a [u32],
            mult: &'a [u64],
            class_of: &'a [usize],
            pos_class: &'a [usize],
            order: Vec<usize>,
            used: Vec<bool>,
            cur: Vec<u64>,
            best: Option<Vec<u64>>,
        }
        impl Search<'_> {
            // Invariant: `best` is None, or `cur` equals the corresponding
            // prefix of `best`. A strictly smaller block invalidates `best`
            // (every completion below will beat it); the first leaf reached
            // with no `best` installs one.
            fn dfs(&mut self) {
                let p = self.order.len();
                if p == self.n {
                    if self.best.is_none() {
                        self.best = Some(self.cur.clone());
                    }
                    return;
                }
                let want = self.pos_class[p];
                for v in 0..self.n {
                    if self.used[v] || self.class_of[v] != want {
                        continue;
                    }
                    // block: genus, multiplicities to placed, loop count
                    let start = self.cur.len();
                    self.cur.push(self.genus[v] as u64);
                    for q in 0..p {
                        self.cur.push(self.mult[v * self.n + self.order[q]]);
                    }
                    self.cur.push(self.mult[v * self.n + v]);
                    let mut prune = false;
                    if let Some(best) = &self.best {
                        match self.cur[start..].cmp(&best[start..self.cur.len()]) {
                            std::cmp::Ordering::Greater => prune = true,
                            std::cmp::Ordering::Less => self.best = None,
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                    if !prune {
                        self.used[v] = true;
                        self.order.push(v);
                        self.dfs();
                        self.order.pop();
                        self.used[v] = false;
                    }
                    self.cur.truncate(start);
                }
            }
        }
        let mut search = Search {
            n,
            genus: &self.genus,
            mult: &mult,
            class_of: &class_of,
            pos_class: &pos_class,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            cur: Vec::with_capacity(n * (n + 3) / 2),
            best: None,
        };
        search.dfs();
        let mut key = Vec::with_capacity(2 + n * (n + 3) / 2);
        key.push(n as u64);
        key.push(self.num_edges() as u64);
        key.extend(search.best.expect("at least one ordering"));
        CanonicalKey(key)
    }

    pub fn is_isomorphic(&self, other: &StableGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            genus_labels: self.genus.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        })
        .expect("graph serialization cannot fail")
    }

    /// Parses the JSON wire form and validates the full stable invariants.
    pub fn from_json(s: &str) -> Result<StableGraph> {
        let gj: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad graph JSON: {e}")))?;
        StableGraph::new(gj.genus_labels, gj.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    /// Parses the JSON wire form with relaxed validation.
    pub fn from_json_relaxed(s: &str) -> Result<StableGraph> {
        let gj: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad graph JSON: {e}")))?;
        StableGraph::relaxed(gj.genus_labels, gj.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    /// The split-curve dual graph of genus g: two rational vertices and g+1
    /// parallel edges.
    pub fn split_curve(g: u32) -> StableGraph {
        StableGraph::new(vec![0, 0], vec![(0, 1); g as usize + 1])
            .expect("split graph is stable for g >= 2")
    }

    /// K4 with rational vertices: the polygonal genus-3 graph.
    pub fn polygonal_g3() -> StableGraph {
        StableGraph::new(
            vec![0, 0, 0, 0],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .expect("K4 is stable")
    }

    /// Smooth curve of genus g: a single vertex, no edges.
    pub fn smooth(g: u32) -> StableGraph {
        StableGraph::new(vec![g], vec![]).expect("smooth graph is stable for g >= 2")
    }
}

/// Isomorphism-invariant key; total order gives deterministic report output.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u64>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formula_examples() {
        assert_eq!(StableGraph::split_curve(3).arithmetic_genus(), 3);
        assert_eq!(StableGraph::smooth(5).arithmetic_genus(), 5);
        assert_eq!(StableGraph::polygonal_g3().arithmetic_genus(), 3);
    }

    #[test]
    fn normalize_at_examples() {
        let split = StableGraph::split_curve(3);
        let full = split.normalize_at(&NodeSet::full(&split)).unwrap();
        assert_eq!(full.connected_components(), 2);
        assert_eq!(full.num_edges(), 0);

        let partial = split.normalize_at(&NodeSet::new([0, 1])).unwrap();
        assert_eq!(partial.connected_components(), 1);
        assert_eq!(partial.num_edges(), 2);

        let loopy = StableGraph::new(vec![2], vec![(0, 0)]).unwrap();
        let n = loopy.normalize_at(&NodeSet::new([0])).unwrap();
        assert_eq!(n.num_edges(), 0);
        assert_eq!(n.arithmetic_genus(), 2);

        assert!(split.normalize_at(&NodeSet::new([7])).is_err());
        assert_eq!(split.normalize_at(&NodeSet::empty()).unwrap(), split);
    }

    #[test]
    fn components_and_betti() {
        let split = StableGraph::split_curve(3);
        assert_eq!(split.connected_components(), 1);
        assert_eq!(split.betti_1(), 3);

        let two = StableGraph::relaxed(vec![1, 1], vec![]).unwrap();
        assert_eq!(two.connected_components(), 2);
        assert_eq!(two.betti_1(), 0);

        let lonely_loop = StableGraph::relaxed(vec![1], vec![(0, 0)]).unwrap();
        assert_eq!(lonely_loop.connected_components(), 1);
        assert_eq!(lonely_loop.betti_1(), 1);
    }

    #[test]
    fn node_classification() {
        let g = StableGraph::new(vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.classify_node(0).unwrap(), NodeKind::Internal);
        assert_eq!(g.classify_node(1).unwrap(), NodeKind::Separating);
        let split = StableGraph::split_curve(4);
        for e in 0..split.num_edges() {
            assert_eq!(
                split.classify_node(e).unwrap(),
                NodeKind::NonseparatingExternal
            );
        }
    }

    #[test]
    fn stabilize_chain() {
        // 1 -- 0 -- 2 chain: middle rational bridge smooths away
        let chain = StableGraph::relaxed(vec![1, 0, 2], vec![(0, 1), (1, 2)]).unwrap();
        let st = chain.stabilize().unwrap();
        assert_eq!(st.num_vertices(), 2);
        assert_eq!(st.num_edges(), 1);
        assert_eq!(st.arithmetic_genus(), chain.arithmetic_genus());
        assert_eq!(st.arithmetic_genus(), 3);
    }

    #[test]
    fn stabilize_identity_and_subdivision() {
        let split = StableGraph::split_curve(3);
        assert!(split.stabilize().unwrap().is_isomorphic(&split));

        // subdivide one edge of the split graph by a rational vertex
        let sub = StableGraph::relaxed(
            vec![0, 0, 0],
            vec![(0, 2), (2, 1), (0, 1), (0, 1), (0, 1)],
        )
        .unwrap();
        assert!(sub.stabilize().unwrap().is_isomorphic(&split));
    }

    #[test]
    fn stabilize_parallel_pair_becomes_loop() {
        // rational vertex joined twice to a genus-2 vertex: smoothing gives a loop
        let g = StableGraph::relaxed(vec![2, 0], vec![(0, 1), (0, 1)]).unwrap();
        let st = g.stabilize().unwrap();
        assert_eq!(st.num_vertices(), 1);
        assert_eq!(st.num_edges(), 1);
        assert!(st.is_loop(0).unwrap());
        assert_eq!(st.arithmetic_genus(), 3);
    }

    #[test]
    fn split_and_polygonal_predicates() {
        assert!(StableGraph::new(vec![0, 0], vec![(0, 1); 5]).unwrap().is_split(4));
        assert!(StableGraph::polygonal_g3().is_polygonal_g3());
        let smooth = StableGraph::smooth(3);
        assert!(!smooth.is_split(3));
        assert!(!smooth.is_polygonal_g3());
    }

    #[test]
    fn canonical_form_invariance() {
        let a = StableGraph::new(vec![0, 0], vec![(0, 1); 4]).unwrap();
        let b = StableGraph::new(vec![0, 0], vec![(1, 0); 4]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());

        let split3 = StableGraph::split_curve(3);
        assert_ne!(
            split3.canonical_form(),
            StableGraph::polygonal_g3().canonical_form()
        );

        // theta graphs with genus (1,1) vertices, relabeled
        let t1 = StableGraph::new(vec![1, 1], vec![(0, 1), (0, 1)]).unwrap();
        let t2 = StableGraph::new(vec![1, 1], vec![(1, 0), (0, 1)]).unwrap();
        assert!(t1.is_isomorphic(&t2));
    }

    #[test]
    fn canonical_form_random_relabeling() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let g = StableGraph::new(
            vec![0, 1, 0, 2],
            vec![(0, 1), (0, 2), (0, 2), (1, 3), (2, 3), (3, 3)],
        )
        .unwrap();
        let key = g.canonical_form();
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..4).collect();
            perm.shuffle(&mut rng);
            let genus: Vec<u32> = (0..4).map(|v| g.genus_labels()[perm[v]]).collect();
            let mut inv = vec![0; 4];
            for (new, &old) in perm.iter().enumerate() {
                inv[old] = new;
            }
            let edges: Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (inv[u], inv[v])).collect();
            let h = StableGraph::new(genus, edges).unwrap();
            assert_eq!(h.canonical_form(), key);
        }
    }

    #[test]
    fn validation_rejects_bad_graphs() {
        // unstable rational vertex
        assert!(StableGraph::new(vec![0, 0], vec![(0, 1), (0, 1)]).is_err());
        // disconnected
        assert!(StableGraph::new(vec![2, 2], vec![]).is_err());
        // genus too small
        assert!(StableGraph::new(vec![1], vec![]).is_err());
        // bad index
        assert!(StableGraph::new(vec![2], vec![(0, 1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = StableGraph::split_curve(3);
        let s = g.to_json();
        assert_eq!(s, r#"{"genus_labels":[0,0],"edges":[[0,1],[0,1],[0,1],[0,1]]}"#);
        let h = StableGraph::from_json(&s).unwrap();
        assert_eq!(g, h);
        assert!(StableGraph::from_json("{\"genus_labels\":[0],\"edges\":[]}").is_err());
    }
}
