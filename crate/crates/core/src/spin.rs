//! Admissible node sets, exponents, multiplicity sets, per-support counts,
//! split-curve statistics, the split/polygonal classification, and the
//! domination order on finite integer sets.
//!
//! A set of nodes is admissible when every vertex of the dual graph meets the
//! complement in an even number of non-loop edges; equivalently, complements
//! of admissible sets form the GF(2) cycle space of the graph (loops counting
//! as independent cycles), so there are exactly 2^b1 of them.
//!
//! The exponent of a node set counts the genus drop of the normalization at
//! the set; 2^exponent is the scheme multiplicity of the spin components
//! supported there.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::exact::{binomial, odd_theta_count, pow2};
use crate::graph::{NodeSet, StableGraph};
use crate::{Error, Result};

/// Exponent set E of a stable graph: the exponents of its admissible sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentSet {
    pub values: BTreeSet<i64>,
}

impl ExponentSet {
    pub fn contains(&self, e: i64) -> bool {
        self.values.contains(&e)
    }
    pub fn max(&self) -> Option<i64> {
        self.values.iter().next_back().copied()
    }
}

/// Multiplicity set of the spin scheme: powers of two, one per exponent that
/// actually supports odd spin curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicitySet {
    pub values: BTreeSet<u128>,
}

/// Counting data for the spin curves supported on one admissible set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinSupportReport {
    pub sigma: NodeSet,
    pub exponent: i64,
    pub n_total: u128,
    pub n_odd: u128,
    pub multiplicity: u128,
}

/// True iff every vertex meets the complement of `sigma` in an even number
/// of non-loop edge ends.
pub fn is_admissible(g: &StableGraph, sigma: &NodeSet) -> Result<bool> {
    sigma.check(g)?;
    let mut odd = vec![0usize; g.num_vertices()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u != v && !sigma.contains(i) {
            odd[u] += 1;
            odd[v] += 1;
        }
    }
    Ok(odd.iter().all(|&c| c % 2 == 0))
}

/// The complete list of admissible sets, generated as complements of the
/// GF(2) cycle space (loops are independent generators). Sorted by mask for
/// deterministic output; cardinality 2^b1.
pub fn admissible_sets(g: &StableGraph) -> Result<Vec<NodeSet>> {
    let delta = g.num_edges();
    if delta >= 64 {
        return Err(Error::Infeasible(
            "admissible-set generation supports at most 63 edges".into(),
        ));
    }
    let b1 = g.betti_1();
    if b1 > 25 {
        return Err(Error::Infeasible(format!(
            "2^{b1} admissible sets is beyond desk scale"
        )));
    }
    // spanning forest by union-find; non-tree edges generate the cycle space
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut tree_edges: Vec<usize> = Vec::new();
    let mut generators: Vec<u64> = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            generators.push(1 << i);
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            // fundamental cycle: edge + tree path between endpoints
            generators.push(fundamental_cycle(g, &tree_edges, i));
        } else {
            parent[ru] = rv;
            tree_edges.push(i);
        }
    }
    debug_assert_eq!(generators.len() as i64, b1);
    let full: u64 = if delta == 0 { 0 } else { (1 << delta) - 1 };
    let mut masks: Vec<u64> = Vec::with_capacity(1 << generators.len());
    for pick in 0u64..(1 << generators.len()) {
        let mut t = 0u64;
        for (k, gen) in generators.iter().enumerate() {
            if pick >> k & 1 == 1 {
                t ^= gen;
            }
        }
        masks.push(full & !t);
    }
    masks.sort_unstable();
    masks.dedup();
    Ok(masks.into_iter().map(NodeSet::from_mask).collect())
}

fn fundamental_cycle(g: &StableGraph, tree_edges: &[usize], e: usize) -> u64 {
    // BFS through tree edges from u to v, then add e itself
    let (u, v) = g.edges()[e];
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (other, edge)
    for &t in tree_edges {
        let (a, b) = g.edges()[t];
        adj[a].push((b, t));
        adj[b].push((a, t));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = std::collections::VecDeque::from([u]);
    visited[u] = true;
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &(y, t) in &adj[x] {
            if !visited[y] {
                visited[y] = true;
                prev[y] = Some((x, t));
                queue.push_back(y);
            }
        }
    }
    let mut mask = 1u64 << e;
    let mut cur = v;
    while cur != u {
        let (p, t) = prev[cur].expect("forest path exists");
        mask |= 1 << t;
        cur = p;
    }
    mask
}

/// Brute-force reference: filter all 2^delta subsets by the parity test.
pub fn admissible_sets_bruteforce(g: &StableGraph) -> Result<Vec<NodeSet>> {
    let delta = g.num_edges();
    if delta > 20 {
        return Err(Error::Infeasible(
            "brute-force admissibility capped at 20 edges".into(),
        ));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << delta) {
        let sigma = NodeSet::from_mask(mask);
        if is_admissible(g, &sigma)? {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Exponent of an arbitrary (not necessarily admissible) node set:
/// #sigma - gamma_c(normalization) + gamma_c(graph), the drop in arithmetic
/// genus under normalization at sigma.
pub fn exponent(g: &StableGraph, sigma: &NodeSet) -> Result<i64> {
    let normalized = g.normalize_at(sigma)?;
    Ok(sigma.len() as i64 - normalized.connected_components() as i64
        + g.connected_components() as i64)
}

/// Exponents of all admissible sets.
pub fn exponent_set(g: &StableGraph) -> Result<ExponentSet> {
    let mut values = BTreeSet::new();
    for sigma in admissible_sets(g)? {
        values.insert(exponent(g, &sigma)?);
    }
    Ok(ExponentSet { values })
}

/// Square-root counts for the spin curves supported on an admissible set.
///
/// Writing Z for the normalization at sigma, the number of spin curves
/// supported there is 2^(2 sum g_v + b1(Z)); exactly half are odd unless
/// sigma exhausts the edges, in which case odd spin curves are counted by the
/// parity rule (an odd number of components must carry an odd
/// theta-characteristic).
pub fn spin_counts(g: &StableGraph, sigma: &NodeSet) -> Result<SpinSupportReport> {
    if !is_admissible(g, sigma)? {
        return Err(Error::InvalidInput(format!(
            "set {sigma} is not admissible"
        )));
    }
    let z = g.normalize_at(sigma)?;
    let genus_sum: u32 = g.genus_labels().iter().sum();
    let e = exponent(g, sigma)?;
    let n_total = pow2(2 * genus_sum + z.betti_1() as u32);
    let n_odd = if sigma.len() == g.num_edges() {
        // all nodes: product over components of odd/even theta counts
        let odd_total: u128 = g.genus_labels().iter().map(|&gv| pow2(2 * gv)).product();
        let even_excess: u128 = g.genus_labels().iter().map(|&gv| pow2(gv)).product();
        (odd_total - even_excess) / 2
    } else {
        n_total / 2
    };
    Ok(SpinSupportReport {
        sigma: sigma.clone(),
        exponent: e,
        n_total,
        n_odd,
        multiplicity: pow2(e as u32),
    })
}

/// Multiplicity set of the odd spin scheme: 2^n over n in the exponent set,
/// dropping the top exponent exactly when every component is rational (no
/// odd theta-characteristic survives on a union of rational curves).
pub fn multiplicity_set(g: &StableGraph) -> Result<MultiplicitySet> {
    let es = exponent_set(g)?;
    let all_rational = g.genus_labels().iter().all(|&x| x == 0);
    let top = g.arithmetic_genus() - g.genus_sum();
    let values = es
        .values
        .iter()
        .filter(|&&n| !(all_rational && n == top))
        .map(|&n| pow2(n as u32))
        .collect();
    Ok(MultiplicitySet { values })
}

/// Component count, length and multiplicity set of the high-multiplicity part
/// of the spin scheme of a split curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SHatStats {
    pub components: u128,
    pub length: u128,
    pub multiplicities: [u128; 2],
}

pub fn s_hat_stats(g: u32) -> Result<SHatStats> {
    if g < 3 {
        return Err(Error::InvalidInput("split statistics need g >= 3".into()));
    }
    let t_low = 4 * binomial((g + 1) as u64, (g - 3) as u64);
    let t_high = binomial((g + 1) as u64, (g - 1) as u64);
    Ok(SHatStats {
        components: t_low + t_high,
        length: pow2(g - 3) * t_low + pow2(g - 1) * t_high,
        multiplicities: [pow2(g - 3), pow2(g - 1)],
    })
}

/// Number of theta-hyperplanes of each type for a split curve of genus g:
/// t_i = C(g+1, i) 2^(g-i-1) when i < g has parity opposite to g, else 0.
/// The weighted sum over all types is the odd theta-characteristic count.
pub fn split_theta_counts(g: u32) -> Result<BTreeMap<u32, u128>> {
    if g < 3 {
        return Err(Error::InvalidInput("split curves need g >= 3".into()));
    }
    let mut out = BTreeMap::new();
    for i in 0..=g - 1 {
        let t = if i % 2 != g % 2 {
            binomial((g + 1) as u64, i as u64) * pow2(g - i - 1)
        } else {
            0
        };
        out.insert(i, t);
    }
    Ok(out)
}

/// Shape classification of a stable graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Split,
    PolygonalGenus3,
    Other,
}

pub fn classify(g: &StableGraph) -> Classification {
    if g.is_split(g.arithmetic_genus()) {
        Classification::Split
    } else if g.is_polygonal_g3() {
        Classification::PolygonalGenus3
    } else {
        Classification::Other
    }
}

/// One failed check inside a verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub statement: String,
    pub graph: serde_json::Value,
    pub detail: String,
}

impl FailureRecord {
    fn new(statement: &str, graph: &StableGraph, detail: String) -> Self {
        FailureRecord {
            statement: statement.to_string(),
            graph: serde_json::from_str(&graph.to_json()).expect("valid graph JSON"),
            detail,
        }
    }
}

/// Outcome of a verification suite over an enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub genus: u32,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<FailureRecord>,
    /// Canonical shapes surviving the classification predicate
    /// (classification suite only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub survivors: Vec<String>,
}

impl VerifyReport {
    fn new(suite: &str, genus: u32) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            genus,
            checked: 0,
            passed: true,
            failures: Vec::new(),
            survivors: Vec::new(),
        }
    }
    fn fail(&mut self, rec: FailureRecord) {
        self.passed = false;
        self.failures.push(rec);
    }
}

/// Classification theorem: a stable genus-g graph satisfies
/// {g in E, g-2 not in E} exactly when it is split (or polygonal at g = 3).
/// Verified exhaustively over the enumeration.
pub fn verify_classification(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("3.4.1", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    report.checked = graphs.len();
    for graph in &graphs {
        let es = exponent_set(graph)?;
        let predicate = es.contains(g as i64) && !es.contains(g as i64 - 2);
        let shape = classify(graph);
        let shape_selected = shape != Classification::Other;
        if predicate != shape_selected {
            report.fail(FailureRecord::new(
                "3.4.1",
                graph,
                format!(
                    "predicate {predicate} but shape {shape:?}; E = {:?}",
                    es.values
                ),
            ));
        }
        if predicate {
            report.survivors.push(format!("{:?}", shape));
        }
    }
    report.survivors.sort();
    report.survivors.dedup();
    let expected: Vec<String> = if g == 3 {
        vec!["PolygonalGenus3".into(), "Split".into()]
    } else {
        vec!["Split".into()]
    };
    if report.survivors != expected {
        report.passed = false;
        report.failures.push(FailureRecord {
            statement: "3.4.1".into(),
            graph: serde_json::Value::Null,
            detail: format!(
                "surviving classes {:?}, expected {:?}",
                report.survivors, expected
            ),
        });
    }
    Ok(report)
}

/// Split curves are identified among all stable genus-g graphs by their full
/// exponent set, and likewise by their full multiplicity set. Verified
/// exhaustively over the enumeration.
///
/// This is strictly finer than the two-membership predicate of the
/// classification suite; see that suite for the predicate's exceptional
/// class at genus 4.
pub fn verify_split_identification(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("3.4.2", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    report.checked = graphs.len();
    let split = StableGraph::split_curve(g);
    let split_e = exponent_set(&split)?;
    let split_l = multiplicity_set(&split)?;
    for graph in &graphs {
        let is_split = graph.is_split(g as i64);
        if (exponent_set(graph)? == split_e) != is_split {
            report.fail(FailureRecord::new(
                "3.4.2a",
                graph,
                "exponent set equals the split set on a non-split graph".into(),
            ));
        }
        if (multiplicity_set(graph)? == split_l) != is_split {
            report.fail(FailureRecord::new(
                "3.4.2b",
                graph,
                "multiplicity set equals the split set on a non-split graph".into(),
            ));
        }
    }
    Ok(report)
}

/// Complements of disjoint unions of cyclic sets are admissible, with
/// exponent exactly b1 - 1 for one cyclic set and at most b1 - n for n of
/// them. Verified on every enumerated graph.
pub fn verify_cyclic_complements(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("3.2.1", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    for graph in &graphs {
        let top = graph.arithmetic_genus() - graph.genus_sum();
        let cycles = cyclic_sets(graph)?;
        report.checked += cycles.len();
        for c in &cycles {
            let sigma = complement(graph, c);
            if !is_admissible(graph, &sigma)? {
                report.fail(FailureRecord::new(
                    "3.2.1",
                    graph,
                    format!("complement of cyclic set {c} not admissible"),
                ));
                continue;
            }
            let e = exponent(graph, &sigma)?;
            if e != top - 1 {
                report.fail(FailureRecord::new(
                    "3.2.1",
                    graph,
                    format!(
                        "complement of cyclic set {c} has exponent {e}, want {}",
                        top - 1
                    ),
                ));
            }
        }
        // disjoint pairs
        for (i, a) in cycles.iter().enumerate() {
            for b in cycles.iter().skip(i + 1) {
                if !a.is_disjoint(b) {
                    continue;
                }
                let sigma = complement(graph, &a.union(b));
                if !is_admissible(graph, &sigma)? {
                    report.fail(FailureRecord::new(
                        "3.2.1",
                        graph,
                        format!("complement of disjoint cyclic sets {a}, {b} not admissible"),
                    ));
                } else if exponent(graph, &sigma)? > top - 2 {
                    report.fail(FailureRecord::new(
                        "3.2.1",
                        graph,
                        format!("complement of {a} and {b} exceeds exponent bound {}", top - 2),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Extremal exponents: for non-compact-type graphs both b1 - 1 and b1 lie in
/// E; the exponent b1 is attained only by the full edge set; an internal node
/// forces b1 - 2 into E unless its normalization is of compact type and
/// E = {0, 1}.
pub fn verify_exponent_extremes(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("3.2.2", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    report.checked = graphs.len();
    for graph in &graphs {
        let top = graph.arithmetic_genus() - graph.genus_sum();
        let es = exponent_set(graph)?;
        if !graph.is_compact_type() && !(es.contains(top - 1) && es.contains(top)) {
            report.fail(FailureRecord::new(
                "3.2.2a",
                graph,
                format!("E = {:?} misses {} or {}", es.values, top - 1, top),
            ));
        }
        for sigma in admissible_sets(graph)? {
            if exponent(graph, &sigma)? == top && sigma.len() != graph.num_edges() {
                report.fail(FailureRecord::new(
                    "3.2.2b",
                    graph,
                    format!("proper admissible set {sigma} attains the top exponent"),
                ));
            }
        }
        for e in 0..graph.num_edges() {
            if !graph.is_loop(e)? {
                continue;
            }
            let z = graph.normalize_at(&NodeSet::new([e]))?;
            let z_compact = (0..z.num_edges())
                .all(|i| matches!(z.classify_node(i), Ok(crate::graph::NodeKind::Separating)));
            let dichotomy =
                es.contains(top - 2) || (z_compact && es.values == BTreeSet::from([0, 1]));
            if !dichotomy {
                report.fail(FailureRecord::new(
                    "3.2.2c",
                    graph,
                    format!("internal node {e}: E = {:?}", es.values),
                ));
            }
        }
    }
    Ok(report)
}

/// Compact type is equivalent to E = {0}. Verified on every enumerated graph.
pub fn verify_compact_type(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("3.3.1", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    report.checked = graphs.len();
    for graph in &graphs {
        let es = exponent_set(graph)?;
        let trivial = es.values == BTreeSet::from([0]);
        if trivial != graph.is_compact_type() {
            report.fail(FailureRecord::new(
                "3.3.1",
                graph,
                format!(
                    "compact_type = {} but E = {:?}",
                    graph.is_compact_type(),
                    es.values
                ),
            ));
        }
    }
    Ok(report)
}

/// Stabilization preserves the exponent set: checked on `count` seeded random
/// destabilizations spread over the enumerated graphs.
pub fn verify_stabilization_invariance(g: u32, seed: u64, count: usize) -> Result<VerifyReport> {
    use rand::SeedableRng;
    let mut report = VerifyReport::new("3.3.2", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    for k in 0..count {
        let base = &graphs[k % graphs.len()];
        let steps = 1 + k % 4;
        let wrecked = crate::enumerate::random_destabilization(base, &mut rng, steps);
        let stable = wrecked.stabilize()?;
        let before = exponent_set_relaxed(&wrecked)?;
        let after = exponent_set(&stable)?;
        report.checked += 1;
        if before != after {
            report.fail(FailureRecord::new(
                "3.3.2",
                &wrecked,
                format!("E before {:?} != after {:?}", before.values, after.values),
            ));
        }
    }
    Ok(report)
}

/// Exponent set of a graph that need not be stable (used on destabilized
/// inputs, where admissibility and exponents are defined the same way).
pub fn exponent_set_relaxed(g: &StableGraph) -> Result<ExponentSet> {
    let mut values = BTreeSet::new();
    for sigma in admissible_sets(g)? {
        values.insert(exponent(g, &sigma)?);
    }
    Ok(ExponentSet { values })
}

/// Degree identities: summing n_odd 2^e (resp. n_total 2^e) over the
/// admissible sets of any stable genus-g graph gives the odd
/// theta-characteristic count (resp. 2^(2g)). Exact integer equality.
pub fn verify_degree_identities(g: u32) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("degree-identity", g);
    let graphs = crate::enumerate::enumerate_stable_graphs(g)?;
    report.checked = graphs.len();
    for graph in &graphs {
        let (odd, total) = degree_identity_sums(graph)?;
        if odd != odd_theta_count(g) {
            report.fail(FailureRecord::new(
                "degree-identity",
                graph,
                format!("odd sum {odd} != {}", odd_theta_count(g)),
            ));
        }
        if total != pow2(2 * g) {
            report.fail(FailureRecord::new(
                "degree-identity",
                graph,
                format!("total sum {total} != {}", pow2(2 * g)),
            ));
        }
    }
    Ok(report)
}

/// The two weighted sums over all admissible sets.
pub fn degree_identity_sums(g: &StableGraph) -> Result<(u128, u128)> {
    let mut odd = 0u128;
    let mut total = 0u128;
    for sigma in admissible_sets(g)? {
        let rep = spin_counts(g, &sigma)?;
        odd += rep.n_odd * rep.multiplicity;
        total += rep.n_total * rep.multiplicity;
    }
    Ok((odd, total))
}

/// Edge sets forming a closed polygon: a connected subgraph in which every
/// touched vertex has exactly two edge ends (a loop counts as both).
pub fn cyclic_sets(g: &StableGraph) -> Result<Vec<NodeSet>> {
    let delta = g.num_edges();
    if delta > 20 {
        return Err(Error::Infeasible("cyclic-set scan capped at 20 edges".into()));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << delta) {
        let sigma = NodeSet::from_mask(mask);
        if is_cyclic_set(g, &sigma)? {
            out.push(sigma);
        }
    }
    Ok(out)
}

pub fn is_cyclic_set(g: &StableGraph, sigma: &NodeSet) -> Result<bool> {
    sigma.check(g)?;
    if sigma.is_empty() {
        return Ok(false);
    }
    let mut ends: BTreeMap<usize, usize> = BTreeMap::new();
    for e in sigma.iter() {
        let (u, v) = g.edges()[e];
        *ends.entry(u).or_insert(0) += 1;
        *ends.entry(v).or_insert(0) += 1;
    }
    if ends.values().any(|&c| c != 2) {
        return Ok(false);
    }
    // connected on its support: walk the subgraph
    let support: Vec<usize> = ends.keys().copied().collect();
    let mut seen = BTreeSet::from([support[0]]);
    let mut stack = vec![support[0]];
    while let Some(x) = stack.pop() {
        for e in sigma.iter() {
            let (u, v) = g.edges()[e];
            for (a, b) in [(u, v), (v, u)] {
                if a == x && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    Ok(seen.len() == support.len())
}

fn complement(g: &StableGraph, sigma: &NodeSet) -> NodeSet {
    NodeSet::new((0..g.num_edges()).filter(|e| !sigma.contains(*e)))
}

/// Domination order on finite integer sets: L >= M iff some surjection
/// alpha: L -> M satisfies alpha(l) >= l. Decided by exhaustive assignment
/// over covered-target masks, memoized; sets capped at 20 elements.
pub fn dominates(l: &BTreeSet<i64>, m: &BTreeSet<i64>) -> bool {
    if m.is_empty() {
        return l.is_empty();
    }
    if l.len() < m.len() || l.is_empty() {
        return false;
    }
    assert!(l.len() <= 20 && m.len() <= 20, "domination sets capped at 20");
    let lv: Vec<i64> = l.iter().copied().collect();
    let mv: Vec<i64> = m.iter().copied().collect();
    // choices[i]: targets allowed for lv[i]
    let mut choices: Vec<u32> = Vec::with_capacity(lv.len());
    for &x in &lv {
        let mut mask = 0u32;
        for (j, &y) in mv.iter().enumerate() {
            if y >= x {
                mask |= 1 << j;
            }
        }
        if mask == 0 {
            return false; // this element cannot be mapped anywhere
        }
        choices.push(mask);
    }
    let full = (1u32 << mv.len()) - 1;
    let mut memo: BTreeMap<(usize, u32), bool> = BTreeMap::new();
    fn rec(
        i: usize,
        covered: u32,
        choices: &[u32],
        full: u32,
        memo: &mut BTreeMap<(usize, u32), bool>,
    ) -> bool {
        if i == choices.len() {
            return covered == full;
        }
        if let Some(&r) = memo.get(&(i, covered)) {
            return r;
        }
        let mut ok = false;
        let mut options = choices[i];
        while options != 0 {
            let bit = options & options.wrapping_neg();
            options ^= bit;
            if rec(i + 1, covered | bit, choices, full, memo) {
                ok = true;
                break;
            }
        }
        memo.insert((i, covered), ok);
        ok
    }
    rec(0, 0, &choices, full, &mut memo)
}
