//! Exhaustive enumeration of stable dual graphs of a given genus, one
//! representative per isomorphism class.
//!
//! Search order: vertex-genus multisets, then degree sequences compatible
//! with per-vertex stability, then multigraphs realizing a degree sequence
//! (DFS over edge slots), deduplicated by canonical key. Bounds: a stable
//! genus-g graph has at most 2g-2 vertices and 3g-3 edges.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::graph::{CanonicalKey, StableGraph};
use crate::{Error, Result};

/// Largest genus the enumerator accepts. Genus 5 runs in seconds; genus 6 in
/// minutes (canonical forms of ten-vertex regular graphs dominate).
pub const MAX_ENUM_GENUS: u32 = 6;

/// Minimal degree a vertex of the given genus needs for stability
/// (2g - 2 + deg > 0), raised to 1 when the graph has other vertices to
/// reach (a degree-0 vertex in a multi-vertex graph is disconnected).
fn min_degree(genus: u32, multi_vertex: bool) -> usize {
    let stab = match genus {
        0 => 3,
        1 => 1,
        _ => 0,
    };
    if multi_vertex {
        stab.max(1)
    } else {
        stab
    }
}

/// Complete duplicate-free list of stable genus-g dual graphs, sorted by
/// canonical key.
pub fn enumerate_stable_graphs(g: u32) -> Result<Vec<StableGraph>> {
    if !(2..=MAX_ENUM_GENUS).contains(&g) {
        return Err(Error::Infeasible(format!(
            "enumeration supports 2 <= g <= {MAX_ENUM_GENUS}, got {g}"
        )));
    }
    // independent work units: one per (genus multiset, degree sequence)
    let mut units: Vec<(Vec<u32>, Vec<usize>, usize)> = Vec::new();
    let max_vertices = (2 * g - 2) as usize;
    for gamma in 1..=max_vertices {
        for genus_vec in genus_multisets(g, gamma) {
            let sum: u32 = genus_vec.iter().sum();
            let delta = (g - sum) as usize + gamma - 1;
            for degrees in degree_vectors(&genus_vec, 2 * delta) {
                units.push((genus_vec.clone(), degrees, delta));
            }
        }
    }
    let seen: BTreeMap<CanonicalKey, StableGraph> = units
        .into_par_iter()
        .map(|(genus_vec, degrees, delta)| {
            let mut local: BTreeMap<CanonicalKey, StableGraph> = BTreeMap::new();
            emit_multigraphs(&genus_vec, &degrees, delta, &mut |graph| {
                local.entry(graph.canonical_form()).or_insert(graph);
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(seen.into_values().collect())
}

/// Non-increasing genus vectors of length `gamma` with sum <= g.
fn genus_multisets(g: u32, gamma: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(gamma);
    fn rec(g: u32, gamma: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == gamma {
            out.push(cur.clone());
            return;
        }
        let used: u32 = cur.iter().sum();
        for next in (0..=max.min(g - used)).rev() {
            cur.push(next);
            rec(g, gamma, next, cur, out);
            cur.pop();
        }
    }
    rec(g, gamma, g, &mut cur, &mut out);
    out
}

/// Degree vectors summing to `total`, each entry at least the stability
/// minimum for its genus. Vertices of equal genus are forced non-increasing
/// to trim permuted duplicates (final dedupe is by canonical key anyway).
fn degree_vectors(genus_vec: &[u32], total: usize) -> Vec<Vec<usize>> {
    let gamma = genus_vec.len();
    let multi = gamma > 1;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(gamma);
    fn rec(
        genus_vec: &[u32],
        multi: bool,
        remaining: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        let gamma = genus_vec.len();
        if i == gamma {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = min_degree(genus_vec[i], multi);
        // degrees still owed to the remaining vertices
        let owed: usize = (i + 1..gamma)
            .map(|j| min_degree(genus_vec[j], multi))
            .sum();
        let mut hi = remaining.saturating_sub(owed);
        if i > 0 && genus_vec[i] == genus_vec[i - 1] {
            hi = hi.min(cur[i - 1]);
        }
        for d in lo..=hi {
            cur.push(d);
            rec(genus_vec, multi, remaining - d, cur, out);
            cur.pop();
        }
    }
    rec(genus_vec, multi, total, &mut cur, &mut out);
    out
}

/// DFS over edge slots (the loop slot of each vertex, then its pair slots)
/// realizing the degree sequence; connected results go to `sink`.
fn emit_multigraphs(
    genus_vec: &[u32],
    degrees: &[usize],
    delta: usize,
    sink: &mut dyn FnMut(StableGraph),
) {
    let gamma = genus_vec.len();
    let mut rem: Vec<usize> = degrees.to_vec();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(delta);

    // slots in order: (0,0),(0,1),...,(0,n-1),(1,1),(1,2),...
    let slots: Vec<(usize, usize)> = (0..gamma)
        .flat_map(|i| (i..gamma).map(move |j| (i, j)))
        .collect();

    fn rec(
        genus_vec: &[u32],
        slots: &[(usize, usize)],
        s: usize,
        rem: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        sink: &mut dyn FnMut(StableGraph),
    ) {
        if s == slots.len() {
            if rem.iter().all(|&r| r == 0) {
                let graph = StableGraph::relaxed(genus_vec.to_vec(), edges.clone())
                    .expect("indices in range by construction");
                if graph.connected_components() == 1 {
                    sink(
                        StableGraph::new(genus_vec.to_vec(), edges.clone())
                            .expect("degree-feasible connected graph is stable"),
                    );
                }
            }
            return;
        }
        let (i, j) = slots[s];
        // last slot touching vertex i is (i, gamma-1); prune if i cannot finish
        let last_for_i = j == genus_vec.len() - 1 || (i == j && genus_vec.len() == i + 1);
        let max_m = if i == j {
            rem[i] / 2
        } else {
            rem[i].min(rem[j])
        };
        for m in 0..=max_m {
            if m > 0 {
                edges.push((i, j));
                if i == j {
                    rem[i] -= 2;
                } else {
                    rem[i] -= 1;
                    rem[j] -= 1;
                }
            }
            if !(last_for_i && rem[i] != 0) {
                rec(genus_vec, slots, s + 1, rem, edges, sink);
            }
        }
        for _ in 0..max_m {
            edges.pop();
            if i == j {
                rem[i] += 2;
            } else {
                rem[i] += 1;
                rem[j] += 1;
            }
        }
    }
    rec(genus_vec, &slots, 0, &mut rem, &mut edges, sink);
}

/// Reference enumerator that walks every edge multiset directly, without the
/// degree-sequence layer. Exponentially slower; usable up to genus 3. Kept as
/// an independent oracle for the main enumerator.
pub fn enumerate_stable_graphs_bruteforce(g: u32) -> Result<Vec<StableGraph>> {
    if !(2..=3).contains(&g) {
        return Err(Error::Infeasible(
            "brute-force enumeration supports g = 2, 3".into(),
        ));
    }
    let mut seen: BTreeMap<CanonicalKey, StableGraph> = BTreeMap::new();
    let max_vertices = (2 * g - 2) as usize;
    for gamma in 1..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..gamma)
            .flat_map(|i| (i..gamma).map(move |j| (i, j)))
            .collect();
        for genus_vec in genus_multisets(g, gamma) {
            let sum: u32 = genus_vec.iter().sum();
            let delta = (g - sum) as usize + gamma - 1;
            let mut counts = vec![0usize; slots.len()];
            distribute(&mut counts, 0, delta, &mut |counts| {
                let mut edges = Vec::with_capacity(delta);
                for (s, &c) in counts.iter().enumerate() {
                    for _ in 0..c {
                        edges.push(slots[s]);
                    }
                }
                if let Ok(graph) = StableGraph::new(genus_vec.clone(), edges) {
                    seen.entry(graph.canonical_form()).or_insert(graph);
                }
            });
        }
    }
    Ok(seen.into_values().collect())
}

fn distribute(counts: &mut Vec<usize>, i: usize, remaining: usize, sink: &mut dyn FnMut(&[usize])) {
    if i == counts.len() {
        if remaining == 0 {
            sink(counts);
        }
        return;
    }
    for c in 0..=remaining {
        counts[i] = c;
        distribute(counts, i + 1, remaining - c, sink);
    }
    counts[i] = 0;
}

/// Applies `steps` random genus-preserving destabilizations: either an edge
/// subdivision by a rational vertex, or a rational leaf sprouted at a random
/// vertex. The result is connected with the same arithmetic genus but is not
/// stable; `stabilize` recovers a stable model.
pub fn random_destabilization(g: &StableGraph, rng: &mut ChaCha12Rng, steps: usize) -> StableGraph {
    let mut genus = g.genus_labels().to_vec();
    let mut edges = g.edges().to_vec();
    for _ in 0..steps {
        let subdivide = !edges.is_empty() && rng.random_bool(0.7);
        if subdivide {
            let e = rng.random_range(0..edges.len());
            let (u, v) = edges.swap_remove(e);
            let w = genus.len();
            genus.push(0);
            edges.push((u, w));
            edges.push((w, v));
        } else {
            let u = rng.random_range(0..genus.len());
            let w = genus.len();
            genus.push(0);
            edges.push((u, w));
        }
    }
    StableGraph::relaxed(genus, edges).expect("indices valid by construction")
}
