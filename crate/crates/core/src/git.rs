//! Stability of the hyperplane configurations attached to split and
//! hyperelliptic-split curves, in exact rational arithmetic.
//!
//! A configuration of total degree m in P^(g-1) is stable iff for every
//! h = 0..g-2 the maximal multiplicity mu_h of an h-dimensional subspace
//! inside it stays strictly below m (g-1-h) / g.
//!
//! Four configuration kinds are handled:
//! - type a: the hyperplanes through g-3 nodes of a projective split curve,
//! - type b: its hyperelliptic degeneration (spans of g-3 marked points and
//!   one tangent line of a rational normal curve),
//! - type c: spans of g-1 of the marked points,
//! - combined: the multiplicity-weighted union 2^(g-3) (type b) + 2^(g-1)
//!   (type c).
//!
//! Closed-form counts are validated against a brute-force incidence count on
//! an explicit integer-parameter configuration, where a hyperplane is a
//! polynomial and containment of a span is exact root-checking.

use num_rational::Ratio;
use serde::Serialize;

use crate::exact::{binomial, pow2};
use crate::{Error, Result};

pub type Rat = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConfigKind {
    TypeA,
    TypeB,
    TypeC,
    Combined,
}

impl ConfigKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ConfigKind::TypeA),
            "b" => Ok(ConfigKind::TypeB),
            "c" => Ok(ConfigKind::TypeC),
            "combined" => Ok(ConfigKind::Combined),
            _ => Err(Error::InvalidInput(format!(
                "unknown configuration kind '{s}' (want a, b, c or combined)"
            ))),
        }
    }
}

/// A configuration shape: kind plus genus; the total degree m is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfigSpec {
    pub kind: ConfigKind,
    pub g: u32,
}

impl ConfigSpec {
    pub fn new(kind: ConfigKind, g: u32) -> Result<Self> {
        let min_g = match kind {
            ConfigKind::TypeA | ConfigKind::TypeB => 4,
            ConfigKind::TypeC | ConfigKind::Combined => 3,
        };
        if g < min_g {
            return Err(Error::InvalidInput(format!(
                "{kind:?} needs g >= {min_g}, got {g}"
            )));
        }
        Ok(ConfigSpec { kind, g })
    }

    /// Total degree of the configuration.
    pub fn total_degree(&self) -> u128 {
        let g = self.g as u64;
        match self.kind {
            ConfigKind::TypeA | ConfigKind::TypeB => 4 * binomial(g + 1, g - 3),
            ConfigKind::TypeC => binomial(g + 1, g - 1),
            ConfigKind::Combined => {
                pow2(self.g - 3) * 4 * binomial(g + 1, g - 3)
                    + pow2(self.g - 1) * binomial(g + 1, g - 1)
            }
        }
    }
}

/// Strict stability bound for h-planes in a degree-m configuration:
/// m (g - 1 - h) / g, as an exact rational.
pub fn max_h(m: u128, g: u32, h: u32) -> Result<Rat> {
    if h > g - 2 {
        return Err(Error::InvalidInput(format!(
            "h = {h} out of range 0..={}",
            g - 2
        )));
    }
    Ok(Rat::new(
        (m as i128) * (g as i128 - 1 - h as i128),
        g as i128,
    ))
}

/// Multiplicity of a span of h+1 marked points inside the configuration
/// (the closed-form counts; for the combined kind, the weighted sum).
pub fn mu_closed_form(spec: ConfigSpec, h: u32) -> Result<u128> {
    if h > spec.g - 2 {
        return Err(Error::InvalidInput(format!(
            "h = {h} out of range 0..={}",
            spec.g - 2
        )));
    }
    let n = (spec.g - h) as u64;
    let type_b = 4 * binomial(n, 4) + (h as u128 + 1) * binomial(n, 3);
    Ok(match spec.kind {
        ConfigKind::TypeA => 4 * binomial(n, 4),
        ConfigKind::TypeB => type_b,
        ConfigKind::TypeC => binomial(n, 2),
        ConfigKind::Combined => {
            pow2(spec.g - 3) * type_b + pow2(spec.g - 1) * binomial(n, 2)
        }
    })
}

/// Largest multiplicity over the full candidate family: marked-point spans,
/// spans augmented by one tangent line, and the configuration's own
/// hyperplanes. The node-span count is not always the maximum: the tangent
/// line at a marked point lies on C(g-h+1, 3) type-b hyperplanes, which wins
/// for small g - h, and any hyperplane of the configuration is itself an
/// h = g-2 subspace of its own multiplicity.
pub fn mu_candidate_max(spec: ConfigSpec, h: u32) -> Result<u128> {
    let g = spec.g;
    let mut best = mu_closed_form(spec, h)?;
    // a tangent line plus h-1 marked points (needs h >= 1)
    if h >= 1 {
        let tangent = match spec.kind {
            ConfigKind::TypeA | ConfigKind::TypeC => 0,
            ConfigKind::TypeB => binomial((g - h + 1) as u64, 3),
            ConfigKind::Combined => pow2(g - 3) * binomial((g - h + 1) as u64, 3),
        };
        best = best.max(tangent);
    }
    // a hyperplane of the configuration contains itself
    if h == g - 2 {
        let own = match spec.kind {
            ConfigKind::TypeA | ConfigKind::TypeB | ConfigKind::TypeC => 1,
            ConfigKind::Combined => pow2(g - 1),
        };
        best = best.max(own);
    }
    Ok(best)
}

/// One row of a stability profile.
#[derive(Debug, Clone, Serialize)]
pub struct MuRow {
    pub h: u32,
    /// Closed-form multiplicity of a marked-point span.
    pub mu_node_span: u128,
    /// Maximum over the full candidate family; this is what the stability
    /// flag compares.
    pub mu_max: u128,
    pub max_num: i128,
    pub max_den: i128,
    pub stable: bool,
}

/// Full stability profile of a configuration.
#[derive(Debug, Clone, Serialize)]
pub struct MuProfile {
    pub spec: ConfigSpec,
    pub total_degree: u128,
    pub rows: Vec<MuRow>,
    pub stable: bool,
}

/// Evaluates the stability criterion for every h; the verdict is computed,
/// not assumed.
pub fn is_git_stable(spec: ConfigSpec) -> Result<MuProfile> {
    let m = spec.total_degree();
    let mut rows = Vec::new();
    let mut stable = true;
    for h in 0..=spec.g - 2 {
        let bound = max_h(m, spec.g, h)?;
        let mu_max = mu_candidate_max(spec, h)?;
        let row_stable = Rat::from_integer(mu_max as i128) < bound;
        stable &= row_stable;
        rows.push(MuRow {
            h,
            mu_node_span: mu_closed_form(spec, h)?,
            mu_max,
            max_num: *bound.numer(),
            max_den: *bound.denom(),
            stable: row_stable,
        });
    }
    Ok(MuProfile {
        spec,
        total_degree: m,
        rows,
        stable,
    })
}

/// The point-multiplicity gap separating the hyperelliptic degeneration from
/// the honest split configuration: (mu_0 type b, mu_0 type a, gap > 0).
/// The gap is C(g, 3) exactly.
pub fn mu0_separation(g: u32) -> Result<(u128, u128, bool)> {
    if g < 4 {
        return Err(Error::InvalidInput("separation needs g >= 4".into()));
    }
    let b = mu_closed_form(ConfigSpec::new(ConfigKind::TypeB, g)?, 0)?;
    let a = mu_closed_form(ConfigSpec::new(ConfigKind::TypeA, g)?, 0)?;
    Ok((b, a, b > a))
}

// ---------------------------------------------------------------------------
// Symbolic configurations: exact incidence counting
// ---------------------------------------------------------------------------

/// Integer polynomial, ascending coefficients. A hyperplane through points
/// v(t) = (1, t, ..., t^(g-1)) of the standard rational normal curve is the
/// coefficient vector of a degree g-1 polynomial with those parameters as
/// roots; tangency is a double root.
pub type IPoly = Vec<i128>;

fn ipoly_from_roots(roots: &[i64]) -> IPoly {
    let mut p: IPoly = vec![1];
    for &r in roots {
        // multiply by (x - r)
        let mut q = vec![0i128; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            q[i + 1] += c;
            q[i] -= (r as i128) * c;
        }
        p = q;
    }
    p
}

fn ipoly_eval(p: &IPoly, t: i64) -> i128 {
    let mut acc = 0i128;
    for &c in p.iter().rev() {
        acc = acc * (t as i128) + c;
    }
    acc
}

fn ipoly_deriv(p: &IPoly) -> IPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as i128) * c)
        .collect()
}

/// An explicit configuration over integer node parameters.
#[derive(Debug, Clone)]
pub struct ExactConfig {
    pub g: u32,
    /// Node parameters on the standard rational normal curve.
    pub params: Vec<i64>,
    /// (hyperplane polynomial, multiplicity).
    pub entries: Vec<(IPoly, u128)>,
}

/// Candidate subspaces for the incidence count, described by the incidence
/// conditions they impose on a hyperplane polynomial.
#[derive(Debug, Clone)]
pub enum Candidate {
    /// Span of the listed marked points (h = len - 1).
    Nodes(Vec<usize>),
    /// Span of the tangent line at `tangent_at` and the listed other points
    /// (h = len(nodes) + 1).
    NodesWithTangent { nodes: Vec<usize>, tangent_at: usize },
    /// Span of explicit integer points (for randomized spot checks).
    RawPoints(Vec<Vec<i128>>),
}

/// Spans of g-3 nodes plus a tangent line at a further node, over all ordered
/// admissible choices; unweighted (multiplicity 1 each).
pub fn exact_type_b(g: u32) -> ExactConfig {
    let params: Vec<i64> = (1..=g as i64 + 1).collect();
    let mut entries = Vec::new();
    let k = (g - 3) as usize;
    for subset in subsets(g as usize + 1, k) {
        for j in 0..g as usize + 1 {
            if subset.contains(&j) {
                continue;
            }
            let mut roots: Vec<i64> = subset.iter().map(|&i| params[i]).collect();
            roots.push(params[j]);
            roots.push(params[j]); // double root: tangency
            entries.push((ipoly_from_roots(&roots), 1));
        }
    }
    ExactConfig { g, params, entries }
}

/// Spans of g-1 of the g+1 nodes; unweighted.
pub fn exact_type_c(g: u32) -> ExactConfig {
    let params: Vec<i64> = (1..=g as i64 + 1).collect();
    let mut entries = Vec::new();
    for subset in subsets(g as usize + 1, (g - 1) as usize) {
        let roots: Vec<i64> = subset.iter().map(|&i| params[i]).collect();
        entries.push((ipoly_from_roots(&roots), 1));
    }
    ExactConfig { g, params, entries }
}

/// The weighted union 2^(g-3) type-b + 2^(g-1) type-c.
pub fn exact_combined(g: u32) -> ExactConfig {
    let mut b = exact_type_b(g);
    let c = exact_type_c(g);
    for e in b.entries.iter_mut() {
        e.1 = pow2(g - 3);
    }
    b.entries
        .extend(c.entries.into_iter().map(|(p, _)| (p, pow2(g - 1))));
    b
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Whether the hyperplane contains the candidate subspace, exactly.
fn contains(config: &ExactConfig, poly: &IPoly, cand: &Candidate) -> bool {
    match cand {
        Candidate::Nodes(nodes) => nodes
            .iter()
            .all(|&i| ipoly_eval(poly, config.params[i]) == 0),
        Candidate::NodesWithTangent { nodes, tangent_at } => {
            let d = ipoly_deriv(poly);
            nodes
                .iter()
                .all(|&i| ipoly_eval(poly, config.params[i]) == 0)
                && ipoly_eval(poly, config.params[*tangent_at]) == 0
                && ipoly_eval(&d, config.params[*tangent_at]) == 0
        }
        Candidate::RawPoints(points) => points.iter().all(|pt| {
            poly.iter()
                .zip(pt.iter())
                .map(|(&c, &x)| c * x)
                .sum::<i128>()
                == 0
        }),
    }
}

/// Independent incidence oracle: the largest weighted number of hyperplanes
/// of the configuration containing a candidate. Empty candidate list gives 0.
pub fn mu_bruteforce(config: &ExactConfig, candidates: &[Candidate]) -> u128 {
    candidates
        .iter()
        .map(|cand| {
            config
                .entries
                .iter()
                .filter(|(p, _)| contains(config, p, cand))
                .map(|&(_, m)| m)
                .sum::<u128>()
        })
        .max()
        .unwrap_or(0)
}

/// All spans of h+1 nodes.
pub fn node_span_candidates(g: u32, h: u32) -> Vec<Candidate> {
    subsets(g as usize + 1, h as usize + 1)
        .into_iter()
        .map(Candidate::Nodes)
        .collect()
}

/// All spans of a tangent line plus h-1 further nodes (empty for h = 0).
pub fn tangent_candidates(g: u32, h: u32) -> Vec<Candidate> {
    if h == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in 0..g as usize + 1 {
        let rest: Vec<usize> = (0..g as usize + 1).filter(|&i| i != j).collect();
        for subset in subsets(rest.len(), h as usize - 1) {
            out.push(Candidate::NodesWithTangent {
                nodes: subset.iter().map(|&i| rest[i]).collect(),
                tangent_at: j,
            });
        }
    }
    out
}
