//! Hyperplane configurations: multisets of covectors with multiplicities,
//! phase-normalized, with a matching-based distance and the JSON wire form
//! `{"covector":[re,im,...],"multiplicity":8,"type":3}`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::linalg::{normalize_projective, projective_distance};
use crate::{Error, Result};

/// One hyperplane with its multiplicity and the number of nodes it contains.
#[derive(Debug, Clone)]
pub struct ConfigEntry {
    /// Unit-norm, phase-fixed covector in C^dim.
    pub covector: Vec<C64>,
    pub multiplicity: u64,
    /// Type tag: number of nodes on the hyperplane.
    pub node_type: u32,
}

#[derive(Debug, Clone, Default)]
pub struct HyperplaneConfiguration {
    pub dim: usize,
    pub entries: Vec<ConfigEntry>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    covector: Vec<f64>,
    multiplicity: u64,
    #[serde(rename = "type")]
    node_type: u32,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    dim: usize,
    entries: Vec<EntryJson>,
}

impl HyperplaneConfiguration {
    pub fn new(dim: usize) -> Self {
        HyperplaneConfiguration {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, covector: &[C64], multiplicity: u64, node_type: u32) -> Result<()> {
        if covector.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "covector length {} != dim {}",
                covector.len(),
                self.dim
            )));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidInput("multiplicity must be positive".into()));
        }
        self.entries.push(ConfigEntry {
            covector: normalize_projective(covector),
            multiplicity,
            node_type,
        });
        Ok(())
    }

    /// Sum of multiplicities.
    pub fn total_degree(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn entries_of_type(&self, node_type: u32) -> Vec<&ConfigEntry> {
        self.entries
            .iter()
            .filter(|e| e.node_type == node_type)
            .collect()
    }

    pub fn entries_of_multiplicity(&self, m: u64) -> Vec<&ConfigEntry> {
        self.entries
            .iter()
            .filter(|e| e.multiplicity == m)
            .collect()
    }

    /// Canonical ordering for deterministic output: by type, multiplicity,
    /// then coordinatewise (re, im).
    pub fn sort_canonical(&mut self) {
        self.entries.sort_by(|a, b| {
            (a.node_type, a.multiplicity)
                .cmp(&(b.node_type, b.multiplicity))
                .then_with(|| {
                    for (x, y) in a.covector.iter().zip(&b.covector) {
                        let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                        if c != std::cmp::Ordering::Equal {
                            return c;
                        }
                    }
                    std::cmp::Ordering::Equal
                })
        });
    }

    pub fn to_json(&self) -> String {
        let entries = self
            .entries
            .iter()
            .map(|e| EntryJson {
                covector: e
                    .covector
                    .iter()
                    .flat_map(|z| [z.re, z.im])
                    .collect(),
                multiplicity: e.multiplicity,
                node_type: e.node_type,
            })
            .collect();
        serde_json::to_string_pretty(&ConfigJson {
            dim: self.dim,
            entries,
        })
        .expect("config serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cj: ConfigJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("bad configuration JSON: {e}")))?;
        let mut out = HyperplaneConfiguration::new(cj.dim);
        for e in cj.entries {
            if e.covector.len() != 2 * cj.dim {
                return Err(Error::InvalidInput(format!(
                    "covector needs {} interleaved re/im values, got {}",
                    2 * cj.dim,
                    e.covector.len()
                )));
            }
            let cv: Vec<C64> = e
                .covector
                .chunks(2)
                .map(|c| C64::new(c[0], c[1]))
                .collect();
            out.push(&cv, e.multiplicity, e.node_type)?;
        }
        Ok(out)
    }
}

/// Mean matched distance between configurations under the best
/// multiplicity-respecting bijection of entries (infinite when the
/// multiplicity profiles differ). Min-cost matching per multiplicity
/// stratum, Hungarian algorithm.
pub fn configuration_distance(a: &HyperplaneConfiguration, b: &HyperplaneConfiguration) -> f64 {
    if a.dim != b.dim || a.entries.len() != b.entries.len() {
        return f64::INFINITY;
    }
    let mut mults: Vec<u64> = a.entries.iter().map(|e| e.multiplicity).collect();
    mults.sort_unstable();
    mults.dedup();
    let mut total = 0.0f64;
    let mut count = 0usize;
    for m in mults {
        let ea = a.entries_of_multiplicity(m);
        let eb = b.entries_of_multiplicity(m);
        if ea.len() != eb.len() {
            return f64::INFINITY;
        }
        if ea.is_empty() {
            continue;
        }
        let n = ea.len();
        let mut cost = vec![vec![0.0f64; n]; n];
        for (i, x) in ea.iter().enumerate() {
            for (j, y) in eb.iter().enumerate() {
                cost[i][j] = projective_distance(&x.covector, &y.covector);
            }
        }
        total += hungarian(&cost);
        count += n;
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Minimum-cost perfect matching on a square cost matrix (JV-style
/// potentials, O(n^3)). Returns the total cost.
fn hungarian(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    // potentials and assignments are 1-indexed internally
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j] = row matched to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0.0;
    for j in 1..=n {
        total += cost[p[j] - 1][j - 1];
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(re: &[f64]) -> Vec<C64> {
        re.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = HyperplaneConfiguration::new(3);
        cfg.push(&entry(&[1.0, 2.0, -1.0]), 4, 2).unwrap();
        cfg.push(&entry(&[0.0, 1.0, 1.0]), 1, 0).unwrap();
        cfg.sort_canonical();
        let s = cfg.to_json();
        let back = HyperplaneConfiguration::from_json(&s).unwrap();
        assert_eq!(back.entries.len(), 2);
        assert_eq!(back.total_degree(), 5);
        assert!(configuration_distance(&cfg, &back) < 1e-14);
    }

    #[test]
    fn distance_zero_under_permutation_and_phase() {
        let mut a = HyperplaneConfiguration::new(2);
        let mut b = HyperplaneConfiguration::new(2);
        a.push(&entry(&[1.0, 0.5]), 1, 0).unwrap();
        a.push(&entry(&[0.0, 1.0]), 1, 0).unwrap();
        let phase = C64::from_polar(1.0, 1.1);
        let swapped: Vec<C64> = entry(&[0.0, 1.0]).iter().map(|z| z * phase).collect();
        b.push(&swapped, 1, 0).unwrap();
        b.push(&entry(&[1.0, 0.5]), 1, 0).unwrap();
        assert!(configuration_distance(&a, &b) < 1e-14);
    }

    #[test]
    fn distance_respects_multiplicity_strata() {
        let mut a = HyperplaneConfiguration::new(2);
        let mut b = HyperplaneConfiguration::new(2);
        a.push(&entry(&[1.0, 0.0]), 1, 0).unwrap();
        a.push(&entry(&[0.0, 1.0]), 2, 1).unwrap();
        // same covectors, multiplicities exchanged: must not match
        b.push(&entry(&[1.0, 0.0]), 2, 1).unwrap();
        b.push(&entry(&[0.0, 1.0]), 1, 0).unwrap();
        assert!(configuration_distance(&a, &b) > 0.5);
    }

    #[test]
    fn hungarian_picks_the_cheap_matching() {
        let cost = vec![
            vec![1.0, 100.0, 100.0],
            vec![100.0, 1.0, 100.0],
            vec![2.0, 100.0, 1.0],
        ];
        assert!((hungarian(&cost) - 3.0).abs() < 1e-12);
        let cost = vec![vec![5.0, 1.0], vec![1.0, 5.0]];
        assert!((hungarian(&cost) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bad_input_rejected() {
        let mut cfg = HyperplaneConfiguration::new(3);
        assert!(cfg.push(&entry(&[1.0, 0.0]), 1, 0).is_err());
        assert!(cfg.push(&entry(&[1.0, 0.0, 0.0]), 0, 0).is_err());
        assert!(HyperplaneConfiguration::from_json("{}").is_err());
    }
}
