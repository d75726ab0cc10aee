//! Rational normal curves and explicit projective split curves.
//!
//! A rational normal curve is stored as an invertible g x g frame A acting on
//! the moment curve t -> (1, t, ..., t^(g-1)). A projective split curve is a
//! pair of such curves meeting transversely at g+1 nodes, built from node
//! parameters on each side by the classical frame-of-reference projectivity.

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use super::linalg::{self, CMat};
use super::Tolerances;
use crate::{Error, Result};

/// Moment-curve point (1, t, ..., t^(dim-1)).
pub fn moment_point(t: C64, dim: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(dim);
    let mut p = C64::ONE;
    for _ in 0..dim {
        v.push(p);
        p *= t;
    }
    v
}

/// Derivative of the moment curve: (0, 1, 2t, ..., (dim-1) t^(dim-2)).
pub fn moment_tangent(t: C64, dim: usize) -> Vec<C64> {
    let mut v = vec![C64::ZERO; dim];
    let mut p = C64::ONE;
    for k in 1..dim {
        v[k] = p * (k as f64);
        p *= t;
    }
    v
}

/// A rational normal curve of degree g-1 in P^(g-1), as a frame applied to
/// the moment curve.
#[derive(Debug, Clone)]
pub struct RationalNormalCurve {
    frame: CMat,
}

impl RationalNormalCurve {
    pub fn new(frame: CMat) -> Result<Self> {
        if frame.nr != frame.nc {
            return Err(Error::InvalidInput("frame must be square".into()));
        }
        let cond = linalg::cond_1(&frame);
        if !cond.is_finite() || cond > 1e12 {
            return Err(Error::Numerical(format!(
                "frame condition number {cond:.3e} too large"
            )));
        }
        Ok(RationalNormalCurve { frame })
    }

    /// The moment curve itself.
    pub fn standard(dim: usize) -> Self {
        RationalNormalCurve {
            frame: CMat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.nr
    }

    pub fn frame(&self) -> &CMat {
        &self.frame
    }

    pub fn condition_number(&self) -> f64 {
        linalg::cond_1(&self.frame)
    }

    pub fn point(&self, t: C64) -> Vec<C64> {
        self.frame.matvec(&moment_point(t, self.dim()))
    }

    pub fn tangent_dir(&self, t: C64) -> Vec<C64> {
        self.frame.matvec(&moment_tangent(t, self.dim()))
    }

    /// Parameter of a point assumed to lie on the curve: solve the frame,
    /// read t off the moment vector by a least-squares shift ratio, then
    /// polish by Gauss-Newton on the orthogonal rejection against the point.
    /// The residual of the recovered parameter is checked against `tol`.
    pub fn parameter_of(&self, point: &[C64], tol: f64) -> Result<C64> {
        let y = linalg::solve(&self.frame, point)?;
        let num: C64 = (0..y.len() - 1).map(|k| y[k + 1] * y[k].conj()).sum();
        let den: f64 = (0..y.len() - 1).map(|k| y[k].norm_sqr()).sum();
        if den < 1e-200 {
            return Err(Error::Numerical("point at the parameter infinity".into()));
        }
        let mut t = num / den;
        let n2: f64 = point.iter().map(|z| z.norm_sqr()).sum();
        let reject = |v: &[C64]| -> Vec<C64> {
            let c = linalg::inner(v, point) / n2;
            v.iter().zip(point).map(|(a, b)| a - c * b).collect()
        };
        for _ in 0..8 {
            let r = reject(&self.point(t));
            let j = reject(&self.tangent_dir(t));
            let jj = linalg::inner(&j, &j).re;
            if jj < 1e-280 {
                break;
            }
            let step = -linalg::inner(&r, &j) / jj;
            t += step;
            if step.norm() < 1e-15 * (1.0 + t.norm()) {
                break;
            }
        }
        let back = self.point(t);
        let d = linalg::projective_residual(&back, point);
        if d > tol {
            return Err(Error::Numerical(format!(
                "parameter recovery residual {d:.3e}"
            )));
        }
        Ok(t)
    }
}

/// Two rational normal curves meeting transversely at g+1 nodes.
///
/// Node i is components[0].point(t_params[i]) = components[1].point(s_params[i])
/// up to scale.
#[derive(Debug, Clone)]
pub struct ProjectiveSplitCurve {
    pub g: u32,
    pub components: [RationalNormalCurve; 2],
    pub t_params: Vec<C64>,
    pub s_params: Vec<C64>,
}

impl ProjectiveSplitCurve {
    /// Normalized node coordinates.
    pub fn nodes(&self) -> Vec<Vec<C64>> {
        self.t_params
            .iter()
            .map(|&t| linalg::normalize_projective(&self.components[0].point(t)))
            .collect()
    }

    /// Parameters of node i on the given component.
    pub fn node_param(&self, component: usize, i: usize) -> C64 {
        match component {
            0 => self.t_params[i],
            _ => self.s_params[i],
        }
    }
}

/// The unique projectivity sending the frame of reference spanned by
/// `sources` (g points plus a unit point) to the one spanned by `targets`.
/// Both slices carry g+1 points in general position.
fn frame_projectivity(sources: &[Vec<C64>], targets: &[Vec<C64>]) -> Result<CMat> {
    let g = sources[0].len();
    assert_eq!(sources.len(), g + 1);
    assert_eq!(targets.len(), g + 1);
    let adapt = |pts: &[Vec<C64>]| -> Result<CMat> {
        let base = CMat::from_cols(&pts[..g]);
        let coeffs = linalg::solve(&base, &pts[g])?;
        let mut scaled = base.clone();
        for j in 0..g {
            if coeffs[j].norm() < 1e-12 {
                return Err(Error::Genericity(format!(
                    "unit point degenerate against basis point {j}"
                )));
            }
            for i in 0..g {
                scaled[(i, j)] *= coeffs[j];
            }
        }
        Ok(scaled)
    };
    let b_t = adapt(targets)?;
    let b_s = adapt(sources)?;
    Ok(b_t.mul(&linalg::inverse(&b_s)?))
}

/// Builds a projective split curve of genus g from distinct node parameters
/// on each component. The first component is the moment curve; the second is
/// the unique projectivity matching the parameter frames.
pub fn build_split_curve(
    g: u32,
    t_params: &[C64],
    s_params: &[C64],
    tol: &Tolerances,
) -> Result<ProjectiveSplitCurve> {
    if g < 3 {
        return Err(Error::InvalidInput("split curves need g >= 3".into()));
    }
    let n = g as usize + 1;
    if t_params.len() != n || s_params.len() != n {
        return Err(Error::InvalidInput(format!("need {n} parameters per side")));
    }
    for params in [t_params, s_params] {
        for i in 0..n {
            for j in i + 1..n {
                if (params[i] - params[j]).norm() < 1e-9 {
                    return Err(Error::Genericity(format!(
                        "parameters {i} and {j} coincide"
                    )));
                }
            }
        }
    }
    let dim = g as usize;
    let t_points: Vec<Vec<C64>> = t_params.iter().map(|&t| moment_point(t, dim)).collect();
    let s_points: Vec<Vec<C64>> = s_params.iter().map(|&s| moment_point(s, dim)).collect();
    let a = frame_projectivity(&s_points, &t_points)?;

    // reject coincident components: the projectivity is scalar
    let a_norm = a.max_abs();
    let mean_diag: C64 = (0..dim).map(|i| a[(i, i)]).sum::<C64>() / (dim as f64);
    let mut off = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j { mean_diag } else { C64::ZERO };
            off = off.max((a[(i, j)] - want).norm());
        }
    }
    if off < 1e-9 * a_norm {
        return Err(Error::Genericity(
            "components coincide (projectivity is scalar)".into(),
        ));
    }

    let comp1 = RationalNormalCurve::standard(dim);
    let comp2 = RationalNormalCurve::new(a)?;
    let curve = ProjectiveSplitCurve {
        g,
        components: [comp1, comp2],
        t_params: t_params.to_vec(),
        s_params: s_params.to_vec(),
    };

    // nodes must sit on both components
    for i in 0..n {
        let p = curve.components[0].point(t_params[i]);
        let q = curve.components[1].point(s_params[i]);
        let d = linalg::projective_residual(&p, &q);
        if d > tol.construction {
            return Err(Error::Numerical(format!(
                "node {i} off the second component by {d:.3e}"
            )));
        }
    }
    // general position: every g x g minor of the node matrix is nonzero
    let nodes = curve.nodes();
    for drop in 0..n {
        let rows: Vec<Vec<C64>> = (0..n).filter(|&i| i != drop).map(|i| nodes[i].clone()).collect();
        let minor = linalg::det(&CMat::from_rows(&rows));
        if minor.norm() < 1e-10 {
            return Err(Error::Genericity(format!(
                "nodes not in general position: minor without node {drop} is {:.3e}",
                minor.norm()
            )));
        }
    }
    // transversality: distinct tangent directions at every node
    for i in 0..n {
        let u = curve.components[0].tangent_dir(t_params[i]);
        let w = curve.components[1].tangent_dir(s_params[i]);
        if linalg::projective_distance(&u, &w) < 1e-8 {
            return Err(Error::Genericity(format!("tangential contact at node {i}")));
        }
    }
    Ok(curve)
}

/// Seeded random split curve: node parameters are well-separated points on
/// the unit circle, retried until all construction checks pass.
pub fn random_split_curve(g: u32, rng: &mut ChaCha12Rng, tol: &Tolerances) -> Result<ProjectiveSplitCurve> {
    let n = g as usize + 1;
    for _attempt in 0..100 {
        let sample = |rng: &mut ChaCha12Rng| -> Vec<C64> {
            (0..n)
                .map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                .collect()
        };
        let t = sample(rng);
        let s = sample(rng);
        let min_sep = |p: &[C64]| {
            let mut m = f64::INFINITY;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    m = m.min((p[i] - p[j]).norm());
                }
            }
            m
        };
        if min_sep(&t) < 0.15 || min_sep(&s) < 0.15 {
            continue;
        }
        if let Ok(curve) = build_split_curve(g, &t, &s, tol) {
            return Ok(curve);
        }
    }
    Err(Error::Genericity(
        "no valid split curve found in 100 attempts".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn build_random_curves() {
        let tol = Tolerances::default();
        for g in [3u32, 4, 5] {
            let mut rng = ChaCha12Rng::seed_from_u64(100 + g as u64);
            let x = random_split_curve(g, &mut rng, &tol).unwrap();
            assert_eq!(x.nodes().len(), g as usize + 1);
            for i in 0..=g as usize {
                let p = x.components[0].point(x.t_params[i]);
                let q = x.components[1].point(x.s_params[i]);
                assert!(linalg::projective_residual(&p, &q) < 1e-10);
            }
        }
    }

    #[test]
    fn identity_params_rejected() {
        let tol = Tolerances::default();
        let params: Vec<C64> = (0..4)
            .map(|k| C64::from_polar(1.0, 1.3 + 1.1 * k as f64))
            .collect();
        let err = build_split_curve(3, &params, &params, &tol);
        assert!(err.is_err());
    }

    #[test]
    fn coincident_parameters_rejected() {
        let tol = Tolerances::default();
        let mut t: Vec<C64> = (0..4)
            .map(|k| C64::from_polar(1.0, 0.3 + 1.2 * k as f64))
            .collect();
        t[1] = t[0];
        let s: Vec<C64> = (0..4)
            .map(|k| C64::from_polar(1.0, 0.9 + 1.4 * k as f64))
            .collect();
        assert!(build_split_curve(3, &t, &s, &tol).is_err());
    }

    #[test]
    fn parameter_recovery() {
        let tol = Tolerances::default();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let x = random_split_curve(4, &mut rng, &tol).unwrap();
        for (i, &t) in x.t_params.iter().enumerate() {
            let p = x.components[0].point(t);
            let got = x.components[0].parameter_of(&p, 1e-8).unwrap();
            assert!((got - t).norm() < 1e-9, "node {i}");
        }
    }
}
