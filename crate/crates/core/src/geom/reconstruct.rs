//! Recovering a split curve from its weighted theta-configuration.
//!
//! Node recovery intersects tuples of the highest-multiplicity hyperplanes,
//! clusters the candidate points, and keeps those with the right incidence
//! count. At genus 3 the two components are cut out of the pencil of conics
//! through the four nodes by tangency to the bitangent lines. At genus 4 the
//! curve is rebuilt from two projections: cones over the projected conics
//! intersect in the component plus the line joining the two projection
//! nodes, and the component is sampled along the cone rulings and refitted.

use num_complex::Complex64 as C64;

use super::config::{configuration_distance, HyperplaneConfiguration};
use super::curve::{ProjectiveSplitCurve, RationalNormalCurve};
use super::linalg::{self, CMat};
use super::poly;
use super::theta::{self, theta_hat};
use super::Tolerances;
use crate::exact::{binomial, pow2};
use crate::{Error, Result};

/// Recovers the g+1 nodes from the multiplicity-2^(g-1) stratum.
///
/// Every (g-1)-tuple of stratum hyperplanes meets in a point; the true nodes
/// are the cluster representatives lying on exactly C(g, 2) stratum
/// hyperplanes. Anything else (wrong cluster count, wrong incidence) is a
/// reconstruction error.
pub fn recover_nodes(
    cfg: &HyperplaneConfiguration,
    g: u32,
    tol: &Tolerances,
) -> Result<Vec<Vec<C64>>> {
    let dim = g as usize;
    let stratum: Vec<&super::config::ConfigEntry> =
        cfg.entries_of_multiplicity(pow2(g - 1) as u64);
    let want_planes = binomial(g as u64 + 1, g as u64 - 1) as usize;
    if stratum.len() != want_planes {
        return Err(Error::Reconstruction(format!(
            "stratum of multiplicity {} has {} entries, want {want_planes}",
            pow2(g - 1),
            stratum.len()
        )));
    }
    // candidate points: intersections of (g-1)-tuples
    let mut candidates: Vec<Vec<C64>> = Vec::new();
    for tuple in subsets(stratum.len(), dim - 1) {
        let rows: Vec<Vec<C64>> = tuple.iter().map(|&i| stratum[i].covector.clone()).collect();
        let ns = linalg::nullspace(&CMat::from_rows(&rows), 1e-9);
        if ns.len() == 1 {
            candidates.push(linalg::normalize_projective(&ns[0]));
        }
    }
    // cluster by union-find
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..n {
        for j in i + 1..n {
            if linalg::projective_distance(&candidates[i], &candidates[j]) < tol.clustering {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        clusters.entry(r).or_default().push(i);
    }
    let want_incidence = binomial(g as u64, 2) as usize;
    let mut nodes: Vec<Vec<C64>> = Vec::new();
    for members in clusters.values() {
        let rep = &candidates[members[0]];
        // refine: re-solve from all incident stratum hyperplanes
        let incident: Vec<Vec<C64>> = stratum
            .iter()
            .filter(|e| linalg::pair(&e.covector, rep).norm() < tol.clustering)
            .map(|e| e.covector.clone())
            .collect();
        if incident.len() != want_incidence {
            continue;
        }
        let ns = linalg::nullspace(&CMat::from_rows(&incident), 1e-9);
        if ns.len() != 1 {
            continue;
        }
        let point = linalg::normalize_projective(&ns[0]);
        // exact incidence count at the containment tolerance
        let count = stratum
            .iter()
            .filter(|e| linalg::pair(&e.covector, &point).norm() < tol.containment)
            .count();
        if count == want_incidence {
            nodes.push(point);
        }
    }
    if nodes.len() != g as usize + 1 {
        return Err(Error::Reconstruction(format!(
            "expected {} nodes, found {} incidence-consistent clusters \
             (of {} raw intersection clusters)",
            g + 1,
            nodes.len(),
            clusters.len()
        )));
    }
    // deterministic order
    nodes.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(nodes)
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

/// Conic matrix of a framed conic: M = B^{-T} M_std B^{-1}, where the
/// standard parametrized conic (1, t, t^2) satisfies x0 x2 - x1^2 = 0.
pub fn conic_matrix(frame: &CMat) -> Result<CMat> {
    let half = C64::new(0.5, 0.0);
    let mstd = CMat::from_rows(&[
        vec![C64::ZERO, C64::ZERO, half],
        vec![C64::ZERO, -C64::ONE, C64::ZERO],
        vec![half, C64::ZERO, C64::ZERO],
    ]);
    let inv = linalg::inverse(frame)?;
    Ok(inv.transpose().mul(&mstd).mul(&inv))
}

/// Rational parametrization of a nondegenerate conic through a known point:
/// frame B with points B (1, t, t^2).
pub fn parametrize_conic(m: &CMat, base: &[C64]) -> Result<CMat> {
    let r = linalg::pair(&m.matvec(base), base).norm() / (m.max_abs() * linalg::norm(base).powi(2));
    if r > 1e-6 {
        return Err(Error::Numerical(format!(
            "base point off the conic by {r:.3e}"
        )));
    }
    // directions completing the base point
    let dirs = linalg::nullspace(&CMat::from_rows(&[base.to_vec()]), 1e-12);
    if dirs.len() != 2 {
        return Err(Error::Numerical("cannot complete base point".into()));
    }
    let (d1, d2) = (&dirs[0], &dirs[1]);
    let q = |u: &[C64], v: &[C64]| linalg::pair(&m.matvec(u), v);
    // x(t) = (w' M w') p - 2 (p M w') w',  w' = d1 + t d2
    let col = |i: usize| -> Vec<C64> {
        let (p_m_d1, p_m_d2) = (q(base, d1), q(base, d2));
        let (d1_m_d1, d1_m_d2, d2_m_d2) = (q(d1, d1), q(d1, d2), q(d2, d2));
        let mut c = vec![C64::ZERO; base.len()];
        match i {
            0 => {
                linalg::axpy(&mut c, d1_m_d1, base);
                linalg::axpy(&mut c, -2.0 * p_m_d1, d1);
            }
            1 => {
                linalg::axpy(&mut c, 2.0 * d1_m_d2, base);
                linalg::axpy(&mut c, -2.0 * p_m_d2, d1);
                linalg::axpy(&mut c, -2.0 * p_m_d1, d2);
            }
            _ => {
                linalg::axpy(&mut c, d2_m_d2, base);
                linalg::axpy(&mut c, -2.0 * p_m_d2, d2);
            }
        }
        c
    };
    let frame = CMat::from_cols(&[col(0), col(1), col(2)]);
    // sanity: sampled points satisfy the conic
    for t in [C64::new(0.37, 0.0), C64::new(-1.21, 0.4)] {
        let x = frame.matvec(&super::curve::moment_point(t, 3));
        let r = linalg::pair(&m.matvec(&x), &x).norm() / (m.max_abs() * linalg::norm(&x).powi(2));
        if r > 1e-8 {
            return Err(Error::Numerical(format!(
                "conic parametrization residual {r:.3e}"
            )));
        }
    }
    Ok(frame)
}

/// The two conics through the four given nodes tangent to the four given
/// lines: the pencil of conics through the nodes, restricted by tangency to
/// the first line (a quadratic in the pencil parameter), verified against
/// all four lines. Returns the unordered pair of conic matrices.
pub fn reconstruct_g3(
    lines: &[Vec<C64>],
    nodes: &[Vec<C64>],
    tol: &Tolerances,
) -> Result<[CMat; 2]> {
    if lines.len() != 4 || nodes.len() != 4 {
        return Err(Error::InvalidInput("need 4 lines and 4 nodes".into()));
    }
    let sym_product = |l1: &[C64], l2: &[C64]| {
        let mut m = CMat::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = (l1[i] * l2[j] + l1[j] * l2[i]) * 0.5;
            }
        }
        m
    };
    // degenerate pencil members through the 4 nodes
    let l12 = linalg::cross3(&nodes[0], &nodes[1]);
    let l34 = linalg::cross3(&nodes[2], &nodes[3]);
    let l13 = linalg::cross3(&nodes[0], &nodes[2]);
    let l24 = linalg::cross3(&nodes[1], &nodes[3]);
    let q1 = sym_product(&l12, &l34);
    let q2 = sym_product(&l13, &l24);

    // tangency of alpha q1 + beta q2 to a line: binary quadratic via the
    // adjugate, interpolated at three pencil members
    let tangency_quadratic = |line: &[C64]| -> (C64, C64, C64) {
        let t_at = |alpha: C64, beta: C64| {
            let m = q1.scale(alpha).add(&q2.scale(beta));
            let adj = adjugate3(&m);
            linalg::pair(&adj.matvec(line), line)
        };
        let a = t_at(C64::ONE, C64::ZERO);
        let c = t_at(C64::ZERO, C64::ONE);
        let s = t_at(C64::ONE, C64::ONE);
        (a, s - a - c, c) // A alpha^2 + B alpha beta + C beta^2
    };
    let (a, b, c) = tangency_quadratic(&lines[0]);
    let roots = poly::binary_quadratic_roots(a, b, c);
    let mut out: Vec<CMat> = Vec::new();
    for (alpha, beta) in roots {
        let m = q1.scale(alpha).add(&q2.scale(beta));
        let scale = m.max_abs();
        if scale < 1e-12 {
            return Err(Error::Genericity("pencil member degenerates to zero".into()));
        }
        let m = m.scale(C64::new(1.0 / scale, 0.0));
        if linalg::det(&m).norm() < 1e-10 {
            return Err(Error::Genericity(
                "tangency condition picks a degenerate pencil member".into(),
            ));
        }
        // through all nodes (automatic) and tangent to all four lines
        for (i, line) in lines.iter().enumerate() {
            let adj = adjugate3(&m);
            let r = linalg::pair(&adj.matvec(line), line).norm()
                / (adj.max_abs() * linalg::norm(line).powi(2));
            if r > tol.tangency {
                return Err(Error::Genericity(format!(
                    "conic misses tangency to line {i} by {r:.3e}"
                )));
            }
        }
        for (i, node) in nodes.iter().enumerate() {
            let r = linalg::pair(&m.matvec(node), node).norm() / linalg::norm(node).powi(2);
            if r > tol.containment {
                return Err(Error::Numerical(format!("node {i} off the conic by {r:.3e}")));
            }
        }
        out.push(m);
    }
    if out.len() != 2 {
        return Err(Error::Genericity(
            "tangency quadratic has fewer than two solutions".into(),
        ));
    }
    let d = matrix_projective_distance(&out[0], &out[1]);
    if d < tol.clustering {
        return Err(Error::Genericity(
            "the two tangent conics coincide".into(),
        ));
    }
    Ok([out[0].clone(), out[1].clone()])
}

fn adjugate3(m: &CMat) -> CMat {
    let mut a = CMat::zero(3, 3);
    let e = |i: usize, j: usize| m[(i, j)];
    a[(0, 0)] = e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1);
    a[(1, 0)] = -(e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0));
    a[(2, 0)] = e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0);
    a[(0, 1)] = -(e(0, 1) * e(2, 2) - e(0, 2) * e(2, 1));
    a[(1, 1)] = e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0);
    a[(2, 1)] = -(e(0, 0) * e(2, 1) - e(0, 1) * e(2, 0));
    a[(0, 2)] = e(0, 1) * e(1, 2) - e(0, 2) * e(1, 1);
    a[(1, 2)] = -(e(0, 0) * e(1, 2) - e(0, 2) * e(1, 0));
    a[(2, 2)] = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    a
}

/// Projective distance between matrices seen as flattened vectors.
pub fn matrix_projective_distance(a: &CMat, b: &CMat) -> f64 {
    linalg::projective_distance(&a.a, &b.a)
}

/// Full genus-3 reconstruction from a weighted configuration: nodes from the
/// multiplicity-4 stratum, components from the pencil-tangency solve,
/// parametrized through the first node.
pub fn reconstruct_g3_from_config(
    cfg: &HyperplaneConfiguration,
    tol: &Tolerances,
) -> Result<ProjectiveSplitCurve> {
    let g = 3u32;
    let nodes = recover_nodes(cfg, g, tol)?;
    reject_non_split_signature(cfg, &nodes, g, tol)?;
    let lines: Vec<Vec<C64>> = cfg
        .entries_of_multiplicity(1)
        .iter()
        .map(|e| e.covector.clone())
        .collect();
    if lines.len() != 4 {
        return Err(Error::Reconstruction(format!(
            "expected 4 bitangent lines, found {}",
            lines.len()
        )));
    }
    let conics = reconstruct_g3(&lines, &nodes, tol)?;
    assemble_curve(g, &conics_to_frames(&conics, &nodes)?, &nodes, cfg, tol)
}

fn conics_to_frames(conics: &[CMat; 2], nodes: &[Vec<C64>]) -> Result<[CMat; 2]> {
    Ok([
        parametrize_conic(&conics[0], &nodes[0])?,
        parametrize_conic(&conics[1], &nodes[0])?,
    ])
}

/// The honest-split signature: per-node incidence of the low stratum must be
/// 4 C(g, 4) (0 at genus 3, 4 at genus 4); the hyperelliptic degeneration
/// shows C(g, 3) instead and is rejected.
fn reject_non_split_signature(
    cfg: &HyperplaneConfiguration,
    nodes: &[Vec<C64>],
    g: u32,
    tol: &Tolerances,
) -> Result<()> {
    let low: Vec<Vec<C64>> = cfg
        .entries_of_multiplicity(pow2(g - 3) as u64)
        .iter()
        .map(|e| e.covector.clone())
        .collect();
    let want = 4 * binomial(g as u64, 4) as usize;
    for (i, node) in nodes.iter().enumerate() {
        let count = low
            .iter()
            .filter(|h| linalg::pair(h, node).norm() < tol.containment)
            .count();
        if count != want {
            return Err(Error::Reconstruction(format!(
                "low-stratum incidence {count} at node {i}, split signature wants {want}"
            )));
        }
    }
    Ok(())
}

fn assemble_curve(
    g: u32,
    frames: &[CMat; 2],
    nodes: &[Vec<C64>],
    cfg: &HyperplaneConfiguration,
    tol: &Tolerances,
) -> Result<ProjectiveSplitCurve> {
    let comps = [
        RationalNormalCurve::new(frames[0].clone())?,
        RationalNormalCurve::new(frames[1].clone())?,
    ];
    let mut t_params = Vec::with_capacity(nodes.len());
    let mut s_params = Vec::with_capacity(nodes.len());
    for node in nodes {
        t_params.push(comps[0].parameter_of(node, 1e-8)?);
        s_params.push(comps[1].parameter_of(node, 1e-8)?);
    }
    let curve = ProjectiveSplitCurve {
        g,
        components: comps,
        t_params,
        s_params,
    };
    // the reconstruction must regenerate the input configuration; the echo
    // runs at validation scale (the rebuilt frames are accurate to roughly
    // 1e-8, so generation-grade thresholds would reject honest solutions)
    let relaxed = Tolerances {
        containment: tol.containment.max(1e-6),
        tangency: tol.tangency.max(1e-6),
        construction: 1e-6,
        ..*tol
    };
    let regen = theta_hat(&curve, &relaxed)?;
    let d = configuration_distance(cfg, &regen);
    if d > 1e-5 {
        return Err(Error::Reconstruction(format!(
            "round-trip configuration distance {d:.3e}"
        )));
    }
    Ok(curve)
}

/// Genus-4 reconstruction: recover the five nodes, reject non-split
/// signatures, project from two nodes, rebuild the image conic pairs at
/// genus 3, lift to cones, sample the residual space curves along the cone
/// rulings, fit rational-normal frames, and keep the component pairing that
/// regenerates the input configuration.
pub fn reconstruct_g4(
    cfg: &HyperplaneConfiguration,
    tol: &Tolerances,
) -> Result<ProjectiveSplitCurve> {
    let g = 4u32;
    if cfg.dim != 4 {
        return Err(Error::InvalidInput("genus-4 configuration must live in C^4".into()));
    }
    let nodes = recover_nodes(cfg, g, tol)?;
    reject_non_split_signature(cfg, &nodes, g, tol)?;

    // two projection centers
    let centers = [nodes[0].clone(), nodes[1].clone()];
    let mut image_pairs: Vec<[CMat; 2]> = Vec::with_capacity(2);
    let mut projections: Vec<CMat> = Vec::with_capacity(2);
    for center in &centers {
        let p_rows = theta::hyperplanes_through(std::slice::from_ref(center), 4)?;
        let p = CMat::from_rows(&p_rows);
        // the four low-stratum hyperplanes through this node project to the
        // bitangent lines of the image
        let low: Vec<&super::config::ConfigEntry> = cfg.entries_of_multiplicity(2);
        let through: Vec<Vec<C64>> = low
            .iter()
            .filter(|e| linalg::pair(&e.covector, center).norm() < tol.containment)
            .map(|e| theta::project_covector(&p, &e.covector))
            .collect();
        if through.len() != 4 {
            return Err(Error::Reconstruction(format!(
                "{} low-stratum hyperplanes through a projection node, want 4",
                through.len()
            )));
        }
        let image_nodes: Vec<Vec<C64>> = nodes
            .iter()
            .filter(|n| linalg::projective_distance(n, center) > tol.clustering)
            .map(|n| linalg::normalize_projective(&p.matvec(n)))
            .collect();
        if image_nodes.len() != 4 {
            return Err(Error::Reconstruction("projected node collision".into()));
        }
        let conics = reconstruct_g3(&through, &image_nodes, tol)?;
        image_pairs.push(conics);
        projections.push(p);
    }

    // try both pairings of the two image conic pairs
    let mut failures: Vec<String> = Vec::new();
    for assign in [[0usize, 1], [1, 0]] {
        let first = fit_component(
            &projections[0],
            &image_pairs[0][0],
            &projections[1],
            &image_pairs[1][assign[0]],
            &centers,
            &nodes,
            tol,
        );
        let second = fit_component(
            &projections[0],
            &image_pairs[0][1],
            &projections[1],
            &image_pairs[1][assign[1]],
            &centers,
            &nodes,
            tol,
        );
        match (first, second) {
            (Ok(f1), Ok(f2)) => match assemble_curve(g, &[f1, f2], &nodes, cfg, tol) {
                Ok(curve) => return Ok(curve),
                Err(e) => failures.push(format!("pairing {assign:?}: {e}")),
            },
            (a, b) => {
                for (label, r) in [("first", a), ("second", b)] {
                    if let Err(e) = r {
                        failures.push(format!("pairing {assign:?} {label} component: {e}"));
                    }
                }
            }
        }
    }
    Err(Error::Reconstruction(format!(
        "no conic pairing regenerates the configuration: [{}]",
        failures.join(" | ")
    )))
}

/// Closed-form frame of the space curve cut out by the two cones (over
/// conic k1 with vertex centers[0], over k2 with vertex centers[1]) away
/// from the line of centers.
///
/// Along the ruling over the conic point q(theta), the second cone cuts the
/// point x0(theta) + alpha(theta) centers[0] with alpha = -c/b; clearing the
/// denominator makes every coordinate a quartic polynomial in theta, and
/// the four quartics share one linear factor (the curve has degree three).
/// Deflating the common root leaves the exact cubic coefficient frame.
fn fit_component(
    p1: &CMat,
    k1: &CMat,
    p2: &CMat,
    k2: &CMat,
    centers: &[Vec<C64>; 2],
    _nodes: &[Vec<C64>],
    _tol: &Tolerances,
) -> Result<CMat> {
    let q2 = p2.transpose().mul(k2).mul(p2); // second cone in P^3
    let q2 = q2.scale(C64::new(1.0 / q2.max_abs().max(1e-300), 0.0));
    let a = linalg::pair(&q2.matvec(&centers[0]), &centers[0]);
    if a.norm() > 1e-7 {
        return Err(Error::Reconstruction(
            "projection center misses the second cone".into(),
        ));
    }
    let base = linalg::normalize_projective(&p1.matvec(&centers[1])); // on k1
    let conic_frame = parametrize_conic(k1, &base)?;
    // x0(theta) = lift(q(theta)): coordinates quadratic in theta
    let x0_frame = p1.hermitian().mul(&conic_frame); // 4 x 3, rows = coeffs
    let x0_polys: Vec<Vec<C64>> = (0..4).map(|i| x0_frame.row(i).to_vec()).collect();
    // b(theta) = 2 centers[0]^T Q2 x0(theta): quadratic
    let w = q2.matvec(&centers[0]);
    let mut b_poly = vec![C64::ZERO; 3];
    for i in 0..4 {
        linalg::axpy(&mut b_poly, 2.0 * w[i], &x0_polys[i]);
    }
    // c(theta) = x0^T Q2 x0: quartic
    let mut c_poly = [C64::ZERO; 5];
    for i in 0..4 {
        let mut yi = vec![C64::ZERO; 3]; // (Q2 x0)_i as a polynomial
        for l in 0..4 {
            linalg::axpy(&mut yi, q2[(i, l)], &x0_polys[l]);
        }
        let prod = poly::mul(&x0_polys[i], &yi);
        for (k, v) in prod.into_iter().enumerate() {
            c_poly[k] += v;
        }
    }
    // coordinates of the residual intersection: b x0_i - c N1_i, degree 4
    let coords: Vec<Vec<C64>> = (0..4)
        .map(|i| {
            let mut p = poly::mul(&b_poly, &x0_polys[i]);
            p.resize(5, C64::ZERO);
            for (k, v) in c_poly.iter().enumerate() {
                p[k] -= v * centers[0][i];
            }
            p
        })
        .collect();
    // the four quartics share one root; find it on the largest coordinate
    let scales: Vec<f64> = coords
        .iter()
        .map(|p| p.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .collect();
    let lead = (0..4)
        .max_by(|&i, &j| scales[i].total_cmp(&scales[j]))
        .unwrap();
    let candidates = poly::roots(&coords[lead])?;
    let mut best: Option<(C64, f64)> = None;
    for rho in candidates {
        let worst = coords
            .iter()
            .zip(&scales)
            .map(|(p, s)| poly::eval(p, rho).norm() / s.max(1e-300))
            .fold(0.0f64, f64::max);
        if best.as_ref().is_none_or(|&(_, w)| worst < w) {
            best = Some((rho, worst));
        }
    }
    let Some((rho, worst)) = best else {
        return Err(Error::Reconstruction("residual curve has no parameters".into()));
    };
    if worst > 1e-7 {
        return Err(Error::Reconstruction(format!(
            "cone intersection does not split off a line (residual {worst:.3e})"
        )));
    }
    let mut rows = Vec::with_capacity(4);
    for p in &coords {
        let (q, _rem) = poly::deflate(p, rho);
        rows.push(q); // degree 3: four coefficients
    }
    // balance the coefficient columns by reparametrizing theta -> r theta;
    // keeps the curve, improves the frame conditioning
    let col_norm = |rows: &Vec<Vec<C64>>, j: usize| -> f64 {
        rows.iter().map(|q| q[j].norm_sqr()).sum::<f64>().sqrt()
    };
    let (n0, n3) = (col_norm(&rows, 0), col_norm(&rows, 3));
    if n0 > 1e-300 && n3 > 1e-300 {
        let r = (n0 / n3).powf(1.0 / 3.0);
        let mut pw = 1.0;
        for j in 0..4 {
            for q in rows.iter_mut() {
                q[j] *= pw;
            }
            pw *= r;
        }
    }
    let scale = rows
        .iter()
        .flat_map(|q| q.iter().map(|z| z.norm()))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for q in rows.iter_mut() {
        for z in q.iter_mut() {
            *z /= scale;
        }
    }
    let frame = CMat::from_rows(&rows);
    // verify: points of the parametrized cubic satisfy both cones
    let k1_cone = p1.transpose().mul(k1).mul(p1);
    for s in 0..4 {
        let theta = C64::from_polar(1.3, 0.7 + 1.3 * s as f64);
        let x = frame.matvec(&super::curve::moment_point(theta, 4));
        let nx = linalg::norm(&x).powi(2).max(1e-300);
        let r1 = linalg::pair(&k1_cone.matvec(&x), &x).norm() / (k1_cone.max_abs() * nx);
        let r2 = linalg::pair(&q2.matvec(&x), &x).norm() / nx;
        if r1 > 1e-9 || r2 > 1e-9 {
            return Err(Error::Reconstruction(format!(
                "residual cubic leaves the cones ({r1:.3e}, {r2:.3e})"
            )));
        }
    }
    Ok(frame)
}
