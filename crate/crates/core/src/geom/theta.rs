//! Theta-hyperplanes of the two extreme types for an explicit projective
//! split curve, and the degenerate configurations of a hyperelliptic split
//! curve supported on one rational normal curve.
//!
//! For a subset of g-3 nodes, the hyperplanes through the subset form a net
//! (a 3-dimensional space of covectors). Restricting a net element to one
//! component and dividing out the known node roots leaves a quadratic in the
//! parameter; tangency means vanishing discriminant, which is a conic in the
//! net coordinates. Intersecting the two conics (one per component) yields
//! exactly four hyperplanes bitangent to the curve through the subset.

use num_complex::Complex64 as C64;

use super::config::HyperplaneConfiguration;
use super::curve::{moment_point, moment_tangent, ProjectiveSplitCurve};
use super::linalg::{self, CMat};
use super::poly;
use super::Tolerances;
use crate::exact::pow2;
use crate::{Error, Result};

/// Basis of the space of hyperplanes through the given points (bilinear
/// annihilator), hermitian-orthonormal. Errors when the rank is deficient.
pub fn hyperplanes_through(points: &[Vec<C64>], dim: usize) -> Result<Vec<Vec<C64>>> {
    let rows: Vec<Vec<C64>> = points.to_vec();
    let m = if rows.is_empty() {
        CMat::zero(0, dim)
    } else {
        CMat::from_rows(&rows)
    };
    let ns = linalg::nullspace(&m, 1e-10);
    if ns.len() != dim - points.len() {
        return Err(Error::Numerical(format!(
            "span of {} points has nullity {} in dimension {dim}",
            points.len(),
            ns.len()
        )));
    }
    Ok(ns)
}

/// Coefficients (ascending) of the restriction of a covector to a framed
/// rational normal curve: h . (A v(t)) as a polynomial in t.
fn restriction_poly(frame: &CMat, h: &[C64]) -> Vec<C64> {
    frame.transpose().matvec(h)
}

/// The discriminant conic of a net of quadratics: given per-basis-vector
/// quadratics q_j = c_j + b_j t + a_j t^2, the matrix M with
/// lambda^T M lambda = B^2 - 4AC, where A, B, C are the lambda-combinations.
fn discriminant_conic(quads: &[Vec<C64>; 3]) -> CMat {
    let mut m = CMat::zero(3, 3);
    for j in 0..3 {
        for k in 0..3 {
            let (cj, bj, aj) = (quads[j][0], quads[j][1], quads[j][2]);
            let (ck, bk, ak) = (quads[k][0], quads[k][1], quads[k][2]);
            m[(j, k)] = bj * bk - 2.0 * (aj * ck + ak * cj);
        }
    }
    m
}

fn adjugate3(m: &CMat) -> CMat {
    let mut a = CMat::zero(3, 3);
    let e = |i: usize, j: usize| m[(i, j)];
    // cofactor transpose
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

fn quadratic_form(m: &CMat, x: &[C64]) -> C64 {
    linalg::pair(&m.matvec(x), x)
}

/// Intersection of two conics in the projective plane: the four base points
/// of their pencil, found by splitting a degenerate pencil member into a
/// line pair and intersecting with a nondegenerate member.
pub fn conic_intersect(m1: &CMat, m2: &CMat) -> Result<Vec<Vec<C64>>> {
    let scale = m1.max_abs().max(m2.max_abs());
    if scale == 0.0 {
        return Err(Error::Genericity("zero conic".into()));
    }
    let m1 = m1.scale(C64::new(1.0 / m1.max_abs().max(1e-300), 0.0));
    let m2 = m2.scale(C64::new(1.0 / m2.max_abs().max(1e-300), 0.0));
    // recombine to avoid degenerate leading behaviour, deterministically
    for phi in [0.0f64, 0.7391, 1.2341, 2.5173] {
        let (c, s) = (phi.cos(), phi.sin());
        let n1 = m1.scale(C64::new(c, 0.0)).add(&m2.scale(C64::new(s, 0.0)));
        let n2 = m1.scale(C64::new(-s, 0.0)).add(&m2.scale(C64::new(c, 0.0)));
        match conic_intersect_attempt(&n1, &n2, &m1, &m2) {
            Ok(mut points) => {
                for p in points.iter_mut() {
                    newton_polish_on_conics(p, &m1, &m2);
                }
                // polishing can only tighten; re-verify and dedupe
                let mut ok = true;
                for p in &points {
                    ok &= quadratic_form(&m1, p).norm() < 1e-11
                        && quadratic_form(&m2, p).norm() < 1e-11;
                }
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        ok &= linalg::projective_distance(&points[i], &points[j]) > 1e-6;
                    }
                }
                if ok {
                    return Ok(points);
                }
            }
            Err(_) => continue,
        }
    }
    Err(Error::Genericity(
        "conic intersection degenerate in every pencil recombination".into(),
    ))
}

/// Newton iteration for the 2 x 2 system {x M1 x = 0, x M2 x = 0} on the
/// chart fixing the largest coordinate.
fn newton_polish_on_conics(p: &mut Vec<C64>, m1: &CMat, m2: &CMat) {
    let fixed = (0..3)
        .max_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm()))
        .unwrap();
    let free: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
    for _ in 0..6 {
        let f1 = quadratic_form(m1, p);
        let f2 = quadratic_form(m2, p);
        if f1.norm() + f2.norm() < 1e-15 {
            break;
        }
        let g1 = m1.matvec(p); // gradient / 2
        let g2 = m2.matvec(p);
        let j = CMat::from_rows(&[
            vec![2.0 * g1[free[0]], 2.0 * g1[free[1]]],
            vec![2.0 * g2[free[0]], 2.0 * g2[free[1]]],
        ]);
        let Ok(delta) = linalg::solve(&j, &[-f1, -f2]) else {
            break;
        };
        p[free[0]] += delta[0];
        p[free[1]] += delta[1];
    }
    *p = linalg::normalize_projective(p);
}

fn conic_intersect_attempt(
    n1: &CMat,
    n2: &CMat,
    m1: &CMat,
    m2: &CMat,
) -> Result<Vec<Vec<C64>>> {
    // det(n1 + mu n2) as a cubic in mu, by interpolation
    let d0 = linalg::det(n1);
    let d1 = linalg::det(&n1.add(n2));
    let dm1 = linalg::det(&n1.add(&n2.scale(C64::new(-1.0, 0.0))));
    let d2 = linalg::det(&n1.add(&n2.scale(C64::new(2.0, 0.0))));
    let b = (d1 + dm1) * 0.5 - d0;
    let a_plus_c = (d1 - dm1) * 0.5;
    let a = ((d2 - d0 - 4.0 * b) - 2.0 * a_plus_c) / 6.0;
    let c = a_plus_c - a;
    let mus = poly::roots(&[d0, c, b, a])?;
    if mus.is_empty() {
        return Err(Error::Genericity("pencil determinant degenerate".into()));
    }
    let mut out: Vec<Vec<C64>> = Vec::new();
    for &mu in &mus {
        let d = n1.add(&n2.scale(mu));
        let adj = adjugate3(&d);
        let adj_norm = adj.max_abs();
        if adj_norm < 1e-12 * d.max_abs().powi(2) {
            continue; // double line, hopeless vertex
        }
        // vertex = kernel of the rank-2 conic: the largest adjugate column
        let vertex = (0..3)
            .map(|j| adj.col(j))
            .max_by(|x, y| linalg::norm(x).total_cmp(&linalg::norm(y)))
            .unwrap();
        let vertex = linalg::normalize_projective(&vertex);
        // split into two lines: intersect the line pair with a probe line
        for probe in [
            [C64::new(1.0, 0.2), C64::new(0.3, -0.4), C64::new(-0.7, 0.1)],
            [C64::new(-0.2, 0.9), C64::new(1.1, 0.3), C64::new(0.4, 0.6)],
        ] {
            let r2: Vec<C64> = probe.to_vec();
            // probe line through r1 orthogonal-ish to vertex to stay generic
            let r1: Vec<C64> = vec![C64::new(0.8, -0.3), C64::new(-0.5, 0.7), C64::new(0.9, 0.2)];
            let qa = quadratic_form(&d, &r1);
            let qb = linalg::pair(&d.matvec(&r1), &r2);
            let qc = quadratic_form(&d, &r2);
            let pts = poly::binary_quadratic_roots(qa, 2.0 * qb, qc);
            let mut lines: Vec<Vec<C64>> = Vec::new();
            for (t0, t1) in pts {
                let mut y = vec![C64::ZERO; 3];
                linalg::axpy(&mut y, t0, &r1);
                linalg::axpy(&mut y, t1, &r2);
                if linalg::norm(&y) < 1e-12
                    || linalg::projective_distance(&y, &vertex) < 1e-8
                {
                    continue;
                }
                lines.push(linalg::cross3(&vertex, &y));
            }
            if lines.len() != 2 {
                continue;
            }
            // intersect each line with a nondegenerate pencil member
            let member = if linalg::det(n1).norm() > linalg::det(n2).norm() {
                n1
            } else {
                n2
            };
            let mut points: Vec<Vec<C64>> = Vec::new();
            for line in &lines {
                let basis = linalg::nullspace(&CMat::from_rows(std::slice::from_ref(line)), 1e-12);
                if basis.len() != 2 {
                    continue;
                }
                let (u1, u2) = (&basis[0], &basis[1]);
                let qa = quadratic_form(member, u1);
                let qb = linalg::pair(&member.matvec(u1), u2);
                let qc = quadratic_form(member, u2);
                for (t0, t1) in poly::binary_quadratic_roots(qa, 2.0 * qb, qc) {
                    let mut y = vec![C64::ZERO; 3];
                    linalg::axpy(&mut y, t0, u1);
                    linalg::axpy(&mut y, t1, u2);
                    if linalg::norm(&y) > 1e-12 {
                        points.push(linalg::normalize_projective(&y));
                    }
                }
            }
            // keep distinct points lying on both original conics
            let mut distinct: Vec<Vec<C64>> = Vec::new();
            for p in points {
                let r1v = quadratic_form(m1, &p).norm() / m1.max_abs();
                let r2v = quadratic_form(m2, &p).norm() / m2.max_abs();
                if r1v < 1e-7 && r2v < 1e-7
                    && !distinct
                        .iter()
                        .any(|q| linalg::projective_distance(q, &p) < 1e-7)
                {
                    distinct.push(p);
                }
            }
            if distinct.len() == 4 {
                return Ok(distinct);
            }
            out = distinct;
        }
    }
    Err(Error::Genericity(format!(
        "found {} isolated intersection points instead of 4",
        out.len()
    )))
}

/// Tangency data of one computed hyperplane on one component.
#[derive(Debug, Clone)]
pub struct TangencyCheck {
    pub disc_residual: f64,
    pub tangency_param: C64,
}

/// The four hyperplanes through a fixed subset of g-3 nodes, bitangent to
/// the curve (one tangency on each component), with tangency diagnostics.
pub fn theta_type_g3_for_subset(
    x: &ProjectiveSplitCurve,
    subset: &[usize],
    tol: &Tolerances,
) -> Result<Vec<(Vec<C64>, [TangencyCheck; 2])>> {
    let g = x.g as usize;
    if subset.len() != g - 3 {
        return Err(Error::InvalidInput(format!(
            "subset size {} != g-3 = {}",
            subset.len(),
            g - 3
        )));
    }
    let nodes = x.nodes();
    let span_points: Vec<Vec<C64>> = subset.iter().map(|&i| nodes[i].clone()).collect();
    let mut net = hyperplanes_through(&span_points, g)?;
    debug_assert_eq!(net.len(), 3);

    // per component: quadratics of the three net generators
    let mut quads: [[Vec<C64>; 3]; 2] = Default::default();
    for k in 0..2 {
        let roots: Vec<C64> = subset.iter().map(|&i| x.node_param(k, i)).collect();
        for j in 0..3 {
            let p = restriction_poly(x.components[k].frame(), &net[j]);
            quads[k][j] = poly::quadratic_quotient(&p, &roots, 1e-7)?;
        }
    }
    // rebalance the net basis so the restriction quadratics have comparable
    // scale on badly conditioned frames (pure basis change: the hyperplane
    // family is unchanged, the discriminant conics stop cancelling)
    for j in 0..3 {
        let s0 = quads[0][j].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let s1 = quads[1][j].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let gamma = (s0 * s1).sqrt().max(1e-300);
        let inv = C64::new(1.0 / gamma, 0.0);
        for c in net[j].iter_mut() {
            *c *= inv;
        }
        for k in 0..2 {
            for c in quads[k][j].iter_mut() {
                *c *= inv;
            }
        }
    }
    let m0 = discriminant_conic(&quads[0]);
    let m1 = discriminant_conic(&quads[1]);
    let lambdas = conic_intersect(&m0, &m1)?;
    if lambdas.len() != 4 {
        return Err(Error::Genericity(format!(
            "{} common tangency classes instead of 4",
            lambdas.len()
        )));
    }

    let mut out = Vec::with_capacity(4);
    for lambda in &lambdas {
        let mut h = vec![C64::ZERO; g];
        for j in 0..3 {
            linalg::axpy(&mut h, lambda[j], &net[j]);
        }
        let h = linalg::normalize_projective(&h);
        let mut checks: Vec<TangencyCheck> = Vec::with_capacity(2);
        for k in 0..2 {
            // recombine the quadratic and check the double root
            let mut q = vec![C64::ZERO; 3];
            for j in 0..3 {
                linalg::axpy(&mut q, lambda[j], &quads[k][j]);
            }
            let scale = q.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
            let disc = (q[1] * q[1] - 4.0 * q[2] * q[0]).norm() / (scale * scale);
            if disc > tol.tangency {
                return Err(Error::Genericity(format!(
                    "tangency residual {disc:.3e} on component {k}"
                )));
            }
            if q[2].norm() < 1e-9 * scale {
                return Err(Error::Genericity(
                    "tangency at the parameter infinity".into(),
                ));
            }
            let t_star = -q[1] / (2.0 * q[2]);
            // tangency point must avoid every node parameter
            for i in 0..=g {
                if (t_star - x.node_param(k, i)).norm() < 1e-6 {
                    return Err(Error::Genericity(format!(
                        "tangency point hits node {i} on component {k}"
                    )));
                }
            }
            checks.push(TangencyCheck {
                disc_residual: disc,
                tangency_param: t_star,
            });
        }
        // the hyperplane contains exactly the subset nodes
        for (i, node) in nodes.iter().enumerate() {
            let r = linalg::pair(&h, node).norm();
            if subset.contains(&i) {
                if r > tol.containment {
                    return Err(Error::Numerical(format!(
                        "subset node {i} off its hyperplane by {r:.3e}"
                    )));
                }
            } else if r < 2.0 * tol.containment {
                // within a factor two of the containment threshold: whether
                // the node lies on the hyperplane is ambiguous at this
                // tolerance, so the curve is treated as non-generic
                return Err(Error::Genericity(format!(
                    "hyperplane ambiguously near extra node {i} (residual {r:.3e})"
                )));
            }
        }
        out.push((h, [checks[0].clone(), checks[1].clone()]));
    }
    // four distinct hyperplanes
    for i in 0..4 {
        for j in i + 1..4 {
            if linalg::projective_distance(&out[i].0, &out[j].0) < tol.clustering {
                return Err(Error::Genericity(
                    "coincident hyperplanes in one subset".into(),
                ));
            }
        }
    }
    Ok(out)
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

/// All theta-hyperplanes containing exactly g-3 nodes: four per subset,
/// 4 C(g+1, g-3) in total, each tagged with type g-3 and multiplicity 1.
/// Theta-genericity (distinct tangency points, none at a node) is verified.
pub fn theta_type_g3(x: &ProjectiveSplitCurve, tol: &Tolerances) -> Result<HyperplaneConfiguration> {
    let g = x.g as usize;
    let mut cfg = HyperplaneConfiguration::new(g);
    let mut tangency_params: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
    for subset in subsets(g + 1, g - 3) {
        for (h, checks) in theta_type_g3_for_subset(x, &subset, tol)? {
            cfg.push(&h, 1, (g - 3) as u32)?;
            for k in 0..2 {
                tangency_params[k].push(checks[k].tangency_param);
            }
        }
    }
    // global genericity: tangency points pairwise distinct per component
    for params in &tangency_params {
        for i in 0..params.len() {
            for j in i + 1..params.len() {
                if (params[i] - params[j]).norm() < 1e-8 {
                    return Err(Error::Genericity(
                        "coincident tangency points across hyperplanes".into(),
                    ));
                }
            }
        }
    }
    cfg.sort_canonical();
    Ok(cfg)
}

/// The C(g+1, g-1) hyperplanes spanned by g-1 nodes, type g-1,
/// multiplicity 1. Each must contain its g-1 nodes and no others.
pub fn theta_type_g1(x: &ProjectiveSplitCurve, tol: &Tolerances) -> Result<HyperplaneConfiguration> {
    let g = x.g as usize;
    let nodes = x.nodes();
    let mut cfg = HyperplaneConfiguration::new(g);
    for subset in subsets(g + 1, g - 1) {
        let pts: Vec<Vec<C64>> = subset.iter().map(|&i| nodes[i].clone()).collect();
        let basis = hyperplanes_through(&pts, g)?;
        if basis.len() != 1 {
            return Err(Error::Numerical(format!(
                "span of {} nodes not a hyperplane",
                g - 1
            )));
        }
        let h = &basis[0];
        for (i, node) in nodes.iter().enumerate() {
            let r = linalg::pair(h, node).norm();
            if subset.contains(&i) {
                if r > tol.containment {
                    return Err(Error::Numerical(format!(
                        "node {i} off its span hyperplane by {r:.3e}"
                    )));
                }
            } else if r < 2.0 * tol.containment {
                return Err(Error::Genericity(format!(
                    "span hyperplane ambiguously near extra node {i} (residual {r:.3e})"
                )));
            }
        }
        cfg.push(h, 1, (g - 1) as u32)?;
    }
    cfg.sort_canonical();
    Ok(cfg)
}

/// The weighted configuration: type-(g-3) entries with multiplicity 2^(g-3)
/// and type-(g-1) entries with multiplicity 2^(g-1).
pub fn theta_hat(x: &ProjectiveSplitCurve, tol: &Tolerances) -> Result<HyperplaneConfiguration> {
    let g = x.g;
    let low = theta_type_g3(x, tol)?;
    let high = theta_type_g1(x, tol)?;
    let mut cfg = HyperplaneConfiguration::new(g as usize);
    for e in &low.entries {
        cfg.push(&e.covector, pow2(g - 3) as u64, g - 3)?;
    }
    for e in &high.entries {
        cfg.push(&e.covector, pow2(g - 1) as u64, g - 1)?;
    }
    cfg.sort_canonical();
    Ok(cfg)
}

/// Degenerate configuration of a hyperelliptic split curve whose canonical
/// model is a single rational normal curve with marked points `params`:
/// spans of g-3 marked points plus one tangent line (type g-3, multiplicity
/// 2^(g-3)), and spans of g-1 marked points (type g-1, multiplicity
/// 2^(g-1)). Hyperplanes are polynomials in the parameter; the tangent-line
/// factor is a double root.
pub fn theta_hat_hyperelliptic(
    g: u32,
    params: &[C64],
    tol: &Tolerances,
) -> Result<HyperplaneConfiguration> {
    let n = g as usize + 1;
    if params.len() != n {
        return Err(Error::InvalidInput(format!("need {n} marked points")));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (params[i] - params[j]).norm() < 1e-9 {
                return Err(Error::Genericity(format!(
                    "marked points {i} and {j} coincide"
                )));
            }
        }
    }
    let dim = g as usize;
    let mut cfg = HyperplaneConfiguration::new(dim);
    for subset in subsets(n, dim - 3) {
        for j in 0..n {
            if subset.contains(&j) {
                continue;
            }
            let mut roots: Vec<C64> = subset.iter().map(|&i| params[i]).collect();
            roots.push(params[j]);
            roots.push(params[j]);
            let h = poly::from_roots(&roots);
            // the built-from tangent line stays on the hyperplane
            let p0 = linalg::pair(&h, &moment_point(params[j], dim)).norm();
            let p1 = linalg::pair(&h, &moment_tangent(params[j], dim)).norm();
            let scale = linalg::norm(&h);
            if p0 / scale > tol.construction || p1 / scale > tol.construction {
                return Err(Error::Numerical(format!(
                    "tangent line escapes its hyperplane ({:.3e}, {:.3e})",
                    p0 / scale,
                    p1 / scale
                )));
            }
            cfg.push(&h, pow2(g - 3) as u64, g - 3)?;
        }
    }
    for subset in subsets(n, dim - 1) {
        let roots: Vec<C64> = subset.iter().map(|&i| params[i]).collect();
        let h = poly::from_roots(&roots);
        cfg.push(&h, pow2(g - 1) as u64, g - 1)?;
    }
    cfg.sort_canonical();
    Ok(cfg)
}

/// Number of configuration entries of the given type through each point.
pub fn node_incidence_counts(
    cfg: &HyperplaneConfiguration,
    points: &[Vec<C64>],
    node_type: u32,
    tol: &Tolerances,
) -> Vec<usize> {
    points
        .iter()
        .map(|p| {
            cfg.entries_of_type(node_type)
                .iter()
                .filter(|e| {
                    linalg::pair(&e.covector, p).norm() / linalg::norm(p) < tol.containment
                })
                .count()
        })
        .collect()
}

/// Projection of the split curve from the span of g-3 of its nodes: the
/// 3 x g projection matrix and the image conic frames of both components
/// (parametrized by the same parameters as the source components).
pub fn project_from_nodes(
    x: &ProjectiveSplitCurve,
    subset: &[usize],
) -> Result<(CMat, [CMat; 2])> {
    let g = x.g as usize;
    let nodes = x.nodes();
    let span_points: Vec<Vec<C64>> = subset.iter().map(|&i| nodes[i].clone()).collect();
    let p_rows = hyperplanes_through(&span_points, g)?;
    let p = CMat::from_rows(&p_rows);
    let mut frames = Vec::with_capacity(2);
    for k in 0..2 {
        let roots: Vec<C64> = subset.iter().map(|&i| x.node_param(k, i)).collect();
        let pa = p.mul(x.components[k].frame());
        let mut rows = Vec::with_capacity(3);
        for r in 0..3 {
            rows.push(poly::quadratic_quotient(pa.row(r), &roots, 1e-7)?);
        }
        frames.push(CMat::from_rows(&rows));
    }
    Ok((p, [frames[0].clone(), frames[1].clone()]))
}

/// Image of a covector through `h . x = l . (P x)`: l = conj(P) h. Defined
/// for hyperplanes containing the projection center.
pub fn project_covector(p: &CMat, h: &[C64]) -> Vec<C64> {
    p.conj().matvec(h)
}

/// Draws seeded random split curves until one is theta-generic at the given
/// tolerances (every guard in the theta computations passes), returning the
/// curve together with its weighted configuration. Deterministic for a fixed
/// seed stream; errors after 40 draws.
pub fn random_generic_split_curve(
    g: u32,
    rng: &mut rand_chacha::ChaCha12Rng,
    tol: &Tolerances,
) -> Result<(ProjectiveSplitCurve, HyperplaneConfiguration)> {
    let mut last = String::new();
    for _ in 0..40 {
        let curve = match super::curve::random_split_curve(g, rng, tol) {
            Ok(c) => c,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        match theta_hat(&curve, tol) {
            Ok(cfg) => return Ok((curve, cfg)),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Genericity(format!(
        "no theta-generic split curve in 40 draws; last failure: {last}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::curve::random_split_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn conic_intersection_of_circles() {
        // x^2 + y^2 - z^2 and (x - z)^2 + y^2 - z^2 overlap in two real and
        // two complex points; all four satisfy both equations
        let m1 = CMat::from_rows(&[
            vec![C64::ONE, C64::ZERO, C64::ZERO],
            vec![C64::ZERO, C64::ONE, C64::ZERO],
            vec![C64::ZERO, C64::ZERO, -C64::ONE],
        ]);
        let m2 = CMat::from_rows(&[
            vec![C64::ONE, C64::ZERO, -C64::ONE],
            vec![C64::ZERO, C64::ONE, C64::ZERO],
            vec![-C64::ONE, C64::ZERO, C64::ZERO],
        ]);
        let pts = conic_intersect(&m1, &m2).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!(quadratic_form(&m1, p).norm() < 1e-8);
            assert!(quadratic_form(&m2, p).norm() < 1e-8);
        }
    }

    #[test]
    fn genus3_bitangent_counts() {
        let tol = Tolerances::default();
        let mut rng = ChaCha12Rng::seed_from_u64(301);
        let x = random_split_curve(3, &mut rng, &tol).unwrap();
        let low = theta_type_g3(&x, &tol).unwrap();
        assert_eq!(low.entries.len(), 4);
        let high = theta_type_g1(&x, &tol).unwrap();
        assert_eq!(high.entries.len(), 6);
        let hat = theta_hat(&x, &tol).unwrap();
        assert_eq!(hat.total_degree(), 28);
        assert_eq!(hat.entries.len(), 10);
        // node incidence: no bitangent passes through a node; each node on
        // exactly three of the six node-lines
        let nodes = x.nodes();
        assert_eq!(node_incidence_counts(&hat, &nodes, 0, &tol), vec![0; 4]);
        assert_eq!(node_incidence_counts(&hat, &nodes, 2, &tol), vec![3; 4]);
    }

    #[test]
    fn genus4_counts_and_incidence() {
        let tol = Tolerances::default();
        let mut rng = ChaCha12Rng::seed_from_u64(402);
        let x = random_split_curve(4, &mut rng, &tol).unwrap();
        let hat = theta_hat(&x, &tol).unwrap();
        assert_eq!(hat.entries_of_type(1).len(), 20);
        assert_eq!(hat.entries_of_type(3).len(), 10);
        assert_eq!(hat.total_degree(), 120);
        let nodes = x.nodes();
        assert_eq!(node_incidence_counts(&hat, &nodes, 1, &tol), vec![4; 5]);
        assert_eq!(node_incidence_counts(&hat, &nodes, 3, &tol), vec![6; 5]);
    }

    #[test]
    fn hyperelliptic_counts_and_tangent_incidence() {
        let tol = Tolerances::default();
        let params: Vec<C64> = (0..5)
            .map(|k| C64::from_polar(1.0, 0.3 + 1.13 * k as f64))
            .collect();
        let cfg = theta_hat_hyperelliptic(4, &params, &tol).unwrap();
        assert_eq!(cfg.entries_of_type(1).len(), 20);
        assert_eq!(cfg.entries_of_type(3).len(), 10);
        assert_eq!(cfg.total_degree(), 120);
        // every marked point lies on 8 of the type-(g-3) hyperplanes
        let pts: Vec<Vec<C64>> = params.iter().map(|&t| moment_point(t, 4)).collect();
        assert_eq!(node_incidence_counts(&cfg, &pts, 1, &tol), vec![8; 5]);
    }

    #[test]
    fn projection_coherence_g4() {
        // projecting the curve from one node and computing the image
        // bitangents agrees with projecting the four hyperplanes through
        // that node
        let tol = Tolerances::default();
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        let x = random_split_curve(4, &mut rng, &tol).unwrap();
        let subset = vec![2usize];
        let (p, frames) = project_from_nodes(&x, &subset).unwrap();
        // image bitangents via the genus-3 machinery on the image conics
        let image = ProjectiveSplitCurve {
            g: 3,
            components: [
                crate::geom::curve::RationalNormalCurve::new(frames[0].clone()).unwrap(),
                crate::geom::curve::RationalNormalCurve::new(frames[1].clone()).unwrap(),
            ],
            t_params: (0..=4)
                .filter(|i| !subset.contains(i))
                .map(|i| x.t_params[i])
                .collect(),
            s_params: (0..=4)
                .filter(|i| !subset.contains(i))
                .map(|i| x.s_params[i])
                .collect(),
        };
        let image_lines = theta_type_g3(&image, &tol).unwrap();
        // upstairs hyperplanes through the node, projected
        let ups = theta_type_g3_for_subset(&x, &subset, &tol).unwrap();
        assert_eq!(ups.len(), 4);
        for (h, _) in &ups {
            let l = project_covector(&p, h);
            let best = image_lines
                .entries
                .iter()
                .map(|e| linalg::projective_distance(&l, &e.covector))
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-6, "projected hyperplane misses bitangents: {best:.2e}");
        }
    }
}
