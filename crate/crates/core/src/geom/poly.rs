//! Complex univariate polynomials (ascending coefficients) and the small
//! root-finding needed here: closed forms for degree one and two,
//! simultaneous (Durand-Kerner) iteration with Newton polishing above that.

use num_complex::Complex64 as C64;

use crate::{Error, Result};

pub type CPoly = Vec<C64>;

pub fn eval(p: &[C64], t: C64) -> C64 {
    let mut acc = C64::ZERO;
    for &c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn deriv(p: &[C64]) -> CPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as f64))
        .collect()
}

pub fn mul(p: &[C64], q: &[C64]) -> CPoly {
    if p.is_empty() || q.is_empty() {
        return vec![];
    }
    let mut out = vec![C64::ZERO; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn from_roots(roots: &[C64]) -> CPoly {
    let mut p = vec![C64::ONE];
    for &r in roots {
        p = mul(&p, &[-r, C64::ONE]);
    }
    p
}

/// Synthetic division by (t - r): returns (quotient, remainder).
pub fn deflate(p: &[C64], r: C64) -> (CPoly, C64) {
    if p.is_empty() {
        return (vec![], C64::ZERO);
    }
    let mut q = vec![C64::ZERO; p.len() - 1];
    let mut carry = C64::ZERO;
    for i in (0..p.len()).rev() {
        let v = p[i] + carry;
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v;
        carry = v * r;
    }
    unreachable!()
}

/// Divides by all the (t - r) factors, checking each remainder against
/// `tol` relative to the polynomial scale.
pub fn divide_by_roots(p: &[C64], roots: &[C64], tol: f64) -> Result<CPoly> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
    let mut q = p.to_vec();
    for &r in roots {
        let (next, rem) = deflate(&q, r);
        if rem.norm() > tol * scale * (1.0 + r.norm()).powi(q.len() as i32) {
            return Err(Error::Numerical(format!(
                "root {r} leaves remainder {:.3e}",
                rem.norm()
            )));
        }
        q = next;
    }
    Ok(q)
}

/// Degree-two quotient p / prod (t - r) computed by evaluation at
/// well-separated sample points and interpolation, avoiding the error
/// amplification of sequential deflation when roots are large or clustered.
/// The roots must actually divide p (checked like [`divide_by_roots`]).
pub fn quadratic_quotient(p: &[C64], roots: &[C64], tol: f64) -> Result<CPoly> {
    if p.len() != roots.len() + 3 {
        return Err(Error::Numerical(format!(
            "quotient of degree {} by {} roots is not quadratic",
            p.len().saturating_sub(1),
            roots.len()
        )));
    }
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
    for &r in roots {
        let rem = eval(p, r).norm();
        if rem > tol * scale * (1.0 + r.norm()).powi(p.len() as i32) {
            return Err(Error::Numerical(format!(
                "root {r} leaves remainder {rem:.3e}"
            )));
        }
    }
    for radius in [1.0f64, 1.41, 0.67, 1.9] {
        'rot: for rot in [0.0f64, 0.7, 1.3] {
            let taus: [C64; 3] = std::array::from_fn(|k| {
                C64::from_polar(radius, rot + 2.0 * std::f64::consts::PI * k as f64 / 3.0)
            });
            let mut values = [C64::ZERO; 3];
            for (k, &tau) in taus.iter().enumerate() {
                if roots.iter().any(|&r| (tau - r).norm() < 0.2 * radius) {
                    continue 'rot;
                }
                let denom: C64 = roots.iter().map(|&r| tau - r).product();
                values[k] = eval(p, tau) / denom;
            }
            let vmax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if vmax == 0.0 || values.iter().any(|v| v.norm() < 1e-3 * vmax) {
                continue; // a sample sits near a quotient root; resample
            }
            // interpolate the quadratic through (tau_k, v_k)
            let mut q = vec![C64::ZERO; 3];
            for k in 0..3 {
                let (a, b) = (taus[(k + 1) % 3], taus[(k + 2) % 3]);
                let denom = (taus[k] - a) * (taus[k] - b);
                let w = values[k] / denom;
                // w (t - a)(t - b)
                q[0] += w * a * b;
                q[1] -= w * (a + b);
                q[2] += w;
            }
            return Ok(q);
        }
    }
    Err(Error::Numerical(
        "no well-separated samples for the quadratic quotient".into(),
    ))
}

fn trim(p: &[C64]) -> &[C64] {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut end = p.len();
    while end > 0 && p[end - 1].norm() <= 1e-13 * scale {
        end -= 1;
    }
    &p[..end]
}

/// All complex roots of p (degree after trimming tiny leading coefficients).
pub fn roots(p: &[C64]) -> Result<Vec<C64>> {
    let p = trim(p);
    if p.len() <= 1 {
        return if p.is_empty() {
            Err(Error::Numerical("zero polynomial has no root list".into()))
        } else {
            Ok(vec![])
        };
    }
    match p.len() {
        2 => Ok(vec![-p[0] / p[1]]),
        3 => Ok(quadratic_roots(p[2], p[1], p[0]).to_vec()),
        _ => durand_kerner(p),
    }
}

/// Roots of a t^2 + b t + c with a stable choice of branch.
pub fn quadratic_roots(a: C64, b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // pick the sign making |b + s*disc| large
    let s = if (b + disc).norm() >= (b - disc).norm() {
        disc
    } else {
        -disc
    };
    let q = -0.5 * (b + s);
    if q.norm() > 0.0 {
        [q / a, c / q]
    } else {
        [C64::ZERO, C64::ZERO]
    }
}

/// Roots of the homogeneous quadratic A x^2 + B xy + C y^2 as projective
/// pairs (x : y), robust when A or C vanishes.
pub fn binary_quadratic_roots(a: C64, b: C64, c: C64) -> [(C64, C64); 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let r1 = (-b + disc, 2.0 * a);
    let r2 = (-b - disc, 2.0 * a);
    // alternative representations with the roles swapped
    let s1 = (2.0 * c, -b + disc);
    let s2 = (2.0 * c, -b - disc);
    let pick = |r: (C64, C64), s: (C64, C64)| {
        if r.0.norm() + r.1.norm() >= s.0.norm() + s.1.norm() {
            r
        } else {
            s
        }
    };
    // (-b + disc, 2a) and (2c, -b - disc) represent the same root
    [pick(r1, s2), pick(r2, s1)]
}

fn durand_kerner(p: &[C64]) -> Result<Vec<C64>> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<C64> = p.iter().map(|&c| c / lead).collect();
    // radius bound and non-real starting angles
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            C64::from_polar(radius * 0.8, angle)
        })
        .collect();
    for _ in 0..200 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut denom = C64::ONE;
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-280 {
                return Err(Error::Numerical("coincident iterates".into()));
            }
            let delta = eval(&monic, z[i]) / denom;
            z[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // Newton polish
    let d = deriv(&monic);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dv = eval(&d, *zi);
            if dv.norm() > 1e-200 {
                *zi -= eval(&monic, *zi) / dv;
            }
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_and_deflate() {
        // (t - 2)(t - 3i) = t^2 - (2 + 3i) t + 6i
        let p = from_roots(&[c(2.0, 0.0), c(0.0, 3.0)]);
        assert!(eval(&p, c(2.0, 0.0)).norm() < 1e-14);
        let (q, rem) = deflate(&p, c(2.0, 0.0));
        assert!(rem.norm() < 1e-14);
        assert!(eval(&q, c(0.0, 3.0)).norm() < 1e-14);
        let quot = divide_by_roots(&p, &[c(2.0, 0.0), c(0.0, 3.0)], 1e-10).unwrap();
        assert_eq!(quot.len(), 1);
        assert!((quot[0] - C64::ONE).norm() < 1e-12);
        assert!(divide_by_roots(&p, &[c(1.0, 1.0)], 1e-10).is_err());
    }

    #[test]
    fn roots_by_degree() {
        let lin = vec![c(-3.0, 0.0), c(1.0, 0.0)];
        assert!((roots(&lin).unwrap()[0] - c(3.0, 0.0)).norm() < 1e-14);
        for want in [
            vec![c(1.0, 1.0), c(-2.0, 0.5)],
            vec![c(0.0, 1.0), c(0.0, -1.0), c(4.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(0.0, -1.0)],
        ] {
            let p = from_roots(&want);
            let mut got = roots(&p).unwrap();
            assert_eq!(got.len(), want.len());
            for w in &want {
                let (k, d) = got
                    .iter()
                    .enumerate()
                    .map(|(k, z)| (k, (z - w).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                assert!(d < 1e-9, "missing root {w}, distance {d:.2e}");
                got.remove(k);
            }
        }
    }

    #[test]
    fn binary_quadratic_handles_degenerate_leading_term() {
        // x y = 0: roots (1 : 0) and (0 : 1)
        let r = binary_quadratic_roots(C64::ZERO, C64::ONE, C64::ZERO);
        let classes: Vec<f64> = r
            .iter()
            .map(|(x, y)| {
                if y.norm() < 1e-12 {
                    f64::INFINITY
                } else {
                    (x / y).norm()
                }
            })
            .collect();
        assert!(classes.contains(&f64::INFINITY));
        assert!(classes.iter().any(|&v| v == 0.0));
    }
}
