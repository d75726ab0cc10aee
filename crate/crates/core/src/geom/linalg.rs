//! Minimal dense complex linear algebra for the small systems that appear
//! here (dimensions stay below ten): Gaussian elimination with partial
//! pivoting, inverses, right nullspaces, and a few vector helpers.

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub nr: usize,
    pub nc: usize,
    pub a: Vec<C64>,
}

impl CMat {
    pub fn zero(nr: usize, nc: usize) -> Self {
        CMat {
            nr,
            nc,
            a: vec![C64::ZERO; nr * nc],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut a = Vec::with_capacity(nr * nc);
        for r in rows {
            assert_eq!(r.len(), nc, "ragged rows");
            a.extend_from_slice(r);
        }
        CMat { nr, nc, a }
    }

    pub fn from_cols(cols: &[Vec<C64>]) -> Self {
        let nc = cols.len();
        let nr = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zero(nr, nc);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nr, "ragged columns");
            for i in 0..nr {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.a[i * self.nc..(i + 1) * self.nc]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.nr).map(|i| self[(i, j)]).collect()
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.nc);
        (0..self.nr)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a * b)
                    .sum::<C64>()
            })
            .collect()
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.nc, other.nr);
        let mut out = CMat::zero(self.nr, other.nc);
        for i in 0..self.nr {
            for k in 0..self.nc {
                let aik = self[(i, k)];
                if aik == C64::ZERO {
                    continue;
                }
                for j in 0..other.nc {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Plain (bilinear) transpose, no conjugation.
    pub fn transpose(&self) -> CMat {
        let mut out = CMat::zero(self.nc, self.nr);
        for i in 0..self.nr {
            for j in 0..self.nc {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> CMat {
        let mut out = CMat::zero(self.nc, self.nr);
        for i in 0..self.nr {
            for j in 0..self.nc {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> CMat {
        CMat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.nr, self.nc), (other.nr, other.nc));
        CMat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.a[i * self.nc + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.a[i * self.nc + j]
    }
}

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting. Fails on (numerically) singular systems.
pub fn solve(a: &CMat, b: &[C64]) -> Result<Vec<C64>> {
    assert_eq!(a.nr, a.nc);
    assert_eq!(b.len(), a.nr);
    let n = a.nr;
    let mut m = a.clone();
    let mut x: Vec<C64> = b.to_vec();
    let scale = m.max_abs().max(1e-300);
    for col in 0..n {
        let (piv, piv_abs) = (col..n)
            .map(|r| (r, m[(r, col)].norm()))
            .max_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        if piv_abs < 1e-13 * scale {
            return Err(Error::Numerical(format!(
                "singular system: pivot {piv_abs:.3e} at column {col}"
            )));
        }
        if piv != col {
            for j in 0..n {
                let t = m[(col, j)];
                m[(col, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            x.swap(col, piv);
        }
        let d = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / d;
            if f == C64::ZERO {
                continue;
            }
            for j in col..n {
                let v = m[(col, j)];
                m[(r, j)] -= f * v;
            }
            let xc = x[col];
            x[r] -= f * xc;
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for j in col + 1..n {
            acc -= m[(col, j)] * x[j];
        }
        x[col] = acc / m[(col, col)];
    }
    Ok(x)
}

pub fn inverse(a: &CMat) -> Result<CMat> {
    assert_eq!(a.nr, a.nc);
    let n = a.nr;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![C64::ZERO; n];
        e[j] = C64::ONE;
        cols.push(solve(a, &e)?);
    }
    Ok(CMat::from_cols(&cols))
}

pub fn det(a: &CMat) -> C64 {
    assert_eq!(a.nr, a.nc);
    let n = a.nr;
    let mut m = a.clone();
    let mut d = C64::ONE;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| m[(p, col)].norm().total_cmp(&m[(q, col)].norm()))
            .unwrap();
        if m[(piv, col)].norm() == 0.0 {
            return C64::ZERO;
        }
        if piv != col {
            for j in 0..n {
                let t = m[(col, j)];
                m[(col, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            d = -d;
        }
        d *= m[(col, col)];
        let p = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / p;
            for j in col..n {
                let v = m[(col, j)];
                m[(r, j)] -= f * v;
            }
        }
    }
    d
}

/// 1-norm condition estimate via the explicit inverse; infinite when the
/// inverse does not exist.
pub fn cond_1(a: &CMat) -> f64 {
    let norm1 = |m: &CMat| {
        (0..m.nc)
            .map(|j| (0..m.nr).map(|i| m[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    match inverse(a) {
        Ok(inv) => norm1(a) * norm1(&inv),
        Err(_) => f64::INFINITY,
    }
}

/// Orthonormal basis (hermitian inner product) of the right nullspace
/// { x : A x = 0 }, by row reduction with full column bookkeeping.
pub fn nullspace(a: &CMat, rtol: f64) -> Vec<Vec<C64>> {
    let (nr, nc) = (a.nr, a.nc);
    if nr == 0 {
        return (0..nc)
            .map(|j| {
                let mut e = vec![C64::ZERO; nc];
                e[j] = C64::ONE;
                e
            })
            .collect();
    }
    let mut m = a.clone();
    let scale = m.max_abs().max(1e-300);
    let tol = rtol * scale;
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..nc {
        if r == nr {
            break;
        }
        let piv = (r..nr)
            .max_by(|&p, &q| m[(p, col)].norm().total_cmp(&m[(q, col)].norm()))
            .unwrap();
        if m[(piv, col)].norm() <= tol {
            continue;
        }
        if piv != r {
            for j in 0..nc {
                let t = m[(r, j)];
                m[(r, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
        }
        let d = m[(r, col)];
        for j in 0..nc {
            m[(r, j)] /= d;
        }
        for rr in 0..nr {
            if rr != r {
                let f = m[(rr, col)];
                if f != C64::ZERO {
                    for j in 0..nc {
                        let v = m[(r, j)];
                        m[(rr, j)] -= f * v;
                    }
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free_cols: Vec<usize> = (0..nc).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![C64::ZERO; nc];
        v[fc] = C64::ONE;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[(row, fc)];
        }
        basis.push(v);
    }
    orthonormalize(basis)
}

/// Modified Gram-Schmidt; drops near-zero vectors.
pub fn orthonormalize(mut vecs: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(vecs.len());
    for v in vecs.iter_mut() {
        for u in &out {
            let c = inner(v, u);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= c * ui;
            }
        }
        let n = norm(v);
        if n > 1e-12 {
            out.push(v.iter().map(|z| z / n).collect());
        }
    }
    out
}

/// Hermitian inner product <v, u> = sum v_i conj(u_i).
pub fn inner(v: &[C64], u: &[C64]) -> C64 {
    v.iter().zip(u).map(|(&a, &b)| a * b.conj()).sum()
}

/// Bilinear pairing sum v_i u_i (no conjugation): covector applied to point.
pub fn pair(v: &[C64], u: &[C64]) -> C64 {
    v.iter().zip(u).map(|(&a, &b)| a * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn axpy(y: &mut [C64], alpha: C64, x: &[C64]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Cross product in C^3 (the line through two points of the projective
/// plane, or the intersection point of two lines).
pub fn cross3(a: &[C64], b: &[C64]) -> Vec<C64> {
    assert!(a.len() == 3 && b.len() == 3);
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Scales to unit norm and rotates the phase so the first coordinate of
/// modulus above 1/sqrt(2n) of the max becomes real positive. Deterministic
/// representative of a projective point.
pub fn normalize_projective(v: &[C64]) -> Vec<C64> {
    let n = norm(v);
    assert!(n > 0.0, "cannot normalize the zero vector");
    let scaled: Vec<C64> = v.iter().map(|z| z / n).collect();
    let maxmod = scaled.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let anchor = scaled
        .iter()
        .find(|z| z.norm() >= maxmod * 0.5)
        .expect("max exists");
    let phase = anchor / anchor.norm();
    scaled.iter().map(|z| z / phase).collect()
}

/// Distance between projective points: sqrt(2 - 2 |<u, v>|) for unit vectors,
/// invariant under phase. Floating cancellation floors this at about 1e-8;
/// use [`projective_residual`] for tighter checks.
pub fn projective_distance(u: &[C64], v: &[C64]) -> f64 {
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return f64::INFINITY;
    }
    let c = inner(u, v).norm() / (nu * nv);
    (2.0 - 2.0 * c.min(1.0)).max(0.0).sqrt()
}

/// Sine of the angle between projective points, computed by orthogonal
/// rejection: free of the cancellation floor, resolves down to machine
/// precision. Symmetrized.
pub fn projective_residual(u: &[C64], v: &[C64]) -> f64 {
    let rej = |a: &[C64], b: &[C64]| -> f64 {
        let nb2: f64 = b.iter().map(|z| z.norm_sqr()).sum();
        if nb2 == 0.0 {
            return f64::INFINITY;
        }
        let c = inner(a, b) / nb2;
        let mut r = 0.0f64;
        for (ai, bi) in a.iter().zip(b) {
            r += (ai - c * bi).norm_sqr();
        }
        let na = norm(a);
        if na == 0.0 {
            f64::INFINITY
        } else {
            r.sqrt() / na
        }
    };
    rej(u, v).max(rej(v, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn solve_and_inverse_round_trip() {
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(-1.0, 2.0)],
            vec![c(1.0, -1.0), c(0.5, 0.0), c(2.0, 2.0)],
        ]);
        let b = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)];
        let x = solve(&a, &b).unwrap();
        let back = a.matvec(&x);
        for (u, v) in back.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
        let inv = inverse(&a).unwrap();
        let id = a.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { C64::ONE } else { C64::ZERO };
                assert!((id[(i, j)] - want).norm() < 1e-12);
            }
        }
        assert!(cond_1(&a).is_finite());
    }

    #[test]
    fn singular_detected() {
        let a = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ]);
        assert!(solve(&a, &[C64::ONE, C64::ONE]).is_err());
        assert!((det(&a)).norm() < 1e-12);
    }

    #[test]
    fn nullspace_dimensions() {
        // one row in C^3: nullspace has dimension 2
        let a = CMat::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]]);
        let ns = nullspace(&a, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(pair(a.row(0), v).norm() < 1e-12);
            assert!((norm(v) - 1.0).abs() < 1e-12);
        }
        assert!(inner(&ns[0], &ns[1]).norm() < 1e-12);
        // empty matrix: whole space
        let e = CMat::zero(0, 4);
        assert_eq!(nullspace(&e, 1e-12).len(), 4);
    }

    #[test]
    fn projective_helpers() {
        let v = vec![c(0.0, 2.0), c(2.0, 0.0)];
        let n = normalize_projective(&v);
        assert!((norm(&n) - 1.0).abs() < 1e-12);
        assert!(n[0].im.abs() < 1e-12 && n[0].re > 0.0);
        let w: Vec<C64> = v.iter().map(|z| z * c(0.3, -0.4)).collect();
        assert!(projective_distance(&v, &w) < 1e-7);
        assert!(projective_residual(&v, &w) < 1e-14);
        let u = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let x = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert!((projective_distance(&u, &x) - 2f64.sqrt()).abs() < 1e-12);
    }
}
