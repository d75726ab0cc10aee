//! Splitting-type calculus for vector bundles on the projective line:
//! twist bookkeeping, rank-2 elementary-transformation surfaces,
//! specialization semicontinuity, and the negativity certificates for the
//! restricted modified normal bundle of a split curve.

use serde::Serialize;

use crate::exact::binomial;
use crate::{Error, Result};

/// Multiset of summand degrees of a direct sum of line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    degrees: Vec<i64>, // kept sorted ascending
}

impl SplittingType {
    pub fn new<I: IntoIterator<Item = i64>>(degrees: I) -> Result<Self> {
        let mut degrees: Vec<i64> = degrees.into_iter().collect();
        if degrees.is_empty() {
            return Err(Error::InvalidInput("splitting type needs rank >= 1".into()));
        }
        degrees.sort_unstable();
        Ok(SplittingType { degrees })
    }

    /// The balanced type d^rank.
    pub fn uniform(degree: i64, rank: usize) -> Result<Self> {
        Self::new(std::iter::repeat_n(degree, rank))
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn max(&self) -> i64 {
        *self.degrees.last().unwrap()
    }

    pub fn min(&self) -> i64 {
        self.degrees[0]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn is_balanced(&self) -> bool {
        self.min() == self.max()
    }

    /// Tensor by the k-th power of the degree-1 bundle: shift every summand.
    pub fn tensor_shift(&self, k: i64) -> SplittingType {
        SplittingType {
            degrees: self.degrees.iter().map(|d| d + k).collect(),
        }
    }
}

/// Effect of one elementary transformation on the rank-2 surface invariant:
/// a center on the (-n)-section raises n by one, a center off it lowers n by
/// one; every point of the n = 0 surface behaves like the generic case.
pub fn elem_transform_rank2(n: u64, center_on_negative_section: bool) -> u64 {
    if n == 0 {
        1
    } else if center_on_negative_section {
        n + 1
    } else {
        n - 1
    }
}

/// Whether `generic` can specialize to `special` in a flat family: the
/// generic maximum cannot exceed the special maximum, the generic minimum
/// cannot drop below the special minimum, and a balanced special fiber
/// forces the generic fiber to equal it.
pub fn semicontinuity_ok(generic: &SplittingType, special: &SplittingType) -> Result<bool> {
    if generic.rank() != special.rank() {
        return Err(Error::InvalidInput(format!(
            "rank mismatch: {} vs {}",
            generic.rank(),
            special.rank()
        )));
    }
    if generic.total_degree() != special.total_degree() {
        return Err(Error::InvalidInput(format!(
            "degree mismatch: {} vs {}",
            generic.total_degree(),
            special.total_degree()
        )));
    }
    let ok = generic.max() <= special.max() && generic.min() >= special.min();
    if special.is_balanced() {
        return Ok(ok && generic == special);
    }
    Ok(ok)
}

/// Degree and section count of the normal bundle of a rational normal curve
/// of degree g-1, plus its (balanced) splitting type (g+1)^(g-2).
pub fn normal_bundle_constants(g: u32) -> Result<(i64, i64, SplittingType)> {
    if g < 3 {
        return Err(Error::InvalidInput("need g >= 3".into()));
    }
    let g = g as i64;
    Ok((
        (g - 2) * (g + 1),
        (g - 2) * (g + 2),
        SplittingType::uniform(g + 1, (g - 2) as usize)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateCase {
    /// g not congruent to 2 mod 3 and g >= 5: the per-fiber point count is a
    /// multiple of the rank, so the twisted-down bundle is balanced.
    Generic,
    /// g = 3x + 2: a full-rank sub-collection gives an upper bound a' on
    /// every summand degree.
    ThreeXPlusTwo { x: u64 },
    /// g = 4: balanced value -5 with a spread bound closing the gap.
    GenusFour,
}

/// Arithmetic certificate that every summand of the restricted modified
/// normal bundle of a split curve has negative degree.
#[derive(Debug, Clone, Serialize)]
pub struct NormalBundleCertificate {
    pub g: u32,
    pub case: CertificateCase,
    /// Number of elementary transformations: 4 C(g+1, 4) = (g+1) C(g, 3).
    pub n: u128,
    /// Transformation centers per fiber: C(g, 3).
    pub per_fiber: u128,
    /// Full twists applied in the balanced cases (None for g = 3x + 2,
    /// where only a sub-collection is twisted away).
    pub twist_exponent: Option<i64>,
    /// The proven bound on every summand degree of the twisted bundle
    /// (exact value in the balanced cases).
    pub degree_bound: i64,
    /// Degree of the restriction of the modified bundle: (g-2) a + (g+1) in
    /// the balanced cases, exact bookkeeping in general.
    pub restricted_degree_sum: i64,
    /// Upper bound for every summand of the restriction.
    pub restricted_max_bound: i64,
    /// Exact splitting when known (g = 4 and the generic case).
    pub splitting: Option<SplittingType>,
    /// Geometric input taken as an assumption rather than derived (g = 4
    /// spread bound: the five centers are not all on one section).
    pub assumptions: Vec<String>,
    /// All summand degrees of the restriction are negative.
    pub all_restricted_negative: bool,
    /// Internal consistency checks passed (divisibility, degree
    /// conservation, per-fiber identity).
    pub valid: bool,
    pub notes: Vec<String>,
}

/// Per-fiber identity C(3x+2, 3) = x + 3x * 3x(x+1)/2 for the g = 3x+2 case.
pub fn per_fiber_identity_holds(x: u64) -> bool {
    let g = 3 * x + 2;
    binomial(g, 3) == (x as u128) + (g as u128 - 2) * 3 * (x as u128) * (x as u128 + 1) / 2
}

/// Builds and checks the negativity certificate for genus g >= 4.
pub fn normal_bundle_certificate(g: u32) -> Result<NormalBundleCertificate> {
    if g < 4 {
        return Err(Error::InvalidInput("certificates need g >= 4".into()));
    }
    let gi = g as i64;
    let rank = gi - 2;
    let n = 4 * binomial(g as u64 + 1, 4);
    let per_fiber = binomial(g as u64, 3);
    let mut notes = vec![format!("n = 4 C({}, 4) = (g+1) C(g, 3) = {n}", g + 1)];
    let mut valid = (g as u128 + 1) * per_fiber == n;

    // exact degree of the restriction, independent of case analysis:
    // (g-2)(g+1) - n + (g+1)
    let restricted_degree_sum = (rank * (gi + 1) - n as i64) + (gi + 1);

    let cert = if g == 4 {
        // balanced -5 on the nose; the spread of the restriction is bounded
        // by the spread of the unmodified restriction, which is < 5 because
        // the five transformation centers do not sit on a single section
        let a = -5i64;
        valid &= restricted_degree_sum == -5;
        let spread_bound = 4i64; // v - u <= d - c <= 4
        let v_max = (restricted_degree_sum + spread_bound).div_euclid(2);
        NormalBundleCertificate {
            g,
            case: CertificateCase::GenusFour,
            n,
            per_fiber,
            twist_exponent: Some(10), // (g+1) g (g-1) / 6 at g = 4
            degree_bound: a,
            restricted_degree_sum,
            restricted_max_bound: v_max,
            splitting: Some(SplittingType::new([a, a])?),
            assumptions: vec![
                "the five transformation centers are not contained in one section; \
                 the unmodified restriction has summand spread < 5"
                    .into(),
            ],
            all_restricted_negative: v_max < 0,
            valid,
            notes,
        }
    } else if g % 3 == 2 {
        let x = ((g - 2) / 3) as u64;
        valid &= per_fiber_identity_holds(x);
        // twist away (per_fiber - x) centers per fiber: a' bounds every summand
        let a_prime = (gi + 1) - (gi + 1) * 3 * (x as i64) * (x as i64 + 1) / 2;
        // degree conservation for the twisted sub-collection
        let sub_n = (g as u128 + 1) * (per_fiber - x as u128);
        valid &= rank * (gi + 1) - sub_n as i64 == rank * a_prime;
        notes.push(format!(
            "sub-collection size {sub_n} leaves bound a' = {a_prime}"
        ));
        let restricted_max_bound = a_prime + (gi + 1);
        NormalBundleCertificate {
            g,
            case: CertificateCase::ThreeXPlusTwo { x },
            n,
            per_fiber,
            twist_exponent: None,
            degree_bound: a_prime,
            restricted_degree_sum,
            restricted_max_bound,
            splitting: None,
            assumptions: Vec::new(),
            all_restricted_negative: restricted_max_bound < 0 && a_prime < -(gi + 1),
            valid,
            notes,
        }
    } else {
        // per-fiber count divisible by the rank: full twists only
        valid &= per_fiber.is_multiple_of(rank as u128);
        let q = (gi + 1) * gi * (gi - 1) / 6; // (g+1) per_fiber / (g-2)
        valid &= (g as u128 + 1) * per_fiber == (rank as u128) * (q as u128);
        let a = (gi + 1) - q;
        valid &= rank * a == rank * (gi + 1) - n as i64;
        valid &= restricted_degree_sum == rank * a + (gi + 1);
        let restricted_max_bound = a + (gi + 1);
        NormalBundleCertificate {
            g,
            case: CertificateCase::Generic,
            n,
            per_fiber,
            twist_exponent: Some(q),
            degree_bound: a,
            restricted_degree_sum,
            restricted_max_bound,
            splitting: Some(SplittingType::uniform(a, rank as usize)?),
            assumptions: Vec::new(),
            all_restricted_negative: restricted_max_bound < 0 && a < -(gi + 1),
            valid,
            notes,
        }
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_shift_examples() {
        let nc = SplittingType::uniform(6, 3).unwrap(); // (g+1)^(g-2) at g = 5
        let shifted = nc.tensor_shift(-18);
        assert_eq!(shifted, SplittingType::uniform(-12, 3).unwrap());
        assert_eq!(nc.tensor_shift(0), nc);
        assert_eq!(
            shifted.total_degree(),
            nc.total_degree() - 18 * nc.rank() as i64
        );
    }

    #[test]
    fn elem_transform_examples() {
        assert_eq!(elem_transform_rank2(2, true), 3);
        assert_eq!(elem_transform_rank2(2, false), 1);
        assert_eq!(elem_transform_rank2(0, true), 1);
        assert_eq!(elem_transform_rank2(0, false), 1);
    }

    #[test]
    fn semicontinuity_examples() {
        let balanced = SplittingType::new([0, 0]).unwrap();
        let spread = SplittingType::new([-1, 1]).unwrap();
        assert!(semicontinuity_ok(&balanced, &spread).unwrap());
        assert!(!semicontinuity_ok(&spread, &balanced).unwrap());
        assert!(semicontinuity_ok(&balanced, &balanced).unwrap());
        assert!(semicontinuity_ok(&SplittingType::new([1, -1]).unwrap(), &spread).unwrap());
        // mismatches rejected
        assert!(semicontinuity_ok(&balanced, &SplittingType::new([0]).unwrap()).is_err());
        assert!(semicontinuity_ok(&balanced, &SplittingType::new([1, 1]).unwrap()).is_err());
    }

    #[test]
    fn normal_bundle_constants_examples() {
        let (d, h0, s) = normal_bundle_constants(4).unwrap();
        assert_eq!((d, h0), (10, 12));
        assert_eq!(s, SplittingType::new([5, 5]).unwrap());
        let (d, h0, s) = normal_bundle_constants(3).unwrap();
        assert_eq!((d, h0), (4, 5));
        assert_eq!(s, SplittingType::new([4]).unwrap());
        assert_eq!(s.total_degree(), d);
    }

    #[test]
    fn certificate_genus4() {
        let c = normal_bundle_certificate(4).unwrap();
        assert_eq!(c.case, CertificateCase::GenusFour);
        assert_eq!(c.degree_bound, -5);
        assert_eq!(
            c.splitting.as_ref().unwrap(),
            &SplittingType::new([-5, -5]).unwrap()
        );
        assert_eq!(c.restricted_degree_sum, -5);
        assert!(c.all_restricted_negative);
        assert!(c.valid);
    }

    #[test]
    fn certificate_small_genera() {
        // g = 5 is the x = 1 case: a' = 6 - 6*3 = -12 < -6
        let c5 = normal_bundle_certificate(5).unwrap();
        assert_eq!(c5.case, CertificateCase::ThreeXPlusTwo { x: 1 });
        assert_eq!(c5.degree_bound, -12);
        assert!(c5.all_restricted_negative && c5.valid);
        // g = 6: a = 7 - 35 = -28 < -7
        let c6 = normal_bundle_certificate(6).unwrap();
        assert_eq!(c6.case, CertificateCase::Generic);
        assert_eq!(c6.degree_bound, -28);
        assert_eq!(c6.n, 140);
        assert!(c6.all_restricted_negative && c6.valid);
    }

    #[test]
    fn certificates_negative_through_g50() {
        for g in 5..=50u32 {
            let c = normal_bundle_certificate(g).unwrap();
            assert!(c.valid, "g = {g}");
            assert!(c.all_restricted_negative, "g = {g}");
            assert!(c.degree_bound < -(g as i64 + 1), "g = {g}");
        }
    }

    #[test]
    fn per_fiber_identity_range() {
        for x in 1..=16 {
            assert!(per_fiber_identity_holds(x), "x = {x}");
        }
    }
}
