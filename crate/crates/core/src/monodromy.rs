//! Big-monodromy certificates: the eigenvalue-partition criterion, the
//! prime-dimension criterion, family-specific checks, and the
//! prime-truncation search.
//!
//! Nothing here verifies the geometric hypotheses (irreducibility,
//! translation-invariance); the certificates record numeric conditions only.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::curve::{self, WeightVector};
use crate::error::{Error, Result};
use crate::polygon::MonomialSupport;

/// Multiplicities of the weight classes, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPartition {
    pub c: Vec<u64>,
    pub r_total: u64,
}

impl WeightPartition {
    pub fn new(mut c: Vec<u64>) -> Result<Self> {
        if c.is_empty() || c.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput(
                "partition parts must be positive".into(),
            ));
        }
        c.sort_unstable_by(|a, b| b.cmp(a));
        let r_total = c.iter().sum();
        Ok(WeightPartition { c, r_total })
    }

    /// Partition of the nonzero multiplicities of a weight vector.
    pub fn from_weights(w: &WeightVector) -> Result<Self> {
        Self::new(w.mult.iter().copied().filter(|&m| m > 0).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub large: bool,
    pub failed_conditions: Vec<String>,
}

/// The eigenvalue-partition criterion: with `c` the partition of the total
/// dimension `R` into weight classes, the monodromy is the full special or
/// general linear group when `len(c) <= r+1`, the smallest class is a
/// singleton strictly below the next one, the second largest class is at most
/// `r`, and `R > 72 (r^2 + 1)^2`.
pub fn theorem_a_check(partition: &WeightPartition, r: u64) -> CheckResult {
    let c = &partition.c;
    let big_r = partition.r_total;
    let mut failed = Vec::new();
    if c.len() as u64 > r + 1 {
        failed.push(format!("len(c) = {} exceeds r+1 = {}", c.len(), r + 1));
    }
    let last = *c.last().unwrap();
    let second_last = if c.len() >= 2 { c[c.len() - 2] } else { last };
    if !(last == 1 && (c.len() >= 2 && second_last > 1)) {
        failed.push(format!(
            "smallest class must be a singleton strictly below the next ({last} vs {second_last})"
        ));
    }
    if c.len() >= 2 && c[1] > r {
        failed.push(format!("second largest class {} exceeds r = {r}", c[1]));
    }
    let bound = 72u128 * (r as u128 * r as u128 + 1).pow(2);
    if big_r as u128 <= bound {
        failed.push(format!("R = {big_r} is not above 72(r^2+1)^2 = {bound}"));
    }
    CheckResult {
        large: failed.is_empty(),
        failed_conditions: failed,
    }
}

#[derive(Debug, Clone)]
pub struct CurveMonodromyReport {
    pub weights: WeightVector,
    pub partition: WeightPartition,
    /// Smallest admissible class-size parameter used for the check.
    pub r: u64,
    pub theorem_a: CheckResult,
    /// True when the support is a triangle with side lattice lengths
    /// `{1, 2, 3}` and area above 7204 — the sufficient configuration.
    pub triangle_sufficient: bool,
    pub side_gcds: Vec<i64>,
}

/// Partition check for a nondegenerate curve support, plus the triangle
/// sufficient-configuration flag.
pub fn curve_monodromy_check(f: &MonomialSupport) -> Result<CurveMonodromyReport> {
    let weights = curve::weights(f)?;
    let partition = WeightPartition::from_weights(&weights)?;
    let r = std::cmp::max(
        partition.c.len() as u64 - 1,
        if partition.c.len() >= 2 { partition.c[1] } else { 0 },
    )
    .max(1);
    let theorem_a = theorem_a_check(&partition, r);

    let points: Vec<Vec<i64>> = f
        .plotted_points()?
        .into_iter()
        .map(|(h, v)| vec![h, v])
        .collect();
    let hull = crate::polytope::LatticePolytope::convex_hull(&points)?;
    let mut side_gcds: Vec<i64> = hull
        .edges()
        .iter()
        .map(|e| {
            let a = &hull.vertices()[e.vertices[0]];
            let b = &hull.vertices()[e.vertices[1]];
            num_integer::gcd((a[0] - b[0]).abs(), (a[1] - b[1]).abs())
        })
        .collect();
    side_gcds.sort_unstable();
    let area2 = hull.normalized_volume();
    let triangle_sufficient = hull.vertices().len() == 3
        && side_gcds == vec![1, 2, 3]
        && area2 > BigInt::from(2 * 7204);
    Ok(CurveMonodromyReport {
        weights,
        partition,
        r,
        theorem_a,
        triangle_sufficient,
        side_gcds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidMonodromyReport {
    pub r: i64,
    pub big_r: i64,
    /// `r >= 2`.
    pub class_bound_holds: bool,
    /// The printed inequality `R > (72 r^2 + 1)^2`.
    pub verbatim_holds: bool,
    /// The partition-criterion bound `R > 72 (r^2 + 1)^2`.
    pub canonical_holds: bool,
}

/// Evaluates both large-monodromy bounds for the pyramid family, with
/// `r = 2ab - 2a - 2b + 2` and `R = 2abc`. The two bounds differ; both are
/// reported side by side rather than silently choosing one.
pub fn pyramid_monodromy_check(a: i64, b: i64, c: i64) -> Result<PyramidMonodromyReport> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::InvalidInput(
            "pyramid parameters must be positive".into(),
        ));
    }
    let r = 2 * a * b - 2 * a - 2 * b + 2;
    let big_r = 2 * a * b * c;
    let verbatim = (72i128 * (r as i128) * (r as i128) + 1).pow(2);
    let canonical = 72i128 * ((r as i128) * (r as i128) + 1).pow(2);
    Ok(PyramidMonodromyReport {
        r,
        big_r,
        class_bound_holds: r >= 2,
        verbatim_holds: r >= 2 && (big_r as i128) > verbatim,
        canonical_holds: r >= 2 && (big_r as i128) > canonical,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GabberVerdict {
    ContainsSLorSO,
    Inconclusive(String),
}

/// The prime-dimension criterion: a prime total dimension whose weight
/// multiset is neither a single class nor all singleton classes forces the
/// monodromy to contain the full special linear or orthogonal group. `R = 7`
/// admits an exceptional subgroup and stays inconclusive unless the caller
/// explicitly waives it.
pub fn gabber_check(big_r: u64, weights: &WeightVector, waive_g2: bool) -> Result<GabberVerdict> {
    if weights.total() != big_r {
        return Err(Error::InvalidInput(format!(
            "weights total {} but R = {big_r}",
            weights.total()
        )));
    }
    let primality = is_prime(&BigInt::from(big_r));
    if !primality.is_prime {
        return Ok(GabberVerdict::Inconclusive(format!("R = {big_r} is not prime")));
    }
    if big_r == 7 && !waive_g2 {
        return Ok(GabberVerdict::Inconclusive(
            "R = 7 admits an exceptional rank-2 subgroup; waive explicitly to proceed".into(),
        ));
    }
    let classes: Vec<u64> = weights.mult.iter().copied().filter(|&m| m > 0).collect();
    if classes.len() <= 1 {
        return Ok(GabberVerdict::Inconclusive(
            "all eigenvalue absolute values coincide (single weight class)".into(),
        ));
    }
    if classes.iter().all(|&m| m == 1) {
        return Ok(GabberVerdict::Inconclusive(
            "all eigenvalue absolute values are distinct (all classes singletons)".into(),
        ));
    }
    Ok(GabberVerdict::ContainsSLorSO)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimalityResult {
    pub is_prime: bool,
    /// True when the verdict comes from randomized rounds rather than the
    /// deterministic small-witness set.
    pub probabilistic: bool,
}

/// Miller-Rabin: deterministic below 2^64 (witnesses 2..=37), 64 rounds of
/// fixed pseudo-witnesses above.
pub fn is_prime(n: &BigInt) -> PrimalityResult {
    let deterministic_range = n.bits() <= 64;
    let mk = |p| PrimalityResult {
        is_prime: p,
        probabilistic: !deterministic_range,
    };
    if n < &BigInt::from(2) {
        return mk(false);
    }
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        let p = BigInt::from(p);
        if n == &p {
            return mk(true);
        }
        if (n % &p).is_zero() {
            return mk(false);
        }
    }
    // n - 1 = d * 2^s with d odd.
    let n_minus_1: BigInt = n - 1;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % BigInt::from(2)).is_zero() {
        d /= 2;
        s += 1;
    }
    let witness_passes = |a: &BigInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };
    if deterministic_range {
        small.iter().all(|&a| witness_passes(&BigInt::from(a)))
            .then(|| mk(true))
            .unwrap_or(mk(false))
    } else {
        // Fixed pseudo-witness schedule: 64 rounds of hashed bases, plus the
        // small primes. Deterministic across runs.
        let mut passes = small.iter().all(|&a| witness_passes(&BigInt::from(a)));
        let mut seed: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..64 {
            if !passes {
                break;
            }
            seed = seed
                .wrapping_mul(0x5851f42d4c957f2d)
                .wrapping_add(0x14057b7ef767814f);
            let base = BigInt::from((seed >> 16) | 2);
            passes = witness_passes(&(base % (n - 3) + 2));
        }
        mk(passes)
    }
}

/// Smallest `b` in `[1, a_1)` for which a truncated prism with sides `a` and
/// corner legs `(b, 1, ..., 1)` has prime fiber dimension
/// `N(b) = n! prod(a) - b`; `None` when the range is exhausted.
pub fn find_prime_truncation(a: &[i64]) -> Result<Option<(i64, BigInt)>> {
    let n = a.len();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if a.iter().any(|&x| x < 1) {
        return Err(Error::InvalidInput("sides must be positive".into()));
    }
    let nf: BigInt = (1..=n as u64).map(BigInt::from).product();
    let vol: BigInt = a.iter().fold(nf, |acc, &x| acc * BigInt::from(x));
    for b in 1..a[0] {
        let candidate = &vol - BigInt::from(b);
        if is_prime(&candidate).is_prime {
            return Ok(Some((b, candidate)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_a_examples() {
        let p = WeightPartition::new(vec![288, 1]).unwrap();
        assert!(theorem_a_check(&p, 1).large);

        let p = WeightPartition::new(vec![287, 1]).unwrap();
        let res = theorem_a_check(&p, 1);
        assert!(!res.large);
        assert_eq!(res.failed_conditions.len(), 1);
        assert!(res.failed_conditions[0].contains("72"));

        let p = WeightPartition::new(vec![5, 5]).unwrap();
        let res = theorem_a_check(&p, 4);
        assert!(!res.large);
        assert!(res
            .failed_conditions
            .iter()
            .any(|c| c.contains("singleton")));
    }

    #[test]
    fn theorem_a_monotone_in_r_total() {
        // Once large, growing the big class keeps it large.
        for extra in 0..5u64 {
            let p = WeightPartition::new(vec![288 + extra, 1]).unwrap();
            assert!(theorem_a_check(&p, 1).large);
        }
    }

    #[test]
    fn curve_check_trident() {
        let f = MonomialSupport::from_exponents(
            2,
            &[vec![3, 0], vec![1, 1], vec![0, 3]],
        )
        .unwrap();
        let report = curve_monodromy_check(&f).unwrap();
        assert!(!report.triangle_sufficient);
        assert_eq!(report.side_gcds, vec![1, 1, 3]);
        assert!(!report.theorem_a.large);
    }

    #[test]
    fn curve_check_large_triangle() {
        // Plotted triangle (0,0), (0,3), (9600,2): side lattice lengths
        // {1, 2, 3}, area 14400 > 7204.
        let f = MonomialSupport::from_exponents(
            2,
            &[vec![0, 0], vec![3, 0], vec![2, 9600]],
        )
        .unwrap();
        let report = curve_monodromy_check(&f).unwrap();
        assert_eq!(report.side_gcds, vec![1, 2, 3]);
        assert!(report.triangle_sufficient);
    }

    #[test]
    fn curve_check_small_triangle_not_sufficient() {
        // Same side gcds {1, 2, 3} but area only 300.
        let f = MonomialSupport::from_exponents(
            2,
            &[vec![0, 0], vec![3, 0], vec![2, 200]],
        )
        .unwrap();
        let report = curve_monodromy_check(&f).unwrap();
        assert_eq!(report.side_gcds, vec![1, 2, 3]);
        assert!(!report.triangle_sufficient);
    }

    #[test]
    fn curve_check_square_not_triangle() {
        let f = MonomialSupport::from_exponents(
            2,
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let report = curve_monodromy_check(&f).unwrap();
        assert!(!report.triangle_sufficient);
    }

    #[test]
    fn pyramid_bounds() {
        let r = pyramid_monodromy_check(2, 2, 10441).unwrap();
        assert_eq!(r.r, 2);
        assert!(r.verbatim_holds);
        let r = pyramid_monodromy_check(2, 2, 10440).unwrap();
        assert!(!r.verbatim_holds);
        assert!(r.canonical_holds);
        let r = pyramid_monodromy_check(2, 2, 226).unwrap();
        assert!(r.canonical_holds);
        let r = pyramid_monodromy_check(2, 2, 225).unwrap();
        assert!(!r.canonical_holds);
        let r = pyramid_monodromy_check(1, 1, 5).unwrap();
        assert!(!r.class_bound_holds);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigInt::from(47)).is_prime);
        assert!(is_prime(&BigInt::from(11)).is_prime);
        assert!(!is_prime(&BigInt::from(48)).is_prime);
        assert!(!is_prime(&BigInt::from(1)).is_prime);
        assert!(is_prime(&BigInt::from(2)).is_prime);
        // Strong pseudoprime to several bases.
        assert!(!is_prime(&BigInt::from(3215031751u64)).is_prime);
        let big: BigInt = BigInt::from(2).pow(89) - 1;
        let res = is_prime(&big);
        assert!(res.is_prime && res.probabilistic);
    }

    #[test]
    fn prime_truncation_search() {
        let (b, n) = find_prime_truncation(&[2, 3]).unwrap().unwrap();
        assert_eq!((b, n), (1, BigInt::from(11)));
        let (b, n) = find_prime_truncation(&[2, 2, 2]).unwrap().unwrap();
        assert_eq!((b, n), (1, BigInt::from(47)));
        assert_eq!(find_prime_truncation(&[1, 1]).unwrap(), None);
    }

    #[test]
    fn gabber_examples() {
        let w = WeightVector {
            n: 2,
            mult: vec![3, 4, 4],
        };
        assert_eq!(
            gabber_check(11, &w, false).unwrap(),
            GabberVerdict::ContainsSLorSO
        );
        let w = WeightVector {
            n: 2,
            mult: vec![4, 4, 4],
        };
        assert!(matches!(
            gabber_check(12, &w, false).unwrap(),
            GabberVerdict::Inconclusive(_)
        ));
        let w = WeightVector {
            n: 2,
            mult: vec![2, 4, 1],
        };
        assert!(matches!(
            gabber_check(7, &w, false).unwrap(),
            GabberVerdict::Inconclusive(_)
        ));
        assert_eq!(
            gabber_check(7, &w, true).unwrap(),
            GabberVerdict::ContainsSLorSO
        );
        // Single class.
        let w = WeightVector {
            n: 2,
            mult: vec![0, 11, 0],
        };
        assert!(matches!(
            gabber_check(11, &w, false).unwrap(),
            GabberVerdict::Inconclusive(_)
        ));
        // All singletons.
        let w = WeightVector {
            n: 2,
            mult: vec![1, 1, 1],
        };
        assert!(matches!(
            gabber_check(3, &w, false).unwrap(),
            GabberVerdict::Inconclusive(_)
        ));
    }
}
