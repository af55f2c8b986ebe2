//! Per-character Hodge numbers, Eulerian descent statistics, adjoint Hodge
//! vectors, and the two numerical non-density conditions.
//!
//! The Eulerian distribution is exact (rational) up to `n = 2000`, using a
//! Kronecker-substitution squaring to convolve the row, and a renormalized
//! floating recurrence up to `n = 50000` beyond that.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, ResidueClass};
use crate::polytope::LatticePolytope;
use crate::Budget;

pub const EXACT_N_LIMIT: u64 = 2000;
pub const FLOAT_N_LIMIT: u64 = 50000;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// The row `A(n, 0), ..., A(n, n-1)` of Eulerian numbers by the stable
/// recurrence `A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)`.
pub fn eulerian_row(n: u64) -> Result<Vec<BigInt>> {
    if n < 1 {
        return Err(Error::InvalidInput("Eulerian row needs n >= 1".into()));
    }
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m as usize];
        for k in 0..m as usize {
            let mut v = BigInt::zero();
            if k < row.len() {
                v += &row[k] * BigInt::from(k as u64 + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                v += &row[k - 1] * BigInt::from(m - k as u64);
            }
            next[k] = v;
        }
        row = next;
    }
    Ok(row)
}

/// `A(n, k)` by the recurrence.
pub fn eulerian_number(n: u64, k: u64) -> Result<BigInt> {
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "Eulerian number needs 0 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok(eulerian_row(n)?[k as usize].clone())
}

/// `A(n, k) = sum_{i=0}^{k} (-1)^i C(n+1, i) (k+1-i)^n`, the closed form used
/// to cross-check the recurrence.
pub fn eulerian_number_closed_form(n: u64, k: u64) -> Result<BigInt> {
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "Eulerian number needs 0 <= k < n, got n={n}, k={k}"
        )));
    }
    let mut acc = BigInt::zero();
    for i in 0..=k {
        let term = binomial(n + 1, i) * BigInt::from(k + 1 - i).pow(n as u32);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionMode {
    ExactRational,
    ScaledFloat,
}

/// Distribution of the sum of two independent centered descent counts:
/// `beta[j]` is the probability of the value `p = j - (n-1)`,
/// `j = 0..=2(n-1)`.
#[derive(Debug, Clone)]
pub enum EulerianDistribution {
    Exact {
        n: u64,
        /// Convolution numerators: `beta_p = c[p + n - 1] / den`.
        c: Vec<BigInt>,
        /// `(n!)^2`.
        den: BigInt,
    },
    Float { n: u64, beta: Vec<f64> },
}

/// Squares the packed row with one big-integer multiplication; slot `j` of
/// the square is the convolution coefficient `sum_k row[k] row[j-k]`.
fn kronecker_square(row: &[BigInt]) -> Vec<BigInt> {
    let max_bits = row.iter().map(|x| x.bits()).max().unwrap_or(1);
    let slot_bits = 2 * max_bits + 64;
    let slot_bytes = (slot_bits as usize + 7) / 8;
    let mut buf = vec![0u8; slot_bytes * row.len()];
    for (k, a) in row.iter().enumerate() {
        let bytes = a.to_biguint().expect("Eulerian numbers are nonnegative").to_bytes_le();
        buf[k * slot_bytes..k * slot_bytes + bytes.len()].copy_from_slice(&bytes);
    }
    let packed = BigUint::from_bytes_le(&buf);
    let square = &packed * &packed;
    let sq_bytes = square.to_bytes_le();
    let mut out = Vec::with_capacity(2 * row.len() - 1);
    for j in 0..2 * row.len() - 1 {
        let start = j * slot_bytes;
        let end = ((j + 1) * slot_bytes).min(sq_bytes.len());
        let slice = if start < sq_bytes.len() {
            &sq_bytes[start..end]
        } else {
            &[]
        };
        out.push(BigInt::from(BigUint::from_bytes_le(slice)));
    }
    out
}

/// Probability row `P(X_n = k) = A(n,k)/n!` by the per-row normalized
/// recurrence, safe from overflow for large `n`.
fn probability_row(n: u64) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for m in 2..=n {
        let mut next = vec![0.0f64; m as usize];
        let inv = 1.0 / m as f64;
        for k in 0..m as usize {
            let mut v = 0.0;
            if k < row.len() {
                v += row[k] * (k as f64 + 1.0) * inv;
            }
            if k >= 1 && k - 1 < row.len() {
                v += row[k - 1] * (m - k as u64) as f64 * inv;
            }
            next[k] = v;
        }
        row = next;
    }
    row
}

pub fn eulerian_distribution(n: u64, mode: DistributionMode) -> Result<EulerianDistribution> {
    if n < 1 {
        return Err(Error::InvalidInput("distribution needs n >= 1".into()));
    }
    match mode {
        DistributionMode::ExactRational => {
            if n > EXACT_N_LIMIT {
                return Err(Error::UnsupportedN {
                    n,
                    limit: EXACT_N_LIMIT,
                    mode: "exact_rational",
                });
            }
            let row = eulerian_row(n)?;
            let c = kronecker_square(&row);
            let f = factorial(n);
            Ok(EulerianDistribution::Exact { n, c, den: &f * &f })
        }
        DistributionMode::ScaledFloat => {
            if n > FLOAT_N_LIMIT {
                return Err(Error::UnsupportedN {
                    n,
                    limit: FLOAT_N_LIMIT,
                    mode: "scaled_float",
                });
            }
            let row = probability_row(n);
            let len = 2 * row.len() - 1;
            let beta: Vec<f64> = (0..len)
                .map(|j| {
                    let lo = j.saturating_sub(row.len() - 1);
                    let hi = j.min(row.len() - 1);
                    (lo..=hi).map(|k| row[k] * row[j - k]).sum()
                })
                .collect();
            Ok(EulerianDistribution::Float { n, beta })
        }
    }
}

impl EulerianDistribution {
    pub fn n(&self) -> u64 {
        match self {
            EulerianDistribution::Exact { n, .. } | EulerianDistribution::Float { n, .. } => *n,
        }
    }

    pub fn mode(&self) -> DistributionMode {
        match self {
            EulerianDistribution::Exact { .. } => DistributionMode::ExactRational,
            EulerianDistribution::Float { .. } => DistributionMode::ScaledFloat,
        }
    }

    /// `beta_p` as a float (exactly converted in exact mode).
    pub fn beta_f64(&self, p: i64) -> f64 {
        let idx = p + self.n() as i64 - 1;
        if idx < 0 {
            return 0.0;
        }
        let idx = idx as usize;
        match self {
            EulerianDistribution::Exact { c, den, .. } => {
                if idx >= c.len() {
                    0.0
                } else {
                    BigRational::new(c[idx].clone(), den.clone())
                        .to_f64()
                        .unwrap_or(0.0)
                }
            }
            EulerianDistribution::Float { beta, .. } => {
                beta.get(idx).copied().unwrap_or(0.0)
            }
        }
    }

    /// `beta_p` as an exact rational; `None` in float mode.
    pub fn beta_exact(&self, p: i64) -> Option<BigRational> {
        match self {
            EulerianDistribution::Exact { n, c, den } => {
                let idx = p + *n as i64 - 1;
                if idx < 0 || idx as usize >= c.len() {
                    Some(BigRational::zero())
                } else {
                    Some(BigRational::new(c[idx as usize].clone(), den.clone()))
                }
            }
            EulerianDistribution::Float { .. } => None,
        }
    }

    /// All `beta` values as floats, indexed by `p + n - 1`.
    pub fn beta_vec_f64(&self) -> Vec<f64> {
        let n = self.n() as i64;
        (-(n - 1)..=(n - 1)).map(|p| self.beta_f64(p)).collect()
    }

    /// `beta_0 <= sqrt(3)/sqrt(n+4)`, checked exactly in exact mode
    /// (cross-multiplied to integers).
    pub fn beta0_bound_holds(&self) -> bool {
        match self {
            EulerianDistribution::Exact { n, c, den } => {
                let b0 = &c[*n as usize - 1];
                b0 * b0 * BigInt::from(n + 4) <= BigInt::from(3) * den * den
            }
            EulerianDistribution::Float { n, .. } => {
                self.beta_f64(0) <= (3.0 / (*n as f64 + 4.0)).sqrt()
            }
        }
    }

    /// `sum_{p>0} p beta_p > sqrt(n)/(4 sqrt(3)) - 1/2`, exact in exact mode.
    pub fn tail_bound_holds(&self) -> bool {
        match self {
            EulerianDistribution::Exact { n, c, den } => {
                let mut t = BigInt::zero();
                for p in 1..*n as i64 {
                    t += BigInt::from(p) * &c[(p + *n as i64 - 1) as usize];
                }
                // (T/den + 1/2)^2 * 48 > n, with T/den + 1/2 > 0.
                let lhs = BigInt::from(2) * t + den;
                &lhs * &lhs * BigInt::from(48u64) > BigInt::from(*n) * BigInt::from(4) * den * den
            }
            EulerianDistribution::Float { n, .. } => {
                let s: f64 = (1..*n as i64).map(|p| p as f64 * self.beta_f64(p)).sum();
                s > (*n as f64).sqrt() / (4.0 * 3f64.sqrt()) - 0.5
            }
        }
    }

    /// `sum_{p>0} p^2 beta_p <= (n+1)/12`, exact in exact mode.
    pub fn variance_bound_holds(&self) -> bool {
        match self {
            EulerianDistribution::Exact { n, c, den } => {
                let mut t = BigInt::zero();
                for p in 1..*n as i64 {
                    t += BigInt::from(p * p) * &c[(p + *n as i64 - 1) as usize];
                }
                BigInt::from(12) * t <= BigInt::from(n + 1) * den
            }
            EulerianDistribution::Float { n, .. } => {
                let s: f64 = (1..*n as i64)
                    .map(|p| (p * p) as f64 * self.beta_f64(p))
                    .sum();
                s <= (*n as f64 + 1.0) / 12.0
            }
        }
    }

    /// Measured `sum_{p>0} p^2 beta_p` as an exact rational (exact mode only).
    pub fn half_variance_exact(&self) -> Option<BigRational> {
        match self {
            EulerianDistribution::Exact { n, c, den } => {
                let mut t = BigInt::zero();
                for p in 1..*n as i64 {
                    t += BigInt::from(p * p) * &c[(p + *n as i64 - 1) as usize];
                }
                Some(BigRational::new(t, den.clone()))
            }
            EulerianDistribution::Float { .. } => None,
        }
    }
}

/// Which residue classes receive the binomial torus-correction term, and with
/// which sign. The correction only ever applies to the trivial class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TorusCorrection {
    #[default]
    None,
    Add,
    Subtract,
}

/// Eigenspace Hodge numbers of one residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeTable {
    pub n: usize,
    pub class: ResidueClass,
    /// `h[q]`, `q = 0..n-1`.
    pub h: Vec<u64>,
    /// Whether the binomial correction was applied.
    pub corrected: bool,
}

impl HodgeTable {
    pub fn total(&self) -> u64 {
        self.h.iter().sum()
    }
}

/// Hodge numbers of the eigenspace of `class` by the alternating
/// interior-count formula
/// `h(q) = sum_{i=0}^{q} (-1)^i C(n+1, i) L_class((q+1-i) m P)`.
pub fn hodge_numbers(
    p: &LatticePolytope,
    class: &ResidueClass,
    correction: TorusCorrection,
    budget: &Budget,
) -> Result<HodgeTable> {
    let n = p.dim();
    let trivial = class.lambda.iter().all(|&x| x == 0);
    let mut h = Vec::with_capacity(n);
    let mut corrected = false;
    for q in 0..n {
        let mut acc: i64 = 0;
        for i in 0..=q {
            let coeff = i64::try_from(binomial(n as u64 + 1, i as u64))
                .map_err(|_| Error::InvalidInput("dimension too large".into()))?;
            let count = lattice::interior_points_in_class(p, (q + 1 - i) as i64, class, budget)?;
            let count = i64::try_from(count)
                .map_err(|_| Error::InvalidInput("count exceeds the supported range".into()))?;
            if i % 2 == 0 {
                acc += coeff * count;
            } else {
                acc -= coeff * count;
            }
        }
        if trivial && correction != TorusCorrection::None {
            let corr = i64::try_from(binomial(n as u64, (n - q - 1) as u64))
                .map_err(|_| Error::InvalidInput("dimension too large".into()))?;
            match correction {
                TorusCorrection::Add => acc += corr,
                TorusCorrection::Subtract => acc -= corr,
                TorusCorrection::None => {}
            }
            corrected = true;
        }
        if acc < 0 {
            return Err(Error::NegativeHodgeNumber { q, value: acc });
        }
        h.push(acc as u64);
    }
    Ok(HodgeTable {
        n,
        class: class.clone(),
        h,
        corrected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Gl,
    Go,
}

/// Sign of the middle self-pairing term in the orthogonal adjoint formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleSign {
    Plus,
    Minus,
}

/// Adjoint Hodge numbers `h^p_a`, `p = -(n-1)..=(n-1)`, stored at index
/// `p + n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointHodgeVector {
    pub group: Group,
    pub ha: Vec<BigRational>,
    /// Total adjoint mass `sum_p h^p_a` (maximal-torus metadata).
    pub total: BigRational,
}

impl AdjointHodgeVector {
    pub fn n(&self) -> usize {
        (self.ha.len() + 1) / 2
    }

    pub fn at(&self, p: i64) -> BigRational {
        let idx = p + self.n() as i64 - 1;
        if idx < 0 || idx as usize >= self.ha.len() {
            BigRational::zero()
        } else {
            self.ha[idx as usize].clone()
        }
    }
}

/// Adjoint Hodge numbers from the Hodge vector `h = (h^0, ..., h^{n-1})`:
/// `2 h^p_a = sum_{p1+p2 = p+n-1} h^{p1} h^{p2}`, with the signed middle term
/// `± h^{(p+n-1)/2}` added in the orthogonal case.
pub fn adjoint_hodge(h: &[BigRational], group: Group, sign: MiddleSign) -> Result<AdjointHodgeVector> {
    let n = h.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty Hodge vector".into()));
    }
    if h.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidInput("Hodge numbers must be nonnegative".into()));
    }
    let two = BigRational::from_integer(2.into());
    let mut ha = Vec::with_capacity(2 * n - 1);
    for j in 0..2 * n - 1 {
        let lo = j.saturating_sub(n - 1);
        let hi = j.min(n - 1);
        let mut conv = BigRational::zero();
        for k in lo..=hi {
            conv += &h[k] * &h[j - k];
        }
        if group == Group::Go && j % 2 == 0 {
            match sign {
                MiddleSign::Plus => conv += &h[j / 2],
                MiddleSign::Minus => conv -= &h[j / 2],
            }
        }
        ha.push(conv / &two);
    }
    let total = ha.iter().sum();
    Ok(AdjointHodgeVector { group, ha, total })
}

/// Sum of the `k` largest weights drawn from the multiset `{p : h^p_a}`,
/// consuming fractional multiplicities proportionally.
pub fn t_g(ha: &AdjointHodgeVector, k: &BigRational) -> Result<BigRational> {
    if k.is_negative() {
        return Err(Error::InvalidInput("T_G needs k >= 0".into()));
    }
    if k > &ha.total {
        return Err(Error::InsufficientMultiplicity {
            requested: k.to_string(),
            available: ha.total.to_string(),
        });
    }
    let n = ha.n() as i64;
    let mut remaining = k.clone();
    let mut acc = BigRational::zero();
    for p in (-(n - 1)..=(n - 1)).rev() {
        if remaining.is_zero() {
            break;
        }
        let avail = ha.at(p);
        let take = if &avail < &remaining { avail.clone() } else { remaining.clone() };
        acc += BigRational::from_integer(p.into()) * &take;
        remaining -= take;
    }
    Ok(acc)
}

/// Float counterpart of [`t_g`], with `k` clamped to the available mass.
fn t_g_f64(ha: &[f64], n: u64, k: f64) -> f64 {
    let mut remaining = k.max(0.0);
    let mut acc = 0.0;
    for p in (-(n as i64 - 1)..=(n as i64 - 1)).rev() {
        if remaining <= 0.0 {
            break;
        }
        let avail = ha[(p + n as i64 - 1) as usize];
        let take = avail.min(remaining);
        acc += p as f64 * take;
        remaining -= take;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionMode {
    Full,
    Simplified,
}

/// One inequality of a condition check, with both sides as displayed floats.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub strict: bool,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub mode: ConditionMode,
    pub holds: bool,
    pub inequalities: Vec<Inequality>,
}

/// The ideal adjoint masses `h^p_a = beta_p / 2` (total mass 1), as floats
/// indexed by `p + n - 1`.
pub fn ideal_adjoint(dist: &EulerianDistribution) -> Vec<f64> {
    dist.beta_vec_f64().iter().map(|b| b / 2.0).collect()
}

/// Checks the numerical non-density conditions on adjoint masses `ha`
/// (indexed by `p + n - 1`). Everything is scale-invariant, so callers may
/// pass masses at any normalization as long as `dim_x` uses the same scale.
pub fn check_conditions(ha: &[f64], n: u64, dim_x: f64, mode: ConditionMode) -> ConditionReport {
    let h0 = ha[(n - 1) as usize];
    let weighted_tail: f64 = (1..n as i64)
        .map(|p| p as f64 * ha[(p + n as i64 - 1) as usize])
        .sum();
    let mut inequalities = Vec::new();
    match mode {
        ConditionMode::Simplified => {
            let rhs = 2.0 * t_g_f64(ha, n, 2.0 * h0);
            inequalities.push(Inequality {
                name: "sum_{q>0} q h_a^q > 2 T_G(2 h_a^0)",
                lhs: weighted_tail,
                rhs,
                strict: true,
                holds: weighted_tail > rhs,
            });
        }
        ConditionMode::Full => {
            let tail_mass: f64 = (1..n as i64)
                .map(|p| ha[(p + n as i64 - 1) as usize])
                .sum();
            let rhs1 = dim_x + h0;
            inequalities.push(Inequality {
                name: "sum_{q>0} h_a^q >= dim X + h_a^0",
                lhs: tail_mass,
                rhs: rhs1,
                strict: false,
                holds: tail_mass >= rhs1,
            });
            let rhs2 =
                t_g_f64(ha, n, dim_x + h0) + t_g_f64(ha, n, dim_x + 1.5 * h0);
            inequalities.push(Inequality {
                name: "sum_{q>0} q h_a^q > T_G(dim X + h_a^0) + T_G(dim X + 3/2 h_a^0)",
                lhs: weighted_tail,
                rhs: rhs2,
                strict: true,
                holds: weighted_tail > rhs2,
            });
        }
    }
    let holds = inequalities.iter().all(|i| i.holds);
    ConditionReport {
        mode,
        holds,
        inequalities,
    }
}

/// Analytic sufficient check of the simplified condition for the orthogonal
/// case, valid without building the distribution: with
/// `eps = 1/(44 sqrt(13))`, requires
/// `sqrt(n)/11 >= 2 (eps sqrt(13) sqrt(n) + (n+1)/(12 eps n))`
/// on top of the `n >= 40000` hypothesis of the tail/peak bounds.
pub fn so_analytic_check(n: u64) -> ConditionReport {
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let eps = 1.0 / (44.0 * 13f64.sqrt());
    let lhs = sqrt_n / 11.0;
    let rhs = 2.0 * (eps * 13f64.sqrt() * sqrt_n + (nf + 1.0) / (12.0 * eps * nf));
    let hypothesis = Inequality {
        name: "n >= 40000 (tail/peak bound hypothesis)",
        lhs: nf,
        rhs: 40000.0,
        strict: false,
        holds: n >= 40000,
    };
    let main = Inequality {
        name: "sqrt(n)/11 >= 2 (eps sqrt(13) sqrt(n) + (n+1)/(12 eps n))",
        lhs,
        rhs,
        strict: false,
        holds: lhs >= rhs,
    };
    let holds = hypothesis.holds && main.holds;
    ConditionReport {
        mode: ConditionMode::Simplified,
        holds,
        inequalities: vec![hypothesis, main],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian_number(3, 1).unwrap(), BigInt::from(4));
        assert_eq!(eulerian_number(4, 1).unwrap(), BigInt::from(11));
        for n in 1..=8 {
            assert_eq!(eulerian_number(n, 0).unwrap(), BigInt::one());
            for k in 0..n {
                assert_eq!(
                    eulerian_number(n, k).unwrap(),
                    eulerian_number_closed_form(n, k).unwrap(),
                    "A({n},{k})"
                );
            }
            let row_sum: BigInt = eulerian_row(n).unwrap().iter().sum();
            assert_eq!(row_sum, factorial(n));
        }
    }

    #[test]
    fn exact_distribution_small() {
        let d = eulerian_distribution(2, DistributionMode::ExactRational).unwrap();
        assert_eq!(d.beta_exact(-1).unwrap(), rat(1, 4));
        assert_eq!(d.beta_exact(0).unwrap(), rat(1, 2));
        assert_eq!(d.beta_exact(1).unwrap(), rat(1, 4));
    }

    #[test]
    fn exact_distribution_properties() {
        for n in [3u64, 5, 10, 40] {
            let d = eulerian_distribution(n, DistributionMode::ExactRational).unwrap();
            let mut sum = BigRational::zero();
            for p in -(n as i64 - 1)..=(n as i64 - 1) {
                let b = d.beta_exact(p).unwrap();
                assert!(!b.is_negative());
                assert_eq!(b, d.beta_exact(-p).unwrap());
                sum += b;
            }
            assert_eq!(sum, BigRational::one());
            assert!(d.beta0_bound_holds(), "beta0 bound at n={n}");
            assert!(d.tail_bound_holds(), "tail bound at n={n}");
            assert!(d.variance_bound_holds(), "variance bound at n={n}");
        }
    }

    #[test]
    fn float_matches_exact() {
        let e = eulerian_distribution(30, DistributionMode::ExactRational).unwrap();
        let f = eulerian_distribution(30, DistributionMode::ScaledFloat).unwrap();
        for p in -29..=29 {
            assert!((e.beta_f64(p) - f.beta_f64(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn mode_limits() {
        assert!(matches!(
            eulerian_distribution(2001, DistributionMode::ExactRational),
            Err(Error::UnsupportedN { .. })
        ));
        assert!(matches!(
            eulerian_distribution(50001, DistributionMode::ScaledFloat),
            Err(Error::UnsupportedN { .. })
        ));
    }

    #[test]
    fn hodge_unit_square() {
        let p = LatticePolytope::prism(&[1, 1]).unwrap();
        let b = Budget::default();
        let c11 = ResidueClass::new(2, vec![1, 1]).unwrap();
        let t = hodge_numbers(&p, &c11, TorusCorrection::None, &b).unwrap();
        assert_eq!(t.h, vec![1, 1]);
        let c01 = ResidueClass::new(2, vec![0, 1]).unwrap();
        let t = hodge_numbers(&p, &c01, TorusCorrection::None, &b).unwrap();
        assert_eq!(t.h, vec![0, 2]);
        let c10 = ResidueClass::new(2, vec![1, 0]).unwrap();
        let t = hodge_numbers(&p, &c10, TorusCorrection::None, &b).unwrap();
        assert_eq!(t.total(), 2);
    }

    #[test]
    fn adjoint_examples() {
        let h = vec![rat(1, 1), rat(2, 1), rat(1, 1)];
        let a = adjoint_hodge(&h, Group::Gl, MiddleSign::Plus).unwrap();
        assert_eq!(
            a.ha,
            vec![rat(1, 2), rat(2, 1), rat(3, 1), rat(2, 1), rat(1, 2)]
        );
        let single = adjoint_hodge(&[rat(1, 1)], Group::Gl, MiddleSign::Plus).unwrap();
        assert_eq!(single.ha, vec![rat(1, 2)]);
        // Orthogonal: the middle term shifts the even slots.
        let go = adjoint_hodge(&h, Group::Go, MiddleSign::Minus).unwrap();
        assert_eq!(go.at(0), rat(2, 1));
        assert_eq!(go.at(2), rat(0, 1));
        assert_eq!(go.at(1), rat(2, 1));
    }

    #[test]
    fn t_g_greedy() {
        let ha = AdjointHodgeVector {
            group: Group::Gl,
            ha: vec![rat(2, 1), rat(3, 1), rat(2, 1)],
            total: rat(7, 1),
        };
        assert_eq!(t_g(&ha, &rat(3, 1)).unwrap(), rat(2, 1));
        assert_eq!(t_g(&ha, &rat(0, 1)).unwrap(), rat(0, 1));
        // Fractional consumption.
        assert_eq!(t_g(&ha, &rat(5, 2)).unwrap(), rat(2, 1));
        assert!(matches!(
            t_g(&ha, &rat(8, 1)),
            Err(Error::InsufficientMultiplicity { .. })
        ));
        // Monotone in k while the greedy selection still draws weights >= 0
        // (beyond that, negative weights make further draws decrease the sum).
        let mut prev = rat(-100, 1);
        for k in 0..=5 {
            let v = t_g(&ha, &rat(k, 1)).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(t_g(&ha, &rat(7, 1)).unwrap() < t_g(&ha, &rat(5, 1)).unwrap());
    }

    #[test]
    fn simplified_condition_small_n_fails() {
        let d = eulerian_distribution(100, DistributionMode::ScaledFloat).unwrap();
        let ha = ideal_adjoint(&d);
        let r = check_conditions(&ha, 100, 0.0, ConditionMode::Simplified);
        assert!(!r.holds);
    }

    #[test]
    fn so_analytic_values() {
        let r = so_analytic_check(500000);
        assert!(r.holds);
        assert!(!so_analytic_check(100000).holds);
        assert!(!so_analytic_check(30000).holds);
    }
}
