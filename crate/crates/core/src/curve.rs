//! Frobenius weight multiplicities for nondegenerate curves in the 2-torus.
//!
//! Two independent computations of the same weight vector: one from the slope
//! sequences of the Newton polygon, one from the boundary stratification at
//! infinity. They must agree; disagreement is a convention bug and is a hard
//! error, never a warning.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polygon::{self, MonomialSupport};
use crate::polytope::LatticePolytope;

/// Multiplicities of the weights `0..=2(n-1)` of the fiber functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    /// Ambient torus dimension.
    pub n: usize,
    /// `mult[w]` is the multiplicity of weight `w`.
    pub mult: Vec<u64>,
}

impl WeightVector {
    pub fn from_signed(n: usize, mult: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(mult.len());
        for (w, &m) in mult.iter().enumerate() {
            if m < 0 {
                return Err(Error::NegativeMultiplicity { weight: w, value: m });
            }
            out.push(m as u64);
        }
        Ok(WeightVector { n, mult: out })
    }

    pub fn total(&self) -> u64 {
        self.mult.iter().sum()
    }
}

fn plotted_hull(f: &MonomialSupport) -> Result<LatticePolytope> {
    let points: Vec<Vec<i64>> = f
        .plotted_points()?
        .into_iter()
        .map(|(h, v)| vec![h, v])
        .collect();
    LatticePolytope::convex_hull(&points)
}

/// Weight multiplicities from the slope sequences at 0 and infinity.
pub fn weights_by_slopes(f: &MonomialSupport) -> Result<WeightVector> {
    let sd = polygon::slope_data(f)?;
    let hull = plotted_hull(f)?;
    let nvol = i64::try_from(hull.normalized_volume())
        .map_err(|_| Error::InvalidInput("polygon volume exceeds the supported range".into()))?;
    let w0 = sd.n0 + sd.s0_total() - 1;
    let w2 = sd.ninf + sd.sinf_total() - 1;
    let w1 = nvol - w0 - w2;
    WeightVector::from_signed(2, &[w0, w1, w2])
}

/// Weight multiplicities from the stratification of the boundary at infinity.
pub fn weights_by_strata(f: &MonomialSupport) -> Result<WeightVector> {
    let counts = polygon::stratum_counts(f)?;
    let hull = plotted_hull(f)?;
    let fv = hull.face_volumes()?;
    let u1 = i64::try_from(fv.u[1].to_integer())
        .map_err(|_| Error::InvalidInput("boundary length exceeds the supported range".into()))?;
    let nvol = i64::try_from(hull.normalized_volume())
        .map_err(|_| Error::InvalidInput("polygon volume exceeds the supported range".into()))?;
    let total = counts.total();
    let w2 = total - 1;
    let w0 = u1 - total - 1;
    let w1 = nvol - w0 - w2;
    WeightVector::from_signed(2, &[w0, w1, w2])
}

/// Weight multiplicities computed by both methods and cross-checked.
pub fn weights(f: &MonomialSupport) -> Result<WeightVector> {
    let by_slopes = weights_by_slopes(f)?;
    let by_strata = weights_by_strata(f)?;
    if by_slopes != by_strata {
        return Err(Error::MethodDisagreement {
            slopes: by_slopes.mult.iter().map(|&m| m as i64).collect(),
            strata: by_strata.mult.iter().map(|&m| m as i64).collect(),
        });
    }
    Ok(by_slopes)
}

/// Dimension of the fiber functor: the normalized volume of the polytope.
pub fn fiber_dimension(p: &LatticePolytope) -> BigInt {
    p.normalized_volume()
}
