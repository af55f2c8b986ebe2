//! Signed weight vectors of compactly supported cohomology for nondegenerate
//! hypersurfaces in the 2- and 3-torus, via the substituted exponential-sum
//! e-polynomials.
//!
//! Only the substituted dimension-2/3 instances are implemented; the general
//! polyhedral-cone recursion behind them is out of scope.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polytope::FaceVolumes;

/// Integer (possibly negative) multiplicities of weights `0..=2(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWeightVector {
    pub n: usize,
    /// `mult[w]` is the signed multiplicity of weight `w`.
    pub mult: Vec<i64>,
}

impl SignedWeightVector {
    pub fn zero(n: usize) -> Self {
        SignedWeightVector {
            n,
            mult: vec![0; 2 * n - 1],
        }
    }

    pub fn total(&self) -> i64 {
        self.mult.iter().sum()
    }

    pub fn add_assign(&mut self, other: &SignedWeightVector) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.mult.iter_mut().zip(&other.mult) {
            *a += b;
        }
    }

    pub fn scale(&self, k: i64) -> SignedWeightVector {
        SignedWeightVector {
            n: self.n,
            mult: self.mult.iter().map(|m| m * k).collect(),
        }
    }
}

fn to_i64(x: &BigRational, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::InvalidFaceData(format!(
            "{what} evaluates to the non-integer {x}"
        )));
    }
    i64::try_from(x.to_integer())
        .map_err(|_| Error::InvalidFaceData(format!("{what} exceeds the supported range")))
}

/// Signed weights `(f_0, f_1, f_2)` of a nondegenerate curve in the 2-torus:
/// `f_0 = U_1 - 1`, `f_1 = 2U_2 - U_1 + 2`, `f_2 = -1`. By Pick's theorem
/// `f_1` is twice the interior point count and `f_0` is the boundary count
/// minus one.
pub fn curve_signed_weights(u2: &BigRational, u1: i64) -> Result<SignedWeightVector> {
    if !u2.is_positive() || u1 < 3 {
        return Err(Error::InvalidInput(
            "curve signed weights need U2 > 0 and U1 >= 3".into(),
        ));
    }
    let two_u2 = to_i64(&(u2 * BigRational::from_integer(2.into())), "2*U2")?;
    let f1 = two_u2 - u1 + 2;
    if f1 < 0 {
        return Err(Error::InvalidFaceData(format!(
            "f_1 = {f1} < 0 contradicts Pick's theorem; the face data is inconsistent"
        )));
    }
    Ok(SignedWeightVector {
        n: 2,
        mult: vec![u1 - 1, f1, -1],
    })
}

/// The substituted e-vector `(e_4, e_3, e_2, e_1, e_0)` for the cone over a
/// 3-polytope, as exact integers. `e_1 = 0` and `e_0 = 1` identically.
pub fn e_vector_gm4(fv: &FaceVolumes) -> Result<[i64; 5]> {
    if fv.u.len() != 4 {
        return Err(Error::InvalidFaceData(
            "e-vector needs face volumes of a 3-polytope".into(),
        ));
    }
    let r = |k: i64| BigRational::from_integer(k.into());
    let u0 = &fv.u[0];
    let u1 = &fv.u[1];
    let u2 = &fv.u[2];
    let u3 = &fv.u[3];
    let e = fv.e as i64;
    let f = fv.f as i64;
    let w1 = fv.w1 as i64;
    let e4 = to_i64(
        &(r(6) * u3 - r(2) * u2 + u1 + r(2) * u0 + r(f - w1 - 3)),
        "e_4",
    )?;
    let e3 = to_i64(
        &(r(2) * u2 - r(2) * u1 - r(3) * u0 + r(-e - f + 2 * w1 + 6)),
        "e_3",
    )?;
    let e2 = to_i64(&(u1 + u0 + r(e - w1 - 4)), "e_2")?;
    Ok([e4, e3, e2, 0, 1])
}

/// Signed weights `(f_0, ..., f_4)` of the codimension-0 stratum of a
/// nondegenerate surface in the 3-torus.
///
/// Negative entries are legal here: only assembled totals over all strata are
/// required to be genuine weight vectors.
pub fn surface_signed_weights_dl(fv: &FaceVolumes) -> Result<SignedWeightVector> {
    let [e4, e3, e2, _, _] = e_vector_gm4(fv)?;
    // The torus factor contributes weights (1, 0, 3, 0, 3, 0, 1) across
    // degrees 3..=6; folding it against the e-vector and shifting the weights
    // down leaves f_4 = 1, f_3 = 0 and moves the e-data into f_2, f_1, f_0.
    Ok(SignedWeightVector {
        n: 3,
        mult: vec![e2 + 3, e3, e4 - 3, 0, 1],
    })
}
