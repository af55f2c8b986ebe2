//! Total fiber-functor weights for nondegenerate surfaces in the 3-torus.
//!
//! The total weight vector is assembled stratum by stratum over the toric
//! compactification: the dense codimension-0 block, one block per coordinate
//! sent to infinity, one per coordinate pair, and the all-infinity corner.
//! Strata where a coordinate equals 0 contribute nothing. Closed forms for
//! the rectangular-prism and pyramid families, plus the truncated-prism
//! top-weight rule in arbitrary dimension, serve as independent oracles.

use num_integer::Integer;

use crate::curve::WeightVector;
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::signed::{surface_signed_weights_dl, SignedWeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumKind {
    /// Dense torus stratum.
    Codim0,
    /// A 2-face at infinity carrying a curve: the curve's signed weights are
    /// added to their own negative with all weights shifted up by 2.
    FacetCurve,
    /// Finitely many points on a stratum, one per lattice step of the
    /// maximal-exponent edge (zero points when the maximum is attained at a
    /// single vertex).
    EdgePoints,
    /// A full multiplicative-group line on a stratum.
    FullGmLine,
    /// A stratum with some coordinate equal to 0; contributes nothing.
    ZeroCoordinate,
}

/// One stratum of the compactification and its signed weight contribution.
#[derive(Debug, Clone)]
pub struct StratumContribution {
    /// Coordinates sent to infinity on this stratum.
    pub at_infinity: Vec<usize>,
    /// Coordinates set to zero on this stratum.
    pub at_zero: Vec<usize>,
    pub kind: StratumKind,
    pub signed_weights: SignedWeightVector,
}

/// `(-c) + (c shifted up by 2)` for a curve signed-weight vector `c`.
fn lift_curve_block(c: &SignedWeightVector) -> SignedWeightVector {
    let mut mult = vec![0i64; 5];
    for (w, &m) in c.mult.iter().enumerate() {
        mult[w] -= m;
        mult[w + 2] += m;
    }
    SignedWeightVector { n: 3, mult }
}

/// Signed weights of one full multiplicative-group line on a stratum at
/// infinity.
fn gm_line_block() -> SignedWeightVector {
    SignedWeightVector {
        n: 3,
        mult: vec![-1, 0, 2, 0, -1],
    }
}

/// Signed weights of one isolated point on a codimension-2 stratum.
fn point_block() -> SignedWeightVector {
    SignedWeightVector {
        n: 3,
        mult: vec![1, 0, -2, 0, 1],
    }
}

/// Vertices of `p` attaining the coordinate maximum in every coordinate of
/// `coords` simultaneously.
fn joint_max_vertices(p: &LatticePolytope, coords: &[usize]) -> Vec<usize> {
    let maxima: Vec<i64> = coords
        .iter()
        .map(|&i| p.vertices().iter().map(|v| v[i]).max().unwrap())
        .collect();
    (0..p.vertices().len())
        .filter(|&vi| {
            coords
                .iter()
                .zip(&maxima)
                .all(|(&i, &m)| p.vertices()[vi][i] == m)
        })
        .collect()
}

fn vertex_set_rank(p: &LatticePolytope, vs: &[usize]) -> usize {
    if vs.len() <= 1 {
        return 0;
    }
    let base = &p.vertices()[vs[0]];
    let mut max_rank = 0;
    // The vertex sets here have rank at most 2, so pairwise checks suffice.
    let dirs: Vec<Vec<i64>> = vs[1..]
        .iter()
        .map(|&v| {
            p.vertices()[v]
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    for i in 0..dirs.len() {
        max_rank = max_rank.max(1);
        for j in i + 1..dirs.len() {
            let independent = (0..base.len()).any(|x| {
                (0..base.len()).any(|y| {
                    x != y
                        && (dirs[i][x] as i128) * (dirs[j][y] as i128)
                            != (dirs[i][y] as i128) * (dirs[j][x] as i128)
                })
            });
            if independent {
                return 2;
            }
        }
    }
    max_rank
}

/// Signed contribution of the stratum where exactly the coordinates in `infs`
/// go to infinity.
fn infinity_stratum(
    p: &LatticePolytope,
    infs: &[usize],
) -> Result<(StratumKind, SignedWeightVector)> {
    let vs = joint_max_vertices(p, infs);
    match infs.len() {
        1 => {
            match vertex_set_rank(p, &vs) {
                2 => {
                    // The face at infinity is a 2-face carrying a curve.
                    let drop = infs[0];
                    let projected: Vec<Vec<i64>> = vs
                        .iter()
                        .map(|&v| {
                            p.vertices()[v]
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != drop)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let facet = LatticePolytope::convex_hull(&projected)?;
                    let fv = facet.face_volumes()?;
                    let u1 = i64::try_from(fv.u[1].to_integer()).map_err(|_| {
                        Error::InvalidFaceData("facet boundary length overflow".into())
                    })?;
                    let curve = crate::signed::curve_signed_weights(&fv.u[2], u1)?;
                    Ok((StratumKind::FacetCurve, lift_curve_block(&curve)))
                }
                1 => {
                    let len = edge_width(p, &vs);
                    Ok((StratumKind::FullGmLine, gm_line_block().scale(len)))
                }
                _ => Ok((StratumKind::EdgePoints, SignedWeightVector::zero(3))),
            }
        }
        2 => {
            if vs.is_empty() {
                // No monomial attains both maxima: the stratum carries one
                // full line.
                return Ok((StratumKind::FullGmLine, gm_line_block()));
            }
            match vertex_set_rank(p, &vs) {
                0 => Ok((StratumKind::EdgePoints, SignedWeightVector::zero(3))),
                1 => {
                    let len = edge_width(p, &vs);
                    Ok((StratumKind::EdgePoints, point_block().scale(len)))
                }
                _ => Err(Error::UnsupportedCornerConfiguration(format!(
                    "the face attaining the joint maxima in coordinates {infs:?} is 2-dimensional"
                ))),
            }
        }
        3 => {
            if vs.len() == 1 {
                Ok((StratumKind::EdgePoints, SignedWeightVector::zero(3)))
            } else {
                Err(Error::UnsupportedCornerConfiguration(
                    "no single vertex attains all three coordinate maxima".into(),
                ))
            }
        }
        _ => unreachable!("3-dimensional polytope"),
    }
}

/// Lattice length of the segment spanned by a rank-1 vertex set.
fn edge_width(p: &LatticePolytope, vs: &[usize]) -> i64 {
    let n = p.dim();
    let mut lo = p.vertices()[vs[0]].clone();
    let mut hi = lo.clone();
    for &v in vs {
        for i in 0..n {
            lo[i] = lo[i].min(p.vertices()[v][i]);
            hi[i] = hi[i].max(p.vertices()[v][i]);
        }
    }
    let mut g = 0i64;
    for i in 0..n {
        g = g.gcd(&(hi[i] - lo[i]));
    }
    g
}

/// Per-stratum signed weight contributions of the compactified surface.
pub fn assemble_surface_strata(p: &LatticePolytope) -> Result<Vec<StratumContribution>> {
    if p.dim() != 3 {
        return Err(Error::UnsupportedDimension(p.dim()));
    }
    let mut out = Vec::new();
    out.push(StratumContribution {
        at_infinity: vec![],
        at_zero: vec![],
        kind: StratumKind::Codim0,
        signed_weights: surface_signed_weights_dl(&p.face_volumes()?)?,
    });
    let subsets: [&[usize]; 7] = [
        &[0],
        &[1],
        &[2],
        &[0, 1],
        &[0, 2],
        &[1, 2],
        &[0, 1, 2],
    ];
    for infs in subsets {
        let (kind, signed_weights) = infinity_stratum(p, infs)?;
        out.push(StratumContribution {
            at_infinity: infs.to_vec(),
            at_zero: vec![],
            kind,
            signed_weights,
        });
    }
    for i in 0..3 {
        out.push(StratumContribution {
            at_infinity: vec![],
            at_zero: vec![i],
            kind: StratumKind::ZeroCoordinate,
            signed_weights: SignedWeightVector::zero(3),
        });
    }
    Ok(out)
}

/// Total weight multiplicities of a nondegenerate surface with Newton
/// polytope `p` and generic coefficients, by stratification assembly.
///
/// The result must be a genuine weight vector whose total is the normalized
/// volume of `p`; anything else is an error, never silently returned.
pub fn assemble_surface_weights(p: &LatticePolytope) -> Result<WeightVector> {
    let strata = assemble_surface_strata(p)?;
    let mut total = SignedWeightVector::zero(3);
    for s in &strata {
        total.add_assign(&s.signed_weights);
    }
    for (w, &m) in total.mult.iter().enumerate() {
        if m < 0 {
            return Err(Error::NegativeAssembledWeight { weight: w, value: m });
        }
    }
    let sum = num_bigint::BigInt::from(total.total());
    if sum != p.normalized_volume() {
        return Err(Error::InvalidFaceData(format!(
            "assembled total {} differs from the normalized volume {}",
            sum,
            p.normalized_volume()
        )));
    }
    WeightVector::from_signed(3, &total.mult)
}

/// Closed-form total weights of the surface on a rectangular `a x b x c`
/// prism with generic coefficients.
pub fn prism_weights(a: i64, b: i64, c: i64) -> Result<WeightVector> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::InvalidInput("prism sides must be positive".into()));
    }
    let pair = a * b + b * c + c * a;
    let lin = a + b + c;
    let f0 = lin - 2;
    let f1 = 2 * pair - 4 * lin + 6;
    let f2 = 6 * a * b * c - 4 * pair + 6 * lin - 8;
    WeightVector::from_signed(3, &[f0, f1, f2, f1, f0])
}

/// Closed-form total weights of the pyramid family: base rectangle `a x b`,
/// apex at lattice distance `c` over an interior point with primitive slant
/// edges.
pub fn pyramid_weights(a: i64, b: i64, c: i64) -> Result<WeightVector> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::InvalidInput(
            "pyramid parameters must be positive".into(),
        ));
    }
    let f3 = 2 * a * b - 2 * a - 2 * b + 2;
    let f2 = 2 * a * b * c - 2 * a * b + 2 * a + 2 * b - 3;
    WeightVector::from_signed(3, &[1, 0, f2, f3, 0])
}

/// Top weight multiplicity `f_{2n-2}` of a truncated prism with sides `b`,
/// independent of the cut legs.
pub fn truncated_prism_top_weight(b: &[i64]) -> Result<i64> {
    let n = b.len();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if b.iter().any(|&x| x < 1) {
        return Err(Error::InvalidInput("sides must be positive".into()));
    }
    Ok(b.iter().sum::<i64>() - n as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_closed_form_values() {
        let w = prism_weights(2, 2, 2).unwrap();
        assert_eq!(w.mult, vec![4, 6, 28, 6, 4]);
        assert_eq!(w.total(), 48);
        let w = prism_weights(1, 1, 1).unwrap();
        assert_eq!(w.mult, vec![1, 0, 4, 0, 1]);
        assert_eq!(w.total(), 6);
    }

    #[test]
    fn pyramid_closed_form_values() {
        let w = pyramid_weights(2, 2, 3).unwrap();
        assert_eq!(w.mult[3], 2);
        assert_eq!(w.mult[2], 21);
        assert_eq!(w.total(), 24);
        for (a, b, c) in [(2i64, 3, 4), (5, 2, 7)] {
            assert_eq!(pyramid_weights(a, b, c).unwrap().total() as i64, 2 * a * b * c);
        }
        assert_eq!(pyramid_weights(1, 1, 4).unwrap().mult[3], 0);
    }

    #[test]
    fn engine_matches_prism_closed_form() {
        for a in 1..=3i64 {
            for b in 1..=3i64 {
                for c in 1..=3i64 {
                    let p = LatticePolytope::prism(&[a, b, c]).unwrap();
                    assert_eq!(
                        assemble_surface_weights(&p).unwrap(),
                        prism_weights(a, b, c).unwrap(),
                        "prism {a}x{b}x{c}"
                    );
                }
            }
        }
    }

    #[test]
    fn engine_matches_pyramid_closed_form() {
        for (a, b, c) in [(2i64, 2, 3), (2, 3, 3), (3, 3, 5), (4, 2, 5)] {
            let p = LatticePolytope::pyramid(a, b, c).unwrap();
            assert_eq!(
                assemble_surface_weights(&p).unwrap(),
                pyramid_weights(a, b, c).unwrap(),
                "pyramid {a},{b},{c}"
            );
        }
    }

    #[test]
    fn engine_handles_truncated_prisms() {
        let p = LatticePolytope::truncated_prism(&[2, 3, 4], &[1, 1, 1]).unwrap();
        let w = assemble_surface_weights(&p).unwrap();
        assert_eq!(w.mult[4] as i64, truncated_prism_top_weight(&[2, 3, 4]).unwrap());
        assert_eq!(num_bigint::BigInt::from(w.total()), p.normalized_volume());
    }

    #[test]
    fn top_weight_rule() {
        assert_eq!(truncated_prism_top_weight(&[2, 3]).unwrap(), 4);
        assert_eq!(truncated_prism_top_weight(&[1, 1, 1, 1, 1]).unwrap(), 1);
        for (a, b, c) in [(2i64, 3, 4), (4, 4, 4), (5, 2, 2)] {
            assert_eq!(
                truncated_prism_top_weight(&[a, b, c]).unwrap(),
                a + b + c - 2
            );
        }
    }

    #[test]
    fn bad_corner_is_rejected() {
        let simplex = LatticePolytope::convex_hull(&[
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        assert!(matches!(
            assemble_surface_weights(&simplex),
            Err(Error::UnsupportedCornerConfiguration(_))
        ));
    }

    #[test]
    fn zero_strata_contribute_nothing() {
        let p = LatticePolytope::prism(&[2, 3, 4]).unwrap();
        for s in assemble_surface_strata(&p).unwrap() {
            if !s.at_zero.is_empty() {
                assert_eq!(s.signed_weights, SignedWeightVector::zero(3));
            }
        }
    }
}
