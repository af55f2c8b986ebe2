//! Brute-force lattice-point counting over polytope dilates.
//!
//! Counting walks the bounding box and tests facet inequalities with integer
//! arithmetic, slicing the first coordinate across threads. A [`Budget`]
//! bounds the number of candidate cells so oversized requests fail fast
//! instead of spinning.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::Budget;

/// A componentwise congruence class modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub m: i64,
    pub lambda: Vec<i64>,
}

impl ResidueClass {
    pub fn new(m: i64, lambda: Vec<i64>) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput("modulus must be at least 1".into()));
        }
        let lambda = lambda.into_iter().map(|x| x.rem_euclid(m)).collect();
        Ok(ResidueClass { m, lambda })
    }

    /// The trivial class: every point counts.
    pub fn trivial(n: usize) -> Self {
        ResidueClass {
            m: 1,
            lambda: vec![0; n],
        }
    }
}

#[derive(Clone, Copy)]
enum Region {
    /// Strictly inside the dilate.
    Interior,
    /// On the boundary of the dilate.
    Boundary,
}

fn matches_region(p: &LatticePolytope, t: i64, x: &[i64], region: Region) -> bool {
    let mut on_some_facet = false;
    for facet in p.facets() {
        let dot: i128 = facet
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| a * (*b as i128))
            .sum();
        let bound = facet.offset * t as i128;
        match region {
            Region::Interior => {
                if dot >= bound {
                    return false;
                }
            }
            Region::Boundary => {
                if dot > bound {
                    return false;
                }
                if dot == bound {
                    on_some_facet = true;
                }
            }
        }
    }
    match region {
        Region::Interior => true,
        Region::Boundary => on_some_facet,
    }
}

/// Values in `[lo, hi]` congruent to `r` mod `m`.
fn residue_range(lo: i64, hi: i64, r: i64, m: i64) -> impl Iterator<Item = i64> {
    let start = lo + (r - lo).rem_euclid(m);
    (0..)
        .map(move |i| start + i * m)
        .take_while(move |&v| v <= hi)
}

fn count(
    p: &LatticePolytope,
    t: i64,
    class: &ResidueClass,
    region: Region,
    budget: &Budget,
) -> Result<u64> {
    let n = p.dim();
    if class.lambda.len() != n {
        return Err(Error::InvalidInput(
            "residue class dimension does not match the polytope".into(),
        ));
    }
    let (lo, hi) = p.bounding_box();
    let lo: Vec<i64> = lo.iter().map(|&v| v * t).collect();
    let hi: Vec<i64> = hi.iter().map(|&v| v * t).collect();
    let mut estimate: u128 = 1;
    for i in 0..n {
        let width = (hi[i] - lo[i]) as u128;
        estimate = estimate.saturating_mul(width / class.m as u128 + 1);
    }
    budget.check(estimate)?;

    let first: Vec<i64> = residue_range(lo[0], hi[0], class.lambda[0], class.m).collect();
    let total = first
        .par_iter()
        .map(|&x0| {
            let mut x = vec![0i64; n];
            x[0] = x0;
            count_tail(p, t, class, region, &lo, &hi, &mut x, 1)
        })
        .sum();
    Ok(total)
}

fn count_tail(
    p: &LatticePolytope,
    t: i64,
    class: &ResidueClass,
    region: Region,
    lo: &[i64],
    hi: &[i64],
    x: &mut Vec<i64>,
    coord: usize,
) -> u64 {
    if coord == x.len() {
        return matches_region(p, t, x, region) as u64;
    }
    let mut acc = 0;
    for v in residue_range(lo[coord], hi[coord], class.lambda[coord], class.m) {
        x[coord] = v;
        acc += count_tail(p, t, class, region, lo, hi, x, coord + 1);
    }
    acc
}

/// Lattice points strictly inside the dilate `kP`.
pub fn interior_points(p: &LatticePolytope, k: i64, budget: &Budget) -> Result<u64> {
    if k < 1 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    count(
        p,
        k,
        &ResidueClass::trivial(p.dim()),
        Region::Interior,
        budget,
    )
}

/// Lattice points on the boundary of `P`.
pub fn boundary_points(p: &LatticePolytope, budget: &Budget) -> Result<u64> {
    count(
        p,
        1,
        &ResidueClass::trivial(p.dim()),
        Region::Boundary,
        budget,
    )
}

/// Lattice points strictly inside `k·m·P` congruent to `lambda` mod `m`.
pub fn interior_points_in_class(
    p: &LatticePolytope,
    k: i64,
    class: &ResidueClass,
    budget: &Budget,
) -> Result<u64> {
    if k < 1 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    count(p, k * class.m, class, Region::Interior, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> LatticePolytope {
        LatticePolytope::prism(&[1, 1]).unwrap()
    }

    #[test]
    fn interior_counts() {
        let b = Budget::default();
        assert_eq!(interior_points(&unit_square(), 2, &b).unwrap(), 1);

        let t1 = LatticePolytope::convex_hull(&[vec![2, 0], vec![0, 1], vec![4, 3]]).unwrap();
        assert_eq!(interior_points(&t1, 1, &b).unwrap(), 3);

        let t2 = LatticePolytope::convex_hull(&[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(interior_points(&t2, 1, &b).unwrap(), 0);
    }

    #[test]
    fn boundary_counts() {
        let b = Budget::default();
        assert_eq!(boundary_points(&unit_square(), &b).unwrap(), 4);

        let t1 = LatticePolytope::convex_hull(&[vec![2, 0], vec![0, 1], vec![4, 3]]).unwrap();
        assert_eq!(boundary_points(&t1, &b).unwrap(), 4);

        let t2 = LatticePolytope::convex_hull(&[vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(boundary_points(&t2, &b).unwrap(), 5);
    }

    #[test]
    fn class_counts() {
        let b = Budget::default();
        let sq = unit_square();
        let c11 = ResidueClass::new(2, vec![1, 1]).unwrap();
        assert_eq!(interior_points_in_class(&sq, 1, &c11, &b).unwrap(), 1);
        let c01 = ResidueClass::new(2, vec![0, 1]).unwrap();
        assert_eq!(interior_points_in_class(&sq, 2, &c01, &b).unwrap(), 2);
        // The trivial class reproduces the plain interior count.
        let triv = ResidueClass::trivial(2);
        assert_eq!(
            interior_points_in_class(&sq, 3, &triv, &b).unwrap(),
            interior_points(&sq, 3, &b).unwrap()
        );
    }

    #[test]
    fn classes_partition_the_interior() {
        let p = LatticePolytope::convex_hull(&[vec![2, 0], vec![0, 1], vec![4, 3]]).unwrap();
        let b = Budget::default();
        let m = 3i64;
        let mut total = 0;
        for a in 0..m {
            for bb in 0..m {
                let cls = ResidueClass::new(m, vec![a, bb]).unwrap();
                total += interior_points_in_class(&p, 1, &cls, &b).unwrap();
            }
        }
        assert_eq!(total, interior_points(&p, m, &b).unwrap());
    }

    #[test]
    fn budget_failure_is_reported() {
        let p = LatticePolytope::prism(&[100, 100, 100]).unwrap();
        let tight = Budget::new(1000);
        assert!(matches!(
            interior_points(&p, 10, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pick_identity_on_fixed_polygons() {
        let b = Budget::default();
        for pts in [
            vec![vec![0, 0], vec![5, 1], vec![2, 4]],
            vec![vec![0, 2], vec![1, 0], vec![3, 4]],
            vec![vec![0, 0], vec![4, 0], vec![4, 3], vec![0, 3]],
        ] {
            let p = LatticePolytope::convex_hull(&pts).unwrap();
            let i = interior_points(&p, 1, &b).unwrap();
            let bd = boundary_points(&p, &b).unwrap();
            let vol = p.normalized_volume();
            assert_eq!(num_bigint::BigInt::from(2 * i + bd - 2), vol);
        }
    }
}
