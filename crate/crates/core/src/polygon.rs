//! Newton-polygon slope analysis for bivariate Laurent supports.
//!
//! Everything here works in *plotted coordinates*: the y-exponent goes on the
//! horizontal axis and the x-exponent on the vertical axis. The lower and
//! upper boundary chains of the plotted hull are the slope sequence at 0 and
//! (after reflecting about the horizontal axis) the inverse slope sequence at
//! infinity.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A finite set of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialSupport {
    pub n: usize,
    pub terms: Vec<(Vec<i64>, BigRational)>,
    pub normalized: bool,
}

impl MonomialSupport {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, BigRational)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("support has no terms".into()));
        }
        for (exp, coeff) in &terms {
            if exp.len() != n {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {exp:?} does not have length {n}"
                )));
            }
            if coeff.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "zero coefficient at exponent {exp:?}"
                )));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if terms[i].0 == terms[j].0 {
                    return Err(Error::InvalidInput(format!(
                        "duplicate exponent vector {:?}",
                        terms[i].0
                    )));
                }
            }
        }
        let normalized = (0..n).all(|c| terms.iter().map(|(e, _)| e[c]).min() == Some(0));
        Ok(MonomialSupport {
            n,
            terms,
            normalized,
        })
    }

    /// Support with all coefficients equal to 1.
    pub fn from_exponents(n: usize, exps: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            n,
            exps.iter()
                .map(|e| (e.clone(), BigRational::one()))
                .collect(),
        )
    }

    /// Plotted points `(y-exponent, x-exponent)` of a bivariate support.
    pub fn plotted_points(&self) -> Result<Vec<(i64, i64)>> {
        if self.n != 2 {
            return Err(Error::UnsupportedDimension(self.n));
        }
        Ok(self.terms.iter().map(|(e, _)| (e[1], e[0])).collect())
    }
}

/// Translates the exponents so that the minimum in each coordinate is 0.
///
/// Fails with `DegenerateSupport` when the Newton polygon is a point or a
/// segment.
pub fn normalize(f: &MonomialSupport) -> Result<MonomialSupport> {
    if f.n != 2 {
        return Err(Error::UnsupportedDimension(f.n));
    }
    check_two_dimensional(f)?;
    let mins: Vec<i64> = (0..f.n)
        .map(|c| f.terms.iter().map(|(e, _)| e[c]).min().unwrap())
        .collect();
    let terms = f
        .terms
        .iter()
        .map(|(e, coeff)| {
            let shifted: Vec<i64> = e.iter().zip(&mins).map(|(x, m)| x - m).collect();
            (shifted, coeff.clone())
        })
        .collect();
    MonomialSupport::new(f.n, terms)
}

fn check_two_dimensional(f: &MonomialSupport) -> Result<()> {
    if f.terms.len() < 3 {
        return Err(Error::DegenerateSupport(format!(
            "{} term(s) cannot span a 2-dimensional polygon",
            f.terms.len()
        )));
    }
    let pts: Vec<&Vec<i64>> = f.terms.iter().map(|(e, _)| e).collect();
    let base = pts[0];
    let spanning = pts[1..].iter().any(|p| {
        pts[1..].iter().any(|q| {
            let (ax, ay) = (p[0] - base[0], p[1] - base[1]);
            let (bx, by) = (q[0] - base[0], q[1] - base[1]);
            (ax as i128) * (by as i128) != (ay as i128) * (bx as i128)
        })
    });
    if spanning {
        Ok(())
    } else {
        Err(Error::DegenerateSupport(
            "all exponents lie on a line".into(),
        ))
    }
}

fn require_normalized(f: &MonomialSupport) -> Result<()> {
    if f.n != 2 {
        return Err(Error::UnsupportedDimension(f.n));
    }
    if !f.normalized {
        return Err(Error::InvalidInput(
            "support must be normalized first".into(),
        ));
    }
    check_two_dimensional(f)
}

/// An edge of a slope sequence: its plotted displacement and lattice length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullEdge {
    /// `(horizontal, vertical)` step, horizontal component positive. For the
    /// inverse slope sequence the vertical component is already reflected.
    pub displacement: (i64, i64),
    pub volume: i64,
}

impl HullEdge {
    fn from_step(dh: i64, dv: i64) -> Self {
        HullEdge {
            displacement: (dh, dv),
            volume: dh.abs().gcd(&dv.abs()),
        }
    }
}

/// Slope sequences of the plotted Newton polygon together with the
/// combinatorial root counts on the two horizontal strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeData {
    /// Lower-hull edges, left to right; slopes strictly increase.
    pub s0: Vec<HullEdge>,
    /// Upper-hull edges, left to right, reflected about the horizontal axis;
    /// slopes strictly increase after the reflection.
    pub sinf: Vec<HullEdge>,
    /// Width of the support's bottom row (terms with y-exponent 0): the
    /// number of roots of `f(t, 0)` in the torus for nondegenerate `f`.
    pub n0: i64,
    /// Width of the support's top row, counting roots of the leading
    /// y-coefficient.
    pub ninf: i64,
}

impl SlopeData {
    pub fn s0_total(&self) -> i64 {
        self.s0.iter().map(|e| e.volume).sum()
    }

    pub fn sinf_total(&self) -> i64 {
        self.sinf.iter().map(|e| e.volume).sum()
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Monotone-chain hull boundary: `(lower, upper)` chains, each left to right,
/// with collinear interior points dropped so chain edges are maximal.
fn hull_chains(points: &[(i64, i64)]) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    upper.reverse();
    (lower, upper)
}

fn column_width(points: &[(i64, i64)], h: i64) -> i64 {
    let vs: Vec<i64> = points.iter().filter(|p| p.0 == h).map(|p| p.1).collect();
    match (vs.iter().min(), vs.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

/// Slope sequences and horizontal-stratum root counts of a normalized
/// bivariate support.
pub fn slope_data(f: &MonomialSupport) -> Result<SlopeData> {
    require_normalized(f)?;
    let points = f.plotted_points()?;
    let (lower, upper) = hull_chains(&points);
    let s0 = lower
        .windows(2)
        .filter(|w| w[1].0 != w[0].0)
        .map(|w| HullEdge::from_step(w[1].0 - w[0].0, w[1].1 - w[0].1))
        .collect();
    let sinf = upper
        .windows(2)
        .filter(|w| w[1].0 != w[0].0)
        .map(|w| HullEdge::from_step(w[1].0 - w[0].0, -(w[1].1 - w[0].1)))
        .collect();
    let h_max = points.iter().map(|p| p.0).max().unwrap();
    Ok(SlopeData {
        s0,
        sinf,
        n0: column_width(&points, 0),
        ninf: column_width(&points, h_max),
    })
}

/// Multiplicities of the four boundary strata at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratumCounts {
    /// Lattice length of the rightmost vertical side of the plotted hull.
    pub n1: i64,
    /// Volume of the horizontal part of the inverse slope sequence.
    pub n2: i64,
    /// Volume of the parts meeting the stratum at `(infinity, 0)`: upper-hull
    /// edges of positive plotted slope.
    pub r1: i64,
    /// Volume of the parts meeting `(infinity, infinity)`: negative plotted
    /// slope.
    pub r2: i64,
}

impl StratumCounts {
    pub fn total(&self) -> i64 {
        self.n1 + self.n2 + self.r1 + self.r2
    }
}

/// Splits the boundary at infinity of a normalized support into the four
/// stratum classes.
pub fn stratum_counts(f: &MonomialSupport) -> Result<StratumCounts> {
    require_normalized(f)?;
    let points = f.plotted_points()?;
    let (_, upper) = hull_chains(&points);
    let h_max = points.iter().map(|p| p.0).max().unwrap();
    // Only hull vertices bound the vertical side, and the extremes of the
    // last column are always hull vertices.
    let hull_pts: Vec<(i64, i64)> = {
        let (lo, up) = hull_chains(&points);
        lo.into_iter().chain(up).collect()
    };
    let n1 = column_width(&hull_pts, h_max);
    let mut n2 = 0;
    let mut r1 = 0;
    let mut r2 = 0;
    for w in upper.windows(2) {
        let (dh, dv) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if dh == 0 {
            continue;
        }
        let vol = dh.abs().gcd(&dv.abs());
        match dv.cmp(&0) {
            std::cmp::Ordering::Greater => r1 += vol,
            std::cmp::Ordering::Equal => n2 += vol,
            std::cmp::Ordering::Less => r2 += vol,
        }
    }
    Ok(StratumCounts { n1, n2, r1, r2 })
}
