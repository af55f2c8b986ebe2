//! Exact lattice-polytope geometry.
//!
//! Hulls are computed by brute-force facet enumeration over vertex subsets,
//! which is exact and comfortably fast for the desk-scale inputs this crate
//! targets (dimension at most 6, a few dozen points). The face lattice is the
//! closure of the facet vertex sets under intersection.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A face of a polytope, identified by the polytope vertices lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Sorted indices into the owning polytope's vertex list.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// A facet inequality `<normal, x> <= offset` with a primitive integer normal.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vec<i128>,
    pub offset: i128,
    /// Sorted vertex indices on the facet.
    pub vertices: Vec<usize>,
}

/// A full-dimensional lattice polytope with its face lattice.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    /// `faces[d]` lists the faces of dimension `d`; `faces[dim]` is the
    /// polytope itself.
    faces: Vec<Vec<Face>>,
    facets: Vec<Facet>,
}

/// Lattice-relative face volumes and incidence counts of a polytope.
///
/// `u[d]` is the sum over `d`-faces of the volume measured against the face's
/// own affine lattice (so an edge contributes the gcd of its displacement
/// vector and the whole polytope contributes its Euclidean volume). `w1` sums,
/// over the vertices, the number of facets through each vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceVolumes {
    pub u: Vec<BigRational>,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub w1: u64,
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Determinant by cofactor expansion; the matrices here are at most 6 x 6.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Rank of an integer matrix via exact rational elimination.
fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for c in col..cols {
            let scaled = &m[rank][c] * &inv;
            m[rank][c] = scaled;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let sub = &m[rank][c] * &factor;
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn diff(a: &[i64], b: &[i64]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| big(*x - *y)).collect()
}

fn affine_rank(points: &[&[i64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = points[1..].iter().map(|p| diff(p, points[0])).collect();
    rank(&rows)
}

fn gcd_vec(v: &[BigInt]) -> BigInt {
    v.iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.abs()))
}

/// Normal of the hyperplane through `pts` (which must be n affinely
/// independent points in dimension n), as the cofactor vector of the
/// difference matrix. Returns `None` when the points are affinely dependent.
fn hyperplane_normal(pts: &[&[i64]]) -> Option<Vec<BigInt>> {
    let n = pts[0].len();
    let rows: Vec<Vec<BigInt>> = pts[1..].iter().map(|p| diff(p, pts[0])).collect();
    let mut normal = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut d = det(&minor);
        if j % 2 == 1 {
            d = -d;
        }
        normal.push(d);
    }
    if normal.iter().all(|x| x.is_zero()) {
        return None;
    }
    let g = gcd_vec(&normal);
    for x in normal.iter_mut() {
        *x /= &g;
    }
    Some(normal)
}

fn dot_big(normal: &[BigInt], p: &[i64]) -> BigInt {
    normal
        .iter()
        .zip(p)
        .map(|(a, b)| a * big(*b))
        .sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl LatticePolytope {
    /// Exact convex hull of integer points, demanding full dimension.
    ///
    /// Supported up to dimension 6; the facet search enumerates point
    /// subsets, so keep the input to desk scale (a few dozen points).
    pub fn convex_hull(points: &[Vec<i64>]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        let n = points[0].len();
        if n == 0 || n > 6 {
            return Err(Error::UnsupportedDimension(n));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidInput(
                "points of mixed dimension".into(),
            ));
        }
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let found = affine_rank(&refs);
        if found < n {
            return Err(Error::DegenerateHull {
                expected: n,
                found,
            });
        }

        // Facet search: every hyperplane spanned by n of the points that has
        // the whole set on one side is a supporting hyperplane.
        let mut facet_map: HashMap<(Vec<BigInt>, BigInt), BTreeSet<usize>> = HashMap::new();
        for combo in combinations(pts.len(), n) {
            let chosen: Vec<&[i64]> = combo.iter().map(|&i| refs[i]).collect();
            let Some(mut normal) = hyperplane_normal(&chosen) else {
                continue;
            };
            let mut offset = dot_big(&normal, chosen[0]);
            let mut above = false;
            let mut below = false;
            for p in &refs {
                let d = dot_big(&normal, p);
                if d > offset {
                    above = true;
                } else if d < offset {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            if above && below {
                continue;
            }
            if above {
                for x in normal.iter_mut() {
                    *x = -x.clone();
                }
                offset = -offset;
            }
            let on: BTreeSet<usize> = (0..pts.len())
                .filter(|&i| dot_big(&normal, refs[i]) == offset)
                .collect();
            facet_map.entry((normal, offset)).or_default().extend(on);
        }

        // A point is a vertex exactly when the normals of the facets through
        // it span the whole space.
        let facet_list: Vec<(Vec<BigInt>, BigInt, BTreeSet<usize>)> = facet_map
            .into_iter()
            .map(|((nrm, off), on)| (nrm, off, on))
            .collect();
        let mut vertex_ids: Vec<usize> = Vec::new();
        for i in 0..pts.len() {
            let normals: Vec<Vec<BigInt>> = facet_list
                .iter()
                .filter(|(_, _, on)| on.contains(&i))
                .map(|(nrm, _, _)| nrm.clone())
                .collect();
            if rank(&normals) == n {
                vertex_ids.push(i);
            }
        }
        let vertices: Vec<Vec<i64>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
        let reindex: HashMap<usize, usize> = vertex_ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();

        let mut facets: Vec<Facet> = Vec::new();
        for (nrm, off, on) in &facet_list {
            let mut vs: Vec<usize> = on
                .iter()
                .filter_map(|i| reindex.get(i).copied())
                .collect();
            vs.sort_unstable();
            let normal: Option<Vec<i128>> = nrm
                .iter()
                .map(|x| i128::try_from(x).ok())
                .collect();
            let (Some(normal), Ok(offset)) = (normal, i128::try_from(off)) else {
                return Err(Error::InvalidInput(
                    "facet normal exceeds the supported coordinate range".into(),
                ));
            };
            facets.push(Facet {
                normal,
                offset,
                vertices: vs,
            });
        }
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.normal.cmp(&b.normal)));

        // Close the facet vertex sets under intersection to obtain every
        // proper face, then grade by affine rank.
        let mut face_sets: BTreeSet<Vec<usize>> = facets
            .iter()
            .map(|f| f.vertices.clone())
            .collect();
        loop {
            let current: Vec<Vec<usize>> = face_sets.iter().cloned().collect();
            let mut added = false;
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let inter: Vec<usize> = current[i]
                        .iter()
                        .filter(|v| current[j].binary_search(v).is_ok())
                        .copied()
                        .collect();
                    if !inter.is_empty() && face_sets.insert(inter) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut faces: Vec<Vec<Face>> = vec![Vec::new(); n + 1];
        for set in face_sets {
            let chosen: Vec<&[i64]> = set.iter().map(|&i| vertices[i].as_slice()).collect();
            let d = affine_rank(&chosen);
            faces[d].push(Face {
                vertices: set,
                dim: d,
            });
        }
        let all: Vec<usize> = (0..vertices.len()).collect();
        faces[n].push(Face {
            vertices: all,
            dim: n,
        });
        for level in faces.iter_mut() {
            level.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        }

        Ok(LatticePolytope {
            dim: n,
            vertices,
            faces,
            facets,
        })
    }

    /// Axis-aligned box `[0, sides[0]] x ... x [0, sides[n-1]]`.
    pub fn prism(sides: &[i64]) -> Result<LatticePolytope> {
        let n = sides.len();
        if n == 0 || n > 6 {
            return Err(Error::UnsupportedDimension(n));
        }
        if sides.iter().any(|&s| s < 1) {
            return Err(Error::InvalidInput("prism sides must be positive".into()));
        }
        let mut corners = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let corner: Vec<i64> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { sides[i] } else { 0 })
                .collect();
            corners.push(corner);
        }
        Self::convex_hull(&corners)
    }

    /// Box with the corner at the origin cut off by the simplex through
    /// `(corner[0],0,..), (0,corner[1],0,..), ...`, with `0 < corner[i] <= sides[i]`
    /// and strict inequality in at least one coordinate.
    pub fn truncated_prism(sides: &[i64], corner: &[i64]) -> Result<LatticePolytope> {
        let n = sides.len();
        if n < 2 || n > 6 {
            return Err(Error::UnsupportedDimension(n));
        }
        if corner.len() != n {
            return Err(Error::InvalidInput(
                "corner and sides must have the same length".into(),
            ));
        }
        if corner
            .iter()
            .zip(sides)
            .any(|(&a, &b)| a < 1 || a > b)
        {
            return Err(Error::InvalidInput(
                "corner legs must satisfy 0 < corner[i] <= sides[i]".into(),
            ));
        }
        let mut points = Vec::new();
        for mask in 1u32..(1 << n) {
            let p: Vec<i64> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { sides[i] } else { 0 })
                .collect();
            points.push(p);
        }
        for i in 0..n {
            let mut p = vec![0i64; n];
            p[i] = corner[i];
            points.push(p);
        }
        Self::convex_hull(&points)
    }

    /// Pyramid over an `a x b` rectangle of height `c`: in normalized
    /// coordinates the base sits at `x = c` and the apex at `x = 0` above an
    /// interior point `(d, e)` of the base, chosen so that every slanted face
    /// has lattice-relative area `a/2` or `b/2` and every apex edge is
    /// primitive.
    pub fn pyramid(a: i64, b: i64, c: i64) -> Result<LatticePolytope> {
        let (d, e) = Self::pyramid_apex(a, b, c)?;
        Self::pyramid_with_apex(a, b, c, d, e)
    }

    /// Smallest admissible apex position for [`LatticePolytope::pyramid`].
    pub fn pyramid_apex(a: i64, b: i64, c: i64) -> Result<(i64, i64)> {
        if a < 2 || b < 2 || c < 1 {
            return Err(Error::InvalidInput(
                "pyramid needs a, b >= 2 and c >= 1".into(),
            ));
        }
        for d in 1..a {
            for e in 1..b {
                let ok = [d, a - d].iter().all(|&t| t.gcd(&c) == 1)
                    && [e, b - e].iter().all(|&t| t.gcd(&c) == 1);
                if ok {
                    return Ok((d, e));
                }
            }
        }
        Err(Error::InvalidInput(format!(
            "no admissible pyramid apex for a={a}, b={b}, c={c}"
        )))
    }

    pub fn pyramid_with_apex(a: i64, b: i64, c: i64, d: i64, e: i64) -> Result<LatticePolytope> {
        if !(0 < d && d < a && 0 < e && e < b) {
            return Err(Error::InvalidInput(
                "pyramid apex must sit over the interior of the base".into(),
            ));
        }
        Self::convex_hull(&[
            vec![c, 0, 0],
            vec![c, a, 0],
            vec![c, 0, b],
            vec![c, a, b],
            vec![0, d, e],
        ])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Faces of dimension `d` (up to and including the polytope itself).
    pub fn faces(&self, d: usize) -> &[Face] {
        &self.faces[d]
    }

    pub fn edges(&self) -> &[Face] {
        &self.faces[1]
    }

    /// Componentwise bounding box `(lows, highs)`.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.dim;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &self.vertices {
            for i in 0..n {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo, hi)
    }

    /// `n! x` Euclidean volume, always a nonnegative integer.
    pub fn normalized_volume(&self) -> BigInt {
        let whole = &self.faces[self.dim][0];
        let mut total = BigInt::zero();
        for simplex in self.triangulate(whole) {
            let base = &self.vertices[simplex[0]];
            let rows: Vec<Vec<BigInt>> = simplex[1..]
                .iter()
                .map(|&v| diff(&self.vertices[v], base))
                .collect();
            total += det(&rows).abs();
        }
        total
    }

    /// Triangulation of a face into simplices, as vertex-index tuples, by
    /// recursively coning each face over a fixed vertex.
    fn triangulate(&self, face: &Face) -> Vec<Vec<usize>> {
        if face.dim == 0 {
            return vec![face.vertices.clone()];
        }
        if face.dim == 1 || face.vertices.len() == face.dim + 1 {
            return vec![face.vertices.clone()];
        }
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for sub in &self.faces[face.dim - 1] {
            if sub.vertices.contains(&apex) {
                continue;
            }
            if !sub
                .vertices
                .iter()
                .all(|v| face.vertices.binary_search(v).is_ok())
            {
                continue;
            }
            for mut simplex in self.triangulate(sub) {
                let mut s = vec![apex];
                s.append(&mut simplex);
                out.push(s);
            }
        }
        out
    }

    /// Lattice-relative volume of a face: Euclidean volume measured in units
    /// where the face's own affine lattice has covolume 1.
    pub fn relative_face_volume(&self, face: &Face) -> Result<BigRational> {
        match face.dim {
            0 => Ok(BigRational::one()),
            1 => {
                let a = &self.vertices[face.vertices[0]];
                let b = &self.vertices[face.vertices[1]];
                Ok(BigRational::from(gcd_vec(&diff(a, b))))
            }
            d if d == self.dim => {
                let nf: BigInt = (1..=self.dim as u64).product::<u64>().into();
                Ok(BigRational::new(self.normalized_volume(), nf))
            }
            d => {
                let base = &self.vertices[face.vertices[0]];
                let dirs: Vec<Vec<BigInt>> = face.vertices[1..]
                    .iter()
                    .map(|&v| diff(&self.vertices[v], base))
                    .collect();
                // Pick d independent direction vectors as a working basis.
                let mut basis: Vec<Vec<BigInt>> = Vec::new();
                for cand in &dirs {
                    if basis.len() == d {
                        break;
                    }
                    let mut trial = basis.clone();
                    trial.push(cand.clone());
                    if rank(&trial) == trial.len() {
                        basis = trial;
                    }
                }
                if basis.len() != d {
                    return Err(Error::InvalidFaceData(
                        "face vertex set does not span its stated dimension".into(),
                    ));
                }
                // Independent coordinate columns of the basis.
                let n = self.dim;
                let mut cols: Vec<usize> = Vec::new();
                for c in 0..n {
                    if cols.len() == d {
                        break;
                    }
                    let mut trial = cols.clone();
                    trial.push(c);
                    let sub: Vec<Vec<BigInt>> = basis
                        .iter()
                        .map(|row| trial.iter().map(|&cc| row[cc].clone()).collect())
                        .collect();
                    // Columns as rows for the rank test.
                    let t: Vec<Vec<BigInt>> = (0..trial.len())
                        .map(|i| sub.iter().map(|r| r[i].clone()).collect())
                        .collect();
                    if rank(&t) == trial.len() {
                        cols = trial;
                    }
                }
                let msub: Vec<Vec<BigInt>> = basis
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                    .collect();
                let dsub = det(&msub);
                // Coordinates of each vertex in the working basis by Cramer's
                // rule on the chosen columns, cleared to integers.
                let mut coords: Vec<Vec<BigRational>> = Vec::new();
                for &v in &face.vertices {
                    let target = diff(&self.vertices[v], base);
                    let rhs: Vec<BigInt> = cols.iter().map(|&c| target[c].clone()).collect();
                    let mut alpha = Vec::with_capacity(d);
                    for k in 0..d {
                        // Cramer's rule for alpha * msub = rhs: swap in the
                        // right-hand side as row k.
                        let mut mt: Vec<Vec<BigInt>> = msub.clone();
                        mt[k] = rhs.clone();
                        alpha.push(BigRational::new(det(&mt), dsub.clone()));
                    }
                    coords.push(alpha);
                }
                let mut denom = BigInt::one();
                for row in &coords {
                    for x in row {
                        denom = denom.lcm(x.denom());
                    }
                }
                let int_coords: Vec<Vec<i64>> = coords
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| {
                                let v = x * BigRational::from(denom.clone());
                                i64::try_from(v.to_integer()).map_err(|_| {
                                    Error::InvalidInput(
                                        "face coordinates exceed the supported range".into(),
                                    )
                                })
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<Vec<i64>>>>()?;
                let sub_poly = LatticePolytope::convex_hull(&int_coords)?;
                let dfact: BigInt = (1..=d as u64).product::<u64>().into();
                let vol_coords = BigRational::new(sub_poly.normalized_volume(), dfact)
                    / BigRational::from(denom.pow(d as u32));
                // Index of the saturated lattice of the face's plane over the
                // lattice spanned by the working basis.
                let mut g = BigInt::zero();
                for combo in combinations(n, d) {
                    let sub: Vec<Vec<BigInt>> = basis
                        .iter()
                        .map(|row| combo.iter().map(|&c| row[c].clone()).collect())
                        .collect();
                    g = g.gcd(&det(&sub).abs());
                }
                Ok(vol_coords * BigRational::from(g))
            }
        }
    }

    /// Face volumes `U_0..U_n`, vertex/edge/2-face counts, and `W_1`.
    ///
    /// General exact face geometry is limited to dimension at most 4.
    pub fn face_volumes(&self) -> Result<FaceVolumes> {
        let n = self.dim;
        if n > 4 {
            return Err(Error::UnsupportedDimension(n));
        }
        let mut u = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut total = BigRational::zero();
            for face in &self.faces[d] {
                total += self.relative_face_volume(face)?;
            }
            u.push(total);
        }
        let v = self.faces[0].len();
        let e = if n >= 1 { self.faces[1].len() } else { 0 };
        let f = if n >= 2 { self.faces[2].len() } else { 0 };
        let facet_dim = n - 1;
        let mut w1 = 0u64;
        for vert in &self.faces[0] {
            let vid = vert.vertices[0];
            w1 += self.faces[facet_dim]
                .iter()
                .filter(|fc| fc.vertices.binary_search(&vid).is_ok())
                .count() as u64;
        }
        Ok(FaceVolumes { u, v, e, f, w1 })
    }

    /// Vertices of a 2-dimensional polytope in counterclockwise cyclic order.
    pub fn cycle2d(&self) -> Result<Vec<Vec<i64>>> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        let m = self.vertices.len() as i64;
        let cx: i64 = self.vertices.iter().map(|v| v[0]).sum();
        let cy: i64 = self.vertices.iter().map(|v| v[1]).sum();
        // Compare angles around the centroid (scaled by m to stay integral).
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        let key = |i: usize| -> (i128, i128) {
            (
                (self.vertices[i][0] as i128) * (m as i128) - cx as i128,
                (self.vertices[i][1] as i128) * (m as i128) - cy as i128,
            )
        };
        let half = |p: (i128, i128)| -> u8 {
            if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
                0
            } else {
                1
            }
        };
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (key(a), key(b));
            half(pa).cmp(&half(pb)).then_with(|| {
                let cross = pa.0 * pb.1 - pa.1 * pb.0;
                cross.cmp(&0).reverse()
            })
        });
        Ok(idx.into_iter().map(|i| self.vertices[i].clone()).collect())
    }
}
