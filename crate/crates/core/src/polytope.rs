//! Lattice polytopes given by their support points: exact facet
//! enumeration, vertices, minimized faces and Minkowski sums.
//!
//! Facet normals are found by generating candidate directions from
//! (n-1)-subsets of pairwise difference vectors and verifying each one
//! exactly: a direction is a facet normal iff its argmin set has affine
//! rank n-1. For Minkowski sums the difference vectors of the summands
//! already span every facet, so the same candidate scheme stays complete.

use std::collections::BTreeSet;

use crate::mat::{self, IVec};
use crate::poly::{Expo, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    n: usize,
    points: Vec<Expo>,
    vertices: Vec<Expo>,
    dim: usize,
}

/// A face of a polytope: the exact argmin point set of a linear
/// functional, together with the minimizing witness (0 for the whole
/// polytope as its non-proper face).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub points: Vec<Expo>,
    pub normal: IVec,
}

impl Face {
    pub fn dim(&self) -> usize {
        mat::affine_rank(&self.points)
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(|p| p.iter().all(|&x| x == 0))
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        let set: BTreeSet<&Expo> = other.points.iter().collect();
        self.points.iter().all(|p| set.contains(p))
    }
}

/// A verified facet: primitive inner normal, its minimum value over the
/// polytope, and the indices of the points achieving it.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: IVec,
    pub offset: i128,
    pub point_idxs: Vec<usize>,
}

impl Polytope {
    pub fn from_points(n: usize, mut points: Vec<Expo>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        points.sort();
        points.dedup();
        let dim = mat::affine_rank(&points);
        let vertices = compute_vertices(n, &points, dim);
        Ok(Polytope {
            n,
            points,
            vertices,
            dim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Expo] {
        &self.points
    }

    pub fn vertices(&self) -> &[Expo] {
        &self.vertices
    }

    pub fn contains_point_in_support(&self, p: &[i64]) -> bool {
        self.points.iter().any(|q| q[..] == *p)
    }

    /// The face minimized by alpha: exact argmin over the support points.
    /// alpha = 0 yields the whole polytope as its non-proper face.
    pub fn minimized_face(&self, alpha: &[i64]) -> Face {
        let mut best: Option<i128> = None;
        for p in &self.points {
            let v = mat::dot(p, alpha);
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
        let best = best.unwrap();
        Face {
            points: self
                .points
                .iter()
                .filter(|p| mat::dot(p, alpha) == best)
                .cloned()
                .collect(),
            normal: alpha.to_vec(),
        }
    }

    /// Minimum of <., alpha> over the polytope.
    pub fn min_value(&self, alpha: &[i64]) -> i128 {
        self.points.iter().map(|p| mat::dot(p, alpha)).min().unwrap()
    }

    /// Minkowski sum: support points are all pairwise sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut sums = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                sums.push(a.iter().zip(b).map(|(&x, &y)| x + y).collect());
            }
        }
        Polytope::from_points(self.n, sums)
    }

    /// All facets of a full-dimensional polytope. `diff_sources` supplies
    /// the difference-vector pools used to generate candidate normals;
    /// pass the summand point sets when the polytope is a Minkowski sum,
    /// or nothing to use the polytope's own points.
    pub fn facets(&self, diff_sources: Option<&[Vec<Expo>]>) -> Result<Vec<Facet>> {
        if self.dim != self.n {
            return Err(Error::DegenerateMap(format!(
                "polytope has dimension {} < ambient {}",
                self.dim, self.n
            )));
        }
        let own = vec![self.points.clone()];
        let sources = diff_sources.unwrap_or(&own);
        let candidates = candidate_normals(self.n, sources);
        let mut facets: Vec<Facet> = vec![];
        let mut seen: BTreeSet<IVec> = BTreeSet::new();
        for u in candidates {
            if !seen.insert(u.clone()) {
                continue;
            }
            let offset = self.min_value(&u);
            let idxs: Vec<usize> = self
                .points
                .iter()
                .enumerate()
                .filter(|(_, p)| mat::dot(p, &u) == offset)
                .map(|(i, _)| i)
                .collect();
            let pts: Vec<Expo> = idxs.iter().map(|&i| self.points[i].clone()).collect();
            if mat::affine_rank(&pts) == self.n - 1 {
                facets.push(Facet {
                    normal: u,
                    offset,
                    point_idxs: idxs,
                });
            }
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        Ok(facets)
    }
}

/// Candidate facet normals: primitive kernel vectors of (n-1)-subsets of
/// the pooled difference vectors, in both orientations.
fn candidate_normals(n: usize, sources: &[Vec<Expo>]) -> Vec<IVec> {
    if n == 1 {
        return vec![vec![1], vec![-1]];
    }
    let mut diffs: BTreeSet<IVec> = BTreeSet::new();
    for pts in sources {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d: IVec = pts[i].iter().zip(&pts[j]).map(|(&a, &b)| a - b).collect();
                if d.iter().any(|&x| x != 0) {
                    let p = mat::primitive(&d);
                    let canon = if p.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false) {
                        p.iter().map(|&x| -x).collect()
                    } else {
                        p
                    };
                    diffs.insert(canon);
                }
            }
        }
    }
    let diffs: Vec<IVec> = diffs.into_iter().collect();
    let mut out = vec![];
    let mut subset = vec![0usize; n - 1];
    enumerate_subsets(diffs.len(), n - 1, &mut subset, 0, 0, &mut |idx: &[usize]| {
        let rows: Vec<IVec> = idx.iter().map(|&i| diffs[i].clone()).collect();
        if mat::rank(&rows) != n - 1 {
            return;
        }
        let kern = mat::kernel_basis(&rows);
        if kern.len() == 1 {
            let u = mat::primitive(&kern[0]);
            out.push(u.clone());
            out.push(u.iter().map(|&x| -x).collect());
        }
    });
    out
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(buf);
        return;
    }
    for i in start..n {
        buf[depth] = i;
        enumerate_subsets(n, k, buf, depth + 1, i + 1, f);
    }
}

fn compute_vertices(n: usize, points: &[Expo], dim: usize) -> Vec<Expo> {
    if dim == 0 {
        return vec![points[0].clone()];
    }
    if dim == n {
        // Vertex iff the active facet normals span R^n.
        let poly = Polytope {
            n,
            points: points.to_vec(),
            vertices: vec![],
            dim,
        };
        let facets = poly.facets(None).expect("full-dim facets");
        return points
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let active: Vec<IVec> = facets
                    .iter()
                    .filter(|f| f.point_idxs.contains(i))
                    .map(|f| f.normal.clone())
                    .collect();
                mat::rank(&active) == n
            })
            .map(|(_, p)| p.clone())
            .collect();
    }
    // Lower-dimensional: re-express in lattice coordinates of the affine
    // hull and recurse.
    let base = &points[0];
    let diffs: Vec<IVec> = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| a - b).collect())
        .collect();
    let basis = mat::saturated_span_basis(&diffs, n);
    debug_assert_eq!(basis.len(), dim);
    let projected: Vec<Expo> = diffs
        .iter()
        .map(|d| mat::coords_in_basis(&basis, d).expect("point in own affine hull"))
        .collect();
    let sub = Polytope::from_points(dim, projected.clone()).expect("projected polytope");
    let vert_set: BTreeSet<&Expo> = sub.vertices.iter().collect();
    points
        .iter()
        .zip(&projected)
        .filter(|(_, pr)| vert_set.contains(pr))
        .map(|(p, _)| p.clone())
        .collect()
}

/// Newton polytope of a nonzero polynomial: exact hull of its support.
pub fn newton_polytope(p: &Polynomial) -> Result<Polytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Polytope::from_points(p.nvars(), p.support())
}

/// Newton polytope of f_i - y_i for generic y_i: the support with the
/// origin adjoined. This is the polytope the whole pipeline works with.
pub fn newton_polytope_with_origin(p: &Polynomial) -> Result<Polytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pts = p.support();
    pts.push(vec![0; p.nvars()]);
    Polytope::from_points(p.nvars(), pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex14_f1() -> Polynomial {
        parse_polynomial("v*(u-1)", &vars(&["u", "v"])).unwrap()
    }

    fn ex14_f2() -> Polynomial {
        parse_polynomial("v^2*(u^2-3*u+2)", &vars(&["u", "v"])).unwrap()
    }

    #[test]
    fn newton_polytopes_of_example_map() {
        let p1 = newton_polytope_with_origin(&ex14_f1()).unwrap();
        let mut v1 = p1.vertices().to_vec();
        v1.sort();
        assert_eq!(v1, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(p1.dim(), 2);

        let p2 = newton_polytope_with_origin(&ex14_f2()).unwrap();
        let mut v2 = p2.vertices().to_vec();
        v2.sort();
        // (1,2) lies on the top edge, interior to it
        assert_eq!(v2, vec![vec![0, 0], vec![0, 2], vec![2, 2]]);

        let mono = parse_polynomial("u^2*v^2", &vars(&["u", "v"])).unwrap();
        let pm = newton_polytope(&mono).unwrap();
        assert_eq!(pm.dim(), 0);
        assert_eq!(pm.vertices(), &[vec![2, 2]]);

        let zero = Polynomial::zero(2);
        assert!(newton_polytope(&zero).is_err());
    }

    #[test]
    fn minimized_faces() {
        let p1 = newton_polytope_with_origin(&ex14_f1()).unwrap();
        let f = p1.minimized_face(&[1, 0]);
        assert_eq!(f.points, vec![vec![0, 0], vec![0, 1]]);
        let top = p1.minimized_face(&[0, -1]);
        assert_eq!(top.points, vec![vec![0, 1], vec![1, 1]]);
        let whole = p1.minimized_face(&[0, 0]);
        assert_eq!(whole.points.len(), p1.points().len());
    }

    #[test]
    fn minkowski_sums() {
        let seg_a = Polytope::from_points(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let seg_b = Polytope::from_points(2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let square = seg_a.minkowski_sum(&seg_b).unwrap();
        let mut v = square.vertices().to_vec();
        v.sort();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        let point = Polytope::from_points(2, vec![vec![2, 3]]).unwrap();
        let shifted = seg_a.minkowski_sum(&point).unwrap();
        let mut v = shifted.vertices().to_vec();
        v.sort();
        assert_eq!(v, vec![vec![2, 3], vec![3, 3]]);

        // Example map triangles: hull of brute-force pairwise sums
        let p1 = newton_polytope_with_origin(&ex14_f1()).unwrap();
        let p2 = newton_polytope_with_origin(&ex14_f2()).unwrap();
        let sum = p1.minkowski_sum(&p2).unwrap();
        let mut v = sum.vertices().to_vec();
        v.sort();
        assert_eq!(v, vec![vec![0, 0], vec![0, 3], vec![3, 3]]);
    }

    #[test]
    fn facet_enumeration_square_and_cube() {
        let square = Polytope::from_points(
            2,
            vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]],
        )
        .unwrap();
        let facets = square.facets(None).unwrap();
        assert_eq!(facets.len(), 4);

        let mut cube_pts = vec![];
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube_pts.push(vec![x, y, z]);
                }
            }
        }
        let cube = Polytope::from_points(3, cube_pts).unwrap();
        let facets = cube.facets(None).unwrap();
        assert_eq!(facets.len(), 6);
        assert_eq!(cube.vertices().len(), 8);
    }
}
