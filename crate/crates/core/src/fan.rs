//! The common-refinement inner normal fan F(f) of the Newton polytopes
//! New(f_i - y_i), realized as the normal fan of their Minkowski sum.
//! Cones biject with minimized tuples; a cone is a face of another iff
//! its tuple is a super-tuple (duality), and dim C + tdi(tuple) = n.

use std::collections::BTreeMap;

use crate::mat::{self, IVec};
use crate::polytope::{Face, Polytope};
use crate::{Error, Result};

/// An n-tuple of faces, one per Newton polytope, minimized by a common
/// vector. `tdim` is the dimension of the Minkowski sum of the members.
#[derive(Clone, Debug)]
pub struct FaceTuple {
    pub members: Vec<Face>,
    pub tdim: usize,
    pub cone: usize,
}

impl FaceTuple {
    /// Componentwise point-set inclusion.
    pub fn is_subtuple_of(&self, other: &FaceTuple) -> bool {
        self.members.len() == other.members.len()
            && self
                .members
                .iter()
                .zip(&other.members)
                .all(|(a, b)| a.is_subset_of(b))
    }

    /// Canonical key for tuple identity: the sorted member point lists.
    pub fn key(&self) -> Vec<Vec<Vec<i64>>> {
        self.members.iter().map(|m| m.points.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    pub id: usize,
    /// Indices into `Fan::rays`, sorted. Empty for the zero cone.
    pub ray_idxs: Vec<usize>,
    pub dim: usize,
    /// Point indices (into the Minkowski-sum support) of the dual face.
    face_key: Vec<usize>,
}

pub struct Fan {
    n: usize,
    rays: Vec<IVec>,
    cones: Vec<Cone>,
    tuples: Vec<FaceTuple>,
    face_keys: BTreeMap<Vec<usize>, usize>,
    psum: Polytope,
}

impl Fan {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, id: usize) -> &Cone {
        &self.cones[id]
    }

    pub fn tuple_of(&self, id: usize) -> &FaceTuple {
        &self.tuples[id]
    }

    pub fn ray_vectors(&self, id: usize) -> Vec<IVec> {
        self.cones[id]
            .ray_idxs
            .iter()
            .map(|&r| self.rays[r].clone())
            .collect()
    }

    /// A vector in the relative interior of the cone (0 for the zero cone).
    pub fn interior_vector(&self, id: usize) -> IVec {
        let mut v = vec![0i64; self.n];
        for &r in &self.cones[id].ray_idxs {
            for (a, b) in v.iter_mut().zip(&self.rays[r]) {
                *a += b;
            }
        }
        v
    }

    /// Face-of relation between cones of the fan.
    pub fn is_face_of(&self, a: usize, b: usize) -> bool {
        let ra = &self.cones[a].ray_idxs;
        let rb = &self.cones[b].ray_idxs;
        ra.iter().all(|r| rb.contains(r))
    }

    /// The unique smallest cone containing a direction.
    pub fn smallest_cone_containing(&self, alpha: &[i64]) -> Result<usize> {
        let face = self.psum.minimized_face(alpha);
        let key = face_key_of_points(&self.psum, &face);
        self.face_keys
            .get(&key)
            .copied()
            .ok_or_else(|| Error::Internal("direction hit a face missing from the lattice".into()))
    }

    pub fn minkowski_sum_polytope(&self) -> &Polytope {
        &self.psum
    }

    /// A flag of cones C^1 ⊂ … ⊂ C^n through the given cone, which sits at
    /// position dim(C). Downward steps take the lexicographically least
    /// face; upward steps take the lexicographically least admissible
    /// cofacet, where admissible means the tuple keeps the origin in every
    /// member listed in `keep_origin` (needed so the transformed system
    /// carries the -y_i offsets on exactly the origin members).
    pub fn cone_flag(&self, id: usize, keep_origin: &[usize]) -> Result<Vec<usize>> {
        self.cone_flag_with(id, keep_origin, false)
    }

    /// Like `cone_flag`, but resolving every choice toward the
    /// lexicographically greatest candidate. Used to produce a second,
    /// genuinely different chain transformation for independence tests.
    pub fn cone_flag_alt(&self, id: usize, keep_origin: &[usize]) -> Result<Vec<usize>> {
        self.cone_flag_with(id, keep_origin, true)
    }

    fn cone_flag_with(&self, id: usize, keep_origin: &[usize], greatest: bool) -> Result<Vec<usize>> {
        let k = self.cones[id].dim;
        if k == 0 {
            return Err(Error::Internal("no flag through the zero cone".into()));
        }
        let mut flag = vec![usize::MAX; self.n];
        flag[k - 1] = id;
        // downward: faces of the current cone of one dimension less
        let mut cur = id;
        for d in (1..k).rev() {
            let cand = self.pick_candidate(
                |c| c.dim == d && self.is_face_of(c.id, cur),
                greatest,
            )?;
            flag[d - 1] = cand;
            cur = cand;
        }
        // upward: cofacets whose tuples keep the required origin members
        let mut cur = id;
        for d in k + 1..=self.n {
            let cand = self.pick_candidate(
                |c| {
                    c.dim == d
                        && self.is_face_of(cur, c.id)
                        && keep_origin
                            .iter()
                            .all(|&i| self.tuples[c.id].members[i].contains_origin())
                },
                greatest,
            )?;
            flag[d - 1] = cand;
            cur = cand;
        }
        Ok(flag)
    }

    fn pick_candidate(&self, pred: impl Fn(&Cone) -> bool, greatest: bool) -> Result<usize> {
        let mut best: Option<(&Cone, Vec<IVec>)> = None;
        for c in &self.cones {
            if !pred(c) {
                continue;
            }
            let key = self.ray_vectors(c.id);
            best = Some(match best {
                None => (c, key),
                Some((bc, bk)) => {
                    let replace = if greatest { key > bk } else { key < bk };
                    if replace {
                        (c, key)
                    } else {
                        (bc, bk)
                    }
                }
            });
        }
        best.map(|(c, _)| c.id)
            .ok_or_else(|| Error::Internal("incomplete fan: no flag candidate".into()))
    }

    /// The flag of tuples gamma^0 ⪯ … ⪯ gamma^{n-1} dual to a cone flag,
    /// i.e. gamma^j is the tuple of C^{n-j}.
    pub fn flag_tuples(&self, flag: &[usize]) -> Vec<&FaceTuple> {
        flag.iter().rev().map(|&id| &self.tuples[id]).collect()
    }
}

fn face_key_of_points(psum: &Polytope, face: &Face) -> Vec<usize> {
    let pts = psum.points();
    face.points
        .iter()
        .map(|p| pts.iter().position(|q| q == p).expect("face point in polytope"))
        .collect()
}

/// Computes the minimized tuple of a direction over the given polytopes.
pub fn minimized_tuple_at(polytopes: &[Polytope], alpha: &[i64]) -> (Vec<Face>, usize) {
    let members: Vec<Face> = polytopes.iter().map(|p| p.minimized_face(alpha)).collect();
    let tdim = tuple_dim(&members);
    (members, tdim)
}

/// Dimension of the Minkowski sum of the member faces.
pub fn tuple_dim(members: &[Face]) -> usize {
    let mut diffs: Vec<IVec> = vec![];
    for m in members {
        let base = &m.points[0];
        for p in &m.points[1..] {
            diffs.push(p.iter().zip(base).map(|(&a, &b)| a - b).collect());
        }
    }
    mat::rank(&diffs)
}

/// Builds the inner normal fan of the tuple of polytopes as the normal fan
/// of their Minkowski sum, with the cone <-> minimized-tuple bijection.
pub fn normal_fan(polytopes: &[Polytope]) -> Result<Fan> {
    let n = polytopes
        .first()
        .ok_or_else(|| Error::DegenerateMap("empty polytope tuple".into()))?
        .ambient_dim();
    for p in polytopes {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.ambient_dim(),
            });
        }
    }
    let mut psum = polytopes[0].clone();
    for p in &polytopes[1..] {
        psum = psum.minkowski_sum(p)?;
    }
    if psum.dim() < n {
        return Err(Error::DegenerateMap(format!(
            "Minkowski sum of the Newton polytopes has dimension {} < {}",
            psum.dim(),
            n
        )));
    }
    let sources: Vec<Vec<Vec<i64>>> = polytopes.iter().map(|p| p.points().to_vec()).collect();
    let facets = psum.facets(Some(&sources))?;

    // Face lattice: closure of the facet point sets under intersection.
    let all_points: Vec<usize> = (0..psum.points().len()).collect();
    let mut face_sets: Vec<Vec<usize>> = vec![all_points];
    for f in &facets {
        face_sets.push(f.point_idxs.clone());
    }
    face_sets.sort();
    face_sets.dedup();
    loop {
        let mut new_sets = vec![];
        for i in 0..face_sets.len() {
            for j in i + 1..face_sets.len() {
                let inter: Vec<usize> = face_sets[i]
                    .iter()
                    .filter(|x| face_sets[j].contains(x))
                    .copied()
                    .collect();
                if !inter.is_empty()
                    && !face_sets.contains(&inter)
                    && !new_sets.contains(&inter)
                {
                    new_sets.push(inter);
                }
            }
        }
        if new_sets.is_empty() {
            break;
        }
        face_sets.extend(new_sets);
        face_sets.sort();
        face_sets.dedup();
    }

    // Rays of the fan = facet normals.
    let mut rays: Vec<IVec> = facets.iter().map(|f| f.normal.clone()).collect();
    rays.sort();
    rays.dedup();

    // One cone per face: spanned by the normals of the facets containing it.
    struct ProtoCone {
        ray_idxs: Vec<usize>,
        dim: usize,
        face_key: Vec<usize>,
    }
    let mut protos: Vec<ProtoCone> = vec![];
    for fs in &face_sets {
        let active: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| fs.iter().all(|p| f.point_idxs.contains(p)))
            .map(|(i, _)| i)
            .collect();
        let mut ray_idxs: Vec<usize> = active
            .iter()
            .map(|&i| rays.binary_search(&facets[i].normal).unwrap())
            .collect();
        ray_idxs.sort();
        ray_idxs.dedup();
        let face_pts: Vec<Vec<i64>> = fs.iter().map(|&i| psum.points()[i].clone()).collect();
        let fdim = mat::affine_rank(&face_pts);
        let cdim = n - fdim;
        let ray_vecs: Vec<IVec> = ray_idxs.iter().map(|&r| rays[r].clone()).collect();
        if mat::rank(&ray_vecs) != cdim {
            return Err(Error::Internal(
                "normal cone rank does not match face codimension".into(),
            ));
        }
        protos.push(ProtoCone {
            ray_idxs,
            dim: cdim,
            face_key: fs.clone(),
        });
    }
    protos.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.ray_idxs.cmp(&b.ray_idxs)));

    let mut cones = vec![];
    let mut tuples = vec![];
    let mut face_keys = BTreeMap::new();
    let mut tuple_keys: BTreeMap<Vec<Vec<Vec<i64>>>, usize> = BTreeMap::new();
    for (id, proto) in protos.into_iter().enumerate() {
        let alpha = {
            let mut v = vec![0i64; n];
            for &r in &proto.ray_idxs {
                for (a, b) in v.iter_mut().zip(&rays[r]) {
                    *a += b;
                }
            }
            v
        };
        let (members, tdim) = minimized_tuple_at(polytopes, &alpha);
        if tdim + proto.dim != n {
            return Err(Error::Internal(format!(
                "dimension law violated: dim C = {}, tdi = {}, n = {}",
                proto.dim, tdim, n
            )));
        }
        let tuple = FaceTuple {
            members,
            tdim,
            cone: id,
        };
        if tuple_keys.insert(tuple.key(), id).is_some() {
            return Err(Error::Internal("cone/tuple correspondence not injective".into()));
        }
        face_keys.insert(proto.face_key.clone(), id);
        cones.push(Cone {
            id,
            ray_idxs: proto.ray_idxs,
            dim: proto.dim,
            face_key: proto.face_key,
        });
        tuples.push(tuple);
    }
    let _ = &cones.iter().map(|c| &c.face_key).count();

    Ok(Fan {
        n,
        rays,
        cones,
        tuples,
        face_keys,
        psum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::polytope::newton_polytope_with_origin;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex14_polytopes() -> Vec<Polytope> {
        let vs = vars(&["u", "v"]);
        let f1 = parse_polynomial("v*(u-1)", &vs).unwrap();
        let f2 = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
        vec![
            newton_polytope_with_origin(&f1).unwrap(),
            newton_polytope_with_origin(&f2).unwrap(),
        ]
    }

    #[test]
    fn fan_of_example_map() {
        let polys = ex14_polytopes();
        let fan = normal_fan(&polys).unwrap();
        let mut rays = fan.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 1], vec![0, -1], vec![1, 0]]);
        // zero cone + 3 rays + 3 maximal cones
        assert_eq!(fan.cones().len(), 7);
        for c in fan.cones() {
            assert_eq!(c.dim + fan.tuple_of(c.id).tdim, 2);
        }
        // the couple minimized by (1,0): left edges of both triangles
        let id = fan.smallest_cone_containing(&[1, 0]).unwrap();
        let t = fan.tuple_of(id);
        assert_eq!(t.members[0].points, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(t.members[1].points, vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(t.tdim, 1);
        // top-edge couple minimized by (0,-1)
        let id = fan.smallest_cone_containing(&[0, -1]).unwrap();
        let t = fan.tuple_of(id);
        assert_eq!(t.members[0].points, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(
            t.members[1].points,
            vec![vec![0, 2], vec![1, 2], vec![2, 2]]
        );
        // diagonal couple minimized by (-1,1)
        let id = fan.smallest_cone_containing(&[-1, 1]).unwrap();
        let t = fan.tuple_of(id);
        assert_eq!(t.members[0].points, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(t.members[1].points, vec![vec![0, 0], vec![2, 2]]);
    }

    #[test]
    fn univariate_fan() {
        let vs = vars(&["x"]);
        let f = parse_polynomial("x^3 + 2*x + 1", &vs).unwrap();
        let p = newton_polytope_with_origin(&f).unwrap();
        let fan = normal_fan(&[p]).unwrap();
        let mut dims: Vec<usize> = fan.cones().iter().map(|c| c.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![0, 1, 1]);
        let mut rays = fan.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn duality_and_argmin_consistency() {
        let polys = ex14_polytopes();
        let fan = normal_fan(&polys).unwrap();
        // duality: C ⊆ C' iff tuple(C') ⪯ tuple(C)
        for a in fan.cones() {
            for b in fan.cones() {
                let face = fan.is_face_of(a.id, b.id);
                let sub = fan.tuple_of(b.id).is_subtuple_of(fan.tuple_of(a.id));
                assert_eq!(face, sub, "duality failed for cones {} {}", a.id, b.id);
            }
        }
        // a sweep of directions: argmin tuple equals the containing cone's
        for k in 0..360 {
            let th = (k as f64) * std::f64::consts::PI / 180.0;
            let alpha = vec![
                (1000.0 * th.cos()).round() as i64,
                (1000.0 * th.sin()).round() as i64,
            ];
            if alpha.iter().all(|&x| x == 0) {
                continue;
            }
            let id = fan.smallest_cone_containing(&alpha).unwrap();
            let (members, _) = minimized_tuple_at(&polys, &alpha);
            assert_eq!(
                fan.tuple_of(id).key(),
                members.iter().map(|m| m.points.clone()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn flags_are_chains_of_subtuples() {
        let polys = ex14_polytopes();
        let fan = normal_fan(&polys).unwrap();
        for c in fan.cones() {
            if c.dim == 0 {
                continue;
            }
            let tuple = fan.tuple_of(c.id);
            let theta: Vec<usize> = (0..2)
                .filter(|&i| tuple.members[i].contains_origin())
                .collect();
            let flag = fan.cone_flag(c.id, &theta).unwrap();
            assert_eq!(flag[c.dim - 1], c.id);
            for (j, w) in flag.iter().enumerate() {
                assert_eq!(fan.cone(*w).dim, j + 1);
            }
            let tuples = fan.flag_tuples(&flag);
            for w in tuples.windows(2) {
                assert!(w[0].is_subtuple_of(w[1]));
            }
        }
    }
}
