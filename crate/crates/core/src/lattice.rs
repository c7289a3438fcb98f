//! Chain transformations: unimodular integer matrices adapted to a flag of
//! minimized tuples. The constructed basis e~_1..e~_n spans each flag
//! lattice L^j ∩ Z^n by its first j vectors and places every shifted
//! support point of the j-th flag tuple into the nonnegative span of the
//! first j vectors, so the transformed systems become polynomials whose
//! truncations realize the face restrictions.

use crate::fan::{Fan, FaceTuple};
use crate::mat::{self, IVec};
use crate::poly::{Expo, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ChainTransformation {
    /// Exponent action a -> U a (rows).
    pub u: Vec<IVec>,
    /// U^{-1}; its columns are the adapted basis vectors e~_1..e~_n.
    pub u_inv: Vec<IVec>,
    /// The flag gamma^0 ⪯ … ⪯ gamma^{n-1} (gamma^j has tuple dimension j).
    pub flag: Vec<FaceTuple>,
    /// gamma^0: one vertex per map component.
    pub base_vertex: Vec<Expo>,
    /// Position (= tuple dimension) of the tuple this transformation serves.
    pub target_index: usize,
}

impl ChainTransformation {
    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn target_tuple(&self) -> &FaceTuple {
        &self.flag[self.target_index]
    }

    pub fn basis_vector(&self, j: usize) -> IVec {
        self.u_inv.iter().map(|row| row[j]).collect()
    }

    /// A second valid chain transformation for the same flag: replace
    /// e~_n by e~_n - e~_1. Coordinates transform by c_1 += c_n, which
    /// preserves nonnegativity and every truncation pattern, and the first
    /// j basis vectors still span L^j ∩ Z^n.
    pub fn sheared_alternative(&self) -> Result<ChainTransformation> {
        let n = self.n();
        if n < 2 {
            return Err(Error::InvalidChain("no shear available in dimension 1".into()));
        }
        let mut u_inv = self.u_inv.clone();
        for row in u_inv.iter_mut() {
            row[n - 1] -= row[0];
        }
        let u = mat::inverse_unimodular(&u_inv)?;
        Ok(ChainTransformation {
            u,
            u_inv,
            flag: self.flag.clone(),
            base_vertex: self.base_vertex.clone(),
            target_index: self.target_index,
        })
    }
}

/// Shifted generators of the flag level j: all a - gamma^0_i with a running
/// over the points of gamma^j_i (or over the full supports for j = n).
fn level_vectors(
    flag: &[FaceTuple],
    base: &[Expo],
    polytopes: &[crate::polytope::Polytope],
    j: usize,
) -> Vec<IVec> {
    let n = base.len();
    let mut out = vec![];
    for i in 0..n {
        let pts: &[Expo] = if j < flag.len() {
            &flag[j].members[i].points
        } else {
            polytopes[i].points()
        };
        for a in pts {
            let d: IVec = a.iter().zip(&base[i]).map(|(&x, &y)| x - y).collect();
            if d.iter().any(|&v| v != 0) {
                out.push(d);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Builds a gamma-chain transformation for the given flag of tuples.
///
/// The basis is grown one vector at a time: extend a lattice basis of
/// L^{j-1} ∩ Z^n to L^j ∩ Z^n (Hermite-normal-form machinery), orient the
/// new vector by the half-space carrying the level-j supports, then shear
/// it by earlier basis vectors just enough to land every shifted level-j
/// support point in the nonnegative span.
pub fn chain_transformation(
    fan: &Fan,
    flag_cones: &[usize],
    polytopes: &[crate::polytope::Polytope],
    target_tdim: usize,
) -> Result<ChainTransformation> {
    let n = fan.ambient_dim();
    if flag_cones.len() != n {
        return Err(Error::InvalidChain(format!(
            "flag must have {} cones, got {}",
            n,
            flag_cones.len()
        )));
    }
    let flag: Vec<FaceTuple> = fan.flag_tuples(flag_cones).into_iter().cloned().collect();
    for (j, t) in flag.iter().enumerate() {
        if t.tdim != j {
            return Err(Error::InvalidChain(format!(
                "flag tuple at position {} has tuple dimension {}",
                j, t.tdim
            )));
        }
    }
    for w in flag.windows(2) {
        if !w[0].is_subtuple_of(&w[1]) {
            return Err(Error::InvalidChain("flag tuples are not a subtuple chain".into()));
        }
    }
    let base: Vec<Expo> = flag[0]
        .members
        .iter()
        .map(|m| {
            debug_assert_eq!(m.points.len(), 1);
            m.points[0].clone()
        })
        .collect();

    let mut basis: Vec<IVec> = vec![]; // e~_1..e~_j so far
    for j in 1..=n {
        let dj = level_vectors(&flag, &base, polytopes, j);
        let lattice = mat::saturated_span_basis(&dj, n);
        if lattice.len() != j {
            return Err(Error::InvalidChain(format!(
                "flag level {} spans dimension {}, expected {}",
                j,
                lattice.len(),
                j
            )));
        }
        // Coordinates of the current basis inside the level lattice.
        let prior_coords: Vec<IVec> = basis
            .iter()
            .map(|e| mat::coords_in_basis(&lattice, e))
            .collect::<Result<_>>()?;
        let w = mat::extend_to_unimodular(&prior_coords)?;
        let mut new_vec = vec![0i64; n];
        for (k, &wk) in w.iter().enumerate() {
            for (a, b) in new_vec.iter_mut().zip(&lattice[k]) {
                *a += wk * b;
            }
        }
        basis.push(new_vec);
        // Coordinates of the level vectors in the partial basis.
        let mut coords: Vec<IVec> = dj
            .iter()
            .map(|d| mat::coords_in_basis(&basis, d))
            .collect::<Result<_>>()?;
        // Orient: the new last coordinate must be nonnegative on the level.
        let has_pos = coords.iter().any(|c| c[j - 1] > 0);
        let has_neg = coords.iter().any(|c| c[j - 1] < 0);
        if has_pos && has_neg {
            return Err(Error::InvalidChain(
                "level supports are not on one side of the previous flag space".into(),
            ));
        }
        if has_neg {
            for x in basis[j - 1].iter_mut() {
                *x = -*x;
            }
            for c in coords.iter_mut() {
                c[j - 1] = -c[j - 1];
            }
        }
        // Shear by earlier basis vectors to make all earlier coordinates
        // nonnegative; take the least shear that works.
        for k in 0..j - 1 {
            let mut min_ratio: Option<i64> = None; // floor of min c_k / c_j
            for c in &coords {
                if c[j - 1] > 0 {
                    let r = div_floor(c[k], c[j - 1]);
                    min_ratio = Some(match min_ratio {
                        None => r,
                        Some(m) => m.min(r),
                    });
                }
            }
            let m = min_ratio.unwrap_or(0).min(0);
            if m != 0 {
                let ek = basis[k].clone();
                for (a, b) in basis[j - 1].iter_mut().zip(&ek) {
                    *a += m * b;
                }
                for c in coords.iter_mut() {
                    c[k] -= m * c[j - 1];
                }
            }
        }
        if coords.iter().any(|c| c[..j].iter().any(|&x| x < 0)) {
            return Err(Error::InvalidChain(
                "shearing failed to make level coordinates nonnegative".into(),
            ));
        }
    }

    let u_inv: Vec<IVec> = (0..n)
        .map(|r| (0..n).map(|c| basis[c][r]).collect())
        .collect();
    let u = mat::inverse_unimodular(&u_inv)?;
    Ok(ChainTransformation {
        u,
        u_inv,
        flag,
        base_vertex: base,
        target_index: target_tdim,
    })
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Validator report for a chain transformation.
#[derive(Clone, Debug, Default)]
pub struct ChainReport {
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Independent validator: determinant, per-level support conditions, the
/// restriction identity as exact polynomial equalities, the constant-term
/// criterion for the target tuple, and the lattice-index-1 property of
/// every level via Hermite normal form.
pub fn verify_chain(
    ct: &ChainTransformation,
    components: &[Polynomial],
    polytopes: &[crate::polytope::Polytope],
) -> ChainReport {
    let mut rep = ChainReport::default();
    let n = ct.n();
    let d = mat::det(&ct.u);
    if d != 1 && d != -1 {
        rep.violations.push(format!("det U = {}", d));
        return rep;
    }
    if mat::mat_mul(&ct.u, &ct.u_inv) != mat::identity(n) {
        rep.violations.push("stored inverse is wrong".into());
    }

    // Support conditions: for each flag level j and member i, U(a - v_i)
    // vanishes beyond position j and is nonnegative up to j; for the full
    // supports (level n) everything must be nonnegative.
    for j in 0..=n {
        for i in 0..n {
            let pts: Vec<Expo> = if j < n {
                ct.flag[j].members[i].points.clone()
            } else {
                polytopes[i].points().to_vec()
            };
            for a in &pts {
                let shifted: IVec = a
                    .iter()
                    .zip(&ct.base_vertex[i])
                    .map(|(&x, &y)| x - y)
                    .collect();
                let w = mat::mat_vec(&ct.u, &shifted);
                if w.iter().any(|&x| x < 0) {
                    rep.violations.push(format!(
                        "level {}: member {} point {:?} maps to {:?} with a negative entry",
                        j, i, a, w
                    ));
                }
                if j < n && w[j..].iter().any(|&x| x != 0) {
                    rep.violations.push(format!(
                        "level {}: member {} point {:?} maps to {:?}, nonzero beyond position {}",
                        j, i, a, w, j
                    ));
                }
            }
        }
    }

    // Restriction identity: truncating the transformed component at the
    // first j variables equals transforming the face restriction.
    for i in 0..n {
        let shifted = components[i].shift(
            &ct.base_vertex[i].iter().map(|&x| -x).collect::<Vec<_>>(),
        );
        let g = match shifted.monomial_substitute(&ct.u) {
            Ok(g) => g,
            Err(e) => {
                rep.violations.push(format!("transform failed for component {}: {}", i, e));
                continue;
            }
        };
        if g.has_negative_exponent() {
            rep.violations
                .push(format!("transformed component {} has a negative exponent", i));
            continue;
        }
        for j in 0..n {
            let truncated = g.set_trailing_zero(j);
            let restricted = components[i]
                .restrict_to_points(&ct.flag[j].members[i].points)
                .shift(&ct.base_vertex[i].iter().map(|&x| -x).collect::<Vec<_>>());
            let expected = match restricted.monomial_substitute(&ct.u) {
                Ok(p) => p,
                Err(e) => {
                    rep.violations.push(format!("restricted transform failed: {}", e));
                    continue;
                }
            };
            if truncated != expected {
                rep.violations.push(format!(
                    "restriction identity fails for component {} at level {}",
                    i, j
                ));
            }
        }
        // Constant-term criterion: the -y_i offset monomial z^{U(-v_i)} is
        // constant exactly when the target member is an origin face.
        let w = mat::mat_vec(
            &ct.u,
            &ct.base_vertex[i].iter().map(|&x| -x).collect::<Vec<_>>(),
        );
        let offset_is_constant = w.iter().all(|&x| x == 0);
        let target_is_origin = ct.target_tuple().members[i].contains_origin();
        if offset_is_constant != target_is_origin {
            rep.violations.push(format!(
                "constant-term criterion fails for component {}: offset constant = {}, origin face = {}",
                i, offset_is_constant, target_is_origin
            ));
        }
        if w.iter().any(|&x| x < 0) {
            rep.violations
                .push(format!("offset monomial of component {} has negative exponent", i));
        }
    }

    // Lattice-basis property: the first j basis vectors span L^j ∩ Z^n
    // with index 1.
    for j in 1..=n {
        let dj = level_vectors(&ct.flag, &ct.base_vertex, polytopes, j);
        let lattice = mat::saturated_span_basis(&dj, n);
        if lattice.len() != j {
            rep.violations
                .push(format!("level {} does not span a {}-dimensional lattice", j, j));
            continue;
        }
        let mut coords = vec![];
        let mut out_of_lattice = false;
        for k in 0..j {
            match mat::coords_in_basis(&lattice, &ct.basis_vector(k)) {
                Ok(c) => coords.push(c),
                Err(_) => {
                    rep.violations
                        .push(format!("basis vector {} is outside the level-{} lattice", k + 1, j));
                    out_of_lattice = true;
                }
            }
        }
        if !out_of_lattice {
            let idx = mat::det(&coords).abs();
            if idx != 1 {
                rep.violations
                    .push(format!("level {} sublattice has index {}", j, idx));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::fan::normal_fan;
    use crate::poly::parse_polynomial;
    use crate::polytope::{newton_polytope_with_origin, Polytope};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex14() -> (Vec<Polynomial>, Vec<Polytope>, Fan) {
        let vs = vars(&["u", "v"]);
        let f1 = parse_polynomial("v*(u-1)", &vs).unwrap();
        let f2 = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
        let polys = vec![
            newton_polytope_with_origin(&f1).unwrap(),
            newton_polytope_with_origin(&f2).unwrap(),
        ];
        let fan = normal_fan(&polys).unwrap();
        (vec![f1, f2], polys, fan)
    }

    fn flag_for(fan: &Fan, polys: &[Polytope], alpha: &[i64]) -> Vec<usize> {
        let id = fan.smallest_cone_containing(alpha).unwrap();
        let class = classify(fan.tuple_of(id), fan, polys);
        fan.cone_flag(id, &class.theta).unwrap()
    }

    /// Wraps a hand-given matrix as a ChainTransformation over the flag
    /// picked out by one direction per flag position.
    pub(crate) fn with_matrix_on_flag(
        fan: &Fan,
        flag_dirs: &[&[i64]],
        u: Vec<IVec>,
    ) -> ChainTransformation {
        let flag_cones: Vec<usize> = flag_dirs
            .iter()
            .map(|d| fan.smallest_cone_containing(d).unwrap())
            .collect();
        for (j, &id) in flag_cones.iter().enumerate() {
            assert_eq!(fan.cone(id).dim, j + 1, "flag direction {} has wrong cone dim", j);
        }
        let flag: Vec<FaceTuple> = fan.flag_tuples(&flag_cones).into_iter().cloned().collect();
        let base = flag[0]
            .members
            .iter()
            .map(|m| m.points[0].clone())
            .collect();
        let u_inv = mat::inverse_unimodular(&u).unwrap();
        let target_index = fan.tuple_of(flag_cones[0]).tdim;
        ChainTransformation {
            u,
            u_inv,
            flag,
            base_vertex: base,
            target_index,
        }
    }

    #[test]
    fn paper_matrices_validate() {
        let (f, polys, fan) = ex14();
        // gamma-couple (minimized by (1,0)), flag through the 2-cone of the
        // origin vertex couple, with U = [[-1,1],[1,0]]
        let ct = with_matrix_on_flag(&fan, &[&[1, 0], &[0, 1]], vec![vec![-1, 1], vec![1, 0]]);
        assert_eq!(ct.base_vertex, vec![vec![0, 0], vec![0, 0]]);
        let rep = verify_chain(&ct, &f, &polys);
        assert!(rep.ok(), "violations: {:?}", rep.violations);

        // delta-couple (minimized by (0,-1)), flag through the vertex
        // couple ((0,1),(0,2)), with V = [[1,0],[0,-1]]
        let ct = with_matrix_on_flag(&fan, &[&[0, -1], &[1, -2]], vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(ct.base_vertex, vec![vec![0, 1], vec![0, 2]]);
        let rep = verify_chain(&ct, &f, &polys);
        assert!(rep.ok(), "violations: {:?}", rep.violations);

        // omega-couple (minimized by (-1,1)), origin flag, W = [[1,0],[-1,1]]
        let ct = with_matrix_on_flag(&fan, &[&[-1, 1], &[0, 1]], vec![vec![1, 0], vec![-1, 1]]);
        let rep = verify_chain(&ct, &f, &polys);
        assert!(rep.ok(), "violations: {:?}", rep.violations);
    }

    #[test]
    fn constructed_chains_validate() {
        let (f, polys, fan) = ex14();
        for alpha in [[1i64, 0], [0, -1], [-1, 1]] {
            let id = fan.smallest_cone_containing(&alpha).unwrap();
            let flag = flag_for(&fan, &polys, &alpha);
            let ct = chain_transformation(&fan, &flag, &polys, fan.tuple_of(id).tdim).unwrap();
            let rep = verify_chain(&ct, &f, &polys);
            assert!(rep.ok(), "alpha {:?}: {:?}", alpha, rep.violations);
            let alt = ct.sheared_alternative().unwrap();
            assert_ne!(alt.u, ct.u);
            let rep = verify_chain(&alt, &f, &polys);
            assert!(rep.ok(), "sheared alpha {:?}: {:?}", alpha, rep.violations);
        }
    }

    #[test]
    fn identity_fails_on_nonorigin_flag() {
        let (f, polys, fan) = ex14();
        // delta-couple's flag has base vertex away from the origin; the
        // identity matrix cannot satisfy the support conditions.
        let ct = with_matrix_on_flag(&fan, &[&[0, -1], &[1, -2]], mat::identity(2));
        let rep = verify_chain(&ct, &f, &polys);
        assert!(!rep.ok());
    }
}
