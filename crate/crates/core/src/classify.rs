//! Classification of minimized tuples: origin / strictly semi-origin /
//! not semi-origin, the origin-certification set theta, the basic test,
//! the almost-semi-origin slab criterion and the zero-dimensional-member
//! filter that gates which tuples contribute components.

use crate::fan::{Fan, FaceTuple};
use crate::mat::IVec;
use crate::polytope::{Face, Polytope};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TupleKind {
    Origin,
    StrictlySemiOrigin,
    NotSemiOrigin,
}

#[derive(Clone, Debug)]
pub struct TupleClass {
    pub kind: TupleKind,
    /// Indices i with gamma_i an origin face.
    pub theta: Vec<usize>,
    pub basic: bool,
    pub almost_semi_origin: bool,
    /// Witnessing (ray, member index) pairs for the slab condition.
    pub aso_witnesses: Vec<(IVec, usize)>,
    /// Item (c): every zero-dimensional member is the origin vertex.
    pub passes_zero_dim_filter: bool,
}

impl TupleClass {
    pub fn is_semi_origin(&self) -> bool {
        matches!(self.kind, TupleKind::Origin | TupleKind::StrictlySemiOrigin)
    }
}

/// An origin face has the zero vector as a vertex. Faces live in N^n, so
/// containing the origin already makes it a vertex.
pub fn is_origin_face(face: &Face) -> bool {
    face.contains_origin()
}

/// The slab criterion: gamma (not semi-origin) is almost semi-origin iff
/// some ray alpha' of its minimizing cone and some member index i satisfy
/// min <a, alpha'> over New(f_i - y_i) = -1, i.e. there is no lattice
/// hyperplane strictly between the face's supporting hyperplane and the
/// parallel one through the origin. For a primitive integer normal the
/// integer points realize every integer level, so the check is exact.
pub fn is_almost_semi_origin(
    tuple: &FaceTuple,
    fan: &Fan,
    polytopes: &[Polytope],
) -> Result<(bool, Vec<(IVec, usize)>)> {
    if tuple.members.iter().any(is_origin_face) {
        return Err(Error::InvalidClass(
            "almost-semi-origin test applies only to non-semi-origin tuples".into(),
        ));
    }
    let mut witnesses = vec![];
    for ray in fan.ray_vectors(tuple.cone) {
        for (i, poly) in polytopes.iter().enumerate() {
            if poly.min_value(&ray) == -1 {
                witnesses.push((ray.clone(), i));
            }
        }
    }
    Ok((!witnesses.is_empty(), witnesses))
}

/// Full classification of a minimized tuple of the fan.
pub fn classify(tuple: &FaceTuple, fan: &Fan, polytopes: &[Polytope]) -> TupleClass {
    let n = tuple.members.len();
    let theta: Vec<usize> = (0..n)
        .filter(|&i| is_origin_face(&tuple.members[i]))
        .collect();
    let kind = if theta.len() == n {
        TupleKind::Origin
    } else if !theta.is_empty() {
        TupleKind::StrictlySemiOrigin
    } else {
        TupleKind::NotSemiOrigin
    };
    let ambient = polytopes[0].ambient_dim();
    // Basic: all members inside one coordinate hyperplane {x_k = 0}.
    let basic = (0..ambient).any(|k| {
        tuple
            .members
            .iter()
            .all(|m| m.points.iter().all(|p| p[k] == 0))
    });
    let (almost_semi_origin, aso_witnesses) = if kind == TupleKind::NotSemiOrigin {
        is_almost_semi_origin(tuple, fan, polytopes).expect("non-semi-origin tuple")
    } else {
        (false, vec![])
    };
    let passes_zero_dim_filter = tuple
        .members
        .iter()
        .all(|m| m.dim() > 0 || m.contains_origin());
    TupleClass {
        kind,
        theta,
        basic,
        almost_semi_origin,
        aso_witnesses,
        passes_zero_dim_filter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::poly::parse_polynomial;
    use crate::polytope::newton_polytope_with_origin;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex14() -> (Vec<Polytope>, Fan) {
        let vs = vars(&["u", "v"]);
        let f1 = parse_polynomial("v*(u-1)", &vs).unwrap();
        let f2 = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
        let polys = vec![
            newton_polytope_with_origin(&f1).unwrap(),
            newton_polytope_with_origin(&f2).unwrap(),
        ];
        let fan = normal_fan(&polys).unwrap();
        (polys, fan)
    }

    #[test]
    fn origin_faces() {
        let (polys, _) = ex14();
        let vertex = polys[0].minimized_face(&[1, 1]);
        assert_eq!(vertex.points, vec![vec![0, 0]]);
        assert!(is_origin_face(&vertex));
        let top = polys[0].minimized_face(&[0, -1]);
        assert!(!is_origin_face(&top));
        let left = polys[0].minimized_face(&[1, 0]);
        assert!(is_origin_face(&left));
    }

    #[test]
    fn classify_example_couples() {
        let (polys, fan) = ex14();
        // gamma-couple, minimized by (1,0): origin and basic
        let id = fan.smallest_cone_containing(&[1, 0]).unwrap();
        let c = classify(fan.tuple_of(id), &fan, &polys);
        assert_eq!(c.kind, TupleKind::Origin);
        assert_eq!(c.theta, vec![0, 1]);
        assert!(c.basic);
        assert!(c.passes_zero_dim_filter);

        // omega-couple, minimized by (-1,1): origin, not basic
        let id = fan.smallest_cone_containing(&[-1, 1]).unwrap();
        let c = classify(fan.tuple_of(id), &fan, &polys);
        assert_eq!(c.kind, TupleKind::Origin);
        assert!(!c.basic);

        // delta-couple, minimized by (0,-1): almost semi-origin
        let id = fan.smallest_cone_containing(&[0, -1]).unwrap();
        let c = classify(fan.tuple_of(id), &fan, &polys);
        assert_eq!(c.kind, TupleKind::NotSemiOrigin);
        assert!(c.theta.is_empty());
        assert!(c.almost_semi_origin);
        assert!(!c.basic);
        // the short top edge of New(f_1 - y_1) at height 1 is the witness
        assert!(c.aso_witnesses.iter().any(|(r, i)| r == &vec![0, -1] && *i == 0));

        // the origin vertex couple: origin and basic
        let id = fan.smallest_cone_containing(&[1, 1]).unwrap();
        let c = classify(fan.tuple_of(id), &fan, &polys);
        assert_eq!(c.kind, TupleKind::Origin);
        assert!(c.basic);
        assert_eq!(fan.tuple_of(id).tdim, 0);
    }

    #[test]
    fn zero_dim_filter() {
        let (polys, fan) = ex14();
        // direction (1,-2) minimizes vertex (0,1) in the first triangle and
        // the top-right vertex (2,2) in the second: fails Item (c)
        let id = fan.smallest_cone_containing(&[1, -2]).unwrap();
        let t = fan.tuple_of(id);
        let c = classify(t, &fan, &polys);
        assert!(!c.passes_zero_dim_filter);
    }

    #[test]
    fn basic_tuples_passing_the_filter_are_never_almost_semi_origin() {
        // Among tuples passing the zero-dimensional-member filter, basic
        // excludes almost-semi-origin (a filtered basic tuple is origin).
        // The unfiltered vertex couple ((0,1),(0,2)) shows the filter is
        // needed: it is basic and satisfies the slab condition.
        let (polys, fan) = ex14();
        let mut saw_unfiltered_witness = false;
        for cone in fan.cones() {
            let c = classify(fan.tuple_of(cone.id), &fan, &polys);
            if c.passes_zero_dim_filter {
                assert!(!(c.basic && c.almost_semi_origin));
                if c.basic {
                    assert_eq!(c.kind, TupleKind::Origin);
                }
            } else if c.basic && c.almost_semi_origin {
                saw_unfiltered_witness = true;
            }
        }
        assert!(saw_unfiltered_witness);
    }
}
