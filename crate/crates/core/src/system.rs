//! Restricted sub-systems (f - y)_gamma, the transformed systems
//! U*(x^{-gamma^0_i}(f_i - y_i)) with their symbolic -y_i offsets, and
//! symbolic Jacobian determinants, plus polynomial determinants and
//! Sylvester resultants used for implicitization and elimination.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::lattice::ChainTransformation;
use crate::mat::{self, IVec};
use crate::poly::{Expo, Polynomial, Rat};
use crate::polytope::Face;
use crate::{Error, Result};

/// The formal parameter y_i subtracted from f_i; it only ever appears in
/// the constant-or-monomial offset of restricted/transformed systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicOffset {
    pub index: usize,
}

/// Keeps exactly the terms of `p` supported on the face. The symbolic
/// offset -y_i is attached iff `subtract_offset` and the face contains the
/// origin (the origin is in supp(p - y_i) for generic y_i).
pub fn restrict_to_face(
    p: &Polynomial,
    face: &Face,
    subtract_offset: Option<SymbolicOffset>,
) -> Result<(Polynomial, Option<SymbolicOffset>)> {
    let n = p.nvars();
    for q in &face.points {
        let in_support = !p.coeff(q).is_zero();
        let is_origin = q.iter().all(|&x| x == 0);
        if !in_support && !is_origin {
            return Err(Error::FaceNotInPolytope);
        }
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: q.len(),
            });
        }
    }
    let restricted = p.restrict_to_points(&face.points);
    let offset = match subtract_offset {
        Some(off) if face.contains_origin() => Some(off),
        _ => None,
    };
    Ok((restricted, offset))
}

/// One transformed component g_i = U*(x^{-gamma^0_i}(f_i - y_i)):
/// a polynomial z-part plus the offset term -y_i z^{w_i}.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedComponent {
    pub z_part: Polynomial,
    /// Exponent w_i of the -y_i monomial, when the offset is present.
    pub offset: Option<Expo>,
}

impl TransformedComponent {
    /// The component with the trailing variables (beyond `keep`) set to 0.
    pub fn truncate(&self, keep: usize) -> TransformedComponent {
        TransformedComponent {
            z_part: self.z_part.set_trailing_zero(keep),
            offset: self.offset.as_ref().and_then(|w| {
                if w[keep..].iter().all(|&x| x == 0) {
                    Some(w.clone())
                } else {
                    None
                }
            }),
        }
    }
}

/// Transforms f_i (with an optional symbolic offset) through a chain
/// transformation: shifts by the base vertex, rekeys exponents by U, and
/// tracks the offset monomial. Errors if a negative exponent appears,
/// which signals an invalid chain transformation.
pub fn ubar_transform(
    f_i: &Polynomial,
    offset: Option<SymbolicOffset>,
    ct: &ChainTransformation,
    component: usize,
) -> Result<TransformedComponent> {
    let v = &ct.base_vertex[component];
    let neg_v: IVec = v.iter().map(|&x| -x).collect();
    let z_part = f_i.shift(&neg_v).monomial_substitute(&ct.u)?;
    if z_part.has_negative_exponent() {
        return Err(Error::InvalidChain(format!(
            "transformed component {} has a negative exponent",
            component
        )));
    }
    let offset = match offset {
        Some(off) => {
            debug_assert_eq!(off.index, component);
            let w = mat::mat_vec(&ct.u, &neg_v);
            if w.iter().any(|&x| x < 0) {
                return Err(Error::InvalidChain(format!(
                    "offset monomial of component {} has a negative exponent",
                    component
                )));
            }
            Some(w)
        }
        None => None,
    };
    Ok(TransformedComponent { z_part, offset })
}

/// The full transformed system Ubar*(f - y) for a chain transformation.
#[derive(Clone, Debug)]
pub struct TransformedSystem {
    pub components: Vec<TransformedComponent>,
    /// Tuple dimension m of the served tuple: the torus T_m x {0}^{n-m}
    /// carries the relevant solutions.
    pub m: usize,
}

pub fn transform_map(
    components: &[Polynomial],
    ct: &ChainTransformation,
) -> Result<TransformedSystem> {
    let transformed = components
        .iter()
        .enumerate()
        .map(|(i, f)| ubar_transform(f, Some(SymbolicOffset { index: i }), ct, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformedSystem {
        components: transformed,
        m: ct.target_index,
    })
}

/// The y-free restricted system Ubar* f_gamma in the first m variables:
/// z-parts of the truncated components, projected to m variables.
pub fn restricted_zero_system(sys: &TransformedSystem) -> Vec<Polynomial> {
    sys.components
        .iter()
        .map(|c| c.truncate(sys.m).z_part.project_to(sys.m))
        .collect()
}

/// Derivative of the monomial z^w with respect to z_j, evaluated at a
/// rational point.
fn monomial_derivative_at(w: &[i64], j: usize, z: &[Rat]) -> Rat {
    if w[j] == 0 {
        return Rat::zero();
    }
    let mut t = crate::poly::rat(w[j]);
    for (i, &k) in w.iter().enumerate() {
        let e = if i == j { k - 1 } else { k };
        debug_assert!(e >= 0);
        for _ in 0..e {
            t *= &z[i];
        }
    }
    t
}

fn monomial_derivative_at_c64(w: &[i64], j: usize, z: &[Complex64]) -> Complex64 {
    if w[j] == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut t = Complex64::new(w[j] as f64, 0.0);
    for (i, &k) in w.iter().enumerate() {
        let e = if i == j { k - 1 } else { k };
        t *= z[i].powi(e as i32);
    }
    t
}

/// Symbolic Jacobian determinant J(z, y) of the transformed system,
/// evaluated at an exact point z. The result is a polynomial in the n
/// offset variables y_1..y_n (row i of the Jacobian is affine in y_i, so
/// the determinant is multilinear in y).
pub fn jacobian_det_at(sys: &TransformedSystem, z: &[Rat]) -> Result<Polynomial> {
    let n = sys.components.len();
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    // Row i, column j: a[i][j] + y_i * b[i][j].
    let mut a = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![vec![Rat::zero(); n]; n];
    for (i, comp) in sys.components.iter().enumerate() {
        for j in 0..n {
            a[i][j] = comp.z_part.partial_derivative(j).eval_rat(z);
            if let Some(w) = &comp.offset {
                b[i][j] = -monomial_derivative_at(w, j, z);
            }
        }
    }
    // det over subsets S of rows taking the y-part.
    let mut det = Polynomial::zero(n);
    for s in 0u32..(1 << n) {
        let mut rows: Vec<&[Rat]> = Vec::with_capacity(n);
        for i in 0..n {
            rows.push(if s & (1 << i) != 0 { &b[i] } else { &a[i] });
        }
        let d = det_rat(&rows);
        if d.is_zero() {
            continue;
        }
        let e: Expo = (0..n).map(|i| ((s >> i) & 1) as i64).collect();
        det.add_term(&e, d);
    }
    Ok(det)
}

/// Numeric variant of `jacobian_det_at` for non-rational roots; returns
/// the multilinear coefficients as a map from y-subsets to complex values.
pub fn jacobian_det_at_c64(
    sys: &TransformedSystem,
    z: &[Complex64],
) -> HashMap<u32, Complex64> {
    let n = sys.components.len();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut b = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, comp) in sys.components.iter().enumerate() {
        for j in 0..n {
            a[i][j] = comp.z_part.partial_derivative(j).eval_c64(z);
            if let Some(w) = &comp.offset {
                b[i][j] = -monomial_derivative_at_c64(w, j, z);
            }
        }
    }
    let mut out = HashMap::new();
    for s in 0u32..(1 << n) {
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                if s & (1 << i) != 0 {
                    b[i].clone()
                } else {
                    a[i].clone()
                }
            })
            .collect();
        let d = det_c64(&rows);
        if d.norm() > 0.0 {
            out.insert(s, d);
        }
    }
    out
}

fn det_rat(rows: &[&[Rat]]) -> Rat {
    let n = rows.len();
    match n {
        0 => Rat::from_integer(1.into()),
        1 => rows[0][0].clone(),
        2 => &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0],
        _ => {
            let mut acc = Rat::zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rat>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let refs: Vec<&[Rat]> = minor.iter().map(|r| r.as_slice()).collect();
                let term = &rows[0][j] * det_rat(&refs);
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

fn det_c64(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        _ => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let minor: Vec<Vec<Complex64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += s * rows[0][j] * det_c64(&minor);
            }
            acc
        }
    }
}

/// Determinant of a square matrix of polynomials, by expansion along the
/// first column with memoization on row subsets.
pub fn det_poly(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::constant(0, crate::poly::rat(1));
    }
    let nv = m[0][0].nvars();
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    fn go(
        m: &[Vec<Polynomial>],
        rows: u64,
        col: usize,
        nv: usize,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if rows == 0 {
            return Polynomial::constant(nv, crate::poly::rat(1));
        }
        if let Some(p) = memo.get(&rows) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(nv);
        let mut sign = true;
        let n = m.len();
        for r in 0..n {
            if rows & (1 << r) == 0 {
                continue;
            }
            let entry = &m[r][col];
            if !entry.is_zero() {
                let sub = go(m, rows & !(1 << r), col + 1, nv, memo);
                let term = entry.mul(&sub);
                acc = if sign { acc.add(&term) } else { acc.sub(&term) };
            }
            sign = !sign;
        }
        memo.insert(rows, acc.clone());
        acc
    }
    go(m, (1u64 << n) - 1, 0, nv, &mut memo)
}

/// Sylvester resultant of p and q with respect to variable `var`. The
/// result has degree 0 in `var`.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: usize) -> Polynomial {
    let nv = p.nvars();
    assert_eq!(q.nvars(), nv);
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero(nv);
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let dp = pc.len() - 1;
    let dq = qc.len() - 1;
    if dp == 0 && dq == 0 {
        return Polynomial::constant(nv, crate::poly::rat(1));
    }
    if dp == 0 {
        // Res(a, q) = a^{deg q}
        let mut acc = Polynomial::constant(nv, crate::poly::rat(1));
        for _ in 0..dq {
            acc = acc.mul(&pc[0]);
        }
        return acc;
    }
    if dq == 0 {
        let mut acc = Polynomial::constant(nv, crate::poly::rat(1));
        for _ in 0..dp {
            acc = acc.mul(&qc[0]);
        }
        return acc;
    }
    let size = dp + dq;
    let zero = Polynomial::zero(nv);
    let mut mtx = vec![vec![zero.clone(); size]; size];
    for row in 0..dq {
        for (k, c) in pc.iter().enumerate() {
            mtx[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in qc.iter().enumerate() {
            mtx[dq + row][row + dq - k] = c.clone();
        }
    }
    det_poly(&mtx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::fan::normal_fan;
    use crate::lattice::chain_transformation;
    use crate::poly::{parse_polynomial, rat};
    use crate::polytope::{newton_polytope_with_origin, Polytope};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex14() -> (Vec<Polynomial>, Vec<Polytope>, crate::fan::Fan) {
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

    fn chain_for(
        fan: &crate::fan::Fan,
        polys: &[Polytope],
        flag_dirs: &[&[i64]],
    ) -> ChainTransformation {
        let flag: Vec<usize> = flag_dirs
            .iter()
            .map(|d| fan.smallest_cone_containing(d).unwrap())
            .collect();
        let m = fan.tuple_of(flag[0]).tdim;
        let _ = classify(fan.tuple_of(flag[0]), fan, polys);
        chain_transformation(fan, &flag, polys, m).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let (f, polys, _) = ex14();
        // left edge of New(f_1 - y_1): -v with the offset attached
        let face = polys[0].minimized_face(&[1, 0]);
        let (r, off) =
            restrict_to_face(&f[0], &face, Some(SymbolicOffset { index: 0 })).unwrap();
        assert_eq!(r, parse_polynomial("-v", &vars(&["u", "v"])).unwrap());
        assert!(off.is_some());

        // whole polytope: identity restriction
        let whole = polys[0].minimized_face(&[0, 0]);
        let (r, _) = restrict_to_face(&f[0], &whole, Some(SymbolicOffset { index: 0 })).unwrap();
        assert_eq!(r, f[0]);

        // vertex (2,2) of New(f_2 - y_2): the monomial u^2 v^2
        let v = polys[1].minimized_face(&[-1, -1]);
        assert_eq!(v.points, vec![vec![2, 2]]);
        let (r, off) = restrict_to_face(&f[1], &v, Some(SymbolicOffset { index: 1 })).unwrap();
        assert_eq!(r, parse_polynomial("u^2*v^2", &vars(&["u", "v"])).unwrap());
        assert!(off.is_none());
    }

    #[test]
    fn transformed_systems_match_the_worked_example() {
        let (f, polys, fan) = ex14();
        let zvars = vars(&["z1", "z2"]);

        // gamma-couple: (-z1 - y1 + z2, 2 z1^2 - y2 + z2-terms)
        let ct = chain_for(&fan, &polys, &[&[1, 0], &[0, 1]]);
        let sys = transform_map(&f, &ct).unwrap();
        let restricted = restricted_zero_system(&sys);
        assert_eq!(
            restricted[0],
            parse_polynomial("-z1", &vars(&["z1"])).unwrap()
        );
        assert_eq!(
            restricted[1],
            parse_polynomial("2*z1^2", &vars(&["z1"])).unwrap()
        );
        // offsets are constants for this origin couple
        assert_eq!(sys.components[0].offset, Some(vec![0, 0]));
        assert_eq!(sys.components[1].offset, Some(vec![0, 0]));
        let _ = zvars;

        // delta-couple: (z1 - 1, (z1 - 1)(z1 - 2)) after truncation
        let ct = chain_for(&fan, &polys, &[&[0, -1], &[1, -2]]);
        let sys = transform_map(&f, &ct).unwrap();
        let restricted = restricted_zero_system(&sys);
        let t = vars(&["z1"]);
        assert_eq!(restricted[0], parse_polynomial("z1 - 1", &t).unwrap());
        assert_eq!(
            restricted[1],
            parse_polynomial("(z1-1)*(z1-2)", &t).unwrap()
        );
        // offsets are genuine monomials (the couple is not semi-origin)
        assert!(sys.components[0].offset.as_ref().unwrap().iter().any(|&x| x > 0));

        // omega-couple: (z1 - y1, z1^2 - y2)
        let ct = chain_for(&fan, &polys, &[&[-1, 1], &[0, 1]]);
        let sys = transform_map(&f, &ct).unwrap();
        let restricted = restricted_zero_system(&sys);
        assert_eq!(restricted[0], parse_polynomial("z1", &t).unwrap());
        assert_eq!(restricted[1], parse_polynomial("z1^2", &t).unwrap());
        assert_eq!(sys.components[0].offset, Some(vec![0, 0]));
        assert_eq!(sys.components[1].offset, Some(vec![0, 0]));
    }

    #[test]
    fn jacobian_at_the_delta_root() {
        let (f, polys, fan) = ex14();
        let ct = chain_for(&fan, &polys, &[&[0, -1], &[1, -2]]);
        let sys = transform_map(&f, &ct).unwrap();
        // the restricted system (z1-1, (z1-1)(z1-2)) has the torus root z1 = 1
        let j = jacobian_det_at(&sys, &[rat(1), rat(0)]).unwrap();
        // J(1,0; y) is +-y1: linear in y1, no other terms
        assert_eq!(j.num_terms(), 1);
        let c = j.coeff(&[1, 0]);
        assert!(c == rat(1) || c == rat(-1), "coefficient {:?}", c);
    }

    #[test]
    fn resultant_eliminates() {
        let vs = vars(&["t", "y1", "y2"]);
        // y1 = t, y2 = t^2 -> y2 - y1^2
        let p = parse_polynomial("t - y1", &vs).unwrap();
        let q = parse_polynomial("t^2 - y2", &vs).unwrap();
        let r = resultant(&p, &q, 0);
        let expect = parse_polynomial("y1^2 - y2", &vs).unwrap();
        assert!(r == expect || r == expect.neg());
    }
}
