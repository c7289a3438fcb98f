//! Gaussian rationals a + b i with exact arithmetic, used where complex
//! values must be computed without a floating-point noise floor (exact
//! polishing in the escape oracle, exact complex roots).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{Polynomial, Rat};

#[derive(Clone, Debug, PartialEq)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }

    pub fn zero() -> Self {
        GRat::new(Rat::zero(), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        GRat::new(re, Rat::zero())
    }

    /// Exact conversion of an f64 complex number (dyadic rationals).
    pub fn from_c64(z: Complex64) -> Option<Self> {
        Some(GRat::new(dyadic_from_f64(z.re)?, dyadic_from_f64(z.im)?))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            crate::poly::rat_to_f64(&self.re),
            crate::poly::rat_to_f64(&self.im),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GRat) -> GRat {
        GRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &GRat) -> GRat {
        GRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> GRat {
        GRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &GRat) -> GRat {
        GRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, c: &Rat) -> GRat {
        GRat::new(&self.re * c, &self.im * c)
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &GRat) -> Option<GRat> {
        let d = o.norm_sqr();
        if d.is_zero() {
            return None;
        }
        let num = self.mul(&GRat::new(o.re.clone(), -o.im.clone()));
        Some(GRat::new(num.re / &d, num.im / &d))
    }

    /// Rounds both parts to dyadic rationals with 2^bits denominators,
    /// bounding coefficient growth across exact Newton iterations.
    pub fn round_dyadic(&self, bits: u32) -> GRat {
        GRat::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }
}

fn dyadic_from_f64(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    Some(Rat::from_float(x).expect("finite f64 converts exactly"))
}

fn round_dyadic(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::from(1) << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    Rat::new(rounded, scale)
}

/// Exact evaluation of a polynomial at a Gaussian-rational point.
pub fn eval_poly(p: &Polynomial, x: &[GRat]) -> GRat {
    let mut acc = GRat::zero();
    for (e, c) in p.terms() {
        let mut t = GRat::from_rat(c.clone());
        for (i, &k) in e.iter().enumerate() {
            assert!(k >= 0, "exact evaluation of Laurent exponents unsupported");
            for _ in 0..k {
                t = t.mul(&x[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Solves a small Gaussian-rational linear system exactly. Returns None
/// when the matrix is singular.
pub fn solve_linear(mut a: Vec<Vec<GRat>>, mut b: Vec<GRat>) -> Option<Vec<GRat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].div(&a[col][col])?;
                for k in col..n {
                    let d = f.mul(&a[col][k]);
                    a[row][k] = a[row][k].sub(&d);
                }
                let d = f.mul(&b[col]);
                b[row] = b[row].sub(&d);
            }
        }
    }
    (0..n).map(|i| b[i].div(&a[i][i])).collect()
}

/// Squared Euclidean norm of a Gaussian-rational vector, as f64.
pub fn norm_sqr_f64(v: &[GRat]) -> f64 {
    let total = v
        .iter()
        .map(|g| g.norm_sqr())
        .fold(Rat::zero(), |acc, x| acc + x);
    let f = crate::poly::rat_to_f64(&total);
    if f.is_finite() {
        f
    } else if total.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    #[test]
    fn arithmetic_and_eval() {
        let i = GRat::new(rat(0), rat(1));
        assert_eq!(i.mul(&i), GRat::from_rat(rat(-1)));
        let z = GRat::new(rat(3), rat(4));
        assert_eq!(z.norm_sqr(), rat(25));
        let w = z.div(&z).unwrap();
        assert_eq!(w, GRat::from_rat(rat(1)));

        let vs: Vec<String> = vec!["x".into(), "y".into()];
        let p = parse_polynomial("x^2 + y", &vs).unwrap();
        let v = eval_poly(&p, &[i.clone(), GRat::from_rat(rat(2))]);
        assert_eq!(v, GRat::from_rat(rat(1)));
    }

    #[test]
    fn dyadic_rounding_and_linear_solve() {
        let x = GRat::new(crate::poly::rat_frac(1, 3), rat(0));
        let r = x.round_dyadic(20);
        let err = (&r.re - &x.re).abs();
        assert!(err < crate::poly::rat_frac(1, 1_000_000));

        // (1+i) z = 2i  =>  z = i (1 - i) = 1 + i
        let a = vec![vec![GRat::new(rat(1), rat(1))]];
        let b = vec![GRat::new(rat(0), rat(2))];
        let z = solve_linear(a, b).unwrap();
        assert_eq!(z[0], GRat::new(rat(1), rat(1)));
    }
}
