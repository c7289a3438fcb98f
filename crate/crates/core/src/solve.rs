//! Zero-dimensional solving over the torus: exact univariate machinery
//! (gcd chains, Sturm counts, rational and Gaussian-rational roots) with a
//! numeric fallback, and bivariate systems by resultant elimination.
//! Only roots with all coordinates nonzero are ever returned.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat_to_f64, Field, Polynomial, Rat};
use crate::system::resultant;
use crate::{Error, Result};

/// A root of a univariate polynomial, exact where possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Root {
    Rational(Rat),
    /// re + im*i with rational parts, im != 0.
    Gaussian(Rat, Rat),
    Real(f64),
    Complex(f64, f64),
}

impl Root {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Root::Rational(r) => Complex64::new(rat_to_f64(r), 0.0),
            Root::Gaussian(re, im) => Complex64::new(rat_to_f64(re), rat_to_f64(im)),
            Root::Real(x) => Complex64::new(*x, 0.0),
            Root::Complex(re, im) => Complex64::new(*re, *im),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Root::Rational(_) | Root::Gaussian(..))
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Root::Rational(_) | Root::Real(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Root::Rational(r) => r.is_zero(),
            Root::Gaussian(re, im) => re.is_zero() && im.is_zero(),
            Root::Real(x) => *x == 0.0,
            Root::Complex(re, im) => *re == 0.0 && *im == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Root::Rational(r) => Some(r),
            _ => None,
        }
    }
}

/// Dense univariate polynomial over Q, coefficients from degree 0 up.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Extracts the univariate polynomial in variable `var`; every other
    /// variable must only appear with exponent zero.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<UniPoly> {
        let mut coeffs = vec![Rat::zero(); (p.degree_in(var) + 1) as usize];
        for (e, c) in p.terms() {
            for (i, &k) in e.iter().enumerate() {
                if i != var && k != 0 {
                    return Err(Error::SolverCapability(
                        "polynomial is not univariate in the requested variable".into(),
                    ));
                }
                if k < 0 {
                    return Err(Error::SolverCapability("Laurent exponent in solver".into()));
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Complex64::new(rat_to_f64(c), 0.0);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.coeffs.last().unwrap();
        if rem.len() <= dd {
            return (UniPoly::zero(), UniPoly::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / lead;
            if !q.is_zero() {
                quot[k - dd] = q.clone();
                for j in 0..=dd {
                    let delta = &q * &d.coeffs[j];
                    rem[k - dd + j] -= delta;
                }
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn divide_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        UniPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Factors out z^k; returns k.
    pub fn strip_zero_roots(&mut self) -> usize {
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        self.coeffs.drain(..k);
        k
    }

    /// Yun's squarefree decomposition: f = prod a_i^i (up to a constant).
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        if self.degree() == 0 || self.is_zero() {
            return vec![];
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.degree() == 0 {
            return vec![(f, 1)];
        }
        let mut out = vec![];
        let mut b = f.divide_exact(&g).unwrap();
        let mut d = fp.divide_exact(&g).unwrap();
        let bp = b.derivative();
        let mut d_minus = UniPoly::new(
            d.coeffs
                .iter()
                .cloned()
                .zip(bp.coeffs.iter().cloned().chain(std::iter::repeat(Rat::zero())))
                .map(|(x, y)| x - y)
                .collect(),
        );
        if d.coeffs.len() < bp.coeffs.len() {
            // recompute with proper padding
            let mut coeffs = vec![Rat::zero(); bp.coeffs.len()];
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[i] = c.clone();
            }
            for (i, c) in bp.coeffs.iter().enumerate() {
                coeffs[i] -= c.clone();
            }
            d_minus = UniPoly::new(coeffs);
        }
        d = d_minus;
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.divide_exact(&a).unwrap_or_else(|| b.clone());
            if b.degree() == 0 {
                break;
            }
            let bp = b.derivative();
            let dq = d.divide_exact(&a).unwrap_or(d.clone());
            let mut coeffs = vec![Rat::zero(); dq.coeffs.len().max(bp.coeffs.len())];
            for (i, c) in dq.coeffs.iter().enumerate() {
                coeffs[i] = c.clone();
            }
            for (i, c) in bp.coeffs.iter().enumerate() {
                coeffs[i] -= c.clone();
            }
            d = UniPoly::new(coeffs);
            i += 1;
        }
        out
    }

    /// Sturm-sequence count of distinct real roots in (a, b].
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(UniPoly::new(r.coeffs.iter().map(|c| -c.clone()).collect()));
        }
        chain
    }

    fn sign_variations_at_infinity(chain: &[UniPoly], positive: bool) -> usize {
        let mut signs = vec![];
        for p in chain {
            if p.is_zero() {
                continue;
            }
            let lead = p.coeffs.last().unwrap();
            let mut s = lead.is_positive();
            if !positive && p.degree() % 2 == 1 {
                s = !s;
            }
            signs.push(s);
        }
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 || self.is_zero() {
            return 0;
        }
        let sf = self
            .squarefree_decomposition()
            .into_iter()
            .fold(UniPoly::new(vec![Rat::one()]), |acc, (p, _)| mul(&acc, &p));
        let chain = sf.sturm_chain();
        Self::sign_variations_at_infinity(&chain, false)
            - Self::sign_variations_at_infinity(&chain, true)
    }

    /// Rational roots with multiplicities, found by the rational root
    /// theorem on the primitive integer form and verified by exact
    /// division. Skips the search when the end coefficients are too large
    /// to factor quickly (the numeric path picks those roots up instead).
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() || self.degree() == 0 {
            return vec![];
        }
        // integer form
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let a0 = ints.iter().find(|c| !c.is_zero()).unwrap().clone();
        let ad = ints.last().unwrap().clone();
        let limit = BigInt::from(1_000_000_000_000i64);
        if a0.abs() > limit || ad.abs() > limit {
            return vec![];
        }
        let mut out = vec![];
        let mut f = self.clone();
        f.strip_zero_roots();
        for p in divisors(&a0.abs()) {
            for q in divisors(&ad.abs()) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(p.clone() * BigInt::from(sign), q.clone());
                    let mut mult = 0;
                    while f.degree() >= 1 && f.eval(&cand).is_zero() {
                        let lin = UniPoly::new(vec![-cand.clone(), Rat::one()]);
                        f = f.divide_exact(&lin).unwrap();
                        mult += 1;
                    }
                    if mult > 0 {
                        out.push((cand, mult));
                    }
                }
            }
        }
        out
    }

    /// All roots with multiplicities, exact where possible.
    pub fn all_roots(&self) -> Vec<(Root, usize)> {
        let mut out: Vec<(Root, usize)> = vec![];
        if self.is_zero() {
            return out;
        }
        let mut f = self.clone();
        let k = f.strip_zero_roots();
        if k > 0 {
            out.push((Root::Rational(Rat::zero()), k));
        }
        if f.degree() == 0 {
            return out;
        }
        for (r, m) in f.rational_roots() {
            let lin = UniPoly::new(vec![-r.clone(), Rat::one()]);
            for _ in 0..m {
                f = f.divide_exact(&lin).unwrap();
            }
            out.push((Root::Rational(r), m));
        }
        if f.degree() == 0 {
            return out;
        }
        // exact Gaussian pair for quadratic remainders
        if f.degree() == 2 {
            let (c, b, a) = (&f.coeffs[0], &f.coeffs[1], &f.coeffs[2]);
            let disc = b * b - Rat::from_integer(BigInt::from(4)) * a * c;
            if disc.is_negative() {
                if let Some(s) = rational_sqrt(&(-disc.clone())) {
                    let re = -b / (Rat::from_integer(BigInt::from(2)) * a);
                    let im = &s / (Rat::from_integer(BigInt::from(2)) * a);
                    out.push((Root::Gaussian(re.clone(), im.clone()), 1));
                    out.push((Root::Gaussian(re, -im), 1));
                    return out;
                }
            }
        }
        // numeric roots of each squarefree factor
        for (g, mult) in f.squarefree_decomposition() {
            let real_count = g.count_real_roots();
            let mut roots = durand_kerner(&g);
            roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
            for (i, z) in roots.iter().enumerate() {
                if i < real_count {
                    let x = newton_polish_real(&g, z.re);
                    out.push((Root::Real(x), mult));
                } else {
                    out.push((Root::Complex(z.re, z.im), mult));
                }
            }
        }
        out
    }
}

fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut coeffs = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += x * y;
        }
    }
    UniPoly::new(coeffs)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = vec![];
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if dd > *n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
        if d > BigInt::from(2_000_000) {
            break;
        }
    }
    out.sort();
    out
}

fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &ns * &ns == *x.numer() && &ds * &ds == *x.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

fn durand_kerner(f: &UniPoly) -> Vec<Complex64> {
    let d = f.degree();
    let lead = rat_to_f64(f.coeffs.last().unwrap());
    let coeffs: Vec<Complex64> = f
        .coeffs
        .iter()
        .map(|c| Complex64::new(rat_to_f64(c) / lead, 0.0))
        .collect();
    let eval = |x: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            Complex64::from_polar(radius * 0.7, th)
        })
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

fn newton_polish_real(f: &UniPoly, x0: f64) -> f64 {
    let fp = f.derivative();
    let mut x = x0;
    for _ in 0..60 {
        let fx = f.eval_c64(Complex64::new(x, 0.0)).re;
        let dx = fp.eval_c64(Complex64::new(x, 0.0)).re;
        if dx.abs() < 1e-300 {
            break;
        }
        let step = fx / dx;
        x -= step;
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Filters roots to the requested field and to the torus (nonzero).
fn field_torus_filter(roots: Vec<(Root, usize)>, field: Field) -> Vec<(Root, usize)> {
    roots
        .into_iter()
        .filter(|(r, _)| !r.is_zero())
        .filter(|(r, _)| field == Field::Complex || r.is_real())
        .collect()
}

/// Common torus roots of a set of univariate polynomials (as Polynomials
/// in one variable), with the minimum multiplicity across the system.
pub fn common_torus_roots_univariate(
    system: &[Polynomial],
    field: Field,
) -> Result<Vec<(Root, usize)>> {
    let polys: Vec<UniPoly> = system
        .iter()
        .map(|p| UniPoly::from_polynomial(p, 0))
        .collect::<Result<_>>()?;
    if polys.iter().all(|p| p.is_zero()) {
        return Err(Error::PositiveDimensional);
    }
    let mut g: Option<UniPoly> = None;
    for p in &polys {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.monic(),
            Some(acc) => acc.gcd(p),
        });
    }
    let g = g.unwrap();
    if g.degree() == 0 {
        return Ok(vec![]);
    }
    let roots = g.all_roots();
    // minimum multiplicity across the actual system members
    let mut out = vec![];
    for (root, gm) in field_torus_filter(roots, field) {
        let mult = match &root {
            Root::Rational(r) => {
                let lin = UniPoly::new(vec![-r.clone(), Rat::one()]);
                polys
                    .iter()
                    .filter(|p| !p.is_zero())
                    .map(|p| {
                        let mut m = 0;
                        let mut f = p.clone();
                        while let Some(q) = f.divide_exact(&lin) {
                            m += 1;
                            f = q;
                            if f.is_zero() {
                                break;
                            }
                        }
                        m
                    })
                    .min()
                    .unwrap_or(gm)
            }
            _ => gm,
        };
        out.push((root, mult));
    }
    Ok(out)
}

/// True iff the system (in one variable) together with all first
/// derivatives has a common torus root over the field: the exact
/// "non-generic solution" test for one-dimensional restricted systems.
pub fn has_degenerate_torus_root_univariate(
    system: &[Polynomial],
    field: Field,
) -> Result<bool> {
    let mut aug: Vec<UniPoly> = vec![];
    for p in system {
        let u = UniPoly::from_polynomial(p, 0)?;
        aug.push(u.derivative());
        aug.push(u);
    }
    if aug.iter().all(|p| p.is_zero()) {
        return Err(Error::PositiveDimensional);
    }
    let mut g: Option<UniPoly> = None;
    for p in &aug {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.monic(),
            Some(acc) => acc.gcd(p),
        });
    }
    let mut g = g.unwrap();
    g.strip_zero_roots();
    if g.degree() == 0 {
        return Ok(false);
    }
    Ok(match field {
        Field::Complex => true,
        Field::Real => g.count_real_roots() > 0,
    })
}

/// Solves a zero-dimensional polynomial system on the torus T_m.
/// m <= 1 is exact (up to root representation); m = 2 goes through
/// resultant elimination; larger m is out of capability.
pub fn solve_zero_dim(
    system: &[Polynomial],
    m: usize,
    field: Field,
) -> Result<Vec<Vec<Root>>> {
    match m {
        0 => {
            let ok = system.iter().all(|p| p.is_zero());
            Ok(if ok { vec![vec![]] } else { vec![] })
        }
        1 => Ok(common_torus_roots_univariate(system, field)?
            .into_iter()
            .map(|(r, _)| vec![r])
            .collect()),
        2 => solve_bivariate(system, field),
        _ => Err(Error::SolverCapability(format!(
            "exact solving limited to m <= 2, got m = {}",
            m
        ))),
    }
}

fn solve_bivariate(system: &[Polynomial], field: Field) -> Result<Vec<Vec<Root>>> {
    let nontrivial: Vec<&Polynomial> = system.iter().filter(|p| !p.is_zero()).collect();
    if nontrivial.len() < 2 {
        return Err(Error::PositiveDimensional);
    }
    // Eliminate the second variable pairwise.
    let mut elim: Option<UniPoly> = None;
    for i in 0..nontrivial.len() {
        for j in i + 1..nontrivial.len() {
            let r = resultant(nontrivial[i], nontrivial[j], 1);
            if r.is_zero() {
                continue;
            }
            let u = UniPoly::from_polynomial(&r.project_to(1).embed(1), 0)?;
            elim = Some(match elim {
                None => u.monic(),
                Some(acc) => acc.gcd(&u),
            });
        }
    }
    let Some(mut elim) = elim else {
        return Err(Error::PositiveDimensional);
    };
    // Degenerate leading coefficients can hide roots of the eliminated
    // variable; add the common roots of the z2-leading coefficients.
    let mut lead_gcd: Option<UniPoly> = None;
    for p in &nontrivial {
        let lead = p.coefficients_in(1).pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let u = UniPoly::from_polynomial(&lead.project_to(1).embed(1), 0)?;
        lead_gcd = Some(match lead_gcd {
            None => u.monic(),
            Some(acc) => acc.gcd(&u),
        });
    }
    elim.strip_zero_roots();
    let mut candidates: Vec<Root> = elim
        .all_roots()
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| !r.is_zero())
        .collect();
    if let Some(mut lg) = lead_gcd {
        lg.strip_zero_roots();
        if lg.degree() >= 1 {
            for (r, _) in lg.all_roots() {
                if !r.is_zero() && !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    let mut out: Vec<Vec<Root>> = vec![];
    for cand in candidates {
        match &cand {
            Root::Rational(r) => {
                let restricted: Vec<Polynomial> = nontrivial
                    .iter()
                    .map(|p| {
                        let q = p.substitute_value(0, r);
                        // shift variable z2 into slot 0 of a univariate poly
                        Polynomial::from_terms(
                            1,
                            q.terms().map(|(e, c)| (vec![e[1]], c.clone())),
                        )
                    })
                    .collect();
                let roots2 = common_torus_roots_univariate(&restricted, field)?;
                for (r2, _) in roots2 {
                    out.push(vec![cand.clone(), r2]);
                }
            }
            _ => {
                if field == Field::Real && !cand.is_real() {
                    continue;
                }
                // numeric substitution
                let z1 = cand.to_c64();
                let mut vals: Option<Vec<Complex64>> = None;
                // roots of the first nonzero restricted polynomial, verified
                // against the rest
                for p in &nontrivial {
                    let coeffs: Vec<Complex64> = {
                        let cs = p.coefficients_in(1);
                        cs.iter()
                            .map(|c| {
                                let u = UniPoly::from_polynomial(&c.project_to(1).embed(1), 0)
                                    .expect("coefficient univariate");
                                u.eval_c64(z1)
                            })
                            .collect()
                    };
                    if coeffs.iter().all(|c| c.norm() < 1e-12) {
                        continue;
                    }
                    vals = Some(numeric_roots_c64(&coeffs));
                    break;
                }
                let Some(roots2) = vals else { continue };
                for z2 in roots2 {
                    if z2.norm() < 1e-10 {
                        continue;
                    }
                    if field == Field::Real && z2.im.abs() > 1e-8 * (1.0 + z2.norm()) {
                        continue;
                    }
                    let ok = nontrivial.iter().all(|p| {
                        p.eval_c64(&[z1, z2]).norm() < 1e-7 * poly_scale(p)
                    });
                    if ok {
                        let r2 = if z2.im.abs() < 1e-10 {
                            Root::Real(z2.re)
                        } else {
                            Root::Complex(z2.re, z2.im)
                        };
                        out.push(vec![cand.clone(), r2]);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn poly_scale(p: &Polynomial) -> f64 {
    p.terms()
        .map(|(_, c)| rat_to_f64(c).abs())
        .fold(1.0, f64::max)
}

fn numeric_roots_c64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return vec![];
    }
    let lead = coeffs[d];
    let cs: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |x: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in cs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let radius = 1.0 + cs[..d].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.7, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn upoly(text: &str) -> UniPoly {
        let p = parse_polynomial(text, &vars(&["z"])).unwrap();
        UniPoly::from_polynomial(&p, 0).unwrap()
    }

    #[test]
    fn gcd_and_common_roots() {
        let vs = vars(&["z"]);
        let p = parse_polynomial("z - 1", &vs).unwrap();
        let q = parse_polynomial("(z-1)*(z-2)", &vs).unwrap();
        let roots = common_torus_roots_univariate(&[p, q], Field::Real).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].0, Root::Rational(rat(1)));
        assert_eq!(roots[0].1, 1);
    }

    #[test]
    fn complex_vs_real_roots() {
        let vs = vars(&["z"]);
        let p = parse_polynomial("z^2 + 1", &vs).unwrap();
        let real = common_torus_roots_univariate(std::slice::from_ref(&p), Field::Real).unwrap();
        assert!(real.is_empty());
        let complex = common_torus_roots_univariate(&[p], Field::Complex).unwrap();
        assert_eq!(complex.len(), 2);
        for (r, _) in &complex {
            match r {
                Root::Gaussian(re, im) => {
                    assert!(re.is_zero());
                    assert_eq!(im.abs(), rat(1));
                }
                other => panic!("expected exact Gaussian roots, got {:?}", other),
            }
        }
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(upoly("z^2 - 2").count_real_roots(), 2);
        assert_eq!(upoly("z^2 + 2").count_real_roots(), 0);
        assert_eq!(upoly("(z-1)*(z-2)*(z+3)").count_real_roots(), 3);
        assert_eq!(upoly("(z-1)^2").count_real_roots(), 1);
    }

    #[test]
    fn numeric_agrees_with_exact_on_random_quintics() {
        // degree-5 polynomial with known rational roots and a complex pair
        let vs = vars(&["z"]);
        let p = parse_polynomial("(z-1)*(z+2)*(2*z-3)*(z^2+z+1)", &vs).unwrap();
        let u = UniPoly::from_polynomial(&p, 0).unwrap();
        let roots = u.all_roots();
        let mut rational: Vec<Rat> = roots
            .iter()
            .filter_map(|(r, _)| r.as_rational().cloned())
            .collect();
        rational.sort();
        assert_eq!(rational, vec![rat(-2), rat(1), crate::poly::rat_frac(3, 2)]);
        // the complex pair satisfies z^2 + z + 1 = 0 to high accuracy
        for (r, _) in &roots {
            if let Root::Complex(re, im) = r {
                let z = Complex64::new(*re, *im);
                let v = z * z + z + Complex64::new(1.0, 0.0);
                assert!(v.norm() < 1e-10, "residual {}", v.norm());
            }
        }
    }

    #[test]
    fn degenerate_root_detection() {
        let vs = vars(&["z"]);
        // (z-1)^2 has a degenerate root at 1
        let p = parse_polynomial("(z-1)^2", &vs).unwrap();
        assert!(has_degenerate_torus_root_univariate(std::slice::from_ref(&p), Field::Real).unwrap());
        // the pair (z-1, (z-1)(z-2)) has a simple common root
        let a = parse_polynomial("z - 1", &vs).unwrap();
        let b = parse_polynomial("(z-1)*(z-2)", &vs).unwrap();
        assert!(!has_degenerate_torus_root_univariate(&[a, b], Field::Real).unwrap());
    }

    #[test]
    fn bivariate_systems() {
        let vs = vars(&["x", "y"]);
        // x^2 + y^2 = 5, x y = 2 -> (1,2),(2,1),(-1,-2),(-2,-1)
        let p = parse_polynomial("x^2 + y^2 - 5", &vs).unwrap();
        let q = parse_polynomial("x*y - 2", &vs).unwrap();
        let sols = solve_zero_dim(&[p, q], 2, Field::Real).unwrap();
        assert_eq!(sols.len(), 4);
        for s in &sols {
            let x = s[0].to_c64();
            let y = s[1].to_c64();
            assert!((x * x + y * y - Complex64::new(5.0, 0.0)).norm() < 1e-9);
            assert!((x * y - Complex64::new(2.0, 0.0)).norm() < 1e-9);
        }
        // torus filter: solutions with a zero coordinate are dropped
        let p = parse_polynomial("x*(x-1)", &vs).unwrap();
        let q = parse_polynomial("y - x", &vs).unwrap();
        let sols = solve_zero_dim(&[p, q], 2, Field::Real).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0][0], Root::Rational(rat(1)));
    }
}
