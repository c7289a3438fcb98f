//! Assembly of the non-properness sets: parametrized sets for origin
//! tuples, lifted sets for strictly semi-origin tuples, Jacobian
//! hyperplanes for almost-semi-origin tuples, their union with the f(0)
//! point, T-boundary-genericity checks, properness certificates,
//! uniruledness witnesses and the stratification check.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::classify::{classify, TupleClass, TupleKind};
use crate::fan::{normal_fan, Fan};
use crate::lattice::{chain_transformation, verify_chain, ChainTransformation};
use crate::mat::IVec;
use crate::poly::{rat, rat_to_f64, Field, Polynomial, PolynomialMap, Rat};
use crate::polytope::newton_polytope_with_origin;
use crate::polytope::Polytope;
use crate::solve::{
    common_torus_roots_univariate, has_degenerate_torus_root_univariate, solve_zero_dim,
};
use crate::system::{
    jacobian_det_at, jacobian_det_at_c64, restricted_zero_system, resultant, transform_map,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Parametrized,
    Lifted,
    JacobianHyperplane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    Numeric,
    Unresolved,
}

/// An affine-linear equation with floating coefficients (from numeric
/// roots): constant + sum coeffs_i * y_i = 0, complex parts allowed.
#[derive(Clone, Debug)]
pub struct NumericLinear {
    pub constant: Complex64,
    pub coeffs: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct LiftedInfo {
    pub theta: Vec<usize>,
    /// The y-free subsystem cutting out the variety in T_m.
    pub variety: Vec<Polynomial>,
    /// The image map components F_i for i in theta.
    pub image: Vec<Polynomial>,
}

/// One irreducible piece of the emitted set description.
#[derive(Clone, Debug)]
pub struct Component {
    pub kind: ComponentKind,
    pub cone: Option<usize>,
    pub rays: Vec<IVec>,
    pub m: usize,
    /// Polynomial parametrization in m variables (parametrized kind).
    pub parametrization: Option<Vec<Polynomial>>,
    /// Implicit equation in y (curves for n = 2); primitive, sign-fixed.
    pub implicit: Option<Polynomial>,
    /// Exact affine-linear equations in y cutting out the component.
    pub equations: Vec<Polynomial>,
    pub numeric_equations: Vec<NumericLinear>,
    pub lifted: Option<LiftedInfo>,
    pub status: Status,
    pub is_f0: bool,
}

impl Component {
    fn blank(kind: ComponentKind, cone: Option<usize>, rays: Vec<IVec>, m: usize) -> Self {
        Component {
            kind,
            cone,
            rays,
            m,
            parametrization: None,
            implicit: None,
            equations: vec![],
            numeric_equations: vec![],
            lifted: None,
            status: Status::Exact,
            is_f0: false,
        }
    }

    /// Deterministic sort/dedup key.
    pub fn canonical_key(&self) -> String {
        let yvars: Vec<String> = (0..self.equations.first().map(|e| e.nvars()).unwrap_or(0))
            .map(|i| format!("y{}", i + 1))
            .collect();
        let yrefs: Vec<&str> = yvars.iter().map(|s| s.as_str()).collect();
        let mut parts = vec![format!("{:?}", self.kind)];
        if let Some(f) = &self.parametrization {
            let tvars: Vec<String> = (0..self.m).map(|i| format!("t{}", i + 1)).collect();
            let trefs: Vec<&str> = tvars.iter().map(|s| s.as_str()).collect();
            for p in f {
                parts.push(p.display(&trefs));
            }
        }
        for e in &self.equations {
            parts.push(e.display(&yrefs));
        }
        for e in &self.numeric_equations {
            parts.push(format!("{:?}", e));
        }
        parts.join(" | ")
    }
}

#[derive(Clone, Debug)]
pub struct NonPropernessDescription {
    pub field: Field,
    pub components: Vec<Component>,
    pub includes_f0: bool,
    pub f0: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct TupleCheck {
    pub cone: usize,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct TbgReport {
    pub verdict: Verdict,
    pub tuples: Vec<TupleCheck>,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Proper {
        reason: String,
    },
    NonProper {
        witness: Vec<Rat>,
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

/// The computation context for one map: the normalized working copy, its
/// Newton polytopes (with the origin adjoined), the inner normal fan and
/// the classification of every minimized tuple.
pub struct Engine {
    pub original: PolynomialMap,
    pub map: PolynomialMap,
    /// Constant shift applied to each component: working = original + shift.
    /// Zero when the input already has f(0) in the torus. Outputs are
    /// translated back by subtracting the shift from y.
    pub shift: Vec<Rat>,
    pub polytopes: Vec<Polytope>,
    pub fan: Fan,
    pub classes: Vec<TupleClass>,
}

impl Engine {
    pub fn new(original: PolynomialMap) -> Result<Engine> {
        Self::with_normalization_target(original, None)
    }

    /// `target` overrides the constant vector c used by the normalizing
    /// translation f -> f - f(0) + c when f(0) is not in the torus.
    pub fn with_normalization_target(
        original: PolynomialMap,
        target: Option<Vec<Rat>>,
    ) -> Result<Engine> {
        let n = original.n();
        let map = if original.is_normalized() {
            original.clone()
        } else {
            let c = target.unwrap_or_else(|| vec![Rat::one(); n]);
            if c.iter().any(|x| x.is_zero()) {
                return Err(Error::DegenerateMap(
                    "normalization constant must lie in the torus".into(),
                ));
            }
            original.translate(&c)
        };
        let shift: Vec<Rat> = map
            .components
            .iter()
            .zip(&original.components)
            .map(|(a, b)| a.constant_term() - b.constant_term())
            .collect();
        let polytopes: Vec<Polytope> = map
            .components
            .iter()
            .map(newton_polytope_with_origin)
            .collect::<Result<_>>()?;
        let fan = normal_fan(&polytopes)?;
        let classes: Vec<TupleClass> = fan
            .cones()
            .iter()
            .map(|c| classify(fan.tuple_of(c.id), &fan, &polytopes))
            .collect();
        Ok(Engine {
            original,
            map,
            shift,
            polytopes,
            fan,
            classes,
        })
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn field(&self) -> Field {
        self.map.field
    }

    pub fn tuple_dim(&self, cone: usize) -> usize {
        self.fan.tuple_of(cone).tdim
    }

    /// Chain transformation for a cone, with the flag chosen so the
    /// constant-term criterion holds for the cone's tuple.
    pub fn chain_for(&self, cone: usize) -> Result<ChainTransformation> {
        let class = &self.classes[cone];
        let flag = self.fan.cone_flag(cone, &class.theta)?;
        let ct = chain_transformation(&self.fan, &flag, &self.polytopes, self.tuple_dim(cone))?;
        let rep = verify_chain(&ct, &self.map.components, &self.polytopes);
        if !rep.ok() {
            return Err(Error::InvalidChain(rep.violations.join("; ")));
        }
        Ok(ct)
    }

    /// An alternative valid chain transformation for the same cone, used
    /// by independence checks: a different flag if one exists, otherwise
    /// the sheared basis.
    pub fn alternative_chain_for(&self, cone: usize) -> Result<ChainTransformation> {
        let class = &self.classes[cone];
        let flag = self.fan.cone_flag(cone, &class.theta)?;
        let alt_flag = self.fan.cone_flag_alt(cone, &class.theta)?;
        if alt_flag != flag {
            let ct =
                chain_transformation(&self.fan, &alt_flag, &self.polytopes, self.tuple_dim(cone))?;
            let rep = verify_chain(&ct, &self.map.components, &self.polytopes);
            if rep.ok() {
                return Ok(ct);
            }
        }
        self.chain_for(cone)?.sheared_alternative()
    }

    /// The restricted transformed map F_gamma in m variables for a chain
    /// transformation, translated back to the original coordinates.
    fn restricted_map(&self, ct: &ChainTransformation) -> Result<Vec<Polynomial>> {
        let sys = transform_map(&self.map.components, ct)?;
        let restricted = restricted_zero_system(&sys);
        Ok(restricted
            .iter()
            .enumerate()
            .map(|(i, p)| p.sub(&Polynomial::constant(sys.m, self.shift[i].clone())))
            .collect())
    }

    /// The gamma-parametrized set of an origin tuple.
    pub fn parametrized_set(&self, cone: usize) -> Result<Component> {
        let class = &self.classes[cone];
        if class.kind != TupleKind::Origin {
            return Err(Error::InvalidClass(
                "parametrized sets require an origin tuple".into(),
            ));
        }
        let m = self.tuple_dim(cone);
        let ct = self.chain_for(cone)?;
        let f = self.restricted_map(&ct)?;
        let mut comp = Component::blank(
            ComponentKind::Parametrized,
            Some(cone),
            self.fan.ray_vectors(cone),
            m,
        );
        if self.n() == 2 && m == 1 {
            comp.implicit = Some(implicitize_curve(&f));
        }
        comp.parametrization = Some(f);
        Ok(comp)
    }

    /// The gamma-lifted set of a strictly semi-origin tuple, exploded into
    /// one component per exact slice when the variety is solvable.
    pub fn lifted_set(&self, cone: usize) -> Result<Vec<Component>> {
        let class = &self.classes[cone];
        if class.kind != TupleKind::StrictlySemiOrigin {
            return Err(Error::InvalidClass(
                "lifted sets require a strictly semi-origin tuple".into(),
            ));
        }
        let n = self.n();
        let m = self.tuple_dim(cone);
        let ct = self.chain_for(cone)?;
        let f = self.restricted_map(&ct)?;
        let theta = class.theta.clone();
        let theta_c: Vec<usize> = (0..n).filter(|i| !theta.contains(i)).collect();
        let variety: Vec<Polynomial> = theta_c.iter().map(|&i| f[i].clone()).collect();
        let image: Vec<Polynomial> = theta.iter().map(|&i| f[i].clone()).collect();
        let info = LiftedInfo {
            theta: theta.clone(),
            variety: variety.clone(),
            image,
        };
        let rays = self.fan.ray_vectors(cone);
        let solve = if m >= theta_c.len() + 1 {
            // positive-dimensional variety expected: represent symbolically
            Err(Error::SolverCapability(
                "positive-dimensional lifted variety".into(),
            ))
        } else {
            solve_zero_dim(&variety, m, self.field())
        };
        match solve {
            Ok(roots) => {
                let mut comps = vec![];
                for root in roots {
                    let mut comp = Component::blank(
                        ComponentKind::Lifted,
                        Some(cone),
                        rays.clone(),
                        m,
                    );
                    comp.lifted = Some(info.clone());
                    if root.iter().all(|r| r.as_rational().is_some()) {
                        let vals: Vec<Rat> = root
                            .iter()
                            .map(|r| r.as_rational().unwrap().clone())
                            .collect();
                        for (k, &i) in theta.iter().enumerate() {
                            let _ = k;
                            let val = info.image[theta.iter().position(|&j| j == i).unwrap()]
                                .eval_rat(&vals);
                            let mut eq = Polynomial::variable(n, i);
                            eq = eq.sub(&Polynomial::constant(n, val));
                            comp.equations.push(normalize_equation(eq));
                        }
                    } else {
                        comp.status = Status::Numeric;
                        let zs: Vec<Complex64> = root.iter().map(|r| r.to_c64()).collect();
                        for (pos, &i) in theta.iter().enumerate() {
                            let val = info.image[pos].eval_c64(&zs);
                            let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
                            coeffs[i] = Complex64::new(1.0, 0.0);
                            comp.numeric_equations.push(NumericLinear {
                                constant: -val,
                                coeffs,
                            });
                        }
                    }
                    comps.push(comp);
                }
                Ok(comps)
            }
            Err(Error::SolverCapability(_)) => {
                let mut comp = Component::blank(ComponentKind::Lifted, Some(cone), rays, m);
                comp.lifted = Some(info);
                comp.status = Status::Unresolved;
                Ok(vec![comp])
            }
            Err(Error::PositiveDimensional) => {
                let mut comp = Component::blank(ComponentKind::Lifted, Some(cone), rays, m);
                comp.lifted = Some(info);
                comp.status = Status::Unresolved;
                Ok(vec![comp])
            }
            Err(e) => Err(e),
        }
    }

    /// The gamma-Jacobian hyperplanes of an almost-semi-origin tuple.
    pub fn jacobian_hyperplanes(&self, cone: usize) -> Result<Vec<Component>> {
        let class = &self.classes[cone];
        if !class.almost_semi_origin {
            return Err(Error::InvalidClass(
                "Jacobian hyperplanes require an almost-semi-origin tuple".into(),
            ));
        }
        let n = self.n();
        let m = self.tuple_dim(cone);
        let ct = self.chain_for(cone)?;
        let sys = transform_map(&self.map.components, &ct)?;
        let restricted = restricted_zero_system(&sys);
        let roots = match solve_zero_dim(&restricted, m, self.field()) {
            Ok(r) => r,
            Err(Error::PositiveDimensional) => {
                return Err(Error::TbgViolation(format!(
                    "restricted system of cone {} has non-isolated torus solutions",
                    cone
                )))
            }
            Err(e) => return Err(e),
        };
        let rays = self.fan.ray_vectors(cone);
        let mut exact_eqs: Vec<Polynomial> = vec![];
        let mut numeric_eqs: Vec<NumericLinear> = vec![];
        for root in &roots {
            if root.iter().all(|r| r.as_rational().is_some()) {
                let mut z: Vec<Rat> = root
                    .iter()
                    .map(|r| r.as_rational().unwrap().clone())
                    .collect();
                z.resize(n, Rat::zero());
                let j = jacobian_det_at(&sys, &z)?;
                if j.is_zero() {
                    return Err(Error::TbgViolation(format!(
                        "Jacobian determinant vanishes identically in y at a root of cone {}",
                        cone
                    )));
                }
                if j.total_degree() == 0 {
                    continue; // nonzero constant: no hyperplane from this root
                }
                if j.total_degree() > 1 {
                    return Err(Error::Internal(
                        "Jacobian determinant is not affine-linear in y".into(),
                    ));
                }
                let eq = normalize_equation(shift_y_arguments(&j, &self.shift));
                if !exact_eqs.contains(&eq) {
                    exact_eqs.push(eq);
                }
            } else {
                let mut z: Vec<Complex64> = root.iter().map(|r| r.to_c64()).collect();
                z.resize(n, Complex64::new(0.0, 0.0));
                let coeffs = jacobian_det_at_c64(&sys, &z);
                let scale = coeffs.values().map(|c| c.norm()).fold(0.0f64, f64::max);
                if scale == 0.0 {
                    return Err(Error::TbgViolation(format!(
                        "Jacobian determinant vanishes numerically at a root of cone {}",
                        cone
                    )));
                }
                let mut lin = NumericLinear {
                    constant: Complex64::new(0.0, 0.0),
                    coeffs: vec![Complex64::new(0.0, 0.0); n],
                };
                let mut higher = 0.0f64;
                for (s, c) in &coeffs {
                    match s.count_ones() {
                        0 => lin.constant = *c,
                        1 => lin.coeffs[s.trailing_zeros() as usize] = *c,
                        _ => higher = higher.max(c.norm()),
                    }
                }
                if higher > 1e-9 * scale {
                    return Err(Error::Internal(
                        "numeric Jacobian determinant is not affine-linear in y".into(),
                    ));
                }
                if lin.coeffs.iter().all(|c| c.norm() < 1e-12 * scale) {
                    continue; // constant: no hyperplane
                }
                // translate back: y -> y + shift
                for (i, s) in self.shift.iter().enumerate() {
                    lin.constant += lin.coeffs[i] * rat_to_f64(s);
                }
                numeric_eqs.push(lin);
            }
        }
        let mut comps = vec![];
        for eq in exact_eqs {
            let mut comp = Component::blank(
                ComponentKind::JacobianHyperplane,
                Some(cone),
                rays.clone(),
                m,
            );
            comp.equations.push(eq);
            comps.push(comp);
        }
        for eq in numeric_eqs {
            let mut comp = Component::blank(
                ComponentKind::JacobianHyperplane,
                Some(cone),
                rays.clone(),
                m,
            );
            comp.status = Status::Numeric;
            comp.numeric_equations.push(eq);
            comps.push(comp);
        }
        Ok(comps)
    }

    /// True iff the fan admits a non-basic minimized origin tuple (with a
    /// nonzero minimizing cone), which places f(0) in the Jelonek set.
    pub fn f0_in_jelonek_set(&self) -> bool {
        self.fan.cones().iter().any(|c| {
            c.dim >= 1
                && c.dim <= self.n()
                && self.tuple_dim(c.id) <= self.n() - 1
                && self.classes[c.id].kind == TupleKind::Origin
                && !self.classes[c.id].basic
        })
    }

    /// The Jelonek set S_f as the union over qualifying non-basic tuples,
    /// plus the f(0) point when a non-basic origin tuple exists.
    pub fn jelonek_set(&self) -> Result<NonPropernessDescription> {
        let n = self.n();
        let mut comps: Vec<Component> = vec![];
        for cone in self.fan.cones() {
            let m = self.tuple_dim(cone.id);
            if m < 1 || m > n - 1 {
                continue;
            }
            let class = &self.classes[cone.id];
            if !class.passes_zero_dim_filter || class.basic {
                continue;
            }
            match class.kind {
                TupleKind::Origin => comps.push(self.parametrized_set(cone.id)?),
                TupleKind::StrictlySemiOrigin => comps.extend(self.lifted_set(cone.id)?),
                TupleKind::NotSemiOrigin => {
                    if class.almost_semi_origin {
                        comps.extend(self.jacobian_hyperplanes(cone.id)?);
                    }
                }
            }
        }
        let includes_f0 = self.f0_in_jelonek_set();
        let f0 = self.original.value_at_origin();
        if includes_f0 {
            let mut comp = Component::blank(ComponentKind::Parametrized, None, vec![], 0);
            comp.is_f0 = true;
            comp.parametrization = Some(
                f0.iter()
                    .map(|c| Polynomial::constant(0, c.clone()))
                    .collect(),
            );
            comps.push(comp);
        }
        let components = dedup_components(comps, n, self.field());
        Ok(NonPropernessDescription {
            field: self.field(),
            components,
            includes_f0,
            f0,
        })
    }

    /// The toric non-properness set S*_f: parametrized sets of the basic
    /// origin tuples (the origin vertex tuple contributes {f(0)}).
    pub fn toric_set(&self) -> Result<NonPropernessDescription> {
        let n = self.n();
        let mut comps = vec![];
        let mut includes_f0 = false;
        for cone in self.fan.cones() {
            let m = self.tuple_dim(cone.id);
            if cone.dim < 1 || m > n - 1 {
                continue;
            }
            let class = &self.classes[cone.id];
            if class.kind != TupleKind::Origin || !class.basic {
                continue;
            }
            let mut comp = self.parametrized_set(cone.id)?;
            if m == 0 {
                comp.is_f0 = true;
                includes_f0 = true;
            }
            comps.push(comp);
        }
        let components = dedup_components(comps, n, self.field());
        Ok(NonPropernessDescription {
            field: self.field(),
            components,
            includes_f0,
            f0: self.original.value_at_origin(),
        })
    }

    /// T-boundary genericity: for every minimized tuple with tuple
    /// dimension 1 <= m <= min(n-1, 2) and every index subset I, the
    /// restricted subsystem must have only nondegenerate torus solutions.
    /// Larger m yields an unknown verdict for that tuple.
    pub fn check_tbg(&self) -> TbgReport {
        let n = self.n();
        let mut tuples = vec![];
        let mut any_fail = false;
        let mut any_unknown = false;
        for cone in self.fan.cones() {
            let m = self.tuple_dim(cone.id);
            if m < 1 || m > n - 1 {
                continue;
            }
            let (verdict, detail) = self.check_tuple_genericity(cone.id, m);
            match verdict {
                Verdict::Fail => any_fail = true,
                Verdict::Unknown => any_unknown = true,
                Verdict::Pass => {}
            }
            tuples.push(TupleCheck {
                cone: cone.id,
                verdict,
                detail,
            });
        }
        let verdict = if any_fail {
            Verdict::Fail
        } else if any_unknown {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
        TbgReport { verdict, tuples }
    }

    fn check_tuple_genericity(&self, cone: usize, m: usize) -> (Verdict, String) {
        if m > 2 {
            return (
                Verdict::Unknown,
                format!("tuple dimension {} exceeds the exact solver", m),
            );
        }
        let ct = match self.chain_for(cone) {
            Ok(ct) => ct,
            Err(e) => return (Verdict::Unknown, format!("chain construction failed: {}", e)),
        };
        let sys = match transform_map(&self.map.components, &ct) {
            Ok(s) => s,
            Err(e) => return (Verdict::Unknown, format!("transform failed: {}", e)),
        };
        let restricted = restricted_zero_system(&sys);
        let n = self.n();
        for mask in 1u32..(1 << n) {
            let subsystem: Vec<Polynomial> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| restricted[i].clone())
                .collect();
            let verdict = if m == 1 {
                match has_degenerate_torus_root_univariate(&subsystem, self.field()) {
                    Ok(true) => Verdict::Fail,
                    Ok(false) => Verdict::Pass,
                    Err(Error::PositiveDimensional) => Verdict::Fail,
                    Err(_) => Verdict::Unknown,
                }
            } else {
                // m == 2: append the rank-dropping minors of the Jacobian
                let k = subsystem.len();
                let jac: Vec<Vec<Polynomial>> = subsystem
                    .iter()
                    .map(|p| vec![p.partial_derivative(0), p.partial_derivative(1)])
                    .collect();
                let mut aug = subsystem.clone();
                if k == 1 {
                    aug.push(jac[0][0].clone());
                    aug.push(jac[0][1].clone());
                } else {
                    for a in 0..k {
                        for b in a + 1..k {
                            let minor = jac[a][0]
                                .mul(&jac[b][1])
                                .sub(&jac[a][1].mul(&jac[b][0]));
                            aug.push(minor);
                        }
                    }
                }
                match solve_zero_dim(&aug, 2, self.field()) {
                    Ok(roots) if roots.is_empty() => Verdict::Pass,
                    Ok(_) => Verdict::Fail,
                    Err(Error::PositiveDimensional) => Verdict::Fail,
                    Err(_) => Verdict::Unknown,
                }
            };
            if verdict != Verdict::Pass {
                return (
                    verdict,
                    format!("subsystem I = {:?} of cone {}", mask_to_set(mask, n), cone),
                );
            }
        }
        (Verdict::Pass, String::new())
    }

    /// Very T-BG: additionally, every semi-origin tuple with
    /// m + 1 <= |theta^c| must have an empty lifted variety.
    pub fn check_very_tbg(&self) -> TbgReport {
        let base = self.check_tbg();
        if base.verdict == Verdict::Fail {
            return base;
        }
        let n = self.n();
        let mut tuples = base.tuples;
        let mut any_fail = false;
        let mut any_unknown = base.verdict == Verdict::Unknown;
        for cone in self.fan.cones() {
            let m = self.tuple_dim(cone.id);
            if m < 1 || m > n - 1 {
                continue;
            }
            let class = &self.classes[cone.id];
            if class.kind != TupleKind::StrictlySemiOrigin {
                continue;
            }
            let theta_c = n - class.theta.len();
            if m + 1 > theta_c {
                continue;
            }
            let (verdict, detail) = match self.lifted_variety_empty(cone.id, m, class) {
                Ok(true) => (Verdict::Pass, String::new()),
                Ok(false) => (
                    Verdict::Fail,
                    format!("overdetermined lifted variety of cone {} is nonempty", cone.id),
                ),
                Err(_) => (
                    Verdict::Unknown,
                    format!("lifted variety of cone {} not decidable", cone.id),
                ),
            };
            match verdict {
                Verdict::Fail => any_fail = true,
                Verdict::Unknown => any_unknown = true,
                _ => {}
            }
            tuples.push(TupleCheck {
                cone: cone.id,
                verdict,
                detail,
            });
        }
        let verdict = if any_fail {
            Verdict::Fail
        } else if any_unknown {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
        TbgReport { verdict, tuples }
    }

    fn lifted_variety_empty(&self, cone: usize, m: usize, class: &TupleClass) -> Result<bool> {
        let ct = self.chain_for(cone)?;
        let f = self.restricted_map(&ct)?;
        let variety: Vec<Polynomial> = (0..self.n())
            .filter(|i| !class.theta.contains(i))
            .map(|i| f[i].clone())
            .collect();
        let roots = solve_zero_dim(&variety, m, self.field())?;
        Ok(roots.is_empty())
    }

    /// Properness certificate: the coordinate-axis necessary condition,
    /// then the sufficient criterion (no almost-semi-origin tuples and all
    /// semi-origin tuples basic, among tuples passing the
    /// zero-dimensional-member filter), then an explicit witness.
    pub fn properness_certificate(&self) -> Result<Certificate> {
        let n = self.n();
        // Necessary condition: the union of the Newton polytopes of the
        // original components must meet every coordinate axis.
        for k in 0..n {
            let hit = self.original.components.iter().any(|p| {
                p.support()
                    .iter()
                    .any(|a| a[k] > 0 && a.iter().enumerate().all(|(j, &x)| j == k || x == 0))
            });
            if !hit {
                return Ok(Certificate::NonProper {
                    witness: self.original.value_at_origin(),
                    reason: format!(
                        "no component has a pure x{}-power: f is constant on that axis, so f(0) is a non-proper value",
                        k + 1
                    ),
                });
            }
        }
        let tbg = self.check_tbg();
        if tbg.verdict == Verdict::Fail {
            return Ok(Certificate::Unknown {
                reason: "the map is not T-boundary generic; the polytope criteria do not apply"
                    .into(),
            });
        }
        if tbg.verdict == Verdict::Unknown {
            return Ok(Certificate::Unknown {
                reason: "T-boundary genericity could not be decided".into(),
            });
        }
        let mut sufficient = true;
        for cone in self.fan.cones() {
            let m = self.tuple_dim(cone.id);
            if m < 1 || m > n - 1 {
                continue;
            }
            let class = &self.classes[cone.id];
            if !class.passes_zero_dim_filter {
                continue;
            }
            if class.almost_semi_origin {
                sufficient = false;
                break;
            }
            if class.is_semi_origin() && !class.basic {
                sufficient = false;
                break;
            }
        }
        if sufficient {
            return Ok(Certificate::Proper {
                reason: "no almost-semi-origin tuples and every semi-origin tuple is basic".into(),
            });
        }
        let desc = self.jelonek_set()?;
        if let Some(comp) = desc.components.iter().find(|c| c.status != Status::Unresolved) {
            if let Some(w) = sample_exact_point(comp, n) {
                return Ok(Certificate::NonProper {
                    witness: w,
                    reason: "the emitted Jelonek set is nonempty".into(),
                });
            }
        }
        if desc.components.is_empty() {
            Ok(Certificate::Unknown {
                reason: "the sufficient criterion fails but the computed Jelonek set is empty"
                    .into(),
            })
        } else {
            Ok(Certificate::Unknown {
                reason: "only unresolved components were found".into(),
            })
        }
    }

    /// A positive-degree polynomial curve through y inside the component.
    pub fn uniruled_witness(&self, y: &[Rat], comp: &Component) -> Result<Vec<Polynomial>> {
        let n = self.n();
        if comp.status == Status::Unresolved {
            return Err(Error::SolverCapability("unresolved component".into()));
        }
        if !comp.equations.is_empty() {
            for eq in &comp.equations {
                if !eq.eval_rat(y).is_zero() {
                    return Err(Error::NotAMember);
                }
            }
            // direction in the kernel of the linear parts
            let dir = rational_kernel_direction(&comp.equations, n)?;
            let phi: Vec<Polynomial> = (0..n)
                .map(|i| {
                    Polynomial::from_terms(
                        1,
                        [
                            (vec![0], y[i].clone()),
                            (vec![1], dir[i].clone()),
                        ],
                    )
                })
                .collect();
            return Ok(phi);
        }
        if let Some(f) = &comp.parametrization {
            if comp.m == 0 {
                return Err(Error::SolverCapability(
                    "no positive-degree curve through an isolated point component".into(),
                ));
            }
            if comp.m != 1 {
                return Err(Error::SolverCapability(
                    "uniruledness witness implemented for one-parameter sets".into(),
                ));
            }
            // find an exact preimage rho with F(rho) = y
            let system: Vec<Polynomial> = f
                .iter()
                .zip(y)
                .map(|(fi, yi)| fi.sub(&Polynomial::constant(1, yi.clone())))
                .collect();
            let roots = common_torus_roots_univariate(&system, self.field())?;
            let rho = roots
                .iter()
                .filter_map(|(r, _)| r.as_rational().cloned())
                .next()
                .ok_or(Error::NotAMember)?;
            // phi(t) = F((1 - t) rho)
            let phi: Vec<Polynomial> = f
                .iter()
                .map(|fi| compose_univariate_affine(fi, &rho, &(-rho.clone())))
                .collect();
            for (p, yi) in phi.iter().zip(y) {
                debug_assert_eq!(&p.eval_rat(&[Rat::zero()]), yi);
            }
            if phi.iter().all(|p| p.total_degree() < 1) {
                return Err(Error::Internal("witness curve is constant".into()));
            }
            return Ok(phi);
        }
        Err(Error::SolverCapability(
            "no witness construction for this component".into(),
        ))
    }

    /// Checks that sampled points of X_gamma are limits of X_gamma' points
    /// (Prop-7.2-style stratification), numerically at tolerance `tol`.
    pub fn stratification_check(
        &self,
        gamma: usize,
        gamma_prime: usize,
        samples: usize,
        tol: f64,
        seed: u64,
    ) -> Result<bool> {
        let t = self.fan.tuple_of(gamma);
        let tp = self.fan.tuple_of(gamma_prime);
        if !t.is_subtuple_of(tp) || tp.tdim != t.tdim + 1 || tp.tdim > self.n() - 1 {
            return Err(Error::InvalidClass(
                "stratification check requires adjacent semi-origin tuples".into(),
            ));
        }
        let lower = self.components_of_tuple(gamma)?;
        let upper = self.components_of_tuple(gamma_prime)?;
        if lower.is_empty() {
            return Ok(true); // vacuous
        }
        if upper.iter().any(|c| c.status == Status::Unresolved) {
            return Err(Error::SolverCapability("unresolved upper stratum".into()));
        }
        let pts = crate::oracle::sample_component_points(&lower, samples, self.field(), seed);
        if pts.is_empty() {
            return Ok(true);
        }
        for p in &pts {
            let d = upper
                .iter()
                .map(|c| crate::oracle::component_distance(c, p, self.field()))
                .fold(f64::INFINITY, f64::min);
            if !(d <= tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Components generated by a single tuple (by its class).
    pub fn components_of_tuple(&self, cone: usize) -> Result<Vec<Component>> {
        let class = &self.classes[cone];
        match class.kind {
            TupleKind::Origin => Ok(vec![self.parametrized_set(cone)?]),
            TupleKind::StrictlySemiOrigin => self.lifted_set(cone),
            TupleKind::NotSemiOrigin if class.almost_semi_origin => {
                self.jacobian_hyperplanes(cone)
            }
            _ => Ok(vec![]),
        }
    }
}

fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Implicit equation of a parametrized plane curve (t -> (F1, F2)) by
/// eliminating the parameter with a resultant; primitive and sign-fixed.
pub fn implicitize_curve(f: &[Polynomial]) -> Polynomial {
    debug_assert_eq!(f.len(), 2);
    // variables: t, y1, y2
    let emb = |p: &Polynomial| p.embed(3);
    let q1 = emb(&f[0]).sub(&Polynomial::variable(3, 1));
    let q2 = emb(&f[1]).sub(&Polynomial::variable(3, 2));
    let r = resultant(&q1, &q2, 0);
    let r2 = Polynomial::from_terms(
        2,
        r.terms().map(|(e, c)| (vec![e[1], e[2]], c.clone())),
    );
    normalize_equation(r2)
}

/// Scales a polynomial to integer primitive form with a positive leading
/// (graded-lex greatest) coefficient.
pub fn normalize_equation(p: Polynomial) -> Polynomial {
    if p.is_zero() {
        return p;
    }
    use num_bigint::BigInt;
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        num_gcd = num_integer::gcd(num_gcd, c.numer().clone());
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    let scale = Rat::new(den_lcm, num_gcd.abs());
    let mut q = p.scale(&scale);
    // sign: greatest term in graded-lex gets a positive coefficient
    let mut keys: Vec<_> = q.terms().map(|(e, _)| e.clone()).collect();
    keys.sort_by(|a, b| crate::poly::grlex(b, a));
    if q.coeff(&keys[0]).is_negative() {
        q = q.neg();
    }
    q
}

/// Substitutes y_i -> y_i + s_i in an affine-linear polynomial.
fn shift_y_arguments(p: &Polynomial, shift: &[Rat]) -> Polynomial {
    let n = p.nvars();
    debug_assert!(p.total_degree() <= 1);
    let mut q = p.clone();
    let mut delta = Rat::zero();
    for (e, c) in p.terms() {
        if let Some(i) = e.iter().position(|&x| x == 1) {
            delta += c * &shift[i];
        }
    }
    q.add_term(&vec![0; n], delta);
    q
}

fn compose_univariate_affine(p: &Polynomial, a: &Rat, b: &Rat) -> Polynomial {
    // p(a + b t) for univariate p
    let mut acc = Polynomial::zero(1);
    let lin = Polynomial::from_terms(1, [(vec![0], a.clone()), (vec![1], b.clone())]);
    let mut keys: Vec<_> = p.terms().map(|(e, c)| (e[0], c.clone())).collect();
    keys.sort_by(|x, y| y.0.cmp(&x.0));
    let maxdeg = keys.first().map(|(d, _)| *d).unwrap_or(0);
    let mut pow = Polynomial::constant(1, Rat::one());
    let mut pows = vec![pow.clone()];
    for _ in 0..maxdeg {
        pow = pow.mul(&lin);
        pows.push(pow.clone());
    }
    for (d, c) in keys {
        acc = acc.add(&pows[d as usize].scale(&c));
    }
    acc
}

/// A nonzero rational direction annihilating the linear parts of a set of
/// affine-linear equations.
fn rational_kernel_direction(eqs: &[Polynomial], n: usize) -> Result<Vec<Rat>> {
    use num_bigint::BigInt;
    let mut rows: Vec<Vec<i64>> = vec![];
    for eq in eqs {
        let mut den_lcm = BigInt::one();
        for (_, c) in eq.terms() {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut row = vec![0i64; n];
        for (e, c) in eq.terms() {
            if let Some(i) = e.iter().position(|&x| x == 1) {
                let v = (c * Rat::from_integer(den_lcm.clone())).to_integer();
                row[i] = i64::try_from(v).map_err(|_| {
                    Error::SolverCapability("equation coefficients too large".into())
                })?;
            }
        }
        rows.push(row);
    }
    let kernel = crate::mat::kernel_basis(&rows);
    let dir = kernel
        .into_iter()
        .find(|v| v.iter().any(|&x| x != 0))
        .ok_or_else(|| Error::Internal("linear component has no direction".into()))?;
    Ok(dir.into_iter().map(rat).collect())
}

/// A rational point on a component, for witnesses.
fn sample_exact_point(comp: &Component, n: usize) -> Option<Vec<Rat>> {
    if let Some(f) = &comp.parametrization {
        let args = vec![Rat::one(); comp.m];
        return Some(f.iter().map(|p| p.eval_rat(&args)).collect());
    }
    if !comp.equations.is_empty() {
        // solve the affine-linear system by exact elimination
        return solve_affine_point(&comp.equations, n);
    }
    None
}

fn solve_affine_point(eqs: &[Polynomial], n: usize) -> Option<Vec<Rat>> {
    // Gaussian elimination over Q on [A | -const]
    let mut rows: Vec<(Vec<Rat>, Rat)> = eqs
        .iter()
        .map(|eq| {
            let mut lin = vec![Rat::zero(); n];
            let mut konst = Rat::zero();
            for (e, c) in eq.terms() {
                if let Some(i) = e.iter().position(|&x| x == 1) {
                    lin[i] = c.clone();
                } else {
                    konst = c.clone();
                }
            }
            (lin, -konst)
        })
        .collect();
    let mut y = vec![Rat::zero(); n];
    let mut used = vec![false; n];
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&k| !rows[k].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let p = rows[r].0[col].clone();
        for k in 0..rows.len() {
            if k != r && !rows[k].0[col].is_zero() {
                let factor = &rows[k].0[col] / &p;
                for j in 0..n {
                    let d = &rows[r].0[j] * &factor;
                    rows[k].0[j] -= d;
                }
                let d = &rows[r].1 * &factor;
                rows[k].1 -= d;
            }
        }
        used[col] = true;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // free variables at 0; check consistency
    for k in (0..rows.len()).rev() {
        if rows[k].0.iter().all(|c| c.is_zero()) {
            if !rows[k].1.is_zero() {
                return None;
            }
            continue;
        }
        let col = rows[k].0.iter().position(|c| !c.is_zero()).unwrap();
        let mut rhs = rows[k].1.clone();
        for j in col + 1..n {
            rhs -= &rows[k].0[j] * &y[j];
        }
        y[col] = rhs / rows[k].0[col].clone();
    }
    Some(y)
}

/// Deduplicates components: identical linear sets merge, exact points
/// absorbed by components that contain them, duplicate curves merged.
fn dedup_components(comps: Vec<Component>, n: usize, field: Field) -> Vec<Component> {
    let mut out: Vec<Component> = vec![];
    let mut ordered = comps;
    ordered.sort_by_key(|c| {
        (
            c.is_f0 as u8,
            c.kind,
            c.cone.unwrap_or(usize::MAX),
            c.canonical_key(),
        )
    });
    'next: for comp in ordered {
        for kept in &out {
            if same_component(kept, &comp, n, field) {
                continue 'next;
            }
        }
        out.push(comp);
    }
    // absorb exact point components (m = 0) into linear components that
    // contain them exactly
    let mut filtered: Vec<Component> = vec![];
    for i in 0..out.len() {
        let c = &out[i];
        let absorbed = c.m == 0
            && c.parametrization.is_some()
            && out.iter().enumerate().any(|(j, other)| {
                if i == j || other.equations.is_empty() {
                    return false;
                }
                let p: Vec<Rat> = c
                    .parametrization
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|q| q.eval_rat(&[]))
                    .collect();
                other.equations.iter().all(|eq| eq.eval_rat(&p).is_zero())
            });
        if !absorbed {
            filtered.push(out[i].clone());
        }
    }
    filtered
}

fn same_component(a: &Component, b: &Component, _n: usize, field: Field) -> bool {
    // identical exact linear sets
    if !a.equations.is_empty() && !b.equations.is_empty() {
        let mut ea: Vec<String> = a
            .equations
            .iter()
            .map(|e| format!("{:?}", e))
            .collect();
        let mut eb: Vec<String> = b
            .equations
            .iter()
            .map(|e| format!("{:?}", e))
            .collect();
        ea.sort();
        eb.sort();
        return ea == eb;
    }
    // identical parametrized curves: equal implicit equation plus mutual
    // exact membership of a few sampled points
    if let (Some(fa), Some(fb)) = (&a.parametrization, &b.parametrization) {
        if a.m == 0 && b.m == 0 {
            let pa: Vec<Rat> = fa.iter().map(|p| p.eval_rat(&[])).collect();
            let pb: Vec<Rat> = fb.iter().map(|p| p.eval_rat(&[])).collect();
            return pa == pb;
        }
        if a.m == 1 && b.m == 1 {
            if let (Some(ia), Some(ib)) = (&a.implicit, &b.implicit) {
                if ia != ib {
                    return false;
                }
                let samples = [rat(1), rat(-1), rat(2), rat(-2), rat(3)];
                let member = |f: &[Polynomial], p: &[Rat]| -> bool {
                    let sys: Vec<Polynomial> = f
                        .iter()
                        .zip(p)
                        .map(|(fi, pi)| fi.sub(&Polynomial::constant(1, pi.clone())))
                        .collect();
                    match common_torus_roots_univariate(&sys, field) {
                        Ok(roots) => !roots.is_empty(),
                        Err(_) => false,
                    }
                };
                return samples.iter().all(|t| {
                    let pa: Vec<Rat> = fa.iter().map(|p| p.eval_rat(std::slice::from_ref(t))).collect();
                    let pb: Vec<Rat> = fb.iter().map(|p| p.eval_rat(std::slice::from_ref(t))).collect();
                    member(fb, &pa) && member(fa, &pb)
                });
            }
        }
        return false;
    }
    false
}

/// Exact membership of a rational point in a one-parameter parametrized
/// component (a preimage in the torus exists).
pub fn point_on_parametrized_curve(
    f: &[Polynomial],
    point: &[Rat],
    field: Field,
) -> Result<bool> {
    let sys: Vec<Polynomial> = f
        .iter()
        .zip(point)
        .map(|(fi, pi)| fi.sub(&Polynomial::constant(1, pi.clone())))
        .collect();
    Ok(!common_torus_roots_univariate(&sys, field)?.is_empty())
}

/// Convenience: map component index of a description to a BTreeMap by kind.
pub fn kind_histogram(desc: &NonPropernessDescription) -> BTreeMap<ComponentKind, usize> {
    let mut h = BTreeMap::new();
    for c in &desc.components {
        *h.entry(c.kind).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn ex14_map(field: Field) -> PolynomialMap {
        let vs = vars(&["u", "v"]);
        let f1 = parse_polynomial("v*(u-1)", &vs).unwrap();
        let f2 = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
        PolynomialMap::new(vec![f1, f2], field).unwrap()
    }

    #[test]
    fn example_map_jelonek_set() {
        for field in [Field::Real, Field::Complex] {
            let engine = Engine::new(ex14_map(field)).unwrap();
            assert!(!engine.original.is_normalized());
            assert!(engine.map.is_normalized());
            let desc = engine.jelonek_set().unwrap();
            assert!(desc.includes_f0);
            assert_eq!(desc.f0, vec![rat(0), rat(0)]);
            assert_eq!(desc.components.len(), 2, "{:#?}", desc.components);
            let curve = desc
                .components
                .iter()
                .find(|c| c.kind == ComponentKind::Parametrized)
                .unwrap();
            // derived orientation: the curve is {(t, t^2)}, not the printed
            // transpose; its implicit equation is y1^2 - y2 = 0.
            let f = curve.parametrization.as_ref().unwrap();
            assert_eq!(f[0], parse_polynomial("t", &vars(&["t"])).unwrap());
            assert_eq!(f[1], parse_polynomial("t^2", &vars(&["t"])).unwrap());
            let implicit = curve.implicit.as_ref().unwrap();
            assert_eq!(
                implicit,
                &parse_polynomial("y1^2 - y2", &vars(&["y1", "y2"])).unwrap()
            );
            let line = desc
                .components
                .iter()
                .find(|c| c.kind == ComponentKind::JacobianHyperplane)
                .unwrap();
            assert_eq!(line.equations.len(), 1);
            assert_eq!(
                line.equations[0],
                parse_polynomial("y1", &vars(&["y1", "y2"])).unwrap()
            );
        }
    }

    #[test]
    fn example_map_toric_set() {
        let engine = Engine::new(ex14_map(Field::Real)).unwrap();
        let desc = engine.toric_set().unwrap();
        assert_eq!(desc.components.len(), 2, "{:#?}", desc.components);
        assert!(desc.includes_f0);
        let curve = desc
            .components
            .iter()
            .find(|c| c.m == 1)
            .unwrap();
        // derived orientation: {(t, 2 t^2)} as a set; emitted as (-t, 2 t^2)
        let implicit = curve.implicit.as_ref().unwrap();
        assert_eq!(
            implicit,
            &parse_polynomial("2*y1^2 - y2", &vars(&["y1", "y2"])).unwrap()
        );
        let point = desc.components.iter().find(|c| c.m == 0).unwrap();
        assert!(point.is_f0);
        let vals: Vec<Rat> = point
            .parametrization
            .as_ref()
            .unwrap()
            .iter()
            .map(|p| p.eval_rat(&[]))
            .collect();
        assert_eq!(vals, vec![rat(0), rat(0)]);
    }

    #[test]
    fn example_map_is_tbg() {
        let engine = Engine::new(ex14_map(Field::Real)).unwrap();
        let rep = engine.check_tbg();
        assert_eq!(rep.verdict, Verdict::Pass, "{:#?}", rep.tuples);
    }

    #[test]
    fn certificates() {
        // the coordinate map (shifted into the torus) is proper
        let vs = vars(&["x1", "x2"]);
        let f1 = parse_polynomial("x1 + 1", &vs).unwrap();
        let f2 = parse_polynomial("x2 + 1", &vs).unwrap();
        let map = PolynomialMap::new(vec![f1, f2], Field::Real).unwrap();
        let engine = Engine::new(map).unwrap();
        match engine.properness_certificate().unwrap() {
            Certificate::Proper { .. } => {}
            other => panic!("expected Proper, got {:?}", other),
        }

        // a map whose polytopes miss the x2-axis: non-proper with witness f(0)
        let g1 = parse_polynomial("x1 + 1", &vs).unwrap();
        let g2 = parse_polynomial("x1*x2 + 2", &vs).unwrap();
        let map = PolynomialMap::new(vec![g1, g2], Field::Real).unwrap();
        let engine = Engine::new(map).unwrap();
        match engine.properness_certificate().unwrap() {
            Certificate::NonProper { witness, .. } => {
                assert_eq!(witness, vec![rat(1), rat(2)]);
            }
            other => panic!("expected NonProper, got {:?}", other),
        }

        // the worked example is non-proper with a parabola witness
        let engine = Engine::new(ex14_map(Field::Real)).unwrap();
        match engine.properness_certificate().unwrap() {
            Certificate::NonProper { witness, .. } => {
                // the witness satisfies the curve equation y2 = y1^2
                assert_eq!(&witness[1], &(&witness[0] * &witness[0]));
            }
            other => panic!("expected NonProper, got {:?}", other),
        }
    }

    #[test]
    fn uniruled_witnesses() {
        let engine = Engine::new(ex14_map(Field::Real)).unwrap();
        let desc = engine.jelonek_set().unwrap();
        let curve = desc
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::Parametrized)
            .unwrap();
        // y = (1,1) lies on the parabola with rho = 1
        let phi = engine.uniruled_witness(&[rat(1), rat(1)], curve).unwrap();
        let tvars = vars(&["t"]);
        assert_eq!(phi[0], parse_polynomial("1 - t", &tvars).unwrap());
        assert_eq!(phi[1], parse_polynomial("(1-t)^2", &tvars).unwrap());
        assert!(phi.iter().any(|p| p.total_degree() >= 1));
        // a point off the curve is rejected
        assert!(matches!(
            engine.uniruled_witness(&[rat(1), rat(3)], curve),
            Err(Error::NotAMember)
        ));
        // a line witness stays in the line
        let line = desc
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::JacobianHyperplane)
            .unwrap();
        let phi = engine.uniruled_witness(&[rat(0), rat(5)], line).unwrap();
        assert!(phi.iter().any(|p| p.total_degree() >= 1));
        // phi stays inside {y1 = 0}
        assert!(phi[0].is_zero());
    }
}
