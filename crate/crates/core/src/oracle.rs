//! Numeric escape oracle, independent of the symbolic pipeline: a point y
//! is confirmed as a non-properness value when damped-Newton runs started
//! on large torus shells (directions drawn from the fan) drive f(x) to y
//! while |x| stays on the shell scale, with the residual shrinking as the
//! shells grow. A sweep in the other direction collects straight-ray
//! limits of f and checks they land on emitted components.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Component, Status};
use crate::fan::Fan;
use crate::mat::IVec;
use crate::poly::{rat_to_f64, Field, Polynomial, PolynomialMap};
use crate::poly::Rat;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub shells: Vec<f64>,
    pub tol: f64,
    pub seed: u64,
    pub max_newton_iters: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            shells: vec![1e3, 1e4, 1e5],
            tol: 1e-6,
            seed: 17,
            max_newton_iters: 120,
        }
    }
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Solves a small complex linear system by Gaussian elimination with
/// partial pivoting. Returns None when numerically singular.
fn solve_linear(a: &mut [Vec<Complex64>], b: &mut [Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .norm()
                .partial_cmp(&a[j][col].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    let d = f * a[col][k];
                    a[row][k] -= d;
                }
                let d = f * b[col];
                b[row] -= d;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

struct MapEval {
    components: Vec<Polynomial>,
    jacobian: Vec<Vec<Polynomial>>,
    real: bool,
}

impl MapEval {
    fn new(map: &PolynomialMap) -> Self {
        let n = map.n();
        let jacobian = map
            .components
            .iter()
            .map(|p| (0..n).map(|j| p.partial_derivative(j)).collect())
            .collect();
        MapEval {
            components: map.components.clone(),
            jacobian,
            real: map.field == Field::Real,
        }
    }

    fn residual(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        self.components
            .iter()
            .zip(y)
            .map(|(p, yi)| p.eval_c64(x) - yi)
            .collect()
    }

    fn jac(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval_c64(x)).collect())
            .collect()
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Damped Newton on the square system f(x) = y from a given start; returns
/// the final point and residual norm.
fn newton_track(
    eval: &MapEval,
    y: &[Complex64],
    start: &[Complex64],
    iters: usize,
) -> (Vec<Complex64>, f64) {
    let mut x = start.to_vec();
    let mut r = eval.residual(&x, y);
    let mut rn = norm(&r);
    for _ in 0..iters {
        let mut a = eval.jac(&x);
        let mut b: Vec<Complex64> = r.iter().map(|c| -c).collect();
        let Some(delta) = solve_linear(&mut a, &mut b) else {
            break;
        };
        // backtracking line search
        let mut step = 1.0f64;
        let mut improved = false;
        for _ in 0..28 {
            let xt: Vec<Complex64> = x
                .iter()
                .zip(&delta)
                .map(|(xi, di)| xi + di * cx(step))
                .collect();
            let xt = if eval.real {
                xt.iter().map(|c| cx(c.re)).collect()
            } else {
                xt
            };
            let rt = eval.residual(&xt, y);
            let rtn = norm(&rt);
            if rtn < rn {
                x = xt;
                r = rt;
                rn = rtn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved || rn < 1e-14 {
            break;
        }
    }
    (x, rn)
}

fn seed_directions(rays: &[IVec], fan: &Fan, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut dirs: Vec<IVec> = rays.to_vec();
    for r in fan.rays() {
        if !dirs.contains(r) {
            dirs.push(r.clone());
        }
    }
    // a few random integer directions with at least one negative entry
    for _ in 0..6 {
        let d: IVec = (0..n).map(|_| rng.gen_range(-3i64..=3)).collect();
        if d.iter().any(|&x| x < 0) && d.iter().any(|&x| x != 0) {
            dirs.push(d);
        }
    }
    dirs.retain(|d| d.iter().any(|&x| x < 0));
    dirs.iter()
        .map(|d| {
            let m = d.iter().map(|&x| x.abs()).max().unwrap_or(1).max(1) as f64;
            d.iter().map(|&x| x as f64 / m).collect()
        })
        .collect()
}

fn sign_patterns(n: usize, real: bool, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    if real {
        (0..(1usize << n))
            .map(|mask| {
                (0..n)
                    .map(|i| cx(if mask & (1 << i) != 0 { -1.0 } else { 1.0 }))
                    .collect()
            })
            .collect()
    } else {
        (0..4)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
                    .collect()
            })
            .collect()
    }
}

/// Confirms that y is an escape value of the map: the fibers over y + t mu
/// (generic mu, t shrinking to the tolerance) contain solutions of growing
/// norm whose images converge to y. This is the strictly-unstable-solution
/// characterization made numeric: solving the perturbed square systems is
/// well-conditioned, while the limit solution escapes. `rays` seeds the
/// search with the provenance cone; fan rays and random directions are
/// added.
pub fn confirm_escape_point(
    map: &PolynomialMap,
    fan: &Fan,
    y: &[Complex64],
    rays: &[IVec],
    cfg: &OracleConfig,
) -> bool {
    let n = map.n();
    let eval = MapEval::new(map);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dirs = seed_directions(rays, fan, &mut rng, n);
    let scale_y = 1.0f64.max(norm(y));
    let t0 = 1.0f64;
    for _attempt in 0..4 {
        let mu: Vec<Complex64> = (0..n)
            .map(|_| {
                if eval.real {
                    cx(rng.gen_range(-1.0..1.0))
                } else {
                    Complex64::from_polar(
                        rng.gen_range(0.3..1.0),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                }
            })
            .collect();
        // solutions of the first rung from shell seeds
        let target0: Vec<Complex64> = y.iter().zip(&mu).map(|(a, b)| a + b * cx(t0)).collect();
        let mut starts: Vec<Vec<Complex64>> = vec![];
        for dir in &dirs {
            for sigma in sign_patterns(n, eval.real, &mut rng) {
                for scale in [10f64, 100.0, 1000.0] {
                    starts.push(
                        (0..n)
                            .map(|i| sigma[i] * cx(scale.powf(-dir[i])))
                            .collect(),
                    );
                }
            }
        }
        for _ in 0..8 {
            starts.push(
                (0..n)
                    .map(|_| {
                        let v = rng.gen_range(-30.0..30.0);
                        if eval.real {
                            cx(v)
                        } else {
                            Complex64::new(v, rng.gen_range(-30.0..30.0))
                        }
                    })
                    .collect(),
            );
        }
        let debug = std::env::var("NONPROPER_ORACLE_DEBUG").is_ok();
        let mut first_solutions: Vec<Vec<Complex64>> = vec![];
        for s in &starts {
            let (x, rn) = newton_track(&eval, &target0, s, cfg.max_newton_iters);
            if debug {
                eprintln!("seed {:?} -> rn {:e} x {:?}", s.iter().map(|c| c.re).collect::<Vec<_>>(), rn, x.iter().map(|c| c.re).collect::<Vec<_>>());
            }
            if rn < 1e-9 * scale_y {
                let dup = first_solutions.iter().any(|q| {
                    norm(&q.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>())
                        < 1e-6 * (1.0 + norm(&x))
                });
                if !dup {
                    first_solutions.push(x);
                }
            }
            if first_solutions.len() >= 12 {
                break;
            }
        }
        // track each solution down the ladder with adaptive geometric
        // steps; watch the norms grow
        let t_min = (0.5 * cfg.tol / scale_y).min(1e-6);
        for sol in first_solutions {
            let start_norm = norm(&sol).max(1.0);
            if debug {
                eprintln!("tracking from {:?}", sol.iter().map(|c| c.re).collect::<Vec<_>>());
            }
            let (x, t_reached) = track_to(&eval, y, &mu, sol, t0, t_min, cfg);
            let final_norm = norm(&x);
            if debug {
                eprintln!(
                    "  tracked to t = {:e}, |x| = {:e}",
                    t_reached, final_norm
                );
            }
            let escaped = final_norm > 20.0 * start_norm.min(1e3) && final_norm > 1e2;
            if !escaped {
                continue;
            }
            // Exact acceptance: floating evaluation has a noise floor of
            // eps * (largest monomial), which the escaping coordinates
            // push far above the tolerance; Gaussian-rational arithmetic
            // certifies the image distance without a floor.
            if let Some(err) = exact_image_distance(map, y, &x) {
                if err <= cfg.tol * scale_y {
                    return true;
                }
            }
            if let Some(xe) = exact_descend(map, y, &mu, &x, t_reached, cfg) {
                let xen: f64 = crate::gauss::norm_sqr_f64(&xe).sqrt();
                if xen > 20.0 * start_norm.min(1e3) && xen > 1e2 {
                    let xf: Vec<Complex64> = xe.iter().map(|g| g.to_c64()).collect();
                    let _ = xf;
                    if let Some(err) = exact_image_distance_grat(map, y, &xe) {
                        if debug {
                            eprintln!("  exact descent reached |x| = {:e}, image {:e}", xen, err);
                        }
                        if err <= cfg.tol * scale_y {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Exact ||f(x) - y|| for a floating point, via Gaussian rationals.
fn exact_image_distance(map: &PolynomialMap, y: &[Complex64], x: &[Complex64]) -> Option<f64> {
    let xg: Option<Vec<crate::gauss::GRat>> =
        x.iter().map(|c| crate::gauss::GRat::from_c64(*c)).collect();
    exact_image_distance_grat(map, y, &xg?)
}

fn exact_image_distance_grat(
    map: &PolynomialMap,
    y: &[Complex64],
    x: &[crate::gauss::GRat],
) -> Option<f64> {
    use crate::gauss::{eval_poly, GRat};
    let yg: Option<Vec<GRat>> = y.iter().map(|c| GRat::from_c64(*c)).collect();
    let yg = yg?;
    let r: Vec<GRat> = map
        .components
        .iter()
        .zip(&yg)
        .map(|(p, yi)| eval_poly(p, x).sub(yi))
        .collect();
    Some(crate::gauss::norm_sqr_f64(&r).sqrt())
}

/// Continues the homotopy descent exactly: factor-1/2 rungs with the
/// power-law predictor (an exact multiplication for a constant factor)
/// and Gaussian-rational Newton correction, coordinates rounded to 200-bit
/// dyadics to bound growth. Stops when the homotopy offset alone is below
/// half the tolerance.
fn exact_descend(
    map: &PolynomialMap,
    y: &[Complex64],
    mu: &[Complex64],
    x0: &[Complex64],
    t_start: f64,
    cfg: &OracleConfig,
) -> Option<Vec<crate::gauss::GRat>> {
    use crate::gauss::{eval_poly, GRat};
    let n = map.n();
    let scale_y = 1.0f64.max(norm(y));
    let yg: Option<Vec<GRat>> = y.iter().map(|c| GRat::from_c64(*c)).collect();
    let yg = yg?;
    let mug: Option<Vec<GRat>> = mu.iter().map(|c| GRat::from_c64(*c)).collect();
    let mug = mug?;
    let mu_norm = norm(mu).max(1e-9);
    let jac: Vec<Vec<Polynomial>> = map
        .components
        .iter()
        .map(|p| (0..n).map(|j| p.partial_derivative(j)).collect())
        .collect();
    let bits = 200u32;
    let newton = |x: &mut Vec<GRat>, t: &Rat, tol_rn: f64| -> bool {
        for _ in 0..10 {
            let target: Vec<GRat> = yg
                .iter()
                .zip(&mug)
                .map(|(a, b)| a.add(&b.scale(t)))
                .collect();
            let r: Vec<GRat> = map
                .components
                .iter()
                .zip(&target)
                .map(|(p, ti)| eval_poly(p, x).sub(ti))
                .collect();
            let rn = crate::gauss::norm_sqr_f64(&r).sqrt();
            if rn <= tol_rn {
                return true;
            }
            let a: Vec<Vec<GRat>> = jac
                .iter()
                .map(|row| row.iter().map(|p| eval_poly(p, x)).collect())
                .collect();
            let b: Vec<GRat> = r.iter().map(|v| v.neg()).collect();
            let Some(delta) = crate::gauss::solve_linear(a, b) else {
                return false;
            };
            for (xi, d) in x.iter_mut().zip(&delta) {
                *xi = xi.add(d).round_dyadic(bits);
            }
        }
        false
    };
    let mut t: Rat = Rat::from_float(t_start)?;
    let mut tf = t_start;
    let mut x: Vec<GRat> = x0
        .iter()
        .map(|c| GRat::from_c64(*c).map(|g| g.round_dyadic(bits)))
        .collect::<Option<_>>()?;
    // settle at the starting parameter first
    if !newton(&mut x, &t, (0.005 * tf * scale_y).max(1e-300)) {
        return None;
    }
    let mut prev: Option<Vec<GRat>> = None;
    let half = crate::poly::rat_frac(1, 2);
    while tf * mu_norm > 0.4 * cfg.tol * scale_y {
        let predicted: Vec<GRat> = match &prev {
            Some(xp) => x
                .iter()
                .zip(xp)
                .map(|(cur, old)| {
                    if old.is_zero() {
                        cur.clone()
                    } else {
                        cur.mul(&cur.div(old).unwrap_or_else(GRat::zero))
                            .round_dyadic(bits)
                    }
                })
                .collect(),
            None => x.clone(),
        };
        let t_next = &t * &half;
        let tf_next = tf * 0.5;
        let mut xn = predicted;
        if !newton(&mut xn, &t_next, (0.005 * tf_next * scale_y).max(1e-300)) {
            return None;
        }
        prev = Some(x);
        x = xn;
        t = t_next;
        tf = tf_next;
        if tf < 1e-12 {
            break;
        }
    }
    Some(x)
}

/// Path-tracks a solution of f(x) = y + t mu from t0 down to t_min with an
/// Euler predictor and Newton corrector, halving the geometric step on
/// corrector failure. Returns the final point when tracking survives.
fn track_to(
    eval: &MapEval,
    y: &[Complex64],
    mu: &[Complex64],
    mut x: Vec<Complex64>,
    t0: f64,
    t_min: f64,
    cfg: &OracleConfig,
) -> (Vec<Complex64>, f64) {
    let scale_y = 1.0f64.max(norm(y));
    let mut t = t0;
    let mut factor = 0.7f64;
    let mut stalls = 0;
    let mut prev: Option<(f64, Vec<Complex64>)> = None;
    while t > t_min {
        let t_next = (t * factor).max(t_min);
        // Predictor. The escaping coordinates behave like c * t^k, so once
        // two points of the path are known, extrapolate each coordinate as
        // a power law in t (exact for Puiseux-type asymptotics); the first
        // step falls back to an Euler step x += J^{-1} (t_next - t) mu.
        let predicted: Vec<Complex64> = match &prev {
            Some((tp, xp)) => {
                let lambda = (t_next / t).ln() / (t / tp).ln();
                x.iter()
                    .zip(xp)
                    .map(|(cur, old)| {
                        if old.norm() > 1e-280 && cur.norm() > 1e-280 {
                            cur * (cur / old).powf(lambda)
                        } else {
                            *cur
                        }
                    })
                    .collect()
            }
            None => {
                let mut a = eval.jac(&x);
                let mut b: Vec<Complex64> = mu.iter().map(|m| m * cx(t_next - t)).collect();
                match solve_linear(&mut a, &mut b) {
                    Some(delta) => x.iter().zip(&delta).map(|(xi, d)| xi + d).collect(),
                    None => x.clone(),
                }
            }
        };
        let target: Vec<Complex64> = y.iter().zip(mu).map(|(a, b)| a + b * cx(t_next)).collect();
        let (xt, rn) = newton_track(eval, &target, &predicted, cfg.max_newton_iters);
        // Staying on the path only needs the corrector error to be small
        // against the homotopy offset; the conditioning of the corrector
        // degenerates as the solution escapes, so a fixed tolerance would
        // stall where the image is already accurate.
        if rn > scale_y * (0.02 * t_next).max(1e-12) {
            factor = factor.sqrt();
            stalls += 1;
            if factor > 0.9999 || stalls > 60 {
                if std::env::var("NONPROPER_ORACLE_DEBUG").is_ok() {
                    eprintln!(
                        "  track stalled at t={:e} rn={:e} |x|={:e} stalls={}",
                        t_next,
                        rn,
                        norm(&x),
                        stalls
                    );
                }
                return (x, t);
            }
        } else {
            prev = Some((t, x.clone()));
            x = xt;
            t = t_next;
            factor = (factor * factor).max(0.6);
            // the image may reach the requested accuracy before t bottoms out
            if norm(&eval.residual(&x, y)) <= 0.9 * cfg.tol * scale_y {
                return (x, t);
            }
        }
    }
    (x, t)
}

/// Straight-ray sweep: follows x = sigma * s * R^{-alpha} along escape
/// directions, detects convergence of f across the shells, and returns
/// Richardson-extrapolated limit candidates.
pub fn sweep_escape_candidates(
    map: &PolynomialMap,
    fan: &Fan,
    cfg: &OracleConfig,
) -> Vec<Vec<Complex64>> {
    let n = map.n();
    let eval = MapEval::new(map);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut dirs: Vec<IVec> = fan.rays().to_vec();
    let ray_list = fan.rays().to_vec();
    for i in 0..ray_list.len() {
        for j in i + 1..ray_list.len() {
            let s: IVec = ray_list[i].iter().zip(&ray_list[j]).map(|(a, b)| a + b).collect();
            if s.iter().any(|&x| x != 0) {
                dirs.push(s);
            }
        }
    }
    for _ in 0..10 {
        let d: IVec = (0..n).map(|_| rng.gen_range(-3i64..=3)).collect();
        if d.iter().any(|&x| x != 0) {
            dirs.push(d);
        }
    }
    dirs.retain(|d| d.iter().any(|&x| x < 0));
    let shells = &cfg.shells;
    debug_assert!(shells.len() >= 3);
    let mut candidates: Vec<Vec<Complex64>> = vec![];
    for dir in &dirs {
        let m = dir.iter().map(|&x| x.abs()).max().unwrap().max(1) as f64;
        let e: Vec<f64> = dir.iter().map(|&x| x as f64 / m).collect();
        for sigma in sign_patterns(n, eval.real, &mut rng) {
            for _ in 0..3 {
                let s: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
                let images: Vec<Vec<Complex64>> = shells
                    .iter()
                    .map(|&shell| {
                        let x: Vec<Complex64> = (0..n)
                            .map(|i| sigma[i] * cx(s[i] * shell.powf(-e[i])))
                            .collect();
                        eval.components.iter().map(|p| p.eval_c64(&x)).collect()
                    })
                    .collect();
                let k = images.len();
                let d21: f64 = norm(
                    &images[k - 2]
                        .iter()
                        .zip(&images[k - 3])
                        .map(|(a, b)| a - b)
                        .collect::<Vec<_>>(),
                );
                let d32: f64 = norm(
                    &images[k - 1]
                        .iter()
                        .zip(&images[k - 2])
                        .map(|(a, b)| a - b)
                        .collect::<Vec<_>>(),
                );
                let bounded = norm(&images[k - 1]) < 1e7;
                if bounded && d32 < 0.2 * d21 + 1e-12 {
                    // Richardson extrapolation for an O(1/R) error term
                    let ratio = shells[k - 1] / shells[k - 2];
                    let limit: Vec<Complex64> = images[k - 1]
                        .iter()
                        .zip(&images[k - 2])
                        .map(|(a, b)| a + (a - b) / cx(ratio - 1.0))
                        .collect();
                    let dup = candidates
                        .iter()
                        .any(|c| {
                            norm(&c.iter().zip(&limit).map(|(a, b)| a - b).collect::<Vec<_>>())
                                < 1e-5 * (1.0 + norm(&limit))
                        });
                    if !dup {
                        candidates.push(limit);
                    }
                }
            }
        }
    }
    candidates
}

/// Numeric samples from a list of components (skipping unresolved ones).
pub fn sample_component_points(
    comps: &[Component],
    count: usize,
    field: Field,
    seed: u64,
) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    for comp in comps {
        if comp.status == Status::Unresolved {
            continue;
        }
        for _ in 0..count {
            if let Some(p) = sample_one(comp, field, &mut rng) {
                out.push(p);
            }
        }
    }
    out
}

fn sample_one(comp: &Component, field: Field, rng: &mut ChaCha8Rng) -> Option<Vec<Complex64>> {
    if let Some(f) = &comp.parametrization {
        let args: Vec<Complex64> = (0..comp.m)
            .map(|_| {
                let mag = 10f64.powf(rng.gen_range(-0.7..0.7));
                if field == Field::Real {
                    cx(if rng.gen_bool(0.5) { mag } else { -mag })
                } else {
                    Complex64::from_polar(mag, rng.gen_range(0.0..std::f64::consts::TAU))
                }
            })
            .collect();
        return Some(f.iter().map(|p| p.eval_c64(&args)).collect());
    }
    let n = linear_dim(comp)?;
    // linear component: random point satisfying the equations
    let (a, b) = linear_rows(comp, n);
    let mut free: Vec<Complex64> = (0..n)
        .map(|_| {
            let v = rng.gen_range(-3.0..3.0);
            if field == Field::Real {
                cx(v)
            } else {
                Complex64::new(v, rng.gen_range(-3.0..3.0))
            }
        })
        .collect();
    solve_onto_affine(&a, &b, &mut free)?;
    Some(free)
}

fn linear_dim(comp: &Component) -> Option<usize> {
    if let Some(eq) = comp.equations.first() {
        return Some(eq.nvars());
    }
    if let Some(eq) = comp.numeric_equations.first() {
        return Some(eq.coeffs.len());
    }
    None
}

/// Rows (A, b) with A y = b describing the linear component.
fn linear_rows(comp: &Component, n: usize) -> (Vec<Vec<Complex64>>, Vec<Complex64>) {
    let mut a = vec![];
    let mut b = vec![];
    for eq in &comp.equations {
        let mut row = vec![cx(0.0); n];
        let mut konst = cx(0.0);
        for (e, c) in eq.terms() {
            if let Some(i) = e.iter().position(|&x| x == 1) {
                row[i] = cx(rat_to_f64(c));
            } else {
                konst = cx(rat_to_f64(c));
            }
        }
        a.push(row);
        b.push(-konst);
    }
    for eq in &comp.numeric_equations {
        a.push(eq.coeffs.clone());
        b.push(-eq.constant);
    }
    (a, b)
}

/// Projects `point` onto the affine subspace A y = b (one Gauss-Seidel-ish
/// exact elimination: pivot variables recomputed from the free ones).
fn solve_onto_affine(a: &[Vec<Complex64>], b: &[Complex64], point: &mut [Complex64]) -> Option<()> {
    let n = point.len();
    let mut rows: Vec<(Vec<Complex64>, Complex64)> =
        a.iter().cloned().zip(b.iter().cloned()).collect();
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).max_by(|&i, &j| {
            rows[i].0[col]
                .norm()
                .partial_cmp(&rows[j].0[col].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            continue;
        };
        if rows[piv].0[col].norm() < 1e-12 {
            continue;
        }
        rows.swap(r, piv);
        for k in 0..rows.len() {
            if k != r {
                let f = rows[k].0[col] / rows[r].0[col];
                for j in 0..n {
                    let d = f * rows[r].0[j];
                    rows[k].0[j] -= d;
                }
                let d = f * rows[r].1;
                rows[k].1 -= d;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    for &(row, col) in pivots.iter().rev() {
        let mut rhs = rows[row].1;
        for j in 0..n {
            if j != col {
                rhs -= rows[row].0[j] * point[j];
            }
        }
        point[col] = rhs / rows[row].0[col];
    }
    Some(())
}

/// Distance estimate (an upper bound) from a point to a component.
pub fn component_distance(comp: &Component, y: &[Complex64], field: Field) -> f64 {
    if comp.status == Status::Unresolved {
        return f64::INFINITY;
    }
    if let Some(f) = &comp.parametrization {
        if comp.m == 0 {
            let p: Vec<Complex64> = f.iter().map(|q| q.eval_c64(&[])).collect();
            return norm(&p.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        if comp.m == 1 {
            return curve_distance(f, y, field);
        }
        // coarse sampling for higher-dimensional parametrizations
        let mut best = f64::INFINITY;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4000 {
            let args: Vec<Complex64> = (0..comp.m)
                .map(|_| {
                    let mag = 10f64.powf(rng.gen_range(-1.5..1.5));
                    if field == Field::Real {
                        cx(if rng.gen_bool(0.5) { mag } else { -mag })
                    } else {
                        Complex64::from_polar(mag, rng.gen_range(0.0..std::f64::consts::TAU))
                    }
                })
                .collect();
            let p: Vec<Complex64> = f.iter().map(|q| q.eval_c64(&args)).collect();
            best = best.min(norm(&p.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>()));
        }
        return best;
    }
    // linear: distance = max over equations of |eq(y)| / |grad|
    let n = y.len();
    let (a, b) = linear_rows(comp, n);
    let mut worst: f64 = 0.0;
    for (row, rhs) in a.iter().zip(&b) {
        let g = norm(row);
        if g < 1e-300 {
            continue;
        }
        let v: Complex64 = row.iter().zip(y).map(|(c, yi)| c * yi).sum::<Complex64>() - rhs;
        worst = worst.max(v.norm() / g);
    }
    worst
}

fn curve_distance(f: &[Polynomial], y: &[Complex64], field: Field) -> f64 {
    let eval_pt = |t: Complex64| -> Vec<Complex64> { f.iter().map(|p| p.eval_c64(&[t])).collect() };
    let dist = |t: Complex64| -> f64 {
        let p = eval_pt(t);
        norm(&p.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
    };
    let mut best_t = cx(1.0);
    let mut best = f64::INFINITY;
    let mags: Vec<f64> = (0..240)
        .map(|k| 10f64.powf(-4.0 + 8.0 * (k as f64) / 239.0))
        .collect();
    if field == Field::Real {
        for &m in &mags {
            for s in [1.0, -1.0] {
                let t = cx(s * m);
                let d = dist(t);
                if d < best {
                    best = d;
                    best_t = t;
                }
            }
        }
    } else {
        for &m in &mags {
            for k in 0..16 {
                let t = Complex64::from_polar(m, std::f64::consts::TAU * k as f64 / 16.0);
                let d = dist(t);
                if d < best {
                    best = d;
                    best_t = t;
                }
            }
        }
    }
    // local refinement by golden-section-ish shrink on the magnitude and,
    // for the real case, a few Newton steps on the squared distance
    let df: Vec<Polynomial> = f.iter().map(|p| p.partial_derivative(0)).collect();
    let mut t = best_t;
    for _ in 0..60 {
        let p = eval_pt(t);
        let dp: Vec<Complex64> = df.iter().map(|q| q.eval_c64(&[t])).collect();
        // gradient of 1/2 |F(t) - y|^2 in the complex parameter
        let g: Complex64 = p
            .iter()
            .zip(y)
            .zip(&dp)
            .map(|((a, b), d)| (a - b).conj() * d)
            .sum();
        let h: f64 = dp.iter().map(|d| d.norm_sqr()).sum();
        if h < 1e-300 {
            break;
        }
        let mut step = g.conj() / cx(h);
        if field == Field::Real {
            step = cx(step.re);
        }
        let tn = t - step;
        if dist(tn) < dist(t) {
            t = tn;
        } else {
            break;
        }
    }
    best.min(dist(t))
}
