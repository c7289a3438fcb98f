// temporary probe for the homotopy oracle
use nonproper::poly::{parse_polynomial, Field, PolynomialMap};
use num_complex::Complex64;

fn cx(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn newton(map: &PolynomialMap, y: &[Complex64], x0: &[Complex64], iters: usize) -> (Vec<Complex64>, f64) {
    let f = &map.components;
    let mut x = x0.to_vec();
    let d: Vec<Vec<_>> = f.iter().map(|p| (0..2).map(|j| p.partial_derivative(j)).collect()).collect();
    let res = |x: &[Complex64]| -> Vec<Complex64> { f.iter().zip(y).map(|(p, yi)| p.eval_c64(x) - yi).collect() };
    let nrm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut r = res(&x);
    let mut rn = nrm(&r);
    for _ in 0..iters {
        let j00 = d[0][0].eval_c64(&x); let j01 = d[0][1].eval_c64(&x);
        let j10 = d[1][0].eval_c64(&x); let j11 = d[1][1].eval_c64(&x);
        let det = j00 * j11 - j01 * j10;
        if det.norm() < 1e-300 { break; }
        let dx0 = -(r[0] * j11 - r[1] * j01) / det;
        let dx1 = -(j00 * r[1] - j10 * r[0]) / det;
        let mut step = 1.0; let mut ok = false;
        for _ in 0..25 {
            let xt = vec![x[0] + dx0 * cx(step), x[1] + dx1 * cx(step)];
            let rt = res(&xt); let rtn = nrm(&rt);
            if rtn < rn { x = xt; r = rt; rn = rtn; ok = true; break; }
            step *= 0.5;
        }
        if !ok || rn < 1e-13 { break; }
    }
    (x, rn)
}

fn main() {
    let vs: Vec<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
    let f1 = parse_polynomial("v*(u-1)", &vs).unwrap();
    let f2 = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
    let map = PolynomialMap::new(vec![f1, f2], Field::Real).unwrap();
    let t0v = 1.3f64;
    let y = [cx(t0v), cx(t0v * t0v)];
    let mu = [cx(0.37), cx(-0.52)];
    let mut ladder = vec![1.0f64];
    while *ladder.last().unwrap() > 1e-6 { let nx = ladder.last().unwrap() * 0.7; ladder.push(nx.max(1e-6)); }
    // seeds at the first rung
    let mut sols: Vec<Vec<Complex64>> = vec![];
    let target0: Vec<Complex64> = y.iter().zip(&mu).map(|(a, b)| a + b * cx(ladder[0])).collect();
    for su in [1.0f64, -1.0] { for sv in [1.0f64, -1.0] { for scale in [3.0f64, 10.0, 30.0, 100.0, 300.0] {
        let x0 = vec![cx(su * scale), cx(sv / scale)];
        let (x, rn) = newton(&map, &target0, &x0, 100);
        if rn < 1e-10 {
            let dup = sols.iter().any(|q| (q[0]-x[0]).norm() + (q[1]-x[1]).norm() < 1e-6 * (1.0 + x[0].norm()));
            if !dup { sols.push(x); }
        }
    }}}
    println!("first-rung solutions: {}", sols.len());
    for s in &sols { println!("  u={:.4e} v={:.4e}", s[0].re, s[1].re); }
    for mut x in sols {
        let mut ok = true;
        let mut tprev = ladder[0];
        let mut tcur = tprev;
        let tmin = 1e-6f64;
        // adaptive geometric stepping: aim for factor 0.7, halve on failure
        let mut factor = 0.7f64;
        while tcur > tmin && ok {
            let t = (tcur * factor).max(tmin);
            {
            // Euler predictor: x += J^{-1} (target_new - target_old)
            let d: Vec<Vec<_>> = map.components.iter().map(|p| (0..2).map(|j| p.partial_derivative(j)).collect::<Vec<_>>()).collect();
            let j00 = d[0][0].eval_c64(&x); let j01 = d[0][1].eval_c64(&x);
            let j10 = d[1][0].eval_c64(&x); let j11 = d[1][1].eval_c64(&x);
            let det = j00 * j11 - j01 * j10;
            let dy: Vec<Complex64> = mu.iter().map(|b| b * cx(t - tcur)).collect();
            let mut xp = x.clone();
            if det.norm() > 1e-300 {
                xp[0] += (dy[0] * j11 - dy[1] * j01) / det;
                xp[1] += (j00 * dy[1] - j10 * dy[0]) / det;
            }
            let target: Vec<Complex64> = y.iter().zip(&mu).map(|(a, b)| a + b * cx(t)).collect();
            let (xt, rn) = newton(&map, &target, &xp, 100);
            if rn > 1e-8 {
                factor = factor.sqrt(); // gentler step
                if factor > 0.999 { ok = false; println!("lost at t={:e} rn={:e} u={:e}", t, rn, x[0].re); }
            } else {
                x = xt;
                tprev = tcur;
                let _ = tprev;
                tcur = t;
                factor = (factor * factor).max(0.5); // try speeding up again
            }
            }
        }
        if ok {
            println!("tracked to t=1e-6: u={:.4e} v={:.4e}, |f(x)-y|={:.2e}",
                x[0].re, x[1].re,
                ((map.components[0].eval_c64(&x)-y[0]).norm_sqr() + (map.components[1].eval_c64(&x)-y[1]).norm_sqr()).sqrt());
        } else {
            println!("track lost");
        }
    }
}
