//! Small exact integer linear algebra: dots, ranks, determinants, Hermite
//! normal form, integer kernels and lattice saturation. Entries are `i64`
//! with `i128` intermediates; sizes are tiny (ambient dimension <= 4ish).

use crate::{Error, Result};

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g, g >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        let q = a.div_euclid(b);
        (g, y, x - q * y)
    }
}

/// Divides out the gcd of the entries; the zero vector stays zero.
pub fn primitive(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

fn checked(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in exact lattice arithmetic")
}

/// Rank of a set of integer row vectors (fraction-free elimination).
pub fn rank(rows: &[IVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut col = 0;
    while rank < m.len() && col < ncols {
        let piv = (rank..m.len()).find(|&r| m[r][col] != 0);
        let Some(piv) = piv else {
            col += 1;
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                let g = gcd_i128(a, b);
                let (a, b) = (a / g, b / g);
                for c in col..ncols {
                    m[r][c] = m[r][c]
                        .checked_mul(a)
                        .and_then(|v| v.checked_sub(m[rank][c].checked_mul(b)?))
                        .expect("integer overflow in rank computation");
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// Affine rank (dimension of the affine hull) of a point set.
pub fn affine_rank(points: &[IVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<IVec> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Determinant of a square integer matrix (rows), exact in i128.
pub fn det(m: &[IVec]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        _ => {
            let mut d = 0i128;
            for (j, &mj) in m[0].iter().enumerate() {
                if mj == 0 {
                    continue;
                }
                let minor: Vec<IVec> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                d += s * mj as i128 * det(&minor);
            }
            d
        }
    }
}

/// Matrix times column vector; the matrix is given as rows.
pub fn mat_vec(m: &[IVec], v: &[i64]) -> IVec {
    m.iter().map(|row| checked(dot(row, v))).collect()
}

/// Matrix product (rows x rows).
pub fn mat_mul(a: &[IVec], b: &[IVec]) -> Vec<IVec> {
    let n = a.len();
    let p = b[0].len();
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let s: i128 = (0..b.len()).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                    checked(s)
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<IVec> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

pub fn transpose(m: &[IVec]) -> Vec<IVec> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

/// Exact inverse of a unimodular integer matrix (rows). Errors if det != +-1.
pub fn inverse_unimodular(m: &[IVec]) -> Result<Vec<IVec>> {
    let n = m.len();
    let d = det(m);
    if d != 1 && d != -1 {
        return Err(Error::NotUnimodular(d));
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<IVec> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = checked(s * det(&minor) * d);
        }
    }
    Ok(inv)
}

/// Column-style Hermite reduction: returns (H, U) with A * U = H, U unimodular,
/// H in column echelon form (pivot columns first, zero columns last).
/// A is given as rows (r x c); U is c x c (rows).
pub fn column_hnf(a: &[IVec]) -> (Vec<IVec>, Vec<IVec>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let mut pivot_col = 0;
    for row in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // Euclid over the entries of this row at columns >= pivot_col.
        loop {
            let mut best: Option<usize> = None;
            for c in pivot_col..cols {
                if h[row][c] != 0 {
                    best = match best {
                        None => Some(c),
                        Some(b) if h[row][c].abs() < h[row][b].abs() => Some(c),
                        other => other,
                    };
                }
            }
            let Some(bc) = best else {
                break;
            };
            if bc != pivot_col {
                for r in 0..rows {
                    h[r].swap(bc, pivot_col);
                }
                for r in 0..cols {
                    u[r].swap(bc, pivot_col);
                }
            }
            let p = h[row][pivot_col];
            let mut done = true;
            for c in pivot_col + 1..cols {
                let q = h[row][c].div_euclid(p);
                if q != 0 {
                    for r in 0..rows {
                        h[r][c] -= q * h[r][pivot_col];
                    }
                    for r in 0..cols {
                        u[r][c] -= q * u[r][pivot_col];
                    }
                }
                if h[row][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row][pivot_col] != 0 {
            if h[row][pivot_col] < 0 {
                for r in 0..rows {
                    h[r][pivot_col] = -h[r][pivot_col];
                }
                for r in 0..cols {
                    u[r][pivot_col] = -u[r][pivot_col];
                }
            }
            pivot_col += 1;
        }
    }
    let to64 = |m: Vec<Vec<i128>>| -> Vec<IVec> {
        m.into_iter()
            .map(|r| r.into_iter().map(checked).collect())
            .collect()
    };
    (to64(h), to64(u))
}

/// Basis of the integer kernel {x : A x = 0}. Kernels of integer matrices
/// are saturated lattices, so this basis spans ker(A) over Q as well.
pub fn kernel_basis(a: &[IVec]) -> Vec<IVec> {
    if a.is_empty() {
        return vec![];
    }
    let cols = a[0].len();
    let (h, u) = column_hnf(a);
    let mut basis = vec![];
    for c in 0..cols {
        let is_zero = h.iter().all(|row| row[c] == 0);
        if is_zero {
            basis.push((0..cols).map(|r| u[r][c]).collect());
        }
    }
    basis
}

/// Basis of span_Q(gens) ∩ Z^n, i.e. the saturation of the lattice
/// generated by `gens`. Computed as the kernel of the kernel.
pub fn saturated_span_basis(gens: &[IVec], n: usize) -> Vec<IVec> {
    if gens.is_empty() || gens.iter().all(|g| g.iter().all(|&x| x == 0)) {
        return vec![];
    }
    let ortho = kernel_basis(gens);
    if ortho.is_empty() {
        // full span
        return identity(n);
    }
    kernel_basis(&ortho)
}

/// Solves B^T c = d for integer c, where the rows of `basis` are linearly
/// independent lattice vectors and d lies in their integer span.
pub fn coords_in_basis(basis: &[IVec], d: &[i64]) -> Result<IVec> {
    let k = basis.len();
    if k == 0 {
        return if d.iter().all(|&x| x == 0) {
            Ok(vec![])
        } else {
            Err(Error::Internal("vector outside trivial lattice".into()))
        };
    }
    // Solve the normal-free way: Gaussian elimination over rationals done
    // fraction-free on the augmented system basis^T * c = d.
    let n = basis[0].len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = (0..k).map(|j| basis[j][i] as i128).collect();
            row.push(d[i] as i128);
            row
        })
        .collect();
    let mut piv_rows = vec![];
    let mut r0 = 0;
    for c in 0..k {
        let Some(p) = (r0..n).find(|&r| m[r][c] != 0) else {
            return Err(Error::Internal("dependent basis in coords_in_basis".into()));
        };
        m.swap(r0, p);
        for r in 0..n {
            if r != r0 && m[r][c] != 0 {
                let (a, b) = (m[r0][c], m[r][c]);
                let g = gcd_i128(a, b);
                let (a, b) = (a / g, b / g);
                for cc in 0..=k {
                    m[r][cc] = m[r][cc]
                        .checked_mul(a)
                        .and_then(|v| v.checked_sub(m[r0][cc].checked_mul(b)?))
                        .expect("overflow in coords_in_basis");
                }
            }
        }
        piv_rows.push(r0);
        r0 += 1;
    }
    // consistency of the eliminated rows
    for r in r0..n {
        if m[r][k] != 0 {
            return Err(Error::Internal("vector outside lattice span".into()));
        }
    }
    let mut c = vec![0i64; k];
    for (j, &r) in piv_rows.iter().enumerate() {
        let (a, b) = (m[r][j], m[r][k]);
        if a == 0 || b % a != 0 {
            return Err(Error::Internal("non-integer lattice coordinates".into()));
        }
        c[j] = checked(b / a);
    }
    Ok(c)
}

/// Extends the columns of `partial` (k rows each of length k-1 written as
/// a list of column vectors in Z^k) to a unimodular k x k matrix by one
/// extra column. Requires that the columns span a saturated sublattice.
pub fn extend_to_unimodular(columns: &[IVec]) -> Result<IVec> {
    let k = if columns.is_empty() {
        1
    } else {
        columns[0].len()
    };
    if columns.is_empty() {
        return Ok(vec![1]);
    }
    debug_assert_eq!(columns.len(), k - 1);
    // Cofactor expansion along the unknown last column: det = sum_i w_i * C_i,
    // where C_i is the signed (k-1)-minor of the known columns omitting row i.
    let mut cof = vec![0i128; k];
    for i in 0..k {
        let minor: Vec<IVec> = (0..k)
            .filter(|&r| r != i)
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect();
        let s = if (i + k - 1) % 2 == 0 { 1 } else { -1 };
        cof[i] = s * det(&minor);
    }
    // Find integer w with sum w_i cof_i = 1 via iterated extended gcd.
    let mut g = 0i64;
    let mut combo = vec![0i64; k];
    for i in 0..k {
        let ci = checked(cof[i]);
        let (ng, x, y) = egcd(g, ci);
        for w in combo.iter_mut() {
            *w = checked(*w as i128 * x as i128);
        }
        combo[i] = y;
        g = ng;
    }
    if g != 1 {
        return Err(Error::Internal(
            "partial basis is not saturated; cannot extend to unimodular".into(),
        ));
    }
    Ok(combo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_kernel_and_saturation() {
        // span{(2,0),(0,2)} saturates to Z^2
        let b = saturated_span_basis(&[vec![2, 0], vec![0, 2]], 2);
        assert_eq!(rank(&b), 2);
        // span{(1,2)} ∩ Z^2 has basis (1,2) itself (primitive)
        let b = saturated_span_basis(&[vec![2, 4]], 2);
        assert_eq!(b.len(), 1);
        assert_eq!(primitive(&b[0]), vec![1, 2]);
        // kernel of (1, 2, 3)
        let kb = kernel_basis(&[vec![1, 2, 3]]);
        assert_eq!(kb.len(), 2);
        for v in &kb {
            assert_eq!(dot(&[1, 2, 3], v), 0);
        }
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = vec![vec![-1, 1], vec![1, 0]];
        let inv = inverse_unimodular(&u).unwrap();
        assert_eq!(mat_mul(&u, &inv), identity(2));
        let bad = vec![vec![2, 0], vec![0, 1]];
        assert!(inverse_unimodular(&bad).is_err());
    }

    #[test]
    fn extend_basis() {
        // column (1,2) extends to a unimodular 2x2
        let w = extend_to_unimodular(&[vec![1, 2]]).unwrap();
        let m = vec![vec![1, w[0]], vec![2, w[1]]];
        assert_eq!(det(&m).abs(), 1);
    }

    #[test]
    fn coords_roundtrip() {
        let basis = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let d = vec![2, 5, 3];
        let c = coords_in_basis(&basis, &d).unwrap();
        assert_eq!(c, vec![2, 3]);
    }
}
