//! Exact integer matrix and polynomial helpers.

use nalgebra::DMatrix;

pub type IntMatrix = DMatrix<i64>;

/// Integer polynomial, coefficients from the constant term up.
pub type Poly = Vec<i128>;

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier; all
/// divisions are exact for integer input.
pub fn charpoly(a: &IntMatrix) -> Poly {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let a128 = a.map(i128::from);
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = DMatrix::<i128>::zeros(n, n);
    for k in 1..=n {
        m = &a128 * &m;
        for i in 0..n {
            m[(i, i)] += coeffs[n - k + 1];
        }
        let trace: i128 = (&a128 * &m).trace();
        assert_eq!(trace % k as i128, 0, "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IntMatrix) -> i128 {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.map(i128::from);
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[(k, k)] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[(i, k)] != 0) else {
                return 0;
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[(i, j)] = (m[(i, j)] * m[(k, k)] - m[(i, k)] * m[(k, j)]) / prev;
            }
        }
        prev = m[(k, k)];
    }
    if n == 0 {
        1
    } else {
        sign * m[(n - 1, n - 1)]
    }
}

/// Unimodular column reduction: returns `(U, U⁻¹)` with `A·U` zero beyond its
/// first `rank` columns. The trailing columns of `U` are then a basis of the
/// integer kernel of `A`.
pub fn column_reduce(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let (rows, cols) = a.shape();
    let mut work = a.clone();
    let mut u = IntMatrix::identity(cols, cols);
    let mut u_inv = IntMatrix::identity(cols, cols);
    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        loop {
            // Smallest non-zero entry of row r among the free columns goes to the pivot.
            let Some(best) = (pivot..cols)
                .filter(|&c| work[(r, c)] != 0)
                .min_by_key(|&c| work[(r, c)].abs())
            else {
                break;
            };
            if best != pivot {
                work.swap_columns(best, pivot);
                u.swap_columns(best, pivot);
                u_inv.swap_rows(best, pivot);
            }
            let mut done = true;
            for c in pivot + 1..cols {
                let q = work[(r, c)] / work[(r, pivot)];
                if q != 0 {
                    // col_c -= q col_pivot, so row_pivot += q row_c in the inverse.
                    for i in 0..rows {
                        work[(i, c)] -= q * work[(i, pivot)];
                    }
                    for i in 0..cols {
                        u[(i, c)] -= q * u[(i, pivot)];
                    }
                    for j in 0..cols {
                        u_inv[(pivot, j)] += q * u_inv[(c, j)];
                    }
                }
                if work[(r, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if work[(r, pivot)] != 0 {
            pivot += 1;
        }
    }
    (u, u_inv, pivot)
}

pub fn poly_mul(a: &[i128], b: &[i128]) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; `None` if the remainder is non-zero.
pub fn poly_div_exact(a: &[i128], b: &[i128]) -> Option<Poly> {
    assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
    if a.len() < b.len() {
        return a.iter().all(|&c| c == 0).then(|| vec![0]);
    }
    let mut rem = a.to_vec();
    let mut quot = vec![0; a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1];
        quot[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// The cyclotomic polynomial `Φ_d`.
pub fn cyclotomic(d: u32) -> Poly {
    let mut p: Poly = vec![0; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for k in (1..d).filter(|k| d.is_multiple_of(*k)) {
        p = poly_div_exact(&p, &cyclotomic(k)).expect("Φ_k divides x^d − 1");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
        IntMatrix::from_row_slice(rows, cols, v)
    }

    #[test]
    fn charpoly_of_small_matrices() {
        assert_eq!(charpoly(&m(2, 2, &[0, -1, 1, 0])), vec![1, 0, 1]);
        assert_eq!(charpoly(&m(2, 2, &[1, 1, 0, 1])), vec![1, -2, 1]);
        // Companion matrix of x³ − 2x + 5.
        let c = m(3, 3, &[0, 0, -5, 1, 0, 2, 0, 1, 0]);
        assert_eq!(charpoly(&c), vec![5, -2, 0, 1]);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&m(2, 2, &[0, 1, -1, 0])), 1);
        assert_eq!(det(&m(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2])), 6);
        assert_eq!(det(&m(2, 2, &[1, 2, 2, 4])), 0);
        assert_eq!(det(&m(3, 3, &[0, 2, 0, 1, 0, 0, 0, 0, 3])), -6);
    }

    #[test]
    fn column_reduction_gives_kernel_basis() {
        let a = m(2, 4, &[2, 4, 6, 3, 0, 1, 1, 5]);
        let (u, u_inv, rank) = column_reduce(&a);
        assert_eq!(rank, 2);
        assert_eq!(&u * &u_inv, IntMatrix::identity(4, 4));
        let au = &a * &u;
        for c in rank..4 {
            assert!(au.column(c).iter().all(|&x| x == 0));
        }
        assert_eq!(det(&u).abs(), 1);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(poly_div_exact(&[1, 0, 1], &[1, 1]), None);
    }
}
