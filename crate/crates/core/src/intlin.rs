//! Exact integer linear systems: Smith-style diagonalization over Z with
//! unimodular column tracking, one-shot solves, kernel bases, and an l1
//! reduction pass over the solution lattice.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Solve A x = b over the integers. Returns a particular solution with zero
/// homogeneous component (free coordinates of the diagonalized system set to
/// zero) together with a basis of the integer kernel of A, or None when no
/// integral solution exists.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // work on [A | y] with y = b, applying row ops to both; column ops recorded in V
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut y: Vec<BigInt> = b.to_vec();
    // v[i] is the i-th column of V, so column ops on A map to v.swap / v[j] updates
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut col = vec![BigInt::zero(); cols];
            col[i] = BigInt::from(1);
            col
        })
        .collect();

    let mut t = 0usize;
    while t < rows && t < cols {
        // min-abs nonzero pivot in the remaining submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() {
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if m[i][j].abs() < m[pi][pj].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        y.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            v.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &m[t][j];
                        m[i][j] -= sub;
                    }
                    let sub = &q * &y[t];
                    y[i] -= sub;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    y.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t right of the pivot (column ops, recorded in v)
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    for k in 0..cols {
                        let sub = &q * &v[t][k];
                        v[j][k] -= sub;
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    v.swap(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }
    let rank = t;
    // back-substitute: z_i = y_i / d_i for pivot coords, 0 for free coords
    let mut z = vec![BigInt::zero(); cols];
    for i in 0..rank {
        let (q, rem) = y[i].div_rem(&m[i][i]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    for yi in y.iter().take(rows).skip(rank) {
        if !yi.is_zero() {
            return None;
        }
    }
    // x = V z = sum_i z_i * (column i of V)
    let mut x = vec![BigInt::zero(); cols];
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            continue;
        }
        for k in 0..cols {
            let add = zi * &v[i][k];
            x[k] += add;
        }
    }
    let kernel: Vec<Vec<BigInt>> = (rank..cols).map(|i| v[i].clone()).collect();
    Some((x, kernel))
}

/// Greedy l1 reduction of x over the lattice x + span_Z(kernel): repeatedly
/// shift along one kernel vector by the weighted-median step that minimizes
/// the l1 norm, until a full pass makes no progress.
pub fn reduce_l1(x: &mut [BigInt], kernel: &[Vec<BigInt>], max_passes: usize) {
    if kernel.is_empty() {
        return;
    }
    for _ in 0..max_passes {
        let mut improved = false;
        for v in kernel {
            if let Some(t) = best_shift(x, v) {
                if !t.is_zero() {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi += &t * vi;
                    }
                    improved = true;
                }
            }
        }
        if !improved {
            return;
        }
    }
}

fn l1_at(x: &[BigInt], v: &[BigInt], t: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (xi, vi) in x.iter().zip(v) {
        acc += (xi + t * vi).abs();
    }
    acc
}

/// Integer t minimizing sum |x_i + t v_i|, if better than t = 0.
fn best_shift(x: &[BigInt], v: &[BigInt]) -> Option<BigInt> {
    let mut breaks: Vec<(BigRational, BigInt)> = Vec::new(); // (-x_i/v_i, weight |v_i|)
    for (xi, vi) in x.iter().zip(v) {
        if !vi.is_zero() {
            breaks.push((BigRational::new(-xi.clone(), vi.clone()), vi.abs()));
        }
    }
    if breaks.is_empty() {
        return None;
    }
    breaks.sort_by(|a, b| a.0.cmp(&b.0));
    let total: BigInt = breaks.iter().map(|(_, w)| w.clone()).sum();
    let mut acc = BigInt::zero();
    let mut median = breaks[0].0.clone();
    for (b, w) in &breaks {
        acc += w;
        if &acc * 2 >= total {
            median = b.clone();
            break;
        }
    }
    let lo = median.floor().to_integer();
    let hi = median.ceil().to_integer();
    let zero = BigInt::zero();
    let base = l1_at(x, v, &zero);
    let mut best_t = zero;
    let mut best = base;
    for cand in [lo, hi] {
        let val = l1_at(x, v, &cand);
        if val < best {
            best = val;
            best_t = cand;
        }
    }
    Some(best_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn solves_simple_system() {
        // x + y = 3, x - y = 1  => x=2, y=1
        let a = vec![vec![bi(1), bi(1)], vec![bi(1), bi(-1)]];
        let b = vec![bi(3), bi(1)];
        let (x, kernel) = solve_integer(&a, &b).unwrap();
        assert_eq!(x, vec![bi(2), bi(1)]);
        assert!(kernel.is_empty());
    }

    #[test]
    fn detects_no_integer_solution() {
        // 2x = 3 has no integer solution
        let a = vec![vec![bi(2)]];
        let b = vec![bi(3)];
        assert!(solve_integer(&a, &b).is_none());
    }

    #[test]
    fn detects_inconsistent() {
        let a = vec![vec![bi(1), bi(1)], vec![bi(2), bi(2)]];
        let b = vec![bi(1), bi(3)];
        assert!(solve_integer(&a, &b).is_none());
    }

    #[test]
    fn kernel_is_kernel() {
        let a = vec![vec![bi(1), bi(2), bi(3)]];
        let b = vec![bi(6)];
        let (x, kernel) = solve_integer(&a, &b).unwrap();
        let eval = |v: &[BigInt]| -> BigInt { v[0].clone() + 2 * v[1].clone() + 3 * v[2].clone() };
        assert_eq!(eval(&x), bi(6));
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            assert!(eval(k).is_zero());
        }
    }

    #[test]
    fn l1_reduction_shrinks() {
        let a = vec![vec![bi(1), bi(1), bi(1)]];
        let b = vec![bi(1)];
        let (mut x, kernel) = solve_integer(&a, &b).unwrap();
        // inflate x along the kernel, then reduce back
        for (xi, vi) in x.iter_mut().zip(&kernel[0]) {
            *xi += 100 * vi.clone();
        }
        reduce_l1(&mut x, &kernel, 50);
        let norm: BigInt = x.iter().map(|v| v.abs()).sum();
        assert_eq!(norm, bi(1));
    }

    #[test]
    fn random_consistency() {
        use crate::rng::{seeded, uniform_below};
        let mut rng = seeded(11);
        for _ in 0..20 {
            let rows = 1 + uniform_below(&mut rng, 4) as usize;
            let cols = 1 + uniform_below(&mut rng, 5) as usize;
            let a: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| bi(uniform_below(&mut rng, 7) as i64 - 3)).collect())
                .collect();
            let xs: Vec<BigInt> = (0..cols).map(|_| bi(uniform_below(&mut rng, 9) as i64 - 4)).collect();
            let b: Vec<BigInt> = (0..rows)
                .map(|i| (0..cols).map(|j| &a[i][j] * &xs[j]).sum())
                .collect();
            let (x, kernel) = solve_integer(&a, &b).expect("constructed to be solvable");
            for i in 0..rows {
                let lhs: BigInt = (0..cols).map(|j| &a[i][j] * &x[j]).sum();
                assert_eq!(lhs, b[i]);
                for k in &kernel {
                    let kv: BigInt = (0..cols).map(|j| &a[i][j] * &k[j]).sum();
                    assert!(kv.is_zero());
                }
            }
        }
    }
}
