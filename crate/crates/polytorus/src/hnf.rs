//! Small exact integer linear algebra: Hermite normal form with transform
//! tracking, left kernels and extended gcd combinations.
//!
//! Everything operates on tiny matrices (at most 3 x 6 here), so a plain
//! Euclidean reduction is exact and fast.


fn chk_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in lattice arithmetic")
}

fn row_sub(dst: &mut [i128], src: &[i128], q: i128) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.checked_sub(chk_mul(q, *s)).expect("integer overflow in lattice arithmetic");
    }
}

/// Row-style Hermite normal form. Returns `(h, u, rank)` with `u * a = h`,
/// `u` unimodular, `h` in canonical Hermite form (positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows last).
pub fn hnf_with_transform(a: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>, usize) {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        // Euclidean reduction within the column below row r.
        loop {
            let mut pivot: Option<usize> = None;
            for i in r..m {
                if h[i][c] != 0 && pivot.map_or(true, |p| h[i][c].abs() < h[p][c].abs()) {
                    pivot = Some(i);
                }
            }
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut reduced_all = true;
            for i in r + 1..m {
                if h[i][c] != 0 {
                    let q = num_integer::Integer::div_floor(&h[i][c], &h[r][c]);
                    let (hr, hi) = split_rows(&mut h, r, i);
                    row_sub(hi, hr, q);
                    let (ur, ui) = split_rows(&mut u, r, i);
                    row_sub(ui, ur, q);
                    if h[i][c] != 0 {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
            for x in u[r].iter_mut() {
                *x = -*x;
            }
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = num_integer::Integer::div_floor(&h[i][c], &h[r][c]);
            if q != 0 {
                let (hr, hi) = split_rows(&mut h, r, i);
                row_sub(hi, hr, q);
                let (ur, ui) = split_rows(&mut u, r, i);
                row_sub(ui, ur, q);
            }
        }
        r += 1;
    }
    (h, u, r)
}

fn split_rows<'a>(m: &'a mut [Vec<i128>], a: usize, b: usize) -> (&'a [i128], &'a mut [i128]) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = m.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// Canonical Hermite form of the row lattice (zero rows dropped).
pub fn hnf(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let (h, _, rank) = hnf_with_transform(a);
    h.into_iter().take(rank).collect()
}

/// Basis of `{ x : x * a = 0 }`, the integer left kernel.
pub fn left_kernel(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let (_, u, rank) = hnf_with_transform(a);
    u.into_iter().skip(rank).collect()
}

/// Extended gcd over a list: returns `(g, coeffs)` with
/// `sum coeffs[i] * vals[i] = g = gcd(vals) >= 0`.
pub fn gcd_combo(vals: &[i128]) -> (i128, Vec<i128>) {
    let n = vals.len();
    let a: Vec<Vec<i128>> = vals.iter().map(|&v| vec![v]).collect();
    let (h, u, rank) = hnf_with_transform(&a);
    if rank == 0 {
        return (0, vec![0; n]);
    }
    (h[0][0], u[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical_for_equal_lattices() {
        // Two bases of the fcc row lattice in Z^3.
        let b1 = vec![vec![1, 1, 0], vec![1, -1, 0], vec![0, -1, 1]];
        let b2 = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(hnf(&b1), hnf(&b2));
        let b3 = vec![vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, 1]];
        assert_ne!(hnf(&b1), hnf(&b3));
    }

    #[test]
    fn transform_is_unimodular() {
        let a = vec![vec![6, 9, 3], vec![4, 2, 8]];
        let (h, u, rank) = hnf_with_transform(&a);
        assert_eq!(rank, 2);
        // u * a = h
        for i in 0..2 {
            for j in 0..3 {
                let s: i128 = (0..2).map(|k| u[i][k] * a[k][j]).sum();
                assert_eq!(s, h[i][j]);
            }
        }
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn kernel_of_projection() {
        // x * a = 0 for a = [[1],[1],[2]]: kernel contains (1,-1,0) and (2,0,-1).
        let a = vec![vec![1], vec![1], vec![2]];
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1] + 2 * v[2], 0);
        }
    }

    #[test]
    fn gcd_combo_bezout() {
        let (g, c) = gcd_combo(&[12, 18, 10]);
        assert_eq!(g, 2);
        assert_eq!(12 * c[0] + 18 * c[1] + 10 * c[2], 2);
        let (g0, _) = gcd_combo(&[0, 0]);
        assert_eq!(g0, 0);
    }
}
