//! Gaussian elimination over `F_p`.

use super::PrimeFieldMatrix;

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^{p-2}
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<u32>], ncols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % p64) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c] as u64;
            let (pivot_row, row) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = ((*x as u64 + p64 * p64 - f * y as u64) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over `F_p`.
pub fn rank(a: &PrimeFieldMatrix) -> usize {
    let mut rows = a.rows();
    if a.n() == 0 {
        return 0;
    }
    rref(&mut rows, a.n(), a.p()).len()
}

/// Basis of the nullspace `{x : M x = 0}` from an RREF.
pub(crate) fn nullspace_basis(mut rows: Vec<Vec<u32>>, ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = rref(&mut rows, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = rows[r][free];
                v[pc] = (p - x) % p;
            }
            v
        })
        .collect()
}

/// Coefficient rows of the linear map `B -> (AB, BA)` on `n^2` unknowns `B_{kj}`
/// (indexed `k*n + j`).
pub(crate) fn annihilator_system(a: &PrimeFieldMatrix) -> Vec<Vec<u32>> {
    let n = a.n();
    let nn = n * n;
    let mut rows = Vec::with_capacity(2 * nn);
    // (AB)_{ij} = sum_k A_{ik} B_{kj}
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u32; nn];
            for k in 0..n {
                row[k * n + j] = a.get(i, k);
            }
            rows.push(row);
        }
    }
    // (BA)_{ij} = sum_k B_{ik} A_{kj}
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u32; nn];
            for k in 0..n {
                row[i * n + k] = a.get(k, j);
            }
            rows.push(row);
        }
    }
    rows
}

/// `F_p`-dimension of `{B : AB = BA = 0}`.
pub fn annihilator_dimension(a: &PrimeFieldMatrix) -> usize {
    let nn = a.n() * a.n();
    if nn == 0 {
        return 0;
    }
    let mut rows = annihilator_system(a);
    nn - rref(&mut rows, nn, a.p()).len()
}

/// A basis of `{B : AB = BA = 0}`, each element given as a matrix.
pub fn annihilator_basis(a: &PrimeFieldMatrix) -> Vec<PrimeFieldMatrix> {
    let nn = a.n() * a.n();
    if nn == 0 {
        return Vec::new();
    }
    nullspace_basis(annihilator_system(a), nn, a.p())
        .into_iter()
        .map(|v| PrimeFieldMatrix::from_raw(a.n(), a.p(), v))
        .collect()
}
