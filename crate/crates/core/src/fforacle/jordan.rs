use super::{rank, PrimeFieldMatrix};
use crate::partitions::Partition;

/// Eigenvalue-0 Jordan statistics of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanZeroData {
    /// Number of Jordan blocks with eigenvalue 0, `n - rank(A)`.
    pub m: usize,
    /// Number of those blocks of size 1.
    pub d: usize,
    /// Full Jordan type when `A` is nilpotent.
    pub nilpotent_type: Option<Partition>,
}

/// Reads the eigenvalue-0 block structure off the ranks of powers of `A`:
/// the number of blocks of size `>= i` is `rank(A^{i-1}) - rank(A^i)`.
pub fn jordan_zero_data(a: &PrimeFieldMatrix) -> JordanZeroData {
    let n = a.n();
    let mut columns = Vec::new();
    let mut prev_rank = n;
    let mut power = PrimeFieldMatrix::identity(n, a.p());
    for _ in 0..n {
        power = power.mul(a);
        let r = rank(&power);
        let diff = prev_rank - r;
        if diff == 0 {
            break;
        }
        columns.push(diff);
        prev_rank = r;
    }
    let m = columns.first().copied().unwrap_or(0);
    let d = m - columns.get(1).copied().unwrap_or(0);
    let nilpotent_type = (prev_rank == 0)
        .then(|| Partition::from_conjugate(columns).expect("rank differences of powers are weakly decreasing"));
    JordanZeroData { m, d, nilpotent_type }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, p: u32, e: &[u32]) -> PrimeFieldMatrix {
        PrimeFieldMatrix::new(n, p, e.to_vec()).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zero_matrix() {
        let j = jordan_zero_data(&PrimeFieldMatrix::zero(3, 2));
        assert_eq!((j.m, j.d), (3, 3));
        assert_eq!(j.nilpotent_type, Some(part(&[1, 1, 1])));
    }

    #[test]
    fn single_block() {
        let j = jordan_zero_data(&m(3, 2, &[0, 1, 0, 0, 0, 1, 0, 0, 0]));
        assert_eq!((j.m, j.d), (1, 0));
        assert_eq!(j.nilpotent_type, Some(part(&[3])));
    }

    #[test]
    fn two_blocks() {
        // diag(J_2, J_1)
        let j = jordan_zero_data(&m(3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!((j.m, j.d), (2, 1));
        assert_eq!(j.nilpotent_type, Some(part(&[2, 1])));
    }

    #[test]
    fn mixed_invertible_and_nilpotent() {
        // diag(1, J_2): one zero-block of size 2, not nilpotent
        let j = jordan_zero_data(&m(3, 2, &[1, 0, 0, 0, 0, 1, 0, 0, 0]));
        assert_eq!((j.m, j.d), (1, 0));
        assert_eq!(j.nilpotent_type, None);
        let inv = jordan_zero_data(&PrimeFieldMatrix::identity(2, 5));
        assert_eq!((inv.m, inv.d, inv.nilpotent_type), (0, 0, None));
    }

    #[test]
    fn empty_matrix() {
        let j = jordan_zero_data(&PrimeFieldMatrix::zero(0, 2));
        assert_eq!((j.m, j.d), (0, 0));
        assert_eq!(j.nilpotent_type, Some(Partition::empty()));
    }
}
