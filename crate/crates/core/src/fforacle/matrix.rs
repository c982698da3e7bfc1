use std::fmt;

use crate::error::{usage, Result};
use crate::exactq::is_prime;

/// Square matrix over the prime field `F_p`, row-major, entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(usage(format!("modulus must be prime, got {p}")));
    }
    if p > u16::MAX as u32 {
        return Err(usage(format!("modulus {p} is too large for the enumeration oracle")));
    }
    Ok(())
}

impl PrimeFieldMatrix {
    pub fn new(n: usize, p: u32, entries: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != n * n {
            return Err(usage(format!(
                "expected {} entries for n={n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|&&e| e >= p) {
            return Err(usage(format!("entry {e} is not reduced mod {p}")));
        }
        Ok(PrimeFieldMatrix { n, p, entries })
    }

    pub(crate) fn from_raw(n: usize, p: u32, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        PrimeFieldMatrix { n, p, entries }
    }

    pub fn zero(n: usize, p: u32) -> Self {
        Self::from_raw(n, p, vec![0; n * n])
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zero(n, p);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The `index`-th matrix in lexicographic order of row-major entry vectors
    /// (entry `(0,0)` is the most significant base-`p` digit).
    pub fn from_index(n: usize, p: u32, mut index: u64) -> Self {
        let mut entries = vec![0; n * n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % p as u64) as u32;
            index /= p as u64;
        }
        Self::from_raw(n, p, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        assert_eq!((self.n, self.p), (other.n, other.p), "dimension or field mismatch");
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.entries[i * n + k] as u64 * other.entries[k * n + j] as u64;
                }
                out[i * n + j] = (acc % p) as u32;
            }
        }
        Self::from_raw(n, self.p, out)
    }

    pub fn pow(&self, mut exp: u32) -> PrimeFieldMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `A^n = 0`, which by Cayley-Hamilton is equivalent to nilpotency.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32).is_zero()
    }

    pub(crate) fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Display for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "] mod {}", self.p)
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PrimeFieldMatrix::new(2, 4, vec![0; 4]).is_err());
        assert!(PrimeFieldMatrix::new(2, 2, vec![0; 3]).is_err());
        assert!(PrimeFieldMatrix::new(2, 2, vec![0, 1, 2, 0]).is_err());
        assert!(PrimeFieldMatrix::new(2, 3, vec![0, 1, 2, 0]).is_ok());
    }

    #[test]
    fn index_order_is_lexicographic() {
        assert_eq!(PrimeFieldMatrix::from_index(2, 2, 0).entries(), &[0, 0, 0, 0]);
        assert_eq!(PrimeFieldMatrix::from_index(2, 2, 1).entries(), &[0, 0, 0, 1]);
        assert_eq!(PrimeFieldMatrix::from_index(2, 2, 8).entries(), &[1, 0, 0, 0]);
        assert_eq!(PrimeFieldMatrix::from_index(2, 3, 80).entries(), &[2, 2, 2, 2]);
    }

    #[test]
    fn nilpotency() {
        let j = PrimeFieldMatrix::new(3, 2, vec![0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert!(j.is_nilpotent());
        assert!(!j.pow(2).is_zero());
        assert!(!PrimeFieldMatrix::identity(3, 2).is_nilpotent());
        assert!(PrimeFieldMatrix::zero(0, 2).is_nilpotent());
    }
}
