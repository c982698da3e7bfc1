use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{usage, Result};

/// An integer partition `lambda_1 >= lambda_2 >= ... > 0`, possibly empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates that `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(usage(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(usage(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// The partition whose column sizes are `columns` (itself a partition).
    pub fn from_conjugate(columns: Vec<usize>) -> Result<Self> {
        Ok(Partition::new(columns)?.conjugate())
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `l(lambda) = lambda'_1`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Column sizes of the diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = (1..=self.largest_part())
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts: cols }
    }

    /// `lambda'_i`, the size of column `i` (1-indexed); zero past the last column.
    pub fn conjugate_part(&self, i: usize) -> usize {
        assert!(i >= 1, "columns are 1-indexed");
        self.parts.iter().take_while(|&&p| p >= i).count()
    }

    /// `m_i(lambda)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        assert!(i >= 1, "multiplicities are defined for i >= 1");
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `(i, m_i)` for every part size `i` that occurs, ascending in `i`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((i, m)) if *i == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
