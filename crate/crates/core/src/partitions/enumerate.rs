use super::Partition;

/// Iterator over the partitions of `n` in reverse-lexicographic order,
/// starting from `(n)` and ending at `(1,...,1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_parts_unchecked(current))
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let k = parts.iter().rposition(|&p| p > 1)?;
    let v = parts[k] - 1;
    let mut rest: usize = parts[k + 1..].iter().sum::<usize>() + 1;
    let mut out = parts[..k].to_vec();
    out.push(v);
    while rest > 0 {
        let take = rest.min(v);
        out.push(take);
        rest -= take;
    }
    Some(out)
}

/// All partitions of exactly `n`, each once, in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions { next: Some(first) }
}

/// All partitions of sizes `0..=max_size`, grouped by size.
pub fn partitions_up_to(max_size: usize) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(enumerate_partitions)
}
