use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. The empty list is the zero partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Partition with `counts[i]` copies of part `i + 1`.
    pub fn from_multiplicities(counts: &[u32]) -> Self {
        let mut v = Vec::new();
        for (i, &c) in counts.iter().enumerate().rev() {
            v.extend(std::iter::repeat_n(i as u32 + 1, c as usize));
        }
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `j`.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&p| p == j).count() as u32
    }

    /// `counts[i]` = number of parts equal to `i + 1`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.largest() as usize];
        for &p in &self.0 {
            counts[p as usize - 1] += 1;
        }
        counts
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest()).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32).collect();
        Partition(parts)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.largest() <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` with every part at most `max_part`, in reverse
/// lexicographic order.
pub fn partitions_with_max_part(n: u32, max_part: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_of(n: u32) -> Vec<Partition> {
    partitions_with_max_part(n, n)
}

/// Partitions fitting in a box of `rows` rows and `cols` columns.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    (0..=rows as u32 * cols).flat_map(|n| partitions_with_max_part(n, cols)).filter(|p| p.len() <= rows).collect()
}

/// The homology word `chi_1^{l_1} chi_2^{l_2} ...`, stored as multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualWord(Vec<u32>);

impl DualWord {
    /// Trailing zeros are dropped so equal words compare equal.
    pub fn new(mut multiplicities: Vec<u32>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        DualWord(multiplicities)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    /// `l_j`, with `j >= 1`.
    pub fn get(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.get(j as usize - 1).copied().unwrap_or(0)
    }

    /// `|l| = l_1 + l_2 + ...`, the number of letters.
    pub fn letters(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `sum_j j * l_j`, the degree of the word.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &l)| (i as u32 + 1) * l).sum()
    }

    /// The letters in order: `l_1` ones, then `l_2` twos, and so on.
    pub fn spelled(&self) -> Vec<u32> {
        Partition::from_multiplicities(&self.0).parts().iter().rev().copied().collect()
    }
}

impl fmt::Display for DualWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "l=({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_exponents(&[0, 2, 0, 3]).parts(), &[3, 2]);
        assert_eq!(Partition::new(vec![3, 1, 1]).unwrap().to_string(), "(3,1,1)");
    }

    #[test]
    fn counts() {
        let p: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        // C(4, 2) partitions in a 2x2 box.
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(partitions_in_box(3, 3).len(), 20);
    }

    #[test]
    fn multiplicities_roundtrip() {
        let p = Partition::new(vec![4, 2, 2, 1]).unwrap();
        assert_eq!(p.multiplicities(), vec![1, 2, 0, 1]);
        assert_eq!(Partition::from_multiplicities(&p.multiplicities()), p);
        assert_eq!(p.conjugate().parts(), &[4, 3, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn words() {
        let w = DualWord::new(vec![2, 0, 1, 0, 0]);
        assert_eq!(w.multiplicities(), &[2, 0, 1]);
        assert_eq!(w.letters(), 3);
        assert_eq!(w.weight(), 5);
        assert_eq!(w.spelled(), vec![1, 1, 3]);
        assert_eq!(w.get(3), 1);
        assert_eq!(w.get(7), 0);
    }
}
