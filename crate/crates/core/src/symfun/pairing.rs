use super::distinct_permutations;
use super::partition::{DualWord, Partition};

/// 1 iff every part `j` of `lambda` occurs exactly `l_j` times.
pub fn kronecker_pairing(lambda: &Partition, l: &DualWord) -> u32 {
    let m = lambda.multiplicities();
    let len = m.len().max(l.multiplicities().len());
    (1..=len as u32).all(|j| lambda.multiplicity(j) == l.get(j)) as u32
}

/// The pairing expanded term by term: sum over distinct reorderings of
/// `lambda` padded with zeros to `|l|` slots of `prod_p delta(part_p, letter_p)`.
///
/// Returns the raw sum; it is always 0 or 1 when the combinatorics is right.
pub fn pairing_bruteforce(lambda: &Partition, l: &DualWord) -> u32 {
    let letters = l.spelled();
    if lambda.len() > letters.len() {
        return 0;
    }
    let mut padded = lambda.parts().to_vec();
    padded.resize(letters.len(), 0);
    distinct_permutations(&padded).iter().filter(|perm| perm.iter().zip(&letters).all(|(a, b)| a == b)).count() as u32
}
