//! Partitions, symmetric-function bases and Newton identities, the pairing
//! between orbit monomials and homology words, and the Grassmannian
//! cohomology quotient.

mod hgr;
mod newton;
mod pairing;
mod partition;
mod symelem;

pub use hgr::{box_partition_counts, hgr_quotient, GradedPiece, HgrQuotient};
pub use newton::{basis_ring, complete_from_elementary, indecomposable_part, newton_e_to_p, newton_table, NewtonTable};
pub use pairing::{kronecker_pairing, pairing_bruteforce};
pub use partition::{partitions_in_box, partitions_of, partitions_with_max_part, DualWord, Partition};
pub use symelem::{
    complete_in, elementary_in, from_polynomial, is_symmetric, orbit_sum, orbit_sum_poly, power_sums_in, Basis,
    SymElement,
};

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("cur[i] qualifies");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
