use std::collections::BTreeMap;
use std::sync::Arc;

use super::newton::{basis_ring, complete_from_elementary};
use super::partition::{partitions_in_box, partitions_with_max_part};
use crate::error::{Error, Result};
use crate::exact::linalg::QMatrix;
use crate::exact::{Exponents, LaurentPoly, Rational, Ring};

/// One graded piece of `Q[b_1..b_r] / (h_{n-r+1}, ..., h_n)`, with `deg b_i = i`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    /// Monomials of this degree, in column order (lex descending).
    pub monomials: Vec<Exponents>,
    /// Reduced row echelon form of the relation span.
    relations: QMatrix,
    pivots: Vec<usize>,
    /// Non-pivot monomials; they form a basis of the quotient in this degree.
    pub basis: Vec<Exponents>,
}

#[derive(Clone, Debug)]
pub struct HgrQuotient {
    pub r: usize,
    pub n: usize,
    pub ring: Arc<Ring>,
    /// `h_{n-r+1}, ..., h_n` written in `b_1..b_r`.
    pub relations: Vec<(u32, LaurentPoly)>,
    /// Degrees `0 ..= r(n-r) + n`.
    pub pieces: Vec<GradedPiece>,
}

/// Builds the quotient degree by degree with dense exact linear algebra.
pub fn hgr_quotient(r: usize, n: usize) -> Result<HgrQuotient> {
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("hgr_quotient needs 1 <= r <= n, got r={r}, n={n}")));
    }
    let ring = basis_ring("b", r);
    let h = complete_from_elementary(r, n)?;
    let e_ring = h[0].ring().clone();
    let images: Vec<LaurentPoly> = (0..e_ring.nvars())
        .map(|i| if i < r { LaurentPoly::var_at(&ring, i) } else { LaurentPoly::zero(&ring) })
        .collect();
    let relations =
        (n - r + 1..=n).map(|j| Ok((j as u32, h[j - 1].eval_hom(&ring, &images)?))).collect::<Result<Vec<_>>>()?;
    let mut q = HgrQuotient { r, n, ring, relations, pieces: Vec::new() };
    let top = (r * (n - r) + n) as u32;
    q.pieces = (0..=top).map(|d| q.piece(d)).collect();
    Ok(q)
}

impl HgrQuotient {
    fn monomials(&self, d: u32) -> Vec<Exponents> {
        let mut v: Vec<Exponents> = partitions_with_max_part(d, self.r as u32)
            .into_iter()
            .map(|p| {
                let mut e: Exponents = Exponents::from_elem(0, self.r);
                for &part in p.parts() {
                    e[part as usize - 1] += 1;
                }
                e
            })
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    fn piece(&self, d: u32) -> GradedPiece {
        let monomials = self.monomials(d);
        let index: BTreeMap<&Exponents, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for (j, rel) in &self.relations {
            if *j > d {
                continue;
            }
            for m in self.monomials(d - j) {
                let shifted = &LaurentPoly::monomial(&self.ring, &m, 1).expect("nonnegative") * rel;
                let mut row = vec![Rational::zero(); monomials.len()];
                for (e, c) in shifted.terms() {
                    row[index[e]] = c.clone();
                }
                rows.push(row);
            }
        }
        let (relations, pivots) = if rows.is_empty() {
            (QMatrix::zeros(0, monomials.len()), Vec::new())
        } else {
            QMatrix::from_rows(rows).rref()
        };
        let basis = (0..monomials.len()).filter(|c| !pivots.contains(c)).map(|c| monomials[c].clone()).collect();
        GradedPiece { degree: d, monomials, relations, pivots, basis }
    }

    /// Quotient dimension in each computed degree.
    pub fn dimensions(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.dimensions().iter().sum()
    }

    /// Weighted degree of a monomial, `sum_i i * a_i`.
    pub fn weighted_degree(e: &[i32]) -> i64 {
        e.iter().enumerate().map(|(i, &a)| (i as i64 + 1) * a as i64).sum()
    }

    /// Normal form: the unique representative supported on basis monomials.
    pub fn reduce(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        p.same_ring(&LaurentPoly::zero(&self.ring))?;
        let mut by_degree: BTreeMap<u32, Vec<(&Exponents, &Rational)>> = BTreeMap::new();
        for (e, c) in p.terms() {
            by_degree.entry(Self::weighted_degree(e) as u32).or_default().push((e, c));
        }
        let mut out = LaurentPoly::zero(&self.ring);
        for (d, terms) in by_degree {
            let owned;
            let piece = match self.pieces.get(d as usize) {
                Some(piece) => piece,
                None => {
                    owned = self.piece(d);
                    &owned
                }
            };
            let mut v = vec![Rational::zero(); piece.monomials.len()];
            for (e, c) in terms {
                let i = piece.monomials.iter().position(|m| m == e).expect("degree computed from e");
                v[i] = c.clone();
            }
            for (row, &pc) in piece.pivots.iter().enumerate() {
                if v[pc].is_zero() {
                    continue;
                }
                let f = v[pc].clone();
                for (j, x) in v.iter_mut().enumerate() {
                    let a = &piece.relations[(row, j)];
                    if !a.is_zero() {
                        *x -= &f * a;
                    }
                }
            }
            let terms = piece.monomials.iter().cloned().zip(v);
            out = &out + &LaurentPoly::from_terms(&self.ring, terms)?;
        }
        Ok(out)
    }
}

/// Number of partitions of each size fitting in an `r x (n - r)` box.
pub fn box_partition_counts(r: usize, n: usize) -> Vec<usize> {
    let cols = (n - r) as u32;
    let mut counts = vec![0usize; r * (n - r) + 1];
    for p in partitions_in_box(r, cols) {
        counts[p.size() as usize] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;

    #[test]
    fn small_cases() {
        let q = hgr_quotient(1, 2).unwrap();
        assert_eq!(q.total_rank(), 2);
        assert_eq!(q.pieces[1].basis.len(), 1);
        let q = hgr_quotient(1, 3).unwrap();
        assert_eq!(&q.dimensions()[..4], &[1, 1, 1, 0]);
        let q = hgr_quotient(2, 4).unwrap();
        assert_eq!(q.total_rank(), 6);
        assert!(hgr_quotient(3, 2).is_err());
    }

    #[test]
    fn ranks_match_box_partitions() {
        for n in 1..=6 {
            for r in 1..=n {
                let q = hgr_quotient(r, n).unwrap();
                let counts = box_partition_counts(r, n);
                let dims = q.dimensions();
                for (d, &dim) in dims.iter().enumerate() {
                    assert_eq!(dim, counts.get(d).copied().unwrap_or(0), "r={r} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn reduce_kills_relations() {
        let q = hgr_quotient(2, 4).unwrap();
        for (_, rel) in &q.relations {
            let b1 = poly_parse("b1 + 3*b2", &q.ring).unwrap();
            assert!(q.reduce(&(&b1 * rel)).unwrap().is_zero());
        }
        let x = poly_parse("b1^2 + b2 - 7", &q.ring).unwrap();
        let nf = q.reduce(&x).unwrap();
        assert_eq!(q.reduce(&nf).unwrap(), nf);
        // Above the top degree everything vanishes, including degrees computed on demand.
        let high = poly_parse("b1^20", &q.ring).unwrap();
        assert!(q.reduce(&high).unwrap().is_zero());
    }
}
