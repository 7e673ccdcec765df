use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::{compare_column_spans, QMatrix};
use crate::exact::Rational;
use crate::report::Check;

/// `a_i = i^2` for odd `i`, zero for even `i`.
pub fn a_coeff(i: usize) -> Rational {
    if i % 2 == 1 {
        Rational::from_int((i * i) as i64)
    } else {
        Rational::zero()
    }
}

/// Beta-free part of `c_i`: `-8j(2j+1)` for `i = 2j+1`, zero for even `i`.
pub fn c_coeff(i: usize) -> Rational {
    if i % 2 == 1 {
        let j = (i / 2) as i64;
        Rational::from_int(-8 * j * (2 * j + 1))
    } else {
        Rational::zero()
    }
}

/// `c'_i = -8j(2j-1)` for `i = 2j+1`, zero for even `i`.
pub fn c_prime(i: usize) -> Rational {
    if i % 2 == 1 {
        let j = (i / 2) as i64;
        Rational::from_int(-8 * j * (2 * j - 1))
    } else {
        Rational::zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    SQ,
    SQDual,
    SZDual,
    Custom,
}

/// A graded operator on slots `1..=size`, stored with the beta-weight of each
/// entry. Slot `i` carries weight `target_weights[i-1]` in the target and
/// `source_weights[i-1]` in the source; an entry is homogeneous iff its weight
/// is the difference.
#[derive(Clone, Debug)]
pub struct BandOperator {
    pub kind: OperatorKind,
    pub size: usize,
    /// `(row, col)` 0-based, to `(beta-free coefficient, beta exponent)`.
    pub entries: BTreeMap<(usize, usize), (Rational, i64)>,
    pub source_weights: Vec<i64>,
    pub target_weights: Vec<i64>,
}

fn half(i: usize) -> i64 {
    ((i - 1) / 2) as i64
}

impl BandOperator {
    /// `s_i -> beta a_i s_i + c_i s_{i-2}`.
    pub fn s_q(size: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 1..=size {
            entries.insert((i - 1, i - 1), (a_coeff(i), 1));
            if i >= 3 {
                entries.insert((i - 3, i - 1), (c_coeff(i), 0));
            }
        }
        Self::build(OperatorKind::SQ, size, entries, |i| half(i) - 1, half)
    }

    /// `s_i^v -> beta a_i s_i^v + c_{i+2} s_{i+2}^v`.
    pub fn s_q_dual(size: usize) -> Self {
        Self::lower(OperatorKind::SQDual, size, |i| c_coeff(i + 2))
    }

    /// `b_{2j+1}^v -> (2j+1)^2 beta b_{2j+1}^v + c'_{2j+3} b_{2j+3}^v`.
    pub fn s_z_dual(size: usize) -> Self {
        Self::lower(OperatorKind::SZDual, size, |i| c_prime(i + 2))
    }

    fn lower(kind: OperatorKind, size: usize, off: impl Fn(usize) -> Rational) -> Self {
        let mut entries = BTreeMap::new();
        for i in 1..=size {
            entries.insert((i - 1, i - 1), (a_coeff(i), 1));
            if i + 2 <= size {
                entries.insert((i + 1, i - 1), (off(i), 0));
            }
        }
        Self::build(kind, size, entries, |i| -half(i), |i| 1 - half(i))
    }

    /// A dense operator in which every slot and entry has weight zero.
    pub fn custom(matrix: &QMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidArgument(format!(
                "operator must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        let mut entries = BTreeMap::new();
        for r in 0..n {
            for c in 0..n {
                entries.insert((r, c), (matrix[(r, c)].clone(), 0));
            }
        }
        Ok(Self::build(OperatorKind::Custom, n, entries, |_| 0, |_| 0))
    }

    fn build(
        kind: OperatorKind,
        size: usize,
        mut entries: BTreeMap<(usize, usize), (Rational, i64)>,
        source: impl Fn(usize) -> i64,
        target: impl Fn(usize) -> i64,
    ) -> Self {
        entries.retain(|_, (c, _)| !c.is_zero());
        BandOperator {
            kind,
            size,
            entries,
            source_weights: (1..=size).map(source).collect(),
            target_weights: (1..=size).map(target).collect(),
        }
    }

    /// Fails on the first entry whose beta-weight breaks homogeneity.
    pub fn validate_weights(&self) -> Result<()> {
        for (&(r, c), (_, w)) in &self.entries {
            if *w != self.target_weights[r] - self.source_weights[c] {
                return Err(Error::InconsistentWeight { row: r, col: c });
            }
        }
        Ok(())
    }

    /// The beta-normalized matrix over `Q`.
    pub fn matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.size, self.size);
        for (&(r, c), (x, _)) in &self.entries {
            m[(r, c)] = x.clone();
        }
        m
    }

    /// The normalized matrix restricted to odd slots, indexed by `j` for slot `2j+1`.
    pub fn odd_block(&self) -> QMatrix {
        let odd: Vec<usize> = (0..self.size).step_by(2).collect();
        let mut m = QMatrix::zeros(odd.len(), odd.len());
        for (a, &r) in odd.iter().enumerate() {
            for (b, &c) in odd.iter().enumerate() {
                if let Some((x, _)) = self.entries.get(&(r, c)) {
                    m[(a, b)] = x.clone();
                }
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Inverse,
    Direct,
}

/// A tower of truncated modules with one constant connecting operator.
#[derive(Clone, Debug)]
pub struct Tower {
    pub length: usize,
    pub connecting: BandOperator,
    pub direction: Direction,
}

impl Tower {
    pub fn new(length: usize, connecting: BandOperator, direction: Direction) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidArgument("tower of length 0".into()));
        }
        connecting.validate_weights()?;
        Ok(Tower { length, connecting, direction })
    }

    pub fn module_rank(&self) -> usize {
        self.connecting.size
    }

    /// Smallest `k <= length` with `Im S^k = Im S^{k+1}`.
    pub fn mittag_leffler_step(&self) -> Option<usize> {
        let s = self.connecting.matrix();
        let mut power = s.clone();
        for k in 1..=self.length {
            let next = power.mul(&s);
            if compare_column_spans(&power, &next).is_ok() {
                return Some(k);
            }
            power = next;
        }
        None
    }

    /// Images stabilize within the tower, so the derived limit vanishes.
    pub fn lim1_vanishes(&self) -> bool {
        self.mittag_leffler_step().is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageStability {
    pub rank_image: usize,
    pub rank_image_squared: usize,
    pub stable: bool,
    /// A vector in `Im S` outside `Im S^2`, when unstable.
    pub witness: Option<Vec<Rational>>,
}

/// Compares `Im S` with `Im S^2` by exact row reduction.
pub fn image_stability(op: &BandOperator) -> ImageStability {
    let s = op.matrix();
    let s2 = s.mul(&s);
    let result = compare_column_spans(&s, &s2);
    ImageStability {
        rank_image: s.rank(),
        rank_image_squared: s2.rank(),
        stable: result.is_ok(),
        witness: result.err(),
    }
}

/// Image stability of `S_Q` on slots `1..=2N+2`, plus the shape of its image.
pub fn s_q_image_report(n: usize) -> Vec<Check> {
    let op = BandOperator::s_q(2 * n + 2);
    let st = image_stability(&op);
    let s = op.matrix();
    let odd_units: Vec<Vec<Rational>> = (0..op.size)
        .step_by(2)
        .map(|r| (0..op.size).map(|i| if i == r { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let odd = QMatrix::from_columns(&odd_units, op.size);
    let even_rows_zero = (1..op.size).step_by(2).all(|r| s.row(r).iter().all(Rational::is_zero));
    let tower = Tower::new(n.max(1), op.clone(), Direction::Inverse);
    let ml = tower.as_ref().ok().and_then(Tower::mittag_leffler_step);
    vec![
        Check::new("weights-homogeneous", op.validate_weights().is_ok(), "ok", format!("{:?}", op.validate_weights())),
        Check::new("image-squared-equals-image", st.stable, "stable", format!("{:?}", st.witness)),
        Check::new("image-is-odd-span", compare_column_spans(&s, &odd).is_ok(), n + 1, st.rank_image),
        Check::new("even-rows-zero", even_rows_zero, true, even_rows_zero),
        Check::new("mittag-leffler-one-step", ml == Some(1), "Some(1)", format!("{ml:?}")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn coefficient_values() {
        assert_eq!(c_coeff(3), Rational::from_int(-24));
        assert_eq!(c_coeff(5), Rational::from_int(-80));
        assert_eq!(c_prime(3), Rational::from_int(-8));
        assert_eq!(c_prime(5), Rational::from_int(-48));
        assert_eq!(a_coeff(4), Rational::zero());
    }

    #[test]
    fn weights_are_homogeneous() {
        for op in [BandOperator::s_q(12), BandOperator::s_q_dual(12), BandOperator::s_z_dual(12)] {
            op.validate_weights().unwrap();
        }
        let mut bad = BandOperator::s_q(6);
        bad.entries.insert((0, 2), (Rational::one(), 1));
        assert_eq!(bad.validate_weights(), Err(Error::InconsistentWeight { row: 0, col: 2 }));
    }

    #[test]
    fn dual_is_transpose_on_odd_slots() {
        let s = BandOperator::s_q(20).odd_block();
        let d = BandOperator::s_q_dual(20).odd_block();
        assert_eq!(s.transpose(), d);
    }

    #[test]
    fn image_stability_cases() {
        assert!(all_passed(&s_q_image_report(10)));
        let zero = BandOperator::custom(&QMatrix::zeros(4, 4)).unwrap();
        assert!(image_stability(&zero).stable);
        let id = BandOperator::custom(&QMatrix::identity(4)).unwrap();
        assert!(image_stability(&id).stable);
        let mut shift = QMatrix::zeros(4, 4);
        for i in 0..3 {
            shift[(i, i + 1)] = Rational::one();
        }
        let nil = BandOperator::custom(&shift).unwrap();
        let st = image_stability(&nil);
        assert!(!st.stable);
        let w = st.witness.unwrap();
        assert!(nil.matrix().column_span_contains(&w));
        let t = Tower::new(6, nil, Direction::Inverse).unwrap();
        assert_eq!(t.mittag_leffler_step(), Some(4));
    }
}
