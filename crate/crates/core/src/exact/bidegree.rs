use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

/// A bidegree `(p, q)`. Grading is bookkeeping only; arithmetic never checks it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub p: i64,
    pub q: i64,
}

impl BiDegree {
    /// Degree of the Bott element.
    pub const BETA: BiDegree = BiDegree { p: -8, q: -4 };
    /// Degree of the Hopf element.
    pub const ETA: BiDegree = BiDegree { p: -1, q: -1 };
    pub const ZERO: BiDegree = BiDegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        BiDegree { p, q }
    }

    /// `(p - q) mod 4`, in `0..4`.
    pub fn witt_level(self) -> i64 {
        (self.p - self.q).rem_euclid(4)
    }

    /// Degree of the power-sum class `s_n`, which sits in `(4n, 2n)`.
    pub fn of_power_sum(n: i64) -> Self {
        BiDegree { p: 4 * n, q: 2 * n }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree { p: self.p + rhs.p, q: self.q + rhs.q }
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree { p: -self.p, q: -self.q }
    }
}

impl Mul<BiDegree> for i64 {
    type Output = BiDegree;
    fn mul(self, d: BiDegree) -> BiDegree {
        BiDegree { p: self * d.p, q: self * d.q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_preserves_witt_level() {
        for p in -9..9 {
            for q in -9..9 {
                let d = BiDegree::new(p, q);
                for k in -3..4 {
                    assert_eq!((d + k * BiDegree::BETA).witt_level(), d.witt_level());
                }
                let e = d + BiDegree::ETA;
                assert_eq!(e.p - e.q, d.p - d.q);
            }
        }
    }

    #[test]
    fn levels() {
        assert_eq!(BiDegree::new(0, 0).witt_level(), 0);
        assert_eq!(BiDegree::new(-3, 0).witt_level(), 1);
        assert_eq!(BiDegree::of_power_sum(3).witt_level(), 2);
    }
}
