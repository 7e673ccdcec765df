//! The subgroup `M` of `Q[v, v^-1]` spanned over `Z` by
//! `f_{j,n} = v^-n prod_{i<j} (v - (2i+1)^2) / (4^j (2j)!)`:
//! generators, integer membership certificates and product closure.

mod membership;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::{LaurentPoly, Rational, Ring};

pub use membership::{
    f10_squared_identity, membership, product_closure, ClosureReport, MembershipCertificate, MembershipOptions, Method,
    Verdict,
};

/// The ring `Q[v, v^-1]`, shared by every generator.
pub fn v_ring() -> Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| Ring::laurent(&["v"]).expect("fixed ring")).clone()
}

/// `4^j (2j)!`.
pub fn generator_denominator(j: u32) -> BigInt {
    let fact: BigInt = (1..=2 * j as u64).map(BigInt::from).product();
    BigInt::from(4u32).pow(j) * fact
}

/// `prod_{i<j} (v - (2i+1)^2)`, monic of degree `j`.
pub fn odd_square_product(j: u32) -> LaurentPoly {
    let ring = v_ring();
    let v = LaurentPoly::var_at(&ring, 0);
    (0..j as i64)
        .fold(LaurentPoly::one(&ring), |acc, i| &acc * &(&v - &LaurentPoly::constant(&ring, (2 * i + 1) * (2 * i + 1))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MGenerator {
    pub j: u32,
    pub n: i64,
    #[serde(serialize_with = "serialize_display")]
    pub poly: LaurentPoly,
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// `f_{j,n}`; its support is exactly `v^-n .. v^{j-n}`.
pub fn make_generator(j: u32, n: i64) -> MGenerator {
    let den = Rational::from_bigint(generator_denominator(j));
    let poly = odd_square_product(j)
        .shift(0, -(n as i32))
        .expect("v is a Laurent variable")
        .div_scalar(&den)
        .expect("nonzero denominator");
    MGenerator { j, n, poly }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;

    #[test]
    fn generator_examples() {
        let ring = v_ring();
        assert!(make_generator(0, 0).poly.is_one());
        assert_eq!(make_generator(1, 0).poly, poly_parse("1/8*v - 1/8", &ring).unwrap());
        assert_eq!(make_generator(2, 0).poly, poly_parse("1/384*(v - 1)*(v - 9)", &ring).unwrap());
        assert_eq!(make_generator(0, -5).poly, poly_parse("v^5", &ring).unwrap());
    }

    #[test]
    fn support_and_denominators() {
        for j in 0..=6u32 {
            for n in -3..=3i64 {
                let f = make_generator(j, n).poly;
                assert_eq!(f.degree_range(0), Some((-n as i32, j as i32 - n as i32)));
                // Clearing the denominator leaves an integral polynomial with unit leading coefficient.
                let d = Rational::from_bigint(generator_denominator(j));
                let cleared = f.scale(&d);
                assert!(cleared.terms().all(|(_, c)| c.is_integer()));
                assert!(cleared.leading_term().unwrap().1.is_one());
            }
        }
    }
}
