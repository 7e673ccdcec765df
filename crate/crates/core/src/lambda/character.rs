use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{grlex, Exponents, LaurentPoly, Rational, Ring};
use crate::symfun::basis_ring;

/// Ring of Laurent polynomials in `chi1..chik`.
pub fn character_ring(k: usize) -> Arc<Ring> {
    let names: Vec<String> = (1..=k).map(|i| format!("chi{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::laurent(&refs).expect("generated names are valid identifiers")
}

/// A virtual character of a product of `Sp_2`'s: an integral Laurent
/// polynomial in the `chi_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    value: LaurentPoly,
}

impl Character {
    /// Fails on non-integral coefficients or non-Laurent variables.
    pub fn new(value: LaurentPoly) -> Result<Self> {
        if value.ring().vars().iter().any(|v| !v.allow_negative) {
            return Err(Error::InvalidRing(format!("characters need Laurent variables, got [{}]", value.ring())));
        }
        if let Some((e, _)) = value.terms().find(|(_, c)| !c.is_integer()) {
            return Err(Error::NonIntegralCharacter(monomial_name(value.ring(), e)));
        }
        Ok(Character { value })
    }

    /// `e_i = chi_i + chi_i^-1`, 1-based.
    pub fn fundamental(ring: &Arc<Ring>, i: usize) -> Self {
        let x = LaurentPoly::var_at(ring, i - 1);
        let inv = x.inverse().expect("Laurent variable");
        Character { value: &x + &inv }
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.value.ring()
    }

    /// Monomials with their signed multiplicities.
    pub fn monomials(&self) -> Vec<(Exponents, i64)> {
        self.value.terms().map(|(e, c)| (e.clone(), c.to_i64().expect("integral and small"))).collect()
    }

    pub fn is_effective(&self) -> bool {
        self.value.terms().all(|(_, c)| !c.is_negative())
    }

    /// Sum of multiplicities.
    pub fn virtual_dimension(&self) -> i64 {
        self.monomials().iter().map(|(_, m)| m).sum()
    }

    /// True when invariant under every `chi_i <-> chi_i^-1`.
    pub fn is_weyl_invariant(&self) -> bool {
        weyl_witness(&self.value).is_none()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn monomial_name(ring: &Arc<Ring>, e: &[i32]) -> String {
    LaurentPoly::monomial(ring, e, 1).map(|m| m.to_string()).unwrap_or_else(|_| format!("{e:?}"))
}

/// A monomial whose coefficient changes under some `chi_i <-> chi_i^-1`.
fn weyl_witness(p: &LaurentPoly) -> Option<String> {
    let ring = p.ring();
    for i in 0..ring.nvars() {
        for (e, c) in p.terms() {
            let mut flipped = e.clone();
            flipped[i] = -flipped[i];
            let other = p.coeff(&flipped);
            if &other != c {
                return Some(format!(
                    "{} (coefficient {c}, but {other} at {})",
                    monomial_name(ring, e),
                    monomial_name(ring, &flipped)
                ));
            }
        }
    }
    None
}

/// `Λ^0..Λ^m` of a character.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    pub source: Character,
    pub values: Vec<Character>,
}

impl LambdaTable {
    /// Expands `λ_t(c) = prod (1 + μ t)^mult` to order `m`; negative
    /// multiplicities use the inverse series `sum (-μ t)^k`.
    pub fn compute(source: &Character, m: usize) -> Self {
        let ring = source.ring().clone();
        let mut series = vec![LaurentPoly::zero(&ring); m + 1];
        series[0] = LaurentPoly::one(&ring);
        for (e, mult) in source.monomials() {
            let mu = LaurentPoly::monomial(&ring, &e, 1).expect("exponents from the same ring");
            let factor: Vec<LaurentPoly> = if mult > 0 {
                vec![LaurentPoly::one(&ring), mu]
            } else {
                let neg = -&mu;
                (0..=m).map(|k| neg.pow(k as i64).expect("nonnegative power")).collect()
            };
            for _ in 0..mult.unsigned_abs() {
                series = truncated_mul(&series, &factor, m);
            }
        }
        let values = series.into_iter().map(|value| Character { value }).collect();
        LambdaTable { source: source.clone(), values }
    }

    pub fn get(&self, m: usize) -> Option<&Character> {
        self.values.get(m)
    }
}

fn truncated_mul(a: &[LaurentPoly], b: &[LaurentPoly], m: usize) -> Vec<LaurentPoly> {
    let ring = a[0].ring();
    let mut out = vec![LaurentPoly::zero(ring); m + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// The `m`-th exterior power.
pub fn lambda_op(c: &Character, m: i64) -> Result<Character> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!("exterior power of negative order {m}")));
    }
    let m = m as usize;
    Ok(LambdaTable::compute(c, m).values.swap_remove(m))
}

/// Rewrites a Weyl-invariant Laurent polynomial in `chi_1..chi_k` as a
/// polynomial in `e_i = chi_i + chi_i^-1`, in the ring `e1..ek`.
///
/// Strips the grlex-largest monomial with nonnegative exponents; its sign
/// flips share its coefficient, so subtracting `c * prod e_i^{a_i}` removes
/// all of them and lowers the total absolute degree profile.
pub fn invariantize(p: &LaurentPoly) -> Result<LaurentPoly> {
    if let Some(witness) = weyl_witness(p) {
        return Err(Error::NotWeylInvariant { witness });
    }
    let chi = p.ring().clone();
    let k = chi.nvars();
    let e_ring = basis_ring("e", k);
    let e_chi: Vec<LaurentPoly> = (1..=k).map(|i| Character::fundamental(&chi, i).value).collect();
    let mut rest = p.clone();
    let mut out = LaurentPoly::zero(&e_ring);
    while let Some((a, c)) = rest
        .terms()
        .filter(|(e, _)| e.iter().all(|&x| x >= 0))
        .max_by(|x, y| grlex(x.0, y.0))
        .map(|(a, c)| (a.clone(), c.clone()))
    {
        let mut expansion = LaurentPoly::constant(&chi, c.clone());
        for (i, &ai) in a.iter().enumerate() {
            expansion = &expansion * &e_chi[i].pow(ai as i64)?;
        }
        rest = &rest - &expansion;
        out = &out + &LaurentPoly::monomial(&e_ring, &a, c)?;
    }
    if !rest.is_zero() {
        return Err(Error::NotWeylInvariant { witness: rest.to_string() });
    }
    debug_assert_eq!(&expand_fundamentals(&out, &chi)?, p);
    Ok(out)
}

/// Substitutes `e_i = chi_i + chi_i^-1`.
pub fn expand_fundamentals(p: &LaurentPoly, chi: &Arc<Ring>) -> Result<LaurentPoly> {
    let images: Vec<LaurentPoly> = (1..=p.ring().nvars()).map(|i| Character::fundamental(chi, i).value).collect();
    p.eval_hom(chi, &images)
}

/// Ring `Q[beta^±][xi1..xik]`.
pub fn borel_ring(k: usize) -> Arc<Ring> {
    let mut vars = vec![crate::exact::VarSpec::laurent("beta")];
    vars.extend((1..=k).map(|i| crate::exact::VarSpec::polynomial(format!("xi{i}"))));
    Ring::new(vars).expect("generated names are valid identifiers")
}

/// Sends an `e`-monomial of total degree `d` to `beta^{floor(d/2)}` times the
/// same monomial in the `xi_i`.
pub fn beta_dictionary(p: &LaurentPoly) -> Result<LaurentPoly> {
    let k = p.ring().nvars();
    let target = borel_ring(k);
    let terms = p.terms().map(|(e, c)| {
        let d: i32 = e.iter().sum();
        let mut ex: Exponents = Exponents::with_capacity(k + 1);
        ex.push(d.div_euclid(2));
        ex.extend(e.iter().copied());
        (ex, c.clone())
    });
    LaurentPoly::from_terms(&target, terms)
}

/// The trivial character of dimension `n`.
pub fn trivial(ring: &Arc<Ring>, n: i64) -> Character {
    Character { value: LaurentPoly::constant(ring, Rational::from_int(n)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;

    fn triple() -> Character {
        let chi = character_ring(3);
        let v = (1..=3).fold(LaurentPoly::one(&chi), |acc, i| &acc * Character::fundamental(&chi, i).value());
        Character::new(v).unwrap()
    }

    #[test]
    fn invariantize_examples() {
        let chi = character_ring(2);
        let e = basis_ring("e", 2);
        let p = poly_parse("chi1 + chi1^-1", &chi).unwrap();
        assert_eq!(invariantize(&p).unwrap(), poly_parse("e1", &e).unwrap());
        let p = poly_parse("(chi1 + chi1^-1)*(chi2 + chi2^-1)", &chi).unwrap();
        assert_eq!(invariantize(&p).unwrap(), poly_parse("e1*e2", &e).unwrap());
        let p = poly_parse("chi1^2 + chi1^-2", &chi).unwrap();
        assert_eq!(invariantize(&p).unwrap(), poly_parse("e1^2 - 2", &e).unwrap());
        let bad = poly_parse("chi1^2 + chi1^-1", &chi).unwrap();
        assert!(matches!(invariantize(&bad), Err(Error::NotWeylInvariant { .. })));
    }

    #[test]
    fn lambda_of_triple_product() {
        let c = triple();
        assert_eq!(c.virtual_dimension(), 8);
        let table = LambdaTable::compute(&c, 9);
        assert!(table.values[0].value().is_one());
        assert!(table.values[9].value().is_zero());
        let e = basis_ring("e", 3);
        let l2 = invariantize(table.values[2].value()).unwrap();
        let expected = poly_parse("e1^2*e2^2 + e1^2*e3^2 + e2^2*e3^2 - 2*e1^2 - 2*e2^2 - 2*e3^2 + 4", &e).unwrap();
        assert_eq!(l2, expected);
    }

    #[test]
    fn virtual_inverse() {
        let chi = character_ring(1);
        let x = Character::new(poly_parse("chi1", &chi).unwrap()).unwrap();
        let minus_x = Character::new(poly_parse("-chi1", &chi).unwrap()).unwrap();
        // λ_t(-x) = 1/(1 + x t).
        assert_eq!(lambda_op(&minus_x, 3).unwrap().value(), &poly_parse("-chi1^3", &chi).unwrap());
        assert_eq!(lambda_op(&x, 2).unwrap().value(), &LaurentPoly::zero(&chi));
        assert!(lambda_op(&x, -1).is_err());
    }

    #[test]
    fn dictionary() {
        let e = basis_ring("e", 3);
        let p = poly_parse("e1 + e1*e2*e3 + e1^2*e2^2 - 4", &e).unwrap();
        let out = beta_dictionary(&p).unwrap();
        let ring = borel_ring(3);
        assert_eq!(out, poly_parse("xi1 + beta*xi1*xi2*xi3 + beta^2*xi1^2*xi2^2 - 4", &ring).unwrap());
    }

    #[test]
    fn rejects_fractional() {
        let chi = character_ring(1);
        assert!(Character::new(poly_parse("1/2*chi1", &chi).unwrap()).is_err());
        assert!(Character::new(LaurentPoly::one(&basis_ring("e", 1))).is_err());
    }
}
