use std::sync::Arc;

use serde::Serialize;

use super::character::{beta_dictionary, borel_ring, character_ring, invariantize, Character, LambdaTable};
use crate::error::{Error, Result};
use crate::exact::{poly_parse, series_log_derivative, LaurentPoly, Rational, Ring, TruncatedSeries, VarSpec};
use crate::report::Check;
use crate::symfun::{basis_ring, orbit_sum_poly};

/// Borel roots of a symplectic bundle; the rank is twice the number of roots.
#[derive(Clone, Debug)]
pub struct BorelData {
    pub roots: Vec<LaurentPoly>,
}

impl BorelData {
    pub fn new(roots: Vec<LaurentPoly>) -> Result<Self> {
        let Some(first) = roots.first() else {
            return Err(Error::InvalidArgument("no Borel roots".into()));
        };
        for r in &roots[1..] {
            first.same_ring(r)?;
        }
        Ok(BorelData { roots })
    }

    pub fn rank(&self) -> usize {
        2 * self.roots.len()
    }

    /// `b_t = prod (1 + xi_i t)`.
    pub fn total_borel(&self, max_degree: usize) -> Result<TruncatedSeries> {
        let ring = self.roots[0].ring();
        let mut b = TruncatedSeries::one("t", ring, max_degree);
        for xi in &self.roots {
            let mut c = vec![LaurentPoly::one(ring), xi.clone()];
            c.truncate(max_degree + 1);
            b = b.mul(&TruncatedSeries::from_coeffs("t", ring, max_degree, c)?)?;
        }
        Ok(b)
    }

    /// `s_1..s_n` from `s_t = -t d/dt ln b_{-t}`; entry 0 is zero.
    pub fn power_sums(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        let s = series_log_derivative(&self.total_borel(n)?.negate_var())?.scale(&Rational::from_int(-1));
        Ok(s.coeffs().to_vec())
    }
}

/// `(b_1, beta b_2, beta b_3, beta^2 b_4)` of a rank-8 bundle, as polynomials in `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelCombos {
    pub b1: LaurentPoly,
    pub beta_b2: LaurentPoly,
    pub beta_b3: LaurentPoly,
    pub beta2_b4: LaurentPoly,
}

/// `b_1 = Λ^1`, `beta b_2 = Λ^2 - 4`, `beta b_3 = Λ^3 - 3 Λ^1`, `beta^2 b_4 = Λ^4 - 2 Λ^2 + 2`.
pub fn borel_from_lambda(lam: &LambdaTable) -> Result<BorelCombos> {
    if lam.values.len() < 5 {
        return Err(Error::InvalidArgument(format!(
            "need exterior powers up to 4, table stops at {}",
            lam.values.len().saturating_sub(1)
        )));
    }
    let inv = |m: usize| invariantize(lam.values[m].value());
    let (l1, l2, l3, l4) = (inv(1)?, inv(2)?, inv(3)?, inv(4)?);
    let ring = l1.ring().clone();
    let k = |n: i64| LaurentPoly::constant(&ring, n);
    Ok(BorelCombos {
        beta_b2: &l2 - &k(4),
        beta_b3: &l3 - &l1.scale(&Rational::from_int(3)),
        beta2_b4: &(&l4 - &l2.scale(&Rational::from_int(2))) + &k(2),
        b1: l1,
    })
}

/// Elementary symmetric polynomials `sigma_0..sigma_n` of the ring's variables.
fn sigma(ring: &Arc<Ring>, n: usize) -> Vec<LaurentPoly> {
    crate::symfun::elementary_in(ring, n)
}

/// Exterior powers of `E_1 + E_2 + E_3 + E_4` with each `Λ^2 E_i` trivial,
/// checked against their expressions in the `sigma_j(E)`.
pub fn rank_eight_lambda_identities() -> Result<Vec<Check>> {
    let ring = Ring::polynomial(&["E1", "E2", "E3", "E4"])?;
    let mut lt = vec![LaurentPoly::one(&ring)];
    for i in 0..4 {
        let factor = [LaurentPoly::one(&ring), LaurentPoly::var_at(&ring, i), LaurentPoly::one(&ring)];
        let mut next = vec![LaurentPoly::zero(&ring); lt.len() + 2];
        for (a, x) in lt.iter().enumerate() {
            for (b, y) in factor.iter().enumerate() {
                next[a + b] = &next[a + b] + &(x * y);
            }
        }
        lt = next;
    }
    let s = sigma(&ring, 4);
    let k = |n: i64| LaurentPoly::constant(&ring, n);
    let expected = [
        ("exterior-power-0", k(1), "1"),
        ("exterior-power-1", s[1].clone(), "sigma1"),
        ("exterior-power-2", &s[2] + &k(4), "sigma2 + 4"),
        ("exterior-power-3", &s[3] + &s[1].scale(&Rational::from_int(3)), "sigma3 + 3*sigma1"),
        ("exterior-power-4", &(&s[4] + &s[2].scale(&Rational::from_int(2))) + &k(6), "sigma4 + 2*sigma2 + 6"),
    ];
    Ok(expected
        .into_iter()
        .enumerate()
        .map(|(j, (name, exp, label))| {
            let passed = lt[j] == exp;
            let actual = if passed { label.to_string() } else { lt[j].to_string() };
            Check::new(name, passed, label, actual)
        })
        .collect())
}

/// The character `e_1 e_2 e_3` of `E_1 ⊗ E_2 ⊗ E_3`.
pub fn triple_character() -> Character {
    let chi = character_ring(3);
    let v = (1..=3).fold(LaurentPoly::one(&chi), |acc, i| &acc * Character::fundamental(&chi, i).value());
    Character::new(v).expect("integral by construction")
}

/// Printed expansions of `Λ^m(e_1 e_2 e_3)`, `m = 1..4`, in `e1..e3`.
pub fn triple_lambda_reference() -> Vec<LaurentPoly> {
    let e = basis_ring("e", 3);
    [
        "e1*e2*e3",
        "e1^2*e2^2 + e1^2*e3^2 + e2^2*e3^2 - 2*e1^2 - 2*e2^2 - 2*e3^2 + 4",
        "e1^3*e2*e3 + e1*e2^3*e3 + e1*e2*e3^3 - 5*e1*e2*e3",
        "e1^4 + e2^4 + e3^4 + e1^2*e2^2*e3^2 - 4*e1^2 - 4*e2^2 - 4*e3^2 + 6",
    ]
    .iter()
    .map(|s| poly_parse(s, &e).expect("reference text parses"))
    .collect()
}

/// Printed Borel classes of the triple product, `b_1..b_4` in `Q[beta^±][xi1..xi3]`.
pub fn triple_borel_reference() -> Vec<LaurentPoly> {
    let ring = borel_ring(3);
    let xi = basis_ring("xi", 3);
    let orbit = |e: [u32; 3]| orbit_sum_poly(&e, &xi).and_then(|p| p.embed(&ring)).expect("orbit in xi1..xi3");
    let beta = LaurentPoly::var(&ring, "beta").expect("beta is a variable");
    let k = |n: i64| Rational::from_int(n);
    vec![
        &beta * &orbit([1, 1, 1]),
        &(&beta * &orbit([2, 2, 0])) - &orbit([2, 0, 0]).scale(&k(2)),
        &(&beta * &orbit([3, 1, 1])) - &orbit([1, 1, 1]).scale(&k(8)),
        &(&(&beta * &orbit([2, 2, 2])) + &orbit([4, 0, 0])) - &orbit([2, 2, 0]).scale(&k(2)),
    ]
}

#[derive(Clone, Debug)]
pub struct TripleProduct {
    /// `Λ^1..Λ^4` of `e_1 e_2 e_3`, in `e1..e3`.
    pub lambdas: Vec<LaurentPoly>,
    /// `b_1..b_4` in `Q[beta^±][xi1..xi3]`.
    pub borel: Vec<LaurentPoly>,
    pub checks: Vec<Check>,
}

/// Exterior powers, invariantization, Borel combinations, the beta dictionary
/// and division by the beta prefactor, compared at every stage.
pub fn triple_product_borel() -> Result<TripleProduct> {
    let table = LambdaTable::compute(&triple_character(), 4);
    let lambdas = (1..=4).map(|m| invariantize(table.values[m].value())).collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<Check> = lambdas
        .iter()
        .zip(triple_lambda_reference())
        .enumerate()
        .map(|(i, (got, want))| Check::equal(format!("lambda-{}", i + 1), &want, got))
        .collect();

    let combos = borel_from_lambda(&table)?;
    let ring = borel_ring(3);
    let beta = LaurentPoly::var(&ring, "beta")?;
    let unshift = |p: &LaurentPoly, k: i64| -> Result<LaurentPoly> { Ok(&beta_dictionary(p)? * &beta.pow(-k)?) };
    let borel = vec![
        unshift(&combos.b1, 0)?,
        unshift(&combos.beta_b2, 1)?,
        unshift(&combos.beta_b3, 1)?,
        unshift(&combos.beta2_b4, 2)?,
    ];
    checks.extend(
        borel
            .iter()
            .zip(triple_borel_reference())
            .enumerate()
            .map(|(i, (got, want))| Check::equal(format!("borel-{}", i + 1), &want, got)),
    );
    Ok(TripleProduct { lambdas, borel, checks })
}

/// Ring `Q[beta^±][xi][x, y] / (x^2, y^2)`.
pub fn series_ring() -> Arc<Ring> {
    Ring::new(vec![
        VarSpec::laurent("beta"),
        VarSpec::polynomial("xi"),
        VarSpec::nilpotent("x", 2),
        VarSpec::nilpotent("y", 2),
    ])
    .expect("fixed ring")
}

/// Printed total Borel class of `E_1 ⊗ E_2 ⊗ E_3` with `b_1(E_1) = x`,
/// `b_1(E_2) = y`, `b_1(E_3) = xi`, coefficients of `t^0..t^4`.
pub fn printed_total_class(ring: &Arc<Ring>) -> Vec<LaurentPoly> {
    ["1", "beta*x*y*xi", "-2*xi^2", "beta*x*y*xi^3 - 8*x*y*xi", "xi^4"]
        .iter()
        .map(|s| poly_parse(s, ring).expect("reference text parses"))
        .collect()
}

/// One coefficient of the `xy`-part of `s_t`: `beta (a_i xi^i + c_i xi^{i-2})`,
/// with `c_i` stored as the rational multiplying `beta^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCoefficient {
    pub degree: usize,
    pub a: Rational,
    pub c_over_beta_inverse: Rational,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub coefficients: Vec<SeriesCoefficient>,
    pub checks: Vec<Check>,
}

/// Expected `a_i`: `(2j+1)^2` for `i = 2j+1`, zero for even `i`.
pub fn expected_a(i: usize) -> Rational {
    if i % 2 == 1 {
        Rational::from_int((i * i) as i64)
    } else {
        Rational::zero()
    }
}

/// Expected `beta * c_i`: `-8j(2j+1)` for `i = 2j+1`, zero for even `i`.
pub fn expected_c(i: usize) -> Rational {
    if i % 2 == 1 {
        let j = (i / 2) as i64;
        Rational::from_int(-8 * j * (2 * j + 1))
    } else {
        Rational::zero()
    }
}

/// Power sums of the triple product restricted to `x^2 = y^2 = 0`, read off
/// the `xy`-component up to `t^max_degree`.
pub fn odd_power_sum_series(max_degree: usize) -> Result<SeriesReport> {
    if max_degree < 3 {
        return Err(Error::InvalidArgument(format!("series degree must be at least 3, got {max_degree}")));
    }
    let ring = series_ring();
    let printed = printed_total_class(&ring);
    let mut checks = Vec::new();

    // The printed total class must agree with the triple-product Borel classes.
    let product = triple_product_borel()?;
    let images: Vec<LaurentPoly> =
        ["beta", "x", "y", "xi"].iter().map(|v| LaurentPoly::var(&ring, v)).collect::<Result<_>>()?;
    for (i, b) in product.borel.iter().enumerate() {
        let got = b.eval_hom(&ring, &images)?;
        checks.push(Check::equal(format!("total-class-t{}", i + 1), &printed[i + 1], &got));
    }

    let mut coeffs = printed;
    coeffs.truncate(max_degree + 1);
    let b = TruncatedSeries::from_coeffs("t", &ring, max_degree, coeffs)?;
    let s = series_log_derivative(&b.negate_var())?.scale(&Rational::from_int(-1));

    let (bi, xii, xv, yv) = (0, 1, 2, 3);
    let mut coefficients = Vec::new();
    for i in 1..=max_degree {
        let xy = s.coeff(i).extract(xv, 1).extract(yv, 1);
        let mut a_exp = vec![0i32; 4];
        a_exp[bi] = 1;
        a_exp[xii] = i as i32;
        let a = xy.coeff(&a_exp);
        let c = if i >= 2 {
            let mut c_exp = vec![0i32; 4];
            c_exp[xii] = i as i32 - 2;
            xy.coeff(&c_exp)
        } else {
            Rational::zero()
        };
        let mut expected = LaurentPoly::monomial(&ring, &a_exp, expected_a(i))?;
        if i >= 2 {
            let mut c_exp = vec![0i32; 4];
            c_exp[xii] = i as i32 - 2;
            expected = &expected + &LaurentPoly::monomial(&ring, &c_exp, expected_c(i))?;
        }
        checks.push(Check::equal(format!("xy-coefficient-t{i:02}"), &expected, &xy));
        coefficients.push(SeriesCoefficient { degree: i, a, c_over_beta_inverse: c });
    }
    Ok(SeriesReport { coefficients, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn rank_eight() {
        let checks = rank_eight_lambda_identities().unwrap();
        assert_eq!(checks.len(), 5);
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn triple_product() {
        let tp = triple_product_borel().unwrap();
        assert!(all_passed(&tp.checks), "{:#?}", tp.checks);
        let ring = borel_ring(3);
        assert_eq!(tp.borel[0], poly_parse("beta*xi1*xi2*xi3", &ring).unwrap());
        let b2 = tp.borel[1].substitute("xi3", &LaurentPoly::zero(&ring)).unwrap();
        assert_eq!(b2, poly_parse("beta*xi1^2*xi2^2 - 2*xi1^2 - 2*xi2^2", &ring).unwrap());
    }

    #[test]
    fn series_low_degrees() {
        let rep = odd_power_sum_series(7).unwrap();
        assert!(all_passed(&rep.checks), "{:#?}", rep.checks);
        assert_eq!(rep.coefficients[0].a, Rational::one());
        assert_eq!(rep.coefficients[0].c_over_beta_inverse, Rational::zero());
        assert_eq!(rep.coefficients[1].a, Rational::zero());
        assert_eq!(rep.coefficients[2].a, Rational::from_int(9));
        assert_eq!(rep.coefficients[2].c_over_beta_inverse, Rational::from_int(-24));
        assert!(odd_power_sum_series(2).is_err());
    }

    #[test]
    fn trivial_rank_eight_combos() {
        let chi = character_ring(1);
        let table = LambdaTable::compute(&super::super::character::trivial(&chi, 8), 4);
        let combos = borel_from_lambda(&table).unwrap();
        let e = combos.b1.ring().clone();
        assert_eq!(combos.b1, LaurentPoly::constant(&e, 8));
        assert_eq!(combos.beta_b2, LaurentPoly::constant(&e, 24));
        assert_eq!(combos.beta_b3, LaurentPoly::constant(&e, 32));
        assert_eq!(combos.beta2_b4, LaurentPoly::constant(&e, 16));
    }

    #[test]
    fn power_sums_of_two_roots() {
        let ring = Ring::polynomial(&["u", "w"]).unwrap();
        let roots = vec![LaurentPoly::var(&ring, "u").unwrap(), LaurentPoly::var(&ring, "w").unwrap()];
        let data = BorelData::new(roots).unwrap();
        assert_eq!(data.rank(), 4);
        let p = data.power_sums(6).unwrap();
        for (n, pn) in p.iter().enumerate().skip(1) {
            let expected = poly_parse(&format!("u^{n} + w^{n}"), &ring).unwrap();
            assert_eq!(pn, &expected);
        }
    }
}
