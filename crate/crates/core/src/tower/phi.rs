use num_bigint::BigInt;
use serde::Serialize;

use super::operator::{a_coeff, c_prime, BandOperator};
use crate::exact::linalg::{compare_column_spans, QMatrix};
use crate::exact::{LaurentPoly, Rational};
use crate::report::Check;
use crate::wittm::{generator_denominator, make_generator, odd_square_product, v_ring};

/// Sign of the `v` exponent in the `n`-th map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiConvention {
    /// `v^-n`.
    NegativeShift,
    /// `v^n`.
    PositiveShift,
}

impl PhiConvention {
    fn sign(self) -> i64 {
        match self {
            PhiConvention::NegativeShift => -1,
            PhiConvention::PositiveShift => 1,
        }
    }
}

/// `prod_{i=1}^{j} c'_{2i+1}`.
pub fn c_prime_product(j: u32) -> Rational {
    (1..=j as usize).map(|i| c_prime(2 * i + 1)).product()
}

/// `phi_n(beta^{n-j} b^v_{2j+1}) = v^{±n} prod_{i<j} (v - (2i+1)^2) / prod_{i<=j} c'_{2i+1}`.
pub fn phi_value(conv: PhiConvention, n: i64, j: u32) -> LaurentPoly {
    odd_square_product(j)
        .shift(0, (conv.sign() * n) as i32)
        .expect("v is a Laurent variable")
        .div_scalar(&c_prime_product(j))
        .expect("c' products are nonzero")
}

/// `phi_{n+1}(S^v_Z e_j) = phi_n(e_j)` for `-L <= n < L`, `j < J`, where
/// `S^v_Z e_j = a_{2j+1} e_j + c'_{2j+3} e_{j+1}` in normalized coordinates.
pub fn phi_compatibility(conv: PhiConvention, length: i64, j_max: u32) -> Vec<(i64, u32)> {
    let op = BandOperator::s_z_dual(2 * j_max as usize + 2).odd_block();
    let mut failures = Vec::new();
    for n in -length..length {
        for j in 0..j_max {
            let ju = j as usize;
            let diag = &op[(ju, ju)];
            let off = &op[(ju + 1, ju)];
            debug_assert_eq!(diag, &a_coeff(2 * ju + 1));
            let lhs = &phi_value(conv, n + 1, j).scale(diag) + &phi_value(conv, n + 1, j + 1).scale(off);
            if lhs != phi_value(conv, n, j) {
                failures.push((n, j));
            }
        }
    }
    failures
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub selected: Option<PhiConvention>,
    pub failures_negative: usize,
    pub failures_positive: usize,
    pub checks: Vec<Check>,
}

/// Evaluates both sign conventions, keeps the one compatible with `S^v_Z`,
/// and compares the span of its images with the span of the `f_{j,n}`.
pub fn phi_map(length: i64, j_max: u32) -> PhiReport {
    let neg = phi_compatibility(PhiConvention::NegativeShift, length, j_max);
    let pos = phi_compatibility(PhiConvention::PositiveShift, length, j_max);
    let selected = match (neg.is_empty(), pos.is_empty()) {
        (true, false) => Some(PhiConvention::NegativeShift),
        (false, true) => Some(PhiConvention::PositiveShift),
        _ => None,
    };
    let mut checks = vec![Check::new(
        "convention-selected",
        selected.is_some(),
        "exactly one convention compatible",
        format!("negative: {} failures, positive: {} failures", neg.len(), pos.len()),
    )];
    let conv = selected.unwrap_or(PhiConvention::NegativeShift);
    let base = (-length..=length).all(|n| {
        let v = LaurentPoly::var_at(&v_ring(), 0);
        phi_value(conv, n, 0) == v.pow(conv.sign() * n).expect("Laurent power")
    });
    checks.push(Check::new("j0-is-prefactor", base, true, base));
    let j1 = phi_value(conv, 0, 1);
    let f10 = make_generator(1, 0).poly;
    checks.push(Check::new("j1-n0-is-minus-f10", j1 == -&f10, "-f_{1,0}", j1.to_string()));
    checks.push(span_check(conv, length, j_max));
    PhiReport { selected, failures_negative: neg.len(), failures_positive: pos.len(), checks }
}

/// `Q`-span of `phi_n(e_j)` equals the `Q`-span of `f_{j,n}` for `j <= J`, `|n| <= L`.
fn span_check(conv: PhiConvention, length: i64, j_max: u32) -> Check {
    let (lo, hi) = (-length, j_max as i64 + length);
    let width = (hi - lo + 1) as usize;
    let column = |p: &LaurentPoly| {
        let mut v = vec![Rational::zero(); width];
        for (e, c) in p.terms() {
            v[(e[0] as i64 - lo) as usize] = c.clone();
        }
        v
    };
    let mut phis = Vec::new();
    let mut fs = Vec::new();
    for n in -length..=length {
        for j in 0..=j_max {
            phis.push(column(&phi_value(conv, n, j)));
            fs.push(column(&make_generator(j, n).poly));
        }
    }
    let a = QMatrix::from_columns(&phis, width);
    let b = QMatrix::from_columns(&fs, width);
    let result = compare_column_spans(&a, &b);
    Check::new("span-equals-generator-span", result.is_ok(), "equal spans", format!("{result:?}"))
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorRow {
    pub j: u32,
    pub product: Rational,
    pub closed_form: Rational,
    pub generator_denominator: String,
}

/// Evaluates `prod_{i<=j} c'_{2i+1}` by brute force and compares it with
/// `(-4)^j (2j)!`, which is `(-1)^j` times the `f_{j,n}` denominator.
pub fn denominator_identity(j_max: u32) -> (Vec<DenominatorRow>, Vec<Check>) {
    let mut rows = Vec::new();
    let mut ok = true;
    for j in 1..=j_max {
        let product = c_prime_product(j);
        let fact: BigInt = (1..=2 * j as u64).map(BigInt::from).product();
        let closed_form = Rational::from_bigint(BigInt::from(-4).pow(j) * fact);
        let den = generator_denominator(j);
        let sign = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        ok &= product == closed_form && closed_form == Rational::from_bigint(sign * &den);
        rows.push(DenominatorRow { j, product, closed_form, generator_denominator: den.to_string() });
    }
    let mut checks = vec![Check::new(
        "product-equals-minus-4-power-factorial",
        ok,
        format!("(-4)^j (2j)! for j <= {j_max}"),
        if ok { format!("(-4)^j (2j)! for j <= {j_max}") } else { "mismatch".into() },
    )];
    if j_max >= 2 {
        checks.push(Check::equal("c-prime-3", &Rational::from_int(-8), &c_prime_product(1)));
        checks.push(Check::equal("c-prime-3-times-5", &Rational::from_int(384), &c_prime_product(2)));
    }
    (rows, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn convention_is_negative_shift() {
        let rep = phi_map(4, 5);
        assert_eq!(rep.selected, Some(PhiConvention::NegativeShift));
        assert!(rep.failures_positive > 0);
        assert!(all_passed(&rep.checks), "{:#?}", rep.checks);
    }

    #[test]
    fn phi_is_signed_generator() {
        for j in 0..=5u32 {
            for n in -2..=2 {
                let sign = if j % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
                assert_eq!(phi_value(PhiConvention::NegativeShift, n, j), make_generator(j, n).poly.scale(&sign));
            }
        }
    }

    #[test]
    fn denominators() {
        let (rows, checks) = denominator_identity(10);
        assert!(all_passed(&checks), "{checks:#?}");
        assert_eq!(rows[0].product, Rational::from_int(-8));
        assert_eq!(rows[1].product, Rational::from_int(384));
    }
}
