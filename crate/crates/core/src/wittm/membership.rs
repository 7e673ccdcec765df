use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{make_generator, v_ring, MGenerator};
use crate::exact::linalg::integer_combination;
use crate::exact::{LaurentPoly, Rational};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NotInTruncatedSpan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Triangular solve in `{f_{j,shift} : j <= J}`; coefficients there are unique.
    FixedShift { shift: i64 },
    /// Hermite normal form over all `f_{j,n}` with `j <= J`, `|n| <= N`.
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipOptions {
    pub j_max: u32,
    pub n_window: i64,
    /// Forces the fixed-shift basis at this shift and disables the lattice fallback.
    pub shift: Option<i64>,
}

impl MembershipOptions {
    pub fn new(j_max: u32, n_window: i64) -> Self {
        MembershipOptions { j_max, n_window, shift: None }
    }
}

/// A `Member` verdict re-evaluates exactly to the target; a negative verdict
/// only speaks for the recorded truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    #[serde(serialize_with = "super::serialize_display")]
    pub target: LaurentPoly,
    pub verdict: Verdict,
    pub method: Method,
    pub truncation: MembershipOptions,
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: BTreeMap<(u32, i64), BigInt>,
}

#[derive(Serialize)]
struct CoefficientEntry {
    j: u32,
    n: i64,
    coefficient: String,
}

fn serialize_coefficients<S: serde::Serializer>(map: &BTreeMap<(u32, i64), BigInt>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(map.iter().map(|(&(j, n), c)| CoefficientEntry { j, n, coefficient: c.to_string() }))
}

impl MembershipCertificate {
    /// `sum coeff * f_{j,n}`.
    pub fn evaluate(&self) -> LaurentPoly {
        self.coefficients.iter().fold(LaurentPoly::zero(&v_ring()), |acc, (&(j, n), c)| {
            &acc + &make_generator(j, n).poly.scale(&Rational::from_bigint(c.clone()))
        })
    }

    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// `f_{j,n}` terms, one per line, for human output.
    pub fn describe(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Member => "member",
            Verdict::NotInTruncatedSpan => "not-in-truncated-span",
        };
        let method = match self.method {
            Method::FixedShift { shift } => format!("fixed shift n={shift}"),
            Method::Lattice => "lattice".to_string(),
        };
        let mut out = format!(
            "target: {}\nverdict: {verdict}\nmethod: {method}\ntruncation: j <= {}, |n| <= {}\n",
            self.target, self.truncation.j_max, self.truncation.n_window
        );
        for (&(j, n), c) in &self.coefficients {
            out.push_str(&format!("  f_{{{j},{n}}}: {c}\n"));
        }
        out
    }
}

/// Coefficients of `g` in `{f_{j,shift}}`, or `None` when the basis does not reach `g`.
fn fixed_shift_coefficients(g: &LaurentPoly, shift: i64, j_max: u32) -> Option<Vec<Rational>> {
    let (lo, hi) = g.degree_range(0)?;
    let (lo, hi) = (lo as i64 + shift, hi as i64 + shift);
    if lo < 0 || hi > j_max as i64 {
        return None;
    }
    let mut rest = g.shift(0, shift as i32).ok()?;
    let mut coeffs = vec![Rational::zero(); hi as usize + 1];
    for d in (0..=hi as usize).rev() {
        let lead = rest.coeff(&[d as i32]);
        if lead.is_zero() {
            continue;
        }
        let f = make_generator(d as u32, 0).poly;
        // f_{d,0} has leading coefficient 1 / (4^d (2d)!).
        let c = &lead / &f.coeff(&[d as i32]);
        rest = &rest - &f.scale(&c);
        coeffs[d] = c;
    }
    debug_assert!(rest.is_zero());
    Some(coeffs)
}

/// Decides integer membership of `g` in the span of `f_{j,n}`, `j <= J`, `|n| <= N`.
///
/// The fixed-shift basis at `n = -lowest exponent` is tried first; if its
/// unique coefficients are not all integers, a lattice solve over the whole
/// window follows.
pub fn membership(g: &LaurentPoly, opts: MembershipOptions) -> MembershipCertificate {
    let target = g.clone();
    let cert = |verdict, method, coefficients| MembershipCertificate {
        target: target.clone(),
        verdict,
        method,
        truncation: opts,
        coefficients,
    };
    let Some((lo, hi)) = g.degree_range(0) else {
        return cert(Verdict::Member, Method::FixedShift { shift: 0 }, BTreeMap::new());
    };
    let shift = opts.shift.unwrap_or(-(lo as i64));
    if shift.abs() <= opts.n_window || opts.shift.is_some() {
        if let Some(coeffs) = fixed_shift_coefficients(g, shift, opts.j_max) {
            if coeffs.iter().all(Rational::is_integer) {
                let map = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| ((j as u32, shift), c.to_integer().expect("checked integral")))
                    .collect();
                let out = cert(Verdict::Member, Method::FixedShift { shift }, map);
                assert_eq!(out.evaluate(), *g, "fixed-shift certificate must reproduce the target");
                return out;
            }
        }
    }
    if opts.shift.is_some() {
        return cert(Verdict::NotInTruncatedSpan, Method::FixedShift { shift }, BTreeMap::new());
    }

    let (j_max, n) = (opts.j_max as i64, opts.n_window);
    let gens: Vec<MGenerator> = (0..=opts.j_max).flat_map(|j| (-n..=n).map(move |k| make_generator(j, k))).collect();
    let (wlo, whi) = (-n, j_max + n);
    if (lo as i64) < wlo || (hi as i64) > whi {
        return cert(Verdict::NotInTruncatedSpan, Method::Lattice, BTreeMap::new());
    }
    let den = Rational::common_denominator(
        gens.iter().flat_map(|f| f.poly.terms().map(|(_, c)| c)).chain(g.terms().map(|(_, c)| c)),
    );
    let den_q = Rational::from_bigint(den);
    let width = (whi - wlo + 1) as usize;
    let to_vec = |p: &LaurentPoly| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); width];
        for (e, c) in p.terms() {
            v[(e[0] as i64 - wlo) as usize] = (c * &den_q).to_integer().expect("cleared denominator");
        }
        v
    };
    let rows: Vec<Vec<BigInt>> = gens.iter().map(|f| to_vec(&f.poly)).collect();
    match integer_combination(&rows, &to_vec(g)) {
        Some(x) => {
            let map = gens.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(f, c)| ((f.j, f.n), c)).collect();
            let out = cert(Verdict::Member, Method::Lattice, map);
            assert_eq!(out.evaluate(), *g, "lattice certificate must reproduce the target");
            out
        }
        None => cert(Verdict::NotInTruncatedSpan, Method::Lattice, BTreeMap::new()),
    }
}

/// Index pairs of the two factors and the certificate for their product.
pub type ProductCertificate = ((u32, i64), (u32, i64), MembershipCertificate);

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub certificates: Vec<ProductCertificate>,
    pub checks: Vec<Check>,
}

/// Certifies `f_{j1,n1} f_{j2,n2}` for every unordered pair with `j <= J_max`, `|n| <= N_max`.
pub fn product_closure(j_max: u32, n_max: i64) -> ClosureReport {
    let gens: Vec<(u32, i64)> = (0..=j_max).flat_map(|j| (-n_max..=n_max).map(move |n| (j, n))).collect();
    let pairs: Vec<((u32, i64), (u32, i64))> =
        gens.iter().enumerate().flat_map(|(i, &a)| gens[i..].iter().map(move |&b| (a, b))).collect();
    let opts = MembershipOptions::new(2 * j_max + 2, 2 * n_max);
    let certificates: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let prod = &make_generator(a.0, a.1).poly * &make_generator(b.0, b.1).poly;
            (a, b, membership(&prod, opts))
        })
        .collect();
    let failures: Vec<String> = certificates
        .iter()
        .filter(|(_, _, c)| !c.is_member())
        .map(|(a, b, _)| format!("f_{{{},{}}}*f_{{{},{}}}", a.0, a.1, b.0, b.1))
        .collect();
    let checks = vec![Check::new(
        format!("products-j{j_max}-n{n_max}"),
        failures.is_empty(),
        format!("{} products in M", pairs.len()),
        if failures.is_empty() { format!("{} products in M", pairs.len()) } else { failures.join(", ") },
    )];
    ClosureReport { pairs_checked: pairs.len(), certificates, checks }
}

/// The squared-generator identity with coefficients 9, 198, 720.
///
/// With `f_{j,n} = v^-n ...` these coefficients live on `f_{j,1}`; the same
/// coefficients on `f_{j,-1}` give `v^2 f_{1,0}^2` instead. Both facts are checked.
pub fn f10_squared_identity() -> Vec<Check> {
    let f10 = make_generator(1, 0).poly;
    let square = &f10 * &f10;
    let mut checks = Vec::new();

    let forced = membership(&square, MembershipOptions { j_max: 3, n_window: 1, shift: Some(1) });
    let expected: BTreeMap<(u32, i64), BigInt> =
        [((1, 1), 9), ((2, 1), 198), ((3, 1), 720)].into_iter().map(|(k, c)| (k, BigInt::from(c))).collect();
    checks.push(Check::new(
        "f10-squared-shift-1",
        forced.is_member() && forced.coefficients == expected,
        "9*f_{1,1} + 198*f_{2,1} + 720*f_{3,1}",
        format_combination(&forced.coefficients),
    ));

    let v = LaurentPoly::var_at(&v_ring(), 0);
    let literal = [(1u32, 9i64), (2, 198), (3, 720)].iter().fold(LaurentPoly::zero(&v_ring()), |acc, &(j, c)| {
        &acc + &make_generator(j, -1).poly.scale(&Rational::from_int(c))
    });
    checks.push(Check::new(
        "f10-squared-shift-minus-1-is-v2-multiple",
        literal == &(&v * &v) * &square && literal != square,
        "9*f_{1,-1} + 198*f_{2,-1} + 720*f_{3,-1} = v^2 * f_{1,0}^2",
        if literal == &(&v * &v) * &square { "v^2 * f_{1,0}^2".to_string() } else { literal.to_string() },
    ));

    let default = membership(&square, MembershipOptions::new(3, 1));
    let expected: BTreeMap<(u32, i64), BigInt> =
        [((1, 0), BigInt::one()), ((2, 0), BigInt::from(6))].into_iter().collect();
    checks.push(Check::new(
        "f10-squared-shift-0",
        default.coefficients == expected,
        "1*f_{1,0} + 6*f_{2,0}",
        format_combination(&default.coefficients),
    ));
    checks
}

fn format_combination(map: &BTreeMap<(u32, i64), BigInt>) -> String {
    if map.is_empty() {
        return "0".into();
    }
    map.iter().map(|(&(j, n), c)| format!("{c}*f_{{{j},{n}}}")).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;
    use crate::report::all_passed;

    fn parse(s: &str) -> LaurentPoly {
        poly_parse(s, &v_ring()).unwrap()
    }

    #[test]
    fn simple_members() {
        let c = membership(&parse("1/8*v - 1/8"), MembershipOptions::new(4, 4));
        assert!(c.is_member());
        assert_eq!(c.coefficients.len(), 1);
        assert_eq!(c.coefficients[&(1, 0)], BigInt::one());

        let c = membership(&parse("v^5"), MembershipOptions::new(4, 6));
        assert_eq!(c.coefficients[&(0, -5)], BigInt::one());

        let c = membership(&LaurentPoly::zero(&v_ring()), MembershipOptions::new(1, 1));
        assert!(c.is_member() && c.coefficients.is_empty());
    }

    #[test]
    fn f10_squared() {
        let checks = f10_squared_identity();
        assert!(all_passed(&checks), "{checks:#?}");
    }

    #[test]
    fn half_generator() {
        let c = membership(&parse("1/16*v - 1/16"), MembershipOptions::new(6, 6));
        assert_eq!(c.verdict, Verdict::NotInTruncatedSpan);
        assert_eq!(c.method, Method::Lattice);
    }

    #[test]
    fn lattice_fallback_finds_mixed_shifts() {
        // Mixed shifts; whichever method answers, the certificate must reproduce the target.
        let g = &make_generator(1, 0).poly - &make_generator(2, 1).poly;
        let c = membership(&g, MembershipOptions::new(3, 2));
        assert!(c.is_member());
        assert_eq!(c.evaluate(), g);
    }

    #[test]
    fn closure_small() {
        let rep = product_closure(2, 1);
        assert!(all_passed(&rep.checks), "{:#?}", rep.checks);
    }
}
