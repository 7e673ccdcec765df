use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::distinct_permutations;
use super::newton::{basis_ring, newton_table};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exact::{Exponents, LaurentPoly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Elementary,
    Complete,
    PowerSum,
    Monomial,
}

impl Basis {
    fn letter(self) -> char {
        match self {
            Basis::Elementary => 'e',
            Basis::Complete => 'h',
            Basis::PowerSum => 'p',
            Basis::Monomial => 'm',
        }
    }
}

/// A symmetric function as a finite combination of basis elements indexed by partitions.
///
/// `num_vars: None` is the stable (infinitely many variables) case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    num_vars: Option<usize>,
    basis: Basis,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymElement {
    pub fn new(
        num_vars: Option<usize>,
        basis: Basis,
        coeffs: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (lambda, c) in coeffs {
            if let Some(r) = num_vars {
                let fits = match basis {
                    Basis::Monomial => lambda.len() <= r,
                    Basis::Elementary => lambda.largest() as usize <= r,
                    Basis::Complete | Basis::PowerSum => true,
                };
                if !fits {
                    return Err(Error::InvalidArgument(format!(
                        "{}{lambda} vanishes in {r} variables",
                        basis.letter()
                    )));
                }
            }
            *map.entry(lambda).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if num_vars == Some(0) {
            return Err(Error::InvalidArgument("symmetric function in zero variables".into()));
        }
        Ok(SymElement { num_vars, basis, coeffs: map })
    }

    pub fn basis_element(num_vars: Option<usize>, basis: Basis, lambda: Partition) -> Result<Self> {
        Self::new(num_vars, basis, [(lambda, Rational::one())])
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.num_vars
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Variables used for expansion: `r`, or the top degree in the stable case,
    /// which is enough to separate all basis elements of that degree.
    pub fn working_vars(&self) -> usize {
        self.num_vars.unwrap_or_else(|| self.coeffs.keys().map(|l| l.size() as usize).max().unwrap_or(1).max(1))
    }

    /// Expands in a ring whose variables are the `r` alphabet letters.
    pub fn expand(&self, ring: &Arc<Ring>) -> Result<LaurentPoly> {
        let r = ring.nvars();
        let max_part = self.coeffs.keys().map(Partition::largest).max().unwrap_or(0) as usize;
        let gens: Vec<LaurentPoly> = match self.basis {
            Basis::Elementary => elementary_in(ring, max_part),
            Basis::Complete => complete_in(ring, max_part),
            Basis::PowerSum => power_sums_in(ring, max_part),
            Basis::Monomial => Vec::new(),
        };
        let mut out = LaurentPoly::zero(ring);
        for (lambda, c) in &self.coeffs {
            let term = match self.basis {
                Basis::Monomial => orbit_sum_poly(&pad(lambda, r)?, ring)?,
                _ => lambda.parts().iter().fold(LaurentPoly::one(ring), |acc, &k| &acc * &gens[k as usize]),
            };
            out = &out + &term.scale(c);
        }
        Ok(out)
    }

    /// Re-expresses the element in another basis, through its expansion in
    /// `working_vars()` variables.
    pub fn to_basis(&self, target: Basis) -> Result<SymElement> {
        let ring = basis_ring("x", self.working_vars());
        let p = self.expand(&ring)?;
        from_polynomial(&p, self.num_vars, target)
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().rev().map(|(l, c)| format!("{c}*{}{l}", self.basis.letter())).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn pad(lambda: &Partition, r: usize) -> Result<Vec<u32>> {
    if lambda.len() > r {
        return Err(Error::InvalidArgument(format!("m{lambda} needs more than {r} variables")));
    }
    let mut v = lambda.parts().to_vec();
    v.resize(r, 0);
    Ok(v)
}

/// `e_0..e_n` in the ring's variables.
pub fn elementary_in(ring: &Arc<Ring>, n: usize) -> Vec<LaurentPoly> {
    let mut e = vec![LaurentPoly::zero(ring); n + 1];
    e[0] = LaurentPoly::one(ring);
    for i in 0..ring.nvars() {
        let x = LaurentPoly::var_at(ring, i);
        for k in (1..=n).rev() {
            e[k] = &e[k] + &(&x * &e[k - 1]);
        }
    }
    e
}

/// `h_0..h_n` in the ring's variables.
pub fn complete_in(ring: &Arc<Ring>, n: usize) -> Vec<LaurentPoly> {
    let mut h = vec![LaurentPoly::zero(ring); n + 1];
    h[0] = LaurentPoly::one(ring);
    for i in 0..ring.nvars() {
        let x = LaurentPoly::var_at(ring, i);
        // Multiplying by 1/(1 - x t): h'_k = h_k + x h'_{k-1}.
        for k in 1..=n {
            h[k] = &h[k] + &(&x * &h[k - 1]);
        }
    }
    h
}

/// `p_0..p_n` in the ring's variables, with `p_0 = r`.
pub fn power_sums_in(ring: &Arc<Ring>, n: usize) -> Vec<LaurentPoly> {
    (0..=n)
        .map(|k| {
            (0..ring.nvars()).fold(LaurentPoly::zero(ring), |acc, i| {
                &acc + &LaurentPoly::var_at(ring, i).pow(k as i64).expect("nonnegative power")
            })
        })
        .collect()
}

/// The sum of the distinct monomials obtained by permuting `exponents`.
pub fn orbit_sum_poly(exponents: &[u32], ring: &Arc<Ring>) -> Result<LaurentPoly> {
    if exponents.len() != ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "orbit of a {}-tuple in a ring with {} variables",
            exponents.len(),
            ring.nvars()
        )));
    }
    let terms = distinct_permutations(exponents)
        .into_iter()
        .map(|perm| (perm.iter().map(|&e| e as i32).collect::<Exponents>(), Rational::one()));
    LaurentPoly::from_terms(ring, terms)
}

/// The orbit sum as a monomial-basis element in `exponents.len()` variables.
pub fn orbit_sum(exponents: &[u32]) -> Result<SymElement> {
    if exponents.is_empty() {
        return Err(Error::InvalidArgument("orbit sum needs at least one variable".into()));
    }
    SymElement::basis_element(Some(exponents.len()), Basis::Monomial, Partition::from_exponents(exponents))
}

/// True when `p` is invariant under every permutation of its variables.
pub fn is_symmetric(p: &LaurentPoly) -> bool {
    let ring = p.ring();
    (0..ring.nvars().saturating_sub(1)).all(|i| {
        let images: Vec<LaurentPoly> = (0..ring.nvars())
            .map(|j| {
                let k = if j == i {
                    i + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                };
                LaurentPoly::var_at(ring, k)
            })
            .collect();
        p.eval_hom(ring, &images).map(|q| &q == p).unwrap_or(false)
    })
}

/// Writes a symmetric polynomial in the requested basis.
pub fn from_polynomial(p: &LaurentPoly, num_vars: Option<usize>, target: Basis) -> Result<SymElement> {
    if p.terms().any(|(e, _)| e.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidArgument("negative exponent in a symmetric polynomial".into()));
    }
    if !is_symmetric(p) {
        return Err(Error::InvalidArgument(format!("{p} is not symmetric")));
    }
    match target {
        Basis::Monomial => {
            let coeffs = p.terms().filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1])).map(|(e, c)| {
                let exps: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                (Partition::from_exponents(&exps), c.clone())
            });
            SymElement::new(num_vars, Basis::Monomial, coeffs)
        }
        Basis::Elementary => SymElement::new(num_vars, Basis::Elementary, elementary_coefficients(p)),
        Basis::Complete | Basis::PowerSum => {
            let e_coeffs = elementary_coefficients(p);
            let top = e_coeffs.iter().map(|(l, _)| l.largest() as usize).max().unwrap_or(0);
            if top == 0 {
                return SymElement::new(num_vars, target, e_coeffs);
            }
            let table = newton_table(top, top)?;
            let (ring, formulas) = match target {
                Basis::Complete => (&table.h_ring, &table.e_in_h),
                _ => (&table.p_ring, &table.e_in_p),
            };
            let mut acc = LaurentPoly::zero(ring);
            for (lambda, c) in &e_coeffs {
                let prod = lambda.parts().iter().fold(LaurentPoly::one(ring), |a, &k| &a * &formulas[k as usize - 1]);
                acc = &acc + &prod.scale(c);
            }
            let coeffs = acc.terms().map(|(e, c)| {
                let counts: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                (Partition::from_multiplicities(&counts), c.clone())
            });
            SymElement::new(num_vars, target, coeffs)
        }
    }
}

/// Leading-term stripping: the lex-largest monomial `x^a` of a symmetric
/// polynomial has `a` weakly decreasing and is the leading term of `e_{a'}`.
fn elementary_coefficients(p: &LaurentPoly) -> Vec<(Partition, Rational)> {
    let ring = p.ring().clone();
    let r = ring.nvars();
    let e = elementary_in(&ring, r);
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((a, c)) = rest.terms().max_by(|x, y| x.0.cmp(y.0)).map(|(a, c)| (a.clone(), c.clone())) {
        debug_assert!(a.windows(2).all(|w| w[0] >= w[1]));
        let mut counts = vec![0u32; r];
        let mut prod = LaurentPoly::one(&ring);
        for i in 0..r {
            let next = if i + 1 < r { a[i + 1] } else { 0 };
            let k = (a[i] - next) as u32;
            counts[i] = k;
            prod = &prod * &e[i + 1].pow(k as i64).expect("nonnegative power");
        }
        rest = &rest - &prod.scale(&c);
        out.push((Partition::from_multiplicities(&counts), c));
    }
    out
}
