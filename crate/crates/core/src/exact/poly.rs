//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`Ring`] is an ordered list of variables. Each variable may allow negative
//! exponents (Laurent variable) or carry a nilpotency cap `c`, in which case any
//! term with exponent `>= c` in that variable is identically zero. The cap is a
//! property of the ring, so quotients like `Q[beta^±][xi][x, y]/(x^2, y^2)` are
//! plain rings here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exact::Rational;

pub type Exponents = SmallVec<[i32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpec {
    pub name: String,
    pub allow_negative: bool,
    pub nilpotency_cap: Option<u32>,
}

impl VarSpec {
    pub fn polynomial(name: impl Into<String>) -> Self {
        VarSpec { name: name.into(), allow_negative: false, nilpotency_cap: None }
    }

    pub fn laurent(name: impl Into<String>) -> Self {
        VarSpec { name: name.into(), allow_negative: true, nilpotency_cap: None }
    }

    pub fn nilpotent(name: impl Into<String>, cap: u32) -> Self {
        VarSpec { name: name.into(), allow_negative: false, nilpotency_cap: Some(cap) }
    }
}

impl fmt::Display for VarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.allow_negative {
            write!(f, "^±")?;
        }
        if let Some(cap) = self.nilpotency_cap {
            write!(f, "<{cap}>")?;
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<VarSpec>,
}

impl Ring {
    pub fn new(vars: Vec<VarSpec>) -> Result<Arc<Ring>> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(&v.name) {
                return Err(Error::InvalidRing(format!("bad variable name `{}`", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
            match v.nilpotency_cap {
                Some(0) => return Err(Error::InvalidRing(format!("cap of `{}` must be >= 1", v.name))),
                Some(_) if v.allow_negative => {
                    return Err(Error::InvalidRing(format!("`{}` cannot be both invertible and nilpotent", v.name)))
                }
                _ => {}
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Shorthand for a ring of plain polynomial variables.
    pub fn polynomial(names: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(names.iter().map(|n| VarSpec::polynomial(*n)).collect())
    }

    /// Shorthand for a ring of Laurent variables.
    pub fn laurent(names: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(names.iter().map(|n| VarSpec::laurent(*n)).collect())
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn check_exponents(&self, exps: &[i32]) -> Result<()> {
        if exps.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "exponent tuple of length {} in a ring with {} variables",
                exps.len(),
                self.vars.len()
            )));
        }
        for (v, &e) in self.vars.iter().zip(exps) {
            if e < 0 && !v.allow_negative {
                return Err(Error::BadExponent { var: v.name.clone(), exponent: e as i64 });
            }
        }
        Ok(())
    }

    /// True when some nilpotency cap annihilates the monomial.
    fn kills(&self, exps: &[i32]) -> bool {
        self.vars.iter().zip(exps).any(|(v, &e)| matches!(v.nilpotency_cap, Some(c) if e >= c as i32))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Ring>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Graded lexicographic comparison: total degree first, then exponents left to right.
pub fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct LaurentPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: impl Into<Rational>) -> Self {
        let c = c.into();
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(SmallVec::from_elem(0, ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var_at(ring, i))
    }

    /// The `i`-th variable. Panics when out of range.
    pub fn var_at(ring: &Arc<Ring>, i: usize) -> Self {
        let mut e: Exponents = SmallVec::from_elem(0, ring.nvars());
        e[i] = 1;
        Self::from_canonical_term(ring, e, Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, exps: &[i32], coeff: impl Into<Rational>) -> Result<Self> {
        ring.check_exponents(exps)?;
        Ok(Self::from_canonical_term(ring, SmallVec::from_slice(exps), coeff.into()))
    }

    fn from_canonical_term(ring: &Arc<Ring>, e: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() && !ring.kills(&e) {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            ring.check_exponents(&e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() || self.ring.kills(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under graded lex order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Terms sorted by descending graded lex order (the printing order).
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn same_ring(&self, other: &LaurentPoly) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> LaurentPoly {
        if q.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect() }
    }

    /// Integer power; negative exponents require a monomial unit.
    pub fn pow(&self, e: i64) -> Result<LaurentPoly> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Inverse of a unit. Only nonzero monomials in invertible variables qualify.
    pub fn inverse(&self) -> Result<LaurentPoly> {
        let not_unit = || Error::NotInvertible(self.to_string());
        if self.terms.len() != 1 {
            return Err(not_unit());
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv: Exponents = e.iter().map(|x| -x).collect();
        self.ring.check_exponents(&inv).map_err(|_| not_unit())?;
        Ok(Self::from_canonical_term(&self.ring, inv, c.recip().ok_or_else(not_unit)?))
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, var: usize, k: i32) -> Result<LaurentPoly> {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] += k;
            self.ring.check_exponents(&e2)?;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// The coefficient of `var^k`, as a polynomial with that exponent set to zero.
    pub fn extract(&self, var: usize, k: i32) -> LaurentPoly {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Smallest and largest exponent of `var` among the terms.
    pub fn degree_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Evaluates the ring homomorphism sending the `i`-th variable to `images[i]`.
    pub fn eval_hom(&self, target: &Arc<Ring>, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!("{} images for {} variables", images.len(), self.ring.nvars())));
        }
        let probe = LaurentPoly::zero(target);
        for im in images {
            probe.same_ring(im)?;
        }
        // Cache powers per variable; exponent tuples repeat heavily.
        let mut cache: Vec<BTreeMap<i32, LaurentPoly>> = vec![BTreeMap::new(); images.len()];
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !cache[i].contains_key(&k) {
                    let p = images[i].pow(k as i64)?;
                    cache[i].insert(k, p);
                }
                term = &term * &cache[i][&k];
                if term.is_zero() {
                    break;
                }
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Replaces one variable by a polynomial of the same ring.
    pub fn substitute(&self, var: &str, value: &LaurentPoly) -> Result<LaurentPoly> {
        let idx = self.ring.index_of(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        let images: Vec<_> = (0..self.ring.nvars())
            .map(|i| if i == idx { value.clone() } else { Self::var_at(&self.ring, i) })
            .collect();
        self.eval_hom(&self.ring, &images)
    }

    /// Moves the polynomial into another ring by matching variable names.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<LaurentPoly> {
        let images = self.ring.vars().iter().map(|v| LaurentPoly::var(target, &v.name)).collect::<Result<Vec<_>>>()?;
        self.eval_hom(target, &images)
    }

    /// Exact division by a rational constant.
    pub fn div_scalar(&self, q: &Rational) -> Result<LaurentPoly> {
        let inv = q.recip().ok_or_else(|| Error::NotInvertible("0".into()))?;
        Ok(self.scale(&inv))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.ring, self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &LaurentPoly, b: &LaurentPoly, op: ArithOp) -> Result<LaurentPoly> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}
