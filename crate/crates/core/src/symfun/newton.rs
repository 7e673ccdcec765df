use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational, Ring};

/// Polynomial ring `Q[prefix1, ..., prefixn]`.
pub fn basis_ring(prefix: &str, n: usize) -> Arc<Ring> {
    let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::polynomial(&refs).expect("generated names are valid identifiers")
}

/// Basis changes between `e`, `p` and `h` up to degree `n` in `r` variables.
///
/// Entry `k - 1` of each vector is the degree-`k` element. `p_in_e` and
/// `h_in_e` set `e_i = 0` for `i > r`; `e_in_p` and `e_in_h` are the universal
/// formulas, which vanish on the `r`-variable side for `k > r`.
#[derive(Debug)]
pub struct NewtonTable {
    pub r: usize,
    pub n: usize,
    pub e_ring: Arc<Ring>,
    pub p_ring: Arc<Ring>,
    pub h_ring: Arc<Ring>,
    pub p_in_e: Vec<LaurentPoly>,
    pub e_in_p: Vec<LaurentPoly>,
    pub h_in_e: Vec<LaurentPoly>,
    pub e_in_h: Vec<LaurentPoly>,
}

type Cache = RwLock<HashMap<(usize, usize), Arc<NewtonTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized; concurrent callers may build the same table twice, but only one copy is kept.
pub fn newton_table(r: usize, n: usize) -> Result<Arc<NewtonTable>> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!("newton table needs r, n >= 1, got r={r}, n={n}")));
    }
    if let Some(t) = cache().read().unwrap().get(&(r, n)) {
        return Ok(t.clone());
    }
    let built = Arc::new(build(r, n));
    let mut w = cache().write().unwrap();
    Ok(w.entry((r, n)).or_insert(built).clone())
}

/// `p_1..p_n` in terms of `e_1..e_n`, and back.
pub fn newton_e_to_p(r: usize, n: usize) -> Result<Arc<NewtonTable>> {
    newton_table(r, n)
}

/// `h_1..h_n` as polynomials in `e_1..e_n`, with `e_i = 0` for `i > r`.
pub fn complete_from_elementary(r: usize, n: usize) -> Result<Vec<LaurentPoly>> {
    Ok(newton_table(r, n)?.h_in_e.clone())
}

fn build(r: usize, n: usize) -> NewtonTable {
    let e_ring = basis_ring("e", n);
    let p_ring = basis_ring("p", n);
    let h_ring = basis_ring("h", n);
    let e_trunc = |ring: &Arc<Ring>, i: usize| {
        if i <= r {
            LaurentPoly::var_at(ring, i - 1)
        } else {
            LaurentPoly::zero(ring)
        }
    };
    let sign = |i: usize| Rational::from_int(if i % 2 == 1 { 1 } else { -1 });

    // p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    let mut p_in_e: Vec<LaurentPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = e_trunc(&e_ring, k).scale(&(sign(k) * Rational::from_int(k as i64)));
        for i in 1..k {
            let ei = e_trunc(&e_ring, i);
            if !ei.is_zero() {
                acc = &acc + &(&ei * &p_in_e[k - i - 1]).scale(&sign(i));
            }
        }
        p_in_e.push(acc);
    }

    // k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut e_in_p: Vec<LaurentPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = LaurentPoly::zero(&p_ring);
        for i in 1..=k {
            let prev = if i == k { LaurentPoly::one(&p_ring) } else { e_in_p[k - i - 1].clone() };
            acc = &acc + &(&prev * &LaurentPoly::var_at(&p_ring, i - 1)).scale(&sign(i));
        }
        e_in_p.push(acc.scale(&Rational::new(1, k as i64)));
    }

    // h_k = sum_{i=1}^k (-1)^{i-1} e_i h_{k-i}; the relation is symmetric in e and h.
    let complete = |ring: &Arc<Ring>, gen: &dyn Fn(usize) -> LaurentPoly| {
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut acc = LaurentPoly::zero(ring);
            for i in 1..=k {
                let g = gen(i);
                if g.is_zero() {
                    continue;
                }
                let prev = if i == k { LaurentPoly::one(ring) } else { out[k - i - 1].clone() };
                acc = &acc + &(&g * &prev).scale(&sign(i));
            }
            out.push(acc);
        }
        out
    };
    let h_in_e = complete(&e_ring, &|i| e_trunc(&e_ring, i));
    let e_in_h = complete(&h_ring, &|i| LaurentPoly::var_at(&h_ring, i - 1));

    NewtonTable { r, n, e_ring, p_ring, h_ring, p_in_e, e_in_p, h_in_e, e_in_h }
}

impl NewtonTable {
    /// `e_k` pushed through `p` and back to `e`.
    pub fn e_roundtrip_via_p(&self, k: usize) -> Result<LaurentPoly> {
        self.e_in_p[k - 1].eval_hom(&self.e_ring, &self.p_in_e)
    }

    /// `e_k` pushed through `h` and back to `e`.
    pub fn e_roundtrip_via_h(&self, k: usize) -> Result<LaurentPoly> {
        self.e_in_h[k - 1].eval_hom(&self.e_ring, &self.h_in_e)
    }

    /// `e_k` in the `r`-variable quotient: itself for `k <= r`, else zero.
    pub fn e_expected(&self, k: usize) -> LaurentPoly {
        if k <= self.r {
            LaurentPoly::var_at(&self.e_ring, k - 1)
        } else {
            LaurentPoly::zero(&self.e_ring)
        }
    }
}

/// Terms of degree one (a single `e_i` to the first power).
pub fn indecomposable_part(p: &LaurentPoly) -> LaurentPoly {
    let linear =
        p.terms().filter(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>() == 1).map(|(e, c)| (e.clone(), c.clone()));
    LaurentPoly::from_terms(p.ring(), linear).expect("terms come from the same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;

    fn parse(text: &str, ring: &Arc<Ring>) -> LaurentPoly {
        poly_parse(text, ring).unwrap()
    }

    #[test]
    fn small_formulas() {
        let t = newton_table(2, 4).unwrap();
        assert_eq!(t.p_in_e[0], parse("e1", &t.e_ring));
        assert_eq!(t.p_in_e[1], parse("e1^2 - 2*e2", &t.e_ring));
        assert_eq!(t.h_in_e[1], parse("e1^2 - e2", &t.e_ring));
        // e3 = 0 in two variables.
        assert_eq!(t.p_in_e[2], parse("e1^3 - 3*e1*e2", &t.e_ring));
        assert_eq!(t.e_in_p[1], parse("1/2*p1^2 - 1/2*p2", &t.p_ring));
    }

    #[test]
    fn one_variable_complete_is_power() {
        let t = newton_table(1, 6).unwrap();
        for j in 1..=6 {
            assert_eq!(t.h_in_e[j - 1], LaurentPoly::var_at(&t.e_ring, 0).pow(j as i64).unwrap());
        }
    }

    #[test]
    fn linear_truncation() {
        let t = newton_table(12, 12).unwrap();
        for i in 1..=12usize {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let mut exps = vec![0; 12];
            exps[i - 1] = 1;
            let expected = LaurentPoly::monomial(&t.e_ring, &exps, sign * i as i64).unwrap();
            assert_eq!(indecomposable_part(&t.p_in_e[i - 1]), expected);
        }
    }

    #[test]
    fn memoized() {
        let a = newton_table(3, 5).unwrap();
        let b = newton_table(3, 5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(newton_table(0, 3).is_err());
    }

    #[test]
    fn roundtrips() {
        for r in 1..=4 {
            let t = newton_table(r, 7).unwrap();
            for k in 1..=7 {
                assert_eq!(t.e_roundtrip_via_p(k).unwrap(), t.e_expected(k), "r={r} k={k}");
                assert_eq!(t.e_roundtrip_via_h(k).unwrap(), t.e_expected(k), "r={r} k={k}");
            }
        }
    }
}
