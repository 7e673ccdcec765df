use serde::Serialize;

use super::operator::{a_coeff, c_coeff, BandOperator};
use crate::error::{Error, Result};
use crate::exact::linalg::QMatrix;
use crate::exact::Rational;
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Rho,
    Tau,
}

/// Column `j` holds the beta-free coordinates of the `j`-th basis vector
/// (slot `2j+1`) in the standard odd generators; `beta_weights[j][l]` is the
/// power of beta multiplying the coefficient of slot `2l+1` in vector `j`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisCertificate {
    pub kind: BasisKind,
    #[serde(skip)]
    pub alpha: QMatrix,
    pub beta_weights: Vec<Vec<i64>>,
    pub checks: Vec<Check>,
}

impl BasisCertificate {
    /// Coefficient of slot `2l+1` in basis vector `j`.
    pub fn entry(&self, j: usize, l: usize) -> &Rational {
        &self.alpha[(l, j)]
    }
}

fn unit(len: usize, k: usize) -> Vec<Rational> {
    (0..len).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
}

/// Coordinates `q_0..q_{count-1}`, each of length `len`, of the kernel-rooted
/// chain `S q_0 = 0`, `S q_j = q_{j-1}`, `q_j` supported on `l >= j`, `q_{0,0} = 1`.
fn rho_rows(count: usize, len: usize) -> Vec<Vec<Rational>> {
    let a = |l: usize| a_coeff(2 * l + 1);
    let c = |l: usize| c_coeff(2 * l + 1);
    let mut q: Vec<Vec<Rational>> = Vec::with_capacity(count);
    for j in 0..count {
        let mut row = vec![Rational::zero(); len];
        if j == 0 {
            row[0] = Rational::one();
            for l in 0..len - 1 {
                row[l + 1] = -(&a(l) * &row[l]) / c(l + 1);
            }
        } else {
            row[j] = &q[j - 1][j - 1] / &c(j);
            for l in j..len - 1 {
                row[l + 1] = (&q[j - 1][l] - &(&row[l] * &a(l))) / c(l + 1);
            }
        }
        q.push(row);
    }
    q
}

/// The rho basis through index `N`: `S_Q rho_1 = 0`, `S_Q rho_{2j+1} = beta rho_{2j-1}`,
/// `alpha_{1,1} = 1`, no `s_1` component beyond `rho_1`.
///
/// Coordinates are computed one slot past `N` so the checks on slots `0..=N` are exact.
pub fn rho_basis(n: usize) -> Result<BasisCertificate> {
    if n == 0 {
        return Err(Error::InvalidArgument("rho basis needs N >= 1".into()));
    }
    let len = n + 2;
    let q = rho_rows(len, len);
    let s = BandOperator::s_q(2 * len).odd_block();
    let mut alpha = QMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        for l in 0..=n {
            alpha[(l, j)] = q[j][l].clone();
        }
    }
    let mut checks = vec![
        Check::equal("alpha-1-1", &Rational::one(), &q[0][0]),
        Check::equal("alpha-1-3", &Rational::new(1, 24), &q[0][1]),
        Check::equal("alpha-1-5", &Rational::new(3, 640), &q[0][2]),
        Check::new("lower-triangular", alpha.is_lower_triangular(), true, alpha.is_lower_triangular()),
    ];
    let zero_diag = (0..=n).find(|&j| alpha[(j, j)].is_zero());
    checks.push(Check::new("diagonal-nonzero", zero_diag.is_none(), "none", format!("{zero_diag:?}")));

    let mut bad_shift = None;
    for j in 0..=n {
        let image = s.mul_vec(&q[j]);
        let expected = if j == 0 { vec![Rational::zero(); len] } else { q[j - 1].clone() };
        if image[..=n] != expected[..=n] {
            bad_shift = Some(j);
            break;
        }
    }
    checks.push(Check::new("s-q-is-beta-shift", bad_shift.is_none(), "none", format!("{bad_shift:?}")));
    let beta_weights = (0..=n).map(|_| (0..=n).map(|l| l as i64).collect()).collect();
    Ok(BasisCertificate { kind: BasisKind::Rho, alpha, beta_weights, checks })
}

/// Image of `rho^st_m` at level `n`: the normalized coordinates of
/// `beta^-n rho_{2(m+n)+1}`, zero when `m + n < 0`.
pub fn structure_map(q: &[Vec<Rational>], m: i64, n: i64, len: usize) -> Vec<Rational> {
    let k = m + n;
    if k < 0 || k as usize >= q.len() {
        return vec![Rational::zero(); len];
    }
    q[k as usize][..len].to_vec()
}

#[derive(Clone, Debug)]
pub struct StableTowerReport {
    pub pairs_checked: usize,
    pub checks: Vec<Check>,
}

/// Level compatibility of the structure maps: `S_Q` applied to the level-`n+1`
/// image equals the level-`n` image, for `0 <= n < L` and `-L <= m <= N - L`.
pub fn stable_operation_tower(n_trunc: usize, length: usize) -> Result<StableTowerReport> {
    if length == 0 || n_trunc < length {
        return Err(Error::InvalidArgument(format!("need N >= L >= 1, got N={n_trunc}, L={length}")));
    }
    let len = n_trunc + 2;
    let q = rho_rows(len, len);
    let s = BandOperator::s_q(2 * len).odd_block();
    let (nn, ll) = (n_trunc as i64, length as i64);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for n in 0..ll {
        for m in -ll..=nn - ll {
            let upper = structure_map(&q, m, n + 1, len);
            let lower = structure_map(&q, m, n, len);
            if s.mul_vec(&upper)[..=n_trunc] != lower[..=n_trunc] {
                failures.push(format!("(m={m}, n={n})"));
            }
            pairs += 1;
        }
    }
    let zero_case = structure_map(&q, -1, 0, len).iter().all(Rational::is_zero);
    let base_case = structure_map(&q, 0, 0, len) == q[0][..len].to_vec();
    let step = s.mul_vec(&structure_map(&q, 0, 1, len))[..=n_trunc] == q[0][..=n_trunc];
    let checks = vec![
        Check::new("negative-index-is-zero", zero_case, true, zero_case),
        Check::new("base-case-rho-1", base_case, true, base_case),
        Check::new("compatibility-m0-n1", step, true, step),
        Check::new(
            "level-compatibility",
            failures.is_empty(),
            format!("{pairs} pairs compatible"),
            if failures.is_empty() { format!("{pairs} pairs compatible") } else { failures.join(", ") },
        ),
    ];
    Ok(StableTowerReport { pairs_checked: pairs, checks })
}

/// `tau_1 = s_1^v`, `tau_{2j+1} = beta^-1 S^v_Q tau_{2j-1}`, through index `N`.
pub fn tau_basis(n: usize) -> Result<BasisCertificate> {
    if n == 0 {
        return Err(Error::InvalidArgument("tau basis needs N >= 1".into()));
    }
    let len = n + 1;
    // Lower bidiagonal, so truncation never feeds back into slots 0..=N.
    let t = BandOperator::s_q_dual(2 * len).odd_block();
    let mut taus = vec![unit(len, 0)];
    for j in 1..=n + 1 {
        let next = t.mul_vec(&taus[j - 1]);
        taus.push(next);
    }
    let alpha = QMatrix::from_columns(&taus[..len], len);
    let tau1_ok = taus[0] == unit(len, 0);
    let mut checks =
        vec![Check::new("tau-1", tau1_ok, "s1", if tau1_ok { "s1".into() } else { format!("{:?}", taus[0]) })];
    let mut tau3 = vec![Rational::zero(); len];
    tau3[0] = Rational::one();
    if len > 1 {
        tau3[1] = Rational::from_int(-24);
    }
    checks.push(Check::new("tau-3", taus[1] == tau3, "s1 - 24 beta^-1 s3", format!("{:?}", &taus[1][..2.min(len)])));

    // tau_j is supported on l <= j with top coefficient prod_{i<=j} c_{2i+1}.
    let upper_ok = alpha.transpose().is_lower_triangular();
    checks.push(Check::new("triangular", upper_ok, true, upper_ok));
    let mut diag_ok = true;
    let mut prod = Rational::one();
    for j in 0..len {
        if j > 0 {
            prod *= c_coeff(2 * j + 1);
        }
        diag_ok &= alpha[(j, j)] == prod && !prod.is_zero();
    }
    checks.push(Check::new("diagonal-nonzero", diag_ok, true, diag_ok));
    let full_rank = alpha.rank() == len;
    checks.push(Check::new("spans-truncation", full_rank, len, alpha.rank()));
    let shift_ok = (0..n).all(|j| t.mul_vec(&taus[j]) == taus[j + 1]);
    checks.push(Check::new("s-q-dual-is-beta-shift", shift_ok, true, shift_ok));
    let beta_weights = (0..len).map(|_| (0..len).map(|l| -(l as i64)).collect()).collect();
    Ok(BasisCertificate { kind: BasisKind::Tau, alpha, beta_weights, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn rho_small() {
        let cert = rho_basis(6).unwrap();
        assert!(all_passed(&cert.checks), "{:#?}", cert.checks);
        assert_eq!(cert.entry(0, 1), &Rational::new(1, 24));
        // Second row: q_{1,1} = 1 / c_3.
        assert_eq!(cert.entry(1, 1), &Rational::new(-1, 24));
        assert!(rho_basis(0).is_err());
    }

    #[test]
    fn stable_tower_small() {
        let rep = stable_operation_tower(8, 4).unwrap();
        assert!(all_passed(&rep.checks), "{:#?}", rep.checks);
        assert!(stable_operation_tower(3, 4).is_err());
    }

    #[test]
    fn tau_small() {
        let cert = tau_basis(6).unwrap();
        assert!(all_passed(&cert.checks), "{:#?}", cert.checks);
    }
}
