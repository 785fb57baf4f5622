//! Generating functions for `J(b,k,ℓ)`.
//!
//! Truncated-series evaluators return the coefficient list `J(0..=B)`;
//! closed forms return reduced [`RationalFunction`]s in `x`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compositions::{compositions, ext_binomial, homogeneous};
use crate::error::{Error, Result};
use crate::qcalc::{apply_d_cached, Multipliers};
use crate::rational::{Polynomial, RationalFunction};
use crate::series::{Profile, TruncatedSeries};

/// Default cap on the number of monomials in the `gf_thm3` box.
pub const DEFAULT_MONOMIAL_BUDGET: u128 = 2_000_000;

/// `1 - x - x^2 - … - x^k`.
pub fn capacity_polynomial(k: u32) -> Polynomial {
    let mut c = vec![BigInt::from(-1); k as usize + 1];
    c[0] = BigInt::one();
    Polynomial::new(c)
}

fn check_capacity(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("capacity must be positive".into()));
    }
    Ok(())
}

/// `1 - Σ_{i=1..k} x^i (1 + z + … + z^i)` in the given `x, z` box.
fn prop1_denominator(p: &Arc<Profile>, k: u32) -> TruncatedSeries {
    let mut terms = vec![(vec![0, 0], BigInt::one())];
    for i in 1..=k {
        for j in 0..=i {
            terms.push((vec![i, j], BigInt::from(-1)));
        }
    }
    TruncatedSeries::from_terms(p, terms)
}

/// Multiplies by `1/(1 - v)` for variable index `v`: a running sum along
/// that variable.
fn geometric_in(a: &TruncatedSeries, v: usize) -> TruncatedSeries {
    let order = a.profile().orders()[v];
    let terms = a.terms().flat_map(|(e, c)| {
        (e[v]..=order).map(move |t| {
            let mut f = e.to_vec();
            f[v] = t;
            (f, c.clone())
        })
    });
    TruncatedSeries::from_terms(a.profile(), terms.collect::<Vec<_>>())
}

/// The single-card integrand `1 / (1 - Σ x^i (1 + z + … + z^i))` with `x`
/// truncated at `order` and `z` at `z_order`.
pub fn prop1_integrand(k: u32, order: u32, z_order: u32) -> Result<TruncatedSeries> {
    check_capacity(k)?;
    let p = Arc::new(Profile::juggling(order, 1, z_order));
    prop1_denominator(&p, k).invert()
}

/// `J(b,k,1)` for `b = 0..=order`, as `[z^k]` of the integrand over `1 - z`.
pub fn gf_prop1(k: u32, order: u32) -> Result<Vec<BigInt>> {
    let integrand = prop1_integrand(k, order, k)?;
    geometric_in(&integrand, 1).extract_z_top(k)
}

/// The same numbers as the partial sum `Σ_{s=0..k} [z^s]` of the integrand.
pub fn prop1_partial_sums(k: u32, order: u32) -> Result<Vec<BigInt>> {
    let integrand = prop1_integrand(k, order, k)?;
    let mut out = vec![BigInt::zero(); order as usize + 1];
    for s in 0..=k {
        for (o, c) in out.iter_mut().zip(integrand.extract_top(0, s)?) {
            *o += c;
        }
    }
    Ok(out)
}

/// Builds `Σ_r c_r x^{k-r} / P^{1+r}` over the common denominator
/// `P^{k+1}`, then reduces.
fn over_common_denominator(k: u32, weights: &[(u32, BigInt)]) -> Result<RationalFunction> {
    let p = capacity_polynomial(k);
    let mut num = Polynomial::zero();
    for (r, c) in weights {
        if c.is_zero() {
            continue;
        }
        let term = Polynomial::monomial((k - r) as usize).mul(&p.pow(k - r)).scale(c);
        num = num.add(&term);
    }
    RationalFunction::new(num, p.pow(k + 1))?.reduce()
}

/// Sum over compositions `α` of `k` of `(-1)^{ℓ2(α)} x^{k-ℓ(α)} / P^{1+ℓ(α)}`
/// where `ℓ2` counts parts of size at least two.
pub fn gf_thm_l1(k: u32) -> Result<RationalFunction> {
    check_capacity(k)?;
    let mut weights: Vec<(u32, BigInt)> = (1..=k).map(|r| (r, BigInt::zero())).collect();
    for alpha in compositions(k) {
        let sign = if alpha.ell2() % 2 == 0 { 1 } else { -1 };
        weights[alpha.len() - 1].1 += sign;
    }
    over_common_denominator(k, &weights)
}

/// The same function with the composition sum collapsed by number of parts.
pub fn gf_cor_l1(k: u32) -> Result<RationalFunction> {
    check_capacity(k)?;
    let k_i = i64::from(k);
    let weights: Vec<(u32, BigInt)> = (1..=k)
        .map(|r| {
            let r_i = i64::from(r);
            let c = (0..=r_i)
                .map(|s| {
                    let sign = if (r_i - s) % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
                    sign * ext_binomial(r_i, s) * ext_binomial(k_i - r_i - 1, r_i - s - 1)
                })
                .sum();
            (r, c)
        })
        .collect();
    over_common_denominator(k, &weights)
}

/// `(1 - 2x + x^2) / (1 - 4x + 2x^2)`, the unbounded-capacity case.
pub fn infinite_rational() -> RationalFunction {
    RationalFunction::new(Polynomial::from_i64s(&[1, -2, 1]), Polynomial::from_i64s(&[1, -4, 2]))
        .expect("nonzero denominator")
}

/// `J(b,∞,1)` for `b = 0..=order` by expanding [`infinite_rational`].
pub fn gf_infinite(order: u32) -> Vec<BigInt> {
    infinite_rational().expand(order as usize).expect("unit constant term")
}

/// `J(b,∞,1)` from `J(b) = 4 J(b-1) - 2 J(b-2)` for `b >= 3`, with initial
/// values 1, 2, 7.
pub fn gf_infinite_recurrence(order: u32) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = [1, 2, 7].iter().map(|&v| BigInt::from(v)).collect();
    for b in 3..=order as usize {
        let next = BigInt::from(4) * &out[b - 1] - BigInt::from(2) * &out[b - 2];
        out.push(next);
    }
    out.truncate(order as usize + 1);
    out
}

/// `J(b,k,ℓ)` for `b = 0..=order` from the operator formula.
pub fn gf_thm3(k: u32, ell: u32, order: u32, budget: u128) -> Result<Vec<BigInt>> {
    gf_thm3_with_slack(k, ell, order, 0, budget)
}

/// [`gf_thm3`] with the `z` variables truncated at `k + slack` instead of
/// `k`. The extracted coefficients do not depend on `slack`.
pub fn gf_thm3_with_slack(k: u32, ell: u32, order: u32, slack: u32, budget: u128) -> Result<Vec<BigInt>> {
    check_capacity(k)?;
    if ell == 0 {
        return Err(Error::InvalidArgument("sequence length must be positive".into()));
    }
    let z_order = k + slack;
    let needed = u128::from(order + 1).saturating_mul(u128::from(z_order + 1).saturating_pow(ell));
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "series monomial", needed, limit: budget });
    }
    let p = Arc::new(Profile::juggling(order, ell as usize, z_order));
    let x = TruncatedSeries::var_at(&p, 0);
    let mut values = vec![TruncatedSeries::one(&p), x.clone()];
    for i in 1..=ell as usize {
        values.push(x.checked_mul(&TruncatedSeries::var_at(&p, i))?);
    }
    let h = homogeneous(k, &values)?;
    let mut a = TruncatedSeries::constant(&p, 2).checked_sub(&h)?.invert()?;
    let mut mults = Multipliers::new(&p);
    for m in (2..=ell as usize).rev() {
        a = apply_d_cached(&mut mults, m, &a)?;
    }
    for i in 1..=ell as usize {
        a = geometric_in(&a, i);
    }
    a.extract_z_top(k)
}
