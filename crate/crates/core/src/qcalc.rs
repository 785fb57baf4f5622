//! The operator `D_{z1,…,zm}` and the classical q-derivative.
//!
//! `D_{z1,…,zm}` acts on a monomial by leaving it in place and multiplying
//! it by `h_n(1, z1, …, z_{m-1})`, where `n` is its `zm` exponent. With
//! `m = 2` this is "multiply by `z`, then take the q-derivative" in `z = z2`
//! with `q = z1`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::compositions::homogeneous;
use crate::error::{Error, Result};
use crate::series::{Profile, TruncatedSeries};

/// Memoized multipliers `h_n(1, v_1, …, v_r)` for one profile.
#[derive(Debug)]
pub struct Multipliers {
    profile: Arc<Profile>,
    cache: HashMap<(Vec<usize>, u32), TruncatedSeries>,
}

impl Multipliers {
    pub fn new(profile: &Arc<Profile>) -> Self {
        Multipliers { profile: Arc::clone(profile), cache: HashMap::new() }
    }

    /// `h_n(1, vars…)` truncated to the box.
    pub fn get(&mut self, vars: &[usize], n: u32) -> Result<&TruncatedSeries> {
        let key = (vars.to_vec(), n);
        if !self.cache.contains_key(&key) {
            let mut values = vec![TruncatedSeries::one(&self.profile)];
            for &v in vars {
                if v >= self.profile.len() {
                    return Err(Error::BadVariable(format!("index {v}")));
                }
                values.push(TruncatedSeries::var_at(&self.profile, v));
            }
            let h = homogeneous(n, &values)?;
            self.cache.insert(key.clone(), h);
        }
        Ok(&self.cache[&key])
    }
}

/// Applies the operator with multiplier variables `prefix` and target
/// variable `target` (given as profile indices), reusing `mults`.
pub fn apply_d_with(
    mults: &mut Multipliers,
    a: &TruncatedSeries,
    prefix: &[usize],
    target: usize,
) -> Result<TruncatedSeries> {
    if mults.profile != *a.profile() {
        return Err(Error::ProfileMismatch {
            left: mults.profile.to_string(),
            right: a.profile().to_string(),
        });
    }
    let n_vars = a.profile().len();
    if target >= n_vars || prefix.contains(&target) {
        return Err(Error::BadVariable(format!("operator target index {target}")));
    }
    let orders = a.profile().orders().to_vec();
    let mut out: Vec<(Vec<u32>, BigInt)> = Vec::new();
    for (e, c) in a.terms() {
        let h = mults.get(prefix, e[target])?;
        'terms: for (he, hc) in h.terms() {
            let mut f = e.to_vec();
            for i in 0..n_vars {
                f[i] += he[i];
                if f[i] > orders[i] {
                    continue 'terms;
                }
            }
            out.push((f, c * hc));
        }
    }
    Ok(TruncatedSeries::from_terms(a.profile(), out))
}

/// Indices of `z1, …, zm` in the profile.
pub fn z_indices(profile: &Profile, m: usize) -> Result<Vec<usize>> {
    (1..=m).map(|i| profile.index_of(&format!("z{i}"))).collect()
}

/// `D_{z1,…,zm} a` for `m >= 2`, with variables looked up by name.
pub fn apply_d(m: usize, a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut mults = Multipliers::new(a.profile());
    apply_d_cached(&mut mults, m, a)
}

pub fn apply_d_cached(mults: &mut Multipliers, m: usize, a: &TruncatedSeries) -> Result<TruncatedSeries> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("D needs at least two variables, got {m}")));
    }
    let z = z_indices(a.profile(), m)?;
    apply_d_with(mults, a, &z[..m - 1], z[m - 1])
}

/// `(d/dz)_q`: `z^n -> (1 + q + … + q^{n-1}) z^{n-1}`, extended linearly
/// (other variables ride along).
pub fn q_derivative(a: &TruncatedSeries, z: usize, q: usize) -> Result<TruncatedSeries> {
    let n_vars = a.profile().len();
    if z >= n_vars || q >= n_vars || z == q {
        return Err(Error::BadVariable(format!("q-derivative over {z} with q = {q}")));
    }
    let mut out = Vec::new();
    for (e, c) in a.terms() {
        let n = e[z];
        for j in 0..n {
            let mut f = e.to_vec();
            f[z] = n - 1;
            f[q] += j;
            out.push((f, c.clone()));
        }
    }
    Ok(TruncatedSeries::from_terms(a.profile(), out))
}
