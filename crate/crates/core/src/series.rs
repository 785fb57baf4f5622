//! Exact truncated multivariate power series with big-integer coefficients.
//!
//! A [`TruncatedSeries`] lives in a box: every variable carries its own
//! truncation order and monomials with any exponent beyond it are dropped.
//! Dropping is a ring homomorphism (quotient by a monomial ideal), so every
//! identity of formal power series also holds exactly inside the box.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable names with per-variable truncation orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    names: Vec<String>,
    orders: Vec<u32>,
}

impl Profile {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut orders = Vec::new();
        for (name, order) in vars {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::BadVariable(format!("duplicate variable {name}")));
            }
            names.push(name);
            orders.push(order);
        }
        Ok(Profile { names, orders })
    }

    /// The `x, z1, ..., zℓ` profile used by every generating-function pipeline.
    pub fn juggling(x_order: u32, z_count: usize, z_order: u32) -> Self {
        let mut names = vec!["x".to_string()];
        let mut orders = vec![x_order];
        for i in 1..=z_count {
            names.push(format!("z{i}"));
            orders.push(z_order);
        }
        Profile { names, orders }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::BadVariable(name.to_string()))
    }

    pub fn contains(&self, exponents: &[u32]) -> bool {
        exponents.len() == self.orders.len()
            && exponents.iter().zip(&self.orders).all(|(e, o)| e <= o)
    }

    /// Number of monomials in the box.
    pub fn box_size(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128 + 1).product()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&self.orders)
            .map(|(n, o)| format!("{n}<={o}"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A power series truncated to the box of its [`Profile`].
///
/// Only nonzero coefficients are stored, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    profile: Arc<Profile>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(profile: &Arc<Profile>) -> Self {
        TruncatedSeries { profile: Arc::clone(profile), terms: BTreeMap::new() }
    }

    pub fn one(profile: &Arc<Profile>) -> Self {
        Self::constant(profile, BigInt::one())
    }

    pub fn constant(profile: &Arc<Profile>, c: impl Into<BigInt>) -> Self {
        Self::monomial(profile, vec![0; profile.len()], c)
    }

    /// `c * prod var_i^e_i`; zero when the exponent lies outside the box.
    pub fn monomial(profile: &Arc<Profile>, exponents: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponents.len(), profile.len(), "exponent vector has wrong arity");
        let mut s = Self::zero(profile);
        let c = c.into();
        if profile.contains(&exponents) && !c.is_zero() {
            s.terms.insert(exponents, c);
        }
        s
    }

    pub fn var(profile: &Arc<Profile>, name: &str) -> Result<Self> {
        let i = profile.index_of(name)?;
        Ok(Self::var_at(profile, i))
    }

    pub fn var_at(profile: &Arc<Profile>, index: usize) -> Self {
        let mut e = vec![0; profile.len()];
        e[index] = 1;
        Self::monomial(profile, e, 1)
    }

    /// Builds a series from arbitrary terms, dropping out-of-box monomials
    /// and merging duplicates.
    pub fn from_terms(
        profile: &Arc<Profile>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Self {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), profile.len(), "exponent vector has wrong arity");
            if profile.contains(&e) {
                *acc.entry(e).or_default() += c;
            }
        }
        Self::from_accumulator(profile, acc)
    }

    fn from_accumulator(profile: &Arc<Profile>, acc: HashMap<Vec<u32>, BigInt>) -> Self {
        TruncatedSeries {
            profile: Arc::clone(profile),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn profile(&self) -> &Arc<Profile> {
        &self.profile
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn check_profile(&self, other: &Self) -> Result<()> {
        if self.profile == other.profile {
            Ok(())
        } else {
            Err(Error::ProfileMismatch {
                left: self.profile.to_string(),
                right: other.profile.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let orders = self.profile.orders();
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (e1, c1) in &self.terms {
            'inner: for (e2, c2) in &other.terms {
                let mut e = Vec::with_capacity(e1.len());
                for ((a, b), o) in e1.iter().zip(e2).zip(orders) {
                    let s = a + b;
                    if s > *o {
                        continue 'inner;
                    }
                    e.push(s);
                }
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(Self::from_accumulator(&self.profile, acc))
    }

    fn add_term(&mut self, e: &[u32], c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(e);
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c.clone());
            }
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.profile);
        }
        TruncatedSeries {
            profile: Arc::clone(&self.profile),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.profile.len()]).cloned().unwrap_or_default()
    }

    /// Multiplicative inverse inside the box.
    ///
    /// Coefficients are solved in lexicographic order of exponent vectors:
    /// `b_e = c0 * ([e = 0] - sum_{0 < e' <= e} a_{e'} b_{e - e'})`, where
    /// `c0 = a_0 = ±1` is its own inverse.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let arity = self.profile.len();
        let higher: Vec<(&Vec<u32>, &BigInt)> =
            self.terms.iter().filter(|(e, _)| e.iter().any(|&x| x > 0)).collect();
        let mut solved: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for e in BoxIter::new(self.profile.orders()) {
            let mut acc = if e.iter().all(|&x| x == 0) { BigInt::one() } else { BigInt::zero() };
            let mut rest = vec![0u32; arity];
            for (ep, ap) in &higher {
                if ep.iter().zip(&e).any(|(a, b)| a > b) {
                    continue;
                }
                for i in 0..arity {
                    rest[i] = e[i] - ep[i];
                }
                if let Some(bv) = solved.get(&rest) {
                    acc -= *ap * bv;
                }
            }
            if !acc.is_zero() {
                solved.insert(e, &c0 * acc);
            }
        }
        Ok(Self::from_accumulator(&self.profile, solved))
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exponents: &[u32]) -> Result<BigInt> {
        if !self.profile.contains(exponents) {
            return Err(Error::OutOfBox {
                exponents: exponents.to_vec(),
                orders: self.profile.orders().to_vec(),
            });
        }
        Ok(self.terms.get(exponents).cloned().unwrap_or_default())
    }

    /// Coefficient list in variable `keep`, taken at the monomials where every
    /// other variable has exponent exactly `top`.
    pub fn extract_top(&self, keep: usize, top: u32) -> Result<Vec<BigInt>> {
        let orders = self.profile.orders();
        if keep >= orders.len() {
            return Err(Error::BadVariable(format!("index {keep}")));
        }
        for (i, &o) in orders.iter().enumerate() {
            if i != keep && top > o {
                let mut e = vec![top; orders.len()];
                e[keep] = 0;
                return Err(Error::OutOfBox { exponents: e, orders: orders.to_vec() });
            }
        }
        let mut out = vec![BigInt::zero(); orders[keep] as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().all(|(i, &x)| i == keep || x == top) {
                out[e[keep] as usize] = c.clone();
            }
        }
        Ok(out)
    }

    /// `[z1^k ... zℓ^k]` for the `x, z1..zℓ` layout (x at index 0).
    pub fn extract_z_top(&self, k: u32) -> Result<Vec<BigInt>> {
        self.extract_top(0, k)
    }

    /// Reorders variables: exponent slot `i` moves to slot `perm[i]`.
    /// The swapped slots must share a truncation order.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Self> {
        let n = self.profile.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let orders = self.profile.orders();
        if (0..n).any(|i| orders[i] != orders[perm[i]]) {
            return Err(Error::InvalidArgument(
                "permutation mixes variables with different truncation orders".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; n];
                for i in 0..n {
                    f[perm[i]] = e[i];
                }
                (f, c.clone())
            })
            .collect();
        Ok(TruncatedSeries { profile: Arc::clone(&self.profile), terms })
    }

    /// Substitutes `v_target -> v_target * v_factor`, i.e. `f(..., t, ...)`
    /// becomes `f(..., t*u, ...)`.
    pub fn substitute_product(&self, target: usize, factor: usize) -> Result<Self> {
        let n = self.profile.len();
        if target >= n || factor >= n || target == factor {
            return Err(Error::BadVariable(format!("substitution {target} -> {target}*{factor}")));
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = e.clone();
            f[factor] += e[target];
            (f, c.clone())
        });
        Ok(Self::from_terms(&self.profile, terms))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            vars: self.profile.names().to_vec(),
            trunc: self.profile.orders().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { e: e.clone(), c: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.vars.len() != json.trunc.len() {
            return Err(Error::Parse("vars and trunc differ in length".into()));
        }
        let profile = Arc::new(Profile::new(json.vars.iter().cloned().zip(json.trunc.iter().copied()))?);
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if !profile.contains(&t.e) {
                return Err(Error::OutOfBox { exponents: t.e.clone(), orders: json.trunc.clone() });
            }
            let c: BigInt = t.c.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
            terms.push((t.e.clone(), c));
        }
        Ok(Self::from_terms(&profile, terms))
    }
}

/// Wire form: `{"vars":[..],"trunc":[..],"terms":[{"e":[..],"c":"<decimal>"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub trunc: Vec<u32>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;

            /// Panics on profile mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).expect("series profile mismatch")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .zip(self.profile.names())
                .filter(|(x, _)| **x > 0)
                .map(|(x, n)| if *x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// All exponent vectors of a box in lexicographic order.
pub struct BoxIter {
    orders: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl BoxIter {
    pub fn new(orders: &[u32]) -> Self {
        BoxIter { orders: orders.to_vec(), next: Some(vec![0; orders.len()]) }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.orders[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
