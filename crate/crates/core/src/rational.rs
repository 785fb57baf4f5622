//! Univariate integer polynomials, rational functions in `x`, and exact
//! linear-recurrence fitting.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial with big-integer coefficients, lowest degree first.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    /// Clears denominators and content; the leading coefficient is made
    /// positive.
    fn from_rational_primitive(q: &[BigRational]) -> Self {
        let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let p = Self::new(q.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect());
        let g = p.content();
        if g.is_zero() {
            return p;
        }
        let sign = if p.coeffs.last().expect("nonzero").is_negative() { -BigInt::one() } else { BigInt::one() };
        Self::new(p.coeffs.iter().map(|c| c / &g * &sign).collect())
    }

    /// Primitive gcd over `Q[x]` with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.to_rational();
        let mut b = other.to_rational();
        trim_q(&mut a);
        trim_q(&mut b);
        while !b.is_empty() {
            let (_, r) = divmod_q(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Self::zero();
        }
        Self::from_rational_primitive(&a)
    }

    /// Quotient when `divisor` divides `self` in `Z[x]`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = divmod_q(&self.to_rational(), &divisor.to_rational());
        if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Self::new(q.iter().map(BigRational::to_integer).collect()))
    }

    /// True when `self` divides `other` in `Q[x]`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        divmod_q(&other.to_rational(), &self.to_rational()).1.is_empty()
    }
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn divmod_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let mut b = b.to_vec();
    trim_q(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonzero") / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &factor * bc;
        }
        q[shift] = factor;
        r.pop();
        trim_q(&mut r);
    }
    trim_q(&mut q);
    (q, r)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                var
            } else {
                format!("{mag}*{var}")
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `numerator / denominator` in `Q(x)` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Cancels the polynomial gcd and the common content. The denominator is
    /// signed so its constant term is positive (its leading coefficient when
    /// the constant term vanishes).
    pub fn reduce(&self) -> Result<Self> {
        if self.denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.numerator.is_zero() {
            return Self::new(Polynomial::zero(), Polynomial::one());
        }
        let g = self.numerator.gcd(&self.denominator);
        let num = self.numerator.exact_div(&g).expect("gcd divides the numerator");
        let den = self.denominator.exact_div(&g).expect("gcd divides the denominator");
        let c = num.content().gcd(&den.content());
        let mut num = Polynomial::new(num.coeffs.iter().map(|a| a / &c).collect());
        let mut den = Polynomial::new(den.coeffs.iter().map(|a| a / &c).collect());
        let pivot = if den.coeff(0).is_zero() {
            den.coeffs.last().expect("nonzero").clone()
        } else {
            den.coeff(0)
        };
        if pivot.is_negative() {
            num = num.scale(&-BigInt::one());
            den = den.scale(&-BigInt::one());
        }
        Self::new(num, den)
    }

    /// First `order + 1` power-series coefficients. The denominator's
    /// constant term must be ±1 so the expansion stays integral.
    pub fn expand(&self, order: usize) -> Result<Vec<BigInt>> {
        let d0 = self.denominator.coeff(0);
        if d0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(d0.to_string()));
        }
        let den = self.denominator.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.numerator.coeff(n);
            for i in 1..den.len().min(n + 1) {
                acc -= &den[i] * &out[n - i];
            }
            out.push(&d0 * acc);
        }
        Ok(out)
    }

    /// Same element of `Q(x)` (cross-multiplication).
    pub fn same_as(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// `a_n = c_1 a_{n-1} + … + c_d a_{n-d}` for every `n >= valid_from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<BigRational>,
    valid_from: usize,
}

impl Recurrence {
    pub fn new(coeffs: Vec<BigRational>, valid_from: usize) -> Self {
        assert!(valid_from >= coeffs.len(), "recurrence would index before the sequence start");
        Recurrence { coeffs, valid_from }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// Integer coefficients, when all of them are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `1 - c_1 x - … - c_d x^d`, scaled to a primitive integer polynomial
    /// with positive constant term. Any generating function satisfying the
    /// recurrence has this as a denominator.
    pub fn connection_polynomial(&self) -> Polynomial {
        let mut q = vec![BigRational::one()];
        q.extend(self.coeffs.iter().map(|c| -c));
        let p = Polynomial::from_rational_primitive(&q);
        if p.coeff(0).is_negative() {
            p.scale(&-BigInt::one())
        } else {
            p
        }
    }

    /// `x^d - c_1 x^{d-1} - … - c_d`, lowest degree first.
    pub fn char_poly(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self.coeffs.iter().rev().map(|c| -c).collect();
        out.push(BigRational::one());
        out
    }

    /// Whether `seq` obeys the recurrence at every index from `valid_from`.
    pub fn holds_on(&self, seq: &[BigInt]) -> bool {
        (self.valid_from..seq.len()).all(|n| {
            let predicted: BigRational = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(seq[n - i - 1].clone()))
                .sum();
            predicted == BigRational::from_integer(seq[n].clone())
        })
    }

    /// Extends `seq` (which must reach `valid_from`) to `len` terms.
    pub fn extend(&self, seq: &[BigInt], len: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
        assert!(out.len() >= self.valid_from, "sequence too short to extend");
        while out.len() < len {
            let n = out.len();
            let next = self.coeffs.iter().enumerate().map(|(i, c)| c * &out[n - i - 1]).sum();
            out.push(next);
        }
        out.truncate(len.max(seq.len()));
        out
    }

    pub fn to_json(&self) -> RecurrenceJson {
        RecurrenceJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(BigRational::to_string).collect(),
            valid_from: self.valid_from,
            char_poly: self.char_poly().iter().map(BigRational::to_string).collect(),
        }
    }
}

/// Wire form: `{"order":d,"coeffs":["…"],"valid_from":n0,"char_poly":["…"]}`;
/// `char_poly` lists the characteristic polynomial lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub order: usize,
    pub coeffs: Vec<String>,
    pub valid_from: usize,
    pub char_poly: Vec<String>,
}

/// Terms beyond those that pin down a candidate recurrence that must also
/// check out before the candidate is accepted.
pub const FIT_CHECK_TERMS: usize = 2;

/// Sequences with at least `2 * max_order + FIT_MARGIN` terms give a
/// trustworthy minimality claim for every order up to `max_order`.
pub const FIT_MARGIN: usize = 4;

/// Smallest-order linear recurrence with rational coefficients that fits
/// `seq`, preferring the earliest start index for that order.
///
/// A candidate of order `d` starting at `n0` is accepted only when
/// `seq.len() >= n0 + d + FIT_CHECK_TERMS`, and it is checked exactly
/// against every supplied term from `n0` on.
pub fn fit_recurrence(seq: &[BigInt], max_order: usize) -> Option<Recurrence> {
    let n = seq.len();
    let q: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
    for d in 0..=max_order {
        for n0 in d..n {
            if n < n0 + d + FIT_CHECK_TERMS {
                break;
            }
            let rows: Vec<Vec<BigRational>> = (n0..n)
                .map(|m| {
                    let mut row: Vec<BigRational> = (1..=d).map(|i| q[m - i].clone()).collect();
                    row.push(q[m].clone());
                    row
                })
                .collect();
            if let Some(coeffs) = solve_consistent(rows, d) {
                let rec = Recurrence::new(coeffs, n0);
                debug_assert!(rec.holds_on(seq));
                return Some(rec);
            }
        }
    }
    None
}

/// Solves an (over)determined augmented system `[A | b]` with `unknowns`
/// columns; free variables are set to zero. `None` if inconsistent.
fn solve_consistent(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(sol)
}

/// `det(x I - A)` by the Faddeev–LeVerrier recursion, lowest degree first
/// (monic of degree `n`).
pub fn characteristic_polynomial(matrix: &[Vec<BigUint>]) -> Polynomial {
    let n = matrix.len();
    let a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|c| BigInt::from(c.clone())).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &a[i][l] * &m[l][j];
                }
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64s(num), Polynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(rf(&[1, -2, 1], &[1, -4, 2]).expand(7).unwrap(), ints(&[1, 2, 7, 24, 82, 280, 956, 3264]));
        let den = Polynomial::from_i64s(&[1, -1, -1]).pow(3);
        let conj = RationalFunction::new(Polynomial::from_i64s(&[1, -1, 1, 1]), den).unwrap();
        assert_eq!(conj.expand(4).unwrap(), ints(&[1, 2, 7, 17, 41]));
        assert_eq!(rf(&[1], &[1, -1]).expand(5).unwrap(), ints(&[1; 6]));
        assert!(rf(&[1], &[2, -1]).expand(3).is_err());
    }

    #[test]
    fn reductions() {
        let r = rf(&[-1, 0, 1], &[-1, 1]).reduce().unwrap();
        assert_eq!(r.numerator(), &Polynomial::from_i64s(&[1, 1]));
        assert_eq!(r.denominator(), &Polynomial::one());
        let z = rf(&[], &[1, -1]).reduce().unwrap();
        assert!(z.numerator().is_zero());
        assert_eq!(z.denominator(), &Polynomial::one());
        let scaled = rf(&[2, 4], &[-6, 2]).reduce().unwrap();
        assert_eq!(scaled.numerator(), &Polynomial::from_i64s(&[-1, -2]));
        assert_eq!(scaled.denominator(), &Polynomial::from_i64s(&[3, -1]));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn gcd_and_division() {
        let a = Polynomial::from_i64s(&[1, -1, -1]);
        let b = Polynomial::from_i64s(&[1, 1]);
        let g = a.pow(2).mul(&b).gcd(&a.mul(&b.pow(3)));
        // leading coefficient is made positive
        assert_eq!(g, a.mul(&b).scale(&BigInt::from(-1)));
        assert_eq!(a.pow(3).exact_div(&a), Some(a.pow(2)));
        assert_eq!(a.exact_div(&b), None);
        assert!(a.divides(&a.pow(2)));
        assert!(!b.divides(&a));
    }

    #[test]
    fn fit_known_sequences() {
        let rec = fit_recurrence(&ints(&[1, 2, 7, 24, 82, 280, 956, 3264]), 16).unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.integer_coeffs().unwrap(), ints(&[4, -2]));
        assert_eq!(rec.valid_from(), 3);
        let ones = fit_recurrence(&ints(&[1, 1, 1, 1]), 16).unwrap();
        assert_eq!(ones.integer_coeffs().unwrap(), ints(&[1]));
        assert_eq!(ones.valid_from(), 1);
        let zeros = fit_recurrence(&ints(&[0, 0, 0]), 4).unwrap();
        assert_eq!(zeros.order(), 0);
    }

    #[test]
    fn fit_gives_up() {
        // 2^(n^2) grows too fast for any short recurrence
        let seq: Vec<BigInt> = (0..12u32).map(|n| BigInt::from(2).pow(n * n)).collect();
        assert_eq!(fit_recurrence(&seq, 3), None);
    }

    #[test]
    fn fit_rational_coefficients() {
        // a_n = a_{n-1} / 2 scaled to stay integral: 1024, 512, ...
        let seq: Vec<BigInt> = (0..8).map(|n| BigInt::from(1024 >> n)).collect();
        let rec = fit_recurrence(&seq, 2).unwrap();
        assert_eq!(rec.coeffs(), &[BigRational::new(1.into(), 2.into())]);
        assert_eq!(rec.integer_coeffs(), None);
        assert_eq!(rec.connection_polynomial(), Polynomial::from_i64s(&[2, -1]));
        assert_eq!(rec.to_json().coeffs, vec!["1/2".to_string()]);
    }

    #[test]
    fn recurrence_json_shape() {
        let rec = Recurrence::new(vec![BigRational::from_integer(4.into()), BigRational::from_integer((-2).into())], 3);
        let json = serde_json::to_string(&rec.to_json()).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":["4","-2"],"valid_from":3,"char_poly":["2","-4","1"]}"#);
        assert_eq!(rec.connection_polynomial(), Polynomial::from_i64s(&[1, -4, 2]));
    }

    #[test]
    fn char_poly_small() {
        let m = vec![vec![BigUint::from(3u32), BigUint::from(1u32)], vec![BigUint::from(1u32), BigUint::from(2u32)]];
        // x^2 - 5x + 5
        assert_eq!(characteristic_polynomial(&m), Polynomial::from_i64s(&[5, -5, 1]));
        assert_eq!(characteristic_polynomial(&[vec![BigUint::from(2u32)]]), Polynomial::from_i64s(&[-2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_i64s(&[1, -1, 0, 3]).to_string(), "1 - x + 3*x^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
