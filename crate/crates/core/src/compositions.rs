//! Integer compositions, extended binomials and complete homogeneous
//! symmetric polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// An ordered tuple of positive parts. The empty composition is the unique
/// composition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(parts));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of parts that are at least 2.
    pub fn ell2(&self) -> usize {
        ell2(self)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated parts; the empty string is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

fn generate(n: u32, max_part: u32, parts: Option<usize>, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if n == 0 {
        if parts.is_none_or(|r| r == prefix.len()) {
            out.push(Composition(prefix.clone()));
        }
        return;
    }
    if let Some(r) = parts {
        let left = r - prefix.len();
        // each remaining part is at least 1 and at most max_part
        if left == 0 || (n as usize) < left || (n as u64) > left as u64 * max_part as u64 {
            return;
        }
    }
    for first in 1..=n.min(max_part) {
        prefix.push(first);
        generate(n - first, max_part, parts, prefix, out);
        prefix.pop();
    }
}

/// All compositions of `n`, lexicographic in their part lists.
pub fn compositions(n: u32) -> Vec<Composition> {
    compositions_bounded(n, n.max(1))
}

/// Compositions of `n` with exactly `r` parts, lexicographic.
pub fn compositions_with_parts(n: u32, r: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    generate(n, n.max(1), Some(r), &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` whose parts are all at most `max_part`, lexicographic.
pub fn compositions_bounded(n: u32, max_part: u32) -> Vec<Composition> {
    assert!(max_part >= 1, "max_part must be positive");
    let mut out = Vec::new();
    generate(n, max_part, None, &mut Vec::new(), &mut out);
    out
}

pub fn ell2(c: &Composition) -> usize {
    c.parts().iter().filter(|&&p| p >= 2).count()
}

/// Binomial coefficient with the convention `C(-1, m) = C(m, -1) = [m = -1]`.
///
/// Returns 0 for every other pair outside `0 <= m <= n`.
pub fn ext_binomial(n: i64, m: i64) -> BigInt {
    if n == -1 || m == -1 {
        return if n == m { BigInt::one() } else { BigInt::zero() };
    }
    if n < 0 || m < 0 || m > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(m))
}

/// `h_n(values)`: the sum of all degree-`n` monomials in `values`, computed
/// in the ring of the inputs (so truncation is inherited).
///
/// Uses `H_j(v_1..v_m) = H_j(v_1..v_{m-1}) + v_m * H_{j-1}(v_1..v_m)`.
pub fn homogeneous(n: u32, values: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let first = values
        .first()
        .ok_or_else(|| Error::InvalidArgument("h_n needs at least one value".into()))?;
    let profile = first.profile();
    let n = n as usize;
    let mut h: Vec<TruncatedSeries> = (0..=n)
        .map(|j| if j == 0 { TruncatedSeries::one(profile) } else { TruncatedSeries::zero(profile) })
        .collect();
    for v in values {
        for j in 1..=n {
            let step = v.checked_mul(&h[j - 1])?;
            h[j] = h[j].checked_add(&step)?;
        }
    }
    Ok(h.swap_remove(n))
}

/// Integer specialization of [`homogeneous`].
pub fn homogeneous_scalar(n: u32, values: &[BigInt]) -> BigInt {
    let n = n as usize;
    let mut h = vec![BigInt::zero(); n + 1];
    h[0] = BigInt::one();
    for v in values {
        for j in 1..=n {
            let step = v * &h[j - 1];
            h[j] += step;
        }
    }
    if values.is_empty() && n > 0 {
        return BigInt::zero();
    }
    h.swap_remove(n)
}
