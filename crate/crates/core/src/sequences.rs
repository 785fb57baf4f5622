//! Card sequences and their counts: explicit chaining and the transfer
//! matrix over ball states.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cards::{enumerate_cards, validate_card, Card};
use crate::compositions::{compositions_bounded, Composition};
use crate::error::{Error, Result};

/// `ℓ` cards where each departure composition is the next arrival.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CardSequence {
    cards: Vec<Card>,
}

impl CardSequence {
    pub fn new(cards: Vec<Card>) -> Result<Self> {
        for c in &cards {
            validate_card(c).map_err(Error::InvalidCard)?;
        }
        for (i, pair) in cards.windows(2).enumerate() {
            if !compatible(&pair[0], &pair[1]) {
                return Err(Error::InvalidSequence(format!(
                    "card {} departs {} but card {} arrives {}",
                    i + 1,
                    pair[0].departure(),
                    i + 2,
                    pair[1].arrival()
                )));
            }
        }
        Ok(CardSequence { cards })
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn balls(&self) -> u32 {
        self.cards.first().map_or(0, Card::balls)
    }

    pub fn capacity(&self) -> u32 {
        self.cards.iter().map(Card::capacity).max().unwrap_or(0)
    }

    /// First arrival equals last departure.
    pub fn is_periodic(&self) -> bool {
        match (self.cards.first(), self.cards.last()) {
            (Some(a), Some(b)) => a.arrival() == b.departure(),
            _ => true,
        }
    }
}

pub fn compatible(first: &Card, second: &Card) -> bool {
    first.departure() == second.arrival()
}

/// Card counts between ball states: entry `(α, β)` is the number of cards
/// with arrival `α` and departure `β`, over states with parts at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    b: u32,
    k: u32,
    states: Vec<Composition>,
    counts: Vec<Vec<BigUint>>,
}

impl TransferMatrix {
    pub fn states(&self) -> &[Composition] {
        &self.states
    }

    pub fn counts(&self) -> &[Vec<BigUint>] {
        &self.counts
    }

    pub fn balls(&self) -> u32 {
        self.b
    }

    pub fn capacity(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().flatten().sum()
    }

    /// `counts^ell` by binary exponentiation (`ell = 0` is the identity).
    pub fn power(&self, ell: u32) -> Vec<Vec<BigUint>> {
        let n = self.dim();
        let mut result = identity(n);
        let mut base = self.counts.clone();
        let mut e = ell;
        while e > 0 {
            if e & 1 == 1 {
                result = mat_mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mat_mul(&base, &base);
            }
        }
        result
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            b: self.b,
            k: self.k,
            states: self.states.iter().map(|s| s.parts().to_vec()).collect(),
            counts: self.counts.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }
}

/// Wire form: `{"b":..,"k":..,"states":[[parts]..],"counts":[[..]..]}` with
/// decimal-string entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub b: u32,
    pub k: u32,
    pub states: Vec<Vec<u32>>,
    pub counts: Vec<Vec<String>>,
}

fn identity(n: usize) -> Vec<Vec<BigUint>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// Number of ball states (compositions of `b` with parts at most `k`),
/// i.e. the transfer matrix dimension, without building them.
pub fn state_count(b: u32, k: u32) -> BigUint {
    // bounded compositions obey s(n) = s(n-1) + ... + s(n-k)
    let mut s = vec![BigUint::one()];
    for n in 1..=b as usize {
        let lo = n.saturating_sub(k as usize);
        let v = s[lo..n].iter().sum();
        s.push(v);
    }
    s.swap_remove(b as usize)
}

pub fn build_transfer_matrix(b: u32, k: u32) -> TransferMatrix {
    let states = compositions_bounded(b, k);
    let index: HashMap<&Composition, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = states.len();
    let mut counts = vec![vec![BigUint::zero(); n]; n];
    for card in enumerate_cards(b, k) {
        let i = index[card.arrival()];
        let j = index[card.departure()];
        counts[i][j] += 1u32;
    }
    TransferMatrix { b, k, states, counts }
}

/// `J(b,k,ℓ)`: the sum of all entries of `T^ℓ`. For `ℓ = 0` this is the
/// number of states.
pub fn count_sequences(b: u32, k: u32, ell: u32) -> BigUint {
    let t = build_transfer_matrix(b, k);
    t.power(ell).iter().flatten().sum()
}

/// `J0(b,k,ℓ)`: sequences whose first arrival equals the last departure,
/// i.e. the trace of `T^ℓ`. Rotations are counted separately.
pub fn count_periodic(b: u32, k: u32, ell: u32) -> BigUint {
    let p = build_transfer_matrix(b, k).power(ell);
    (0..p.len()).map(|i| p[i][i].clone()).sum()
}

/// `J(b,k,ℓ)` for `ℓ = 0..=max_ell` from repeated vector products.
pub fn count_sequences_by_length(b: u32, k: u32, max_ell: u32) -> Vec<BigUint> {
    let t = build_transfer_matrix(b, k);
    let n = t.dim();
    let mut row = vec![BigUint::one(); n];
    let mut out = Vec::with_capacity(max_ell as usize + 1);
    for _ in 0..=max_ell {
        out.push(row.iter().sum());
        let mut next = vec![BigUint::zero(); n];
        for (i, ri) in row.iter().enumerate() {
            for (j, c) in t.counts[i].iter().enumerate() {
                if !c.is_zero() {
                    next[j] += ri * c;
                }
            }
        }
        row = next;
    }
    out
}

fn cards_by_arrival(b: u32, k: u32) -> HashMap<Composition, Vec<Card>> {
    let mut by: HashMap<Composition, Vec<Card>> = HashMap::new();
    for c in enumerate_cards(b, k) {
        by.entry(c.arrival().clone()).or_default().push(c);
    }
    by
}

/// Every `ℓ`-card sequence, chained card by card. Fails once more than
/// `max_sequences` would be produced.
pub fn enumerate_sequences(b: u32, k: u32, ell: usize, max_sequences: usize) -> Result<Vec<CardSequence>> {
    if ell == 0 {
        return Err(Error::InvalidArgument("sequence length must be positive".into()));
    }
    let by = cards_by_arrival(b, k);
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(ell);
    let mut firsts: Vec<&Card> = by.values().flatten().collect();
    firsts.sort();
    for c in firsts {
        chain.push(c.clone());
        extend_chain(&by, ell, &mut chain, &mut out, max_sequences)?;
        chain.pop();
    }
    Ok(out)
}

fn extend_chain(
    by: &HashMap<Composition, Vec<Card>>,
    ell: usize,
    chain: &mut Vec<Card>,
    out: &mut Vec<CardSequence>,
    max_sequences: usize,
) -> Result<()> {
    if chain.len() == ell {
        if out.len() >= max_sequences {
            return Err(Error::BudgetExceeded {
                what: "sequence enumeration",
                needed: out.len() as u128 + 1,
                limit: max_sequences as u128,
            });
        }
        out.push(CardSequence { cards: chain.clone() });
        return Ok(());
    }
    let state = chain.last().expect("chain starts nonempty").departure().clone();
    for c in by.get(&state).map(Vec::as_slice).unwrap_or(&[]) {
        chain.push(c.clone());
        extend_chain(by, ell, chain, out, max_sequences)?;
        chain.pop();
    }
    Ok(())
}

/// Counts `ℓ`-card sequences by walking every chain explicitly (no memo),
/// without storing them. Returns `(all, periodic)`.
pub fn count_sequences_brute(b: u32, k: u32, ell: usize) -> (u64, u64) {
    assert!(ell >= 1, "sequence length must be positive");
    let by = cards_by_arrival(b, k);
    fn walk<'a>(
        by: &'a HashMap<Composition, Vec<Card>>,
        start: &Composition,
        state: &'a Composition,
        left: usize,
    ) -> (u64, u64) {
        if left == 0 {
            return (1, u64::from(state == start));
        }
        let mut acc = (0, 0);
        for c in by.get(state).map(Vec::as_slice).unwrap_or(&[]) {
            let (a, p) = walk(by, start, c.departure(), left - 1);
            acc.0 += a;
            acc.1 += p;
        }
        acc
    }
    let mut total = (0, 0);
    for (start, cards) in &by {
        for c in cards {
            let (a, p) = walk(&by, start, c.departure(), ell - 1);
            total.0 += a;
            total.1 += p;
        }
    }
    total
}
