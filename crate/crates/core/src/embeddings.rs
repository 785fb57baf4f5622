//! Word encodings of cards and card sequences.
//!
//! A card with capacity `k` is the same thing as a `(b,k)`-embedding: a list
//! of binary words `0^u 1^v`, one per departure group, where the zeros are
//! balls passing through and the ones are balls newly thrown into that
//! group. An `ℓ`-card sequence is the same thing as a pair `(γ, δ)` of
//! words over `{0, …, ℓ}` recording at which beat every ball was last thrown
//! (`γ`) and which group each throwing beat consumed (`δ`).

use std::fmt;
use std::str::FromStr;

use crate::cards::{card_to_embedding, embedding_to_card};
use crate::error::{Error, Result};
use crate::sequences::CardSequence;

/// A weakly increasing word `0^{c_0} 1^{c_1} … (n-1)^{c_{n-1}}`, stored as its
/// exponent tuple over an alphabet of `n` symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    counts: Vec<u32>,
}

impl Word {
    pub fn new(counts: Vec<u32>) -> Self {
        Word { counts }
    }

    /// `0^zeros 1^ones`.
    pub fn binary(zeros: u32, ones: u32) -> Self {
        Word { counts: vec![zeros, ones] }
    }

    /// The empty word over `alphabet` symbols.
    pub fn empty(alphabet: usize) -> Self {
        Word { counts: vec![0; alphabet] }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn alphabet(&self) -> usize {
        self.counts.len()
    }

    pub fn len(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Occurrences of `symbol` (0 beyond the alphabet).
    pub fn count(&self, symbol: usize) -> u32 {
        self.counts.get(symbol).copied().unwrap_or(0)
    }

    /// Re-expresses the word over `alphabet` symbols; every dropped symbol
    /// must be absent.
    fn with_alphabet(&self, alphabet: usize) -> Option<Word> {
        if self.counts.iter().skip(alphabet).any(|&c| c > 0) {
            return None;
        }
        let mut counts = self.counts.clone();
        counts.resize(alphabet, 0);
        Some(Word { counts })
    }

    /// Parses digits in weakly increasing order, or `e` for the empty word.
    pub fn parse(s: &str, alphabet: usize) -> Result<Word> {
        let s = s.trim();
        let mut counts = vec![0u32; alphabet];
        if s == "e" {
            return Ok(Word { counts });
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word must be written as 'e'".into()));
        }
        let mut last = 0usize;
        for ch in s.chars() {
            let sym = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("bad symbol {ch:?} in {s:?}")))? as usize;
            if sym >= alphabet {
                return Err(Error::Parse(format!("symbol {sym} outside alphabet 0..{alphabet} in {s:?}")));
            }
            if sym < last {
                return Err(Error::Parse(format!("word {s:?} is not weakly increasing")));
            }
            last = sym;
            counts[sym] += 1;
        }
        Ok(Word { counts })
    }
}

impl fmt::Display for Word {
    /// Symbols above 9 are written in parentheses; the empty word is `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        for (sym, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                if sym < 10 {
                    write!(f, "{sym}")?;
                } else {
                    write!(f, "({sym})")?;
                }
            }
        }
        Ok(())
    }
}

fn join_words(words: &[Word]) -> String {
    words.iter().map(Word::to_string).collect::<Vec<_>>().join("|")
}

fn split_words(s: &str, alphabet: usize) -> Result<Vec<Word>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('|').map(|w| Word::parse(w, alphabet)).collect()
}

/// A `(b,k)`-embedding: binary words `0^u 1^v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Embedding {
    words: Vec<Word>,
}

impl Embedding {
    pub fn new(words: Vec<Word>) -> Self {
        Embedding { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Total length of all words.
    pub fn balls(&self) -> u32 {
        self.words.iter().map(Word::len).sum()
    }

    pub fn ones(&self) -> u32 {
        self.words.iter().map(|w| w.count(1)).sum()
    }

    /// Binary alphabet and nonempty words.
    pub(crate) fn check_shape(&self) -> Result<()> {
        for w in &self.words {
            if w.alphabet() != 2 {
                return Err(Error::InvalidEmbedding(format!("word {w} is not binary")));
            }
            if w.is_empty() {
                return Err(Error::InvalidEmbedding("empty word in embedding".into()));
            }
        }
        Ok(())
    }

    /// Full `(b,k)`-embedding check for capacity `k` (with `b` = [`Self::balls`]).
    pub fn validate(&self, k: u32) -> Result<()> {
        self.check_shape()?;
        if let Some(w) = self.words.iter().find(|w| w.len() > k) {
            return Err(Error::InvalidEmbedding(format!("word {w} longer than capacity {k}")));
        }
        if self.ones() > k {
            return Err(Error::InvalidEmbedding(format!("{} ones exceed capacity {k}", self.ones())));
        }
        Ok(())
    }
}

impl fmt::Display for Embedding {
    /// Words joined by `|`, e.g. `011|1|00|001|11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_words(&self.words))
    }
}

impl FromStr for Embedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let e = Embedding::new(split_words(s, 2)?);
        e.check_shape()?;
        Ok(e)
    }
}

/// All words over `alphabet` symbols with length in `1..=k`, ordered by
/// length and then by exponent tuple.
fn words_up_to(alphabet: usize, k: u32) -> Vec<Word> {
    fn fill(len: u32, slot: usize, counts: &mut Vec<u32>, out: &mut Vec<Word>) {
        if slot + 1 == counts.len() {
            counts[slot] = len;
            out.push(Word::new(counts.clone()));
            return;
        }
        for c in (0..=len).rev() {
            counts[slot] = c;
            fill(len - c, slot + 1, counts, out);
        }
        counts[slot] = 0;
    }
    let mut out = Vec::new();
    for len in 1..=k {
        fill(len, 0, &mut vec![0; alphabet], &mut out);
    }
    out
}

/// Every `(b,k)`-embedding exactly once. For `b = 0` this is the single
/// empty embedding.
pub fn enumerate_embeddings(b: u32, k: u32) -> Vec<Embedding> {
    fn rec(left: u32, ones_left: u32, words: &[Word], prefix: &mut Vec<Word>, out: &mut Vec<Embedding>) {
        if left == 0 {
            out.push(Embedding::new(prefix.clone()));
            return;
        }
        for w in words {
            let ones = w.count(1);
            if w.len() <= left && ones <= ones_left {
                prefix.push(w.clone());
                rec(left - w.len(), ones_left - ones, words, prefix, out);
                prefix.pop();
            }
        }
    }
    assert!(k >= 1, "capacity must be positive");
    let words = words_up_to(2, k);
    let mut out = Vec::new();
    rec(b, k, &words, &mut Vec::new(), &mut out);
    out
}

/// A `(b,k,ℓ)`-embedding `(γ, δ)`.
///
/// `γ` words use symbols `0..=ℓ`; `δ_i` (1-based) uses symbols `0..i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequenceEmbedding {
    gamma: Vec<Word>,
    delta: Vec<Word>,
}

impl SequenceEmbedding {
    pub fn new(gamma: Vec<Word>, delta: Vec<Word>) -> Self {
        SequenceEmbedding { gamma, delta }
    }

    pub fn gamma(&self) -> &[Word] {
        &self.gamma
    }

    pub fn delta(&self) -> &[Word] {
        &self.delta
    }

    /// Sequence length `ℓ`.
    pub fn ell(&self) -> usize {
        self.delta.len()
    }

    pub fn balls(&self) -> u32 {
        self.gamma.iter().map(Word::len).sum()
    }

    /// Number of symbol `i` in `γ` and in `δ_{i+1}, …, δ_ℓ`.
    fn symbol_total(&self, i: usize) -> u32 {
        self.gamma.iter().chain(&self.delta[i..]).map(|w| w.count(i)).sum()
    }

    /// Alphabets, nonempty `γ` words and the `δ` length bookkeeping; no
    /// capacity bound.
    pub fn check_consistency(&self) -> Result<()> {
        let ell = self.ell();
        if ell == 0 {
            return Err(Error::InvalidEmbedding("sequence embeddings need ℓ >= 1".into()));
        }
        for w in &self.gamma {
            if w.alphabet() != ell + 1 {
                return Err(Error::InvalidEmbedding(format!("gamma word {w} not over 0..={ell}")));
            }
            if w.is_empty() {
                return Err(Error::InvalidEmbedding("empty gamma word".into()));
            }
        }
        for (idx, d) in self.delta.iter().enumerate() {
            let i = idx + 1;
            if d.alphabet() != i {
                return Err(Error::InvalidEmbedding(format!("delta_{i} = {d} not over 0..{i}")));
            }
            let total = self.symbol_total(i);
            if d.len() != total {
                return Err(Error::InvalidEmbedding(format!(
                    "delta_{i} has length {} but symbol {i} occurs {total} times",
                    d.len()
                )));
            }
        }
        Ok(())
    }

    /// Full `(b,k,ℓ)`-embedding check for capacity `k`.
    pub fn validate(&self, k: u32) -> Result<()> {
        self.check_consistency()?;
        if let Some(w) = self.gamma.iter().chain(&self.delta).find(|w| w.len() > k) {
            return Err(Error::InvalidEmbedding(format!("word {w} longer than capacity {k}")));
        }
        Ok(())
    }
}

impl fmt::Display for SequenceEmbedding {
    /// `gamma=0004|112|2|4;delta=0000|0011|e|22`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma={};delta={}", join_words(&self.gamma), join_words(&self.delta))
    }
}

impl FromStr for SequenceEmbedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (g, d) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected 'gamma=..;delta=..' in {s:?}")))?;
        let g = g
            .trim()
            .strip_prefix("gamma=")
            .ok_or_else(|| Error::Parse("missing 'gamma='".into()))?;
        let d = d
            .trim()
            .strip_prefix("delta=")
            .ok_or_else(|| Error::Parse("missing 'delta='".into()))?;
        let delta_text: Vec<&str> = if d.trim().is_empty() { Vec::new() } else { d.split('|').collect() };
        let ell = delta_text.len();
        let delta = delta_text
            .iter()
            .enumerate()
            .map(|(idx, w)| Word::parse(w, idx + 1))
            .collect::<Result<Vec<_>>>()?;
        let se = SequenceEmbedding::new(split_words(g, ell + 1)?, delta);
        se.check_consistency()?;
        Ok(se)
    }
}

/// Runs the beat-by-beat throw-time construction on a card sequence.
///
/// `α^(0)` is the zero-word form of the first arrival composition. At beat
/// `i` a pass-through card leaves the words unchanged. A throwing card
/// consumes the first word (recorded as `δ_i`); every remaining word is
/// spliced, in order, into the zero block of the next departure word that
/// has zeros, and the card's ones become symbol `i`.
pub fn sequence_to_embedding(seq: &CardSequence) -> Result<SequenceEmbedding> {
    let ell = seq.len();
    if ell == 0 {
        return Err(Error::InvalidSequence("need at least one card".into()));
    }
    let alphabet = ell + 1;
    let mut alpha: Vec<Word> = seq.cards()[0]
        .arrival()
        .parts()
        .iter()
        .map(|&a| {
            let mut w = Word::empty(alphabet);
            w.counts[0] = a;
            w
        })
        .collect();
    let mut delta = Vec::with_capacity(ell);
    for (idx, card) in seq.cards().iter().enumerate() {
        let i = idx + 1;
        let emb = card_to_embedding(card)?;
        if emb.ones() == 0 {
            delta.push(Word::empty(i));
            continue;
        }
        let mut earlier = alpha.iter();
        let first = earlier.next().ok_or_else(|| Error::InvalidSequence(format!("beat {i} throws from no group")))?;
        delta.push(first.with_alphabet(i).expect("symbols before beat i only"));
        let mut next = Vec::with_capacity(emb.words().len());
        for w in emb.words() {
            let zeros = w.count(0);
            let mut word = if zeros > 0 {
                let src = earlier
                    .next()
                    .ok_or_else(|| Error::InvalidSequence(format!("beat {i} lands more groups than arrive")))?;
                if src.len() != zeros {
                    return Err(Error::InvalidSequence(format!(
                        "beat {i}: group of {} balls lands in a zero block of {zeros}",
                        src.len()
                    )));
                }
                src.clone()
            } else {
                Word::empty(alphabet)
            };
            word.counts[i] += w.count(1);
            next.push(word);
        }
        if earlier.next().is_some() {
            return Err(Error::InvalidSequence(format!("beat {i} drops an arriving group")));
        }
        alpha = next;
    }
    Ok(SequenceEmbedding::new(alpha, delta))
}

/// Inverse of [`sequence_to_embedding`].
///
/// Walks back from `α^(ℓ) = γ`: card `i` is read off `α^(i)` by sending
/// symbols below `i` to 0 and `i` to 1, then `α^(i-1)` is `α^(i)` with every
/// `i` deleted, emptied words discarded and `δ_i` prepended (unchanged when
/// `δ_i` is empty).
pub fn embedding_to_sequence(se: &SequenceEmbedding) -> Result<CardSequence> {
    se.check_consistency()?;
    let ell = se.ell();
    let alphabet = ell + 1;
    let mut alpha: Vec<Word> = se.gamma.clone();
    let mut cards = Vec::with_capacity(ell);
    for i in (1..=ell).rev() {
        let words = alpha
            .iter()
            .map(|w| Word::binary(w.counts[..i].iter().sum(), w.counts[i]))
            .collect();
        cards.push(embedding_to_card(&Embedding::new(words))?);
        let d = &se.delta[i - 1];
        let thrown: u32 = alpha.iter().map(|w| w.count(i)).sum();
        if d.is_empty() {
            if thrown != 0 {
                return Err(Error::InvalidEmbedding(format!("symbol {i} present but delta_{i} is empty")));
            }
            continue;
        }
        if thrown != d.len() {
            return Err(Error::InvalidEmbedding(format!(
                "delta_{i} has length {} but {thrown} balls carry symbol {i}",
                d.len()
            )));
        }
        let mut prev = Vec::with_capacity(alpha.len() + 1);
        prev.push(d.with_alphabet(alphabet).expect("widening never fails"));
        for mut w in alpha {
            w.counts[i] = 0;
            if !w.is_empty() {
                prev.push(w);
            }
        }
        alpha = prev;
    }
    cards.reverse();
    CardSequence::new(cards)
}

/// Every `(b,k,ℓ)`-embedding exactly once.
///
/// `γ` is generated word by word with running per-symbol totals capped at
/// `k`; then `δ_ℓ, δ_{ℓ-1}, …, δ_1` are chosen in turn, each with its length
/// forced by the totals accumulated so far.
pub fn enumerate_sequence_embeddings(b: u32, k: u32, ell: usize) -> Vec<SequenceEmbedding> {
    assert!(k >= 1, "capacity must be positive");
    assert!(ell >= 1, "sequence length must be positive");
    let gamma_words = words_up_to(ell + 1, k);
    let mut out = Vec::new();
    let mut totals = vec![0u32; ell + 1];
    gamma_rec(b, k, ell, &gamma_words, &mut Vec::new(), &mut totals, &mut out);
    out
}

fn gamma_rec(
    left: u32,
    k: u32,
    ell: usize,
    words: &[Word],
    gamma: &mut Vec<Word>,
    totals: &mut Vec<u32>,
    out: &mut Vec<SequenceEmbedding>,
) {
    if left == 0 {
        let mut delta = vec![Word::empty(0); ell];
        delta_rec(ell, k, gamma, &mut delta, totals, out);
        return;
    }
    for w in words {
        if w.len() > left {
            continue;
        }
        if totals.iter().zip(&w.counts).skip(1).any(|(t, c)| t + c > k) {
            continue;
        }
        for (t, c) in totals.iter_mut().zip(&w.counts).skip(1) {
            *t += c;
        }
        gamma.push(w.clone());
        gamma_rec(left - w.len(), k, ell, words, gamma, totals, out);
        gamma.pop();
        for (t, c) in totals.iter_mut().zip(&w.counts).skip(1) {
            *t -= c;
        }
    }
}

fn delta_rec(
    i: usize,
    k: u32,
    gamma: &[Word],
    delta: &mut Vec<Word>,
    totals: &mut Vec<u32>,
    out: &mut Vec<SequenceEmbedding>,
) {
    if i == 0 {
        out.push(SequenceEmbedding::new(gamma.to_vec(), delta.clone()));
        return;
    }
    let need = totals[i];
    if need > k {
        return;
    }
    for counts in weak_compositions(need, i) {
        if (1..i).any(|s| totals[s] + counts[s] > k) {
            continue;
        }
        for s in 1..i {
            totals[s] += counts[s];
        }
        delta[i - 1] = Word::new(counts.clone());
        delta_rec(i - 1, k, gamma, delta, totals, out);
        for s in 1..i {
            totals[s] -= counts[s];
        }
    }
}

/// All `(d_0, …, d_{parts-1})` of nonnegative integers summing to `n`.
fn weak_compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == cur.len() {
            cur[slot] = n;
            out.push(cur.clone());
            return;
        }
        for c in (0..=n).rev() {
            cur[slot] = c;
            rec(n - c, slot + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, 0, &mut vec![0; parts], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::Card;
    use crate::compositions::Composition;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn card(text: &str) -> Card {
        text.parse().unwrap()
    }

    /// The four-card sequence drawn as a running example (three throws and
    /// one pass-through).
    pub(crate) fn four_card_sequence() -> CardSequence {
        CardSequence::new(vec![
            card("arrival=4,2,3;departure=4,3,2;f=0,1,2"),
            card("arrival=4,3,2;departure=2,3,3,1;f=0,2,3"),
            card("arrival=2,3,3,1;departure=2,3,3,1;f=1,2,3,4"),
            card("arrival=2,3,3,1;departure=4,3,1,1;f=0,1,2,3"),
        ])
        .unwrap()
    }

    #[test]
    fn word_text() {
        let w = Word::parse("0011", 3).unwrap();
        assert_eq!(w.counts(), &[2, 2, 0]);
        assert_eq!(w.to_string(), "0011");
        assert_eq!(Word::parse("e", 2).unwrap(), Word::empty(2));
        assert!(Word::parse("10", 2).is_err());
        assert!(Word::parse("02", 2).is_err());
        assert!(Word::parse("", 2).is_err());
        assert_eq!(Word::new(vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).to_string(), "0(11)");
    }

    #[test]
    fn small_embedding_lists() {
        let e: Vec<String> = enumerate_embeddings(1, 1).iter().map(|e| e.to_string()).collect();
        assert_eq!(e, vec!["0", "1"]);
        assert_eq!(enumerate_embeddings(2, 2).len(), 7);
        assert_eq!(enumerate_embeddings(3, 3).len(), 24);
        assert_eq!(enumerate_embeddings(0, 2), vec![Embedding::default()]);
    }

    #[test]
    fn embedding_validation() {
        let e: Embedding = "011|1|00|001|11".parse().unwrap();
        assert!(e.validate(6).is_ok());
        assert!(e.validate(5).is_err());
        assert!(e.validate(3).is_err());
        assert!("0|2".parse::<Embedding>().is_err());
        assert!("0||1".parse::<Embedding>().is_err());
    }

    #[test]
    fn worked_sequence_embedding() {
        let se = sequence_to_embedding(&four_card_sequence()).unwrap();
        assert_eq!(se.to_string(), "gamma=0004|112|2|4;delta=0000|0011|e|22");
        assert_eq!(embedding_to_sequence(&se).unwrap(), four_card_sequence());
        let parsed: SequenceEmbedding = "gamma=0004|112|2|4;delta=0000|0011|e|22".parse().unwrap();
        assert_eq!(parsed, se);
        assert!(parsed.validate(4).is_ok());
        assert!(parsed.validate(3).is_err());
    }

    #[test]
    fn single_throwing_card() {
        // α^(0) = (0^6, 0, 00, 00); the card throws its 6-ball group, so δ_1
        // is that whole first word.
        let seq = CardSequence::new(vec![card("arrival=6,1,2,2;departure=3,1,2,3,2;f=0,1,3,4")]).unwrap();
        let se = sequence_to_embedding(&seq).unwrap();
        assert_eq!(se.to_string(), "gamma=011|1|00|001|11;delta=000000");
        assert_eq!(embedding_to_sequence(&se).unwrap(), seq);
    }

    #[test]
    fn pass_through_sequences() {
        let c = Card::new(comp(&[2, 1]), comp(&[2, 1]), vec![1, 2]).unwrap();
        let seq = CardSequence::new(vec![c.clone(), c.clone(), c]).unwrap();
        let se = sequence_to_embedding(&seq).unwrap();
        assert_eq!(se.to_string(), "gamma=00|0;delta=e|e|e");
        assert_eq!(embedding_to_sequence(&se).unwrap(), seq);
    }

    #[test]
    fn inconsistent_pairs_are_rejected() {
        assert!("gamma=0004|112|2|4;delta=000|0011|e|22".parse::<SequenceEmbedding>().is_err());
        assert!("gamma=01;delta=e".parse::<SequenceEmbedding>().is_err());
        assert!("gamma=0;delta=".parse::<SequenceEmbedding>().is_err());
        let bad = SequenceEmbedding::new(vec![Word::new(vec![0, 1])], vec![Word::empty(1)]);
        assert!(embedding_to_sequence(&bad).is_err());
    }

    #[test]
    fn sequence_embedding_counts_small() {
        assert_eq!(enumerate_sequence_embeddings(1, 1, 1).len(), 2);
        assert_eq!(enumerate_sequence_embeddings(0, 2, 3).len(), 1);
        // frozen from an independent brute force over card pairs
        assert_eq!(enumerate_sequence_embeddings(2, 2, 2).len(), 25);
        assert_eq!(enumerate_sequence_embeddings(3, 2, 2).len(), 97);
        assert_eq!(enumerate_sequence_embeddings(3, 2, 3).len(), 555);
    }

    #[test]
    fn enumerated_sequence_embeddings_are_valid_and_distinct() {
        let all = enumerate_sequence_embeddings(4, 2, 3);
        let mut seen = std::collections::HashSet::new();
        for se in &all {
            se.validate(2).unwrap();
            assert_eq!(se.balls(), 4);
            assert!(seen.insert(se.clone()));
        }
    }

    #[test]
    fn weak_compositions_count() {
        assert_eq!(weak_compositions(2, 3).len(), 6);
        assert_eq!(weak_compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(weak_compositions(3, 1), vec![vec![3]]);
    }
}
