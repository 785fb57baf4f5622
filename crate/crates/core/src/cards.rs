//! Multiplex juggling cards.
//!
//! A card `(α, β, f)` describes one beat: `α` is the arrival composition
//! (ball groups landing, bottom to top), `β` the departure composition and
//! `f` the landing map from arrival groups to departure groups, with
//! `f(1) = 0` meaning the lowest group is caught and rethrown.

use std::fmt;
use std::str::FromStr;

use crate::compositions::Composition;
use crate::embeddings::{enumerate_embeddings, Embedding, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card {
    arrival: Composition,
    departure: Composition,
    landing: Vec<u32>,
}

/// The first rule a card breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CardViolation {
    /// `f` must be defined on every arrival group.
    LandingArity { groups: usize, landing: usize },
    BallCount { arrival: u32, departure: u32 },
    LandingOutOfRange { index: usize, target: u32, groups: usize },
    NotIncreasing { index: usize },
    /// Arrival group `index` does not fit into departure group `target`.
    Overflow { index: usize, target: u32 },
}

impl fmt::Display for CardViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardViolation::LandingArity { groups, landing } => {
                write!(f, "landing map has {landing} entries for {groups} arrival groups")
            }
            CardViolation::BallCount { arrival, departure } => {
                write!(f, "arrival carries {arrival} balls but departure {departure}")
            }
            CardViolation::LandingOutOfRange { index, target, groups } => {
                write!(f, "f({index}) = {target} exceeds the {groups} departure groups")
            }
            CardViolation::NotIncreasing { index } => {
                write!(f, "landing map is not strictly increasing at {index}")
            }
            CardViolation::Overflow { index, target } => {
                write!(f, "arrival group {index} is larger than departure group {target}")
            }
        }
    }
}

impl Card {
    /// Builds a card without checking it; see [`validate_card`].
    pub fn new_unchecked(arrival: Composition, departure: Composition, landing: Vec<u32>) -> Self {
        Card { arrival, departure, landing }
    }

    pub fn new(arrival: Composition, departure: Composition, landing: Vec<u32>) -> Result<Self> {
        let card = Self::new_unchecked(arrival, departure, landing);
        validate_card(&card).map_err(Error::InvalidCard)?;
        Ok(card)
    }

    /// The 0-ball card.
    pub fn empty() -> Self {
        Self::new_unchecked(Composition::empty(), Composition::empty(), Vec::new())
    }

    pub fn arrival(&self) -> &Composition {
        &self.arrival
    }

    pub fn departure(&self) -> &Composition {
        &self.departure
    }

    /// `landing()[i - 1] = f(i)`, 0 for the ground.
    pub fn landing(&self) -> &[u32] {
        &self.landing
    }

    pub fn balls(&self) -> u32 {
        self.arrival.size()
    }

    /// Largest part of either composition (0 for the empty card).
    pub fn capacity(&self) -> u32 {
        self.arrival.max_part().max(self.departure.max_part())
    }

    /// True when the lowest group is caught and rethrown.
    pub fn throws(&self) -> bool {
        self.landing.first() == Some(&0)
    }
}

/// Checks every card rule, reporting the first one broken.
pub fn validate_card(card: &Card) -> Result<(), CardViolation> {
    let alpha = card.arrival.parts();
    let beta = card.departure.parts();
    let f = &card.landing;
    if f.len() != alpha.len() {
        return Err(CardViolation::LandingArity { groups: alpha.len(), landing: f.len() });
    }
    if card.arrival.size() != card.departure.size() {
        return Err(CardViolation::BallCount {
            arrival: card.arrival.size(),
            departure: card.departure.size(),
        });
    }
    for (i, &target) in f.iter().enumerate() {
        if target as usize > beta.len() {
            return Err(CardViolation::LandingOutOfRange {
                index: i + 1,
                target,
                groups: beta.len(),
            });
        }
        if i > 0 && f[i - 1] >= target {
            return Err(CardViolation::NotIncreasing { index: i + 1 });
        }
    }
    // With |α| = |β| and α_i <= β_f(i), a card with f(1) != 0 is forced to be
    // the identity on α = β, so no separate pass-through rule is needed.
    for (i, &target) in f.iter().enumerate() {
        if target != 0 && alpha[i] > beta[target as usize - 1] {
            return Err(CardViolation::Overflow { index: i + 1, target });
        }
    }
    Ok(())
}

/// Word `j` is `0^{α_i} 1^{β_j - α_i}` when `f(i) = j`, else `1^{β_j}`.
pub fn card_to_embedding(card: &Card) -> Result<Embedding> {
    validate_card(card).map_err(Error::InvalidCard)?;
    let beta = card.departure.parts();
    let mut source: Vec<Option<u32>> = vec![None; beta.len()];
    for (i, &j) in card.landing.iter().enumerate() {
        if j != 0 {
            source[j as usize - 1] = Some(card.arrival.parts()[i]);
        }
    }
    let words = beta
        .iter()
        .zip(source)
        .map(|(&bj, src)| match src {
            Some(a) => Word::binary(a, bj - a),
            None => Word::binary(0, bj),
        })
        .collect();
    Ok(Embedding::new(words))
}

/// Inverse of [`card_to_embedding`].
pub fn embedding_to_card(embedding: &Embedding) -> Result<Card> {
    embedding.check_shape()?;
    let words = embedding.words();
    let departure: Vec<u32> = words.iter().map(Word::len).collect();
    let ones = embedding.ones();
    let card = if ones == 0 {
        let landing = (1..=words.len() as u32).collect();
        Card::new_unchecked(
            Composition::new(departure.clone())?,
            Composition::new(departure)?,
            landing,
        )
    } else {
        let mut arrival = vec![ones];
        let mut landing = vec![0];
        for (j, w) in words.iter().enumerate() {
            let zeros = w.count(0);
            if zeros > 0 {
                arrival.push(zeros);
                landing.push(j as u32 + 1);
            }
        }
        Card::new_unchecked(Composition::new(arrival)?, Composition::new(departure)?, landing)
    };
    debug_assert_eq!(validate_card(&card), Ok(()));
    Ok(card)
}

/// Every card with `b` balls and all parts at most `k`, in embedding order.
pub fn enumerate_cards(b: u32, k: u32) -> Vec<Card> {
    enumerate_embeddings(b, k)
        .iter()
        .map(|e| embedding_to_card(e).expect("enumerated embeddings are valid"))
        .collect()
}

const MID: usize = 18;

/// ASCII diagram of a card.
///
/// One row per vertex level, top level first. Each row shows the arrival
/// vertex `a<i>` with its part on the left and the departure vertex `b<j>`
/// with its part on the right. A pass-through edge is drawn as dashes,
/// annotated `to b<j>` when it changes level. `\` marks the arrival group
/// dropped to the ground vertex and `/` marks each departure group that
/// receives balls thrown from the ground. The bottom border carries the
/// ground vertex `(G)`.
pub fn render_card(card: &Card) -> Result<String> {
    validate_card(card).map_err(Error::InvalidCard)?;
    let alpha = card.arrival.parts();
    let beta = card.departure.parts();
    let f = &card.landing;
    let throws = card.throws();

    let mut receives = vec![throws; beta.len()];
    if throws {
        for (i, &j) in f.iter().enumerate().skip(1) {
            receives[j as usize - 1] = alpha[i] < beta[j as usize - 1];
        }
    }

    let rows = alpha.len().max(beta.len());
    let mut lines = Vec::with_capacity(rows + 2);
    let body_width = 3 + 1 + 2 + 1 + 1 + MID + 1 + 1 + 2 + 1 + 3 + 1 + 1;
    let border = format!("+{}+", "-".repeat(body_width + 2));
    lines.push(border.clone());
    for r in (1..=rows).rev() {
        let (al, av, lv, mid) = if r <= alpha.len() {
            let target = f[r - 1];
            let mid = if target == 0 {
                format!("{:<MID$}", "\\ to ground")
            } else if target as usize == r {
                "-".repeat(MID)
            } else {
                format!("{:-^MID$}", format!(" to b{target} "))
            };
            (format!("a{r}"), alpha[r - 1].to_string(), 'o', mid)
        } else {
            (String::new(), String::new(), ' ', " ".repeat(MID))
        };
        let (br, bv, rv, mark) = if r <= beta.len() {
            let mark = if receives[r - 1] { '/' } else { ' ' };
            (format!("b{r}"), beta[r - 1].to_string(), 'o', mark)
        } else {
            (String::new(), String::new(), ' ', ' ')
        };
        lines.push(format!("| {al:>3} {av:>2} {lv}{mid}{rv} {bv:<2} {br:<3} {mark} |"));
    }
    let half = (body_width + 2 - 3) / 2;
    lines.push(format!("+{}(G){}+", "-".repeat(half), "-".repeat(body_width + 2 - 3 - half)));
    debug_assert!(lines.iter().all(|l| l.chars().count() == border.len()));
    let mut out = lines.join("\n");
    out.push('\n');
    Ok(out)
}

impl fmt::Display for Card {
    /// `arrival=4,2,3;departure=4,2,3;f=1,2,3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "arrival={};departure={};f={}",
            join(self.arrival.parts()),
            join(self.departure.parts()),
            join(&self.landing)
        )
    }
}

impl FromStr for Card {
    type Err = Error;

    /// Parses the `arrival=..;departure=..;f=..` form and validates it.
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.trim().split(';').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("expected 3 ';'-separated fields in {s:?}")));
        }
        let mut values = Vec::with_capacity(3);
        for (field, key) in fields.iter().zip(["arrival", "departure", "f"]) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("missing '=' in {field:?}")))?;
            if k.trim() != key {
                return Err(Error::Parse(format!("expected key {key:?}, found {:?}", k.trim())));
            }
            values.push(v.trim());
        }
        let arrival: Composition = values[0].parse()?;
        let departure: Composition = values[1].parse()?;
        let landing = if values[2].is_empty() {
            Vec::new()
        } else {
            values[2]
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad landing entry {p:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Card::new(arrival, departure, landing)
    }
}
