//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiplex_juggling::cards::{card_to_embedding, embedding_to_card, enumerate_cards};
use multiplex_juggling::embeddings::{
    embedding_to_sequence, enumerate_embeddings, enumerate_sequence_embeddings, sequence_to_embedding,
};
use multiplex_juggling::genfun::{
    gf_cor_l1, gf_infinite, gf_infinite_recurrence, gf_prop1, gf_thm3, gf_thm_l1, DEFAULT_MONOMIAL_BUDGET,
};
use multiplex_juggling::rational::{characteristic_polynomial, fit_recurrence};
use multiplex_juggling::sequences::{
    build_transfer_matrix, count_sequences, count_sequences_brute, count_sequences_by_length, enumerate_sequences,
};
use multiplex_juggling::series::{Profile, TruncatedSeries};
use multiplex_juggling::verify::{
    d2_closed_form, homogeneous_splitting, operator_splitting, random_series, random_z2_polynomial, A003480,
    A370304, A370306, WORKED_EMBEDDING, WORKED_SEQUENCE,
};
use multiplex_juggling::{Card, CardSequence, Polynomial};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn uints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn transfer(b: u32, k: u32, ell: u32) -> BigInt {
    BigInt::from(count_sequences(b, k, ell))
}

fn z_profile(m: usize, order: u32) -> std::sync::Arc<Profile> {
    std::sync::Arc::new(Profile::new((1..=m).map(|i| (format!("z{i}"), order))).unwrap())
}

fn k2_closed_form() -> Outcome {
    let rf = gf_thm_l1(2).map_err(|e| e.to_string())?;
    ensure(rf.numerator() == &Polynomial::from_i64s(&[1, -1, 1, 1]), || format!("numerator {}", rf.numerator()))?;
    let den = Polynomial::from_i64s(&[1, -1, -1]).pow(3);
    ensure(rf.denominator() == &den, || format!("denominator {}", rf.denominator()))?;
    let series = rf.expand(14).map_err(|e| e.to_string())?;
    ensure(series == uints(&A370304), || format!("expansion {series:?}"))?;
    Ok("(1-x+x^2+x^3)/(1-x-x^2)^3, 15 terms".into())
}

fn k3_closed_form() -> Outcome {
    let rf = gf_thm_l1(3).map_err(|e| e.to_string())?;
    let num = Polynomial::from_i64s(&[1, -2, 1, 4, 3, 0, -3, -2, -1]);
    ensure(rf.numerator() == &num, || format!("numerator {}", rf.numerator()))?;
    let den = Polynomial::from_i64s(&[1, -1, -1, -1]).pow(4);
    ensure(rf.denominator() == &den, || format!("denominator {}", rf.denominator()))?;
    let series = rf.expand(13).map_err(|e| e.to_string())?;
    ensure(series == uints(&A370306), || format!("expansion {series:?}"))?;
    Ok("closed form and 14 terms".into())
}

fn infinite_capacity() -> Outcome {
    let want = uints(&A003480);
    ensure(gf_infinite(12) == want, || "rational expansion".into())?;
    ensure(gf_infinite_recurrence(12) == want, || "recurrence".into())?;
    let rec = fit_recurrence(&want, 4).ok_or("no recurrence fitted")?;
    ensure(rec.integer_coeffs() == Some(ints(&[4, -2])), || format!("coefficients {:?}", rec.coeffs()))?;
    ensure(rec.valid_from() == 3, || format!("valid from {}", rec.valid_from()))?;
    Ok("13 terms both routes, fit (4,-2) from b=3".into())
}

fn triple_formula() -> Outcome {
    for k in 1..=5 {
        let series = gf_prop1(k, 30).map_err(|e| e.to_string())?;
        let thm = gf_thm_l1(k).and_then(|r| r.expand(30)).map_err(|e| e.to_string())?;
        let cor = gf_cor_l1(k).and_then(|r| r.expand(30)).map_err(|e| e.to_string())?;
        ensure(series == thm && series == cor, || format!("disagreement at k={k}"))?;
    }
    Ok("k=1..5, 31 coefficients".into())
}

fn enumeration_ground_truth() -> Outcome {
    for k in 1..=3 {
        let counts = gf_prop1(k, 12).map_err(|e| e.to_string())?;
        for b in 0..=12 {
            let n = enumerate_embeddings(b, k).len();
            ensure(BigInt::from(n) == counts[b as usize], || format!("|E({b},{k})| = {n}"))?;
        }
    }
    let mut cards = 0;
    for k in 1..=3 {
        for b in 0..=8 {
            for c in enumerate_cards(b, k) {
                let e = card_to_embedding(&c).map_err(|e| e.to_string())?;
                let back = embedding_to_card(&e).map_err(|e| e.to_string())?;
                ensure(back == c, || format!("round-trip fails for {c}"))?;
                cards += 1;
            }
        }
    }
    Ok(format!("embedding counts b<=12 k<=3, {cards} card round-trips"))
}

fn operator_formula() -> Outcome {
    for k in 1..=2 {
        for ell in 1..=3 {
            let series = gf_thm3(k, ell, 8, DEFAULT_MONOMIAL_BUDGET).map_err(|e| e.to_string())?;
            for b in 0..=8 {
                let t = transfer(b, k, ell);
                let (brute, _) = count_sequences_brute(b, k, ell as usize);
                ensure(series[b as usize] == t && t == BigInt::from(brute), || {
                    format!("J({b},{k},{ell}): formula {} transfer {t} brute {brute}", series[b as usize])
                })?;
            }
        }
    }
    for k in 1..=3 {
        let a = gf_thm3(k, 1, 15, DEFAULT_MONOMIAL_BUDGET).map_err(|e| e.to_string())?;
        let b = gf_prop1(k, 15).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("single-card reduction fails at k={k}"))?;
    }
    Ok("k<=2 l<=3 b<=8 three ways; one-card case k<=3 B=15".into())
}

fn sequence_bijection() -> Outcome {
    let mut total = 0;
    for k in 1..=2 {
        for ell in 1..=3 {
            for b in 0..=5 {
                let seqs = enumerate_sequences(b, k, ell, 1_000_000).map_err(|e| e.to_string())?;
                let mut images = BTreeSet::new();
                for s in &seqs {
                    let se = sequence_to_embedding(s).map_err(|e| e.to_string())?;
                    let back = embedding_to_sequence(&se).map_err(|e| e.to_string())?;
                    ensure(&back == s, || format!("round-trip fails at ({b},{k},{ell})"))?;
                    images.insert(se);
                }
                let listed: BTreeSet<_> = enumerate_sequence_embeddings(b, k, ell).into_iter().collect();
                ensure(images == listed, || format!("image mismatch at ({b},{k},{ell})"))?;
                total += seqs.len();
            }
        }
    }
    let cards: Vec<Card> = WORKED_SEQUENCE
        .iter()
        .map(|s| s.parse::<Card>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let seq = CardSequence::new(cards).map_err(|e| e.to_string())?;
    let se = sequence_to_embedding(&seq).map_err(|e| e.to_string())?;
    ensure(se.to_string() == WORKED_EMBEDDING, || format!("worked example gives {se}"))?;
    Ok(format!("{total} round-trips, worked example {WORKED_EMBEDDING}"))
}

fn identity_suite() -> Outcome {
    for m in 2..=5 {
        for n in 0..=8 {
            ensure(homogeneous_splitting(n, m).map_err(|e| e.to_string())?, || format!("h_n split n={n} m={m}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240317);
    for m in 2..=4 {
        let p = z_profile(m + 1, 3);
        for t in 0..100 {
            let a = random_series(&mut rng, &p, 6);
            ensure(operator_splitting(m, &a).map_err(|e| e.to_string())?, || format!("D split m={m} trial {t}"))?;
        }
    }
    let p = z_profile(2, 8);
    for t in 0..100 {
        let degree = rng.gen_range(0..=8);
        let f: TruncatedSeries = random_z2_polynomial(&mut rng, &p, degree);
        ensure(d2_closed_form(&f).map_err(|e| e.to_string())?, || format!("two-variable form trial {t}"))?;
    }
    Ok("h_n splitting n<=8 m<=5; D splitting m<=4 x100; two-variable form x100".into())
}

fn rationality() -> Outcome {
    let mut orders = Vec::new();
    for (k, ell) in [(1, 2), (1, 3), (2, 2)] {
        let series = gf_thm3(k, ell, 39, DEFAULT_MONOMIAL_BUDGET).map_err(|e| e.to_string())?;
        for b in 0..=9 {
            ensure(series[b as usize] == transfer(b, k, ell), || format!("prefix J({b},{k},{ell})"))?;
        }
        let rec = fit_recurrence(&series[..30], 12).ok_or_else(|| format!("no fit for ({k},{ell})"))?;
        ensure(rec.holds_on(&series), || format!("held-out terms fail for ({k},{ell})"))?;
        orders.push(format!("({k},{ell}):{}", rec.order()));
    }
    let t = build_transfer_matrix(2, 2);
    let chi = characteristic_polynomial(t.counts());
    let js = count_sequences_by_length(2, 2, 20);
    let d = chi.degree().unwrap_or(0);
    for start in 0..js.len() - d {
        let s: BigInt = (0..=d).map(|i| chi.coeff(i) * BigInt::from(js[start + i].clone())).sum();
        ensure(s.is_zero(), || format!("length recurrence fails at l={start}"))?;
    }
    Ok(format!("orders {}; l-direction char poly {chi}", orders.join(" ")))
}

fn stabilization() -> Outcome {
    for ell in 1..=3 {
        for b in 0..=6u32 {
            let kmax = b.max(1) + 2;
            let row: Vec<BigInt> = (1..=kmax).map(|k| transfer(b, k, ell)).collect();
            for k in b.max(1)..=kmax {
                ensure(row[k as usize - 1] == row[b.max(1) as usize - 1], || format!("J({b},{k},{ell}) != J({b},{b},{ell})"))?;
            }
            for w in row.windows(2) {
                ensure(w[0] <= w[1], || format!("monotonicity fails at b={b} l={ell}"))?;
            }
        }
    }
    Ok("b<=6 l<=3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("k=2 closed form and A370304", k2_closed_form),
        ("k=3 closed form and A370306", k3_closed_form),
        ("infinite capacity and A003480", infinite_capacity),
        ("three single-card formulas agree", triple_formula),
        ("embedding enumeration and card round-trip", enumeration_ground_truth),
        ("operator formula vs transfer matrix vs brute force", operator_formula),
        ("sequence embedding bijection", sequence_bijection),
        ("operator identities", identity_suite),
        ("rationality certificates", rationality),
        ("stabilization and monotonicity", stabilization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
