use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use multiplex_juggling::cards::{card_to_embedding, enumerate_cards};
use multiplex_juggling::qcalc::apply_d;
use multiplex_juggling::rational::fit_recurrence;
use multiplex_juggling::series::SeriesJson;
use multiplex_juggling::{Card, Composition, Embedding, Polynomial, Profile, RationalFunction, TruncatedSeries};

fn profile() -> Arc<Profile> {
    Arc::new(Profile::new([("x", 4), ("z1", 3), ("z2", 2)]).unwrap())
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0u32..=4, 0u32..=3, 0u32..=2), -20i64..=20), 0..8).prop_map(|terms| {
        let p = profile();
        TruncatedSeries::from_terms(&p, terms.into_iter().map(|((a, b, c), v)| (vec![a, b, c], BigInt::from(v))))
    })
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), prop::bool::ANY).prop_map(|(s, neg)| {
        let p = profile();
        let c0 = s.constant_term();
        let target = if neg { -1 } else { 1 };
        s.checked_add(&TruncatedSeries::constant(&p, BigInt::from(target) - c0)).unwrap()
    })
}

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 0..max_len).prop_map(|c| Polynomial::from_i64s(&c))
}

fn unit_denominator() -> impl Strategy<Value = Polynomial> {
    (prop::bool::ANY, prop::collection::vec(-4i64..=4, 0..4)).prop_map(|(neg, rest)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(rest);
        Polynomial::from_i64s(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), TruncatedSeries::zero(&profile()));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        let one = TruncatedSeries::one(&profile());
        prop_assert_eq!(&a * &inv, one.clone());
        prop_assert_eq!(&inv * &a, one);
    }

    #[test]
    fn json_round_trip(a in series()) {
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(TruncatedSeries::from_json(&back).unwrap(), a);
    }

    #[test]
    fn operator_is_linear(a in series(), b in series()) {
        let p = Arc::new(Profile::juggling(4, 2, 3));
        let lift = |s: &TruncatedSeries| TruncatedSeries::from_terms(
            &p,
            s.terms().map(|(e, c)| (vec![e[0], e[1], e[2]], c.clone())).collect::<Vec<_>>(),
        );
        let (a, b) = (lift(&a), lift(&b));
        prop_assert_eq!(apply_d(2, &(&a + &b)).unwrap(), &apply_d(2, &a).unwrap() + &apply_d(2, &b).unwrap());
    }

    #[test]
    fn reduce_preserves_expansion(num in poly(5), den in unit_denominator(), common in unit_denominator()) {
        let rf = RationalFunction::new(num.mul(&common), den.mul(&common)).unwrap();
        let reduced = rf.reduce().unwrap();
        prop_assert!(reduced.same_as(&rf));
        prop_assert_eq!(reduced.expand(20).unwrap(), rf.expand(20).unwrap());
        let g = reduced.numerator().gcd(reduced.denominator());
        prop_assert!(reduced.numerator().is_zero() || g.degree() == Some(0));
    }

    #[test]
    fn fitted_recurrence_matches_denominator(num in poly(4), den in unit_denominator()) {
        let rf = RationalFunction::new(num, den.clone()).unwrap();
        let seq = rf.expand(24).unwrap();
        let rec = fit_recurrence(&seq, 8).expect("rational series fit");
        prop_assert!(rec.holds_on(&seq));
        // a minimal recurrence has exactly the reduced denominator as its
        // connection polynomial
        let reduced = rf.reduce().unwrap();
        prop_assert_eq!(&rec.connection_polynomial(), reduced.denominator());
        prop_assert!(rec.order() <= den.degree().unwrap_or(0));
    }

    #[test]
    fn composition_text_round_trip(parts in prop::collection::vec(1u32..=9, 0..7)) {
        let c = Composition::new(parts).unwrap();
        let text = c.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(text.parse::<Composition>().unwrap(), c);
    }

    #[test]
    fn card_text_round_trip(b in 0u32..=5, k in 1u32..=3, pick in any::<prop::sample::Index>()) {
        let cards = enumerate_cards(b, k);
        let card = &cards[pick.index(cards.len())];
        prop_assert_eq!(&card.to_string().parse::<Card>().unwrap(), card);
        let e = card_to_embedding(card).unwrap();
        prop_assert_eq!(e.to_string().parse::<Embedding>().unwrap(), e);
    }
}
