//! Property-based invariants over randomized baskets and scenarios.

use core::str::FromStr;

use proptest::prelude::*;

use qfano::basket::{Basket, BasketPoint, QuotientPoint};
use qfano::rational::rat;
use qfano::rr::{local_class, point_contribution};

fn arb_quotient_point() -> impl Strategy<Value = QuotientPoint> {
    (2u32..=24)
        .prop_flat_map(|r| {
            let ws = QuotientPoint::weights_for_index(r);
            (Just(r), proptest::sample::select(ws))
        })
        .prop_map(|(r, a)| QuotientPoint::new(r, a).unwrap())
}

fn arb_basket() -> impl Strategy<Value = Basket> {
    proptest::collection::vec(
        (2u32..=24, any::<bool>(), 0u32..32).prop_map(|(r, decorated, seed)| {
            if decorated {
                let ws = QuotientPoint::weights_for_index(r);
                let a = ws[seed as usize % ws.len()];
                BasketPoint::decorated(r, a).unwrap()
            } else {
                BasketPoint::index_only(r).unwrap()
            }
        }),
        0..8,
    )
    .prop_map(Basket::new)
}

proptest! {
    /// parse . format is the identity on canonical form.
    #[test]
    fn parse_format_round_trip(basket in arb_basket()) {
        let text = basket.to_string();
        let reparsed = Basket::from_str(&text).unwrap();
        prop_assert_eq!(reparsed, basket);
    }

    /// Kawamata sum and difficulty are additive over multiset union.
    #[test]
    fn functionals_additive(a in arb_basket(), b in arb_basket()) {
        let merged = a.merged(&b);
        prop_assert_eq!(merged.kawamata_sum(), a.kawamata_sum() + b.kawamata_sum());
        prop_assert_eq!(
            merged.shokurov_difficulty(),
            a.shokurov_difficulty() + b.shokurov_difficulty()
        );
        prop_assert_eq!(merged.gorenstein_index() % a.gorenstein_index(), 0);
    }

    /// The Kawamata blowup drops the difficulty by exactly one.
    #[test]
    fn blowup_drops_difficulty_by_one(p in arb_quotient_point(), rest in arb_basket()) {
        let mut points = rest.points().to_vec();
        points.push(p.into());
        let basket = Basket::new(points);
        let transformed = basket.kawamata_blowup_transform(p).unwrap();
        prop_assert_eq!(transformed.shokurov_difficulty() + 1, basket.shokurov_difficulty());
    }

    /// Corrections are periodic and vanish at class zero.
    #[test]
    fn contribution_periodic(p in arb_quotient_point(), cls in -50i64..50) {
        let r = i64::from(p.index());
        prop_assert_eq!(point_contribution(p, 0), rat(0, 1));
        prop_assert_eq!(point_contribution(p, cls), point_contribution(p, cls + r));
    }

    /// The defining congruence of the local class.
    #[test]
    fn local_class_congruence(p in arb_quotient_point(), k in -100i64..100, q in 1u32..=19) {
        let r = p.index();
        prop_assume!(num_integer::Integer::gcd(&q, &r) == 1);
        let m = local_class(q, k, r).unwrap();
        prop_assert_eq!((i64::from(q) * i64::from(m)).rem_euclid(i64::from(r)), k.rem_euclid(i64::from(r)));
    }
}
