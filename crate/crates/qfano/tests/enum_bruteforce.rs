//! Brute-force cross-check of the degree search.
//!
//! `admissible_degrees` certifies integrality through a congruence window
//! and re-verifies survivors on the scan range. The oracle here is the
//! naive route: try every numerator directly with exact rational
//! arithmetic, testing each filter by definition. Both routes must agree.

use core::str::FromStr;

use qfano::enumerate::{admissible_degrees, FilterConfig};
use qfano::rational::{rat, Rational};
use qfano::{Basket, FanoNumerics};

/// Filter ladder evaluated directly from `euler_characteristic`.
fn degree_passes(q: u32, basket: &Basket, a3: Rational, cfg: &FilterConfig) -> bool {
    let numerics = match FanoNumerics::new(q, basket.clone(), a3) {
        Ok(f) => f,
        Err(_) => return false,
    };
    if cfg.require_degree_c2_bound && rat(8 * i128::from(q), 1) * a3 > rat(9, 1) * numerics.a_c2() {
        return false;
    }
    if cfg.require_intermediate_vanishing
        && (1..i64::from(q)).any(|m| numerics.euler_characteristic(-m) != rat(0, 1))
    {
        return false;
    }
    let n = basket.gorenstein_index() as i64;
    let span = 12 * n * i64::from(cfg.integrality_scan_multiplier);
    let monotone =
        cfg.require_monotone_when_effective && numerics.euler_characteristic(1) >= rat(1, 1);
    let mut prev = None;
    for k in -span..=span {
        let chi = numerics.euler_characteristic(k);
        if !chi.is_integer() {
            return false;
        }
        if k >= 0 {
            if cfg.require_nonneg && chi < rat(0, 1) {
                return false;
            }
            if monotone {
                if let Some(p) = prev {
                    if chi < p {
                        return false;
                    }
                }
                prev = Some(chi);
            }
        }
    }
    true
}

fn brute_force(q: u32, basket: &Basket, cfg: &FilterConfig) -> Vec<Rational> {
    let n = basket.gorenstein_index() as i128;
    let q3 = i128::from(q).pow(3);
    let n_max = (cfg.max_anticanonical_cube * rat(n, q3)).floor().to_integer();
    (1..=n_max).map(|num| rat(num, n)).filter(|&a3| degree_passes(q, basket, a3, cfg)).collect()
}

#[test]
fn routes_agree_on_sample_baskets() {
    let cfg = FilterConfig::default();
    let samples = [
        (7u32, "2,3"),
        (7, "3,9:4"),
        (7, "3,9:2"),
        (7, "2,2,5:2,10:3"),
        (7, "2,3^2,11:3"),
        (7, "2,3^2,4"),
        (7, "2^3,5:1"),
        (7, "2^3,5:2"),
        (7, "3,8:3,9:2"),
        (7, "2,2,8:3"),
        (5, "2,6"),
        (9, "2,4,5:2"),
        (11, "2,3,5:2"),
        (8, "3,9:2"),
    ];
    for (q, text) in samples {
        let basket = Basket::from_str(text).unwrap();
        let fast = admissible_degrees(q, &basket, &cfg).unwrap();
        let slow = brute_force(q, &basket, &cfg);
        assert_eq!(fast, slow, "q = {q}, basket {text}");
    }
}

#[test]
fn routes_agree_with_filters_toggled() {
    let basket = Basket::from_str("2,2,8:3").unwrap();
    for vanish in [false, true] {
        for bound in [false, true] {
            let cfg = FilterConfig {
                require_intermediate_vanishing: vanish,
                require_degree_c2_bound: bound,
                ..FilterConfig::default()
            };
            let fast = admissible_degrees(7, &basket, &cfg).unwrap();
            let slow = brute_force(7, &basket, &cfg);
            assert_eq!(fast, slow, "vanish = {vanish}, bound = {bound}");
        }
    }
}
