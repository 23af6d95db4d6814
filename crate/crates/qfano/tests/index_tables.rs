//! Frozen candidate tables for the neighboring indices.
//!
//! The index-7 table is pinned by the acceptance suite against the shipped
//! asset; these pin the index-8 table and the single table covering
//! indices 9..=19, which the link solver consumes as target data.

use qfano::enumerate::{enumerate_candidates, FilterConfig};
use qfano::rational::{rat, Rational};

fn rows(q: u32) -> Vec<(Vec<u32>, Rational, i64)> {
    enumerate_candidates(q, &FilterConfig::default())
        .into_iter()
        .map(|c| (c.indices(), c.degree_a3(), c.genus()))
        .collect()
}

#[test]
fn index_8_table() {
    let expected: Vec<(Vec<u32>, Rational, i64)> = vec![
        (vec![3, 9], rat(1, 9), 28),
        (vec![3, 5, 11], rat(16, 165), 24),
        (vec![11], rat(1, 11), 23),
        (vec![7, 11], rat(6, 77), 19),
        (vec![3, 3, 5], rat(1, 15), 17),
        (vec![3, 7], rat(1, 21), 12),
        (vec![3, 3, 5, 9], rat(2, 45), 10),
        (vec![7, 13], rat(4, 91), 10),
        (vec![5, 7], rat(1, 35), 7),
        (vec![3, 5, 11], rat(4, 165), 5),
    ];
    assert_eq!(rows(8), expected);
}

#[test]
fn index_9_and_up_table() {
    let expected: Vec<(u32, Vec<u32>, Rational, i64)> = vec![
        (9, vec![2, 4, 5], rat(1, 20), 18),
        (9, vec![2, 2, 2, 5, 7], rat(1, 70), 4),
        (10, vec![7, 11], rat(2, 77), 12),
        (11, vec![2, 3, 5], rat(1, 30), 22),
        (11, vec![2, 5, 7], rat(1, 70), 9),
        (11, vec![2, 2, 3, 4, 7], rat(1, 84), 7),
        (13, vec![3, 4, 5], rat(1, 60), 18),
        (13, vec![2, 3, 3, 5, 7], rat(1, 210), 4),
        (17, vec![2, 3, 5, 7], rat(1, 210), 11),
        (19, vec![3, 4, 5, 7], rat(1, 420), 7),
    ];
    let mut got = Vec::new();
    for q in 9..=19 {
        for (indices, a3, genus) in rows(q) {
            got.push((q, indices, a3, genus));
        }
    }
    assert_eq!(got, expected);
}

/// The familiar ambient models sit in the table with their expected data:
/// P(1,2,3,5) at index 11, P(1,3,4,5) at 13, P(2,3,5,7) at 17 and
/// P(3,4,5,7) at 19, each with `A^3 = 1/prod(w)`.
#[test]
fn ambient_models_appear_in_the_tables() {
    use qfano::wps::WeightedHypersurface;
    for weights in [&[1u32, 2, 3, 5][..], &[1, 3, 4, 5], &[2, 3, 5, 7], &[3, 4, 5, 7]] {
        let model = WeightedHypersurface::ambient(weights).unwrap();
        let q = model.fano_index().unwrap();
        let a3 = model.degree_a3().unwrap();
        let table = enumerate_candidates(q, &FilterConfig::default());
        let hit = table.iter().find(|c| c.degree_a3() == a3);
        assert!(hit.is_some(), "P({weights:?}) missing from the index-{q} table");
        let dims: Vec<i64> = (1..=3)
            .map(|k| hit.unwrap().numerics().linear_system_dim(k).unwrap())
            .collect();
        // counts of weighted-degree-k monomials, minus one
        let count = |d: i64| {
            let mut c = vec![0i64; d as usize + 1];
            c[0] = 1;
            for &w in weights {
                for v in w as usize..=d as usize {
                    c[v] += c[v - w as usize];
                }
            }
            c[d as usize]
        };
        assert_eq!(dims, vec![count(1) - 1, count(2) - 1, count(3) - 1]);
    }
}
