mod common;

use common::{all_words, brute_line_max, line_strategy, word_strategy};
use num_bigint::BigInt;
use proptest::prelude::*;
use wordgrid::oracle::{max_concentration, OracleOptions};
use wordgrid::word::{
    c1, canonical_distribution, classify_extremal, construct_pal, construct_rep, stability_gap, ExtremalClass,
};
use wordgrid::{Rational, Shape, Word};

/// Words up to renaming letters in order of first use.
fn canonical_words(letters: u8, len: usize) -> Vec<Word> {
    all_words(letters, len)
        .into_iter()
        .filter(|w| {
            let mut next = b'A';
            w.symbols().iter().all(|&c| {
                if c == next {
                    next += 1;
                    true
                } else {
                    c < next
                }
            })
        })
        .collect()
}

fn sweep() -> Vec<Word> {
    (2..=6).flat_map(|len| canonical_words(3, len)).collect()
}

#[test]
fn closed_form_matches_oracle() {
    let opts = OracleOptions::default();
    for w in sweep() {
        let l = w.len();
        let target = c1(&w);
        let mut best = Rational::from_integer(BigInt::from(0));
        for n in 1..=3 * l {
            let r = max_concentration(&w, &Shape::new(vec![n]).unwrap(), &opts).unwrap();
            assert!(r.max <= target, "{w} beats the closed form at n = {n}");
            if n <= 2 * l && r.max > best {
                best = r.max;
            }
        }
        assert_eq!(best, target, "{w}");
    }
}

#[test]
fn oracle_matches_exhaustive_lines() {
    let opts = OracleOptions { parallel: false, ..OracleOptions::default() };
    for w in (2..=4).flat_map(|len| canonical_words(3, len)) {
        let letters = w.alphabet();
        for n in 1..=8 {
            let r = max_concentration(&w, &Shape::new(vec![n]).unwrap(), &opts).unwrap();
            assert_eq!(r.count, brute_line_max(&w, &letters, n), "{w} at n = {n}");
        }
    }
}

#[test]
fn constructions_reach_the_closed_form() {
    for w in sweep() {
        let target = c1(&w);
        let rep = construct_rep(&w).concentration(&w);
        assert!(rep <= target, "{w}");
        let pal = construct_pal(&w).ok().map(|g| g.concentration(&w));
        if let Some(p) = &pal {
            assert!(*p <= target, "{w}");
        }
        let best = pal.map_or(rep.clone(), |p| p.max(rep));
        assert_eq!(best, target, "{w}");
    }
}

#[test]
fn extremal_grids_share_the_canonical_distribution() {
    for w in sweep() {
        let target = c1(&w);
        let h = canonical_distribution(&w);
        let mut grids = vec![construct_rep(&w)];
        grids.extend(construct_pal(&w).ok());
        if let ExtremalClass::Mixed(family) = classify_extremal(&w) {
            grids.extend((1..=4).flat_map(|m| family.grids(m)));
        }
        for g in grids.into_iter().filter(|g| g.concentration(&w) == target) {
            assert_eq!(g.letter_distribution(), h, "{w} on {}", g.letters());
        }
    }
}

#[test]
fn mixed_family_grids_are_extremal_and_inequivalent() {
    let mut seen = 0;
    for w in sweep() {
        let ExtremalClass::Mixed(family) = classify_extremal(&w) else { continue };
        seen += 1;
        let target = c1(&w);
        for m in 1..=4 {
            for g in family.grids(m) {
                assert_eq!(g.concentration(&w), target, "{w} on {}", g.letters());
            }
        }
        let signs = |choice: &[bool]| {
            let by_dir = family.grid(choice).count_by_direction(&w);
            by_dir.iter().filter(|(_, c)| *c > 0).count()
        };
        assert_eq!(signs(&[false]), 1, "{w}");
        assert_eq!(signs(&[false, true]), 2, "{w}");
    }
    assert!(seen > 0);
}

proptest! {
    #![proptest_config(common::config(300))]

    #[test]
    fn stability_inequality(w in word_strategy(3, 2..=5), g in line_strategy(b"ABC", 1..=14)) {
        let r = stability_gap(&w, &g).unwrap();
        prop_assert!(r.holds, "{} on {}: delta {} tv {}", w, g.letters(), r.delta, r.tv);
    }

    #[test]
    fn reversal_keeps_closed_form(w in word_strategy(4, 2..=8)) {
        prop_assert_eq!(c1(&w), c1(&w.reversed()));
    }
}
