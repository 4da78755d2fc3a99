mod common;

use common::{grid_strategy, line_strategy, naive_count, naive_grid_count, word_strategy};
use num_bigint::BigInt;
use proptest::prelude::*;
use wordgrid::oracle::{max_concentration, OracleOptions};
use wordgrid::reductions::{
    apply_map, check_repetition_inequality, is_parity_respecting, parity_classes, parity_ratio, repeat_word,
    to_parity_respecting, LetterMap,
};
use wordgrid::word::c1;
use wordgrid::{Grid, Rational, Shape, Word};

/// Appearances of `w` and alternating adjacent pairs, counted directly.
fn naive_parity(w: &Word, g: &Grid) -> (u64, u64) {
    let (odd, _) = parity_classes(w).unwrap();
    let cells = g.cells();
    let n = cells.len();
    let mixed =
        (0..n).filter(|&i| odd.contains(&cells[i]) != odd.contains(&cells[(i + 1) % n])).count() as u64;
    (naive_grid_count(w, g), mixed)
}

fn alternates(w: &Word, g: &Grid) -> bool {
    let (odd, _) = parity_classes(w).unwrap();
    let c = g.cells();
    c.len() >= 2 && (0..c.len()).all(|i| odd.contains(&c[i]) != odd.contains(&c[(i + 1) % c.len()]))
}

fn parity_word() -> impl Strategy<Value = Word> {
    prop::sample::select(vec!["ABA", "ABACA", "AB", "ABCB", "ABAC", "ABCDA"])
        .prop_map(|w| Word::new(w).unwrap())
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn projection_keeps_appearances(
        g in grid_strategy(3, 1..=2, 5, 25),
        w in word_strategy(3, 2..=4),
        image in prop::collection::vec(0u8..2, 3),
    ) {
        let pi = LetterMap::new((0..3).map(|i| (b'A' + i, b'A' + image[i as usize])), b"ABC").unwrap();
        let projected = apply_map(&pi, &g).unwrap();
        for (a, b) in g.cells().iter().zip(projected.cells()) {
            prop_assert_eq!(pi.get(*a), Some(*b));
        }
        let image_word: Vec<u8> = w.symbols().iter().map(|&c| pi.get(c).unwrap()).collect();
        if let Ok(w2) = Word::from_symbols(image_word) {
            prop_assert!(projected.count(&w2) >= g.count(&w));
        }
    }

    #[test]
    fn parity_surgery(w in parity_word(), g in line_strategy(b"ABCD", 1..=12)) {
        let letters = w.alphabet();
        let g = Grid::line(
            &g.cells().iter().map(|&c| letters[c as usize % letters.len()] as char).collect::<String>(),
        ).unwrap();
        let before = parity_ratio(&w, &g).unwrap();
        let (app, mixed) = naive_parity(&w, &g);
        prop_assert_eq!((before.appearances, before.mixed_pairs), (app, mixed));
        let out = to_parity_respecting(&w, &g).unwrap();
        prop_assert!(alternates(&w, &out), "{} from {}", out.letters(), g.letters());
        prop_assert!(is_parity_respecting(&w, &out).unwrap());
        let after = parity_ratio(&w, &out).unwrap();
        // cross-multiplied, from direct counts
        let (a1, m1) = naive_parity(&w, &out);
        prop_assert!(
            before.mixed_pairs == 0 || a1 as u128 * mixed as u128 >= app as u128 * m1 as u128,
            "{} -> {}", g.letters(), out.letters()
        );
        prop_assert!(after.at_least(&before));
    }

    #[test]
    fn repetition_inequality(
        w in word_strategy(2, 2..=4),
        half in (1usize..=3, 1usize..=3),
        seed in prop::collection::vec(0u8..2, 36),
    ) {
        let ext = vec![2 * half.0, 2 * half.1];
        let size = ext[0] * ext[1];
        let cells: Vec<u8> = seed[..size].iter().map(|c| b'A' + c).collect();
        let g = Grid::new(Shape::new(ext.clone()).unwrap(), cells.clone()).unwrap();
        let r = check_repetition_inequality(&w, 2, &g).unwrap();
        prop_assert_eq!(r.lhs, 2 * naive_count(repeat_word(&w, 2).symbols(), &ext, &cells));
        prop_assert!(r.holds, "{} on {}: {} > {}", w, g.to_text(), r.lhs, r.rhs);
    }

    #[test]
    fn repeated_word_closed_form(w in word_strategy(3, 2..=6), k in 1usize..=3) {
        let rk = repeat_word(&w, k);
        prop_assert_eq!(rk.len(), k * w.len());
        prop_assert_eq!(c1(&rk), c1(&w) / Rational::from_integer(BigInt::from(k)));
    }
}

#[test]
fn repeated_word_oracle() {
    let opts = OracleOptions::default();
    for base in ["AB", "ABB", "ABA", "ABC", "AAB"] {
        let w = Word::new(base).unwrap();
        for k in 1..=3usize {
            let rk = repeat_word(&w, k);
            let mut best = Rational::from_integer(BigInt::from(0));
            for n in 1..=(2 * rk.len()).min(14) {
                best = best.max(max_concentration(&rk, &Shape::new(vec![n]).unwrap(), &opts).unwrap().max);
            }
            assert_eq!(best, c1(&w) / Rational::from_integer(BigInt::from(k)), "{base} repeated {k}");
        }
    }
}
