use proptest::prelude::*;

use tolrec::geometry::{PermutationRep, Trapezoid};
use tolrec::oracles::{random_bounded_tolerance_rep, random_parallelogram_rep};
use tolrec::orientation::split_lines_rep;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reps_verify_against_their_own_graph(seed in any::<u64>(), n in 1usize..10) {
        let p = random_parallelogram_rep(n, seed);
        let r = p.as_trapezoid();
        let g = r.graph();
        prop_assert_eq!(r.verify(&g).unwrap(), None);
        let (lines, _) = split_lines_rep(r);
        prop_assert_eq!(lines.verify(&lines.graph()).unwrap(), None);
        let t = random_bounded_tolerance_rep(n, seed);
        prop_assert_eq!(t.verify(&t.graph()).unwrap(), None);
    }

    #[test]
    fn flips_and_renormalize_keep_the_graph(seed in any::<u64>(), n in 1usize..10) {
        let r = random_parallelogram_rep(n, seed).into_trapezoid();
        let g = r.graph();
        prop_assert_eq!(r.vertical_flip().graph(), g.clone());
        prop_assert_eq!(r.horizontal_flip().graph(), g.clone());
        prop_assert_eq!(r.renormalize().graph(), g.clone());
        prop_assert_eq!(r.vertical_flip().vertical_flip(), r.clone());

        let (lines, _) = split_lines_rep(&r);
        let lg = lines.graph();
        prop_assert_eq!(lines.vertical_flip().graph(), lg.clone());
        prop_assert_eq!(lines.horizontal_flip().graph(), lg.clone());
        prop_assert_eq!(lines.renormalize().graph(), lg);
    }

    #[test]
    fn block_flip_of_an_isolated_block_keeps_the_graph(seed in any::<u64>(), n in 2usize..8) {
        // lines 0..n crossing each other, then n..2n far to the right
        let base = random_parallelogram_rep(n, seed).into_trapezoid();
        let (lines, _) = split_lines_rep(&base);
        let offset = tolrec::geometry::int(10_000);
        let mut all: Vec<_> = lines.lines().to_vec();
        all.extend(lines.lines().iter().map(|l| l.shifted(&offset)));
        let rep = PermutationRep::new(all).unwrap();
        let block = (0..lines.len()).collect();
        prop_assert_eq!(rep.block_horizontal_flip(&block).unwrap().graph(), rep.graph());
    }

    #[test]
    fn strict_left_order_is_a_strict_partial_order(seed in any::<u64>(), n in 2usize..9) {
        let r = random_parallelogram_rep(n, seed).into_trapezoid();
        for x in 0..n {
            prop_assert!(!r.left_of(x, x));
            for y in 0..n {
                prop_assert!(!(r.left_of(x, y) && r.left_of(y, x)));
                for z in 0..n {
                    if r.left_of(x, y) && r.left_of(y, z) {
                        prop_assert!(r.left_of(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn tolerance_to_parallelogram_and_back(seed in any::<u64>(), n in 1usize..12) {
        let t = random_bounded_tolerance_rep(n, seed);
        let p = t.to_parallelogram().unwrap();
        prop_assert!(p.as_trapezoid().traps().iter().all(Trapezoid::is_parallelogram));
        prop_assert_eq!(p.graph(), t.graph());
        let back = p.to_tolerance();
        prop_assert!(back.is_bounded());
        prop_assert_eq!(back.graph(), t.graph());
    }
}

#[test]
fn json_round_trips() {
    let p = random_parallelogram_rep(6, 3);
    let r = p.as_trapezoid();
    assert_eq!(&tolrec::geometry::TrapezoidRep::from_json(&r.to_json()).unwrap(), r);
    let t = random_bounded_tolerance_rep(6, 3);
    assert_eq!(tolrec::geometry::ToleranceRep::from_json(&t.to_json()).unwrap(), t);
    let (lines, _) = split_lines_rep(r);
    assert_eq!(PermutationRep::from_json(&lines.to_json()).unwrap(), lines);
}
