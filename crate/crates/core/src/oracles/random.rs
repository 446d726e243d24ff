//! Seeded generators. Every generator is a pure function of its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{int, ParallelogramRep, ToleranceInterval, ToleranceRep, Trapezoid, TrapezoidRep};
use crate::reduction::MonotoneCnf;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` parallelograms with integer endpoints, distinct on each rail. Each
/// draw picks its own width and slant scales, so edge densities range from
/// empty to complete across seeds.
pub fn random_parallelogram_rep(n: usize, seed: u64) -> ParallelogramRep {
    assert!(n >= 1, "need at least one parallelogram");
    let mut rng = rng(seed);
    let span = 10 * n as i64;
    let max_width = rng.gen_range(1..=span);
    let max_slant = rng.gen_range(0..=span);
    loop {
        let traps: Vec<Trapezoid> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0..span);
                let b = a + rng.gen_range(1..=max_width);
                let s = rng.gen_range(-max_slant..=max_slant);
                Trapezoid::new(int(a), int(b), int(a + s), int(b + s))
            })
            .collect();
        if let Ok(rep) = TrapezoidRep::new(traps) {
            return ParallelogramRep::new(rep).expect("equal shifts give parallelograms");
        }
    }
}

/// `n` intervals with `0 < t ≤ |I|`; roughly one in four vertices gets the
/// extreme tolerance `t = |I|`, and endpoints may coincide.
pub fn random_bounded_tolerance_rep(n: usize, seed: u64) -> ToleranceRep {
    let mut rng = rng(seed);
    let span = 6 * n.max(1) as i64;
    let intervals = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..span);
            let len = rng.gen_range(1..=span / 2);
            let t = if rng.gen_ratio(1, 4) { len } else { rng.gen_range(1..=len) };
            ToleranceInterval::new(int(l), int(l + len), int(t))
        })
        .collect();
    ToleranceRep::new(intervals).expect("positive lengths and tolerances")
}

/// Random monotone 3-CNF with `3 ≤ n ≤ 6`, `1 ≤ k ≤ 5`, every variable used.
pub fn random_formula(seed: u64) -> MonotoneCnf {
    let mut rng = rng(seed);
    loop {
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(1..=5);
        if 3 * k < n {
            continue;
        }
        let vars: Vec<usize> = (1..=n).collect();
        let clauses = (0..k)
            .map(|_| {
                let c: Vec<usize> = vars.choose_multiple(&mut rng, 3).copied().collect();
                [c[0], c[1], c[2]]
            })
            .collect();
        if let Ok(f) = MonotoneCnf::new(n, clauses) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable() {
        assert_eq!(random_parallelogram_rep(6, 7), random_parallelogram_rep(6, 7));
        assert_eq!(random_bounded_tolerance_rep(6, 7), random_bounded_tolerance_rep(6, 7));
        assert_eq!(random_formula(7), random_formula(7));
    }

    #[test]
    fn generated_values_are_valid() {
        for seed in 0..50 {
            let p = random_parallelogram_rep(8, seed);
            assert!(p.as_trapezoid().traps().iter().all(Trapezoid::is_parallelogram));
            assert!(random_bounded_tolerance_rep(8, seed).is_bounded());
            let f = random_formula(seed);
            assert!((3..=6).contains(&f.n()) && (1..=5).contains(&f.k()));
        }
    }

    #[test]
    fn densities_cover_the_range() {
        let densities: Vec<f64> = (0..300)
            .map(|seed| {
                let g = random_parallelogram_rep(8, seed).graph();
                g.edge_count() as f64 / 28.0
            })
            .collect();
        assert!(densities.iter().any(|&d| d < 0.1));
        assert!(densities.iter().any(|&d| d > 0.9));
    }
}
