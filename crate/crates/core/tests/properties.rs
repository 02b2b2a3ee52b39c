//! Property tests with the brute-force oracle as referee.

mod common;

use joint_spectra::decomp::decompose;
use joint_spectra::homology::homology_dims;
use joint_spectra::liepair::{generate_chain, generate_chain_with, generate_y2zero, WeightMode, Y2ZeroParams};
use joint_spectra::oracle::exact::{ExactMatrix, GaussianRational};
use joint_spectra::oracle::{brute_spectra, candidates_with, exact_brute_spectra, exactness_radius, Provenance};
use joint_spectra::spectra::{set_compare, slodkowski_spectra, SpectraReport};
use joint_spectra::{LiePair, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

const MATCH_TOL: f64 = 1e-8;

fn quarter() -> impl Strategy<Value = f64> {
    (-12i32..=12).prop_map(|k| k as f64 / 4.0)
}

fn chain_pair() -> impl Strategy<Value = LiePair> {
    (
        any::<u64>(),
        proptest::collection::vec((1usize..=4, quarter(), quarter()), 1..=3),
    )
        .prop_map(|(seed, blocks)| {
            let lengths: Vec<usize> = blocks.iter().map(|b| b.0).collect();
            let bases: Vec<Complex64> = blocks.iter().map(|b| Complex64::new(b.1, b.2)).collect();
            generate_chain(seed, &lengths, &bases).unwrap()
        })
}

fn y2zero_pair() -> impl Strategy<Value = LiePair> {
    (any::<u64>(), 1usize..=3, 0usize..=2)
        .prop_map(|(seed, r, m)| generate_y2zero(seed, r, m, &Y2ZeroParams::default()).unwrap())
}

fn any_pair() -> impl Strategy<Value = LiePair> {
    prop_oneof![chain_pair(), y2zero_pair()]
}

fn oracle(p: &LiePair, t: &Tolerances) -> SpectraReport {
    brute_spectra(p, &candidates_with(p, &decompose(p, t).unwrap(), t).unwrap(), t).unwrap()
}

fn assert_reports_match(a: &SpectraReport, b: &SpectraReport) -> Result<(), TestCaseError> {
    for (name, m) in a.compare(b, MATCH_TOL) {
        prop_assert!(m.matched, "{}: {:?}", name, m);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem_matches_oracle(p in any_pair()) {
        let t = Tolerances::default();
        let theorem = slodkowski_spectra(&p, &t).unwrap();
        let brute = oracle(&p, &t);
        assert_reports_match(&theorem, &brute)?;
        prop_assert!(theorem.invariant_violations().is_empty());
        prop_assert!(brute.invariant_violations().is_empty());
    }

    #[test]
    fn direct_sum_is_union(p in any_pair(), q in chain_pair()) {
        let t = Tolerances::default();
        let (a, b) = (oracle(&p, &t), oracle(&q, &t));
        let sum = oracle(&p.direct_sum(&q), &t);
        for ((name, s), ((_, sa), (_, sb))) in sum.sets().iter().zip(a.sets().iter().zip(b.sets().iter())) {
            prop_assert!(set_compare(s, &sa.union(sb), MATCH_TOL).matched, "{}", name);
        }
    }

    #[test]
    fn translation_moves_oracle_sets(p in any_pair(), re in quarter(), im in quarter()) {
        let t = Tolerances::default();
        let c = Complex64::new(re, im);
        assert_reports_match(&oracle(&p, &t).translated(c), &oracle(&p.translated(c), &t))?;
    }

    #[test]
    fn interior_points_add_nothing(p in any_pair(), seed in any::<u64>()) {
        let t = Tolerances::default();
        let d = decompose(&p, &t).unwrap();
        let cands = candidates_with(&p, &d, &t).unwrap();
        let base = brute_spectra(&p, &cands, &t).unwrap();
        let mut more = cands.clone();
        for l in common::lambda_samples(seed, 50, p.x_norm() + 1.0) {
            more.push(l, Provenance::User);
        }
        assert_reports_match(&base, &brute_spectra(&p, &more, &t).unwrap())?;
    }

    #[test]
    fn probes_see_exact_complex(p in any_pair()) {
        let t = Tolerances::default();
        let cands = candidates_with(&p, &decompose(&p, &t).unwrap(), &t).unwrap();
        for c in cands.points().iter().filter(|c| c.provenance == Provenance::Probe) {
            prop_assert!(c.lambda.norm() > exactness_radius(&p));
            prop_assert!(homology_dims(&p, c.lambda, &t).unwrap().is_exact());
        }
    }

    #[test]
    fn exact_oracle_matches_float_oracle(
        seed in any::<u64>(),
        lengths in proptest::collection::vec(1usize..=3, 1..=2),
        base_re in -2i32..=2, base_im in -2i32..=2,
    ) {
        let t = Tolerances::default();
        let bases: Vec<Complex64> = (0..lengths.len())
            .map(|k| Complex64::new((base_re + k as i32) as f64, base_im as f64))
            .collect();
        let p = generate_chain_with(seed, &lengths, &bases, WeightMode::Integer).unwrap();
        let cands = candidates_with(&p, &decompose(&p, &t).unwrap(), &t).unwrap();
        let exact_points: Vec<GaussianRational> = cands
            .lambdas()
            .map(|l| GaussianRational::from_complex_snapped(l, 1e-6).unwrap())
            .collect();
        let x = ExactMatrix::from_cmatrix(p.x()).unwrap();
        let y = ExactMatrix::from_cmatrix(p.y()).unwrap();
        let exact = exact_brute_spectra(&x, &y, &exact_points).unwrap();
        assert_reports_match(&exact, &oracle(&p, &t))?;
    }
}
