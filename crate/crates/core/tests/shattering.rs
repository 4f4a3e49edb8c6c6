mod common;

use proptest::prelude::*;
use vcdim_core::classes::FiniteClass;
use vcdim_core::{shatters, shatters_matrix_reference, HypothesisClass, PointSet, ShatterOptions};

#[test]
fn finite_oracle_matches_pattern_counting() {
    for seed in 0..60 {
        let matrix = common::random_matrix(seed, 32, 8);
        let class = FiniteClass {
            matrix: matrix.clone(),
        };
        for cols in common::nonempty_subsets(matrix.col_count()) {
            let pts = PointSet::from_indices(cols.iter().copied()).unwrap();
            let via_erm = shatters(&class, &pts, &ShatterOptions::default()).unwrap();
            let reference = shatters_matrix_reference(&matrix, &cols).unwrap();
            assert_eq!(via_erm.shattered, reference, "seed {seed} cols {cols:?}");
        }
    }
}

fn real_class(which: usize) -> HypothesisClass {
    match which {
        0 => HypothesisClass::threshold(),
        1 => HypothesisClass::interval(),
        2 => HypothesisClass::rectangle(2).unwrap(),
        3 => HypothesisClass::halfspace_lp(2).unwrap(),
        _ => HypothesisClass::halfspace_perceptron(2, 2_000).unwrap(),
    }
}

fn points_for(which: usize, raw: &[(i32, i32)]) -> Option<PointSet> {
    let coords: Vec<Vec<f64>> = if which < 2 {
        raw.iter().map(|&(a, _)| vec![a as f64]).collect()
    } else {
        raw.iter().map(|&(a, b)| vec![a as f64, b as f64]).collect()
    };
    PointSet::from_coords(coords).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn shattered_sets_have_shattered_subsets(
        which in 0usize..5,
        raw in prop::collection::vec((0i32..8, 0i32..8), 1..=6),
    ) {
        let Some(pts) = points_for(which, &raw) else {
            return Ok(());
        };
        let class = real_class(which);
        let full = shatters(&class, &pts, &ShatterOptions::default()).unwrap();
        prop_assert!(full.erm_calls <= 1 << pts.len());
        if !full.shattered {
            return Ok(());
        }
        prop_assert_eq!(full.erm_calls, 1u64 << pts.len());
        for subset in common::nonempty_subsets(pts.len()) {
            if subset.len() == pts.len() {
                continue;
            }
            let sub = PointSet::new(subset.iter().map(|&i| pts.points()[i].clone()).collect()).unwrap();
            prop_assert!(shatters(&class, &sub, &ShatterOptions::default()).unwrap().shattered);
        }
    }

    #[test]
    fn finite_shattering_is_anti_monotone(seed in any::<u64>()) {
        let matrix = common::random_matrix(seed, 32, 6);
        let class = FiniteClass { matrix: matrix.clone() };
        let shattered = |cols: &[usize]| {
            let pts = PointSet::from_indices(cols.iter().copied()).unwrap();
            shatters(&class, &pts, &ShatterOptions::default()).unwrap().shattered
        };
        for cols in common::nonempty_subsets(matrix.col_count()) {
            if shattered(&cols) {
                for sub in common::nonempty_subsets(cols.len()) {
                    let picked: Vec<usize> = sub.iter().map(|&i| cols[i]).collect();
                    prop_assert!(shattered(&picked));
                }
            }
        }
    }
}

#[test]
fn call_count_matches_the_sequential_scan() {
    let lp = HypothesisClass::halfspace_lp(2).unwrap();
    for raw in [
        vec![(0, 0), (1, 0), (0, 1)],
        vec![(0, 0), (1, 0), (1, 1), (0, 1)],
        vec![(0, 0), (1, 1), (2, 2)],
        vec![(0, 0), (3, 1), (1, 3), (2, 2), (5, 0)],
    ] {
        let pts = points_for(3, &raw).unwrap();
        let v = shatters(&lp, &pts, &ShatterOptions::default()).unwrap();
        let d = pts.len();
        match &v.witness {
            None => assert_eq!(v.erm_calls, 1 << d),
            Some(w) => assert_eq!(v.erm_calls, w.to_index() + 1),
        }
        assert!(v.erm_calls <= 1 << d);
    }
}

#[test]
fn verdicts_do_not_depend_on_worker_count() {
    let mut cases: Vec<(HypothesisClass, PointSet)> = Vec::new();
    for raw in [
        vec![(0, 0), (1, 0), (0, 1)],
        vec![(0, 0), (1, 0), (1, 1), (0, 1)],
        vec![
            (3, 1),
            (1, 3),
            (2, 2),
            (0, 4),
            (4, 0),
            (5, 5),
            (1, 1),
            (6, 2),
            (2, 6),
            (7, 7),
        ],
    ] {
        for which in 0..5 {
            if let Some(pts) = points_for(which, &raw) {
                cases.push((real_class(which), pts));
            }
        }
    }
    for seed in 0..5 {
        let matrix = common::random_matrix(seed, 32, 8);
        let cols: Vec<usize> = (0..matrix.col_count()).collect();
        cases.push((
            HypothesisClass::finite(matrix),
            PointSet::from_indices(cols).unwrap(),
        ));
    }
    cases.push((
        HypothesisClass::finite(vcdim_core::ConceptMatrix::full(12).unwrap()),
        PointSet::from_indices(0..12).unwrap(),
    ));

    for (class, pts) in &cases {
        let base = shatters(class, pts, &ShatterOptions::with_workers(1)).unwrap();
        for workers in [2, 8] {
            let v = shatters(class, pts, &ShatterOptions::with_workers(workers)).unwrap();
            assert_eq!(
                v.key(),
                base.key(),
                "{} on {} points",
                class.name(),
                pts.len()
            );
        }
    }
}
