use fdea_core::rank::{average_ranks, geometric, rank_dmus, spearman};
use proptest::prelude::*;

/// Pearson correlation of average ranks, computed from scratch.
fn spearman_oracle(a: &[f64], b: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        v.iter()
            .map(|x| {
                let below = v.iter().filter(|y| *y < x).count() as f64;
                let equal = v.iter().filter(|y| *y == x).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

fn named(scores: &[f64]) -> Vec<(String, f64)> {
    scores.iter().enumerate().map(|(i, s)| (format!("D{i}"), *s)).collect()
}

fn non_constant_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3..12usize)
        .prop_flat_map(|n| (prop::collection::vec(1..6u8, n), prop::collection::vec(1..6u8, n)))
        .prop_filter("constant list", |(a, b)| {
            a.iter().any(|x| *x != a[0]) && b.iter().any(|x| *x != b[0])
        })
        .prop_map(|(a, b)| {
            (
                a.into_iter().map(f64::from).collect(),
                b.into_iter().map(f64::from).collect(),
            )
        })
}

proptest! {
    #[test]
    fn geometric_lies_between(o in 0.001..=1.0f64, p in 1.0..10.0f64) {
        let g = geometric(o, p).unwrap();
        prop_assert!(o <= g + 1e-12 && g <= p + 1e-12);
        prop_assert_eq!(g, geometric(p, o).unwrap());
    }

    #[test]
    fn geometric_scale_invariance(o in 0.001..=1.0f64, p in 1.0..10.0f64, k in 0.1..10.0f64) {
        prop_assert!((geometric(k * o, p / k).unwrap() - geometric(o, p).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn ranks_form_competition_ranking(scores in prop::collection::vec(1..8u8, 1..15)) {
        let scores: Vec<f64> = scores.into_iter().map(f64::from).collect();
        let ranked = rank_dmus(&named(&scores)).unwrap();
        for (i, r) in ranked.iter().enumerate() {
            let better = scores.iter().filter(|s| **s > scores[i]).count();
            let equal = scores.iter().filter(|s| **s == scores[i]).count();
            prop_assert_eq!(r.rank, better + 1);
            prop_assert_eq!(r.tied, equal > 1);
        }
    }

    #[test]
    fn ranks_invariant_under_increasing_transform(scores in prop::collection::vec(0.1..5.0f64, 1..15)) {
        let a = rank_dmus(&named(&scores)).unwrap();
        let transformed: Vec<f64> = scores.iter().map(|s| s.ln() * 3.0 + 7.0).collect();
        let b = rank_dmus(&named(&transformed)).unwrap();
        prop_assert_eq!(
            a.iter().map(|r| r.rank).collect::<Vec<_>>(),
            b.iter().map(|r| r.rank).collect::<Vec<_>>()
        );
    }

    #[test]
    fn spearman_matches_oracle((a, b) in non_constant_pair()) {
        prop_assert!((spearman(&a, &b).unwrap() - spearman_oracle(&a, &b)).abs() <= 1e-12);
    }

    #[test]
    fn spearman_invariant_under_increasing_transform((a, b) in non_constant_pair()) {
        let exp: Vec<f64> = a.iter().map(|x| x.exp()).collect();
        let cube: Vec<f64> = b.iter().map(|x| x.powi(3) + 1.0).collect();
        prop_assert!((spearman(&a, &b).unwrap() - spearman(&exp, &cube).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn average_ranks_sum(v in prop::collection::vec(1..5u8, 1..15)) {
        let v: Vec<f64> = v.into_iter().map(f64::from).collect();
        let n = v.len() as f64;
        prop_assert!((average_ranks(&v).iter().sum::<f64>() - n * (n + 1.0) / 2.0).abs() <= 1e-9);
    }
}
