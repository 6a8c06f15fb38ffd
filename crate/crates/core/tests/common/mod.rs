#![allow(dead_code)]

pub mod lp;

use std::path::PathBuf;

use fdea_core::io::{load_dataset, DatasetFormat};
use fdea_core::{DmuDataset, DmuRecord, Tfn};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load_fixture(name: &str) -> DmuDataset {
    load_dataset(&fixture(name), DatasetFormat::FuzzyCsv).unwrap()
}

/// Dataset from `[lo, mid, hi]` triples, inputs first.
pub fn dataset(m: usize, s: usize, rows: &[Vec<[f64; 3]>]) -> DmuDataset {
    let dmus = rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            assert_eq!(row.len(), m + s);
            let tfns: Vec<Tfn> = row.iter().map(|t| Tfn::new(t[0], t[1], t[2]).unwrap()).collect();
            DmuRecord {
                id: format!("D{}", j + 1),
                label: String::new(),
                inputs: tfns[..m].to_vec(),
                outputs: tfns[m..].to_vec(),
            }
        })
        .collect();
    DmuDataset::new(
        (1..=m).map(|i| format!("x{i}")).collect(),
        (1..=s).map(|r| format!("y{r}")).collect(),
        dmus,
    )
    .unwrap()
}

fn triple(lo: f64, a: f64, b: f64) -> [f64; 3] {
    [lo, lo + a, lo + a + b]
}

/// Positive TFN data. `min_spread` > 0 makes every number strictly fuzzy;
/// a negative value yields crisp data.
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, p: usize, min_spread: f64) -> Vec<Vec<[f64; 3]>> {
    (0..n)
        .map(|_| {
            (0..p)
                .map(|_| {
                    let lo = rng.random_range(1.0..10.0);
                    if min_spread < 0.0 {
                        [lo; 3]
                    } else {
                        triple(lo, rng.random_range(min_spread..3.0), rng.random_range(min_spread..3.0))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_dataset(rng: &mut ChaCha8Rng, min_spread: f64) -> DmuDataset {
    let (m, s, n) = (
        rng.random_range(1..=3),
        rng.random_range(1..=3),
        rng.random_range(2..=6),
    );
    dataset(m, s, &random_rows(rng, n, m + s, min_spread))
}

/// Proptest strategy for positive fuzzy datasets.
pub fn fuzzy_dataset() -> impl Strategy<Value = DmuDataset> {
    (1..=3usize, 1..=3usize, 2..=6usize).prop_flat_map(|(m, s, n)| {
        let cell = (1.0..10.0f64, 0.0..3.0f64, 0.0..3.0f64).prop_map(|(lo, a, b)| triple(lo, a, b));
        prop::collection::vec(prop::collection::vec(cell, m + s), n).prop_map(move |rows| dataset(m, s, &rows))
    })
}

/// Proptest strategy for crisp datasets.
pub fn crisp_dataset() -> impl Strategy<Value = DmuDataset> {
    (1..=3usize, 1..=3usize, 2..=6usize).prop_flat_map(|(m, s, n)| {
        prop::collection::vec(prop::collection::vec(1.0..10.0f64, m + s), n).prop_map(move |rows| {
            dataset(
                m,
                s,
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&x| [x; 3]).collect())
                    .collect::<Vec<_>>(),
            )
        })
    })
}
