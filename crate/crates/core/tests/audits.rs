use std::collections::BTreeMap;

use packlab::graphs::{Host, PackingSet, WindowSpec};
use packlab::packing::{constrained_max, enumerate_packings, Constraint, EnumOptions, SolverConfig, Target};

fn rho(w: WindowSpec) -> usize {
    constrained_max(&w.into(), &Constraint::new(), &SolverConfig::default()).unwrap().optimum.unwrap()
}

fn column_counts(s: &PackingSet) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    for c in &s.cells {
        *counts.entry(c.x).or_insert(0) += 1;
    }
    counts
}

/// Two of three consecutive counts equal to `k` force the third to be at most `k`.
fn triple_ok(counts: &BTreeMap<i64, usize>, j: i64, k: usize) -> bool {
    let t: Vec<usize> = (j..j + 3).map(|x| counts.get(&x).copied().unwrap_or(0)).collect();
    let hits = t.iter().filter(|&&v| v == k).count();
    hits < 2 || t.iter().all(|&v| v <= k)
}

#[test]
fn strip_partitions_bound_the_triangle() {
    for n in [11, 12] {
        let whole = rho(WindowSpec::full(n).unwrap());
        let by5 = rho(WindowSpec::full(n - 5).unwrap()) + rho(WindowSpec::strip(n, 5).unwrap());
        let by10 = rho(WindowSpec::full(n - 10).unwrap()) + rho(WindowSpec::strip(n, 10).unwrap());
        assert!(whole <= by5 && whole <= by10, "n={n}: {whole} {by5} {by10}");
    }
    assert_eq!(rho(WindowSpec::full(12).unwrap()), 17);
}

#[test]
fn consecutive_column_counts_in_maximum_strip_packings() {
    let cfg = SolverConfig::default();
    for k in [1usize, 2] {
        let ell = 5 * k as i64;
        for n in ell.max(5)..=16 {
            let w = WindowSpec::strip(n, ell).unwrap();
            let e = enumerate_packings(&w.into(), &Constraint::new(), Target::Maximum, &EnumOptions::default(), &cfg)
                .unwrap();
            assert!(e.count > 0);
            // columns 1..=n-ell+1 have full height
            for s in &e.solutions {
                let counts = column_counts(s);
                for j in 1..=n - ell - 1 {
                    assert!(triple_ok(&counts, j, k), "n={n} ell={ell} j={j} {counts:?}");
                }
            }
        }
    }
}

#[test]
fn consecutive_column_counts_in_all_grid_packings() {
    let cfg = SolverConfig::default();
    for k in [1usize, 2] {
        let host = Host::Grid { rows: 5 * k as i64, cols: 3 };
        let e = enumerate_packings(&host, &Constraint::new(), Target::Any, &EnumOptions::default(), &cfg).unwrap();
        let mut hits = 0;
        for s in &e.solutions {
            let counts = column_counts(s);
            assert!(triple_ok(&counts, 1, k), "k={k} {counts:?}");
            hits += usize::from((1..=3).filter(|x| counts.get(x) == Some(&k)).count() >= 2);
        }
        assert!(hits > 0);
    }
}

#[test]
fn short_prefix_in_top_five_rows_loses_a_cell() {
    let cfg = SolverConfig::default();
    for n in 5..=30 {
        let host: Host = WindowSpec::strip(n, 5).unwrap().into();
        for i in 1..=n - 4 {
            let c = Constraint::new().region(WindowSpec::strip_cols(n, 5, 1, i).unwrap(), 0, i as usize - 1);
            let best = constrained_max(&host, &c, &cfg).unwrap().optimum.unwrap();
            assert!(best < n as usize - 1, "n={n} i={i} best={best}");
        }
    }
}

#[test]
fn sparse_column_block_in_ten_row_strip_loses_a_cell() {
    let cfg = SolverConfig::default();
    for n in [27i64, 28] {
        let host: Host = WindowSpec::strip(n, 10).unwrap().into();
        let target = 2 * n as usize - 8;
        for i in 0..=2 {
            for end in 12..=n - 12 {
                let j = end - i;
                let c = Constraint::new().region(WindowSpec::strip_cols(n, 10, j, end).unwrap(), 0, 2 * i as usize + 1);
                let best = constrained_max(&host, &c, &cfg).unwrap().optimum.unwrap();
                assert!(best < target, "n={n} i={i} j={j} best={best}");
            }
        }
        assert_eq!(rho(WindowSpec::strip(n, 10).unwrap()), target);
    }
}
