//! Exhaustive generators for small instance families, used by the test
//! suites and benchmarks.

use crate::lattice::{general_config, hexagon_config, horizontal_cut_config, vertical_cut_config, Config};

/// Strictly increasing `k`-subsets of `1..=n`.
pub fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Hexagon instances on grids up to `max_m × max_n`.
pub fn hexagons(max_m: u32, max_n: u32) -> Vec<Config> {
    let mut out = Vec::new();
    for c in 1..=max_m.min(max_n) {
        for a in 0..=max_m - c {
            for b in 1..=max_n.saturating_sub(c) {
                out.push(hexagon_config(a, b, c).unwrap());
            }
        }
    }
    out
}

/// Every horizontal-cut instance with `m ≤ max_m`, `n ≤ max_n`.
pub fn horizontal_cuts(max_m: u32, max_n: u32) -> Vec<Config> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_m.min(n) {
            for a in 0..=max_m - k {
                for b in subsets(n, k) {
                    out.push(horizontal_cut_config(a, &b, n).unwrap());
                }
            }
        }
    }
    out
}

/// Every vertical-cut instance with `k ≤ max_k`, `ℓ ≤ max_l`, `m ≤ max_m`.
pub fn vertical_cuts(max_k: u32, max_l: u32, max_m: u32) -> Vec<Config> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for l in 0..=max_l {
            for m in 1..=max_m {
                for a in subsets(k + l, k) {
                    for b in subsets(k + l, k) {
                        out.push(vertical_cut_config(&a, &b, k, l, m).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Column-multiplicity vectors of length `n` with entries `≤ m` summing to `k`.
pub fn compositions(n: u32, k: u32, m: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k.min(m) {
        for mut rest in compositions(n - 1, k - first, m) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every general-layout instance with `m ≤ max_m`, `n ≤ max_n`, `k ≤ max_k`
/// that the constructor accepts.
pub fn generals(max_m: u32, max_n: u32, max_k: u32) -> Vec<Config> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            for k in 1..=max_k {
                for a in compositions(n, k, m) {
                    for b in compositions(n, k, m) {
                        if let Ok(c) = general_config(&a, &b, m) {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}
