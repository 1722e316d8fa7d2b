//! Evaluation of partition functions over a prime field `Z/p`, for
//! instances too large to hold symbolically.
//!
//! A vanishing cell form `x_i + y_j ≡ 0` is reported as `Err(Pole)` naming the
//! cell, so callers can resample just that coordinate.

use std::collections::HashMap;

use crate::algebra::modp;
use crate::lattice::{for_each_system, Config, GridPoint};

/// The cell `(row, col)` whose form `x_row + y_col` vanished.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pole {
    pub row: u32,
    pub col: u32,
}

pub type FieldResult<T> = std::result::Result<T, Pole>;

/// Values for `x_1..x_m` and `y_1..y_n` in `Z/p`; index `i − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub p: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl Assignment {
    pub fn x(&self, i: u32) -> u64 {
        self.x[i as usize - 1]
    }

    pub fn y(&self, j: u32) -> u64 {
        self.y[j as usize - 1]
    }

    /// `1 / (x_i + y_j)`.
    pub fn cell_inverse(&self, cell: GridPoint) -> FieldResult<u64> {
        let v = modp::add(self.x(cell.row), self.y(cell.col), self.p);
        modp::inv(v, self.p).ok_or(Pole { row: cell.row, col: cell.col })
    }

    /// Every cell form of the `m × n` grid is nonzero.
    pub fn first_pole(&self, m: u32, n: u32) -> Option<Pole> {
        (1..=m).flat_map(|i| (1..=n).map(move |j| GridPoint::new(i, j))).find_map(|c| self.cell_inverse(c).err())
    }
}

/// Weighted path sums from `start` to every cell up to `bound`.
pub fn path_sums(a: &Assignment, start: GridPoint, bound: GridPoint) -> FieldResult<HashMap<GridPoint, u64>> {
    let p = a.p;
    let mut values = HashMap::new();
    for r in (bound.row..=start.row).rev() {
        for c in start.col..=bound.col {
            let cell = GridPoint::new(r, c);
            let mut f = if cell == start { 1 } else { 0 };
            if c > start.col {
                f = modp::add(f, values[&GridPoint::new(r, c - 1)], p);
            }
            if r < start.row {
                f = modp::add(f, values[&GridPoint::new(r + 1, c)], p);
            }
            values.insert(cell, modp::mul(f, a.cell_inverse(cell)?, p));
        }
    }
    Ok(values)
}

/// `F_{s,k}` for start `(m, 1)` by the recurrence.
pub fn single_dp(a: &Assignment, m: u32, s: u32, k: u32) -> FieldResult<u64> {
    let sums = path_sums(a, GridPoint::new(m, 1), GridPoint::new(s, k))?;
    Ok(sums[&GridPoint::new(s, k)])
}

/// `F_{s,k} = [t^{k−1}] ∏_{j=s}^{m} (x_j − t)^{-1} mod P_k(t)` in `Z/p`.
pub fn single_modular(a: &Assignment, m: u32, s: u32, k: u32) -> FieldResult<u64> {
    let p = a.p;
    let k = k as usize;
    // P_k(t) = ∏ (t + y_j), coefficients low to high.
    let mut pk = vec![1u64];
    for j in 1..=k as u32 {
        let mut next = vec![0u64; pk.len() + 1];
        for (i, &c) in pk.iter().enumerate() {
            next[i + 1] = modp::add(next[i + 1], c, p);
            next[i] = modp::add(next[i], modp::mul(c, a.y(j), p), p);
        }
        pk = next;
    }
    let eval = |poly: &[u64], x: u64| poly.iter().rev().fold(0u64, |acc, &c| modp::add(modp::mul(acc, x, p), c, p));
    let mut q = vec![0u64; k];
    q[0] = 1;
    for j in s..=m {
        let x = a.x(j);
        let px = eval(&pk, x);
        if px == 0 {
            let col = (1..=k as u32).find(|&c| modp::add(x, a.y(c), p) == 0).unwrap_or(1);
            return Err(Pole { row: j, col });
        }
        // q·(x − t)^{-1} = [P(x)·q(t) − q(x)·P(t)] / ((x − t)·P(x))
        let qx = eval(&q, x);
        let mut sc: Vec<u64> = (0..=k).map(|i| if i < k { modp::mul(q[i], px, p) } else { 0 }).collect();
        for (i, &c) in pk.iter().enumerate() {
            sc[i] = modp::sub(sc[i], modp::mul(qx, c, p), p);
        }
        let inv_px = modp::inv(px, p).expect("nonzero");
        let mut carry = sc[k];
        for i in (0..k).rev() {
            q[i] = modp::mul(modp::sub(0, carry, p), inv_px, p);
            carry = modp::add(modp::mul(carry, x, p), sc[i], p);
        }
    }
    Ok(q[k - 1])
}

/// `u_ij = Σ_{γ: A_i → B_j} w(γ)` in `Z/p`.
pub fn transfer_matrix(c: &Config, a: &Assignment) -> FieldResult<Vec<Vec<u64>>> {
    let top_right = GridPoint::new(1, c.n);
    c.a.iter()
        .map(|&ai| {
            let sums = path_sums(a, ai, top_right)?;
            Ok(c.b.iter().map(|bj| sums.get(bj).copied().unwrap_or(0)).collect())
        })
        .collect()
}

/// `det(u_ij)` in `Z/p`.
pub fn lgv(c: &Config, a: &Assignment) -> FieldResult<u64> {
    if c.k() == 0 {
        return Ok(1);
    }
    Ok(modp::det(transfer_matrix(c, a)?, a.p))
}

/// The cell lists of every system of `c`, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct SystemCells {
    systems: Vec<Vec<GridPoint>>,
}

impl SystemCells {
    pub fn enumerate(c: &Config) -> Self {
        let mut systems = Vec::new();
        for_each_system(c, |paths| systems.push(paths.iter().flatten().copied().collect()));
        SystemCells { systems }
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    /// `Σ_Υ ∏_{cells} 1/(x_i + y_j)` in `Z/p`.
    pub fn eval(&self, a: &Assignment) -> FieldResult<u64> {
        let mut inv: HashMap<GridPoint, u64> = HashMap::new();
        let mut total = 0u64;
        for sys in &self.systems {
            let mut w = 1u64;
            for &cell in sys {
                let v = match inv.get(&cell) {
                    Some(&v) => v,
                    None => {
                        let v = a.cell_inverse(cell)?;
                        inv.insert(cell, v);
                        v
                    }
                };
                w = modp::mul(w, v, a.p);
            }
            total = modp::add(total, w, a.p);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::hexagon_config;

    fn assignment(m: u32, n: u32, seed: u64) -> Assignment {
        use rand::{Rng, SeedableRng};
        let p = modp::DEFAULT_PRIME;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Assignment {
            p,
            x: (0..m).map(|_| rng.gen_range(0..p)).collect(),
            y: (0..n).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    #[test]
    fn dp_and_modular_agree_over_the_field() {
        for d in 1..=6 {
            let a = assignment(d, d, d as u64);
            for s in 1..=d {
                for k in 1..=d {
                    assert_eq!(single_dp(&a, d, s, k), single_modular(&a, d, s, k), "d={d} s={s} k={k}");
                }
            }
        }
    }

    #[test]
    fn lgv_matches_enumeration() {
        let c = hexagon_config(2, 2, 2).unwrap();
        let a = assignment(4, 4, 7);
        assert_eq!(lgv(&c, &a).unwrap(), SystemCells::enumerate(&c).eval(&a).unwrap());
    }

    #[test]
    fn pole_names_the_cell() {
        let p = modp::DEFAULT_PRIME;
        let a = Assignment { p, x: vec![1, 5], y: vec![p - 5, 3] };
        assert_eq!(a.first_pole(2, 2), Some(Pole { row: 2, col: 1 }));
    }
}
