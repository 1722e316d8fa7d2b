//! Exact determinants of small matrices over `Z`, `Z[vars]` and the
//! rational-function field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

/// Largest matrix handed to [`det_ratfn`] unless the caller raises it.
pub const DEFAULT_DET_BOUND: usize = 8;

fn check_square<T>(m: &[Vec<T>]) -> Result<()> {
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(Error::Input("matrix is not square".into()));
    }
    Ok(())
}

/// Fraction-free Gaussian elimination (Bareiss). All divisions are exact.
pub fn det_poly(m: &[Vec<Poly>]) -> Result<Poly> {
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Bareiss over the integers.
pub fn det_bigint(m: &[Vec<BigInt>]) -> Result<BigInt> {
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<RatFn>]) -> Result<RatFn> {
    check_square(m)?;
    fn go(m: &[Vec<RatFn>], rows: &[usize], cols: &[usize]) -> RatFn {
        if rows.is_empty() {
            return RatFn::one();
        }
        let r = rows[0];
        let mut terms = Vec::with_capacity(cols.len());
        for (idx, &c) in cols.iter().enumerate() {
            if m[r][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = go(m, &rows[1..], &rest);
            let t = &m[r][c] * &minor;
            terms.push(if idx % 2 == 0 { t } else { -t });
        }
        RatFn::sum(terms.iter())
    }
    let idx: Vec<usize> = (0..m.len()).collect();
    Ok(go(m, &idx, &idx))
}

/// Determinant of a rational-function matrix of size at most
/// [`DEFAULT_DET_BOUND`]. Sizes up to 4 use cofactor expansion; larger ones
/// clear each row's denominator and run Bareiss.
pub fn det_ratfn(m: &[Vec<RatFn>]) -> Result<RatFn> {
    det_ratfn_bounded(m, DEFAULT_DET_BOUND)
}

pub fn det_ratfn_bounded(m: &[Vec<RatFn>], bound: usize) -> Result<RatFn> {
    check_square(m)?;
    if m.len() > bound {
        return Err(Error::Capacity { what: "determinant size", size: m.len(), bound });
    }
    if m.len() <= 4 {
        return Ok(det_cofactor(m)?.reduce());
    }
    let mut scale = RatFn::one();
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(m.len());
    for row in m {
        let (nums, inv_den) = RatFn::over_common_denominator(row);
        scale = &scale * &inv_den;
        rows.push(nums);
    }
    let d = det_poly(&rows)?;
    Ok((&RatFn::from_poly(d) * &scale).reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarId;

    fn v(i: u32) -> RatFn {
        RatFn::var(VarId::x(i))
    }

    #[test]
    fn identity_has_unit_determinant() {
        let id = vec![vec![RatFn::one(), RatFn::zero()], vec![RatFn::zero(), RatFn::one()]];
        assert_eq!(det_ratfn(&id).unwrap(), RatFn::one());
    }

    #[test]
    fn two_by_two_monomials() {
        let m = vec![vec![v(1), v(2)], vec![v(3), v(4)]];
        let expect = &(&v(1) * &v(4)) - &(&v(2) * &v(3));
        assert_eq!(det_ratfn(&m).unwrap(), expect);
    }

    #[test]
    fn capacity_error_over_bound() {
        let m = vec![vec![RatFn::one(); 3]; 3];
        assert!(matches!(det_ratfn_bounded(&m, 2), Err(Error::Capacity { .. })));
    }

    #[test]
    fn bareiss_matches_cofactor_on_five_by_five() {
        let m: Vec<Vec<RatFn>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        let num = Poly::var(VarId::x(j + 1)) + Poly::constant((i * j) as i64 + 1);
                        RatFn::new(num, &Poly::sum_of(VarId::x(1), VarId::y(i % 2 + 1))).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(det_ratfn(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn integer_bareiss() {
        let m: Vec<Vec<BigInt>> =
            [[2, 0, 1], [1, 3, 2], [1, 1, 1]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(det_bigint(&m).unwrap(), BigInt::from(2 * (3 - 2) + (1 - 3)));
    }
}
