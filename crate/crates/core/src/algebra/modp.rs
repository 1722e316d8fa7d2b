//! Arithmetic in the prime field `Z/p` for `p < 2^63`.

/// Largest prime below `2^31`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `None` for zero.
pub fn inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Determinant of a square matrix over `Z/p` by Gaussian elimination.
pub fn det(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = sub(0, det, p);
        }
        det = mul(det, m[col][col], p);
        let inv_piv = inv(m[col][col], p).unwrap();
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let f = mul(m[r][col], inv_piv, p);
            for c in col..n {
                let v = mul(f, m[col][c], p);
                m[r][c] = sub(m[r][c], v, p);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_largest_below_2_31() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(DEFAULT_PRIME < 1 << 31);
        assert!(((DEFAULT_PRIME + 1)..(1 << 31)).all(|n| !is_prime(n)));
    }

    #[test]
    fn inverse_round_trip() {
        let p = DEFAULT_PRIME;
        for a in [1u64, 2, 12345, p - 1] {
            assert_eq!(mul(a, inv(a, p).unwrap(), p), 1);
        }
        assert_eq!(inv(0, p), None);
    }

    #[test]
    fn small_determinant() {
        let p = 101;
        assert_eq!(det(vec![vec![1, 2], vec![3, 4]], p), sub(4, 6, p));
        assert_eq!(det(vec![vec![0, 1], vec![1, 0]], p), p - 1);
        assert_eq!(det(vec![], p), 1);
    }
}
