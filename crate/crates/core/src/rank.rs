//! Exact matrix rank over ℚ and over prime fields.

use num_bigint::BigInt;

/// Rank over ℚ by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` with checked arithmetic and restarts with big integers if
/// an intermediate minor overflows.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(m) {
        Some(r) => r,
        None => bareiss_big(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero pivot keeps the minors small
        let pivot = (rank..rows)
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let pv = m[rank][col];
        for i in rank + 1..rows {
            let lead = m[i][col];
            for j in col + 1..cols {
                let a = m[i][j].checked_mul(pv)?;
                let b = lead.checked_mul(m[rank][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][col] = 0;
        }
        prev = pv;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for i in rank + 1..rows {
            let lead = m[i][col].clone();
            for j in col + 1..cols {
                let v = (&m[i][j] * &pv - &lead * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = zero.clone();
        }
        prev = pv;
        rank += 1;
    }
    rank
}

/// Rank over GF(p) by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u32) -> usize {
    let p = p as i64;
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect())
        .collect();
    let nrows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][col], p);
        for j in col..cols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for i in rank + 1..nrows {
            let f = m[i][col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(p);
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, a);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank_rational(&m), 2);
        // mod 2 the middle row vanishes and the outer rows agree
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![0, 0]]), 0);
    }

    #[test]
    fn characteristic_matters() {
        // determinant 2
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn big_integer_fallback_agrees() {
        // entries near i64::MAX overflow the i128 products
        let big = i64::MAX / 3;
        let m = vec![vec![big, big - 1, 7], vec![big - 5, big, 11], vec![3, 5, big]];
        assert!(bareiss_i128(m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()).is_none());
        assert_eq!(rank_rational(&m), 3);
    }
}
