//! Exact square linear systems by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solves `a · x = b` exactly. Returns `None` when `a` is singular.
///
/// Each row is first scaled by the lcm of its denominators so elimination
/// runs on integers; every Bareiss division is exact.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    debug_assert!(a.iter().all(|r| r.len() == n));

    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(rhs))
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn mat(rows: &[&[Rational]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn solves_kkt_system_of_binary_example() {
        // [4 -1 -1; -1 1 -1; 1 1 0] (t1, t2, mu) = (0, 0, 1)
        let a = mat(&[&[int(4), int(-1), int(-1)], &[int(-1), int(1), int(-1)], &[int(1), int(1), int(0)]]);
        let x = solve(&a, &[int(0), int(0), int(1)]).unwrap();
        assert_eq!(x, vec![ratio(2, 7), ratio(5, 7), ratio(3, 7)]);
    }

    #[test]
    fn needs_row_swap() {
        let a = mat(&[&[int(0), int(1)], &[int(1), int(0)]]);
        assert_eq!(solve(&a, &[int(3), int(5)]).unwrap(), vec![int(5), int(3)]);
    }

    #[test]
    fn rational_entries() {
        let a = mat(&[&[ratio(1, 2), ratio(1, 3)], &[ratio(1, 4), ratio(-2, 5)]]);
        let x = solve(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1], int(1));
        assert_eq!(&a[1][0] * &x[0] + &a[1][1] * &x[1], int(2));
    }

    #[test]
    fn singular_is_none() {
        let a = mat(&[&[int(1), int(1), int(-1)], &[int(1), int(1), int(-1)], &[int(1), int(1), int(0)]]);
        assert_eq!(solve(&a, &[int(0), int(0), int(1)]), None);
    }

    #[test]
    fn random_systems_satisfy_equations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..6);
            let a: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| ratio(rng.gen_range(-4..5), rng.gen_range(1..4))).collect())
                .collect();
            let b: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-3..4))).collect();
            if let Some(x) = solve(&a, &b) {
                for (row, rhs) in a.iter().zip(&b) {
                    let lhs: Rational = row.iter().zip(&x).map(|(u, v)| u * v).sum();
                    assert_eq!(&lhs, rhs);
                }
            }
        }
    }
}
