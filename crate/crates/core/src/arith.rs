//! Small exact-arithmetic helpers shared by the algebraic modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gcd_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(0, |a, b| a.gcd(&b))
}

pub fn lcm_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |a, b| a.lcm(&b))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Integer polynomial, coefficients in increasing degree.
pub type Poly = Vec<i64>;

pub fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial; `None` when the remainder is nonzero.
pub fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<Poly> {
    let b = poly_trim(b.to_vec());
    assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
    let mut rem = poly_trim(a.to_vec());
    if rem.len() < b.len() {
        return if rem.iter().all(|&c| c == 0) { Some(vec![0]) } else { None };
    }
    let mut quot = vec![0; rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1];
        quot[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Poly {
    let mut p = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d)).expect("cyclotomic factor");
        }
    }
    p
}

/// Characteristic polynomial `det(x·I − A)` by Faddeev–LeVerrier.
pub fn charpoly(a: &[Vec<i64>]) -> Poly {
    let n = a.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s += a[i][l] as i128 * m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let mut tr = 0i128;
        for i in 0..n {
            for l in 0..n {
                tr += a[i][l] as i128 * m[l][i];
            }
        }
        debug_assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs.into_iter().map(|c| i64::try_from(c).expect("charpoly overflow")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn charpoly_rotation() {
        // rotation by a quarter turn: x^2 + 1
        assert_eq!(charpoly(&[vec![0, -1], vec![1, 0]]), vec![1, 0, 1]);
        assert_eq!(charpoly(&[vec![2, 0], vec![0, 3]]), vec![6, -5, 1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(8, 3), 56);
    }
}
