//! Exact rational helpers shared by every module.
//!
//! Everything in this crate is computed over `BigRational`; there is no
//! floating point anywhere on the certified path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Formats as `"n"` for integers and `"num/den"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of i64 range")
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation; `None` for zero.
pub fn vp(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
}

/// Residue of a p-integral rational in `{0, .., p-1}`.
pub fn residue_mod_p(x: &Q, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    assert!(!den.is_zero(), "residue of a non-integral rational");
    let num = num.to_u64().unwrap();
    let den = den.to_u64().unwrap();
    num * inv_mod(den, p) % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, Fermat
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rising factorial `a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Q, k: u64) -> Q {
    let mut acc = Q::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += Q::one();
    }
    acc
}

/// `(2k-1)!!` with the convention `(-1)!! = 1`.
pub fn double_factorial_odd(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = 1u64;
    while j < 2 * k {
        acc *= BigInt::from(j);
        j += 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn pow_i(base: i64, exp: u32) -> Q {
    qi(base).pow(exp as i32)
}

/// Integer power of a rational, negative exponents allowed.
pub fn pow_q(base: &Q, exp: i64) -> Q {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Dense exact matrix helpers.
pub type QMatrix = Vec<Vec<Q>>;

/// Bareiss fraction-free determinant of an integer matrix.
pub fn det_int(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect();
    let mut inv: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &s;
            inv[col][j] = &inv[col][j] * &s;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(det_int(&m), BigInt::from(6));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], qf(1, 2));
        assert_eq!(inv[0][1], qf(-1, 6));
        assert_eq!(inv[1][1], qf(1, 3));
        assert!(inverse(&[vec![1, 1], vec![1, 1]]).is_none());
        assert_eq!(det_int(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn valuations_and_residues() {
        assert_eq!(vp(&qf(50, 3), 5), Some(2));
        assert_eq!(vp(&qf(3, 25), 5), Some(-2));
        assert_eq!(vp(&qi(0), 5), None);
        assert_eq!(residue_mod_p(&qf(3, 4), 5), 2);
        assert_eq!(residue_mod_p(&qi(-1), 7), 6);
    }

    #[test]
    fn rising_factorials() {
        assert_eq!(pochhammer(&qf(1, 2), 3), qf(15, 8));
        assert_eq!(pochhammer(&qi(0), 2), qi(0));
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        assert_eq!(double_factorial_odd(0), BigInt::from(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(fmt_q(&qf(-2, 6)), "-1/3");
        assert_eq!(parse_q("5/10"), Some(qf(1, 2)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("1/0"), None);
    }
}
