//! Fixed enumerations of `Q`, `Q^2` and `Q^n`.
//!
//! The line is `q(0) = 0`, `q(2k - 1) = cw(k)`, `q(2k) = -cw(k)` with `cw`
//! the Calkin-Wilf sequence. The plane is enumerated by Cantor pairing of
//! line indices.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Stern's diatomic sequence.
pub fn fusc(mut n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while n > 0 {
        if n & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    b
}

/// `cw(k) = fusc(k) / fusc(k + 1)`, `k >= 1`.
pub fn cw(k: u64) -> Rational {
    assert!(k >= 1, "cw is indexed from 1");
    Rational::new(fusc(k), fusc(k + 1)).expect("fusc(k + 1) > 0")
}

/// Position of a positive rational in the Calkin-Wilf sequence.
pub fn cw_index(x: &Rational) -> Result<BigUint> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::InvalidParameter(format!("{x} is not positive")));
    }
    let mut a = x.numer().magnitude().clone();
    let mut b = x.denom().magnitude().clone();
    // runs of equal steps from the node up to the root, as (count, right)
    let mut runs: Vec<(BigUint, bool)> = Vec::new();
    let one = BigUint::one();
    while !(a.is_one() && b.is_one()) {
        if a > b {
            let k = (&a - &one) / &b;
            a -= &k * &b;
            runs.push((k, true));
        } else {
            let k = (&b - &one) / &a;
            b -= &k * &a;
            runs.push((k, false));
        }
    }
    let mut index = BigUint::one();
    for (k, right) in runs.into_iter().rev() {
        let k: usize = k.try_into().map_err(|_| Error::TooLarge {
            size: usize::MAX,
            max: usize::MAX,
        })?;
        index <<= k;
        if right {
            index += (BigUint::one() << k) - 1u32;
        }
    }
    Ok(index)
}

/// `q(i)`.
pub fn line_point(i: u64) -> Rational {
    if i == 0 {
        Rational::zero()
    } else if i % 2 == 1 {
        cw(i.div_ceil(2))
    } else {
        -cw(i / 2)
    }
}

/// The `i` with `q(i) = x`.
pub fn line_index(x: &Rational) -> BigUint {
    if x.is_zero() {
        BigUint::zero()
    } else if x.is_negative() {
        cw_index(&-x.clone()).expect("positive") * 2u32
    } else {
        cw_index(x).expect("positive") * 2u32 - 1u32
    }
}

fn triangle(w: u64) -> u64 {
    w * (w + 1) / 2
}

/// Cantor pairing `pi(a, b) = (a + b)(a + b + 1) / 2 + b`.
pub fn pair(a: u64, b: u64) -> u64 {
    triangle(a + b) + b
}

/// Inverse of [`pair`].
pub fn unpair(n: u64) -> (u64, u64) {
    // largest w with T(w) <= n
    let mut w = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while triangle(w) > n {
        w -= 1;
    }
    while triangle(w + 1) <= n {
        w += 1;
    }
    let b = n - triangle(w);
    (w - b, b)
}

/// Line indices of `p_n`.
pub fn grid_indices(n: u64) -> (u64, u64) {
    unpair(n)
}

/// `p_n = (q(a), q(b))` with `(a, b) = unpair(n)`.
pub fn grid_point(n: u64) -> (Rational, Rational) {
    let (a, b) = grid_indices(n);
    (line_point(a), line_point(b))
}

/// `q` applied to every index of a tuple.
pub fn tuple_point(indices: &[u64]) -> Vec<Rational> {
    indices.iter().map(|&i| line_point(i)).collect()
}

/// Exact line indices of a tuple of rationals.
pub fn tuple_indices(point: &[Rational]) -> Vec<BigUint> {
    point.iter().map(line_index).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn calkin_wilf_prefix() {
        let got: Vec<String> = (1..=7).map(|k| cw(k).to_string()).collect();
        assert_eq!(got, ["1/1", "1/2", "2/1", "1/3", "3/2", "2/3", "3/1"]);
    }

    #[test]
    fn line_examples() {
        assert_eq!(line_point(0), r("0"));
        assert_eq!(line_point(2), r("-1"));
        assert_eq!(line_point(5), r("2"));
        for i in 0..2000 {
            assert_eq!(line_index(&line_point(i)), big(i));
        }
    }

    #[test]
    fn cw_index_handles_long_runs() {
        let x = r("1000/1");
        let i = cw_index(&x).unwrap();
        assert_eq!(i, (BigUint::one() << 1000usize) - 1u32);
    }

    #[test]
    fn pairing_round_trip() {
        for n in 0..10_000 {
            let (a, b) = unpair(n);
            assert_eq!(pair(a, b), n);
        }
        assert_eq!(unpair(0), (0, 0));
    }
}
