//! Small number-theoretic helpers over machine and big integers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Residue of a big integer modulo `p`, in `0..p`.
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Legendre symbol `(a / p)` for odd prime `p`: 0, 1 or -1.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Exponent of the prime `p` in `n` (n nonzero), and the cofactor.
pub fn split_prime(n: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Prime divisors of `|n|` (n nonzero) with multiplicity, by trial division.
pub fn factor(n: &BigInt) -> Vec<(u64, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d = 2u64;
    loop {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let (v, rest) = split_prime(&m, d);
        if v > 0 {
            out.push((d, v));
            m = rest;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        out.push((m.to_u64().expect("prime factor fits in u64"), 1));
    }
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(q: &BigRational) -> BigInt {
    assert!(!q.is_zero(), "square class of zero");
    // q = n/d ~ n*d modulo squares
    let m = q.numer() * q.denom();
    let mut out = if m.sign() == Sign::Minus {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factor(&m) {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    out
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    let (a, _) = split_prime(q.numer(), p);
    let (b, _) = split_prime(q.denom(), p);
    a as i64 - b as i64
}

pub fn is_power_of_two(n: &BigInt) -> bool {
    let n = n.abs();
    !n.is_zero() && (&n & (&n - BigInt::one())).is_zero()
}

/// `C(-1/2, j) = (-1)^j binom(2j, j) / 4^j`, an exact dyadic rational.
pub fn binom_neg_half(j: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        // multiply by (-1/2 - i) / (i + 1)
        num *= -(2 * i as i64 + 1);
        den *= 2 * (i as i64 + 1);
    }
    BigRational::new(num, den)
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd prime")
}
