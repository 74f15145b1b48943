//! Hilbert symbols over Q and local square tests.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{is_prime, legendre, mod_u64, prime_divisors, split_prime};
use crate::error::{Error, Result};

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Place {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "real" | "∞" => Ok(Place::Real),
            _ => {
                let p: u64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
                if !is_prime(p) {
                    return Err(Error::InvalidParameter(format!("{p} is not prime")));
                }
                Ok(Place::Prime(p))
            }
        }
    }
}

/// Integer in the same square class: `n/d ~ n*d`.
fn integral(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn nonzero(q: &BigRational) -> Result<()> {
    if q.is_zero() {
        Err(Error::InvalidParameter("Hilbert symbol of zero".into()))
    } else {
        Ok(())
    }
}

/// `(a, b)_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    nonzero(a)?;
    nonzero(b)?;
    let (a, b) = (integral(a), integral(b));
    Ok(match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_prime(&a, 2);
            let (beta, v) = split_prime(&b, 2);
            let (u, v) = (mod_u64(&u, 8), mod_u64(&v, 8));
            let eps = |x: u64| u64::from(x % 4 == 3);
            let omega = |x: u64| u64::from(x == 3 || x == 5);
            let e = eps(u) * eps(v) + u64::from(alpha) * omega(v) + u64::from(beta) * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_prime(&a, p);
            let (beta, v) = split_prime(&b, p);
            let mut s: i8 = if alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3 {
                -1
            } else {
                1
            };
            if beta % 2 == 1 {
                s *= legendre(mod_u64(&u, p), p);
            }
            if alpha % 2 == 1 {
                s *= legendre(mod_u64(&v, p), p);
            }
            s
        }
    })
}

/// The real place, 2, and every prime dividing a numerator or denominator.
pub fn relevant_places(values: &[BigRational]) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    for q in values {
        primes.extend(prime_divisors(q.numer()));
        primes.extend(prime_divisors(q.denom()));
    }
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

/// Whether a nonzero rational is a square in the completion at `place`.
pub fn is_local_square(q: &BigRational, place: Place) -> bool {
    let a = integral(q);
    match place {
        Place::Real => a.is_positive(),
        Place::Prime(p) => {
            let (e, u) = split_prime(&a, p);
            if e % 2 == 1 {
                return false;
            }
            if p == 2 {
                mod_u64(&u, 8) == 1
            } else {
                legendre(mod_u64(&u, p), p) == 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Primitive solutions of `z² = a x² + b y²` modulo `m`, by brute
    /// force. For odd p with a, b of valuation at most 1, solutions mod p³
    /// decide the symbol; mod 32 suffices at 2 for valuations at most 1.
    fn brute(a: i64, b: i64, p: u64) -> i8 {
        let m: i64 = if p == 2 { 32 } else { (p * p * p) as i64 };
        let p = p as i64;
        let mut any = vec![false; m as usize];
        let mut unit = vec![false; m as usize];
        for z in 0..m {
            let t = (z * z % m) as usize;
            any[t] = true;
            if z % p != 0 {
                unit[t] = true;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let t = (a * x * x + b * y * y).rem_euclid(m) as usize;
                let primitive = x % p != 0 || y % p != 0;
                if (primitive && any[t]) || unit[t] {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn examples() {
        assert_eq!(hilbert_symbol(&q(1), &q(7), Place::Prime(7)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(2), Place::Prime(2)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(3), &q(5), Place::Prime(5)).unwrap(), -1);
        assert!(hilbert_symbol(&q(0), &q(5), Place::Real).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        let vals = [-15, -10, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15];
        for &p in &[2u64, 3, 5] {
            for &a in &vals {
                for &b in &vals {
                    assert_eq!(
                        hilbert_symbol(&q(a), &q(b), Place::Prime(p)).unwrap(),
                        brute(a, b, p),
                        "({a}, {b})_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&q(17), Place::Prime(2)));
        assert!(!is_local_square(&q(5), Place::Prime(2)));
        assert!(is_local_square(&q(-1), Place::Prime(5)));
        assert!(!is_local_square(&q(-1), Place::Prime(7)));
        assert!(is_local_square(&BigRational::new(9.into(), 4.into()), Place::Prime(3)));
        assert!(!is_local_square(&q(-4), Place::Real));
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        fn rat() -> impl Strategy<Value = BigRational> {
            (-200i64..200, 1i64..50)
                .prop_filter("nonzero", |(n, _)| *n != 0)
                .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
        }

        proptest! {
            #[test]
            fn product_formula(a in rat(), b in rat()) {
                let prod: i8 = relevant_places(&[a.clone(), b.clone()])
                    .into_iter()
                    .map(|v| hilbert_symbol(&a, &b, v).unwrap())
                    .product();
                prop_assert_eq!(prod, 1);
            }

            #[test]
            fn bimultiplicative(a in rat(), b in rat(), c in rat()) {
                for v in relevant_places(&[a.clone(), b.clone(), c.clone()]) {
                    let lhs = hilbert_symbol(&a, &(&b * &c), v).unwrap();
                    let rhs = hilbert_symbol(&a, &b, v).unwrap() * hilbert_symbol(&a, &c, v).unwrap();
                    prop_assert_eq!(lhs, rhs);
                    prop_assert_eq!(hilbert_symbol(&a, &-&a, v).unwrap(), 1);
                    prop_assert_eq!(hilbert_symbol(&a, &b, v).unwrap(), hilbert_symbol(&b, &a, v).unwrap());
                }
            }
        }
    }
}
