//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this workspace is exact. The scalar type [`K`] is a
//! tagged value that is either a `BigRational` or an element of F_p for a
//! runtime-chosen prime `p`. Mixing scalars from different fields is a
//! programming error and panics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Which coefficient field a session computes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The rational numbers, arbitrary precision.
    Rational,
    /// The prime field F_p. `p` must be an odd prime below 2^31.
    Fp(u64),
}

impl FieldKind {
    pub fn zero(&self) -> K {
        match self {
            FieldKind::Rational => K::Q(BigRational::zero()),
            FieldKind::Fp(p) => K::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> K {
        match self {
            FieldKind::Rational => K::Q(BigRational::one()),
            FieldKind::Fp(p) => K::Fp { p: *p, v: 1 },
        }
    }

    pub fn from_i64(&self, n: i64) -> K {
        match self {
            FieldKind::Rational => K::Q(BigRational::from(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                K::Fp { p: *p, v: m }
            }
        }
    }

    /// Parse "a" or "a/b" into a scalar. In F_p the denominator is inverted.
    pub fn parse_ratio(&self, s: &str) -> Result<K, String> {
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        match self {
            FieldKind::Rational => Ok(K::Q(BigRational::new(n, d))),
            FieldKind::Fp(p) => {
                let pm = BigInt::from(*p);
                let nn = ((n % &pm) + &pm) % &pm;
                let dd = ((d % &pm) + &pm) % &pm;
                let nv: u64 = nn.try_into().unwrap();
                let dv: u64 = dd.try_into().unwrap();
                if dv == 0 {
                    return Err(format!("denominator of {s:?} vanishes mod {p}"));
                }
                let inv = mod_inv(dv, *p).ok_or_else(|| format!("{dv} not invertible mod {p}"))?;
                Ok(K::Fp { p: *p, v: mod_mul(nv, inv, *p) })
            }
        }
    }

    /// Validate the field choice (primality for F_p).
    pub fn validate(&self) -> Result<(), String> {
        match self {
            FieldKind::Rational => Ok(()),
            FieldKind::Fp(p) => {
                if *p < 2 || *p >= (1 << 31) {
                    return Err(format!("modulus {p} out of range (need 2 <= p < 2^31)"));
                }
                if !is_prime(*p) {
                    return Err(format!("modulus {p} is not prime"));
                }
                Ok(())
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
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

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Extended Euclid on (a mod p, p).
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// An exact scalar: a rational number or an element of a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum K {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl K {
    pub fn field(&self) -> FieldKind {
        match self {
            K::Q(_) => FieldKind::Rational,
            K::Fp { p, .. } => FieldKind::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            K::Q(r) => r.is_zero(),
            K::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            K::Q(r) => r.is_one(),
            K::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, rhs: &K) -> K {
        match (self, rhs) {
            (K::Q(a), K::Q(b)) => K::Q(a + b),
            (K::Fp { p, v }, K::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed prime fields");
                K::Fp { p: *p, v: (v + w) % p }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, rhs: &K) -> K {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> K {
        match self {
            K::Q(a) => K::Q(-a),
            K::Fp { p, v } => K::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn mul(&self, rhs: &K) -> K {
        match (self, rhs) {
            (K::Q(a), K::Q(b)) => K::Q(a * b),
            (K::Fp { p, v }, K::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed prime fields");
                K::Fp { p: *p, v: mod_mul(*v, *w, *p) }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn inv(&self) -> Option<K> {
        match self {
            K::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(K::Q(a.recip()))
                }
            }
            K::Fp { p, v } => mod_inv(*v, *p).map(|w| K::Fp { p: *p, v: w }),
        }
    }

    pub fn div(&self, rhs: &K) -> K {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    /// Render as "a" or "a/b" (reduced) for reports and JSON output.
    pub fn to_ratio_string(&self) -> String {
        match self {
            K::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            K::Fp { v, .. } => format!("{v}"),
        }
    }

    /// Total-order key used to canonicalize output (rationals by value).
    pub fn is_negative_display(&self) -> bool {
        match self {
            K::Q(r) => r.is_negative(),
            K::Fp { .. } => false,
        }
    }
}

impl fmt::Debug for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio_string())
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_round_trip() {
        let f = FieldKind::Rational;
        let a = f.parse_ratio("3/4").unwrap();
        let b = f.parse_ratio("-1/6").unwrap();
        let s = a.add(&b);
        assert_eq!(s.to_ratio_string(), "7/12");
        let p = a.mul(&b);
        assert_eq!(p.to_ratio_string(), "-1/8");
        assert_eq!(a.div(&a).to_ratio_string(), "1");
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldKind::Fp(10007);
        f.validate().unwrap();
        let a = f.from_i64(-3);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        let half = f.parse_ratio("1/2").unwrap();
        assert!(half.add(&half).is_one());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(FieldKind::Fp(10006).validate().is_err());
        assert!(FieldKind::Fp(2).validate().is_ok());
    }
}
