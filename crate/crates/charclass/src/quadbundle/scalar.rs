//! Exact scalars over Q or an odd prime field, and dense polynomials in t.
//!
//! All arithmetic goes through a [`FieldSpec`] context so prime-field
//! elements never carry their modulus around. Mixing scalars from different
//! fields is a programming error and panics.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficient field: the rationals, or F_p with p an odd prime.
/// Characteristic 2 is excluded throughout (the form calculus divides by 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

/// An exact scalar; interpret through the owning [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Prime fields are capped at 31-bit moduli; that keeps signed
    /// conversions safe and the primality trial division instant.
    pub fn fp(p: u64) -> Result<FieldSpec> {
        if p >= 1 << 31 {
            return Err(Error::contract(format!(
                "prime-field modulus {p} exceeds the supported bound 2^31"
            )));
        }
        if !is_odd_prime(p) {
            return Err(Error::contract(format!(
                "coefficient field must have odd prime characteristic, got p = {p}"
            )));
        }
        Ok(FieldSpec::Fp(p))
    }

    pub fn name(&self) -> String {
        match self {
            FieldSpec::Q => "Q".to_string(),
            FieldSpec::Fp(p) => format!("F{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::zero()),
            FieldSpec::Fp(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::one()),
            FieldSpec::Fp(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldSpec::Fp(p) => Scalar::Fp((v.rem_euclid(*p as i64)) as u64),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::contract("zero denominator"));
        }
        match self {
            FieldSpec::Q => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Fp(_) => {
                let d = self.from_i64(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    fn expect_rat<'a>(&self, s: &'a Scalar) -> &'a BigRational {
        match s {
            Scalar::Rat(r) => r,
            Scalar::Fp(_) => panic!("prime-field scalar used in a rational context"),
        }
    }

    fn expect_fp(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Fp(v) => *v,
            Scalar::Rat(_) => panic!("rational scalar used in a prime-field context"),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Q, Scalar::Rat(r)) => r.is_zero(),
            (FieldSpec::Fp(_), Scalar::Fp(v)) => *v == 0,
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(self.expect_rat(a) + self.expect_rat(b)),
            FieldSpec::Fp(p) => Scalar::Fp((self.expect_fp(a) + self.expect_fp(b)) % p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(self.expect_rat(a) - self.expect_rat(b)),
            FieldSpec::Fp(p) => {
                Scalar::Fp((p + self.expect_fp(a) - self.expect_fp(b)) % p)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(self.expect_rat(a) * self.expect_rat(b)),
            FieldSpec::Fp(p) => {
                let prod = u128::from(self.expect_fp(a)) * u128::from(self.expect_fp(b));
                Scalar::Fp((prod % u128::from(*p)) as u64)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::contract("division by zero"));
        }
        match self {
            FieldSpec::Q => Ok(Scalar::Rat(self.expect_rat(a).recip())),
            FieldSpec::Fp(p) => Ok(Scalar::Fp(pow_mod(self.expect_fp(a), p - 2, *p))),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` is a nonzero square. `None` when undecidable (rationals
    /// whose square-free part is out of factoring range).
    pub fn is_square(&self, a: &Scalar) -> Option<bool> {
        if self.is_zero(a) {
            return Some(false);
        }
        match self {
            FieldSpec::Fp(p) => {
                Some(pow_mod(self.expect_fp(a), (p - 1) / 2, *p) == 1)
            }
            FieldSpec::Q => {
                let r = self.expect_rat(a);
                if r.is_negative() {
                    return Some(false);
                }
                let sf = squarefree_part(&(r.numer() * r.denom()))?;
                Some(sf == BigInt::one())
            }
        }
    }

    /// Square-class invariant string for reports: over F_p, `square` /
    /// `nonsquare`; over Q, the square-free part when it is computable.
    pub fn square_class(&self, a: &Scalar) -> String {
        if self.is_zero(a) {
            return "zero".to_string();
        }
        match self {
            FieldSpec::Fp(_) => {
                if self.is_square(a) == Some(true) {
                    "square".to_string()
                } else {
                    "nonsquare".to_string()
                }
            }
            FieldSpec::Q => {
                let r = self.expect_rat(a);
                match squarefree_part(&(r.numer() * r.denom())) {
                    Some(sf) => {
                        let sign = if r.is_negative() { "-" } else { "" };
                        format!("{sign}{sf}")
                    }
                    None => "unknown (out of factoring range)".to_string(),
                }
            }
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = u128::from(base % p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % u128::from(p);
        }
        b = b * b % u128::from(p);
        exp >>= 1;
    }
    acc as u64
}

/// Square-free part of |n| by trial division; `None` when a large factor
/// survives the trial bound.
fn squarefree_part(n: &BigInt) -> Option<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let mut out = BigInt::one();
    let mut d = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= n {
        if d > bound {
            return None;
        }
        let mut count = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &d;
        }
        d += 1u32;
    }
    // what remains is prime (or 1)
    Some(out * n)
}

/// A dense polynomial in t with exact coefficients, ascending order,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyT {
    coeffs: Vec<Scalar>,
}

impl PolyT {
    pub fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, c: Scalar) -> Self {
        let mut p = PolyT { coeffs: vec![c] };
        p.normalize(field);
        p
    }

    pub fn t(field: &FieldSpec) -> Self {
        PolyT {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: Vec<Scalar>) -> Self {
        let mut p = PolyT { coeffs };
        p.normalize(field);
        p
    }

    fn normalize(&mut self, field: &FieldSpec) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| field.is_zero(c))
        {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, field: &FieldSpec) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    /// Value at t = 0.
    pub fn at_zero(&self, field: &FieldSpec) -> Scalar {
        self.coeff(0, field)
    }

    /// t-adic valuation: index of the first nonzero coefficient.
    pub fn valuation(&self, field: &FieldSpec) -> Option<usize> {
        self.coeffs.iter().position(|c| !field.is_zero(c))
    }

    pub fn add(&self, other: &PolyT, field: &FieldSpec) -> PolyT {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(i, field), &other.coeff(i, field)))
            .collect();
        PolyT::from_coeffs(field, coeffs)
    }

    pub fn sub(&self, other: &PolyT, field: &FieldSpec) -> PolyT {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(&self.coeff(i, field), &other.coeff(i, field)))
            .collect();
        PolyT::from_coeffs(field, coeffs)
    }

    pub fn mul(&self, other: &PolyT, field: &FieldSpec) -> PolyT {
        if self.is_zero() || other.is_zero() {
            return PolyT::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        PolyT::from_coeffs(field, coeffs)
    }

    pub fn scale(&self, s: &Scalar, field: &FieldSpec) -> PolyT {
        PolyT::from_coeffs(
            field,
            self.coeffs.iter().map(|c| field.mul(c, s)).collect(),
        )
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn divexact(&self, divisor: &PolyT, field: &FieldSpec) -> Result<PolyT> {
        if divisor.is_zero() {
            return Err(Error::contract("polynomial division by zero"));
        }
        if self.is_zero() {
            return Ok(PolyT::zero());
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = field.inv(divisor.coeffs.last().unwrap())?;
        if rem.len() < divisor.coeffs.len() {
            return Err(Error::contract("inexact polynomial division"));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = field.mul(&rem[k + dd], &lead_inv);
            if !field.is_zero(&q) {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = field.sub(&rem[k + j], &field.mul(&q, dc));
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !field.is_zero(c)) {
            return Err(Error::contract("inexact polynomial division"));
        }
        Ok(PolyT::from_coeffs(field, quot))
    }

    /// Substitute `t -> g(s)` (polynomial composition), via Horner.
    pub fn substitute(&self, g: &PolyT, field: &FieldSpec) -> PolyT {
        let mut acc = PolyT::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g, field);
            acc = acc.add(&PolyT::constant(field, c.clone()), field);
        }
        acc
    }

    pub fn display(&self, _field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if matches!(c, Scalar::Fp(0)) {
                continue;
            }
            if let Scalar::Rat(r) = c {
                if r.is_zero() {
                    continue;
                }
            }
            let cs = c.to_string();
            let part = match i {
                0 => cs,
                1 if cs == "1" => "t".to_string(),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_prime_check() {
        assert!(FieldSpec::fp(2).is_err());
        assert!(FieldSpec::fp(9).is_err());
        assert!(FieldSpec::fp(1).is_err());
        assert!(FieldSpec::fp(u64::MAX).is_err());
        assert!(FieldSpec::fp(1 << 31).is_err());
        for p in [3u64, 5, 7, 11, 101, 2_147_483_647] {
            assert!(FieldSpec::fp(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::fp(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(6));
        assert_eq!(f.inv(&a).unwrap(), f.from_i64(3)); // 5*3 = 15 = 1 mod 7
        assert_eq!(f.from_i64(-3), f.from_i64(4));
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Q;
        let half = f.from_ratio(1, 2).unwrap();
        let third = f.from_ratio(1, 3).unwrap();
        let sum = f.add(&half, &third);
        assert_eq!(sum, f.from_ratio(5, 6).unwrap());
    }

    #[test]
    fn squares() {
        let f7 = FieldSpec::fp(7).unwrap();
        // squares mod 7: 1, 2, 4
        for (v, expect) in [(1, true), (2, true), (3, false), (4, true), (5, false), (6, false)] {
            assert_eq!(f7.is_square(&f7.from_i64(v)).unwrap(), expect, "{v}");
        }
        let q = FieldSpec::Q;
        assert_eq!(q.is_square(&q.from_i64(49)), Some(true));
        assert_eq!(q.is_square(&q.from_ratio(4, 9).unwrap()), Some(true));
        assert_eq!(q.is_square(&q.from_i64(12)), Some(false));
        assert_eq!(q.is_square(&q.from_i64(-4)), Some(false));
    }

    #[test]
    fn poly_roundtrip_arithmetic() {
        let f = FieldSpec::fp(5).unwrap();
        let t = PolyT::t(&f);
        let one = PolyT::constant(&f, f.one());
        // (t + 1)^2 = t^2 + 2t + 1
        let tp1 = t.add(&one, &f);
        let sq = tp1.mul(&tp1, &f);
        assert_eq!(
            sq.coeffs(),
            &[f.from_i64(1), f.from_i64(2), f.from_i64(1)]
        );
        // exact division back
        assert_eq!(sq.divexact(&tp1, &f).unwrap(), tp1);
        assert!(sq.divexact(&t, &f).is_err());
    }

    #[test]
    fn valuation_and_substitution() {
        let f = FieldSpec::Q;
        let t = PolyT::t(&f);
        let t2 = t.mul(&t, &f);
        assert_eq!(t2.valuation(&f), Some(2));
        assert_eq!(PolyT::zero().valuation(&f), None);
        // t^2 under t -> s^3 has valuation 6
        let s3 = t.mul(&t, &f).mul(&t, &f);
        assert_eq!(t2.substitute(&s3, &f).valuation(&f), Some(6));
    }

    #[test]
    fn display_strings() {
        let f = FieldSpec::Q;
        let p = PolyT::from_coeffs(
            &f,
            vec![f.from_i64(3), f.zero(), f.from_i64(1)],
        );
        assert_eq!(p.display(&f), "3 + t^2");
        assert_eq!(PolyT::zero().display(&f), "0");
    }
}
