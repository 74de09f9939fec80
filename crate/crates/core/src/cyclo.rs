//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are kept in canonical form: a coefficient vector of length
//! `phi(N)` over `Q`, representing a polynomial in `zeta_N` reduced modulo
//! the N-th cyclotomic polynomial. Equality is decidable: two values are
//! equal iff their canonical vectors agree after lifting both to the lcm
//! of their orders.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal: {0}")]
    BadRational(String),
    #[error("invalid cyclotomic encoding: {0}")]
    BadEncoding(String),
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Canonical `"p/q"` form, denominator always present and positive.
pub fn rat_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rational, CycloError> {
    let bad = || CycloError::BadRational(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials, `num / den` with zero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    let lead = &den[dd];
    for i in (0..=nd - dd).rev() {
        let c = &rem[i + dd] / lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                let t = &c * dj;
                rem[i + j] -= t;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, low degree first, monic.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in divisors(n) {
        if d < n {
            let pd = cyclotomic_polynomial(d);
            result = poly_div_exact(&result, &pd);
        }
    }
    let arc = Arc::new(result);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Reduce a rational polynomial in `zeta_n` modulo `Phi_n`, returning
/// exactly `phi(n)` coefficients.
fn reduce_mod_phi(n: u64, mut coeffs: Vec<Rational>) -> Vec<Rational> {
    let deg = phi(n) as usize;
    let modulus = cyclotomic_polynomial(n);
    while coeffs.len() > deg {
        let top = coeffs.len() - 1;
        let c = coeffs.pop().unwrap();
        if !c.is_zero() {
            let shift = top - deg;
            for (j, mj) in modulus.iter().take(deg).enumerate() {
                let t = &c * Rational::from_integer(mj.clone());
                coeffs[shift + j] -= t;
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
    coeffs
}

/// An exact element of the cyclotomic field `Q(zeta_order)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>, // length phi(order), canonical mod Phi_order
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic { order: 1, coeffs: vec![Rational::one()] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(rat_int(k))
    }

    /// The primitive root of unity `zeta_n`.
    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `zeta_n^k`, exponent taken modulo n.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1, "order must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Cyclotomic { order: n, coeffs: reduce_mod_phi(n, coeffs) }
    }

    /// Build from explicit monomials `sum coeff * zeta_n^exp`.
    pub fn from_terms(n: u64, terms: &[(i64, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = acc.add(&Self::zeta_pow(n, *e).scale(c));
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }

    /// The value as a rational number, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, when it is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Re-express in `Q(zeta_m)` for any multiple m of the current order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Cyclotomic { order: m, coeffs: reduce_mod_phi(m, coeffs) }
    }

    fn common_order(&self, other: &Self) -> u64 {
        self.order.lcm(&other.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        let a = self.lift(m);
        let b = other.lift(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic { order: m, coeffs }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        let a = self.lift(m);
        let b = other.lift(m);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Cyclotomic { order: m, coeffs: reduce_mod_phi(m, prod) }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against `Phi_order`.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let n = self.order;
        let modulus: Vec<Rational> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariants: r0 = s0 * a (mod Phi), r1 = s1 * a (mod Phi).
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1);
            let snew = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = snew;
        }
        // r1 is a nonzero constant c with s1 * a = c (mod Phi).
        assert!(!r1.is_empty() && !r1[0].is_zero(), "gcd with irreducible modulus must be a unit");
        let c = r1[0].recip();
        let coeffs = s1.into_iter().map(|x| x * &c).collect();
        let inv = Cyclotomic { order: n, coeffs: reduce_mod_phi(n, coeffs) };
        debug_assert!(inv.mul(self).is_one());
        Ok(inv)
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Image under the Galois automorphism `zeta_N -> zeta_N^j`; requires
    /// `gcd(j, N) = 1`.
    pub fn galois(&self, j: i64) -> Self {
        let n = self.order;
        let jm = j.rem_euclid(n as i64) as u64;
        assert!(n.gcd(&jm.max(1)) == 1 || n == 1, "galois exponent must be coprime to the order");
        let mut coeffs = vec![Rational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (k as u64 * jm % n) as usize;
                coeffs[e] += c;
            }
        }
        Cyclotomic { order: n, coeffs: reduce_mod_phi(n, coeffs) }
    }

    /// `zeta_N -> zeta_N^{-1}`; complex conjugation in every embedding that
    /// sends `zeta_N` to a primitive root on the unit circle.
    pub fn conjugate(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order as i64 - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate().sub(self).is_zero()
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// True iff the value is a root of unity. In `Q(zeta_N)` the roots of
    /// unity are exactly the elements of order dividing lcm(2, N).
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let m = self.order.lcm(&2);
        self.pow(m as i64).map(|p| p.is_one()).unwrap_or(false)
    }
}

fn poly_deg(p: &[Rational]) -> usize {
    let mut d = 0;
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            d = i;
        }
    }
    d
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if poly_deg(&rem) < dd {
        return (vec![], rem);
    }
    let nd = poly_deg(&rem);
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = &rem[i + dd] / &lead;
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[i + j] -= t;
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = self.common_order(other);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.order, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_match_known_tables() {
        let as_i64 = |n: u64| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c.clone()).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        // First index with a coefficient other than 0, +-1.
        assert!(as_i64(105).contains(&-2));
    }

    #[test]
    fn zeta3_plus_zeta3_squared_is_minus_one() {
        let z = Cyclotomic::zeta(3);
        let s = z.add(&z.pow(2).unwrap());
        assert_eq!(s, Cyclotomic::from_integer(-1));
    }

    #[test]
    fn add_zero_is_identity() {
        let x = Cyclotomic::from_terms(8, &[(1, rat(1, 2)), (3, rat(-2, 3))]);
        assert_eq!(x.add(&Cyclotomic::zero()), x);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = Cyclotomic::zeta(4);
        assert_eq!(z.mul(&z), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn zeta_times_zeta_inverse_power() {
        for n in [2u64, 3, 5, 8, 12, 30] {
            let z = Cyclotomic::zeta(n);
            let w = Cyclotomic::zeta_pow(n, n as i64 - 1);
            assert!(z.mul(&w).is_one(), "zeta_{n} * zeta_{n}^(n-1) != 1");
        }
    }

    #[test]
    fn product_of_one_plus_minus_zeta8() {
        let z = Cyclotomic::zeta(8);
        let a = Cyclotomic::one().add(&z);
        let b = Cyclotomic::one().sub(&z);
        let expect = Cyclotomic::one().sub(&Cyclotomic::zeta(4));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn inverse_of_simple_values() {
        assert_eq!(
            Cyclotomic::zeta(7).inverse().unwrap(),
            Cyclotomic::zeta_pow(7, 6)
        );
        assert_eq!(
            Cyclotomic::from_integer(2).inverse().unwrap(),
            Cyclotomic::from_rational(rat(1, 2))
        );
        let a = Cyclotomic::one().add(&Cyclotomic::zeta(3));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(Cyclotomic::zero().inverse(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Cyclotomic::zeta(8).conjugate(), Cyclotomic::zeta_pow(8, 7));
        let r = Cyclotomic::from_rational(rat(3, 2));
        assert_eq!(r.conjugate(), r);
        let x = Cyclotomic::zeta(5).add(&Cyclotomic::zeta_pow(5, 2));
        let y = Cyclotomic::zeta_pow(5, 3).add(&Cyclotomic::zeta_pow(5, 4));
        assert_eq!(x.conjugate(), y);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn mixed_order_equality() {
        // zeta_6^3 = -1, and zeta_3 = zeta_6^2.
        assert_eq!(Cyclotomic::zeta_pow(6, 3), Cyclotomic::from_integer(-1));
        assert_eq!(Cyclotomic::zeta_pow(6, 2), Cyclotomic::zeta(3));
        assert_eq!(Cyclotomic::zeta_pow(6, 2).sub(&Cyclotomic::zeta(3)), Cyclotomic::zero());
    }

    #[test]
    fn geometric_sum_vanishes() {
        for n in [2u64, 3, 4, 5, 6, 12, 15] {
            let mut s = Cyclotomic::zero();
            for k in 0..n {
                s = s.add(&Cyclotomic::zeta_pow(n, k as i64));
            }
            assert!(s.is_zero(), "sum of all {n}-th roots of unity should vanish");
        }
    }

    #[test]
    fn root_of_unity_detection() {
        assert!(Cyclotomic::zeta(16).is_root_of_unity());
        assert!(Cyclotomic::from_integer(-1).is_root_of_unity());
        assert!(!Cyclotomic::from_integer(2).is_root_of_unity());
        assert!(!Cyclotomic::zero().is_root_of_unity());
        assert!(!Cyclotomic::one().add(&Cyclotomic::zeta(5)).is_root_of_unity());
    }

    #[test]
    fn rational_string_round_trip() {
        assert_eq!(rat_to_string(&rat(-3, 6)), "-1/2");
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert_eq!(rat_from_str("-4/6").unwrap(), rat(-2, 3));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyclo() -> impl Strategy<Value = Cyclotomic> {
            let orders = prop_oneof![Just(1u64), Just(2), Just(3), Just(4), Just(6), Just(8), Just(12)];
            (orders, proptest::collection::vec((-3i64..=3, -2i64..=2, 1i64..=2), 0..4)).prop_map(
                |(n, terms)| {
                    let ts: Vec<(i64, Rational)> =
                        terms.into_iter().map(|(e, p, q)| (e, rat(p, q))).collect();
                    Cyclotomic::from_terms(n, &ts)
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn addition_associative(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            }

            #[test]
            fn multiplication_distributes(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            }

            #[test]
            fn multiplication_commutes(a in arb_cyclo(), b in arb_cyclo()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }

            #[test]
            fn inverse_is_exact(a in arb_cyclo()) {
                if !a.is_zero() {
                    prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
                }
            }

            #[test]
            fn conjugation_is_involutive_and_multiplicative(a in arb_cyclo(), b in arb_cyclo()) {
                prop_assert_eq!(a.conjugate().conjugate(), a.clone());
                prop_assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
            }
        }
    }
}
