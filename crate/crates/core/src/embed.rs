//! Rigorous complex enclosures of cyclotomic values under the standard
//! embedding `zeta_N -> exp(2*pi*i/N)`.
//!
//! Everything here is for reporting and cross-checking; the only place an
//! enclosure feeds back into a computation is as a certified upper bound
//! for the search box of the invariant enumeration, where rounding is
//! always outward.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{Cyclotomic, Rational};

/// A closed disk `|z - (re + i*im)| <= rad` containing the true value.
#[derive(Clone, Debug)]
pub struct ComplexEnclosure {
    pub re: Rational,
    pub im: Rational,
    pub rad: Rational,
}

impl ComplexEnclosure {
    /// True iff the two enclosures overlap, i.e. the values could be equal.
    pub fn may_equal(&self, other: &ComplexEnclosure) -> bool {
        let dre = &self.re - &other.re;
        let dim = &self.im - &other.im;
        let dist2 = &dre * &dre + &dim * &dim;
        let r = &self.rad + &other.rad;
        dist2 <= &r * &r
    }

    pub fn abs_upper(&self) -> Rational {
        // |re| + |im| >= sqrt(re^2+im^2), so this is a safe radius bound.
        self.re.abs() + self.im.abs() + &self.rad
    }
}

fn pow10(d: u32) -> Rational {
    Rational::from_integer(BigInt::from(10u32).pow(d))
}

fn inv_pow10(d: u32) -> Rational {
    pow10(d).recip()
}

/// Shrink a rational to ~`digits` decimal places, returning `(value, err)`
/// with `|value - input| <= err`.
fn round_with_error(x: &Rational, digits: u32) -> (Rational, Rational) {
    let scale = pow10(digits);
    let scaled = x * &scale;
    let rounded = Rational::from_integer(scaled.round().to_integer());
    let out = &rounded / &scale;
    let err = (&out - x).abs();
    (out, err)
}

/// arctan(1/m) with truncation error at most `eps`, via the alternating
/// Taylor series; returns `(value, err_bound)`.
fn arctan_inv(m: i64, eps: &Rational) -> (Rational, Rational) {
    let m2 = Rational::from_integer(BigInt::from(m) * BigInt::from(m));
    let mut term = Rational::from_integer(BigInt::one()) / Rational::from_integer(BigInt::from(m));
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let contrib = &term / Rational::from_integer(BigInt::from(2 * k + 1));
        if contrib < *eps {
            // Alternating series: remainder bounded by first omitted term.
            return (sum, contrib);
        }
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term = &term / &m2;
        k += 1;
    }
}

/// pi as `(midpoint, err_bound)` with `err_bound <= 10^-digits`.
pub fn pi_enclosure(digits: u32) -> (Rational, Rational) {
    // Machin: pi = 16*arctan(1/5) - 4*arctan(1/239).
    let eps = inv_pow10(digits + 3);
    let (a, ea) = arctan_inv(5, &eps);
    let (b, eb) = arctan_inv(239, &eps);
    let pi = Rational::from_integer(BigInt::from(16)) * a
        - Rational::from_integer(BigInt::from(4)) * b;
    let err = Rational::from_integer(BigInt::from(16)) * ea
        + Rational::from_integer(BigInt::from(4)) * eb;
    let (pi_r, round_err) = round_with_error(&pi, digits + 2);
    (pi_r, err + round_err)
}

/// cos and sin of a rational angle (radians), each as `(mid, err)`.
fn cos_sin(theta: &Rational, digits: u32) -> ((Rational, Rational), (Rational, Rational)) {
    let eps = inv_pow10(digits + 3);
    let t2 = theta * theta;
    // cos: sum (-1)^k theta^(2k) / (2k)!
    let mut cos_sum = Rational::zero();
    let mut term = Rational::one(); // theta^(2k)/(2k)!
    let mut k: u64 = 0;
    let cos_err;
    loop {
        // Once terms decrease they keep decreasing; |theta| < 7 makes this
        // happen within the first few terms, and the loop condition below
        // only stops at a term that already dominates the remainder.
        if term < eps && t2 < Rational::from_integer(BigInt::from(((2 * k + 1) * (2 * k + 2)) as i64)) {
            cos_err = term.clone();
            break;
        }
        if k % 2 == 0 {
            cos_sum += &term;
        } else {
            cos_sum -= &term;
        }
        let denom = Rational::from_integer(BigInt::from(((2 * k + 1) * (2 * k + 2)) as i64));
        term = &term * &t2 / denom;
        k += 1;
    }
    // sin: sum (-1)^k theta^(2k+1) / (2k+1)!
    let mut sin_sum = Rational::zero();
    let mut term = theta.clone();
    let mut k: u64 = 0;
    let sin_err;
    loop {
        if term.abs() < eps && t2 < Rational::from_integer(BigInt::from(((2 * k + 2) * (2 * k + 3)) as i64)) {
            sin_err = term.abs();
            break;
        }
        if k % 2 == 0 {
            sin_sum += &term;
        } else {
            sin_sum -= &term;
        }
        let denom = Rational::from_integer(BigInt::from(((2 * k + 2) * (2 * k + 3)) as i64));
        term = &term * &t2 / denom;
        k += 1;
    }
    let (c, ce) = round_with_error(&cos_sum, digits + 2);
    let (s, se) = round_with_error(&sin_sum, digits + 2);
    ((c, cos_err + ce), (s, sin_err + se))
}

/// Enclosure of `exp(2 pi i k / n)`.
pub fn root_of_unity(n: u64, k: u64, digits: u32) -> ComplexEnclosure {
    let k = k % n;
    let (pi, pi_err) = pi_enclosure(digits + 4);
    let two_k_over_n = Rational::new(BigInt::from(2 * k), BigInt::from(n));
    let theta = &pi * &two_k_over_n;
    let theta_err = &pi_err * &two_k_over_n;
    let ((c, ce), (s, se)) = cos_sin(&theta, digits + 2);
    // cos and sin are 1-Lipschitz, so the angle error adds directly.
    ComplexEnclosure {
        re: c,
        im: s,
        rad: ce + se + Rational::from_integer(BigInt::from(2)) * theta_err,
    }
}

/// Rigorous enclosure of a cyclotomic value with radius `<= 10^-digits`.
pub fn embed(x: &Cyclotomic, digits: u32) -> ComplexEnclosure {
    let n = x.order();
    let weight: Rational = x
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(Rational::zero(), |a, b| a + b);
    let mut guard = digits + 8;
    let mut w = weight.ceil().to_integer();
    while w > BigInt::one() {
        w /= BigInt::from(10);
        guard += 1;
    }
    loop {
        let mut re = Rational::zero();
        let mut im = Rational::zero();
        let mut rad = Rational::zero();
        for (k, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = root_of_unity(n, k as u64, guard);
            re += c * &root.re;
            im += c * &root.im;
            rad += c.abs() * &root.rad;
        }
        let (re_r, re_err) = round_with_error(&re, digits + 4);
        let (im_r, im_err) = round_with_error(&im, digits + 4);
        rad += re_err + im_err;
        if rad <= inv_pow10(digits) {
            return ComplexEnclosure { re: re_r, im: im_r, rad };
        }
        guard += 8;
    }
}

/// Certified upper bound of a provably-real value, or None when the value
/// is not fixed by conjugation.
pub fn real_upper_bound(x: &Cyclotomic, digits: u32) -> Option<Rational> {
    if !x.is_real() {
        return None;
    }
    let e = embed(x, digits);
    Some(e.re + e.rad)
}

/// Certified strict positivity of a provably-real value, raising precision
/// up to `max_digits` before giving up with None.
pub fn certify_positive_real(x: &Cyclotomic, max_digits: u32) -> Option<bool> {
    if !x.is_real() {
        return None;
    }
    let mut digits = 20;
    loop {
        let e = embed(x, digits);
        if &e.re - &e.rad > Rational::zero() {
            return Some(true);
        }
        if &e.re + &e.rad < Rational::zero() {
            return Some(false);
        }
        if digits >= max_digits {
            return None;
        }
        digits = (digits * 2).min(max_digits);
    }
}

/// Parse a plain decimal literal (used by tests to freeze oracle values).
pub fn decimal(s: &str) -> Rational {
    let neg = s.starts_with('-');
    let t = s.trim_start_matches('-');
    let (int_part, frac_part) = match t.split_once('.') {
        Some((a, b)) => (a, b),
        None => (t, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().expect("bad decimal literal");
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = Rational::new(numer, denom);
    if neg {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    const PI_55: &str = "3.1415926535897932384626433832795028841971693993751058209";

    #[test]
    fn pi_enclosure_matches_reference() {
        let (mid, err) = pi_enclosure(50);
        let reference = decimal(PI_55);
        assert!(err <= inv_pow10(50));
        assert!((mid - reference).abs() <= inv_pow10(49));
    }

    #[test]
    fn zeta4_embeds_to_i() {
        let e = embed(&Cyclotomic::zeta(4), 40);
        assert!(e.re.abs() <= e.rad);
        assert!((e.im - Rational::one()).abs() <= e.rad);
    }

    #[test]
    fn one_third_embeds_exactly() {
        let e = embed(&Cyclotomic::from_rational(rat(1, 3)), 30);
        assert!((e.re - rat(1, 3)).abs() <= e.rad.clone() + inv_pow10(30));
        assert!(e.im.abs() <= e.rad);
    }

    #[test]
    fn zeta3_matches_half_sqrt3() {
        let e = embed(&Cyclotomic::zeta(3), 50);
        let re_ref = decimal("-0.5");
        let im_ref = decimal("0.8660254037844386467637231707529361834714026269051903140");
        assert!((e.re - re_ref).abs() <= e.rad.clone() + inv_pow10(50));
        assert!((e.im - im_ref).abs() <= e.rad.clone() + inv_pow10(50));
    }

    #[test]
    fn enclosure_radius_honors_request() {
        for digits in [5u32, 20, 50] {
            let x = Cyclotomic::from_terms(7, &[(1, rat(3, 1)), (5, rat(-7, 2))]);
            let e = embed(&x, digits);
            assert!(e.rad <= inv_pow10(digits));
        }
    }

    #[test]
    fn vanishing_sum_is_enclosed_by_zero() {
        // 1 + zeta_5 + ... + zeta_5^4 = 0 exactly; the embedding of the
        // explicit sum must enclose 0.
        let mut s = ComplexEnclosure { re: Rational::zero(), im: Rational::zero(), rad: Rational::zero() };
        for k in 0..5 {
            let e = embed(&Cyclotomic::zeta_pow(5, k), 45);
            s.re += e.re;
            s.im += e.im;
            s.rad += e.rad;
        }
        assert!(s.re.abs() <= s.rad);
        assert!(s.im.abs() <= s.rad);
    }

    #[test]
    fn positivity_certificate() {
        let sqrt2 = Cyclotomic::zeta(8).add(&Cyclotomic::zeta_pow(8, -1));
        assert_eq!(certify_positive_real(&sqrt2, 100), Some(true));
        assert_eq!(certify_positive_real(&sqrt2.neg(), 100), Some(false));
        assert_eq!(certify_positive_real(&Cyclotomic::zeta(8), 100), None);
    }
}
