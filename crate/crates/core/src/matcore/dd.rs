//! Double-double arithmetic.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` of two binary64 values with
//! `|lo| <= ulp(hi) / 2`, giving roughly 106 bits of significand. The
//! algorithms follow the error-free transformation approach (two-sum,
//! fused two-product) with the accurate addition and the triple-FMA
//! multiplication variants.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};
use std::str::FromStr;

use num_traits::{Num, One, Zero};

#[derive(Copy, Clone, Default, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

// valid only for |a| >= |b| (or a == 0)
#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// Unit roundoff of the format, 2^-104.
    pub const EPSILON: f64 = 4.930380657631324e-32;

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Rounds to the nearest binary64.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact product of two binary64 values.
    #[inline]
    pub fn mul_f64_exact(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn mul_f64(self, y: f64) -> Self {
        let (ch, cl1) = two_prod(self.hi, y);
        let cl3 = self.lo.mul_add(y, cl1);
        let (hi, lo) = fast_two_sum(ch, cl3);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            if self.hi == 0.0 {
                return Dd::ZERO;
            }
            return Dd::from_f64(f64::NAN);
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * s);
        let (hi, lo) = fast_two_sum(s, r);
        Dd { hi, lo }
    }

    pub fn floor(self) -> Self {
        let fh = self.hi.floor();
        if fh == self.hi {
            let (hi, lo) = fast_two_sum(fh, self.lo.floor());
            Dd { hi, lo }
        } else {
            Dd::from_f64(fh)
        }
    }

    pub fn trunc(self) -> Self {
        if self.is_sign_negative() {
            -((-self).floor())
        } else {
            self.floor()
        }
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `self^(num/den)` for a positive base: the `den`-th root by Newton steps
    /// on `x^den = self` from the binary64 estimate, then an integer power.
    pub fn pow_rational(self, num: i32, den: u32) -> Self {
        assert!(den > 0);
        assert!(self.hi > 0.0, "pow_rational needs a positive base");
        if num == 0 {
            return Dd::ONE;
        }
        let g = gcd(num.unsigned_abs(), den);
        let (num, den) = (num / g as i32, den / g);
        if den == 1 {
            return self.powi(num);
        }
        let mut x = Dd::from_f64(self.to_f64().powf(1.0 / den as f64));
        let d = Dd::from_f64(den as f64);
        for _ in 0..3 {
            // x <- x * (1 + (self / x^den - 1) / den)
            let ratio = self / x.powi(den as i32);
            x *= Dd::ONE + (ratio - Dd::ONE) / d;
        }
        x.powi(num)
    }

    fn pow10(e: i32) -> Self {
        Dd::from_f64(10.0).powi(e)
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci_string(self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let neg = self.is_sign_negative();
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let mut m = x / Dd::pow10(e);
        if m.hi >= 10.0 {
            m /= Dd::from_f64(10.0);
            e += 1;
        } else if m.hi < 1.0 {
            m *= Dd::from_f64(10.0);
            e -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = m.floor();
            let dv = d.hi.clamp(0.0, 9.0) as u8;
            ds.push(dv);
            m = (m - Dd::from_f64(dv as f64)) * Dd::from_f64(10.0);
        }
        // round half up on the guard digit
        let guard = ds.pop().unwrap();
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut s = String::with_capacity(digits + 8);
        if neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&e.to_string());
        s
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, y: Dd) -> Dd {
        let (sh, sl) = two_sum(self.hi, y.hi);
        let (th, tl) = two_sum(self.lo, y.lo);
        let c = sl + th;
        let (vh, vl) = fast_two_sum(sh, c);
        let w = tl + vl;
        let (hi, lo) = fast_two_sum(vh, w);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, y: Dd) -> Dd {
        let (ch, cl1) = two_prod(self.hi, y.hi);
        let tl0 = self.lo * y.lo;
        let tl1 = self.hi.mul_add(y.lo, tl0);
        let cl2 = self.lo.mul_add(y.hi, tl1);
        let cl3 = cl1 + cl2;
        let (hi, lo) = fast_two_sum(ch, cl3);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, y: Dd) -> Dd {
        let q1 = self.hi / y.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - y.mul_f64(q1);
        let q2 = r.hi / y.hi;
        let r = r - y.mul_f64(q2);
        let q3 = r.hi / y.hi;
        let (hi, lo) = fast_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, y: Dd) -> Dd {
        self - (self / y).trunc() * y
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, rhs: Dd) {
                *self = *self $op rhs;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::ONE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDdError;

impl fmt::Display for ParseDdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid double-double literal")
    }
}

impl std::error::Error for ParseDdError {}

impl FromStr for Dd {
    type Err = ParseDdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (
                &body[..i],
                body[i + 1..].parse::<i32>().map_err(|_| ParseDdError)?,
            ),
            None => (body, 0),
        };
        if mant.is_empty() {
            return Err(ParseDdError);
        }
        let mut acc = Dd::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut any = false;
        for c in mant.chars() {
            match c {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    any = true;
                    acc = acc.mul_f64(10.0) + Dd::from_f64((c as u8 - b'0') as f64);
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                _ => return Err(ParseDdError),
            }
        }
        if !any {
            return Err(ParseDdError);
        }
        let scale = exp - frac_digits;
        let v = if scale >= 0 {
            acc * Dd::pow10(scale)
        } else {
            acc / Dd::pow10(-scale)
        };
        Ok(if neg { -v } else { v })
    }
}

impl Num for Dd {
    type FromStrRadixErr = ParseDdError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDdError);
        }
        s.parse()
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        let back = third * Dd::from_f64(3.0);
        assert!((back - Dd::ONE).abs().hi < 1e-31);
        // 1/3 is not representable in binary64, so the low word carries bits
        assert!(third.lo != 0.0);
    }

    #[test]
    fn sqrt_two_squared() {
        let r = Dd::from_f64(2.0).sqrt();
        let e = (r * r - Dd::from_f64(2.0)).abs();
        assert!(e.hi < 1e-31, "{e:?}");
    }

    #[test]
    fn round_trip_exact_binary64() {
        for &x in &[0.1, -3.5e-300, 1.0e300, 7.0, 0.0] {
            assert_eq!(Dd::from_f64(x).to_f64().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn rational_power_matches_definition() {
        // 10^(1/6) raised to the 6th power returns 10
        let x = Dd::from_f64(10.0).pow_rational(1, 6);
        let e = (x.powi(6) - Dd::from_f64(10.0)).abs();
        assert!(e.hi < 1e-29, "{e:?}");
        assert_eq!(format!("{:.13}", x), "1.467799267622e0");
    }

    #[test]
    fn decimal_printing_and_parsing() {
        let x: Dd = "3.16227766016837933199889354443271853372".parse().unwrap();
        let y = Dd::from_f64(10.0).sqrt();
        assert!((x - y).abs().hi < 1e-31);
        assert_eq!(y.to_sci_string(30), "3.16227766016837933199889354443e0");
        assert_eq!(Dd::from_f64(-0.00125).to_sci_string(3), "-1.25e-3");
        assert_eq!(Dd::from_f64(9.9999).to_sci_string(2), "1.0e1");
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = Dd::new(1.0, 1e-20);
        let b = Dd::new(1.0, -1e-20);
        assert!(a > b);
    }
}
