//! Scalar abstractions shared by the working (binary64) and extended
//! (double-double) precision matrix code.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::{Complex, Complex64};

use super::dd::Dd;

/// Real field used for norms, singular values and rotation parameters.
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Unit roundoff of the format.
    const EPSILON: f64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `sqrt(a^2 + b^2)` without destructive overflow.
    fn hypot(a: Self, b: Self) -> Self {
        let a = a.abs();
        let b = b.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big == Self::zero() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r * r).sqrt()
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn hypot(a: Self, b: Self) -> Self {
        f64::hypot(a, b)
    }
}

impl Real for Dd {
    const EPSILON: f64 = Dd::EPSILON;

    #[inline]
    fn zero() -> Self {
        Dd::ZERO
    }
    #[inline]
    fn one() -> Self {
        Dd::ONE
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        Dd::abs(self)
    }
}

/// Matrix entry type: a real or complex number over a [`Real`] field.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    type Real: Real;
    const IS_COMPLEX: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: Self::Real) -> Self;
    /// Builds a value from real and imaginary parts; the imaginary part is
    /// dropped for real scalar types.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;
    fn abs_sqr(self) -> Self::Real;
    fn scale(self, r: Self::Real) -> Self;
    /// Nearest working-precision complex value.
    fn to_c64(self) -> Complex64;

    fn from_f64(x: f64) -> Self {
        Self::from_real(<Self::Real as Real>::from_f64(x))
    }

    fn abs(self) -> Self::Real {
        Real::hypot(self.re(), self.im())
    }

    /// Cheap magnitude `|re| + |im|`, used for pivoting.
    fn abs1(self) -> Self::Real {
        self.re().abs() + self.im().abs()
    }
}

impl Scalar for f64 {
    type Real = f64;
    const IS_COMPLEX: bool = false;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_real(r: f64) -> Self {
        r
    }
    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn abs_sqr(self) -> f64 {
        self * self
    }
    #[inline]
    fn scale(self, r: f64) -> Self {
        self * r
    }
    #[inline]
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
}

impl Scalar for Dd {
    type Real = Dd;
    const IS_COMPLEX: bool = false;

    #[inline]
    fn zero() -> Self {
        Dd::ZERO
    }
    #[inline]
    fn one() -> Self {
        Dd::ONE
    }
    #[inline]
    fn from_real(r: Dd) -> Self {
        r
    }
    #[inline]
    fn from_parts(re: Dd, _im: Dd) -> Self {
        re
    }
    #[inline]
    fn re(self) -> Dd {
        self
    }
    #[inline]
    fn im(self) -> Dd {
        Dd::ZERO
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn abs_sqr(self) -> Dd {
        self * self
    }
    #[inline]
    fn scale(self, r: Dd) -> Self {
        self * r
    }
    #[inline]
    fn to_c64(self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    #[inline]
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
}

macro_rules! complex_scalar {
    ($r:ty) => {
        impl Scalar for Complex<$r> {
            type Real = $r;
            const IS_COMPLEX: bool = true;

            #[inline]
            fn zero() -> Self {
                Complex::new(<$r as Real>::zero(), <$r as Real>::zero())
            }
            #[inline]
            fn one() -> Self {
                Complex::new(<$r as Real>::one(), <$r as Real>::zero())
            }
            #[inline]
            fn from_real(r: $r) -> Self {
                Complex::new(r, <$r as Real>::zero())
            }
            #[inline]
            fn from_parts(re: $r, im: $r) -> Self {
                Complex::new(re, im)
            }
            #[inline]
            fn re(self) -> $r {
                self.re
            }
            #[inline]
            fn im(self) -> $r {
                self.im
            }
            #[inline]
            fn conj(self) -> Self {
                Complex::new(self.re, -self.im)
            }
            #[inline]
            fn abs_sqr(self) -> $r {
                self.re * self.re + self.im * self.im
            }
            #[inline]
            fn scale(self, r: $r) -> Self {
                Complex::new(self.re * r, self.im * r)
            }
            #[inline]
            fn to_c64(self) -> Complex64 {
                Complex64::new(Real::to_f64(self.re), Real::to_f64(self.im))
            }
        }
    };
}

complex_scalar!(f64);
complex_scalar!(Dd);

/// Complex double-double.
pub type Cdd = Complex<Dd>;
