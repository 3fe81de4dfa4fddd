use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

/// A complex number with MPFR real and imaginary parts.
///
/// Binary operations produce a result at the larger precision of the two
/// operands. Equality in the numerical sense is [`Scalar::approx_eq`]; the
/// derived `PartialEq` compares bit patterns and is only useful for exact zero
/// checks and tests.
#[derive(Clone, PartialEq)]
pub struct Scalar {
    re: Float,
    im: Float,
}

impl Scalar {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(prec, 1)
    }

    pub fn from_int(prec: u32, n: i64) -> Self {
        Self {
            re: Float::with_val(prec, n),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(prec: u32, x: f64) -> Self {
        Self {
            re: Float::with_val(prec, x),
            im: Float::new(prec),
        }
    }

    /// `p / q` rounded once at the given precision.
    pub fn from_ratio(prec: u32, p: i64, q: i64) -> Self {
        let mut re = Float::with_val(prec, p);
        re /= q;
        Self {
            re,
            im: Float::new(prec),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    /// `exp(iπ · p/q)`.
    pub fn unit_root(prec: u32, p: i64, q: i64) -> Self {
        let mut angle = Float::with_val(prec, Constant::Pi);
        angle *= p;
        angle /= q;
        let (s, c) = angle.sin_cos(Float::new(prec));
        Self { re: c, im: s }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, self.re.square_ref());
        n += Float::with_val(p, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re / &n),
            im: -Float::with_val(p, &self.im / &n),
        }
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal square root: nonnegative real part, and for negative reals
    /// the root on the positive imaginary axis.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() {
            let mag = Float::with_val(p, self.re.abs_ref()).sqrt();
            return if self.re.is_sign_negative() && !self.re.is_zero() {
                Self {
                    re: Float::new(p),
                    im: mag,
                }
            } else {
                Self {
                    re: mag,
                    im: Float::new(p),
                }
            };
        }
        // sqrt(z) = sqrt((|z| + x)/2) + i·sign(y)·sqrt((|z| - x)/2)
        let m = self.abs();
        let mut a = Float::with_val(p, &m + &self.re);
        a /= 2;
        let re = a.sqrt();
        let mut b = Float::with_val(p, &m - &self.re);
        b /= 2;
        let mut im = b.sqrt();
        if self.im.is_sign_negative() {
            im = -im;
        }
        Self { re, im }
    }

    /// Scales by `2^k`, exactly.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let mut out = self.clone();
        out.re <<= k;
        out.im <<= k;
        out
    }

    /// Hybrid absolute/relative comparison:
    /// `|x - y| <= tol * max(1, |x|, |y|)`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        self.distance(other) <= tol * 1f64.max(self.abs_f64()).max(other.abs_f64())
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.abs_f64() <= tol
    }

    pub fn distance(&self, other: &Scalar) -> f64 {
        (self - other).abs_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Real part rounded to the nearest integer, if it is below `2^53` in size.
    pub fn round_re(&self) -> Option<i64> {
        let r = self.re.to_f64().round();
        (r.is_finite() && r.abs() < 9.0e15).then_some(r as i64)
    }

    /// Scientific notation of both parts with `digits` significant digits.
    pub fn to_sci_strings(&self, digits: usize) -> (String, String) {
        (sci(&self.re, digits), sci(&self.im, digits))
    }
}

fn sci(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    format!("{:.*e}", digits, x)
}

/// Pairwise (tree) summation. The association order depends only on the
/// number of terms, so results are reproducible.
pub fn tree_sum(mut terms: Vec<Scalar>, prec: u32) -> Scalar {
    if terms.is_empty() {
        return Scalar::zero(prec);
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12e} + {:.12e}i)", self.re, self.im)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(10);
        let (re, im) = self.to_sci_strings(digits);
        if self.im.is_sign_negative() {
            write!(f, "{} - {}i", re, im.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}i", re, im)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = self.prec().max(rhs.prec());
        Scalar {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = self.prec().max(rhs.prec());
        Scalar {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = self.prec().max(rhs.prec());
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar {
                re: Float::with_val(p, &self.re * &rhs.re),
                im: Float::new(p),
            };
        }
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        Scalar { re, im }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.im.is_zero() {
            let p = self.prec().max(rhs.prec());
            return Scalar {
                re: Float::with_val(p, &self.re / &rhs.re),
                im: Float::with_val(p, &self.im / &rhs.re),
            };
        }
        self * &rhs.inv()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Mul<i64> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: i64) -> Scalar {
        let mut out = self.clone();
        out.re *= rhs;
        out.im *= rhs;
        out
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Sum for Scalar {
    /// Left fold. Panics on an empty iterator since the precision is unknown;
    /// use [`tree_sum`] when the iterator may be empty.
    fn sum<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        let first = iter.next().expect("sum of an empty Scalar iterator");
        iter.fold(first, |acc, x| acc + x)
    }
}
