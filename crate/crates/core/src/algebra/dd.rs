//! Double-double reals and complex numbers (about 106 significand bits).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Largest precision the double-double kernel can honour.
pub const MAX_PRECISION_BITS: u32 = 106;
/// Precision used when the environment does not override it.
pub const DEFAULT_PRECISION_BITS: u32 = 80;

static PRECISION: OnceLock<u32> = OnceLock::new();

/// Parses a precision request, rejecting values the kernel cannot honour.
pub fn parse_precision_bits(text: &str) -> Result<u32, String> {
    let bits: u32 = text
        .trim()
        .parse()
        .map_err(|_| format!("invalid precision '{text}'"))?;
    if !(24..=MAX_PRECISION_BITS).contains(&bits) {
        return Err(format!(
            "precision {bits} bits outside supported range 24..={MAX_PRECISION_BITS}"
        ));
    }
    Ok(bits)
}

/// Working precision in bits, read once from `WEBFOLIO_PRECISION_BITS`.
pub fn precision_bits() -> u32 {
    *PRECISION.get_or_init(|| {
        std::env::var("WEBFOLIO_PRECISION_BITS")
            .ok()
            .and_then(|v| parse_precision_bits(&v).ok())
            .unwrap_or(DEFAULT_PRECISION_BITS)
    })
}

/// Relative accuracy target matching [`precision_bits`].
pub fn precision_eps() -> f64 {
    (2.0f64).powi(-(precision_bits() as i32))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Rounds an exact rational to the nearest double-double.
    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = ratio_to_f64(r);
        if !hi.is_finite() || hi == 0.0 {
            return Dd::new(hi);
        }
        let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        let (h, l) = quick_two_sum(hi, ratio_to_f64(&rest));
        Dd { hi: h, lo: l }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = Dd::new(self.hi.sqrt());
        s + (self - s * s) / (s * Dd::new(2.0))
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            let (a, b) = quick_two_sum(h, self.lo.floor());
            Dd { hi: a, lo: b }
        } else {
            Dd::new(h)
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale huge numerators and denominators before dividing.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let nn: BigInt = n >> shift_n as usize;
    let dd: BigInt = d >> shift_d as usize;
    let v = nn.to_f64().unwrap_or(0.0) / dd.to_f64().unwrap_or(1.0);
    v * (2.0f64).powi((shift_n - shift_d) as i32)
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };
    pub const I: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ONE,
    };

    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd::new(Dd::new(re), Dd::new(im))
    }

    pub fn real(x: f64) -> Cdd {
        Cdd::from_f64(x, 0.0)
    }

    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd::from_f64(z.re, z.im)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(self) -> Cdd {
        Cdd::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    /// Modulus rounded to `f64`.
    pub fn abs(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(self, k: Dd) -> Cdd {
        Cdd::new(self.re * k, self.im * k)
    }

    pub fn inv(self) -> Cdd {
        let n = self.norm_sqr();
        Cdd::new(self.re / n, -self.im / n)
    }

    pub fn powi(self, mut e: u32) -> Cdd {
        let mut base = self;
        let mut acc = Cdd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `exp(2 pi i k / n)` to full double-double accuracy.
    pub fn root_of_unity(n: u32, k: i64) -> Cdd {
        let k = k.rem_euclid(n as i64);
        if n == 1 || k == 0 {
            return Cdd::ONE;
        }
        if 4 * k == n as i64 {
            return Cdd::I;
        }
        if 2 * k == n as i64 {
            return -Cdd::ONE;
        }
        if 4 * k == 3 * n as i64 {
            return -Cdd::I;
        }
        let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        let mut z = Cdd::from_f64(ang.cos(), ang.sin());
        let nn = Cdd::real(n as f64);
        for _ in 0..2 {
            let zn1 = z.powi(n - 1);
            let f = zn1 * z - Cdd::ONE;
            z = z - f / (nn * zn1);
        }
        z
    }
}

impl From<Dd> for Cdd {
    fn from(x: Dd) -> Cdd {
        Cdd::new(x, Dd::ZERO)
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd::new(self.re - b.re, self.im - b.im)
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd::new(-self.re, -self.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, b: Cdd) -> Cdd {
        let n = b.norm_sqr();
        let c = self * b.conj();
        Cdd::new(c.re / n, c.im / n)
    }
}

impl fmt::Display for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re.to_f64(), self.im.to_f64());
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_is_accurate() {
        let x = Dd::ONE / Dd::new(3.0);
        let r = x * Dd::new(3.0) - Dd::ONE;
        assert!(r.to_f64().abs() < 1e-31);
    }

    #[test]
    fn rational_roundtrip() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(7));
        let x = Dd::from_rational(&r);
        let back = x * Dd::new(7.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn roots_of_unity_are_accurate() {
        for n in [3u32, 5, 7, 8, 12, 40] {
            let z = Cdd::root_of_unity(n, 1);
            assert!((z.powi(n) - Cdd::ONE).abs() < 1e-30, "n={n}");
        }
    }

    #[test]
    fn sqrt_two() {
        let s = Dd::new(2.0).sqrt();
        assert!((s * s - Dd::new(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn precision_parsing() {
        assert_eq!(parse_precision_bits("80"), Ok(80));
        assert!(parse_precision_bits("128").is_err());
        assert!(parse_precision_bits("x").is_err());
    }
}
