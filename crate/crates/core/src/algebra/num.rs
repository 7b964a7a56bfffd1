//! Values that are exact when possible and complex approximations otherwise.

use std::cmp::Ordering;
use std::fmt;

use super::dd::Cdd;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An exact field element or an embedded complex approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Scalar),
    Approx(Cdd),
}

impl Num {
    pub fn int(n: i64) -> Num {
        Num::Exact(Scalar::int(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Scalar> {
        match self {
            Num::Exact(s) => Some(s),
            Num::Approx(_) => None,
        }
    }

    /// Complex value; exact values must be constant in `t`.
    pub fn embed(&self) -> Cdd {
        match self {
            Num::Exact(s) => s.embed().expect("constant scalar"),
            Num::Approx(z) => *z,
        }
    }

    /// True only for an exact zero.
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Num::Exact(s) if s.is_zero())
    }

    pub fn add(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a + b),
            _ => Num::Approx(self.embed() + o.embed()),
        }
    }

    pub fn sub(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a - b),
            _ => Num::Approx(self.embed() - o.embed()),
        }
    }

    pub fn mul(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a * b),
            _ => Num::Approx(self.embed() * o.embed()),
        }
    }

    pub fn neg(&self) -> Num {
        match self {
            Num::Exact(a) => Num::Exact(-a),
            Num::Approx(z) => Num::Approx(-*z),
        }
    }

    pub fn div(&self, o: &Num) -> Result<Num> {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Ok(Num::Exact(a.checked_div(b)?)),
            _ => {
                let d = o.embed();
                if d.is_zero() {
                    return Err(Error::Degenerate("division by zero".into()));
                }
                Ok(Num::Approx(self.embed() / d))
            }
        }
    }

    pub fn powi(&self, e: u32) -> Num {
        match self {
            Num::Exact(a) => Num::Exact(a.pow(e)),
            Num::Approx(z) => Num::Approx(z.powi(e)),
        }
    }

    /// Deterministic order on embedded values: real part, then imaginary part.
    pub fn cmp_embedded(&self, o: &Num) -> Ordering {
        cmp_complex(self.embed(), o.embed())
    }
}

/// Orders complex numbers by real then imaginary part, with a tiny tie tolerance.
pub fn cmp_complex(a: Cdd, b: Cdd) -> Ordering {
    let tol = 1e-20 * (1.0 + a.abs().max(b.abs()));
    let dr = (a.re - b.re).to_f64();
    if dr.abs() > tol {
        return if dr < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        };
    }
    let di = (a.im - b.im).to_f64();
    if di.abs() > tol {
        return if di < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        };
    }
    Ordering::Equal
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(s) => write!(f, "{s}"),
            Num::Approx(z) => write!(f, "~{z}"),
        }
    }
}

/// Point of the projective line, normalized as `[r:1]` or `[1:0]`.
///
/// For a direction `(x, y)` in the plane the point is `[y:x]`, so `r` is the slope `y/x`.
#[derive(Clone, Debug, PartialEq)]
pub enum P1Point {
    Finite(Num),
    Infinity,
}

impl P1Point {
    pub fn exact(s: Scalar) -> P1Point {
        P1Point::Finite(Num::Exact(s))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1Point::Infinity)
    }

    pub fn is_exact(&self) -> bool {
        match self {
            P1Point::Finite(n) => n.is_exact(),
            P1Point::Infinity => true,
        }
    }

    pub fn finite(&self) -> Option<&Num> {
        match self {
            P1Point::Finite(n) => Some(n),
            P1Point::Infinity => None,
        }
    }

    /// Homogeneous pair `(a, b)` with the point equal to `[a:b]`.
    pub fn homogeneous(&self) -> (Num, Num) {
        match self {
            P1Point::Finite(n) => (n.clone(), Num::int(1)),
            P1Point::Infinity => (Num::int(1), Num::int(0)),
        }
    }

    /// Point `[a:b]` from a homogeneous pair.
    pub fn from_pair(a: &Num, b: &Num) -> Result<P1Point> {
        if b.is_exact_zero() || (!b.is_exact() && b.embed().abs() == 0.0) {
            if a.is_exact_zero() {
                return Err(Error::Degenerate("point [0:0]".into()));
            }
            return Ok(P1Point::Infinity);
        }
        Ok(P1Point::Finite(a.div(b)?))
    }

    /// Deterministic order: finite points by embedded value, infinity last.
    pub fn cmp_order(&self, o: &P1Point) -> Ordering {
        match (self, o) {
            (P1Point::Infinity, P1Point::Infinity) => Ordering::Equal,
            (P1Point::Infinity, _) => Ordering::Greater,
            (_, P1Point::Infinity) => Ordering::Less,
            (P1Point::Finite(a), P1Point::Finite(b)) => a.cmp_embedded(b),
        }
    }

    /// Distance on the embedded values, or `None` if exactly one point is infinite.
    pub fn close_to(&self, o: &P1Point, tol: f64) -> bool {
        match (self, o) {
            (P1Point::Infinity, P1Point::Infinity) => true,
            (P1Point::Finite(a), P1Point::Finite(b)) => match (a, b) {
                (Num::Exact(x), Num::Exact(y)) => x == y,
                _ => (a.embed() - b.embed()).abs() <= tol * (1.0 + a.embed().abs()),
            },
            _ => false,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(n) => write!(f, "[{n}:1]"),
            P1Point::Infinity => write!(f, "[1:0]"),
        }
    }
}
