//! Slopes on a torus boundary and the integral actions that permute them.
//!
//! A slope is an unoriented isotopy class of essential simple closed curves,
//! written `p/q` in a fixed (meridian, longitude) basis. The meridian is
//! `1/0` and the longitude is `0/1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    ZeroPair,
    #[error("cannot parse slope {0:?}: expected \"p/q\" or an integer")]
    Parse(String),
    #[error("slope action has determinant {0}, not ±1")]
    NotUnimodular(BigInt),
}

/// A reduced fraction `p/q` with `q > 0`, or the meridian `1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Reduces `(p, q)` to its canonical representative. `(p, q)` and
    /// `(-p, -q)` name the same slope.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(SlopeError::ZeroPair);
        }
        let g = p.gcd(&q);
        p /= &g;
        q /= &g;
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn meridian() -> Self {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn longitude() -> Self {
        Slope {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    /// The integral slope `n/1`.
    pub fn integral(n: impl Into<BigInt>) -> Self {
        Slope {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_meridian(&self) -> bool {
        self.q.is_zero()
    }

    /// `p/q ↦ -p/q`, the effect of reversing the ambient orientation.
    pub fn negate(&self) -> Self {
        // -1/0 canonicalizes back to 1/0
        Slope::new(-&self.p, self.q.clone()).expect("nonzero pair")
    }

    /// Minimal geometric intersection number `|p1 q2 - q1 p2|`.
    pub fn distance(&self, other: &Slope) -> BigUint {
        (&self.p * &other.q - &self.q * &other.p)
            .magnitude()
            .clone()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SlopeError::Parse(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A unimodular integral action `(a b; c d)` on slope coordinates,
/// `(p, q) ↦ (a p + b q, c p + d q)`.
///
/// Orientation-reversing involutions of a torus act this way; the type
/// accepts any matrix of determinant ±1 and [`is_involution`] reports
/// whether it squares to ±identity.
///
/// [`is_involution`]: SlopeInvolution::is_involution
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeInvolution {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SlopeInvolution {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, SlopeError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.abs().is_one() {
            return Err(SlopeError::NotUnimodular(det));
        }
        Ok(SlopeInvolution { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).unwrap()
    }

    /// Exchanges meridian and longitude: `p/q ↦ q/p`.
    pub fn swap() -> Self {
        Self::new(0, 1, 1, 0).unwrap()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn compose(&self, inner: &SlopeInvolution) -> SlopeInvolution {
        SlopeInvolution {
            a: &self.a * &inner.a + &self.b * &inner.c,
            b: &self.a * &inner.b + &self.b * &inner.d,
            c: &self.c * &inner.a + &self.d * &inner.c,
            d: &self.c * &inner.b + &self.d * &inner.d,
        }
    }

    /// True when the square is `±identity`, i.e. the induced map on
    /// unoriented slopes has order at most two.
    pub fn is_involution(&self) -> bool {
        let sq = self.compose(self);
        sq.b.is_zero() && sq.c.is_zero() && sq.a == sq.d && sq.a.abs().is_one()
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        let p = &self.a * s.p() + &self.b * s.q();
        let q = &self.c * s.p() + &self.d * s.q();
        Slope::new(p, q).expect("unimodular image of a nonzero pair is nonzero")
    }

    /// Canonical slopes with `|p|, |q| <= bound` sent to themselves,
    /// in ascending `(p, q)` order.
    pub fn fixed_slopes(&self, bound: u64) -> Vec<Slope> {
        enumerate_slopes(bound)
            .filter(|s| &self.apply(s) == s)
            .collect()
    }
}

/// Every canonical slope with `|p|, |q| <= bound`, ascending by `(p, q)`.
pub fn enumerate_slopes(bound: u64) -> impl Iterator<Item = Slope> {
    let b = bound as i128;
    (-b..=b).flat_map(move |p| {
        (0..=b).filter_map(move |q| {
            let canonical = if q == 0 { p == 1 } else { p.gcd(&q) == 1 };
            canonical.then(|| Slope {
                p: p.into(),
                q: q.into(),
            })
        })
    })
}

impl fmt::Display for SlopeInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}
