//! Conway words, their continued fractions, and Schubert normal forms of
//! two-bridge links (equivalently, lens-space types of their double
//! branched covers).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::slope::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoBridgeError {
    #[error("Conway word must have at least one entry")]
    EmptyWord,
    #[error("cannot parse Conway word entry {0:?}")]
    Parse(String),
    #[error("division by zero: suffix C({}) evaluates to 0", join(.suffix))]
    DivisionByZero { suffix: Vec<BigInt> },
    #[error("S({p},{q}): p must be positive")]
    NonPositiveOrder { p: BigInt, q: BigInt },
    #[error("S({p},{q}): p and q are not coprime")]
    NotCoprime { p: BigInt, q: BigInt },
    #[error("{0} is the meridian slope and has no Schubert form")]
    InfiniteFraction(Slope),
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Twist-region encoding `C(a1, ..., ak)` of a rational tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayWord(Vec<BigInt>);

impl ConwayWord {
    pub fn new<I, T>(entries: I) -> Result<Self, TwoBridgeError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let v: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        if v.is_empty() {
            return Err(TwoBridgeError::EmptyWord);
        }
        Ok(ConwayWord(v))
    }

    /// The family word `C(n, n, -1, n, n)`.
    pub fn family(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        ConwayWord(vec![n.clone(), n.clone(), BigInt::from(-1), n.clone(), n])
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// Evaluates `1/(a1 + 1/(a2 + ... + 1/ak))` exactly.
    ///
    /// Fails only when some reciprocal is actually taken of zero; the error
    /// carries the suffix of the word whose value vanished.
    pub fn evaluate(&self) -> Result<Slope, TwoBridgeError> {
        let k = self.0.len();
        // value of the suffix starting at i, as num/den
        let mut num = self.0[k - 1].clone();
        let mut den = BigInt::one();
        for i in (0..k - 1).rev() {
            if num.is_zero() {
                return Err(self.zero_suffix(i + 1));
            }
            let next = &self.0[i] * &num + &den;
            den = num;
            num = next;
        }
        if num.is_zero() {
            return Err(self.zero_suffix(0));
        }
        Ok(Slope::new(den, num).expect("den and num never both vanish"))
    }

    fn zero_suffix(&self, start: usize) -> TwoBridgeError {
        TwoBridgeError::DivisionByZero {
            suffix: self.0[start..].to_vec(),
        }
    }

    /// Crossing change at every crossing: negates each entry.
    pub fn mirror(&self) -> Self {
        ConwayWord(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({})", join(&self.0))
    }
}

/// Accepts comma- and/or whitespace-separated integers, optionally wrapped
/// as `C(...)`.
impl FromStr for ConwayWord {
    type Err = TwoBridgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut t = s.trim();
        if let Some(inner) = t.strip_prefix("C(").and_then(|r| r.strip_suffix(')')) {
            t = inner;
        }
        let entries = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| TwoBridgeError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConwayWord::new(entries)
    }
}

/// Schubert normal form `S(p, q)` with `p >= 1` and `0 <= q < p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchubertForm {
    p: BigInt,
    q: BigInt,
}

impl SchubertForm {
    /// Reduces `q` into `[0, p)`. For `p > 1` the pair must be coprime.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, TwoBridgeError> {
        let (p, q) = (p.into(), q.into());
        if !p.is_positive() {
            return Err(TwoBridgeError::NonPositiveOrder { p, q });
        }
        if !p.is_one() && !q.gcd(&p).is_one() {
            return Err(TwoBridgeError::NotCoprime { p, q });
        }
        let q = q.mod_floor(&p);
        Ok(SchubertForm { p, q })
    }

    /// `β/α ↦ S(α, β mod α)`.
    pub fn from_fraction(s: &Slope) -> Result<Self, TwoBridgeError> {
        if s.is_meridian() {
            return Err(TwoBridgeError::InfiniteFraction(s.clone()));
        }
        Self::new(s.q().clone(), s.p().clone())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_knot(&self) -> bool {
        self.p.is_odd()
    }

    /// 1 for a knot (`p` odd), 2 for a link.
    pub fn component_count(&self) -> u8 {
        if self.is_knot() {
            1
        } else {
            2
        }
    }

    /// `q ↦ -q mod p`.
    pub fn mirror(&self) -> Self {
        SchubertForm {
            q: (-&self.q).mod_floor(&self.p),
            p: self.p.clone(),
        }
    }

    /// Inverse of `q` modulo `p`; `0` for `p = 1`.
    pub fn q_inverse(&self) -> BigInt {
        if self.p.is_one() {
            return BigInt::zero();
        }
        let e = self.q.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }

    /// Unoriented equivalence: same `p` and `q' ≡ q^{±1} (mod p)`.
    pub fn equivalent(&self, other: &SchubertForm) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.p <= BigInt::from(2) {
            return true;
        }
        other.q == self.q || other.q == self.q_inverse()
    }

    /// Equivalent to `other` or to its mirror image.
    pub fn equivalent_up_to_mirror(&self, other: &SchubertForm) -> bool {
        self.equivalent(other) || self.equivalent(&other.mirror())
    }

    /// Whether the lens space of this type admits an orientation-reversing
    /// self-homeomorphism: `p <= 2` or `q² ≡ -1 (mod p)`.
    pub fn is_achiral_lens(&self) -> bool {
        if self.p <= BigInt::from(2) {
            return true;
        }
        (&self.q * &self.q + 1u32).mod_floor(&self.p).is_zero()
    }
}

impl fmt::Display for SchubertForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.p, self.q)
    }
}

impl Serialize for SchubertForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> ConwayWord {
        ConwayWord::new(v.iter().copied()).unwrap()
    }

    fn sf(p: i64, q: i64) -> SchubertForm {
        SchubertForm::new(p, q).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(w(&[2, 2, -1, 2, 2]).evaluate().unwrap().to_string(), "1/5");
        assert_eq!(w(&[5]).evaluate().unwrap().to_string(), "1/5");
        assert_eq!(
            w(&[3, 3, -1, 3, 3]).evaluate().unwrap().to_string(),
            "11/40"
        );
        assert_eq!(
            w(&[-2, -2, 1, -2, -2]).evaluate().unwrap().to_string(),
            "-1/5"
        );
        assert_eq!(
            w(&[-1, -1, -1, -1, -1]).evaluate().unwrap().to_string(),
            "-5/8"
        );
    }

    #[test]
    fn evaluate_reports_zero_suffix() {
        assert_eq!(
            w(&[0]).evaluate(),
            Err(TwoBridgeError::DivisionByZero {
                suffix: vec![0.into()]
            })
        );
        // suffix (1, -1): 1 + 1/(-1) = 0
        let err = w(&[4, 1, -1]).evaluate().unwrap_err();
        assert_eq!(
            err,
            TwoBridgeError::DivisionByZero {
                suffix: vec![1.into(), (-1).into()]
            }
        );
        assert_eq!(
            err.to_string(),
            "division by zero: suffix C(1,-1) evaluates to 0"
        );
        // interior zeros are fine when nothing divides by them
        assert_eq!(w(&[2, 0, 3]).evaluate().unwrap().to_string(), "1/5");
    }

    #[test]
    fn parse_words() {
        assert_eq!(
            "2 2 -1 2 2".parse::<ConwayWord>().unwrap(),
            w(&[2, 2, -1, 2, 2])
        );
        assert_eq!(
            "C(3, 3,-1,3 ,3)".parse::<ConwayWord>().unwrap(),
            w(&[3, 3, -1, 3, 3])
        );
        assert_eq!("".parse::<ConwayWord>(), Err(TwoBridgeError::EmptyWord));
        assert!(matches!(
            "2 x".parse::<ConwayWord>(),
            Err(TwoBridgeError::Parse(_))
        ));
        assert_eq!(w(&[2, -1]).to_string(), "C(2,-1)");
    }

    #[test]
    fn conway_mirror_examples() {
        assert_eq!(w(&[2, 2, -1, 2, 2]).mirror(), w(&[-2, -2, 1, -2, -2]));
        assert_eq!(w(&[0]).mirror(), w(&[0]));
    }

    #[test]
    fn schubert_normalizes() {
        assert_eq!(sf(5, -1), sf(5, 4));
        assert_eq!(sf(40, 11).to_string(), "S(40,11)");
        assert_eq!(sf(1, 7), sf(1, 0));
        assert!(matches!(
            SchubertForm::new(6, 4),
            Err(TwoBridgeError::NotCoprime { .. })
        ));
        assert!(matches!(
            SchubertForm::new(0, 1),
            Err(TwoBridgeError::NonPositiveOrder { .. })
        ));
        let from = SchubertForm::from_fraction(&Slope::new(-5, 8).unwrap()).unwrap();
        assert_eq!(from, sf(8, 3));
        assert!(SchubertForm::from_fraction(&Slope::meridian()).is_err());
    }

    #[test]
    fn equivalence_examples() {
        assert!(sf(5, 2).equivalent(&sf(5, 3)));
        assert!(sf(5, 1).equivalent(&sf(5, 1)));
        assert!(!sf(5, 1).equivalent(&sf(7, 1)));
        assert!(!sf(40, 11).equivalent(&sf(40, 29)));
        assert!(sf(40, 11).equivalent_up_to_mirror(&sf(40, 29)));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(sf(5, 1).mirror(), sf(5, 4));
        assert_eq!(sf(5, 2).mirror(), sf(5, 3));
        assert_eq!(sf(2, 1).mirror(), sf(2, 1));
        assert_eq!(sf(1, 0).mirror(), sf(1, 0));
    }

    #[test]
    fn achirality_examples() {
        assert!(sf(5, 2).is_achiral_lens());
        assert!(!sf(5, 1).is_achiral_lens());
        assert!(sf(1, 0).is_achiral_lens());
        assert!(sf(2, 1).is_achiral_lens());
        assert!(!sf(40, 11).is_achiral_lens());
    }

    #[test]
    fn component_counts() {
        assert_eq!(sf(5, 1).component_count(), 1);
        assert_eq!(sf(40, 11).component_count(), 2);
        assert_eq!(sf(2, 1).component_count(), 2);
    }

    #[test]
    fn q_inverse_small() {
        assert_eq!(sf(5, 2).q_inverse(), 3.into());
        assert_eq!(sf(40, 11).q_inverse(), 11.into());
        assert_eq!(sf(2, 1).q_inverse(), 1.into());
    }
}
