//! Binary strings and dyadic rationals in `[0, 1]`.

use crate::error::{Error, Result};
use num_rational::Ratio;
use std::cmp::Ordering;
use std::fmt;

pub const MAX_LEVEL: u32 = 62;

/// A dyadic rational `numerator / 2^level` in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: u64,
    level: u32,
}

impl Dyadic {
    pub fn new(numerator: u64, level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::InvalidParameter(format!("dyadic level {level} exceeds {MAX_LEVEL}")));
        }
        if numerator > 1u64 << level {
            return Err(Error::InvalidParameter(format!("{numerator}/2^{level} exceeds 1")));
        }
        let (mut numerator, mut level) = (numerator, level);
        while level > 0 && numerator % 2 == 0 {
            numerator /= 2;
            level -= 1;
        }
        if numerator == 0 {
            level = 0;
        }
        Ok(Dyadic { numerator, level })
    }

    pub fn zero() -> Self {
        Dyadic { numerator: 0, level: 0 }
    }

    pub fn one() -> Self {
        Dyadic { numerator: 1, level: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_one(&self) -> bool {
        self.numerator == 1 && self.level == 0
    }

    /// Numerator over `2^n`, if the level allows it.
    pub fn at_level(&self, n: u32) -> Option<u64> {
        (self.level <= n).then(|| self.numerator << (n - self.level))
    }

    pub fn to_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.numerator as i64, 1i64 << self.level)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.level) as f64
    }

    pub fn from_ratio(r: Ratio<i64>) -> Option<Self> {
        let d = *r.denom();
        if *r.numer() < 0 || d & (d - 1) != 0 {
            return None;
        }
        Dyadic::new(*r.numer() as u64, d.trailing_zeros()).ok()
    }

    /// For `λ ∈ (0, 1)`, the string `w` with `λ = λ(w1)`.
    pub fn parent_string(&self) -> Option<BinaryString> {
        (self.level > 0).then(|| BinaryString {
            k: self.numerator >> 1,
            len: self.level - 1,
        })
    }

    /// Every dyadic of level at most `n`, ascending.
    pub fn all_up_to(n: u32) -> impl Iterator<Item = Dyadic> {
        (0..=1u64 << n).map(move |j| Dyadic::new(j, n).expect("in range"))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.level.max(other.level);
        self.at_level(n).cmp(&other.at_level(n))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.level)
        }
    }
}

/// A binary string `w`, stored as `k(w)` and `l(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString {
    k: u64,
    len: u32,
}

impl BinaryString {
    pub fn empty() -> Self {
        BinaryString { k: 0, len: 0 }
    }

    pub fn new(k: u64, len: u32) -> Result<Self> {
        if len > MAX_LEVEL || (len < 64 && k >> len != 0) {
            return Err(Error::InvalidParameter(format!("k = {k} does not fit {len} bits")));
        }
        Ok(BinaryString { k, len })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Self::empty());
        }
        let mut k = 0u64;
        for ch in s.chars() {
            k = k * 2
                + match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidParameter(format!("bad binary string {s:?}"))),
                };
        }
        Self::new(k, s.len() as u32)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `w_j`, 1-based.
    pub fn bit(&self, j: u32) -> u8 {
        ((self.k >> (self.len - j)) & 1) as u8
    }

    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.len).map(|j| self.bit(j))
    }

    pub fn child(&self, b: u8) -> Self {
        BinaryString {
            k: self.k * 2 + b as u64,
            len: self.len + 1,
        }
    }

    pub fn lambda(&self) -> Dyadic {
        Dyadic::new(self.k, self.len).expect("k < 2^len")
    }

    /// `w + 1`, or `None` for the all-ones string.
    pub fn succ(&self) -> Option<Self> {
        (self.k + 1 < 1u64 << self.len).then(|| BinaryString { k: self.k + 1, len: self.len })
    }

    /// `w - 1`, or `None` for the all-zeros string.
    pub fn pred(&self) -> Option<Self> {
        (self.k > 0).then(|| BinaryString { k: self.k - 1, len: self.len })
    }

    /// `λ(w + 1)`, which is 1 at the top.
    pub fn lambda_succ(&self) -> Dyadic {
        Dyadic::new(self.k + 1, self.len).expect("k + 1 ≤ 2^len")
    }

    /// `λ(w - 1)`, which is 0 at the bottom.
    pub fn lambda_pred(&self) -> Dyadic {
        Dyadic::new(self.k.saturating_sub(1), self.len).expect("in range")
    }

    /// All strings of length `n` in lexicographic order.
    pub fn all_of_length(n: u32) -> impl Iterator<Item = Self> {
        (0..1u64 << n).map(move |k| BinaryString { k, len: n })
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "ε");
        }
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The bookkeeping values attached to a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringCalc {
    pub lambda: Dyadic,
    pub k: u64,
    pub l: u32,
    pub succ: Option<BinaryString>,
    pub pred: Option<BinaryString>,
    pub lambda_succ: Dyadic,
    pub lambda_pred: Dyadic,
}

pub fn string_calc(w: &BinaryString) -> StringCalc {
    StringCalc {
        lambda: w.lambda(),
        k: w.k(),
        l: w.len(),
        succ: w.succ(),
        pred: w.pred(),
        lambda_succ: w.lambda_succ(),
        lambda_pred: w.lambda_pred(),
    }
}
