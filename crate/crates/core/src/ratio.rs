//! Exact non-negative rational thresholds.
//!
//! Pruning thresholds and density parameters are compared in integer
//! arithmetic (cross multiplication in `u128`), never in floating point.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A non-negative rational `num/den` with `den > 0`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "(u64, u64)", into = "(u64, u64)")]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Ratio {
    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio denominator must be positive");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Ratio { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Ratio { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Compares `self` to the integer `k` exactly.
    pub fn cmp_int(&self, k: u64) -> Ordering {
        (self.num as u128).cmp(&(k as u128 * self.den as u128))
    }

    /// `self * factor >= value`, exactly.
    pub fn scaled_ge(&self, factor: u64, value: u64) -> bool {
        self.num as u128 * factor as u128 >= value as u128 * self.den as u128
    }

    /// `self * factor <= value`, exactly.
    pub fn scaled_le(&self, factor: u64, value: u64) -> bool {
        self.num as u128 * factor as u128 <= value as u128 * self.den as u128
    }

    /// Approximate value, for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl From<Ratio> for (u64, u64) {
    fn from(r: Ratio) -> Self {
        (r.num, r.den)
    }
}

impl TryFrom<(u64, u64)> for Ratio {
    type Error = String;

    fn try_from((num, den): (u64, u64)) -> Result<Self, Self::Error> {
        if den == 0 {
            return Err("ratio denominator must be positive".into());
        }
        Ok(Ratio::new(num, den))
    }
}

impl FromStr for Ratio {
    type Err = String;

    /// Parses `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let num: u64 = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let den: u64 = q
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator: {e}"))?;
            if den == 0 {
                return Err("denominator must be positive".into());
            }
            Ok(Ratio::new(num, den))
        } else {
            let num: u64 = s.parse().map_err(|e| format!("bad integer: {e}"))?;
            Ok(Ratio::new(num, 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compares_against_integers_exactly() {
        let t = Ratio::new(60, 177_147); // far below 1
        assert_eq!(t.cmp_int(0), Ordering::Greater);
        assert_eq!(t.cmp_int(1), Ordering::Less);
        assert_eq!(Ratio::new(4, 2).cmp_int(2), Ordering::Equal);
    }

    #[test]
    fn ordering_is_exact_for_large_values() {
        let a = Ratio::new(u64::MAX - 1, u64::MAX);
        let b = Ratio::one();
        assert!(a < b);
        assert!(a == a);
    }

    #[test]
    fn scaled_comparisons() {
        let alpha = Ratio::new(3, 5);
        // alpha * 10 = 6
        assert!(alpha.scaled_ge(10, 6));
        assert!(alpha.scaled_le(10, 6));
        assert!(!alpha.scaled_ge(10, 7));
        assert!(alpha.scaled_le(10, 7));
    }

    #[test]
    fn parses_fractions() {
        assert_eq!("1/4096".parse::<Ratio>().unwrap(), Ratio::new(1, 4096));
        assert_eq!("3".parse::<Ratio>().unwrap(), Ratio::new(3, 1));
        assert!("1/0".parse::<Ratio>().is_err());
    }
}
