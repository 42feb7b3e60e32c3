//! Exact possibility degrees.
//!
//! A [`Possibility`] is a rational number in `[0, 1]`. The only operations the
//! checker performs on them are `min`, `max` and comparison, so no value is
//! ever created that was not already present in the input.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

/// Maximum number of fractional digits accepted in a decimal literal.
pub const MAX_FRACTION_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PossibilityError {
    #[error("possibility {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed decimal literal `{0}`")]
    Malformed(String),
    #[error("decimal literal `{0}` has more than {MAX_FRACTION_DIGITS} fractional digits")]
    TooPrecise(String),
}

/// A possibility degree: an exact rational in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Possibility(Ratio<u64>);

impl Possibility {
    pub const ZERO: Possibility = Possibility(Ratio::new_raw(0, 1));
    pub const ONE: Possibility = Possibility(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reduced. Fails unless the value lies in `[0, 1]`.
    pub fn new(numer: u64, denom: u64) -> Result<Self, PossibilityError> {
        if denom == 0 {
            return Err(PossibilityError::ZeroDenominator);
        }
        if numer > denom {
            return Err(PossibilityError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Possibility(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero()
    }

    /// Lossy conversion for display and timing plots only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Renders the value as a terminating decimal, if it has one.
    pub fn to_decimal_string(&self) -> Option<String> {
        let mut denom = self.denom();
        let (mut twos, mut fives) = (0u32, 0u32);
        while denom.is_multiple_of(2) {
            denom /= 2;
            twos += 1;
        }
        while denom.is_multiple_of(5) {
            denom /= 5;
            fives += 1;
        }
        if denom != 1 {
            return None;
        }
        let digits = twos.max(fives);
        // numer/denom == numer * (10^digits / denom) / 10^digits
        let scale = 10u128.pow(digits) / self.denom() as u128;
        let scaled = self.numer() as u128 * scale;
        if digits == 0 {
            return Some(scaled.to_string());
        }
        let unit = 10u128.pow(digits);
        let int = scaled / unit;
        let frac = scaled % unit;
        let frac = format!("{:0width$}", frac, width = digits as usize);
        Some(format!("{int}.{}", frac.trim_end_matches('0')))
    }
}

impl Ord for Possibility {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(&other.numer());
        }
        let lhs = self.numer() as u128 * other.denom() as u128;
        let rhs = other.numer() as u128 * self.denom() as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Possibility {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Possibility {
    fn default() -> Self {
        Possibility::ZERO
    }
}

impl From<bool> for Possibility {
    fn from(b: bool) -> Self {
        if b {
            Possibility::ONE
        } else {
            Possibility::ZERO
        }
    }
}

impl FromStr for Possibility {
    type Err = PossibilityError;

    /// Parses a decimal literal (`1`, `0.25`, `.5`) or a fraction (`1/3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|_| PossibilityError::Malformed(s.to_string()))?;
            let d: u64 = d
                .trim()
                .parse()
                .map_err(|_| PossibilityError::Malformed(s.to_string()))?;
            return Possibility::new(n, d);
        }
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !all_digits(int) || !all_digits(frac) {
            return Err(PossibilityError::Malformed(s.to_string()));
        }
        if s.ends_with('.') {
            return Err(PossibilityError::Malformed(s.to_string()));
        }
        if frac.len() > MAX_FRACTION_DIGITS {
            return Err(PossibilityError::TooPrecise(s.to_string()));
        }
        let int = int.trim_start_matches('0');
        if int.len() > 1 {
            return Err(PossibilityError::OutOfRange(s.to_string()));
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().unwrap()
        };
        let frac_val: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().unwrap()
        };
        let denom = 10u64.pow(frac.len() as u32);
        let numer = int * denom + frac_val;
        Possibility::new(numer, denom).map_err(|_| PossibilityError::OutOfRange(s.to_string()))
    }
}

impl fmt::Display for Possibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_decimal_string() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Possibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for building a possibility from a literal in tests and examples.
///
/// Panics on malformed input.
pub fn poss(s: &str) -> Possibility {
    s.parse()
        .unwrap_or_else(|e| panic!("bad possibility literal {s:?}: {e}"))
}
