//! Boolean states and bit-packed configurations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The state of a single automaton. The alphabet is fixed to {0, 1}.
pub type State = bool;

/// A word over {0,1} of fixed length, one letter per automaton.
///
/// Automaton 0 is stored in the most significant position so that the
/// numeric order of [`Configuration::index`] coincides with the
/// lexicographic order of the printed word (`"001" < "100"`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    len: u8,
    bits: u64,
}

impl Configuration {
    pub const MAX_LEN: usize = 64;

    pub fn zeros(len: usize) -> Self {
        assert!(len <= Self::MAX_LEN, "configuration longer than 64");
        Configuration {
            len: len as u8,
            bits: 0,
        }
    }

    /// Builds the configuration whose binary expansion (automaton 0 first)
    /// is `index`.
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(len <= Self::MAX_LEN, "configuration longer than 64");
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Configuration {
            len: len as u8,
            bits: index & mask,
        }
    }

    pub fn from_states(states: &[State]) -> Self {
        let mut x = Self::zeros(states.len());
        for (i, &s) in states.iter().enumerate() {
            x = x.with(i, s);
        }
        x
    }

    pub fn index(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn shift(&self, i: usize) -> usize {
        assert!(
            i < self.len(),
            "automaton {i} outside configuration of length {}",
            self.len
        );
        self.len() - 1 - i
    }

    pub fn get(&self, i: usize) -> State {
        (self.bits >> self.shift(i)) & 1 == 1
    }

    #[must_use]
    pub fn with(&self, i: usize, state: State) -> Self {
        let bit = 1u64 << self.shift(i);
        let bits = if state {
            self.bits | bit
        } else {
            self.bits & !bit
        };
        Configuration {
            len: self.len,
            bits,
        }
    }

    pub fn states(&self) -> Vec<State> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > Self::MAX_LEN {
            return Err(Error::InvalidConfiguration(s.to_string()));
        }
        let states = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidConfiguration(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_states(&states))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automaton_zero_is_the_first_letter() {
        let x: Configuration = "100".parse().unwrap();
        assert!(x.get(0));
        assert!(!x.get(2));
        assert_eq!(x.index(), 4);
        assert_eq!(x.to_string(), "100");
    }

    #[test]
    fn numeric_order_is_lexicographic() {
        let a: Configuration = "001".parse().unwrap();
        let b: Configuration = "100".parse().unwrap();
        assert!(a < b);
    }

    #[test]
    fn with_only_touches_one_letter() {
        let x: Configuration = "0101".parse().unwrap();
        assert_eq!(x.with(0, true).to_string(), "1101");
        assert_eq!(x.with(3, false).to_string(), "0100");
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x".parse::<Configuration>().is_err());
    }

    #[test]
    fn empty_configuration() {
        let x = Configuration::zeros(0);
        assert_eq!(x.to_string(), "");
        assert_eq!(Configuration::from_index(0, 0), x);
    }
}
