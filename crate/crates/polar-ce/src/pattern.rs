//! Bit-channel addressing.
//!
//! This module is the single source of truth for the transform convention used
//! across the workspace. Bit-channel `i` (1-based) at level `k` is addressed by the
//! binary digits of `i - 1`, most significant bit first:
//!
//! ```text
//! bit 0  =  check step     =  minus transform (the worse child)
//! bit 1  =  variable step  =  plus transform  (the better child)
//! ```
//!
//! Worked anchor: at level 3, bit-channel 6 has digits of 5 = `101`, so its pattern
//! is variable, check, variable, applied in that order starting from the raw channel.

use crate::error::{CeError, Result};

/// Largest supported polarization level; keeps `2^level` within `u64` with headroom.
pub const MAX_LEVEL: u32 = 60;

/// One polar transform step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Check-node combination (bit 0, minus transform): degrades the channel.
    Check,
    /// Variable-node combination (bit 1, plus transform): upgrades the channel.
    Var,
}

impl Step {
    /// The bit value of this step in channel indices.
    pub fn bit(self) -> u8 {
        match self {
            Step::Check => 0,
            Step::Var => 1,
        }
    }

    /// The step encoded by a bit.
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Step::Check
        } else {
            Step::Var
        }
    }

    /// ASCII character used in pattern strings.
    pub fn to_char(self) -> char {
        match self {
            Step::Check => '0',
            Step::Var => '1',
        }
    }
}

/// A sequence of transform steps, applied first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitPattern {
    steps: Vec<Step>,
}

impl BitPattern {
    /// Pattern of bit-channel `index` (1-based) at `level`: the binary digits of
    /// `index - 1`, MSB first, padded to `level` steps.
    ///
    /// # Errors
    ///
    /// [`CeError::LevelTooLarge`] above [`MAX_LEVEL`]; [`CeError::IndexOutOfRange`]
    /// outside `1..=2^level`.
    pub fn from_index(level: u32, index: u64) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(CeError::LevelTooLarge { level, max: MAX_LEVEL });
        }
        let max = 1u64 << level;
        if index == 0 || index > max {
            return Err(CeError::IndexOutOfRange { index, max });
        }
        let offset = index - 1;
        let steps = (0..level)
            .rev()
            .map(|b| Step::from_bit(((offset >> b) & 1) as u8))
            .collect();
        Ok(BitPattern { steps })
    }

    /// Parses a pattern string of '0' and '1' characters, e.g. `"101"`.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_LEVEL as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(CeError::BadPatternString { got: s.to_string() });
        }
        let steps = s.bytes().map(|b| Step::from_bit(b - b'0')).collect();
        Ok(BitPattern { steps })
    }

    /// Builds a pattern directly from steps. Errors on empty or oversized input.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() || steps.len() > MAX_LEVEL as usize {
            return Err(CeError::BadPatternString {
                got: format!("{} steps", steps.len()),
            });
        }
        Ok(BitPattern { steps })
    }

    /// The steps, in application order.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of steps (the polarization level).
    pub fn level(&self) -> u32 {
        self.steps.len() as u32
    }

    /// The 1-based bit-channel index this pattern addresses at its level.
    pub fn index(&self) -> u64 {
        let mut offset = 0u64;
        for s in &self.steps {
            offset = (offset << 1) | u64::from(s.bit());
        }
        offset + 1
    }
}

impl std::fmt::Display for BitPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_anchor_level3_index6_is_101() {
        let p = BitPattern::from_index(3, 6).unwrap();
        assert_eq!(p.to_string(), "101");
        assert_eq!(p.steps(), &[Step::Var, Step::Check, Step::Var]);
        assert_eq!(p.index(), 6);
    }

    #[test]
    fn index_round_trips_at_small_levels() {
        for level in 1..=6u32 {
            for index in 1..=(1u64 << level) {
                let p = BitPattern::from_index(level, index).unwrap();
                assert_eq!(p.level(), level);
                assert_eq!(p.index(), index);
                let back = BitPattern::from_bit_string(&p.to_string()).unwrap();
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn first_and_last_indices_are_all_check_and_all_var() {
        let first = BitPattern::from_index(4, 1).unwrap();
        assert_eq!(first.to_string(), "0000");
        let last = BitPattern::from_index(4, 16).unwrap();
        assert_eq!(last.to_string(), "1111");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            BitPattern::from_index(3, 0),
            Err(CeError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BitPattern::from_index(3, 9),
            Err(CeError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BitPattern::from_index(61, 1),
            Err(CeError::LevelTooLarge { .. })
        ));
        assert!(matches!(
            BitPattern::from_bit_string(""),
            Err(CeError::BadPatternString { .. })
        ));
        assert!(matches!(
            BitPattern::from_bit_string("01x"),
            Err(CeError::BadPatternString { .. })
        ));
    }

    #[test]
    fn step_bits_match_convention() {
        assert_eq!(Step::Check.bit(), 0);
        assert_eq!(Step::Var.bit(), 1);
        assert_eq!(Step::from_bit(0), Step::Check);
        assert_eq!(Step::from_bit(1), Step::Var);
        assert_eq!(Step::Check.to_char(), '0');
        assert_eq!(Step::Var.to_char(), '1');
    }
}
