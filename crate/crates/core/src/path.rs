//! Dyck paths as validated step sequences, with brute-force enumeration.

use std::fmt;

use crate::error::{Error, Result};

/// Largest half-length accepted by [`enumerate_paths`]. `C_10 = 16796`
/// paths of 20 steps each is the most the enumeration oracle should ever
/// materialize.
pub const MAX_ENUMERATION_HALF_LENGTH: u64 = 10;

/// One step of a Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    /// `+1` for [`Step::Up`], `-1` for [`Step::Down`].
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

/// A Dyck path: an even-length step sequence with nonnegative partial
/// sums that returns to zero. The invariants hold for every constructed
/// value; [`DyckPath::new`] rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates and wraps a step sequence.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if !Self::is_valid(&steps) {
            return Err(Error::OutOfDomain {
                what: "step sequence",
                requirement: "nonnegative partial sums returning to zero over even length",
                value: steps.len() as f64,
            });
        }
        Ok(DyckPath { steps })
    }

    /// Checks the Dyck invariants without constructing a path.
    pub fn is_valid(steps: &[Step]) -> bool {
        if steps.len() % 2 != 0 {
            return false;
        }
        let mut height: i64 = 0;
        for step in steps {
            height += step.delta();
            if height < 0 {
                return false;
            }
        }
        height == 0
    }

    /// Caller guarantees validity; checked when debug assertions are on.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(Self::is_valid(&steps));
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of steps, always even.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Half the number of steps, the `N` in `D_{2N}`.
    pub fn half_length(&self) -> u64 {
        (self.steps.len() / 2) as u64
    }

    /// Heights after each step; `heights()[i]` is the partial sum of the
    /// first `i + 1` steps.
    pub fn heights(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut height: i64 = 0;
        for step in &self.steps {
            height += step.delta();
            out.push(height as u64);
        }
        out
    }

    /// Largest partial sum along the path; zero only for the empty path.
    pub fn max_height(&self) -> u64 {
        let mut best: i64 = 0;
        let mut height: i64 = 0;
        for step in &self.steps {
            height += step.delta();
            best = best.max(height);
        }
        best as u64
    }
}

impl fmt::Display for DyckPath {
    /// Renders as a `U`/`D` word, e.g. `UUDD`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// All Dyck paths of half-length `half_length`, in lexicographic order
/// with `U < D`. Errors above [`MAX_ENUMERATION_HALF_LENGTH`].
pub fn enumerate_paths(half_length: u64) -> Result<Vec<DyckPath>> {
    if half_length > MAX_ENUMERATION_HALF_LENGTH {
        return Err(Error::EnumerationTooLarge {
            half_length,
            max: MAX_ENUMERATION_HALF_LENGTH,
        });
    }
    let total_steps = (2 * half_length) as usize;
    let mut paths = Vec::new();
    let mut prefix = Vec::with_capacity(total_steps);
    extend(&mut prefix, 0, total_steps, &mut paths);
    Ok(paths)
}

fn extend(prefix: &mut Vec<Step>, height: i64, total_steps: usize, out: &mut Vec<DyckPath>) {
    if prefix.len() == total_steps {
        out.push(DyckPath::from_steps_unchecked(prefix.clone()));
        return;
    }
    let remaining = (total_steps - prefix.len()) as i64;
    // An up step is possible whenever the remaining steps can still come
    // back down; a down step needs positive height.
    if height + 1 <= remaining - 1 {
        prefix.push(Step::Up);
        extend(prefix, height + 1, total_steps, out);
        prefix.pop();
    }
    if height > 0 {
        prefix.push(Step::Down);
        extend(prefix, height - 1, total_steps, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_from_word(word: &str) -> DyckPath {
        let steps = word
            .chars()
            .map(|c| if c == 'U' { Step::Up } else { Step::Down })
            .collect();
        DyckPath::new(steps).unwrap()
    }

    #[test]
    fn empty_path_is_valid() {
        let p = DyckPath::new(Vec::new()).unwrap();
        assert_eq!(p.half_length(), 0);
        assert_eq!(p.max_height(), 0);
        assert_eq!(p.to_string(), "");
    }

    #[test]
    fn rejects_negative_prefix() {
        assert!(DyckPath::new(vec![Step::Down, Step::Up]).is_err());
    }

    #[test]
    fn rejects_odd_length() {
        assert!(DyckPath::new(vec![Step::Up, Step::Down, Step::Up]).is_err());
    }

    #[test]
    fn rejects_nonzero_end() {
        assert!(DyckPath::new(vec![Step::Up, Step::Up, Step::Up, Step::Down]).is_err());
    }

    #[test]
    fn max_height_of_known_words() {
        assert_eq!(path_from_word("UDUD").max_height(), 1);
        assert_eq!(path_from_word("UUDD").max_height(), 2);
        assert_eq!(path_from_word("UUUDDDUD").max_height(), 3);
    }

    #[test]
    fn heights_track_partial_sums() {
        assert_eq!(path_from_word("UUDUDD").heights(), vec![1, 2, 1, 2, 1, 0]);
    }

    #[test]
    fn enumerate_zero_gives_the_empty_path() {
        let paths = enumerate_paths(0).unwrap();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].is_empty());
    }

    #[test]
    fn enumerate_two_gives_both_paths() {
        let paths = enumerate_paths(2).unwrap();
        let words: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
        assert_eq!(words, vec!["UUDD", "UDUD"]);
    }

    #[test]
    fn enumerate_four_gives_catalan_many() {
        assert_eq!(enumerate_paths(4).unwrap().len(), 14);
    }

    #[test]
    fn enumeration_counts_match_catalan_numbers() {
        // C_0..C_7
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_paths(n as u64).unwrap().len(), c, "N = {n}");
        }
    }

    #[test]
    fn enumeration_is_capped() {
        assert!(matches!(
            enumerate_paths(11),
            Err(Error::EnumerationTooLarge { half_length: 11, .. })
        ));
    }

    #[test]
    fn enumerated_paths_are_distinct_and_valid() {
        let paths = enumerate_paths(6).unwrap();
        let mut seen = std::collections::HashSet::new();
        for p in &paths {
            assert!(DyckPath::is_valid(p.steps()));
            assert_eq!(p.half_length(), 6);
            assert!(seen.insert(p.to_string()), "duplicate {p}");
        }
    }
}
