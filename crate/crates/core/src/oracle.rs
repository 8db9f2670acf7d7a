//! Brute-force reference semantics.
//!
//! Works directly from the attack pairs with bitmask subsets and shares no
//! code with the matrix search, so the two can check each other.

use std::collections::BTreeSet;

use crate::af::{ArgId, ArgumentationFramework, Extension};
use crate::error::SolveError;

pub const MAX_ARGUMENTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsKind {
    ConflictFree,
    Admissible,
    Complete,
    Stable,
    Grounded,
}

/// Attack relation as bitmasks over at most 32 arguments.
struct Masks {
    n: usize,
    attackers: Vec<u32>,
    targets: Vec<u32>,
}

impl Masks {
    fn new(af: &ArgumentationFramework) -> Self {
        let n = af.len();
        let mut attackers = vec![0u32; n];
        let mut targets = vec![0u32; n];
        for (a, b) in af.attacks() {
            attackers[b] |= 1 << a;
            targets[a] |= 1 << b;
        }
        Self {
            n,
            attackers,
            targets,
        }
    }

    fn attacked_by(&self, set: u32) -> u32 {
        (0..self.n)
            .filter(|&a| set & (1 << a) != 0)
            .fold(0, |acc, a| acc | self.targets[a])
    }

    fn conflict_free(&self, set: u32) -> bool {
        self.attacked_by(set) & set == 0
    }

    /// Arguments all of whose attackers are attacked by `set`.
    fn defended_by(&self, set: u32) -> u32 {
        let hit = self.attacked_by(set);
        (0..self.n)
            .filter(|&a| self.attackers[a] & !hit == 0)
            .fold(0, |acc, a| acc | (1 << a))
    }

    fn check(&self, set: u32, kind: SemanticsKind) -> bool {
        let all = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        match kind {
            SemanticsKind::ConflictFree => self.conflict_free(set),
            SemanticsKind::Admissible => {
                self.conflict_free(set) && set & !self.defended_by(set) == 0
            }
            SemanticsKind::Complete => self.conflict_free(set) && self.defended_by(set) == set,
            SemanticsKind::Stable => {
                self.conflict_free(set) && (set | self.attacked_by(set)) == all
            }
            SemanticsKind::Grounded => {
                self.check(set, SemanticsKind::Complete)
                    && (0..=all).all(|other| {
                        !self.check(other, SemanticsKind::Complete) || set & !other == 0
                    })
            }
        }
    }
}

fn to_mask(n: usize, set: &[ArgId]) -> u32 {
    set.iter().fold(0, |acc, &a| {
        assert!(a < n, "argument {a} out of range");
        acc | (1 << a)
    })
}

fn from_mask(n: usize, mask: u32) -> Extension {
    (0..n).filter(|&a| mask & (1 << a) != 0).collect()
}

fn guard(af: &ArgumentationFramework) -> Result<(), SolveError> {
    if af.len() > MAX_ARGUMENTS {
        Err(SolveError::TooLarge {
            n: af.len(),
            limit: MAX_ARGUMENTS,
        })
    } else {
        Ok(())
    }
}

/// Evaluates the textbook definition of `kind` on `set`.
pub fn check(
    af: &ArgumentationFramework,
    set: &[ArgId],
    kind: SemanticsKind,
) -> Result<bool, SolveError> {
    guard(af)?;
    let masks = Masks::new(af);
    Ok(masks.check(to_mask(af.len(), set), kind))
}

/// All subsets satisfying `kind`. For `Grounded` this is the single least
/// complete extension.
pub fn enumerate_brute(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
) -> Result<BTreeSet<Extension>, SolveError> {
    guard(af)?;
    let n = af.len();
    let masks = Masks::new(af);
    let subsets = 0..(1u32 << n);

    if kind == SemanticsKind::Grounded {
        let complete: Vec<u32> = subsets
            .filter(|&s| masks.check(s, SemanticsKind::Complete))
            .collect();
        let least = complete
            .iter()
            .copied()
            .find(|&g| complete.iter().all(|&c| g & !c == 0))
            .expect("every framework has a least complete extension");
        return Ok(BTreeSet::from([from_mask(n, least)]));
    }

    Ok(subsets
        .filter(|&s| masks.check(s, kind))
        .map(|s| from_mask(n, s))
        .collect())
}
