//! Resource limits and tie-breaking policy shared by the enumerating operations.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Raised when an enumeration would exceed a configured bound.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("resource limit exceeded for {what}: needs {needed}, limit is {limit}")]
pub struct ResourceLimit {
    pub what: &'static str,
    pub needed: u128,
    pub limit: u128,
}

impl ResourceLimit {
    pub(crate) fn check(what: &'static str, needed: u128, limit: u128) -> Result<(), ResourceLimit> {
        if needed > limit {
            Err(ResourceLimit { what, needed, limit })
        } else {
            Ok(())
        }
    }
}

/// Bounds applied by the exhaustive operations. All of them are overridable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of canonical representatives a powerset may range over.
    pub powerset_reps: usize,
    /// Maximum member count for sections and function spaces.
    pub enumeration: u128,
    /// Functor enumeration rejects `|obj a| * |obj b|` above this.
    pub object_pairs: usize,
    /// Search-node budget for functor and natural-transformation enumeration.
    pub node_budget: u64,
    /// Maximum number of natural transformations assembled into a functor category.
    pub functor_cat_morphisms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            powerset_reps: 20,
            enumeration: 1 << 20,
            object_pairs: 64,
            node_budget: 2_000_000,
            functor_cat_morphisms: 256,
        }
    }
}

/// How a choice among equally valid candidates is made.
///
/// `Lex` takes the first candidate in carrier (or morphism-table) order.
/// `Seed(n)` first permutes the candidates with a generator seeded from `n`
/// and a per-call salt, then takes the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    #[default]
    Lex,
    Seed(u64),
}

impl TieBreak {
    /// Returns the candidates in the order they should be tried.
    pub fn order<T: Clone>(&self, candidates: &[T], salt: u64) -> Vec<T> {
        let mut out = candidates.to_vec();
        if let TieBreak::Seed(seed) = *self {
            let mixed = seed ^ salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut rng = ChaCha8Rng::seed_from_u64(mixed);
            out.shuffle(&mut rng);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid tie-break `{0}` (expected `lex` or `seed:<N>`)")]
pub struct TieBreakParseError(pub String);

impl FromStr for TieBreak {
    type Err = TieBreakParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "lex" {
            return Ok(TieBreak::Lex);
        }
        s.strip_prefix("seed:")
            .and_then(|n| n.parse().ok())
            .map(TieBreak::Seed)
            .ok_or_else(|| TieBreakParseError(s.to_string()))
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lex => write!(f, "lex"),
            TieBreak::Seed(n) => write!(f, "seed:{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tie_breaks() {
        assert_eq!("lex".parse::<TieBreak>().unwrap(), TieBreak::Lex);
        assert_eq!("seed:7".parse::<TieBreak>().unwrap(), TieBreak::Seed(7));
        assert!("seed:".parse::<TieBreak>().is_err());
        assert!("random".parse::<TieBreak>().is_err());
        assert_eq!(TieBreak::Seed(7).to_string(), "seed:7");
    }

    #[test]
    fn seeded_order_is_a_deterministic_permutation() {
        let items: Vec<u32> = (0..10).collect();
        let a = TieBreak::Seed(7).order(&items, 3);
        let b = TieBreak::Seed(7).order(&items, 3);
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(sorted, items);
        assert_eq!(TieBreak::Lex.order(&items, 3), items);
    }
}
