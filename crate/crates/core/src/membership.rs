//! Three-valued membership verdicts under Kleene logic.
//!
//! `In` and `Out` are exact truths about the full, untruncated set; `Unknown`
//! records that a truncated inspection could not settle the query.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl Membership {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Membership {
        match self {
            Membership::In => Membership::Out,
            Membership::Out => Membership::In,
            Membership::Unknown => Membership::Unknown,
        }
    }

    pub fn and(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::Out, _) | (_, Membership::Out) => Membership::Out,
            (Membership::In, Membership::In) => Membership::In,
            _ => Membership::Unknown,
        }
    }

    pub fn or(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::In, _) | (_, Membership::In) => Membership::In,
            (Membership::Out, Membership::Out) => Membership::Out,
            _ => Membership::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Membership {
        if b {
            Membership::In
        } else {
            Membership::Out
        }
    }

    pub fn is_in(self) -> bool {
        self == Membership::In
    }

    pub fn is_out(self) -> bool {
        self == Membership::Out
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::In => write!(f, "In"),
            Membership::Out => write!(f, "Out"),
            Membership::Unknown => write!(f, "Unknown"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::Membership::{In, Out, Unknown};

    #[test]
    fn kleene_tables() {
        assert_eq!(In.and(Unknown), Unknown);
        assert_eq!(Out.and(Unknown), Out);
        assert_eq!(In.or(Unknown), In);
        assert_eq!(Out.or(Unknown), Unknown);
        assert_eq!(Unknown.not(), Unknown);
        // De Morgan over all nine pairs
        for a in [In, Out, Unknown] {
            for b in [In, Out, Unknown] {
                assert_eq!(a.or(b).not(), a.not().and(b.not()));
                assert_eq!(a.and(b).not(), a.not().or(b.not()));
            }
        }
    }
}
