//! Enumeration guards. Exceeding one is an explicit error, never a silent truncation.

use crate::error::{Error, Result};
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Guards {
    /// Largest ground set for the exchange-axiom check.
    pub axiom_ground: usize,
    /// Largest ground set for circuit enumeration.
    pub circuit_ground: usize,
    /// Largest number of maximal minors evaluated by `from_rowspace`.
    pub minors: usize,
    /// Largest number of basis pairs visited by the exchange-axiom check.
    pub exchange_pairs: usize,
    /// Largest number of vectors held during an elimination closure.
    pub closure_vectors: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { axiom_ground: 16, circuit_ground: 20, minors: 250_000, exchange_pairs: 4_000_000, closure_vectors: 4_000 }
    }
}

impl Guards {
    /// Defaults overridden by `TROPICAL_GUARD_AXIOM`, `TROPICAL_GUARD_CIRCUITS`,
    /// `TROPICAL_GUARD_MINORS`, `TROPICAL_GUARD_PAIRS` and `TROPICAL_GUARD_CLOSURE`.
    pub fn from_env() -> Self {
        let mut g = Guards::default();
        let read = |name: &str, slot: &mut usize| {
            if let Some(v) = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        };
        read("TROPICAL_GUARD_AXIOM", &mut g.axiom_ground);
        read("TROPICAL_GUARD_CIRCUITS", &mut g.circuit_ground);
        read("TROPICAL_GUARD_MINORS", &mut g.minors);
        read("TROPICAL_GUARD_PAIRS", &mut g.exchange_pairs);
        read("TROPICAL_GUARD_CLOSURE", &mut g.closure_vectors);
        g
    }

    pub fn global() -> &'static Guards {
        static G: OnceLock<Guards> = OnceLock::new();
        G.get_or_init(Guards::from_env)
    }
}

pub fn check_guard(name: &'static str, limit: usize, needed: usize) -> Result<()> {
    if needed > limit {
        Err(Error::Guard { name, limit, needed })
    } else {
        Ok(())
    }
}
