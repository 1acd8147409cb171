use thiserror::Error;

/// Size limits for the exhaustive parts of the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest `q^dim E` for which the endomorphism algebra is enumerated.
    pub algebra: u64,
    /// Largest automorphism group materialized element by element.
    pub units: u64,
    /// Largest `|G|^(n+1)·k` for degree-`n` cochain matrices.
    pub cochains: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { algebra: 1 << 20, units: 1 << 16, cochains: 1 << 22 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub needed: u128,
    pub limit: u128,
}

impl BudgetExceeded {
    pub fn check(what: &'static str, needed: u128, limit: u64) -> Result<(), BudgetExceeded> {
        if needed > limit as u128 {
            Err(BudgetExceeded { what, needed, limit: limit as u128 })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating.
pub fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
