use std::fmt;

use serde::{Deserialize, Serialize};

/// Face numbers `(f_{-1}, f_0, …, f_d)`. Empty for the void complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Number of faces of dimension `k` (`k >= -1`); zero past the top.
    pub fn get(&self, k: isize) -> u64 {
        usize::try_from(k + 1)
            .ok()
            .and_then(|idx| self.0.get(idx).copied())
            .unwrap_or(0)
    }

    /// `Σ_{k≥0} (-1)^k f_k` (unreduced).
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .skip(1)
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
