//! Simplicial homology with GF(2) coefficients.
//!
//! Boundary matrices are reduced column by column with sparse columns (sorted
//! row indices, addition = symmetric difference), processing dimensions from the
//! top down so that pivots found in dimension `k+1` clear the matching columns in
//! dimension `k` before they are reduced.

use std::collections::HashMap;

use crate::complex::{Complex, Face};

use super::{Budget, VerifyError};

/// Ranks `b_0, …, b_d` of `H_*(A; GF(2))` with the reduced ranks alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVectorZ2 {
    pub ranks: Vec<usize>,
    /// Same as `ranks` except `b̃_0 = b_0 - 1`. For `{∅}` both are empty and the
    /// only nonzero reduced group is in degree -1.
    pub reduced: Vec<usize>,
}

impl BettiVectorZ2 {
    /// Reduced homology of a `d`-sphere: one class in degree `d`.
    pub fn is_sphere(&self, d: isize) -> bool {
        if d < 0 {
            return d == -1 && self.ranks.is_empty();
        }
        let d = d as usize;
        self.reduced.len() == d + 1
            && self
                .reduced
                .iter()
                .enumerate()
                .all(|(k, &b)| b == usize::from(k == d))
    }

    /// Acyclic with at least one vertex.
    pub fn is_ball(&self) -> bool {
        !self.ranks.is_empty() && self.reduced.iter().all(|&b| b == 0)
    }
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// GF(2) Betti numbers, refusing complexes with more faces than `budget` allows.
pub fn homology_z2_with_budget(a: &Complex, budget: Budget) -> Result<BettiVectorZ2, VerifyError> {
    if a.is_void() {
        return Err(VerifyError::Precondition(
            "homology of the void complex is undefined".into(),
        ));
    }
    // faces_by_dim()[s] holds faces with s vertices
    let levels = a.faces_by_dim();
    let total: u64 = levels.iter().map(|l| l.len() as u64).sum();
    if total > budget.max_faces {
        return Err(VerifyError::Resource {
            what: "homology".into(),
            required: total,
            budget: budget.max_faces,
        });
    }
    let top = levels.len() - 1; // number of vertices in the largest faces
    if top == 0 {
        return Ok(BettiVectorZ2 {
            ranks: Vec::new(),
            reduced: Vec::new(),
        });
    }

    // rank[s] = rank of the boundary map from s-vertex faces to (s-1)-vertex faces
    let mut rank = vec![0usize; top + 1];
    let mut cleared: Vec<bool> = Vec::new();
    for s in (2..=top).rev() {
        let rows: HashMap<&Face, u32> = levels[s - 1]
            .iter()
            .enumerate()
            .map(|(k, f)| (f, k as u32))
            .collect();
        let mut pivot_col: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut next_cleared = vec![false; levels[s - 1].len()];
        for (c, face) in levels[s].iter().enumerate() {
            if cleared.get(c).copied().unwrap_or(false) {
                continue;
            }
            let mut col: Vec<u32> = (0..face.len())
                .map(|k| rows[&face.without_index(k)])
                .collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match pivot_col.get(&low) {
                    Some(p) => col = symmetric_difference(&col, p),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                next_cleared[low as usize] = true;
                pivot_col.insert(low, col);
                rank[s] += 1;
            }
        }
        cleared = next_cleared;
    }

    let mut ranks = Vec::with_capacity(top);
    for s in 1..=top {
        let down = if s >= 2 { rank[s] } else { 0 };
        let up = if s < top { rank[s + 1] } else { 0 };
        ranks.push(levels[s].len() - down - up);
    }
    let mut reduced = ranks.clone();
    reduced[0] -= 1;
    Ok(BettiVectorZ2 { ranks, reduced })
}

pub fn homology_z2(a: &Complex) -> Result<BettiVectorZ2, VerifyError> {
    homology_z2_with_budget(a, Budget::default())
}
