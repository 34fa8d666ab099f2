//! Executable checks for cs structure, cs-neighborliness, stackedness and
//! sphere-likeness, and a suite runner that audits the whole family on a grid
//! of `(d, n)` values.
//!
//! Sphere-likeness is certified by computable consequences only: a closed
//! pseudomanifold with the right Euler characteristic and GF(2) homology whose
//! vertex links pass the same test one dimension down.

mod checks;
mod homology;
mod report;
mod suite;

pub use checks::{
    check_cs_neighborly, check_free_involution, check_stacked, detect_suspension,
    free_involution_witness, is_closed_pseudomanifold, is_suspension_pair, neighborliness_witness,
    neighborly_candidates, pseudomanifold_witness, stackedness_witness,
};
pub use homology::{homology_z2, homology_z2_with_budget, BettiVectorZ2};
pub use report::{run_check, CheckRecord, Failure, Status, VerificationReport, Witness};
pub use suite::{
    check_claimed_sphere, check_link_identities, run_paper_suite, SuiteConfig, SuiteLevel,
};

use thiserror::Error;

use crate::complex::{Complex, ComplexError, Face};
use crate::construction::ConstructionError;

/// Default for [`Budget::max_faces`].
pub const DEFAULT_MAX_FACES: u64 = 5_000_000;

/// Enumeration guard: the largest number of faces a single check may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_faces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_faces: DEFAULT_MAX_FACES,
        }
    }
}

impl Budget {
    /// Number of faces of `∂C*_n` of dimension at most `d`, including `∅`. Every
    /// cs complex of dimension `d` on `V_n` has at most this many faces, and so
    /// does every neighborliness enumeration up to size `d + 1`.
    pub fn ambient_faces(d: usize, n: usize) -> u128 {
        let mut total = 1u128;
        let mut binom = 1u128;
        for j in 1..=(d + 1).min(n) {
            binom = binom * (n - j + 1) as u128 / j as u128;
            total += binom << j;
        }
        total
    }

    pub fn admits(&self, d: usize, n: usize) -> Result<(), VerifyError> {
        let required = Self::ambient_faces(d, n);
        if required > self.max_faces as u128 {
            Err(VerifyError::Resource {
                what: format!("complexes of dimension {d} on {} vertices", 2 * n),
                required: u64::try_from(required).unwrap_or(u64::MAX),
                budget: self.max_faces,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("resource guard: {what} needs up to {required} faces, budget is {budget}")]
    Resource {
        what: String,
        required: u64,
        budget: u64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Knobs for [`sphere_surrogate_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurrogateConfig {
    /// How many levels of vertex links are checked below the complex itself.
    pub link_depth: usize,
    pub budget: Budget,
}

impl Default for SurrogateConfig {
    fn default() -> Self {
        SurrogateConfig {
            link_depth: 2,
            budget: Budget::default(),
        }
    }
}

/// Checks the computable consequences of `a` being a combinatorial `d`-sphere.
pub fn sphere_surrogate_check(a: &Complex, d: isize, cfg: SurrogateConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.check("pure_of_dimension", || {
        if a.is_void() {
            return Err(Failure::new("void complex"));
        }
        match a.facets().iter().find(|f| f.dim() != d) {
            Some(f) => Err(Failure::with_face(
                format!("facet is not {d}-dimensional"),
                f.clone(),
            )),
            None => Ok(()),
        }
    });
    if !report.all_passed() {
        return report;
    }
    report.check("closed_pseudomanifold", || {
        match pseudomanifold_witness(a) {
            Some(w) => Err(Failure::with_face("ridge count or connectivity", w)),
            None => Ok(()),
        }
    });
    report.check("euler_characteristic", || {
        let chi = a.euler_characteristic();
        let expected = if d < 0 {
            0
        } else {
            1 + if d % 2 == 0 { 1 } else { -1 }
        };
        if chi == expected {
            Ok(())
        } else {
            Err(Failure::new(format!("chi = {chi}, expected {expected}")))
        }
    });
    report.check("homology_z2", || {
        let h = homology_z2_with_budget(a, cfg.budget)?;
        if h.is_sphere(d) {
            Ok(())
        } else {
            Err(Failure::new(format!("Betti numbers {:?}", h.ranks)))
        }
    });
    if cfg.link_depth > 0 && d >= 1 {
        let inner = SurrogateConfig {
            link_depth: cfg.link_depth - 1,
            ..cfg
        };
        report.check("vertex_links", || {
            for v in a.vertices() {
                let vf = Face::from_vertices([v]).expect("single vertex");
                let link = a.link(&vf)?;
                let sub = sphere_surrogate_check(&link, d - 1, inner);
                if let Some(fail) = sub.first_failure() {
                    return Err(Failure {
                        witness: Some(Witness::Face(vf)),
                        detail: format!("link of {v}: {}", fail.detail),
                    });
                }
            }
            Ok(())
        });
    }
    report
}
