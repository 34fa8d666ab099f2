//! The inductive family of cs spheres `Δ^d_n`, the auxiliary balls `B^{d,i}_n`,
//! the single-step variants `Δ^{d,i}_{n+1}` and the balls `D_n`.
//!
//! Every object lives on the labeled vertex set `V_n = {±v_1, …, ±v_n}`, with
//! `v_i` encoded as `i` and `-v_i` as `-i`. All results are memoized in a
//! [`Constructor`], which is safe to share between threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::complex::{Complex, ComplexError, Face, SignedVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionKind {
    /// `Δ^d_n`.
    Delta,
    /// `B^{d,i}_n`.
    Ball,
    /// `Δ^{d,i}_n`, one replacement step away from `Δ^d_{n-1}`.
    Variant,
    /// `D_n` for `d = 2k`.
    DBall,
    /// `∂C*_n`.
    CrossPoly,
    /// The explicit cycle `Δ^1_n`.
    Cycle,
}

/// Index triple identifying a constructed complex. `i` is only meaningful for
/// balls and variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructionKey {
    pub kind: ConstructionKind,
    pub d: usize,
    pub i: isize,
    pub n: usize,
}

impl ConstructionKey {
    pub fn delta(d: usize, n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::Delta,
            d,
            i: 0,
            n,
        }
    }

    pub fn ball(d: usize, i: isize, n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::Ball,
            d,
            i,
            n,
        }
    }

    pub fn variant(d: usize, i: isize, n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::Variant,
            d,
            i,
            n,
        }
    }

    /// `D_n` in dimension `2k`.
    pub fn d_ball(k: usize, n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::DBall,
            d: 2 * k,
            i: 0,
            n,
        }
    }

    pub fn cross_polytope(n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::CrossPoly,
            d: n.saturating_sub(1),
            i: 0,
            n,
        }
    }

    pub fn cycle(n: usize) -> Self {
        ConstructionKey {
            kind: ConstructionKind::Cycle,
            d: 1,
            i: 0,
            n,
        }
    }

    /// Checks the index bounds for this kind of object.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let &ConstructionKey { kind, d, i, n } = self;
        let fail = |reason: &str| {
            Err(ConstructionError::Domain {
                key: *self,
                reason: reason.to_string(),
            })
        };
        match kind {
            ConstructionKind::CrossPoly if n < 1 => fail("need n >= 1"),
            ConstructionKind::Cycle if n < 2 => fail("need n >= 2"),
            ConstructionKind::Delta | ConstructionKind::Ball | ConstructionKind::Variant
                if d < 1 =>
            {
                fail("need d >= 1")
            }
            ConstructionKind::Delta | ConstructionKind::Ball if n < d + 1 => {
                fail("need n >= d + 1")
            }
            ConstructionKind::Ball if i > ceil_half(d) => fail("need i <= ceil(d/2)"),
            ConstructionKind::Variant if d < 2 => fail("need d >= 2"),
            ConstructionKind::Variant if i < 1 || i > ceil_half(d) => {
                fail("need 1 <= i <= ceil(d/2)")
            }
            ConstructionKind::Variant if n < d + 2 => fail("need n >= d + 2"),
            ConstructionKind::DBall if d % 2 != 0 || d < 4 => fail("need d = 2k with k >= 2"),
            ConstructionKind::DBall if n < d + 1 => fail("need n >= 2k + 1"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ConstructionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ConstructionKey { kind, d, i, n } = *self;
        match kind {
            ConstructionKind::Delta => write!(f, "Delta^{d}_{n}"),
            ConstructionKind::Ball => write!(f, "B^{{{d},{i}}}_{n}"),
            ConstructionKind::Variant => write!(f, "Delta^{{{d},{i}}}_{n}"),
            ConstructionKind::DBall => write!(f, "D_{n} (k={})", d / 2),
            ConstructionKind::CrossPoly => write!(f, "dC*_{n}"),
            ConstructionKind::Cycle => write!(f, "cycle_{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{key}: index out of range ({reason})")]
    Domain {
        key: ConstructionKey,
        reason: String,
    },
    /// A subcomplex the recursion relies on is missing from its host.
    #[error("{key}: {what} is not a subcomplex (missing {witness})")]
    NotSubcomplex {
        key: ConstructionKey,
        what: String,
        witness: Face,
    },
    #[error("{key}: {what}")]
    InvariantViolated { key: ConstructionKey, what: String },
    #[error("{key}: {source}")]
    Complex {
        key: ConstructionKey,
        #[source]
        source: ComplexError,
    },
}

impl ConstructionError {
    /// A face pinpointing the failure, when there is one.
    pub fn witness(&self) -> Option<&Face> {
        match self {
            ConstructionError::NotSubcomplex { witness, .. } => Some(witness),
            ConstructionError::Complex { source, .. } => match source {
                ComplexError::NotAFace(f)
                | ComplexError::NotPure(f)
                | ComplexError::LinkNotBallOrSphere(f) => Some(f),
                ComplexError::NotPseudomanifold { ridge, .. } => Some(ridge),
                _ => None,
            },
            _ => None,
        }
    }
}

/// `⌈d/2⌉`.
pub fn ceil_half(d: usize) -> isize {
    d.div_ceil(2) as isize
}

/// `⌊d/2⌋`.
pub fn floor_half(d: usize) -> isize {
    (d / 2) as isize
}

fn v(i: usize) -> SignedVertex {
    SignedVertex::pos(i as u32)
}

/// Memoizing builder for the whole family.
///
/// The cache is keyed by [`ConstructionKey`] and guarded by a mutex that is never
/// held while a value is being computed, so concurrent callers may occasionally
/// duplicate work but always observe identical results.
#[derive(Default)]
pub struct Constructor {
    cache: Mutex<HashMap<ConstructionKey, Arc<Complex>>>,
}

impl Constructor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized complexes.
    pub fn cached(&self) -> usize {
        self.lock().len()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<ConstructionKey, Arc<Complex>>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn memo(
        &self,
        key: ConstructionKey,
        build: impl FnOnce() -> Result<Complex, ConstructionError>,
    ) -> Result<Arc<Complex>, ConstructionError> {
        key.validate()?;
        if let Some(c) = self.lock().get(&key) {
            return Ok(Arc::clone(c));
        }
        let value = Arc::new(build()?);
        Ok(Arc::clone(self.lock().entry(key).or_insert(value)))
    }

    /// Dispatches on the key kind.
    pub fn get(&self, key: ConstructionKey) -> Result<Arc<Complex>, ConstructionError> {
        match key.kind {
            ConstructionKind::Delta => self.delta(key.d, key.n),
            ConstructionKind::Ball => self.ball(key.d, key.i, key.n),
            ConstructionKind::Variant => self.delta_variant(key.d, key.i, key.n),
            ConstructionKind::DBall => self.special_ball_d(key.d / 2, key.n),
            ConstructionKind::CrossPoly => self.cross_polytope_boundary(key.n),
            ConstructionKind::Cycle => self.cycle(key.n),
        }
    }

    /// `∂C*_n`: one facet per sign choice on `v_1, …, v_n`.
    pub fn cross_polytope_boundary(&self, n: usize) -> Result<Arc<Complex>, ConstructionError> {
        self.memo(ConstructionKey::cross_polytope(n), || {
            let facets = (0u64..(1u64 << n))
                .map(|mask| {
                    let ids: Vec<i32> = (1..=n)
                        .map(|i| {
                            if mask & (1 << (i - 1)) != 0 {
                                -(i as i32)
                            } else {
                                i as i32
                            }
                        })
                        .collect();
                    Face::from_ids(&ids).expect("distinct ids")
                })
                .collect();
            Ok(Complex::from_antichain(facets))
        })
    }

    /// The cycle `(v_1, …, v_n, -v_1, …, -v_n, v_1)`.
    pub fn cycle(&self, n: usize) -> Result<Arc<Complex>, ConstructionError> {
        self.memo(ConstructionKey::cycle(n), || {
            let order: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|i| -i)).collect();
            let edges = (0..order.len())
                .map(|k| {
                    Face::from_ids(&[order[k], order[(k + 1) % order.len()]]).expect("distinct ids")
                })
                .collect();
            Ok(Complex::from_antichain(edges))
        })
    }

    /// `Δ^d_n`.
    pub fn delta(&self, d: usize, n: usize) -> Result<Arc<Complex>, ConstructionError> {
        let key = ConstructionKey::delta(d, n);
        self.memo(key, || {
            if n == d + 1 {
                Ok((*self.cross_polytope_boundary(n)?).clone())
            } else if d == 1 {
                Ok((*self.cycle(n)?).clone())
            } else {
                self.replacement_step(d, ceil_half(d), n - 1)
            }
        })
    }

    /// `B^{d,i}_n`. Void for `i < 0`.
    pub fn ball(&self, d: usize, i: isize, n: usize) -> Result<Arc<Complex>, ConstructionError> {
        let key = ConstructionKey::ball(d, i, n);
        self.memo(key, || {
            if i < 0 {
                return Ok(Complex::void());
            }
            if d == 1 && i == 0 {
                let edge = Face::from_ids(&[-1, n as i32]).expect("distinct ids");
                return Ok(Complex::simplex(edge));
            }
            if d % 2 == 1 && i == ceil_half(d) {
                // odd top case: complement of the previous ball in the sphere
                let sphere = self.delta(d, n)?;
                let lower = self.ball(d, i - 1, n)?;
                require_subcomplex(key, &lower, &sphere, "lower ball inside the sphere")?;
                return sphere
                    .facet_complement(&lower)
                    .map_err(|source| ConstructionError::Complex { key, source });
            }
            let wrap = |source| ConstructionError::Complex { key, source };
            let upper = self.ball(d - 1, i, n - 1)?.cone(v(n)).map_err(wrap)?;
            let lower = self
                .ball(d - 1, i - 1, n - 1)?
                .negate()
                .cone(v(n).antipode())
                .map_err(wrap)?;
            Ok(upper.union(&lower))
        })
    }

    /// Replaces `±B^{d,i-1}_n` inside `Δ^d_n` by the cones `±(∂B^{d,i-1}_n * v_{n+1})`,
    /// producing a complex on `V_{n+1}`. With `i = ⌈d/2⌉` this is the step that
    /// defines `Δ^d_{n+1}`.
    ///
    /// Fails loudly if the ball is not a subcomplex of the sphere, if a ball
    /// shares a facet with its negation, or if a cone does not have the same
    /// boundary as the ball it replaces.
    pub fn replacement_step(
        &self,
        d: usize,
        i: isize,
        n: usize,
    ) -> Result<Complex, ConstructionError> {
        let key = ConstructionKey::variant(d, i, n + 1);
        let wrap = |source| ConstructionError::Complex { key, source };
        let sphere = self.delta(d, n)?;
        let ball = self.ball(d, i - 1, n)?;
        if ball.is_void() {
            return Err(ConstructionError::InvariantViolated {
                key,
                what: "replacement ball is void".into(),
            });
        }
        require_subcomplex(key, &ball, &sphere, "replacement ball")?;
        let neg_ball = ball.negate();
        let kept = sphere
            .facet_complement(&ball)
            .and_then(|rest| rest.facet_complement(&neg_ball))
            .map_err(wrap)?;
        if kept.num_facets() + 2 * ball.num_facets() != sphere.num_facets() {
            return Err(ConstructionError::InvariantViolated {
                key,
                what: "replacement ball shares a facet with its negation".into(),
            });
        }
        let rim = ball.boundary().map_err(wrap)?;
        let cone = rim.cone(v(n + 1)).map_err(wrap)?;
        if cone.boundary().map_err(wrap)? != rim {
            return Err(ConstructionError::InvariantViolated {
                key,
                what: "cone boundary differs from the replaced ball's boundary".into(),
            });
        }
        Ok(kept.union(&cone).union(&cone.negate()))
    }

    /// `Δ^{d,i}_{n+1}`, given as `n_plus_1`.
    pub fn delta_variant(
        &self,
        d: usize,
        i: isize,
        n_plus_1: usize,
    ) -> Result<Arc<Complex>, ConstructionError> {
        self.memo(ConstructionKey::variant(d, i, n_plus_1), || {
            self.replacement_step(d, i, n_plus_1 - 1)
        })
    }

    /// The `2k`-ball `D_n` whose union with `-D_n` is `Δ^{2k}_n` and whose boundary
    /// is `Δ^{2k-1}_n`.
    pub fn special_ball_d(&self, k: usize, n: usize) -> Result<Arc<Complex>, ConstructionError> {
        let key = ConstructionKey::d_ball(k, n);
        self.memo(key, || {
            let d = 2 * k;
            if n == d + 1 {
                return Ok((*self.ball(d, k as isize, n)?).clone());
            }
            let m = n - 1;
            let wrap = |source| ConstructionError::Complex { key, source };
            let prev = self.special_ball_d(k, m)?;
            let big = self.ball(d, k as isize - 1, m)?;
            let small = self.ball(d - 1, k as isize - 1, m)?;

            let neg_prev = prev.negate();
            require_subcomplex(key, &big, &neg_prev, "B^{2k,k-1}_n inside -D_n")?;
            let kept = neg_prev.facet_complement(&big).map_err(wrap)?;
            let far_cone = small.negate().cone(v(n).antipode()).map_err(wrap)?;
            let rim = big.boundary().map_err(wrap)?;
            require_subcomplex(key, &small, &rim, "B^{2k-1,k-1}_n inside dB^{2k,k-1}_n")?;
            let near_cone = rim
                .facet_complement(&small)
                .map_err(wrap)?
                .cone(v(n))
                .map_err(wrap)?;
            Ok(kept.union(&far_cone).union(&near_cone))
        })
    }
}

fn require_subcomplex(
    key: ConstructionKey,
    part: &Complex,
    whole: &Complex,
    what: &str,
) -> Result<(), ConstructionError> {
    match part.first_face_missing_from(whole) {
        None => Ok(()),
        Some(witness) => Err(ConstructionError::NotSubcomplex {
            key,
            what: what.to_string(),
            witness,
        }),
    }
}
