use rayon::prelude::*;

use crate::complex::{Complex, Face, SignedVertex};
use crate::construction::{ceil_half, floor_half, Constructor};
use crate::io;

use super::{
    check_cs_neighborly, check_stacked, detect_suspension, free_involution_witness,
    homology_z2_with_budget, is_suspension_pair, neighborliness_witness, sphere_surrogate_check,
    stackedness_witness, Budget, Failure, SurrogateConfig, VerificationReport, VerifyError,
    Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteLevel {
    /// Spheres, balls and base cases.
    Basic,
    /// Everything: also links, suspensions, the `D_n` balls and format round trips.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub level: SuiteLevel,
    pub budget: Budget,
    pub surrogate: SurrogateConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            level: SuiteLevel::Full,
            budget: Budget::default(),
            surrogate: SurrogateConfig::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_level(level: SuiteLevel) -> Self {
        SuiteConfig {
            level,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self.surrogate.budget = budget;
        self
    }
}

fn ensure(cond: bool, detail: impl Into<String>) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::new(detail))
    }
}

fn ensure_equal(a: &Complex, b: &Complex, what: &str) -> Result<(), Failure> {
    if a == b {
        return Ok(());
    }
    if a.kind() != b.kind() {
        return Err(Failure::new(format!("{what}: one side is void")));
    }
    let witness = a
        .facets()
        .iter()
        .find(|f| b.facets().binary_search(f).is_err())
        .or_else(|| {
            b.facets()
                .iter()
                .find(|f| a.facets().binary_search(f).is_err())
        })
        .cloned()
        .unwrap_or_default();
    Err(Failure::with_face(
        format!("{what}: facet sets differ"),
        witness,
    ))
}

fn ensure_subcomplex(part: &Complex, whole: &Complex, what: &str) -> Result<(), Failure> {
    match part.first_face_missing_from(whole) {
        None => Ok(()),
        Some(f) => Err(Failure::with_face(format!("{what}: face missing"), f)),
    }
}

fn shared_facet(a: &Complex, b: &Complex) -> Option<Face> {
    a.facets()
        .iter()
        .find(|f| b.facets().binary_search(f).is_ok())
        .cloned()
}

fn ensure_no_shared_facet(a: &Complex, b: &Complex, what: &str) -> Result<(), Failure> {
    match shared_facet(a, b) {
        None => Ok(()),
        Some(f) => Err(Failure::with_face(format!("{what}: common facet"), f)),
    }
}

fn ensure_neighborly(a: &Complex, i: usize, n: usize) -> Result<(), Failure> {
    match neighborliness_witness(a, i, n) {
        None => Ok(()),
        Some(f) => Err(Failure::with_face(
            format!("not cs-{i}-neighborly: missing face"),
            f,
        )),
    }
}

fn ensure_not_neighborly(a: &Complex, i: usize, n: usize) -> Result<(), Failure> {
    ensure(
        !check_cs_neighborly(a, i, n),
        format!("unexpectedly cs-{i}-neighborly"),
    )
}

fn ensure_stacked(b: &Complex, i: usize) -> Result<(), Failure> {
    match stackedness_witness(b, i)? {
        None => Ok(()),
        Some(f) => Err(Failure::with_face(
            format!("not {i}-stacked: deep interior face"),
            f,
        )),
    }
}

fn ensure_free_involution(a: &Complex) -> Result<(), Failure> {
    match free_involution_witness(a) {
        None => Ok(()),
        Some(f) => Err(Failure::with_face("free involution fails", f)),
    }
}

fn ensure_sphere(a: &Complex, d: usize, cfg: &SuiteConfig) -> Result<(), Failure> {
    sphere_surrogate_check(a, d as isize, cfg.surrogate).as_outcome()
}

fn ensure_ball(b: &Complex, d: usize, cfg: &SuiteConfig) -> Result<(), Failure> {
    if let Some(f) = b.facets().iter().find(|f| f.dim() != d as isize) {
        return Err(Failure::with_face(
            format!("facet is not {d}-dimensional"),
            f.clone(),
        ));
    }
    let h = homology_z2_with_budget(b, cfg.budget)?;
    ensure(h.is_ball(), format!("ball has Betti numbers {:?}", h.ranks))?;
    let rim = b.boundary()?;
    let hb = homology_z2_with_budget(&rim, cfg.budget)?;
    ensure(
        hb.is_sphere(d as isize - 1),
        format!("boundary has Betti numbers {:?}", hb.ranks),
    )
}

/// Byte-identical re-serialization in both formats.
fn ensure_round_trip(a: &Complex, n: usize) -> Result<(), Failure> {
    let json = io::to_json(a, n as u32).map_err(|e| Failure::new(e.to_string()))?;
    let back = io::from_json(&json).map_err(|e| Failure::new(e.to_string()))?;
    ensure_equal(&back, a, "json round trip")?;
    let again = io::to_json(&back, n as u32).map_err(|e| Failure::new(e.to_string()))?;
    ensure(again == json, "json re-serialization differs")?;
    let flat = io::to_flat(a);
    let back = io::from_flat(&flat).map_err(|e| Failure::new(e.to_string()))?;
    ensure_equal(&back, a, "flat round trip")?;
    ensure(io::to_flat(&back) == flat, "flat re-serialization differs")
}

fn shift(a: &Complex, offset: i32) -> Complex {
    if a.is_void() {
        return Complex::void();
    }
    Complex::from_faces(a.facets().iter().map(|f| {
        Face::from_vertices(f.vertices().iter().map(|v| {
            let id = v.id();
            SignedVertex::new(id + id.signum() * offset).expect("nonzero")
        }))
        .expect("distinct")
    }))
}

fn pos(i: usize) -> SignedVertex {
    SignedVertex::pos(i as u32)
}

fn claim_dn(name: &str, d: usize, n: usize) -> String {
    format!("{name}[d={d},n={n}]")
}

fn claim_din(name: &str, d: usize, i: isize, n: usize) -> String {
    format!("{name}[d={d},i={i},n={n}]")
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Grid { d: usize, n: usize },
    Links { k: usize, n: usize },
}

/// Audits the family on every `(d, n)` with `1 <= d <= d_max` and
/// `d + 1 <= n <= d + 1 + n_slack`, plus the edge and triangle link identities on the
/// part of the grid they fit in. Records come out in a fixed order no matter
/// how the cells are scheduled.
pub fn run_paper_suite(
    ctor: &Constructor,
    d_max: usize,
    n_slack: usize,
    cfg: &SuiteConfig,
) -> Result<VerificationReport, VerifyError> {
    if d_max == 0 {
        return Err(VerifyError::Precondition("d_max must be at least 1".into()));
    }
    cfg.budget.admits(d_max, d_max + 1 + n_slack)?;

    let mut cells = Vec::new();
    for d in 1..=d_max {
        for n in d + 1..=d + 1 + n_slack {
            cells.push(Cell::Grid { d, n });
        }
    }
    if cfg.level == SuiteLevel::Full {
        for k in 2..=d_max / 2 {
            let mut n = 2 * k - 1;
            while n + 2 <= 2 * k + 1 + n_slack {
                cells.push(Cell::Links { k, n });
                n += 1;
            }
        }
    }

    // the recursion is sequential in n, so build the largest members up front;
    // a failure here resurfaces in the cells that need the value
    for d in 1..=d_max {
        let _ = ctor.delta(d, d + 1 + n_slack);
    }

    let parts: Vec<VerificationReport> = cells
        .par_iter()
        .map(|cell| match *cell {
            Cell::Grid { d, n } => grid_cell(ctor, d, n, cfg),
            Cell::Links { k, n } => check_link_identities(ctor, k, n).unwrap_or_else(|e| {
                let mut r = VerificationReport::new();
                r.check(format!("links[k={k},n={n}]"), || Err(e.into()));
                r
            }),
        })
        .collect();
    let mut report = VerificationReport::new();
    for part in parts {
        report.extend(part);
    }
    Ok(report)
}

fn grid_cell(ctor: &Constructor, d: usize, n: usize, cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new();
    let top = ceil_half(d);
    let half = floor_half(d);

    if n == d + 1 {
        r.check(claim_dn("base.cross_polytope", d, n), || {
            let delta = ctor.delta(d, n)?;
            ensure_equal(
                &delta,
                &*ctor.cross_polytope_boundary(n)?,
                "delta vs cross-polytope",
            )?;
            ensure(delta.num_facets() == 1 << n, "wrong facet count")
        });
    }
    if d == 1 && n >= 3 {
        r.check(claim_dn("base.cycle_by_replacement", d, n), || {
            let stepped = ctor.replacement_step(1, 1, n - 1)?;
            ensure_equal(&stepped, &*ctor.cycle(n)?, "replacement step vs cycle")
        });
    }

    r.check(claim_dn("delta.vertex_set", d, n), || {
        let delta = ctor.delta(d, n)?;
        ensure(
            delta.vertices().len() == 2 * n && delta.max_pair_index() as usize == n,
            "vertex set is not V_n",
        )
    });
    r.check(claim_dn("delta.free_involution", d, n), || {
        ensure_free_involution(&*ctor.delta(d, n)?)
    });
    r.check(claim_dn("delta.cs_neighborly", d, n), || {
        ensure_neighborly(&*ctor.delta(d, n)?, top as usize, n)
    });
    if n > d + 1 {
        r.check(claim_dn("delta.neighborliness_sharp", d, n), || {
            ensure_not_neighborly(&*ctor.delta(d, n)?, top as usize + 1, n)
        });
    }
    r.check(claim_dn("delta.sphere", d, n), || {
        ensure_sphere(&*ctor.delta(d, n)?, d, cfg)
    });

    for i in 0..=top {
        ball_checks(&mut r, ctor, d, i, n, cfg);
    }

    if cfg.level == SuiteLevel::Full {
        full_cell(&mut r, ctor, d, n, cfg, top, half);
    }
    r
}

fn ball_checks(
    r: &mut VerificationReport,
    ctor: &Constructor,
    d: usize,
    i: isize,
    n: usize,
    cfg: &SuiteConfig,
) {
    let iu = i as usize;
    let top = ceil_half(d);
    let half = floor_half(d);
    r.check(claim_din("ball.cs_neighborly", d, i, n), || {
        ensure_neighborly(&*ctor.ball(d, i, n)?, iu, n)
    });
    r.check(claim_din("ball.stacked", d, i, n), || {
        ensure_stacked(&*ctor.ball(d, i, n)?, iu)
    });
    r.check(claim_din("ball.homology", d, i, n), || {
        ensure_ball(&*ctor.ball(d, i, n)?, d, cfg)
    });
    r.check(claim_din("ball.nesting", d, i, n), || {
        let lower = ctor.ball(d, i - 1, n)?.negate();
        ensure_subcomplex(&lower, &*ctor.ball(d, i, n)?, "-B^{d,i-1} in B^{d,i}")
    });
    r.check(claim_din("ball.antipode_free", d, i, n), || {
        match ctor
            .ball(d, i, n)?
            .facets()
            .iter()
            .find(|f| f.has_antipodal_pair())
        {
            None => Ok(()),
            Some(f) => Err(Failure::with_face("facet with antipodal pair", f.clone())),
        }
    });
    if i <= half {
        r.check(claim_din("ball.no_shared_facet", d, i, n), || {
            let b = ctor.ball(d, i, n)?;
            ensure_no_shared_facet(&b, &b.negate(), "B and -B")
        });
        r.check(claim_din("ball.apex", d, i, n), || {
            let b = ctor.ball(d, i, n)?;
            let (p, q) = (pos(n), pos(n).antipode());
            match b.facets().iter().find(|f| !f.contains(p) && !f.contains(q)) {
                None => Ok(()),
                Some(f) => Err(Failure::with_face("facet avoids both apexes", f.clone())),
            }
        });
    }
    if i < top || (d % 2 == 1 && i == top) {
        r.check(claim_din("ball.inside_delta", d, i, n), || {
            ensure_subcomplex(&*ctor.ball(d, i, n)?, &*ctor.delta(d, n)?, "B inside delta")
        });
    }
    if i == 0 {
        r.check(claim_dn("ball.zero_is_simplex", d, n), || {
            let mut ids = vec![-1];
            ids.extend((n - d + 1..=n).map(|j| j as i32));
            let simplex = Complex::simplex(Face::from_ids(&ids)?);
            ensure_equal(&*ctor.ball(d, 0, n)?, &simplex, "B^{d,0}")
        });
    }
    if d == 3 && i == 1 {
        r.check(claim_dn("ball.jockusch_facets", d, n), || {
            let b = ctor.ball(3, 1, n)?;
            ensure(
                b.num_facets() == 2 * n - 3,
                format!("{} facets, expected {}", b.num_facets(), 2 * n - 3),
            )
        });
    }
}

fn full_cell(
    r: &mut VerificationReport,
    ctor: &Constructor,
    d: usize,
    n: usize,
    cfg: &SuiteConfig,
    top: isize,
    half: isize,
) {
    if d % 2 == 1 {
        let k = top;
        r.check(claim_dn("complement.duality", d, n), || {
            let lower = ctor.ball(d, k - 1, n)?;
            let upper = ctor.ball(d, k, n)?;
            ensure_equal(&lower.union(&upper), &*ctor.delta(d, n)?, "B^{k-1} u B^{k}")?;
            ensure_no_shared_facet(&lower, &upper, "B^{k-1} and B^{k}")
        });
    }

    if d >= 2 {
        for i in 0..=half {
            r.check(claim_din("partial_b.formula", d, i, n), || {
                let direct = ctor.ball(d, i, n)?.boundary()?;
                let up = ctor.ball(d - 1, i, n - 1)?;
                let down = ctor.ball(d - 1, i - 1, n - 1)?.negate();
                let formula = up
                    .boundary()?
                    .cone(pos(n))?
                    .union(&down.boundary()?.cone(pos(n).antipode())?)
                    .union(&up.facet_complement(&down)?);
                ensure_equal(&direct, &formula, "three-term formula")
            });
        }
        for j in 0..=half {
            for i in 0..=j {
                r.check(format!("inclusion[d={d},i={i},j={j},n={n}]"), || {
                    let rim = ctor.ball(d, j, n)?.boundary()?;
                    ensure_subcomplex(&*ctor.ball(d - 1, i, n)?, &rim, "B^{d-1,i} in dB^{d,j}")
                });
            }
        }
    }

    if d.is_multiple_of(2) {
        let k = half;
        r.check(claim_dn("top_ball.boundary", d, n), || {
            let rim = ctor.ball(d, k, n)?.boundary()?;
            ensure_equal(&rim, &*ctor.delta(d - 1, n)?, "dB^{2k,k} vs delta^{2k-1}")
        });
        if n > d {
            r.check(claim_dn("non_cs.boundary", d, n), || {
                let rim = ctor.ball(d, k - 1, n)?.boundary()?;
                ensure(free_involution_witness(&rim).is_some(), "boundary is cs")
            });
        }
        if n >= d + 2 {
            r.check(
                claim_dn("no_suspension", d, n),
                || match detect_suspension(&*ctor.delta(d, n)?) {
                    None => Ok(()),
                    Some((p, q)) => Err(Failure {
                        witness: Some(Witness::Face(
                            Face::from_vertices([p, q]).expect("distinct"),
                        )),
                        detail: "suspension pair found".into(),
                    }),
                },
            );
        }
        if n > d {
            r.check(claim_dn("special_ball.suspension", d, n), || {
                let b = ctor.ball(d, k, n)?;
                let sigma = ctor
                    .delta(d - 1, n - 1)?
                    .suspension(pos(n), pos(n).antipode())?;
                ensure_equal(&b.union(&b.negate()), &sigma, "B u -B vs suspension")
            });
            r.check(claim_dn("special_ball.subcomplex", d, n), || {
                let inside = ctor.ball(d, k, n)?.is_subcomplex_of(&*ctor.delta(d, n)?);
                ensure(
                    inside == (n == d + 1),
                    format!("subcomplex test gave {inside}"),
                )
            });
        }
        if d >= 4 {
            r.check(claim_dn("sphere_inclusion", d, n), || {
                ensure_subcomplex(
                    &*ctor.delta(d - 1, n)?,
                    &*ctor.delta(d, n)?,
                    "delta^{2k-1} in delta^{2k}",
                )
            });
            dball_checks(r, ctor, k as usize, n);
        }
    }

    for i in 0..=top {
        r.check(claim_din("ball.cone_boundary", d, i, n), || {
            let rim = ctor.ball(d, i, n)?.boundary()?;
            ensure_equal(&rim.cone(pos(n + 1))?.boundary()?, &rim, "d(dB * v)")
        });
        if d <= 4 {
            r.check(claim_din("ball.strict_boundary", d, i, n), || {
                let b = ctor.ball(d, i, n)?;
                ensure_equal(
                    &b.boundary_strict()?,
                    &b.boundary()?,
                    "strict vs ridge boundary",
                )
            });
        }
        if d <= 2 && n <= d + 3 {
            for j in 0..=1 {
                r.check(format!("join_stacked[d={d},i={i},j={j},n={n}]"), || {
                    let other = shift(&*ctor.ball(1, j, 3)?, n as i32);
                    let joined = ctor.ball(d, i, n)?.join(&other)?;
                    ensure_ball(&joined, d + 2, cfg)?;
                    ensure(
                        check_stacked(&joined, i as usize + j as usize)?,
                        "join is not stacked at the summed index",
                    )
                });
            }
        }
    }

    r.check(claim_dn("interior_shares_facet", d, n), || {
        let mut balls = Vec::new();
        for i in 0..=top {
            if i < top || d % 2 == 1 {
                let b = ctor.ball(d, i, n)?;
                balls.push(b.negate());
                balls.push((*b).clone());
            }
        }
        let interiors = balls
            .iter()
            .map(Complex::interior_faces)
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..balls.len() {
            for b in a + 1..balls.len() {
                let meet = interiors[a].intersection(&interiors[b]).min().cloned();
                if let Some(face) = meet {
                    if shared_facet(&balls[a], &balls[b]).is_none() {
                        return Err(Failure::with_face(
                            "interiors meet but no facet is shared",
                            face,
                        ));
                    }
                }
            }
        }
        Ok(())
    });

    if d >= 2 && n >= d + 2 {
        for i in 1..top {
            r.check(claim_din("variant.neighborly", d, i, n), || {
                let var = ctor.delta_variant(d, i, n)?;
                ensure_neighborly(&var, i as usize, n)?;
                ensure_not_neighborly(&var, i as usize + 1, n)
            });
            r.check(claim_din("variant.sphere", d, i, n), || {
                let var = ctor.delta_variant(d, i, n)?;
                ensure_free_involution(&var)?;
                ensure_sphere(&var, d, cfg)
            });
        }
        r.check(claim_din("variant.top_is_delta", d, top, n), || {
            ensure_equal(
                &*ctor.delta_variant(d, top, n)?,
                &*ctor.delta(d, n)?,
                "variant at the top index",
            )
        });
    }

    if (2..=5).contains(&d) {
        r.check(claim_dn("suspension_detected", d, n), || {
            let sigma = ctor
                .delta(d, n)?
                .suspension(pos(n + 1), pos(n + 1).antipode())?;
            match detect_suspension(&sigma) {
                Some((p, q)) if is_suspension_pair(&sigma, p, q) => Ok(()),
                _ => Err(Failure::new("no suspension pair found")),
            }
        });
    }

    r.check(claim_dn("io.round_trip", d, n), || {
        ensure_round_trip(&*ctor.delta(d, n)?, n)?;
        for i in -1..=top {
            ensure_round_trip(&*ctor.ball(d, i, n)?, n)?;
        }
        Ok(())
    });
}

fn dball_checks(r: &mut VerificationReport, ctor: &Constructor, k: usize, n: usize) {
    let d = 2 * k;
    r.check(claim_dn("d_ball.contains_neg_ball", d, n), || {
        let neg = ctor.ball(d, k as isize - 1, n)?.negate();
        ensure_subcomplex(&neg, &*ctor.special_ball_d(k, n)?, "-B^{2k,k-1} in D")
    });
    r.check(claim_dn("d_ball.union", d, n), || {
        let dn = ctor.special_ball_d(k, n)?;
        ensure_no_shared_facet(&dn, &dn.negate(), "D and -D")?;
        ensure_equal(&dn.union(&dn.negate()), &*ctor.delta(d, n)?, "D u -D")
    });
    r.check(claim_dn("d_ball.boundary", d, n), || {
        ensure_equal(
            &ctor.special_ball_d(k, n)?.boundary()?,
            &*ctor.delta(d - 1, n)?,
            "dD vs delta^{2k-1}",
        )
    });
    r.check(claim_dn("d_ball.stacked", d, n), || {
        ensure_stacked(&*ctor.special_ball_d(k, n)?, k)
    });
    if n > d + 1 {
        r.check(claim_dn("four_fillings", d, n), || {
            let dn = ctor.special_ball_d(k, n)?;
            let b = ctor.ball(d, k as isize, n)?;
            let fillings = [(*dn).clone(), dn.negate(), (*b).clone(), b.negate()];
            let rim = ctor.delta(d - 1, n)?;
            for (x, f) in fillings.iter().enumerate() {
                ensure_equal(&f.boundary()?, &rim, &format!("filling {x} boundary"))?;
                ensure_stacked(f, k)?;
                for g in &fillings[x + 1..] {
                    ensure(f != g, format!("filling {x} repeats"))?;
                }
            }
            Ok(())
        });
    }
}

/// `lk(v_n v_{n+1}, Δ^{2k-1}_{n+1}) = Δ^{2k-3}_{n-1} = lk(v_n v_{n+1} v_{n+2}, Δ^{2k}_{n+2})`.
pub fn check_link_identities(
    ctor: &Constructor,
    k: usize,
    n: usize,
) -> Result<VerificationReport, VerifyError> {
    if k < 2 || n + 1 < 2 * k {
        return Err(VerifyError::Precondition(format!(
            "link identities need k >= 2 and n >= 2k - 1, got k = {k}, n = {n}"
        )));
    }
    let mut r = VerificationReport::new();
    let target = ctor.delta(2 * k - 3, n - 1)?;
    r.check(format!("links.odd[k={k},n={n}]"), || {
        let edge = Face::from_vertices([pos(n), pos(n + 1)]).expect("distinct");
        let link = ctor.delta(2 * k - 1, n + 1)?.link(&edge)?;
        ensure_equal(&link, &target, "edge link")
    });
    r.check(format!("links.even[k={k},n={n}]"), || {
        let tri = Face::from_vertices([pos(n), pos(n + 1), pos(n + 2)]).expect("distinct");
        let link = ctor.delta(2 * k, n + 2)?.link(&tri)?;
        ensure_equal(&link, &target, "triangle link")
    });
    Ok(r)
}

/// Checks a user-supplied complex claimed to be `Δ^d_n`: its cs structure and
/// neighborliness, the sphere surrogate, and equality with the construction.
pub fn check_claimed_sphere(
    ctor: &Constructor,
    a: &Complex,
    d: usize,
    n: usize,
    cfg: &SuiteConfig,
) -> Result<VerificationReport, VerifyError> {
    cfg.budget.admits(d, n)?;
    let mut r = VerificationReport::new();
    r.check("input.free_involution", || ensure_free_involution(a));
    r.check("input.cs_neighborly", || {
        ensure_neighborly(a, ceil_half(d) as usize, n)
    });
    let sphere = sphere_surrogate_check(a, d as isize, cfg.surrogate);
    for mut rec in sphere.checks {
        rec.claim = format!("input.sphere.{}", rec.claim);
        r.push(rec);
    }
    let expected = ctor.delta(d, n)?;
    r.check(claim_dn("input.equals_delta", d, n), || {
        ensure_equal(a, &expected, "input vs construction")
    });
    Ok(r)
}
