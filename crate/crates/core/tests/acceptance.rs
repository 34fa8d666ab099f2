//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::cell::RefCell;
use std::process::ExitCode;
use std::time::Instant;

use cs_spheres::construction::{ceil_half, floor_half};
use cs_spheres::io::{from_flat, from_json, to_flat, to_json};
use cs_spheres::verify::{
    check_cs_neighborly, check_free_involution, check_link_identities, check_stacked,
    detect_suspension, homology_z2, sphere_surrogate_check, SurrogateConfig,
};
use cs_spheres::{Complex, Constructor, Face, SignedVertex};

const D_MAX: usize = 6;
const SLACK: usize = 4;

struct Ctx {
    ctor: Constructor,
    seen: RefCell<Vec<(Complex, u32)>>,
}

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

impl Ctx {
    fn keep(&self, c: &Complex, n: usize) -> Complex {
        self.seen.borrow_mut().push((c.clone(), n as u32));
        c.clone()
    }

    fn delta(&self, d: usize, n: usize) -> Result<Complex, String> {
        let c = self.ctor.delta(d, n).map_err(|e| e.to_string())?;
        Ok(self.keep(&c, n))
    }

    fn ball(&self, d: usize, i: isize, n: usize) -> Result<Complex, String> {
        let c = self.ctor.ball(d, i, n).map_err(|e| e.to_string())?;
        Ok(self.keep(&c, n))
    }

    fn special(&self, k: usize, n: usize) -> Result<Complex, String> {
        let c = self.ctor.special_ball_d(k, n).map_err(|e| e.to_string())?;
        Ok(self.keep(&c, n))
    }
}

fn grid() -> impl Iterator<Item = (usize, usize)> {
    (1..=D_MAX).flat_map(|d| (d + 1..=d + 1 + SLACK).map(move |n| (d, n)))
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn boundary(c: &Complex) -> Result<Complex, String> {
    c.boundary().map_err(|e| e.to_string())
}

fn stacked(c: &Complex, i: usize) -> Result<bool, String> {
    check_stacked(c, i).map_err(|e| e.to_string())
}

fn pos(i: usize) -> SignedVertex {
    SignedVertex::pos(i as u32)
}

fn shares_facet(a: &Complex, b: &Complex) -> bool {
    a.facets()
        .iter()
        .any(|f| b.facets().binary_search(f).is_ok())
}

fn c01_base_cases(cx: &Ctx) -> Outcome {
    for d in 1..=6 {
        let delta = cx.delta(d, d + 1)?;
        let cp = cx
            .ctor
            .cross_polytope_boundary(d + 1)
            .map_err(|e| e.to_string())?;
        expect(delta == *cp, || {
            format!("delta({d},{}) differs from the cross-polytope", d + 1)
        })?;
        expect(delta.num_facets() == 1 << (d + 1), || {
            format!("delta({d},{}) has {} facets", d + 1, delta.num_facets())
        })?;
    }
    Ok(())
}

fn c02_zero_balls(cx: &Ctx) -> Outcome {
    for (d, n) in grid() {
        let mut ids = vec![-1];
        ids.extend((n - d + 1..=n).map(|j| j as i32));
        let simplex = Complex::simplex(Face::from_ids(&ids).unwrap());
        expect(cx.ball(d, 0, n)? == simplex, || {
            format!("B^{{{d},0}}_{n} is not {ids:?}")
        })?;
    }
    Ok(())
}

fn c03_jockusch(cx: &Ctx) -> Outcome {
    for n in 4..=9u64 {
        let b = cx.ball(3, 1, n as usize)?;
        expect(b.num_facets() as u64 == 2 * n - 3, || {
            format!("B^{{3,1}}_{n} has {} facets", b.num_facets())
        })?;
        let f = cx.delta(3, n as usize)?.f_vector();
        let expected = vec![
            1,
            2 * n,
            2 * n * n - 2 * n,
            4 * n * n - 8 * n,
            2 * n * n - 4 * n,
        ];
        expect(f.counts() == expected.as_slice(), || {
            format!("f(delta(3,{n})) = {f}, expected {expected:?}")
        })?;
    }
    Ok(())
}

fn c04_spheres(cx: &Ctx) -> Outcome {
    for (d, n) in grid() {
        let delta = cx.delta(d, n)?;
        let top = ceil_half(d) as usize;
        expect(check_free_involution(&delta), || {
            format!("delta({d},{n}) not cs")
        })?;
        expect(check_cs_neighborly(&delta, top, n), || {
            format!("delta({d},{n}) not cs-{top}-neighborly")
        })?;
        if n > d + 1 {
            expect(!check_cs_neighborly(&delta, top + 1, n), || {
                format!("delta({d},{n}) is cs-{}-neighborly", top + 1)
            })?;
        }
        let cfg = SurrogateConfig {
            link_depth: d,
            ..SurrogateConfig::default()
        };
        let report = sphere_surrogate_check(&delta, d as isize, cfg);
        if let Some(fail) = report.first_failure() {
            return Err(format!("delta({d},{n}) surrogate: {}", fail.detail));
        }
    }
    Ok(())
}

fn c05_ball_properties(cx: &Ctx) -> Outcome {
    for (d, n) in grid() {
        for i in 0..=ceil_half(d) {
            let b = cx.ball(d, i, n)?;
            let tag = format!("B^{{{d},{i}}}_{n}");
            expect(check_cs_neighborly(&b, i as usize, n), || {
                format!("{tag} not neighborly")
            })?;
            expect(stacked(&b, i as usize)?, || format!("{tag} not stacked"))?;
            let h = homology_z2(&b).map_err(|e| e.to_string())?;
            let mut ball_ranks = vec![0; d + 1];
            ball_ranks[0] = 1;
            expect(h.ranks == ball_ranks, || {
                format!("{tag} has Betti numbers {:?}", h.ranks)
            })?;
            let lower = cx.ball(d, i - 1, n)?.negate();
            expect(lower.is_subcomplex_of(&b), || {
                format!("{tag} nesting fails")
            })?;
            if i <= floor_half(d) {
                expect(!shares_facet(&b, &b.negate()), || {
                    format!("{tag} shares a facet with -B")
                })?;
            }
        }
    }
    Ok(())
}

fn c06_boundary_identities(cx: &Ctx) -> Outcome {
    let pairs = [
        (1, 4),
        (1, 5),
        (1, 6),
        (1, 7),
        (1, 8),
        (2, 6),
        (2, 7),
        (2, 8),
        (3, 8),
    ];
    for (k, n) in pairs {
        let rim = boundary(&cx.ball(2 * k, k as isize, n)?)?;
        expect(rim == cx.delta(2 * k - 1, n)?, || {
            format!("dB^{{{},{k}}}_{n} != delta", 2 * k)
        })?;
    }
    for (d, n) in grid().filter(|&(d, _)| d >= 2) {
        for i in 0..=floor_half(d) {
            let direct = boundary(&cx.ball(d, i, n)?)?;
            let up = cx.ball(d - 1, i, n - 1)?;
            let down = cx.ball(d - 1, i - 1, n - 1)?.negate();
            let err = |e: cs_spheres::ComplexError| e.to_string();
            let near = boundary(&up)?.cone(pos(n)).map_err(err)?;
            let far = boundary(&down)?.cone(pos(n).antipode()).map_err(err)?;
            let rest = up.facet_complement(&down).map_err(err)?;
            let formula = near.union(&far).union(&rest);
            expect(direct == formula, || {
                format!("partial-B formula fails at d={d}, i={i}, n={n}")
            })?;
        }
    }
    Ok(())
}

fn c07_inclusion(cx: &Ctx) -> Outcome {
    for (d, n) in grid().filter(|&(d, _)| d >= 2) {
        for j in 0..=floor_half(d) {
            let rim = boundary(&cx.ball(d, j, n)?)?;
            for i in 0..=j {
                expect(cx.ball(d - 1, i, n)?.is_subcomplex_of(&rim), || {
                    format!("B^{{{},{i}}}_{n} not in dB^{{{d},{j}}}_{n}", d - 1)
                })?;
            }
        }
    }
    Ok(())
}

fn c08_links_and_special_balls(cx: &Ctx) -> Outcome {
    for k in 2..=3 {
        for n in 2 * k - 1..=2 * k + 3 {
            let r = check_link_identities(&cx.ctor, k, n).map_err(|e| e.to_string())?;
            if let Some(fail) = r.first_failure() {
                return Err(format!("links k={k}, n={n}: {}", fail.detail));
            }
        }
    }
    for k in 1..=2 {
        for n in 2 * k + 1..=2 * k + 4 {
            let delta = cx.delta(2 * k, n + 1)?;
            expect(detect_suspension(&delta).is_none(), || {
                format!("delta({},{}) is a suspension", 2 * k, n + 1)
            })?;
        }
    }
    for n in 5..=8 {
        expect(cx.delta(3, n)?.is_subcomplex_of(&cx.delta(4, n)?), || {
            format!("delta(3,{n}) not in delta(4,{n})")
        })?;
        let dn = cx.special(2, n)?;
        expect(boundary(&dn)? == cx.delta(3, n)?, || {
            format!("dD_{n} != delta(3,{n})")
        })?;
        expect(dn.union(&dn.negate()) == cx.delta(4, n)?, || {
            format!("D_{n} u -D_{n} != delta(4,{n})")
        })?;
        expect(!shares_facet(&dn, &dn.negate()), || {
            format!("D_{n} shares a facet with -D_{n}")
        })?;
        expect(cx.ball(4, 1, n)?.negate().is_subcomplex_of(&dn), || {
            format!("-B^{{4,1}}_{n} not in D_{n}")
        })?;
        expect(stacked(&dn, 2)?, || format!("D_{n} not 2-stacked"))?;
    }
    for k in 1..=2 {
        for n in 2 * k..=2 * k + 3 {
            let b = cx.ball(2 * k, k as isize, n + 1)?;
            let sigma = cx
                .delta(2 * k - 1, n)?
                .suspension(pos(n + 1), pos(n + 1).antipode())
                .map_err(|e| e.to_string())?;
            expect(b.union(&b.negate()) == sigma, || {
                format!("B^{{{},{k}}}_{} u -B is not the suspension", 2 * k, n + 1)
            })?;
        }
    }
    Ok(())
}

fn c09_variants(cx: &Ctx) -> Outcome {
    for d in 2..=5 {
        for i in 1..ceil_half(d) {
            for n in d + 1..=d + 3 {
                let var = cx
                    .ctor
                    .delta_variant(d, i, n + 1)
                    .map_err(|e| e.to_string())?;
                let var = cx.keep(&var, n + 1);
                let iu = i as usize;
                expect(check_cs_neighborly(&var, iu, n + 1), || {
                    format!("variant({d},{i},{}) not cs-{i}-neighborly", n + 1)
                })?;
                expect(!check_cs_neighborly(&var, iu + 1, n + 1), || {
                    format!("variant({d},{i},{}) is cs-{}-neighborly", n + 1, iu + 1)
                })?;
            }
        }
    }
    Ok(())
}

fn c10_four_fillings(cx: &Ctx) -> Outcome {
    for n in [6, 7] {
        let dn = cx.special(2, n)?;
        let b = cx.ball(4, 2, n)?;
        let fillings = [dn.clone(), dn.negate(), b.clone(), b.negate()];
        let rim = cx.delta(3, n)?;
        for (x, f) in fillings.iter().enumerate() {
            expect(boundary(f)? == rim, || {
                format!("filling {x} at n={n} has the wrong boundary")
            })?;
            expect(stacked(f, 2)?, || {
                format!("filling {x} at n={n} not 2-stacked")
            })?;
            for (y, g) in fillings.iter().enumerate().skip(x + 1) {
                expect(f.facets() != g.facets(), || {
                    format!("fillings {x} and {y} coincide at n={n}")
                })?;
            }
        }
    }
    Ok(())
}

fn c11_negative_controls(cx: &Ctx) -> Outcome {
    for (l, m) in [(1, 3), (1, 4), (2, 5), (2, 6)] {
        let rim = boundary(&cx.ball(2 * l, l as isize - 1, m)?)?;
        expect(!check_free_involution(&rim), || {
            format!("dB^{{{},{}}}_{m} is cs", 2 * l, l - 1)
        })?;
    }
    for k in 1..=2 {
        for n in 2 * k..=2 * k + 3 {
            let inside = cx
                .ball(2 * k, k as isize, n + 1)?
                .is_subcomplex_of(&cx.delta(2 * k, n + 1)?);
            expect(inside == (n == 2 * k), || {
                format!(
                    "subcomplex test for B^{{{},{k}}}_{} gave {inside}",
                    2 * k,
                    n + 1
                )
            })?;
        }
    }
    Ok(())
}

fn c12_round_trips(cx: &Ctx) -> Outcome {
    let seen = cx.seen.borrow();
    if seen.is_empty() {
        return Err("nothing to round-trip".into());
    }
    for (c, n) in seen.iter() {
        let json = to_json(c, *n).map_err(|e| e.to_string())?;
        let back = from_json(&json).map_err(|e| e.to_string())?;
        expect(back == *c, || format!("json round trip changed {json}"))?;
        expect(to_json(&back, *n).unwrap() == json, || {
            "json bytes differ".to_string()
        })?;
        let flat = to_flat(c);
        let back = from_flat(&flat).map_err(|e| e.to_string())?;
        expect(back == *c, || {
            "flat round trip changed a complex".to_string()
        })?;
        expect(to_flat(&back) == flat, || "flat bytes differ".to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cx = Ctx {
        ctor: Constructor::new(),
        seen: RefCell::new(Vec::new()),
    };
    let criteria: [Criterion; 12] = [
        ("01 base cases", c01_base_cases),
        ("02 B^{d,0} shape", c02_zero_balls),
        ("03 Jockusch family", c03_jockusch),
        ("04 spheres are cs, neighborly and sphere-like", c04_spheres),
        ("05 ball properties", c05_ball_properties),
        ("06 boundary identities", c06_boundary_identities),
        ("07 ball inclusion", c07_inclusion),
        ("08 links, suspensions and D_n", c08_links_and_special_balls),
        ("09 variant spheres", c09_variants),
        ("10 four stacked fillings", c10_four_fillings),
        ("11 negative controls", c11_negative_controls),
        ("12 round trips", c12_round_trips),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&cx);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} criteria, {} failed", criteria.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
