use std::collections::HashSet;

use proptest::prelude::*;

use cs_spheres::construction::ceil_half;
use cs_spheres::io::{from_flat, from_json, to_flat, to_json};
use cs_spheres::verify::{check_cs_neighborly, check_stacked};
use cs_spheres::{Complex, Constructor, Face, SignedVertex};

fn face_on(pairs: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Face> {
    let ids: Vec<i32> = pairs.flat_map(|i| [i, -i]).collect();
    proptest::sample::subsequence(ids.clone(), 0..=ids.len().min(4))
        .prop_map(|ids| Face::from_ids(&ids).unwrap())
}

fn complex_on(pairs: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Complex> {
    proptest::collection::vec(face_on(pairs), 1..6).prop_map(Complex::from_faces)
}

fn small_complex() -> impl Strategy<Value = Complex> {
    complex_on(1..=4)
}

fn shift(a: &Complex, offset: i32) -> Complex {
    if a.is_void() {
        return Complex::void();
    }
    Complex::from_faces(a.facets().iter().map(|f| {
        let ids: Vec<i32> = f
            .ids()
            .into_iter()
            .map(|id| id + id.signum() * offset)
            .collect();
        Face::from_ids(&ids).unwrap()
    }))
}

fn grid_ball() -> impl Strategy<Value = (usize, isize, usize)> {
    (1usize..=4, 0usize..=3)
        .prop_flat_map(|(d, slack)| (Just(d), 0..=ceil_half(d), Just(d + 1 + slack)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn absorption(a in small_complex()) {
        let all: Vec<Face> = a.face_set().into_iter().collect();
        prop_assert_eq!(Complex::from_faces(all), a.clone());
        let mut more = a.facets().to_vec();
        more.extend(a.facets().iter().flat_map(|f| f.subsets(f.len().saturating_sub(1)).collect::<Vec<_>>()));
        prop_assert_eq!(Complex::from_faces(more), a);
    }

    #[test]
    fn join_identities(a in small_complex(), b in complex_on(5..=7)) {
        prop_assert_eq!(a.join(&Complex::empty()).unwrap(), a.clone());
        prop_assert!(a.join(&Complex::void()).unwrap().is_void());
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        let c = shift(&a, 8);
        prop_assert_eq!(
            a.join(&b).unwrap().join(&c).unwrap(),
            a.join(&b.join(&c).unwrap()).unwrap()
        );
        let fa = a.f_vector();
        let fb = b.f_vector();
        let total: u64 = a.join(&b).unwrap().f_vector().counts().iter().sum();
        prop_assert_eq!(total, fa.counts().iter().sum::<u64>() * fb.counts().iter().sum::<u64>());
    }

    #[test]
    fn link_of_join(a in small_complex(), b in complex_on(5..=7), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let fa: Vec<Face> = a.face_set().into_iter().collect();
        let fb: Vec<Face> = b.face_set().into_iter().collect();
        let f = x.get(&fa);
        let g = y.get(&fb);
        let joined = a.join(&b).unwrap();
        prop_assert_eq!(
            joined.link(&f.union(g)).unwrap(),
            a.link(f).unwrap().join(&b.link(g).unwrap()).unwrap()
        );
    }

    #[test]
    fn euler_characteristic_is_additive(a in small_complex(), b in small_complex()) {
        let chi = |c: &Complex| c.euler_characteristic();
        prop_assert_eq!(chi(&a.union(&b)), chi(&a) + chi(&b) - chi(&a.intersect(&b)));
    }

    #[test]
    fn negation_is_an_automorphism(a in small_complex()) {
        prop_assert_eq!(a.negate().negate(), a.clone());
        prop_assert_eq!(a.negate().f_vector(), a.f_vector());
        let faces = a.face_set();
        let negated: HashSet<Face> = a.negate().face_set();
        prop_assert_eq!(negated, faces.iter().map(Face::negate).collect::<HashSet<_>>());
    }

    #[test]
    fn neighborliness_is_monotone(a in small_complex(), i in 0usize..=4) {
        if check_cs_neighborly(&a, i, 4) {
            for j in 0..i {
                prop_assert!(check_cs_neighborly(&a, j, 4));
            }
        }
    }

    #[test]
    fn union_and_intersection_laws(a in small_complex(), b in small_complex()) {
        prop_assert_eq!(a.union(&Complex::void()), a.clone());
        prop_assert!(a.intersect(&Complex::void()).is_void());
        prop_assert_eq!(a.intersect(&a), a.clone());
        prop_assert!(a.is_subcomplex_of(&a.union(&b)));
        prop_assert!(a.intersect(&b).is_subcomplex_of(&a));
        prop_assert!(Complex::void().is_subcomplex_of(&a));
    }

    #[test]
    fn text_formats_round_trip(a in small_complex()) {
        let json = to_json(&a, 4).unwrap();
        let back = from_json(&json).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(to_json(&back, 4).unwrap(), json);
        let flat = to_flat(&a);
        let back = from_flat(&flat).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(to_flat(&back), flat);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stackedness_is_monotone((d, i, n) in grid_ball()) {
        let c = Constructor::new();
        let b = c.ball(d, i, n).unwrap();
        let first = (0..=d).find(|&j| check_stacked(&b, j).unwrap()).unwrap();
        prop_assert!(first <= i as usize);
        for j in first..=d {
            prop_assert!(check_stacked(&b, j).unwrap());
        }
    }

    #[test]
    fn cone_over_boundary_has_the_same_boundary((d, i, n) in grid_ball()) {
        let c = Constructor::new();
        let rim = c.ball(d, i, n).unwrap().boundary().unwrap();
        let apex = SignedVertex::pos(n as u32 + 1);
        prop_assert_eq!(rim.cone(apex).unwrap().boundary().unwrap(), rim);
    }

    #[test]
    fn interior_faces_of_a_join((d1, i1, n1) in grid_ball(), j in 0isize..=1, m in 2usize..=4) {
        prop_assume!(d1 <= 3);
        let c = Constructor::new();
        let b1 = c.ball(d1, i1, n1).unwrap();
        let b2 = shift(&c.ball(1, j, m).unwrap(), n1 as i32);
        let joined = b1.join(&b2).unwrap();
        let expected: HashSet<Face> = b1
            .interior_faces()
            .unwrap()
            .iter()
            .flat_map(|f| b2.interior_faces().unwrap().into_iter().map(move |g| f.union(&g)))
            .collect();
        prop_assert_eq!(joined.interior_faces().unwrap(), expected);
        prop_assert!(check_stacked(&joined, i1 as usize + j as usize).unwrap());
    }
}
