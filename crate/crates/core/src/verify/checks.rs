use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::complex::{Complex, ComplexError, Face, FacetIndex, SignedVertex};

/// A nonempty face `τ` violating the free-involution condition: either `-τ`
/// is not a face or `τ` contains an antipodal pair `{v, -v}` (in which case
/// that pair is a face fixed by the involution and is returned).
///
/// Only facets need checking: if `-F` is a face for every facet `F` then the
/// same holds for every face.
pub fn free_involution_witness(a: &Complex) -> Option<Face> {
    let index = FacetIndex::new(a);
    for f in a.facets() {
        if let Some(&v) = f
            .vertices()
            .iter()
            .find(|v| v.id() < 0 && f.contains(v.antipode()))
        {
            return Some(Face::from_vertices([v, v.antipode()]).expect("distinct"));
        }
        if !f.is_empty() && !index.contains(&f.negate()) {
            return Some(f.clone());
        }
    }
    None
}

pub fn check_free_involution(a: &Complex) -> bool {
    free_involution_witness(a).is_none()
}

/// Number of subsets of `V_n` with at most `i` vertices and no antipodal pair,
/// excluding the empty set.
pub fn neighborly_candidates(i: usize, n: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 1..=i.min(n) {
        binom = binom * (n - j + 1) as u128 / j as u128;
        total += binom << j;
    }
    total
}

/// The first antipode-free subset of `V_n` of size at most `i` that is not a
/// face of `a`, scanning sizes in increasing order.
pub fn neighborliness_witness(a: &Complex, i: usize, n: usize) -> Option<Face> {
    for size in 1..=i.min(n) {
        let present = a.faces_of_size(size);
        for pairs in (1..=n as u32).combinations(size) {
            for mask in 0u32..(1 << size) {
                let face = Face::from_vertices(pairs.iter().enumerate().map(|(b, &p)| {
                    if mask & (1 << b) != 0 {
                        SignedVertex::neg(p)
                    } else {
                        SignedVertex::pos(p)
                    }
                }))
                .expect("distinct pairs");
                if !present.contains(&face) {
                    return Some(face);
                }
            }
        }
    }
    None
}

/// cs-`i`-neighborliness with respect to `V_n`: every antipode-free set of at
/// most `i` vertices is a face. Vacuous for `i = 0`.
pub fn check_cs_neighborly(a: &Complex, i: usize, n: usize) -> bool {
    neighborliness_witness(a, i, n).is_none()
}

/// A face of `b` of dimension at most `dim b - i - 1` that is not on the
/// boundary (an interior face that is too deep for `i`-stackedness).
pub fn stackedness_witness(b: &Complex, i: usize) -> Result<Option<Face>, ComplexError> {
    let boundary = b.boundary()?;
    let limit = b.dim() - i as isize - 1;
    if limit < -1 {
        return Ok(None);
    }
    for size in 0..=(limit + 1) as usize {
        let on_boundary = boundary.faces_of_size(size);
        let mut deep: Vec<Face> = b
            .faces_of_size(size)
            .into_iter()
            .filter(|f| !on_boundary.contains(f))
            .collect();
        deep.sort_unstable();
        if let Some(f) = deep.into_iter().next() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// `skel_{d-i-1}(B) = skel_{d-i-1}(∂B)`.
pub fn check_stacked(b: &Complex, i: usize) -> Result<bool, ComplexError> {
    Ok(stackedness_witness(b, i)?.is_none())
}

/// Something wrong with `a` as a closed pseudomanifold: a facet of the wrong
/// dimension, a ridge not lying in exactly two facets, or a facet outside the
/// component of the first facet.
pub fn pseudomanifold_witness(a: &Complex) -> Option<Face> {
    if a.is_void() {
        return Some(Face::empty());
    }
    let counts = match a.ridge_counts() {
        Ok(c) => c,
        Err(ComplexError::NotPure(f)) => return Some(f),
        Err(_) => return Some(Face::empty()),
    };
    if let Some(ridge) = counts.iter().filter(|(_, &c)| c != 2).map(|(r, _)| r).min() {
        return Some(ridge.clone());
    }
    if a.facets_connected() {
        None
    } else {
        Some(unreachable_facet(a))
    }
}

fn unreachable_facet(a: &Complex) -> Face {
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    for (k, f) in a.facets().iter().enumerate() {
        for drop in 0..f.len() {
            by_ridge.entry(f.without_index(drop)).or_default().push(k);
        }
    }
    let mut seen: HashSet<usize> = HashSet::from([0]);
    let mut stack = vec![0usize];
    while let Some(k) = stack.pop() {
        let f = &a.facets()[k];
        for drop in 0..f.len() {
            for &j in &by_ridge[&f.without_index(drop)] {
                if seen.insert(j) {
                    stack.push(j);
                }
            }
        }
    }
    (0..a.num_facets())
        .find(|k| !seen.contains(k))
        .map(|k| a.facets()[k].clone())
        .unwrap_or_default()
}

/// Pure, every ridge in exactly two facets, connected facet-ridge graph.
pub fn is_closed_pseudomanifold(a: &Complex) -> bool {
    pseudomanifold_witness(a).is_none()
}

/// Whether `a` is the suspension of a common link with apexes `p` and `q`.
pub fn is_suspension_pair(a: &Complex, p: SignedVertex, q: SignedVertex) -> bool {
    if p == q || a.is_void() {
        return false;
    }
    if !a.facets().iter().all(|f| f.contains(p) != f.contains(q)) {
        return false;
    }
    let pf = Face::from_vertices([p]).expect("single vertex");
    let qf = Face::from_vertices([q]).expect("single vertex");
    let (Ok(lp), Ok(lq)) = (a.link(&pf), a.link(&qf)) else {
        return false;
    };
    if lp != lq {
        return false;
    }
    match (lp.cone(p), lp.cone(q)) {
        (Ok(cp), Ok(cq)) => cp.union(&cq) == *a,
        _ => false,
    }
}

/// Some pair `(p, q)`, `p < q`, exhibiting `a` as a suspension, scanning all
/// vertex pairs in order.
pub fn detect_suspension(a: &Complex) -> Option<(SignedVertex, SignedVertex)> {
    let mut count: HashMap<SignedVertex, usize> = HashMap::new();
    for f in a.facets() {
        for v in f.vertices() {
            *count.entry(*v).or_insert(0) += 1;
        }
    }
    let total = a.num_facets();
    let vertices = a.vertices();
    vertices
        .iter()
        .tuple_combinations()
        .filter(|(p, q)| count[*p] + count[*q] == total)
        .find(|(p, q)| is_suspension_pair(a, **p, **q))
        .map(|(p, q)| (*p, *q))
}
