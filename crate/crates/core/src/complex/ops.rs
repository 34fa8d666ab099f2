use std::collections::{HashMap, HashSet};

use super::{Complex, ComplexError, Face, FacetIndex, SignedVertex};

impl Complex {
    /// `A * B`. Vertex sets must be disjoint.
    pub fn join(&self, other: &Complex) -> Result<Complex, ComplexError> {
        if self.is_void() || other.is_void() {
            return Ok(Complex::void());
        }
        let mine: HashSet<SignedVertex> = self.vertices().into_iter().collect();
        if let Some(v) = other.vertices().into_iter().find(|v| mine.contains(v)) {
            return Err(ComplexError::NotDisjoint(v));
        }
        let mut facets = Vec::with_capacity(self.num_facets() * other.num_facets());
        for f in self.facets() {
            for g in other.facets() {
                facets.push(f.union(g));
            }
        }
        Ok(Complex::from_antichain(facets))
    }

    /// `A * v`.
    pub fn cone(&self, apex: SignedVertex) -> Result<Complex, ComplexError> {
        self.join(&Complex::simplex(Face::from_sorted(
            [apex].into_iter().collect(),
        )))
    }

    /// `A * {p, q}`.
    pub fn suspension(&self, p: SignedVertex, q: SignedVertex) -> Result<Complex, ComplexError> {
        if p == q {
            return Err(ComplexError::Precondition(
                "suspension vertices must be distinct".into(),
            ));
        }
        let sphere = Complex::from_faces([
            Face::from_vertices([p]).expect("single vertex"),
            Face::from_vertices([q]).expect("single vertex"),
        ]);
        self.join(&sphere)
    }

    /// `lk(t, A) = {σ ∈ A : σ ∩ t = ∅, σ ∪ t ∈ A}`.
    pub fn link(&self, t: &Face) -> Result<Complex, ComplexError> {
        let facets: Vec<Face> = self
            .facets()
            .iter()
            .filter(|f| t.is_subset_of(f))
            .map(|f| f.difference(t))
            .collect();
        if facets.is_empty() {
            return Err(ComplexError::NotAFace(t.clone()));
        }
        // F \ t over facets F ⊇ t is already an antichain
        Ok(Complex::from_antichain(facets))
    }

    /// All faces of dimension at most `k`.
    pub fn skeleton(&self, k: isize) -> Complex {
        if self.is_void() || k < -1 {
            return Complex::void();
        }
        let size = (k + 1) as usize;
        let mut faces = Vec::new();
        for f in self.facets() {
            if f.len() <= size {
                faces.push(f.clone());
            } else {
                faces.extend(f.subsets(size));
            }
        }
        Complex::from_faces(faces)
    }

    pub fn negate(&self) -> Complex {
        if self.is_void() {
            return Complex::void();
        }
        Complex::from_antichain(self.facets().iter().map(Face::negate).collect())
    }

    pub fn union(&self, other: &Complex) -> Complex {
        if self.is_void() {
            return other.clone();
        }
        if other.is_void() {
            return self.clone();
        }
        Complex::from_faces(self.facets().iter().chain(other.facets()).cloned())
    }

    /// Largest common subcomplex.
    pub fn intersect(&self, other: &Complex) -> Complex {
        if self.is_void() || other.is_void() {
            return Complex::void();
        }
        let mut faces = HashSet::new();
        for f in self.facets() {
            for g in other.facets() {
                faces.insert(f.intersection(g));
            }
        }
        Complex::from_faces(faces)
    }

    /// Every facet of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.first_face_missing_from(other).is_none()
    }

    /// A facet of `self` that is not a face of `other`, if any.
    pub fn first_face_missing_from(&self, other: &Complex) -> Option<Face> {
        if self.is_void() {
            return None;
        }
        if other.is_void() {
            return Some(self.facets()[0].clone());
        }
        let index = FacetIndex::new(other);
        self.facets().iter().find(|f| !index.contains(f)).cloned()
    }

    /// `A \ G`: the subcomplex generated by the facets of `A` that are not faces
    /// of `G`. Both must be pure of the same dimension and `G ⊆ A`; a void `G`
    /// removes nothing.
    pub fn facet_complement(&self, g: &Complex) -> Result<Complex, ComplexError> {
        if g.is_void() {
            return Ok(self.clone());
        }
        if !self.is_pure() {
            return Err(ComplexError::NotPure(self.facets()[0].clone()));
        }
        if !g.is_pure() {
            return Err(ComplexError::NotPure(g.facets()[0].clone()));
        }
        if g.dim() != self.dim() {
            return Err(ComplexError::Precondition(format!(
                "facet complement needs equal dimensions, got {} and {}",
                self.dim(),
                g.dim()
            )));
        }
        if let Some(w) = g.first_face_missing_from(self) {
            return Err(ComplexError::Precondition(format!(
                "{w} is a facet of the removed complex but not a face of the host"
            )));
        }
        let removed: HashSet<&Face> = g.facets().iter().collect();
        Ok(Complex::from_antichain(
            self.facets()
                .iter()
                .filter(|f| !removed.contains(f))
                .cloned()
                .collect(),
        ))
    }

    /// Ridges (codimension-one faces of a pure complex) with their facet counts.
    pub(crate) fn ridge_counts(&self) -> Result<HashMap<Face, usize>, ComplexError> {
        if let Some(f) = self
            .facets()
            .iter()
            .find(|f| f.len() != self.facets()[0].len())
        {
            return Err(ComplexError::NotPure(f.clone()));
        }
        let mut counts: HashMap<Face, usize> = HashMap::new();
        for f in self.facets() {
            for k in 0..f.len() {
                *counts.entry(f.without_index(k)).or_insert(0) += 1;
            }
        }
        Ok(counts)
    }

    /// Boundary complex of a pure pseudomanifold-with-boundary: generated by the
    /// ridges that lie in exactly one facet. Returns `{∅}` when there are none
    /// and the void complex for void input.
    pub fn boundary(&self) -> Result<Complex, ComplexError> {
        if self.is_void() {
            return Ok(Complex::void());
        }
        let counts = self.ridge_counts()?;
        let mut ridges = Vec::new();
        let mut worst: Option<(&Face, usize)> = None;
        for (r, &c) in &counts {
            if c == 1 {
                ridges.push(r.clone());
            } else if c > 2 && worst.is_none_or(|(w, _)| r < w) {
                worst = Some((r, c));
            }
        }
        if let Some((ridge, count)) = worst {
            return Err(ComplexError::NotPseudomanifold {
                ridge: ridge.clone(),
                count,
            });
        }
        if ridges.is_empty() {
            return Ok(Complex::empty());
        }
        Ok(Complex::from_antichain(ridges))
    }

    /// Faces of `self` that are not faces of its boundary.
    pub fn interior_faces(&self) -> Result<HashSet<Face>, ComplexError> {
        let boundary = self.boundary()?.face_set();
        let mut faces = self.face_set();
        faces.retain(|f| !boundary.contains(f));
        Ok(faces)
    }

    /// Whether the facet-ridge adjacency graph is connected (true for a single
    /// facet, false for the void complex).
    pub(crate) fn facets_connected(&self) -> bool {
        let n = self.num_facets();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut first_seen: HashMap<Face, usize> = HashMap::new();
        let mut components = n;
        for (k, f) in self.facets().iter().enumerate() {
            for drop in 0..f.len() {
                let ridge = f.without_index(drop);
                match first_seen.get(&ridge) {
                    Some(&j) => {
                        let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                        if a != b {
                            parent[a] = b;
                            components -= 1;
                        }
                    }
                    None => {
                        first_seen.insert(ridge, k);
                    }
                }
            }
        }
        components == 1
    }

    /// Boundary via the link definition: a face is interior when its link looks
    /// like a sphere and a boundary face when its link looks like a ball, where
    /// "looks like" means a connected pure pseudomanifold (closed, resp. with
    /// boundary) of the expected Euler characteristic. Any other link is an
    /// error. The result is cross-checked against [`Complex::boundary`].
    ///
    /// Costs one link per face; meant for complexes of dimension at most 4.
    pub fn boundary_strict(&self) -> Result<Complex, ComplexError> {
        let fast = self.boundary()?;
        let fast_faces = fast.face_set();
        let mut boundary_faces = Vec::new();
        let mut all: Vec<Face> = self.face_set().into_iter().collect();
        all.sort_unstable();
        // the link of ∅ is the complex itself, and ∅ lies in every boundary
        for f in all.into_iter().filter(|f| !f.is_empty()) {
            let link = self.link(&f)?;
            let interior = match classify_link(&link) {
                Some(LinkType::Sphere) => true,
                Some(LinkType::Ball) => false,
                None => return Err(ComplexError::LinkNotBallOrSphere(f)),
            };
            if interior == fast_faces.contains(&f) {
                return Err(ComplexError::LinkNotBallOrSphere(f));
            }
            if !interior {
                boundary_faces.push(f);
            }
        }
        if boundary_faces.is_empty() {
            return Ok(Complex::empty());
        }
        Ok(Complex::from_faces(boundary_faces))
    }
}

enum LinkType {
    Sphere,
    Ball,
}

fn classify_link(link: &Complex) -> Option<LinkType> {
    let counts = link.ridge_counts().ok()?;
    if counts.values().any(|&c| c > 2) || !link.facets_connected() {
        return None;
    }
    let d = link.dim();
    let chi = link.euler_characteristic();
    let closed = counts.values().all(|&c| c == 2);
    if closed && chi == 1 + if d % 2 == 0 { 1 } else { -1 } {
        Some(LinkType::Sphere)
    } else if !closed && chi == 1 {
        Some(LinkType::Ball)
    } else {
        None
    }
}
