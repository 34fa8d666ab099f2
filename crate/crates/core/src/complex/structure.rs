use std::collections::{HashMap, HashSet};

use super::{ComplexError, FVector, Face, SignedVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    /// No faces at all, not even the empty face.
    Void,
    NonVoid,
}

/// A simplicial complex stored by its facets.
///
/// The facet list is an antichain in lexicographic order, so structural equality
/// is labeled equality of complexes. `Void` (no faces) and the empty complex
/// `{∅}` are different values: joining with the former annihilates, joining with
/// the latter is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    kind: ComplexKind,
    facets: Vec<Face>,
}

impl Complex {
    pub fn void() -> Self {
        Complex {
            kind: ComplexKind::Void,
            facets: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Complex {
            kind: ComplexKind::NonVoid,
            facets: vec![Face::empty()],
        }
    }

    /// The full simplex on `face`.
    pub fn simplex(face: Face) -> Self {
        Complex {
            kind: ComplexKind::NonVoid,
            facets: vec![face],
        }
    }

    /// The complex generated by `faces`: non-maximal entries are absorbed and an
    /// empty input yields the void complex.
    pub fn from_faces<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Complex::void();
        }
        faces.sort_unstable();
        faces.dedup();
        Complex {
            kind: ComplexKind::NonVoid,
            facets: maximal_faces(faces),
        }
    }

    /// Builds a complex from lists of signed ids.
    pub fn from_id_lists<L: AsRef<[i32]>>(lists: &[L]) -> Result<Self, ComplexError> {
        let faces = lists
            .iter()
            .map(|l| Face::from_ids(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Complex::from_faces(faces))
    }

    /// Caller guarantees `facets` is a sorted, nonempty antichain.
    pub(crate) fn from_antichain(mut facets: Vec<Face>) -> Self {
        if facets.is_empty() {
            return Complex::void();
        }
        facets.sort_unstable();
        debug_assert!(facets.windows(2).all(|w| w[0] != w[1]));
        Complex {
            kind: ComplexKind::NonVoid,
            facets,
        }
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn is_void(&self) -> bool {
        self.kind == ComplexKind::Void
    }

    /// Whether this is `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.kind == ComplexKind::NonVoid && self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Dimension of the largest facet; -1 for both `{∅}` and the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Sorted vertex set.
    pub fn vertices(&self) -> Vec<SignedVertex> {
        let mut vs: Vec<SignedVertex> = self
            .facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Largest `|id|` among the vertices, 0 if there are none.
    pub fn max_pair_index(&self) -> u32 {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter())
            .map(|v| v.pair())
            .max()
            .unwrap_or(0)
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        !self.is_void() && self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// The downward closure.
    pub fn face_set(&self) -> HashSet<Face> {
        let mut out = HashSet::new();
        for f in &self.facets {
            for s in f.all_subsets() {
                out.insert(s);
            }
        }
        out
    }

    /// All faces with exactly `size` vertices.
    pub fn faces_of_size(&self, size: usize) -> HashSet<Face> {
        let mut out = HashSet::new();
        for f in self.facets.iter().filter(|f| f.len() >= size) {
            out.extend(f.subsets(size));
        }
        out
    }

    /// Faces grouped by dimension: entry `k` holds the sorted `(k-1)`-faces, so
    /// entry 0 is `[∅]`. Empty for the void complex.
    pub fn faces_by_dim(&self) -> Vec<Vec<Face>> {
        if self.is_void() {
            return Vec::new();
        }
        let top = (self.dim() + 1) as usize;
        let mut levels: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        for f in self.face_set() {
            levels[f.len()].push(f);
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        levels
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_dim().iter().map(|l| l.len() as u64).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }
}

/// Maximal elements of a sorted, deduplicated face list.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    // larger faces first; equal-size distinct faces never contain each other
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    let mut by_vertex: HashMap<SignedVertex, Vec<usize>> = HashMap::new();
    for f in faces {
        let absorbed = match f
            .vertices()
            .iter()
            .min_by_key(|v| by_vertex.get(v).map_or(0, Vec::len))
        {
            None => !kept.is_empty(),
            Some(v) => by_vertex
                .get(v)
                .is_some_and(|idx| idx.iter().any(|&k| f.is_subset_of(&kept[k]))),
        };
        if !absorbed {
            for v in f.vertices() {
                by_vertex.entry(*v).or_default().push(kept.len());
            }
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

/// Containment queries against a fixed facet list.
pub(crate) struct FacetIndex<'a> {
    facets: &'a [Face],
    exact: HashSet<&'a Face>,
    by_vertex: HashMap<SignedVertex, Vec<u32>>,
}

impl<'a> FacetIndex<'a> {
    pub(crate) fn new(complex: &'a Complex) -> Self {
        let facets = complex.facets();
        let mut by_vertex: HashMap<SignedVertex, Vec<u32>> = HashMap::new();
        for (k, f) in facets.iter().enumerate() {
            for v in f.vertices() {
                by_vertex.entry(*v).or_default().push(k as u32);
            }
        }
        FacetIndex {
            facets,
            exact: facets.iter().collect(),
            by_vertex,
        }
    }

    pub(crate) fn contains(&self, face: &Face) -> bool {
        if self.exact.contains(face) {
            return true;
        }
        let Some(lists) = face
            .vertices()
            .iter()
            .map(|v| self.by_vertex.get(v))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        match lists.iter().min_by_key(|l| l.len()) {
            None => !self.facets.is_empty(),
            Some(list) => list
                .iter()
                .any(|&k| face.is_subset_of(&self.facets[k as usize])),
        }
    }
}
