use std::fmt;

use smallvec::SmallVec;

use super::ComplexError;

/// A vertex `±v_i` of the ambient set `V_n = {±v_1, …, ±v_n}`.
///
/// The id is a nonzero integer: `i` stands for `v_i` and `-i` for `-v_i`, so the
/// antipodal involution is plain negation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedVertex(i32);

impl SignedVertex {
    pub fn new(id: i32) -> Result<Self, ComplexError> {
        if id == 0 {
            Err(ComplexError::MalformedFace(
                "vertex id 0 is not allowed".into(),
            ))
        } else {
            Ok(SignedVertex(id))
        }
    }

    /// `v_i`.
    pub fn pos(i: u32) -> Self {
        assert!(
            i > 0 && i <= i32::MAX as u32,
            "vertex index out of range: {i}"
        );
        SignedVertex(i as i32)
    }

    /// `-v_i`.
    pub fn neg(i: u32) -> Self {
        SignedVertex::pos(i).antipode()
    }

    #[inline]
    pub fn id(self) -> i32 {
        self.0
    }

    /// Index `i` of the antipodal pair `{v_i, -v_i}` this vertex belongs to.
    #[inline]
    pub fn pair(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn antipode(self) -> Self {
        SignedVertex(-self.0)
    }
}

impl fmt::Debug for SignedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for SignedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) type VertexBuf = SmallVec<[SignedVertex; 8]>;

/// A finite vertex set stored in strictly increasing id order.
///
/// Because the order is canonical, two faces are equal exactly when their vertex
/// sets are equal, and the derived `Ord` is the lexicographic order used for
/// serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face(VertexBuf);

impl Face {
    /// The empty face.
    pub fn empty() -> Self {
        Face(VertexBuf::new())
    }

    /// Builds a face from signed ids in any order. Zero ids and repeated ids are
    /// rejected.
    pub fn from_ids(ids: &[i32]) -> Result<Self, ComplexError> {
        let mut buf = ids
            .iter()
            .map(|&id| SignedVertex::new(id))
            .collect::<Result<VertexBuf, _>>()?;
        buf.sort_unstable();
        if let Some(w) = buf.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedFace(format!(
                "vertex {} repeated in {:?}",
                w[0], ids
            )));
        }
        Ok(Face(buf))
    }

    pub fn from_vertices<I: IntoIterator<Item = SignedVertex>>(
        vertices: I,
    ) -> Result<Self, ComplexError> {
        let ids: Vec<i32> = vertices.into_iter().map(SignedVertex::id).collect();
        Face::from_ids(&ids)
    }

    /// Caller guarantees the buffer is strictly increasing.
    pub(crate) fn from_sorted(buf: VertexBuf) -> Self {
        debug_assert!(buf.windows(2).all(|w| w[0] < w[1]));
        Face(buf)
    }

    pub fn vertices(&self) -> &[SignedVertex] {
        &self.0
    }

    pub fn ids(&self) -> Vec<i32> {
        self.0.iter().map(|v| v.id()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: SignedVertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            match x.cmp(y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = VertexBuf::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Face(out)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn with_vertex(&self, v: SignedVertex) -> Face {
        let mut buf = self.0.clone();
        match buf.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => buf.insert(pos, v),
        }
        Face(buf)
    }

    pub fn without_index(&self, idx: usize) -> Face {
        let mut buf = self.0.clone();
        buf.remove(idx);
        Face(buf)
    }

    /// `-F`. Negating an ascending sequence yields a descending one, so the
    /// buffer is reversed to stay canonical.
    pub fn negate(&self) -> Face {
        Face(self.0.iter().rev().map(|v| v.antipode()).collect())
    }

    /// Whether the face contains some pair `{v, -v}`.
    pub fn has_antipodal_pair(&self) -> bool {
        // negatives come first in ascending order; compare against the positive tail
        let split = self.0.partition_point(|v| v.id() < 0);
        let (neg, pos) = self.0.split_at(split);
        neg.iter().any(|v| pos.binary_search(&v.antipode()).is_ok())
    }

    /// All subsets of the given size, in lexicographic order.
    pub fn subsets(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        use itertools::Itertools;
        self.0
            .iter()
            .copied()
            .combinations(size)
            .map(|c| Face(VertexBuf::from_vec(c)))
    }

    /// Every subset, including the empty face and the face itself.
    pub fn all_subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.len();
        (0u32..(1u32 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| self.0[b])
                    .collect(),
            )
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ids: &[i32]) -> Face {
        Face::from_ids(ids).unwrap()
    }

    #[test]
    fn canonical_order() {
        assert_eq!(f(&[2, -1, 1, -2]).ids(), vec![-2, -1, 1, 2]);
        assert_eq!(f(&[3, 1]), f(&[1, 3]));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            Face::from_ids(&[1, 2, 1]),
            Err(ComplexError::MalformedFace(_))
        ));
        assert!(Face::from_ids(&[0]).is_err());
    }

    #[test]
    fn set_operations() {
        let a = f(&[-3, 1, 2]);
        let b = f(&[1, 4]);
        assert_eq!(a.union(&b), f(&[-3, 1, 2, 4]));
        assert_eq!(a.intersection(&b), f(&[1]));
        assert_eq!(a.difference(&b), f(&[-3, 2]));
        assert!(f(&[-3, 2]).is_subset_of(&a));
        assert!(!f(&[-3, 4]).is_subset_of(&a));
        assert!(Face::empty().is_subset_of(&a));
        assert!(f(&[-3]).is_disjoint(&b));
        assert!(!a.is_disjoint(&b));
    }

    #[test]
    fn negation_and_antipodes() {
        assert_eq!(f(&[-2, 1, 5]).negate().ids(), vec![-5, -1, 2]);
        assert!(f(&[-2, 1, 2]).has_antipodal_pair());
        assert!(!f(&[-2, 1, 3]).has_antipodal_pair());
        assert!(!Face::empty().has_antipodal_pair());
    }

    #[test]
    fn subset_enumeration() {
        let a = f(&[1, 2, 3]);
        assert_eq!(a.subsets(2).count(), 3);
        assert_eq!(a.all_subsets().count(), 8);
        assert!(a.all_subsets().all(|s| s.is_subset_of(&a)));
    }
}
