use crate::error::{Error, Result};

/// A basis blade: a strictly increasing tuple of coordinate indices.
///
/// The empty tuple is the grade-0 blade. Ordering is lexicographic, which is
/// total on blades of equal grade and gives every sparse element a canonical
/// term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(Vec<u8>);

impl Blade {
    /// Builds a blade after validating that `indices` is strictly increasing
    /// and every index is below `dim`.
    pub fn new(indices: Vec<u8>, dim: usize) -> Result<Self> {
        for pair in indices.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::MalformedBlade);
            }
        }
        if let Some(&last) = indices.last() {
            if last as usize >= dim {
                return Err(Error::IndexOutOfRange {
                    index: last as usize,
                    dim,
                });
            }
        }
        Ok(Blade(indices))
    }

    /// The grade-0 blade.
    pub fn scalar() -> Self {
        Blade(Vec::new())
    }

    /// Sorts an arbitrary index tuple into a blade, returning the permutation
    /// sign. `None` if an index repeats (the blade is zero).
    pub fn sort_with_sign(mut indices: Vec<u8>, dim: usize) -> Result<Option<(Self, f64)>> {
        let mut swaps = 0usize;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
        Ok(Some((Blade::new(indices, dim)?, sign)))
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, index: u8) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// True when every index of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &Blade) -> bool {
        let mut it = other.0.iter();
        self.0
            .iter()
            .all(|i| it.by_ref().any(|j| j == i))
    }

    /// Indices of `other` not present in `self`. Caller guarantees
    /// `self.is_subset_of(other)`.
    pub fn complement_in(&self, other: &Blade) -> Blade {
        let mut out = Vec::with_capacity(other.grade() - self.grade());
        let mut mine = self.0.iter().peekable();
        for &j in &other.0 {
            if mine.peek() == Some(&&j) {
                mine.next();
            } else {
                out.push(j);
            }
        }
        Blade(out)
    }

    /// Disjoint union with the permutation sign of the concatenation
    /// `self ++ other` relative to sorted order. `None` when the blades share
    /// an index.
    pub fn merge(&self, other: &Blade) -> Option<(Blade, f64)> {
        let sign = merge_sign(&self.0, &other.0)?;
        let mut joined = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        joined.push(x);
                        a.next();
                    } else {
                        joined.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    joined.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    joined.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Some((Blade(joined), sign))
    }
}

/// Sign of the merge permutation of two sorted disjoint index lists, or
/// `None` when they intersect.
pub(crate) fn merge_sign(left: &[u8], right: &[u8]) -> Option<f64> {
    let mut inversions = 0usize;
    for &r in right {
        if left.binary_search(&r).is_ok() {
            return None;
        }
        inversions += left.iter().filter(|&&l| l > r).count();
    }
    Some(if inversions % 2 == 0 { 1.0 } else { -1.0 })
}

/// All blades of the given grade in lexicographic order.
pub fn enumerate_blades(dim: usize, grade: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    if grade > dim {
        return out;
    }
    let mut current: Vec<u8> = (0..grade as u8).collect();
    loop {
        out.push(Blade(current.clone()));
        // advance the combination
        let mut i = grade;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (current[i] as usize) < dim - (grade - i) {
                current[i] += 1;
                for j in i + 1..grade {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
