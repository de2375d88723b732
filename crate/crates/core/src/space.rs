//! Products of curves and their subset-indexed bases.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

/// Largest number of curve factors accepted; the lattice rank is `2^n`.
pub const MAX_FACTORS: usize = 20;

/// `X_n = C_1 x ... x C_n`, recorded by the genera of its factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    genera: Vec<u32>,
}

impl ProductSpace {
    pub fn new(genera: &[u32]) -> Result<Self> {
        if genera.is_empty() {
            return Err(Error::InvalidSpace("a product needs at least one curve".into()));
        }
        if genera.len() > MAX_FACTORS {
            return Err(Error::InvalidSpace(alloc::format!(
                "{} factors exceeds the limit of {MAX_FACTORS}",
                genera.len()
            )));
        }
        Ok(ProductSpace { genera: genera.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.genera.len()
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    /// Genus of curve `i` (1-based).
    pub fn genus(&self, i: usize) -> u32 {
        self.genera[i - 1]
    }

    /// Whether every factor has positive genus. Results that rely on the
    /// positive-genus hypothesis report this flag instead of refusing.
    pub fn all_positive_genus(&self) -> bool {
        self.genera.iter().all(|&g| g >= 1)
    }

    /// Number of basis subsets, `2^n`.
    pub fn rank(&self) -> usize {
        1 << self.n()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n())
    }

    pub fn check_index(&self, r: usize) -> Result<()> {
        if r == 0 || r > self.n() {
            Err(Error::InvalidIndex { index: r, bound: self.n() })
        } else {
            Ok(())
        }
    }

    /// The product of the remaining `n - 1` curves after dropping curve `r`.
    pub fn omit(&self, r: usize) -> Result<ProductSpace> {
        self.check_index(r)?;
        let genera: Vec<u32> = self
            .genera
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != r)
            .map(|(_, &g)| g)
            .collect();
        ProductSpace::new(&genera)
    }

    /// Subsets of `{1..n}` in canonical order.
    pub fn subsets(&self) -> Vec<Subset> {
        canonical_subsets(self.n())
    }

    /// Maps a subset mask to its position in canonical order.
    pub fn index_table(&self) -> Vec<usize> {
        let mut table = alloc::vec![0; self.rank()];
        for (i, s) in self.subsets().into_iter().enumerate() {
            table[s.mask() as usize] = i;
        }
        table
    }
}

/// A subset of `{1..n}` encoded as a bit mask (bit `i - 1` for curve `i`).
///
/// The ordering is the repo-wide canonical one: by cardinality, then
/// lexicographically on the sorted elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << (i - 1))
    }

    /// Builds a subset from 1-based indices; duplicates collapse.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset(it.into_iter().fold(0, |m, i| m | (1 << (i - 1))))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    /// Complement inside `{1..n}`.
    pub fn complement(self, n: usize) -> Subset {
        Subset(Subset::full(n).0 & !self.0)
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
    }

    /// Drops curve `r` and shifts indices above `r` down by one.
    pub fn delete_index(self, r: usize) -> Subset {
        Subset::from_indices(
            self.elements()
                .filter(|&i| i != r)
                .map(|i| if i > r { i - 1 } else { i }),
        )
    }

    /// Inverse of [`Subset::delete_index`] on subsets of the smaller space:
    /// shifts indices `>= r` up by one, leaving slot `r` empty.
    pub fn open_index(self, r: usize) -> Subset {
        Subset::from_indices(self.elements().map(|i| if i >= r { i + 1 } else { i }))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn canonical_subsets(n: usize) -> Vec<Subset> {
    let mut v: Vec<Subset> = (0..(1u32 << n)).map(Subset).collect();
    v.sort();
    v
}

/// A permutation of `{1..n}`, stored as 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i == 0 || i > n || core::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidAction(alloc::format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// Transposition `(a b)` on `{1..n}`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.0.swap(a - 1, b - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn apply_subset(&self, s: Subset) -> Subset {
        Subset::from_indices(s.elements().map(|i| self.apply(i)))
    }

    pub fn preserves_genera(&self, space: &ProductSpace) -> bool {
        (1..=space.n()).all(|i| space.genus(self.apply(i)) == space.genus(i))
    }
}
