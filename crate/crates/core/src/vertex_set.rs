//! One-word vertex subsets.
//!
//! Every algorithm in the crate iterates over subsets of a graph with at most
//! [`MAX_VERTICES`] vertices, so a subset is a single `u64` bit pattern.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet((1u64 << n) - 1)
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest index that could be a member (exclusive upper bound on members).
    #[inline]
    pub fn upper_bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` with exactly `k` members, in increasing numeric order.
    pub fn subsets_of_size(self, k: usize) -> SubsetsOfSize {
        SubsetsOfSize::new(self, k)
    }

    /// Spreads the low `self.len()` bits of `code` onto the members of `self`.
    ///
    /// Maps the dense index space `0..2^|self|` onto the subsets of `self`,
    /// preserving the order of bit patterns.
    #[inline]
    pub fn deposit(self, mut code: u64) -> VertexSet {
        let mut out = 0u64;
        let mut mask = self.0;
        while mask != 0 && code != 0 {
            let low = mask & mask.wrapping_neg();
            if code & 1 == 1 {
                out |= low;
            }
            code >>= 1;
            mask ^= low;
        }
        VertexSet(out)
    }

    /// Inverse of [`VertexSet::deposit`]: packs the members of `sub` found in `self`.
    #[inline]
    pub fn extract(self, sub: VertexSet) -> u64 {
        let mut out = 0u64;
        let mut bit = 1u64;
        let mut mask = self.0;
        while mask != 0 {
            let low = mask & mask.wrapping_neg();
            if sub.0 & low != 0 {
                out |= bit;
            }
            bit <<= 1;
            mask ^= low;
        }
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: VertexSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: VertexSet) {
        self.0 &= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: VertexSet) {
        self.0 &= !rhs.0;
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Members in increasing order.
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Gosper's hack over the dense index space of a ground set.
pub struct SubsetsOfSize {
    ground: VertexSet,
    code: u64,
    limit: u64,
    done: bool,
}

impl SubsetsOfSize {
    fn new(ground: VertexSet, k: usize) -> Self {
        let m = ground.len();
        if k > m {
            return SubsetsOfSize {
                ground,
                code: 0,
                limit: 0,
                done: true,
            };
        }
        SubsetsOfSize {
            ground,
            code: if k == 0 { 0 } else { (1u64 << k) - 1 },
            limit: 1u64 << m,
            done: false,
        }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.ground.deposit(self.code);
        if self.code == 0 {
            self.done = true;
        } else {
            let c = self.code;
            let u = c & c.wrapping_neg();
            let v = c + u;
            let next = v + (((v ^ c) / u) >> 2);
            if next >= self.limit || v == 0 {
                self.done = true;
            } else {
                self.code = next;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient `C(n, k)` as `u128`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `index`-th `k`-subset of `ground` in colexicographic order of the dense code.
///
/// Indices run over `0..C(|ground|, k)`; out-of-range indices give `None`.
pub fn unrank_subset(ground: VertexSet, k: usize, index: u128) -> Option<VertexSet> {
    let m = ground.len();
    if index >= binomial(m, k) {
        return None;
    }
    // Combinatorial number system: pick the highest position first.
    let mut code = 0u64;
    let mut rest = index;
    let mut need = k;
    let mut pos = m;
    while need > 0 {
        pos -= 1;
        let c = binomial(pos, need);
        if rest >= c {
            code |= 1u64 << pos;
            rest -= c;
            need -= 1;
        }
    }
    Some(ground.deposit(code))
}
