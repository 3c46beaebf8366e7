use std::cmp::Ordering;

/// Most objects a [`HomModel`](crate::HomModel) may carry; sets are single-word bitmasks.
pub const MAX_OBJECTS: usize = 64;

/// A subset of a model's objects, indexed by canonical object position.
///
/// `Ord` is lexicographic on the sorted index list, so `{}` < `{0}` < `{0,1}` < `{1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ObjectSet(u64);

impl ObjectSet {
    pub const EMPTY: ObjectSet = ObjectSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ObjectSet(bits)
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_OBJECTS);
        if n == MAX_OBJECTS {
            ObjectSet(u64::MAX)
        } else {
            ObjectSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ObjectSet(1u64 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_OBJECTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        ObjectSet(self.0 | 1u64 << i)
    }

    pub fn union(self, other: Self) -> Self {
        ObjectSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ObjectSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ObjectSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements with index `< i`.
    pub fn below(self, i: usize) -> Self {
        if i >= MAX_OBJECTS {
            self
        } else {
            ObjectSet(self.0 & ((1u64 << i) - 1))
        }
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for ObjectSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a, b) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
                    if ia != ib {
                        return ia.cmp(&ib);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl PartialOrd for ObjectSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ObjectSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ObjectSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for ObjectSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ObjectSet;

    fn next(&mut self) -> Option<ObjectSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(ObjectSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lexicographic_order() {
        let s = |v: &[usize]| v.iter().copied().collect::<ObjectSet>();
        let mut sets = vec![s(&[1]), s(&[0, 1]), s(&[]), s(&[0]), s(&[0, 2]), s(&[2])];
        sets.sort();
        assert_eq!(
            sets,
            vec![s(&[]), s(&[0]), s(&[0, 1]), s(&[0, 2]), s(&[1]), s(&[2])]
        );
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let m = ObjectSet::from_bits(0b1011);
        let subs: Vec<u64> = m.subsets().map(ObjectSet::bits).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|&b| b & !0b1011 == 0));
        assert_eq!(ObjectSet::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn order_matches_sorted_vec(a in any::<u64>(), b in any::<u64>()) {
            let (sa, sb) = (ObjectSet::from_bits(a), ObjectSet::from_bits(b));
            let va: Vec<usize> = sa.iter().collect();
            let vb: Vec<usize> = sb.iter().collect();
            prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
        }
    }
}
