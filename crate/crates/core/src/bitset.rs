use std::fmt;

/// A set of vertex ids in `0..universe`, stored as a packed bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CandidateSet {
    universe: usize,
    words: Vec<u64>,
}

impl CandidateSet {
    pub fn empty(universe: usize) -> Self {
        CandidateSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    pub fn from_vertices(universe: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for v in vs {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the vertex universe (`n`), not the cardinality.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn intersect_with(&mut self, other: &CandidateSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn intersection(&self, other: &CandidateSet) -> CandidateSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn intersection_len(&self, other: &CandidateSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &CandidateSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference(&self, other: &CandidateSet) -> CandidateSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        s
    }

    pub fn is_subset(&self, other: &CandidateSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + tz)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_respects_universe() {
        let s = CandidateSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
        assert_eq!(CandidateSet::full(0).len(), 0);
    }

    proptest! {
        #[test]
        fn len_matches_member_count(vs in proptest::collection::btree_set(0usize..200, 0..60)) {
            let s = CandidateSet::from_vertices(200, vs.iter().copied());
            prop_assert_eq!(s.len(), vs.len());
            prop_assert_eq!(s.to_vec(), vs.into_iter().collect::<Vec<_>>());
        }

        #[test]
        fn intersection_len_agrees(a in proptest::collection::vec(0usize..130, 0..50),
                                   b in proptest::collection::vec(0usize..130, 0..50)) {
            let sa = CandidateSet::from_vertices(130, a);
            let sb = CandidateSet::from_vertices(130, b);
            let inter = sa.intersection(&sb);
            prop_assert_eq!(inter.len(), sa.intersection_len(&sb));
            prop_assert!(inter.is_subset(&sa) && inter.is_subset(&sb));
            prop_assert_eq!(sa.difference(&sb).len() + inter.len(), sa.len());
        }
    }
}
