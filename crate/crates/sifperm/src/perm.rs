//! Permutations in one-line notation, their classical symmetries, pattern
//! containment, and the interval structure (stabilized intervals, SIF boxes)
//! that the rest of the crate is built on.
//!
//! Positions and values are 1-indexed throughout. A permutation of size `n`
//! is a rearrangement of `{1, ..., n}`; the empty permutation (`n = 0`) is
//! permitted but is neither SIF nor indecomposable by convention (counting
//! sequences start at `n = 1`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("word entries must be distinct")]
    DuplicateEntry,
    #[error("values must be a rearrangement of 1..={0}")]
    NotAPermutation(usize),
    #[error("position {pos} out of range 1..={size}")]
    PositionOutOfRange { pos: usize, size: usize },
    #[error("inflation block must be nonempty")]
    EmptyBlock,
    #[error("not an indecomposable 132-avoider")]
    NotInsertable,
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `[n] = {1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

/// A contiguous interval `[lo, hi]` of positions (1-indexed, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// Proper means strictly shorter than the ambient permutation.
    pub fn is_proper(&self, n: usize) -> bool {
        self.len() < n
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Minimal stabilized intervals of a permutation with their reduced contents.
///
/// Fixed points appear as size-1 boxes and adjacent transpositions as size-2
/// boxes. `smallest_size` is the minimum over the proper boxes and is `None`
/// exactly when the permutation is SIF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxReport {
    pub boxes: Vec<(Interval, Permutation)>,
    pub smallest_size: Option<usize>,
}

/// The four classical symmetries that act on avoidance classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Inverse,
    Reverse,
    Complement,
    ReverseComplement,
}

impl Permutation {
    /// Builds a permutation after checking that `values` rearranges `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    /// Order-isomorphic relabeling of a word of distinct integers onto `1..=k`.
    pub fn reduce(word: &[usize]) -> Result<Self, PermError> {
        let mut sorted: Vec<usize> = word.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(PermError::DuplicateEntry);
        }
        let values = word
            .iter()
            .map(|v| sorted.binary_search(v).expect("entry present") + 1)
            .collect();
        Ok(Permutation { values })
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of position `pos` (1-indexed).
    pub fn value_at(&self, pos: usize) -> Result<usize, PermError> {
        self.values
            .get(pos.wrapping_sub(1))
            .copied()
            .ok_or(PermError::PositionOutOfRange {
                pos,
                size: self.size(),
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().copied()
    }

    // ---- symmetries -----------------------------------------------------

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut values = vec![0; n];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation { values }
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.size();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    pub fn symmetry(&self, which: Symmetry) -> Self {
        match which {
            Symmetry::Inverse => self.inverse(),
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::ReverseComplement => self.reverse_complement(),
        }
    }

    // ---- pattern containment --------------------------------------------

    /// Classical containment: some subsequence of `self` reduces to `pattern`.
    ///
    /// Plain O(n^k) subsequence search, kept deliberately simple so it can
    /// serve as the trusted oracle for the incremental checks used during
    /// generation. The empty pattern is vacuously contained.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        word_contains(&self.values, pattern.values())
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn avoids_all(&self, patterns: &[Permutation]) -> bool {
        patterns.iter().all(|p| self.avoids(p))
    }

    // ---- interval structure ---------------------------------------------

    /// All proper intervals `[j,k]` with `{sigma(j),...,sigma(k)} = {j,...,k}`,
    /// in increasing `(lo, hi)` order.
    pub fn stabilized_intervals(&self) -> Vec<Interval> {
        word_stabilized_intervals(&self.values)
    }

    pub fn is_sif(&self) -> bool {
        word_is_sif(&self.values)
    }

    pub fn is_indecomposable(&self) -> bool {
        word_is_indecomposable(&self.values)
    }

    pub fn is_derangement(&self) -> bool {
        word_fixed_point_count(&self.values) == 0
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        word_fixed_point_count(&self.values)
    }

    /// Number of adjacent transpositions: positions `j` with
    /// `sigma(j) = j+1` and `sigma(j+1) = j`.
    pub fn adjacent_transposition_count(&self) -> usize {
        word_adjacent_transposition_count(&self.values)
    }

    /// Minimal stabilized proper intervals with their reduced contents.
    ///
    /// Minimal boxes of a permutation are pairwise disjoint: two overlapping
    /// stabilized intervals intersect in a smaller stabilized interval, which
    /// would contradict minimality. This is asserted rather than assumed.
    pub fn sif_boxes(&self) -> BoxReport {
        let all = self.stabilized_intervals();
        let mut boxes = Vec::new();
        for &iv in &all {
            let minimal = all
                .iter()
                .all(|&other| other == iv || other.lo < iv.lo || other.hi > iv.hi);
            if minimal {
                let content = Permutation::reduce(&self.values[iv.lo - 1..iv.hi])
                    .expect("permutation entries are distinct");
                boxes.push((iv, content));
            }
        }
        assert!(
            boxes
                .iter()
                .zip(boxes.iter().skip(1))
                .all(|((a, _), (b, _))| a.hi < b.lo),
            "minimal stabilized intervals must be pairwise disjoint"
        );
        let smallest_size = boxes.iter().map(|(iv, _)| iv.len()).min();
        BoxReport {
            boxes,
            smallest_size,
        }
    }

    // ---- structural maps --------------------------------------------------

    /// Direct sum: `other` is placed above and to the right of `self`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let n = self.size();
        let values = self
            .values
            .iter()
            .copied()
            .chain(other.values.iter().map(|&v| v + n))
            .collect();
        Permutation { values }
    }

    /// Skew sum: `other` is placed below and to the right of `self`.
    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let m = other.size();
        let values = self
            .values
            .iter()
            .map(|&v| v + m)
            .chain(other.values.iter().copied())
            .collect();
        Permutation { values }
    }

    /// Finest direct-sum decomposition: the reduced blocks between
    /// consecutive stabilized prefixes, left to right.
    pub fn sum_components(&self) -> Vec<Permutation> {
        let mut blocks = Vec::new();
        let mut start = 0usize;
        let mut max = 0usize;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                let block = self.values[start..=i].iter().map(|&v| v - start).collect();
                blocks.push(Permutation { values: block });
                start = i + 1;
            }
        }
        blocks
    }

    /// Replaces the point at `pos` by `block`, using consecutive values in
    /// place of the removed one and shifting everything else out of the way.
    pub fn inflate_at(&self, pos: usize, block: &Permutation) -> Result<Self, PermError> {
        if block.is_empty() {
            return Err(PermError::EmptyBlock);
        }
        let v = self.value_at(pos)?;
        let m = block.size();
        let shift = |w: usize| if w < v { w } else { w + m - 1 };
        let mut values = Vec::with_capacity(self.size() + m - 1);
        values.extend(self.values[..pos - 1].iter().map(|&w| shift(w)));
        values.extend(block.values.iter().map(|&b| v - 1 + b));
        values.extend(self.values[pos..].iter().map(|&w| shift(w)));
        Ok(Permutation { values })
    }

    /// Inserts a new fixed point with value `j` at position `j`, shifting
    /// larger values and later positions.
    pub fn insert_fixed_point(&self, j: usize) -> Result<Self, PermError> {
        if j == 0 || j > self.size() + 1 {
            return Err(PermError::PositionOutOfRange {
                pos: j,
                size: self.size() + 1,
            });
        }
        let shift = |w: usize| if w < j { w } else { w + 1 };
        let mut values = Vec::with_capacity(self.size() + 1);
        values.extend(self.values[..j - 1].iter().map(|&w| shift(w)));
        values.push(j);
        values.extend(self.values[j - 1..].iter().map(|&w| shift(w)));
        Ok(Permutation { values })
    }

    /// Deletes the positions of `iv` and reduces what remains.
    pub fn remove_interval(&self, iv: Interval) -> Result<Self, PermError> {
        if iv.lo == 0 || iv.hi > self.size() || iv.lo > iv.hi {
            return Err(PermError::PositionOutOfRange {
                pos: iv.hi,
                size: self.size(),
            });
        }
        let word: Vec<usize> = self.values[..iv.lo - 1]
            .iter()
            .chain(self.values[iv.hi..].iter())
            .copied()
            .collect();
        Permutation::reduce(&word)
    }

    /// For an indecomposable 132-avoider, the smallest `j` such that
    /// `min{sigma(1),...,sigma(j)} <= j`; equivalently the first `j` for
    /// which the square `[1,j] x [1,j]` meets the plot. This is the unique
    /// position where a SIF block can be inserted to produce an
    /// indecomposable non-SIF 132-avoider.
    pub fn insertion_position_132(&self) -> Result<usize, PermError> {
        let pat132 = Permutation::from_values_unchecked(vec![1, 3, 2]);
        if self.is_empty() || !self.is_indecomposable() || self.contains(&pat132) {
            return Err(PermError::NotInsertable);
        }
        let mut min = usize::MAX;
        for (i, &v) in self.values.iter().enumerate() {
            min = min.min(v);
            if min <= i + 1 {
                return Ok(i + 1);
            }
        }
        unreachable!("min over the whole word is 1 <= n")
    }
}

impl fmt::Display for Permutation {
    /// Comma-free digit string for `n <= 9` (`562314`), comma-separated
    /// otherwise (`10,3,4,...`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|part| part.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| PermError::Parse(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| PermError::Parse(s.to_string()))?
        };
        Permutation::new(values).map_err(|_| PermError::Parse(s.to_string()))
    }
}

// ---- slice-level predicates (shared with the enumeration hot path) --------

pub(crate) fn word_fixed_point_count(word: &[usize]) -> usize {
    word.iter().enumerate().filter(|&(i, &v)| v == i + 1).count()
}

pub(crate) fn word_adjacent_transposition_count(word: &[usize]) -> usize {
    (0..word.len().saturating_sub(1))
        .filter(|&i| word[i] == i + 2 && word[i + 1] == i + 1)
        .count()
}

pub(crate) fn word_stabilized_intervals(word: &[usize]) -> Vec<Interval> {
    let n = word.len();
    let mut out = Vec::new();
    for j in 1..=n {
        let mut min = usize::MAX;
        let mut max = 0;
        for k in j..=n {
            min = min.min(word[k - 1]);
            max = max.max(word[k - 1]);
            if k - j + 1 < n && min == j && max == k {
                out.push(Interval { lo: j, hi: k });
            }
        }
    }
    out
}

/// O(n^2) sweep: for each left endpoint track the running min/max of values;
/// `[j,k]` is stabilized iff `min = j` and `max = k`.
pub(crate) fn word_is_sif(word: &[usize]) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    for j in 1..=n {
        let mut min = usize::MAX;
        let mut max = 0;
        for k in j..=n {
            min = min.min(word[k - 1]);
            max = max.max(word[k - 1]);
            if k - j + 1 < n && min == j && max == k {
                return false;
            }
        }
    }
    true
}

pub(crate) fn word_is_indecomposable(word: &[usize]) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    let mut max = 0;
    for (i, &v) in word.iter().enumerate().take(n - 1) {
        max = max.max(v);
        if max == i + 1 {
            return false;
        }
    }
    true
}

/// Smallest SIF box size of a word: 1 if it has a fixed point, otherwise the
/// length of the shortest stabilized proper interval, otherwise `n` (SIF).
pub(crate) fn word_smallest_box_size(word: &[usize]) -> usize {
    let n = word.len();
    let mut best = n;
    for j in 1..=n {
        let mut min = usize::MAX;
        let mut max = 0;
        for k in j..=n {
            min = min.min(word[k - 1]);
            max = max.max(word[k - 1]);
            let len = k - j + 1;
            if len >= best {
                break;
            }
            if len < n && min == j && max == k {
                best = len;
                break;
            }
        }
        if best == 1 {
            break;
        }
    }
    best
}

pub(crate) fn word_contains(word: &[usize], pattern: &[usize]) -> bool {
    let k = pattern.len();
    if k == 0 {
        return true;
    }
    if k > word.len() {
        return false;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    search(word, pattern, &mut chosen, 0)
}

/// Depth-first choice of positions; each candidate value is compared against
/// all previously chosen ones so the partial map stays order-isomorphic.
fn search(word: &[usize], pattern: &[usize], chosen: &mut Vec<usize>, start: usize) -> bool {
    let m = chosen.len();
    if m == pattern.len() {
        return true;
    }
    // not enough room for the remaining pattern entries
    let remaining = pattern.len() - m;
    for pos in start..=word.len().saturating_sub(remaining) {
        let v = word[pos];
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(q, &w)| (w < v) == (pattern[q] < pattern[m]));
        if consistent {
            chosen.push(v);
            if search(word, pattern, chosen, pos + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Permutation::reduce(&[3, 4, 2]).unwrap(), p("231"));
        assert_eq!(Permutation::reduce(&[1]).unwrap(), p("1"));
        // 562134 restricted to positions 3..5 carries values 2,1,3
        assert_eq!(Permutation::reduce(&[2, 1, 3]).unwrap(), p("213"));
        assert_eq!(
            Permutation::reduce(&[5, 5, 1]),
            Err(PermError::DuplicateEntry)
        );
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(p("231").inverse(), p("312"));
        assert_eq!(Permutation::identity(3).complement(), p("321"));
        assert!(p("562314").reverse_complement().is_sif());
        for s in ["562314", "634215", "4123"] {
            let q = p(s);
            assert_eq!(q.inverse().inverse(), q);
            assert_eq!(q.reverse_complement().reverse_complement(), q);
        }
    }

    #[test]
    fn containment_examples() {
        assert!(p("634215").contains(&p("321")));
        assert!(!Permutation::identity(5).contains(&p("21")));
        assert!(p("562314").contains(&p("123")));
        assert!(p("562314").avoids_all(&[p("1234")]));
    }

    #[test]
    fn stabilized_interval_examples() {
        assert!(p("634215")
            .stabilized_intervals()
            .contains(&Interval { lo: 2, hi: 4 }));
        assert!(p("562314").stabilized_intervals().is_empty());
        assert_eq!(
            Permutation::identity(3).stabilized_intervals(),
            vec![
                Interval { lo: 1, hi: 1 },
                Interval { lo: 1, hi: 2 },
                Interval { lo: 2, hi: 2 },
                Interval { lo: 2, hi: 3 },
                Interval { lo: 3, hi: 3 },
            ]
        );
    }

    #[test]
    fn classification_examples() {
        assert!(p("562314").is_sif());
        assert!(!p("634215").is_sif());
        assert!(p("634215").is_indecomposable());
        assert!(p("1").is_sif());
        assert!(!Permutation::empty().is_sif());
        assert!(!Permutation::empty().is_indecomposable());
        assert!(Permutation::empty().is_derangement());
    }

    #[test]
    fn sif_implications_exhaustive() {
        // SIF implies indecomposable and derangement for 2 <= n <= 7; the
        // singleton is SIF by convention yet has a fixed point, so n = 1 is
        // the one exception
        assert!(p("1").is_sif() && !p("1").is_derangement());
        for n in 2..=7 {
            for_each_permutation(n, |w| {
                if word_is_sif(w) {
                    assert!(word_is_indecomposable(w));
                    assert_eq!(word_fixed_point_count(w), 0);
                }
            });
        }
    }

    #[test]
    fn sif_invariant_under_inverse_and_rc() {
        for n in 1..=7 {
            for_each_permutation(n, |w| {
                let q = Permutation::from_values_unchecked(w.to_vec());
                assert_eq!(q.is_sif(), q.inverse().is_sif());
                assert_eq!(q.is_sif(), q.reverse_complement().is_sif());
            });
        }
    }

    #[test]
    fn box_examples() {
        let report = p("634215").sif_boxes();
        assert_eq!(
            report.boxes,
            vec![(Interval { lo: 2, hi: 4 }, p("231"))]
        );
        assert_eq!(report.smallest_size, Some(3));

        let report = p("894532167").sif_boxes();
        assert_eq!(report.boxes, vec![(Interval { lo: 3, hi: 5 }, p("231"))]);

        let report = p("21").sif_boxes();
        assert!(report.boxes.is_empty());
        assert_eq!(report.smallest_size, None);
    }

    #[test]
    fn boxes_reduce_to_sif() {
        for n in 1..=7 {
            for_each_permutation(n, |w| {
                let q = Permutation::from_values_unchecked(w.to_vec());
                for (iv, content) in q.sif_boxes().boxes {
                    assert!(iv.is_proper(n));
                    assert_eq!(iv.len(), content.size());
                    // includes size-1 boxes: fixed points reduce to the
                    // singleton, which is SIF by convention
                    assert!(content.is_sif());
                }
            });
        }
    }

    #[test]
    fn sum_examples() {
        assert_eq!(p("312").direct_sum(&p("312")), p("312645"));
        assert_eq!(p("21").skew_sum(&p("1")), p("321"));
        assert_eq!(p("312").direct_sum(&Permutation::empty()), p("312"));
        assert_eq!(
            p("312645").sum_components(),
            vec![p("312"), p("312")]
        );
    }

    #[test]
    fn inflate_examples() {
        // 54312 with the fixed point at position 3 blown up into 21
        assert_eq!(p("54312").inflate_at(3, &p("21")).unwrap(), p("654312"));
        // the insertion construction: 6732145 at position 3 with 231
        assert_eq!(
            p("6732145").inflate_at(3, &p("231")).unwrap(),
            p("894532167")
        );
        // single-point inflation is the identity
        assert_eq!(p("562314").inflate_at(4, &p("1")).unwrap(), p("562314"));
        assert_eq!(
            p("54312").inflate_at(9, &p("21")),
            Err(PermError::PositionOutOfRange { pos: 9, size: 5 })
        );
        assert_eq!(
            p("54312").inflate_at(1, &Permutation::empty()),
            Err(PermError::EmptyBlock)
        );
    }

    #[test]
    fn insert_fixed_point_examples() {
        assert_eq!(p("562134").insert_fixed_point(3).unwrap(), p("6732145"));
        assert_eq!(p("21").insert_fixed_point(3).unwrap(), p("213"));
    }

    #[test]
    fn insertion_position_examples() {
        assert_eq!(p("562134").insertion_position_132().unwrap(), 3);
        assert_eq!(p("21").insertion_position_132().unwrap(), 2);
        // 132 itself is excluded; so is anything decomposable
        assert_eq!(
            p("132").insertion_position_132(),
            Err(PermError::NotInsertable)
        );
        assert_eq!(
            p("123").insertion_position_132(),
            Err(PermError::NotInsertable)
        );
    }

    #[test]
    fn remove_interval_undoes_insertion() {
        let t = p("562134");
        let j = t.insertion_position_132().unwrap();
        let inflated = t
            .insert_fixed_point(j)
            .unwrap()
            .inflate_at(j, &p("231"))
            .unwrap();
        assert_eq!(inflated, p("894532167"));
        let report = inflated.sif_boxes();
        let (iv, _) = report.boxes[0];
        assert_eq!(inflated.remove_interval(iv).unwrap(), t);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("562314").to_string(), "562314");
        let long: Permutation = "10,3,4,5,6,7,8,9,2,1".parse().unwrap();
        assert_eq!(long.size(), 10);
        assert_eq!(long.to_string(), "10,3,4,5,6,7,8,9,2,1");
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::empty());
        assert!("563314".parse::<Permutation>().is_err());
        assert!("1,2,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn contains_matches_exhaustive_definition() {
        // cross-check the DFS search against a from-scratch triple loop
        let pats: Vec<Permutation> =
            ["123", "132", "213", "231", "312", "321"].iter().map(|s| p(s)).collect();
        for n in 1..=6 {
            for_each_permutation(n, |w| {
                for pat in &pats {
                    let naive = triples(w).any(|(a, b, c)| {
                        Permutation::reduce(&[a, b, c]).unwrap() == *pat
                    });
                    assert_eq!(word_contains(w, pat.values()), naive);
                }
            });
        }
    }

    fn triples(w: &[usize]) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = w.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (w[i], w[j], w[k])))
        })
    }

    pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
        let mut values: Vec<usize> = (1..=n).collect();
        loop {
            f(&values);
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| values[i] < values[i + 1])
            else {
                return;
            };
            let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
            values.swap(i, j);
            values[i + 1..].reverse();
        }
    }
}
