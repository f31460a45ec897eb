//! Brute-force and pruned-backtracking enumeration of avoidance classes.
//!
//! This is the ground-truth oracle that every closed form, recurrence and
//! generating function in the crate is checked against. Permutations are
//! built position by position in lexicographic order; a prefix is abandoned
//! as soon as it contains one of the forbidden patterns. For the six patterns
//! of size 3 the containment test is an O(1) update of a small witness state;
//! other pattern sizes fall back to a subsequence search anchored at the new
//! element.
//!
//! Counting and tallying are embarrassingly parallel over the first entry of
//! the permutation: workers own disjoint first entries and partial results
//! are merged in first-entry order, so the output is identical for any
//! worker count.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::perm::{
    word_adjacent_transposition_count, word_fixed_point_count, word_is_indecomposable,
    word_is_sif, word_smallest_box_size, Permutation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration supports sizes up to 63, got {0}")]
    SizeTooLarge(usize),
    #[error("patterns must be nonempty permutations")]
    EmptyPattern,
    #[error("class filter {0} requires the single pattern {1}")]
    FilterNeedsPattern(&'static str, &'static str),
    #[error("the two routes for the block-sum count disagree at n={n}: by decomposition {by_decomposition}, by statistics {by_statistics}")]
    BlockSumRoutesDisagree {
        n: usize,
        by_decomposition: u64,
        by_statistics: u64,
    },
}

/// Membership filter applied on top of pattern avoidance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    All,
    Sif,
    Indecomposable,
    Derangement,
    /// Direct sums of SIF blocks, each of size >= 3 (single block allowed).
    /// Meaningful for 231-avoiders, where it also equals the set of avoiders
    /// with no fixed point and no adjacent transposition.
    SifBlockSums,
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassFilter::All => "all",
            ClassFilter::Sif => "sif",
            ClassFilter::Indecomposable => "indecomposable",
            ClassFilter::Derangement => "derangement",
            ClassFilter::SifBlockSums => "sif-block-sums",
        };
        write!(f, "{s}")
    }
}

/// A pattern set together with a membership filter.
#[derive(Debug, Clone)]
pub struct ClassSpec {
    pub patterns: Vec<Permutation>,
    pub filter: ClassFilter,
}

impl ClassSpec {
    pub fn new(patterns: Vec<Permutation>, filter: ClassFilter) -> Result<Self, EnumError> {
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(EnumError::EmptyPattern);
        }
        if filter == ClassFilter::SifBlockSums {
            let p231: Permutation = "231".parse().expect("valid");
            if patterns != [p231] {
                return Err(EnumError::FilterNeedsPattern("sif-block-sums", "231"));
            }
        }
        Ok(ClassSpec { patterns, filter })
    }

    fn admits(&self, word: &[usize]) -> bool {
        match self.filter {
            ClassFilter::All => true,
            ClassFilter::Sif => word_is_sif(word),
            ClassFilter::Indecomposable => word_is_indecomposable(word),
            ClassFilter::Derangement => word_fixed_point_count(word) == 0,
            ClassFilter::SifBlockSums => {
                word_fixed_point_count(word) == 0 && word_adjacent_transposition_count(word) == 0
            }
        }
    }
}

/// Joint statistics over a class: every map uses plain pointwise statistics
/// (a fixed point is `sigma(i) = i`; an adjacent transposition is
/// `sigma(j) = j+1`, `sigma(j+1) = j`, with no properness restriction).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StatTally {
    /// fixed-point count -> number of class members
    pub by_fixed_points: BTreeMap<usize, BigInt>,
    /// distance between the two fixed points, over members with exactly two
    pub by_fp_distance: BTreeMap<usize, BigInt>,
    /// smallest SIF box size (1 = has a fixed point, n = SIF) -> count
    pub by_smallest_box: BTreeMap<usize, BigInt>,
    /// (fixed points, adjacent transpositions) -> count
    pub by_fp_and_adt: BTreeMap<(usize, usize), BigInt>,
}

#[derive(Debug, Clone, Default)]
struct TallyAcc {
    total: u64,
    by_fixed_points: BTreeMap<usize, u64>,
    by_fp_distance: BTreeMap<usize, u64>,
    by_smallest_box: BTreeMap<usize, u64>,
    by_fp_and_adt: BTreeMap<(usize, usize), u64>,
}

impl TallyAcc {
    fn record(&mut self, word: &[usize]) {
        self.total += 1;
        let mut fp = 0usize;
        let mut fp_positions = [0usize; 2];
        for (i, &v) in word.iter().enumerate() {
            if v == i + 1 {
                if fp < 2 {
                    fp_positions[fp] = i + 1;
                }
                fp += 1;
            }
        }
        let adt = word_adjacent_transposition_count(word);
        *self.by_fixed_points.entry(fp).or_insert(0) += 1;
        if fp == 2 {
            let d = fp_positions[1] - fp_positions[0];
            *self.by_fp_distance.entry(d).or_insert(0) += 1;
        }
        *self
            .by_smallest_box
            .entry(word_smallest_box_size(word))
            .or_insert(0) += 1;
        *self.by_fp_and_adt.entry((fp, adt)).or_insert(0) += 1;
    }

    fn merge(&mut self, other: TallyAcc) {
        self.total += other.total;
        for (k, v) in other.by_fixed_points {
            *self.by_fixed_points.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.by_fp_distance {
            *self.by_fp_distance.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.by_smallest_box {
            *self.by_smallest_box.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.by_fp_and_adt {
            *self.by_fp_and_adt.entry(k).or_insert(0) += v;
        }
    }

    fn finish(self) -> StatTally {
        StatTally {
            by_fixed_points: to_big(self.by_fixed_points),
            by_fp_distance: to_big(self.by_fp_distance),
            by_smallest_box: to_big(self.by_smallest_box),
            by_fp_and_adt: to_big(self.by_fp_and_adt),
        }
    }
}

fn to_big<K: Ord>(m: BTreeMap<K, u64>) -> BTreeMap<K, BigInt> {
    m.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect()
}

// ---- incremental containment state ----------------------------------------

/// Witness summary for one forbidden pattern. The prefix is known to avoid
/// the pattern, so a new occurrence must end at the appended element; each
/// variant stores just enough to answer that in O(1).
#[derive(Clone)]
enum PatternState {
    /// 123: least top of an ascent; v completes iff some ascent tops below v
    MinAscentTop(usize),
    /// 132: values strictly inside some ascent (bit b = value b+1)
    AscSpan(u64),
    /// 213: least top of a descent
    MinDescentTop(usize),
    /// 231: greatest bottom of an ascent
    MaxAscentBottom(usize),
    /// 312: values strictly inside some descent
    DescSpan(u64),
    /// 321: greatest bottom of a descent
    MaxDescentBottom(usize),
    /// 12 / 21 / 1: answered from the running min/max alone
    AnySmaller,
    AnyLarger,
    AnyElement,
    /// other sizes: re-search the prefix for an occurrence ending at v
    Generic(Vec<usize>),
}

impl PatternState {
    fn for_pattern(p: &Permutation) -> PatternState {
        match p.values() {
            [1, 2, 3] => PatternState::MinAscentTop(usize::MAX),
            [1, 3, 2] => PatternState::AscSpan(0),
            [2, 1, 3] => PatternState::MinDescentTop(usize::MAX),
            [2, 3, 1] => PatternState::MaxAscentBottom(0),
            [3, 1, 2] => PatternState::DescSpan(0),
            [3, 2, 1] => PatternState::MaxDescentBottom(0),
            [1, 2] => PatternState::AnySmaller,
            [2, 1] => PatternState::AnyLarger,
            [1] => PatternState::AnyElement,
            other => PatternState::Generic(other.to_vec()),
        }
    }

    /// Would appending `v` to the prefix create an occurrence?
    fn completes(&self, prefix: &[usize], ctx: &Ctx, v: usize) -> bool {
        match self {
            PatternState::MinAscentTop(top) => *top < v,
            PatternState::AscSpan(mask) => mask & bit(v) != 0,
            PatternState::MinDescentTop(top) => *top < v,
            PatternState::MaxAscentBottom(bottom) => *bottom > v,
            PatternState::DescSpan(mask) => mask & bit(v) != 0,
            PatternState::MaxDescentBottom(bottom) => *bottom > v,
            PatternState::AnySmaller => ctx.run_min < v,
            PatternState::AnyLarger => ctx.run_max > v,
            PatternState::AnyElement => true,
            PatternState::Generic(pat) => completes_generic(prefix, pat, v),
        }
    }

    /// State after `v` has been appended (`ctx` still describes the prefix).
    fn extended(&self, ctx: &Ctx, v: usize) -> PatternState {
        match self {
            PatternState::MinAscentTop(top) => {
                let top = if ctx.run_min < v { (*top).min(v) } else { *top };
                PatternState::MinAscentTop(top)
            }
            PatternState::AscSpan(mask) => {
                let mask = if ctx.run_min < v {
                    mask | between(ctx.run_min, v)
                } else {
                    *mask
                };
                PatternState::AscSpan(mask)
            }
            PatternState::MinDescentTop(top) => {
                // new descents pair v with every larger used value; the least
                // such top is the successor of v among used values
                let top = match successor(ctx.used, v) {
                    Some(s) => (*top).min(s),
                    None => *top,
                };
                PatternState::MinDescentTop(top)
            }
            PatternState::MaxAscentBottom(bottom) => {
                let bottom = match predecessor(ctx.used, v) {
                    Some(p) => (*bottom).max(p),
                    None => *bottom,
                };
                PatternState::MaxAscentBottom(bottom)
            }
            PatternState::DescSpan(mask) => {
                let mask = if ctx.run_max > v {
                    mask | between(v, ctx.run_max)
                } else {
                    *mask
                };
                PatternState::DescSpan(mask)
            }
            PatternState::MaxDescentBottom(bottom) => {
                let bottom = if ctx.run_max > v { (*bottom).max(v) } else { *bottom };
                PatternState::MaxDescentBottom(bottom)
            }
            other => other.clone(),
        }
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    used: u64,
    run_min: usize,
    run_max: usize,
}

impl Ctx {
    fn empty() -> Ctx {
        Ctx {
            used: 0,
            run_min: usize::MAX,
            run_max: 0,
        }
    }

    fn push(&self, v: usize) -> Ctx {
        Ctx {
            used: self.used | bit(v),
            run_min: self.run_min.min(v),
            run_max: self.run_max.max(v),
        }
    }
}

fn bit(v: usize) -> u64 {
    1u64 << (v - 1)
}

/// Bits for the open interval (lo, hi).
fn between(lo: usize, hi: usize) -> u64 {
    if hi <= lo + 1 {
        return 0;
    }
    let below_hi = bit(hi) - 1; // values 1..=hi-1
    let upto_lo = (bit(lo) << 1) - 1; // values 1..=lo
    below_hi & !upto_lo
}

/// Smallest used value strictly greater than v.
fn successor(used: u64, v: usize) -> Option<usize> {
    let above = used & !((bit(v) << 1) - 1);
    if above == 0 {
        None
    } else {
        Some(above.trailing_zeros() as usize + 1)
    }
}

/// Largest used value strictly smaller than v.
fn predecessor(used: u64, v: usize) -> Option<usize> {
    let below = used & (bit(v) - 1);
    if below == 0 {
        None
    } else {
        Some(63 - below.leading_zeros() as usize + 1)
    }
}

/// Occurrence of `pat` ending at value `v` appended after `prefix`.
fn completes_generic(prefix: &[usize], pat: &[usize], v: usize) -> bool {
    let k = pat.len();
    if k == 0 || prefix.len() + 1 < k {
        return k == 0;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k - 1);
    fn go(prefix: &[usize], pat: &[usize], v: usize, chosen: &mut Vec<usize>, start: usize) -> bool {
        let m = chosen.len();
        let k = pat.len();
        if m == k - 1 {
            // v plays the final role
            return chosen
                .iter()
                .enumerate()
                .all(|(q, &w)| (w < v) == (pat[q] < pat[k - 1]));
        }
        let remaining = (k - 1) - m;
        for pos in start..=prefix.len().saturating_sub(remaining) {
            let w = prefix[pos];
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(q, &u)| (u < w) == (pat[q] < pat[m]))
                && ((w < v) == (pat[m] < pat[k - 1]));
            if ok {
                chosen.push(w);
                if go(prefix, pat, v, chosen, pos + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(prefix, pat, v, &mut chosen, 0)
}

// ---- generation ------------------------------------------------------------

struct Dfs<'a, F: FnMut(&[usize])> {
    n: usize,
    states: Vec<Vec<PatternState>>, // indexed by depth
    prefix: Vec<usize>,
    visit: &'a mut F,
}

impl<'a, F: FnMut(&[usize])> Dfs<'a, F> {
    fn run(&mut self, ctx: Ctx) {
        let depth = self.prefix.len();
        if depth == self.n {
            (self.visit)(&self.prefix);
            return;
        }
        for v in 1..=self.n {
            if ctx.used & bit(v) != 0 {
                continue;
            }
            let blocked = self.states[depth]
                .iter()
                .any(|s| s.completes(&self.prefix, &ctx, v));
            if blocked {
                continue;
            }
            self.states[depth + 1] = self.states[depth]
                .iter()
                .map(|s| s.extended(&ctx, v))
                .collect();
            self.prefix.push(v);
            self.run(ctx.push(v));
            self.prefix.pop();
        }
    }
}

/// Visits every permutation of `[n]` avoiding all of `patterns`, in
/// lexicographic order. `first` restricts the run to permutations with the
/// given first entry.
fn for_each_avoider_inner(
    n: usize,
    patterns: &[Permutation],
    first: Option<usize>,
    visit: &mut impl FnMut(&[usize]),
) -> Result<(), EnumError> {
    if n > 63 {
        return Err(EnumError::SizeTooLarge(n));
    }
    if patterns.iter().any(|p| p.is_empty()) {
        return Err(EnumError::EmptyPattern);
    }
    let init: Vec<PatternState> = patterns.iter().map(PatternState::for_pattern).collect();
    let mut states = vec![Vec::new(); n + 1];
    states[0] = init;
    let mut dfs = Dfs {
        n,
        states,
        prefix: Vec::with_capacity(n),
        visit,
    };
    let ctx = Ctx::empty();
    match first {
        None => dfs.run(ctx),
        Some(v) => {
            debug_assert!((1..=n).contains(&v));
            let blocked = dfs.states[0]
                .iter()
                .any(|s| s.completes(&[], &ctx, v));
            if !blocked {
                dfs.states[1] = dfs.states[0].iter().map(|s| s.extended(&ctx, v)).collect();
                dfs.prefix.push(v);
                dfs.run(ctx.push(v));
            }
        }
    }
    Ok(())
}

/// Streams all avoiders of `[n]` in lexicographic order.
pub fn for_each_avoider(
    n: usize,
    patterns: &[Permutation],
    mut visit: impl FnMut(&[usize]),
) -> Result<(), EnumError> {
    for_each_avoider_inner(n, patterns, None, &mut visit)
}

/// Collects the avoiders; convenient for small `n`.
pub fn generate_avoiders(n: usize, patterns: &[Permutation]) -> Result<Vec<Permutation>, EnumError> {
    let mut out = Vec::new();
    for_each_avoider(n, patterns, |w| {
        out.push(Permutation::new(w.to_vec()).expect("generated words are permutations"));
    })?;
    Ok(out)
}

/// The oracle's oracle: filter all n! permutations by the plain containment
/// test. Only sensible for small `n`.
pub fn generate_avoiders_naive(n: usize, patterns: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut values: Vec<usize> = (1..=n).collect();
    loop {
        let perm = Permutation::new(values.clone()).expect("valid");
        if perm.avoids_all(patterns) {
            out.push(perm);
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| values[i] < values[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
        values.swap(i, j);
        values[i + 1..].reverse();
    }
}

// ---- parallel counting -------------------------------------------------------

/// Runs `work` for each first entry `1..=n`, splitting entries across
/// `workers` threads, and folds the partial results in first-entry order.
fn split_by_first_entry<T: Send>(
    n: usize,
    workers: usize,
    work: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    let workers = workers.max(1).min(n.max(1));
    if n == 0 {
        return Vec::new();
    }
    if workers == 1 {
        return (1..=n).map(work).collect();
    }
    let mut partials: Vec<Option<T>> = Vec::new();
    partials.resize_with(n, || None);
    std::thread::scope(|scope| {
        let work = &work;
        let mut chunks: Vec<&mut [Option<T>]> = Vec::new();
        let mut rest = partials.as_mut_slice();
        // contiguous chunks of first entries per worker
        let base = n / workers;
        let extra = n % workers;
        for t in 0..workers {
            let len = base + usize::from(t < extra);
            let (head, tail) = rest.split_at_mut(len);
            chunks.push(head);
            rest = tail;
        }
        let mut start = 1usize;
        for chunk in chunks {
            let lo = start;
            start += chunk.len();
            scope.spawn(move || {
                for (off, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(work(lo + off));
                }
            });
        }
    });
    partials.into_iter().map(|p| p.expect("worker filled slot")).collect()
}

/// Exact size of the class: avoiders of the pattern set passing the filter.
pub fn count_class(n: usize, spec: &ClassSpec, workers: usize) -> Result<BigInt, EnumError> {
    if n == 0 {
        return Ok(BigInt::from(u64::from(spec.admits(&[]))));
    }
    let partials = try_split(n, workers, |first| {
        let mut count = 0u64;
        for_each_avoider_inner(n, &spec.patterns, Some(first), &mut |w| {
            if spec.admits(w) {
                count += 1;
            }
        })
        .map(|()| count)
    })?;
    Ok(BigInt::from(partials.into_iter().sum::<u64>()))
}

fn try_split<T: Send>(
    n: usize,
    workers: usize,
    work: impl Fn(usize) -> Result<T, EnumError> + Sync,
) -> Result<Vec<T>, EnumError> {
    split_by_first_entry(n, workers, work).into_iter().collect()
}

/// Simultaneous fixed-point, fp-distance, smallest-box and (fp, adt) tallies.
pub fn tally_stats(n: usize, spec: &ClassSpec, workers: usize) -> Result<StatTally, EnumError> {
    let partials = try_split(n, workers, |first| {
        let mut acc = TallyAcc::default();
        for_each_avoider_inner(n, &spec.patterns, Some(first), &mut |w| {
            if spec.admits(w) {
                acc.record(w);
            }
        })
        .map(|()| acc)
    })?;
    let mut acc = TallyAcc::default();
    for p in partials {
        acc.merge(p);
    }
    Ok(acc.finish())
}

/// Number of 231-avoiders of `[n]` that are direct sums of SIF blocks all of
/// size >= 3, computed two independent ways and asserted equal:
/// (a) by decomposing into sum components, (b) as the avoiders with no fixed
/// point and no adjacent transposition.
pub fn count_sif_block_sums_231(n: usize, workers: usize) -> Result<BigInt, EnumError> {
    let p231: Permutation = "231".parse().expect("valid");
    let patterns = vec![p231];
    let partials = try_split(n, workers, |first| {
        let mut by_decomposition = 0u64;
        let mut by_statistics = 0u64;
        for_each_avoider_inner(n, &patterns, Some(first), &mut |w| {
            let perm = Permutation::new(w.to_vec()).expect("valid");
            if perm
                .sum_components()
                .iter()
                .all(|b| b.size() >= 3 && b.is_sif())
            {
                by_decomposition += 1;
            }
            if word_fixed_point_count(w) == 0 && word_adjacent_transposition_count(w) == 0 {
                by_statistics += 1;
            }
        })
        .map(|()| (by_decomposition, by_statistics))
    })?;
    let (a, b) = partials
        .into_iter()
        .fold((0u64, 0u64), |(x, y), (a, b)| (x + a, y + b));
    if a != b {
        return Err(EnumError::BlockSumRoutesDisagree {
            n,
            by_decomposition: a,
            by_statistics: b,
        });
    }
    Ok(BigInt::from(a))
}

/// Smallest-SIF-box histogram over the derangements avoiding `pattern`:
/// key `k` in `2..n` counts those whose smallest box has size `k`, and key
/// `n` counts the SIF ones.
pub fn smallest_box_counts(
    n: usize,
    pattern: &Permutation,
    workers: usize,
) -> Result<BTreeMap<usize, BigInt>, EnumError> {
    let spec = ClassSpec::new(vec![pattern.clone()], ClassFilter::Derangement)?;
    let tally = tally_stats(n, &spec, workers)?;
    Ok(tally
        .by_smallest_box
        .into_iter()
        .filter(|(k, _)| *k >= 2)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pats(names: &[&str]) -> Vec<Permutation> {
        names.iter().map(|s| p(s)).collect()
    }

    fn count(n: usize, patterns: &[&str], filter: ClassFilter) -> u64 {
        let spec = ClassSpec::new(pats(patterns), filter).unwrap();
        count_class(n, &spec, 1).unwrap().to_u64().unwrap()
    }

    #[test]
    fn pruned_matches_naive() {
        let sets: Vec<Vec<&str>> = vec![
            vec!["123"],
            vec!["132"],
            vec!["213"],
            vec!["231"],
            vec!["312"],
            vec!["321"],
            vec!["123", "231"],
            vec!["132", "231"],
            vec!["123", "321"],
            vec!["231", "312"],
            vec!["132", "213", "321"],
            vec!["1234"],
            vec!["1324"],
            vec!["2413", "231"],
            vec!["21"],
            vec!["1"],
        ];
        for set in &sets {
            for n in 0..=7 {
                let fast = generate_avoiders(n, &pats(set)).unwrap();
                let naive = generate_avoiders_naive(n, &pats(set));
                assert_eq!(fast, naive, "patterns {set:?}, n={n}");
            }
        }
        // one size up for a representative sample
        for set in [vec!["132"], vec!["1234"], vec!["123", "231"]] {
            let fast = generate_avoiders(8, &pats(&set)).unwrap();
            let naive = generate_avoiders_naive(8, &pats(&set));
            assert_eq!(fast, naive, "patterns {set:?}, n=8");
        }
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(generate_avoiders(3, &pats(&["132"])).unwrap().len(), 5);
        assert_eq!(count(6, &["231"], ClassFilter::All), 132);
        // |S_9(123,231)| = 9*8/2 + 1, cross-checked by brute force
        assert_eq!(count(9, &["123", "231"], ClassFilter::All), 37);
    }

    #[test]
    fn sif_count_examples() {
        assert_eq!(count(7, &["123"], ClassFilter::Sif), 150);
        assert_eq!(count(8, &["231"], ClassFilter::Sif), 170);
        assert_eq!(count(6, &["132", "231"], ClassFilter::Sif), 8);
        assert_eq!(count(7, &["132", "231"], ClassFilter::Sif), 16);
    }

    #[test]
    fn pair_132_231_witnesses_at_n6() {
        let spec = ClassSpec::new(pats(&["132", "231"]), ClassFilter::Sif).unwrap();
        let mut witnesses = Vec::new();
        for_each_avoider(6, &spec.patterns, |w| {
            if spec.admits(w) {
                witnesses.push(Permutation::new(w.to_vec()).unwrap().to_string());
            }
        })
        .unwrap();
        let expected = vec![
            "612345", "631245", "641235", "642135", "651234", "652134", "654123", "654213",
        ];
        let mut sorted = witnesses.clone();
        sorted.sort();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn block_sum_counts() {
        let got: Vec<u64> = (1..=9)
            .map(|n| count_sif_block_sums_231(n, 1).unwrap().to_u64().unwrap())
            .collect();
        assert_eq!(got, vec![0, 0, 1, 2, 6, 19, 58, 186, 612]);
    }

    #[test]
    fn tally_fixed_points_bounded_for_123() {
        let spec = ClassSpec::new(pats(&["123"]), ClassFilter::All).unwrap();
        let tally = tally_stats(6, &spec, 1).unwrap();
        assert!(tally.by_fixed_points.keys().all(|&k| k <= 2));
        assert_eq!(tally.by_fp_distance[&1], BigInt::from(4)); // C_2^2
        let tally7 = tally_stats(7, &spec, 1).unwrap();
        assert_eq!(tally7.by_fp_distance[&3], BigInt::from(16)); // (n-3) C(n-3, (n-1)/2)
    }

    #[test]
    fn tally_totals_equal_class_count() {
        let spec = ClassSpec::new(pats(&["231"]), ClassFilter::All).unwrap();
        for n in 1..=8 {
            let count = count_class(n, &spec, 1).unwrap();
            let tally = tally_stats(n, &spec, 1).unwrap();
            for map_total in [
                tally.by_fixed_points.values().sum::<BigInt>(),
                tally.by_smallest_box.values().sum::<BigInt>(),
                tally.by_fp_and_adt.values().sum::<BigInt>(),
            ] {
                assert_eq!(map_total, count, "n={n}");
            }
        }
    }

    #[test]
    fn fp_distance_bounds() {
        let spec = ClassSpec::new(pats(&["123"]), ClassFilter::All).unwrap();
        for n in 1..=9 {
            let tally = tally_stats(n, &spec, 1).unwrap();
            assert!(tally.by_fp_distance.keys().all(|&d| 1 <= d && 2 * d <= n));
            // distances sum to the two-fixed-point count
            let total: BigInt = tally.by_fp_distance.values().sum();
            let two = tally.by_fixed_points.get(&2).cloned().unwrap_or_default();
            assert_eq!(total, two);
        }
    }

    #[test]
    fn smallest_box_examples() {
        let boxes = smallest_box_counts(3, &p("123"), 1).unwrap();
        // both SIF derangements of size 3 (231 and 312) avoid 123
        assert_eq!(boxes, BTreeMap::from([(3, BigInt::from(2))]));
    }

    #[test]
    fn worker_counts_agree() {
        let spec = ClassSpec::new(pats(&["231"]), ClassFilter::Sif).unwrap();
        let single = count_class(9, &spec, 1).unwrap();
        for workers in [2, 3, 8, 64] {
            assert_eq!(count_class(9, &spec, workers).unwrap(), single);
        }
        let t1 = tally_stats(8, &spec, 1).unwrap();
        let t4 = tally_stats(8, &spec, 4).unwrap();
        assert_eq!(t1, t4);
    }

    #[test]
    fn spec_validation() {
        assert!(ClassSpec::new(pats(&["231"]), ClassFilter::SifBlockSums).is_ok());
        assert!(ClassSpec::new(pats(&["132"]), ClassFilter::SifBlockSums).is_err());
        assert!(ClassSpec::new(vec![Permutation::empty()], ClassFilter::All).is_err());
    }

    #[test]
    fn every_sif_contains_231_or_312() {
        let targets = pats(&["231", "312"]);
        for n in 3..=9 {
            for_each_avoider(n, &[], |w| {
                if word_is_sif(w) {
                    let perm = Permutation::new(w.to_vec()).unwrap();
                    assert!(!perm.avoids_all(&targets), "{perm} is SIF but avoids both");
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn sif_equals_indecomposable_for_321_avoiders() {
        for n in 1..=9 {
            let sif = count(n, &["321"], ClassFilter::Sif);
            let ind = count(n, &["321"], ClassFilter::Indecomposable);
            assert_eq!(sif, ind, "n={n}");
        }
    }

    #[test]
    fn fp_adt_construction_identity() {
        // |A_n(k,j)| = C(k+j, k) |A_{n-j}(k+j, 0)| over 231-avoiders
        let spec = ClassSpec::new(pats(&["231"]), ClassFilter::All).unwrap();
        let tallies: Vec<StatTally> = (0..=10)
            .map(|n| tally_stats(n, &spec, 1).unwrap())
            .collect();
        let a = |n: usize, k: usize, j: usize| -> BigInt {
            tallies[n]
                .by_fp_and_adt
                .get(&(k, j))
                .cloned()
                .unwrap_or_default()
        };
        let binom = |a: usize, b: usize| -> BigInt {
            let mut v = BigInt::from(1);
            for i in 0..b {
                v = v * BigInt::from(a - i) / BigInt::from(i + 1);
            }
            v
        };
        for n in 3..=10usize {
            for k in 0..=n {
                for j in 0..=(n / 2) {
                    let lhs = a(n, k, j);
                    let rhs = binom(k + j, k) * a(n - j, k + j, 0);
                    assert_eq!(lhs, rhs, "n={n} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn n_zero_yields_empty_permutation() {
        let avoiders = generate_avoiders(0, &pats(&["231"])).unwrap();
        assert_eq!(avoiders, vec![Permutation::empty()]);
    }

    #[test]
    fn insertion_construction_is_exhaustive_and_reversible() {
        // every indecomposable 132-avoider of size 7 admits the block
        // insertion at its insertion position; the result is an
        // indecomposable non-SIF 132-avoider and removing the created box
        // recovers the original
        let p132 = p("132");
        let hosts: Vec<Permutation> = generate_avoiders(7, std::slice::from_ref(&p132))
            .unwrap()
            .into_iter()
            .filter(|q| q.is_indecomposable())
            .collect();
        assert!(!hosts.is_empty());
        for block_size in [2usize, 3] {
            let blocks: Vec<Permutation> =
                generate_avoiders(block_size, std::slice::from_ref(&p132))
                    .unwrap()
                    .into_iter()
                    .filter(Permutation::is_sif)
                    .collect();
            for host in &hosts {
                let j = host.insertion_position_132().unwrap();
                for block in &blocks {
                    let image = host
                        .insert_fixed_point(j)
                        .unwrap()
                        .inflate_at(j, block)
                        .unwrap();
                    assert!(image.avoids(&p132), "{host} + {block}");
                    assert!(image.is_indecomposable(), "{host} + {block}");
                    assert!(!image.is_sif(), "{host} + {block}");
                    // the inserted block is the leftmost minimal box; removing
                    // it undoes the construction
                    let report = image.sif_boxes();
                    let (iv, content) = &report.boxes[0];
                    assert_eq!(content, block);
                    assert_eq!(image.remove_interval(*iv).unwrap(), *host);
                }
            }
        }
    }

    #[test]
    fn boxed_123_avoiders_are_balanced_skew_sums() {
        // a fixed-point-free 123-avoider whose smallest box has size >= 3
        // splits as sigma_1 (skew) box (skew) sigma_2 with equal wings
        for n in 5..=9 {
            for_each_avoider(n, &pats(&["123"]), |w| {
                if word_fixed_point_count(w) != 0 {
                    return;
                }
                let m = crate::perm::word_smallest_box_size(w);
                if m < 3 || m == n {
                    return;
                }
                let perm = Permutation::new(w.to_vec()).unwrap();
                let report = perm.sif_boxes();
                assert_eq!(report.boxes.len(), 1, "{perm}");
                let (iv, content) = &report.boxes[0];
                let k = iv.lo - 1;
                assert_eq!(iv.hi, n - k, "wings of {perm} must balance");
                assert!(content.is_sif());
                // left wing sits above the box, right wing below
                assert!(w[..k].iter().all(|&v| v > iv.hi));
                assert!(w[iv.hi..].iter().all(|&v| v < iv.lo));
            })
            .unwrap();
        }
    }

    #[test]
    fn sif_equals_indecomposable_for_321_avoiders_as_sets() {
        for n in 1..=8 {
            let avoiders = generate_avoiders(n, &pats(&["321"])).unwrap();
            let sif: Vec<&Permutation> = avoiders.iter().filter(|q| q.is_sif()).collect();
            let ind: Vec<&Permutation> =
                avoiders.iter().filter(|q| q.is_indecomposable()).collect();
            assert_eq!(sif, ind, "n={n}");
        }
    }
}
