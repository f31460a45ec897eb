//! Named integer sequences with provenance, and the cross-check that every
//! independently produced copy of a sequence agrees wherever ranges overlap.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

/// How a sequence was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// exhaustive enumeration
    Oracle,
    /// closed form or recurrence
    Formula,
    /// generating-function expansion
    Series,
    /// the unproven distance formula; never certifies anything
    Conjecture,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Source::Oracle => "oracle",
            Source::Formula => "formula",
            Source::Series => "series",
            Source::Conjecture => "conjecture",
        };
        write!(f, "{s}")
    }
}

/// A named integer sequence: `terms[i]` is the value at index `offset + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub name: String,
    pub offset: i64,
    pub terms: Vec<BigInt>,
    pub source: Source,
    /// citation string: an OEIS id where one exists, otherwise a short
    /// description of the producing method
    pub reference: String,
}

impl SequenceRecord {
    pub fn new(
        name: impl Into<String>,
        offset: i64,
        terms: Vec<BigInt>,
        source: Source,
        reference: impl Into<String>,
    ) -> Self {
        assert!(!terms.is_empty(), "a sequence record holds at least one term");
        SequenceRecord {
            name: name.into(),
            offset,
            terms,
            source,
            reference: reference.into(),
        }
    }

    pub fn first_index(&self) -> i64 {
        self.offset
    }

    pub fn last_index(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn term(&self, index: i64) -> Option<&BigInt> {
        if index < self.first_index() || index > self.last_index() {
            return None;
        }
        self.terms.get((index - self.offset) as usize)
    }
}

/// One index where two records of the same sequence disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub name: String,
    pub index: i64,
    /// the conflicting values with their provenance, in registry order
    pub values: Vec<(Source, String)>,
    /// true when a conjecture-tagged record is involved
    pub conjecture_involved: bool,
}

/// Outcome of comparing every same-name pair of records on their overlap.
/// Mismatches are data, not errors; conjecture-involved disagreements are
/// reported separately because they are findings rather than bugs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CrosscheckReport {
    pub sequences: usize,
    pub comparisons: u64,
    pub mismatches: Vec<Mismatch>,
    pub conjecture_violations: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.conjecture_violations.is_empty()
    }
}

/// Append-only collection of sequence records.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    records: Vec<SequenceRecord>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    pub fn insert(&mut self, record: SequenceRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[SequenceRecord] {
        &self.records
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.records.iter().map(|r| r.name.as_str()).collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn find(&self, name: &str) -> Vec<&SequenceRecord> {
        self.records.iter().filter(|r| r.name == name).collect()
    }

    /// Compares all records sharing a name, index by index on the common
    /// range of each pair.
    pub fn crosscheck(&self) -> CrosscheckReport {
        let mut by_name: BTreeMap<&str, Vec<&SequenceRecord>> = BTreeMap::new();
        for r in &self.records {
            by_name.entry(r.name.as_str()).or_default().push(r);
        }
        let mut report = CrosscheckReport {
            sequences: by_name.len(),
            ..CrosscheckReport::default()
        };
        for (name, group) in by_name {
            if group.len() < 2 {
                continue;
            }
            let lo = group.iter().map(|r| r.first_index()).min().expect("nonempty");
            let hi = group.iter().map(|r| r.last_index()).max().expect("nonempty");
            for index in lo..=hi {
                let present: Vec<(&SequenceRecord, &BigInt)> = group
                    .iter()
                    .filter_map(|r| r.term(index).map(|t| (*r, t)))
                    .collect();
                if present.len() < 2 {
                    continue;
                }
                report.comparisons += 1;
                let all_equal = present.windows(2).all(|w| w[0].1 == w[1].1);
                if all_equal {
                    continue;
                }
                let mismatch = Mismatch {
                    name: name.to_string(),
                    index,
                    values: present
                        .iter()
                        .map(|(r, t)| (r.source, t.to_string()))
                        .collect(),
                    conjecture_involved: present
                        .iter()
                        .any(|(r, _)| r.source == Source::Conjecture),
                };
                if mismatch.conjecture_involved {
                    report.conjecture_violations.push(mismatch);
                } else {
                    report.mismatches.push(mismatch);
                }
            }
        }
        report
    }
}
