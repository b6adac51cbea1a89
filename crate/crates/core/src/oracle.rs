//! Brute-force ground truth: walk all of S_n in lexicographic order and
//! classify each permutation by scanning its occurrences.
//!
//! The walk is split by first entry. With the `parallel` feature the
//! blocks run on the rayon pool; results are concatenated in first-entry
//! order, so output is identical either way.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::counting::BigCount;
use crate::error::{invalid, Error, Result};
use crate::perm::{avoids_nonconsecutive, contains, occurrences, Pattern, Permutation};

pub const DEFAULT_CEILING: usize = 10;

/// The permutation classes of the 321 and 132 analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// Avoid a nonconsecutive 321.
    A(usize),
    /// Members of `A(n)` starting with a 321 in positions 1..=3.
    B(usize),
    /// Contain no 321 at all.
    C(usize),
    /// Members of `A(n)` not in `B(n)`.
    D(usize),
    /// Members of `A(n)` whose first 321 starts at position `k`, `1 <= k <= n - 2`.
    Ak(usize, usize),
    /// Avoid a nonconsecutive 132.
    E(usize),
    /// Members of `E(n)` with exactly `k` 132s, `0 <= k <= n / 3`.
    Ek(usize, usize),
}

impl ClassLabel {
    pub fn n(&self) -> usize {
        match *self {
            ClassLabel::A(n)
            | ClassLabel::B(n)
            | ClassLabel::C(n)
            | ClassLabel::D(n)
            | ClassLabel::Ak(n, _)
            | ClassLabel::E(n)
            | ClassLabel::Ek(n, _) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ClassLabel::Ak(n, k) if k < 1 || k + 2 > n => Err(invalid(format!(
                "A(n,k) requires 1 <= k <= n-2, got n={n}, k={k}"
            ))),
            ClassLabel::Ek(n, k) if k > n / 3 => Err(invalid(format!(
                "E(n,k) requires 0 <= k <= n/3, got n={n}, k={k}"
            ))),
            _ => Ok(()),
        }
    }

    /// Membership from first principles.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.len() != self.n() {
            return false;
        }
        let p321 = Pattern::p321();
        let p132 = Pattern::p132();
        match *self {
            ClassLabel::A(_) => avoids_nonconsecutive(p, &p321),
            ClassLabel::B(_) => starts_with_321(p) && avoids_nonconsecutive(p, &p321),
            ClassLabel::C(_) => !contains(p, &p321),
            ClassLabel::D(_) => !starts_with_321(p) && avoids_nonconsecutive(p, &p321),
            ClassLabel::Ak(_, k) => {
                avoids_nonconsecutive(p, &p321)
                    && occurrences(p, &p321).first().map(|o| o.first()) == Some(k)
            }
            ClassLabel::E(_) => avoids_nonconsecutive(p, &p132),
            ClassLabel::Ek(_, k) => {
                avoids_nonconsecutive(p, &p132) && occurrences(p, &p132).len() == k
            }
        }
    }
}

fn starts_with_321(p: &Permutation) -> bool {
    let e = p.entries();
    e.len() >= 3 && e[0] > e[1] && e[1] > e[2]
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassLabel::A(n) => write!(f, "A({n})"),
            ClassLabel::B(n) => write!(f, "B({n})"),
            ClassLabel::C(n) => write!(f, "C({n})"),
            ClassLabel::D(n) => write!(f, "D({n})"),
            ClassLabel::Ak(n, k) => write!(f, "A({n},{k})"),
            ClassLabel::E(n) => write!(f, "E({n})"),
            ClassLabel::Ek(n, k) => write!(f, "E({n},{k})"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Parses `A(5)`, `A(5,2)`, `E(10,2)` and so on.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            invalid(format!(
                "bad class label {s:?}; expected e.g. A(5) or E(6,2)"
            ))
        };
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let label = match (head, nums.as_slice()) {
            ("A", [n]) => ClassLabel::A(*n),
            ("B", [n]) => ClassLabel::B(*n),
            ("C", [n]) => ClassLabel::C(*n),
            ("D", [n]) => ClassLabel::D(*n),
            ("A", [n, k]) => ClassLabel::Ak(*n, *k),
            ("E", [n]) => ClassLabel::E(*n),
            ("E", [n, k]) => ClassLabel::Ek(*n, *k),
            _ => return Err(bad()),
        };
        label.validate()?;
        Ok(label)
    }
}

/// Rearranges `v` into its lexicographic successor; false if `v` was the last.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visits the permutations of `[n]` whose first entry is `first`, in lex order.
fn for_each_with_first(n: usize, first: u32, mut f: impl FnMut(&Permutation)) {
    let mut entries: Vec<u32> = std::iter::once(first)
        .chain((1..=n as u32).filter(|&v| v != first))
        .collect();
    loop {
        let p = Permutation::from_vec_unchecked(entries);
        f(&p);
        entries = p.into_entries();
        if !next_permutation(&mut entries[1..]) {
            break;
        }
    }
}

/// Visits every permutation of `[n]` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    if n == 0 {
        f(&Permutation::default());
        return;
    }
    for first in 1..=n as u32 {
        for_each_with_first(n, first, &mut f);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

/// Runs `block` once per first entry and returns the per-block results in
/// first-entry order.
fn map_blocks<T: Send>(n: usize, exec: Execution, block: impl Fn(u32) -> T + Sync) -> Vec<T> {
    if n == 0 {
        return Vec::new();
    }
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (1..=n as u32).into_par_iter().map(&block).collect()
        }
        _ => (1..=n as u32).map(block).collect(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    ceiling: usize,
    execution: Execution,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            ceiling: DEFAULT_CEILING,
            execution: Execution::default(),
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Overrides the size guard. Beyond 12 or so the walk takes hours.
    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n > self.ceiling {
            return Err(Error::CeilingExceeded {
                n,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// Members of `S_n` satisfying `pred`, in lexicographic order.
    pub fn filter(
        &self,
        n: usize,
        pred: impl Fn(&Permutation) -> bool + Sync,
    ) -> Result<Vec<Permutation>> {
        self.guard(n)?;
        if n == 0 {
            let empty = Permutation::default();
            return Ok(if pred(&empty) { vec![empty] } else { vec![] });
        }
        let blocks = map_blocks(n, self.execution, |first| {
            let mut out = Vec::new();
            for_each_with_first(n, first, |p| {
                if pred(p) {
                    out.push(p.clone());
                }
            });
            out
        });
        Ok(blocks.into_iter().flatten().collect())
    }

    /// Number of members of `S_n` satisfying `pred`, without materializing them.
    pub fn count_where(
        &self,
        n: usize,
        pred: impl Fn(&Permutation) -> bool + Sync,
    ) -> Result<BigCount> {
        self.guard(n)?;
        if n == 0 {
            return Ok(BigUint::from(pred(&Permutation::default()) as u32));
        }
        let blocks = map_blocks(n, self.execution, |first| {
            let mut count = 0u64;
            for_each_with_first(n, first, |p| count += pred(p) as u64);
            count
        });
        Ok(BigUint::from(blocks.into_iter().sum::<u64>()))
    }

    pub fn enumerate_class(&self, label: ClassLabel) -> Result<Vec<Permutation>> {
        label.validate()?;
        self.filter(label.n(), |p| label.contains(p))
    }

    pub fn count_class(&self, label: ClassLabel) -> Result<BigCount> {
        label.validate()?;
        self.count_where(label.n(), |p| label.contains(p))
    }

    pub fn count_avoiders_bruteforce(&self, n: usize, pat: &Pattern) -> Result<BigCount> {
        self.count_where(n, |p| avoids_nonconsecutive(p, pat))
    }
}
