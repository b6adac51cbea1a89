//! Permutations in one-line notation, short patterns, and the
//! occurrence / nonconsecutive-avoidance semantics.
//!
//! Positions and values are 1-based at the API. A permutation of length
//! `n` holds exactly the values `1..=n`; the empty permutation is legal.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation, checking that `entries` is a bijection onto `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= n {
                return Err(invalid(format!("value {v} out of range 1..={n}")));
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(invalid(format!("value {v} repeated")));
            }
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// Entry at 1-based `pos`.
    pub fn at(&self, pos: usize) -> u32 {
        self.0[pos - 1]
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n1 = self.0.len() as u32 + 1;
        Permutation(self.0.iter().map(|&a| n1 - a).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated decimal values; whitespace is ignored and the empty
    /// string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.trim_start_matches('(').trim_end_matches(')');
        if cleaned.is_empty() {
            return Ok(Permutation::default());
        }
        let entries = cleaned
            .split(',')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| invalid(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Relabels distinct values by rank: smallest becomes 1, next 2, and so on.
pub fn reduce<T: Ord + Copy>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(invalid("reduce: entries are not distinct"));
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

pub fn reverse(p: &Permutation) -> Permutation {
    p.reverse()
}

pub fn complement(p: &Permutation) -> Permutation {
    p.complement()
}

/// A permutation of length 2 or 3.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(perm: Permutation) -> Result<Self> {
        match perm.len() {
            2 | 3 => Ok(Pattern(perm)),
            k => Err(invalid(format!("pattern length must be 2 or 3, got {k}"))),
        }
    }

    pub fn p21() -> Self {
        Pattern(Permutation(vec![2, 1]))
    }

    pub fn p321() -> Self {
        Pattern(Permutation(vec![3, 2, 1]))
    }

    pub fn p132() -> Self {
        Pattern(Permutation(vec![1, 3, 2]))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reverse(&self) -> Self {
        Pattern(self.0.reverse())
    }

    pub fn complement(&self) -> Self {
        Pattern(self.0.complement())
    }

    /// The orbit under the group generated by reverse and complement,
    /// sorted and deduplicated.
    pub fn orbit(&self) -> Vec<Pattern> {
        let mut orbit = vec![
            self.clone(),
            self.reverse(),
            self.complement(),
            self.reverse().complement(),
        ];
        orbit.sort();
        orbit.dedup();
        orbit
    }
}

impl fmt::Display for Pattern {
    /// Patterns print compactly, e.g. `132`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.0.entries() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `132` or `1,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let perm = if s.contains(',') {
            s.parse()?
        } else {
            let digits = s
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| invalid(format!("bad pattern {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::new(digits)?
        };
        Pattern::new(perm)
    }
}

/// Lexicographically smallest member of the reverse/complement orbit.
pub fn canonical_pattern(pat: &Pattern) -> Pattern {
    pat.orbit().swap_remove(0)
}

/// Strictly increasing 1-based positions of a pattern instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub positions: Vec<usize>,
}

impl Occurrence {
    pub fn is_consecutive(&self) -> bool {
        self.positions.windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn first(&self) -> usize {
        self.positions[0]
    }
}

#[inline]
fn matches2(a: u32, b: u32, pat: &[u32]) -> bool {
    (a < b) == (pat[0] < pat[1])
}

#[inline]
fn matches3(a: u32, b: u32, c: u32, pat: &[u32]) -> bool {
    (a < b) == (pat[0] < pat[1]) && (a < c) == (pat[0] < pat[2]) && (b < c) == (pat[1] < pat[2])
}

/// Visits 0-based index tuples of every occurrence in lexicographic order.
/// Stops early when `visit` returns `false`; returns whether the scan completed.
fn scan(p: &[u32], pat: &Pattern, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let q = pat.perm().entries();
    let n = p.len();
    match q.len() {
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    if matches2(p[i], p[j], q) && !visit(&[i, j]) {
                        return false;
                    }
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    let ij = (p[i] < p[j]) == (q[0] < q[1]);
                    if !ij {
                        continue;
                    }
                    for l in j + 1..n {
                        if matches3(p[i], p[j], p[l], q) && !visit(&[i, j, l]) {
                            return false;
                        }
                    }
                }
            }
        }
        _ => unreachable!("pattern length is 2 or 3"),
    }
    true
}

/// All occurrences of `pat` in `p`, in lexicographic order of positions.
pub fn occurrences(p: &Permutation, pat: &Pattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    scan(p.entries(), pat, |idx| {
        out.push(Occurrence {
            positions: idx.iter().map(|i| i + 1).collect(),
        });
        true
    });
    out
}

pub fn contains(p: &Permutation, pat: &Pattern) -> bool {
    !scan(p.entries(), pat, |_| false)
}

/// True iff every occurrence of `pat` in `p` sits on adjacent positions.
pub fn avoids_nonconsecutive(p: &Permutation, pat: &Pattern) -> bool {
    scan(p.entries(), pat, |idx| {
        idx.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

/// 132-avoidance via the initial-segment characterization: for each entry
/// `a`, the later entries smaller than `a` are exactly `{1, ..., j}`.
pub fn is_132_avoiding_by_characterization(p: &Permutation) -> bool {
    let e = p.entries();
    e.iter().enumerate().all(|(i, &a)| {
        let mut count = 0u32;
        let mut max = 0u32;
        for &b in &e[i + 1..] {
            if b < a {
                count += 1;
                max = max.max(b);
            }
        }
        max == count
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        crate::oracle::for_each_permutation(n, |p| out.push(p.clone()));
        out
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[5, 4, 6]).unwrap(), perm("2,1,3"));
        assert_eq!(reduce(&[1, 2, 3]).unwrap(), perm("1,2,3"));
        assert_eq!(reduce(&[10, 9, 7, 8, 4, 1]).unwrap(), perm("6,5,3,4,2,1"));
        assert_eq!(reduce::<u32>(&[]).unwrap(), Permutation::default());
        assert!(matches!(reduce(&[3, 1, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn reverse_and_complement_examples() {
        assert_eq!(reverse(&perm("1,2,3")), perm("3,2,1"));
        assert_eq!(reverse(&Permutation::default()), Permutation::default());
        assert_eq!(reverse(&perm("2,1,3")), perm("3,1,2"));
        assert_eq!(complement(&perm("1,2,3")), perm("3,2,1"));
        assert_eq!(complement(&perm("2,1,3")), perm("2,3,1"));
        assert_eq!(complement(&perm("3,2,1")), perm("1,2,3"));
    }

    #[test]
    fn construction_rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("1,,2".parse::<Permutation>().is_err());
        assert!(Pattern::new(perm("1")).is_err());
        assert!(Pattern::new(perm("1,2,3,4")).is_err());
    }

    #[test]
    fn text_form() {
        let p = perm("10,9,5,7,6,8,2,4,3,1");
        assert_eq!(p.to_string(), "10,9,5,7,6,8,2,4,3,1");
        assert_eq!(perm(" 2, 1 ,3"), perm("2,1,3"));
        assert_eq!("".parse::<Permutation>().unwrap().len(), 0);
        assert_eq!("213".parse::<Pattern>().unwrap(), "2,1,3".parse().unwrap());
    }

    #[test]
    fn canonical_pattern_examples() {
        let pat = |s: &str| s.parse::<Pattern>().unwrap();
        assert_eq!(canonical_pattern(&pat("12")), pat("12"));
        // orbit {12, 21}: lex min is 12
        assert_eq!(canonical_pattern(&pat("21")), pat("12"));
        assert_eq!(canonical_pattern(&pat("213")), pat("132"));
        assert_eq!(canonical_pattern(&pat("123")), pat("123"));
        assert_eq!(
            pat("213").orbit(),
            vec![pat("132"), pat("213"), pat("231"), pat("312")]
        );
    }

    #[test]
    fn orbits_each_hold_one_representative() {
        let reps = [Pattern::p21(), Pattern::p321(), Pattern::p132()];
        let mut all: Vec<Pattern> = all_perms(2)
            .into_iter()
            .chain(all_perms(3))
            .map(|p| Pattern::new(p).unwrap())
            .collect();
        all.sort();
        let mut orbits: Vec<Vec<Pattern>> = all.iter().map(Pattern::orbit).collect();
        orbits.sort();
        orbits.dedup();
        assert_eq!(orbits.len(), 3);
        for orbit in &orbits {
            assert_eq!(reps.iter().filter(|r| orbit.contains(r)).count(), 1);
        }
    }

    #[test]
    fn occurrences_examples() {
        let occ = occurrences(&perm("3,2,1"), &Pattern::p21());
        let pos: Vec<_> = occ.iter().map(|o| o.positions.clone()).collect();
        assert_eq!(pos, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(occurrences(&perm("1,2,3"), &Pattern::p321()).is_empty());
        let occ = occurrences(&perm("10,9,5,7,6,8,2,4,3,1"), &Pattern::p132());
        let pos: Vec<_> = occ.iter().map(|o| o.positions.clone()).collect();
        assert_eq!(pos, vec![vec![3, 4, 5], vec![7, 8, 9]]);
    }

    #[test]
    fn avoidance_examples() {
        assert!(avoids_nonconsecutive(&perm("2,1,3"), &Pattern::p21()));
        assert!(!avoids_nonconsecutive(&perm("3,2,1"), &Pattern::p21()));
        assert!(avoids_nonconsecutive(
            &perm("10,9,5,7,6,8,2,4,3,1"),
            &Pattern::p132()
        ));
        for pat in [Pattern::p21(), Pattern::p321(), Pattern::p132()] {
            assert!(avoids_nonconsecutive(&Permutation::default(), &pat));
        }
    }

    #[test]
    fn characterization_examples() {
        assert!(is_132_avoiding_by_characterization(&perm("6,5,3,4,2,1")));
        assert!(!is_132_avoiding_by_characterization(&perm("1,3,2")));
        assert!(is_132_avoiding_by_characterization(&perm("2,1,3")));
    }

    #[test]
    fn characterization_matches_scan_up_to_8() {
        for n in 0..=8 {
            crate::oracle::for_each_permutation(n, |p| {
                assert_eq!(
                    is_132_avoiding_by_characterization(p),
                    occurrences(p, &Pattern::p132()).is_empty(),
                    "{p:?}"
                );
            });
        }
    }

    #[test]
    fn symmetry_up_to_7() {
        for pat in [Pattern::p21(), Pattern::p321(), Pattern::p132()] {
            let (rp, cp) = (pat.reverse(), pat.complement());
            for n in 0..=7 {
                crate::oracle::for_each_permutation(n, |p| {
                    let base = avoids_nonconsecutive(p, &pat);
                    assert_eq!(base, avoids_nonconsecutive(&p.reverse(), &rp));
                    assert_eq!(base, avoids_nonconsecutive(&p.complement(), &cp));
                });
            }
        }
    }

    fn naive_occurrences(p: &Permutation, pat: &Pattern) -> Vec<Vec<usize>> {
        // subsets by bitmask, kept only when of the right size
        let n = p.len();
        let k = pat.len();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| {
                (1..=n)
                    .filter(|i| m >> (i - 1) & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .filter(|pos| {
                let word: Vec<u32> = pos.iter().map(|&i| p.at(i)).collect();
                reduce(&word).unwrap() == *pat.perm()
            })
            .collect();
        out.sort();
        out
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max)
            .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    fn arb_pattern() -> impl Strategy<Value = Pattern> {
        prop_oneof![
            Just(Pattern::p21()),
            Just(Pattern::p321()),
            Just(Pattern::p132()),
            Just("12".parse().unwrap()),
            Just("231".parse().unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn occurrences_sound_and_complete(p in arb_perm(10), pat in arb_pattern()) {
            let occ = occurrences(&p, &pat);
            let n = p.len() as u64;
            let k = pat.len() as u64;
            let bound = crate::counting::binomial(n, k);
            prop_assert!(num_bigint::BigUint::from(occ.len()) <= bound);
            let pos: Vec<_> = occ.into_iter().map(|o| o.positions).collect();
            prop_assert_eq!(pos, naive_occurrences(&p, &pat));
        }

        #[test]
        fn reduce_is_idempotent(p in arb_perm(12)) {
            prop_assert_eq!(reduce(p.entries()).unwrap(), p.clone());
            prop_assert_eq!(p.reverse().reverse(), p.clone());
            prop_assert_eq!(p.complement().complement(), p.clone());
            prop_assert_eq!(p.reverse().complement(), p.complement().reverse());
        }

        #[test]
        fn text_round_trip(p in arb_perm(15)) {
            prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
        }
    }
}
