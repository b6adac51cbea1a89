//! The structural maps behind the counts, each with its inverse.
//!
//! * `scattered_to_perm` / `perm_to_scattered`: gap-2 subsets of `[n-1]`
//!   and nonconsecutive-21 avoiders (disjoint adjacent swaps of the identity).
//! * `b_to_d` / `d_to_b`: `B_n` and `D_{n-2}`.
//! * `split_321` / `unsplit_321`: `A_{n,k}` and `C_k x B_{n-k+1}`, `k >= 2`.
//! * `decompose_132` / `compose_132`: `E_{n,k}` and pairs of a gap-3 subset
//!   of `[2, n-1]` with a 132-avoider of length `n - 2k`.
//!
//! Every map validates its domain eagerly by occurrence scanning.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::oracle::ClassLabel;
use crate::perm::{
    avoids_nonconsecutive, contains, is_132_avoiding_by_characterization, occurrences, reduce,
    Pattern, Permutation,
};

/// Strictly increasing integers in `[lo, hi]` with consecutive gaps `>= min_gap`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ScatteredSet {
    lo: usize,
    hi: usize,
    min_gap: usize,
    elements: Vec<usize>,
}

impl ScatteredSet {
    pub fn new(lo: usize, hi: usize, min_gap: usize, elements: Vec<usize>) -> Result<Self> {
        if let Some(&e) = elements.iter().find(|&&e| e < lo || e > hi) {
            return Err(invalid(format!("element {e} outside [{lo}, {hi}]")));
        }
        if let Some(w) = elements.windows(2).find(|w| w[1] < w[0] + min_gap) {
            return Err(invalid(format!(
                "elements {} and {} are closer than the minimum gap {min_gap}",
                w[0], w[1]
            )));
        }
        Ok(ScatteredSet {
            lo,
            hi,
            min_gap,
            elements,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn min_gap(&self) -> usize {
        self.min_gap
    }

    /// Every valid set over `[lo, hi]` with the given gap, in lexicographic order.
    pub fn all(lo: usize, hi: usize, min_gap: usize) -> Vec<ScatteredSet> {
        fn go(from: usize, hi: usize, gap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            for e in from..=hi {
                cur.push(e);
                go(e + gap, hi, gap, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(lo, hi, min_gap, &mut Vec::new(), &mut out);
        out.sort();
        out.into_iter()
            .map(|elements| ScatteredSet {
                lo,
                hi,
                min_gap,
                elements,
            })
            .collect()
    }
}

/// Swaps positions `i, i+1` of the identity on `[n]` for every `i` in `s`.
pub fn scattered_to_perm(n: usize, s: &ScatteredSet) -> Result<Permutation> {
    if s.min_gap < 2 || s.lo < 1 || s.hi + 1 > n.max(1) {
        return Err(invalid(format!(
            "swap set must be gap >= 2 within [1, {}]",
            n.saturating_sub(1)
        )));
    }
    let mut e: Vec<u32> = (1..=n as u32).collect();
    for &i in &s.elements {
        e.swap(i - 1, i);
    }
    Ok(Permutation::from_vec_unchecked(e))
}

/// Recovers the swap positions (the descents) of a nonconsecutive-21 avoider.
pub fn perm_to_scattered(p: &Permutation) -> Result<ScatteredSet> {
    if !avoids_nonconsecutive(p, &Pattern::p21()) {
        return Err(invalid(format!("{p} contains a nonconsecutive 21")));
    }
    let n = p.len();
    let descents = (1..n).filter(|&i| p.at(i) > p.at(i + 1)).collect();
    ScatteredSet::new(1, n.saturating_sub(1), 2, descents)
}

/// Drops the `2, 1` in positions 2 and 3 and lowers every other entry by 2.
pub fn b_to_d(p: &Permutation) -> Result<Permutation> {
    let n = p.len();
    if n < 3 || !ClassLabel::B(n).contains(p) {
        return Err(invalid(format!("{p} is not in B_{n}")));
    }
    if (p.at(2), p.at(3)) != (2, 1) {
        return Err(Error::Inconsistent(format!(
            "{p} in B_{n} lacks 2,1 at positions 2,3"
        )));
    }
    let e = p.entries();
    let rest = std::iter::once(e[0])
        .chain(e[3..].iter().copied())
        .map(|v| v - 2)
        .collect();
    Ok(Permutation::from_vec_unchecked(rest))
}

/// Inverse of [`b_to_d`]: raise by 2, then put `2, 1` after the first entry.
pub fn d_to_b(q: &Permutation) -> Result<Permutation> {
    let m = q.len();
    if m < 1 || !ClassLabel::D(m).contains(q) {
        return Err(invalid(format!("{q} is not in D_{m} with {m} >= 1")));
    }
    let e = q.entries();
    let out = std::iter::once(e[0] + 2)
        .chain([2, 1])
        .chain(e[1..].iter().map(|v| v + 2))
        .collect();
    Ok(Permutation::from_vec_unchecked(out))
}

/// Image of [`split_321`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplitPair {
    /// 321-avoider of length `k`.
    pub sigma: Permutation,
    /// Member of `B_{n-k+1}`.
    pub tau: Permutation,
}

/// Position where the first 321 starts, if `p` contains one.
pub fn first_321_start(p: &Permutation) -> Option<usize> {
    occurrences(p, &Pattern::p321()).first().map(|o| o.first())
}

/// Splits `p` in `A_{n,k}` (`k >= 2`, read off `p`) into `sigma`, the first
/// `k-1` entries plus the entry at position `k+2`, and `tau`, the reduced
/// suffix from position `k` on.
pub fn split_321(p: &Permutation) -> Result<SplitPair> {
    let n = p.len();
    let k = first_321_start(p).ok_or_else(|| invalid(format!("{p} contains no 321")))?;
    if k < 2 {
        return Err(invalid(format!(
            "{p} starts with a 321; the split needs k >= 2"
        )));
    }
    if !ClassLabel::Ak(n, k).contains(p) {
        return Err(invalid(format!("{p} is not in A_({n},{k})")));
    }
    let e = p.entries();
    let sigma_word: Vec<u32> = e[..k - 1].iter().copied().chain([e[k + 1]]).collect();
    let sigma = Permutation::new(sigma_word).map_err(|_| {
        Error::Inconsistent(format!(
            "{p}: first k-1 entries and entry k+2 are not 1..={k}"
        ))
    })?;
    let tau = reduce(&e[k - 1..])?;
    Ok(SplitPair { sigma, tau })
}

/// Inverse of [`split_321`]: the first `k-1` entries come from `sigma`, and
/// `tau` is laid out order-isomorphically on `{sigma_k} U {k+1, ..., n}`.
pub fn unsplit_321(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    let k = sigma.len();
    let m = tau.len();
    if k < 2 {
        return Err(invalid(format!(
            "sigma has length {k}; the split needs k >= 2"
        )));
    }
    if contains(sigma, &Pattern::p321()) {
        return Err(invalid(format!("sigma {sigma} contains a 321")));
    }
    if m < 3 || !ClassLabel::B(m).contains(tau) {
        return Err(invalid(format!("tau {tau} is not in B_{m}")));
    }
    let n = k + m - 1;
    let mut values: Vec<u32> = std::iter::once(sigma.at(k))
        .chain(k as u32 + 1..=n as u32)
        .collect();
    values.sort_unstable();
    let out = sigma.entries()[..k - 1]
        .iter()
        .copied()
        .chain(tau.entries().iter().map(|&t| values[t as usize - 1]))
        .collect();
    Ok(Permutation::from_vec_unchecked(out))
}

/// Middle positions of the (consecutive, disjoint) 132s of `p`, and what
/// is left after deleting their outer entries and reducing.
pub fn decompose_132(p: &Permutation) -> Result<(ScatteredSet, Permutation)> {
    let n = p.len();
    if !avoids_nonconsecutive(p, &Pattern::p132()) {
        return Err(invalid(format!("{p} contains a nonconsecutive 132")));
    }
    let mids: Vec<usize> = occurrences(p, &Pattern::p132())
        .iter()
        .map(|o| o.positions[1])
        .collect();
    let set = ScatteredSet::new(2, n.saturating_sub(1), 3, mids)
        .map_err(|e| Error::Inconsistent(format!("132 middle positions of {p}: {e}")))?;
    let dropped = |pos: usize| set.elements.iter().any(|&i| pos + 1 == i || pos == i + 1);
    let rest: Vec<u32> = (1..=n)
        .filter(|&pos| !dropped(pos))
        .map(|pos| p.at(pos))
        .collect();
    Ok((set, reduce(&rest)?))
}

/// One step of [`compose_132`]: fill the blanks around the middle position
/// `mid` of a partially filled arrangement (`0` marks a blank).
pub fn fill_blank_pair(slots: &mut [u32], mid: usize) -> Result<()> {
    let a = slots[mid - 1];
    if a == 0 || slots[mid - 2] != 0 || slots[mid] != 0 {
        return Err(Error::Inconsistent(format!(
            "position {mid} is not flanked by blanks"
        )));
    }
    let below: Vec<u32> = slots[mid..]
        .iter()
        .copied()
        .filter(|&v| v != 0 && v < a)
        .collect();
    let j = below.len() as u32;
    if below.iter().any(|&v| v > j) {
        return Err(Error::Inconsistent(format!(
            "entries after position {mid} below {a} are not an initial segment"
        )));
    }
    for (pos, v) in slots.iter_mut().enumerate() {
        let after = pos >= mid;
        if *v != 0 && !(after && *v < a) {
            *v += 2;
        }
    }
    slots[mid - 2] = j + 1;
    slots[mid] = j + 2;
    Ok(())
}

/// Places `q` around blanks flanking each middle position in `s`, then
/// fills blank pairs left to right.
pub fn compose_132(n: usize, s: &ScatteredSet, q: &Permutation) -> Result<Permutation> {
    compose_132_steps(n, s, q).map(|mut steps| {
        let last = steps.pop().expect("at least the initial arrangement");
        Permutation::from_vec_unchecked(last)
    })
}

/// The arrangement before any fill and after each blank pair, with `0` for blanks.
pub fn compose_132_steps(n: usize, s: &ScatteredSet, q: &Permutation) -> Result<Vec<Vec<u32>>> {
    let k = s.len();
    if s.min_gap < 3 || s.elements.iter().any(|&i| i < 2 || i + 1 > n) {
        return Err(invalid(format!(
            "middle positions must be gap >= 3 within [2, {}]",
            n.saturating_sub(1)
        )));
    }
    if q.len() + 2 * k != n {
        return Err(invalid(format!(
            "remainder has length {} but n - 2k = {}",
            q.len(),
            n as isize - 2 * k as isize
        )));
    }
    if !is_132_avoiding_by_characterization(q) {
        return Err(invalid(format!("{q} is not 132-avoiding")));
    }
    let blank = |pos: usize| s.elements.iter().any(|&i| pos + 1 == i || pos == i + 1);
    let mut fill = q.entries().iter().copied();
    let mut slots: Vec<u32> = (1..=n)
        .map(|pos| {
            if blank(pos) {
                0
            } else {
                fill.next().expect("length checked")
            }
        })
        .collect();
    let mut steps = vec![slots.clone()];
    for &mid in &s.elements {
        fill_blank_pair(&mut slots, mid)?;
        steps.push(slots.clone());
    }
    Ok(steps)
}
