//! Permutations of `[n]`, the index set of words fixing `1 2` in front,
//! adjacency multisets, value-wise inversion sets and the right weak order.
//!
//! Letters and positions are 1-based throughout.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A word containing each of `1..=n` exactly once.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(invalid!("permutation length {n} out of range"));
        }
        let mut seen = alloc::vec![false; n + 1];
        for &w in &word {
            let w = w as usize;
            if w == 0 || w > n || seen[w] {
                return Err(invalid!("{word:?} is not a permutation of 1..={n}"));
            }
            seen[w] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u8).collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Letter at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        self.word[pos - 1]
    }

    /// 1-based position of `letter`, if present.
    pub fn position_of(&self, letter: u8) -> Option<usize> {
        self.word.iter().position(|&w| w == letter).map(|p| p + 1)
    }

    /// True for elements of the index set: the word starts with `1 2`.
    pub fn fixes_one_two(&self) -> bool {
        self.word.len() >= 2 && self.word[0] == 1 && self.word[1] == 2
    }

    /// Word with `letter` removed and every larger letter shifted down by one.
    pub fn delete_letter(&self, letter: u8) -> Permutation {
        let word: Vec<u8> = self
            .word
            .iter()
            .copied()
            .filter(|&w| w != letter)
            .map(|w| if w > letter { w - 1 } else { w })
            .collect();
        Permutation { word }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for w in &self.word {
                write!(f, "{w}")?;
            }
        } else {
            for (i, w) in self.word.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| invalid!("bad letter {t:?} in {s:?}")))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| invalid!("bad letter {c:?} in {s:?}"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// Unordered pair of distinct letters, stored as `(lo, hi)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pair {
    pub lo: u8,
    pub hi: u8,
}

impl Pair {
    pub fn new(a: u8, b: u8) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Pair { lo: a, hi: b }
        } else {
            Pair { lo: b, hi: a }
        }
    }

    /// Lexicographic row index of `{lo, hi}` among all 2-subsets of `[n]`.
    pub fn row_index(&self, n: usize) -> usize {
        let (i, j) = (self.lo as usize, self.hi as usize);
        // pairs (a, b) with a < i come first: sum_{a < i} (n - a)
        (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lo, self.hi)
    }
}

/// All 2-subsets of `[n]` in lexicographic order.
pub fn pairs(n: usize) -> Vec<Pair> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            out.push(Pair { lo: i, hi: j });
        }
    }
    out
}

/// Multiset of unordered pairs, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AdjacencyMultiset {
    entries: Vec<Pair>,
}

impl AdjacencyMultiset {
    pub fn from_pairs(mut entries: Vec<Pair>) -> Self {
        entries.sort_unstable();
        AdjacencyMultiset { entries }
    }

    pub fn entries(&self) -> &[Pair] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, p: Pair) -> usize {
        self.entries.iter().filter(|&&e| e == p).count()
    }

    /// Multiset union (sum of multiplicities).
    pub fn union(&self, other: &AdjacencyMultiset) -> AdjacencyMultiset {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        AdjacencyMultiset::from_pairs(entries)
    }
}

impl fmt::Display for AdjacencyMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut i = 0;
        while i < self.entries.len() {
            let p = self.entries[i];
            let mut k = 1;
            while i + k < self.entries.len() && self.entries[i + k] == p {
                k += 1;
            }
            if i > 0 {
                f.write_str(",")?;
            }
            if k > 1 {
                write!(f, "{p}^{k}")?;
            } else {
                write!(f, "{p}")?;
            }
            i += k;
        }
        f.write_str("}")
    }
}

/// `{{w_i, w_{i+1}}}` with the last letter wrapping to the first.
pub fn cyclic_adjacencies(sigma: &Permutation) -> AdjacencyMultiset {
    let w = sigma.word();
    let n = w.len();
    let entries = (0..n).map(|i| Pair::new(w[i], w[(i + 1) % n])).collect();
    AdjacencyMultiset::from_pairs(entries)
}

/// `{{w_i, w_{i+1}}}` for consecutive letters only; works on any word.
pub fn acyclic_adjacencies(word: &[u8]) -> AdjacencyMultiset {
    let entries = word.windows(2).map(|p| Pair::new(p[0], p[1])).collect();
    AdjacencyMultiset::from_pairs(entries)
}

/// Value-wise inversions `(a, b)` with `a > b` and `a` appearing before `b`.
pub type InversionSet = BTreeSet<(u8, u8)>;

/// Inversions of `sigma`. With `reduce`, the tail `sigma_3 .. sigma_n` is
/// read as a word on `1..=n-2` by subtracting 2 from every letter.
pub fn value_inversions(sigma: &Permutation, reduce: bool) -> InversionSet {
    let (w, shift): (&[u8], u8) = if reduce { (&sigma.word()[2..], 2) } else { (sigma.word(), 0) };
    let mut out = InversionSet::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                out.insert((w[i] - shift, w[j] - shift));
            }
        }
    }
    out
}

/// Right weak order: `sigma <= tau` iff `inv(sigma)` is contained in `inv(tau)`.
pub fn weak_order_leq(sigma: &Permutation, tau: &Permutation) -> Result<bool> {
    if sigma.len() != tau.len() {
        return Err(invalid!("weak order on words of different lengths {} and {}", sigma.len(), tau.len()));
    }
    // faster than building both sets: every inversion of sigma must be one of tau
    let n = tau.len();
    let mut pos = alloc::vec![0usize; n + 1];
    for (p, &w) in tau.word().iter().enumerate() {
        pos[w as usize] = p;
    }
    let w = sigma.word();
    for i in 0..n {
        for j in i + 1..n {
            if w[i] > w[j] && pos[w[i] as usize] > pos[w[j] as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Splice `delta` into `word` at gap `gap`, where gap `g` sits right after
/// position `g` (gap 0 is before the first letter).
pub fn splice(word: &[u8], gap: usize, delta: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() + delta.len());
    out.extend_from_slice(&word[..gap]);
    out.extend_from_slice(delta);
    out.extend_from_slice(&word[gap..]);
    out
}

/// Insert the word `delta` on the letters `n+1 ..= n+k` into `sigma` at a gap
/// lying after the position of `letter`.
pub fn insert_after_letter(sigma: &Permutation, letter: u8, delta: &[u8], gap: usize) -> Result<Permutation> {
    let n = sigma.len();
    let pos = sigma
        .position_of(letter)
        .ok_or_else(|| invalid!("letter {letter} does not occur in {sigma}"))?;
    if gap < pos || gap > n {
        return Err(invalid!("gap {gap} is not after letter {letter} (position {pos}) in {sigma}"));
    }
    check_delta(n, delta)?;
    Ok(Permutation::from_word_unchecked(splice(sigma.word(), gap, delta)))
}

pub(crate) fn check_delta(n: usize, delta: &[u8]) -> Result<()> {
    let k = delta.len();
    let mut seen = alloc::vec![false; k];
    for &d in delta {
        let d = d as usize;
        if d <= n || d > n + k || seen[d - n - 1] {
            return Err(invalid!("{delta:?} is not a word on the letters {}..={}", n + 1, n + k));
        }
        seen[d - n - 1] = true;
    }
    Ok(())
}

/// Advance `w` to its lexicographic successor; false when `w` was the last.
pub fn next_permutation(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All permutations of `letters` (taken as given, assumed sorted) in lexicographic order.
pub fn all_words(letters: &[u8]) -> Vec<Vec<u8>> {
    let mut w = letters.to_vec();
    w.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(w.clone());
        if !next_permutation(&mut w) {
            break;
        }
    }
    out
}

/// The `(n-2)!` permutations of `[n]` starting with `1 2`, lexicographically.
pub fn enumerate_sigma(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(invalid!("the index set needs n >= 3, got {n}"));
    }
    if n > 12 {
        return Err(invalid!("n = {n} is beyond enumeration range"));
    }
    let tail: Vec<u8> = (3..=n as u8).collect();
    Ok(all_words(&tail)
        .into_iter()
        .map(|t| {
            let mut w = alloc::vec![1u8, 2];
            w.extend(t);
            Permutation { word: w }
        })
        .collect())
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Lexicographic index of `sigma` in [`enumerate_sigma`] (Lehmer code of the tail).
pub fn sigma_index(sigma: &Permutation) -> usize {
    let tail = &sigma.word()[2..];
    let m = tail.len();
    let mut idx = 0;
    for i in 0..m {
        let smaller = tail[i + 1..].iter().filter(|&&x| x < tail[i]).count();
        idx += smaller * factorial(m - 1 - i);
    }
    idx
}

/// Display helper for words that need not be permutations.
pub fn word_to_string(word: &[u8]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, w) in word.iter().enumerate() {
        if word.len() > 9 && i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{w}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_sigma(3).unwrap(), vec![p("123")]);
        let five: Vec<String> = enumerate_sigma(5).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(five, ["12345", "12354", "12435", "12453", "12534", "12543"]);
        let six = enumerate_sigma(6).unwrap();
        assert_eq!(six.len(), 24);
        assert_eq!(six[0], p("123456"));
        assert_eq!(six[1], p("123465"));
        assert!(matches!(enumerate_sigma(2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sigma_index_matches_enumeration() {
        for n in 3..=7 {
            for (i, s) in enumerate_sigma(n).unwrap().iter().enumerate() {
                assert_eq!(sigma_index(s), i);
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let a = cyclic_adjacencies(&p("12345"));
        let want: Vec<Pair> = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)].iter().map(|&(a, b)| Pair::new(a, b)).collect();
        assert_eq!(a, AdjacencyMultiset::from_pairs(want));
        assert_eq!(cyclic_adjacencies(&p("123")).to_string(), "{12,13,23}");
        assert_eq!(cyclic_adjacencies(&p("12543")).to_string(), "{12,13,25,34,45}");
        assert_eq!(acyclic_adjacencies(&[3, 4, 5]).to_string(), "{34,45}");
        assert_eq!(acyclic_adjacencies(&[1, 2, 3, 4, 5]).to_string(), "{12,23,34,45}");
        assert!(acyclic_adjacencies(&[6]).is_empty());
    }

    #[test]
    fn inversion_examples() {
        let s: InversionSet = [(3, 2)].into_iter().collect();
        assert_eq!(value_inversions(&p("12354"), true), s);
        assert!(value_inversions(&p("12345"), true).is_empty());
        let s: InversionSet = [(2, 1), (3, 1), (3, 2)].into_iter().collect();
        assert_eq!(value_inversions(&p("12543"), true), s);
        // unreduced reading keeps the raw letters
        let s: InversionSet = [(5, 4)].into_iter().collect();
        assert_eq!(value_inversions(&p("12354"), false), s);
    }

    #[test]
    fn weak_order_examples() {
        assert!(weak_order_leq(&p("12345"), &p("12543")).unwrap());
        assert!(!weak_order_leq(&p("12354"), &p("12453")).unwrap());
        assert!(weak_order_leq(&p("12453"), &p("12453")).unwrap());
        assert!(weak_order_leq(&p("1234"), &p("12345")).is_err());
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(insert_after_letter(&p("12345"), 2, &[6], 2).unwrap(), p("126345"));
        assert_eq!(insert_after_letter(&p("12345"), 3, &[6], 5).unwrap(), p("123456"));
        assert_eq!(insert_after_letter(&p("12345"), 3, &[6], 3).unwrap(), p("123645"));
        assert!(insert_after_letter(&p("12345"), 3, &[6], 2).is_err());
        assert!(insert_after_letter(&p("12345"), 3, &[7], 3).is_err());
    }

    #[test]
    fn display_and_parse() {
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
    }

    #[test]
    fn pair_row_index_is_lexicographic() {
        for n in 2..9 {
            for (i, pr) in pairs(n).iter().enumerate() {
                assert_eq!(pr.row_index(n), i);
            }
        }
    }
}
