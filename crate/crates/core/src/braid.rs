//! Braid words, the permutation quotient, Markov moves and cabling.
//!
//! A letter `+i` is the generator `σ_i` (strand `i` crosses over strand
//! `i + 1`), `-i` is its inverse. Words are read left to right, which is also
//! the order in which crossings occur along the braid.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter 0 does not name a generator")]
    ZeroLetter,
    #[error("letter {letter} is out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("malformed braid token `{0}`")]
    Malformed(String),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("cable multiplicity must be at least 1")]
    BadCable,
    #[error("random braids need at least 2 strands")]
    TooFewStrands,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

/// A permutation of `1..=n` in one-line notation.
///
/// For the permutation of a braid, `images[k - 1]` is the starting position
/// of the strand that ends at position `k`. With this reading the map from
/// braids is a homomorphism under ordinary composition `(p ∘ q)(k) = p(q(k))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Permutation {
            images: other.images.iter().map(|&k| self.apply(k)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lens = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] - 1;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }
}

impl BraidWord {
    /// Builds a word, checking every letter against the strand count.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        for &l in &letters {
            if l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if l.unsigned_abs() as usize >= strands.max(1) {
                return Err(BraidError::OutOfRange { letter: l, strands });
            }
        }
        Ok(Self {
            strands: strands.max(1),
            letters,
        })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// Smallest strand count that fits the letters.
    pub fn from_letters(letters: Vec<i32>) -> Result<Self, BraidError> {
        let n = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1;
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, self.letters.clone())
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Group inverse: letters reversed and negated.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    /// Cancel adjacent `σ_i σ_i^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }

    /// Image in the symmetric group: the product of the transpositions
    /// `(i, i+1)` in word order.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            images.swap(i - 1, i);
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Number of link components of the closure.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Markov move 1: `β ∈ B_n ↦ β σ_n ∈ B_{n+1}`.
    pub fn markov_stabilize(&self) -> Self {
        let n = self.strands;
        let mut letters = self.letters.clone();
        letters.push(n as i32);
        Self {
            strands: n + 1,
            letters,
        }
    }

    /// Markov move 2: `β ↦ γ β γ^-1`.
    pub fn markov_conjugate(&self, gamma: &BraidWord) -> Result<Self, BraidError> {
        if gamma.strands != self.strands {
            return Err(BraidError::StrandMismatch(self.strands, gamma.strands));
        }
        gamma.concat(self)?.concat(&gamma.inverse())
    }

    /// The `r`-strand cable: every strand replaced by `r` parallel strands.
    ///
    /// `σ_i^±1` becomes the block crossing in which all strands of block `i`
    /// pass over (resp. under) all strands of block `i + 1`, so each crossing
    /// contributes `r²` crossings of the same sign.
    pub fn cable(&self, r: usize) -> Result<Self, BraidError> {
        if r == 0 {
            return Err(BraidError::BadCable);
        }
        let mut letters = Vec::with_capacity(self.letters.len() * r * r);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let sign = l.signum();
            let base = (i - 1) * r;
            // Strands of the left block, rightmost first, each sweep across
            // the right block.
            for k in (1..=r).rev() {
                let start = base + k;
                for j in start..start + r {
                    letters.push(sign * j as i32);
                }
            }
        }
        Ok(Self {
            strands: self.strands * r,
            letters,
        })
    }

    /// Uniform random word with letters in `±{1..n-1}`.
    pub fn random(strands: usize, length: usize, seed: u64) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max = (strands - 1) as i32;
        let letters = (0..length)
            .map(|_| {
                let g = rng.gen_range(1..=max);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        Ok(Self { strands, letters })
    }

    /// Parse whitespace-separated signed letters with an optional `n=<k>`
    /// strand count (either as the first token or anywhere).
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let mut strands: Option<usize> = None;
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            if let Some(n) = token.strip_prefix("n=") {
                let n: usize = n.parse().map_err(|_| BraidError::Malformed(token.into()))?;
                if n == 0 || strands.is_some() {
                    return Err(BraidError::Malformed(token.into()));
                }
                strands = Some(n);
                continue;
            }
            let l: i32 = token.parse().map_err(|_| BraidError::Malformed(token.into()))?;
            if l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            letters.push(l);
        }
        match strands {
            Some(n) => Self::new(n, letters),
            None => Self::from_letters(letters),
        }
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn figure2() -> BraidWord {
        w(3, &[1, -2, 1, -2, 2, -1, 2])
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BraidWord::parse("1 1 1").unwrap(), w(2, &[1, 1, 1]));
        assert_eq!(BraidWord::parse("").unwrap(), BraidWord::identity(1));
        assert_eq!(BraidWord::parse("0"), Err(BraidError::ZeroLetter));
        assert_eq!(BraidWord::parse("n=4 1 -2").unwrap(), w(4, &[1, -2]));
        assert!(matches!(BraidWord::parse("n=2 2"), Err(BraidError::OutOfRange { .. })));
        assert!(matches!(BraidWord::parse("1 x"), Err(BraidError::Malformed(_))));
        assert!(matches!(BraidWord::parse("n=0"), Err(BraidError::Malformed(_))));
        let b = w(5, &[3, -1]);
        assert_eq!(BraidWord::parse(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w(2, &[1, -1]).free_reduce(), BraidWord::identity(2));
        assert_eq!(figure2().free_reduce(), w(3, &[1]));
        assert_eq!(w(3, &[1, 2, 1]).free_reduce(), w(3, &[1, 2, 1]));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(BraidWord::identity(3).permutation().images(), &[1, 2, 3]);
        assert_eq!(w(2, &[1, 1, 1]).permutation().images(), &[2, 1]);
        assert_eq!(figure2().permutation().images(), &[2, 1, 3]);
    }

    #[test]
    fn purity() {
        assert!(w(2, &[1, 1]).is_pure());
        assert!(!w(2, &[1]).is_pure());
        let b = w(4, &[1, -3, 2, 2]);
        assert!(b.concat(&b.inverse()).unwrap().is_pure());
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(w(2, &[1, 1, 1]).closure_components(), 1);
        assert_eq!(BraidWord::identity(3).closure_components(), 3);
        assert_eq!(figure2().closure_components(), 2);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(w(2, &[1, 1, 1]).writhe(), 3);
        assert_eq!(figure2().writhe(), 1);
        assert_eq!(BraidWord::identity(4).writhe(), 0);
    }

    #[test]
    fn stabilize_examples() {
        assert_eq!(w(2, &[1]).markov_stabilize(), w(3, &[1, 2]));
        let s = BraidWord::identity(1).markov_stabilize();
        assert_eq!(s, w(2, &[1]));
        assert_eq!(s.closure_components(), 1);
    }

    #[test]
    fn conjugate_examples() {
        let b = w(3, &[1, 2, -1]);
        assert_eq!(b.markov_conjugate(&BraidWord::identity(3)).unwrap(), b);
        assert!(matches!(
            b.markov_conjugate(&BraidWord::identity(2)),
            Err(BraidError::StrandMismatch(3, 2))
        ));
        assert_eq!(b.markov_conjugate(&w(3, &[2])).unwrap().letters(), &[2, 1, 2, -1, -2]);
    }

    #[test]
    fn cable_examples() {
        let b = w(3, &[1, -2, 2]);
        assert_eq!(b.cable(1).unwrap(), b);
        assert_eq!(BraidWord::identity(3).cable(3).unwrap(), BraidWord::identity(9));
        let c = w(2, &[1]).cable(2).unwrap();
        assert_eq!(c.strands(), 4);
        assert_eq!(c.len(), 4);
        assert_eq!(c.permutation().images(), &[3, 4, 1, 2]);
        assert_eq!(b.cable(0), Err(BraidError::BadCable));
    }

    #[test]
    fn random_examples() {
        assert_eq!(
            BraidWord::random(4, 20, 7).unwrap(),
            BraidWord::random(4, 20, 7).unwrap()
        );
        assert!(BraidWord::random(4, 0, 7).unwrap().is_empty());
        assert_eq!(BraidWord::random(1, 3, 0), Err(BraidError::TooFewStrands));
        let big = BraidWord::random(5, 10_000, 99).unwrap();
        assert!(big.letters().iter().all(|&l| l != 0 && l.abs() <= 4));
        assert!((1..=4).all(|g| big.letters().contains(&g) && big.letters().contains(&-g)));
    }

    fn arb_word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        (2..=max_n).prop_flat_map(move |n| {
            let g = (n - 1) as i32;
            prop::collection::vec(
                (1..=g, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }),
                0..=max_len,
            )
            .prop_map(move |l| BraidWord::new(n, l).unwrap())
        })
    }

    fn arb_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
        arb_word(max_n, max_len).prop_flat_map(move |u| {
            let n = u.strands();
            let g = (n - 1) as i32;
            let v = prop::collection::vec(
                (1..=g, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }),
                0..=max_len,
            )
            .prop_map(move |l| BraidWord::new(n, l).unwrap());
            (Just(u), v)
        })
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent(b in arb_word(6, 30)) {
            let r = b.free_reduce();
            prop_assert!(r.len() <= b.len());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert_eq!(r.permutation(), b.permutation());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != -p[1]));
        }

        #[test]
        fn permutation_homomorphism((u, v) in arb_pair(7, 12)) {
            let uv = u.concat(&v).unwrap();
            prop_assert_eq!(uv.permutation(), u.permutation().compose(&v.permutation()));
        }

        #[test]
        fn conjugation_conjugates_permutations((b, g) in arb_pair(6, 10)) {
            let c = b.markov_conjugate(&g).unwrap();
            let pg = g.permutation();
            prop_assert_eq!(c.permutation(), pg.compose(&b.permutation()).compose(&pg.inverse()));
            prop_assert_eq!(c.permutation().cycle_type(), b.permutation().cycle_type());
            prop_assert_eq!(c.closure_components(), b.closure_components());
        }

        #[test]
        fn stabilization_preserves_components(b in arb_word(6, 12)) {
            prop_assert_eq!(b.markov_stabilize().closure_components(), b.closure_components());
        }

        #[test]
        fn cable_writhe_and_permutation(b in arb_word(4, 8), r in 1usize..4) {
            let c = b.cable(r).unwrap();
            prop_assert_eq!(c.writhe(), (r * r) as i64 * b.writhe());
            prop_assert_eq!(c.len(), r * r * b.len());
            let p = b.permutation();
            let expect: Vec<usize> = (0..b.strands() * r)
                .map(|k| (p.apply(k / r + 1) - 1) * r + k % r + 1)
                .collect();
            let cp = c.permutation();
            prop_assert_eq!(cp.images(), &expect[..]);
        }
    }

    #[test]
    fn braid_relations_hold_in_symmetric_group() {
        for n in 2..=8usize {
            for i in 1..n as i32 {
                for j in 1..n as i32 {
                    if (i - j).abs() >= 2 {
                        for (e, f) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let lhs = w(n, &[e * i, f * j]).permutation();
                            let rhs = w(n, &[f * j, e * i]).permutation();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
                if i + 1 < n as i32 {
                    let lhs = w(n, &[i, i + 1, i]).permutation();
                    let rhs = w(n, &[i + 1, i, i + 1]).permutation();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn stabilization_exhaustive_short_words() {
        let gens = [1, -1, 2, -2];
        let mut words = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for word in &words {
                for &g in &gens {
                    let mut v: Vec<i32> = word.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            for v in &next {
                let b = w(3, v);
                assert_eq!(b.markov_stabilize().closure_components(), b.closure_components());
            }
            words = next;
        }
    }
}
