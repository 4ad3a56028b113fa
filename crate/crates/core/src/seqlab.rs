//! Sequences in `Δ(n, n+1)` and the quasi-balanced class.
//!
//! A sequence starts at `L_1 = n` and grows by `n` or `n + 1` each step. It is quasi-balanced when
//! every `Δ_{r,j} = L_r - L_j - L_{r-j}` lies in `{0, 1}`.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("n must be at least 2, got {0}")]
    SmallN(usize),
    #[error("a sequence needs at least one term")]
    Empty,
    #[error("first term must be n = {n}, got {first}")]
    BadStart { n: usize, first: usize },
    #[error("increment {increment} into term {index} is not n or n + 1")]
    Structural { index: usize, increment: i64 },
    #[error("not quasi-balanced: {0}")]
    NotQuasiBalanced(Witness),
    #[error("sequence is quasi-balanced, there is no failure witness")]
    QuasiBalanced,
}

/// A finite prefix `(L_1, ..., L_r)` of a sequence in `Δ(n, n+1)`.
///
/// Serializes as the plain list of terms; `n` is the first term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QBSeq {
    n: usize,
    terms: Vec<usize>,
}

impl TryFrom<Vec<usize>> for QBSeq {
    type Error = SeqError;

    fn try_from(terms: Vec<usize>) -> Result<Self, Self::Error> {
        QBSeq::from_terms(terms)
    }
}

impl From<QBSeq> for Vec<usize> {
    fn from(s: QBSeq) -> Self {
        s.terms
    }
}

/// The lexicographically first pair `(r, j)` with `Δ_{r,j} ∉ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r: usize,
    pub j: usize,
    pub delta: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ_{{{},{}}} = {}", self.r, self.j, self.delta)
    }
}

impl QBSeq {
    /// Checks membership in `Δ(n, n+1)`; quasi-balance is not required.
    pub fn new(n: usize, terms: Vec<usize>) -> Result<Self, SeqError> {
        if n < 2 {
            return Err(SeqError::SmallN(n));
        }
        let first = *terms.first().ok_or(SeqError::Empty)?;
        if first != n {
            return Err(SeqError::BadStart { n, first });
        }
        for (idx, w) in terms.windows(2).enumerate() {
            let inc = w[1] as i64 - w[0] as i64;
            if inc != n as i64 && inc != n as i64 + 1 {
                return Err(SeqError::Structural { index: idx + 2, increment: inc });
            }
        }
        Ok(QBSeq { n, terms })
    }

    /// Infers `n` from the first term.
    pub fn from_terms(terms: Vec<usize>) -> Result<Self, SeqError> {
        let n = *terms.first().ok_or(SeqError::Empty)?;
        Self::new(n, terms)
    }

    /// `(n, 2n, 3n, ...)` with `len` terms.
    #[must_use]
    pub fn all_n(n: usize, len: usize) -> Self {
        QBSeq { n, terms: (1..=len).map(|r| r * n).collect() }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn last(&self) -> usize {
        self.terms[self.terms.len() - 1]
    }

    /// `L_r`, one-based, with `L_0 = 0`.
    #[must_use]
    pub fn term(&self, r: usize) -> usize {
        if r == 0 {
            0
        } else {
            self.terms[r - 1]
        }
    }

    /// Whether `x` is one of the terms.
    #[must_use]
    pub fn contains(&self, x: usize) -> bool {
        self.terms.binary_search(&x).is_ok()
    }

    /// `Δ_{r,j} = L_r - L_j - L_{r-j}`.
    #[must_use]
    pub fn delta(&self, r: usize, j: usize) -> i64 {
        self.term(r) as i64 - self.term(j) as i64 - self.term(r - j) as i64
    }

    /// Appends a term, checking only the structural condition.
    pub fn push(&mut self, next: usize) -> Result<(), SeqError> {
        let inc = next as i64 - self.last() as i64;
        if inc != self.n as i64 && inc != self.n as i64 + 1 {
            return Err(SeqError::Structural { index: self.len() + 1, increment: inc });
        }
        self.terms.push(next);
        Ok(())
    }

    /// The prefix `(L_1, ..., L_r)`.
    #[must_use]
    pub fn prefix(&self, r: usize) -> QBSeq {
        QBSeq { n: self.n, terms: self.terms[..r].to_vec() }
    }

    fn first_bad_j(&self, r: usize) -> Option<Witness> {
        (1..r).map(|j| Witness { r, j, delta: self.delta(r, j) }).find(|w| !(0..=1).contains(&w.delta))
    }

    /// Whether appending `x` keeps a quasi-balanced prefix quasi-balanced.
    fn accepts(&self, x: usize) -> bool {
        let m = self.len() + 1;
        (1..m).all(|j| {
            let d = x as i64 - self.term(j) as i64 - self.term(m - j) as i64;
            (0..=1).contains(&d)
        })
    }
}

impl fmt::Display for QBSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Ok` if every `Δ_{r,j} ∈ {0, 1}`, else the lexicographically first violation.
pub fn is_quasi_balanced(l: &QBSeq) -> Result<(), Witness> {
    match (2..=l.len()).find_map(|r| l.first_bad_j(r)) {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// The admissible next terms among `L_r + n` and `L_r + n + 1`.
pub fn extensions(l: &QBSeq) -> Result<Vec<usize>, SeqError> {
    is_quasi_balanced(l).map_err(SeqError::NotQuasiBalanced)?;
    let out = extend_unchecked(l);
    assert!(!out.is_empty(), "quasi-balanced prefix {l} has no extension");
    Ok(out)
}

fn extend_unchecked(l: &QBSeq) -> Vec<usize> {
    let base = l.last() + l.n;
    [base, base + 1].into_iter().filter(|&x| l.accepts(x)).collect()
}

/// All quasi-balanced prefixes of the given length, in lexicographic order.
#[must_use]
pub fn enumerate(n: usize, length: usize) -> Vec<QBSeq> {
    let mut out = Vec::new();
    if n < 2 || length == 0 {
        return out;
    }
    let mut stack = vec![QBSeq { n, terms: vec![n] }];
    while let Some(l) = stack.pop() {
        if l.len() == length {
            out.push(l);
            continue;
        }
        for x in extend_unchecked(&l).into_iter().rev() {
            let mut next = l.clone();
            next.terms.push(x);
            stack.push(next);
        }
    }
    out
}

/// `(length, count)` for every length `1..=max_len`.
#[must_use]
pub fn counts(n: usize, max_len: usize) -> Vec<(usize, usize)> {
    if n < 2 || max_len == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(max_len);
    let mut layer = vec![QBSeq { n, terms: vec![n] }];
    for len in 1..=max_len {
        out.push((len, layer.len()));
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|l| {
                extend_unchecked(l).into_iter().map(move |x| {
                    let mut next = l.clone();
                    next.terms.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Which inequality of the quasi-balance condition breaks first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// `L_{k+r} = L_k + L_r - 1` and `L_{r-1} + 2 < L_r`.
    Deficit,
    /// `L_{k+r} = L_k + L_r + 2` and `L_r + 2 < L_{r+1}`.
    Excess,
}

/// The pair `(k, r)` that rules out a twisting map for a non-quasi-balanced sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCase {
    pub kind: FailureKind,
    pub k: usize,
    pub r: usize,
    /// Length of the shortest prefix that is not quasi-balanced.
    pub m: usize,
    /// `Δ_{m,r}`: `-1` or `2`.
    pub delta: i64,
}

impl FailureCase {
    /// `1` for a deficit, `2` for an excess.
    #[must_use]
    pub fn case_number(&self) -> u8 {
        match self.kind {
            FailureKind::Deficit => 1,
            FailureKind::Excess => 2,
        }
    }
}

/// Locates `(k, r)` following the minimal failing prefix.
pub fn failure_witness(l: &QBSeq) -> Result<FailureCase, SeqError> {
    let m = is_quasi_balanced(l).err().ok_or(SeqError::QuasiBalanced)?.r;
    let deficit = (1..m).find(|&j| l.delta(m, j) == -1);
    let (kind, r) = match deficit {
        Some(r) => (FailureKind::Deficit, r),
        None => {
            let r = (1..m).rev().find(|&j| l.delta(m, j) == 2).expect("a failing prefix has Δ = -1 or 2");
            (FailureKind::Excess, r)
        }
    };
    let k = m - r;
    let case = FailureCase { kind, k, r, m, delta: l.delta(m, r) };
    debug_assert!(match kind {
        FailureKind::Deficit => l.term(r - 1) + 2 < l.term(r) && l.term(k + r) + 1 == l.term(k) + l.term(r),
        FailureKind::Excess => l.term(r) + 2 < l.term(r + 1) && l.term(k + r) == l.term(k) + l.term(r) + 2,
    });
    Ok(case)
}

/// How the generator picks among admissible continuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Prefer `L_r + n`.
    AllN,
    /// Prefer `L_r + n + 1` whenever it is admissible.
    NPlusOne,
    /// Uniform among admissible continuations, seeded.
    RandomWalk(u64),
}

/// A quasi-balanced prefix of the given length grown step by step under `policy`.
#[must_use]
pub fn generate(n: usize, length: usize, policy: Policy) -> QBSeq {
    let mut l = QBSeq { n, terms: vec![n] };
    let mut rng = match policy {
        Policy::RandomWalk(seed) => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    while l.len() < length.max(1) {
        let ext = extend_unchecked(&l);
        let x = match (policy, rng.as_mut()) {
            (Policy::AllN, _) => ext[0],
            (Policy::NPlusOne, _) => ext[ext.len() - 1],
            (Policy::RandomWalk(_), Some(rng)) => ext[rng.gen_range(0..ext.len())],
            (Policy::RandomWalk(_), None) => unreachable!(),
        };
        l.terms.push(x);
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(t: &[usize]) -> QBSeq {
        QBSeq::from_terms(t.to_vec()).unwrap()
    }

    // Every increment string, filtered by the full Δ table.
    fn brute_force(n: usize, length: usize) -> Vec<QBSeq> {
        let mut out = Vec::new();
        for mask in 0..(1u32 << (length - 1)) {
            let mut t = vec![n];
            for b in 0..length - 1 {
                t.push(t[b] + n + ((mask >> (length - 2 - b)) & 1) as usize);
            }
            let ok = (1..=length).all(|r| (1..r).all(|j| {
                let d = t[r - 1] as i64 - t[j - 1] as i64 - t[r - j - 1] as i64;
                d == 0 || d == 1
            }));
            if ok {
                out.push(QBSeq { n, terms: t });
            }
        }
        out
    }

    #[test]
    fn structural_checks() {
        assert_eq!(QBSeq::new(2, vec![2, 6]).unwrap_err(), SeqError::Structural { index: 2, increment: 4 });
        assert_eq!(QBSeq::new(2, vec![3]).unwrap_err(), SeqError::BadStart { n: 2, first: 3 });
        assert_eq!(QBSeq::new(1, vec![1]).unwrap_err(), SeqError::SmallN(1));
        assert!(QBSeq::new(3, vec![3, 7, 10]).is_ok());
    }

    #[test]
    fn quasi_balance_examples() {
        assert_eq!(is_quasi_balanced(&seq(&[2, 4, 6, 8])), Ok(()));
        assert_eq!(is_quasi_balanced(&seq(&[2, 4, 7, 10])), Err(Witness { r: 4, j: 2, delta: 2 }));
        assert_eq!(is_quasi_balanced(&seq(&[2, 5, 7, 9])), Err(Witness { r: 4, j: 2, delta: -1 }));
        let l = seq(&[2, 4, 7, 9]);
        assert_eq!(is_quasi_balanced(&l), Ok(()));
        assert_eq!((l.delta(3, 1), l.delta(4, 1), l.delta(4, 2)), (1, 0, 1));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extensions(&seq(&[2])).unwrap(), vec![4, 5]);
        assert_eq!(extensions(&seq(&[2, 4, 7])).unwrap(), vec![9]);
        assert_eq!(extensions(&seq(&[2, 4, 6])).unwrap(), vec![8, 9]);
        assert!(matches!(extensions(&seq(&[2, 4, 7, 10])), Err(SeqError::NotQuasiBalanced(_))));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(2, 1), vec![seq(&[2])]);
        assert_eq!(enumerate(2, 2), vec![seq(&[2, 4]), seq(&[2, 5])]);
        assert_eq!(enumerate(2, 4), brute_force(2, 4));
    }

    #[test]
    fn failure_witness_examples() {
        let w = failure_witness(&seq(&[2, 4, 7, 10])).unwrap();
        assert_eq!((w.kind, w.k, w.r, w.m, w.delta), (FailureKind::Excess, 2, 2, 4, 2));
        let w = failure_witness(&seq(&[2, 5, 7, 9])).unwrap();
        assert_eq!((w.kind, w.k, w.r, w.m, w.delta), (FailureKind::Deficit, 2, 2, 4, -1));
        assert_eq!(failure_witness(&seq(&[2, 4, 6])), Err(SeqError::QuasiBalanced));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 2..=4 {
            for len in 1..=12 {
                assert_eq!(enumerate(n, len), brute_force(n, len), "n={n} len={len}");
            }
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for (len, count) in counts(3, 10) {
            assert_eq!(count, enumerate(3, len).len());
        }
    }

    #[test]
    fn generators_stay_quasi_balanced() {
        for policy in [Policy::AllN, Policy::NPlusOne, Policy::RandomWalk(7)] {
            let l = generate(3, 20, policy);
            assert_eq!(l.len(), 20);
            assert_eq!(is_quasi_balanced(&l), Ok(()));
        }
        assert_eq!(generate(2, 4, Policy::AllN), seq(&[2, 4, 6, 8]));
        assert_eq!(generate(2, 3, Policy::NPlusOne), seq(&[2, 5, 8]));
        assert_eq!(generate(2, 9, Policy::RandomWalk(3)), generate(2, 9, Policy::RandomWalk(3)));
    }

    #[test]
    fn serde_validates() {
        let l = seq(&[3, 6, 10]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, "[3,6,10]");
        assert_eq!(serde_json::from_str::<QBSeq>(&s).unwrap(), l);
        assert!(serde_json::from_str::<QBSeq>("[2,7]").is_err());
    }

    #[test]
    fn prefixes_extend_five_more_steps() {
        for n in 2..=3 {
            for l in enumerate(n, 7) {
                let mut frontier = vec![l];
                for _ in 0..5 {
                    frontier = frontier
                        .iter()
                        .flat_map(|p| {
                            extensions(p).unwrap().into_iter().map(move |x| {
                                let mut q = p.clone();
                                q.push(x).unwrap();
                                q
                            })
                        })
                        .collect();
                    assert!(!frontier.is_empty());
                }
            }
        }
    }

    fn any_structural(n: usize, len: usize) -> impl Strategy<Value = QBSeq> {
        proptest::collection::vec(any::<bool>(), len - 1).prop_map(move |bits| {
            let mut t = vec![n];
            for b in bits {
                t.push(t[t.len() - 1] + n + usize::from(b));
            }
            QBSeq { n, terms: t }
        })
    }

    proptest! {
        #[test]
        fn delta_is_symmetric(l in (2usize..5).prop_flat_map(|n| any_structural(n, 14))) {
            for r in 2..=l.len() {
                for j in 1..r {
                    prop_assert_eq!(l.delta(r, j), l.delta(r, r - j));
                }
            }
        }

        #[test]
        fn extensions_nonempty_and_sound(l in (2usize..5).prop_flat_map(|n| any_structural(n, 10))) {
            if is_quasi_balanced(&l).is_ok() {
                let ext = extensions(&l).unwrap();
                prop_assert!(!ext.is_empty());
                for x in [l.last() + l.n(), l.last() + l.n() + 1] {
                    let mut t = l.clone();
                    t.push(x).unwrap();
                    prop_assert_eq!(ext.contains(&x), is_quasi_balanced(&t).is_ok());
                }
            } else {
                let w = failure_witness(&l).unwrap();
                let (k, r) = (w.k, w.r);
                match w.kind {
                    FailureKind::Deficit => {
                        prop_assert_eq!(l.term(k + r) + 1, l.term(k) + l.term(r));
                        prop_assert!(l.term(r - 1) + 2 < l.term(r));
                    }
                    FailureKind::Excess => {
                        prop_assert_eq!(l.term(k + r), l.term(k) + l.term(r) + 2);
                        prop_assert!(l.term(r) + 2 < l.term(r + 1));
                    }
                }
            }
        }
    }
}
