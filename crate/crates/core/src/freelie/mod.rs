//! Free Lie algebra on `m` generators truncated at nilpotency index `nu`.
//!
//! The linear basis is the Lyndon basis: standard bracketings of Lyndon words
//! over `x1 < x2 < ... < xm`. Basis words are interned in a [`FreeLie`] table
//! (one per `(m, nu)`), brackets of basis words are normalized by the
//! classical rewriting against the Lyndon order and memoized, and elements
//! are sparse linear combinations of word ids.

mod element;
mod morphism;
mod notation;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::exact::Scalar;

pub use element::{GradedSubspace, LieElement};
pub use morphism::{Derivation, Endomorphism};
pub use notation::Expr;

/// Default cap on the total dimension of a truncated free Lie algebra.
pub const DEFAULT_DIM_CAP: usize = 5000;

pub type WordId = u32;

#[derive(Debug)]
struct Word {
    letters: Vec<u8>,
    degree: usize,
    multidegree: Vec<u8>,
    /// Standard factorization (left, right) for composite words.
    factors: Option<(WordId, WordId)>,
}

/// The interned Lyndon basis of a truncated free Lie algebra, together with
/// the memoized structure constants. Built once per `(m, nu)`; immutable
/// afterwards apart from internally synchronized caches.
pub struct FreeLie {
    m: usize,
    nu: usize,
    words: Vec<Word>,
    degree_offset: Vec<usize>, // degree n words occupy degree_offset[n-1]..degree_offset[n]
    index: HashMap<Vec<u8>, WordId>,
    bracket_memo: Mutex<HashMap<(WordId, WordId), Arc<Vec<(WordId, Scalar)>>>>,
    hw_memo: Mutex<HashMap<Vec<u32>, Arc<Vec<LieElement>>>>,
}

/// Shared registry so that repeated requests for the same `(m, nu)` reuse the
/// same table (and its caches).
static REGISTRY: Lazy<Mutex<HashMap<(usize, usize), Arc<FreeLie>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl FreeLie {
    pub fn new(m: usize, nu: usize, dim_cap: usize) -> Result<Arc<FreeLie>> {
        if m < 1 || nu < 1 {
            return Err(Error::Input("need m >= 1 and nu >= 1".into()));
        }
        let total: u128 = (1..=nu).map(|n| witt_dim(m, n) as u128).sum();
        if total > dim_cap as u128 {
            return Err(Error::ResourceCap(format!(
                "free Lie algebra on {m} generators truncated at {nu} has dimension {total} > cap {dim_cap}"
            )));
        }
        let mut words_raw = lyndon_words(m, nu);
        words_raw.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));

        let mut index = HashMap::new();
        for (id, w) in words_raw.iter().enumerate() {
            index.insert(w.clone(), id as WordId);
        }
        let mut words = Vec::with_capacity(words_raw.len());
        for w in &words_raw {
            let degree = w.len();
            let mut multidegree = vec![0u8; m];
            for &c in w {
                multidegree[c as usize] += 1;
            }
            let factors = if degree == 1 {
                None
            } else {
                let split = std_factor_split(w);
                let left = index[&w[..split]];
                let right = index[&w[split..]];
                Some((left, right))
            };
            words.push(Word {
                letters: w.clone(),
                degree,
                multidegree,
                factors,
            });
        }
        let mut degree_offset = vec![0usize; nu + 1];
        for w in &words {
            degree_offset[w.degree] += 1;
        }
        let mut acc = 0;
        for n in 1..=nu {
            let c = degree_offset[n];
            degree_offset[n] = acc;
            acc += c;
        }
        degree_offset.push(acc);
        // degree_offset[n-1] is now the start offset of degree n; shift into place.
        let degree_offset = {
            let mut v = Vec::with_capacity(nu + 1);
            for n in 1..=nu {
                v.push(degree_offset[n]);
            }
            v.push(acc);
            v
        };
        debug_assert_eq!(acc, words.len());
        for n in 1..=nu {
            debug_assert_eq!(
                degree_offset[n] - degree_offset[n - 1],
                witt_dim(m, n),
                "Lyndon word count disagrees with the dimension formula"
            );
        }
        Ok(Arc::new(FreeLie {
            m,
            nu,
            words,
            degree_offset,
            index,
            bracket_memo: Mutex::new(HashMap::new()),
            hw_memo: Mutex::new(HashMap::new()),
        }))
    }

    /// Returns the cached table for `(m, nu)`, building it on first use.
    pub fn shared(m: usize, nu: usize) -> Result<Arc<FreeLie>> {
        let mut reg = REGISTRY.lock().unwrap();
        if let Some(t) = reg.get(&(m, nu)) {
            return Ok(t.clone());
        }
        drop(reg);
        let t = FreeLie::new(m, nu, DEFAULT_DIM_CAP)?;
        reg = REGISTRY.lock().unwrap();
        Ok(reg.entry((m, nu)).or_insert(t).clone())
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nu
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Ids of the basis words of one degree, in the fixed (degree, lex) order.
    pub fn degree_words(&self, n: usize) -> std::ops::Range<WordId> {
        assert!(n >= 1 && n <= self.nu);
        self.degree_offset[n - 1] as WordId..self.degree_offset[n] as WordId
    }

    pub fn degree_dim(&self, n: usize) -> usize {
        let r = self.degree_words(n);
        (r.end - r.start) as usize
    }

    pub fn total_dim(&self) -> usize {
        self.words.len()
    }

    pub fn word_degree(&self, id: WordId) -> usize {
        self.words[id as usize].degree
    }

    pub fn word_multidegree(&self, id: WordId) -> &[u8] {
        &self.words[id as usize].multidegree
    }

    pub fn word_letters(&self, id: WordId) -> &[u8] {
        &self.words[id as usize].letters
    }

    pub fn word_factors(&self, id: WordId) -> Option<(WordId, WordId)> {
        self.words[id as usize].factors
    }

    /// Position of a word within its degree block.
    pub fn word_offset_in_degree(&self, id: WordId) -> usize {
        id as usize - self.degree_offset[self.word_degree(id) - 1]
    }

    pub fn word_id(&self, letters: &[u8]) -> Option<WordId> {
        self.index.get(letters).copied()
    }

    pub fn generator_word(&self, i: usize) -> Result<WordId> {
        if i >= self.m {
            return Err(Error::UnknownGenerator {
                index: i,
                count: self.m,
            });
        }
        Ok(self.index[&vec![i as u8]])
    }

    /// Structure constants: the bracket of two basis words expanded over the
    /// Lyndon basis. Degrees beyond `nu` truncate to zero.
    pub fn bracket_words(&self, a: WordId, b: WordId) -> Arc<Vec<(WordId, Scalar)>> {
        if let Some(hit) = self.bracket_memo.lock().unwrap().get(&(a, b)) {
            return hit.clone();
        }
        let result = Arc::new(self.compute_bracket(a, b));
        self.bracket_memo
            .lock()
            .unwrap()
            .insert((a, b), result.clone());
        result
    }

    fn compute_bracket(&self, a: WordId, b: WordId) -> Vec<(WordId, Scalar)> {
        let (da, db) = (self.word_degree(a), self.word_degree(b));
        if da + db > self.nu || a == b {
            return Vec::new();
        }
        let (wa, wb) = (self.word_letters(a), self.word_letters(b));
        if wa > wb {
            let flipped = self.bracket_words(b, a);
            return flipped.iter().map(|(w, c)| (*w, -c)).collect();
        }
        // wa < wb as words. [sigma(a), sigma(b)] is itself a basis element
        // exactly when a is a letter or the right standard factor of a is >= b.
        let direct = match self.word_factors(a) {
            None => true,
            Some((_, a2)) => self.word_letters(a2) >= wb,
        };
        if direct {
            let mut cat = wa.to_vec();
            cat.extend_from_slice(wb);
            let id = self.index[&cat];
            return vec![(id, Scalar::one())];
        }
        // Jacobi: [[a1,a2],b] = [a1,[a2,b]] - [a2,[a1,b]].
        let (a1, a2) = self.word_factors(a).unwrap();
        let mut acc: HashMap<WordId, Scalar> = HashMap::new();
        let t1 = self.bracket_words(a2, b);
        for (w, c) in t1.iter() {
            for (w2, c2) in self.bracket_words(a1, *w).iter() {
                let entry = acc.entry(*w2).or_insert_with(Scalar::zero);
                *entry += &(c * c2);
            }
        }
        let t2 = self.bracket_words(a1, b);
        for (w, c) in t2.iter() {
            for (w2, c2) in self.bracket_words(a2, *w).iter() {
                let entry = acc.entry(*w2).or_insert_with(Scalar::zero);
                *entry -= &(c * c2);
            }
        }
        let mut out: Vec<(WordId, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(w, _)| *w);
        out
    }

    pub(crate) fn hw_cache(&self) -> &Mutex<HashMap<Vec<u32>, Arc<Vec<LieElement>>>> {
        &self.hw_memo
    }
}

impl std::fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FreeLie(m={}, nu={}, dim={})",
            self.m,
            self.nu,
            self.words.len()
        )
    }
}

/// Dimension of the degree `n` component of the free Lie algebra on `m`
/// generators: (1/n) sum over d | n of mu(d) m^(n/d).
pub fn witt_dim(m: usize, n: usize) -> usize {
    let mut sum: i128 = 0;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        sum += mu as i128 * (m as i128).pow((n / d) as u32);
    }
    debug_assert!(sum >= 0 && sum % n as i128 == 0);
    (sum / n as i128) as usize
}

/// dim of the free nilpotent Lie algebra on `m` generators of index `nu`.
pub fn witt_cumulative(m: usize, nu: usize) -> usize {
    (1..=nu).map(|n| witt_dim(m, n)).sum()
}

pub fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All Lyndon words over an `m`-letter alphabet of length at most `max_len`,
/// by Duval's algorithm.
fn lyndon_words(m: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() <= max_len {
            out.push(w.clone());
        }
        let mut t: Vec<u8> = (0..max_len).map(|i| w[i % w.len()]).collect();
        while t.last() == Some(&((m - 1) as u8)) {
            t.pop();
        }
        if t.is_empty() {
            break;
        }
        *t.last_mut().unwrap() += 1;
        w = t;
    }
    out
}

/// Split point of the standard factorization `w = u v`: `v` is the smallest
/// proper suffix (equivalently the longest proper Lyndon suffix).
fn std_factor_split(w: &[u8]) -> usize {
    let mut best = 1;
    for p in 1..w.len() {
        if w[p..] < w[best..] {
            best = p;
        }
    }
    best
}
