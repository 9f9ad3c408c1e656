//! Substitution endomorphisms and derivations of the truncated free Lie
//! algebra, plus the GL(V) action and the sl(m) raising/lowering operators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::Matrix;

use super::{FreeLie, LieElement, WordId};

/// A Lie algebra endomorphism given by generator images, applied by
/// substitution into the standard bracketing of each basis word.
#[derive(Clone, Debug)]
pub struct Endomorphism {
    images: Vec<LieElement>,
}

impl Endomorphism {
    pub fn new(alg: &FreeLie, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != alg.generators() {
            return Err(Error::DimensionMismatch {
                expected: alg.generators(),
                got: images.len(),
            });
        }
        for img in &images {
            alg.check_ambient(img)?;
        }
        Ok(Endomorphism { images })
    }

    /// x_i -> x_i + w_i with the w_i of degree >= 2.
    pub fn unipotent(alg: &FreeLie, higher: Vec<LieElement>) -> Result<Self> {
        let images = higher
            .into_iter()
            .enumerate()
            .map(|(i, w)| alg.add(&alg.gen_el(i)?, &w))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::new(alg, images)
    }

    /// Linear substitution x_i -> sum_j M[j][i] x_j.
    pub fn linear(alg: &FreeLie, mat: &Matrix) -> Result<Self> {
        let m = alg.generators();
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: mat.rows(),
            });
        }
        let mut images = Vec::with_capacity(m);
        for i in 0..m {
            let mut img = alg.zero_el();
            for j in 0..m {
                let c = &mat[(j, i)];
                if !c.is_zero() {
                    img = alg.add(&img, &alg.scale(c, &alg.gen_el(j)?))?;
                }
            }
            images.push(img);
        }
        Endomorphism::new(alg, images)
    }

    pub fn apply(&self, alg: &FreeLie, v: &LieElement) -> Result<LieElement> {
        Ok(self
            .apply_many(alg, std::slice::from_ref(v))?
            .pop()
            .unwrap())
    }

    /// Applies the endomorphism to several elements sharing one word-image
    /// memo.
    pub fn apply_many(&self, alg: &FreeLie, vs: &[LieElement]) -> Result<Vec<LieElement>> {
        let mut memo: HashMap<WordId, LieElement> = HashMap::new();
        let mut out = Vec::with_capacity(vs.len());
        for v in vs {
            alg.check_ambient(v)?;
            let mut acc = alg.zero_el();
            for (w, c) in v.terms() {
                let img = self.word_image(alg, w, &mut memo)?;
                acc = alg.add(&acc, &alg.scale(c, &img))?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn word_image(
        &self,
        alg: &FreeLie,
        w: WordId,
        memo: &mut HashMap<WordId, LieElement>,
    ) -> Result<LieElement> {
        if let Some(hit) = memo.get(&w) {
            return Ok(hit.clone());
        }
        let img = match alg.word_factors(w) {
            None => self.images[alg.word_letters(w)[0] as usize].clone(),
            Some((l, r)) => {
                let li = self.word_image(alg, l, memo)?;
                let ri = self.word_image(alg, r, memo)?;
                alg.bracket(&li, &ri)?
            }
        };
        memo.insert(w, img.clone());
        Ok(img)
    }
}

/// A derivation given by generator images, extended by the Leibniz rule.
#[derive(Clone, Debug)]
pub struct Derivation {
    images: Vec<LieElement>,
}

impl Derivation {
    pub fn new(alg: &FreeLie, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != alg.generators() {
            return Err(Error::DimensionMismatch {
                expected: alg.generators(),
                got: images.len(),
            });
        }
        for img in &images {
            alg.check_ambient(img)?;
        }
        Ok(Derivation { images })
    }

    /// Validates that all nonzero images are homogeneous of one common degree
    /// and returns that degree.
    pub fn homogeneous_degree(&self, alg: &FreeLie) -> Result<Option<usize>> {
        let mut deg = None;
        for img in &self.images {
            if img.is_zero() {
                continue;
            }
            match (deg, img.homogeneous_degree(alg)) {
                (_, None) => return Err(Error::NonHomogeneous),
                (None, d) => deg = d,
                (Some(e), Some(d)) if e != d => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// The basis derivation sending generator `j` to the basis word `w` and
    /// every other generator to zero.
    pub fn elementary(alg: &FreeLie, j: usize, w: WordId) -> Result<Self> {
        let mut images = vec![alg.zero_el(); alg.generators()];
        images[j] = alg.word_el(w);
        Derivation::new(alg, images)
    }

    /// Raising operator e_i: x_{i+1} -> x_i, other generators -> 0.
    pub fn raising(alg: &FreeLie, i: usize) -> Result<Self> {
        let mut images = vec![alg.zero_el(); alg.generators()];
        images[i + 1] = alg.gen_el(i)?;
        Derivation::new(alg, images)
    }

    /// Lowering operator f_i: x_i -> x_{i+1}, other generators -> 0.
    pub fn lowering(alg: &FreeLie, i: usize) -> Result<Self> {
        let mut images = vec![alg.zero_el(); alg.generators()];
        images[i] = alg.gen_el(i + 1)?;
        Derivation::new(alg, images)
    }

    /// Inner derivation ad(a).
    pub fn inner(alg: &FreeLie, a: &LieElement) -> Result<Self> {
        let images = (0..alg.generators())
            .map(|i| alg.bracket(a, &alg.gen_el(i)?))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(alg, images)
    }

    pub fn apply(&self, alg: &FreeLie, v: &LieElement) -> Result<LieElement> {
        alg.check_ambient(v)?;
        let mut memo: HashMap<WordId, LieElement> = HashMap::new();
        let mut out = alg.zero_el();
        for (w, c) in v.terms() {
            let img = self.word_image(alg, w, &mut memo)?;
            out = alg.add(&out, &alg.scale(c, &img))?;
        }
        Ok(out)
    }

    fn word_image(
        &self,
        alg: &FreeLie,
        w: WordId,
        memo: &mut HashMap<WordId, LieElement>,
    ) -> Result<LieElement> {
        if let Some(hit) = memo.get(&w) {
            return Ok(hit.clone());
        }
        let img = match alg.word_factors(w) {
            None => self.images[alg.word_letters(w)[0] as usize].clone(),
            Some((l, r)) => {
                // Leibniz: D[l,r] = [Dl, r] + [l, Dr]
                let dl = self.word_image(alg, l, memo)?;
                let dr = self.word_image(alg, r, memo)?;
                let t1 = alg.bracket(&dl, &alg.word_el(r))?;
                let t2 = alg.bracket(&alg.word_el(l), &dr)?;
                alg.add(&t1, &t2)?
            }
        };
        memo.insert(w, img.clone());
        Ok(img)
    }
}

impl FreeLie {
    /// Substitution action of an m x m matrix: x_i -> sum_j M[j][i] x_j,
    /// extended as an algebra endomorphism. Degree-preserving.
    pub fn gl_action(&self, mat: &Matrix, v: &LieElement) -> Result<LieElement> {
        Endomorphism::linear(self, mat)?.apply(self, v)
    }

    /// Applies a degree-homogeneous derivation; errors on non-homogeneous
    /// generator assignments.
    pub fn derivation_apply(&self, d: &Derivation, v: &LieElement) -> Result<LieElement> {
        d.homogeneous_degree(self)?;
        d.apply(self, v)
    }

    /// The basis derivations of I_k: each generator sent to one degree-(k+1)
    /// basis word, all others to zero. Deterministic order.
    pub fn ik_basis(&self, k: usize) -> Result<Vec<Derivation>> {
        if k + 1 > self.nilpotency_index() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for j in 0..self.generators() {
            for w in self.degree_words(k + 1) {
                out.push(Derivation::elementary(self, j, w)?);
            }
        }
        Ok(out)
    }
}
