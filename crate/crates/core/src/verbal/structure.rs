//! Finite-dimensional graded nilpotent Lie algebras given by structure
//! constants, quotient presentations and the isomorphism test for
//! pseudo-free algebras.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar, Subspace};
use crate::freelie::{FreeLie, GradedSubspace, WordId};

use super::{is_verbal, verify_ideal};

pub type SparseVec = Vec<(u32, Scalar)>;

/// A nilpotent Lie algebra on an ordered basis with exact bracket
/// coefficients. The first `generators` basis elements are the distinguished
/// minimal generators; `grading[k]` is the degree of basis element `k` and
/// brackets respect the grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    pub field: Field,
    pub labels: Vec<String>,
    pub generators: usize,
    pub nu: usize,
    pub grading: Vec<u32>,
    /// c[k] coefficients of [e_i, e_j] for i < j, sparse and sorted.
    pub brackets: BTreeMap<(u32, u32), SparseVec>,
}

fn add_sparse(acc: &mut BTreeMap<u32, Scalar>, v: &SparseVec, c: &Scalar) {
    for (k, x) in v {
        let entry = acc.entry(*k).or_insert_with(Scalar::zero);
        *entry += &(c * x);
    }
}

fn to_sparse(acc: BTreeMap<u32, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl StructureConstants {
    /// The abelian algebra of dimension `d` (every bracket zero).
    pub fn abelian(d: usize, field: Field) -> Self {
        StructureConstants {
            dim: d,
            field,
            labels: (1..=d).map(|i| format!("x{i}")).collect(),
            generators: d,
            nu: 1,
            grading: vec![1; d],
            brackets: BTreeMap::new(),
        }
    }

    /// The free nilpotent algebra: quotient by the zero ideal.
    pub fn freely_nilpotent(alg: &FreeLie) -> Result<Self> {
        Self::quotient(alg, &GradedSubspace::zero(alg))
    }

    /// Quotient of the truncated free Lie algebra by a graded ideal, on the
    /// complement basis of non-pivot Hall words. The ideal must not meet
    /// degree one, and must actually be an ideal; Jacobi is verified on the
    /// result.
    pub fn quotient(alg: &FreeLie, h: &GradedSubspace) -> Result<Self> {
        if !h.component(1).is_zero() {
            return Err(Error::ContainsGenerators);
        }
        verify_ideal(alg, h)?;
        let nu = alg.nilpotency_index();
        // Complement words per degree, plus the coordinate lookup.
        let mut basis_words: Vec<WordId> = Vec::new();
        let mut grading = Vec::new();
        for n in 1..=nu {
            let words: Vec<WordId> = alg.degree_words(n).collect();
            for c in h.component(n).complement_coords() {
                basis_words.push(words[c]);
                grading.push(n as u32);
            }
        }
        let index: HashMap<WordId, u32> = basis_words
            .iter()
            .enumerate()
            .map(|(k, &w)| (w, k as u32))
            .collect();
        let dim = basis_words.len();
        let labels: Vec<String> = basis_words.iter().map(|&w| alg.print_word(w)).collect();
        // A class representative of any free element: reduce each degree part
        // against the ideal, then read off complement coordinates.
        let project = |el: &crate::freelie::LieElement| -> SparseVec {
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for n in 1..=nu {
                let part = alg.degree_part(el, n);
                if part.is_zero() {
                    continue;
                }
                let reduced = h.component(n).reduce(&alg.to_coords(&part, n));
                let words: Vec<WordId> = alg.degree_words(n).collect();
                for (c, x) in reduced.iter().enumerate() {
                    if !x.is_zero() {
                        let k = index[&words[c]];
                        let entry = acc.entry(k).or_insert_with(Scalar::zero);
                        *entry += x;
                    }
                }
            }
            to_sparse(acc)
        };
        let mut brackets = BTreeMap::new();
        let mut field = Field::Rational;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = alg.word_el(basis_words[i]);
                let b = alg.word_el(basis_words[j]);
                let br = alg.bracket(&a, &b)?;
                if br.is_zero() {
                    continue;
                }
                let entry = project(&br);
                if !entry.is_empty() {
                    if entry.iter().any(|(_, c)| !c.is_rational()) {
                        field = Field::Gaussian;
                    }
                    brackets.insert((i as u32, j as u32), entry);
                }
            }
        }
        let sc = StructureConstants {
            dim,
            field,
            labels,
            generators: alg.generators(),
            nu,
            grading,
            brackets,
        };
        sc.verify_graded()?;
        sc.verify_jacobi()?;
        Ok(sc)
    }

    pub fn bracket_basis(&self, i: u32, j: u32) -> SparseVec {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket_vecs(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (i, ca) in a {
            for (j, cb) in b {
                if i == j {
                    continue;
                }
                let coef = ca * cb;
                let br = self.bracket_basis(*i, *j);
                add_sparse(&mut acc, &br, &coef);
            }
        }
        to_sparse(acc)
    }

    pub fn verify_jacobi(&self) -> Result<()> {
        for i in 0..self.dim as u32 {
            for j in (i + 1)..self.dim as u32 {
                // Grading kills every term once the total degree leaves range.
                let dij = self.grading[i as usize] + self.grading[j as usize];
                if dij as usize + 1 > self.nu {
                    continue;
                }
                for k in (j + 1)..self.dim as u32 {
                    if (dij + self.grading[k as usize]) as usize > self.nu {
                        continue;
                    }
                    let ei = vec![(i, Scalar::one())];
                    let ej = vec![(j, Scalar::one())];
                    let ek = vec![(k, Scalar::one())];
                    let t1 = self.bracket_vecs(&ei, &self.bracket_vecs(&ej, &ek));
                    let t2 = self.bracket_vecs(&ej, &self.bracket_vecs(&ek, &ei));
                    let t3 = self.bracket_vecs(&ek, &self.bracket_vecs(&ei, &ej));
                    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                    for t in [&t1, &t2, &t3] {
                        add_sparse(&mut acc, t, &Scalar::one());
                    }
                    if !to_sparse(acc).is_empty() {
                        return Err(Error::Inconsistency(format!(
                            "Jacobi identity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verify_graded(&self) -> Result<()> {
        if self.grading.len() != self.dim {
            return Err(Error::Input("grading length differs from dimension".into()));
        }
        for ((i, j), v) in &self.brackets {
            let d = self.grading[*i as usize] + self.grading[*j as usize];
            for (k, _) in v {
                if self.grading[*k as usize] != d {
                    return Err(Error::Input(format!(
                        "bracket [{i},{j}] has a component of wrong degree at {k}"
                    )));
                }
            }
        }
        if self.grading.iter().take(self.generators).any(|&g| g != 1) {
            return Err(Error::Input(
                "the first m basis elements must have degree 1".into(),
            ));
        }
        if let Some(&maxg) = self.grading.iter().max() {
            if (maxg as usize) > self.nu {
                return Err(Error::Input(
                    "grading exceeds declared nilpotency index".into(),
                ));
            }
        }
        Ok(())
    }

    /// Entrywise conjugated algebra: the bracket of conjugates is the
    /// conjugate of the bracket.
    pub fn conj(&self) -> StructureConstants {
        StructureConstants {
            brackets: self
                .brackets
                .iter()
                .map(|(k, v)| (*k, v.iter().map(|(i, c)| (*i, c.conj())).collect()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn is_rational(&self) -> bool {
        self.brackets
            .values()
            .all(|v| v.iter().all(|(_, c)| c.is_rational()))
    }

    /// Dimensions of the graded pieces, degree 1 first.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.nu];
        for &g in &self.grading {
            dims[g as usize - 1] += 1;
        }
        dims
    }

    /// Exact nilpotency index: the largest degree with a nonzero piece.
    pub fn exact_index(&self) -> usize {
        self.grading.iter().copied().max().unwrap_or(0) as usize
    }

    /// Evaluates a free Lie word under generator images in this algebra.
    pub fn eval_words<'a>(
        &self,
        alg: &FreeLie,
        images: &[SparseVec],
        words: impl Iterator<Item = WordId> + 'a,
    ) -> Result<Vec<SparseVec>> {
        if images.len() != alg.generators() {
            return Err(Error::DimensionMismatch {
                expected: alg.generators(),
                got: images.len(),
            });
        }
        let mut memo: HashMap<WordId, SparseVec> = HashMap::new();
        words
            .map(|w| Ok(self.eval_word_memo(alg, images, w, &mut memo)))
            .collect()
    }

    fn eval_word_memo(
        &self,
        alg: &FreeLie,
        images: &[SparseVec],
        w: WordId,
        memo: &mut HashMap<WordId, SparseVec>,
    ) -> SparseVec {
        if let Some(hit) = memo.get(&w) {
            return hit.clone();
        }
        let val = match alg.word_factors(w) {
            None => images[alg.word_letters(w)[0] as usize].clone(),
            Some((l, r)) => {
                let lv = self.eval_word_memo(alg, images, l, memo);
                let rv = self.eval_word_memo(alg, images, r, memo);
                self.bracket_vecs(&lv, &rv)
            }
        };
        memo.insert(w, val.clone());
        val
    }
}

/// Kernel of the presentation map from the truncated free Lie algebra onto
/// `g` (generators to the first `m` basis elements), degree by degree.
pub fn presentation_ideal(alg: &FreeLie, g: &StructureConstants) -> Result<GradedSubspace> {
    if alg.generators() != g.generators || alg.nilpotency_index() != g.nu {
        return Err(Error::AmbientMismatch {
            em: g.generators,
            enu: g.nu,
            gm: alg.generators(),
            gnu: alg.nilpotency_index(),
        });
    }
    let images: Vec<SparseVec> = (0..g.generators)
        .map(|i| vec![(i as u32, Scalar::one())])
        .collect();
    let mut h = GradedSubspace::zero(alg);
    let mut image_dim = 0usize;
    for n in 1..=alg.nilpotency_index() {
        let words: Vec<WordId> = alg.degree_words(n).collect();
        let values = g.eval_words(alg, &images, words.iter().copied())?;
        // Kernel of the evaluation: rows = words, columns = algebra coords.
        let mat = crate::exact::Matrix::from_fn(words.len(), g.dim, |r, c| {
            values[r]
                .iter()
                .find(|(k, _)| *k == c as u32)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(Scalar::zero)
        });
        let kernel = mat.transpose().kernel();
        let comp = Subspace::from_vectors(words.len(), kernel);
        image_dim += words.len() - comp.dim();
        h.set_component(n, comp);
    }
    if !h.component(1).is_zero() {
        return Err(Error::GeneratorsDoNotGenerate);
    }
    if image_dim != g.dim {
        return Err(Error::GeneratorsDoNotGenerate);
    }
    Ok(h)
}

/// A finitely generated graded nilpotent algebra is pseudo-free iff its
/// presentation ideal is verbal.
pub fn is_pseudo_free(g: &StructureConstants) -> Result<bool> {
    let alg = FreeLie::shared(g.generators, g.nu)?;
    let h = presentation_ideal(&alg, g)?;
    is_verbal(&alg, &h)
}

/// Two pseudo-free algebras on the same number of generators are isomorphic
/// iff their presentation ideals coincide. Errors when an input is not
/// pseudo-free (the test is only valid for pseudo-free algebras).
pub fn iso_check(a: &StructureConstants, b: &StructureConstants) -> Result<bool> {
    if a.generators != b.generators {
        return Ok(false);
    }
    if a.nu != b.nu {
        // Different exact nilpotency index: never isomorphic, but still
        // validate the inputs.
        if !is_pseudo_free(a)? || !is_pseudo_free(b)? {
            return Err(Error::NotPseudoFree);
        }
        return Ok(false);
    }
    if !is_pseudo_free(a)? || !is_pseudo_free(b)? {
        return Err(Error::NotPseudoFree);
    }
    let alg = FreeLie::shared(a.generators, a.nu)?;
    Ok(presentation_ideal(&alg, a)? == presentation_ideal(&alg, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verbal::{ideal_closure, verbal_closure};

    #[test]
    fn freely_nilpotent_dimensions() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let g = StructureConstants::freely_nilpotent(&alg).unwrap();
        assert_eq!(g.dim, 14);
        assert_eq!(g.graded_dims(), vec![2, 1, 2, 3, 6]);
        assert_eq!(g.exact_index(), 5);
        assert!(g.is_rational());
    }

    #[test]
    fn quotient_by_v41_has_dimension_ten() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let hw = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        let v41 = alg.irrep_span(&hw[0]).unwrap();
        let mut gens = crate::freelie::GradedSubspace::zero(&alg);
        gens.set_component(5, v41);
        let h = verbal_closure(&alg, &gens).unwrap();
        let g = StructureConstants::quotient(&alg, &h.ideal).unwrap();
        assert_eq!(g.dim, 10);
        assert_eq!(g.exact_index(), 5);
    }

    #[test]
    fn quotient_rejects_ideals_meeting_degree_one() {
        let alg = FreeLie::shared(2, 3).unwrap();
        let mut h = crate::freelie::GradedSubspace::zero(&alg);
        let x = alg.gen_el(0).unwrap();
        h.set_component(1, Subspace::from_vectors(2, [alg.to_coords(&x, 1)]));
        assert!(matches!(
            StructureConstants::quotient(&alg, &h),
            Err(Error::ContainsGenerators)
        ));
    }

    #[test]
    fn presentation_of_free_quotient_roundtrips() {
        let alg = FreeLie::shared(2, 3).unwrap();
        let g = StructureConstants::freely_nilpotent(&alg).unwrap();
        let h = presentation_ideal(&alg, &g).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn presentation_recovers_the_defining_ideal() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let hw = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        let v41 = alg.irrep_span(&hw[0]).unwrap();
        let mut gens = crate::freelie::GradedSubspace::zero(&alg);
        gens.set_component(5, v41);
        let h = verbal_closure(&alg, &gens).unwrap();
        let g = StructureConstants::quotient(&alg, &h.ideal).unwrap();
        let recovered = presentation_ideal(&alg, &g).unwrap();
        assert_eq!(recovered, h.ideal);
    }

    #[test]
    fn kernel_of_single_word_quotient() {
        // Quotient of the rank-2 index-4 algebra by span(xxxy): the kernel at
        // degree 4 is one-dimensional.
        let alg = FreeLie::shared(2, 4).unwrap();
        let v = alg.parse_element("xxxy").unwrap();
        let h = ideal_closure(&alg, &[v]).unwrap();
        let g = StructureConstants::quotient(&alg, &h).unwrap();
        assert_eq!(g.dim, 7);
        let k = presentation_ideal(&alg, &g).unwrap();
        assert_eq!(k.component(4).dim(), 1);
        assert!(!is_pseudo_free(&g).unwrap());
    }

    #[test]
    fn freely_nilpotent_and_abelian_are_pseudo_free() {
        let alg = FreeLie::shared(3, 2).unwrap();
        let g = StructureConstants::freely_nilpotent(&alg).unwrap();
        assert!(is_pseudo_free(&g).unwrap());
        // abelian = quotient by everything of degree >= 2
        let alg2 = FreeLie::shared(3, 1).unwrap();
        let ab = StructureConstants::freely_nilpotent(&alg2).unwrap();
        assert!(is_pseudo_free(&ab).unwrap());
        assert_eq!(ab.brackets.len(), 0);
    }

    #[test]
    fn iso_check_basics() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let free = StructureConstants::freely_nilpotent(&alg).unwrap();
        assert!(iso_check(&free, &free).unwrap());
        let hw41 = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        let hw32 = alg
            .highest_weight_vectors(&"(3,2)".parse().unwrap())
            .unwrap();
        let q = |hwv| {
            let span = alg.irrep_span(hwv).unwrap();
            let mut gens = crate::freelie::GradedSubspace::zero(&alg);
            gens.set_component(5, span);
            let h = verbal_closure(&alg, &gens).unwrap();
            StructureConstants::quotient(&alg, &h.ideal).unwrap()
        };
        let a = q(&hw41[0]);
        let b = q(&hw32[0]);
        assert!(!iso_check(&a, &b).unwrap());
        let not_pf = {
            let alg4 = FreeLie::shared(2, 4).unwrap();
            let v = alg4.parse_element("xxxy").unwrap();
            let h = ideal_closure(&alg4, &[v]).unwrap();
            StructureConstants::quotient(&alg4, &h).unwrap()
        };
        assert!(matches!(
            iso_check(&not_pf, &not_pf),
            Err(Error::NotPseudoFree)
        ));
    }
}
