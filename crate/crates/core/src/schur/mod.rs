//! Polynomial representation theory of GL(V) on the graded pieces of a free
//! Lie algebra: Weyl dimensions, highest weight vectors, irreducible
//! subspaces, and isotypic decompositions.
//!
//! The torus action is realized through the multidegree grading; raising and
//! lowering operators are the degree-zero derivations `e_i: x_{i+1} -> x_i`
//! and `f_i: x_i -> x_{i+1}`.

pub mod characters;
pub mod partitions;

use std::collections::BTreeMap;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};
use crate::freelie::{Derivation, FreeLie, LieElement, WordId};

pub use characters::{free_lie_multiplicity, mn_character};
pub use partitions::{partitions, Partition};

/// Dimension of the Schur module labelled by `lambda` for GL(m): the product
/// over i < j of (lambda_i - lambda_j + j - i)/(j - i); zero when the label
/// has more than `m` rows.
pub fn weyl_dim(lambda: &Partition, m: usize) -> u64 {
    if lambda.num_parts() > m {
        return 0;
    }
    let l = lambda.padded(m);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        for j in (i + 1)..m {
            num *= BigInt::from(l[i] as i64 - l[j] as i64 + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let q = BigRational::new(num, den);
    debug_assert!(q.is_integer() && !q.is_negative());
    let (digits_sign, digits) = q.to_integer().to_u64_digits();
    debug_assert!(digits.len() <= 1);
    let _ = digits_sign;
    digits.first().copied().unwrap_or(0)
}

/// One isotypic constituent of a decomposed subspace.
#[derive(Clone, Debug)]
pub struct IsotypicEntry {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub dim_each: u64,
    /// Canonical ordered basis of the highest-weight space of this
    /// constituent inside the decomposed subspace.
    pub hw_vectors: Vec<LieElement>,
}

/// Isotypic decomposition of a GL(V)-invariant subspace of one graded piece.
#[derive(Clone, Debug)]
pub struct IsotypicReport {
    pub degree: usize,
    pub m: usize,
    pub entries: Vec<IsotypicEntry>,
    pub total_dim: usize,
}

impl IsotypicReport {
    /// Multiset of (lambda, multiplicity) pairs, e.g. for table comparisons.
    pub fn multiset(&self) -> BTreeMap<Partition, usize> {
        self.entries
            .iter()
            .map(|e| (e.lambda.clone(), e.multiplicity))
            .collect()
    }

    /// Deterministic text rendering: one `lambda multiplicity dim` line per
    /// constituent.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{:<12} {:>4} {:>6}\n",
                e.lambda.to_string(),
                e.multiplicity,
                e.dim_each
            ));
        }
        out.push_str(&format!("total dimension {}\n", self.total_dim));
        out
    }

    /// Compact form like `V(5,1)+2V(4,2)`.
    pub fn summary(&self) -> String {
        render_multiset(&self.multiset())
    }
}

pub fn render_multiset(ms: &BTreeMap<Partition, usize>) -> String {
    if ms.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    // Sort by (size, reverse-lex within size) to match the table convention.
    let mut keys: Vec<&Partition> = ms.keys().collect();
    keys.sort_by_key(|p| {
        (
            p.size(),
            p.parts()
                .to_vec()
                .iter()
                .map(|&x| -(x as i64))
                .collect::<Vec<_>>(),
        )
    });
    for lam in keys {
        let mult = ms[lam];
        if mult == 1 {
            parts.push(format!("V{lam}"));
        } else {
            parts.push(format!("{mult}V{lam}"));
        }
    }
    parts.join("+")
}

impl FreeLie {
    /// Word ids of one degree with the given multidegree, in table order.
    pub fn weight_space_words(&self, multidegree: &[u32]) -> Vec<WordId> {
        let n: u32 = multidegree.iter().sum();
        assert!(multidegree.len() == self.generators());
        let md: Vec<u8> = multidegree.iter().map(|&d| d as u8).collect();
        self.degree_words(n as usize)
            .filter(|&w| self.word_multidegree(w) == md.as_slice())
            .collect()
    }

    /// Canonical basis of the space of highest weight vectors of weight
    /// `lambda` in the degree-|lambda| piece: multidegree-`lambda` vectors
    /// annihilated by every raising operator. The basis is the reduced
    /// echelon form over the Hall-word coordinates, rescaled to coprime
    /// integer entries with positive leading coefficient.
    pub fn highest_weight_vectors(&self, lambda: &Partition) -> Result<Vec<LieElement>> {
        let key: Vec<u32> = lambda.padded(self.generators());
        if lambda.num_parts() > self.generators() {
            return Ok(Vec::new());
        }
        if let Some(hit) = self.hw_cache().lock().unwrap().get(&key) {
            return Ok(hit.as_ref().clone());
        }
        let n = lambda.size();
        if n > self.nilpotency_index() {
            return Err(Error::DegreeOverflow {
                degree: n,
                nu: self.nilpotency_index(),
            });
        }
        let words = self.weight_space_words(&key);
        let dim_w = words.len();
        let m = self.generators();
        // Stack the raising maps e_i over all i; kernel = highest weight space.
        let mut matrix_rows: Vec<Vec<Scalar>> = Vec::new();
        let mut raise_images: Vec<Vec<LieElement>> = Vec::new();
        for i in 0..m.saturating_sub(1) {
            let e = Derivation::raising(self, i)?;
            let imgs: Vec<LieElement> = words
                .iter()
                .map(|&w| e.apply(self, &self.word_el(w)))
                .collect::<Result<_>>()?;
            raise_images.push(imgs);
        }
        // Build the transpose directly: rows indexed by (i, target word),
        // columns by source words.
        for (i, imgs) in raise_images.iter().enumerate() {
            let mut target: Vec<u32> = key.clone();
            if target[i + 1] == 0 {
                continue; // e_i annihilates the whole weight space
            }
            target[i] += 1;
            target[i + 1] -= 1;
            let tgt_words = self.weight_space_words(&target);
            for &tw in &tgt_words {
                let mut row = Vec::with_capacity(dim_w);
                for img in imgs {
                    row.push(img.coeff(tw));
                }
                matrix_rows.push(row);
            }
        }
        let kernel = if matrix_rows.is_empty() {
            Subspace::full(dim_w)
        } else {
            let m = crate::exact::Matrix::from_rows(matrix_rows).unwrap();
            Subspace::from_vectors(dim_w, m.kernel())
        };
        let vectors: Vec<LieElement> = kernel
            .rows()
            .iter()
            .map(|row| {
                let scaled = clear_denominators(row);
                self.from_terms(
                    words
                        .iter()
                        .cloned()
                        .zip(scaled.into_iter())
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect();
        let arc = Arc::new(vectors.clone());
        self.hw_cache().lock().unwrap().insert(key, arc);
        Ok(vectors)
    }

    /// Smallest GL(V)-invariant subspace containing a highest weight vector,
    /// obtained by closing under the lowering operators. Errors if the input
    /// is not annihilated by every raising operator.
    pub fn irrep_span(&self, hwv: &LieElement) -> Result<Subspace> {
        self.check_ambient(hwv)?;
        let Some(n) = hwv.homogeneous_degree(self) else {
            return Err(Error::NotHighestWeight("input not homogeneous".into()));
        };
        let m = self.generators();
        for i in 0..m.saturating_sub(1) {
            let e = Derivation::raising(self, i)?;
            if !e.apply(self, hwv)?.is_zero() {
                return Err(Error::NotHighestWeight(format!(
                    "raising operator e_{} does not annihilate the input",
                    i + 1
                )));
            }
        }
        let dim_n = self.degree_dim(n);
        let mut span = Subspace::from_vectors(dim_n, [self.to_coords(hwv, n)]);
        let lowerings: Vec<Derivation> = (0..m.saturating_sub(1))
            .map(|i| Derivation::lowering(self, i))
            .collect::<Result<_>>()?;
        let mut queue = vec![hwv.clone()];
        while let Some(v) = queue.pop() {
            for f in &lowerings {
                let w = f.apply(self, &v)?;
                if w.is_zero() {
                    continue;
                }
                let coords = self.to_coords(&w, n);
                if !span.contains(&coords) {
                    span = span.sum(&Subspace::from_vectors(dim_n, [coords]))?;
                    queue.push(w);
                }
            }
        }
        Ok(span)
    }

    /// Checks that a degree-`n` subspace is GL(V)-invariant: multidegree
    /// homogeneity (torus) plus stability under all raising and lowering
    /// operators. Exact and complete for these algebraic group actions.
    pub fn verify_invariant(&self, s: &Subspace, n: usize) -> Result<()> {
        if s.ambient() != self.degree_dim(n) {
            return Err(Error::DimensionMismatch {
                expected: self.degree_dim(n),
                got: s.ambient(),
            });
        }
        if s.is_zero() || s.is_full() {
            return Ok(());
        }
        // Multidegree homogeneity: every reduced row must live in a single
        // multidegree bucket.
        let words: Vec<WordId> = self.degree_words(n).collect();
        for row in s.rows() {
            let mut md: Option<&[u8]> = None;
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let wmd = self.word_multidegree(words[k]);
                match md {
                    None => md = Some(wmd),
                    Some(prev) if prev != wmd => {
                        return Err(Error::NotInvariant(
                            "a basis vector mixes multidegrees (not torus-stable)".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        let m = self.generators();
        for i in 0..m.saturating_sub(1) {
            for op in [
                Derivation::raising(self, i)?,
                Derivation::lowering(self, i)?,
            ] {
                for row in s.rows() {
                    let v = self.from_coords(n, row);
                    let w = op.apply(self, &v)?;
                    if !w.is_zero() && !s.contains(&self.to_coords(&w, n)) {
                        return Err(Error::NotInvariant(format!(
                            "not stable under a degree-zero derivation (i = {})",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Isotypic decomposition of a GL(V)-invariant subspace of the degree-`n`
    /// piece. Errors if the input is not invariant.
    pub fn decompose(&self, s: &Subspace, n: usize) -> Result<IsotypicReport> {
        self.verify_invariant(s, n)?;
        let m = self.generators();
        let mut entries = Vec::new();
        let mut accounted = 0usize;
        for lambda in partitions(n, m) {
            let hw = self.highest_weight_vectors(&lambda)?;
            if hw.is_empty() {
                continue;
            }
            // Coefficient combinations of the hw basis that land inside s.
            let residuals: Vec<Vec<Scalar>> =
                hw.iter().map(|v| s.reduce(&self.to_coords(v, n))).collect();
            let resm = crate::exact::Matrix::from_rows(residuals).unwrap();
            let coeff_kernel = resm.transpose().kernel();
            let mult = coeff_kernel.len();
            if mult == 0 {
                continue;
            }
            let hw_vectors: Vec<LieElement> = coeff_kernel
                .iter()
                .map(|c| {
                    let mut acc = self.zero_el();
                    for (j, coef) in c.iter().enumerate() {
                        if !coef.is_zero() {
                            acc = self.add(&acc, &self.scale(coef, &hw[j])).unwrap();
                        }
                    }
                    let coords = clear_denominators(&self.to_coords(&acc, n));
                    self.from_coords(n, &coords)
                })
                .collect();
            let dim_each = weyl_dim(&lambda, m);
            accounted += mult * dim_each as usize;
            entries.push(IsotypicEntry {
                lambda,
                multiplicity: mult,
                dim_each,
                hw_vectors,
            });
        }
        if accounted != s.dim() {
            return Err(Error::Inconsistency(format!(
                "isotypic dimensions sum to {} but the subspace has dimension {}",
                accounted,
                s.dim()
            )));
        }
        Ok(IsotypicReport {
            degree: n,
            m,
            entries,
            total_dim: s.dim(),
        })
    }

    /// Decomposition of the full degree-`n` piece.
    pub fn decompose_degree(&self, n: usize) -> Result<IsotypicReport> {
        self.decompose(&Subspace::full(self.degree_dim(n)), n)
    }
}

/// Rescales a rational vector to coprime integer entries with positive
/// leading coefficient. Gaussian entries are scaled by the common rational
/// denominator only.
fn clear_denominators(row: &[Scalar]) -> Vec<Scalar> {
    use num::Integer;
    let mut lcm = BigInt::one();
    for c in row {
        if !c.is_zero() {
            lcm = lcm.lcm(c.re().denom());
            lcm = lcm.lcm(c.im().denom());
        }
    }
    let mut gcd = BigInt::zero();
    let scale = Scalar::from_parts(BigRational::from_integer(lcm), BigRational::zero());
    let scaled: Vec<Scalar> = row.iter().map(|c| c * &scale).collect();
    for c in &scaled {
        gcd = gcd.gcd(&c.re().to_integer());
        gcd = gcd.gcd(&c.im().to_integer());
    }
    if gcd.is_zero() {
        return scaled;
    }
    let mut result: Vec<Scalar> = {
        let inv = Scalar::from_parts(BigRational::from_integer(gcd), BigRational::zero())
            .inv()
            .unwrap();
        scaled.iter().map(|c| c * &inv).collect()
    };
    if let Some(lead) = result.iter().find(|c| !c.is_zero()) {
        if lead.re().is_negative() || (lead.re().is_zero() && lead.im().is_negative()) {
            result = result.iter().map(|c| -c).collect();
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::witt_dim;

    #[test]
    fn weyl_dimension_table_values() {
        let d = |s: &str, m: usize| weyl_dim(&s.parse().unwrap(), m);
        assert_eq!(d("(4,1)", 2), 4);
        assert_eq!(d("(2,1,1)", 2), 0);
        assert_eq!(d("(3,2)", 3), 15);
        assert_eq!(d("(3,1)", 4), 45);
        assert_eq!(d("(5,2)", 5), 840);
    }

    #[test]
    fn dimension_sum_identity() {
        // sum over lambda of multiplicity * dim equals the graded dimension.
        for m in 2..=4 {
            for n in 2..=7 {
                let total: u64 = partitions(n, m)
                    .iter()
                    .map(|l| free_lie_multiplicity(l).unwrap() * weyl_dim(l, m))
                    .sum();
                assert_eq!(total as usize, witt_dim(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn hw_vector_counts_match_multiplicities() {
        let alg = FreeLie::shared(2, 7).unwrap();
        for n in 2..=7 {
            for lambda in partitions(n, 2) {
                let hw = alg.highest_weight_vectors(&lambda).unwrap();
                assert_eq!(
                    hw.len() as u64,
                    free_lie_multiplicity(&lambda).unwrap(),
                    "lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn hwv_of_41_spans_the_same_line_as_xxxxy() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let hw = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        assert_eq!(hw.len(), 1);
        let v = alg.parse_element("xxxxy").unwrap();
        let dim = alg.degree_dim(5);
        let span = Subspace::from_vectors(dim, [alg.to_coords(&hw[0], 5)]);
        assert!(span.contains(&alg.to_coords(&v, 5)));
    }

    #[test]
    fn irrep_span_dimensions() {
        let alg = FreeLie::shared(2, 6).unwrap();
        let hw41 = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        let span = alg.irrep_span(&hw41[0]).unwrap();
        assert_eq!(span.dim(), 4);
        let hw33 = alg
            .highest_weight_vectors(&"(3,3)".parse().unwrap())
            .unwrap();
        assert_eq!(alg.irrep_span(&hw33[0]).unwrap().dim(), 1);
    }

    #[test]
    fn irrep_span_of_41_matches_the_explicit_basis() {
        // Explicit spanning monomials of the four weight lines.
        let alg = FreeLie::shared(2, 5).unwrap();
        let hw = alg
            .highest_weight_vectors(&"(4,1)".parse().unwrap())
            .unwrap();
        let span = alg.irrep_span(&hw[0]).unwrap();
        let basis = [
            "xxxxy",
            "xxyxy + xyxxy + yxxxy",
            "yyxxy + yxyxy + xyyxy",
            "yyyxy",
        ];
        let vectors: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|s| alg.to_coords(&alg.parse_element(s).unwrap(), 5))
            .collect();
        let explicit = Subspace::from_vectors(alg.degree_dim(5), vectors);
        assert_eq!(explicit.dim(), 4);
        assert_eq!(span, explicit);
    }

    #[test]
    fn rejects_non_highest_weight_input() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let v = alg.parse_element("xyxxy").unwrap(); // weight (3,2), not annihilated
        assert!(matches!(
            alg.irrep_span(&v),
            Err(Error::NotHighestWeight(_))
        ));
    }

    #[test]
    fn decompose_full_pieces() {
        let alg = FreeLie::shared(2, 6).unwrap();
        let rep = alg.decompose_degree(6).unwrap();
        let ms = rep.multiset();
        let want: BTreeMap<Partition, usize> = [("(5,1)", 1), ("(4,2)", 1), ("(3,3)", 1)]
            .iter()
            .map(|(s, m)| (s.parse().unwrap(), *m))
            .collect();
        assert_eq!(ms, want);

        let alg3 = FreeLie::shared(3, 5).unwrap();
        let rep = alg3.decompose_degree(5).unwrap();
        let want: BTreeMap<Partition, usize> =
            [("(4,1)", 1), ("(3,2)", 1), ("(3,1,1)", 1), ("(2,2,1)", 1)]
                .iter()
                .map(|(s, m)| (s.parse().unwrap(), *m))
                .collect();
        assert_eq!(rep.multiset(), want);
    }

    #[test]
    fn decompose_zero_subspace_is_empty() {
        let alg = FreeLie::shared(2, 4).unwrap();
        let rep = alg
            .decompose(&Subspace::zero(alg.degree_dim(4)), 4)
            .unwrap();
        assert!(rep.entries.is_empty());
        assert_eq!(rep.total_dim, 0);
    }

    #[test]
    fn decompose_rejects_non_invariant_input() {
        let alg = FreeLie::shared(2, 4).unwrap();
        let v = alg.parse_element("xxxy").unwrap();
        let s = Subspace::from_vectors(alg.degree_dim(4), [alg.to_coords(&v, 4)]);
        assert!(alg.decompose(&s, 4).is_err());
    }

    #[test]
    fn decompose_recovers_direct_sums_of_irreducibles() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let hw52 = alg
            .highest_weight_vectors(&"(5,2)".parse().unwrap())
            .unwrap();
        let hw61 = alg
            .highest_weight_vectors(&"(6,1)".parse().unwrap())
            .unwrap();
        let s = alg
            .irrep_span(&hw52[0])
            .unwrap()
            .sum(&alg.irrep_span(&hw52[1]).unwrap())
            .unwrap()
            .sum(&alg.irrep_span(&hw61[0]).unwrap())
            .unwrap();
        let rep = alg.decompose(&s, 7).unwrap();
        let want: BTreeMap<Partition, usize> = [("(6,1)", 1), ("(5,2)", 2)]
            .iter()
            .map(|(s, m)| (s.parse().unwrap(), *m))
            .collect();
        assert_eq!(rep.multiset(), want);
    }

    #[test]
    fn irrep_span_is_stable_under_random_substitutions() {
        use rand::{Rng, SeedableRng};
        let alg = FreeLie::shared(2, 6).unwrap();
        let hw = alg
            .highest_weight_vectors(&"(4,2)".parse().unwrap())
            .unwrap();
        let span = alg.irrep_span(&hw[0]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let mat = crate::exact::Matrix::from_fn(2, 2, |_, _| {
                Scalar::from_int(rng.gen_range(-3..=3i64))
            });
            for row in span.rows() {
                let v = alg.from_coords(6, row);
                let img = alg.gl_action(&mat, &v).unwrap();
                assert!(span.contains(&alg.to_coords(&img, 6)));
            }
        }
    }
}
