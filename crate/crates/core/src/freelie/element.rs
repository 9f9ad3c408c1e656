//! Sparse elements of a truncated free Lie algebra and graded subspaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};

use super::{FreeLie, WordId};

/// A sparse linear combination of Lyndon basis words. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement {
    m: usize,
    nu: usize,
    terms: BTreeMap<WordId, Scalar>,
}

impl LieElement {
    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.nu)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (WordId, &Scalar)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coeff(&self, w: WordId) -> Scalar {
        self.terms.get(&w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degree if homogeneous, None for 0 or mixed elements.
    pub fn homogeneous_degree(&self, alg: &FreeLie) -> Option<usize> {
        let mut deg = None;
        for (&w, _) in &self.terms {
            let d = alg.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn conj(&self) -> LieElement {
        LieElement {
            m: self.m,
            nu: self.nu,
            terms: self.terms.iter().map(|(w, c)| (*w, c.conj())).collect(),
        }
    }
}

impl FreeLie {
    pub fn zero_el(&self) -> LieElement {
        LieElement {
            m: self.generators(),
            nu: self.nilpotency_index(),
            terms: BTreeMap::new(),
        }
    }

    pub fn gen_el(&self, i: usize) -> Result<LieElement> {
        let w = self.generator_word(i)?;
        Ok(self.word_el(w))
    }

    pub fn word_el(&self, w: WordId) -> LieElement {
        let mut e = self.zero_el();
        e.terms.insert(w, Scalar::one());
        e
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (WordId, Scalar)>) -> LieElement {
        let mut e = self.zero_el();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = e.terms.entry(w).or_insert_with(Scalar::zero);
            *entry += &c;
            if entry.is_zero() {
                e.terms.remove(&w);
            }
        }
        e
    }

    pub fn check_ambient(&self, v: &LieElement) -> Result<()> {
        if v.m != self.generators() || v.nu != self.nilpotency_index() {
            return Err(Error::AmbientMismatch {
                em: self.generators(),
                enu: self.nilpotency_index(),
                gm: v.m,
                gnu: v.nu,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check_ambient(a)?;
        self.check_ambient(b)?;
        let mut out = a.clone();
        for (&w, c) in &b.terms {
            let entry = out.terms.entry(w).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(&w);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar, a: &LieElement) -> LieElement {
        if c.is_zero() {
            return self.zero_el();
        }
        LieElement {
            m: a.m,
            nu: a.nu,
            terms: a.terms.iter().map(|(w, x)| (*w, c * x)).collect(),
        }
    }

    pub fn sub(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.add(a, &self.scale(&-Scalar::one(), b))
    }

    /// Bilinear extension of the basis-word bracket. Antisymmetric, satisfies
    /// the Jacobi identity, truncates silently above the nilpotency index.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check_ambient(a)?;
        self.check_ambient(b)?;
        let mut acc: BTreeMap<WordId, Scalar> = BTreeMap::new();
        for (&wa, ca) in &a.terms {
            for (&wb, cb) in &b.terms {
                if self.word_degree(wa) + self.word_degree(wb) > self.nilpotency_index() {
                    continue;
                }
                let c = ca * cb;
                for (w, k) in self.bracket_words(wa, wb).iter() {
                    let entry = acc.entry(*w).or_insert_with(Scalar::zero);
                    *entry += &(&c * k);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LieElement {
            m: a.m,
            nu: a.nu,
            terms: acc,
        })
    }

    pub fn degree_part(&self, a: &LieElement, n: usize) -> LieElement {
        LieElement {
            m: a.m,
            nu: a.nu,
            terms: a
                .terms
                .iter()
                .filter(|(&w, _)| self.word_degree(w) == n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Splits into multihomogeneous parts; the sum of the parts reconstructs
    /// the element.
    pub fn multidegree_split(&self, a: &LieElement) -> Vec<(Vec<u8>, LieElement)> {
        let mut buckets: BTreeMap<Vec<u8>, LieElement> = BTreeMap::new();
        for (&w, c) in &a.terms {
            let md = self.word_multidegree(w).to_vec();
            let e = buckets.entry(md).or_insert_with(|| self.zero_el());
            e.terms.insert(w, c.clone());
        }
        buckets.into_iter().collect()
    }

    /// Dense coordinates of the degree-`n` part over the degree-`n` words.
    pub fn to_coords(&self, a: &LieElement, n: usize) -> Vec<Scalar> {
        let range = self.degree_words(n);
        let start = range.start;
        let mut v = vec![Scalar::zero(); (range.end - range.start) as usize];
        for (&w, c) in &a.terms {
            if self.word_degree(w) == n {
                v[(w - start) as usize] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, n: usize, coords: &[Scalar]) -> LieElement {
        let range = self.degree_words(n);
        assert_eq!(coords.len(), (range.end - range.start) as usize);
        let mut e = self.zero_el();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(range.start + k as WordId, c.clone());
            }
        }
        e
    }
}

/// A graded subspace of the truncated free Lie algebra: one canonical span
/// per degree `1..=nu` over that degree's Hall-word coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    m: usize,
    nu: usize,
    comps: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn zero(alg: &FreeLie) -> Self {
        GradedSubspace {
            m: alg.generators(),
            nu: alg.nilpotency_index(),
            comps: (1..=alg.nilpotency_index())
                .map(|n| Subspace::zero(alg.degree_dim(n)))
                .collect(),
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.nu)
    }

    pub fn component(&self, n: usize) -> &Subspace {
        &self.comps[n - 1]
    }

    pub fn set_component(&mut self, n: usize, s: Subspace) {
        assert_eq!(s.ambient(), self.comps[n - 1].ambient());
        self.comps[n - 1] = s;
    }

    pub fn dim(&self) -> usize {
        self.comps.iter().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|s| s.is_zero())
    }

    pub fn contains(&self, alg: &FreeLie, v: &LieElement) -> bool {
        for n in 1..=self.nu {
            let part = alg.degree_part(v, n);
            if part.is_zero() {
                continue;
            }
            if !self.comps[n - 1].contains(&alg.to_coords(&part, n)) {
                return false;
            }
        }
        true
    }

    pub fn contains_graded(&self, other: &GradedSubspace) -> bool {
        self.comps
            .iter()
            .zip(&other.comps)
            .all(|(a, b)| a.contains_subspace(b))
    }

    /// Degree-n spanning elements.
    pub fn elements(&self, alg: &FreeLie, n: usize) -> Vec<LieElement> {
        self.comps[n - 1]
            .rows()
            .iter()
            .map(|r| alg.from_coords(n, r))
            .collect()
    }

    pub fn from_elements(alg: &FreeLie, els: &[LieElement]) -> Result<Self> {
        let mut by_degree: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); alg.nilpotency_index()];
        for e in els {
            alg.check_ambient(e)?;
            for n in 1..=alg.nilpotency_index() {
                let part = alg.degree_part(e, n);
                if !part.is_zero() {
                    by_degree[n - 1].push(alg.to_coords(&part, n));
                }
            }
        }
        let mut g = GradedSubspace::zero(alg);
        for n in 1..=alg.nilpotency_index() {
            g.comps[n - 1] =
                Subspace::from_vectors(alg.degree_dim(n), std::mem::take(&mut by_degree[n - 1]));
        }
        Ok(g)
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                em: self.m,
                enu: self.nu,
                gm: other.m,
                gnu: other.nu,
            });
        }
        let comps: Result<Vec<Subspace>> = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.sum(b))
            .collect();
        Ok(GradedSubspace {
            m: self.m,
            nu: self.nu,
            comps: comps?,
        })
    }

    pub fn conj(&self) -> GradedSubspace {
        GradedSubspace {
            m: self.m,
            nu: self.nu,
            comps: self.comps.iter().map(|s| s.conj()).collect(),
        }
    }

    /// Per-degree dimensions, degree 1 first.
    pub fn degree_dims(&self) -> Vec<usize> {
        self.comps.iter().map(|s| s.dim()).collect()
    }

    /// Multidegree-homogeneous refinement of one degree component: for each
    /// multidegree the intersection with that weight space, keyed by the
    /// multidegree. Refines the whole component exactly when it is
    /// torus-stable.
    pub fn multidegree_refinement(&self, alg: &FreeLie, n: usize) -> Vec<(Vec<u8>, Subspace)> {
        let comp = self.component(n);
        let words: Vec<super::WordId> = alg.degree_words(n).collect();
        let mut buckets: std::collections::BTreeMap<Vec<u8>, Vec<usize>> = Default::default();
        for (k, &w) in words.iter().enumerate() {
            buckets
                .entry(alg.word_multidegree(w).to_vec())
                .or_default()
                .push(k);
        }
        let mut out = Vec::new();
        for (md, coords) in buckets {
            let mut unit_rows = Vec::new();
            for &c in &coords {
                let mut v = vec![Scalar::zero(); words.len()];
                v[c] = Scalar::one();
                unit_rows.push(v);
            }
            let weight_space = Subspace::from_vectors(words.len(), unit_rows);
            let inter = comp.intersect(&weight_space).unwrap();
            if !inter.is_zero() {
                out.push((md, inter));
            }
        }
        out
    }
}

impl std::fmt::Debug for GradedSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedSubspace(m={}, nu={}, dims={:?})",
            self.m,
            self.nu,
            self.degree_dims()
        )
    }
}

#[cfg(test)]
mod tests {
    use crate::freelie::FreeLie;

    #[test]
    fn bracket_is_antisymmetric_and_truncates() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let x = alg.gen_el(0).unwrap();
        let y = alg.gen_el(1).unwrap();
        let v = alg.bracket(&x, &y).unwrap();
        assert!(!v.is_zero());
        assert!(alg.bracket(&x, &x).unwrap().is_zero());
        // degree 3 bracket degree 5 in nu=7 dies
        let d3 = alg.bracket(&x, &v).unwrap(); // degree 3
        let d5 = alg.bracket(&x, &alg.bracket(&x, &d3).unwrap()).unwrap(); // degree 5
        assert_eq!(alg.word_degree(d5.terms().next().unwrap().0), 5);
        assert!(alg.bracket(&d3, &d5).unwrap().is_zero());
    }

    #[test]
    fn jacobi_identity_on_generators() {
        let alg = FreeLie::shared(3, 4).unwrap();
        let x: Vec<_> = (0..3).map(|i| alg.gen_el(i).unwrap()).collect();
        let t1 = alg
            .bracket(&x[0], &alg.bracket(&x[1], &x[2]).unwrap())
            .unwrap();
        let t2 = alg
            .bracket(&x[1], &alg.bracket(&x[2], &x[0]).unwrap())
            .unwrap();
        let t3 = alg
            .bracket(&x[2], &alg.bracket(&x[0], &x[1]).unwrap())
            .unwrap();
        let sum = alg.add(&alg.add(&t1, &t2).unwrap(), &t3).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn multidegree_split_reconstructs() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let x = alg.gen_el(0).unwrap();
        let y = alg.gen_el(1).unwrap();
        let xy = alg.bracket(&x, &y).unwrap();
        let mixed = alg.add(&alg.add(&x, &xy).unwrap(), &y).unwrap();
        let parts = alg.multidegree_split(&mixed);
        assert_eq!(parts.len(), 3);
        let mut total = alg.zero_el();
        for (_, p) in &parts {
            total = alg.add(&total, p).unwrap();
        }
        assert_eq!(total, mixed);
    }
}
