//! Linear subspaces in canonical reduced echelon form.
//!
//! A span is stored as the RREF basis of its row space, which makes subspace
//! equality a literal comparison of rows.

use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let vecs: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        for v in &vecs {
            assert_eq!(
                v.len(),
                ambient,
                "vector length differs from ambient dimension"
            );
        }
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vecs).unwrap();
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row_vec(i)).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates without a pivot; they index a complement basis.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the span; the result is supported on non-pivot
    /// coordinates and vanishes iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for j in p..self.ambient {
                if !row[j].is_zero() {
                    let t = &row[j] * &c;
                    out[j] = &out[j] - &t;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(Subspace::from_vectors(
            self.ambient,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        ))
    }

    /// Zassenhaus intersection: reduce [a | a; b | 0] and read the rows whose
    /// left block vanished.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let mut stacked = Vec::new();
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            stacked.push(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_with(Scalar::zero).take(n));
            stacked.push(v);
        }
        let m = Matrix::from_rows(stacked).unwrap();
        let (rref, pivots) = m.rref();
        let mut inter_rows = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            if p >= n {
                inter_rows.push(rref.row(row)[n..].to_vec());
            }
        }
        Ok(Subspace::from_vectors(n, inter_rows))
    }

    pub fn conj(&self) -> Subspace {
        // Entrywise conjugation of an RREF basis is again an RREF basis.
        Subspace::from_vectors(
            self.ambient,
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x.conj()).collect()),
        )
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(data: &[&[i64]]) -> Vec<Vec<Scalar>> {
        data.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn self_intersection_is_identity() {
        let a = Subspace::from_vectors(4, vecs(&[&[1, 2, 0, 0], &[0, 0, 1, 1]]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn complementary_spans() {
        let a = Subspace::from_vectors(4, vecs(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        let b = Subspace::from_vectors(4, vecs(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn dimension_identity() {
        let a = Subspace::from_vectors(3, vecs(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::from_vectors(3, vecs(&[&[1, 0, 0], &[0, 0, 1]]));
        let inter = a.intersect(&b).unwrap();
        let sum = a.sum(&b).unwrap();
        assert_eq!(inter.dim() + sum.dim(), a.dim() + b.dim());
        for r in inter.rows() {
            assert!(a.contains(r) && b.contains(r));
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(3);
        let b = Subspace::zero(4);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }
}
