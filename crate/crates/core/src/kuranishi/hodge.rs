//! Exact Hodge theory on the invariant Dolbeault complex.
//!
//! The complex is `Λ^q conj(g)* ⊗ g` with the Chevalley-Eilenberg
//! differential of the conjugate algebra; the algebra factor is inert, so
//! every operator is (wedge-level matrix) ⊗ identity and only the wedge-level
//! matrices are stored. The declared basis is orthonormal, which keeps the
//! adjoint a conjugate transpose and the whole package inside Q(i).

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::verbal::StructureConstants;

use super::forms::{Form, WedgeContext};

/// Column-sparse matrix wrapper for fast application to sparse forms.
pub struct SparseCols {
    pub rows: usize,
    pub cols: usize,
    cols_data: Vec<Vec<(u32, Scalar)>>,
}

impl SparseCols {
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut cols_data = vec![Vec::new(); m.cols()];
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                if !m[(i, j)].is_zero() {
                    cols_data[j].push((i as u32, m[(i, j)].clone()));
                }
            }
        }
        SparseCols {
            rows: m.rows(),
            cols: m.cols(),
            cols_data,
        }
    }

    /// Applies (self ⊗ id) to a form: acts on the wedge index, keeps the
    /// algebra index.
    pub fn apply_form(&self, q_out: usize, f: &Form) -> Form {
        let mut out = Form::zero(q_out);
        for ((i, k), c) in f.entries() {
            for (r, x) in &self.cols_data[*i as usize] {
                out.add_term((*r, *k), &(x * c));
            }
        }
        out
    }
}

/// The conjugate-pair bookkeeping: the algebra and its entrywise conjugate,
/// whose bracket satisfies `[conj x, conj y] = conj [x, y]`.
pub struct ConjugatePair {
    pub g: StructureConstants,
    pub gbar: StructureConstants,
}

impl ConjugatePair {
    pub fn new(g: &StructureConstants) -> Self {
        let gbar = g.conj();
        debug_assert!(check_conj_bracket(g, &gbar));
        ConjugatePair { g: g.clone(), gbar }
    }
}

fn check_conj_bracket(g: &StructureConstants, gbar: &StructureConstants) -> bool {
    g.brackets.iter().all(|(k, v)| {
        let w = gbar.brackets.get(k).cloned().unwrap_or_default();
        w == v.iter().map(|(i, c)| (*i, c.conj())).collect::<Vec<_>>()
    })
}

/// Exact Hodge package: differentials, adjoints, Laplacians, harmonic
/// projectors and Green operators of the invariant Dolbeault complex, all at
/// wedge level.
pub struct HodgePackage {
    pub d: usize,
    pub q_max: usize,
    pub ctx: WedgeContext,
    /// D_q : Λ^q → Λ^{q+1} for q = 0..=q_max.
    pub diff: Vec<Matrix>,
    /// Adjoints D_q^* : Λ^{q+1} → Λ^q.
    pub adjoint: Vec<Matrix>,
    /// Δ_q for q = 0..=q_max.
    pub laplacian: Vec<Matrix>,
    /// Harmonic projector H_q.
    pub harmonic: Vec<Matrix>,
    /// Green operator G_q (inverse of Δ_q on the complement of harmonics).
    pub green: Vec<Matrix>,
    diff_cols: Vec<SparseCols>,
    adjoint_cols: Vec<SparseCols>,
    harmonic_cols: Vec<SparseCols>,
    /// -D_1^* G_2, the propagator of the power-series recursion.
    propagator: SparseCols,
}

/// Builds the Hodge package of the invariant Dolbeault complex of `g`.
/// Requires a valid nilpotent input (Jacobi is re-checked).
pub fn dolbeault(g: &StructureConstants, q_max: usize) -> Result<HodgePackage> {
    g.verify_jacobi()?;
    let d = g.dim;
    if q_max < 2 {
        return Err(Error::Input("the Hodge package needs q_max >= 2".into()));
    }
    let pair = ConjugatePair::new(g);
    let ctx = WedgeContext::new(d, q_max + 1);
    // d e^k = -sum_{i<j} cbar^k_{ij} e^i ∧ e^j on dual generators.
    let mut d1_entries: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); d];
    for ((i, j), v) in &pair.gbar.brackets {
        let wedge_idx = ctx.subset_index(2, &[*i as u8, *j as u8]);
        for (k, c) in v {
            d1_entries[*k as usize].push((wedge_idx, -c));
        }
    }
    let mut diff = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let rows = ctx.count(q + 1);
        let cols = ctx.count(q);
        let mut m = Matrix::zero(rows, cols);
        if q >= 1 {
            // anti-derivation: d(e^{i_1...i_q}) = sum_t (-1)^{t-1} d e^{i_t} ∧ rest
            for col in 0..cols {
                let subset = ctx.subset(q, col as u32).to_vec();
                for (t, &it) in subset.iter().enumerate() {
                    let rest: Vec<u8> = subset
                        .iter()
                        .enumerate()
                        .filter(|(s, _)| *s != t)
                        .map(|(_, &x)| x)
                        .collect();
                    let tsign = if t % 2 == 0 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    for (pair_idx, c) in &d1_entries[it as usize] {
                        let pair_subset = ctx.subset(2, *pair_idx).to_vec();
                        if let Some((wsign, merged)) = ctx.wedge(&pair_subset, &rest) {
                            let row = ctx.subset_index(q + 1, &merged) as usize;
                            let mut coef = &tsign * c;
                            if wsign < 0 {
                                coef = -coef;
                            }
                            m[(row, col)] += &coef;
                        }
                    }
                }
            }
        }
        // q = 0: trivial coefficients, D_0 = 0.
        diff.push(m);
    }
    let adjoint: Vec<Matrix> = diff.iter().map(Matrix::conj_transpose).collect();
    let mut laplacian = Vec::with_capacity(q_max + 1);
    let mut harmonic = Vec::with_capacity(q_max + 1);
    let mut green = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let n = ctx.count(q);
        let mut lap = adjoint[q].mul(&diff[q]);
        if q >= 1 {
            lap = lap.add(&diff[q - 1].mul(&adjoint[q - 1]));
        }
        // Harmonic projector from an orthogonal kernel basis.
        let kernel = lap.kernel();
        let h = if kernel.is_empty() {
            Matrix::zero(n, n)
        } else {
            let k = Matrix::from_rows(kernel).unwrap().transpose(); // columns = basis
            let gram = k.conj_transpose().mul(&k);
            let gram_inv = gram
                .inverse()
                .ok_or_else(|| Error::Inconsistency("kernel Gram matrix is singular".into()))?;
            k.mul(&gram_inv).mul(&k.conj_transpose())
        };
        // Green operator: (Δ + H)^{-1} (I - H); Δ + H is invertible because
        // it is the identity on harmonics and Δ on their complement.
        let shifted = lap.add(&h);
        let inv = shifted.inverse().ok_or_else(|| {
            Error::Inconsistency("Laplacian + harmonic projector singular".into())
        })?;
        let id = Matrix::identity(n);
        let g_op = inv.mul(&id.sub(&h));
        laplacian.push(lap);
        harmonic.push(h);
        green.push(g_op);
    }
    let diff_cols = diff.iter().map(SparseCols::from_matrix).collect();
    let adjoint_cols = adjoint.iter().map(SparseCols::from_matrix).collect();
    let harmonic_cols = harmonic.iter().map(SparseCols::from_matrix).collect();
    let propagator = {
        let a = adjoint[1].mul(&green[2]);
        SparseCols::from_matrix(&a.map(|c| -c))
    };
    Ok(HodgePackage {
        d,
        q_max,
        ctx,
        diff,
        adjoint,
        laplacian,
        harmonic,
        green,
        diff_cols,
        adjoint_cols,
        harmonic_cols,
        propagator,
    })
}

impl HodgePackage {
    /// The Dolbeault differential on a q-form.
    pub fn dbar(&self, f: &Form) -> Form {
        self.diff_cols[f.q].apply_form(f.q + 1, f)
    }

    /// The adjoint differential on a (q+1)-form.
    pub fn dbar_star(&self, f: &Form) -> Form {
        assert!(f.q >= 1);
        self.adjoint_cols[f.q - 1].apply_form(f.q - 1, f)
    }

    pub fn harmonic_part(&self, f: &Form) -> Form {
        self.harmonic_cols[f.q].apply_form(f.q, f)
    }

    /// One step of the power-series recursion: `-dbar* G` applied to a
    /// 2-form.
    pub fn propagate(&self, f: &Form) -> Form {
        assert_eq!(f.q, 2);
        self.propagator.apply_form(1, f)
    }

    /// Reduced-echelon basis of the dbar-closed dual generators: the
    /// annihilator of [conj g, conj g]. Tensoring with the algebra basis
    /// gives the harmonic 1-forms.
    pub fn closed_dual_rows(&self) -> Vec<Vec<Scalar>> {
        use crate::exact::Subspace;
        let kernel = self.diff[1].kernel();
        Subspace::from_vectors(self.d, kernel).rows().to_vec()
    }

    /// Basis of the harmonic (0,1)-forms with values in the algebra:
    /// `alpha_a ⊗ e_k` over the closed dual rows, ordered by (a, k).
    pub fn h1_basis(&self) -> Vec<Form> {
        let rows = self.closed_dual_rows();
        let mut out = Vec::with_capacity(rows.len() * self.d);
        for row in &rows {
            for k in 0..self.d {
                let mut f = Form::zero(1);
                for (i, c) in row.iter().enumerate() {
                    f.add_term((self.ctx.subset_index(1, &[i as u8]), k as u32), c);
                }
                out.push(f);
            }
        }
        out
    }

    /// The full matrix of an operator on `Λ^q ⊗ g`, i.e. wedge-matrix ⊗ id.
    pub fn tensored(&self, wedge_op: &Matrix) -> Matrix {
        let d = self.d;
        Matrix::from_fn(wedge_op.rows() * d, wedge_op.cols() * d, |i, j| {
            if i % d == j % d {
                wedge_op[(i / d, j / d)].clone()
            } else {
                Scalar::zero()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::FreeLie;

    fn iwasawa() -> StructureConstants {
        let alg = FreeLie::shared(2, 2).unwrap();
        StructureConstants::freely_nilpotent(&alg).unwrap()
    }

    #[test]
    fn abelian_complex_is_trivial() {
        let g = StructureConstants::abelian(3, crate::exact::Field::Rational);
        let pkg = dolbeault(&g, 2).unwrap();
        for q in 0..=2 {
            assert!(pkg.diff[q].is_zero());
            assert_eq!(pkg.harmonic[q], Matrix::identity(pkg.ctx.count(q)));
            assert!(pkg.green[q].is_zero());
        }
        assert_eq!(pkg.h1_basis().len(), 9);
    }

    #[test]
    fn iwasawa_harmonic_one_forms() {
        let pkg = dolbeault(&iwasawa(), 2).unwrap();
        // dbar-closed dual generators: the annihilator of the derived algebra
        // has dimension 2; tensored with the 3-dimensional algebra: 6.
        assert_eq!(pkg.h1_basis().len(), 6);
        // kernel of dbar_1 on forms = 2 * 3
        let full_d1 = pkg.tensored(&pkg.diff[1]);
        assert_eq!(full_d1.cols() - full_d1.rank(), 6);
        for f in pkg.h1_basis() {
            // harmonic
            assert_eq!(pkg.harmonic_part(&f), f);
            assert!(pkg.dbar(&f).is_zero());
        }
    }

    #[test]
    fn complex_squares_to_zero_and_hodge_identities() {
        let pkg = dolbeault(&iwasawa(), 2).unwrap();
        for q in 0..2 {
            assert!(
                pkg.diff[q + 1].mul(&pkg.diff[q]).is_zero(),
                "dbar^2 != 0 at q={q}"
            );
        }
        for q in 0..=2 {
            let n = pkg.ctx.count(q);
            let id = Matrix::identity(n);
            let lap = &pkg.laplacian[q];
            let h = &pkg.harmonic[q];
            let g = &pkg.green[q];
            assert_eq!(lap.mul(g), id.sub(h), "Delta G = 1 - H at q={q}");
            assert_eq!(g.mul(lap), id.sub(h), "G Delta = 1 - H at q={q}");
            assert!(h.mul(g).is_zero(), "H G = 0 at q={q}");
            assert!(g.mul(h).is_zero(), "G H = 0 at q={q}");
            assert_eq!(h.mul(h), h.clone(), "H idempotent at q={q}");
            assert!(lap.mul(h).is_zero(), "Delta H = 0 at q={q}");
            // Laplacian definition
            let mut expect = pkg.adjoint[q].mul(&pkg.diff[q]);
            if q >= 1 {
                expect = expect.add(&pkg.diff[q - 1].mul(&pkg.adjoint[q - 1]));
            }
            assert_eq!(lap, &expect);
        }
    }

    #[test]
    fn adjointness_via_inner_products() {
        let pkg = dolbeault(&iwasawa(), 2).unwrap();
        // <dbar a, b> = <a, dbar* b> for a handful of basis forms
        for i in 0..3u32 {
            for k in 0..3u32 {
                let a = Form::unit(1, i, k);
                for j in 0..pkg.ctx.count(2) as u32 {
                    let b = Form::unit(2, j, k);
                    let lhs = pkg.dbar(&a).inner(&b);
                    let rhs = a.inner(&pkg.dbar_star(&b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
