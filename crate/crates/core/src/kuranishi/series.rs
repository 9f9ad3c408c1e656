//! The Kuranishi power-series recursion, the obstruction map, generator-map
//! extensions, the reality test and the unobstructedness decision.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freelie::{FreeLie, WordId};
use crate::verbal::{is_pseudo_free, presentation_ideal, StructureConstants};

use super::forms::{schouten_poly, Form, FormPoly};
use super::hodge::{dolbeault, HodgePackage};

/// Default bound on `dim g` for the analytic (power-series) computations;
/// the wedge spaces grow cubically beyond it.
pub const DEFAULT_ANALYTIC_CAP: usize = 14;

/// The distinguished power-series solution and its verification data.
pub struct KuranishiData {
    pub n_params: usize,
    pub nu: usize,
    /// Homogeneous pieces `Phi_k` for k = 1..=nu (index k-1).
    pub phi_parts: Vec<FormPoly>,
    /// Bracket convolutions `S_k = (1/2) sum [Phi_i, Phi_{k-i}]` for
    /// k = 2..=nu (index k-2).
    pub s_parts: Vec<FormPoly>,
    /// The full series (sum of the parts).
    pub phi: FormPoly,
    /// Obstruction polynomial: harmonic part of `[Phi, Phi]`.
    pub obs: FormPoly,
    /// Maurer-Cartan defect of the full series.
    pub mc: FormPoly,
    /// Every `S_k` for nu < k <= 2 nu vanished (so `Phi_k = 0` beyond nu).
    pub termination_ok: bool,
    /// `H(Phi_k) = 0` for k >= 2.
    pub harmonic_phi_ok: bool,
    /// Every defect piece `dbar Phi_k + S_k` is harmonic.
    pub recursion_consistent: bool,
}

/// Maurer-Cartan defect `dbar(phi) + (1/2)[phi, phi]` of a degree-1 form
/// polynomial.
pub fn mc_defect(pkg: &HodgePackage, g: &StructureConstants, phi: &FormPoly) -> FormPoly {
    assert_eq!(phi.q, 1);
    let mut out = phi.map_forms(2, |f| pkg.dbar(f));
    let half = Scalar::ratio(1, 2);
    out.add_assign(&schouten_poly(&pkg.ctx, g, phi, phi).scale(&half));
    out
}

/// Maurer-Cartan defect of a constant (t-independent) map, given as a
/// degree-1 form.
pub fn mc_defect_constant(pkg: &HodgePackage, g: &StructureConstants, phi: &Form) -> Form {
    let p = FormPoly::constant(0, phi.clone());
    let defect = mc_defect(pkg, g, &p);
    let value = defect.terms().next().map(|(_, f)| f.clone());
    value.unwrap_or_else(|| Form::zero(2))
}

/// A linear map `conj(g) -> g` as a degree-1 form: column k of the matrix
/// gives the image of the k-th conjugate basis vector.
pub fn linear_map_form(pkg: &HodgePackage, columns: &[Vec<Scalar>]) -> Form {
    let mut f = Form::zero(1);
    for (j, col) in columns.iter().enumerate() {
        let wedge = pkg.ctx.subset_index(1, &[j as u8]);
        for (k, c) in col.iter().enumerate() {
            f.add_term((wedge, k as u32), c);
        }
    }
    f
}

/// Whether a linear map (given by images of the conjugate basis) is a Lie
/// algebra homomorphism `conj(g) -> g`.
pub fn is_homomorphism(g: &StructureConstants, columns: &[Vec<Scalar>]) -> bool {
    let gbar = g.conj();
    let to_sparse = |v: &Vec<Scalar>| -> Vec<(u32, Scalar)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect()
    };
    let cols: Vec<Vec<(u32, Scalar)>> = columns.iter().map(to_sparse).collect();
    for i in 0..g.dim as u32 {
        for j in (i + 1)..g.dim as u32 {
            // Phi([ei, ej]_gbar) vs [Phi(ei), Phi(ej)]_g
            let br = gbar.bracket_basis(i, j);
            let mut lhs: Vec<(u32, Scalar)> = Vec::new();
            for (k, c) in &br {
                for (r, x) in &cols[*k as usize] {
                    lhs.push((*r, c * x));
                }
            }
            let rhs = g.bracket_vecs(&cols[i as usize], &cols[j as usize]);
            let mut acc = std::collections::BTreeMap::new();
            for (k, c) in lhs {
                let e = acc.entry(k).or_insert_with(Scalar::zero);
                *e += &c;
            }
            for (k, c) in rhs {
                let e = acc.entry(k).or_insert_with(Scalar::zero);
                *e -= &c;
            }
            if acc.values().any(|c| !c.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Runs the power-series recursion
/// `Phi_k = -dbar* G ((1/2) sum_{0<i<k} [Phi_i, Phi_{k-i}])`
/// starting from the harmonic basis `Phi_1 = sum t_i mu_i`, truncated at the
/// nilpotency index (the convolutions beyond it are computed and checked to
/// vanish exactly).
pub fn kuranishi_series(g: &StructureConstants, analytic_cap: usize) -> Result<KuranishiData> {
    if g.dim > analytic_cap {
        return Err(Error::ResourceCap(format!(
            "dim {} exceeds the analytic cap {analytic_cap}",
            g.dim
        )));
    }
    let pkg = dolbeault(g, 2)?;
    kuranishi_series_with(&pkg, g)
}

pub fn kuranishi_series_with(pkg: &HodgePackage, g: &StructureConstants) -> Result<KuranishiData> {
    let nu = g.exact_index().max(1);
    let h1 = pkg.h1_basis();
    let n = h1.len();
    let mut phi_1 = FormPoly::zero(1, n);
    for (idx, mu) in h1.iter().enumerate() {
        let mut mono = vec![0u8; n];
        mono[idx] = 1;
        phi_1.add_term(mono, mu.clone());
    }
    let mut phi_parts: Vec<FormPoly> = vec![phi_1];
    let mut s_parts: Vec<FormPoly> = Vec::new();
    let half = Scalar::ratio(1, 2);
    for k in 2..=nu {
        let s_k = convolution(pkg, g, &phi_parts, k, &half);
        let phi_k = s_k.map_forms(1, |f| pkg.propagate(f));
        phi_parts.push(phi_k);
        s_parts.push(s_k);
    }
    // Termination: the convolutions beyond the nilpotency index vanish.
    let mut termination_ok = true;
    for k in (nu + 1)..=(2 * nu) {
        let s_k = convolution(pkg, g, &phi_parts, k, &half);
        if !s_k.is_zero() {
            termination_ok = false;
        }
    }
    let mut phi = FormPoly::zero(1, n);
    for p in &phi_parts {
        phi.add_assign(p);
    }
    // obs = H([Phi, Phi]) = sum_k H(2 S_k); mc defect = sum_k (dbar Phi_k + S_k).
    let two = Scalar::from_int(2);
    let mut obs = FormPoly::zero(2, n);
    let mut mc = phi_parts[0].map_forms(2, |f| pkg.dbar(f));
    let mut harmonic_phi_ok = true;
    let mut recursion_consistent = true;
    for (i, s_k) in s_parts.iter().enumerate() {
        let k = i + 2;
        obs.add_assign(&s_k.scale(&two).map_forms(2, |f| pkg.harmonic_part(f)));
        let mut defect_k = phi_parts[k - 1].map_forms(2, |f| pkg.dbar(f));
        defect_k.add_assign(s_k);
        let harmonic_defect = defect_k.map_forms(2, |f| pkg.harmonic_part(f));
        if harmonic_defect != defect_k {
            recursion_consistent = false;
        }
        mc.add_assign(&defect_k);
        if !phi_parts[k - 1]
            .map_forms(1, |f| pkg.harmonic_part(f))
            .is_zero()
        {
            harmonic_phi_ok = false;
        }
    }
    Ok(KuranishiData {
        n_params: n,
        nu,
        phi_parts,
        s_parts,
        phi,
        obs,
        mc,
        termination_ok,
        harmonic_phi_ok,
        recursion_consistent,
    })
}

fn convolution(
    pkg: &HodgePackage,
    g: &StructureConstants,
    phi_parts: &[FormPoly],
    k: usize,
    half: &Scalar,
) -> FormPoly {
    let n = phi_parts[0].nvars;
    let mut acc = FormPoly::zero(2, n);
    // [a, b] = [b, a] for two 1-forms, so fold the symmetric pairs.
    for i in 1..k {
        let j = k - i;
        if i > j {
            break;
        }
        if i > phi_parts.len() || j > phi_parts.len() {
            continue;
        }
        let prod = schouten_poly(&pkg.ctx, g, &phi_parts[i - 1], &phi_parts[j - 1]);
        if i == j {
            acc.add_assign(&prod.scale(half));
        } else {
            acc.add_assign(&prod);
        }
    }
    acc
}

/// Obstruction map: the harmonic part of `[Phi(t), Phi(t)]` for the
/// distinguished series. The defining equations have total degree at most
/// the nilpotency index.
pub fn obstruction_map(g: &StructureConstants, analytic_cap: usize) -> Result<FormPoly> {
    let data = kuranishi_series(g, analytic_cap)?;
    if data.obs.total_degree() > data.nu {
        return Err(Error::Inconsistency(format!(
            "obstruction equations have degree {} > nilpotency index {}",
            data.obs.total_degree(),
            data.nu
        )));
    }
    Ok(data.obs)
}

/// Outcome of extending a generator map `conj(V) -> g` to a homomorphism
/// `conj(g) -> g`.
pub enum Extension {
    /// Images of the basis classes of `conj(g)` under the unique extension.
    Extends(Vec<Vec<(u32, Scalar)>>),
    /// No extension: the induced free evaluation fails to kill the
    /// conjugated presentation ideal.
    Violated {
        degree: usize,
        row: usize,
        relation: String,
    },
}

/// Tries to extend `x_i bar -> images[i]` to a Lie algebra homomorphism from
/// the conjugate algebra. The unique candidate exists iff the free
/// evaluation kills the conjugate of the presentation ideal; otherwise the
/// violated relation of lowest degree (first echelon row) is reported.
pub fn extend_generator_map(
    g: &StructureConstants,
    images: &[Vec<(u32, Scalar)>],
) -> Result<Extension> {
    let alg = FreeLie::shared(g.generators, g.nu)?;
    let h = presentation_ideal(&alg, g)?;
    let hbar = h.conj();
    for n in 1..=alg.nilpotency_index() {
        let comp = hbar.component(n);
        if comp.is_zero() {
            continue;
        }
        let words: Vec<WordId> = alg.degree_words(n).collect();
        let values = g.eval_words(&alg, images, words.iter().copied())?;
        for (r, row) in comp.rows().iter().enumerate() {
            let mut acc: std::collections::BTreeMap<u32, Scalar> = Default::default();
            for (c, coef) in row.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (k, x) in &values[c] {
                    let e = acc.entry(*k).or_insert_with(Scalar::zero);
                    *e += &(coef * x);
                }
            }
            if acc.values().any(|c| !c.is_zero()) {
                let relation = alg.print_element(&alg.from_coords(n, row));
                return Ok(Extension::Violated {
                    degree: n,
                    row: r,
                    relation,
                });
            }
        }
    }
    // Kernel killed: the extension maps each basis class through the free
    // evaluation of its word.
    let mut basis_words = Vec::with_capacity(g.dim);
    for n in 1..=alg.nilpotency_index() {
        let words: Vec<WordId> = alg.degree_words(n).collect();
        for c in h.component(n).complement_coords() {
            basis_words.push(words[c]);
        }
    }
    let images_of_basis = g.eval_words(&alg, images, basis_words.into_iter())?;
    Ok(Extension::Extends(images_of_basis))
}

/// Reality test for pseudo-free algebras: the presentation ideal equals its
/// entrywise conjugate. Errors when the input is not pseudo-free (the test
/// characterizes `g isomorphic to conj(g)` only in that case).
pub fn reality_check(g: &StructureConstants) -> Result<bool> {
    if !is_pseudo_free(g)? {
        return Err(Error::NotPseudoFree);
    }
    let alg = FreeLie::shared(g.generators, g.nu)?;
    let h = presentation_ideal(&alg, g)?;
    Ok(h == h.conj())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unobstructed,
    Obstructed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Unobstructed => write!(f, "unobstructed"),
            Verdict::Obstructed => write!(f, "obstructed"),
        }
    }
}

pub struct DecideConfig {
    pub analytic_cap: usize,
    pub witness_attempts: usize,
    pub seed: u64,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            analytic_cap: DEFAULT_ANALYTIC_CAP,
            witness_attempts: 300,
            seed: 0,
        }
    }
}

/// A generator map that does not extend to a homomorphism, witnessing an
/// obstructed infinitesimal deformation.
pub struct Witness {
    pub images: Vec<Vec<(u32, Scalar)>>,
    pub degree: usize,
    pub row: usize,
    pub relation: String,
}

pub struct UnobstructedReport {
    pub pseudo_free: bool,
    /// The presentation ideal equals its conjugate. Decisive for pseudo-free
    /// inputs, and still sufficient for the reality condition otherwise.
    pub ideal_conj_equal: bool,
    pub verdict: Verdict,
    pub lattice_rational: bool,
    pub analytic: Option<KuranishiData>,
    pub witness: Option<Witness>,
}

/// Decides unobstructedness by the algebraic criterion (pseudo-free and
/// conjugation-invariant presentation ideal). Within the analytic cap the
/// obstruction polynomial is computed as corroborating evidence; any
/// divergence between the two is reported as a hard internal failure.
pub fn decide_unobstructed(
    g: &StructureConstants,
    config: &DecideConfig,
) -> Result<UnobstructedReport> {
    let pseudo_free = is_pseudo_free(g)?;
    let alg = FreeLie::shared(g.generators, g.nu)?;
    let h = presentation_ideal(&alg, g)?;
    let ideal_conj_equal = h == h.conj();
    let verdict = if pseudo_free && ideal_conj_equal {
        Verdict::Unobstructed
    } else {
        Verdict::Obstructed
    };
    let analytic = if g.dim <= config.analytic_cap {
        Some(kuranishi_series(g, config.analytic_cap)?)
    } else {
        None
    };
    if let Some(data) = &analytic {
        let obs_zero = data.obs.is_zero();
        let mc_zero = data.mc.is_zero();
        if obs_zero != mc_zero {
            return Err(Error::Inconsistency(
                "obstruction polynomial and Maurer-Cartan defect disagree".into(),
            ));
        }
        if (verdict == Verdict::Unobstructed) != obs_zero {
            return Err(Error::Inconsistency(format!(
                "algebraic verdict {verdict} contradicts the obstruction polynomial (zero: {obs_zero})"
            )));
        }
        if !data.termination_ok || !data.recursion_consistent {
            return Err(Error::Inconsistency(
                "power series termination or recursion consistency failed".into(),
            ));
        }
    }
    let witness = if verdict == Verdict::Obstructed {
        find_witness(g, config)?
    } else {
        None
    };
    if verdict == Verdict::Obstructed && witness.is_none() {
        return Err(Error::Inconsistency(
            "obstructed verdict but no non-extendable generator map found".into(),
        ));
    }
    Ok(UnobstructedReport {
        pseudo_free,
        ideal_conj_equal,
        verdict,
        lattice_rational: g.is_rational(),
        analytic,
        witness,
    })
}

/// Searches for a generator map that fails to extend: the identity map when
/// the reality condition fails, otherwise deterministic small perturbations
/// of the identity followed by seeded random maps with small Gaussian
/// integer entries.
fn find_witness(g: &StructureConstants, config: &DecideConfig) -> Result<Option<Witness>> {
    let m = g.generators;
    let identity: Vec<Vec<(u32, Scalar)>> =
        (0..m).map(|i| vec![(i as u32, Scalar::one())]).collect();
    let mut candidates: Vec<Vec<Vec<(u32, Scalar)>>> = vec![identity.clone()];
    // identity plus one generator added to another
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut imgs = identity.clone();
            imgs[i].push((j as u32, Scalar::one()));
            candidates.push(imgs);
        }
    }
    // identity plus one higher-degree basis vector
    for i in 0..m {
        for k in m..g.dim {
            let mut imgs = identity.clone();
            imgs[i].push((k as u32, Scalar::one()));
            candidates.push(imgs);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.witness_attempts {
        let imgs: Vec<Vec<(u32, Scalar)>> = (0..m)
            .map(|_| {
                (0..g.dim as u32)
                    .filter_map(|k| {
                        let re = rng.gen_range(-1..=1i64);
                        let im = rng.gen_range(-1..=1i64);
                        if re == 0 && im == 0 {
                            return None;
                        }
                        let c = &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im));
                        Some((k, c))
                    })
                    .collect()
            })
            .collect();
        candidates.push(imgs);
    }
    for imgs in candidates {
        if let Extension::Violated {
            degree,
            row,
            relation,
        } = extend_generator_map(g, &imgs)?
        {
            return Ok(Some(Witness {
                images: imgs,
                degree,
                row,
                relation,
            }));
        }
    }
    Ok(None)
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
    fn iwasawa_series_terminates_and_is_unobstructed() {
        let g = iwasawa();
        let data = kuranishi_series(&g, DEFAULT_ANALYTIC_CAP).unwrap();
        assert_eq!(data.n_params, 6);
        assert!(data.termination_ok);
        assert!(data.harmonic_phi_ok);
        assert!(data.recursion_consistent);
        assert!(data.obs.is_zero());
        assert!(data.mc.is_zero());
        assert!(!data.phi_parts[1].is_zero()); // Phi_2 is genuinely nonzero
    }

    #[test]
    fn abelian_series_is_linear() {
        let g = StructureConstants::abelian(4, crate::exact::Field::Rational);
        let data = kuranishi_series(&g, DEFAULT_ANALYTIC_CAP).unwrap();
        assert_eq!(data.n_params, 16);
        assert_eq!(data.phi_parts.len(), 1);
        assert!(data.obs.is_zero());
        assert!(data.mc.is_zero());
    }

    #[test]
    fn constant_defect_detects_homomorphisms() {
        let g = iwasawa();
        let pkg = dolbeault(&g, 2).unwrap();
        // identity map conj(g) -> g is a homomorphism for rational constants
        let id_cols: Vec<Vec<Scalar>> = (0..3)
            .map(|j| {
                (0..3)
                    .map(|i| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let phi = linear_map_form(&pkg, &id_cols);
        assert!(is_homomorphism(&g, &id_cols));
        assert!(mc_defect_constant(&pkg, &g, &phi).is_zero());
        // sending both generators to themselves but the bracket class to zero
        // is not a homomorphism
        let mut bad = id_cols.clone();
        bad[2] = vec![Scalar::zero(); 3];
        let phi_bad = linear_map_form(&pkg, &bad);
        assert!(!is_homomorphism(&g, &bad));
        assert!(!mc_defect_constant(&pkg, &g, &phi_bad).is_zero());
    }

    #[test]
    fn identity_extension_exists_for_rational_algebras() {
        let g = iwasawa();
        let id: Vec<Vec<(u32, Scalar)>> = (0..2).map(|i| vec![(i as u32, Scalar::one())]).collect();
        match extend_generator_map(&g, &id).unwrap() {
            Extension::Extends(cols) => assert_eq!(cols.len(), 3),
            Extension::Violated { .. } => panic!("identity must extend"),
        }
        // zero map extends to the zero homomorphism
        let zero: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(), Vec::new()];
        assert!(matches!(
            extend_generator_map(&g, &zero).unwrap(),
            Extension::Extends(_)
        ));
    }

    #[test]
    fn iwasawa_verdict() {
        let report = decide_unobstructed(&iwasawa(), &DecideConfig::default()).unwrap();
        assert!(report.pseudo_free);
        assert!(report.ideal_conj_equal);
        assert_eq!(report.verdict, Verdict::Unobstructed);
        assert!(report.lattice_rational);
        assert!(report.analytic.is_some());
        assert!(report.witness.is_none());
    }
}
