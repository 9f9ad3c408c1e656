//! Enumeration of pseudo-free nilpotent Lie algebras.
//!
//! Verbal ideals are built degree by degree: at each degree the closure of
//! the lower components forces a subspace, and the remaining freedom is a
//! choice of GL(V)-invariant complement pieces. Multiplicity-free isotypic
//! components give finitely many choices; inside higher-multiplicity
//! components only a configurable sample of projective lines is taken and
//! the resulting entries are marked as family representatives, not a
//! complete census.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};
use crate::freelie::{witt_cumulative, FreeLie, GradedSubspace, LieElement};
use crate::schur::{free_lie_multiplicity, partitions, render_multiset, weyl_dim, Partition};

use super::structure::StructureConstants;
use super::{verbal_closure, VerbalIdeal};

/// A point of the projective line over Q(i), normalized so that the first
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MuParam {
    pub a: Scalar,
    pub b: Scalar,
}

impl MuParam {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateParameter);
        }
        let scale = if a.is_zero() {
            b.inv().unwrap()
        } else {
            a.inv().unwrap()
        };
        Ok(MuParam {
            a: &a * &scale,
            b: &b * &scale,
        })
    }

    pub fn conj(&self) -> MuParam {
        MuParam::new(self.a.conj(), self.b.conj()).unwrap()
    }

    pub fn is_real(&self) -> bool {
        self.a.is_rational() && self.b.is_rational()
    }
}

impl fmt::Display for MuParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.b)
    }
}

impl FromStr for MuParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("expected a:b in parameter {s:?}")))?;
        MuParam::new(a.parse()?, b.parse()?)
    }
}

/// Default sample of projective parameters used when a multiplicity-two
/// component leaves a one-parameter family of choices.
pub fn default_mu_samples() -> Vec<MuParam> {
    ["1:0", "0:1", "1:1", "1:2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Marks that one copy of `lambda` in degree `degree` was chosen as the
/// sampled line `mu` inside a multiplicity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub degree: usize,
    pub lambda: Partition,
    pub mu: MuParam,
}

/// One algebra produced by the enumerator.
#[derive(Clone)]
pub struct CensusEntry {
    pub m: usize,
    pub nu: usize,
    pub dim: usize,
    pub ideal: GradedSubspace,
    pub algebra: StructureConstants,
    /// Isotypic description of the full ideal, family components rendered as
    /// `U_mu[lambda]`.
    pub description: String,
    pub family: Vec<FamilyTag>,
}

impl CensusEntry {
    pub fn algebra_name(&self) -> String {
        if self.ideal.is_zero() {
            format!("n_{{{},{}}}", self.m, self.nu)
        } else {
            format!("n_{{{},{}}}/({})", self.m, self.nu, self.description)
        }
    }

    /// Key identifying the abstract family member regardless of the sampled
    /// parameter value.
    pub fn family_key(&self) -> String {
        let mut d = self.description.clone();
        for tag in &self.family {
            d = d.replace(&format!("U_{}", tag.mu), "U_mu");
        }
        format!("{}|{}|{}|{}", self.m, self.nu, self.dim, d)
    }
}

impl fmt::Debug for CensusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, nu {})",
            self.algebra_name(),
            self.dim,
            self.nu
        )
    }
}

/// Smallest dimension of an irreducible constituent of the degree-`n` piece.
fn min_irrep_dim(m: usize, n: usize) -> usize {
    partitions(n, m)
        .iter()
        .filter(|l| free_lie_multiplicity(l).unwrap_or(0) > 0)
        .map(|l| weyl_dim(l, m) as usize)
        .filter(|&d| d > 0)
        .min()
        .unwrap_or(0)
}

#[derive(Clone)]
struct State {
    comps: Vec<Subspace>, // degree n component at index n-1
    pdim: usize,
    tags: Vec<FamilyTag>,
}

/// Per-degree extension: all GL-invariant components between the forced
/// closure and the full piece (excluding the full piece), with families
/// sampled at the given parameters.
fn extend_state(alg: &FreeLie, state: &State, j: usize, mus: &[MuParam]) -> Result<Vec<State>> {
    let mut forced = Subspace::zero(alg.degree_dim(j));
    for k in 1..=j.saturating_sub(2) {
        let src = &state.comps[j - k - 1];
        if src.is_zero() {
            continue;
        }
        forced = forced.sum(&super::ik_span(alg, src, j - k, k)?)?;
    }
    // Options per isotypic label: each option is (extra hw vectors to span,
    // optional family tag).
    type LambdaOption = (Vec<LieElement>, Option<FamilyTag>);
    let mut per_lambda: Vec<Vec<LambdaOption>> = Vec::new();
    for lambda in partitions(j, alg.generators()) {
        let hw = alg.highest_weight_vectors(&lambda)?;
        let k = hw.len();
        if k == 0 {
            continue;
        }
        // Coefficient space of hw combinations already inside the forced part.
        let residuals: Vec<Vec<Scalar>> = hw
            .iter()
            .map(|v| forced.reduce(&alg.to_coords(v, j)))
            .collect();
        let resm = crate::exact::Matrix::from_rows(residuals).unwrap();
        let l_space = Subspace::from_vectors(k, resm.transpose().kernel());
        let diff = k - l_space.dim();
        if diff == 0 {
            continue;
        }
        let mut options: Vec<LambdaOption> = vec![(Vec::new(), None)];
        options.push((hw.clone(), None)); // the full isotypic component
        if diff >= 2 {
            let free = l_space.complement_coords();
            let (f1, f2) = (free[0], free[1]);
            for mu in mus {
                let combo = alg
                    .add(&alg.scale(&mu.a, &hw[f1]), &alg.scale(&mu.b, &hw[f2]))
                    .unwrap();
                options.push((
                    vec![combo],
                    Some(FamilyTag {
                        degree: j,
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                    }),
                ));
            }
        }
        per_lambda.push(options);
    }
    // Cartesian product of the per-label options.
    let mut combos: Vec<(Vec<LieElement>, Vec<FamilyTag>)> = vec![(Vec::new(), Vec::new())];
    for options in &per_lambda {
        let mut next = Vec::with_capacity(combos.len() * options.len());
        for (els, tags) in &combos {
            for (extra, tag) in options {
                let mut e = els.clone();
                e.extend(extra.iter().cloned());
                let mut t = tags.clone();
                if let Some(tag) = tag {
                    t.push(tag.clone());
                }
                next.push((e, t));
            }
        }
        combos = next;
    }
    let full_dim = alg.degree_dim(j);
    let mut out = Vec::new();
    for (extras, new_tags) in combos {
        let mut w = forced.clone();
        for hwv in &extras {
            w = w.sum(&alg.irrep_span(hwv)?)?;
        }
        if w.dim() == full_dim {
            continue; // the quotient would drop nilpotency index
        }
        let mut comps = state.comps.clone();
        comps.push(w.clone());
        let mut tags = state.tags.clone();
        tags.extend(new_tags);
        out.push(State {
            comps,
            pdim: state.pdim + (full_dim - w.dim()),
            tags,
        });
    }
    Ok(out)
}

fn state_to_entry(alg: &FreeLie, m: usize, nu: usize, state: &State) -> Result<CensusEntry> {
    let mut ideal = GradedSubspace::zero(alg);
    for (n, comp) in state.comps.iter().enumerate() {
        ideal.set_component(n + 1, comp.clone());
    }
    let algebra = StructureConstants::quotient(alg, &ideal)?;
    debug_assert_eq!(algebra.dim, state.pdim);
    let description = describe_ideal(alg, &ideal, &state.tags)?;
    Ok(CensusEntry {
        m,
        nu,
        dim: state.pdim,
        ideal,
        algebra,
        description,
        family: state.tags.clone(),
    })
}

/// Isotypic description of a graded invariant subspace; for family-tagged
/// components one sampled copy is rendered as `U_mu[lambda]`.
fn describe_ideal(alg: &FreeLie, ideal: &GradedSubspace, tags: &[FamilyTag]) -> Result<String> {
    let mut multiset: BTreeMap<Partition, usize> = BTreeMap::new();
    for n in 1..=alg.nilpotency_index() {
        let comp = ideal.component(n);
        if comp.is_zero() {
            continue;
        }
        let rep = alg.decompose(comp, n)?;
        for e in rep.entries {
            *multiset.entry(e.lambda).or_insert(0) += e.multiplicity;
        }
    }
    let mut family_parts = Vec::new();
    for tag in tags {
        if let Some(mult) = multiset.get_mut(&tag.lambda) {
            *mult -= 1;
            if *mult == 0 {
                multiset.remove(&tag.lambda);
            }
        }
        family_parts.push(format!("U_{}[{}]", tag.mu, tag.lambda));
    }
    let mut desc = render_multiset(&multiset);
    for fp in family_parts {
        if desc == "0" {
            desc = fp;
        } else {
            desc.push('+');
            desc.push_str(&fp);
        }
    }
    Ok(desc)
}

fn ideal_sort_key(ideal: &GradedSubspace, nu: usize) -> String {
    let mut s = String::new();
    for n in 1..=nu {
        let comp = ideal.component(n);
        s.push_str(&format!("|{}:", comp.dim()));
        for row in comp.rows() {
            for c in row {
                s.push_str(&c.to_string());
                s.push(',');
            }
            s.push(';');
        }
    }
    s
}

const STATE_CAP: usize = 100_000;

/// All pseudo-free quotients of the rank-`m` index-`nu` free nilpotent
/// algebra with exact nilpotency index `nu` (and dimension at most
/// `dim_bound` when given). Inside multiplicity-two components only the
/// sampled parameter lines are enumerated. Deterministic output order:
/// dimension, then canonical ideal data.
pub fn enumerate_pseudo_free(
    m: usize,
    nu: usize,
    dim_bound: Option<usize>,
    mus: &[MuParam],
) -> Result<Vec<CensusEntry>> {
    if m < 1 || nu < 2 {
        return Err(Error::Input("enumeration needs m >= 1 and nu >= 2".into()));
    }
    let alg = FreeLie::shared(m, nu)?;
    let future_min: Vec<usize> = (0..=nu)
        .map(|j| ((j + 1)..=nu).map(|l| min_irrep_dim(m, l)).sum())
        .collect();
    let mut states = vec![State {
        comps: vec![Subspace::zero(m)],
        pdim: m,
        tags: Vec::new(),
    }];
    for j in 2..=nu {
        // Candidate extension is a parallel map over independent states; the
        // flattened result order stays deterministic.
        let extended: Vec<Vec<State>> = states
            .par_iter()
            .map(|st| extend_state(&alg, st, j, mus))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for ext in extended.into_iter().flatten() {
            if let Some(bound) = dim_bound {
                if ext.pdim + future_min[j] > bound {
                    continue;
                }
            }
            next.push(ext);
        }
        if next.len() > STATE_CAP {
            return Err(Error::ResourceCap(format!(
                "enumeration state count {} exceeds cap {STATE_CAP}",
                next.len()
            )));
        }
        states = next;
    }
    let mut entries: Vec<CensusEntry> = states
        .par_iter()
        .map(|st| state_to_entry(&alg, m, nu, st))
        .collect::<Result<_>>()?;
    entries.sort_by_key(|e| (e.dim, ideal_sort_key(&e.ideal, nu)));
    entries.dedup_by(|a, b| a.ideal == b.ideal);
    Ok(entries)
}

/// Classification of all pseudo-free nilpotent Lie algebras of dimension at
/// most `bound` (non-abelian, so nilpotency index at least 2). Families are
/// witnessed at the sampled parameters.
pub fn classify_up_to_dim(bound: usize, mus: &[MuParam]) -> Result<Vec<CensusEntry>> {
    let mut entries = Vec::new();
    let mut m = 2;
    while witt_cumulative(m, 2) <= bound {
        // Largest index reachable within the bound: every surviving degree
        // contributes at least the smallest constituent dimension.
        let mut nu_max = 2;
        let mut min_total = m + min_irrep_dim(m, 2);
        while min_total + min_irrep_dim(m, nu_max + 1) <= bound {
            nu_max += 1;
            min_total += min_irrep_dim(m, nu_max);
        }
        let alg = FreeLie::shared(m, nu_max)?;
        let mut states = vec![State {
            comps: vec![Subspace::zero(m)],
            pdim: m,
            tags: Vec::new(),
        }];
        for j in 2..=nu_max {
            let extended: Vec<Vec<State>> = states
                .par_iter()
                .map(|st| extend_state(&alg, st, j, mus))
                .collect::<Result<_>>()?;
            states = extended
                .into_iter()
                .flatten()
                .filter(|st| st.pdim <= bound)
                .collect();
            if states.is_empty() {
                break;
            }
            // Emit every survivor at exact index j.
            let sub_alg = FreeLie::shared(m, j)?;
            let emitted: Vec<CensusEntry> = states
                .par_iter()
                .map(|st| state_to_entry(&sub_alg, m, j, st))
                .collect::<Result<_>>()?;
            entries.extend(emitted);
            // Keep only states that could still fit another degree.
            if j < nu_max {
                states.retain(|st| st.pdim + min_irrep_dim(m, j + 1) <= bound);
            }
        }
        let _ = alg;
        m += 1;
    }
    entries.sort_by_key(|e| (e.dim, e.m, e.nu, ideal_sort_key(&e.ideal, e.nu)));
    Ok(entries)
}

/// A one-parameter family of pseudo-free quotients: fixed invariant
/// components plus one sampled line inside a multiplicity-`k` isotypic
/// component with the canonical ordered highest-weight basis.
#[derive(Clone, Debug)]
pub struct PseudoFreeFamily {
    pub fixed: GradedSubspace,
    pub degree: usize,
    pub lambda: Partition,
    pub hw_basis: Vec<LieElement>,
}

impl PseudoFreeFamily {
    pub fn new(alg: &FreeLie, fixed: GradedSubspace, lambda: Partition) -> Result<Self> {
        let degree = lambda.size();
        let hw_basis = alg.highest_weight_vectors(&lambda)?;
        if hw_basis.len() < 2 {
            return Err(Error::Input(format!(
                "component {lambda} has multiplicity {} < 2",
                hw_basis.len()
            )));
        }
        Ok(PseudoFreeFamily {
            fixed,
            degree,
            lambda,
            hw_basis,
        })
    }
}

/// Builds the family member at parameter `mu`: the quotient by the verbal
/// closure of the fixed components plus the line through
/// `mu.a * v1 + mu.b * v2`.
pub fn build_family(
    alg: &FreeLie,
    family: &PseudoFreeFamily,
    mu: &MuParam,
) -> Result<(StructureConstants, VerbalIdeal)> {
    let combo = alg.add(
        &alg.scale(&mu.a, &family.hw_basis[0]),
        &alg.scale(&mu.b, &family.hw_basis[1]),
    )?;
    let u_mu = alg.irrep_span(&combo)?;
    let mut gens = family.fixed.clone();
    gens.set_component(family.degree, gens.component(family.degree).sum(&u_mu)?);
    let ideal = verbal_closure(alg, &gens)?;
    let g = StructureConstants::quotient(alg, &ideal.ideal)?;
    Ok((g, ideal))
}

/// The canonical 20-dimensional one-parameter family: quotients of the
/// rank-2 index-7 free nilpotent algebra by the closure of V(5,1), both
/// copies of V(5,2), and a sampled line in the multiplicity-2 component
/// V(4,3) of degree 7.
pub fn dim20_family(alg: &FreeLie, mu: &MuParam) -> Result<(StructureConstants, VerbalIdeal)> {
    if alg.generators() != 2 || alg.nilpotency_index() != 7 {
        return Err(Error::AmbientMismatch {
            em: 2,
            enu: 7,
            gm: alg.generators(),
            gnu: alg.nilpotency_index(),
        });
    }
    let hw51 = alg.highest_weight_vectors(&"(5,1)".parse()?)?;
    let hw52 = alg.highest_weight_vectors(&"(5,2)".parse()?)?;
    let mut fixed = GradedSubspace::zero(alg);
    fixed.set_component(6, alg.irrep_span(&hw51[0])?);
    let both52 = alg.irrep_span(&hw52[0])?.sum(&alg.irrep_span(&hw52[1])?)?;
    fixed.set_component(7, both52);
    let family = PseudoFreeFamily::new(alg, fixed, "(4,3)".parse()?)?;
    build_family(alg, &family, mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_param_normalization_and_parse() {
        let a: MuParam = "2:4".parse().unwrap();
        let b: MuParam = "1:2".parse().unwrap();
        assert_eq!(a, b);
        let c: MuParam = "(1:i)".parse().unwrap();
        assert!(!c.is_real());
        assert_ne!(c, c.conj());
        assert!("0:0".parse::<MuParam>().is_err());
    }

    #[test]
    fn rank_two_index_three_is_only_the_free_algebra() {
        let entries = enumerate_pseudo_free(2, 3, None, &default_mu_samples()).unwrap();
        assert_eq!(entries.len(), 1);
        assert!(entries[0].ideal.is_zero());
        assert_eq!(entries[0].dim, 5);
    }

    #[test]
    fn rank_two_index_six_census_has_nine_members() {
        let entries = enumerate_pseudo_free(2, 6, None, &default_mu_samples()).unwrap();
        assert_eq!(entries.len(), 9);
        let mut dims: Vec<usize> = entries.iter().map(|e| e.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![11, 15, 17, 17, 18, 19, 20, 22, 23]);
        for e in &entries {
            assert!(e.family.is_empty());
            assert_eq!(e.algebra.exact_index(), 6);
        }
    }

    #[test]
    fn dim20_family_members_are_twenty_dimensional_and_distinct() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let (g1, i1) = dim20_family(&alg, &"1:0".parse().unwrap()).unwrap();
        let (g2, i2) = dim20_family(&alg, &"0:1".parse().unwrap()).unwrap();
        let (g3, i3) = dim20_family(&alg, &"1:1".parse().unwrap()).unwrap();
        for g in [&g1, &g2, &g3] {
            assert_eq!(g.dim, 20);
            assert_eq!(g.exact_index(), 7);
        }
        assert_ne!(i1.ideal, i2.ideal);
        assert_ne!(i1.ideal, i3.ideal);
        assert_ne!(i2.ideal, i3.ideal);
        assert!(super::super::is_verbal(&alg, &i1.ideal).unwrap());
    }
}
