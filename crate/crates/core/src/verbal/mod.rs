//! Verbal ideals of truncated free Lie algebras.
//!
//! A graded ideal is verbal (fully invariant) iff every degree component is
//! GL(V)-invariant and the ideal is stable under all degree-raising basis
//! derivations; the degree-k derivations act through `ik_span` and iterating
//! them realizes the degree-k part of the enveloping action used to
//! propagate relations upward.

mod census;
mod structure;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};
use crate::freelie::{Derivation, Endomorphism, FreeLie, GradedSubspace, LieElement};

pub use census::{
    build_family, classify_up_to_dim, default_mu_samples, dim20_family, enumerate_pseudo_free,
    CensusEntry, FamilyTag, MuParam, PseudoFreeFamily,
};
pub use structure::{is_pseudo_free, iso_check, presentation_ideal, StructureConstants};

/// A verbal ideal together with the generating data it was closed from.
#[derive(Clone, Debug)]
pub struct VerbalIdeal {
    pub generators: GradedSubspace,
    pub ideal: GradedSubspace,
}

impl VerbalIdeal {
    pub fn dim(&self) -> usize {
        self.ideal.dim()
    }
}

/// Span of `delta(v)` over all `v` in a degree-`n` subspace and all basis
/// derivations sending one generator to a degree-(k+1) word.
pub fn ik_span(alg: &FreeLie, s: &Subspace, n: usize, k: usize) -> Result<Subspace> {
    if k < 1 {
        return Err(Error::Input("ik_span needs k >= 1".into()));
    }
    if n + k > alg.nilpotency_index() {
        return Err(Error::DegreeOverflow {
            degree: n + k,
            nu: alg.nilpotency_index(),
        });
    }
    let target_dim = alg.degree_dim(n + k);
    if s.is_zero() {
        return Ok(Subspace::zero(target_dim));
    }
    let mut vectors = Vec::new();
    for d in alg.ik_basis(k)? {
        for row in s.rows() {
            let v = alg.from_coords(n, row);
            let img = d.apply(alg, &v)?;
            if !img.is_zero() {
                vectors.push(alg.to_coords(&img, n + k));
            }
        }
    }
    Ok(Subspace::from_vectors(target_dim, vectors))
}

/// The degree-(n+k) component of the verbal closure of a single degree-`n`
/// subspace: all composition products of the degree-raising actions.
pub fn u_span(alg: &FreeLie, s: &Subspace, n: usize, k: usize) -> Result<Subspace> {
    let mut gens = GradedSubspace::zero(alg);
    gens.set_component(n, s.clone());
    let closed = verbal_closure(alg, &gens)?;
    Ok(closed.ideal.component(n + k).clone())
}

/// Smallest verbal ideal containing the given graded generating set, computed
/// degree by degree: each new degree receives every `ik_span` of the already
/// closed lower components. Every generating component must be
/// GL(V)-invariant.
pub fn verbal_closure(alg: &FreeLie, generators: &GradedSubspace) -> Result<VerbalIdeal> {
    let nu = alg.nilpotency_index();
    for n in 1..=nu {
        let comp = generators.component(n);
        if !comp.is_zero() {
            alg.verify_invariant(comp, n)?;
        }
    }
    let mut closed = generators.clone();
    for j in 3..=nu {
        let mut acc = closed.component(j).clone();
        for k in 1..=j.saturating_sub(2) {
            let src = closed.component(j - k);
            if src.is_zero() {
                continue;
            }
            acc = acc.sum(&ik_span(alg, src, j - k, k)?)?;
        }
        closed.set_component(j, acc);
    }
    Ok(VerbalIdeal {
        generators: generators.clone(),
        ideal: closed,
    })
}

/// Checks that `h` is an ideal of the truncated free Lie algebra (stable
/// under bracketing with the generators).
pub fn verify_ideal(alg: &FreeLie, h: &GradedSubspace) -> Result<()> {
    let nu = alg.nilpotency_index();
    for n in 1..nu {
        let comp = h.component(n);
        if comp.is_zero() {
            continue;
        }
        for row in comp.rows() {
            let v = alg.from_coords(n, row);
            for i in 0..alg.generators() {
                let b = alg.bracket(&alg.gen_el(i)?, &v)?;
                if !b.is_zero() && !h.component(n + 1).contains(&alg.to_coords(&b, n + 1)) {
                    return Err(Error::NotAnIdeal(format!(
                        "bracket of a generator with a degree-{n} element leaves the subspace"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Decides whether a graded ideal is verbal: every component GL(V)-invariant
/// and stable under every degree-raising span into the ideal. Errors if the
/// input is not an ideal at all.
pub fn is_verbal(alg: &FreeLie, h: &GradedSubspace) -> Result<bool> {
    verify_ideal(alg, h)?;
    let nu = alg.nilpotency_index();
    for n in 1..=nu {
        let comp = h.component(n);
        if comp.is_zero() {
            continue;
        }
        if alg.verify_invariant(comp, n).is_err() {
            return Ok(false);
        }
        for k in 1..=(nu - n) {
            let span = ik_span(alg, comp, n, k)?;
            if !h.component(n + k).contains_subspace(&span) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Independent oracle for verbality: applies `count` random unipotent
/// substitution endomorphisms `x_i -> x_i + (random element of degree >= 2)`
/// exactly (truncated at the nilpotency index) and checks that the ideal maps
/// into itself.
pub fn random_endomorphism_stability(
    alg: &FreeLie,
    h: &GradedSubspace,
    count: usize,
    rng: &mut impl Rng,
) -> Result<bool> {
    let nu = alg.nilpotency_index();
    for _ in 0..count {
        let mut higher = Vec::with_capacity(alg.generators());
        for _ in 0..alg.generators() {
            let mut img = alg.zero_el();
            // a couple of random low-degree terms keeps the check cheap
            for _ in 0..2 {
                let deg = rng.gen_range(2..=nu.min(4));
                let range = alg.degree_words(deg);
                let w = range.start + rng.gen_range(0..(range.end - range.start));
                let c = Scalar::from_int(rng.gen_range(-2..=2i64));
                img = alg.add(&img, &alg.scale(&c, &alg.word_el(w)))?;
            }
            higher.push(img);
        }
        let phi = Endomorphism::unipotent(alg, higher)?;
        if !endomorphism_preserves(alg, &phi, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn endomorphism_preserves(
    alg: &FreeLie,
    phi: &Endomorphism,
    h: &GradedSubspace,
) -> Result<bool> {
    let nu = alg.nilpotency_index();
    let mut elements = Vec::new();
    for n in 1..=nu {
        elements.extend(h.elements(alg, n));
    }
    for img in phi.apply_many(alg, &elements)? {
        if !h.contains(alg, &img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The full sub-ideal `f_{>= nu0}` of words of degree at least `nu0`.
pub fn tail_ideal(alg: &FreeLie, nu0: usize) -> GradedSubspace {
    let mut g = GradedSubspace::zero(alg);
    for n in nu0..=alg.nilpotency_index() {
        g.set_component(n, Subspace::full(alg.degree_dim(n)));
    }
    g
}

/// Graded span of a set of homogeneous elements closed under bracketing with
/// the ambient algebra (an ideal, not necessarily verbal).
pub fn ideal_closure(alg: &FreeLie, els: &[LieElement]) -> Result<GradedSubspace> {
    let mut h = GradedSubspace::from_elements(alg, els)?;
    let nu = alg.nilpotency_index();
    for n in 1..nu {
        let comp = h.component(n);
        if comp.is_zero() {
            continue;
        }
        let mut next = h.component(n + 1).clone();
        for i in 0..alg.generators() {
            let d = Derivation::inner(alg, &alg.gen_el(i)?)?;
            for row in comp.rows() {
                let img = d.apply(alg, &alg.from_coords(n, row))?;
                if !img.is_zero() {
                    next = next.sum(&Subspace::from_vectors(
                        alg.degree_dim(n + 1),
                        [alg.to_coords(&img, n + 1)],
                    ))?;
                }
            }
        }
        h.set_component(n + 1, next);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::Partition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn irrep_component(alg: &FreeLie, lambda: &str, copy: usize) -> Subspace {
        let lam: Partition = lambda.parse().unwrap();
        let hw = alg.highest_weight_vectors(&lam).unwrap();
        alg.irrep_span(&hw[copy]).unwrap()
    }

    #[test]
    fn ik_span_of_v41_gives_an_eight_dimensional_degree_six_part() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let v41 = irrep_component(&alg, "(4,1)", 0);
        let h6 = ik_span(&alg, &v41, 5, 1).unwrap();
        assert_eq!(h6.dim(), 8);
        let rep = alg.decompose(&h6, 6).unwrap();
        assert_eq!(rep.summary(), "V(5,1)+V(4,2)");
    }

    #[test]
    fn ik_span_of_v32() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let v32 = irrep_component(&alg, "(3,2)", 0);
        let h6 = ik_span(&alg, &v32, 5, 1).unwrap();
        assert_eq!(alg.decompose(&h6, 6).unwrap().summary(), "V(4,2)+V(3,3)");
    }

    #[test]
    fn ik_span_degenerate_cases() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let zero = Subspace::zero(alg.degree_dim(4));
        assert!(ik_span(&alg, &zero, 4, 1).unwrap().is_zero());
        assert!(matches!(
            ik_span(&alg, &zero, 4, 2),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn closure_of_v41_reproduces_the_worked_example() {
        // In the rank-2 algebra truncated at 7 the closure of V(4,1) has
        // degree dims (4, 8, 18) and fills all of degree 7.
        let alg = FreeLie::shared(2, 7).unwrap();
        let v41 = irrep_component(&alg, "(4,1)", 0);
        let mut gens = GradedSubspace::zero(&alg);
        gens.set_component(5, v41);
        let h = verbal_closure(&alg, &gens).unwrap();
        assert_eq!(h.ideal.degree_dims(), vec![0, 0, 0, 0, 4, 8, 18]);
        assert!(h.ideal.component(7).is_full());
        assert!(is_verbal(&alg, &h.ideal).unwrap());
    }

    #[test]
    fn u2_of_v32_is_two_copies_each() {
        let alg = FreeLie::shared(2, 7).unwrap();
        let v32 = irrep_component(&alg, "(3,2)", 0);
        let u2 = u_span(&alg, &v32, 5, 2).unwrap();
        assert_eq!(alg.decompose(&u2, 7).unwrap().summary(), "2V(5,2)+2V(4,3)");
    }

    #[test]
    fn tail_ideal_is_verbal() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let h = tail_ideal(&alg, 5);
        assert!(is_verbal(&alg, &h).unwrap());
        let h = tail_ideal(&alg, 3);
        assert!(is_verbal(&alg, &h).unwrap());
    }

    #[test]
    fn single_word_span_is_not_verbal() {
        // span(xxxy) + all of degree 5 in the rank-2 index-4 truncation is an
        // ideal but not verbal: the substitution x -> x + y moves xxxy out.
        let alg = FreeLie::shared(2, 4).unwrap();
        let v = alg.parse_element("xxxy").unwrap();
        let mut h = GradedSubspace::zero(&alg);
        h.set_component(
            4,
            Subspace::from_vectors(alg.degree_dim(4), [alg.to_coords(&v, 4)]),
        );
        assert!(!is_verbal(&alg, &h).unwrap());
        // explicit witness
        let x = alg.gen_el(0).unwrap();
        let y = alg.gen_el(1).unwrap();
        let phi = Endomorphism::new(&alg, vec![alg.add(&x, &y).unwrap(), y]).unwrap();
        assert!(!endomorphism_preserves(&alg, &phi, &h).unwrap());
    }

    #[test]
    fn closure_output_passes_the_random_endomorphism_oracle() {
        let alg = FreeLie::shared(2, 6).unwrap();
        let v41 = irrep_component(&alg, "(4,1)", 0);
        let mut gens = GradedSubspace::zero(&alg);
        gens.set_component(5, v41);
        let h = verbal_closure(&alg, &gens).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(random_endomorphism_stability(&alg, &h.ideal, 25, &mut rng).unwrap());
        assert!(is_verbal(&alg, &h.ideal).unwrap());
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let alg = FreeLie::shared(2, 6).unwrap();
        let v41 = irrep_component(&alg, "(4,1)", 0);
        let v32 = irrep_component(&alg, "(3,2)", 0);
        let mut small = GradedSubspace::zero(&alg);
        small.set_component(5, v41.clone());
        let mut big = GradedSubspace::zero(&alg);
        big.set_component(5, v41.sum(&v32).unwrap());
        let c_small = verbal_closure(&alg, &small).unwrap().ideal;
        let c_big = verbal_closure(&alg, &big).unwrap().ideal;
        // extensive
        assert!(c_small.contains_graded(&small));
        // monotone
        assert!(c_big.contains_graded(&c_small));
        // idempotent
        let again = verbal_closure(&alg, &c_small).unwrap().ideal;
        assert_eq!(again, c_small);
    }
}
