//! Vector-valued invariant forms and their polynomial families.
//!
//! A `Form` of degree q is an element of `Λ^q conj(g)* ⊗ g` over the
//! orthonormal basis wedges `e^I ⊗ e_k`; a `FormPoly` attaches to each
//! monomial in the deformation parameters a form coefficient.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::exact::Scalar;
use crate::verbal::StructureConstants;

/// Index bookkeeping for strictly increasing wedge subsets of {0..d-1}.
pub struct WedgeContext {
    pub d: usize,
    pub q_max: usize,
    subsets: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, u32>>,
}

impl WedgeContext {
    pub fn new(d: usize, q_max: usize) -> Self {
        let mut subsets = Vec::with_capacity(q_max + 1);
        let mut index = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let list = increasing_subsets(d, q);
            let map = list
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            subsets.push(list);
            index.push(map);
        }
        WedgeContext {
            d,
            q_max,
            subsets,
            index,
        }
    }

    pub fn count(&self, q: usize) -> usize {
        self.subsets[q].len()
    }

    pub fn subset(&self, q: usize, idx: u32) -> &[u8] {
        &self.subsets[q][idx as usize]
    }

    pub fn subset_index(&self, q: usize, s: &[u8]) -> u32 {
        self.index[q][s]
    }

    /// Wedge of two disjoint increasing subsets: merged subset and the sign
    /// of the interleaving permutation; None when the subsets overlap.
    pub fn wedge(&self, a: &[u8], b: &[u8]) -> Option<(i32, Vec<u8>)> {
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                merged.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                // every remaining element of `a` jumps over b[j]
                inversions += a.len() - i;
                merged.push(b[j]);
                j += 1;
            } else {
                return None; // equal indices
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, merged))
    }
}

fn increasing_subsets(d: usize, q: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    fn rec(d: usize, q: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i as u8);
            rec(d, q, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(d, q, 0, &mut cur, &mut out);
    out
}

/// A sparse q-form with values in the algebra: coefficients over pairs
/// (wedge index, basis index).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    pub q: usize,
    entries: BTreeMap<(u32, u32), Scalar>,
}

impl Form {
    pub fn zero(q: usize) -> Self {
        Form {
            q,
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(q: usize, wedge: u32, basis: u32) -> Self {
        let mut f = Form::zero(q);
        f.entries.insert((wedge, basis), Scalar::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.entries.entry(key).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Form) {
        assert_eq!(self.q, other.q);
        for (k, c) in &other.entries {
            self.add_term(*k, c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.q);
        }
        Form {
            q: self.q,
            entries: self.entries.iter().map(|(k, x)| (*k, c * x)).collect(),
        }
    }

    pub fn conj(&self) -> Form {
        Form {
            q: self.q,
            entries: self.entries.iter().map(|(k, x)| (*k, x.conj())).collect(),
        }
    }

    /// Hermitian pairing with the orthonormal wedge basis.
    pub fn inner(&self, other: &Form) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in &self.entries {
            if let Some(d) = other.entries.get(k) {
                acc += &(c * &d.conj());
            }
        }
        acc
    }
}

/// Restriction of the Schouten bracket to invariant forms:
/// `[a ⊗ x, b ⊗ y] = (a ∧ b) ⊗ [x, y]`.
pub fn schouten(ctx: &WedgeContext, g: &StructureConstants, a: &Form, b: &Form) -> Form {
    let mut out = Form::zero(a.q + b.q);
    for ((ia, ka), ca) in &a.entries {
        let sa = ctx.subset(a.q, *ia);
        for ((ib, kb), cb) in &b.entries {
            let br = g.bracket_basis(*ka, *kb);
            if br.is_empty() {
                continue;
            }
            let Some((sign, merged)) = ctx.wedge(sa, ctx.subset(b.q, *ib)) else {
                continue;
            };
            let iw = ctx.subset_index(a.q + b.q, &merged);
            let mut coef = ca * cb;
            if sign < 0 {
                coef = -coef;
            }
            for (kc, x) in &br {
                out.add_term((iw, *kc), &(&coef * x));
            }
        }
    }
    out
}

pub type Monomial = Vec<u8>;

/// A polynomial in the deformation parameters with form coefficients.
/// Monomials are exponent vectors; homogeneous pieces collect all monomials
/// of one total degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormPoly {
    pub q: usize,
    pub nvars: usize,
    terms: BTreeMap<Monomial, Form>,
}

impl FormPoly {
    pub fn zero(q: usize, nvars: usize) -> Self {
        FormPoly {
            q,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A t-independent polynomial with a single form value.
    pub fn constant(nvars: usize, f: Form) -> Self {
        let q = f.q;
        let mut p = FormPoly::zero(q, nvars);
        if !f.is_zero() {
            p.terms.insert(vec![0; nvars], f);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Form)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Monomial, f: Form) {
        assert_eq!(mono.len(), self.nvars);
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                existing.add_assign(&f);
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, f);
            }
        }
    }

    pub fn add_assign(&mut self, other: &FormPoly) {
        assert_eq!(self.q, other.q);
        assert_eq!(self.nvars, other.nvars);
        for (m, f) in &other.terms {
            self.add_term(m.clone(), f.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> FormPoly {
        FormPoly {
            q: self.q,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, f)| (m.clone(), f.scale(c)))
                .collect(),
        }
    }

    /// Applies a linear operator to every form coefficient.
    pub fn map_forms(&self, q_out: usize, op: impl Fn(&Form) -> Form) -> FormPoly {
        let mut out = FormPoly::zero(q_out, self.nvars);
        for (m, f) in &self.terms {
            let g = op(f);
            if !g.is_zero() {
                out.add_term(m.clone(), g);
            }
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_form_entries(&self) -> usize {
        self.terms
            .values()
            .map(Form::num_entries)
            .max()
            .unwrap_or(0)
    }
}

/// Schouten bracket of two form polynomials (full convolution in the
/// parameters).
pub fn schouten_poly(
    ctx: &WedgeContext,
    g: &StructureConstants,
    a: &FormPoly,
    b: &FormPoly,
) -> FormPoly {
    assert_eq!(a.nvars, b.nvars);
    let mut out = FormPoly::zero(a.q + b.q, a.nvars);
    for (ma, fa) in &a.terms {
        for (mb, fb) in &b.terms {
            let br = schouten(ctx, g, fa, fb);
            if br.is_zero() {
                continue;
            }
            let mono: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
            out.add_term(mono, br);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn heisenberg() -> StructureConstants {
        // [e1, e2] = e3
        let mut brackets = BTreeMap::new();
        brackets.insert((0u32, 1u32), vec![(2u32, Scalar::one())]);
        StructureConstants {
            dim: 3,
            field: Field::Rational,
            labels: vec!["x".into(), "y".into(), "xy".into()],
            generators: 2,
            nu: 2,
            grading: vec![1, 1, 2],
            brackets,
        }
    }

    #[test]
    fn wedge_signs() {
        let ctx = WedgeContext::new(4, 3);
        let (s, m) = ctx.wedge(&[0], &[1]).unwrap();
        assert_eq!((s, m), (1, vec![0, 1]));
        let (s, m) = ctx.wedge(&[1], &[0]).unwrap();
        assert_eq!((s, m), (-1, vec![0, 1]));
        assert!(ctx.wedge(&[0, 2], &[2]).is_none());
        let (s, _) = ctx.wedge(&[1, 3], &[0, 2]).unwrap();
        assert_eq!(s, -1); // 0 jumps two, 2 jumps one: three inversions
    }

    #[test]
    fn schouten_graded_symmetry_and_vanishing() {
        let g = heisenberg();
        let ctx = WedgeContext::new(3, 3);
        // [a ⊗ x, a ⊗ x] = (a ∧ a) ⊗ [x,x] = 0
        let v = Form::unit(1, 0, 0);
        assert!(schouten(&ctx, &g, &v, &v).is_zero());
        // [a ⊗ x, b ⊗ y] with [x, y] = 0 vanishes
        let a = Form::unit(1, 0, 2); // e^0 ⊗ e3 (central value)
        let b = Form::unit(1, 1, 0);
        assert!(schouten(&ctx, &g, &a, &b).is_zero());
        // graded symmetry for two 1-forms: [a, b] = [b, a]
        let a = Form::unit(1, 0, 0);
        let b = Form::unit(1, 1, 1);
        assert_eq!(schouten(&ctx, &g, &a, &b), schouten(&ctx, &g, &b, &a));
    }

    #[test]
    fn schouten_graded_antisymmetry_mixed_degrees() {
        // p = 1, q = 2: [a, b] = -(-1)^{pq} [b, a] = [b, a] * (+1)? No:
        // -(-1)^{2} = -1, so [a,b] = -[b,a].
        let g = heisenberg();
        let ctx = WedgeContext::new(3, 3);
        let a = Form::unit(1, 0, 0); // e^0 ⊗ e1
        let b = Form::unit(2, ctx.subset_index(2, &[1, 2]), 1); // e^{12} ⊗ e2
        let ab = schouten(&ctx, &g, &a, &b);
        let ba = schouten(&ctx, &g, &b, &a);
        assert_eq!(ab, ba.scale(&-Scalar::one()));
        assert!(!ab.is_zero());
    }

    #[test]
    fn schouten_graded_jacobi() {
        // (-1)^{pr}[a,[b,c]] + (-1)^{qp}[b,[c,a]] + (-1)^{rq}[c,[a,b]] = 0
        // over all basis triples of small form degrees.
        let g = heisenberg();
        let ctx = WedgeContext::new(3, 3);
        let forms: Vec<Form> = {
            let mut v = Vec::new();
            for q in 1..=2usize {
                for w in 0..ctx.count(q) as u32 {
                    for k in 0..3u32 {
                        v.push(Form::unit(q, w, k));
                    }
                }
            }
            v
        };
        let sign = |e: usize| {
            if e % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            }
        };
        for a in &forms {
            for b in &forms {
                for c in &forms {
                    if a.q + b.q + c.q > 3 {
                        continue;
                    }
                    let t1 =
                        schouten(&ctx, &g, a, &schouten(&ctx, &g, b, c)).scale(&sign(a.q * c.q));
                    let t2 =
                        schouten(&ctx, &g, b, &schouten(&ctx, &g, c, a)).scale(&sign(b.q * a.q));
                    let t3 =
                        schouten(&ctx, &g, c, &schouten(&ctx, &g, a, b)).scale(&sign(c.q * b.q));
                    let mut acc = t1;
                    acc.add_assign(&t2);
                    acc.add_assign(&t3);
                    assert!(acc.is_zero(), "graded Jacobi fails");
                }
            }
        }
    }

    #[test]
    fn poly_convolution_degrees() {
        let g = heisenberg();
        let ctx = WedgeContext::new(3, 3);
        let mut p = FormPoly::zero(1, 2);
        p.add_term(vec![1, 0], Form::unit(1, 0, 0));
        p.add_term(vec![0, 1], Form::unit(1, 1, 1));
        let sq = schouten_poly(&ctx, &g, &p, &p);
        assert_eq!(sq.total_degree(), 2);
        // only the cross terms survive: 2 t1 t2 (e^0 ∧ e^1) ⊗ e3
        assert_eq!(sq.num_terms(), 1);
        let (mono, f) = sq.terms().next().unwrap();
        assert_eq!(mono, &vec![1, 1]);
        assert_eq!(f.num_entries(), 1);
    }
}
