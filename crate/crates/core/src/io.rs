//! Text formats: structure constants and graded ideals as JSON documents
//! with exact fraction-string entries (no floating point accepted).
//!
//! The algebra format is documented in the README; in short:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "dim": 3,
//!   "generators": 2,
//!   "nilpotency_index": 2,
//!   "grading": [1, 1, 2],
//!   "basis": ["x", "y", "xy"],
//!   "brackets": [ { "i": 1, "j": 2, "c": { "3": "1" } } ]
//! }
//! ```
//!
//! Indices are 1-based; scalar strings follow the grammar `a/b`, `c/d*i`,
//! `a/b+c/d*i`. The grading may be omitted when it is inferable from the
//! generators (degree of a bracket = sum of the degrees of its arguments).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::freelie::{FreeLie, GradedSubspace};
use crate::verbal::StructureConstants;

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    c: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    field: String,
    dim: usize,
    generators: usize,
    nilpotency_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<u32>>,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
}

pub fn algebra_to_json(g: &StructureConstants) -> String {
    let file = AlgebraFile {
        field: g.field.to_string(),
        dim: g.dim,
        generators: g.generators,
        nilpotency_index: g.nu,
        grading: Some(g.grading.clone()),
        basis: g.labels.clone(),
        brackets: g
            .brackets
            .iter()
            .map(|((i, j), v)| BracketEntry {
                i: *i as usize + 1,
                j: *j as usize + 1,
                c: v.iter()
                    .map(|(k, c)| ((k + 1).to_string(), c.to_string()))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

pub fn algebra_from_json(text: &str) -> Result<StructureConstants> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad algebra file: {e}")))?;
    let field: Field = file.field.parse()?;
    let d = file.dim;
    if file.basis.len() != d {
        return Err(Error::Input("basis label count differs from dim".into()));
    }
    if file.generators == 0 || file.generators > d {
        return Err(Error::Input("generator count out of range".into()));
    }
    let mut brackets: BTreeMap<(u32, u32), Vec<(u32, Scalar)>> = BTreeMap::new();
    for e in &file.brackets {
        if e.i == 0 || e.j == 0 || e.i > d || e.j > d || e.i >= e.j {
            return Err(Error::Input(format!(
                "bracket indices ({}, {}) invalid",
                e.i, e.j
            )));
        }
        let mut v: Vec<(u32, Scalar)> = Vec::new();
        for (k, s) in &e.c {
            let kk: usize = k
                .parse()
                .map_err(|_| Error::Input(format!("bad basis index {k:?}")))?;
            if kk == 0 || kk > d {
                return Err(Error::Input(format!("basis index {kk} out of range")));
            }
            let c: Scalar = s.parse()?;
            if field == Field::Rational && !c.is_rational() {
                return Err(Error::Input("imaginary entry in a Q algebra".into()));
            }
            if !c.is_zero() {
                v.push((kk as u32 - 1, c));
            }
        }
        v.sort_by_key(|(k, _)| *k);
        if !v.is_empty() {
            brackets.insert((e.i as u32 - 1, e.j as u32 - 1), v);
        }
    }
    let grading = match file.grading {
        Some(gr) => gr,
        None => infer_grading(d, file.generators, &brackets)?,
    };
    let g = StructureConstants {
        dim: d,
        field,
        labels: file.basis,
        generators: file.generators,
        nu: file.nilpotency_index,
        grading,
        brackets,
    };
    g.verify_graded()?;
    g.verify_jacobi()?;
    if g.exact_index() > g.nu {
        return Err(Error::Input(
            "grading exceeds the declared nilpotency index".into(),
        ));
    }
    Ok(g)
}

/// Propagates degrees from the generators through the brackets; every basis
/// element must be reachable.
fn infer_grading(
    d: usize,
    m: usize,
    brackets: &BTreeMap<(u32, u32), Vec<(u32, Scalar)>>,
) -> Result<Vec<u32>> {
    let mut grading = vec![0u32; d];
    for g in grading.iter_mut().take(m) {
        *g = 1;
    }
    loop {
        let mut changed = false;
        for ((i, j), v) in brackets {
            let (gi, gj) = (grading[*i as usize], grading[*j as usize]);
            if gi == 0 || gj == 0 {
                continue;
            }
            for (k, _) in v {
                let expect = gi + gj;
                let cur = grading[*k as usize];
                if cur == 0 {
                    grading[*k as usize] = expect;
                    changed = true;
                } else if cur != expect {
                    return Err(Error::Input(format!(
                        "basis element {} receives conflicting degrees {cur} and {expect}; \
                         provide an explicit grading",
                        k + 1
                    )));
                }
            }
        }
        if !changed {
            break;
        }
    }
    if grading.iter().any(|&g| g == 0) {
        return Err(Error::Input(
            "could not infer a grading (unreachable basis elements); provide one explicitly".into(),
        ));
    }
    Ok(grading)
}

#[derive(Serialize, Deserialize)]
struct IdealFile {
    m: usize,
    nu: usize,
    field: String,
    /// Hall basis words per degree, for reference.
    basis: BTreeMap<String, Vec<String>>,
    /// Reduced-echelon coefficient rows per degree over that basis.
    components: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn ideal_to_json(alg: &FreeLie, h: &GradedSubspace) -> String {
    let mut basis = BTreeMap::new();
    let mut components = BTreeMap::new();
    let mut field = Field::Rational;
    for n in 1..=alg.nilpotency_index() {
        let words: Vec<String> = alg.degree_words(n).map(|w| alg.print_word(w)).collect();
        basis.insert(n.to_string(), words);
        let comp = h.component(n);
        if comp.is_zero() {
            continue;
        }
        let rows: Vec<Vec<String>> = comp
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        if !c.is_rational() {
                            field = Field::Gaussian;
                        }
                        c.to_string()
                    })
                    .collect()
            })
            .collect();
        components.insert(n.to_string(), rows);
    }
    let file = IdealFile {
        m: alg.generators(),
        nu: alg.nilpotency_index(),
        field: field.to_string(),
        basis,
        components,
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

pub fn ideal_from_json(text: &str) -> Result<(usize, usize, Vec<(usize, Vec<Vec<Scalar>>)>)> {
    let file: IdealFile =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad ideal file: {e}")))?;
    let mut comps = Vec::new();
    for (deg, rows) in &file.components {
        let n: usize = deg
            .parse()
            .map_err(|_| Error::Input(format!("bad degree {deg:?}")))?;
        let parsed: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Scalar>>>())
            .collect::<Result<_>>()?;
        comps.push((n, parsed));
    }
    Ok((file.m, file.nu, comps))
}
