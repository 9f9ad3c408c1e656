//! Command-line front end: table reproduction, classification runs,
//! deformation verdicts and deterministic report emission.
//!
//! Exit codes: 0 success, 1 verdict obstructed, 2 input error, 3 resource
//! cap exceeded, 4 internal consistency failure.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::freelie::{witt_cumulative, witt_dim, FreeLie, GradedSubspace};
use crate::io;
use crate::kuranishi::{decide_unobstructed, DecideConfig, FormPoly, Verdict};
use crate::schur::{free_lie_multiplicity, weyl_dim, Partition};
use crate::verbal::{
    classify_up_to_dim, default_mu_samples, enumerate_pseudo_free, verbal_closure, CensusEntry,
    MuParam, PseudoFreeFamily, StructureConstants,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Tsv,
    Markdown,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Non-abelian pseudo-free Lie algebras up to dimension 20.
    SmallDim,
    /// Pseudo-free Lie algebras of nilpotency index at most 5 (m = 2..4).
    Nu5,
    /// Two-generator pseudo-free Lie algebras of index at most 6.
    TwoGen,
    /// Dimension data: Schur modules and free nilpotent algebras.
    Dims,
}

#[derive(Parser)]
#[command(
    name = "pseudofree",
    about = "Exact computations with free nilpotent Lie algebras, verbal ideals \
             and deformations of complex parallelisable nilmanifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Ambient dimension cap for free Lie algebra tables.
    #[arg(long, global = true, default_value_t = crate::freelie::DEFAULT_DIM_CAP)]
    cap: usize,
    /// Seed for the randomized self-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded and cumulative dimensions of free nilpotent Lie algebras.
    Witt {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        nu: usize,
    },
    /// Dimension of the Schur module V_lambda for GL(m).
    Weyl {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        m: usize,
    },
    /// Multiplicity of V_lambda in the free Lie algebra.
    Mult {
        #[arg(long)]
        lambda: String,
    },
    /// Isotypic decomposition of a graded piece.
    Decompose {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Canonical highest weight vectors of one label.
    Hwv {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        nu: Option<usize>,
    },
    /// Verbal closure of isotypic generating components.
    Closure {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        nu: usize,
        /// Comma-separated labels, e.g. "V(4,1),V(3,2)"; each selects the
        /// full isotypic component.
        #[arg(long, default_value = "")]
        components: String,
        /// Optional multiplicity-space family label, e.g. "(4,3)".
        #[arg(long)]
        family: Option<String>,
        /// Parameter for the family line, e.g. "1:i".
        #[arg(long)]
        mu: Option<String>,
        /// Emit the quotient algebra or the ideal as JSON.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Classification of pseudo-free algebras up to a dimension bound.
    Classify {
        #[arg(long, default_value_t = 20)]
        dim_bound: usize,
        /// Comma-separated sample parameters for families.
        #[arg(long)]
        mu: Option<String>,
        /// Enumerate one ambient pair instead of the full classification.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
    },
    /// Reproduce the classification and dimension tables by computation.
    Tables {
        #[arg(long, value_enum)]
        which: TableKind,
    },
    /// Unobstructedness verdict for an algebra file.
    Check {
        #[arg(long)]
        algebra: String,
        /// Analytic evidence cap on dim g.
        #[arg(long, default_value_t = crate::kuranishi::DEFAULT_ANALYTIC_CAP)]
        analytic_cap: usize,
        /// Emit the verdict record as JSON.
        #[arg(long, default_value_t = false)]
        json: bool,
    },
    /// Kuranishi power series and obstruction polynomial for an algebra file.
    Kuranishi {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = crate::kuranishi::DEFAULT_ANALYTIC_CAP)]
        analytic_cap: usize,
    },
}

/// Renders a header plus rows in the requested format.
pub fn render_table(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Tsv => {
            let mut out = header.join("\t");
            out.push('\n');
            for r in rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("| {} |\n", header.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
            for r in rows {
                out.push_str(&format!("| {} |\n", r.join(" | ")));
            }
            out
        }
        Format::Plain => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (k, cell) in r.iter().enumerate() {
                    widths[k] = widths[k].max(cell.len());
                }
            }
            let fmt_row = |cells: &[String]| -> String {
                cells
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("{:<w$}", c, w = widths[k]))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let mut out = fmt_row(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            out.push('\n');
            for r in rows {
                out.push_str(&fmt_row(r));
                out.push('\n');
            }
            out
        }
    }
}

/// The fifteen labels of the dimension table, grouped by degree.
fn dims_table_labels() -> Vec<&'static str> {
    vec![
        "(3,1)",
        "(2,1,1)",
        "(4,1)",
        "(3,2)",
        "(3,1,1)",
        "(2,2,1)",
        "(2,1,1,1)",
        "(5,1)",
        "(4,2)",
        "(3,3)",
        "(4,1,1)",
        "(3,2,1)",
        "(6,1)",
        "(5,2)",
        "(4,3)",
    ]
}

/// Cumulative dimension block: (nu, per-m values, printed through m column).
fn dims_table_witt_rows() -> Vec<(usize, usize)> {
    // (nu, largest m printed)
    vec![(2, 5), (3, 5), (4, 5), (5, 5), (6, 4), (7, 4), (8, 3)]
}

pub fn render_dims_table(format: Format) -> String {
    let mut rows = Vec::new();
    for lam in dims_table_labels() {
        let p: Partition = lam.parse().unwrap();
        let mut row = vec![lam.to_string()];
        for m in 2..=5 {
            row.push(weyl_dim(&p, m).to_string());
        }
        rows.push(row);
    }
    let top = render_table(format, &["lambda", "m=2", "m=3", "m=4", "m=5"], &rows);
    let mut rows = Vec::new();
    for (nu, max_m) in dims_table_witt_rows() {
        let mut row = vec![format!("n_{{m,{nu}}}")];
        for m in 2..=5 {
            if m <= max_m {
                row.push(witt_cumulative(m, nu).to_string());
            } else {
                row.push("-".to_string());
            }
        }
        rows.push(row);
    }
    let bottom = render_table(format, &["algebra", "m=2", "m=3", "m=4", "m=5"], &rows);
    format!("Schur module dimensions\n{top}\nFree nilpotent Lie algebra dimensions\n{bottom}")
}

pub fn render_decompose(format: Format, m: usize, n: usize) -> Result<String> {
    let alg = FreeLie::shared(m, n)?;
    let rep = alg.decompose_degree(n)?;
    let mut rows = Vec::new();
    for e in &rep.entries {
        rows.push(vec![
            e.lambda.to_string(),
            e.multiplicity.to_string(),
            e.dim_each.to_string(),
        ]);
    }
    let mut out = render_table(format, &["lambda", "multiplicity", "dim"], &rows);
    out.push_str(&format!(
        "total {}  (graded dimension {})\n",
        rep.total_dim,
        witt_dim(m, n)
    ));
    Ok(out)
}

/// Census rows grouped so that a sampled family prints as a single row.
pub fn census_rows(entries: &[CensusEntry]) -> Vec<Vec<String>> {
    let mut grouped: BTreeMap<(usize, usize, usize, String), Vec<&CensusEntry>> = BTreeMap::new();
    let mut order: Vec<(usize, usize, usize, String)> = Vec::new();
    for e in entries {
        let key = (e.dim, e.m, e.nu, e.family_key());
        if !grouped.contains_key(&key) {
            order.push(key.clone());
        }
        grouped.entry(key).or_default().push(e);
    }
    order.sort();
    let mut rows = Vec::new();
    for key in order {
        let group = &grouped[&key];
        let first = group[0];
        if first.family.is_empty() {
            rows.push(vec![
                first.dim.to_string(),
                first.nu.to_string(),
                first.m.to_string(),
                first.algebra_name(),
                String::new(),
            ]);
        } else {
            let mut name = first.algebra_name();
            for tag in &first.family {
                name = name.replace(&format!("U_{}", tag.mu), "U_mu");
            }
            let mus: Vec<String> = group
                .iter()
                .flat_map(|e| e.family.iter().map(|t| t.mu.to_string()))
                .collect();
            rows.push(vec![
                first.dim.to_string(),
                first.nu.to_string(),
                first.m.to_string(),
                name,
                format!("family, mu in {{{}}}", mus.join(", ")),
            ]);
        }
    }
    rows
}

pub fn render_small_dim_table(format: Format, mus: &[MuParam]) -> Result<String> {
    let entries = classify_up_to_dim(20, mus)?;
    let rows = census_rows(&entries);
    Ok(render_table(
        format,
        &["dim", "nu", "m", "algebra", "notes"],
        &rows,
    ))
}

pub fn render_two_gen_table(format: Format, mus: &[MuParam]) -> Result<String> {
    let mut all = Vec::new();
    for nu in 2..=6 {
        all.extend(enumerate_pseudo_free(2, nu, None, mus)?);
    }
    let mut rows = Vec::new();
    for e in &all {
        rows.push(vec![e.nu.to_string(), e.algebra_name(), e.dim.to_string()]);
    }
    rows.sort_by_key(|r| {
        (
            r[0].parse::<usize>().unwrap(),
            r[2].parse::<usize>().unwrap(),
            r[1].clone(),
        )
    });
    Ok(render_table(format, &["nu", "algebra", "dim"], &rows))
}

pub fn render_index5_table(format: Format, mus: &[MuParam]) -> Result<String> {
    let mut rows = Vec::new();
    for nu in 2..=5 {
        for m in 2..=4 {
            for e in enumerate_pseudo_free(m, nu, None, mus)? {
                rows.push(vec![nu.to_string(), m.to_string(), e.algebra_name()]);
            }
        }
    }
    Ok(render_table(format, &["nu", "m", "algebra"], &rows))
}

fn parse_mus(s: Option<&str>) -> Result<Vec<MuParam>> {
    match s {
        None => Ok(default_mu_samples()),
        Some(list) => split_outside_parens(list)
            .iter()
            .map(|x| x.parse())
            .collect(),
    }
}

/// Splits a comma-separated list while keeping parenthesized groups intact,
/// so `V(4,1),V(3,2)` yields two labels.
fn split_outside_parens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Deterministic polynomial rendering: monomials by (total degree, exponent
/// vector), form entries as `wedge ⊗ basis` with dual labels primed.
pub fn render_form_poly(p: &FormPoly, g: &StructureConstants) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ctx = crate::kuranishi::WedgeContext::new(g.dim, p.q.max(2));
    let mut terms: Vec<(usize, Vec<u8>, String)> = Vec::new();
    for (mono, form) in p.terms() {
        let deg: usize = mono.iter().map(|&e| e as usize).sum();
        let mut mono_str: Vec<String> = Vec::new();
        for (v, &e) in mono.iter().enumerate() {
            match e {
                0 => {}
                1 => mono_str.push(format!("t{}", v + 1)),
                _ => mono_str.push(format!("t{}^{}", v + 1, e)),
            }
        }
        let mono_label = if mono_str.is_empty() {
            "1".to_string()
        } else {
            mono_str.join("*")
        };
        let mut entry_strs = Vec::new();
        for ((w, k), c) in form.entries() {
            let wedge: Vec<String> = ctx
                .subset(p.q, *w)
                .iter()
                .map(|&i| format!("{}'", g.labels[i as usize]))
                .collect();
            entry_strs.push(format!(
                "({}) {}(x){}",
                c,
                wedge.join("^"),
                g.labels[*k as usize]
            ));
        }
        terms.push((
            deg,
            mono.clone(),
            format!("{mono_label}: {}", entry_strs.join(" + ")),
        ));
    }
    terms.sort();
    terms
        .into_iter()
        .map(|(_, _, s)| s)
        .collect::<Vec<_>>()
        .join("\n")
}

fn check_report_text(
    g: &StructureConstants,
    report: &crate::kuranishi::UnobstructedReport,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "algebra: dim {} over {}, {} generators, nilpotency index {}\n",
        g.dim, g.field, g.generators, g.nu
    ));
    out.push_str(&format!("pseudo-free: {}\n", report.pseudo_free));
    out.push_str(&format!(
        "reality (presentation ideal conjugation-invariant): {}\n",
        report.ideal_conj_equal
    ));
    out.push_str(&format!("verdict: {}\n", report.verdict));
    out.push_str(&format!(
        "lattice: {}\n",
        if report.lattice_rational {
            "structure constants rational, so a lattice exists"
        } else {
            "not decided (structure constants not rational)"
        }
    ));
    match &report.analytic {
        Some(data) => {
            out.push_str(&format!(
                "analytic evidence (dim H^1 = {}):\n",
                data.n_params
            ));
            out.push_str(&format!(
                "  power series vanishes beyond the nilpotency index: {}\n",
                data.termination_ok
            ));
            out.push_str(&format!(
                "  higher terms have zero harmonic part: {}\n",
                data.harmonic_phi_ok
            ));
            out.push_str(&format!(
                "  Maurer-Cartan defect identically zero: {}\n",
                data.mc.is_zero()
            ));
            if data.obs.is_zero() {
                out.push_str("  obstruction polynomial: 0\n");
            } else {
                out.push_str(&format!(
                    "  obstruction polynomial ({} monomials, degree {}):\n{}\n",
                    data.obs.num_terms(),
                    data.obs.total_degree(),
                    render_form_poly(&data.obs, g)
                ));
            }
            out.push_str("consistency: algebraic verdict matches the analytic evidence\n");
        }
        None => out.push_str("analytic evidence: skipped (dimension exceeds the cap)\n"),
    }
    if let Some(w) = &report.witness {
        out.push_str(&format!(
            "witness: a generator map violating relation {:?} in degree {} (row {})\n",
            w.relation, w.degree, w.row
        ));
    }
    out
}

fn check_report_json(
    g: &StructureConstants,
    report: &crate::kuranishi::UnobstructedReport,
) -> String {
    let mut map = serde_json::Map::new();
    map.insert("dim".into(), g.dim.into());
    map.insert("field".into(), g.field.to_string().into());
    map.insert("pseudo_free".into(), report.pseudo_free.into());
    map.insert("reality".into(), report.ideal_conj_equal.into());
    map.insert("verdict".into(), report.verdict.to_string().into());
    map.insert("lattice_rational".into(), report.lattice_rational.into());
    if let Some(data) = &report.analytic {
        map.insert("dim_h1".into(), data.n_params.into());
        map.insert("obs_zero".into(), data.obs.is_zero().into());
        map.insert("obs".into(), render_form_poly(&data.obs, g).into());
        map.insert("mc_defect_zero".into(), data.mc.is_zero().into());
        map.insert("termination_ok".into(), data.termination_ok.into());
    }
    if let Some(w) = &report.witness {
        map.insert("witness_degree".into(), w.degree.into());
        map.insert("witness_relation".into(), w.relation.clone().into());
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap()
}

fn run_cmd(cli: &Cli) -> Result<Option<Verdict>> {
    match &cli.cmd {
        Cmd::Witt { m, nu } => {
            let mut rows = Vec::new();
            let mut total = 0usize;
            for n in 1..=*nu {
                let d = witt_dim(*m, n);
                total += d;
                rows.push(vec![n.to_string(), d.to_string(), total.to_string()]);
            }
            print!(
                "{}",
                render_table(cli.format, &["degree", "dim", "cumulative"], &rows)
            );
            Ok(None)
        }
        Cmd::Weyl { lambda, m } => {
            let p: Partition = lambda.parse()?;
            println!("{}", weyl_dim(&p, *m));
            Ok(None)
        }
        Cmd::Mult { lambda } => {
            let p: Partition = lambda.parse()?;
            println!("{}", free_lie_multiplicity(&p)?);
            Ok(None)
        }
        Cmd::Decompose { m, n } => {
            print!("{}", render_decompose(cli.format, *m, *n)?);
            Ok(None)
        }
        Cmd::Hwv { lambda, m, nu } => {
            let p: Partition = lambda.parse()?;
            let nu = nu.unwrap_or(p.size());
            let alg = FreeLie::new(*m, nu, cli.cap)?;
            for v in alg.highest_weight_vectors(&p)? {
                println!("{}", alg.print_element(&v));
            }
            Ok(None)
        }
        Cmd::Closure {
            m,
            nu,
            components,
            family,
            mu,
            emit,
        } => {
            let alg = FreeLie::new(*m, *nu, cli.cap)?;
            let mut gens = GradedSubspace::zero(&alg);
            for part in split_outside_parens(components) {
                let label = part.trim().trim_start_matches('V');
                let lam: Partition = label.parse()?;
                let n = lam.size();
                let mut comp = gens.component(n).clone();
                for hwv in alg.highest_weight_vectors(&lam)? {
                    comp = comp.sum(&alg.irrep_span(&hwv)?)?;
                }
                gens.set_component(n, comp);
            }
            let ideal = if let Some(fam_label) = family {
                let lam: Partition = fam_label.trim().trim_start_matches('V').parse()?;
                let mu: MuParam = mu.as_deref().unwrap_or("1:0").parse()?;
                let fam = PseudoFreeFamily::new(&alg, gens, lam)?;
                crate::verbal::build_family(&alg, &fam, &mu)?.1
            } else {
                verbal_closure(&alg, &gens)?
            };
            let dims = ideal.ideal.degree_dims();
            println!(
                "ideal degree dimensions: {dims:?} (total {})",
                ideal.ideal.dim()
            );
            println!(
                "quotient dimension: {}",
                witt_cumulative(*m, *nu) - ideal.ideal.dim()
            );
            for n in 1..=*nu {
                let comp = ideal.ideal.component(n);
                if !comp.is_zero() {
                    let rep = alg.decompose(comp, n)?;
                    println!("degree {n}: {}", rep.summary());
                }
            }
            match emit.as_deref() {
                Some("ideal") => println!("{}", io::ideal_to_json(&alg, &ideal.ideal)),
                Some("algebra") => {
                    let g = StructureConstants::quotient(&alg, &ideal.ideal)?;
                    println!("{}", io::algebra_to_json(&g));
                }
                Some(other) => return Err(Error::Input(format!("unknown emit target {other:?}"))),
                None => {}
            }
            Ok(None)
        }
        Cmd::Classify {
            dim_bound,
            mu,
            m,
            nu,
        } => {
            let mus = parse_mus(mu.as_deref())?;
            let entries = match (m, nu) {
                (Some(m), Some(nu)) => enumerate_pseudo_free(*m, *nu, Some(*dim_bound), &mus)?,
                (None, None) => classify_up_to_dim(*dim_bound, &mus)?,
                _ => return Err(Error::Input("--m and --nu must be given together".into())),
            };
            let rows = census_rows(&entries);
            print!(
                "{}",
                render_table(cli.format, &["dim", "nu", "m", "algebra", "notes"], &rows)
            );
            Ok(None)
        }
        Cmd::Tables { which } => {
            let mus = default_mu_samples();
            let text = match which {
                TableKind::Dims => render_dims_table(cli.format),
                TableKind::SmallDim => render_small_dim_table(cli.format, &mus)?,
                TableKind::TwoGen => render_two_gen_table(cli.format, &mus)?,
                TableKind::Nu5 => render_index5_table(cli.format, &mus)?,
            };
            print!("{text}");
            Ok(None)
        }
        Cmd::Check {
            algebra,
            analytic_cap,
            json,
        } => {
            let text = std::fs::read_to_string(algebra)
                .map_err(|e| Error::Input(format!("cannot read {algebra}: {e}")))?;
            let g = io::algebra_from_json(&text)?;
            let config = DecideConfig {
                analytic_cap: *analytic_cap,
                seed: cli.seed,
                ..Default::default()
            };
            let report = decide_unobstructed(&g, &config)?;
            if *json {
                println!("{}", check_report_json(&g, &report));
            } else {
                print!("{}", check_report_text(&g, &report));
            }
            Ok(Some(report.verdict))
        }
        Cmd::Kuranishi {
            algebra,
            analytic_cap,
        } => {
            let text = std::fs::read_to_string(algebra)
                .map_err(|e| Error::Input(format!("cannot read {algebra}: {e}")))?;
            let g = io::algebra_from_json(&text)?;
            let data = crate::kuranishi::kuranishi_series(&g, *analytic_cap)?;
            println!("dim H^1 = {}", data.n_params);
            for (k, p) in data.phi_parts.iter().enumerate() {
                println!("Phi_{} monomials: {}", k + 1, p.num_terms());
            }
            println!(
                "series terminates beyond the nilpotency index: {}",
                data.termination_ok
            );
            println!("Maurer-Cartan defect zero: {}", data.mc.is_zero());
            if data.obs.is_zero() {
                println!("obstruction polynomial: 0");
            } else {
                println!(
                    "obstruction polynomial:\n{}",
                    render_form_poly(&data.obs, &g)
                );
            }
            Ok(None)
        }
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match run_cmd(&cli) {
        Ok(Some(Verdict::Obstructed)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ResourceCap(_) => 3,
                Error::Inconsistency(_) => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_table_matches_formula_values() {
        let text = render_dims_table(Format::Plain);
        assert!(text.contains("n_{m,7}"));
        // spot values from the printed table
        assert!(text.contains("3304"));
        assert!(text.contains("508"));
        assert!(text.contains("964"));
    }

    #[test]
    fn table_formats_are_consistent() {
        let rows = vec![vec!["a".to_string(), "1".to_string()]];
        let plain = render_table(Format::Plain, &["x", "y"], &rows);
        let tsv = render_table(Format::Tsv, &["x", "y"], &rows);
        let md = render_table(Format::Markdown, &["x", "y"], &rows);
        assert!(plain.contains('a') && tsv.contains('\t') && md.contains('|'));
    }
}
