//! Grid verification: every closed form against the backtracking oracle.
//!
//! A grid is expanded into cells (one per parameter tuple, and one per
//! pattern `φ` for the exactly-once counts). Cells run concurrently; the
//! report lists them in the order the grid was expanded, which is sorted by
//! theorem and then parameters.

use std::collections::BTreeMap;
use std::time::Instant;

use colperm_core::formulas::{cor_full_union_count, cor_union_count, thm1_count, thm2_count, thm3_count};
use colperm_core::{
    build_t, build_t_union, BigCount, ColourSet, ColouredPermutation, EnumerationBudget, FamilyParams, PatternSet,
    Search,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, ExitCode};
use crate::report::{csv_field, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Thm1,
    CorUnion,
    CorFull,
    Thm2,
    Thm3,
    All,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::CorUnion => "cor-union",
            Theorem::CorFull => "cor-full",
            Theorem::Thm2 => "thm2",
            Theorem::Thm3 => "thm3",
            Theorem::All => "all",
        }
    }

    fn expand(self) -> Vec<Theorem> {
        match self {
            Theorem::All => vec![Theorem::Thm1, Theorem::CorUnion, Theorem::CorFull, Theorem::Thm2, Theorem::Thm3],
            t => vec![t],
        }
    }
}

/// Grid restrictions. A fixed value (`k`, `r`, `d`, `m`, `n`) pins that
/// parameter; `max_*` caps the default ranges.
#[derive(Clone, Debug, Serialize)]
pub struct GridBounds {
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub max_n: Option<u32>,
    pub max_k: Option<u32>,
    pub max_r: Option<u32>,
    /// Per-cell cap on search states.
    pub budget: u64,
}

pub const DEFAULT_CELL_BUDGET: u64 = 50_000_000;

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            k: None,
            r: None,
            d: None,
            m: None,
            n: None,
            max_n: None,
            max_k: None,
            max_r: None,
            budget: DEFAULT_CELL_BUDGET,
        }
    }
}

impl GridBounds {
    fn ks(&self, lo: u32, default_hi: u32) -> Vec<u32> {
        match self.k {
            Some(k) => vec![k],
            None => (lo..=self.max_k.unwrap_or(default_hi)).collect(),
        }
    }

    fn rs(&self, default_hi: u32) -> Vec<u32> {
        match self.r {
            Some(r) => vec![r],
            None => (1..=self.max_r.unwrap_or(default_hi)).collect(),
        }
    }

    fn ns(&self, lo: u32, default_hi: u32) -> Vec<u32> {
        match self.n {
            Some(n) => vec![n],
            None => (lo..=self.max_n.unwrap_or(default_hi)).collect(),
        }
    }

    /// First-`d` colour sets for `d` in `1..=r`, or just the pinned `d`.
    fn first_colour_sets(&self, r: u32) -> Result<Vec<ColourSet>, CliError> {
        let ds: Vec<u32> = match self.d {
            Some(d) => vec![d],
            None => (1..=r).collect(),
        };
        ds.into_iter().map(|d| Ok(ColourSet::first(d, r)?)).collect()
    }
}

/// Parameters identifying one cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CellParams {
    pub theorem: &'static str,
    pub k: u32,
    pub r: u32,
    pub d: u32,
    #[serde(rename = "I")]
    pub colours: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub params: CellParams,
    pub formula: String,
    /// `None` when the cell was skipped for exceeding its budget.
    pub oracle: Option<String>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub states: Option<String>,
    pub ms: u64,
    /// For the full-union corollary: agreement with the `a..b` union form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub mismatches: usize,
    pub skipped: usize,
    /// Every group of cells differing only in `φ` has a single oracle value.
    pub phi_independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridDescription {
    pub theorems: Vec<&'static str>,
    pub bounds: GridBounds,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub grid: GridDescription,
    pub cells: Vec<Cell>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn exit_code(&self) -> ExitCode {
        if self.summary.mismatches > 0 || !self.summary.phi_independent {
            ExitCode::Mismatch
        } else if self.summary.skipped > 0 {
            ExitCode::Budget
        } else {
            ExitCode::Success
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Plain => self.render_plain(),
        }
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let status = match c.matched {
                Some(true) if c.identity != Some(false) => "ok  ",
                Some(_) => "FAIL",
                None => "skip",
            };
            let p = &c.params;
            let mut line = format!("{status} {} n={} k={} r={} d={} I={}", p.theorem, p.n, p.k, p.r, p.d, p.colours);
            if let Some(m) = p.m {
                line += &format!(" m={m}");
            }
            if let (Some(a), Some(b)) = (p.a, p.b) {
                line += &format!(" a={a} b={b}");
            }
            if let Some(phi) = &p.phi {
                line += &format!(" phi={phi}");
            }
            line += &format!(" formula={} oracle={}", c.formula, c.oracle.as_deref().unwrap_or("-"));
            out.push_str(&line);
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "cells={} mismatches={} skipped={} phi_independent={}\n",
            s.cells, s.mismatches, s.skipped, s.phi_independent
        ));
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("theorem,n,k,r,d,I,m,a,b,phi,formula,oracle,match,states,ms\n");
        let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        for c in &self.cells {
            let p = &c.params;
            let row = [
                p.theorem.to_string(),
                p.n.to_string(),
                p.k.to_string(),
                p.r.to_string(),
                p.d.to_string(),
                p.colours.clone(),
                opt(p.m),
                opt(p.a),
                opt(p.b),
                p.phi.clone().unwrap_or_default(),
                c.formula.clone(),
                c.oracle.clone().unwrap_or_default(),
                c.matched.map(|m| m.to_string()).unwrap_or_default(),
                c.states.clone().unwrap_or_default(),
                c.ms.to_string(),
            ];
            out.push_str(&row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

enum Job {
    Avoid(PatternSet),
    Once(PatternSet, ColouredPermutation),
}

struct PlannedCell {
    params: CellParams,
    formula: BigCount,
    identity: Option<bool>,
    job: Job,
}

fn default_thm1_n(r: u32) -> u32 {
    match r {
        1 => 6,
        2 => 5,
        _ => 4,
    }
}

fn base_params(theorem: &'static str, k: u32, r: u32, colours: &ColourSet, n: u32) -> CellParams {
    CellParams {
        theorem,
        k,
        r,
        d: colours.d(),
        colours: colours.to_string(),
        m: None,
        a: None,
        b: None,
        n,
        phi: None,
    }
}

fn plan_thm1(bounds: &GridBounds, out: &mut Vec<PlannedCell>) -> Result<(), CliError> {
    for k in bounds.ks(1, 3) {
        for r in bounds.rs(3) {
            let sets = ColourSet::all_subsets(r)
                .into_iter()
                .filter(|s| s.d() >= 1 && bounds.d.is_none_or(|d| s.d() == d));
            for colours in sets {
                let p = FamilyParams::for_colours(k, &colours)?;
                let ms: Vec<u32> = bounds.m.map_or_else(|| (1..=k).collect(), |m| vec![m]);
                for m in ms {
                    let t = build_t(k, r, m, &colours)?;
                    for n in bounds.ns(0, default_thm1_n(r)) {
                        out.push(PlannedCell {
                            params: CellParams { m: Some(m), ..base_params("thm1", k, r, &colours, n) },
                            formula: thm1_count(n, &p),
                            identity: None,
                            job: Job::Avoid(t.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn plan_union(bounds: &GridBounds, out: &mut Vec<PlannedCell>) -> Result<(), CliError> {
    for k in bounds.ks(2, 3) {
        for r in bounds.rs(2) {
            for colours in bounds.first_colour_sets(r)? {
                let p = FamilyParams::for_colours(k, &colours)?;
                for a in 1..=k {
                    for b in a..=k {
                        let t = build_t_union(k, r, a, b, &colours)?;
                        for n in bounds.ns(0, 5) {
                            out.push(PlannedCell {
                                params: CellParams {
                                    a: Some(a),
                                    b: Some(b),
                                    ..base_params("cor-union", k, r, &colours, n)
                                },
                                formula: cor_union_count(n, a, b, &p)?,
                                identity: None,
                                job: Job::Avoid(t.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn plan_full_union(bounds: &GridBounds, out: &mut Vec<PlannedCell>) -> Result<(), CliError> {
    for k in bounds.ks(2, 3) {
        for r in bounds.rs(2) {
            for colours in bounds.first_colour_sets(r)? {
                let p = FamilyParams::for_colours(k, &colours)?;
                let t = build_t_union(k, r, 1, k, &colours)?;
                for n in bounds.ns(k, 5).into_iter().filter(|&n| n >= k) {
                    let full = cor_full_union_count(n, &p)?;
                    let identity = full == cor_union_count(n, 1, k, &p)?;
                    out.push(PlannedCell {
                        params: CellParams { a: Some(1), b: Some(k), ..base_params("cor-full", k, r, &colours, n) },
                        formula: full,
                        identity: Some(identity),
                        job: Job::Avoid(t.clone()),
                    });
                }
            }
        }
    }
    Ok(())
}

fn plan_thm2(bounds: &GridBounds, out: &mut Vec<PlannedCell>) -> Result<(), CliError> {
    for k in bounds.ks(2, 3) {
        for r in bounds.rs(2) {
            for colours in bounds.first_colour_sets(r)? {
                if colours.d() == 0 {
                    continue;
                }
                let p = FamilyParams::for_colours(k, &colours)?;
                let mut families = vec![1, k];
                families.dedup();
                if let Some(m) = bounds.m {
                    families.retain(|&f| f == m);
                }
                for m in families {
                    let t = build_t(k, r, m, &colours)?;
                    for n in bounds.ns(k, 5) {
                        let formula = thm2_count(n, &p)?;
                        for phi in t.iter() {
                            out.push(PlannedCell {
                                params: CellParams {
                                    m: Some(m),
                                    phi: Some(phi.to_string()),
                                    ..base_params("thm2", k, r, &colours, n)
                                },
                                formula: formula.clone(),
                                identity: None,
                                job: Job::Once(t.clone(), phi.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn plan_thm3(bounds: &GridBounds, out: &mut Vec<PlannedCell>) -> Result<(), CliError> {
    for k in bounds.ks(3, 3) {
        if k < 3 {
            return Err(CliError::Usage(format!("thm3 needs k >= 3, got k={k}")));
        }
        for r in bounds.rs(2) {
            for colours in bounds.first_colour_sets(r)? {
                if colours.d() == 0 {
                    continue;
                }
                let ms: Vec<u32> = bounds.m.map_or_else(|| (2..k).collect(), |m| vec![m]);
                for m in ms {
                    let p = FamilyParams::for_colours(k, &colours)?.with_m(m)?;
                    let t = build_t(k, r, m, &colours)?;
                    for n in bounds.ns(k, 5) {
                        let formula = thm3_count(n, &p)?;
                        for phi in t.iter() {
                            out.push(PlannedCell {
                                params: CellParams {
                                    m: Some(m),
                                    phi: Some(phi.to_string()),
                                    ..base_params("thm3", k, r, &colours, n)
                                },
                                formula: formula.clone(),
                                identity: None,
                                job: Job::Once(t.clone(), phi.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn plan(theorem: Theorem, bounds: &GridBounds) -> Result<Vec<PlannedCell>, CliError> {
    let mut cells = Vec::new();
    for t in theorem.expand() {
        match t {
            Theorem::Thm1 => plan_thm1(bounds, &mut cells)?,
            Theorem::CorUnion => plan_union(bounds, &mut cells)?,
            Theorem::CorFull => plan_full_union(bounds, &mut cells)?,
            Theorem::Thm2 => plan_thm2(bounds, &mut cells)?,
            Theorem::Thm3 => plan_thm3(bounds, &mut cells)?,
            Theorem::All => unreachable!("expanded"),
        }
    }
    if cells.is_empty() {
        return Err(CliError::Usage(format!("the {} grid is empty for these bounds", theorem.name())));
    }
    Ok(cells)
}

fn run_cell(cell: PlannedCell, budget: EnumerationBudget) -> Result<Cell, CliError> {
    let start = Instant::now();
    let search = match &cell.job {
        Job::Avoid(t) => Search::avoiders(cell.params.n, cell.params.r, t)?,
        Job::Once(t, phi) => Search::exactly_once(cell.params.n, cell.params.r, t, phi)?,
    }
    .with_budget(budget);
    let outcome = match search.count() {
        Ok(rep) => Some(rep),
        Err(colperm_core::Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let ms = start.elapsed().as_millis() as u64;
    Ok(Cell {
        formula: cell.formula.to_decimal(),
        oracle: outcome.as_ref().map(|r| r.count.to_decimal()),
        matched: outcome.as_ref().map(|r| r.count == cell.formula && cell.identity != Some(false)),
        states: outcome.as_ref().map(|r| r.states_visited.to_decimal()),
        ms,
        identity: cell.identity,
        params: cell.params,
    })
}

fn phi_independent(cells: &[Cell]) -> bool {
    let mut groups: BTreeMap<CellParams, &str> = BTreeMap::new();
    for c in cells {
        let (Some(_), Some(oracle)) = (&c.params.phi, &c.oracle) else {
            continue;
        };
        let key = CellParams { phi: None, ..c.params.clone() };
        match groups.get(&key) {
            Some(seen) if *seen != oracle.as_str() => return false,
            Some(_) => {}
            None => {
                groups.insert(key, oracle);
            }
        }
    }
    true
}

/// Expands the grid, runs every cell and summarizes.
pub fn run_verify(theorem: Theorem, bounds: &GridBounds) -> Result<VerificationReport, CliError> {
    let budget = EnumerationBudget::new(bounds.budget)?;
    let planned = plan(theorem, bounds)?;
    let cells = planned
        .into_par_iter()
        .map(|c| run_cell(c, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = Summary {
        cells: cells.len(),
        mismatches: cells.iter().filter(|c| c.matched == Some(false)).count(),
        skipped: cells.iter().filter(|c| c.matched.is_none()).count(),
        phi_independent: phi_independent(&cells),
    };
    Ok(VerificationReport {
        grid: GridDescription { theorems: theorem.expand().into_iter().map(Theorem::name).collect(), bounds: bounds.clone() },
        cells,
        summary,
    })
}
