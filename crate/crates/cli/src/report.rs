//! Report types (serialized to JSON) and the plain-text table rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use swan_core::linalg::FGModule;

use crate::scenario::{ScenarioFile, Task};

/// An abelian group `ℤ^rank ⊕ ⊕ ℤ/d_i` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleValue {
    pub rank: usize,
    pub torsion: Vec<String>,
    pub text: String,
}

impl From<&FGModule> for ModuleValue {
    fn from(m: &FGModule) -> Self {
        Self { rank: m.rank(), torsion: m.torsion().iter().map(|d| d.to_string()).collect(), text: m.to_string() }
    }
}

pub fn grid(g: &[Vec<FGModule>]) -> Vec<Vec<ModuleValue>> {
    g.iter().map(|col| col.iter().map(ModuleValue::from).collect()).collect()
}

/// A checked equality; `left` and `right` name the compared values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub left: String,
    pub right: String,
    pub holds: bool,
}

impl Verdict {
    pub fn new(check: impl Into<String>, left: impl ToString, right: impl ToString, holds: bool) -> Self {
        Self { check: check.into(), left: left.to_string(), right: right.to_string(), holds }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeValue {
    pub n: usize,
    pub value: ModuleValue,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageGrid {
    pub r: usize,
    /// Indexed `[p][q]`.
    pub cells: Vec<Vec<ModuleValue>>,
    pub certified: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BisubdivInstance {
    pub p: usize,
    pub q: usize,
    pub terms: usize,
    pub boxes: usize,
    pub smallness_index: usize,
    pub tau_terms: usize,
    pub homotopy_terms: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskOutput {
    SwanPages {
        stable_page: usize,
        pages: Vec<PageGrid>,
        total: Vec<DegreeValue>,
    },
    Compare {
        swan_e2: Vec<Vec<ModuleValue>>,
        grothendieck_e2: Vec<Vec<ModuleValue>>,
        certified: Vec<Vec<bool>>,
        total: Vec<DegreeValue>,
        borel: Vec<ModuleValue>,
        quotient: Option<Vec<ModuleValue>>,
    },
    GroupCohomology {
        resolution: String,
        ranks: Vec<usize>,
        values: Vec<ModuleValue>,
    },
    Borel {
        n_max: usize,
        level_sizes: Vec<usize>,
        values: Vec<ModuleValue>,
    },
    BisubdivDemo {
        seed: u64,
        instances: Vec<BisubdivInstance>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: Task,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<TaskOutput>,
    pub verdicts: Vec<Verdict>,
}

impl TaskReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdicts.iter().all(|v| v.holds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceEcho {
    pub vertices: usize,
    pub dimension: usize,
    pub simplex_counts: Vec<usize>,
    pub regular: bool,
    pub free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioEcho {
    pub file: ScenarioFile,
    pub group_order: usize,
    pub group_generators: Vec<usize>,
    pub module: ModuleValue,
    pub module_trivial_action: bool,
    pub space: SpaceEcho,
    pub seed: u64,
    pub max_page: Option<usize>,
}

/// The machine-readable report; contains no timings, so identical inputs
/// give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: ScenarioEcho,
    pub tasks: Vec<TaskReport>,
    pub verdict: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failed_verdicts(&self) -> impl Iterator<Item = (&Task, &Verdict)> {
        self.tasks.iter().flat_map(|t| t.verdicts.iter().filter(|v| !v.holds).map(move |v| (&t.task, v)))
    }
}

fn pad(s: &str, w: usize) -> String {
    let n = s.chars().count();
    format!("{}{s}", " ".repeat(w.saturating_sub(n)))
}

/// Rows `q` from top to bottom, columns `p`; `*` marks uncertified cells.
fn render_grid(out: &mut String, cells: &[Vec<ModuleValue>], certified: Option<&[Vec<bool>]>) {
    if cells.is_empty() {
        return;
    }
    let q_max = cells[0].len() - 1;
    let label = |p: usize, q: usize| {
        let mark = certified.map_or("", |c| if c[p][q] { "" } else { "*" });
        format!("{}{mark}", cells[p][q].text)
    };
    let width = (0..cells.len())
        .flat_map(|p| (0..=q_max).map(move |q| (p, q)))
        .map(|(p, q)| label(p, q).chars().count())
        .max()
        .unwrap_or(1)
        .max(3);
    for q in (0..=q_max).rev() {
        let row: Vec<String> = (0..cells.len()).map(|p| pad(&label(p, q), width)).collect();
        let _ = writeln!(out, "  q={q:<2}| {}", row.join("  "));
    }
    let axis: Vec<String> = (0..cells.len()).map(|p| pad(&format!("p={p}"), width)).collect();
    let _ = writeln!(out, "       {}", axis.join("  "));
}

fn render_degrees(out: &mut String, label: &str, values: &[DegreeValue]) {
    let parts: Vec<String> =
        values.iter().map(|d| format!("{}{}", d.value.text, if d.certified { "" } else { "*" })).collect();
    let _ = writeln!(out, "  {label}: {}", parts.join(", "));
}

/// Human-readable rendering, including per-task wall-clock timings.
pub fn render_text(report: &Report, timings: &[Duration]) -> String {
    let mut out = String::new();
    let s = &report.scenario;
    let name = if s.file.name.is_empty() { "(unnamed)" } else { &s.file.name };
    let _ = writeln!(out, "scenario {name}: |G| = {}, A = {} over {}", s.group_order, s.module.text, s.file.ring);
    let _ = writeln!(
        out,
        "space: {} vertices, dim {}, simplices {:?}, regular {}, free {}",
        s.space.vertices, s.space.dimension, s.space.simplex_counts, s.space.regular, s.space.free
    );
    let t = &s.file.truncation;
    let _ = writeln!(out, "resolution {}, p_max {}, q_max {}, borel_n_max {}", s.file.resolution, t.p_max, t.q_max, t.borel_n_max);
    for (i, task) in report.tasks.iter().enumerate() {
        let time = timings.get(i).map_or(String::new(), |d| format!(" [{:.3}s]", d.as_secs_f64()));
        let status = if task.passed() { "ok" } else { "FAILED" };
        let _ = writeln!(out, "\n== {} — {status}{time}", task.task.as_str());
        if let Some(e) = &task.error {
            let _ = writeln!(out, "  error: {e}");
        }
        match &task.output {
            Some(TaskOutput::SwanPages { stable_page, pages, total }) => {
                let _ = writeln!(out, "  stable from page {stable_page}; * marks cells affected by truncation");
                for page in pages {
                    let _ = writeln!(out, "  E_{}:", page.r);
                    render_grid(&mut out, &page.cells, Some(&page.certified));
                }
                render_degrees(&mut out, "H^n(Tot)", total);
            }
            Some(TaskOutput::Compare { swan_e2, grothendieck_e2, certified, total, borel, quotient }) => {
                let _ = writeln!(out, "  E_2 of the Swan complex (* = outside the certified region):");
                render_grid(&mut out, swan_e2, Some(certified));
                let _ = writeln!(out, "  H^p(G; H^q(X; A)):");
                render_grid(&mut out, grothendieck_e2, Some(certified));
                render_degrees(&mut out, "H^n(Tot)", total);
                let b: Vec<&str> = borel.iter().map(|m| m.text.as_str()).collect();
                let _ = writeln!(out, "  Borel: {}", b.join(", "));
                if let Some(q) = quotient {
                    let v: Vec<&str> = q.iter().map(|m| m.text.as_str()).collect();
                    let _ = writeln!(out, "  X/G: {}", v.join(", "));
                }
            }
            Some(TaskOutput::GroupCohomology { resolution, ranks, values }) => {
                let v: Vec<&str> = values.iter().map(|m| m.text.as_str()).collect();
                let _ = writeln!(out, "  {resolution} resolution ranks {ranks:?}");
                let _ = writeln!(out, "  H^p(G; A), p = 0..: {}", v.join(", "));
            }
            Some(TaskOutput::Borel { n_max, level_sizes, values }) => {
                let v: Vec<&str> = values.iter().map(|m| m.text.as_str()).collect();
                let _ = writeln!(out, "  {n_max}-skeleton, level sizes {level_sizes:?}");
                let _ = writeln!(out, "  H^k_G, k < {n_max}: {}", v.join(", "));
            }
            Some(TaskOutput::BisubdivDemo { seed, instances }) => {
                let _ = writeln!(out, "  seed {seed}");
                for (i, b) in instances.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  #{i:<3} ({},{}) terms {:<2} boxes {:<2} n(σ) {}  τ terms {:<5} D terms {}",
                        b.p, b.q, b.terms, b.boxes, b.smallness_index, b.tau_terms, b.homotopy_terms
                    );
                }
            }
            None => {}
        }
        let failed: Vec<&Verdict> = task.verdicts.iter().filter(|v| !v.holds).collect();
        let _ = writeln!(out, "  verdicts: {} checked, {} failed", task.verdicts.len(), failed.len());
        for v in failed {
            let _ = writeln!(out, "    FAILED {}: {} ≠ {}", v.check, v.left, v.right);
        }
    }
    let _ = writeln!(out, "\noverall: {}", if report.verdict { "PASS" } else { "FAIL" });
    out
}
