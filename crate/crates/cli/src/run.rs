//! Task execution.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swan_core::bisubdiv::{boundary_total, rho_total, subdivide_total, SmallChains};
use swan_core::borel::{borel_cohomology_all, borel_space_with};
use swan_core::groupcoh::{hom_rg, resolution, ResolutionKind};
use swan_core::linalg::FGModule;
use swan_core::random::{random_bichain, random_cover};
use swan_core::spectral::{stable_page_index, total_complex, SpectralSequence};
use swan_core::swan::{build_swan_with, compare_with, SwanScenario};
use swan_core::Limits;

use crate::error::CliError;
use crate::report::*;
use crate::scenario::{Scenario, Task};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_page: Option<usize>,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { max_page: None, seed: 0, limits: Limits::from_env() }
    }
}

/// Result of a run: the report, per-task timings, and the first task error
/// (which decides the exit code).
pub struct RunOutcome {
    pub report: Report,
    pub timings: Vec<Duration>,
    pub first_error: Option<CliError>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        match &self.first_error {
            Some(e) => e.exit_code(),
            None if self.report.verdict => 0,
            None => crate::error::EXIT_FALSE_VERDICT,
        }
    }
}

pub fn run(s: &Scenario, opts: &RunOptions) -> RunOutcome {
    let mut tasks = Vec::new();
    let mut timings = Vec::new();
    let mut first_error = None;
    for &task in &s.tasks {
        let start = Instant::now();
        let result = run_task(s, task, opts);
        timings.push(start.elapsed());
        match result {
            Ok((output, verdicts)) => tasks.push(TaskReport { task, error: None, output: Some(output), verdicts }),
            Err(e) => {
                tasks.push(TaskReport { task, error: Some(e.to_string()), output: None, verdicts: Vec::new() });
                first_error.get_or_insert(e);
            }
        }
    }
    let verdict = tasks.iter().all(TaskReport::passed);
    let report = Report { scenario: echo(s, opts), tasks, verdict };
    RunOutcome { report, timings, first_error }
}

fn echo(s: &Scenario, opts: &RunOptions) -> ScenarioEcho {
    let x = &s.space;
    ScenarioEcho {
        file: s.file.clone(),
        group_order: s.group.order(),
        group_generators: s.group.generators().to_vec(),
        module: ModuleValue::from(&s.module.underlying()),
        module_trivial_action: s.module.is_trivial_action(),
        space: SpaceEcho {
            vertices: x.num_vertices(),
            dimension: x.dimension(),
            simplex_counts: (0..=x.dimension()).map(|q| x.count(q)).collect(),
            regular: x.is_regular(),
            free: x.is_free(),
        },
        seed: opts.seed,
        max_page: opts.max_page,
    }
}

type TaskResult = Result<(TaskOutput, Vec<Verdict>), CliError>;

fn run_task(s: &Scenario, task: Task, opts: &RunOptions) -> TaskResult {
    match task {
        Task::SwanPages => swan_pages(s, opts),
        Task::Compare => compare(s, opts),
        Task::GroupCohomology => group_cohomology(s, opts),
        Task::Borel => borel(s, opts),
        Task::BisubdivDemo => bisubdiv_demo(s, opts),
    }
}

fn swan_scenario(s: &Scenario) -> Result<SwanScenario, CliError> {
    SwanScenario::new(s.space.clone(), s.module.clone(), s.p_max(), s.q_max(), s.kind).map_err(CliError::invalid)
}

fn swan_pages(s: &Scenario, opts: &RunOptions) -> TaskResult {
    let sw = swan_scenario(s)?;
    let d = build_swan_with(&sw, &opts.limits).map_err(CliError::computing)?;
    let ss = SpectralSequence::new(&d);
    let stable = stable_page_index(&d);
    let last = opts.max_page.map_or(stable, |m| m.clamp(2, stable));
    let certified: Vec<Vec<bool>> =
        (0..=sw.p_max()).map(|p| (0..=sw.q_max()).map(|q| sw.cell_is_certified(p, q)).collect()).collect();
    let mut pages = Vec::new();
    let mut verdicts = Vec::new();
    for r in 2..=last {
        let e = ss.page(r).map_err(CliError::computing)?;
        verdicts.push(Verdict::new(format!("d_{r}∘d_{r} = 0 on E_{r}"), format!("d_{r}∘d_{r}"), "0", e.d_squared_vanishes()));
        pages.push(PageGrid { r, cells: grid(e.entries()), certified: certified.clone() });
    }
    let tot = total_complex(&d).map_err(CliError::computing)?;
    let total = (0..=d.max_total_degree())
        .map(|n| {
            Ok(DegreeValue {
                n,
                value: ModuleValue::from(&tot.cohomology(n as i64).map_err(CliError::computing)?),
                certified: sw.degree_is_certified(n),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok((TaskOutput::SwanPages { stable_page: stable, pages, total }, verdicts))
}

fn compare(s: &Scenario, opts: &RunOptions) -> TaskResult {
    let sw = swan_scenario(s)?;
    let r = compare_with(&sw, s.borel_n_max(), &opts.limits).map_err(CliError::computing)?;
    let mut verdicts = Vec::new();
    for c in r.e2_cells.iter().filter(|c| c.certified) {
        verdicts.push(Verdict::new(
            format!("E_2^{{{},{}}} equals H^{}(G; H^{}(X; A))", c.p, c.q, c.p, c.q),
            &c.left,
            &c.right,
            c.equal,
        ));
    }
    for g in &r.abutment {
        let graded: Vec<String> = g.graded.iter().map(|(p, m)| format!("E_∞^{{{p},{}}} = {m}", g.n - p)).collect();
        verdicts.push(Verdict::new(
            format!("H^{}(Tot) is filtered with quotients E_∞", g.n),
            &g.total,
            graded.join(", "),
            g.verdict,
        ));
    }
    for b in &r.borel_degrees {
        verdicts.push(Verdict::new(format!("H^{}(Tot) equals Borel H^{}_G", b.n, b.n), &b.left, &b.right, b.equal));
    }
    if let Some(q) = &r.quotient_degrees {
        for b in q {
            verdicts.push(Verdict::new(
                format!("H^{}(Tot) matches H^{}(X/G) in rank and torsion order", b.n, b.n),
                &b.left,
                &b.right,
                b.equal,
            ));
        }
    }
    let certified: Vec<Vec<bool>> =
        (0..=sw.p_max()).map(|p| (0..=sw.q_max()).map(|q| sw.cell_is_certified(p, q)).collect()).collect();
    let total = r.total.iter().enumerate().map(|(n, (m, c))| DegreeValue { n, value: m.into(), certified: *c }).collect();
    let quotient = r.quotient_degrees.as_ref().map(|q| q.iter().map(|d| ModuleValue::from(&d.right)).collect());
    let output = TaskOutput::Compare {
        swan_e2: grid(&r.swan_e2),
        grothendieck_e2: grid(&r.grothendieck_e2),
        certified,
        total,
        borel: r.borel.iter().map(ModuleValue::from).collect(),
        quotient,
    };
    Ok((output, verdicts))
}

fn cohomology_via(s: &Scenario, kind: ResolutionKind, opts: &RunOptions) -> Result<(Vec<usize>, Vec<FGModule>), CliError> {
    let res = resolution(&s.group, kind, s.p_max(), &opts.limits).map_err(CliError::computing)?;
    let c = hom_rg(&res, &s.module).map_err(CliError::computing)?;
    let values = (0..s.p_max()).map(|p| c.cohomology(p as i64)).collect::<Result<_, _>>().map_err(CliError::computing)?;
    Ok(((0..=s.p_max()).map(|p| res.rank(p)).collect(), values))
}

/// `H^p(G; A)` for `p < p_max` (the resolution stops at `P_{p_max}`, the
/// same range the Swan complex certifies); for cyclic groups the other
/// resolution is used as an independent check.
fn group_cohomology(s: &Scenario, opts: &RunOptions) -> TaskResult {
    let (ranks, values) = cohomology_via(s, s.kind, opts)?;
    let mut verdicts = Vec::new();
    if s.group.order() > 1 && s.group.cyclic_generator().is_some() {
        let other = match s.kind {
            ResolutionKind::Bar => ResolutionKind::Periodic,
            ResolutionKind::Periodic => ResolutionKind::Bar,
        };
        let (_, check) = cohomology_via(s, other, opts)?;
        for (p, (a, b)) in values.iter().zip(&check).enumerate() {
            verdicts.push(Verdict::new(format!("H^{p}(G; A) via {} and {other} resolutions", s.kind), a, b, a == b));
        }
    }
    let output = TaskOutput::GroupCohomology {
        resolution: s.kind.to_string(),
        ranks,
        values: values.iter().map(ModuleValue::from).collect(),
    };
    Ok((output, verdicts))
}

fn borel(s: &Scenario, opts: &RunOptions) -> TaskResult {
    let n_max = s.borel_n_max();
    let b = borel_space_with(&s.space, n_max, &opts.limits).map_err(CliError::invalid)?;
    let values = borel_cohomology_all(&b, &s.module).map_err(CliError::computing)?;
    let output = TaskOutput::Borel {
        n_max,
        level_sizes: b.level_sizes().to_vec(),
        values: values.iter().map(ModuleValue::from).collect(),
    };
    Ok((output, Vec::new()))
}

/// Random bichains and covers from `seed`, each checked against the
/// subdivision identities.
fn bisubdiv_demo(s: &Scenario, opts: &RunOptions) -> TaskResult {
    let spec = &s.file.bisubdiv;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut instances = Vec::new();
    let mut verdicts = Vec::new();
    for i in 0..spec.instances {
        let (p, q) = (rng.gen_range(0..=spec.max_degree), rng.gen_range(0..=spec.max_degree));
        let c = random_bichain(&mut rng, p, q, 1, 1);
        let m = c.mixed();
        let cover = random_cover(&mut rng, &c);
        let sc = SmallChains::new(&cover);

        let dd = boundary_total(&boundary_total(m));
        verdicts.push(Verdict::new(format!("#{i}: ∂∂ = 0"), format!("∂∂c ({} terms)", dd.len()), "0", dd.is_zero()));
        let lhs = m - &subdivide_total(m);
        let rhs = &boundary_total(&rho_total(m)) + &rho_total(&boundary_total(m));
        verdicts.push(Verdict::new(
            format!("#{i}: 1 − Sd = ∂ρ + ρ∂"),
            format!("c − Sd c ({} terms)", lhs.len()),
            format!("∂ρc + ρ∂c ({} terms)", rhs.len()),
            lhs == rhs,
        ));
        let tau = sc.tau(m).map_err(CliError::computing)?;
        verdicts.push(Verdict::new(
            format!("#{i}: τ lands in small chains"),
            format!("τc ({} terms)", tau.len()),
            "small",
            cover.is_small_chain(&tau),
        ));
        let again = sc.tau(&tau).map_err(CliError::computing)?;
        verdicts.push(Verdict::new(format!("#{i}: τ∘inc = 1"), format!("τ(τc) ({} terms)", again.len()), format!("τc ({} terms)", tau.len()), again == tau));
        let d = sc.homotopy(m).map_err(CliError::computing)?;
        let lhs = &boundary_total(&d) + &sc.homotopy(&boundary_total(m)).map_err(CliError::computing)?;
        let rhs = m - &tau;
        verdicts.push(Verdict::new(
            format!("#{i}: ∂D + D∂ = 1 − τ"),
            format!("∂Dc + D∂c ({} terms)", lhs.len()),
            format!("c − τc ({} terms)", rhs.len()),
            lhs == rhs,
        ));
        let index = m.terms().map(|(s, _)| sc.index(s)).collect::<Result<Vec<_>, _>>().map_err(CliError::computing)?;
        instances.push(BisubdivInstance {
            p,
            q,
            terms: m.len(),
            boxes: cover.boxes().len(),
            smallness_index: index.into_iter().max().unwrap_or(0),
            tau_terms: tau.len(),
            homotopy_terms: d.len(),
        });
    }
    Ok((TaskOutput::BisubdivDemo { seed: opts.seed, instances }, verdicts))
}
