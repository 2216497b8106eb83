//! Scenario files: TOML documents describing a group, a coefficient module,
//! a simplicial G-complex, truncations and the tasks to run.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use swan_core::groupcoh::{FiniteGroup, GModule, ResolutionKind};
use swan_core::gspace::{regularize, SimplicialGComplex};
use swan_core::linalg::{IntMatrix, Presentation};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub name: String,
    /// `"Z"` or `"Z/m"`.
    #[serde(default = "default_ring")]
    pub ring: String,
    #[serde(default = "default_resolution")]
    pub resolution: String,
    #[serde(default)]
    pub tasks: Vec<String>,
    pub group: GroupSpec,
    #[serde(default)]
    pub module: ModuleSpec,
    #[serde(default)]
    pub space: SpaceSpec,
    #[serde(default)]
    pub truncation: TruncationSpec,
    #[serde(default)]
    pub bisubdiv: BisubdivSpec,
}

fn default_ring() -> String {
    "Z".into()
}

fn default_resolution() -> String {
    "bar".into()
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<usize>,
    /// Full multiplication table, `table[a][b] = a·b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    /// Element indices used as generators in the action sections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

/// Row-major integer matrix with an explicit shape.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl MatrixSpec {
    fn to_matrix(&self, what: &str) -> Result<IntMatrix, CliError> {
        IntMatrix::from_i64(self.rows, self.cols, &self.data).map_err(|_| {
            CliError::Validation(format!(
                "{what}: declared {}x{} but {} entries given",
                self.rows,
                self.cols,
                self.data.len()
            ))
        })
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleAction {
    pub generator: usize,
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// `"trivial"` (ℤ^rank, trivial action) or `"sign"` (cyclic groups of
    /// even order); omitted for an explicit module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Columns are relations among the `rank` generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<ModuleAction>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VertexAction {
    pub generator: usize,
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    /// `"point"`; omitted for an explicit complex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    /// Maximal simplices as vertex lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<VertexAction>,
    /// Subdivide until the action is regular instead of rejecting it.
    #[serde(default)]
    pub regularize: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    #[serde(default = "four")]
    pub p_max: usize,
    #[serde(default = "four")]
    pub q_max: usize,
    #[serde(default)]
    pub borel_n_max: usize,
}

fn four() -> usize {
    4
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self { p_max: 4, q_max: 4, borel_n_max: 0 }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BisubdivSpec {
    #[serde(default = "ten")]
    pub instances: usize,
    /// Bidegrees `(p, q)` are drawn from `0..=max_degree` in each variable.
    #[serde(default = "two")]
    pub max_degree: usize,
}

fn ten() -> usize {
    10
}

fn two() -> usize {
    2
}

impl Default for BisubdivSpec {
    fn default() -> Self {
        Self { instances: 10, max_degree: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    SwanPages,
    Compare,
    GroupCohomology,
    Borel,
    BisubdivDemo,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::SwanPages => "swan_pages",
            Task::Compare => "compare",
            Task::GroupCohomology => "group_cohomology",
            Task::Borel => "borel",
            Task::BisubdivDemo => "bisubdiv_demo",
        }
    }
}

impl FromStr for Task {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "swan_pages" => Task::SwanPages,
            "compare" => Task::Compare,
            "group_cohomology" => Task::GroupCohomology,
            "borel" => Task::Borel,
            "bisubdiv_demo" => Task::BisubdivDemo,
            other => return Err(CliError::Validation(format!("unknown task `{other}`"))),
        })
    }
}

/// A parsed and validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub group: FiniteGroup,
    pub module: GModule,
    pub space: SimplicialGComplex,
    pub kind: ResolutionKind,
    pub modulus: Option<BigInt>,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, label: &str) -> Result<Self, CliError> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            CliError::Parse { path: label.to_string(), line, column, message: e.message().to_string() }
        })?;
        Self::validate(file)
    }

    pub fn validate(file: ScenarioFile) -> Result<Self, CliError> {
        let tasks = file.tasks.iter().map(|t| t.parse()).collect::<Result<Vec<Task>, _>>()?;
        let kind: ResolutionKind = file
            .resolution
            .parse()
            .map_err(|_| CliError::Validation(format!("unknown resolution `{}` (bar or periodic)", file.resolution)))?;
        let modulus = parse_ring(&file.ring)?;
        let group = build_group(&file.group)?;
        if kind == ResolutionKind::Periodic && group.cyclic_generator().is_none() {
            return Err(CliError::Validation("the periodic resolution needs a cyclic group".into()));
        }
        let mut module = build_module(&group, &file.module)?;
        if let Some(m) = &modulus {
            module = module.modulo(m).map_err(CliError::invalid)?;
        }
        let space = build_space(&group, &file.space)?;
        if tasks.contains(&Task::Borel) && file.truncation.borel_n_max == 0 {
            return Err(CliError::Validation("task borel needs truncation.borel_n_max ≥ 1".into()));
        }
        Ok(Self { file, group, module, space, kind, modulus, tasks })
    }

    pub fn p_max(&self) -> usize {
        self.file.truncation.p_max
    }

    pub fn q_max(&self) -> usize {
        self.file.truncation.q_max
    }

    pub fn borel_n_max(&self) -> usize {
        self.file.truncation.borel_n_max
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_ring(ring: &str) -> Result<Option<BigInt>, CliError> {
    let r = ring.trim();
    if r == "Z" {
        return Ok(None);
    }
    let m = r
        .strip_prefix("Z/")
        .and_then(|m| m.trim().parse::<BigInt>().ok())
        .ok_or_else(|| CliError::Validation(format!("ring must be `Z` or `Z/m`, got `{ring}`")))?;
    if m < BigInt::from(2) {
        return Err(CliError::Validation(format!("ring modulus must be at least 2, got {m}")));
    }
    Ok(Some(m))
}

fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, CliError> {
    let given = [spec.cyclic.is_some(), spec.symmetric.is_some(), spec.table.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(CliError::Validation("group needs exactly one of `cyclic`, `symmetric`, `table`".into()));
    }
    let group = if let Some(n) = spec.cyclic {
        if n == 0 {
            return Err(CliError::Validation("cyclic group of order 0".into()));
        }
        FiniteGroup::cyclic(n)
    } else if let Some(k) = spec.symmetric {
        if k == 0 || k > 5 {
            return Err(CliError::Validation(format!("symmetric group on {k} points is not supported (1..=5)")));
        }
        FiniteGroup::symmetric(k)
    } else {
        FiniteGroup::from_table(spec.table.clone().unwrap_or_default()).map_err(CliError::invalid)?
    };
    match &spec.generators {
        Some(g) => group.with_generators(g.clone()).map_err(CliError::invalid),
        None => Ok(group),
    }
}

fn check_generator(group: &FiniteGroup, g: usize, section: &str) -> Result<(), CliError> {
    if group.generators().contains(&g) {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{section}: generator {g} is not one of the group's generators {:?}",
            group.generators()
        )))
    }
}

fn build_module(group: &FiniteGroup, spec: &ModuleSpec) -> Result<GModule, CliError> {
    match spec.preset.as_deref() {
        Some("trivial") => {
            if spec.relations.is_some() || !spec.actions.is_empty() {
                return Err(CliError::Validation("module preset `trivial` takes only `rank`".into()));
            }
            Ok(GModule::trivial(group.clone(), Presentation::free(spec.rank.unwrap_or(1))))
        }
        Some("sign") => {
            if spec.rank.unwrap_or(1) != 1 || spec.relations.is_some() || !spec.actions.is_empty() {
                return Err(CliError::Validation("module preset `sign` is ℤ with the sign action; no other fields".into()));
            }
            GModule::cyclic_sign(group).map_err(CliError::invalid)
        }
        Some(other) => Err(CliError::Validation(format!("unknown module preset `{other}` (trivial or sign)"))),
        None => {
            let Some(rank) = spec.rank else {
                if spec.relations.is_none() && spec.actions.is_empty() {
                    return Ok(GModule::integers(group));
                }
                return Err(CliError::Validation("explicit module needs `rank`".into()));
            };
            let presentation = match &spec.relations {
                Some(r) => {
                    let m = r.to_matrix("module.relations")?;
                    if m.rows() != rank {
                        return Err(CliError::Validation(format!(
                            "module.relations has {} rows but the module has rank {rank}",
                            m.rows()
                        )));
                    }
                    Presentation::new(rank, m)
                }
                None => Presentation::free(rank),
            };
            if spec.actions.is_empty() {
                return Ok(GModule::trivial(group.clone(), presentation));
            }
            let mut actions = Vec::new();
            for a in &spec.actions {
                check_generator(group, a.generator, "module.actions")?;
                actions.push((a.generator, a.matrix.to_matrix(&format!("module action of generator {}", a.generator))?));
            }
            GModule::from_generator_actions(group.clone(), presentation, &actions).map_err(CliError::invalid)
        }
    }
}

fn build_space(group: &FiniteGroup, spec: &SpaceSpec) -> Result<SimplicialGComplex, CliError> {
    let x = match spec.preset.as_deref() {
        Some("point") => {
            if spec.vertices.is_some() || !spec.simplices.is_empty() || !spec.actions.is_empty() {
                return Err(CliError::Validation("space preset `point` takes no other fields".into()));
            }
            SimplicialGComplex::point(group.clone())
        }
        Some(other) => return Err(CliError::Validation(format!("unknown space preset `{other}` (point)"))),
        None => {
            let Some(n) = spec.vertices else {
                if spec.simplices.is_empty() && spec.actions.is_empty() {
                    return Ok(SimplicialGComplex::point(group.clone()));
                }
                return Err(CliError::Validation("explicit space needs `vertices`".into()));
            };
            if spec.actions.is_empty() {
                SimplicialGComplex::with_trivial_action(group.clone(), n, &spec.simplices).map_err(CliError::invalid)?
            } else {
                let mut actions = Vec::new();
                for a in &spec.actions {
                    check_generator(group, a.generator, "space.actions")?;
                    actions.push((a.generator, a.permutation.clone()));
                }
                SimplicialGComplex::from_generator_actions(group.clone(), n, &spec.simplices, &actions)
                    .map_err(CliError::invalid)?
            }
        }
    };
    if spec.regularize && !x.is_regular() {
        return regularize(&x).map_err(CliError::invalid);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const POINT: &str = r#"
        name = "point"
        tasks = ["compare"]
        resolution = "periodic"
        [group]
        cyclic = 2
        [space]
        preset = "point"
        [truncation]
        p_max = 5
        q_max = 2
        borel_n_max = 5
    "#;

    #[test]
    fn parses_point() {
        let s = Scenario::parse(POINT, "point.toml").unwrap();
        assert_eq!(s.group.order(), 2);
        assert_eq!(s.tasks, vec![Task::Compare]);
        assert!(s.module.is_trivial_action());
        assert_eq!(s.space.count(0), 1);
    }

    #[test]
    fn parse_error_has_position() {
        let err = Scenario::parse("name = \"x\"\n[group]\ncyclic = \"two\"\n", "bad.toml").unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        assert_eq!(Scenario::parse("[group\n", "bad.toml").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn malformed_table_names_triple() {
        let text = "[group]\ntable = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]\n";
        let err = Scenario::parse(text, "t.toml").unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err.to_string().contains("associativity fails for ("), "{err}");
    }

    #[test]
    fn references_resolve() {
        let text = "[group]\ncyclic = 3\n[space]\nvertices = 3\nsimplices = [[0, 1], [1, 2], [0, 2]]\nactions = [{ generator = 2, permutation = [1, 2, 0] }]\n";
        let err = Scenario::parse(text, "r.toml").unwrap_err();
        assert!(err.to_string().contains("not one of the group's generators"), "{err}");
        let bad_matrix = "[group]\ncyclic = 2\n[module]\nrank = 1\nactions = [{ generator = 1, matrix = { rows = 1, cols = 1, data = [1, 0] } }]\n";
        assert_eq!(Scenario::parse(bad_matrix, "m.toml").unwrap_err().exit_code(), 4);
    }

    #[test]
    fn ring_and_tasks() {
        assert!(parse_ring("Z/1").is_err());
        assert_eq!(parse_ring("Z/4").unwrap(), Some(BigInt::from(4)));
        let text = "tasks = [\"nonsense\"]\n[group]\ncyclic = 2\n";
        assert_eq!(Scenario::parse(text, "t.toml").unwrap_err().exit_code(), 4);
    }
}
