//! Scenario files: a JSON description of algebraic objects to build and
//! tasks to run on them. The format is frozen in docs/scenario-schema-v1.md.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use superalg::construct::{self, Envelope};
use superalg::fp::{self, Fp, FpMatrix};
use superalg::lie::RestrictedLieSuper;
use superalg::StructAlgebra;

pub const SCHEMA_TAG: &str = "scenario/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    pub prime: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub objects: Vec<ObjectDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectDecl {
    pub name: String,
    #[serde(flatten)]
    pub kind: ObjectKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectKind {
    StructureConstants {
        labels: Vec<String>,
        /// table[i][j] is the coordinate vector of the product b_i * b_j.
        table: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parity: Option<Vec<u8>>,
    },
    LieSuper {
        even: usize,
        odd: usize,
        labels: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        brackets: Vec<BracketEntry>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        pmap: Vec<PmapEntry>,
    },
    TruncatedPolynomial { n: usize },
    FunctionAlgebra { m: usize },
    CyclicGroupAlgebra { m: usize },
    DividedPowerHopf { n: u32 },
    Dual { of: String },
    Envelope { of: String },
    SmashGroup {
        of: String,
        order: usize,
        /// Row-major matrix of the automorphism the group generator acts by.
        action: Vec<Vec<u64>>,
    },
    SmashFunctionAlgebra {
        of: String,
        modulus: usize,
        grading: Vec<usize>,
    },
    Bosonize { of: String },
    HopfQuotient {
        of: String,
        generators: Vec<GeneratorSpec>,
    },
    TensorAlgebraProduct { left: String, right: String },
}

impl ObjectKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ObjectKind::StructureConstants { .. } => "structure_constants",
            ObjectKind::LieSuper { .. } => "lie_super",
            ObjectKind::TruncatedPolynomial { .. } => "truncated_polynomial",
            ObjectKind::FunctionAlgebra { .. } => "function_algebra",
            ObjectKind::CyclicGroupAlgebra { .. } => "cyclic_group_algebra",
            ObjectKind::DividedPowerHopf { .. } => "divided_power_hopf",
            ObjectKind::Dual { .. } => "dual",
            ObjectKind::Envelope { .. } => "envelope",
            ObjectKind::SmashGroup { .. } => "smash_group",
            ObjectKind::SmashFunctionAlgebra { .. } => "smash_function_algebra",
            ObjectKind::Bosonize { .. } => "bosonize",
            ObjectKind::HopfQuotient { .. } => "hopf_quotient",
            ObjectKind::TensorAlgebraProduct { .. } => "tensor_algebra_product",
        }
    }

    fn references(&self) -> Vec<&str> {
        match self {
            ObjectKind::Dual { of }
            | ObjectKind::Envelope { of }
            | ObjectKind::SmashGroup { of, .. }
            | ObjectKind::SmashFunctionAlgebra { of, .. }
            | ObjectKind::Bosonize { of }
            | ObjectKind::HopfQuotient { of, .. } => vec![of],
            ObjectKind::TensorAlgebraProduct { left, right } => vec![left, right],
            _ => vec![],
        }
    }
}

/// A quotient generator: either a basis label of the ambient algebra or an
/// explicit coordinate vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Label(String),
    Coords(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmapEntry {
    pub i: usize,
    pub value: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskDecl {
    pub op: String,
    pub target: String,
    /// Restrict the target to one of its blocks before analysis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    /// Replace the (super) target by its bosonization before analysis.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bosonize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_block: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Module selector for resolution tasks: "trivial" (default) or "regular".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<Vec<u64>>>,
}

/// A scenario-level error: the file is well-formed JSON but not a valid
/// scenario. These abort the run before any task executes.
#[derive(Debug)]
pub struct ScenarioError(pub String);

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ScenarioError {}

fn err(msg: impl Into<String>) -> ScenarioError {
    ScenarioError(msg.into())
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let sc: Scenario = serde_json::from_str(text)
            .map_err(|e| err(format!("scenario does not match the schema: {e}")))?;
        sc.validate()?;
        Ok(sc)
    }

    /// Structural validation; object construction happens later and reports
    /// its own failures per object.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.schema != SCHEMA_TAG {
            return Err(err(format!(
                "unsupported schema {:?}, expected {:?}",
                self.schema, SCHEMA_TAG
            )));
        }
        if !fp::is_prime(self.prime) || self.prime == 2 {
            return Err(err(format!(
                "prime must be an odd prime, got {}",
                self.prime
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if o.name.is_empty() {
                return Err(err(format!("object #{i} has an empty name")));
            }
            if seen.insert(o.name.as_str(), i).is_some() {
                return Err(err(format!("duplicate object name {:?}", o.name)));
            }
        }
        for o in &self.objects {
            for r in o.kind.references() {
                if !seen.contains_key(r) {
                    return Err(err(format!(
                        "object {:?} references undeclared object {:?}",
                        o.name, r
                    )));
                }
            }
        }
        self.check_acyclic(&seen)?;
        for (i, t) in self.tasks.iter().enumerate() {
            if !seen.contains_key(t.target.as_str()) {
                return Err(err(format!(
                    "task #{i} targets undeclared object {:?}",
                    t.target
                )));
            }
            if let Some(o) = &t.other {
                if !seen.contains_key(o.as_str()) {
                    return Err(err(format!(
                        "task #{i} references undeclared object {:?}",
                        o
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_acyclic(&self, index: &BTreeMap<&str, usize>) -> Result<(), ScenarioError> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut mark = vec![0u8; self.objects.len()];
        fn visit(
            objects: &[ObjectDecl],
            index: &BTreeMap<&str, usize>,
            mark: &mut [u8],
            i: usize,
        ) -> Result<(), ScenarioError> {
            match mark[i] {
                2 => return Ok(()),
                1 => {
                    return Err(err(format!(
                        "object {:?} is part of a reference cycle",
                        objects[i].name
                    )))
                }
                _ => {}
            }
            mark[i] = 1;
            for r in objects[i].kind.references() {
                visit(objects, index, mark, index[r])?;
            }
            mark[i] = 2;
            Ok(())
        }
        for i in 0..self.objects.len() {
            visit(&self.objects, index, &mut mark, i)?;
        }
        Ok(())
    }

    /// Canonical serialization: field order fixed by the struct definitions,
    /// defaults omitted.
    #[cfg(test)]
    pub fn normal_form(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario serializes");
        out.push('\n');
        out
    }
}

/// A successfully built object.
#[derive(Clone)]
pub enum BuiltObject {
    Algebra(Arc<StructAlgebra>),
    Lie(Arc<RestrictedLieSuper>),
    Env(Arc<Envelope>),
}

impl BuiltObject {
    pub fn algebra(&self) -> Option<Arc<StructAlgebra>> {
        match self {
            BuiltObject::Algebra(a) => Some(Arc::clone(a)),
            BuiltObject::Env(e) => Some(Arc::clone(&e.algebra)),
            BuiltObject::Lie(_) => None,
        }
    }

    pub fn lie(&self) -> Option<Arc<RestrictedLieSuper>> {
        match self {
            BuiltObject::Lie(l) => Some(Arc::clone(l)),
            _ => None,
        }
    }

    pub fn envelope(&self) -> Option<Arc<Envelope>> {
        match self {
            BuiltObject::Env(e) => Some(Arc::clone(e)),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BuiltObject::Algebra(a) => a.dim(),
            BuiltObject::Env(e) => e.algebra.dim(),
            BuiltObject::Lie(l) => l.dim(),
        }
    }
}

/// Objects in declaration order with their build outcome.
pub type BuildOutcome = Vec<(String, &'static str, Result<BuiltObject, String>)>;

/// Build every object, memoizing across references. Build failures are
/// recorded per object and poison the objects that depend on them.
pub fn build_objects(sc: &Scenario) -> BuildOutcome {
    let fp = Fp::new(sc.prime);
    let index: BTreeMap<&str, usize> = sc
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.name.as_str(), i))
        .collect();
    let mut built: Vec<Option<Result<BuiltObject, String>>> = vec![None; sc.objects.len()];
    for i in 0..sc.objects.len() {
        build_one(sc, fp, &index, &mut built, i);
    }
    sc.objects
        .iter()
        .enumerate()
        .map(|(i, o)| {
            (
                o.name.clone(),
                o.kind.kind_name(),
                built[i].clone().unwrap(),
            )
        })
        .collect()
}

fn build_one(
    sc: &Scenario,
    fp: Fp,
    index: &BTreeMap<&str, usize>,
    built: &mut Vec<Option<Result<BuiltObject, String>>>,
    i: usize,
) {
    if built[i].is_some() {
        return;
    }
    for r in sc.objects[i].kind.references() {
        build_one(sc, fp, index, built, index[r]);
    }
    let fetch = |name: &str| -> Result<BuiltObject, String> {
        built[index[name]]
            .clone()
            .unwrap()
            .map_err(|_| format!("dependency {name:?} failed to build"))
    };
    let fetch_algebra = |name: &str| -> Result<Arc<StructAlgebra>, String> {
        fetch(name)?
            .algebra()
            .ok_or_else(|| format!("{name:?} is a Lie algebra, an associative algebra is needed"))
    };
    let result: Result<BuiltObject, String> = match &sc.objects[i].kind {
        ObjectKind::StructureConstants {
            labels,
            table,
            unit,
            parity,
        } => build_structure_constants(fp, labels, table, unit, parity.as_deref()),
        ObjectKind::LieSuper {
            even,
            odd,
            labels,
            brackets,
            pmap,
        } => build_lie(fp, *even, *odd, labels, brackets, pmap),
        ObjectKind::TruncatedPolynomial { n } => {
            if *n == 0 {
                Err("truncation degree must be positive".into())
            } else {
                Ok(BuiltObject::Algebra(Arc::new(
                    construct::truncated_polynomial(fp, *n),
                )))
            }
        }
        ObjectKind::FunctionAlgebra { m } => {
            if *m == 0 {
                Err("group order must be positive".into())
            } else {
                Ok(BuiltObject::Algebra(Arc::new(construct::function_algebra(
                    fp, *m,
                ))))
            }
        }
        ObjectKind::CyclicGroupAlgebra { m } => {
            if *m == 0 {
                Err("group order must be positive".into())
            } else {
                Ok(BuiltObject::Algebra(Arc::new(
                    construct::cyclic_group_algebra(fp, *m),
                )))
            }
        }
        ObjectKind::DividedPowerHopf { n } => {
            let dim = fp.p().checked_pow(*n);
            if *n == 0 || dim.is_none_or(|d| d > construct::DENSE_DIM_CAP as u64) {
                Err(format!(
                    "height exponent must satisfy 0 < p^n <= {}",
                    construct::DENSE_DIM_CAP
                ))
            } else {
                Ok(BuiltObject::Algebra(Arc::new(
                    construct::divided_power_hopf(fp, *n),
                )))
            }
        }
        ObjectKind::Dual { of } => fetch_algebra(of).and_then(|a| {
            construct::dual_hopf(&a)
                .map(|d| BuiltObject::Algebra(Arc::new(d)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::Envelope { of } => fetch(of).and_then(|o| {
            let lie = o
                .lie()
                .ok_or_else(|| format!("{of:?} is not a Lie superalgebra"))?;
            construct::envelope(&lie)
                .map(|e| BuiltObject::Env(Arc::new(e)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::SmashGroup { of, order, action } => fetch_algebra(of).and_then(|a| {
            let da = a.dim();
            let flat = flatten_rows(fp, action, da, da, "action")?;
            let sigma = FpMatrix::from_flat(fp, da, da, flat);
            construct::smash_group(&a, *order, &sigma)
                .map(|s| BuiltObject::Algebra(Arc::new(s)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::SmashFunctionAlgebra {
            of,
            modulus,
            grading,
        } => fetch_algebra(of).and_then(|a| {
            if grading.len() != a.dim() {
                return Err(format!(
                    "grading has {} entries, the algebra has dimension {}",
                    grading.len(),
                    a.dim()
                ));
            }
            construct::smash_function_algebra(&a, *modulus, grading)
                .map(|s| BuiltObject::Algebra(Arc::new(s)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::Bosonize { of } => fetch_algebra(of).and_then(|a| {
            construct::bosonize(&a)
                .map(|b| BuiltObject::Algebra(Arc::new(b)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::HopfQuotient { of, generators } => fetch_algebra(of).and_then(|a| {
            let gens = generators
                .iter()
                .map(|g| resolve_generator(fp, &a, g))
                .collect::<Result<Vec<_>, String>>()?;
            construct::hopf_quotient(&a, &gens)
                .map(|q| BuiltObject::Algebra(Arc::new(q)))
                .map_err(|e| e.to_string())
        }),
        ObjectKind::TensorAlgebraProduct { left, right } => {
            fetch_algebra(left).and_then(|a| {
                let b = fetch_algebra(right)?;
                if a.dim() * b.dim() > construct::DENSE_DIM_CAP {
                    return Err(format!(
                        "product dimension {} exceeds the dense cap {}",
                        a.dim() * b.dim(),
                        construct::DENSE_DIM_CAP
                    ));
                }
                Ok(BuiltObject::Algebra(Arc::new(
                    construct::tensor_algebra_product(&a, &b),
                )))
            })
        }
    };
    built[i] = Some(result);
}

fn flatten_rows(
    fp: Fp,
    rows: &[Vec<u64>],
    want_rows: usize,
    want_cols: usize,
    what: &str,
) -> Result<Vec<u64>, String> {
    if rows.len() != want_rows || rows.iter().any(|r| r.len() != want_cols) {
        return Err(format!("{what} must be a {want_rows}x{want_cols} matrix"));
    }
    Ok(rows
        .iter()
        .flat_map(|r| r.iter().map(|&c| c % fp.p()))
        .collect())
}

fn resolve_generator(
    fp: Fp,
    alg: &StructAlgebra,
    spec: &GeneratorSpec,
) -> Result<Vec<u64>, String> {
    match spec {
        GeneratorSpec::Label(l) => {
            let i = alg
                .labels()
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| format!("no basis element labeled {l:?}"))?;
            Ok(alg.basis_vector(i))
        }
        GeneratorSpec::Coords(v) => {
            if v.len() != alg.dim() {
                return Err(format!(
                    "generator has {} coordinates, the algebra has dimension {}",
                    v.len(),
                    alg.dim()
                ));
            }
            Ok(v.iter().map(|&c| c % fp.p()).collect())
        }
    }
}

fn build_structure_constants(
    fp: Fp,
    labels: &[String],
    table: &[Vec<Vec<u64>>],
    unit: &[u64],
    parity: Option<&[u8]>,
) -> Result<BuiltObject, String> {
    let dim = labels.len();
    if dim == 0 {
        return Err("at least one basis element is required".into());
    }
    if dim > construct::DENSE_DIM_CAP {
        return Err(format!(
            "dimension {dim} exceeds the dense cap {}",
            construct::DENSE_DIM_CAP
        ));
    }
    if table.len() != dim || table.iter().any(|row| row.len() != dim) {
        return Err(format!("table must be {dim}x{dim} coordinate vectors"));
    }
    let mut mult = Vec::with_capacity(dim * dim * dim);
    for row in table {
        for entry in row {
            if entry.len() != dim {
                return Err(format!("every table entry must have {dim} coordinates"));
            }
            mult.extend(entry.iter().map(|&c| c % fp.p()));
        }
    }
    if unit.len() != dim {
        return Err(format!("unit must have {dim} coordinates"));
    }
    let parity = match parity {
        Some(par) => {
            if par.len() != dim || par.iter().any(|&b| b > 1) {
                return Err(format!("parity must be {dim} bits"));
            }
            Some(par.to_vec())
        }
        None => None,
    };
    let unit: Vec<u64> = unit.iter().map(|&c| c % fp.p()).collect();
    let alg = StructAlgebra::new(fp, labels.to_vec(), mult, unit, parity);
    alg.validate(0).map_err(|e| e.to_string())?;
    Ok(BuiltObject::Algebra(Arc::new(alg)))
}

fn build_lie(
    fp: Fp,
    even: usize,
    odd: usize,
    labels: &[String],
    brackets: &[BracketEntry],
    pmap: &[PmapEntry],
) -> Result<BuiltObject, String> {
    let dim = even + odd;
    if dim == 0 {
        return Err("the algebra must have at least one generator".into());
    }
    if labels.len() != dim {
        return Err(format!(
            "expected {dim} labels for {even} even + {odd} odd generators"
        ));
    }
    let mut lie = RestrictedLieSuper::new(fp, even, odd, labels.to_vec());
    for b in brackets {
        if b.i >= dim || b.j >= dim {
            return Err(format!("bracket ({}, {}) is out of range", b.i, b.j));
        }
        if b.value.len() != dim {
            return Err(format!(
                "bracket ({}, {}) needs {dim} coordinates",
                b.i, b.j
            ));
        }
        let value: Vec<u64> = b.value.iter().map(|&c| c % fp.p()).collect();
        lie.set_bracket(b.i, b.j, &value);
    }
    for m in pmap {
        if m.i >= even {
            return Err(format!("p-th power of generator {} is out of range", m.i));
        }
        if m.value.len() != dim {
            return Err(format!("p-th power of generator {} needs {dim} coordinates", m.i));
        }
        let value: Vec<u64> = m.value.iter().map(|&c| c % fp.p()).collect();
        lie.set_pmap(m.i, &value);
    }
    lie.validate().map_err(|e| e.to_string())?;
    Ok(BuiltObject::Lie(Arc::new(lie)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundled() -> Vec<std::path::PathBuf> {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        assert!(!files.is_empty());
        files
    }

    #[test]
    fn bundled_scenarios_round_trip_through_the_normal_form() {
        for path in bundled() {
            let text = std::fs::read_to_string(&path).unwrap();
            let sc = Scenario::parse(&text).unwrap_or_else(|e| panic!("{path:?}: {e}"));
            let normal = sc.normal_form();
            let again = Scenario::parse(&normal).unwrap();
            assert_eq!(sc, again, "{path:?} lost data in its normal form");
            let renormal = again.normal_form();
            assert_eq!(normal, renormal, "{path:?} normal form is unstable");
        }
    }

    #[test]
    fn bundled_scenarios_build_every_object() {
        for path in bundled() {
            let text = std::fs::read_to_string(&path).unwrap();
            let sc = Scenario::parse(&text).unwrap();
            for (name, _, r) in build_objects(&sc) {
                if let Err(e) = r {
                    panic!("{path:?} object {name}: {e}");
                }
            }
        }
    }

    #[test]
    fn validation_rejects_structural_mistakes() {
        let cases = [
            (r#"{"schema": "scenario/v2", "name": "x", "prime": 3}"#, "schema"),
            (r#"{"schema": "scenario/v1", "name": "x", "prime": 15}"#, "prime"),
            (
                r#"{"schema": "scenario/v1", "name": "x", "prime": 3,
                    "objects": [{"name": "a", "kind": "truncated_polynomial", "n": 2},
                                {"name": "a", "kind": "truncated_polynomial", "n": 3}]}"#,
                "duplicate",
            ),
            (
                r#"{"schema": "scenario/v1", "name": "x", "prime": 3,
                    "objects": [{"name": "a", "kind": "bosonize", "of": "a"}]}"#,
                "cycle",
            ),
        ];
        for (body, what) in cases {
            let err = Scenario::parse(body).unwrap_err();
            assert!(
                err.0.contains(what),
                "expected a {what} complaint, got: {err}"
            );
        }
    }

    #[test]
    fn generators_resolve_by_label_or_coordinates() {
        let fp = Fp::new(3);
        let alg = construct::truncated_polynomial(fp, 3);
        let by_label = resolve_generator(fp, &alg, &GeneratorSpec::Label("x".into())).unwrap();
        let by_coords =
            resolve_generator(fp, &alg, &GeneratorSpec::Coords(vec![0, 4, 0])).unwrap();
        assert_eq!(by_label, vec![0, 1, 0]);
        assert_eq!(by_coords, vec![0, 1, 0]);
        assert!(resolve_generator(fp, &alg, &GeneratorSpec::Label("z".into())).is_err());
        assert!(resolve_generator(fp, &alg, &GeneratorSpec::Coords(vec![1])).is_err());
    }
}
