//! Task execution: each task resolves its target, runs one analysis
//! operation, and produces a JSON fragment. Tasks are independent and run
//! in parallel; results are ordered by task index.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use superalg::analysis::Analysis;
use superalg::construct;
use superalg::hopf;
use superalg::lie::ElementClass;
use superalg::module::AlgModule;
use superalg::par;
use superalg::resolution::{self, ComplexityClass};
use superalg::StructAlgebra;

use crate::scenario::{BuiltObject, Scenario, TaskDecl};

pub struct RunConfig {
    pub seed: u64,
    pub max_depth: usize,
    pub dot_out: Option<PathBuf>,
}

pub struct TaskOutcome {
    pub result: Result<Value, String>,
    pub millis: u128,
    pub warnings: Vec<String>,
}

struct Ctx<'a> {
    objects: BTreeMap<&'a str, &'a BuiltObject>,
    cfg: &'a RunConfig,
}

/// Run every task of the scenario against the built objects.
pub fn run_tasks(
    sc: &Scenario,
    built: &[(String, &'static str, Result<BuiltObject, String>)],
    cfg: &RunConfig,
) -> Vec<TaskOutcome> {
    let objects: BTreeMap<&str, &BuiltObject> = built
        .iter()
        .filter_map(|(name, _, r)| r.as_ref().ok().map(|o| (name.as_str(), o)))
        .collect();
    let ctx = Ctx { objects, cfg };
    par::map_vec(sc.tasks.len(), |i| {
        let start = Instant::now();
        let mut warnings = Vec::new();
        let result = run_task(&ctx, i, &sc.tasks[i], &mut warnings);
        TaskOutcome {
            result,
            millis: start.elapsed().as_millis(),
            warnings,
        }
    })
}

impl<'a> Ctx<'a> {
    fn object(&self, name: &str) -> Result<&'a BuiltObject, String> {
        self.objects
            .get(name)
            .copied()
            .ok_or_else(|| format!("object {name:?} failed to build"))
    }

    /// The algebra a task works on: the named object, optionally cut down
    /// to one block, optionally bosonized.
    fn algebra_target(
        &self,
        name: &str,
        block: Option<usize>,
        bosonize: bool,
    ) -> Result<Arc<StructAlgebra>, String> {
        let mut alg = self
            .object(name)?
            .algebra()
            .ok_or_else(|| format!("{name:?} is not an associative algebra"))?;
        if let Some(b) = block {
            let mut an = Analysis::new(Arc::clone(&alg), self.cfg.seed);
            let blocks = an.blocks();
            let found = blocks
                .get(b)
                .ok_or_else(|| format!("{name:?} has {} blocks, no block {b}", blocks.len()))?;
            alg = Arc::clone(&found.algebra);
        }
        if bosonize {
            alg = Arc::new(construct::bosonize(&alg).map_err(|e| e.to_string())?);
        }
        Ok(alg)
    }

    fn analysis(&self, t: &TaskDecl) -> Result<Analysis, String> {
        Ok(Analysis::new(
            self.algebra_target(&t.target, t.block, t.bosonize)?,
            self.cfg.seed,
        ))
    }
}

fn resolved_module(an: &Analysis, which: Option<&str>) -> Result<AlgModule, String> {
    match which.unwrap_or("trivial") {
        "trivial" => AlgModule::trivial(an.alg()).map_err(|e| e.to_string()),
        "regular" => Ok(AlgModule::regular(an.alg())),
        other => Err(format!(
            "unknown module selector {other:?}, expected \"trivial\" or \"regular\""
        )),
    }
}

fn fingerprint_json(an: &mut Analysis) -> Value {
    let f = an.fingerprint();
    json!({
        "dim": f.dim,
        "center_dim": f.center_dim,
        "radical_series_dims": f.radical_series_dims,
        "block_dims": f.block_dims,
        "simples": f.simples,
        "nakayama": f.nakayama,
    })
}

fn run_task(
    ctx: &Ctx,
    index: usize,
    t: &TaskDecl,
    warnings: &mut Vec<String>,
) -> Result<Value, String> {
    match t.op.as_str() {
        "validate" => {
            let alg = ctx.algebra_target(&t.target, t.block, t.bosonize)?;
            let report = alg.validate(ctx.cfg.seed).map_err(|e| e.to_string())?;
            if report.sampled {
                warnings.push(format!(
                    "associativity of {:?} was sampled ({} random triples), not checked exhaustively",
                    t.target, report.triples_checked
                ));
            }
            Ok(json!({
                "dim": alg.dim(),
                "sampled": report.sampled,
                "triples_checked": report.triples_checked,
            }))
        }
        "check_hopf" => {
            let alg = ctx.algebra_target(&t.target, t.block, t.bosonize)?;
            let report = hopf::check_hopf(&alg).map_err(|e| e.to_string())?;
            Ok(json!({
                "dim": report.dim,
                "cocommutative": report.cocommutative,
                "checked_pairs": report.checked_pairs,
            }))
        }
        "primitives" => {
            let alg = ctx.algebra_target(&t.target, t.block, t.bosonize)?;
            let prim = hopf::primitives(&alg).map_err(|e| e.to_string())?;
            Ok(json!({ "dim": prim.dim() }))
        }
        "odd_character_check" => {
            let env = ctx
                .object(&t.target)?
                .envelope()
                .ok_or_else(|| format!("{:?} is not an enveloping algebra", t.target))?;
            let oc = hopf::odd_character_check(&env).map_err(|e| e.to_string())?;
            Ok(json!({
                "even_dim": oc.even_monomials.len(),
                "chi": oc.chi,
            }))
        }
        "radical" => {
            let mut an = ctx.analysis(t)?;
            Ok(json!({ "dim": an.radical().dim() }))
        }
        "radical_series" => {
            let mut an = ctx.analysis(t)?;
            Ok(json!({
                "dims": an.radical_series_dims(),
                "loewy_length": an.loewy_length(),
            }))
        }
        "center" => {
            let mut an = ctx.analysis(t)?;
            Ok(json!({ "dim": an.center().dim() }))
        }
        "central_idempotents" => {
            let mut an = ctx.analysis(t)?;
            let alg = Arc::clone(an.alg());
            let idems = an.central_idempotents().clone();
            let formatted: Vec<String> =
                idems.iter().map(|e| alg.format_element(e)).collect();
            Ok(json!({
                "count": idems.len(),
                "idempotents": idems,
                "formatted": formatted,
            }))
        }
        "blocks" => {
            let mut an = ctx.analysis(t)?;
            let dims: Vec<usize> = an.blocks().iter().map(|b| b.algebra.dim()).collect();
            Ok(json!({ "count": dims.len(), "dims": dims }))
        }
        "simples" => {
            let mut an = ctx.analysis(t)?;
            let classes: Vec<Value> = an
                .simples()
                .iter()
                .map(|s| {
                    json!({
                        "dim": s.module.dim(),
                        "endo_degree": s.endo_degree,
                        "pim_count": s.pims.len(),
                    })
                })
                .collect();
            Ok(json!({ "count": classes.len(), "classes": classes }))
        }
        "ext_quiver" => {
            let mut an = ctx.analysis(t)?;
            let q = an.ext_quiver().clone();
            if let Some(dir) = &ctx.cfg.dot_out {
                write_dot(dir, index, t, &q.to_dot(&t.target))?;
            }
            Ok(json!({
                "vertices": q.vertices.len(),
                "arrows": q.arrows,
            }))
        }
        "is_nakayama" => {
            let mut an = ctx.analysis(t)?;
            let nk = an.is_nakayama();
            Ok(json!({
                "holds": nk.holds,
                "witness": nk.witness.map(|w| w.to_string()),
            }))
        }
        "recognize_matrix_algebra" => {
            let mut an = ctx.analysis(t)?;
            match an.recognize_matrix_algebra() {
                Some(shape) => Ok(json!({
                    "simple": true,
                    "matrix_size": shape.matrix_size,
                    "field_degree": shape.field_degree,
                })),
                None => Ok(json!({ "simple": false })),
            }
        }
        "ar_quiver" => {
            let mut an = ctx.analysis(t)?;
            let q = an.ar_quiver().map_err(|e| e.to_string())?;
            if let Some(dir) = &ctx.cfg.dot_out {
                write_dot(dir, index, t, &q.to_dot(&t.target))?;
            }
            Ok(json!({
                "shape": q.shape(),
                "stable_vertices": q.vertex_count(),
                "tau_period": q.simples,
                "height": q.height(),
            }))
        }
        "fingerprint" => {
            let mut an = ctx.analysis(t)?;
            Ok(fingerprint_json(&mut an))
        }
        "fingerprints_match" => {
            let other = t
                .other
                .as_ref()
                .ok_or("fingerprints_match needs an \"other\" object")?;
            let mut left = ctx.analysis(t)?;
            let mut right = Analysis::new(
                ctx.algebra_target(other, t.other_block, false)?,
                ctx.cfg.seed,
            );
            let lf = fingerprint_json(&mut left);
            let rf = fingerprint_json(&mut right);
            Ok(json!({
                "equal": lf == rf,
                "left": lf,
                "right": rf,
            }))
        }
        "min_resolution" => {
            let mut an = ctx.analysis(t)?;
            let m = resolved_module(&an, t.module.as_deref())?;
            let depth = t.depth.unwrap_or(ctx.cfg.max_depth);
            let res = resolution::min_resolution(&mut an, &m, depth);
            Ok(json!({
                "module": t.module.as_deref().unwrap_or("trivial"),
                "depth": depth,
                "cover_dims": res.cover_dims,
                "syzygy_dims": res.syzygy_dims,
            }))
        }
        "complexity" => {
            let mut an = ctx.analysis(t)?;
            let m = resolved_module(&an, t.module.as_deref())?;
            let depth = t.depth.unwrap_or(ctx.cfg.max_depth).max(8);
            let res = resolution::min_resolution(&mut an, &m, depth);
            let est = resolution::complexity_estimate(&res.cover_dims);
            if est.class == ComplexityClass::AtLeastTwoUnresolved {
                warnings.push(format!(
                    "complexity of {:?} was not resolved within a depth-{} window",
                    t.target, depth
                ));
            } else {
                warnings.push(format!(
                    "complexity verdict for {:?} is exact on a finite window (depth {})",
                    t.target, depth
                ));
            }
            Ok(json!({
                "module": t.module.as_deref().unwrap_or("trivial"),
                "depth": depth,
                "class": est.class.to_string(),
                "window": est.window,
            }))
        }
        "validate_lie" => {
            let lie = require_lie(ctx, t)?;
            lie.validate().map_err(|e| e.to_string())?;
            Ok(json!({
                "dim": lie.dim(),
                "even_dim": lie.even_dim(),
                "odd_dim": lie.odd_dim(),
            }))
        }
        "rep_finite_criterion" => {
            let lie = require_lie(ctx, t)?;
            let out = lie.rep_finite_criterion().map_err(|e| e.to_string())?;
            Ok(json!({
                "holds": out.holds,
                "failure": out.failure.map(|f| f.to_string()),
                "witness": out.witness.map(|w| json!({
                    "x0": w.x0,
                    "t0": w.t0,
                    "clauses": w.clauses,
                })),
                "nilpotent_ideal_dim": out.nilpotent_ideal_dim,
                "toral_ideal_dim": out.toral_ideal_dim,
            }))
        }
        "element_class" => {
            let lie = require_lie(ctx, t)?;
            let v = t
                .vector
                .as_ref()
                .ok_or("element_class needs a \"vector\" parameter")?;
            if v.len() != lie.dim() {
                return Err(format!("vector needs {} coordinates", lie.dim()));
            }
            let v: Vec<u64> = v.iter().map(|&c| c % lie.fp().p()).collect();
            if v[lie.even_dim()..].iter().any(|&c| c != 0) {
                return Err("element classification applies to even elements".into());
            }
            let class = match lie.element_class(&v) {
                ElementClass::Toral => "toral",
                ElementClass::PNilpotent => "p_nilpotent",
                ElementClass::Neither => "neither",
            };
            Ok(json!({ "class": class }))
        }
        "p_closure" => {
            let lie = require_lie(ctx, t)?;
            let seeds = t
                .seeds
                .as_ref()
                .ok_or("p_closure needs a \"seeds\" parameter")?;
            let mut vecs = Vec::with_capacity(seeds.len());
            for s in seeds {
                if s.len() != lie.dim() {
                    return Err(format!("every seed needs {} coordinates", lie.dim()));
                }
                vecs.push(s.iter().map(|&c| c % lie.fp().p()).collect::<Vec<u64>>());
            }
            Ok(json!({ "dim": lie.p_closure(&vecs).dim() }))
        }
        "lie_center" => {
            let lie = require_lie(ctx, t)?;
            Ok(json!({ "dim": lie.lie_center().dim() }))
        }
        "largest_nilpotent_ideal" => {
            let lie = require_lie(ctx, t)?;
            let n = lie.largest_nilpotent_ideal().map_err(|e| e.to_string())?;
            Ok(json!({ "dim": n.dim() }))
        }
        "largest_toral_ideal" => {
            let lie = require_lie(ctx, t)?;
            let n = lie.largest_toral_ideal().map_err(|e| e.to_string())?;
            Ok(json!({ "dim": n.dim() }))
        }
        other => Err(format!("unknown operation {other:?}")),
    }
}

fn require_lie(
    ctx: &Ctx,
    t: &TaskDecl,
) -> Result<Arc<superalg::RestrictedLieSuper>, String> {
    if t.block.is_some() || t.bosonize {
        return Err("block/bosonize modifiers do not apply to Lie algebra operations".into());
    }
    ctx.object(&t.target)?
        .lie()
        .ok_or_else(|| format!("{:?} is not a Lie superalgebra", t.target))
}

fn write_dot(dir: &std::path::Path, index: usize, t: &TaskDecl, dot: &str) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let safe: String = t
        .target
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect();
    let path = dir.join(format!("{index:02}-{safe}-{}.dot", t.op));
    std::fs::write(&path, dot).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
