use algebroid::bialgebroid::{verify_regular_mha, verify_star, RegularMha};
use algebroid::examples::{convolution_integrals, crossed_integrals, swap_action, FiniteGroupoid};
use algebroid::integration::{assemble_measured, check_base_weight, measured_report, solve_partial_integrals, BaseWeight, IntegralEquations, IntegralSide, MeasuredMha};
use algebroid::io::{algebra_to_json, artifact_to_json, map_to_json, vec_to_json, Artifact};
use algebroid::modification::{crossed_rn_modifier, groupoid_rn_modifier, inner_formulas, inner_modifier, modify, Cocycle, Modifier};
use algebroid::report::Status;
use algebroid::structure_theory::{dual_algebra, faithfulness_check, local_projectivity, modular_automorphism, modular_element, uniqueness_check};
use algebroid::{Error, Field, LinearMap, Report, Result, Scalar};
use serde_json::json;

use crate::input::{self, Instance};
use crate::{Cmd, Options, Outcome, Recipe};

type S = Scalar;

pub fn run(cmd: Cmd, opts: &Options) -> Result<Outcome> {
    match cmd {
        Cmd::Build => build(opts),
        Cmd::Verify => verify(opts),
        Cmd::Integrals => integrals(opts),
        Cmd::Measure => measure(opts),
        Cmd::Modify => modify_cmd(opts),
        Cmd::Dual => dual(opts),
        Cmd::Report => report(opts),
    }
}

fn report_only(report: Report) -> Outcome {
    Outcome { report, artifact: None }
}

fn build(opts: &Options) -> Result<Outcome> {
    let mut inst = input::load(opts, "function-algebroid")?;
    if let Some(mu) = input::mu(&inst, opts)? {
        inst.artifact.mu = Some(mu);
    }
    let m = &inst.artifact.mha;
    let mut r = Report::new();
    r.info("dimensions", "example-formula", json!({ "name": m.name, "A": m.dim(), "B": m.b.dim(), "C": m.c.dim() }));
    Ok(Outcome { report: r, artifact: Some(artifact_to_json(&inst.artifact)) })
}

fn axioms(inst: &Instance) -> Report {
    let m = &inst.artifact.mha;
    let mut r = verify_regular_mha(m);
    if let Some(star) = &inst.star {
        r.extend(verify_star(m, star));
    }
    r
}

fn verify(opts: &Options) -> Result<Outcome> {
    let inst = input::load(opts, "function-algebroid")?;
    Ok(report_only(axioms(&inst)))
}

fn integrals(opts: &Options) -> Result<Outcome> {
    let inst = input::load(opts, "function-algebroid")?;
    let m = &inst.artifact.mha;
    let mut r = Report::new();
    for side in [IntegralSide::Left, IntegralSide::Right] {
        let (space, sr) = solve_partial_integrals(m, side)?;
        r.extend(sr);
        let basis: Vec<_> = space.basis.iter().map(map_to_json).collect();
        r.info(&format!("{side:?} partial integrals"), "partial-integrals", json!({ "dim": space.dim(), "basis": basis }));
    }
    if let Some(ints) = &inst.artifact.integrals {
        let eqs = IntegralEquations::new(m)?;
        r.extend_prefixed("φ_C: ", eqs.report(&ints.phi_c, IntegralSide::Left)?);
        r.extend_prefixed("ψ_B: ", eqs.report(&ints.psi_b, IntegralSide::Right)?);
    }
    Ok(report_only(r))
}

fn weight(m: &RegularMha<S>, mu: Option<Vec<S>>) -> Result<BaseWeight<S>> {
    let (db, dc) = (m.b.dim(), m.c.dim());
    match mu {
        None if db == dc => Ok(BaseWeight::symmetric(vec![S::from_i64(1); db])),
        None => Ok(BaseWeight::new(vec![S::from_i64(1); db], vec![S::from_i64(1); dc])),
        Some(mu) if mu.len() == db && mu.len() == dc => Ok(BaseWeight::symmetric(mu)),
        Some(mu) => Err(Error::Dimension(format!("--mu has {} entries; the bases have dimensions {db} and {dc}", mu.len()))),
    }
}

fn hint(inst: &Instance) -> &'static str {
    let m = &inst.artifact.mha;
    if inst.artifact.groupoid.is_some() && m.name == "convolution" {
        "apply groupoid_rn modifier"
    } else if m.name == "crossed-product" {
        "apply crossed_rn modifier"
    } else {
        "choose a counital base weight or apply a modifier"
    }
}

/// The measured algebroid, or the report explaining why it cannot be assembled.
fn measured(inst: &Instance, opts: &Options) -> Result<std::result::Result<(MeasuredMha<S>, Report), Report>> {
    let m = &inst.artifact.mha;
    let w = weight(m, input::mu(inst, opts)?)?;
    let bw = check_base_weight(m, &w)?;
    let mut r = bw.report;
    if !bw.flags.counital {
        let hint = hint(inst);
        if let Some(e) = r.entries.iter_mut().find(|e| e.status == Status::Fail) {
            e.note = Some(hint.to_string());
        }
        return Ok(Err(r));
    }
    let ints = inst.artifact.integrals.as_ref().ok_or_else(|| Error::Invalid("no partial integrals in the input; build from an example".into()))?;
    let mr = measured_report(m, &w, &ints.phi_c, &ints.psi_b)?;
    let ok = mr.all_pass();
    r.extend(mr);
    if !ok {
        return Ok(Err(r));
    }
    let x = assemble_measured(m, &w, &ints.phi_c, &ints.psi_b)?;
    Ok(Ok((x, r)))
}

fn modular_data(inst: &Instance, x: &MeasuredMha<S>, r: &mut Report) -> Result<()> {
    let sigma = modular_automorphism(x)?;
    r.extend(sigma.report.clone());
    r.info("σ^φ", "modular-automorphism", map_to_json(&sigma.sigma_phi));
    let delta = modular_element(x, &sigma)?;
    r.extend(delta.report);
    let one = x.mha.a.one();
    r.info("δ⁺", "modular-element-second", json!({ "delta": vec_to_json(&delta.delta_plus), "trivial": delta.delta_plus == one }));
    r.info("δ⁻", "modular-element-second", json!({ "delta": vec_to_json(&delta.delta_minus), "trivial": delta.delta_minus == one }));
    if let (Some("groupoid_rn"), Some(g), Some(mu)) = (inst.artifact.recipe.as_deref(), &inst.artifact.groupoid, &inst.artifact.mu) {
        let d = cocycle(g, mu);
        let n = d.len();
        let sigma1 = LinearMap::from_fn(n, n, |i, j| if i == j { d[j].clone() } else { S::from_i64(0) });
        r.record("σ^φ = σ₁", "modular-automorphism", (sigma.sigma_phi != sigma1).then(|| json!({ "D": vec_to_json(&d) })));
    }
    Ok(())
}

fn cocycle(g: &FiniteGroupoid, mu: &[S]) -> Vec<S> {
    (0..g.arrows()).map(|c| mu[g.target_index(c)].clone() / mu[g.source_index(c)].clone()).collect()
}

fn measure(opts: &Options) -> Result<Outcome> {
    let inst = input::load(opts, "function-algebroid")?;
    Ok(report_only(match measured(&inst, opts)? {
        Err(r) => r,
        Ok((x, mut r)) => {
            modular_data(&inst, &x, &mut r)?;
            r
        }
    }))
}

fn dual(opts: &Options) -> Result<Outcome> {
    let inst = input::load(opts, "function-algebroid")?;
    Ok(report_only(match measured(&inst, opts)? {
        Err(r) => r,
        Ok((x, mut r)) => {
            let d = dual_algebra(&x)?;
            r.extend(d.report);
            r.info("dual algebra", "dual-algebra", algebra_to_json(&d.algebra));
            r
        }
    }))
}

fn report(opts: &Options) -> Result<Outcome> {
    let inst = input::load(opts, "function-algebroid")?;
    let mut r = axioms(&inst);
    let (proj, pr) = local_projectivity(&inst.artifact.mha);
    r.extend(pr);
    match measured(&inst, opts)? {
        Err(mr) => r.extend(mr),
        Ok((x, mr)) => {
            r.extend(mr);
            modular_data(&inst, &x, &mut r)?;
            r.extend(uniqueness_check(&x)?.report);
            r.extend(faithfulness_check(&x));
            let d = dual_algebra(&x)?;
            r.extend(d.report);
            r.info("dual algebra", "dual-algebra", algebra_to_json(&d.algebra));
        }
    }
    r.info("locally projective", "projective", json!(proj.all()));
    Ok(report_only(r))
}

/// Keeps the involution only when the modified algebroid is a *-algebroid again.
fn strip_star(m: RegularMha<S>, md: &Modifier<S>, original: &RegularMha<S>) -> Result<RegularMha<S>> {
    if md.is_self_adjoint(&original.a) == Some(true) || m.a.involution().is_none() {
        return Ok(m);
    }
    let mut parts = m.parts();
    parts.algebra = parts.algebra.without_involution();
    RegularMha::new(parts)
}

fn modify_cmd(opts: &Options) -> Result<Outcome> {
    let recipe = opts.recipe.ok_or_else(|| Error::Invalid("--recipe is required (identity, inner, groupoid_rn, crossed_rn)".into()))?;
    let default = if recipe == Recipe::CrossedRn { "crossed-product" } else { "convolution" };
    let inst = input::load(opts, default)?;
    let base = &inst.artifact;
    let m = &base.mha;
    let (mha, report, artifact) = match recipe {
        Recipe::Identity | Recipe::Inner => {
            let uv = match recipe {
                Recipe::Inner => {
                    let need = |x: &Option<String>, flag: &str| -> Result<Vec<S>> { input::values(x.as_deref().ok_or_else(|| Error::Invalid(format!("the inner recipe needs {flag}")))?, flag) };
                    Some((need(&opts.u, "--u")?, need(&opts.v, "--v")?))
                }
                _ => None,
            };
            let md = match &uv {
                Some((u, v)) => inner_modifier(m, u, v)?,
                None => Modifier::identity(m.dim()),
            };
            let t = modify(m, &md)?;
            let mut r = t.report;
            if let Some((u, v)) = &uv {
                r.extend(inner_formulas(m, &t.mha, u, v)?);
            }
            let mha = strip_star(t.mha, &md, m)?;
            (mha, r, Artifact { mu: input::mu(&inst, opts)?, ..base.clone() })
        }
        Recipe::GroupoidRn => {
            if m.name != "convolution" {
                return Err(Error::Invalid(format!("groupoid_rn applies to the convolution algebroid, not {}", m.name)));
            }
            let g = base.groupoid.clone().ok_or_else(|| Error::Invalid("groupoid_rn needs a groupoid".into()))?;
            let mu = input::mu(&inst, opts)?.ok_or_else(|| Error::Invalid("groupoid_rn needs --mu".into()))?;
            let rn = groupoid_rn_modifier(&g, &mu, &inst.ext)?;
            let ints = convolution_integrals(&g, &vec![S::from_i64(1); g.units.len()]);
            let mut r = rn.report;
            if let Cocycle::Groupoid(d) = &rn.cocycle {
                r.info("Radon-Nikodym cocycle", "radon-nikodym-cocycle", json!({ "D": vec_to_json(d), "sqrt_D": vec_to_json(&rn.root) }));
            }
            (rn.modified.mha, r, Artifact { groupoid: Some(g), integrals: Some(ints), mu: Some(mu), ..base.clone() })
        }
        Recipe::CrossedRn => {
            if m.name != "crossed-product" {
                return Err(Error::Invalid(format!("crossed_rn applies to the crossed-product example, not {}", m.name)));
            }
            let (c, h, act) = swap_action::<S>();
            let mu = input::mu(&inst, opts)?.ok_or_else(|| Error::Invalid("crossed_rn needs --mu".into()))?;
            let rn = crossed_rn_modifier(&c, &h, &act, &mu)?;
            let mut r = rn.report;
            if let Cocycle::Hopf(d) = &rn.cocycle {
                r.info("Radon-Nikodym cocycle", "radon-nikodym-cocycle", map_to_json(d));
            }
            let mha = strip_star(rn.modified.mha, &rn.modifier, &rn.original)?;
            (mha, r, Artifact { integrals: Some(crossed_integrals(c.dim(), &h)), mu: Some(mu), ..base.clone() })
        }
    };
    let name = match recipe {
        Recipe::Identity => "identity",
        Recipe::Inner => "inner",
        Recipe::GroupoidRn => "groupoid_rn",
        Recipe::CrossedRn => "crossed_rn",
    };
    let out = Artifact { mha, recipe: Some(name.to_string()), sqrt: inst.ext.roots().to_vec(), ..artifact };
    Ok(Outcome { report, artifact: Some(artifact_to_json(&out)) })
}
