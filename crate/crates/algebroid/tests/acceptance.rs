use std::panic::{catch_unwind, AssertUnwindSafe};

use algebroid::balanced_tensor::tensor;
use algebroid::bialgebroid::{derive_antipode, verify_regular_mha, verify_star, RegularMha, StarStructure};
use algebroid::examples::{
    build_convolution_algebroid, build_crossed_product, build_function_algebroid, build_tensor_algebroid, build_two_sided, function_integrals,
    measured_example, pointwise, swap_action, two_sided_swap, FiniteGroupoid, EXAMPLE_NAMES,
};
use algebroid::integration::{
    assemble_measured, is_faithful, pull_back, solve_partial_integrals, BaseWeight, IntegralEquations, IntegralSide, MeasuredMha,
};
use algebroid::modification::{check_cocycle, crossed_rn_modifier, groupoid_rn_measured, groupoid_rn_modifier, Cocycle};
use algebroid::report::Status;
use algebroid::structure_theory::{
    dual_algebra, element_inverse, faithfulness_check, integral_faithfulness, modular_automorphism, modular_element, uniqueness_check,
};
use algebroid::exact_linear::same_span;
use algebroid::{Extension, Field, LinearMap, Rational, Report};

type Q = Rational;
type Outcome = Result<(), String>;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn qr(p: i64, d: i64) -> Q {
    Q::from_ratio(p, d)
}

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn clean(name: &str, r: &Report) -> Outcome {
    match r.failures().first() {
        None => Ok(()),
        Some(e) => Err(format!("{name}: {} [{}]", e.axiom, e.paper_eq)),
    }
}

fn f2() -> algebroid::algebra_core::FiniteAlgebra<Q> {
    pointwise(2, vec!["p1".into(), "p2".into()])
}

fn constructors() -> Vec<RegularMha<Q>> {
    let p2 = FiniteGroupoid::pair(2);
    let (c, h, act) = swap_action::<Q>();
    vec![
        build_function_algebroid(&p2),
        build_convolution_algebroid(&p2),
        build_tensor_algebroid(&f2(), &f2(), &LinearMap::identity(2), &LinearMap::identity(2)).expect("tensor"),
        build_crossed_product(&c, &h, &act).expect("crossed product"),
        build_two_sided(&two_sided_swap::<Q>()).expect("two-sided"),
    ]
}

fn p2_functions_weighted() -> MeasuredMha<Q> {
    let g = FiniteGroupoid::pair(2);
    let m = build_function_algebroid::<Q>(&g);
    let ints = function_integrals(&g, &[q(1), q(1)]);
    assemble_measured(&m, &BaseWeight::symmetric(vec![q(1), q(4)]), &ints.phi_c, &ints.psi_b).expect("measured P2 functions")
}

/// Every measured instance the crate assembles at desk scale.
fn measured_instances() -> Result<Vec<MeasuredMha<Q>>, String> {
    let mut out = Vec::new();
    for name in EXAMPLE_NAMES {
        out.push(measured_example::<Q>(name, None, None).map_err(|e| format!("{name}: {e}"))?);
    }
    out.push(p2_functions_weighted());
    let g = FiniteGroupoid::pair(2);
    let mu = [q(1), q(4)];
    let rn = groupoid_rn_modifier(&g, &mu, &Extension::rational()).map_err(|e| e.to_string())?;
    out.push(groupoid_rn_measured(&g, &mu, &rn).map_err(|e| e.to_string())?.0);
    let (c, h, act) = swap_action::<Q>();
    out.push(crossed_rn_modifier(&c, &h, &act, &mu).map_err(|e| e.to_string())?.measured);
    Ok(out)
}

fn axiom_suites() -> Outcome {
    for m in constructors() {
        clean(&m.name, &verify_regular_mha(&m))?;
        let star = StarStructure::of(&m.a).ok_or_else(|| format!("{}: no involution", m.name))?;
        clean(&format!("{} star", m.name), &verify_star(&m, &star))?;
    }
    Ok(())
}

fn integral_characterizations() -> Outcome {
    for m in constructors() {
        let eqs = IntegralEquations::new(&m).map_err(|e| e.to_string())?;
        for side in [IntegralSide::Left, IntegralSide::Right] {
            let (space, _) = solve_partial_integrals(&m, side).map_err(|e| e.to_string())?;
            let cod = match side {
                IntegralSide::Left => m.c.dim(),
                IntegralSide::Right => m.b.dim(),
            };
            let n = m.dim();
            let mut candidates: Vec<LinearMap<Q>> = space.basis.clone();
            for seed in 0..8 {
                let base = space.generic_element(seed).unwrap_or_else(|| LinearMap::zeros(cod, n));
                candidates.push(base.clone());
                let k = seed as usize;
                let bump = LinearMap::from_fn(cod, n, |r, c| if r == k % cod && c == (3 * k + 1) % n { q(1) } else { q(0) });
                candidates.push(base.add(&bump));
            }
            candidates.push(LinearMap::from_fn(cod, n, |r, c| q((r * n + c) as i64 % 3 - 1)));
            candidates.push(LinearMap::zeros(cod, n));
            ensure(candidates.len() >= 20, format!("{}: only {} candidates", m.name, candidates.len()))?;
            let (mut yes, mut no) = (0, 0);
            for x in &candidates {
                let v = eqs.verdicts(x, side).map_err(|e| e.to_string())?;
                ensure(v[0] == v[1] && v[1] == v[2], format!("{} {side:?}: verdicts {v:?}", m.name))?;
                ensure(v[0] == space.contains(x), format!("{} {side:?}: verdict disagrees with the solved space", m.name))?;
                if v[0] {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
            ensure(yes > 0 && no > 0, format!("{} {side:?}: candidates not mixed ({yes} in, {no} out)", m.name))?;
        }
    }
    Ok(())
}

fn uniqueness() -> Outcome {
    let x = p2_functions_weighted();
    let u = uniqueness_check(&x).map_err(|e| e.to_string())?;
    clean("uniqueness", &u.report)?;
    ensure(u.left_integrals.len() == 2, format!("dim of left integrals = {}", u.left_integrals.len()))?;
    let a = &x.mha.a;
    let n = a.dim();
    let family: Vec<Vec<Q>> = (0..x.mha.b.dim())
        .map(|k| {
            let z = x.mha.b.basis_element(k);
            (0..n).map(|i| a.mul(&a.basis(i), &z).iter().zip(&x.phi.omega).fold(q(0), |s, (p, w)| s + p * w)).collect()
        })
        .collect();
    ensure(same_span(n, &u.left_integrals, &family), "left integrals differ from M(B)·φ")
}

fn modular_automorphisms() -> Outcome {
    for x in measured_instances()? {
        let s = modular_automorphism(&x).map_err(|e| format!("{}: {e}", x.mha.name))?;
        clean(&x.mha.name, &s.report)?;
        for label in ["σ^φ|_C = S²|_C", "Δ_B∘σ^φ = (S²⊗σ^φ)∘Δ"] {
            ensure(s.report.passed(label), format!("{}: {label} not checked", x.mha.name))?;
        }
    }
    let g = FiniteGroupoid::pair(2);
    let mu = [q(1), q(4)];
    let rn = groupoid_rn_modifier(&g, &mu, &Extension::rational()).map_err(|e| e.to_string())?;
    let (x, r) = groupoid_rn_measured(&g, &mu, &rn).map_err(|e| e.to_string())?;
    clean("modified convolution", &r)?;
    let Cocycle::Groupoid(d) = &rn.cocycle else { return Err("groupoid cocycle expected".into()) };
    let sigma = modular_automorphism(&x).map_err(|e| e.to_string())?.sigma_phi;
    let diag = LinearMap::from_fn(4, 4, |r, c| if r == c { d[c].clone() } else { q(0) });
    ensure(sigma == diag, "σ^φ is not multiplication by D")?;
    // arrow (2,1) has index 2
    ensure(d[2] == q(4), format!("D(2,1) = {}", d[2]))
}

fn modular_element_p2() -> Outcome {
    let x = p2_functions_weighted();
    let s = modular_automorphism(&x).map_err(|e| e.to_string())?;
    let d = modular_element(&x, &s).map_err(|e| e.to_string())?;
    clean("modular element", &d.report)?;
    ensure(d.delta_plus == vec![q(1), q(4), qr(1, 4), q(1)], format!("δ⁺ = {:?}", d.delta_plus))?;
    let m = &x.mha;
    let a = &m.a;
    let dp = &d.delta_plus;
    let dm = &d.delta_minus;
    let grouplike = m.tensors.target_b.project(&tensor(dp, dp));
    ensure(m.delta_b.apply(dp) == grouplike, "Δ_B(δ⁺) ≠ δ⁺⊗δ⁺")?;
    let dm_inv = element_inverse(a, dm).ok_or("δ⁻ not invertible")?;
    ensure(m.antipode().map_err(|e| e.to_string())?.apply(dp) == dm_inv, "S(δ⁺) ≠ (δ⁻)⁻¹")?;
    let eps = &x.counit;
    let ok = (0..a.dim()).all(|i| a.mul(dm, &a.basis(i)).iter().zip(eps).fold(q(0), |s, (p, w)| s + p * w) == eps[i]);
    ensure(ok, "ε·δ⁻ ≠ ε")?;
    ensure(a.star(dm) == *dp, "δ⁺ ≠ (δ⁻)*")
}

fn faithfulness() -> Outcome {
    for x in measured_instances()? {
        clean(&x.mha.name, &faithfulness_check(&x))?;
        ensure(is_faithful(&x.mha.a, &x.phi.omega) && is_faithful(&x.mha.a, &x.psi.omega), format!("{}: singular Gram matrix", x.mha.name))?;
    }
    let x = p2_functions_weighted();
    let partial = function_integrals(&FiniteGroupoid::pair(2), &[q(1), q(0)]);
    let omega = pull_back(&[q(1), q(4)], &partial.phi_c);
    let r = integral_faithfulness(&x.mha, &x.weight, &omega).map_err(|e| e.to_string())?;
    clean("non-full integral", &r)?;
    ensure(r.entries.iter().any(|e| e.status == Status::Info && e.axiom.starts_with("not full")), "non-full integral not reported as outside the hypotheses")?;
    ensure(!is_faithful(&x.mha.a, &omega), "the non-full integral is unexpectedly faithful")
}

fn dual_algebras() -> Outcome {
    let z2 = measured_example::<Q>("group-algebra", None, None).map_err(|e| e.to_string())?;
    let d = dual_algebra(&z2).map_err(|e| e.to_string())?;
    clean("dual of F[Z/2]", &d.report)?;
    let h = &d.algebra;
    let c = z2.phi.omega[0].clone();
    for i in 0..2 {
        for j in 0..2 {
            let want: Vec<Q> = (0..2).map(|k| if i == j && k == i { c.clone() } else { q(0) }).collect();
            ensure(h.mul(&h.basis(i), &h.basis(j)) == want, format!("dual of F[Z/2]: e{i}·e{j}"))?;
        }
    }
    let x = p2_functions_weighted();
    let d = dual_algebra(&x).map_err(|e| e.to_string())?;
    clean("dual of P2 functions", &d.report)?;
    let h = &d.algebra;
    let g = FiniteGroupoid::pair(2);
    // matrix units: e_γ e_γ' is a nonzero multiple of e_{γγ'} or of e_{γ'γ}, else zero
    let orient = |flip: bool| {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let p = h.mul(&h.basis(i), &h.basis(j));
                match if flip { g.compose(j, i) } else { g.compose(i, j) } {
                    Some(k) => p.iter().enumerate().all(|(l, c)| (l == k) != (*c == q(0))),
                    None => p.iter().all(|c| *c == q(0)),
                }
            })
        })
    };
    ensure(orient(false) || orient(true), "dual of P2 functions is not M₂")?;
    for x in measured_instances()? {
        clean(&format!("dual of {}", x.mha.name), &dual_algebra(&x).map_err(|e| e.to_string())?.report)?;
    }
    Ok(())
}

fn modification_p2() -> Outcome {
    let g = FiniteGroupoid::pair(2);
    let mu = [q(1), q(4)];
    let rn = groupoid_rn_modifier(&g, &mu, &Extension::rational()).map_err(|e| e.to_string())?;
    clean("groupoid modifier", &rn.report)?;
    let tilde = &rn.modified.mha;
    clean("modified structure", &verify_regular_mha(tilde))?;
    let star = StarStructure::of(&tilde.a).ok_or("modified structure lost its involution")?;
    clean("modified star", &verify_star(tilde, &star))?;
    let (_, r) = groupoid_rn_measured(&g, &mu, &rn).map_err(|e| e.to_string())?;
    clean("modified measured", &r)?;
    // arrow (2,1): μ(t)·ε̃_B = 4·(1/2) and μ(s)·ε̃_C = 1·2
    let eb = tilde.eps_b().map_err(|e| e.to_string())?.column(2);
    let ec = tilde.eps_c().map_err(|e| e.to_string())?.column(2);
    ensure(eb == vec![q(0), qr(1, 2)], format!("ε̃_B(δ_(2,1)) = {eb:?}"))?;
    ensure(ec == vec![q(2), q(0)], format!("ε̃_C(δ_(2,1)) = {ec:?}"))?;
    let lhs = mu[1].clone() * eb[1].clone();
    let rhs = mu[0].clone() * ec[0].clone();
    ensure(lhs == q(2) && rhs == q(2), format!("counitality witness {lhs} vs {rhs}"))?;
    for side in [IntegralSide::Left, IntegralSide::Right] {
        let before = solve_partial_integrals(&rn.original, side).map_err(|e| e.to_string())?.0;
        let after = solve_partial_integrals(tilde, side).map_err(|e| e.to_string())?.0;
        ensure(before.dim() > 0 && before.same_as(&after), format!("{side:?} integral spaces differ"))?;
    }
    Ok(())
}

fn crossed_pipeline() -> Outcome {
    let (c, h, act) = swap_action::<Q>();
    let rn = crossed_rn_modifier(&c, &h, &act, &[q(1), q(4)]).map_err(|e| e.to_string())?;
    clean("crossed modifier", &rn.report)?;
    let Cocycle::Hopf(d) = &rn.cocycle else { return Err("Hopf cocycle expected".into()) };
    ensure(d.column(0) == vec![q(1), q(1)], format!("D_e = {:?}", d.column(0)))?;
    ensure(d.column(1) == vec![q(4), qr(1, 4)], format!("D_g = {:?}", d.column(1)))?;
    clean("cocycle", &check_cocycle(&c, &h, &act, d))?;
    ensure(rn.report.passed("D(hg) = D(h₍₁₎)(h₍₂₎▷D(g))"), "cocycle law not checked")?;
    clean("measured modification", &rn.measured.report)?;
    ensure(rn.report.passed("σ^φ(yh) = yσ_H(h₍₂₎)D_{S⁻¹(h₍₁₎)}"), "σ^φ formula not reproduced")
}

fn meta_consistency() -> Outcome {
    let mut instances = constructors();
    instances.extend(measured_instances()?.into_iter().map(|x| x.mha));
    for m in &instances {
        let derived = derive_antipode(m).map_err(|e| format!("{}: {e}", m.name))?;
        ensure(&derived == m.antipode().map_err(|e| e.to_string())?, format!("{}: derived antipode differs", m.name))?;
        let r = verify_regular_mha(m);
        let diagram: Vec<_> = r.entries.iter().filter(|e| e.paper_eq == "dg:galois-antipode").collect();
        ensure(diagram.len() >= 2 && diagram.iter().all(|e| e.status == Status::Pass), format!("{}: antipode/Galois diagram", m.name))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suites", axiom_suites),
        ("partial integral characterizations agree", integral_characterizations),
        ("uniqueness of integrals", uniqueness),
        ("modular automorphism", modular_automorphisms),
        ("modular element", modular_element_p2),
        ("faithfulness", faithfulness),
        ("dual algebra", dual_algebras),
        ("modification of the P2 convolution algebroid", modification_p2),
        ("crossed-product pipeline", crossed_pipeline),
        ("meta-consistency", meta_consistency),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("criterion {}: pass ({name})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
