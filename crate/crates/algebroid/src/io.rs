//! JSON encodings: scalars as fraction strings, algebras by structure
//! constants, algebroids and Hopf algebras by their defining matrices.

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::algebra_core::FiniteAlgebra;
use crate::bialgebroid::{MhaParts, RegularMha};
use crate::error::{Error, Result};
use crate::examples::{FiniteGroupoid, FiniteHopf, StandardIntegrals};
use crate::exact_linear::{format_rational, parse_rational, Field, LinearMap, Scalar};

fn schema(at: &str, what: &str) -> Error {
    Error::Invalid(format!("{at}: {what}"))
}

/// Scalars that can be written to and read from JSON.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, at: &str) -> Result<Self>;
}

fn rational_from(v: &Value, at: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| schema(at, &format!("{s:?} is not a fraction"))),
        Value::Number(n) => n.as_i64().map(|k| BigRational::from_integer(k.into())).ok_or_else(|| schema(at, "numbers must be integers; use fraction strings")),
        _ => Err(schema(at, "expected a fraction string")),
    }
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value, at: &str) -> Result<Self> {
        rational_from(v, at)
    }
}

/// Rational scalars are plain strings; otherwise
/// `{"re", "im", "sqrt_part": {"d": {"re", "im"}}}`.
impl JsonScalar for Scalar {
    fn to_json(&self) -> Value {
        if let Some(q) = self.to_rational() {
            return q.to_json();
        }
        let zero = BigRational::zero();
        let (mut re, mut im) = (zero.clone(), zero);
        let mut roots = Map::new();
        for (d, r, i) in self.parts() {
            if d == 1 {
                (re, im) = (r.clone(), i.clone());
            } else {
                roots.insert(d.to_string(), json!({ "re": r.to_json(), "im": i.to_json() }));
            }
        }
        json!({ "re": re.to_json(), "im": im.to_json(), "sqrt_part": roots })
    }

    fn from_json(v: &Value, at: &str) -> Result<Self> {
        let Value::Object(o) = v else {
            return Ok(Scalar::rational(rational_from(v, at)?));
        };
        let part = |o: &Map<String, Value>, key: &str| o.get(key).map_or(Ok(BigRational::zero()), |x| rational_from(x, &format!("{at}.{key}")));
        let mut parts = vec![(1, part(o, "re")?, part(o, "im")?)];
        if let Some(roots) = o.get("sqrt_part") {
            let roots = roots.as_object().ok_or_else(|| schema(at, "sqrt_part must be an object"))?;
            for (d, c) in roots {
                let d: u64 = d.parse().map_err(|_| schema(at, &format!("radicand {d:?}")))?;
                let c = c.as_object().ok_or_else(|| schema(at, "sqrt_part entries are {re, im}"))?;
                parts.push((d, part(c, "re")?, part(c, "im")?));
            }
        }
        Scalar::from_parts(parts).ok_or_else(|| schema(at, "radicands must be positive"))
    }
}

pub fn vec_to_json<F: JsonScalar>(v: &[F]) -> Value {
    Value::Array(v.iter().map(F::to_json).collect())
}

pub fn vec_from_json<F: JsonScalar>(v: &Value, at: &str) -> Result<Vec<F>> {
    let items = v.as_array().ok_or_else(|| schema(at, "expected an array"))?;
    items.iter().enumerate().map(|(i, x)| F::from_json(x, &format!("{at}[{i}]"))).collect()
}

/// A matrix is a list of rows.
pub fn map_to_json<F: JsonScalar>(m: &LinearMap<F>) -> Value {
    json!({ "cod": m.cod(), "dom": m.dom(), "rows": Value::Array(m.rows().iter().map(|r| vec_to_json(r)).collect()) })
}

pub fn map_from_json<F: JsonScalar>(v: &Value, at: &str) -> Result<LinearMap<F>> {
    let dim = |key: &str| v.get(key).and_then(Value::as_u64).map(|d| d as usize).ok_or_else(|| schema(at, &format!("missing {key}")));
    let (cod, dom) = (dim("cod")?, dim("dom")?);
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| schema(at, "missing rows"))?;
    if rows.len() != cod {
        return Err(schema(at, &format!("expected {cod} rows, got {}", rows.len())));
    }
    let rows: Vec<Vec<F>> = rows.iter().enumerate().map(|(i, r)| vec_from_json(r, &format!("{at}.rows[{i}]"))).collect::<Result<_>>()?;
    if let Some(i) = rows.iter().position(|r| r.len() != dom) {
        return Err(schema(at, &format!("row {i} does not have {dom} entries")));
    }
    Ok(LinearMap::from_rows(cod, dom, rows))
}

fn vecs_to_json<F: JsonScalar>(vs: &[Vec<F>]) -> Value {
    Value::Array(vs.iter().map(|v| vec_to_json(v)).collect())
}

fn vecs_from_json<F: JsonScalar>(v: &Value, at: &str) -> Result<Vec<Vec<F>>> {
    let items = v.as_array().ok_or_else(|| schema(at, "expected an array of vectors"))?;
    items.iter().enumerate().map(|(i, x)| vec_from_json(x, &format!("{at}[{i}]"))).collect()
}

/// `{"dim", "structure", "involution"?, "labels"}` with `structure[i][j]`
/// the sparse product `eᵢeⱼ` as `[k, coeff]` pairs.
pub fn algebra_to_json<F: JsonScalar>(a: &FiniteAlgebra<F>) -> Value {
    let n = a.dim();
    let structure: Vec<Value> = (0..n).map(|i| Value::Array((0..n).map(|j| Value::Array(a.structure(i, j).iter().map(|(k, c)| json!([k, c.to_json()])).collect())).collect())).collect();
    let mut o = json!({ "dim": n, "structure": structure, "labels": a.labels() });
    if let Some(j) = a.involution() {
        o["involution"] = map_to_json(j);
    }
    o
}

pub fn algebra_from_json<F: JsonScalar>(v: &Value, at: &str) -> Result<FiniteAlgebra<F>> {
    let n = v.get("dim").and_then(Value::as_u64).ok_or_else(|| schema(at, "missing dim"))? as usize;
    let labels = match v.get("labels") {
        Some(l) => serde_json::from_value::<Vec<String>>(l.clone()).map_err(|e| schema(at, &format!("labels: {e}")))?,
        None => FiniteAlgebra::<F>::default_labels(n),
    };
    if labels.len() != n {
        return Err(schema(at, "one label per basis element"));
    }
    let rows = v.get("structure").and_then(Value::as_array).ok_or_else(|| schema(at, "missing structure"))?;
    let mut table = vec![Vec::new(); n * n];
    if rows.len() != n {
        return Err(schema(at, &format!("structure needs {n} rows")));
    }
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| schema(at, &format!("structure[{i}] needs {n} entries")))?;
        for (j, entry) in row.iter().enumerate() {
            let here = format!("{at}.structure[{i}][{j}]");
            let terms = entry.as_array().ok_or_else(|| schema(&here, "expected [[k, coeff], ...]"))?;
            for t in terms {
                let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| schema(&here, "terms are [k, coeff]"))?;
                let k = pair[0].as_u64().filter(|&k| (k as usize) < n).ok_or_else(|| schema(&here, "basis index out of range"))? as usize;
                table[i * n + j].push((k, F::from_json(&pair[1], &here)?));
            }
        }
    }
    let a = FiniteAlgebra::from_products(n, labels, |i, j| table[i * n + j].clone());
    match v.get("involution") {
        Some(j) => a.with_involution(map_from_json(j, &format!("{at}.involution"))?),
        None => Ok(a),
    }
}

/// Algebra schema plus `delta` (columns of `A → A⊗A`), `eps` and `antipode`.
pub fn hopf_to_json<F: JsonScalar>(h: &FiniteHopf<F>) -> Value {
    json!({
        "name": h.name,
        "algebra": algebra_to_json(&h.algebra),
        "delta": vecs_to_json(&h.delta),
        "eps": vec_to_json(&h.eps),
        "antipode": map_to_json(&h.antipode),
    })
}

pub fn hopf_from_json<F: JsonScalar>(v: &Value) -> Result<FiniteHopf<F>> {
    let field = |k: &str| v.get(k).ok_or_else(|| schema("hopf", &format!("missing {k}")));
    let name = v.get("name").and_then(Value::as_str).unwrap_or("hopf");
    FiniteHopf::new(
        name,
        algebra_from_json(field("algebra")?, "hopf.algebra")?,
        vecs_from_json(field("delta")?, "hopf.delta")?,
        vec_from_json(field("eps")?, "hopf.eps")?,
        map_from_json(field("antipode")?, "hopf.antipode")?,
    )
}

/// A pipeline artifact: an algebroid, optionally with its groupoid, partial
/// integrals and the base weight it was modified for.
#[derive(Clone, Debug)]
pub struct Artifact<F: Field> {
    pub mha: RegularMha<F>,
    pub groupoid: Option<FiniteGroupoid>,
    pub integrals: Option<StandardIntegrals<F>>,
    pub mu: Option<Vec<F>>,
    /// Radicands adjoined to the field.
    pub sqrt: Vec<u64>,
    /// Modifier recipe that produced the algebroid, if any.
    pub recipe: Option<String>,
}

pub fn mha_to_json<F: JsonScalar>(m: &RegularMha<F>) -> Value {
    let p = m.parts();
    let opt = |x: &Option<LinearMap<F>>| x.as_ref().map_or(Value::Null, map_to_json);
    json!({
        "name": p.name,
        "algebra": algebra_to_json(&p.algebra),
        "b_basis": vecs_to_json(&p.b_basis),
        "c_basis": vecs_to_json(&p.c_basis),
        "s_b": map_to_json(&p.s_b),
        "s_c": map_to_json(&p.s_c),
        "delta_b": vecs_to_json(&p.delta_b),
        "delta_c": vecs_to_json(&p.delta_c),
        "eps_b": opt(&p.eps_b),
        "eps_c": opt(&p.eps_c),
        "antipode": opt(&p.antipode),
    })
}

pub fn mha_from_json<F: JsonScalar>(v: &Value, at: &str) -> Result<RegularMha<F>> {
    let field = |k: &str| v.get(k).ok_or_else(|| schema(at, &format!("missing {k}")));
    let here = |k: &str| format!("{at}.{k}");
    let opt = |k: &str| -> Result<Option<LinearMap<F>>> {
        match v.get(k) {
            None | Some(Value::Null) => Ok(None),
            Some(x) => map_from_json(x, &here(k)).map(Some),
        }
    };
    RegularMha::new(MhaParts {
        name: v.get("name").and_then(Value::as_str).unwrap_or("algebroid").to_string(),
        algebra: algebra_from_json(field("algebra")?, &here("algebra"))?,
        b_basis: vecs_from_json(field("b_basis")?, &here("b_basis"))?,
        c_basis: vecs_from_json(field("c_basis")?, &here("c_basis"))?,
        s_b: map_from_json(field("s_b")?, &here("s_b"))?,
        s_c: map_from_json(field("s_c")?, &here("s_c"))?,
        delta_b: vecs_from_json(field("delta_b")?, &here("delta_b"))?,
        delta_c: vecs_from_json(field("delta_c")?, &here("delta_c"))?,
        eps_b: opt("eps_b")?,
        eps_c: opt("eps_c")?,
        antipode: opt("antipode")?,
    })
}

pub fn artifact_to_json<F: JsonScalar>(x: &Artifact<F>) -> Value {
    let mut o = json!({ "kind": "regular-mha", "mha": mha_to_json(&x.mha), "sqrt": x.sqrt });
    if let Some(g) = &x.groupoid {
        o["groupoid"] = serde_json::to_value(g.to_json()).expect("groupoid serializes");
    }
    if let Some(i) = &x.integrals {
        o["integrals"] = json!({ "phi_c": map_to_json(&i.phi_c), "psi_b": map_to_json(&i.psi_b) });
    }
    if let Some(mu) = &x.mu {
        o["mu"] = vec_to_json(mu);
    }
    if let Some(r) = &x.recipe {
        o["recipe"] = json!(r);
    }
    o
}

pub fn artifact_from_json<F: JsonScalar>(v: &Value) -> Result<Artifact<F>> {
    if v.get("kind").and_then(Value::as_str) != Some("regular-mha") {
        return Err(schema("artifact", "kind must be \"regular-mha\""));
    }
    let mha = mha_from_json(v.get("mha").ok_or_else(|| schema("artifact", "missing mha"))?, "artifact.mha")?;
    let groupoid = match v.get("groupoid") {
        Some(g) => Some(FiniteGroupoid::from_json(&serde_json::from_value(g.clone()).map_err(|e| schema("artifact.groupoid", &e.to_string()))?)?),
        None => None,
    };
    let integrals = match v.get("integrals") {
        Some(i) => Some(StandardIntegrals {
            phi_c: map_from_json(i.get("phi_c").ok_or_else(|| schema("artifact.integrals", "missing phi_c"))?, "artifact.integrals.phi_c")?,
            psi_b: map_from_json(i.get("psi_b").ok_or_else(|| schema("artifact.integrals", "missing psi_b"))?, "artifact.integrals.psi_b")?,
        }),
        None => None,
    };
    let mu = v.get("mu").map(|m| vec_from_json(m, "artifact.mu")).transpose()?;
    let sqrt = match v.get("sqrt") {
        Some(s) => serde_json::from_value(s.clone()).map_err(|e| schema("artifact.sqrt", &e.to_string()))?,
        None => Vec::new(),
    };
    let recipe = v.get("recipe").and_then(Value::as_str).map(str::to_string);
    Ok(Artifact { mha, groupoid, integrals, mu, sqrt, recipe })
}

/// Comma-separated fraction strings, e.g. `"1,4"` or `"1/2, 3"`.
pub fn parse_csv<F: Field>(s: &str) -> Result<Vec<F>> {
    s.split(',').map(|t| parse_rational(t).map(F::from_rational).ok_or_else(|| schema("csv", &format!("{:?} is not a fraction", t.trim())))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_group_hopf, named_example, FiniteGroup, HopfFlavor, EXAMPLE_NAMES};
    use crate::Rational as Q;

    #[test]
    fn scalars_round_trip() {
        let x = Scalar::from_ratio(3, 4) + Scalar::i() * Scalar::sqrt_of(2) + Scalar::sqrt_of(12);
        let v = x.to_json();
        assert_eq!(Scalar::from_json(&v, "x").unwrap(), x);
        assert_eq!(Q::from_ratio(-5, 3).to_json(), json!("-5/3"));
        assert_eq!(Scalar::from_ratio(1, 2).to_json(), json!("1/2"));
        assert_eq!(Q::from_json(&json!(7), "x").unwrap(), Q::from_i64(7));
        assert!(Q::from_json(&json!(0.5), "x").is_err());
        assert!(Q::from_json(&json!("1/0"), "x").is_err());
    }

    #[test]
    fn algebroids_round_trip() {
        for name in EXAMPLE_NAMES {
            let m = named_example::<Q>(name, None).unwrap().mha;
            let v = mha_to_json(&m);
            let back = mha_from_json::<Q>(&v, "mha").unwrap();
            assert_eq!(back.parts().delta_b, m.parts().delta_b, "{name}");
            assert_eq!(back.a.involution(), m.a.involution(), "{name}");
            assert_eq!(back.antipode, m.antipode, "{name}");
            assert_eq!(mha_to_json(&back), v, "{name}");
        }
    }

    #[test]
    fn artifacts_and_hopf_round_trip() {
        let ex = named_example::<Q>("convolution", None).unwrap();
        let x = Artifact { mha: ex.mha, groupoid: ex.groupoid, integrals: Some(ex.integrals), mu: Some(vec![Q::from_i64(1), Q::from_i64(4)]), sqrt: vec![2], recipe: Some("identity".into()) };
        let v = artifact_to_json(&x);
        let y = artifact_from_json::<Q>(&v).unwrap();
        assert_eq!(artifact_to_json(&y), v);
        let h = build_group_hopf::<Q>(&FiniteGroup::cyclic(3), HopfFlavor::FunctionAlgebra);
        let back = hopf_from_json::<Q>(&hopf_to_json(&h)).unwrap();
        assert_eq!(back.delta, h.delta);
        assert_eq!(back.phi, h.phi);
    }

    #[test]
    fn schema_errors_name_the_location() {
        let bad = json!({ "dim": 1, "structure": [[[[0, "x"]]]] });
        let err = algebra_from_json::<Q>(&bad, "alg").unwrap_err().to_string();
        assert!(err.contains("alg.structure[0][0]"), "{err}");
        assert_eq!(parse_csv::<Q>("1, 4/3").unwrap(), vec![Q::from_i64(1), Q::from_ratio(4, 3)]);
        assert!(parse_csv::<Q>("1,0.5").is_err());
    }
}
