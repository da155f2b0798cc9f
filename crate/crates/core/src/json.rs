//! JSON formats for algebras, matrices, forms, sections and generators.
//!
//! Rationals are written as strings `"p/q"` (integers and decimals are also
//! accepted as JSON numbers or strings on input).
//!
//! * algebra: `{"dim": n, "basis": [names], "brackets": [[i, j, [[k, c], …]], …]}`
//!   listing `[e_i, e_j] = Σ c e_k` for `i < j`;
//! * matrix: `[[a, b, …], …]` by rows, or `{"matrix": …}`;
//! * form: `{"dim": n, "value_dim": d, "entries": [[i, j, [v_1, …, v_d]], …]}`
//!   for `i <= j` (missing entries are zero);
//! * sections: `{"N": n, "samples": [[…], …]}`, or a list of those, or
//!   `{"sections": [...]}`;
//! * generators: `{"constants": ["1", "alpha"], "vectors": [[[c_1, c_2]], …],
//!   "values": [1.0, 1.414…]}` with one `n × k` coefficient array per vector.

use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cohomology::{increasing_tuples, Cochain};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Matrix, Scalar};
use crate::lattice::{GeneratedSubgroup, SymbolicVector};
use crate::lie::{normalized_killing, LieAlgebra, LinearMap, SymBilinearForm};
use crate::twisted_loop::SampledTwistedSection;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("malformed JSON: {e}")))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_scalar(&n.to_string()),
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

fn scalar_vec(v: &Value, what: &str) -> Result<Vec<Scalar>> {
    array(v, what)?.iter().map(scalar).collect()
}

fn f64_vec(v: &Value, what: &str) -> Result<Vec<f64>> {
    array(v, what)?
        .iter()
        .map(|x| x.as_f64().ok_or_else(|| parse_err(format!("{what} must contain numbers"))))
        .collect()
}

/// Built-in algebras by name.
pub fn algebra_preset(name: &str) -> Option<LieAlgebra> {
    match name {
        "su2" => Some(LieAlgebra::su2()),
        "sl2" | "sl2r" => Some(LieAlgebra::sl2()),
        "sl2c" => Some(LieAlgebra::sl2c_real()),
        "gl2" => Some(LieAlgebra::gl(2)),
        "su2+su2" => Some(LieAlgebra::su2().direct_sum(&LieAlgebra::su2())),
        _ => name.strip_prefix("abelian").and_then(|n| n.parse().ok()).map(LieAlgebra::abelian),
    }
}

pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra> {
    let dim = index(v.get("dim").ok_or_else(|| parse_err("algebra needs \"dim\""))?, "dim")?;
    let names: Vec<String> = match v.get("basis") {
        Some(b) => array(b, "basis")?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| parse_err("basis names must be strings")))
            .collect::<Result<_>>()?,
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    if names.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: names.len(),
        });
    }
    let mut brackets = Vec::new();
    if let Some(bs) = v.get("brackets") {
        for b in array(bs, "brackets")? {
            let b = array(b, "bracket entry")?;
            if b.len() != 3 {
                return Err(parse_err("bracket entries are [i, j, [[k, c], ...]]"));
            }
            let (i, j) = (index(&b[0], "i")?, index(&b[1], "j")?);
            let terms = array(&b[2], "bracket terms")?
                .iter()
                .map(|t| {
                    let t = array(t, "bracket term")?;
                    if t.len() != 2 {
                        return Err(parse_err("bracket terms are [k, c]"));
                    }
                    Ok((index(&t[0], "k")?, scalar(&t[1])?))
                })
                .collect::<Result<Vec<_>>>()?;
            brackets.push((i, j, terms));
        }
    }
    LieAlgebra::from_brackets(names, &brackets)
}

pub fn algebra_to_json(alg: &LieAlgebra) -> Value {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<Value> = alg
                .basis_bracket(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| json!([k, scalar_to_json(c)]))
                .collect();
            if !terms.is_empty() {
                brackets.push(json!([i, j, terms]));
            }
        }
    }
    json!({"dim": n, "basis": alg.basis_names(), "brackets": brackets})
}

/// A preset name or a path to an algebra JSON file.
pub fn load_algebra(arg: &str) -> Result<LieAlgebra> {
    if let Some(a) = algebra_preset(arg) {
        return Ok(a);
    }
    algebra_from_json(&read_json(Path::new(arg))?)
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let v = v.get("matrix").unwrap_or(v);
    let rows = array(v, "matrix")?;
    let parsed: Vec<Vec<Scalar>> = rows.iter().map(|r| scalar_vec(r, "matrix row")).collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, |r| r.len());
    Matrix::from_rows(parsed, cols)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect())).collect())
}

pub fn load_matrix(path: &str) -> Result<LinearMap> {
    Ok(LinearMap::new(matrix_from_json(&read_json(Path::new(path))?)?))
}

pub fn form_from_json(v: &Value) -> Result<SymBilinearForm> {
    let dim = index(v.get("dim").ok_or_else(|| parse_err("form needs \"dim\""))?, "dim")?;
    let value_dim = match v.get("value_dim") {
        Some(d) => index(d, "value_dim")?,
        None => 1,
    };
    let mut table = vec![vec![vec![Scalar::zero(); value_dim]; dim]; dim];
    for e in array(v.get("entries").unwrap_or(&json!([])), "entries")? {
        let e = array(e, "form entry")?;
        if e.len() != 3 {
            return Err(parse_err("form entries are [i, j, [values]]"));
        }
        let (i, j) = (index(&e[0], "i")?, index(&e[1], "j")?);
        if i >= dim || j >= dim {
            return Err(parse_err(format!("form index ({i}, {j}) out of range")));
        }
        let vals = scalar_vec(&e[2], "form value")?;
        if vals.len() != value_dim {
            return Err(Error::DimensionMismatch {
                expected: value_dim,
                found: vals.len(),
            });
        }
        table[i][j] = vals.clone();
        table[j][i] = vals;
    }
    SymBilinearForm::from_table(table, value_dim)
}

pub fn form_to_json(f: &SymBilinearForm) -> Value {
    let mut entries = Vec::new();
    for i in 0..f.dim() {
        for j in i..f.dim() {
            let v = f.get(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                entries.push(json!([i, j, v.iter().map(scalar_to_json).collect::<Vec<_>>()]));
            }
        }
    }
    json!({"dim": f.dim(), "value_dim": f.value_dim(), "entries": entries})
}

/// `normalized` (`−¼` Killing form), `killing`, or a path to a form file.
pub fn load_form(arg: &str, alg: &LieAlgebra) -> Result<SymBilinearForm> {
    match arg {
        "normalized" => Ok(normalized_killing(alg)),
        "killing" => Ok(alg.killing_form()),
        path => form_from_json(&read_json(Path::new(path))?),
    }
}

fn section_from_json(v: &Value, twist: &LinearMap) -> Result<SampledTwistedSection> {
    let n = index(v.get("N").ok_or_else(|| parse_err("section needs \"N\""))?, "N")?;
    let samples: Vec<Vec<f64>> = array(v.get("samples").ok_or_else(|| parse_err("section needs \"samples\""))?, "samples")?
        .iter()
        .map(|s| f64_vec(s, "sample"))
        .collect::<Result<_>>()?;
    if samples.len() != n + 1 {
        return Err(parse_err(format!("N = {n} requires {} samples, found {}", n + 1, samples.len())));
    }
    SampledTwistedSection::new(twist.clone(), samples)
}

pub fn sections_from_json(v: &Value, twist: &LinearMap) -> Result<Vec<SampledTwistedSection>> {
    let list = if let Some(s) = v.get("sections") {
        array(s, "sections")?.clone()
    } else if let Some(a) = v.as_array() {
        a.clone()
    } else {
        vec![v.clone()]
    };
    list.iter().map(|s| section_from_json(s, twist)).collect()
}

pub fn section_to_json(s: &SampledTwistedSection) -> Value {
    json!({"N": s.grid_size(), "samples": s.samples()})
}

pub fn generators_from_json(v: &Value) -> Result<GeneratedSubgroup> {
    let constants: Vec<String> = array(v.get("constants").ok_or_else(|| parse_err("generators need \"constants\""))?, "constants")?
        .iter()
        .map(|c| c.as_str().map(String::from).ok_or_else(|| parse_err("constant names must be strings")))
        .collect::<Result<_>>()?;
    let vectors = array(v.get("vectors").ok_or_else(|| parse_err("generators need \"vectors\""))?, "vectors")?;
    let gens: Vec<SymbolicVector> = vectors
        .iter()
        .map(|vec| {
            let rows = array(vec, "vector")?.iter().map(|r| scalar_vec(r, "vector row")).collect::<Result<Vec<_>>>()?;
            SymbolicVector::new(rows)
        })
        .collect::<Result<_>>()?;
    let ambient = match v.get("ambient_dim") {
        Some(d) => index(d, "ambient_dim")?,
        None => gens.first().map_or(0, |g| g.ambient_dim()),
    };
    let mut group = GeneratedSubgroup::new(ambient, constants, gens)?;
    if let Some(vals) = v.get("values") {
        group = group.with_values(f64_vec(vals, "values")?)?;
    }
    Ok(group)
}

/// Nonzero values on increasing index tuples.
pub fn cochain_to_json(c: &Cochain) -> Value {
    let entries: Vec<Value> = increasing_tuples(c.dim(), c.degree())
        .into_iter()
        .filter_map(|t| {
            let v = c.at(&t);
            v.iter().any(|x| !x.is_zero()).then(|| json!([t, v.iter().map(scalar_to_json).collect::<Vec<_>>()]))
        })
        .collect();
    json!({"degree": c.degree(), "dim": c.dim(), "value_dim": c.value_dim(), "entries": entries})
}

/// `name=value,…` pairs; `"1"` is implied.
pub fn parse_constant_values(arg: &str, constants: &[String]) -> Result<Vec<f64>> {
    let mut values: Vec<Option<f64>> = constants.iter().map(|c| if c == "1" { Some(1.0) } else { None }).collect();
    for pair in arg.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) = pair.split_once('=').ok_or_else(|| parse_err(format!("expected name=value, found {pair:?}")))?;
        let idx = constants
            .iter()
            .position(|c| c == name.trim())
            .ok_or_else(|| parse_err(format!("unknown constant {name:?}")))?;
        values[idx] = Some(value.trim().parse().map_err(|_| parse_err(format!("bad value for {name}")))?);
    }
    values.into_iter().map(|v| v.ok_or(Error::MissingNumericValues)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    #[test]
    fn algebra_round_trip() {
        for name in ["su2", "sl2c", "gl2", "abelian3", "su2+su2"] {
            let a = algebra_preset(name).unwrap();
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        }
        let bad = parse_json(r#"{"dim": 2, "brackets": [[0, 1, [[0, "1"]]]], "basis": ["x"]}"#).unwrap();
        assert!(algebra_from_json(&bad).is_err());
        assert!(matches!(parse_json("{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn matrix_and_form_round_trip() {
        let m = Matrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(3), frac(-2, 3)]], 2).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        assert_eq!(matrix_from_json(&json!({"matrix": [[1, 0.5]]})).unwrap().get(0, 1), &frac(1, 2));
        let k = normalized_killing(&LieAlgebra::su2());
        assert_eq!(form_from_json(&form_to_json(&k)).unwrap(), k);
    }

    #[test]
    fn generators_and_constants() {
        let v = parse_json(r#"{"constants":["1","alpha"],"vectors":[[["1","0"]],[["0","1"]]]}"#).unwrap();
        let g = generators_from_json(&v).unwrap();
        assert_eq!(g.generators().len(), 2);
        assert_eq!(parse_constant_values("alpha=1.5", g.constants()).unwrap(), vec![1.0, 1.5]);
        assert_eq!(parse_constant_values("", g.constants()), Err(Error::MissingNumericValues));
        assert!(parse_constant_values("beta=2", g.constants()).is_err());
    }

    #[test]
    fn sections_parse() {
        let v = json!({"N": 4, "samples": [[0.0], [1.0], [0.0], [-1.0], [0.0]]});
        let s = sections_from_json(&v, &LinearMap::identity(1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(section_to_json(&s[0]), v);
        let wrong = json!({"N": 6, "samples": [[0.0], [1.0], [0.0], [-1.0], [0.0]]});
        assert!(sections_from_json(&wrong, &LinearMap::identity(1)).is_err());
    }
}
