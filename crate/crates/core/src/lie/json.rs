//! JSON input and output for algebras and pairs.
//!
//! Algebra: `{"name", "dimension", "basis", "brackets": [[i, j, [[k, "p/q"], ...]], ...],
//! "theta"?, "rank"?, "invariant_form"?}` where column `j` of `theta` is `θ(X_j)`.
//! Pair: `{"name"?, "g": <algebra object or path>, "h_basis": [[...], ...]}`.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::catalog::Pair;
use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, Matrix, Scalar, SparseVec};

fn field<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(loc, format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(loc, "expected an object"))
}

fn as_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(loc, "expected an array"))
}

fn as_index(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::schema(loc, "expected a non-negative integer"))
}

/// A rational given as `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(v: &Value, loc: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s)
            .ok_or_else(|| Error::schema(loc, format!("malformed rational \"{s}\""))),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::schema(loc, "expected a rational string \"p/q\"")),
    }
}

fn parse_vector(v: &Value, len: usize, loc: &str) -> Result<Vec<Scalar>> {
    let arr = as_array(v, loc)?;
    if arr.len() != len {
        return Err(Error::schema(
            loc,
            format!("expected {len} entries, got {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_rational(x, &format!("{loc}[{i}]")))
        .collect()
}

fn parse_matrix(v: &Value, n: usize, loc: &str) -> Result<Matrix> {
    let rows = as_array(v, loc)?;
    if rows.len() != n {
        return Err(Error::schema(loc, format!("expected {n} rows, got {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, n, &format!("{loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| Error::schema(loc, e.to_string()))
}

pub fn parse_algebra(v: &Value, loc: &str) -> Result<LieAlgebra> {
    let obj = as_object(v, loc)?;
    let at = |k: &str| format!("{loc}.{k}");
    let name = field(obj, "name", loc)?
        .as_str()
        .ok_or_else(|| Error::schema(at("name"), "expected a string"))?
        .to_string();
    let dim = as_index(field(obj, "dimension", loc)?, &at("dimension"))?;
    let basis = as_array(field(obj, "basis", loc)?, &at("basis"))?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            b.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::schema(format!("{loc}.basis[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>>>()?;
    if basis.len() != dim {
        return Err(Error::schema(
            at("basis"),
            format!("dimension is {dim} but {} basis names given", basis.len()),
        ));
    }
    let mut triples = Vec::new();
    for (t, entry) in as_array(field(obj, "brackets", loc)?, &at("brackets"))?
        .iter()
        .enumerate()
    {
        let eloc = format!("{loc}.brackets[{t}]");
        let parts = as_array(entry, &eloc)?;
        if parts.len() != 3 {
            return Err(Error::schema(&eloc, "expected [i, j, [[k, \"c\"], ...]]"));
        }
        let i = as_index(&parts[0], &format!("{eloc}[0]"))?;
        let j = as_index(&parts[1], &format!("{eloc}[1]"))?;
        for (x, pos) in [(i, 0), (j, 1)] {
            if x >= dim {
                return Err(Error::schema(format!("{eloc}[{pos}]"), "index out of range"));
            }
        }
        let mut pairs = Vec::new();
        for (s, term) in as_array(&parts[2], &format!("{eloc}[2]"))?.iter().enumerate() {
            let tloc = format!("{eloc}[2][{s}]");
            let kc = as_array(term, &tloc)?;
            if kc.len() != 2 {
                return Err(Error::schema(&tloc, "expected [k, \"c\"]"));
            }
            let k = as_index(&kc[0], &format!("{tloc}[0]"))?;
            let c = parse_rational(&kc[1], &format!("{tloc}[1]"))?;
            if k >= dim {
                return Err(Error::schema(format!("{tloc}[0]"), "index out of range"));
            }
            pairs.push((k, c));
        }
        triples.push((i, j, SparseVec::from_pairs(pairs)));
    }
    // Parse optional fields before validating the structure so schema errors win.
    let theta = obj
        .get("theta")
        .map(|t| parse_matrix(t, dim, &at("theta")))
        .transpose()?;
    let form = obj
        .get("invariant_form")
        .map(|t| parse_matrix(t, dim, &at("invariant_form")))
        .transpose()?;
    let rank = obj
        .get("rank")
        .map(|r| as_index(r, &at("rank")))
        .transpose()?;
    let mut g = LieAlgebra::from_brackets(name, basis, &triples)?;
    if let Some(r) = rank {
        g = g.with_rank(r);
    }
    if let Some(f) = form {
        g = g.with_form(f)?;
    }
    if let Some(t) = theta {
        g = g.with_theta(t)?;
    }
    Ok(g)
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| Value::String(format_scalar(x)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(x))).collect())
}

pub fn algebra_to_json(g: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = g
        .bracket_triples()
        .into_iter()
        .map(|(i, j, v)| {
            let terms: Vec<Value> = v
                .entries()
                .iter()
                .map(|(k, c)| json!([k, format_scalar(c)]))
                .collect();
            json!([i, j, terms])
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("name".into(), json!(g.name()));
    obj.insert("dimension".into(), json!(g.dim()));
    obj.insert("basis".into(), json!(g.basis_names()));
    obj.insert("brackets".into(), Value::Array(brackets));
    if let Some(t) = g.theta() {
        obj.insert("theta".into(), matrix_json(t));
    }
    if let Some(r) = g.declared_rank() {
        obj.insert("rank".into(), json!(r));
    }
    if let Some(f) = g.explicit_form() {
        obj.insert("invariant_form".into(), matrix_json(f));
    }
    Value::Object(obj)
}

/// Parses a pair; a string-valued `"g"` is a path resolved against `base_dir`.
pub fn parse_pair(v: &Value, base_dir: Option<&Path>, default_name: &str) -> Result<Pair> {
    let obj = as_object(v, "$")?;
    let gv = field(obj, "g", "$")?;
    let g = match gv {
        Value::String(path) => {
            let p = base_dir.map_or_else(|| PathBuf::from(path), |d| d.join(path));
            let doc = read_json(&p)?;
            parse_algebra(&doc, &format!("{}:$", p.display()))?
        }
        other => parse_algebra(other, "$.g")?,
    };
    let rows = as_array(field(obj, "h_basis", "$")?, "$.h_basis")?;
    let h = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, g.dim(), &format!("$.h_basis[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::schema("$.name", "expected a string")),
        None => default_name.to_string(),
    };
    Pair::new(name, "custom", g, &h)
}

pub fn pair_to_json(p: &Pair) -> Value {
    let n = p.g.dim();
    json!({
        "name": p.name,
        "g": algebra_to_json(&p.g),
        "h_basis": p.h.basis_dense(n).iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| {
        Error::schema(
            format!("{}:{}:{}", path.display(), e.line(), e.column()),
            e.to_string(),
        )
    })
}

/// A parsed input file: a bare algebra or a pair.
#[derive(Clone, Debug)]
pub enum Input {
    Algebra(LieAlgebra),
    Pair(Box<Pair>),
}

pub fn load(path: &Path) -> Result<Input> {
    let doc = read_json(path)?;
    let stem = path
        .file_stem()
        .map_or_else(|| "pair".to_string(), |s| s.to_string_lossy().into_owned());
    if doc.get("h_basis").is_some() {
        Ok(Input::Pair(Box::new(parse_pair(&doc, path.parent(), &stem)?)))
    } else {
        Ok(Input::Algebra(parse_algebra(&doc, "$")?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    #[test]
    fn round_trip_catalog_algebras() {
        for name in catalog::algebra_names() {
            let g = catalog::algebra(name).unwrap();
            let back = parse_algebra(&algebra_to_json(&g), "$").unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn malformed_rational_names_field() {
        let doc = json!({
            "name": "bad", "dimension": 2, "basis": ["a", "b"],
            "brackets": [[0, 1, [[1, "1/0"]]]]
        });
        match parse_algebra(&doc, "$") {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "$.brackets[0][2][0][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn jacobi_failure_is_validation() {
        let doc = json!({
            "name": "bad", "dimension": 3, "basis": ["h", "e", "f"],
            "brackets": [[0, 1, [[1, "3"]]], [0, 2, [[2, "-2"]]], [1, 2, [[0, "1"]]]]
        });
        let err = parse_algebra(&doc, "$").unwrap_err();
        assert!(matches!(err, Error::Jacobi(0, 1, 2)));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn pair_round_trip() {
        for p in catalog::pairs().unwrap() {
            let back = parse_pair(&pair_to_json(&p), None, "x").unwrap();
            assert_eq!(back.name, p.name);
            assert_eq!(back.h.basis(), p.h.basis());
            assert_eq!(back.g, p.g);
        }
    }
}
