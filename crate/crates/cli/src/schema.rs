//! JSON documents for curve systems and train-track charts.
//!
//! Parsing walks a `serde_json::Value` by hand so every diagnostic carries a
//! path into the document.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use twist_cert_core::system::BuildError;
use twist_cert_core::traintrack::{Chart, ChartGenerator, IntMatrix};
use twist_cert_core::{CurveFamily, CurveSystem, SystemBuilder};

use crate::output::IntOut;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for Diagnostic {}

fn syntax(text: &str) -> Result<Value, Diagnostic> {
    serde_json::from_str(text).map_err(|e| Diagnostic::new("", format!("malformed JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>, Diagnostic> {
    v.as_object()
        .ok_or_else(|| Diagnostic::new(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, Diagnostic> {
    v.as_array()
        .ok_or_else(|| Diagnostic::new(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, Diagnostic> {
    v.as_str()
        .ok_or_else(|| Diagnostic::new(path, "expected a string"))
}

/// Integer given as a JSON number or a decimal string. Floats are rejected.
fn integer(v: &Value, path: &str) -> Result<BigInt, Diagnostic> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(Diagnostic::new(path, "expected an integer, found a float"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Diagnostic::new(path, format!("`{s}` is not an integer"))),
        _ => Err(Diagnostic::new(path, "expected an integer")),
    }
}

fn nonneg_u64(v: &Value, path: &str, what: &str) -> Result<u64, Diagnostic> {
    let i = integer(v, path)?;
    if i < BigInt::from(0) {
        return Err(Diagnostic::new(path, format!("{what} must be nonnegative")));
    }
    u64::try_from(&i).map_err(|_| Diagnostic::new(path, format!("{what} exceeds 64 bits")))
}

fn pair_key<'a>(key: &'a str, path: &str) -> Result<(&'a str, &'a str), Diagnostic> {
    key.split_once('|')
        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('|'))
        .ok_or_else(|| Diagnostic::new(path, "key must have the form \"curveA|curveB\""))
}

fn known_keys(
    obj: &serde_json::Map<String, Value>,
    allowed: &[&str],
    path: &str,
) -> Result<(), Diagnostic> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Diagnostic::new(
            join(path, k),
            format!("unknown field; expected one of {}", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Parses and validates a curve-system document.
pub fn parse_system(text: &str) -> Result<CurveSystem, Diagnostic> {
    let root = syntax(text)?;
    let obj = object(&root, "")?;
    known_keys(obj, &["families", "geom", "alg_abs"], "")?;
    let fams = array(
        obj.get("families")
            .ok_or_else(|| Diagnostic::new("families", "missing field"))?,
        "families",
    )?;
    if fams.is_empty() {
        return Err(Diagnostic::new(
            "families",
            "at least one family is required",
        ));
    }
    let mut builder = SystemBuilder::new();
    for (fi, f) in fams.iter().enumerate() {
        let fp = format!("families[{fi}]");
        let fo = object(f, &fp)?;
        known_keys(fo, &["name", "curves", "powers"], &fp)?;
        let name = string(
            fo.get("name")
                .ok_or_else(|| Diagnostic::new(join(&fp, "name"), "missing field"))?,
            &join(&fp, "name"),
        )?;
        let cp = join(&fp, "curves");
        let curves = array(
            fo.get("curves")
                .ok_or_else(|| Diagnostic::new(&cp, "missing field"))?,
            &cp,
        )?;
        let curves: Vec<&str> = curves
            .iter()
            .enumerate()
            .map(|(i, c)| string(c, &format!("{cp}[{i}]")))
            .collect::<Result<_, _>>()?;
        let pp = join(&fp, "powers");
        let powers: Vec<u64> = match fo.get("powers") {
            None => vec![1; curves.len()],
            Some(p) => array(p, &pp)?
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let p = format!("{pp}[{i}]");
                    let x = nonneg_u64(v, &p, "power")?;
                    if x == 0 {
                        return Err(Diagnostic::new(p, "power must be >= 1"));
                    }
                    Ok(x)
                })
                .collect::<Result<_, _>>()?,
        };
        if powers.len() != curves.len() {
            return Err(Diagnostic::new(
                pp,
                format!("{} powers for {} curves", powers.len(), curves.len()),
            ));
        }
        builder.push_family(CurveFamily {
            name: name.to_string(),
            curves: curves.iter().map(|c| c.to_string()).collect(),
            powers,
        });
    }
    let mut pairs = |field: &str, what: &str, alg: bool| -> Result<(), Diagnostic> {
        let Some(v) = obj.get(field) else {
            return Ok(());
        };
        let o = object(v, field)?;
        for (k, val) in o {
            let p = format!("{field}[\"{k}\"]");
            let (a, b) = pair_key(k, &p)?;
            let x = nonneg_u64(val, &p, what)?;
            if alg {
                builder.set_alg(a, b, x);
            } else {
                builder.set_geom(a, b, x);
            }
        }
        Ok(())
    };
    pairs("geom", "geom", false)?;
    pairs("alg_abs", "alg_abs", true)?;
    let has_alg = obj.contains_key("alg_abs");
    if has_alg {
        builder = builder.with_alg();
    }
    builder.build().map_err(|e| match e {
        BuildError::UnknownCurve(c) => Diagnostic::new("geom", format!("unknown curve `{c}`")),
        BuildError::ConflictingPair(a, b) => Diagnostic::new(
            "geom",
            format!("pair {a}|{b} given twice with different values"),
        ),
        BuildError::Invalid(v) => {
            Diagnostic::new("", v.first().map(|x| x.to_string()).unwrap_or_default())
        }
    })
}

#[derive(Serialize)]
struct FamilyDoc<'a> {
    name: &'a str,
    curves: &'a [String],
    powers: &'a [u64],
}

#[derive(Serialize)]
struct SystemDoc<'a> {
    families: Vec<FamilyDoc<'a>>,
    geom: BTreeMap<String, IntOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alg_abs: Option<BTreeMap<String, IntOut>>,
}

/// Writes a system in the document format; only nonzero pairs are listed.
pub fn emit_system(sys: &CurveSystem) -> String {
    let pairs = |m: &[Vec<u64>]| {
        let mut out = BTreeMap::new();
        for i in 0..sys.num_curves() {
            for j in (i + 1)..sys.num_curves() {
                if m[i][j] != 0 {
                    out.insert(
                        format!("{}|{}", sys.curve_name(i), sys.curve_name(j)),
                        IntOut::from(m[i][j]),
                    );
                }
            }
        }
        out
    };
    let doc = SystemDoc {
        families: sys
            .families()
            .iter()
            .map(|f| FamilyDoc {
                name: &f.name,
                curves: &f.curves,
                powers: &f.powers,
            })
            .collect(),
        geom: pairs(sys.geom_matrix()),
        alg_abs: sys.alg_matrix().map(pairs),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Parses a chart document:
/// `{ "branch_count": n, "matrices": { name: [[..]..] }, "full_carrying": [names], "provenance": str }`.
/// Generators are indexed in the order of the `matrices` keys.
pub fn parse_chart(text: &str) -> Result<Chart, Diagnostic> {
    let root = syntax(text)?;
    let obj = object(&root, "")?;
    known_keys(
        obj,
        &["branch_count", "matrices", "full_carrying", "provenance"],
        "",
    )?;
    let bc = nonneg_u64(
        obj.get("branch_count")
            .ok_or_else(|| Diagnostic::new("branch_count", "missing field"))?,
        "branch_count",
        "branch_count",
    )?;
    if bc == 0 || bc > 10 {
        return Err(Diagnostic::new(
            "branch_count",
            "branch_count must be in 1..=10",
        ));
    }
    let full: Vec<&str> = match obj.get("full_carrying") {
        None => Vec::new(),
        Some(v) => array(v, "full_carrying")?
            .iter()
            .enumerate()
            .map(|(i, x)| string(x, &format!("full_carrying[{i}]")))
            .collect::<Result<_, _>>()?,
    };
    let mats = object(
        obj.get("matrices")
            .ok_or_else(|| Diagnostic::new("matrices", "missing field"))?,
        "matrices",
    )?;
    let mut gens = Vec::new();
    for (name, m) in mats {
        let mp = format!("matrices[\"{name}\"]");
        let rows = array(m, &mp)?;
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let rp = format!("{mp}[{i}]");
                array(r, &rp)?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let p = format!("{rp}[{j}]");
                        let x = integer(v, &p)?;
                        if x < BigInt::from(0) {
                            return Err(Diagnostic::new(p, "matrix entries must be nonnegative"));
                        }
                        Ok(x)
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let matrix =
            IntMatrix::from_big_rows(rows).map_err(|e| Diagnostic::new(&mp, e.to_string()))?;
        gens.push(ChartGenerator {
            name: name.clone(),
            matrix,
            full_carrying: full.contains(&name.as_str()),
        });
    }
    if let Some(bad) = full.iter().find(|n| !mats.contains_key(**n)) {
        return Err(Diagnostic::new(
            "full_carrying",
            format!("unknown generator `{bad}`"),
        ));
    }
    let provenance = match obj.get("provenance") {
        None => "",
        Some(v) => string(v, "provenance")?,
    };
    Chart::new(bc as usize, gens, provenance)
        .map_err(|e| Diagnostic::new("matrices", e.to_string()))
}

#[derive(Serialize)]
struct ChartDoc<'a> {
    branch_count: usize,
    matrices: BTreeMap<&'a str, Vec<Vec<IntOut>>>,
    full_carrying: Vec<&'a str>,
    provenance: &'a str,
}

pub fn emit_chart(chart: &Chart) -> String {
    let doc = ChartDoc {
        branch_count: chart.branch_count(),
        matrices: chart
            .generators()
            .iter()
            .map(|g| (g.name.as_str(), crate::output::matrix_rows(&g.matrix)))
            .collect(),
        full_carrying: chart
            .generators()
            .iter()
            .filter(|g| g.full_carrying)
            .map(|g| g.name.as_str())
            .collect(),
        provenance: chart.provenance(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_carry_paths() {
        let e = parse_system(
            r#"{"families":[{"name":"A","curves":["a"],"powers":[1]},
                {"name":"B","curves":["b"],"powers":[1]}],"geom":{"a|b":-2}}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "geom[\"a|b\"]");
        assert_eq!(e.message, "geom must be nonnegative");
        let e = parse_system(r#"{"families":[{"name":"A","curves":["a"],"powers":[1.5]}]}"#)
            .unwrap_err();
        assert_eq!(e.path, "families[0].powers[0]");
        let e = parse_system(r#"{"families":[], "gem": {}}"#).unwrap_err();
        assert_eq!(e.path, "gem");
        assert!(parse_system("{").is_err());
    }

    #[test]
    fn big_integers_as_strings() {
        let sys = parse_system(
            r#"{"families":[{"name":"A","curves":["a"],"powers":["1"]},
                {"name":"B","curves":["b"]}],"geom":{"a|b":"18014398509481984"}}"#,
        )
        .unwrap();
        assert_eq!(sys.geom(0, 1), 1 << 54);
        let text = emit_system(&sys);
        assert!(text.contains("\"18014398509481984\""));
        assert_eq!(parse_system(&text).unwrap(), sys);
    }
}
