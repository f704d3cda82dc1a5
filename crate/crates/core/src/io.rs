//! Graphon JSON files.
//!
//! ```json
//! {"type": "step", "sigma": ["0", "0.3", "1"], "values": [["0", "1"], ["1", "0"]]}
//! {"type": "grid", "resolution": 2, "values": [[1, 0.5], [0.5, 0]]}
//! {"type": "family", "name": "constant", "params": {"p": "0.5"}}
//! {"type": "family", "name": "product"}
//! ```
//!
//! Numbers may be JSON numbers or strings holding decimals or fractions; both
//! are read exactly.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Family, GeneralGraphon, Partition, StepGraphon};
use crate::scalar::parse_rational;

fn number(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        // arbitrary_precision keeps the literal text of the number
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => Err(Error::Parse(format!("{what}: expected a number, got {v}"))),
    }
}

fn number_list(v: &Value, what: &str) -> Result<Vec<BigRational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))?
        .iter()
        .map(|x| number(x, what))
        .collect()
}

fn matrix(v: &Value, what: &str) -> Result<Vec<Vec<BigRational>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array of rows")))?
        .iter()
        .map(|row| number_list(row, what))
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn graphon_from_value(v: &Value) -> Result<GeneralGraphon> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("graphon must be a JSON object".into()))?;
    let kind = field(obj, "type")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"type\" must be a string".into()))?;
    match kind {
        "step" => {
            let partition = Partition::new(number_list(field(obj, "sigma")?, "sigma")?)?;
            let values = matrix(field(obj, "values")?, "values")?;
            Ok(GeneralGraphon::Step(StepGraphon::new(partition, values)?))
        }
        "grid" => {
            let values = matrix(field(obj, "values")?, "values")?;
            if let Some(res) = obj.get("resolution") {
                let res = res.as_u64().ok_or_else(|| {
                    Error::Parse("\"resolution\" must be a positive integer".into())
                })?;
                if res as usize != values.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "resolution {res} but {} rows",
                        values.len()
                    )));
                }
            }
            GeneralGraphon::grid(values)
        }
        "family" => {
            let name = field(obj, "name")?
                .as_str()
                .ok_or_else(|| Error::Parse("\"name\" must be a string".into()))?;
            let params = obj.get("params").and_then(Value::as_object);
            match name.trim() {
                "constant" | "constant p" => {
                    let p = params.and_then(|p| p.get("p")).ok_or_else(|| {
                        Error::InvalidParameter("constant family needs params.p".into())
                    })?;
                    GeneralGraphon::constant(number(p, "p")?)
                }
                "product" => Ok(GeneralGraphon::Family(Family::Product)),
                "mean" => Ok(GeneralGraphon::Family(Family::Mean)),
                other => Err(Error::UnknownFamily(other.to_owned())),
            }
        }
        "saturated" => Ok(graphon_from_value(field(obj, "of")?)?.saturate()),
        other => Err(Error::Parse(format!("unknown graphon type {other:?}"))),
    }
}

pub fn parse_graphon(text: &str) -> Result<GeneralGraphon> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    graphon_from_value(&v)
}

fn rational_matrix(values: &[Vec<BigRational>]) -> Value {
    values
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| Value::String(v.to_string()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// JSON form of a graphon; numbers are written as exact fraction strings.
pub fn graphon_to_value(g: &GeneralGraphon) -> Value {
    match g {
        GeneralGraphon::Step(s) => json!({
            "type": "step",
            "sigma": s.partition().breakpoints().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "values": rational_matrix(s.values()),
        }),
        GeneralGraphon::Grid(s) => json!({
            "type": "grid",
            "resolution": s.q(),
            "values": rational_matrix(s.values()),
        }),
        GeneralGraphon::Family(Family::Constant(p)) => json!({
            "type": "family", "name": "constant", "params": {"p": p.to_string()}
        }),
        GeneralGraphon::Family(f) => json!({"type": "family", "name": f.name()}),
        GeneralGraphon::Saturated(inner) => {
            json!({"type": "saturated", "of": graphon_to_value(inner)})
        }
    }
}

/// Stable 64-bit FNV-1a digest of the canonical JSON form, as hex.
pub fn graphon_id(g: &GeneralGraphon) -> String {
    let text = graphon_to_value(g).to_string();
    let hash = text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    });
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::example_three_block;

    #[test]
    fn reads_step_with_numbers_and_strings() {
        let g = parse_graphon(
            r#"{"type":"step","sigma":[0, 0.3, "0.6", 1],
                "values":[[1, 0.7, 0],[0.7, 0, "2/5"],[0, 0.4, 1]]}"#,
        )
        .unwrap();
        assert_eq!(g, GeneralGraphon::Step(example_three_block()));
    }

    #[test]
    fn round_trip() {
        for g in [
            GeneralGraphon::Step(example_three_block()),
            GeneralGraphon::grid(vec![vec![BigRational::new(1.into(), 3.into())]]).unwrap(),
            GeneralGraphon::Family(Family::Mean),
            GeneralGraphon::Family(Family::Product).saturate(),
            GeneralGraphon::constant(BigRational::new(1.into(), 2.into())).unwrap(),
        ] {
            let text = graphon_to_value(&g).to_string();
            assert_eq!(parse_graphon(&text).unwrap(), g);
        }
    }

    #[test]
    fn family_names() {
        assert!(
            parse_graphon(r#"{"type":"family","name":"constant p","params":{"p":0.5}}"#).is_ok()
        );
        assert_eq!(
            parse_graphon(r#"{"type":"family","name":"sine"}"#),
            Err(Error::UnknownFamily("sine".into()))
        );
        assert!(matches!(
            parse_graphon(r#"{"type":"family","name":"constant"}"#),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "{",
            "[]",
            r#"{"type":"blob"}"#,
            r#"{"type":"step","sigma":[0,1]}"#,
            r#"{"type":"grid","resolution":3,"values":[[1]]}"#,
            r#"{"type":"step","sigma":[0,1],"values":[[true]]}"#,
        ] {
            assert!(parse_graphon(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ids_are_stable_and_distinct() {
        let a = graphon_id(&GeneralGraphon::Step(example_three_block()));
        assert_eq!(a, graphon_id(&GeneralGraphon::Step(example_three_block())));
        assert_ne!(a, graphon_id(&GeneralGraphon::Family(Family::Mean)));
    }
}
