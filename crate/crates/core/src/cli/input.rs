use num_complex::Complex64;
use serde_json::Value;

use crate::group::{FiniteAbelianGroup, GroupSignal};
use crate::{Error, Result};

/// Parses a signal file: `{"values": [...]}` with one entry per group
/// element in lexicographic order. An entry is `{"re": .., "im": ..}` (both
/// optional, default 0), a bare number, or a `[re, im]` pair.
pub fn parse_psi(text: &str, g: &FiniteAbelianGroup) -> Result<GroupSignal> {
    let bad = |msg: &str| Error::Parse(format!("psi file: {msg}"));
    let root: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let values = root
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected an object with a \"values\" array"))?;
    let number = |v: Option<&Value>| -> Result<f64> {
        match v {
            None | Some(Value::Null) => Ok(0.0),
            Some(v) => v
                .as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad("values must be finite numbers")),
        }
    };
    let parsed = values
        .iter()
        .map(|v| match v {
            Value::Number(_) => Ok(Complex64::new(number(Some(v))?, 0.0)),
            Value::Array(pair) if pair.len() == 2 => {
                Ok(Complex64::new(number(pair.first())?, number(pair.get(1))?))
            }
            Value::Object(obj) => Ok(Complex64::new(
                number(obj.get("re"))?,
                number(obj.get("im"))?,
            )),
            _ => Err(bad("each value is a number, [re, im], or {\"re\", \"im\"}")),
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.len() != g.order() {
        return Err(bad(&format!(
            "group {g} has {} elements but the file lists {}",
            g.order(),
            parsed.len()
        )));
    }
    GroupSignal::new(g, parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_all_entry_forms() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let psi = parse_psi(r#"{"values":[1, [0, 2], {"re": 3}, {"im": -1}]}"#, &g).unwrap();
        assert_eq!(
            psi.values(),
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(0.0, -1.0)
            ]
        );
    }

    #[test]
    fn rejects_bad_files() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        for text in ["[1,2]", r#"{"values":[1]}"#, r#"{"values":[1,"x"]}"#, "{"] {
            assert!(
                matches!(parse_psi(text, &g), Err(Error::Parse(_))),
                "{text}"
            );
        }
    }
}
