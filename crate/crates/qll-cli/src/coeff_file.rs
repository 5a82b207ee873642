//! Maass-form coefficient files:
//!   {"r": float, "atkin_lehner": 1|-1, "coefficients": [[n, value], ...]}
//! where value is a float or an exact rational string like "3/2". Canonical
//! save output round-trips byte-identically.

use qll_core::exact::parse_rational;
use qll_core::lift::{FileBackedSource, FileValue};

#[derive(Clone, Debug)]
pub struct CoefficientFile {
    pub r: f64,
    pub atkin_lehner: i8,
    /// Sorted by index, indices distinct.
    pub coefficients: Vec<(i64, FileValue)>,
}

#[derive(Debug)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn err(field: &str, message: impl Into<String>) -> FieldError {
    FieldError {
        field: field.to_string(),
        message: message.into(),
    }
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| err("file", format!("invalid JSON: {e}")))?;
        let r = v
            .get("r")
            .ok_or_else(|| err("r", "missing spectral parameter"))?
            .as_f64()
            .ok_or_else(|| err("r", "must be a number"))?;
        let al = v
            .get("atkin_lehner")
            .ok_or_else(|| err("atkin_lehner", "missing"))?
            .as_i64()
            .ok_or_else(|| err("atkin_lehner", "must be 1 or -1"))?;
        if al != 1 && al != -1 {
            return Err(err("atkin_lehner", format!("must be 1 or -1, got {al}")));
        }
        let list = v
            .get("coefficients")
            .ok_or_else(|| err("coefficients", "missing"))?
            .as_array()
            .ok_or_else(|| err("coefficients", "must be a list of [n, value] pairs"))?;
        let mut coefficients = Vec::with_capacity(list.len());
        let mut seen = std::collections::BTreeSet::new();
        for (i, pair) in list.iter().enumerate() {
            let arr = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| err("coefficients", format!("entry {i} is not [n, value]")))?;
            let n = arr[0]
                .as_i64()
                .ok_or_else(|| err("coefficients", format!("entry {i}: bad index")))?;
            if n == 0 {
                return Err(err("coefficients", "index 0 is not allowed"));
            }
            if !seen.insert(n) {
                return Err(err("coefficients", format!("duplicate index {n}")));
            }
            let value = match &arr[1] {
                serde_json::Value::String(s) => FileValue::Exact(
                    parse_rational(s)
                        .map_err(|e| err("coefficients", format!("entry {i}: {e}")))?,
                ),
                other => FileValue::Float(
                    other
                        .as_f64()
                        .ok_or_else(|| err("coefficients", format!("entry {i}: bad value")))?,
                ),
            };
            coefficients.push((n, value));
        }
        coefficients.sort_by_key(|(n, _)| *n);
        Ok(CoefficientFile {
            r,
            atkin_lehner: al as i8,
            coefficients,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, FieldError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| err("file", format!("cannot read: {e}")))?;
        CoefficientFile::parse(&text)
    }

    /// Canonical serialization: sorted indices, exact values as strings.
    pub fn canonical_json(&self) -> String {
        let coeffs: Vec<serde_json::Value> = self
            .coefficients
            .iter()
            .map(|(n, v)| match v {
                FileValue::Exact(q) => serde_json::json!([n, format!("{q}")]),
                FileValue::Float(x) => serde_json::json!([n, x]),
            })
            .collect();
        let doc = serde_json::json!({
            "r": self.r,
            "atkin_lehner": self.atkin_lehner,
            "coefficients": coeffs,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    pub fn save(&self, path: &std::path::Path) -> std::io::Result<()> {
        std::fs::write(path, self.canonical_json())
    }

    pub fn to_source(&self) -> FileBackedSource {
        FileBackedSource {
            r: self.r,
            epsilon: self.atkin_lehner,
            values: self.coefficients.iter().cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_round_trips() {
        let text = r#"{"r": 1.5, "atkin_lehner": -1, "coefficients": [[-1, 0.5], [-2, "3/2"]]}"#;
        let f = CoefficientFile::parse(text).unwrap();
        assert_eq!(f.r, 1.5);
        assert_eq!(f.atkin_lehner, -1);
        let canon = f.canonical_json();
        let f2 = CoefficientFile::parse(&canon).unwrap();
        assert_eq!(canon, f2.canonical_json(), "canonical form is a fixed point");
    }

    #[test]
    fn rational_strings_stay_exact() {
        let text = r#"{"r": 1.0, "atkin_lehner": 1, "coefficients": [[-3, "1/3"]]}"#;
        let f = CoefficientFile::parse(text).unwrap();
        match &f.coefficients[0].1 {
            FileValue::Exact(q) => assert_eq!(format!("{q}"), "1/3"),
            _ => panic!("expected exact rational"),
        }
    }

    #[test]
    fn field_errors_name_the_field() {
        let missing_r = r#"{"atkin_lehner": 1, "coefficients": []}"#;
        assert_eq!(CoefficientFile::parse(missing_r).unwrap_err().field, "r");
        let bad_al = r#"{"r": 1.0, "atkin_lehner": 2, "coefficients": []}"#;
        assert_eq!(
            CoefficientFile::parse(bad_al).unwrap_err().field,
            "atkin_lehner"
        );
        let dup = r#"{"r": 1.0, "atkin_lehner": 1, "coefficients": [[-1, 1.0], [-1, 2.0]]}"#;
        let e = CoefficientFile::parse(dup).unwrap_err();
        assert_eq!(e.field, "coefficients");
        assert!(e.message.contains("duplicate"));
    }
}
