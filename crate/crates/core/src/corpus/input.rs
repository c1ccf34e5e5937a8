//! The JSON input format.
//!
//! ```json
//! {
//!   "name": "braid",
//!   "field": {"type": "rational"},
//!   "forms": [[1, 0, 0], [0, 1, 0], [1, "-1/2", 0]]
//! }
//! ```
//!
//! `field` is `{"type": "rational"}` (the default when absent) or
//! `{"type": "prime", "p": P}`. Coefficients are JSON integers or strings
//! holding an integer or a fraction `"p/q"`; over a prime field they are
//! reduced modulo `P`. Every error carries the line and column of the
//! offending value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use crate::combinatorics::Arrangement;
use crate::corpus::any::{dispatch, AnyArrangement};
use crate::error::{Error, Result};
use crate::kernel::field::{Field, FieldDescriptor, FieldKind, PrimeField, Rationals};

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub name: Option<String>,
    pub arrangement: AnyArrangement,
}

type Pos = (usize, usize);

/// Positions of the top-level keys and of the elements of the `forms` array.
#[derive(Debug, Default)]
struct Positions {
    keys: Vec<(String, Pos)>,
    forms: Vec<Pos>,
}

impl Positions {
    fn key(&self, name: &str) -> Pos {
        self.keys
            .iter()
            .find(|(k, _)| k == name)
            .map_or((1, 1), |(_, p)| *p)
    }

    fn form(&self, i: usize) -> Pos {
        self.forms
            .get(i)
            .copied()
            .unwrap_or_else(|| self.key("forms"))
    }
}

/// Walks syntactically valid JSON and records where things start.
fn scan_positions(text: &str) -> Positions {
    let mut out = Positions::default();
    let (mut line, mut col) = (1usize, 0usize);
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    let mut current = String::new();
    let mut string_start = (1, 1);
    let mut last_string: Option<(String, Pos)> = None;
    let mut expect_forms = false;
    let mut forms_depth = None;

    for ch in text.chars() {
        if ch == '\n' {
            line += 1;
            col = 0;
        } else {
            col += 1;
        }
        if in_string {
            if escaped {
                escaped = false;
                current.push(ch);
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
                last_string = Some((std::mem::take(&mut current), string_start));
            } else {
                current.push(ch);
            }
            continue;
        }
        match ch {
            '"' => {
                in_string = true;
                string_start = (line, col);
            }
            ':' => {
                if let Some((key, pos)) = last_string.take() {
                    if depth == 1 {
                        expect_forms = key == "forms";
                        out.keys.push((key, pos));
                    }
                }
            }
            '[' | '{' => {
                if ch == '[' && expect_forms && depth == 1 {
                    forms_depth = Some(depth + 1);
                } else if forms_depth == Some(depth) {
                    out.forms.push((line, col));
                }
                expect_forms = false;
                depth += 1;
            }
            ']' | '}' => {
                depth = depth.saturating_sub(1);
                if forms_depth == Some(depth + 1) && depth == 1 {
                    forms_depth = None;
                }
            }
            c if c.is_whitespace() || c == ',' => {
                last_string = None;
            }
            _ => {
                if forms_depth == Some(depth) {
                    out.forms.push((line, col));
                }
                expect_forms = false;
            }
        }
    }
    out
}

fn error_at(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

fn parse_field(value: Option<&Value>, pos: Pos) -> Result<FieldDescriptor> {
    let Some(value) = value else {
        return Ok(FieldDescriptor::RATIONALS);
    };
    let obj = value
        .as_object()
        .ok_or_else(|| error_at(pos, "\"field\" must be an object"))?;
    match obj.get("type").and_then(Value::as_str) {
        Some("rational") => Ok(FieldDescriptor::RATIONALS),
        Some("prime") => {
            let p = obj
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| error_at(pos, "prime field needs a positive integer \"p\""))?;
            FieldDescriptor::prime(p).map_err(|e| error_at(pos, e.to_string()))
        }
        Some(other) => Err(error_at(
            pos,
            format!("unknown field type {other:?}; expected \"rational\" or \"prime\""),
        )),
        None => Err(error_at(pos, "\"field\" needs a \"type\"")),
    }
}

fn parse_coefficient(value: &Value, pos: Pos) -> Result<BigRational> {
    let bad = || {
        error_at(
            pos,
            format!("coefficient {value} is not an integer or a \"p/q\" string"),
        )
    };
    match value {
        Value::Number(n) => {
            let int = if let Some(i) = n.as_i64() {
                BigInt::from(i)
            } else if let Some(u) = n.as_u64() {
                BigInt::from(u)
            } else {
                return Err(bad());
            };
            Ok(BigRational::from_integer(int))
        }
        Value::String(s) => {
            let s = s.trim();
            if let Some((num, den)) = s.split_once('/') {
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(error_at(
                        pos,
                        format!("coefficient {s:?} has a zero denominator"),
                    ));
                }
                Ok(BigRational::new(num, den))
            } else {
                Ok(BigRational::from_integer(
                    BigInt::from_str(s).map_err(|_| bad())?,
                ))
            }
        }
        _ => Err(bad()),
    }
}

fn build<F: Field>(
    field: F,
    raw: &[[BigRational; 3]],
    positions: &Positions,
) -> Result<Arrangement<F>>
where
    AnyArrangement: From<Arrangement<F>>,
{
    let mut forms = Vec::with_capacity(raw.len());
    for (i, triple) in raw.iter().enumerate() {
        let pos = positions.form(i);
        let mut reduced = Vec::with_capacity(3);
        for c in triple {
            reduced.push(
                field
                    .from_fraction(c.numer(), c.denom())
                    .map_err(|e| error_at(pos, e.to_string()))?,
            );
        }
        if reduced.iter().all(|c| field.is_zero(c)) {
            let message = if triple.iter().all(|c| c.is_zero()) {
                "linear form is zero".to_string()
            } else {
                format!("linear form vanishes in {}", field.descriptor())
            };
            return Err(error_at(pos, message));
        }
        forms.push([reduced[0].clone(), reduced[1].clone(), reduced[2].clone()]);
    }
    Arrangement::new(field, forms).map_err(|e| match e {
        Error::DuplicateHyperplane { first, second, .. } => Error::DuplicateHyperplane {
            first,
            second,
            lines: Some((positions.form(first).0, positions.form(second).0)),
        },
        other => other,
    })
}

/// Parses an input document.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let positions = scan_positions(text);
    let obj = value
        .as_object()
        .ok_or_else(|| error_at((1, 1), "top level must be an object"))?;
    for (key, _) in obj {
        if !matches!(key.as_str(), "name" | "field" | "forms") {
            return Err(error_at(positions.key(key), format!("unknown key {key:?}")));
        }
    }
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(error_at(positions.key("name"), "\"name\" must be a string")),
    };
    let field = parse_field(obj.get("field"), positions.key("field"))?;
    let forms_pos = positions.key("forms");
    let forms = obj
        .get("forms")
        .ok_or_else(|| error_at((1, 1), "missing \"forms\""))?
        .as_array()
        .ok_or_else(|| error_at(forms_pos, "\"forms\" must be an array"))?;
    if forms.is_empty() {
        return Err(error_at(forms_pos, Error::EmptyArrangement.to_string()));
    }
    let mut raw = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let pos = positions.form(i);
        let triple = f
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| error_at(pos, "each form must be an array of three coefficients"))?;
        raw.push([
            parse_coefficient(&triple[0], pos)?,
            parse_coefficient(&triple[1], pos)?,
            parse_coefficient(&triple[2], pos)?,
        ]);
    }
    let arrangement = match field.kind {
        FieldKind::Rationals => build(Rationals, &raw, &positions)?.into(),
        FieldKind::PrimeField => {
            build(PrimeField::new(field.characteristic)?, &raw, &positions)?.into()
        }
    };
    Ok(InputDocument { name, arrangement })
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum FieldOut {
    Rational,
    Prime { p: u64 },
}

#[derive(Serialize)]
struct DocumentOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    field: FieldOut,
    forms: Vec<[Value; 3]>,
}

fn coefficient_value(text: String) -> Value {
    match text.parse::<i64>() {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(text),
    }
}

/// Renders an arrangement in the input format, one form per line.
pub fn render_input(name: Option<&str>, a: &AnyArrangement) -> String {
    let d = a.descriptor();
    let field = match d.kind {
        FieldKind::Rationals => FieldOut::Rational,
        FieldKind::PrimeField => FieldOut::Prime {
            p: d.characteristic,
        },
    };
    let forms: Vec<[Value; 3]> = dispatch!(a, arr => arr
        .forms()
        .iter()
        .map(|f| std::array::from_fn(|k| coefficient_value(arr.field().render(&f[k]))))
        .collect());
    let doc = DocumentOut {
        name: name.map(str::to_string),
        field,
        forms: Vec::new(),
    };
    let mut head = serde_json::to_value(&doc).expect("serializable");
    head.as_object_mut().expect("object").remove("forms");
    let mut out = String::from("{\n");
    for (k, v) in head.as_object().expect("object") {
        out.push_str(&format!("  {}: {},\n", Value::from(k.as_str()), v));
    }
    out.push_str("  \"forms\": [\n");
    let lines: Vec<String> = forms
        .iter()
        .map(|f| format!("    {}", Value::from(f.to_vec())))
        .collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(text: &str) -> Arrangement<Rationals> {
        match parse_input(text).unwrap().arrangement {
            AnyArrangement::Rational(a) => a,
            other => panic!("expected a rational arrangement, got {other}"),
        }
    }

    #[test]
    fn parses_integers_and_fractions() {
        let a = rational(r#"{"forms": [[1, 0, 0], [0, "2", 0], [1, "-1/2", "3/3"]]}"#);
        assert_eq!(a.len(), 3);
        assert_eq!(
            a,
            Arrangement::from_i64(Rationals, &[[1, 0, 0], [0, 1, 0], [2, -1, 2]]).unwrap()
        );
    }

    #[test]
    fn fractions_reduce_into_prime_fields() {
        let doc = parse_input(r#"{"field": {"type": "prime", "p": 5}, "forms": [["1/3", 1, 0]]}"#)
            .unwrap();
        let AnyArrangement::Prime(a) = doc.arrangement else {
            panic!("expected a prime field");
        };
        // 1/3 = 2 in F_5, normalized by its leading entry: (1, 3, 0)
        assert_eq!(a.forms()[0], [1, 3, 0]);
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let err = parse_input("{\n  \"forms\": [[1, 0, 0],\n  [0, 1 0]]\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn duplicates_report_their_lines() {
        let text = "{\n \"forms\": [\n  [1, 0, 0],\n  [0, 1, 0],\n  [2, 0, 0]\n ]\n}";
        let err = parse_input(text).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateHyperplane {
                first: 0,
                second: 2,
                lines: Some((3, 5))
            }
        );
        assert!(err.to_string().contains("lines 3 and 5"));
    }

    #[test]
    fn semantic_errors_point_at_the_form() {
        let text = "{\"forms\": [\n[1, 0, 0],\n[0, 0, \"0/4\"]]}";
        let err = parse_input(text).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 1,
                    ..
                }
            ),
            "{err}"
        );

        let text = "{\"field\": {\"type\": \"prime\", \"p\": 3},\n\"forms\": [[3, 6, 9]]}";
        let err = parse_input(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("vanishes"));

        let err = parse_input(r#"{"forms": [[1, 0.5, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("not an integer"));

        let err = parse_input(r#"{"forms": [["1/0", 0, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("zero denominator"));
    }

    #[test]
    fn structural_errors() {
        assert!(parse_input("[]").is_err());
        assert!(parse_input(r#"{"forms": []}"#).is_err());
        assert!(parse_input(r#"{"forms": [[1, 0]]}"#).is_err());
        assert!(parse_input(r#"{"forms": [[1, 0, 0]], "extra": 1}"#).is_err());
        let err = parse_input(r#"{"field": {"type": "prime", "p": 1007}, "forms": [[1,0,0]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("1007"));
    }

    #[test]
    fn keys_inside_nested_objects_are_not_top_level() {
        let p = scan_positions("{\"field\": {\"forms\": 1},\n\"forms\": [[1,2,3], [4,5,6]]}");
        assert_eq!(p.forms, vec![(2, 11), (2, 20)]);
    }

    #[test]
    fn render_round_trips() {
        let a = rational(r#"{"forms": [[3, 1, 0], [0, 2, 7], [1, 1, 1]]}"#);
        let any = AnyArrangement::Rational(a);
        let text = render_input(Some("t"), &any);
        let back = parse_input(&text).unwrap();
        assert_eq!(back.name.as_deref(), Some("t"));
        assert_eq!(back.arrangement, any);
        assert!(text.contains("\"1/3\""));

        let p =
            AnyArrangement::from_i64(FieldDescriptor::prime(7).unwrap(), &[[1, 2, 3], [0, 1, 5]])
                .unwrap();
        assert_eq!(parse_input(&render_input(None, &p)).unwrap().arrangement, p);
    }
}
