//! Report documents and named observations.
//!
//! An observation is a `key -> value` string pair such as `chi0 -> "t^2 - 6t + 10"`
//! or `rho[z] -> "2"`. Per-plane keys carry the displayed form of the plane in
//! brackets. Expectations use the same keys, with `[*]` standing for every
//! plane.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::AnyArrangement;
use crate::error::Error;
use crate::restriction::{Analysis, Status};

fn tuple(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn set(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    parts.join(",")
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "n/a",
    }
}

/// Every named quantity of an analysis.
pub fn observations(a: &AnyArrangement, analysis: &Analysis) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut put = |k: String, v: String| {
        out.insert(k, v);
    };
    put("planes".into(), a.len().to_string());
    put("rank".into(), a.rank().to_string());
    put("field".into(), a.descriptor().to_string());
    put("chi".into(), analysis.charpoly.format_chi());
    put("chi0".into(), analysis.charpoly.format_chi0());
    let exps = analysis.freeness.exponents();
    put(
        "free".into(),
        if exps.is_some() { "yes" } else { "no" }.into(),
    );
    put(
        "exponents".into(),
        exps.map_or_else(|| "none".into(), |e| tuple(&e)),
    );
    if let Some(p) = &analysis.presentation {
        put("generators".into(), set(&p.generator_degrees));
        put("relations".into(), set(&p.relation_degrees));
        if let [r] = p.relation_degrees[..] {
            put("level".into(), (r as i64 - 1).to_string());
        }
    }
    let failed = analysis.verdicts.failed();
    put(
        "verdicts".into(),
        if failed.is_empty() {
            "pass".into()
        } else {
            failed.join(",")
        },
    );
    for (name, v) in analysis.verdicts.entries() {
        put(format!("verdict.{name}"), status_name(v.status).into());
    }
    for p in &analysis.planes {
        let key = |q: &str| format!("{q}[{}]", p.form);
        let mut m = p.multiplicity.clone();
        m.sort_unstable_by(|x, y| y.cmp(x));
        put(key("restricted_size"), p.restricted_size.to_string());
        put(key("multiplicity"), tuple(&m));
        put(key("lp"), p.lp.to_string());
        put(key("exp"), tuple(&[p.exponents.d1, p.exponents.d2]));
        put(
            key("restricted_exp"),
            tuple(&[p.restricted_exponents.d1, p.restricted_exponents.d2]),
        );
        put(key("rho"), p.rho.total.to_string());
        put(key("pi"), p.pi.total.to_string());
        put(key("rho2"), p.rho2.total.to_string());
        put(key("rho_profile"), list(&p.rho.profile()));
        put(key("pi_profile"), list(&p.pi.profile()));
        put(key("rho2_profile"), list(&p.rho2.profile()));
        put(key("yoshinaga"), p.yoshinaga.to_string());
        put(
            key("deletion_free"),
            if p.deletion_free { "yes" } else { "no" }.into(),
        );
    }
    out
}

/// An expectation that did not hold. `observed` is `None` when no quantity
/// has that key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub observed: Option<String>,
}

pub fn check_expectations(
    expected: &BTreeMap<String, String>,
    observed: &BTreeMap<String, String>,
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (key, want) in expected {
        let targets: Vec<String> = match key.strip_suffix("[*]") {
            Some(stem) => {
                let prefix = format!("{stem}[");
                let matching: Vec<String> = observed
                    .keys()
                    .filter(|k| k.starts_with(&prefix))
                    .cloned()
                    .collect();
                if matching.is_empty() {
                    vec![key.clone()]
                } else {
                    matching
                }
            }
            None => vec![key.clone()],
        };
        for k in targets {
            let got = observed.get(&k);
            if got != Some(want) {
                out.push(Mismatch {
                    key: k,
                    expected: want.clone(),
                    observed: got.cloned(),
                });
            }
        }
    }
    out
}

/// The full JSON report of one arrangement. Object keys come out sorted, so
/// equal analyses serialize to identical text.
pub fn report_document(name: Option<&str>, a: &AnyArrangement, analysis: &Analysis) -> Value {
    let cp = analysis.charpoly;
    let mut doc = serde_json::to_value(analysis).expect("analysis serializes");
    let obj = doc.as_object_mut().expect("object");
    obj.insert(
        "arrangement".into(),
        json!({
            "name": name,
            "field": a.descriptor().to_string(),
            "rank": a.rank(),
            "forms": a.form_strings(),
            "display": (0..a.len()).map(|h| a.display_form(h)).collect::<Vec<_>>(),
        }),
    );
    obj.insert(
        "charpoly".into(),
        json!({
            "chi": cp.format_chi(),
            "chi0": cp.format_chi0(),
            "coefficients": cp.chi,
            "b1": cp.b1,
            "b2": cp.b2,
        }),
    );
    obj.insert("all_pass".into(), Value::Bool(analysis.verdicts.all_pass()));
    doc
}

/// A plain-text summary table.
pub fn render_human(name: Option<&str>, a: &AnyArrangement, analysis: &Analysis) -> String {
    let mut s = String::new();
    let title = name.map_or_else(String::new, |n| format!("{n}: "));
    let _ = writeln!(s, "{title}{a}");
    let _ = writeln!(s, "  chi(t)  = {}", analysis.charpoly.format_chi());
    let _ = writeln!(s, "  chi0(t) = {}", analysis.charpoly.format_chi0());
    match analysis.freeness.exponents() {
        Some(e) => {
            let _ = writeln!(s, "  free with exponents {}", tuple(&e));
        }
        None => {
            let _ = writeln!(s, "  not free");
        }
    }
    if let Some(p) = &analysis.presentation {
        let _ = writeln!(
            s,
            "  generators {}  relations {}",
            set(&p.generator_degrees),
            set(&p.relation_degrees)
        );
    }
    let width = analysis
        .planes
        .iter()
        .map(|p| p.form.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let _ = writeln!(
        s,
        "\n  {:>3}  {:<width$}  {:>5}  {:>4}  {:>7}  {:>10}  {:>10}  {:>10}",
        "H", "form", "|A^H|", "LP", "exp", "coker rho", "coker pi", "coker rho2"
    );
    for p in &analysis.planes {
        let _ = writeln!(
            s,
            "  {:>3}  {:<width$}  {:>5}  {:>4}  {:>7}  {:>10}  {:>10}  {:>10}",
            p.h,
            p.form,
            p.restricted_size,
            p.lp,
            tuple(&[p.exponents.d1, p.exponents.d2]),
            p.rho.total,
            p.pi.total,
            p.rho2.total
        );
    }
    let _ = writeln!(s, "\n  checks:");
    for (name, v) in analysis.verdicts.entries() {
        let _ = writeln!(s, "    {:<28} {}", name, status_name(v.status));
        for c in v.failures() {
            let at = c.h.map_or_else(String::new, |h| format!(" at H{h}"));
            let deg = c
                .degree
                .map_or_else(String::new, |d| format!(" degree {d}"));
            let _ = writeln!(
                s,
                "      {}{at}{deg}: {} {} {}",
                c.quantity, c.lhs, c.relation, c.rhs
            );
        }
    }
    s
}

/// One line of a corpus run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub index: usize,
    pub arrangement: String,
    pub forms: Vec<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<[u32; 3]>,
    pub lp: Vec<i64>,
    pub rho: Vec<usize>,
    pub pi: Vec<usize>,
    pub rho2: Vec<usize>,
    pub failed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Whether `error` is an internal invariant violation.
    pub internal: bool,
}

impl CorpusEntry {
    pub fn new(index: usize, a: &AnyArrangement, result: &Result<Analysis, Error>) -> Self {
        let mut e = CorpusEntry {
            index,
            arrangement: a.to_string(),
            forms: a.form_strings(),
            chi0: None,
            exponents: None,
            lp: Vec::new(),
            rho: Vec::new(),
            pi: Vec::new(),
            rho2: Vec::new(),
            failed: Vec::new(),
            error: None,
            internal: false,
        };
        match result {
            Ok(an) => {
                e.chi0 = Some(an.charpoly.format_chi0());
                e.exponents = an.freeness.exponents();
                e.lp = an.planes.iter().map(|p| p.lp).collect();
                e.rho = an.planes.iter().map(|p| p.rho.total).collect();
                e.pi = an.planes.iter().map(|p| p.pi.total).collect();
                e.rho2 = an.planes.iter().map(|p| p.rho2.total).collect();
                e.failed = an.verdicts.failed().iter().map(|s| s.to_string()).collect();
            }
            Err(err) => {
                e.error = Some(err.to_string());
                e.internal = err.is_internal();
            }
        }
        e
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.failed.is_empty()
    }

    pub fn summary_line(&self) -> String {
        let status = match (&self.error, self.failed.is_empty()) {
            (Some(e), _) => format!("ERROR {e}"),
            (None, true) => "ok".to_string(),
            (None, false) => format!("FAIL {}", self.failed.join(",")),
        };
        let free = self
            .exponents
            .map_or_else(|| "not free".into(), |e| format!("free {}", tuple(&e)));
        format!(
            "{:>5}  {:<4}  {:<13}  rho {:?}  {}  {}",
            self.index,
            self.forms.len(),
            free,
            self.rho,
            self.chi0.as_deref().unwrap_or("-"),
            status
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::restriction::VerifyOptions;

    fn analysed(name: &str) -> (AnyArrangement, Analysis) {
        let a = builtin(name).unwrap().arrangement().unwrap();
        let an = a.analyze(&VerifyOptions::default()).unwrap();
        (a, an)
    }

    #[test]
    fn builtin_expectations_hold() {
        for name in [
            "generic4",
            "boolean",
            "braidA3",
            "ex433",
            "ex45",
            "ss7",
            "pentagon_f11",
        ] {
            let (a, an) = analysed(name);
            let obs = observations(&a, &an);
            let bad = check_expectations(&builtin(name).unwrap().expectations(), &obs);
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn wildcards_and_unknown_keys() {
        let (a, an) = analysed("generic4");
        let obs = observations(&a, &an);
        let mut exp = BTreeMap::new();
        exp.insert("rho[*]".to_string(), "1".to_string());
        exp.insert("nonsense".to_string(), "1".to_string());
        let bad = check_expectations(&exp, &obs);
        assert_eq!(bad.len(), 5);
        assert!(bad
            .iter()
            .any(|m| m.key == "nonsense" && m.observed.is_none()));
        assert!(bad
            .iter()
            .any(|m| m.key == "rho[z]" && m.observed.as_deref() == Some("0")));
    }

    #[test]
    fn reports_are_canonical() {
        let (a, an) = analysed("ex433");
        let one = serde_json::to_string(&report_document(Some("ex433"), &a, &an)).unwrap();
        let (b, bn) = analysed("ex433");
        let two = serde_json::to_string(&report_document(Some("ex433"), &b, &bn)).unwrap();
        assert_eq!(one, two);
        let v: Value = serde_json::from_str(&one).unwrap();
        assert_eq!(v["charpoly"]["chi0"], "t^2 - 6t + 10");
        assert_eq!(v["arrangement"]["forms"][0], json!(["0", "0", "1"]));
        assert_eq!(v["all_pass"], true);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn human_table_mentions_every_plane() {
        let (a, an) = analysed("generic4");
        let text = render_human(Some("generic4"), &a, &an);
        assert!(text.contains("not free"));
        assert!(text.contains("x + y + z"));
        assert!(text.contains("lp_bound"));
    }

    #[test]
    fn corpus_entries_summarize() {
        let (a, an) = analysed("braidA3");
        let e = CorpusEntry::new(3, &a, &Ok(an));
        assert!(e.passed());
        assert_eq!(e.exponents, Some([1, 2, 3]));
        assert!(e.summary_line().contains("free (1,2,3)"));
        let bad = CorpusEntry::new(4, &a, &Err(Error::Invariant("x".into())));
        assert!(bad.internal && !bad.passed());
    }
}
