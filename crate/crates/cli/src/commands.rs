use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read as _;

use logres_core::corpus::{
    builtin, builtins, check_expectations, observations, parse_input, random_arrangement,
    render_human, render_input, report_document, AnyArrangement, CorpusEntry, CorpusSpec, Mismatch,
};
use logres_core::restriction::{Analysis, CokernelReport, VerifyOptions};
use logres_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Command, Output, Source};

macro_rules! emit {
    ($($arg:tt)*) => {
        $crate::commands::write_stdout(format_args!($($arg)*))
    };
}

macro_rules! emitln {
    () => {
        emit!("\n")
    };
    ($($arg:tt)*) => {
        emit!("{}\n", format_args!($($arg)*))
    };
}

/// Writes to standard output, exiting quietly once the reader has gone away.
pub fn write_stdout(args: std::fmt::Arguments) {
    use std::io::Write as _;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_internal() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

pub enum Outcome {
    Ok,
    VerificationFailed,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

struct Target {
    name: Option<String>,
    arrangement: AnyArrangement,
    expectations: BTreeMap<String, String>,
}

fn load(source: &Source) -> Result<Target, Failure> {
    if let Some(name) = &source.builtin {
        let b = builtin(name)?;
        return Ok(Target {
            name: Some(b.name.to_string()),
            arrangement: b.arrangement()?,
            expectations: b.expectations(),
        });
    }
    let Some(path) = &source.file else {
        return Err(Failure::input("no input: give a FILE or --builtin NAME"));
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    let doc = parse_input(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure::input(format!("{}: {}", path.display(), f.message))
    })?;
    Ok(Target {
        name: doc.name,
        arrangement: doc.arrangement,
        expectations: BTreeMap::new(),
    })
}

fn print_json(v: &Value) {
    emitln!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn header(t: &Target) -> Value {
    let a = &t.arrangement;
    json!({
        "name": t.name,
        "field": a.descriptor().to_string(),
        "forms": a.form_strings(),
        "display": (0..a.len()).map(|h| a.display_form(h)).collect::<Vec<_>>(),
    })
}

fn hyperplanes(a: &AnyArrangement, spec: Option<&str>) -> Result<Vec<usize>, Failure> {
    Ok(match spec {
        Some(s) => vec![a.resolve_hyperplane(s)?],
        None => (0..a.len()).collect(),
    })
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Analyze {
            source,
            hyperplane,
            cap,
            skip_presentation,
            output,
        } => analyze(
            &source,
            hyperplane.as_deref(),
            cap,
            skip_presentation,
            output,
        ),
        Command::Charpoly { source, output } => charpoly(&source, output),
        Command::Coker {
            source,
            map,
            hyperplane,
            cap,
            output,
        } => coker(&source, map, hyperplane.as_deref(), cap, output),
        Command::Freeness {
            source,
            no_basis,
            cap,
            output,
        } => freeness(&source, no_basis, cap, output),
        Command::Presentation {
            source,
            cap,
            output,
        } => presentation(&source, cap, output),
        Command::Verify {
            source,
            corpus,
            expect,
            cap,
            output,
        } => verify(&source, corpus.as_deref(), &expect, cap, output),
        Command::Export { source } => {
            let t = load(&source)?;
            emit!("{}", render_input(t.name.as_deref(), &t.arrangement));
            Ok(Outcome::Ok)
        }
        Command::ListBuiltins { output } => list_builtins(output),
    }
}

fn analyze(
    source: &Source,
    hyperplane: Option<&str>,
    cap: Option<u32>,
    skip_presentation: bool,
    output: Output,
) -> CmdResult {
    let t = load(source)?;
    let keep = hyperplanes(&t.arrangement, hyperplane)?;
    let opts = VerifyOptions {
        cap,
        skip_presentation,
        ..VerifyOptions::default()
    };
    let mut analysis = t.arrangement.analyze(&opts)?;
    let all_pass = analysis.verdicts.all_pass();
    analysis.planes.retain(|p| keep.contains(&p.h));
    if output.json {
        print_json(&report_document(
            t.name.as_deref(),
            &t.arrangement,
            &analysis,
        ));
    } else {
        emit!(
            "{}",
            render_human(t.name.as_deref(), &t.arrangement, &analysis)
        );
    }
    Ok(if all_pass {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn charpoly(source: &Source, output: Output) -> CmdResult {
    let t = load(source)?;
    let cp = t.arrangement.char_poly()?;
    if output.json {
        print_json(&json!({
            "arrangement": header(&t),
            "chi": cp.format_chi(),
            "chi0": cp.format_chi0(),
            "coefficients": cp.chi,
            "b1": cp.b1,
            "b2": cp.b2,
        }));
    } else {
        emitln!("chi(t)  = {}", cp.format_chi());
        emitln!("chi0(t) = {}", cp.format_chi0());
    }
    Ok(Outcome::Ok)
}

fn coker_line(a: &AnyArrangement, r: &CokernelReport) -> String {
    let profile: Vec<String> = r.profile().iter().map(usize::to_string).collect();
    format!(
        "H{} ({}): coker {} total {}  per degree [{}]  full from degree {}  LP {}",
        r.h,
        a.display_form(r.h),
        r.kind,
        r.total,
        profile.join(", "),
        r.certificate_degree,
        r.lp
    )
}

fn coker(
    source: &Source,
    map: logres_core::restriction::MapKind,
    hyperplane: Option<&str>,
    cap: Option<u32>,
    output: Output,
) -> CmdResult {
    let t = load(source)?;
    let a = &t.arrangement;
    let reports = hyperplanes(a, hyperplane)?
        .into_iter()
        .map(|h| a.coker(map, h, cap))
        .collect::<Result<Vec<_>, _>>()?;
    if output.json {
        let planes: Vec<Value> = reports
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["form"] = Value::from(a.display_form(r.h));
                v["records"] = serde_json::to_value(&r.records).expect("records serialize");
                v
            })
            .collect();
        print_json(&json!({ "arrangement": header(&t), "map": map, "planes": planes }));
    } else {
        for r in &reports {
            emitln!("{}", coker_line(a, r));
        }
    }
    Ok(Outcome::Ok)
}

fn freeness(source: &Source, no_basis: bool, cap: Option<u32>, output: Output) -> CmdResult {
    let t = load(source)?;
    let a = &t.arrangement;
    let saito_cap = (!no_basis).then(|| cap.unwrap_or_else(|| a.default_cap()));
    let cert = a.freeness(saito_cap)?;
    if output.json {
        let mut v = serde_json::to_value(&cert).expect("certificate serializes");
        v["arrangement"] = header(&t);
        print_json(&v);
    } else {
        match cert.exponents() {
            Some(e) => emitln!("free with exponents ({}, {}, {})", e[0], e[1], e[2]),
            None => emitln!("not free"),
        }
        if let logres_core::restriction::FreenessVerdict::NotFree { witnesses } = &cert.verdict {
            for w in witnesses {
                emitln!(
                    "  H{} ({}): chi0(0) = {} but d1 d2 = {}",
                    w.h,
                    a.display_form(w.h),
                    w.b2_0,
                    w.d1d2
                );
            }
        }
        if let Some(basis) = &cert.saito_basis {
            emitln!("basis (coefficients of d/dx, d/dy, d/dz in graded-lex monomial order):");
            for b in basis {
                emitln!("  degree {}: [{}]", b.degree, b.coefficients.join(", "));
            }
        }
    }
    Ok(Outcome::Ok)
}

fn presentation(source: &Source, cap: Option<u32>, output: Output) -> CmdResult {
    let t = load(source)?;
    let p = t.arrangement.presentation(cap)?;
    if output.json {
        let mut v = serde_json::to_value(&p).expect("presentation serializes");
        v["arrangement"] = header(&t);
        print_json(&v);
    } else {
        let fmt = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        emitln!("generators in degrees {{{}}}", fmt(&p.generator_degrees));
        emitln!("relations in degrees  {{{}}}", fmt(&p.relation_degrees));
        emitln!("certified through degree {}", p.certified_through);
    }
    Ok(Outcome::Ok)
}

fn parse_expectations(items: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    items
        .iter()
        .map(|item| {
            item.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::input(format!("--expect {item:?} is not KEY=VALUE")))
        })
        .collect()
}

struct Checked {
    analysis: Analysis,
    mismatches: Vec<Mismatch>,
}

fn check(
    t: &Target,
    extra: &BTreeMap<String, String>,
    cap: Option<u32>,
) -> Result<Checked, Failure> {
    let opts = VerifyOptions {
        cap,
        ..VerifyOptions::default()
    };
    let analysis = t.arrangement.analyze(&opts)?;
    let observed = observations(&t.arrangement, &analysis);
    let mut expected = t.expectations.clone();
    expected.extend(extra.iter().map(|(k, v)| (k.clone(), v.clone())));
    let mismatches = check_expectations(&expected, &observed);
    if let Some(m) = mismatches.iter().find(|m| m.observed.is_none()) {
        let mut hint = String::new();
        let _ = write!(hint, "unknown quantity {:?}; known keys:", m.key);
        for k in observed.keys() {
            let _ = write!(hint, " {k}");
        }
        return Err(Failure::input(hint));
    }
    Ok(Checked {
        analysis,
        mismatches,
    })
}

fn verify_targets(
    targets: &[Target],
    extra: &BTreeMap<String, String>,
    cap: Option<u32>,
    output: Output,
) -> CmdResult {
    let mut all_ok = true;
    let mut docs = Vec::new();
    for t in targets {
        let c = check(t, extra, cap)?;
        let ok = c.analysis.verdicts.all_pass() && c.mismatches.is_empty();
        all_ok &= ok;
        if output.json {
            let mut doc = report_document(t.name.as_deref(), &t.arrangement, &c.analysis);
            doc["expectations"] = json!({
                "checked": t.expectations.len() + extra.len(),
                "mismatches": c.mismatches,
            });
            doc["passed"] = Value::Bool(ok);
            docs.push(doc);
        } else {
            emit!(
                "{}",
                render_human(t.name.as_deref(), &t.arrangement, &c.analysis)
            );
            for m in &c.mismatches {
                emitln!(
                    "  expected {} = {} but found {}",
                    m.key,
                    m.expected,
                    m.observed.as_deref().unwrap_or("nothing")
                );
            }
            emitln!("  => {}\n", if ok { "PASS" } else { "FAIL" });
        }
    }
    if output.json {
        if docs.len() == 1 {
            print_json(&docs[0]);
        } else {
            print_json(&json!({ "reports": docs, "passed": all_ok }));
        }
    }
    Ok(if all_ok {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn verify_corpus(spec: &CorpusSpec, cap: Option<u32>, output: Output) -> CmdResult {
    let arrangements = (0..spec.count)
        .map(|i| random_arrangement(spec, i))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = VerifyOptions {
        cap,
        ..VerifyOptions::default()
    };
    let entries: Vec<CorpusEntry> = arrangements
        .par_iter()
        .enumerate()
        .map(|(i, a)| CorpusEntry::new(i, a, &a.analyze(&opts)))
        .collect();
    let passed = entries.iter().filter(|e| e.passed()).count();
    let internal = entries.iter().any(|e| e.internal);
    let other_errors = entries.iter().any(|e| e.error.is_some() && !e.internal);
    if output.json {
        print_json(&json!({
            "corpus": spec,
            "field": spec.field.to_string(),
            "entries": entries,
            "summary": { "total": entries.len(), "passed": passed },
        }));
    } else {
        emitln!(
            "corpus seed {} count {} max_planes {} bound {} over {}",
            spec.seed,
            spec.count,
            spec.max_planes,
            spec.bound,
            spec.field
        );
        for e in &entries {
            emitln!("{}", e.summary_line());
        }
        emitln!("{passed}/{} arrangements pass", entries.len());
    }
    if internal {
        return Err(Failure {
            code: 3,
            message: "internal invariant violated in the corpus".into(),
        });
    }
    if other_errors {
        return Err(Failure::input(
            "some corpus arrangements could not be analyzed",
        ));
    }
    Ok(if passed == entries.len() {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn verify(
    source: &Source,
    corpus: Option<&str>,
    expect: &[String],
    cap: Option<u32>,
    output: Output,
) -> CmdResult {
    let extra = parse_expectations(expect)?;
    if let Some(text) = corpus {
        if !extra.is_empty() {
            return Err(Failure::input("--expect needs a single FILE or --builtin"));
        }
        return verify_corpus(&CorpusSpec::parse(text)?, cap, output);
    }
    if source.file.is_none() && source.builtin.is_none() {
        if !extra.is_empty() {
            return Err(Failure::input("--expect needs a single FILE or --builtin"));
        }
        let targets = builtins()
            .iter()
            .map(|b| {
                Ok(Target {
                    name: Some(b.name.to_string()),
                    arrangement: b.arrangement()?,
                    expectations: b.expectations(),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        return verify_targets(&targets, &extra, cap, output);
    }
    verify_targets(&[load(source)?], &extra, cap, output)
}

fn list_builtins(output: Output) -> CmdResult {
    if output.json {
        let list: Vec<Value> = builtins()
            .iter()
            .map(|b| {
                json!({
                    "name": b.name,
                    "description": b.description,
                    "field": b.field().to_string(),
                    "planes": b.forms.len(),
                })
            })
            .collect();
        print_json(&Value::from(list));
    } else {
        for b in builtins() {
            emitln!(
                "{:<14} {:>3} planes over {:<7} {}",
                b.name,
                b.forms.len(),
                b.field().to_string(),
                b.description
            );
        }
    }
    Ok(Outcome::Ok)
}
