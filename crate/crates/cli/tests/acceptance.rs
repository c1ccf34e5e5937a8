//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use logres_core::corpus::{builtin, random_arrangement, AnyArrangement, CorpusSpec};
use logres_core::logmod::d_piece;
use logres_core::restriction::{free_cokernel_series, Analysis, FreenessVerdict, VerifyOptions};
use logres_core::{Arrangement, PrimeField};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn load(name: &str) -> AnyArrangement {
    builtin(name).unwrap().arrangement().unwrap()
}

fn analysis(name: &str) -> (AnyArrangement, Analysis) {
    let a = load(name);
    let an = a.analyze(&VerifyOptions::default()).unwrap();
    (a, an)
}

fn exponents(an: &Analysis) -> Option<[u32; 3]> {
    match &an.freeness.verdict {
        FreenessVerdict::Free { exponents } => Some(*exponents),
        FreenessVerdict::NotFree { .. } => None,
    }
}

fn characteristic_polynomials() -> Outcome {
    for (name, chi0, b1, b2) in [
        ("generic4", "t^2 - 3t + 3", 3, 3),
        ("ex433", "t^2 - 6t + 10", 6, 10),
        ("ex45", "t^2 - 7t + 11", 7, 11),
    ] {
        let cp = load(name).char_poly().unwrap();
        ensure!(
            cp.format_chi0() == chi0 && (cp.b1, cp.b2) == (b1, b2),
            "{name}: chi0 = {} with (b1, b2) = ({}, {}), expected {chi0}",
            cp.format_chi0(),
            cp.b1,
            cp.b2
        );
    }
    Ok("generic4, ex433 and ex45 reduced polynomials exact".into())
}

fn cokernel_dimensions() -> Outcome {
    let (_, an) = analysis("generic4");
    for p in &an.planes {
        ensure!(
            p.rho.total == 0 && p.pi.total == 1,
            "generic4 at {}: coker rho {} and coker pi {}",
            p.form,
            p.rho.total,
            p.pi.total
        );
    }
    let (a, an) = analysis("ex433");
    let p = &an.planes[a.resolve_hyperplane("z").unwrap()];
    let got = (p.rho.total, p.pi.total, (p.exponents.d1, p.exponents.d2));
    ensure!(
        got == (2, 1, (3, 3)),
        "ex433 at z: (rho, pi, exp) = {got:?}"
    );
    Ok("generic4 rho 0 and pi 1 at all 4 planes; ex433 at z: rho 2, pi 1, exp (3,3)".into())
}

fn free_hilbert_series() -> Outcome {
    let (_, an) = analysis("pentagon_f11");
    ensure!(
        exponents(&an) == Some([1, 5, 5]),
        "pentagon_f11 freeness {:?}",
        an.freeness.verdict
    );
    let series = free_cokernel_series(4, 5, 5).unwrap();
    ensure!(series == [0, 0, 0, 0, 1], "formula gave {series:?}");
    for p in &an.planes {
        let dims: Vec<i64> = (0..=p.rho.certificate_degree)
            .map(|d| p.rho.dim_at(d) as i64)
            .collect();
        ensure!(
            p.restricted_size == 5 && dims.iter().sum::<i64>() == 1 && dims[4] == 1,
            "pentagon_f11 at {}: |A^H| = {}, coker rho {dims:?}",
            p.form,
            p.restricted_size
        );
        ensure!(p.lp == 1, "pentagon_f11 at {}: LP = {}", p.form, p.lp);
    }

    let (a, an) = analysis("ss7");
    ensure!(
        exponents(&an) == Some([1, 3, 3]),
        "ss7 is not free with (1,3,3)"
    );
    let p = &an.planes[a.resolve_hyperplane("x").unwrap()];
    let series = free_cokernel_series(p.restricted_size as u32 - 1, 3, 3).unwrap();
    let dims: Vec<i64> = (0..4).map(|d| p.rho.dim_at(d) as i64).collect();
    ensure!(
        series == [0, 1, 2, 1] && dims == series && p.rho.total == 4 && p.lp == 4,
        "ss7 at x: coker rho {dims:?}, formula {series:?}, LP {}",
        p.lp
    );
    Ok(
        "pentagon_f11 free (1,5,5) with coker rho = x^4 at all 11 planes; ss7 at x: 1 + 2 + 1 = 4 = LP"
            .into(),
    )
}

fn presentations() -> Outcome {
    for (name, gens, rels) in [
        ("ex433", vec![1, 3, 4, 4], vec![5]),
        ("ex45", vec![1, 2, 6, 6], vec![7]),
    ] {
        let (_, an) = analysis(name);
        let pres = an.presentation.as_ref().unwrap();
        ensure!(
            pres.generator_degrees == gens && pres.relation_degrees == rels,
            "{name}: generators {:?} relations {:?}",
            pres.generator_degrees,
            pres.relation_degrees
        );
    }
    let mut free = 0;
    for name in ["boolean", "braidA3", "ss7", "pentagon_f11"] {
        let (_, an) = analysis(name);
        let exps = exponents(&an).ok_or(format!("{name} not certified free"))?;
        let pres = an.presentation.as_ref().unwrap();
        ensure!(
            pres.generator_degrees == exps && pres.relation_degrees.is_empty(),
            "{name}: exponents {exps:?} but generators {:?} relations {:?}",
            pres.generator_degrees,
            pres.relation_degrees
        );
        free += 1;
    }
    let corpus = CorpusSpec::parse("11,120,8,5,1009").unwrap();
    for i in 0..corpus.count {
        let a = random_arrangement(&corpus, i).unwrap();
        let an = a.analyze(&VerifyOptions::default()).unwrap();
        if let Some(exps) = exponents(&an) {
            let pres = an.presentation.as_ref().unwrap();
            ensure!(
                pres.generator_degrees == exps && pres.relation_degrees.is_empty(),
                "corpus arrangement {i} ({a}): exponents {exps:?} but generators {:?}",
                pres.generator_degrees
            );
            free += 1;
        }
    }
    Ok(format!(
        "ex433 {{1,3,4,4}}/{{5}}, ex45 {{1,2,6,6}}/{{7}}; {free} free arrangements have generators = exponents and no relations"
    ))
}

fn freeness_verdicts() -> Outcome {
    for (name, want) in [
        ("ex433", None),
        ("ex45", None),
        ("braidA3", Some([1, 2, 3])),
        ("ss7", Some([1, 3, 3])),
        ("boolean", Some([1, 1, 1])),
    ] {
        let (_, an) = analysis(name);
        ensure!(
            exponents(&an) == want,
            "{name}: {:?}, expected {want:?}",
            an.freeness.verdict
        );
        for p in &an.planes {
            ensure!(
                (p.yoshinaga == 0) == want.is_some(),
                "{name}: the criterion at {} disagrees with the verdict",
                p.form
            );
        }
    }
    Ok("ex433, ex45 not free; braidA3 (1,2,3), ss7 (1,3,3), boolean (1,1,1); same verdict at every plane".into())
}

fn run_corpus(spec: &str) -> Result<(usize, usize), String> {
    let spec = CorpusSpec::parse(spec).unwrap();
    let mut free = 0;
    for i in 0..spec.count {
        let a = random_arrangement(&spec, i).map_err(|e| format!("generating {i}: {e}"))?;
        let an = a
            .analyze(&VerifyOptions::default())
            .map_err(|e| format!("arrangement {i} ({a}): {e}"))?;
        ensure!(
            an.verdicts.all_pass(),
            "arrangement {i} ({a}) fails {:?}",
            an.verdicts.failed()
        );
        for p in &an.planes {
            ensure!(
                p.rho.stabilized && p.pi.stabilized && p.rho2.stabilized,
                "arrangement {i} ({a}) at {}: no stabilization certificate",
                p.form
            );
            ensure!(p.lp >= 0, "arrangement {i} ({a}) at {}: LP < 0", p.form);
            ensure!(
                (p.exponents.d1 + p.exponents.d2) as usize == a.len() - 1,
                "arrangement {i} ({a}) at {}: d1 + d2 != |A| - 1",
                p.form
            );
            ensure!(
                p.restricted_exponents.d1 == 1
                    && p.restricted_exponents.d2 as usize == p.restricted_size - 1,
                "arrangement {i} ({a}) at {}: exp(A^H) is not (1, |A^H| - 1)",
                p.form
            );
        }
        if exponents(&an).is_some() {
            free += 1;
        }
    }
    Ok((spec.count, free))
}

fn random_corpus() -> Outcome {
    let (nq, fq) = run_corpus("1,200,8,3")?;
    let (np, fp) = run_corpus("2,500,8,5,1009")?;
    Ok(format!(
        "{nq} arrangements over QQ ({fq} free) and {np} over GF(1009) ({fp} free), every check passes"
    ))
}

const P: u32 = 5;

fn projective_points() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..P {
        for b in 0..P {
            for c in 0..P {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn eval(m: &[u32; 3], p: &[u32; 3]) -> u32 {
    (0..3).fold(1, |acc, k| acc * p[k].pow(m[k]) % P)
}

fn rank_mod_p(mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = (1..P).find(|&x| x * rows[rank][c] % P == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * y) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim D(A)_d` from point evaluations: `θ(α_H)` has degree `d < 6`, so it
/// is divisible by `α_H` exactly when it vanishes at the six points of `H`.
fn oracle_dim(forms: &[[u32; 3]], points: &[[u32; 3]], d: u32) -> usize {
    let mons = monomials(d);
    let m = mons.len();
    let mut rows = Vec::new();
    for f in forms {
        for p in points {
            if (0..3).map(|k| f[k] * p[k]).sum::<u32>() % P != 0 {
                continue;
            }
            let mut row = vec![0; 3 * m];
            for i in 0..3 {
                for (j, mon) in mons.iter().enumerate() {
                    row[i * m + j] = f[i] * eval(mon, p) % P;
                }
            }
            rows.push(row);
        }
    }
    3 * m - rank_mod_p(rows)
}

fn oracle_equivalence() -> Outcome {
    let points = projective_points();
    ensure!(points.len() == 31, "{} points", points.len());
    let field = PrimeField::new(P as u64).unwrap();
    let n = points.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        subsets.push(vec![a]);
        for b in a + 1..n {
            subsets.push(vec![a, b]);
            for c in b + 1..n {
                subsets.push(vec![a, b, c]);
                for e in c + 1..n {
                    subsets.push(vec![a, b, c, e]);
                }
            }
        }
    }
    let mut compared = 0;
    for s in &subsets {
        let forms: Vec<[u32; 3]> = s.iter().map(|&i| points[i]).collect();
        let raw: Vec<[i64; 3]> = forms.iter().map(|f| f.map(i64::from)).collect();
        let arr = Arrangement::from_i64(field.clone(), &raw).map_err(|e| e.to_string())?;
        for d in 0..=4 {
            let production = d_piece(&arr, d).dim();
            let oracle = oracle_dim(&forms, &points, d);
            ensure!(
                production == oracle,
                "{forms:?} in degree {d}: production {production}, oracle {oracle}"
            );
            compared += 1;
        }
    }
    Ok(format!(
        "{} arrangements over GF(5), {compared} graded pieces agree",
        subsets.len()
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_logres"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.code() == Some(0),
        "logres {args:?} exited with {:?}",
        out.status.code()
    );
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let mut bytes = 0;
    for spec in ["7,60,8,5,1009", "8,6"] {
        for json in [false, true] {
            let mut args = vec!["verify", "--corpus", spec];
            if json {
                args.push("--json");
            }
            let one = run_cli(&args)?;
            let two = run_cli(&args)?;
            ensure!(one == two, "reports for {args:?} differ");
            bytes += one.len();
        }
    }
    Ok(format!(
        "repeated corpus runs byte-identical ({bytes} bytes compared)"
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("characteristic polynomials", characteristic_polynomials),
        ("cokernel dimensions", cokernel_dimensions),
        ("free-case Hilbert series", free_hilbert_series),
        ("presentations", presentations),
        ("freeness verdicts", freeness_verdicts),
        ("random corpus properties", random_corpus),
        ("oracle equivalence over GF(5)", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
