//! Per-arrangement analysis: all three cokernels at every plane, freeness,
//! the presentation, and the comparisons between them.

use serde::Serialize;

use crate::combinatorics::{char_poly, Arrangement, CharPoly, Multiplicity};
use crate::error::Result;
use crate::kernel::field::Field;
use crate::logmod::{
    default_cap, exponents2, presentation_with, ExponentPair, LogModules, PresentationReport,
};
use crate::restriction::coker::{coker_with, yoshinaga_value, CokernelReport};
use crate::restriction::freeness::{freeness_at, freeness_from_contexts, FreenessCertificate};
use crate::restriction::maps::{plane_context, MapKind, PlaneContext};

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Degree cap for cokernel scans and presentations; `2|A| + 4` if unset.
    pub cap: Option<u32>,
    /// Skip the presentation and the checks that depend on it.
    pub skip_presentation: bool,
    /// Added to every line-point invariant before comparing. Used to check
    /// that the comparisons can fail.
    #[doc(hidden)]
    pub lp_shift: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One evaluated (in)equality with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub quantity: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
}

impl Comparison {
    fn new<L: ToString, R: ToString>(
        h: Option<usize>,
        quantity: &str,
        lhs: L,
        relation: &'static str,
        rhs: R,
        holds: bool,
    ) -> Self {
        Comparison {
            h,
            degree: None,
            quantity: quantity.to_string(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            holds,
        }
    }

    fn eq<T: PartialEq + ToString>(h: Option<usize>, quantity: &str, lhs: T, rhs: T) -> Self {
        let holds = lhs == rhs;
        Self::new(h, quantity, lhs, "=", rhs, holds)
    }

    fn le<T: PartialOrd + ToString>(h: Option<usize>, quantity: &str, lhs: T, rhs: T) -> Self {
        let holds = lhs <= rhs;
        Self::new(h, quantity, lhs, "<=", rhs, holds)
    }

    fn at_degree(mut self, d: u32) -> Self {
        self.degree = Some(d);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub comparisons: Vec<Comparison>,
}

impl Verdict {
    fn from(comparisons: Vec<Comparison>) -> Self {
        let status = if comparisons.is_empty() {
            Status::NotApplicable
        } else if comparisons.iter().all(|c| c.holds) {
            Status::Pass
        } else {
            Status::Fail
        };
        Verdict {
            status,
            comparisons,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    /// `dim coker ρ^H <= LP(A, H)`.
    pub lp_bound: Verdict,
    /// Free: the Hilbert series of `coker ρ^H` is
    /// `x^n (1 - x^(a-n)) (1 - x^(b-n)) / (1 - x)^2` with `n = |A^H| - 1`.
    pub free_hilbert_series: Verdict,
    /// Free with exponents `(1, a, b)`: `χ(A; t) = (t - 1)(t - a)(t - b)`.
    pub terao_factorization: Verdict,
    /// `|A^H| - 1` lies outside the open interval between the real roots of
    /// `χ₀`; landing on a root forces freeness.
    pub root_condition: Verdict,
    /// Free: `π^H` is onto and `exp(A^H, m^H) = (a, b)`.
    pub ziegler_surjectivity: Verdict,
    /// `dim coker π^H = χ₀(A; 0) - d₁ d₂`, zero exactly when free.
    pub yoshinaga_criterion: Verdict,
    /// `A \ {H}` free: `ρ^H` is onto.
    pub free_surjection: Verdict,
    /// `dim coker ρ₂^H <= LP(A, H)`, with equality when free.
    pub second_restriction_bound: Verdict,
    /// `dim coker ρ₂^H = dim coker ρ^H`.
    pub second_restriction_totals: Verdict,
    /// `LP(A, H) = χ₀(A; |A| - |A^H|) >= χ₀(A; 0) - d₁ d₂ = dim coker π^H >= 0`.
    pub ziegler_chain: Verdict,
    /// `dim coker π^H = χ₀(A; d₁) = χ₀(A; d₂)`.
    pub ziegler_values: Verdict,
    /// Some `LP(A, H) = 1`: free, or nearly free with generators in degrees
    /// `1, a, b, b` and one relation in degree `b + 1`.
    pub nearly_free_shape: Verdict,
    /// `ker ρ^H` in degree `d` has the dimension of `D(A \ {H})_{d-1}`.
    pub euler_kernel: Verdict,
    /// `ker π^H` in degree `d` has the dimension of `D_H(A)_{d-1}`.
    pub ziegler_kernel: Verdict,
    /// `exp(A^H) = (1, |A^H| - 1)` and `d₁ + d₂ = |A| - 1`.
    pub restriction_exponents: Verdict,
    /// `exp(A^H, m^H + δ_X)` raises exactly one exponent of `exp(A^H, m^H)`.
    pub multiplicity_increment: Verdict,
    /// The presentation is free exactly when the freeness certificate is,
    /// with the same exponents.
    pub presentation_shape: Verdict,
}

impl VerdictReport {
    pub fn entries(&self) -> [(&'static str, &Verdict); 17] {
        [
            ("lp_bound", &self.lp_bound),
            ("free_hilbert_series", &self.free_hilbert_series),
            ("terao_factorization", &self.terao_factorization),
            ("root_condition", &self.root_condition),
            ("ziegler_surjectivity", &self.ziegler_surjectivity),
            ("yoshinaga_criterion", &self.yoshinaga_criterion),
            ("free_surjection", &self.free_surjection),
            ("second_restriction_bound", &self.second_restriction_bound),
            ("second_restriction_totals", &self.second_restriction_totals),
            ("ziegler_chain", &self.ziegler_chain),
            ("ziegler_values", &self.ziegler_values),
            ("nearly_free_shape", &self.nearly_free_shape),
            ("euler_kernel", &self.euler_kernel),
            ("ziegler_kernel", &self.ziegler_kernel),
            ("restriction_exponents", &self.restriction_exponents),
            ("multiplicity_increment", &self.multiplicity_increment),
            ("presentation_shape", &self.presentation_shape),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.status != Status::Fail)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.entries()
            .iter()
            .filter(|(_, v)| v.status == Status::Fail)
            .map(|(name, _)| *name)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub h: usize,
    pub form: String,
    pub restricted_size: usize,
    pub multiplicity: Vec<u32>,
    pub lp: i64,
    pub exponents: ExponentPair,
    pub restricted_exponents: ExponentPair,
    pub rho: CokernelReport,
    pub pi: CokernelReport,
    pub rho2: CokernelReport,
    /// Whether `dim (coker ρ₂^H)_{d+1} = dim (coker ρ^H)_d` in every degree.
    pub rho2_matches_rho_shifted: bool,
    pub yoshinaga: i64,
    /// Exponents of `A \ {H}` when it is free.
    pub deletion_exponents: Option<[u32; 3]>,
    pub deletion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub charpoly: CharPoly,
    pub planes: Vec<PlaneReport>,
    pub freeness: FreenessCertificate,
    pub presentation: Option<PresentationReport>,
    pub verdicts: VerdictReport,
}

/// Coefficients of `x^n (1 + ... + x^(a-n-1)) (1 + ... + x^(b-n-1))`, or
/// `None` when `n` exceeds `min(a, b)` without equalling `max(a, b)`.
pub fn free_cokernel_series(n: u32, a: u32, b: u32) -> Option<Vec<i64>> {
    if a == n || b == n {
        return Some(Vec::new());
    }
    if a < n || b < n {
        return None;
    }
    let (p, q) = ((a - n) as usize, (b - n) as usize);
    let mut out = vec![0i64; n as usize + p + q - 1];
    for i in 0..p {
        for j in 0..q {
            out[n as usize + i + j] += 1;
        }
    }
    Some(out)
}

/// `(a, b)` from sorted exponents containing the Euler degree 1.
fn non_euler_pair(exps: [u32; 3]) -> (u32, u32) {
    let mut rest: Vec<u32> = exps.to_vec();
    if let Some(i) = rest.iter().position(|&e| e == 1) {
        rest.remove(i);
    } else {
        rest.remove(0);
    }
    (rest[0], rest[1])
}

fn expand_roots(roots: [u32; 3]) -> [i64; 4] {
    let mut c = [1i64, 0, 0, 0];
    for (k, r) in roots.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            c[i] -= *r as i64 * c[i - 1];
        }
    }
    c
}

fn multiset_string(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Runs the whole analysis of `a`.
pub fn analyze<F: Field>(a: &Arrangement<F>, opts: &VerifyOptions) -> Result<Analysis> {
    let cp = char_poly(a)?;
    let cap = opts.cap.unwrap_or_else(|| default_cap(a));
    let contexts = (0..a.len())
        .map(|h| plane_context(a, &cp, h))
        .collect::<Result<Vec<_>>>()?;
    let freeness = freeness_from_contexts(&cp, &contexts)?;
    let mut lm = LogModules::new(a);
    let mut planes = Vec::with_capacity(a.len());
    let mut increments = Vec::new();
    let mut euler_kernel = Vec::new();
    let mut ziegler_kernel = Vec::new();
    let mut restriction_exps = Vec::new();
    for ctx in &contexts {
        let h = ctx.h;
        let rho = coker_with(&mut lm, ctx, MapKind::Rho, cap)?;
        let pi = coker_with(&mut lm, ctx, MapKind::Pi, cap)?;
        let rho2 = coker_with(&mut lm, ctx, MapKind::Rho2, cap)?;
        let restricted_exponents = exponents2(
            a.field(),
            &ctx.restriction.lines,
            &Multiplicity::simple(ctx.restricted_size()),
        )?;

        let deletion = a.deletion(h);
        let deletion_cert = if deletion.len() >= 2 {
            Some(freeness_at(&deletion, 0)?)
        } else {
            None
        };
        let mut dm = LogModules::new(&deletion);
        for r in &rho.records {
            let expected = if r.degree == 0 {
                0
            } else {
                dm.d_piece(r.degree - 1).dim()
            };
            euler_kernel.push(
                Comparison::eq(Some(h), "dim ker rho", r.kernel_dim, expected).at_degree(r.degree),
            );
        }
        for r in &pi.records {
            let expected = if r.degree == 0 {
                0
            } else {
                lm.dh_piece(h, r.degree - 1).dim()
            };
            ziegler_kernel.push(
                Comparison::eq(Some(h), "dim ker pi", r.kernel_dim, expected).at_degree(r.degree),
            );
        }

        let n = ctx.restricted_size() as u32;
        let simple = ExponentPair {
            d1: n.saturating_sub(1).min(1),
            d2: n.saturating_sub(1).max(1),
        };
        restriction_exps.push(Comparison::eq(
            Some(h),
            "exp(A^H)",
            format!("({},{})", restricted_exponents.d1, restricted_exponents.d2),
            format!("({},{})", simple.d1, simple.d2),
        ));
        let e = ctx.ziegler_exponents;
        restriction_exps.push(Comparison::eq(
            Some(h),
            "d1 + d2",
            (e.d1 + e.d2) as usize,
            a.len() - 1,
        ));

        for x in 0..ctx.restricted_size() {
            let bumped = exponents2(
                a.field(),
                &ctx.restriction.lines,
                &ctx.multiplicity.incremented(x),
            )?;
            let up1 = ExponentPair {
                d1: e.d1 + 1,
                d2: e.d2,
            };
            let up2 = ExponentPair {
                d1: e.d1,
                d2: e.d2 + 1,
            };
            let sorted = |p: ExponentPair| ExponentPair {
                d1: p.d1.min(p.d2),
                d2: p.d1.max(p.d2),
            };
            let holds = bumped == sorted(up1) || bumped == sorted(up2);
            increments.push(Comparison::new(
                Some(h),
                &format!("exp after raising line {x}"),
                format!("({},{})", bumped.d1, bumped.d2),
                "in",
                format!("{{({},{}),({},{})}}", up1.d1, up1.d2, up2.d1, up2.d2),
                holds,
            ));
        }

        planes.push(PlaneReport {
            h,
            form: a.display_form(h),
            restricted_size: ctx.restricted_size(),
            multiplicity: ctx.multiplicity.values.clone(),
            lp: ctx.lp,
            exponents: ctx.ziegler_exponents,
            restricted_exponents,
            yoshinaga: yoshinaga_value(&cp, ctx),
            rho2_matches_rho_shifted: {
                let mut shifted = vec![0];
                shifted.extend(rho.profile());
                shifted == rho2.profile() || (rho.total == 0 && rho2.total == 0)
            },
            rho,
            pi,
            rho2,
            deletion_exponents: deletion_cert.as_ref().and_then(|c| c.exponents()),
            deletion_free: deletion_cert.as_ref().is_some_and(|c| c.is_free()),
        });
    }

    let presentation = if opts.skip_presentation {
        None
    } else {
        let mut p = presentation_with(&mut lm, cap)?;
        if p.relation_degrees.len() == 1 {
            p.level = Some(p.relation_degrees[0] as i64 - 1);
        }
        Some(p)
    };

    let verdicts = build_verdicts(
        a,
        &cp,
        &contexts,
        &planes,
        &freeness,
        presentation.as_ref(),
        opts.lp_shift,
        VerdictParts {
            euler_kernel,
            ziegler_kernel,
            restriction_exps,
            increments,
        },
    );
    Ok(Analysis {
        charpoly: cp,
        planes,
        freeness,
        presentation,
        verdicts,
    })
}

struct VerdictParts {
    euler_kernel: Vec<Comparison>,
    ziegler_kernel: Vec<Comparison>,
    restriction_exps: Vec<Comparison>,
    increments: Vec<Comparison>,
}

#[allow(clippy::too_many_arguments)]
fn build_verdicts<F: Field>(
    a: &Arrangement<F>,
    cp: &CharPoly,
    contexts: &[PlaneContext<F::Elem>],
    planes: &[PlaneReport],
    freeness: &FreenessCertificate,
    presentation: Option<&PresentationReport>,
    lp_shift: i64,
    parts: VerdictParts,
) -> VerdictReport {
    let free = freeness.exponents();
    let size = a.len() as i64;

    let mut lp_bound = Vec::new();
    let mut hilbert = Vec::new();
    let mut roots = Vec::new();
    let mut ziegler_surj = Vec::new();
    let mut yoshinaga = Vec::new();
    let mut fst = Vec::new();
    let mut second = Vec::new();
    let mut second_totals = Vec::new();
    let mut chain = Vec::new();
    let mut values = Vec::new();

    for (ctx, p) in contexts.iter().zip(planes) {
        let h = Some(p.h);
        let lp = p.lp + lp_shift;
        let n = p.restricted_size as i64 - 1;
        lp_bound.push(Comparison::le(
            h,
            "dim coker rho vs LP",
            p.rho.total as i64,
            lp,
        ));

        if let Some(exps) = free {
            let (ea, eb) = non_euler_pair(exps);
            match free_cokernel_series(n as u32, ea, eb) {
                Some(series) => {
                    let top = (series.len() as u32).max(p.rho.certificate_degree + 1);
                    for d in 0..top {
                        let expected = series.get(d as usize).copied().unwrap_or(0);
                        hilbert.push(
                            Comparison::eq(h, "dim coker rho", p.rho.dim_at(d) as i64, expected)
                                .at_degree(d),
                        );
                    }
                    hilbert.push(Comparison::eq(
                        h,
                        "dim coker rho vs LP",
                        p.rho.total as i64,
                        lp,
                    ));
                }
                None => hilbert.push(Comparison::le(
                    h,
                    "|A^H| - 1 vs min(a, b) when not max(a, b)",
                    n,
                    ea.min(eb) as i64,
                )),
            }
            ziegler_surj.push(Comparison::eq(h, "dim coker pi", p.pi.total as i64, 0));
            let e = ctx.ziegler_exponents;
            ziegler_surj.push(Comparison::eq(
                h,
                "exp(A^H, m^H)",
                format!("({},{})", e.d1, e.d2),
                format!("({},{})", ea.min(eb), ea.max(eb)),
            ));
            second.push(Comparison::eq(
                h,
                "dim coker rho2 vs LP",
                p.rho2.total as i64,
                lp,
            ));
        }

        // real roots α <= β of t² - b1 t + b2 with discriminant D
        let disc = cp.discriminant();
        if disc >= 0 {
            let b1 = cp.b1;
            let below = b1 - 2 * n >= 0 && (b1 - 2 * n).pow(2) >= disc;
            let above = 2 * n - b1 >= 0 && (2 * n - b1).pow(2) >= disc;
            roots.push(Comparison::new(
                h,
                "|A^H| - 1 vs roots of chi0",
                n,
                "<= alpha or >= beta",
                format!("roots of {}", cp.format_chi0()),
                below || above,
            ));
            let is_root = cp.chi0_at(n) == 0;
            if is_root {
                roots.push(Comparison::new(
                    h,
                    "root at |A^H| - 1 forces freeness",
                    "root",
                    "=>",
                    "free",
                    free.is_some(),
                ));
            }
        }

        let formula = yoshinaga_value(cp, ctx);
        yoshinaga.push(Comparison::eq(
            h,
            "dim coker pi vs b2_0 - d1 d2",
            p.pi.total as i64,
            formula,
        ));
        yoshinaga.push(Comparison::eq(
            h,
            "coker pi vanishes vs free",
            p.pi.total == 0,
            free.is_some(),
        ));

        if p.deletion_free {
            fst.push(Comparison::eq(
                h,
                "dim coker rho with free deletion",
                p.rho.total as i64,
                0,
            ));
        }

        second.push(Comparison::le(
            h,
            "dim coker rho2 vs LP",
            p.rho2.total as i64,
            lp,
        ));
        second_totals.push(Comparison::eq(
            h,
            "dim coker rho2 vs dim coker rho",
            p.rho2.total,
            p.rho.total,
        ));

        let far = cp.chi0_at(size - p.restricted_size as i64);
        chain.push(Comparison::eq(h, "LP vs chi0(|A| - |A^H|)", lp, far));
        chain.push(Comparison::new(
            h,
            "chi0(|A| - |A^H|) vs b2_0 - d1 d2",
            far,
            ">=",
            formula,
            far >= formula,
        ));
        chain.push(Comparison::eq(
            h,
            "b2_0 - d1 d2 vs dim coker pi",
            formula,
            p.pi.total as i64,
        ));
        chain.push(Comparison::new(
            h,
            "dim coker pi",
            p.pi.total,
            ">=",
            0,
            true,
        ));

        let e = ctx.ziegler_exponents;
        values.push(Comparison::eq(
            h,
            "dim coker pi vs chi0(d1)",
            p.pi.total as i64,
            cp.chi0_at(e.d1 as i64),
        ));
        values.push(Comparison::eq(
            h,
            "dim coker pi vs chi0(d2)",
            p.pi.total as i64,
            cp.chi0_at(e.d2 as i64),
        ));
    }

    let mut terao = Vec::new();
    if let Some(exps) = free {
        let expected = expand_roots(exps);
        for (i, (got, want)) in cp.chi.iter().zip(expected).enumerate() {
            terao.push(Comparison::eq(
                None,
                &format!("coefficient of t^{}", 3 - i),
                *got,
                want,
            ));
        }
    }

    let mut nearly = Vec::new();
    let lp_one = planes.iter().any(|p| p.lp + lp_shift == 1);
    let mut shape = Vec::new();
    if let Some(pres) = presentation {
        if lp_one {
            let g = &pres.generator_degrees;
            let r = &pres.relation_degrees;
            let nearly_free =
                g.len() == 4 && r.len() == 1 && g[2] == g[3] && r[0] == g[3] + 1 && g.contains(&1);
            nearly.push(Comparison::new(
                None,
                "presentation with LP = 1",
                format!(
                    "generators {} relations {}",
                    multiset_string(g),
                    multiset_string(r)
                ),
                "is",
                "free or nearly free",
                pres.is_free() || nearly_free,
            ));
        }
        shape.push(Comparison::eq(
            None,
            "presentation exponents vs freeness certificate",
            format!("{:?}", pres.exponents()),
            format!("{:?}", free),
        ));
        let gens = pres.generator_degrees.iter().map(|&x| x as i64);
        let rels = pres.relation_degrees.iter().map(|&x| x as i64);
        shape.push(Comparison::eq(
            None,
            "sum of generator degrees minus relation degrees",
            gens.sum::<i64>() - rels.sum::<i64>(),
            size,
        ));
    }

    VerdictReport {
        lp_bound: Verdict::from(lp_bound),
        free_hilbert_series: Verdict::from(hilbert),
        terao_factorization: Verdict::from(terao),
        root_condition: Verdict::from(roots),
        ziegler_surjectivity: Verdict::from(ziegler_surj),
        yoshinaga_criterion: Verdict::from(yoshinaga),
        free_surjection: Verdict::from(fst),
        second_restriction_bound: Verdict::from(second),
        second_restriction_totals: Verdict::from(second_totals),
        ziegler_chain: Verdict::from(chain),
        ziegler_values: Verdict::from(values),
        nearly_free_shape: Verdict::from(nearly),
        euler_kernel: Verdict::from(parts.euler_kernel),
        ziegler_kernel: Verdict::from(parts.ziegler_kernel),
        restriction_exponents: Verdict::from(parts.restriction_exps),
        multiplicity_increment: Verdict::from(parts.increments),
        presentation_shape: Verdict::from(shape),
    }
}

/// The verdicts of [`analyze`] with default options.
pub fn verify_theorems<F: Field>(a: &Arrangement<F>) -> Result<VerdictReport> {
    Ok(analyze(a, &VerifyOptions::default())?.verdicts)
}
