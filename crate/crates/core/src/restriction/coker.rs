use serde::Serialize;

use crate::combinatorics::{char_poly, Arrangement};
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::logmod::{default_cap, LogModules};
use crate::restriction::maps::{image_in_degree, plane_context, MapKind, PlaneContext};

/// Source, kernel and cokernel dimensions of one map in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub kernel_dim: usize,
    pub cokernel: usize,
}

/// Graded cokernel dimensions of a restriction map, with the degree from
/// which the image provably fills the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelReport {
    pub kind: MapKind,
    pub h: usize,
    /// `(degree, dim coker)` from degree 0 through the certificate degree.
    pub per_degree: Vec<(u32, usize)>,
    pub total: usize,
    pub certificate_degree: u32,
    pub stabilized: bool,
    pub lp: i64,
    #[serde(skip)]
    pub records: Vec<DegreeRecord>,
}

impl CokernelReport {
    /// Dimension in degree `d`, zero past the certificate.
    pub fn dim_at(&self, d: u32) -> usize {
        self.per_degree
            .iter()
            .find(|(deg, _)| *deg == d)
            .map_or(0, |(_, c)| *c)
    }

    /// Per-degree dimensions as a dense vector indexed by degree, trimmed of
    /// trailing zeros.
    pub fn profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.per_degree.iter().map(|(_, c)| *c).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// Scans degrees upward until the image is full at some degree at or above
/// the threshold, then confirms the next degree too.
pub fn coker_with<F: Field>(
    lm: &mut LogModules<'_, F>,
    ctx: &PlaneContext<F::Elem>,
    kind: MapKind,
    cap: u32,
) -> Result<CokernelReport> {
    let threshold = ctx.threshold(kind);
    let mut records = Vec::new();
    let mut certificate = None;
    for d in 0..=cap {
        let img = image_in_degree(lm, ctx, kind, d)?;
        records.push(DegreeRecord {
            degree: d,
            source_dim: img.source_dim,
            target_dim: img.target_dim,
            kernel_dim: img.kernel_dim(),
            cokernel: img.cokernel,
        });
        if d >= threshold && img.cokernel == 0 {
            certificate = Some(d);
            break;
        }
    }
    let stabilization_failure = || Error::StabilizationNotReached {
        kind: kind.name().to_string(),
        h: ctx.h,
        cap,
    };
    let certificate_degree = certificate.ok_or_else(stabilization_failure)?;
    let next = image_in_degree(lm, ctx, kind, certificate_degree + 1)?;
    if next.cokernel != 0 {
        return Err(Error::Invariant(format!(
            "{kind} image at hyperplane {} full in degree {certificate_degree} but not in the next",
            ctx.h
        )));
    }
    let per_degree: Vec<(u32, usize)> = records.iter().map(|r| (r.degree, r.cokernel)).collect();
    Ok(CokernelReport {
        kind,
        h: ctx.h,
        total: per_degree.iter().map(|(_, c)| c).sum(),
        per_degree,
        certificate_degree,
        stabilized: true,
        lp: ctx.lp,
        records,
    })
}

/// Cokernel report for one map and one plane; `cap` defaults to `2|A| + 4`.
pub fn coker_report<F: Field>(
    kind: MapKind,
    a: &Arrangement<F>,
    h: usize,
    cap: Option<u32>,
) -> Result<CokernelReport> {
    let cp = char_poly(a)?;
    let ctx = plane_context(a, &cp, h)?;
    let mut lm = LogModules::new(a);
    coker_with(&mut lm, &ctx, kind, cap.unwrap_or_else(|| default_cap(a)))
}

/// `b₂⁰ - d₁ d₂` from the Ziegler exponents.
pub fn yoshinaga_value<E>(cp: &crate::combinatorics::CharPoly, ctx: &PlaneContext<E>) -> i64 {
    let e = ctx.ziegler_exponents;
    cp.chi0_at(0) - e.d1 as i64 * e.d2 as i64
}

/// `dim coker π^H` by the combinatorial formula, cross-checked against the
/// direct computation.
pub fn yoshinaga_dim<F: Field>(a: &Arrangement<F>, h: usize) -> Result<i64> {
    let cp = char_poly(a)?;
    let ctx = plane_context(a, &cp, h)?;
    let value = yoshinaga_value(&cp, &ctx);
    let mut lm = LogModules::new(a);
    let direct = coker_with(&mut lm, &ctx, MapKind::Pi, default_cap(a))?;
    if direct.total as i64 != value {
        return Err(Error::Invariant(format!(
            "cokernel of pi at hyperplane {h}: direct total {} but formula gives {value}",
            direct.total
        )));
    }
    Ok(value)
}
