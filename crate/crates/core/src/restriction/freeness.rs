use serde::Serialize;

use crate::combinatorics::{char_poly, Arrangement, CharPoly};
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::logmod::{minimal_generators, saito_check};
use crate::restriction::maps::{plane_context, PlaneContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotFreeWitness {
    pub h: usize,
    pub b2_0: i64,
    pub d1d2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free { exponents: [u32; 3] },
    NotFree { witnesses: Vec<NotFreeWitness> },
}

/// A basis derivation as its degree and rendered coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub degree: u32,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    #[serde(flatten)]
    pub verdict: FreenessVerdict,
    pub checked_h: Vec<usize>,
    /// Explicit basis passing Saito's criterion, when one was searched for
    /// and found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saito_basis: Option<Vec<BasisElement>>,
    pub saito_checked: bool,
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, FreenessVerdict::Free { .. })
    }

    pub fn exponents(&self) -> Option<[u32; 3]> {
        match self.verdict {
            FreenessVerdict::Free { exponents } => Some(exponents),
            FreenessVerdict::NotFree { .. } => None,
        }
    }
}

/// `(1, d1, d2)` sorted.
fn sorted_exponents(d1: u32, d2: u32) -> [u32; 3] {
    let mut e = [1, d1, d2];
    e.sort_unstable();
    e
}

/// Freeness from the Ziegler exponents of the given planes: free exactly
/// when `χ₀(A; 0) = d₁ d₂`.
pub fn freeness_from_contexts<E>(
    cp: &CharPoly,
    contexts: &[PlaneContext<E>],
) -> Result<FreenessCertificate> {
    let b2_0 = cp.chi0_at(0);
    let mut free = None;
    let mut witnesses = Vec::new();
    for ctx in contexts {
        let e = ctx.ziegler_exponents;
        let d1d2 = e.d1 as i64 * e.d2 as i64;
        let this = (b2_0 == d1d2).then(|| sorted_exponents(e.d1, e.d2));
        match (&free, &this) {
            (None, _) => free = Some(this),
            (Some(prev), cur) if prev != cur => {
                return Err(Error::InconsistentVerdicts(format!(
                    "hyperplane {} gives {:?}, an earlier one gave {:?}",
                    ctx.h, cur, prev
                )))
            }
            _ => {}
        }
        if this.is_none() {
            witnesses.push(NotFreeWitness {
                h: ctx.h,
                b2_0,
                d1d2,
            });
        }
    }
    let verdict = match free.flatten() {
        Some(exponents) => FreenessVerdict::Free { exponents },
        None => FreenessVerdict::NotFree { witnesses },
    };
    Ok(FreenessCertificate {
        verdict,
        checked_h: contexts.iter().map(|c| c.h).collect(),
        saito_basis: None,
        saito_checked: false,
    })
}

/// Freeness decided at every plane.
pub fn freeness<F: Field>(a: &Arrangement<F>) -> Result<FreenessCertificate> {
    let cp = char_poly(a)?;
    let contexts = (0..a.len())
        .map(|h| plane_context(a, &cp, h))
        .collect::<Result<Vec<_>>>()?;
    freeness_from_contexts(&cp, &contexts)
}

/// Freeness decided at a single plane, enough for deletions in bulk checks.
pub fn freeness_at<F: Field>(a: &Arrangement<F>, h: usize) -> Result<FreenessCertificate> {
    let cp = char_poly(a)?;
    freeness_from_contexts(&cp, &[plane_context(a, &cp, h)?])
}

/// Adds an explicit Saito basis to a free certificate when the minimal
/// generators up to `cap` provide one. Failure to find one leaves the
/// certificate as it was.
pub fn attach_saito_basis<F: Field>(
    a: &Arrangement<F>,
    cert: &mut FreenessCertificate,
    cap: u32,
) -> Result<()> {
    let Some(exps) = cert.exponents() else {
        return Ok(());
    };
    let Ok(gens) = minimal_generators(a, cap) else {
        return Ok(());
    };
    cert.saito_checked = true;
    if gens.degrees.len() != 3 || gens.degrees[..] != exps[..] {
        return Ok(());
    }
    let triple = [
        gens.reps[0].clone(),
        gens.reps[1].clone(),
        gens.reps[2].clone(),
    ];
    if !saito_check(a, &triple)?.0 {
        return Err(Error::Invariant(
            "free generators fail the determinant criterion".into(),
        ));
    }
    let field = a.field();
    cert.saito_basis = Some(
        triple
            .iter()
            .map(|t| BasisElement {
                degree: t.degree(),
                coefficients: t.to_vector().iter().map(|c| field.render(c)).collect(),
            })
            .collect(),
    );
    Ok(())
}
