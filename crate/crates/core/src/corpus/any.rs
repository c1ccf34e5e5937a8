use std::fmt;

use crate::combinatorics::{char_poly, Arrangement, CharPoly};
use crate::error::{Error, Result};
use crate::kernel::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::logmod::{default_cap, presentation, PresentationReport};
use crate::restriction::{
    analyze, attach_saito_basis, coker_report, freeness, Analysis, CokernelReport,
    FreenessCertificate, MapKind, VerifyOptions,
};

/// An arrangement over whichever field its input named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyArrangement {
    Rational(Arrangement<Rationals>),
    Prime(Arrangement<PrimeField>),
}

macro_rules! dispatch {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            AnyArrangement::Rational($a) => $body,
            AnyArrangement::Prime($a) => $body,
        }
    };
}
pub(crate) use dispatch;

impl From<Arrangement<Rationals>> for AnyArrangement {
    fn from(a: Arrangement<Rationals>) -> Self {
        AnyArrangement::Rational(a)
    }
}

impl From<Arrangement<PrimeField>> for AnyArrangement {
    fn from(a: Arrangement<PrimeField>) -> Self {
        AnyArrangement::Prime(a)
    }
}

impl AnyArrangement {
    /// Builds from integer coefficients over the described field.
    pub fn from_i64(field: FieldDescriptor, forms: &[[i64; 3]]) -> Result<Self> {
        Ok(match field.kind {
            crate::kernel::field::FieldKind::Rationals => {
                Arrangement::from_i64(Rationals, forms)?.into()
            }
            crate::kernel::field::FieldKind::PrimeField => {
                Arrangement::from_i64(PrimeField::new(field.characteristic)?, forms)?.into()
            }
        })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        dispatch!(self, a => a.field().descriptor())
    }

    pub fn len(&self) -> usize {
        dispatch!(self, a => a.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        dispatch!(self, a => a.rank())
    }

    pub fn display_form(&self, h: usize) -> String {
        dispatch!(self, a => a.display_form(h))
    }

    /// Canonical coefficient strings of every normalized form.
    pub fn form_strings(&self) -> Vec<[String; 3]> {
        dispatch!(self, a => a
            .forms()
            .iter()
            .map(|f| std::array::from_fn(|k| a.field().render(&f[k])))
            .collect())
    }

    /// Resolves a plane given either as an index or as its displayed form,
    /// ignoring whitespace.
    pub fn resolve_hyperplane(&self, spec: &str) -> Result<usize> {
        if let Ok(h) = spec.trim().parse::<usize>() {
            dispatch!(self, a => a.check_index(h))?;
            return Ok(h);
        }
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let wanted = squash(spec);
        (0..self.len())
            .find(|&h| squash(&self.display_form(h)) == wanted)
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("no plane {spec:?} in {self}"),
            })
    }

    pub fn default_cap(&self) -> u32 {
        dispatch!(self, a => default_cap(a))
    }

    pub fn char_poly(&self) -> Result<CharPoly> {
        dispatch!(self, a => char_poly(a))
    }

    pub fn analyze(&self, opts: &VerifyOptions) -> Result<Analysis> {
        dispatch!(self, a => analyze(a, opts))
    }

    pub fn coker(&self, kind: MapKind, h: usize, cap: Option<u32>) -> Result<CokernelReport> {
        dispatch!(self, a => {
            a.check_index(h)?;
            coker_report(kind, a, h, cap)
        })
    }

    /// Freeness, with a Saito basis attached when `saito_cap` is given.
    pub fn freeness(&self, saito_cap: Option<u32>) -> Result<FreenessCertificate> {
        dispatch!(self, a => {
            let mut cert = freeness(a)?;
            if let Some(cap) = saito_cap {
                attach_saito_basis(a, &mut cert, cap)?;
            }
            Ok(cert)
        })
    }

    pub fn presentation(&self, cap: Option<u32>) -> Result<PresentationReport> {
        dispatch!(self, a => presentation(a, cap.unwrap_or_else(|| default_cap(a))))
    }
}

impl fmt::Display for AnyArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        dispatch!(self, a => fmt::Display::fmt(a, f))
    }
}
