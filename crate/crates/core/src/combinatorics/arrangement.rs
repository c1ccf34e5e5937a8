use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::poly::HomoPoly;

/// Coefficient triple of a linear form `a x + b y + c z`.
pub type LinearForm<E> = [E; 3];

/// Scales a nonzero vector so that its first nonzero entry is one.
pub fn normalize<F: Field, const N: usize>(field: &F, v: &[F::Elem; N]) -> Result<[F::Elem; N]> {
    let lead = v
        .iter()
        .find(|c| !field.is_zero(c))
        .ok_or(Error::ZeroForm)?;
    let inv = field.inv(lead).expect("nonzero");
    Ok(std::array::from_fn(|i| field.mul(&v[i], &inv)))
}

/// A simple central arrangement of planes in three-space: pairwise
/// non-proportional normalized forms, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement<F: Field> {
    field: F,
    forms: Vec<LinearForm<F::Elem>>,
}

impl<F: Field> Arrangement<F> {
    /// Normalizes and sorts `forms`, rejecting zero and proportional pairs.
    /// Indices in errors refer to positions in `forms`.
    pub fn new(field: F, forms: Vec<LinearForm<F::Elem>>) -> Result<Self> {
        let mut normalized: Vec<(LinearForm<F::Elem>, usize)> = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            normalized.push((normalize(&field, f)?, i));
        }
        normalized.sort();
        for w in normalized.windows(2) {
            if w[0].0 == w[1].0 {
                let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(Error::DuplicateHyperplane {
                    first: a,
                    second: b,
                    lines: None,
                });
            }
        }
        Ok(Arrangement {
            field,
            forms: normalized.into_iter().map(|(f, _)| f).collect(),
        })
    }

    /// Builds from exact rational coefficients, reducing them into `field`.
    /// A form that is nonzero over the rationals but vanishes in the field is
    /// a `BadFieldElement`.
    pub fn from_rationals(field: F, raw: &[[BigRational; 3]]) -> Result<Self> {
        let mut forms = Vec::with_capacity(raw.len());
        for (i, triple) in raw.iter().enumerate() {
            if triple.iter().all(|c| c.is_zero()) {
                return Err(Error::ZeroForm);
            }
            let mut reduced = Vec::with_capacity(3);
            for c in triple {
                reduced.push(field.from_fraction(c.numer(), c.denom())?);
            }
            if reduced.iter().all(|c| field.is_zero(c)) {
                return Err(Error::BadFieldElement(format!(
                    "form {i} vanishes in {}",
                    field.descriptor()
                )));
            }
            forms.push([reduced[0].clone(), reduced[1].clone(), reduced[2].clone()]);
        }
        Self::new(field, forms)
    }

    pub fn from_i64(field: F, raw: &[[i64; 3]]) -> Result<Self> {
        let raw: Vec<[BigRational; 3]> = raw
            .iter()
            .map(|t| t.map(|c| BigRational::from_integer(BigInt::from(c))))
            .collect();
        Self::from_rationals(field, &raw)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn forms(&self) -> &[LinearForm<F::Elem>] {
        &self.forms
    }

    pub fn form(&self, h: usize) -> &LinearForm<F::Elem> {
        &self.forms[h]
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn check_index(&self, h: usize) -> Result<()> {
        if h < self.forms.len() {
            Ok(())
        } else {
            Err(Error::HyperplaneOutOfRange {
                index: h,
                len: self.forms.len(),
            })
        }
    }

    /// Position of a form (after normalization) in this arrangement.
    pub fn index_of(&self, form: &LinearForm<F::Elem>) -> Option<usize> {
        let n = normalize(&self.field, form).ok()?;
        self.forms.iter().position(|f| *f == n)
    }

    /// Rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        let m = Matrix::from_rows(3, self.forms.iter().map(|f| f.to_vec()).collect());
        linalg::rref(&self.field, &m).rank
    }

    /// `A \ {H}`.
    pub fn deletion(&self, h: usize) -> Arrangement<F> {
        let mut forms = self.forms.clone();
        forms.remove(h);
        Arrangement {
            field: self.field.clone(),
            forms,
        }
    }

    /// `A ∪ {H}` for a new form.
    pub fn with_form(&self, form: LinearForm<F::Elem>) -> Result<Arrangement<F>> {
        let mut forms = self.forms.clone();
        forms.push(form);
        Self::new(self.field.clone(), forms)
    }

    pub fn form_poly(&self, h: usize) -> HomoPoly<F::Elem> {
        HomoPoly::linear(&self.forms[h])
    }

    /// Defining polynomial `Q(A)`, the product of the normalized forms.
    pub fn defining_polynomial(&self) -> HomoPoly<F::Elem> {
        let f = &self.field;
        (0..self.len()).fold(HomoPoly::constant(f, 3, f.one()), |acc, h| {
            acc.mul(f, &self.form_poly(h))
        })
    }

    pub fn display_form(&self, h: usize) -> String {
        format_form(&self.field, &self.forms[h], &["x", "y", "z"])
    }
}

/// Human-readable linear form such as `x - y + 2z`.
pub fn format_form<F: Field>(field: &F, coeffs: &[F::Elem], vars: &[&str]) -> String {
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if field.is_zero(c) {
            continue;
        }
        let s = field.render_signed(c);
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            if mag.contains('/') {
                out.push_str(&format!("({mag})"));
            } else {
                out.push_str(&mag);
            }
        }
        out.push_str(v);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for Arrangement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.len())
            .map(|h| format!("({})", self.display_form(h)))
            .collect();
        write!(f, "{} over {}", parts.join(""), self.field.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::{PrimeField, Rationals};

    #[test]
    fn generic_four_planes() {
        let a = Arrangement::from_i64(Rationals, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
            .unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.rank(), 3);
        // sorted lexicographically
        assert_eq!(a.display_form(0), "z");
        assert_eq!(a.display_form(3), "x + y + z");
    }

    #[test]
    fn proportional_forms_are_duplicates() {
        let err = Arrangement::from_i64(Rationals, &[[1, 0, 0], [2, 0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateHyperplane {
                first: 0,
                second: 1,
                lines: None
            }
        );
    }

    #[test]
    fn forms_coincide_in_characteristic_two() {
        let f2 = PrimeField::new(2).unwrap();
        let err = Arrangement::from_i64(f2, &[[1, 1, 0], [1, -1, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateHyperplane {
                first: 0,
                second: 1,
                lines: None
            }
        );
        // the same input is fine over the rationals
        assert!(Arrangement::from_i64(Rationals, &[[1, 1, 0], [1, -1, 0]]).is_ok());
    }

    #[test]
    fn zero_and_vanishing_forms() {
        assert_eq!(
            Arrangement::from_i64(Rationals, &[[0, 0, 0]]).unwrap_err(),
            Error::ZeroForm
        );
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(
            Arrangement::from_i64(f5, &[[5, 10, 0]]).unwrap_err(),
            Error::BadFieldElement(_)
        ));
    }

    #[test]
    fn normalization_makes_leading_one() {
        let a = Arrangement::from_i64(Rationals, &[[0, 2, -4]]).unwrap();
        assert_eq!(a.display_form(0), "y - 2z");
        let f7 = PrimeField::new(7).unwrap();
        let a = Arrangement::from_i64(f7, &[[3, 1, 0]]).unwrap();
        // 3^{-1} = 5 mod 7, so y gets coefficient 5 = -2
        assert_eq!(a.forms()[0], [1, 5, 0]);
        assert_eq!(a.display_form(0), "x - 2y");
    }

    #[test]
    fn defining_polynomial_of_boolean() {
        let a = Arrangement::from_i64(Rationals, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let q = a.defining_polynomial();
        assert_eq!(q.degree(), 3);
        assert_eq!(q, HomoPoly::monomial(&Rationals, 3, [1, 1, 1]));
    }
}
