//! Dense homogeneous polynomials in two or three variables.
//!
//! Coefficients of a degree-`d` form are stored in graded-lexicographic
//! order with `x1 > x2 > x3`: for three variables the monomial
//! `x1^a x2^b x3^c` sits at index `(d-a)(d-a+1)/2 + c`; for two variables
//! `u^a v^b` sits at index `b`.

use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::{self, Matrix};

pub fn monomial_count(nvars: usize, degree: u32) -> usize {
    let d = degree as usize;
    match nvars {
        2 => d + 1,
        3 => (d + 1) * (d + 2) / 2,
        _ => panic!("only 2 or 3 variables are supported"),
    }
}

/// Exponent vectors of degree `degree`, in storage order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<[u32; 3]> {
    let d = degree;
    match nvars {
        2 => (0..=d).map(|b| [d - b, b, 0]).collect(),
        3 => {
            let mut out = Vec::with_capacity(monomial_count(3, d));
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a, b, d - a - b]);
                }
            }
            out
        }
        _ => panic!("only 2 or 3 variables are supported"),
    }
}

pub fn monomial_index(nvars: usize, exps: [u32; 3]) -> usize {
    match nvars {
        2 => exps[1] as usize,
        3 => {
            let d = (exps[0] + exps[1] + exps[2]) as usize;
            let a = exps[0] as usize;
            (d - a) * (d - a + 1) / 2 + exps[2] as usize
        }
        _ => panic!("only 2 or 3 variables are supported"),
    }
}

/// Homogeneous polynomial of a fixed formal degree. The zero polynomial of
/// any degree is representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomoPoly<E> {
    nvars: usize,
    degree: u32,
    coeffs: Vec<E>,
}

impl<E: Clone> HomoPoly<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, nvars: usize, degree: u32) -> Self {
        HomoPoly {
            nvars,
            degree,
            coeffs: vec![field.zero(); monomial_count(nvars, degree)],
        }
    }

    pub fn from_coeffs(nvars: usize, degree: u32, coeffs: Vec<E>) -> Self {
        assert_eq!(
            coeffs.len(),
            monomial_count(nvars, degree),
            "coefficient vector length does not match degree"
        );
        HomoPoly {
            nvars,
            degree,
            coeffs,
        }
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[E]) -> Self {
        Self::from_coeffs(coeffs.len(), 1, coeffs.to_vec())
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, nvars: usize, c: E) -> Self {
        let _ = field;
        Self::from_coeffs(nvars, 0, vec![c])
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, nvars: usize, exps: [u32; 3]) -> Self {
        let degree = exps.iter().sum();
        let mut p = Self::zero(field, nvars, degree);
        p.coeffs[monomial_index(nvars, exps)] = field.one();
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff(&self, exps: [u32; 3]) -> &E {
        &self.coeffs[monomial_index(self.nvars, exps)]
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| field.add(a, b))
            .collect();
        HomoPoly { coeffs, ..*self }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| field.sub(a, b))
            .collect();
        HomoPoly { coeffs, ..*self }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let coeffs = self.coeffs.iter().map(|a| field.mul(a, c)).collect();
        HomoPoly { coeffs, ..*self }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(field, self.nvars, self.degree + other.degree);
        let lhs = monomials(self.nvars, self.degree);
        let rhs = monomials(other.nvars, other.degree);
        for (ea, a) in lhs.iter().zip(&self.coeffs) {
            if field.is_zero(a) {
                continue;
            }
            for (eb, b) in rhs.iter().zip(&other.coeffs) {
                if field.is_zero(b) {
                    continue;
                }
                let idx = monomial_index(self.nvars, [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                let prod = field.mul(a, b);
                out.coeffs[idx] = field.add(&out.coeffs[idx], &prod);
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, k: u32) -> Self {
        let mut acc = Self::constant(field, self.nvars, field.one());
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> E {
        assert_eq!(point.len(), self.nvars);
        let mut acc = field.zero();
        for (e, c) in monomials(self.nvars, self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            let mut term = c.clone();
            for (v, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    term = field.mul(&term, v);
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// Substitutes `x_i := forms[i]`, each form a linear form in
    /// `target_vars` variables given by its coefficient vector.
    pub fn substitute<F: Field<Elem = E>>(
        &self,
        field: &F,
        forms: &[Vec<E>],
        target_vars: usize,
    ) -> Self {
        assert_eq!(forms.len(), self.nvars);
        let powers = LinearPowers::new(field, forms, target_vars, self.degree);
        let mut out = Self::zero(field, target_vars, self.degree);
        for (e, c) in monomials(self.nvars, self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            let image = powers.monomial(field, *e);
            for (o, t) in out.coeffs.iter_mut().zip(&image.coeffs) {
                if !field.is_zero(t) {
                    *o = field.add(o, &field.mul(c, t));
                }
            }
        }
        out
    }
}

/// Powers `l_i^k` of a tuple of linear forms, for expanding monomials under a
/// linear substitution.
pub(crate) struct LinearPowers<E> {
    target_vars: usize,
    powers: Vec<Vec<HomoPoly<E>>>,
}

impl<E: Clone> LinearPowers<E> {
    pub(crate) fn new<F: Field<Elem = E>>(
        field: &F,
        forms: &[Vec<E>],
        target_vars: usize,
        max_degree: u32,
    ) -> Self {
        let powers = forms
            .iter()
            .map(|form| {
                assert_eq!(form.len(), target_vars);
                let l = HomoPoly::linear(form);
                let mut ps = vec![HomoPoly::constant(field, target_vars, field.one())];
                for k in 1..=max_degree as usize {
                    let next = ps[k - 1].mul(field, &l);
                    ps.push(next);
                }
                ps
            })
            .collect();
        LinearPowers {
            target_vars,
            powers,
        }
    }

    pub(crate) fn monomial<F: Field<Elem = E>>(&self, field: &F, exps: [u32; 3]) -> HomoPoly<E> {
        let mut acc = HomoPoly::constant(field, self.target_vars, field.one());
        for (ps, &k) in self.powers.iter().zip(exps.iter()) {
            if k > 0 {
                acc = acc.mul(field, &ps[k as usize]);
            }
        }
        acc
    }
}

/// Matrix of the linear map `S_d -> T_d` induced by `x_i := forms[i]`.
/// Column `j` holds the image of the `j`-th source monomial.
pub fn substitution_matrix<F: Field>(
    field: &F,
    source_vars: usize,
    degree: u32,
    forms: &[Vec<F::Elem>],
    target_vars: usize,
) -> Matrix<F::Elem> {
    assert_eq!(forms.len(), source_vars);
    let powers = LinearPowers::new(field, forms, target_vars, degree);
    let source = monomials(source_vars, degree);
    let mut m = Matrix::zeros(field, monomial_count(target_vars, degree), source.len());
    for (j, e) in source.iter().enumerate() {
        let image = powers.monomial(field, *e);
        for (i, c) in image.coeffs.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    m
}

/// `p(T x)` for an invertible 3x3 matrix `T`.
pub fn poly_linear_change<F: Field>(
    field: &F,
    p: &HomoPoly<F::Elem>,
    t: &Matrix<F::Elem>,
) -> Result<HomoPoly<F::Elem>> {
    assert_eq!(p.nvars(), 3, "linear change is defined for three variables");
    assert_eq!((t.rows(), t.cols()), (3, 3));
    if linalg::rref(field, t).rank < 3 {
        return Err(Error::SingularChart);
    }
    let forms: Vec<Vec<F::Elem>> = (0..3).map(|i| t.row(i).to_vec()).collect();
    Ok(p.substitute(field, &forms, 3))
}

/// Linear conditions on the coefficients of a binary form `p` of degree
/// `degree` expressing divisibility by `ell^m`.
///
/// Coordinates are changed so that `ell` becomes the first variable `u'`;
/// the returned rows are the functionals reading off the coefficients of
/// `u'^0, ..., u'^(min(m, degree+1)-1)` of the transformed polynomial.
pub fn divisibility_functionals<F: Field>(
    field: &F,
    degree: u32,
    ell: &[F::Elem; 2],
    m: u32,
) -> Result<Matrix<F::Elem>> {
    // u' = ell, v' = the remaining coordinate. Express (u, v) through (u', v').
    let (u_img, v_img) = if !field.is_zero(&ell[0]) {
        let inv = field.inv(&ell[0]).expect("nonzero");
        // u = (u' - c2 v') / c1, v = v'
        (
            vec![inv.clone(), field.neg(&field.mul(&ell[1], &inv))],
            vec![field.zero(), field.one()],
        )
    } else if !field.is_zero(&ell[1]) {
        let inv = field.inv(&ell[1]).expect("nonzero");
        // ell = c2 v, so v = u' / c2 and u = v'
        (vec![field.zero(), field.one()], vec![inv, field.zero()])
    } else {
        return Err(Error::ZeroForm);
    };
    let change = substitution_matrix(field, 2, degree, &[u_img, v_img], 2);
    // In two variables, row i of `change` is the coefficient of u'^(d-i) v'^i.
    let k = m.min(degree + 1);
    let rows = (0..k)
        .map(|power| change.row((degree - power) as usize).to_vec())
        .collect();
    Ok(Matrix::from_rows(monomial_count(2, degree), rows))
}

/// Whether the binary form `p` is divisible by `ell^m`, together with the
/// conditions that decide it.
pub fn power_divisibility_conditions<F: Field>(
    field: &F,
    p: &HomoPoly<F::Elem>,
    ell: &[F::Elem; 2],
    m: u32,
) -> Result<(bool, Matrix<F::Elem>)> {
    assert_eq!(p.nvars(), 2, "divisibility conditions are for binary forms");
    let conditions = divisibility_functionals(field, p.degree(), ell, m)?;
    let divisible = conditions
        .mul_vec(field, p.coeffs())
        .iter()
        .all(|c| field.is_zero(c));
    Ok((divisible, conditions))
}

/// Exact division `p / ell` by a linear form in the same variables; `None`
/// when the remainder is nonzero.
///
/// Eliminates the leading variable of `ell` from `p` term by term, highest
/// power first.
pub fn divide_by_linear<F: Field>(
    field: &F,
    p: &HomoPoly<F::Elem>,
    ell: &[F::Elem],
) -> Result<Option<HomoPoly<F::Elem>>> {
    let n = p.nvars();
    assert_eq!(ell.len(), n);
    let j = ell
        .iter()
        .position(|c| !field.is_zero(c))
        .ok_or(Error::ZeroForm)?;
    let lead_inv = field.inv(&ell[j]).expect("nonzero");
    let d = p.degree();
    if d == 0 {
        return Ok(p.is_zero(field).then(|| p.clone()));
    }
    let mut rem = p.clone();
    let mut quot = HomoPoly::zero(field, n, d - 1);
    let mons = monomials(n, d);
    for e in (1..=d).rev() {
        for m in mons.iter().filter(|m| m[j] == e) {
            let c = rem.coeffs[monomial_index(n, *m)].clone();
            if field.is_zero(&c) {
                continue;
            }
            let mut t = *m;
            t[j] -= 1;
            let qc = field.mul(&c, &lead_inv);
            let qi = monomial_index(n, t);
            quot.coeffs[qi] = field.add(&quot.coeffs[qi], &qc);
            for (i, li) in ell.iter().enumerate() {
                if field.is_zero(li) {
                    continue;
                }
                let mut s = t;
                s[i] += 1;
                let si = monomial_index(n, s);
                rem.coeffs[si] = field.sub(&rem.coeffs[si], &field.mul(li, &qc));
            }
        }
    }
    Ok(rem.is_zero(field).then_some(quot))
}

/// Whether `ell^m` divides `p`, by repeated exact division.
pub fn divisible_by_power<F: Field>(
    field: &F,
    p: &HomoPoly<F::Elem>,
    ell: &[F::Elem],
    m: u32,
) -> Result<bool> {
    if p.is_zero(field) {
        return Ok(true);
    }
    let mut cur = p.clone();
    for _ in 0..m {
        if cur.degree() == 0 {
            return Ok(false);
        }
        match divide_by_linear(field, &cur, ell)? {
            Some(q) => cur = q,
            None => return Ok(false),
        }
    }
    Ok(true)
}
