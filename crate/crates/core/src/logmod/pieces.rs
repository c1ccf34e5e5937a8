//! Graded pieces of `D(A)`, `D_H(A)`, `D²(A)` and of the two-variable
//! modules `D(A^H)`, `D(A^H, m)`, `D²(A^H)`, each computed as one nullspace.
//!
//! Membership along a plane `H` is tested in the chart of `H`: a polynomial
//! lies in `S α_H` exactly when its restriction to `H` (the substitution of
//! the chart parametrization) vanishes.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::combinatorics::{Arrangement, Chart, Multiplicity, RestrictedArrangement};
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::poly::{
    divisibility_functionals, divisible_by_power, monomial_count, monomial_index, monomials,
    substitution_matrix, HomoPoly,
};
use crate::logmod::derivation::{pair_index, BiDerivation3, Derivation2, Derivation3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleTag {
    /// `D(A)`
    Log,
    /// `D_H(A)` for the plane with this index.
    LogH(usize),
    /// `D²(A)`
    Log2,
    /// `D(A^H)`
    Restricted,
    /// `D(A^H, m)`
    Multi,
    /// `D²(A^H)`
    Restricted2,
}

/// Basis of one graded piece, as coefficient vectors in the layout of
/// [`crate::logmod::derivation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieceBasis<E> {
    pub module: ModuleTag,
    pub degree: u32,
    /// Length of every basis vector.
    pub ambient: usize,
    pub basis: Vec<Vec<E>>,
}

impl<E> GradedPieceBasis<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn solve<F: Field>(
    field: &F,
    module: ModuleTag,
    degree: u32,
    conditions: Matrix<F::Elem>,
) -> GradedPieceBasis<F::Elem> {
    let ambient = conditions.cols();
    GradedPieceBasis {
        module,
        degree,
        ambient,
        basis: linalg::nullspace(field, &conditions),
    }
}

/// Places `block * coeff` into columns `offset..offset+block.cols()`.
fn put_block<F: Field>(
    field: &F,
    target: &mut Matrix<F::Elem>,
    row0: usize,
    col0: usize,
    block: &Matrix<F::Elem>,
    coeff: &F::Elem,
) {
    if field.is_zero(coeff) {
        return;
    }
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = &block[(r, c)];
            if !field.is_zero(v) {
                target[(row0 + r, col0 + c)] = field.mul(v, coeff);
            }
        }
    }
}

/// Multiplies each `stride`-sized polynomial block of `v` (degree `degree`
/// in `nvars` variables) by the variable `var`.
pub(crate) fn shift_by_variable<F: Field>(
    field: &F,
    nvars: usize,
    degree: u32,
    blocks: usize,
    v: &[F::Elem],
    var: usize,
) -> Vec<F::Elem> {
    let src = monomial_count(nvars, degree);
    let dst = monomial_count(nvars, degree + 1);
    assert_eq!(v.len(), blocks * src);
    let mut out = vec![field.zero(); blocks * dst];
    let mons = monomials(nvars, degree);
    for b in 0..blocks {
        for (i, e) in mons.iter().enumerate() {
            let c = &v[b * src + i];
            if field.is_zero(c) {
                continue;
            }
            let mut e2 = *e;
            e2[var] += 1;
            out[b * dst + monomial_index(nvars, e2)] = c.clone();
        }
    }
    out
}

/// Per-arrangement workspace caching charts, restriction matrices and the
/// pieces already computed.
pub struct LogModules<'a, F: Field> {
    arr: &'a Arrangement<F>,
    charts: Vec<Chart<F::Elem>>,
    restrictors: HashMap<(usize, u32), Arc<Matrix<F::Elem>>>,
    log: HashMap<u32, Arc<GradedPieceBasis<F::Elem>>>,
    log_h: HashMap<(usize, u32), Arc<GradedPieceBasis<F::Elem>>>,
    log2: HashMap<u32, Arc<GradedPieceBasis<F::Elem>>>,
}

impl<'a, F: Field> LogModules<'a, F> {
    pub fn new(arr: &'a Arrangement<F>) -> Self {
        let charts = arr
            .forms()
            .iter()
            .map(|f| Chart::new(arr.field(), f).expect("normalized forms are nonzero"))
            .collect();
        LogModules {
            arr,
            charts,
            restrictors: HashMap::new(),
            log: HashMap::new(),
            log_h: HashMap::new(),
            log2: HashMap::new(),
        }
    }

    pub fn arrangement(&self) -> &'a Arrangement<F> {
        self.arr
    }

    pub fn field(&self) -> &F {
        self.arr.field()
    }

    pub fn chart(&self, h: usize) -> &Chart<F::Elem> {
        &self.charts[h]
    }

    /// Matrix of `S_d -> S̄_d`, restriction of degree-`d` forms to plane `h`.
    pub fn restrictor(&mut self, h: usize, d: u32) -> Arc<Matrix<F::Elem>> {
        if let Some(m) = self.restrictors.get(&(h, d)) {
            return m.clone();
        }
        let m = Arc::new(substitution_matrix(
            self.arr.field(),
            3,
            d,
            &self.charts[h].param,
            2,
        ));
        self.restrictors.insert((h, d), m.clone());
        m
    }

    fn log_conditions(&mut self, d: u32) -> Matrix<F::Elem> {
        let n = monomial_count(3, d);
        let rows_per = (d + 1) as usize;
        let planes = self.arr.len();
        let mut m = Matrix::zeros(self.arr.field(), planes * rows_per, 3 * n);
        for h in 0..planes {
            let r = self.restrictor(h, d);
            let alpha = self.arr.form(h).clone();
            for (i, a) in alpha.iter().enumerate() {
                put_block(self.arr.field(), &mut m, h * rows_per, i * n, &r, a);
            }
        }
        m
    }

    /// `D(A)_d`.
    pub fn d_piece(&mut self, d: u32) -> Arc<GradedPieceBasis<F::Elem>> {
        if let Some(p) = self.log.get(&d) {
            return p.clone();
        }
        let cond = self.log_conditions(d);
        let piece = Arc::new(solve(self.arr.field(), ModuleTag::Log, d, cond));
        self.log.insert(d, piece.clone());
        piece
    }

    /// `D_H(A)_d`: logarithmic with `θ(α_H) = 0` exactly.
    ///
    /// The constraint is solved for the pivot block of `α_H` (whose
    /// coefficient is one), leaving the two other blocks as unknowns; the
    /// condition along `H` itself then holds identically.
    pub fn dh_piece(&mut self, h: usize, d: u32) -> Arc<GradedPieceBasis<F::Elem>> {
        if let Some(p) = self.log_h.get(&(h, d)) {
            return p.clone();
        }
        let f = self.arr.field().clone();
        let n = monomial_count(3, d);
        let rows_per = (d + 1) as usize;
        let alpha = self.arr.form(h).clone();
        let j = alpha
            .iter()
            .position(|c| !f.is_zero(c))
            .expect("normalized forms are nonzero");
        let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
        let planes: Vec<usize> = (0..self.arr.len()).filter(|&k| k != h).collect();
        let mut cond = Matrix::zeros(&f, planes.len() * rows_per, 2 * n);
        for (row, &k) in planes.iter().enumerate() {
            let r = self.restrictor(k, d);
            let beta = self.arr.form(k).clone();
            for (slot, &i) in others.iter().enumerate() {
                let c = f.sub(&beta[i], &f.mul(&beta[j], &alpha[i]));
                put_block(&f, &mut cond, row * rows_per, slot * n, &r, &c);
            }
        }
        let basis = linalg::nullspace(&f, &cond)
            .into_iter()
            .map(|w| {
                let mut v = vec![f.zero(); 3 * n];
                for (slot, &i) in others.iter().enumerate() {
                    let block = &w[slot * n..(slot + 1) * n];
                    v[i * n..(i + 1) * n].clone_from_slice(block);
                    for (t, x) in v[j * n..(j + 1) * n].iter_mut().zip(block) {
                        f.sub_mul_assign(t, &alpha[i], x);
                    }
                }
                v
            })
            .collect();
        let piece = Arc::new(GradedPieceBasis {
            module: ModuleTag::LogH(h),
            degree: d,
            ambient: 3 * n,
            basis,
        });
        self.log_h.insert((h, d), piece.clone());
        piece
    }

    /// `D²(A)_d`: bivector fields with `θ(α_H, x_k) ∈ S α_H` for all `H, k`.
    pub fn d2_piece(&mut self, d: u32) -> Arc<GradedPieceBasis<F::Elem>> {
        if let Some(p) = self.log2.get(&d) {
            return p.clone();
        }
        let f = self.arr.field().clone();
        let n = monomial_count(3, d);
        let rows_per = (d + 1) as usize;
        let planes = self.arr.len();
        let mut m = Matrix::zeros(&f, planes * 2 * rows_per, 3 * n);
        for h in 0..planes {
            let r = self.restrictor(h, d);
            let a = self.arr.form(h).clone();
            // Σ_k a_k θ(α, x_k) = θ(α, α) = 0 and the pivot coefficient is
            // one, so the condition for the pivot coordinate is implied.
            let pivot = a.iter().position(|c| !f.is_zero(c)).expect("nonzero form");
            for (slot, k) in (0..3).filter(|&k| k != pivot).enumerate() {
                // θ(α, x_k) = Σ_{i<j} p_ij (a_i δ_jk - a_j δ_ik)
                let row0 = (h * 2 + slot) * rows_per;
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    let mut c = f.zero();
                    if j == k {
                        c = f.add(&c, &a[i]);
                    }
                    if i == k {
                        c = f.sub(&c, &a[j]);
                    }
                    put_block(&f, &mut m, row0, pair_index(i, j) * n, &r, &c);
                }
            }
        }
        let piece = Arc::new(solve(&f, ModuleTag::Log2, d, m));
        self.log2.insert(d, piece.clone());
        piece
    }
}

/// `D(A)_d` for a one-off query.
pub fn d_piece<F: Field>(a: &Arrangement<F>, d: u32) -> GradedPieceBasis<F::Elem> {
    (*LogModules::new(a).d_piece(d)).clone()
}

pub fn dh_piece<F: Field>(
    a: &Arrangement<F>,
    h: usize,
    d: u32,
) -> Result<GradedPieceBasis<F::Elem>> {
    a.check_index(h)?;
    Ok((*LogModules::new(a).dh_piece(h, d)).clone())
}

pub fn d2_piece<F: Field>(a: &Arrangement<F>, d: u32) -> GradedPieceBasis<F::Elem> {
    (*LogModules::new(a).d2_piece(d)).clone()
}

/// `D(B, m)_d` for a two-variable arrangement `B` with multiplicity `m`.
pub fn dm_piece<F: Field>(
    field: &F,
    lines: &[[F::Elem; 2]],
    m: &Multiplicity,
    d: u32,
) -> Result<GradedPieceBasis<F::Elem>> {
    assert_eq!(lines.len(), m.values.len(), "one multiplicity per line");
    if m.values.contains(&0) {
        return Err(Error::Invariant("multiplicities must be positive".into()));
    }
    let n = monomial_count(2, d);
    let mut cond = Matrix::zeros(field, 0, 2 * n);
    for (line, &mult) in lines.iter().zip(&m.values) {
        let fun = divisibility_functionals(field, d, line, mult)?;
        let mut block = Matrix::zeros(field, fun.rows(), 2 * n);
        put_block(field, &mut block, 0, 0, &fun, &line[0]);
        put_block(field, &mut block, 0, n, &fun, &line[1]);
        cond.stack(&block);
    }
    let simple = m.values.iter().all(|&v| v == 1);
    let tag = if simple {
        ModuleTag::Restricted
    } else {
        ModuleTag::Multi
    };
    let piece = solve(field, tag, d, cond);
    debug_assert!(piece.basis.iter().all(|v| {
        is_multi_logarithmic(field, lines, m, &Derivation2::from_vector(d, v)).unwrap_or(false)
    }));
    Ok(piece)
}

/// `D(A^H)_d`.
pub fn restricted_piece<F: Field>(
    field: &F,
    r: &RestrictedArrangement<F::Elem>,
    d: u32,
) -> Result<GradedPieceBasis<F::Elem>> {
    dm_piece(field, &r.lines, &Multiplicity::simple(r.len()), d)
}

/// `D²(B)_d` for a two-variable arrangement: multiples `q ∂u∧∂v` with
/// `q (∂u β ∂v f - ∂v β ∂u f) ∈ (β)` for every line `β` and `f ∈ {u, v}`.
pub fn d2_restricted_piece<F: Field>(
    field: &F,
    lines: &[[F::Elem; 2]],
    d: u32,
) -> Result<GradedPieceBasis<F::Elem>> {
    let n = monomial_count(2, d);
    let mut cond = Matrix::zeros(field, 0, n);
    for line in lines {
        let fun = divisibility_functionals(field, d, line, 1)?;
        // f = u gives -c2 q, f = v gives c1 q
        for c in [field.neg(&line[1]), line[0].clone()] {
            let mut block = Matrix::zeros(field, fun.rows(), n);
            put_block(field, &mut block, 0, 0, &fun, &c);
            cond.stack(&block);
        }
    }
    Ok(solve(field, ModuleTag::Restricted2, d, cond))
}

/// `θ ∈ D(A)`, checked by exact division of each `θ(α_H)` by `α_H`.
pub fn is_logarithmic<F: Field>(a: &Arrangement<F>, theta: &Derivation3<F::Elem>) -> bool {
    let f = a.field();
    a.forms().iter().all(|alpha| {
        divisible_by_power(f, &theta.apply_linear(f, alpha), alpha, 1).expect("nonzero form")
    })
}

pub fn is_in_dh<F: Field>(a: &Arrangement<F>, h: usize, theta: &Derivation3<F::Elem>) -> bool {
    is_logarithmic(a, theta) && theta.apply_linear(a.field(), a.form(h)).is_zero(a.field())
}

pub fn is_bi_logarithmic<F: Field>(a: &Arrangement<F>, theta: &BiDerivation3<F::Elem>) -> bool {
    let f = a.field();
    let unit = |k: usize| -> Vec<F::Elem> {
        (0..3)
            .map(|i| if i == k { f.one() } else { f.zero() })
            .collect()
    };
    a.forms().iter().all(|alpha| {
        (0..3).all(|k| {
            divisible_by_power(f, &theta.apply_linear(f, alpha, &unit(k)), alpha, 1)
                .expect("nonzero form")
        })
    })
}

pub fn is_multi_logarithmic<F: Field>(
    field: &F,
    lines: &[[F::Elem; 2]],
    m: &Multiplicity,
    theta: &Derivation2<F::Elem>,
) -> Result<bool> {
    for (line, &mult) in lines.iter().zip(&m.values) {
        if !divisible_by_power(field, &theta.apply_linear(field, line), line, mult)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ρ^H(θ)` in the chart of `H`: the `x_k, x_l` components restricted to `H`.
pub fn restrict_derivation<F: Field>(
    field: &F,
    chart: &Chart<F::Elem>,
    theta: &Derivation3<F::Elem>,
) -> Derivation2<F::Elem> {
    Derivation2::new(std::array::from_fn(|t| {
        theta.components[chart.kept[t]].substitute(field, &chart.param, 2)
    }))
}

/// `ρ₂^H(θ)`: the coefficient of `∂u∧∂v`.
pub fn restrict_bivector<F: Field>(
    field: &F,
    chart: &Chart<F::Elem>,
    theta: &BiDerivation3<F::Elem>,
) -> HomoPoly<F::Elem> {
    theta.components[pair_index(chart.kept[0], chart.kept[1])].substitute(field, &chart.param, 2)
}
