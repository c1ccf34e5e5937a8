//! Homogeneous derivations and bivector fields with a flat coefficient
//! vector layout shared by every graded piece.
//!
//! A degree-`d` derivation of three variables is stored as the concatenation
//! of the coefficient vectors of its `∂x1, ∂x2, ∂x3` components. Bivector
//! fields use the component order `∂1∧∂2, ∂1∧∂3, ∂2∧∂3`. Two-variable
//! derivations store the `∂u, ∂v` components.

use crate::kernel::field::Field;
use crate::kernel::poly::{monomial_count, HomoPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation3<E> {
    pub components: [HomoPoly<E>; 3],
}

impl<E: Clone> Derivation3<E> {
    pub fn new(components: [HomoPoly<E>; 3]) -> Self {
        let d = components[0].degree();
        assert!(
            components.iter().all(|c| c.degree() == d && c.nvars() == 3),
            "components must share one degree"
        );
        Derivation3 { components }
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn euler<F: Field<Elem = E>>(field: &F) -> Self {
        Self::new(std::array::from_fn(|i| {
            let mut e = [0u32; 3];
            e[i] = 1;
            HomoPoly::monomial(field, 3, e)
        }))
    }

    pub fn from_vector(degree: u32, v: &[E]) -> Self {
        let n = monomial_count(3, degree);
        assert_eq!(v.len(), 3 * n);
        Self::new(std::array::from_fn(|i| {
            HomoPoly::from_coeffs(3, degree, v[i * n..(i + 1) * n].to_vec())
        }))
    }

    pub fn to_vector(&self) -> Vec<E> {
        self.components
            .iter()
            .flat_map(|c| c.coeffs().iter().cloned())
            .collect()
    }

    /// `θ(f)` for a linear form `f`.
    pub fn apply_linear<F: Field<Elem = E>>(&self, field: &F, form: &[E]) -> HomoPoly<E> {
        let mut acc = HomoPoly::zero(field, 3, self.degree());
        for (c, p) in form.iter().zip(&self.components) {
            if !field.is_zero(c) {
                acc = acc.add(field, &p.scale(field, c));
            }
        }
        acc
    }

    pub fn scale_by<F: Field<Elem = E>>(&self, field: &F, p: &HomoPoly<E>) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].mul(field, p)))
    }

    pub fn wedge<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> BiDerivation3<E> {
        let (a, b) = (&self.components, &other.components);
        let m = |i: usize, j: usize| a[i].mul(field, &b[j]).sub(field, &a[j].mul(field, &b[i]));
        BiDerivation3::new([m(0, 1), m(0, 2), m(1, 2)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation2<E> {
    pub components: [HomoPoly<E>; 2],
}

impl<E: Clone> Derivation2<E> {
    pub fn new(components: [HomoPoly<E>; 2]) -> Self {
        assert_eq!(components[0].degree(), components[1].degree());
        Derivation2 { components }
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn from_vector(degree: u32, v: &[E]) -> Self {
        let n = monomial_count(2, degree);
        assert_eq!(v.len(), 2 * n);
        Self::new([
            HomoPoly::from_coeffs(2, degree, v[..n].to_vec()),
            HomoPoly::from_coeffs(2, degree, v[n..].to_vec()),
        ])
    }

    pub fn to_vector(&self) -> Vec<E> {
        self.components
            .iter()
            .flat_map(|c| c.coeffs().iter().cloned())
            .collect()
    }

    pub fn apply_linear<F: Field<Elem = E>>(&self, field: &F, form: &[E; 2]) -> HomoPoly<E> {
        self.components[0]
            .scale(field, &form[0])
            .add(field, &self.components[1].scale(field, &form[1]))
    }

    /// Coefficient of `∂u∧∂v` in `self ∧ other`.
    pub fn wedge<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> HomoPoly<E> {
        let (a, b) = (&self.components, &other.components);
        a[0].mul(field, &b[1]).sub(field, &a[1].mul(field, &b[0]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiDerivation3<E> {
    /// Coefficients of `∂1∧∂2`, `∂1∧∂3`, `∂2∧∂3`.
    pub components: [HomoPoly<E>; 3],
}

/// Position of `∂i∧∂j` (`i < j`) in the component order.
pub fn pair_index(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => panic!("pair ({i}, {j}) is not increasing"),
    }
}

impl<E: Clone> BiDerivation3<E> {
    pub fn new(components: [HomoPoly<E>; 3]) -> Self {
        let d = components[0].degree();
        assert!(components.iter().all(|c| c.degree() == d));
        BiDerivation3 { components }
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn from_vector(degree: u32, v: &[E]) -> Self {
        let n = monomial_count(3, degree);
        assert_eq!(v.len(), 3 * n);
        Self::new(std::array::from_fn(|i| {
            HomoPoly::from_coeffs(3, degree, v[i * n..(i + 1) * n].to_vec())
        }))
    }

    pub fn to_vector(&self) -> Vec<E> {
        self.components
            .iter()
            .flat_map(|c| c.coeffs().iter().cloned())
            .collect()
    }

    /// `θ(f, g) = Σ_{i<j} p_ij (∂_i f ∂_j g - ∂_j f ∂_i g)` for linear `f, g`.
    pub fn apply_linear<F: Field<Elem = E>>(&self, field: &F, f: &[E], g: &[E]) -> HomoPoly<E> {
        let mut acc = HomoPoly::zero(field, 3, self.degree());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let c = field.sub(&field.mul(&f[i], &g[j]), &field.mul(&f[j], &g[i]));
            if !field.is_zero(&c) {
                acc = acc.add(field, &self.components[pair_index(i, j)].scale(field, &c));
            }
        }
        acc
    }
}
