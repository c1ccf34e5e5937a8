use crate::combinatorics::Arrangement;
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::poly::HomoPoly;
use crate::logmod::derivation::Derivation3;
use crate::logmod::pieces::is_logarithmic;

/// `det [θ_i(x_j)]`.
pub fn coefficient_determinant<F: Field>(
    field: &F,
    thetas: &[Derivation3<F::Elem>; 3],
) -> HomoPoly<F::Elem> {
    let m = |i: usize, j: usize| &thetas[i].components[j];
    let minor = |j: usize, k: usize| {
        m(1, j)
            .mul(field, m(2, k))
            .sub(field, &m(1, k).mul(field, m(2, j)))
    };
    m(0, 0)
        .mul(field, &minor(1, 2))
        .sub(field, &m(0, 1).mul(field, &minor(0, 2)))
        .add(field, &m(0, 2).mul(field, &minor(0, 1)))
}

/// Saito's criterion: three logarithmic fields form a basis of `D(A)` iff
/// their coefficient determinant is a nonzero multiple of `Q(A)`.
///
/// Returns `Error::NotLogarithmic` naming the first field that is not in
/// `D(A)`.
pub fn saito_check<F: Field>(
    a: &Arrangement<F>,
    thetas: &[Derivation3<F::Elem>; 3],
) -> Result<(bool, Option<F::Elem>)> {
    for (index, t) in thetas.iter().enumerate() {
        if !is_logarithmic(a, t) {
            return Err(Error::NotLogarithmic { index });
        }
    }
    let f = a.field();
    let det = coefficient_determinant(f, thetas);
    let q = a.defining_polynomial();
    if det.is_zero(f) || det.degree() != q.degree() {
        return Ok((false, None));
    }
    let lead = q
        .coeffs()
        .iter()
        .position(|c| !f.is_zero(c))
        .expect("defining polynomial is nonzero");
    let c = f
        .div(&det.coeffs()[lead], &q.coeffs()[lead])
        .expect("nonzero divisor");
    if !f.is_zero(&c) && q.scale(f, &c) == det {
        Ok((true, Some(c)))
    } else {
        Ok((false, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::Rationals;

    fn x(i: usize) -> HomoPoly<num_rational::BigRational> {
        let mut e = [0u32; 3];
        e[i] = 1;
        HomoPoly::monomial(&Rationals, 3, e)
    }

    #[test]
    fn coordinate_fields_for_the_boolean_arrangement() {
        let f = Rationals;
        let a = Arrangement::from_i64(f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let zero = HomoPoly::zero(&f, 3, 1);
        let thetas = std::array::from_fn(|i| {
            let mut c = [zero.clone(), zero.clone(), zero.clone()];
            c[i] = x(i);
            Derivation3::new(c)
        });
        assert_eq!(saito_check(&a, &thetas).unwrap(), (true, Some(f.one())));
        // replacing one generator by a multiple of another loses the basis
        let mut bad = thetas.clone();
        bad[2] = bad[1].clone();
        assert_eq!(saito_check(&a, &bad).unwrap(), (false, None));
    }

    #[test]
    fn non_logarithmic_field_is_reported() {
        let f = Rationals;
        let a = Arrangement::from_i64(f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let zero = HomoPoly::zero(&f, 3, 1);
        let e = Derivation3::euler(&f);
        let bad = Derivation3::new([x(1), zero.clone(), zero.clone()]);
        let err = saito_check(&a, &[e.clone(), e, bad]).unwrap_err();
        assert_eq!(err, Error::NotLogarithmic { index: 2 });
    }
}
