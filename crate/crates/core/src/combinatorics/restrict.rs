use crate::combinatorics::arrangement::{normalize, Arrangement};
use crate::combinatorics::lattice::CharPoly;
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::Matrix;

/// Coordinates adapted to one plane `H`.
///
/// With `j` the position of the leading coefficient of `α_H` and `k < l`
/// the other two positions, the new coordinates are `(α_H, x_k, x_l)`.
/// On `H` itself we write `u = x_k`, `v = x_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart<E> {
    /// Rows `α_H`, `e_k`, `e_l`.
    pub matrix: Matrix<E>,
    pub pivot: usize,
    pub kept: [usize; 2],
    /// `x_i` restricted to `H`, as linear forms in `(u, v)`.
    pub param: Vec<Vec<E>>,
}

impl<E: Clone> Chart<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, alpha: &[E; 3]) -> Result<Self> {
        let pivot = alpha
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or(Error::ZeroForm)?;
        let kept: [usize; 2] = match pivot {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let mut matrix = Matrix::zeros(field, 3, 3);
        for c in 0..3 {
            matrix[(0, c)] = alpha[c].clone();
        }
        matrix[(1, kept[0])] = field.one();
        matrix[(2, kept[1])] = field.one();

        let inv = field.inv(&alpha[pivot]).expect("nonzero");
        let mut param = vec![vec![field.zero(), field.zero()]; 3];
        // α_H = 0 on H: x_j = -(α_k u + α_l v) / α_j
        param[pivot] = vec![
            field.neg(&field.mul(&alpha[kept[0]], &inv)),
            field.neg(&field.mul(&alpha[kept[1]], &inv)),
        ];
        param[kept[0]] = vec![field.one(), field.zero()];
        param[kept[1]] = vec![field.zero(), field.one()];
        Ok(Chart {
            matrix,
            pivot,
            kept,
            param,
        })
    }

    /// Restriction of a linear form to `H`, in `(u, v)` coordinates.
    pub fn restrict_form<F: Field<Elem = E>>(&self, field: &F, beta: &[E; 3]) -> [E; 2] {
        std::array::from_fn(|t| {
            (0..3).fold(field.zero(), |acc, i| {
                field.add(&acc, &field.mul(&beta[i], &self.param[i][t]))
            })
        })
    }
}

/// The Euler restriction `A^H`: distinct lines cut on `H` by the other planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedArrangement<E> {
    pub source_h: usize,
    pub chart: Chart<E>,
    /// Normalized binary forms, sorted.
    pub lines: Vec<[E; 2]>,
    /// For each line, the planes of `A \ {H}` restricting to it.
    pub preimages: Vec<Vec<usize>>,
}

impl<E> RestrictedArrangement<E> {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Positive multiplicity per line of a restricted arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity {
    pub values: Vec<u32>,
}

impl Multiplicity {
    pub fn total(&self) -> u32 {
        self.values.iter().sum()
    }

    /// `m + δ_X`.
    pub fn incremented(&self, line: usize) -> Multiplicity {
        let mut values = self.values.clone();
        values[line] += 1;
        Multiplicity { values }
    }

    pub fn simple(lines: usize) -> Multiplicity {
        Multiplicity {
            values: vec![1; lines],
        }
    }
}

pub fn euler_restriction<F: Field>(
    a: &Arrangement<F>,
    h: usize,
) -> Result<RestrictedArrangement<F::Elem>> {
    a.check_index(h)?;
    if a.len() < 2 {
        return Err(Error::EmptyRestriction);
    }
    let f = a.field();
    let chart = Chart::new(f, a.form(h))?;
    let mut images: Vec<([F::Elem; 2], usize)> = (0..a.len())
        .filter(|&k| k != h)
        .map(|k| {
            let line = normalize(f, &chart.restrict_form(f, a.form(k)))
                .expect("distinct planes restrict to a nonzero form");
            (line, k)
        })
        .collect();
    images.sort();
    let mut lines: Vec<[F::Elem; 2]> = Vec::new();
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    for (line, k) in images {
        if lines.last() == Some(&line) {
            preimages.last_mut().expect("nonempty").push(k);
        } else {
            lines.push(line);
            preimages.push(vec![k]);
        }
    }
    Ok(RestrictedArrangement {
        source_h: h,
        chart,
        lines,
        preimages,
    })
}

/// Ziegler multiplicity `m^H`, in the order of the restricted lines.
pub fn ziegler_multiplicity<F: Field>(a: &Arrangement<F>, h: usize) -> Result<Multiplicity> {
    Ok(multiplicity_of(&euler_restriction(a, h)?))
}

pub fn multiplicity_of<E>(r: &RestrictedArrangement<E>) -> Multiplicity {
    Multiplicity {
        values: r.preimages.iter().map(|p| p.len() as u32).collect(),
    }
}

/// `LP(A, H) = χ₀(A; |A^H| - 1)`.
pub fn lp_invariant<F: Field>(a: &Arrangement<F>, cp: &CharPoly, h: usize) -> Result<i64> {
    let r = euler_restriction(a, h)?;
    lp_from_size(cp, h, r.len())
}

pub fn lp_from_size(cp: &CharPoly, h: usize, restricted: usize) -> Result<i64> {
    let value = cp.chi0_at(restricted as i64 - 1);
    if value < 0 {
        return Err(Error::NegativeLp { h, value });
    }
    Ok(value)
}
