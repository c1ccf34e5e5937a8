use serde::Serialize;

use crate::combinatorics::Multiplicity;
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::logmod::pieces::dm_piece;

/// Exponents `(d1, d2)` of a free rank-two module, `d1 <= d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentPair {
    pub d1: u32,
    pub d2: u32,
}

impl ExponentPair {
    /// Hilbert function `dim M_d` of `S(-d1) ⊕ S(-d2)` in two variables.
    pub fn hilbert(&self, d: u32) -> usize {
        let part = |e: u32| if d >= e { (d - e + 1) as usize } else { 0 };
        part(self.d1) + part(self.d2)
    }
}

/// Exponents of `D(B, m)` for lines `B` in two variables.
///
/// `d1` is the least degree with a nonzero piece and `d2 = |m| - d1`. The
/// Hilbert function is then checked against the pattern of a free module with
/// these exponents up to degree `|m| + 2`.
pub fn exponents2<F: Field>(
    field: &F,
    lines: &[[F::Elem; 2]],
    m: &Multiplicity,
) -> Result<ExponentPair> {
    let total = m.total();
    if lines.is_empty() || total == 0 {
        return Err(Error::EmptyRestriction);
    }
    let mut dims = Vec::new();
    let mut d1 = None;
    for d in 0..=total {
        let dim = dm_piece(field, lines, m, d)?.dim();
        dims.push(dim);
        if dim > 0 {
            d1 = Some(d);
            break;
        }
    }
    let d1 = d1.ok_or(Error::HilbertPatternViolation {
        degree: total,
        got: 0,
        expected: 1,
    })?;
    if 2 * d1 > total {
        return Err(Error::HilbertPatternViolation {
            degree: d1,
            got: dims[d1 as usize],
            expected: 0,
        });
    }
    let pair = ExponentPair { d1, d2: total - d1 };
    for d in 0..=total + 2 {
        let got = match dims.get(d as usize) {
            Some(&g) => g,
            None => dm_piece(field, lines, m, d)?.dim(),
        };
        let expected = pair.hilbert(d);
        if got != expected {
            return Err(Error::HilbertPatternViolation {
                degree: d,
                got,
                expected,
            });
        }
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::{PrimeField, Rationals};

    fn lines<F: Field>(f: &F, raw: &[[i64; 2]]) -> Vec<[F::Elem; 2]> {
        raw.iter().map(|l| l.map(|c| f.from_i64(c))).collect()
    }

    #[test]
    fn simple_lines_have_exponents_one_and_k_minus_one() {
        let f = Rationals;
        for k in 1..6i64 {
            let raw: Vec<[i64; 2]> = (0..k)
                .map(|i| if i == 0 { [0, 1] } else { [1, i] })
                .collect();
            let e = exponents2(&f, &lines(&f, &raw), &Multiplicity::simple(k as usize)).unwrap();
            if k == 1 {
                assert_eq!(e, ExponentPair { d1: 0, d2: 1 });
            } else {
                assert_eq!(
                    e,
                    ExponentPair {
                        d1: 1,
                        d2: k as u32 - 1
                    }
                );
            }
        }
    }

    #[test]
    fn balanced_triple_multiplicities() {
        let f = Rationals;
        let l = lines(&f, &[[0, 1], [1, -1], [1, 0]]);
        let e = exponents2(
            &f,
            &l,
            &Multiplicity {
                values: vec![2, 2, 2],
            },
        )
        .unwrap();
        assert_eq!(e, ExponentPair { d1: 3, d2: 3 });
        let e = exponents2(
            &f,
            &l,
            &Multiplicity {
                values: vec![1, 1, 5],
            },
        )
        .unwrap();
        assert_eq!(e, ExponentPair { d1: 2, d2: 5 });
        let e = exponents2(
            &f,
            &l,
            &Multiplicity {
                values: vec![1, 1, 1],
            },
        )
        .unwrap();
        assert_eq!(e, ExponentPair { d1: 1, d2: 2 });
    }

    #[test]
    fn prime_field_agrees_with_rationals_for_small_data() {
        let p = PrimeField::new(101).unwrap();
        let q = Rationals;
        let raw = [[0, 1], [1, 0], [1, 1], [1, 3]];
        let m = Multiplicity {
            values: vec![3, 1, 2, 1],
        };
        assert_eq!(
            exponents2(&p, &lines(&p, &raw), &m).unwrap(),
            exponents2(&q, &lines(&q, &raw), &m).unwrap()
        );
    }

    #[test]
    fn empty_input_is_rejected() {
        let f = Rationals;
        assert!(exponents2(&f, &[], &Multiplicity { values: vec![] }).is_err());
    }
}
