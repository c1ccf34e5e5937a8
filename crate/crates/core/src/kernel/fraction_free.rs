//! Reduced row echelon form over the rationals by integer elimination.
//!
//! Each row is kept as a primitive integer vector (a rational multiple of the
//! true row) so the inner loop multiplies and subtracts machine-sized big
//! integers without a gcd per entry. Rows are divided by their pivots only at
//! the end. The result is the unique reduced echelon form, identical to the
//! one produced by rational Gauss-Jordan elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::kernel::linalg::{Matrix, Rref};

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for x in row.iter_mut().filter(|x| !x.is_zero()) {
        *x /= &g;
    }
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn rref_rational(m: &Matrix<BigRational>) -> Rref<BigRational> {
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut rows: Vec<Vec<BigInt>> = (0..nrows).map(|r| integer_row(m.row(r))).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == nrows {
            break;
        }
        // smallest pivot keeps the multipliers small
        let Some(p) = (next..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].bits())
        else {
            continue;
        };
        rows.swap(next, p);
        let (head, tail) = rows.split_at_mut(next);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let pv = pivot_row[col].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let scale = &pv / &g;
            let factor = &row[col] / &g;
            let unit = scale.is_one();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if !unit && !x.is_zero() {
                    *x *= &scale;
                }
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            make_primitive(row);
        }
        pivots.push(col);
        next += 1;
    }

    let zero = BigRational::zero();
    let mut reduced = Matrix::filled(nrows, ncols, zero);
    for (i, &pc) in pivots.iter().enumerate() {
        let mut pv = rows[i][pc].clone();
        let mut row = std::mem::take(&mut rows[i]);
        if pv.is_negative() {
            pv = -pv;
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let out = reduced.row_mut(i);
        for (c, x) in row.into_iter().enumerate() {
            if !x.is_zero() {
                out[c] = BigRational::new(x, pv.clone());
            }
        }
    }
    Rref {
        rank: pivots.len(),
        reduced,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::{Field, Rationals};
    use crate::kernel::linalg::gauss_jordan;
    use proptest::prelude::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mixed_denominators() {
        let m = Matrix::from_rows(
            3,
            vec![
                vec![frac(1, 2), frac(1, 3), frac(0, 1)],
                vec![frac(2, 3), frac(0, 1), frac(-5, 7)],
            ],
        );
        assert_eq!(rref_rational(&m), gauss_jordan(&Rationals, &m));
    }

    proptest! {
        #[test]
        fn agrees_with_rational_gauss_jordan(
            entries in proptest::collection::vec((-9i64..=9, 1i64..=4), 35),
            zero_mask in proptest::collection::vec(0u8..3, 35),
        ) {
            let q = Rationals;
            let rows: Vec<Vec<BigRational>> = entries
                .chunks(7)
                .zip(zero_mask.chunks(7))
                .map(|(c, z)| {
                    c.iter()
                        .zip(z)
                        .map(|(&(n, d), &zm)| if zm == 0 { q.zero() } else { frac(n, d) })
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(7, rows);
            prop_assert_eq!(rref_rational(&m), gauss_jordan(&q, &m));
        }
    }
}
