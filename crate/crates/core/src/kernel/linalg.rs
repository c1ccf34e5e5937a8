//! Dense exact linear algebra: reduced row echelon form, nullspaces and
//! subspace quotients.

use crate::kernel::field::Field;

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &Matrix<E>) {
        assert_eq!(self.cols, other.cols, "column mismatch");
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        assert_eq!(row.len(), self.cols, "column mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix<E> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = field.mul(a, &other[(k, c)]);
                    out[(r, c)] = field.add(&out[(r, c)], &prod);
                }
            }
        }
        out
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (r, c): (usize, usize)) -> &E {
        &self.data[r * self.cols + c]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        &mut self.data[r * self.cols + c]
    }
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if field.is_zero(x) || field.is_zero(y) {
            continue;
        }
        acc = field.add(&acc, &field.mul(x, y));
    }
    acc
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub rank: usize,
    /// Same shape as the input; rows past `rank` are zero.
    pub reduced: Matrix<E>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form, by whichever exact method the field prefers.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    field.row_reduce(m)
}

/// Gauss-Jordan elimination to reduced row echelon form. The pivot in each
/// column is the first nonzero entry at or below the current row.
pub fn gauss_jordan<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !field.is_zero(&a[(r, col)])) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        if !field.is_one(&inv) {
            for c in col..a.cols {
                a[(row, c)] = field.mul(&a[(row, c)], &inv);
            }
        }
        let pivot_row: Vec<F::Elem> = a.row(row)[col..].to_vec();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a[(r, col)].clone();
            if field.is_zero(&factor) {
                continue;
            }
            let target = &mut a.row_mut(r)[col..];
            for (t, pv) in target.iter_mut().zip(&pivot_row) {
                if !field.is_zero(pv) {
                    field.sub_mul_assign(t, &factor, pv);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        rank: pivots.len(),
        reduced: a,
        pivots,
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    row_basis(field, m.cols(), m.to_rows()).len()
}

/// Basis of `{v : M v = 0}`, one vector per non-pivot column in increasing
/// column order.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let r = rref(field, m);
    nullspace_from_rref(field, &r, m.cols())
}

pub(crate) fn nullspace_from_rref<F: Field>(
    field: &F,
    r: &Rref<F::Elem>,
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &p) in r.pivots.iter().enumerate() {
                let entry = &r.reduced[(i, free)];
                if !field.is_zero(entry) {
                    v[p] = field.neg(entry);
                }
            }
            v
        })
        .collect()
}

/// Reduced row basis of the span of `vectors` (each of length `dim`).
pub fn row_basis<F: Field>(field: &F, dim: usize, vectors: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let r = rref(field, &Matrix::from_rows(dim, vectors));
    let mut rows = r.reduced.to_rows();
    rows.truncate(r.rank);
    rows
}

/// `dim((span U + span W) / span W)`.
pub fn quotient_dim<F: Field>(
    field: &F,
    dim: usize,
    u: &[Vec<F::Elem>],
    w: &[Vec<F::Elem>],
) -> usize {
    let base = rref(field, &Matrix::from_rows(dim, w.to_vec())).rank;
    let mut both = w.to_vec();
    both.extend_from_slice(u);
    rref(field, &Matrix::from_rows(dim, both)).rank - base
}

/// Indices of the candidates that are not in the span of `base` and the
/// candidates before them.
pub fn independent_extension<F: Field>(
    field: &F,
    dim: usize,
    base: &[Vec<F::Elem>],
    candidates: &[Vec<F::Elem>],
) -> Vec<usize> {
    if candidates.is_empty() {
        return Vec::new();
    }
    let mut columns = base.to_vec();
    columns.extend_from_slice(candidates);
    let m = Matrix::from_rows(dim, columns).transpose();
    rref(field, &m)
        .pivots
        .into_iter()
        .filter(|&c| c >= base.len())
        .map(|c| c - base.len())
        .collect()
}

/// Incrementally maintained echelon form: rows are kept fully reduced against
/// each other so membership tests are one reduction pass.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    dim: usize,
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone> Echelon<E> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current rows; returns the remainder.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, mut v: Vec<E>) -> Vec<E> {
        assert_eq!(v.len(), self.dim, "ambient dimension mismatch");
        for (pivot, row) in &self.rows {
            let factor = v[*pivot].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (t, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !field.is_zero(r) {
                    field.sub_mul_assign(t, &factor, r);
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v.to_vec())
            .iter()
            .all(|x| field.is_zero(x))
    }

    /// Adds `v` to the span. Returns true when the rank grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: Vec<E>) -> bool {
        let mut v = self.reduce(field, v);
        let Some(pivot) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[pivot]).expect("nonzero");
        for x in v.iter_mut().skip(pivot) {
            *x = field.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let factor = row[pivot].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (t, r) in row.iter_mut().zip(&v).skip(pivot) {
                if !field.is_zero(r) {
                    field.sub_mul_assign(t, &factor, r);
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q_matrix(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Rank via the largest nonvanishing minor, by cofactor expansion.
    fn minor_rank(m: &[Vec<i64>]) -> usize {
        fn det(m: &[Vec<i64>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            let mut acc = 0i128;
            for c in 0..n {
                let sub: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = m[0][c] as i128 * det(&sub);
                acc += if c % 2 == 0 { term } else { -term };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let rows = m.len();
        let cols = m[0].len();
        for k in (1..=rows.min(cols)).rev() {
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    if det(&sub) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn identity_has_full_rank() {
        let r = rref(&Rationals, &Matrix::identity(&Rationals, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let r = rref(&Rationals, &q_matrix(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn nullspace_of_single_equation() {
        let ns = nullspace(&Rationals, &q_matrix(&[&[1, 1, 1]]));
        assert_eq!(ns.len(), 2);
        let m = q_matrix(&[&[1, 1, 1]]);
        for v in &ns {
            assert!(m
                .mul_vec(&Rationals, v)
                .iter()
                .all(|x| x == &Rationals.zero()));
        }
        assert!(nullspace(&Rationals, &Matrix::identity(&Rationals, 3)).is_empty());
    }

    #[test]
    fn quotient_dim_edge_cases() {
        let q = Rationals;
        let u = vec![vec![q.from_i64(1), q.from_i64(2)]];
        assert_eq!(quotient_dim(&q, 2, &u, &u), 0);
        let e = vec![
            vec![q.from_i64(1), q.from_i64(0)],
            vec![q.from_i64(0), q.from_i64(1)],
        ];
        assert_eq!(quotient_dim(&q, 2, &e, &[]), 2);
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<BigRational> = Matrix::from_rows(3, vec![]);
        assert_eq!(rref(&Rationals, &m).rank, 0);
        assert_eq!(nullspace(&Rationals, &m).len(), 3);
        let m: Matrix<BigRational> = Matrix::from_rows(0, vec![vec![], vec![]]);
        assert!(nullspace(&Rationals, &m).is_empty());
    }

    proptest! {
        #[test]
        fn rank_agrees_with_minor_oracle(entries in proptest::collection::vec(-3i64..=3, 24)) {
            let rows: Vec<Vec<i64>> = entries.chunks(6).map(|c| c.to_vec()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = q_matrix(&refs);
            prop_assert_eq!(rref(&Rationals, &m).rank, minor_rank(&rows));
        }

        #[test]
        fn rank_nullity_and_idempotence(entries in proptest::collection::vec(0u32..7, 30)) {
            let f = PrimeField::new(7).unwrap();
            let rows: Vec<Vec<u32>> = entries.chunks(6).map(|c| c.to_vec()).collect();
            let m = Matrix::from_rows(6, rows);
            let r = rref(&f, &m);
            let ns = nullspace(&f, &m);
            prop_assert_eq!(r.rank + ns.len(), 6);
            for v in &ns {
                prop_assert!(m.mul_vec(&f, v).iter().all(|x| *x == 0));
            }
            prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
            let again = rref(&f, &r.reduced);
            prop_assert_eq!(&again.reduced, &r.reduced);
            prop_assert_eq!(rank(&f, &m), r.rank);
        }

        #[test]
        fn quotient_dim_is_rank_difference(
            u in proptest::collection::vec(-2i64..=2, 12),
            w in proptest::collection::vec(-2i64..=2, 8),
        ) {
            let q = Rationals;
            let to_vecs = |xs: &[i64]| -> Vec<Vec<BigRational>> {
                xs.chunks(4).map(|c| c.iter().map(|&x| q.from_i64(x)).collect()).collect()
            };
            let (uv, wv) = (to_vecs(&u), to_vecs(&w));
            let mut both = wv.clone();
            both.extend(uv.clone());
            let stacked = rref(&q, &Matrix::from_rows(4, both)).rank;
            let alone = rref(&q, &Matrix::from_rows(4, wv.clone())).rank;
            prop_assert_eq!(quotient_dim(&q, 4, &uv, &wv), stacked - alone);
        }
    }
}
