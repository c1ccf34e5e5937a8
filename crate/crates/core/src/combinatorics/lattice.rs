use serde::{Deserialize, Serialize};

use crate::combinatorics::arrangement::{normalize, Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::kernel::field::Field;

/// A rank-two flat: a line through the origin with the planes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFlat<E> {
    /// Normalized direction vector of the line.
    pub direction: [E; 3],
    /// Indices of the planes containing the line, increasing.
    pub planes: Vec<usize>,
    pub mu: i64,
}

/// Intersection lattice of a plane arrangement with its Möbius function.
/// The whole space has `μ = 1`, every plane `μ = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice<E> {
    pub planes: usize,
    pub rank: usize,
    pub lines: Vec<LineFlat<E>>,
    /// Present exactly when the arrangement is essential (rank 3).
    pub origin_mu: Option<i64>,
}

impl<E> FlatLattice<E> {
    pub const HYPERPLANE_MU: i64 = -1;

    /// Checks `Σ_{Y ⊇ X} μ(Y) = 0` at every flat `X ≠ V`.
    pub fn check_mobius(&self) -> Result<()> {
        for line in &self.lines {
            let sum = 1 + Self::HYPERPLANE_MU * line.planes.len() as i64 + line.mu;
            if sum != 0 {
                return Err(Error::Invariant(format!(
                    "Möbius recursion fails at a line through planes {:?}",
                    line.planes
                )));
            }
        }
        if let Some(mu0) = self.origin_mu {
            let sum = 1 - self.planes as i64 + self.line_mu_sum() + mu0;
            if sum != 0 {
                return Err(Error::Invariant(
                    "Möbius recursion fails at the origin".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn line_mu_sum(&self) -> i64 {
        self.lines.iter().map(|l| l.mu).sum()
    }

    /// Multiplicity histogram: `(k, number of lines lying on exactly k planes)`.
    pub fn multiplicity_profile(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for l in &self.lines {
            *counts.entry(l.planes.len()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

fn cross<F: Field>(field: &F, a: &LinearForm<F::Elem>, b: &LinearForm<F::Elem>) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn vanishes<F: Field>(field: &F, form: &LinearForm<F::Elem>, v: &[F::Elem; 3]) -> bool {
    let s = form.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
        field.add(&acc, &field.mul(a, b))
    });
    field.is_zero(&s)
}

pub fn intersection_lattice<F: Field>(a: &Arrangement<F>) -> Result<FlatLattice<F::Elem>> {
    if a.is_empty() {
        return Err(Error::EmptyArrangement);
    }
    let f = a.field();
    let n = a.len();
    let mut covered = vec![vec![false; n]; n];
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i][j] {
                continue;
            }
            let dir = normalize(f, &cross(f, a.form(i), a.form(j)))
                .expect("distinct planes meet in a line");
            let planes: Vec<usize> = (0..n).filter(|&k| vanishes(f, a.form(k), &dir)).collect();
            for (x, &p) in planes.iter().enumerate() {
                for &q in &planes[x + 1..] {
                    covered[p][q] = true;
                }
            }
            let mu = planes.len() as i64 - 1;
            lines.push(LineFlat {
                direction: dir,
                planes,
                mu,
            });
        }
    }
    let rank = a.rank();
    let origin_mu = (rank == 3).then(|| {
        let line_sum: i64 = lines.iter().map(|l| l.mu).sum();
        -(1 - n as i64 + line_sum)
    });
    let lattice = FlatLattice {
        planes: n,
        rank,
        lines,
        origin_mu,
    };
    lattice.check_mobius()?;
    Ok(lattice)
}

/// `χ(A;t) = t^3 - |A| t^2 + c1 t + c0` and its reduction
/// `χ₀(A;t) = χ(A;t)/(t-1) = t^2 - b1 t + b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    /// Coefficients of `t^3, t^2, t, 1`.
    pub chi: [i64; 4],
    pub b1: i64,
    pub b2: i64,
}

impl CharPoly {
    /// `χ₀(s)` in exact integer arithmetic.
    pub fn chi0_at(&self, s: i64) -> i64 {
        s * s - self.b1 * s + self.b2
    }

    pub fn chi_at(&self, s: i64) -> i64 {
        self.chi.iter().fold(0, |acc, c| acc * s + c)
    }

    pub fn discriminant(&self) -> i64 {
        self.b1 * self.b1 - 4 * self.b2
    }

    pub fn format_chi(&self) -> String {
        format_poly_t(&self.chi)
    }

    pub fn format_chi0(&self) -> String {
        format_poly_t(&[1, -self.b1, self.b2])
    }
}

/// `t^3 - 8t^2 + 18t - 11` style rendering, highest power first.
pub fn format_poly_t(coeffs: &[i64]) -> String {
    let deg = coeffs.len() - 1;
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = deg - i;
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if mag != 1 || power == 0 {
            out.push_str(&mag.to_string());
        }
        match power {
            0 => {}
            1 => out.push('t'),
            p => out.push_str(&format!("t^{p}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn char_poly_from_lattice<E>(lattice: &FlatLattice<E>) -> Result<CharPoly> {
    let n = lattice.planes as i64;
    let chi = [1, -n, lattice.line_mu_sum(), lattice.origin_mu.unwrap_or(0)];
    let b1 = n - 1;
    let b2 = -chi[3];
    let cp = CharPoly { chi, b1, b2 };
    if cp.chi_at(1) != 0 || chi[2] != b1 + b2 {
        return Err(Error::Invariant(format!(
            "characteristic polynomial {} is not divisible by t - 1",
            cp.format_chi()
        )));
    }
    Ok(cp)
}

pub fn char_poly<F: Field>(a: &Arrangement<F>) -> Result<CharPoly> {
    char_poly_from_lattice(&intersection_lattice(a)?)
}
