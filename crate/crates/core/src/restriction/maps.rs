use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{
    euler_restriction, lp_from_size, multiplicity_of, Arrangement, CharPoly, Multiplicity,
    RestrictedArrangement,
};
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::poly::{divisible_by_power, monomial_count, HomoPoly};
use crate::logmod::{
    d2_restricted_piece, dm_piece, exponents2, is_multi_logarithmic, pair_index, Derivation2,
    ExponentPair, LogModules,
};

/// Which restriction map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// Euler restriction `D(A) -> D(A^H)`.
    Rho,
    /// Ziegler restriction `D_H(A) -> D(A^H, m^H)`.
    Pi,
    /// Second Euler restriction `D²(A) -> D²(A^H)`.
    Rho2,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::Rho, MapKind::Pi, MapKind::Rho2];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Rho => "rho",
            MapKind::Pi => "pi",
            MapKind::Rho2 => "rho2",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rho" => Ok(MapKind::Rho),
            "pi" => Ok(MapKind::Pi),
            "rho2" => Ok(MapKind::Rho2),
            other => Err(format!("unknown map {other:?}; expected rho, pi or rho2")),
        }
    }
}

/// Everything about one plane `H` that the restriction maps need.
#[derive(Clone, Debug)]
pub struct PlaneContext<E> {
    pub h: usize,
    pub restriction: RestrictedArrangement<E>,
    pub multiplicity: Multiplicity,
    /// `exp(A^H, m^H)`.
    pub ziegler_exponents: ExponentPair,
    pub lp: i64,
}

impl<E> PlaneContext<E> {
    /// `|A^H|`.
    pub fn restricted_size(&self) -> usize {
        self.restriction.len()
    }

    /// Degree from which the image of `kind` provably fills the target once it
    /// fills one degree: the top generator degree of the target module.
    pub fn threshold(&self, kind: MapKind) -> u32 {
        let n = self.restricted_size() as u32;
        match kind {
            MapKind::Rho => n.saturating_sub(1).max(1),
            MapKind::Pi => self.ziegler_exponents.d2,
            MapKind::Rho2 => n,
        }
    }
}

pub fn plane_context<F: Field>(
    a: &Arrangement<F>,
    cp: &CharPoly,
    h: usize,
) -> Result<PlaneContext<F::Elem>> {
    let restriction = euler_restriction(a, h)?;
    let multiplicity = multiplicity_of(&restriction);
    let ziegler_exponents = exponents2(a.field(), &restriction.lines, &multiplicity)?;
    let lp = lp_from_size(cp, h, restriction.len())?;
    Ok(PlaneContext {
        h,
        restriction,
        multiplicity,
        ziegler_exponents,
        lp,
    })
}

/// Image of one restriction map in one degree.
#[derive(Clone, Debug)]
pub struct DegreeImage<E> {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Reduced basis of the image.
    pub image: Vec<Vec<E>>,
    pub cokernel: usize,
}

impl<E> DegreeImage<E> {
    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.image.len()
    }
}

fn apply_blocks<F: Field>(
    field: &F,
    r: &Matrix<F::Elem>,
    v: &[F::Elem],
    blocks: &[usize],
) -> Vec<F::Elem> {
    let n = r.cols();
    blocks
        .iter()
        .flat_map(|&b| r.mul_vec(field, &v[b * n..(b + 1) * n]))
        .collect()
}

/// Computes the image of `kind` in degree `d` and its cokernel inside the
/// target piece, re-verifying membership of every image vector.
pub fn image_in_degree<F: Field>(
    lm: &mut LogModules<'_, F>,
    ctx: &PlaneContext<F::Elem>,
    kind: MapKind,
    d: u32,
) -> Result<DegreeImage<F::Elem>> {
    let field = lm.field().clone();
    let h = ctx.h;
    let kept = lm.chart(h).kept;
    let r = lm.restrictor(h, d);
    let lines = &ctx.restriction.lines;
    let (source, blocks, target) = match kind {
        MapKind::Rho => (
            lm.d_piece(d),
            kept.to_vec(),
            dm_piece(&field, lines, &Multiplicity::simple(lines.len()), d)?,
        ),
        MapKind::Pi => (
            lm.dh_piece(h, d),
            kept.to_vec(),
            dm_piece(&field, lines, &ctx.multiplicity, d)?,
        ),
        MapKind::Rho2 => (
            lm.d2_piece(d),
            vec![pair_index(kept[0], kept[1])],
            d2_restricted_piece(&field, lines, d)?,
        ),
    };
    let images: Vec<Vec<F::Elem>> = source
        .basis
        .iter()
        .map(|v| apply_blocks(&field, &r, v, &blocks))
        .collect();

    for v in &images {
        let member = match kind {
            MapKind::Rho => is_multi_logarithmic(
                &field,
                lines,
                &Multiplicity::simple(lines.len()),
                &Derivation2::from_vector(d, v),
            )?,
            MapKind::Pi => is_multi_logarithmic(
                &field,
                lines,
                &ctx.multiplicity,
                &Derivation2::from_vector(d, v),
            )?,
            MapKind::Rho2 => {
                let q = HomoPoly::from_coeffs(2, d, v.clone());
                lines
                    .iter()
                    .map(|l| divisible_by_power(&field, &q, l, 1))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b)
            }
        };
        if !member {
            return Err(Error::Invariant(format!(
                "{kind} image at hyperplane {h}, degree {d} leaves the target module"
            )));
        }
    }

    let dim = blocks.len() * monomial_count(2, d);
    let image = linalg::row_basis(&field, dim, images);
    // image ⊆ target was checked above, so the quotient is the cokernel
    let cokernel = linalg::quotient_dim(&field, dim, &target.basis, &image);
    if cokernel + image.len() != target.dim() {
        return Err(Error::Invariant(format!(
            "{kind} image at hyperplane {h}, degree {d} is not inside the target span"
        )));
    }
    Ok(DegreeImage {
        degree: d,
        source_dim: source.dim(),
        target_dim: target.dim(),
        image,
        cokernel,
    })
}

fn image_for<F: Field>(
    a: &Arrangement<F>,
    h: usize,
    d: u32,
    kind: MapKind,
) -> Result<Vec<Vec<F::Elem>>> {
    let cp = crate::combinatorics::char_poly(a)?;
    let ctx = plane_context(a, &cp, h)?;
    let mut lm = LogModules::new(a);
    Ok(image_in_degree(&mut lm, &ctx, kind, d)?.image)
}

/// `ρ^H(D(A)_d)` in `D(A^H)_d` coordinates (the `∂u, ∂v` layout).
pub fn rho_image<F: Field>(a: &Arrangement<F>, h: usize, d: u32) -> Result<Vec<Vec<F::Elem>>> {
    image_for(a, h, d, MapKind::Rho)
}

/// `π^H(D_H(A)_d)` in `D(A^H, m^H)_d` coordinates.
pub fn pi_image<F: Field>(a: &Arrangement<F>, h: usize, d: u32) -> Result<Vec<Vec<F::Elem>>> {
    image_for(a, h, d, MapKind::Pi)
}

/// `ρ₂^H(D²(A)_d)` as coefficient vectors of `q` in `q ∂u∧∂v`.
pub fn rho2_image<F: Field>(a: &Arrangement<F>, h: usize, d: u32) -> Result<Vec<Vec<F::Elem>>> {
    image_for(a, h, d, MapKind::Rho2)
}
