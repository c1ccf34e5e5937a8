//! Minimal generators and first syzygies of `D(A)`.
//!
//! Both are computed degree by degree. Generation and relations are
//! certified through degree `reg + 1`, where `reg = |A| - rank(A) + 1` bounds
//! the Castelnuovo-Mumford regularity of `D(A)`: no minimal generator lives
//! above `reg` and no minimal relation above `reg + 1`.

use serde::Serialize;

use crate::combinatorics::Arrangement;
use crate::error::{Error, Result};
use crate::kernel::field::Field;
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::poly::{monomial_count, monomial_index, monomials};
use crate::logmod::derivation::Derivation3;
use crate::logmod::pieces::{shift_by_variable, LogModules};

/// Minimal homogeneous generators, sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet<E> {
    pub degrees: Vec<u32>,
    pub reps: Vec<Derivation3<E>>,
    /// Degree through which the scan ran.
    pub certified_through: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub generator_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    pub cap: u32,
    /// `|A| - |A^H|` when the report is read against a chosen plane.
    pub level: Option<i64>,
    pub certified_through: u32,
}

impl PresentationReport {
    pub fn is_free(&self) -> bool {
        self.relation_degrees.is_empty() && self.generator_degrees.len() == 3
    }

    /// Exponents `(1, a, b)` when free.
    pub fn exponents(&self) -> Option<[u32; 3]> {
        self.is_free().then(|| {
            let g = &self.generator_degrees;
            [g[0], g[1], g[2]]
        })
    }
}

pub fn default_cap<F: Field>(a: &Arrangement<F>) -> u32 {
    2 * a.len() as u32 + 4
}

/// `|A| - rank(A) + 1`.
pub fn regularity_bound<F: Field>(a: &Arrangement<F>) -> u32 {
    (a.len() + 1 - a.rank()) as u32
}

/// `mu * θ` for a monomial `mu`, in the flat layout of degree `deg + |mu|`.
fn times_monomial<F: Field>(field: &F, v: &[F::Elem], deg: u32, mu: [u32; 3]) -> Vec<F::Elem> {
    let shift = mu.iter().sum::<u32>();
    let src = monomial_count(3, deg);
    let dst = monomial_count(3, deg + shift);
    let mut out = vec![field.zero(); 3 * dst];
    for (i, e) in monomials(3, deg).iter().enumerate() {
        let target = monomial_index(3, [e[0] + mu[0], e[1] + mu[1], e[2] + mu[2]]);
        for b in 0..3 {
            let c = &v[b * src + i];
            if !field.is_zero(c) {
                out[b * dst + target] = c.clone();
            }
        }
    }
    out
}

struct Scan<E> {
    gens: GeneratorSet<E>,
    relations: Vec<u32>,
}

fn bookkeeping_closes(gens: &[u32], relations: &[u32], planes: usize) -> bool {
    let sum = |v: &[u32]| v.iter().map(|&x| x as i64).sum::<i64>();
    gens.len() as i64 - relations.len() as i64 == 3 && sum(gens) - sum(relations) == planes as i64
}

fn scan<F: Field>(
    lm: &mut LogModules<'_, F>,
    cap: u32,
    fixed: Option<&GeneratorSet<F::Elem>>,
) -> Result<Scan<F::Elem>> {
    let a = lm.arrangement();
    let field = a.field().clone();
    let stop = regularity_bound(a) + 1;
    if cap < stop {
        return Err(Error::CapTooSmall {
            cap,
            reason: format!("certification needs degree {stop}"),
        });
    }
    let mut degrees: Vec<u32> = Vec::new();
    let mut reps: Vec<Vec<F::Elem>> = Vec::new();
    let mut relations = Vec::new();
    let mut prev_kernel: Vec<Vec<F::Elem>> = Vec::new();

    for d in 0..=cap {
        let n = monomial_count(3, d);
        match fixed {
            None => {
                let mut shifted = Vec::new();
                if d > 0 {
                    for v in &lm.d_piece(d - 1).basis {
                        for var in 0..3 {
                            shifted.push(shift_by_variable(&field, 3, d - 1, 3, v, var));
                        }
                    }
                }
                let piece = lm.d_piece(d);
                for i in linalg::independent_extension(&field, 3 * n, &shifted, &piece.basis) {
                    degrees.push(d);
                    reps.push(piece.basis[i].clone());
                }
            }
            Some(g) => {
                for (deg, rep) in g.degrees.iter().zip(&g.reps) {
                    if *deg == d {
                        degrees.push(d);
                        reps.push(rep.to_vector());
                    }
                }
            }
        }

        // evaluation map ⊕ S_{d - deg g} -> Der_d
        let mut columns = Vec::new();
        for (&e, rep) in degrees.iter().zip(&reps) {
            for mu in monomials(3, d - e) {
                columns.push(times_monomial(&field, rep, e, mu));
            }
        }
        let source_dim = columns.len();
        let eval = Matrix::from_rows(3 * n, columns).transpose();
        let kernel = if source_dim == 0 {
            Vec::new()
        } else {
            linalg::nullspace(&field, &eval)
        };

        let mut lifted = Vec::new();
        if d > 0 {
            for k in &prev_kernel {
                for var in 0..3 {
                    let mut out = Vec::with_capacity(source_dim);
                    let mut offset = 0;
                    for &e in degrees.iter().filter(|&&e| e < d) {
                        let len = monomial_count(3, d - 1 - e);
                        out.extend(shift_by_variable(
                            &field,
                            3,
                            d - 1 - e,
                            1,
                            &k[offset..offset + len],
                            var,
                        ));
                        offset += len;
                    }
                    out.resize(source_dim, field.zero());
                    lifted.push(out);
                }
            }
        }
        let lifted_rank = linalg::row_basis(&field, source_dim, lifted).len();
        for _ in lifted_rank..kernel.len() {
            relations.push(d);
        }
        prev_kernel = kernel;

        if d >= stop && bookkeeping_closes(&degrees, &relations, a.len()) {
            let reps = degrees
                .iter()
                .zip(&reps)
                .map(|(&e, v)| Derivation3::from_vector(e, v))
                .collect();
            return Ok(Scan {
                gens: GeneratorSet {
                    degrees,
                    reps,
                    certified_through: d,
                },
                relations,
            });
        }
    }
    Err(Error::CapTooSmall {
        cap,
        reason: "generator and relation bookkeeping did not close".into(),
    })
}

/// Minimal generators of `D(A)` with deterministic representatives.
pub fn minimal_generators<F: Field>(a: &Arrangement<F>, cap: u32) -> Result<GeneratorSet<F::Elem>> {
    Ok(scan(&mut LogModules::new(a), cap, None)?.gens)
}

/// Degrees of the minimal relations among `gens`.
pub fn first_syzygies<F: Field>(
    a: &Arrangement<F>,
    gens: &GeneratorSet<F::Elem>,
    cap: u32,
) -> Result<Vec<u32>> {
    if gens.certified_through > cap {
        return Err(Error::CapTooSmall {
            cap,
            reason: format!(
                "generators were certified through {}",
                gens.certified_through
            ),
        });
    }
    Ok(scan(&mut LogModules::new(a), cap, Some(gens))?.relations)
}

/// Generators and relations in one pass, reusing a module workspace.
pub fn presentation_with<F: Field>(
    lm: &mut LogModules<'_, F>,
    cap: u32,
) -> Result<PresentationReport> {
    let s = scan(lm, cap, None)?;
    Ok(PresentationReport {
        generator_degrees: s.gens.degrees,
        relation_degrees: s.relations,
        cap,
        level: None,
        certified_through: s.gens.certified_through,
    })
}

pub fn presentation<F: Field>(a: &Arrangement<F>, cap: u32) -> Result<PresentationReport> {
    presentation_with(&mut LogModules::new(a), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::{PrimeField, Rationals};
    use crate::logmod::pieces::is_logarithmic;
    use crate::logmod::saito::saito_check;

    fn q(forms: &[[i64; 3]]) -> Arrangement<Rationals> {
        Arrangement::from_i64(Rationals, forms).unwrap()
    }

    const EX433: [[i64; 3]; 7] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, -1],
        [0, 1, -1],
        [1, -1, 1],
        [1, -1, -1],
    ];

    #[test]
    fn boolean_is_free_with_diagonal_generators() {
        let a = q(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let cap = default_cap(&a);
        let g = minimal_generators(&a, cap).unwrap();
        assert_eq!(g.degrees, vec![1, 1, 1]);
        let triple: [Derivation3<_>; 3] = [g.reps[0].clone(), g.reps[1].clone(), g.reps[2].clone()];
        assert!(saito_check(&a, &triple).unwrap().0);
        assert!(first_syzygies(&a, &g, cap).unwrap().is_empty());
    }

    #[test]
    fn braid_arrangement_exponents() {
        let a = q(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [1, 0, -1],
            [0, 1, -1],
        ]);
        let p = presentation(&a, default_cap(&a)).unwrap();
        assert_eq!(p.exponents(), Some([1, 2, 3]));
    }

    #[test]
    fn generic_four_planes_are_not_free() {
        let a = q(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let p = presentation(&a, default_cap(&a)).unwrap();
        assert_eq!(p.generator_degrees, vec![1, 2, 2, 2]);
        assert_eq!(p.relation_degrees, vec![3]);
    }

    #[test]
    fn seven_planes_presentation() {
        let a = q(&EX433);
        let cap = default_cap(&a);
        let g = minimal_generators(&a, cap).unwrap();
        assert_eq!(g.degrees, vec![1, 3, 4, 4]);
        assert!(g.reps.iter().all(|t| is_logarithmic(&a, t)));
        assert_eq!(first_syzygies(&a, &g, cap).unwrap(), vec![5]);
    }

    #[test]
    fn adding_a_plane_makes_the_seven_free() {
        let mut forms = EX433.to_vec();
        forms.push([1, -1, 0]);
        let a = q(&forms);
        let g = minimal_generators(&a, default_cap(&a)).unwrap();
        assert_eq!(g.degrees, vec![1, 3, 4]);
        let triple = [g.reps[0].clone(), g.reps[1].clone(), g.reps[2].clone()];
        let (ok, c) = saito_check(&a, &triple).unwrap();
        assert!(ok && c.is_some());
    }

    #[test]
    fn pencils_and_small_caps() {
        let a = q(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]);
        let p = presentation(&a, default_cap(&a)).unwrap();
        assert_eq!(p.exponents(), Some([0, 1, 3]));
        let e = presentation(&q(&EX433), 3).unwrap_err();
        assert!(matches!(e, Error::CapTooSmall { cap: 3, .. }));
    }

    #[test]
    fn prime_field_matches_rationals_on_the_seven() {
        let f = PrimeField::new(1009).unwrap();
        let a = Arrangement::from_i64(f, &EX433).unwrap();
        let p = presentation(&a, default_cap(&a)).unwrap();
        assert_eq!(p.generator_degrees, vec![1, 3, 4, 4]);
        assert_eq!(p.relation_degrees, vec![5]);
    }
}
