use std::collections::HashSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::combinatorics::{normalize, Arrangement};
use crate::corpus::AnyArrangement;
use crate::error::{Error, Result};
use crate::kernel::field::{Field, FieldDescriptor, FieldKind, PrimeField, Rationals};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const DRAWS_PER_PLANE: usize = 64;

/// A deterministic family of random arrangements. Arrangement `i` depends
/// only on these parameters and `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// Each arrangement has between 3 and `max_planes` planes.
    pub max_planes: usize,
    /// Integer coefficients are drawn from `[-bound, bound]`.
    pub bound: u32,
    pub field: FieldDescriptor,
}

impl CorpusSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        CorpusSpec {
            seed,
            count,
            max_planes: 8,
            bound: 3,
            field: FieldDescriptor::RATIONALS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_planes < 3 {
            return Err(Error::BadCorpus(format!(
                "max_planes must be at least 3, got {}",
                self.max_planes
            )));
        }
        if self.bound == 0 {
            return Err(Error::BadCorpus("bound must be positive".into()));
        }
        Ok(())
    }

    /// Parses `SEED,COUNT[,MAX_PLANES[,BOUND[,P]]]`; `P = 0` or absent means
    /// the rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if !(2..=5).contains(&parts.len()) {
            return Err(Error::BadCorpus(format!(
                "expected SEED,COUNT[,MAX_PLANES[,BOUND[,P]]], got {text:?}"
            )));
        }
        fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
            s.parse()
                .map_err(|_| Error::BadCorpus(format!("{what} {s:?} is not a valid number")))
        }
        let mut spec = CorpusSpec::new(num(parts[0], "seed")?, num(parts[1], "count")?);
        if let Some(s) = parts.get(2) {
            spec.max_planes = num(s, "max_planes")?;
        }
        if let Some(s) = parts.get(3) {
            spec.bound = num(s, "bound")?;
        }
        if let Some(s) = parts.get(4) {
            let p: u64 = num(s, "characteristic")?;
            if p != 0 {
                spec.field = FieldDescriptor::prime(p)?;
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn draw_arrangement<F: Field>(
    field: F,
    rng: &mut SplitMix64,
    planes: usize,
    bound: u32,
) -> Result<Arrangement<F>> {
    let width = 2 * bound as u64 + 1;
    let mut seen = HashSet::new();
    let mut forms = Vec::with_capacity(planes);
    for _ in 0..planes * DRAWS_PER_PLANE {
        if forms.len() == planes {
            break;
        }
        let coeffs: [F::Elem; 3] =
            std::array::from_fn(|_| field.from_i64((rng.next_u64() % width) as i64 - bound as i64));
        let Ok(n) = normalize(&field, &coeffs) else {
            continue;
        };
        if seen.insert(n) {
            forms.push(coeffs);
        }
    }
    if forms.len() < planes {
        return Err(Error::GenerationExhausted {
            wanted: planes,
            bound,
        });
    }
    Arrangement::new(field, forms)
}

/// Arrangement number `index` of the corpus.
pub fn random_arrangement(spec: &CorpusSpec, index: usize) -> Result<AnyArrangement> {
    spec.validate()?;
    let state = spec
        .seed
        .wrapping_add((index as u64 + 1).wrapping_mul(GOLDEN_GAMMA));
    let mut rng = SplitMix64::seed_from_u64(state);
    let planes = 3 + (rng.next_u64() % (spec.max_planes as u64 - 2)) as usize;
    Ok(match spec.field.kind {
        FieldKind::Rationals => draw_arrangement(Rationals, &mut rng, planes, spec.bound)?.into(),
        FieldKind::PrimeField => draw_arrangement(
            PrimeField::new(spec.field.characteristic)?,
            &mut rng,
            planes,
            spec.bound,
        )?
        .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_defaults_and_overrides() {
        let s = CorpusSpec::parse("7,20").unwrap();
        assert_eq!((s.seed, s.count, s.max_planes, s.bound), (7, 20, 8, 3));
        assert_eq!(s.field, FieldDescriptor::RATIONALS);
        let s = CorpusSpec::parse("1, 5, 6, 4, 1009").unwrap();
        assert_eq!((s.max_planes, s.bound), (6, 4));
        assert_eq!(s.field, FieldDescriptor::prime(1009).unwrap());
        assert!(CorpusSpec::parse("1").is_err());
        assert!(CorpusSpec::parse("1,2,2").is_err());
        assert!(CorpusSpec::parse("1,2,5,0").is_err());
        assert!(CorpusSpec::parse("1,2,5,3,1007").is_err());
        assert!(CorpusSpec::parse("x,2").is_err());
    }

    #[test]
    fn deterministic_and_index_addressed() {
        let spec = CorpusSpec::new(42, 10);
        for i in 0..10 {
            let a = random_arrangement(&spec, i).unwrap();
            assert_eq!(a, random_arrangement(&spec, i).unwrap());
            assert!((3..=8).contains(&a.len()));
        }
        let other = CorpusSpec::new(43, 10);
        let differ = (0..10)
            .filter(|&i| {
                random_arrangement(&spec, i).unwrap() != random_arrangement(&other, i).unwrap()
            })
            .count();
        assert!(differ > 0);
    }

    #[test]
    fn tiny_boxes_run_out_of_planes() {
        let mut spec = CorpusSpec::new(1, 1);
        spec.bound = 1;
        spec.max_planes = 40;
        // only 13 distinct planes have coefficients in {-1, 0, 1}
        let found = (0..20).find_map(|i| random_arrangement(&spec, i).err());
        assert!(matches!(
            found,
            Some(Error::GenerationExhausted { bound: 1, .. })
        ));
    }

    #[test]
    fn prime_corpora_live_over_the_prime() {
        let spec = CorpusSpec::parse("3,4,6,5,1009").unwrap();
        let a = random_arrangement(&spec, 0).unwrap();
        assert_eq!(a.descriptor(), FieldDescriptor::prime(1009).unwrap());
    }
}
