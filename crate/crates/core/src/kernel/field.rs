//! Exact ground fields: the rationals and prime fields below 2^31.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::fraction_free;
use crate::kernel::linalg::{self, Matrix, Rref};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Which field an arrangement lives over. `characteristic` is 0 for the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub characteristic: u64,
}

impl FieldDescriptor {
    pub const RATIONALS: FieldDescriptor = FieldDescriptor {
        kind: FieldKind::Rationals,
        characteristic: 0,
    };

    pub fn prime(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::PrimeField,
            characteristic: p,
        })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::PrimeField => write!(f, "GF({})", self.characteristic),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Elements are plain values; the field object
/// carries whatever context (modulus, inverse table) the operations need.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `num / den`; fails when the denominator vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical text: `"p/q"` or an integer for the rationals, the residue in `[0, p)` otherwise.
    fn render(&self, a: &Self::Elem) -> String;

    /// Signed representative used for human-readable output (`p-1` prints as `-1`).
    fn render_signed(&self, a: &Self::Elem) -> String {
        self.render(a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a -= b * c`, the elimination hot path.
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Reduced row echelon form of `m`.
    fn row_reduce(&self, m: &Matrix<Self::Elem>) -> Rref<Self::Elem> {
        linalg::gauss_jordan(self, m)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::RATIONALS
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::BadFieldElement(format!(
                "{num}/{den}: zero denominator"
            )));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a -= b * c;
    }
    fn row_reduce(&self, m: &Matrix<BigRational>) -> Rref<BigRational> {
        fraction_free::rref_rational(m)
    }
}

/// Residues modulo a prime `p < 2^31`, stored in `[0, p)`.
#[derive(Clone)]
pub struct PrimeField {
    p: u32,
    inverses: Option<Arc<[u32]>>,
}

const INVERSE_TABLE_LIMIT: u32 = 1 << 16;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldDescriptor::prime(p)?;
        let p = p as u32;
        let inverses = (p < INVERSE_TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; p as usize];
            if p > 1 {
                table[1] = 1;
            }
            // inv(i) = -(p / i) * inv(p mod i)
            for i in 2..p as u64 {
                let q = p as u64 / i;
                let r = (p as u64 % i) as usize;
                table[i as usize] = ((p as u64 - q) * table[r] as u64 % p as u64) as u32;
            }
            Arc::from(table)
        });
        Ok(PrimeField { p, inverses })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }

    fn inv_euclid(&self, a: u32) -> u32 {
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }
}

impl Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            kind: FieldKind::PrimeField,
            characteristic: self.p as u64,
        }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        self.reduce_bigint(v)
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let d = self.reduce_bigint(den);
        if d == 0 {
            return Err(Error::BadFieldElement(format!(
                "{num}/{den}: denominator vanishes modulo {}",
                self.p
            )));
        }
        let n = self.reduce_bigint(num);
        Ok(self.mul(&n, &self.inv(&d).expect("nonzero")))
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 {
            s - self.p as u64
        } else {
            s
        }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(match &self.inverses {
            Some(table) => table[*a as usize],
            None => self.inv_euclid(*a),
        })
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn render_signed(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u32, b: &u32, c: &u32) {
        let prod = (*b as u64 * *c as u64 % self.p as u64) as u32;
        *a = self.sub(a, &prod);
    }
}

/// Integer value of a rational when it is integral; used by rendering and tests.
pub fn rational_to_i64(a: &BigRational) -> Option<i64> {
    if a.denom().is_one() {
        a.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_descriptor_rejects_composites() {
        assert!(FieldDescriptor::prime(1007).is_err());
        assert!(FieldDescriptor::prime(1).is_err());
        assert!(FieldDescriptor::prime(1 << 31).is_err());
        assert!(FieldDescriptor::prime(1009).is_ok());
        assert!(FieldDescriptor::prime(2147483647).is_ok());
    }

    #[test]
    fn inverse_table_matches_euclid() {
        for p in [2u64, 3, 5, 11, 1009, 65521] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p.min(2000) as u32 {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), 1, "p={p} a={a}");
                assert_eq!(inv, f.inv_euclid(a));
            }
        }
    }

    #[test]
    fn large_prime_uses_euclid() {
        let f = PrimeField::new(2147483647).unwrap();
        assert!(f.inverses.is_none());
        let a = 123456789u32;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }

    #[test]
    fn fraction_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let v = f.from_fraction(&BigInt::from(1), &BigInt::from(3)).unwrap();
        assert_eq!(v, 2);
        assert!(f
            .from_fraction(&BigInt::from(1), &BigInt::from(10))
            .is_err());
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.render_signed(&4), "-1");
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Rationals;
        let a = q.from_fraction(&BigInt::from(2), &BigInt::from(4)).unwrap();
        let b = q
            .from_fraction(&BigInt::from(-1), &BigInt::from(-2))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(q.render(&a), "1/2");
        assert_eq!(q.render(&q.add(&a, &b)), "1");
        let c = q
            .from_fraction(&BigInt::from(3), &BigInt::from(-6))
            .unwrap();
        assert_eq!(q.render(&c), "-1/2");
        assert!(q.inv(&q.zero()).is_none());
    }
}
