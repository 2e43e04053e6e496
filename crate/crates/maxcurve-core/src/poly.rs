//! Dense univariate polynomials over a finite field.
//!
//! The same polynomial type serves two purposes: polynomials over the prime
//! field `F_p` (for choosing an irreducible modulus) and polynomials over a
//! subfield of a [`FieldCtx`](crate::gf::FieldCtx), used for exact
//! coefficient-wise identity checks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use thiserror::Error;

use crate::arith::prime_factors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomials belong to different coefficient fields")]
    CtxMismatch,
}

/// Arithmetic on the coefficients of a [`DensePoly`].
///
/// `tag` identifies the field instance so that polynomials built over
/// different fields are never mixed.
pub trait CoeffField {
    type Elem: Copy + Eq + Debug;

    fn tag(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
}

/// The prime field `F_p`, elements as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        Self { p }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
}

impl CoeffField for PrimeField {
    type Elem = u32;

    fn tag(&self) -> u64 {
        // distinct from any FieldCtx tag, which always has bit 63 set
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        // Fermat
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        Some(acc as u32)
    }
}

/// A polynomial with coefficients lowest degree first and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly<E> {
    coeffs: Vec<E>,
    tag: u64,
}

impl<E: Copy + Eq + Debug> DensePoly<E> {
    pub fn new<F: CoeffField<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        let zero = field.zero();
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            tag: field.tag(),
        }
    }

    pub fn zero<F: CoeffField<Elem = E>>(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant<F: CoeffField<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// `c · T^k`
    pub fn monomial<F: CoeffField<Elem = E>>(field: &F, c: E, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `T + c`
    pub fn linear<F: CoeffField<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c, field.one()])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<E> {
        self.coeffs.last().copied()
    }

    fn check<F: CoeffField<Elem = E>>(&self, other: &Self, field: &F) -> Result<(), PolyError> {
        if self.tag != other.tag || self.tag != field.tag() {
            return Err(PolyError::CtxMismatch);
        }
        Ok(())
    }

    pub fn add<F: CoeffField<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self, PolyError> {
        self.check(other, field)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(field.zero());
                let b = other.coeffs.get(i).copied().unwrap_or(field.zero());
                field.add(a, b)
            })
            .collect();
        Ok(Self::new(field, coeffs))
    }

    pub fn sub<F: CoeffField<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self, PolyError> {
        self.check(other, field)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(field.zero());
                let b = other.coeffs.get(i).copied().unwrap_or(field.zero());
                field.sub(a, b)
            })
            .collect();
        Ok(Self::new(field, coeffs))
    }

    pub fn neg<F: CoeffField<Elem = E>>(&self, field: &F) -> Self {
        Self::new(field, self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn scale<F: CoeffField<Elem = E>>(&self, c: E, field: &F) -> Self {
        Self::new(field, self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul<F: CoeffField<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self, PolyError> {
        self.check(other, field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(field));
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == field.zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Ok(Self::new(field, out))
    }

    pub fn div_rem<F: CoeffField<Elem = E>>(
        &self,
        divisor: &Self,
        field: &F,
    ) -> Result<(Self, Self), PolyError> {
        self.check(divisor, field)?;
        let lead = divisor.leading().ok_or(PolyError::DivisionByZeroPoly)?;
        let lead_inv = field.inv(lead).ok_or(PolyError::DivisionByZeroPoly)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(field), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == field.zero() {
                continue;
            }
            let f = field.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = field.sub(rem[k], field.mul(f, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }

    pub fn rem<F: CoeffField<Elem = E>>(&self, divisor: &Self, field: &F) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor, field)?.1)
    }

    /// `self^e`, by square-and-multiply.
    pub fn pow<F: CoeffField<Elem = E>>(&self, mut e: u64, field: &F) -> Result<Self, PolyError> {
        let mut acc = Self::constant(field, field.one());
        let mut base = self.clone();
        acc.check(&base, field)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field)?;
            }
        }
        Ok(acc)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod<F: CoeffField<Elem = E>>(
        &self,
        mut e: u64,
        modulus: &Self,
        field: &F,
    ) -> Result<Self, PolyError> {
        let mut acc = Self::constant(field, field.one()).rem(modulus, field)?;
        let mut base = self.rem(modulus, field)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field)?.rem(modulus, field)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field)?.rem(modulus, field)?;
            }
        }
        Ok(acc)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd<F: CoeffField<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self, PolyError> {
        self.check(other, field)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field)?;
            a = b;
            b = r;
        }
        Ok(match a.leading() {
            Some(l) => a.scale(field.inv(l).ok_or(PolyError::DivisionByZeroPoly)?, field),
            None => a,
        })
    }

    pub fn eval<F: CoeffField<Elem = E>>(&self, x: E, field: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }
}

/// Rabin's test over `F_p`: `f` of degree `d` is irreducible iff
/// `T^{p^d} ≡ T (mod f)` and `gcd(T^{p^{d/r}} - T, f) = 1` for every prime `r | d`.
pub fn is_irreducible(f: &DensePoly<u32>, field: &PrimeField) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = field.characteristic() as u64;
    let t = DensePoly::monomial(field, 1, 1);
    // frobenius_powers[k] = T^{p^k} mod f
    let mut frob = Vec::with_capacity(d + 1);
    let mut cur = t.rem(f, field).expect("nonzero modulus");
    frob.push(cur.clone());
    for _ in 0..d {
        cur = cur.pow_mod(p, f, field).expect("nonzero modulus");
        frob.push(cur.clone());
    }
    let t_mod = t.rem(f, field).expect("nonzero modulus");
    if frob[d] != t_mod {
        return false;
    }
    for r in prime_factors(d as u64) {
        let k = d / r as usize;
        let g = frob[k]
            .sub(&t_mod, field)
            .and_then(|h| h.gcd(f, field))
            .expect("same field");
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2)
    }

    fn p2(c: &[u32]) -> DensePoly<u32> {
        DensePoly::new(&f2(), c.to_vec())
    }

    #[test]
    fn square_in_characteristic_two() {
        let f = f2();
        let t1 = p2(&[1, 1]);
        assert_eq!(t1.mul(&t1, &f).unwrap(), p2(&[1, 0, 1]));
    }

    #[test]
    fn remainder_by_root() {
        let f = f2();
        assert!(p2(&[1, 0, 1]).rem(&p2(&[1, 1]), &f).unwrap().is_zero());
        assert_eq!(
            p2(&[1, 0, 1]).rem(&DensePoly::zero(&f), &f),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = p2(&[1, 1]);
        let b = DensePoly::new(&PrimeField::new(3), vec![1, 1]);
        assert_eq!(a.add(&b, &f2()), Err(PolyError::CtxMismatch));
    }

    #[test]
    fn rabin_small_cases() {
        let f = f2();
        assert!(is_irreducible(&p2(&[1, 1, 1]), &f));
        assert!(!is_irreducible(&p2(&[1, 0, 1]), &f));
        assert!(is_irreducible(&p2(&[1, 1, 0, 0, 0, 0, 1]), &f));
        // (T^2+T+1)(T^3+T+1) = T^5+T^4+1
        assert!(!is_irreducible(&p2(&[1, 0, 0, 0, 1, 1]), &f));
        let f3 = PrimeField::new(3);
        assert!(is_irreducible(&DensePoly::new(&f3, vec![1, 0, 1]), &f3));
        assert!(!is_irreducible(&DensePoly::new(&f3, vec![2, 0, 1]), &f3));
    }

    /// Independent check: a degree-6 polynomial over F_2 is irreducible iff no
    /// polynomial of degree 1..=3 divides it.
    #[test]
    fn rabin_matches_trial_division_degree_six() {
        let f = f2();
        let small: Vec<DensePoly<u32>> = (2u32..16)
            .map(|k| p2(&(0..4).map(|i| (k >> i) & 1).collect::<Vec<_>>()))
            .filter(|g| g.degree().unwrap() >= 1)
            .collect();
        for low in 0u32..64 {
            let mut c: Vec<u32> = (0..6).map(|i| (low >> i) & 1).collect();
            c.push(1);
            let g = p2(&c);
            let by_trial = small.iter().all(|h| !g.rem(h, &f).unwrap().is_zero());
            assert_eq!(is_irreducible(&g, &f), by_trial, "{c:?}");
        }
    }
}
