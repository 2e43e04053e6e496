//! The field `F_Q`, `Q = q^{2n} = p^{2ne}`, as `F_p[T]/(f)`.
//!
//! One flat representation serves the whole tower `F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^n} ⊂ F_Q`;
//! subfield membership is a Frobenius test. An element is stored as the base-`p`
//! integer `Σ c_i p^i` of its coordinates `c_i` in the basis `1, T, …, T^{2ne-1}`,
//! which is canonical and doubles as a dense table index.
//!
//! The modulus `f` is the least monic irreducible polynomial of degree `2ne` and the
//! generator the least primitive element, both in the order of that integer encoding,
//! so every context is reproducible. When `Q` is at most the configured log bound the
//! context also carries discrete-log/antilog tables and multiplication, inversion and
//! residue tests become table lookups.

mod roots;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use roots::RootTable;

use crate::arith::{is_prime, prime_factors};
use crate::poly::{is_irreducible, CoeffField, DensePoly, PrimeField};

/// Default ceiling on `Q` for building log tables.
pub const DEFAULT_LOG_BOUND: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size exceeds the 32-bit element encoding")]
    DegreeOverflow,
    #[error("n = {0} is even")]
    NIsEven(u32),
    #[error("n = {0} is below 3")]
    NTooSmall(u32),
    #[error("extension degree e must be positive")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    CtxMismatch,
    #[error("F_(q^{0}) is not a subfield")]
    NotASubfield(u32),
    #[error("zero has no power-residue character")]
    ZeroInput,
    #[error("{0} does not divide Q - 1")]
    DNotDivisor(u64),
}

/// An element of `F_Q` in canonical base-`p` encoding. Only meaningful together
/// with the [`FieldCtx`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(i64),
}

#[derive(Debug)]
struct LogTables {
    /// `exp[i] = g^i` for `0 <= i < 2(Q-1)`, doubled so sums of two logs need no reduction.
    exp: Vec<u32>,
    /// `log[x]`, with `NO_LOG` at zero.
    log: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    n: u32,
    q: u64,
    order: u64,
    degree: usize,
    /// Monic, lowest degree first, `degree + 1` entries.
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    generator: Fe,
    tables: Option<LogTables>,
    tag: u64,
}

impl FieldCtx {
    /// Builds `F_{q^{2n}}` with `q = p^e`. Log tables are built iff `Q <= log_bound`.
    pub fn new(p: u64, e: u32, n: u32, log_bound: u64) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        if n.is_multiple_of(2) {
            return Err(GfError::NIsEven(n));
        }
        if n < 3 {
            return Err(GfError::NTooSmall(n));
        }
        let degree = 2 * n as usize * e as usize;
        let order = u32::try_from(degree)
            .ok()
            .and_then(|d| p.checked_pow(d))
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or(GfError::DegreeOverflow)?;
        let q = p.pow(e);
        let p32 = p as u32;
        let pow_p = (0..degree).map(|i| p32.pow(i as u32)).collect();
        let modulus = least_irreducible(p32, degree);

        let mut ctx = FieldCtx {
            p: p32,
            e,
            n,
            q,
            order,
            degree,
            modulus,
            pow_p,
            generator: Fe::ONE,
            tables: None,
            tag: 0,
        };
        ctx.tag = ctx.fingerprint();
        ctx.generator = ctx.least_primitive();
        if order <= log_bound {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// `build_ctx(p, e, n)` with the default log bound.
    pub fn with_defaults(p: u64, e: u32, n: u32) -> Result<Self, GfError> {
        Self::new(p, e, n, DEFAULT_LOG_BOUND)
    }

    /// Context for `q = p^e` given `q` itself.
    pub fn for_q(q: u64, n: u32, log_bound: u64) -> Result<Self, GfError> {
        let (p, e) = crate::arith::prime_power(q).ok_or(GfError::NotPrime(q))?;
        Self::new(p, e, n, log_bound)
    }

    fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &w in [self.p, self.degree as u32].iter().chain(&self.modulus) {
            h ^= w as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        h | 1 << 63
    }

    fn least_primitive(&self) -> Fe {
        let n1 = self.order - 1;
        let factors = prime_factors(n1);
        (1..self.order as u32)
            .map(Fe)
            .find(|&g| factors.iter().all(|&r| self.raw_pow(g, n1 / r) != Fe::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n1 = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n1);
        let mut log = vec![NO_LOG; self.order as usize];
        let mut x = Fe::ONE;
        for i in 0..n1 {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.raw_mul(self.generator, x);
        }
        debug_assert_eq!(x, Fe::ONE);
        exp.extend_from_within(..n1);
        LogTables { exp, log }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    /// `e` with `q = p^e`.
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `Q = q^{2n}`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `q^n`, the square root of `Q`.
    pub fn sqrt_order(&self) -> u64 {
        self.q.pow(self.n)
    }

    /// `m = (q^n + 1)/(q + 1)`.
    pub fn m(&self) -> u64 {
        (self.sqrt_order() + 1) / (self.q + 1)
    }

    /// Extension degree `2ne` over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_poly(&self) -> DensePoly<u32> {
        DensePoly::new(&PrimeField::new(self.p), self.modulus.clone())
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Identifies this context; equal for contexts over the same modulus.
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn element(&self, index: u32) -> Result<Fe, GfError> {
        if (index as u64) < self.order {
            Ok(Fe(index))
        } else {
            Err(GfError::CtxMismatch)
        }
    }

    /// Element with the given coordinates over `F_p` (lowest power of `T` first).
    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe, GfError> {
        if digits.len() > self.degree || digits.iter().any(|&d| d >= self.p) {
            return Err(GfError::CtxMismatch);
        }
        Ok(Fe(digits
            .iter()
            .zip(&self.pow_p)
            .map(|(&d, &w)| d * w)
            .sum()))
    }

    pub fn digits(&self, x: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree);
        let mut v = x.0;
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// The image of an integer under `Z -> F_p ⊂ F_Q`.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Fe> + ExactSizeIterator {
        (0..self.order as u32).map(Fe)
    }

    // ---- arithmetic ------------------------------------------------------

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y, mut r) = (a.0, b.0, 0u32);
        for &w in &self.pow_p {
            if x == 0 && y == 0 {
                break;
            }
            let s = x % p + y % p;
            r += if s >= p { s - p } else { s } * w;
            x /= p;
            y /= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut x, mut r) = (a.0, 0u32);
        for &w in &self.pow_p {
            if x == 0 {
                break;
            }
            let d = x % p;
            if d != 0 {
                r += (p - d) * w;
            }
            x /= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Fe::ZERO
                } else {
                    let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                    Fe(t.exp[i])
                }
            }
            None => self.raw_mul(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Fe(t.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
            }
            None => self.raw_pow(a, self.order - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for a non-negative exponent.
    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n1 = self.order - 1;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128;
                Fe(t.exp[((l * (k % n1) as u128) % n1 as u128) as usize])
            }
            None => self.raw_pow(a, k % n1),
        }
    }

    /// `a^k` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: Fe, k: i64) -> Result<Fe, GfError> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Checked entry point: validates that operands belong to this context.
    pub fn arith(&self, op: ArithOp, operands: &[Fe]) -> Result<Fe, GfError> {
        if operands.iter().any(|x| x.0 as u64 >= self.order) {
            return Err(GfError::CtxMismatch);
        }
        let arg = |i: usize| operands.get(i).copied().ok_or(GfError::CtxMismatch);
        match op {
            ArithOp::Add => Ok(self.add(arg(0)?, arg(1)?)),
            ArithOp::Sub => Ok(self.sub(arg(0)?, arg(1)?)),
            ArithOp::Mul => Ok(self.mul(arg(0)?, arg(1)?)),
            ArithOp::Inv => self.inv(arg(0)?),
            ArithOp::Pow(k) => self.pow_signed(arg(0)?, k),
        }
    }

    /// Discrete log to the base of the generator; `None` at zero or without tables.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u64> {
        let t = self.tables.as_ref()?;
        let l = t.log[a.0 as usize];
        (l != NO_LOG).then_some(l as u64)
    }

    /// `g^k` for the fixed generator `g`.
    #[inline]
    pub fn exp(&self, k: u64) -> Fe {
        let k = k % (self.order - 1);
        match &self.tables {
            Some(t) => Fe(t.exp[k as usize]),
            None => self.raw_pow(self.generator, k),
        }
    }

    /// `x^{q^j}`.
    pub fn frob(&self, x: Fe, j: u32) -> Fe {
        if x.is_zero() {
            return x;
        }
        let n1 = self.order - 1;
        let mut k = 1u64 % n1;
        for _ in 0..j {
            k = ((k as u128 * self.q as u128) % n1 as u128) as u64;
        }
        if k == 0 {
            k = n1;
        }
        self.pow(x, k)
    }

    /// Whether `x ∈ F_{q^k}`; requires `k | 2n`.
    pub fn in_subfield(&self, x: Fe, k: u32) -> Result<bool, GfError> {
        if k == 0 || !(2 * self.n).is_multiple_of(k) {
            return Err(GfError::NotASubfield(k));
        }
        Ok(self.frob(x, k) == x)
    }

    /// `in_subfield` without the divisibility check, for hot loops.
    #[inline]
    pub(crate) fn is_fixed_by(&self, x: Fe, k: u32) -> bool {
        self.frob(x, k) == x
    }

    /// All elements of `F_{q^k}`: zero, then `g^{j(Q-1)/(q^k-1)}` for increasing `j`.
    pub fn subfield_elements(&self, k: u32) -> Result<Vec<Fe>, GfError> {
        if k == 0 || !(2 * self.n).is_multiple_of(k) {
            return Err(GfError::NotASubfield(k));
        }
        let size = self.q.pow(k);
        let step = (self.order - 1) / (size - 1);
        let mut out = Vec::with_capacity(size as usize);
        out.push(Fe::ZERO);
        let g = self.exp(step);
        let mut x = Fe::ONE;
        for _ in 0..size - 1 {
            out.push(x);
            x = self.mul(x, g);
        }
        Ok(out)
    }

    // ---- table-free primitives --------------------------------------------

    fn raw_pow(&self, a: Fe, mut k: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.raw_mul(base, base);
            }
        }
        acc
    }

    /// Polynomial-basis product, independent of the log tables.
    pub fn raw_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            self.raw_mul_binary(a.0, b.0)
        } else {
            self.raw_mul_odd(a.0, b.0)
        }
    }

    fn raw_mul_binary(&self, a: u32, b: u32) -> Fe {
        let (small, large) = if a.count_ones() < b.count_ones() {
            (a, b)
        } else {
            (b, a)
        };
        let mut prod: u64 = 0;
        let mut s = small;
        while s != 0 {
            let i = s.trailing_zeros();
            prod ^= (large as u64) << i;
            s &= s - 1;
        }
        let d = self.degree;
        let low_mask: u64 = (1u64 << d) - 1;
        let mut reduce: u64 = 0;
        for (j, &c) in self.modulus[..d].iter().enumerate() {
            reduce |= (c as u64) << j;
        }
        // T^d = reduce
        let mut i = 2 * d;
        while i > d {
            i -= 1;
            if prod >> i & 1 == 1 {
                prod ^= 1u64 << i;
                prod ^= reduce << (i - d);
            }
        }
        Fe((prod & low_mask) as u32)
    }

    fn raw_mul_odd(&self, a: u32, b: u32) -> Fe {
        let p = self.p as u64;
        let d = self.degree;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut x, mut y) = (a, b);
        for i in 0..d {
            da[i] = (x % self.p) as u64;
            db[i] = (y % self.p) as u64;
            x /= self.p;
            y /= self.p;
        }
        let mut prod = [0u64; 64];
        for i in 0..d {
            if da[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for j in 0..d {
                prod[i - d + j] = (prod[i - d + j] + neg_c * self.modulus[j] as u64) % p;
            }
            prod[i] = 0;
        }
        Fe(prod[..d].iter().zip(&self.pow_p).map(|(&c, &w)| c as u32 * w).sum())
    }
}

/// Least monic irreducible of the given degree, in base-`p` order of its lower coefficients.
fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let field = PrimeField::new(p);
    let mut k: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut v = k;
        for _ in 0..degree {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1);
        // a zero constant term means T divides f
        if coeffs[0] != 0 && is_irreducible(&DensePoly::new(&field, coeffs.clone()), &field) {
            return coeffs;
        }
        k += 1;
    }
}

impl CoeffField for FieldCtx {
    type Elem = Fe;

    fn tag(&self) -> u64 {
        self.tag
    }
    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn one(&self) -> Fe {
        Fe::ONE
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        FieldCtx::add(self, a, b)
    }
    fn sub(&self, a: Fe, b: Fe) -> Fe {
        FieldCtx::sub(self, a, b)
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        FieldCtx::mul(self, a, b)
    }
    fn neg(&self, a: Fe) -> Fe {
        FieldCtx::neg(self, a)
    }
    fn inv(&self, a: Fe) -> Option<Fe> {
        FieldCtx::inv(self, a).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32, n: u32) -> FieldCtx {
        FieldCtx::with_defaults(p, e, n).unwrap()
    }

    #[test]
    fn sizes_and_m() {
        let c = ctx(2, 1, 3);
        assert_eq!((c.order(), c.m()), (64, 3));
        let c = ctx(2, 1, 5);
        assert_eq!((c.order(), c.m()), (1024, 11));
        let c = ctx(2, 2, 5);
        assert_eq!((c.order(), c.m()), (1_048_576, 205));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::with_defaults(4, 1, 3).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(FieldCtx::with_defaults(2, 1, 4).unwrap_err(), GfError::NIsEven(4));
        assert_eq!(FieldCtx::with_defaults(2, 1, 1).unwrap_err(), GfError::NTooSmall(1));
        assert_eq!(FieldCtx::with_defaults(2, 3, 7).unwrap_err(), GfError::DegreeOverflow);
        assert_eq!(FieldCtx::with_defaults(3, 1, 11).unwrap_err(), GfError::DegreeOverflow);
    }

    #[test]
    fn modulus_is_irreducible_and_least() {
        let c = ctx(2, 1, 3);
        // T^6 + T + 1 is the least irreducible sextic over F_2
        assert_eq!(c.modulus(), &[1, 1, 0, 0, 0, 0, 1]);
        for (p, e, n) in [(2, 1, 5), (3, 1, 3), (2, 2, 3), (5, 1, 3)] {
            let c = ctx(p, e, n);
            assert!(is_irreducible(&c.modulus_poly(), &PrimeField::new(p as u32)));
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, e, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 3)] {
            let c = ctx(p, e, n);
            let g = c.generator();
            let n1 = c.order() - 1;
            assert_eq!(c.pow(g, n1), Fe::ONE);
            for r in prime_factors(n1) {
                assert_ne!(c.pow(g, n1 / r), Fe::ONE);
            }
        }
    }

    #[test]
    fn cube_root_of_unity_relations() {
        let c = ctx(2, 1, 3);
        let w = c.exp(21);
        let w1 = c.add(w, Fe::ONE);
        assert_eq!(c.mul(w, w1), Fe::ONE);
        assert_eq!(c.inv(w).unwrap(), w1);
        assert_eq!(c.pow(c.generator(), 63), Fe::ONE);
    }

    #[test]
    fn arith_checks() {
        let c = ctx(2, 1, 3);
        assert_eq!(c.arith(ArithOp::Inv, &[Fe::ZERO]), Err(GfError::DivisionByZero));
        assert_eq!(c.arith(ArithOp::Add, &[Fe(64), Fe::ONE]), Err(GfError::CtxMismatch));
        let g = c.generator();
        let gi = c.arith(ArithOp::Pow(-1), &[g]).unwrap();
        assert_eq!(c.mul(g, gi), Fe::ONE);
        assert_eq!(c.arith(ArithOp::Pow(-5), &[Fe::ZERO]), Err(GfError::DivisionByZero));
    }

    #[test]
    fn frobenius_basics() {
        let c = ctx(3, 1, 3);
        for x in c.elements() {
            assert_eq!(c.frob(x, 6), x);
            assert_eq!(c.frob(x, 0), x);
        }
        let f9 = c.subfield_elements(2).unwrap();
        let alpha = *f9.iter().find(|&&a| !c.in_subfield(a, 1).unwrap()).unwrap();
        assert_ne!(c.frob(alpha, 1), alpha);
        assert_eq!(c.frob(alpha, 2), alpha);
    }

    #[test]
    fn subfield_predicate() {
        let c = ctx(2, 1, 5);
        assert!(c.in_subfield(Fe::ZERO, 5).unwrap());
        assert!(!c.in_subfield(c.generator(), 5).unwrap());
        assert_eq!(c.in_subfield(Fe::ONE, 3), Err(GfError::NotASubfield(3)));
        for z in c.roots_of_unity(3).unwrap() {
            assert!(c.in_subfield(z, 2).unwrap());
        }
    }

    #[test]
    fn odd_characteristic_arithmetic_without_tables_matches_tables() {
        let with = FieldCtx::new(3, 1, 3, DEFAULT_LOG_BOUND).unwrap();
        let without = FieldCtx::new(3, 1, 3, 0).unwrap();
        assert_eq!(with.modulus(), without.modulus());
        assert_eq!(with.generator(), without.generator());
        for a in with.elements().step_by(7) {
            for b in with.elements().step_by(5) {
                assert_eq!(with.mul(a, b), without.mul(a, b));
            }
            if !a.is_zero() {
                assert_eq!(with.inv(a), without.inv(a));
            }
        }
    }

    #[test]
    fn digit_roundtrip() {
        let c = ctx(5, 1, 3);
        let x = c.from_digits(&[4, 0, 3, 1]).unwrap();
        assert_eq!(&c.digits(x)[..4], &[4, 0, 3, 1]);
        assert_eq!(c.from_digits(&[5]), Err(GfError::CtxMismatch));
        assert_eq!(c.add(x, c.neg(x)), Fe::ZERO);
    }
}
