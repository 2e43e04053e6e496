//! Curve specifications and rational-place counters.
//!
//! Counters implement [`PlaceCounter`]: a fixed base tally (places at infinity)
//! plus a kernel over index ranges of the domain. The kernels are pure, so a
//! caller may split the domain any way it likes and add the partial tallies.

use core::fmt;
use core::ops::{Add, AddAssign, Range};
use core::str::FromStr;

use thiserror::Error;

use crate::arith::{gcd, prime_power};
use crate::genus::{self, GenusError};
use crate::gf::{Fe, FieldCtx, GfError};

pub mod kummer;
pub mod maps;
mod xn;

pub use kummer::{
    count_kummer_p1, etaz_counter, rhoz_counter, subcover_counter, Eval, FactoredFn, FamilyFn,
    KummerCounter, Place, RamificationDatum, RationalFn,
};
pub use xn::{xn_affine_points, ggs_affine_points, HermitianCounter, XnCounter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Xn,
    Ggs,
    Hermitian,
    EtaZ,
    RhoZ,
    Subcover,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Xn,
        Family::Ggs,
        Family::Hermitian,
        Family::EtaZ,
        Family::RhoZ,
        Family::Subcover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Xn => "xn",
            Family::Ggs => "ggs",
            Family::Hermitian => "hermitian",
            Family::EtaZ => "etaz",
            Family::RhoZ => "rhoz",
            Family::Subcover => "subcover",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or(CurveError::UnknownFamily)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error("unknown curve family")]
    UnknownFamily,
    #[error("field context (q = {ctx_q}, n = {ctx_n}) does not match the curve")]
    ContextMismatch { ctx_q: u64, ctx_n: u32 },
    #[error("Kummer degree {0} must divide Q - 1 and be prime to the characteristic")]
    BadKummerDegree(u64),
    #[error("place {0:?} is outside the declared support but f has a zero or pole there")]
    SupportInconsistent(Place),
    #[error("the declared valuations do not sum to zero")]
    NotPrincipal,
    #[error("count overflowed u64")]
    Overflow,
}

/// One curve instance. `k1`, `k2` are only meaningful for [`Family::Subcover`]
/// and are 1 otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub family: Family,
    pub q: u64,
    pub n: u32,
    pub k1: u64,
    pub k2: u64,
}

impl CurveSpec {
    pub fn new(family: Family, q: u64, n: u32) -> Self {
        Self {
            family,
            q,
            n,
            k1: 1,
            k2: 1,
        }
    }

    pub fn subcover(q: u64, n: u32, k1: u64, k2: u64) -> Self {
        Self {
            family: Family::Subcover,
            q,
            n,
            k1,
            k2,
        }
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        if prime_power(self.q).is_none() {
            return Err(GenusError::NotPrimePower(self.q).into());
        }
        if self.family == Family::Hermitian {
            return Ok(());
        }
        if self.n.is_multiple_of(2) || self.n < 3 {
            return Err(GfError::NIsEven(self.n).into());
        }
        let m = self.m();
        if self.family == Family::Subcover
            && (self.k1 == 0 || self.k2 == 0 || !(self.q + 1).is_multiple_of(self.k1) || !m.is_multiple_of(self.k2))
        {
            return Err(GenusError::BadDivisor {
                k1: self.k1,
                k2: self.k2,
            }
            .into());
        }
        Ok(())
    }

    /// `q^n`, saturating.
    pub fn qn(&self) -> u64 {
        self.q.saturating_pow(self.n)
    }

    pub fn m(&self) -> u64 {
        self.qn().saturating_add(1) / (self.q + 1)
    }

    /// Size of the field the curve is counted over: `q^2` for the Hermitian curve, else `q^{2n}`.
    pub fn count_field_order(&self) -> u64 {
        match self.family {
            Family::Hermitian => self.q * self.q,
            _ => self.qn().saturating_mul(self.qn()),
        }
    }

    /// Degree of the Kummer cover of the projective line, for the families that are one.
    pub fn kummer_degree(&self) -> Option<u64> {
        match self.family {
            Family::EtaZ => Some(self.qn() + 1),
            Family::RhoZ => Some(self.m()),
            Family::Subcover => Some((self.qn() + 1) / self.k2),
            _ => None,
        }
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<(), CurveError> {
        let ok = ctx.q() == self.q && (self.family == Family::Hermitian || ctx.n() == self.n);
        if ok {
            Ok(())
        } else {
            Err(CurveError::ContextMismatch {
                ctx_q: ctx.q(),
                ctx_n: ctx.n(),
            })
        }
    }
}

/// Place counts by category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub infinite: u64,
    pub ramified: u64,
    pub split: u64,
}

impl Tally {
    pub fn total(&self) -> u64 {
        self.infinite + self.ramified + self.split
    }
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            infinite: self.infinite + o.infinite,
            ramified: self.ramified + o.ramified,
            split: self.split + o.split,
        }
    }
}

impl AddAssign for Tally {
    fn add_assign(&mut self, o: Tally) {
        *self = *self + o;
    }
}

/// How power-residue tests were carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LogTable,
    Exponentiation,
}

impl Strategy {
    pub fn of(ctx: &FieldCtx) -> Self {
        if ctx.has_log_tables() {
            Strategy::LogTable
        } else {
            Strategy::Exponentiation
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::LogTable => "log-table",
            Strategy::Exponentiation => "exponentiation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub spec: CurveSpec,
    pub genus: u64,
    /// `N + 1 + 2 g sqrt(N)` for the counting field of size `N`.
    pub hw_target: u64,
    pub infinite_places: u64,
    pub ramified_places: u64,
    pub split_places: u64,
    pub total: u64,
    pub maximal: bool,
    pub strategy: Strategy,
}

/// A place counter over a domain `0..domain_len()` of field-element indices.
pub trait PlaceCounter: Sync {
    fn spec(&self) -> &CurveSpec;
    fn strategy(&self) -> Strategy;
    fn domain_len(&self) -> u64;
    /// Places not attached to any domain index.
    fn base(&self) -> Tally;
    fn tally(&self, range: Range<u64>) -> Result<Tally, CurveError>;
}

/// Genus and Hasse–Weil comparison for a finished tally.
pub fn finish(spec: &CurveSpec, strategy: Strategy, t: Tally) -> Result<CountReport, CurveError> {
    let g = genus::genus_report(spec)?.genus_closed;
    let order = spec.count_field_order();
    let sqrt = match spec.family {
        Family::Hermitian => spec.q,
        _ => spec.qn(),
    };
    let hw = g
        .checked_mul(2)
        .and_then(|x| x.checked_mul(sqrt))
        .and_then(|x| x.checked_add(order + 1))
        .ok_or(CurveError::Overflow)?;
    Ok(CountReport {
        spec: spec.clone(),
        genus: g,
        hw_target: hw,
        infinite_places: t.infinite,
        ramified_places: t.ramified,
        split_places: t.split,
        total: t.total(),
        maximal: t.total() == hw,
        strategy,
    })
}

/// Runs a counter on the calling thread.
pub fn run<C: PlaceCounter + ?Sized>(counter: &C) -> Result<CountReport, CurveError> {
    let t = counter.base() + counter.tally(0..counter.domain_len())?;
    finish(counter.spec(), counter.strategy(), t)
}

pub fn count_xn(ctx: &FieldCtx) -> Result<CountReport, CurveError> {
    run(&XnCounter::xn(ctx))
}

pub fn count_ggs(ctx: &FieldCtx) -> Result<CountReport, CurveError> {
    run(&XnCounter::ggs(ctx))
}

/// Counts `y^{q+1} = x^{q+1} - 1` over `F_{q^2}`, the subfield of `ctx`.
pub fn count_hermitian(ctx: &FieldCtx) -> Result<CountReport, CurveError> {
    run(&HermitianCounter::new(ctx)?)
}

/// Counts any supported family. Subcover parameters come from `spec`.
pub fn count(ctx: &FieldCtx, spec: &CurveSpec) -> Result<CountReport, CurveError> {
    spec.validate()?;
    spec.check_ctx(ctx)?;
    match spec.family {
        Family::Xn => count_xn(ctx),
        Family::Ggs => count_ggs(ctx),
        Family::Hermitian => count_hermitian(ctx),
        Family::EtaZ => run(&etaz_counter(ctx)?),
        Family::RhoZ => run(&rhoz_counter(ctx)?),
        Family::Subcover => run(&subcover_counter(ctx, spec.k1, spec.k2)?),
    }
}

/// Builds the boxed counter for a spec, for callers that drive the kernel themselves.
pub fn counter<'a>(
    ctx: &'a FieldCtx,
    spec: &CurveSpec,
) -> Result<alloc::boxed::Box<dyn PlaceCounter + 'a>, CurveError> {
    use alloc::boxed::Box;
    spec.validate()?;
    spec.check_ctx(ctx)?;
    Ok(match spec.family {
        Family::Xn => Box::new(XnCounter::xn(ctx)),
        Family::Ggs => Box::new(XnCounter::ggs(ctx)),
        Family::Hermitian => Box::new(HermitianCounter::new(ctx)?),
        Family::EtaZ => Box::new(etaz_counter(ctx)?),
        Family::RhoZ => Box::new(rhoz_counter(ctx)?),
        Family::Subcover => Box::new(subcover_counter(ctx, spec.k1, spec.k2)?),
    })
}

pub(crate) fn gcd_i(k: u64, d: i64) -> u64 {
    gcd(k, d.unsigned_abs())
}

pub(crate) fn fe_index(ctx: &FieldCtx, i: u64) -> Fe {
    ctx.element(i as u32).expect("index within the field")
}
