//! Kummer covers `w^k = f(s)` of the projective line over `F_Q`.
//!
//! Above a place `P` outside the support of `f` there are `k` rational places
//! if `f(P)` is a `k`-th power and none otherwise. Above a support place with
//! valuation `d`, write `r = gcd(k, d)`; then there are `r` rational places if
//! the unit residue of `f` at `P` is an `r`-th power and none otherwise. The
//! case `r = 1` is a single totally ramified place.

use alloc::vec::Vec;
use core::ops::Range;

use super::{gcd_i, fe_index, CurveError, CurveSpec, Family, PlaceCounter, Strategy, Tally};
use crate::gf::{Fe, FieldCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Fe),
    Infinity,
}

/// Valuation `d` of `f` at a place and the residue of `f·π^{-d}` there, for the
/// uniformizer `π = s - a` or `π = 1/s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamificationDatum {
    pub place: Place,
    pub d: i64,
    pub unit_residue: Fe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval {
    Value(Fe),
    Zero,
    Pole,
}

pub trait RationalFn: Sync {
    fn eval(&self, ctx: &FieldCtx, s: Fe) -> Eval;
    fn eval_infinity(&self, ctx: &FieldCtx) -> Eval;
}

/// `c · Π (s - a_i)^{d_i}` with distinct roots `a_i` and nonzero `d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredFn {
    constant: Fe,
    factors: Vec<(Fe, i64)>,
}

impl FactoredFn {
    /// Merges repeated roots and drops zero exponents. `constant` must be nonzero.
    pub fn new(constant: Fe, factors: impl IntoIterator<Item = (Fe, i64)>) -> Self {
        let mut v: Vec<(Fe, i64)> = factors.into_iter().collect();
        v.sort_unstable_by_key(|&(a, _)| a);
        let mut merged: Vec<(Fe, i64)> = Vec::with_capacity(v.len());
        for (a, d) in v {
            match merged.last_mut() {
                Some((b, e)) if *b == a => *e += d,
                _ => merged.push((a, d)),
            }
        }
        merged.retain(|&(_, d)| d != 0);
        Self {
            constant,
            factors: merged,
        }
    }

    /// `η^{q+1} - η = η (η - 1)^q`.
    pub fn etaz(ctx: &FieldCtx) -> Self {
        Self::new(Fe::ONE, [(Fe::ZERO, 1), (Fe::ONE, ctx.q() as i64)])
    }

    /// `(ρ^{q^2-1} - 1)/ρ^{q-1}`: simple zeros at `F_{q^2}^*`, a pole of order `q-1` at 0.
    pub fn rhoz(ctx: &FieldCtx) -> Self {
        let q = ctx.q() as i64;
        let f_q2 = ctx.subfield_elements(2).expect("2 divides 2n");
        let zeros = f_q2.into_iter().skip(1).map(|a| (a, 1));
        Self::new(Fe::ONE, core::iter::once((Fe::ZERO, 1 - q)).chain(zeros))
    }

    /// `s^{(q+1)/k1} (s^{(q^2-1)/k1} - 1)^{q+1} / (s^{(q+1)/k1} - 1)^q`.
    pub fn subcover(ctx: &FieldCtx, k1: u64) -> Self {
        let q = ctx.q();
        let a = (q + 1) / k1;
        let b = (q * q - 1) / k1;
        let roots_b = ctx.roots_of_unity(b).expect("b divides q^2 - 1");
        let factors = roots_b.into_iter().map(|beta| {
            if ctx.pow(beta, a) == Fe::ONE {
                (beta, 1)
            } else {
                (beta, q as i64 + 1)
            }
        });
        Self::new(Fe::ONE, core::iter::once((Fe::ZERO, a as i64)).chain(factors))
    }

    pub fn constant(&self) -> Fe {
        self.constant
    }

    pub fn factors(&self) -> &[(Fe, i64)] {
        &self.factors
    }

    pub fn valuation_at_infinity(&self) -> i64 {
        -self.factors.iter().map(|&(_, d)| d).sum::<i64>()
    }

    /// The support of the divisor of `f` with unit residues.
    pub fn support(&self, ctx: &FieldCtx) -> Vec<RamificationDatum> {
        let mut out: Vec<RamificationDatum> = self
            .factors
            .iter()
            .map(|&(a, d)| {
                let mut r = self.constant;
                for &(b, e) in &self.factors {
                    if b != a {
                        let t = ctx.pow_signed(ctx.sub(a, b), e).expect("distinct roots");
                        r = ctx.mul(r, t);
                    }
                }
                RamificationDatum {
                    place: Place::Finite(a),
                    d,
                    unit_residue: r,
                }
            })
            .collect();
        let v = self.valuation_at_infinity();
        if v != 0 {
            out.push(RamificationDatum {
                place: Place::Infinity,
                d: v,
                unit_residue: self.constant,
            });
        }
        out
    }
}

impl RationalFn for FactoredFn {
    fn eval(&self, ctx: &FieldCtx, s: Fe) -> Eval {
        let mut acc = self.constant;
        for &(a, d) in &self.factors {
            let t = ctx.sub(s, a);
            if t.is_zero() {
                return if d > 0 { Eval::Zero } else { Eval::Pole };
            }
            acc = ctx.mul(acc, ctx.pow_signed(t, d).expect("nonzero"));
        }
        Eval::Value(acc)
    }

    fn eval_infinity(&self, _ctx: &FieldCtx) -> Eval {
        match self.valuation_at_infinity() {
            0 => Eval::Value(self.constant),
            v if v > 0 => Eval::Zero,
            _ => Eval::Pole,
        }
    }
}

/// Direct evaluation of the family right-hand sides, avoiding the factored product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyFn {
    EtaZ { q: u64 },
    RhoZ { q: u64 },
    Subcover { a: u64, b: u64 },
}

impl FamilyFn {
    pub fn subcover(q: u64, k1: u64) -> Self {
        FamilyFn::Subcover {
            a: (q + 1) / k1,
            b: (q * q - 1) / k1,
        }
    }
}

fn nonzero(v: Fe) -> Eval {
    if v.is_zero() {
        Eval::Zero
    } else {
        Eval::Value(v)
    }
}

impl RationalFn for FamilyFn {
    #[inline]
    fn eval(&self, ctx: &FieldCtx, s: Fe) -> Eval {
        match *self {
            FamilyFn::EtaZ { q } => nonzero(ctx.sub(ctx.pow(s, q + 1), s)),
            FamilyFn::RhoZ { q } => {
                if s.is_zero() {
                    return Eval::Pole;
                }
                let num = ctx.sub(ctx.pow(s, q * q - 1), Fe::ONE);
                nonzero(ctx.mul(num, ctx.inv(ctx.pow(s, q - 1)).expect("s != 0")))
            }
            FamilyFn::Subcover { a, b } => {
                if s.is_zero() {
                    return Eval::Zero;
                }
                let sa1 = ctx.sub(ctx.pow(s, a), Fe::ONE);
                let sb1 = ctx.sub(ctx.pow(s, b), Fe::ONE);
                if sa1.is_zero() || sb1.is_zero() {
                    // every root of s^a = 1 is a root of s^b = 1, with net order 1
                    return Eval::Zero;
                }
                let num = ctx.mul(ctx.mul(ctx.pow(s, a), sb1), ctx.frob(sb1, 1));
                let den = ctx.frob(sa1, 1);
                Eval::Value(ctx.div(num, den).expect("den != 0"))
            }
        }
    }

    fn eval_infinity(&self, _ctx: &FieldCtx) -> Eval {
        Eval::Pole
    }
}

pub struct KummerCounter<'a, F> {
    ctx: &'a FieldCtx,
    spec: CurveSpec,
    k: u64,
    f: F,
    /// Finite support places, sorted, with their data.
    keys: Vec<Fe>,
    finite: Vec<RamificationDatum>,
    at_infinity: u64,
}

impl<'a, F: RationalFn> KummerCounter<'a, F> {
    /// `support` lists every zero and pole of `f`; `f` is evaluated elsewhere.
    pub fn new(
        ctx: &'a FieldCtx,
        spec: CurveSpec,
        k: u64,
        f: F,
        support: &[RamificationDatum],
    ) -> Result<Self, CurveError> {
        if k == 0 || !(ctx.order() - 1).is_multiple_of(k) || k.is_multiple_of(ctx.characteristic()) {
            return Err(CurveError::BadKummerDegree(k));
        }
        if support.iter().map(|r| r.d).sum::<i64>() != 0 || support.iter().any(|r| r.d == 0) {
            return Err(CurveError::NotPrincipal);
        }
        let mut finite: Vec<RamificationDatum> = support
            .iter()
            .copied()
            .filter(|r| r.place != Place::Infinity)
            .collect();
        finite.sort_unstable_by_key(|r| r.place);
        let keys = finite
            .iter()
            .map(|r| match r.place {
                Place::Finite(a) => a,
                Place::Infinity => unreachable!(),
            })
            .collect();
        let at_infinity = match support.iter().find(|r| r.place == Place::Infinity) {
            Some(r) => ramified_contribution(ctx, k, r),
            None => match f.eval_infinity(ctx) {
                Eval::Value(v) if !v.is_zero() => unramified_contribution(ctx, k, v),
                _ => return Err(CurveError::SupportInconsistent(Place::Infinity)),
            },
        };
        Ok(Self {
            ctx,
            spec,
            k,
            f,
            keys,
            finite,
            at_infinity,
        })
    }

    pub fn degree(&self) -> u64 {
        self.k
    }
}

fn ramified_contribution(ctx: &FieldCtx, k: u64, r: &RamificationDatum) -> u64 {
    let g = gcd_i(k, r.d);
    if ctx.is_dth_power_unchecked(r.unit_residue, g) {
        g
    } else {
        0
    }
}

#[inline]
fn unramified_contribution(ctx: &FieldCtx, k: u64, v: Fe) -> u64 {
    if ctx.is_dth_power_unchecked(v, k) {
        k
    } else {
        0
    }
}

impl<F: RationalFn> PlaceCounter for KummerCounter<'_, F> {
    fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    fn strategy(&self) -> Strategy {
        Strategy::of(self.ctx)
    }

    fn domain_len(&self) -> u64 {
        self.ctx.order()
    }

    fn base(&self) -> Tally {
        Tally {
            infinite: self.at_infinity,
            ..Tally::default()
        }
    }

    fn tally(&self, range: Range<u64>) -> Result<Tally, CurveError> {
        let ctx = self.ctx;
        let mut t = Tally::default();
        for i in range {
            let s = fe_index(ctx, i);
            if let Ok(j) = self.keys.binary_search(&s) {
                t.ramified += ramified_contribution(ctx, self.k, &self.finite[j]);
                continue;
            }
            match self.f.eval(ctx, s) {
                Eval::Value(v) => t.split += unramified_contribution(ctx, self.k, v),
                _ => return Err(CurveError::SupportInconsistent(Place::Finite(s))),
            }
        }
        Ok(t)
    }
}

/// Counts rational places of `w^k = f` over `F_Q`, reported against `spec`.
pub fn count_kummer_p1<F: RationalFn>(
    ctx: &FieldCtx,
    spec: CurveSpec,
    support: &[RamificationDatum],
    k: u64,
    f: F,
) -> Result<super::CountReport, CurveError> {
    super::run(&KummerCounter::new(ctx, spec, k, f, support)?)
}

/// `w^{q^n+1} = η^{q+1} - η`.
pub fn etaz_counter(ctx: &FieldCtx) -> Result<KummerCounter<'_, FamilyFn>, CurveError> {
    let spec = CurveSpec::new(Family::EtaZ, ctx.q(), ctx.n());
    let k = spec.kummer_degree().expect("Kummer family");
    let support = FactoredFn::etaz(ctx).support(ctx);
    KummerCounter::new(ctx, spec, k, FamilyFn::EtaZ { q: ctx.q() }, &support)
}

/// `z^m = (ρ^{q^2-1} - 1)/ρ^{q-1}`.
pub fn rhoz_counter(ctx: &FieldCtx) -> Result<KummerCounter<'_, FamilyFn>, CurveError> {
    let spec = CurveSpec::new(Family::RhoZ, ctx.q(), ctx.n());
    let k = spec.kummer_degree().expect("Kummer family");
    let support = FactoredFn::rhoz(ctx).support(ctx);
    KummerCounter::new(ctx, spec, k, FamilyFn::RhoZ { q: ctx.q() }, &support)
}

/// `w^{(q^n+1)/k2} = s^{(q+1)/k1} (s^{(q^2-1)/k1} - 1)^{q+1} / (s^{(q+1)/k1} - 1)^q`.
pub fn subcover_counter(
    ctx: &FieldCtx,
    k1: u64,
    k2: u64,
) -> Result<KummerCounter<'_, FamilyFn>, CurveError> {
    let spec = CurveSpec::subcover(ctx.q(), ctx.n(), k1, k2);
    spec.validate()?;
    let k = spec.kummer_degree().expect("Kummer family");
    let support = FactoredFn::subcover(ctx, k1).support(ctx);
    KummerCounter::new(ctx, spec, k, FamilyFn::subcover(ctx.q(), k1), &support)
}
