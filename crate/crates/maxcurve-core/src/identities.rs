//! Exhaustive checks of the field identities behind the `X_n` point count.
//!
//! Throughout, `T = F_{q^n} \ F_q` and `α ∈ F_{q^2} \ F_q` is the first such element.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::curves::{count_xn, CurveError};
use crate::gf::{Fe, FieldCtx, GfError};
use crate::poly::{DensePoly, PolyError};

fn t_set(ctx: &FieldCtx) -> Vec<Fe> {
    let n = ctx.n();
    let mut t: Vec<Fe> = ctx
        .subfield_elements(n)
        .expect("n divides 2n")
        .into_iter()
        .filter(|&x| !ctx.is_fixed_by(x, 1))
        .collect();
    t.sort_unstable();
    t
}

fn in_fqn(ctx: &FieldCtx, x: Fe) -> bool {
    ctx.is_fixed_by(x, ctx.n())
}

fn in_fq(ctx: &FieldCtx, x: Fe) -> bool {
    ctx.is_fixed_by(x, 1)
}

/// `(1 + αt^q)/(1 - t^{q-1})`.
pub fn eta_param(ctx: &FieldCtx, alpha: Fe, t: Fe) -> Fe {
    let q = ctx.q();
    let num = ctx.add(Fe::ONE, ctx.mul(alpha, ctx.frob(t, 1)));
    let den = ctx.sub(Fe::ONE, ctx.pow(t, q - 1));
    ctx.div(num, den).expect("t is not in F_q")
}

/// `(1 + αt^q)/(t^{q-1}(1 + αt))`.
pub fn delta_of(ctx: &FieldCtx, alpha: Fe, t: Fe) -> Fe {
    let q = ctx.q();
    let num = ctx.add(Fe::ONE, ctx.mul(alpha, ctx.frob(t, 1)));
    let den = ctx.mul(ctx.pow(t, q - 1), ctx.add(Fe::ONE, ctx.mul(alpha, t)));
    ctx.div(num, den).expect("1 + αt != 0 for t in F_{q^n}")
}

/// `ρ^{q+1}` of the third type: `(a/t) Π_{j=0}^{n} (1 + α^{q^{j+1}} t^{q^{n-j}})`.
pub fn rho_pow(ctx: &FieldCtx, alpha: Fe, a: Fe, t: Fe) -> Fe {
    let n = ctx.n();
    let mut acc = ctx.div(a, t).expect("t != 0");
    for j in 0..=n {
        let f = ctx.add(Fe::ONE, ctx.mul(ctx.frob(alpha, j + 1), ctx.frob(t, n - j)));
        acc = ctx.mul(acc, f);
    }
    acc
}

/// `Σ_{ℓ=0}^{2n-1} (-1)^ℓ w^{q^ℓ}`.
pub fn alternating_trace(ctx: &FieldCtx, w: Fe) -> Fe {
    (0..2 * ctx.n()).fold(Fe::ZERO, |acc, l| {
        let t = ctx.frob(w, l);
        if l % 2 == 0 {
            ctx.add(acc, t)
        } else {
            ctx.sub(acc, t)
        }
    })
}

/// `P(T) = Σ_{ℓ=0}^{2n-1} (-1)^ℓ T^{q^ℓ (q^{n-1}-1)/(q-1)}`.
pub fn p_of(ctx: &FieldCtx, t: Fe) -> Fe {
    let q = ctx.q();
    let e = (q.pow(ctx.n() - 1) - 1) / (q - 1);
    alternating_trace(ctx, ctx.pow(t, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaCountReport {
    /// `η ∈ F_Q \ F_{q^n}` with `η^{q+1} - η ∈ F_{q^n}^*`.
    pub count: u64,
    /// `q^n - q`.
    pub expected: u64,
    /// Distinct values of the parametrization over `T`.
    pub parametrized: u64,
    pub sets_equal: bool,
    /// The parametrization with a second choice of `α` gives the same set.
    pub alpha_independent: bool,
}

impl EtaCountReport {
    pub fn ok(&self) -> bool {
        self.count == self.expected
            && self.parametrized == self.expected
            && self.sets_equal
            && self.alpha_independent
    }
}

pub fn eta_count(ctx: &FieldCtx) -> EtaCountReport {
    let q = ctx.q();
    let found: BTreeSet<Fe> = ctx
        .elements()
        .filter(|&eta| {
            if in_fqn(ctx, eta) {
                return false;
            }
            let v = ctx.sub(ctx.pow(eta, q + 1), eta);
            !v.is_zero() && in_fqn(ctx, v)
        })
        .collect();
    let ts = t_set(ctx);
    let param = |alpha: Fe| -> BTreeSet<Fe> { ts.iter().map(|&t| eta_param(ctx, alpha, t)).collect() };
    let alphas = ctx.alphas();
    let p1 = param(alphas[0]);
    let p2 = param(alphas[1]);
    EtaCountReport {
        count: found.len() as u64,
        expected: ctx.sqrt_order() - q,
        parametrized: p1.len() as u64,
        sets_equal: found == p1,
        alpha_independent: p1 == p2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPowerReport {
    pub witnesses: u64,
    /// `δ(t)` is a `(q^2-1)`-th power for every `t ∈ T`.
    pub all_powers: bool,
    /// `δ(t) = t^{-(q-1)} (Π_{i odd} (1 + α t^{q^{n-i}}))^{q^2-1}` for every `t ∈ T`.
    pub product_formula: bool,
    /// Size of `(F_{q^n}^*)^{q-1} \ {1}`.
    pub family1: u64,
    pub family1_powers: bool,
}

impl DeltaPowerReport {
    pub fn ok(&self) -> bool {
        self.witnesses > 0 && self.all_powers && self.product_formula && self.family1_powers
    }
}

pub fn delta_power(ctx: &FieldCtx) -> DeltaPowerReport {
    let q = ctx.q();
    let n = ctx.n();
    let d = q * q - 1;
    let alpha = ctx.alpha();
    let ts = t_set(ctx);
    let mut all_powers = true;
    let mut product_formula = true;
    for &t in &ts {
        let delta = delta_of(ctx, alpha, t);
        all_powers &= ctx.is_dth_power_unchecked(delta, d);
        let prod = (1..=n).step_by(2).fold(Fe::ONE, |acc, i| {
            ctx.mul(acc, ctx.add(Fe::ONE, ctx.mul(alpha, ctx.frob(t, n - i))))
        });
        let rhs = ctx.mul(
            ctx.inv(ctx.pow(t, q - 1)).expect("t != 0"),
            ctx.pow(prod, d),
        );
        product_formula &= rhs == delta;
    }
    let f1 = family1(ctx);
    DeltaPowerReport {
        witnesses: ts.len() as u64,
        all_powers,
        product_formula,
        family1: f1.len() as u64,
        family1_powers: f1.iter().all(|&x| ctx.is_dth_power_unchecked(x, d)),
    }
}

/// `(F_{q^n}^*)^{q-1} \ {1}`.
pub fn family1(ctx: &FieldCtx) -> BTreeSet<Fe> {
    let q = ctx.q();
    ctx.subfield_elements(ctx.n())
        .expect("n divides 2n")
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| ctx.pow(x, q - 1))
        .filter(|&x| x != Fe::ONE)
        .collect()
}

/// `{δ(t) : t ∈ T}`.
pub fn family2(ctx: &FieldCtx) -> BTreeSet<Fe> {
    let alpha = ctx.alpha();
    t_set(ctx).into_iter().map(|t| delta_of(ctx, alpha, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    /// Pairs `(a, t) ∈ F_q^* × T`.
    pub pairs: u64,
    pub vanishing: u64,
    /// Distinct values of `ρ^{q+1}` over the pairs.
    pub distinct: u64,
    /// `A^{q^n+1} ∈ F_q^*` for every `t`, `A = Π_{j<n} (1 + α^{q^j} t^{q^{n-j}})`.
    pub norm_in_fq: bool,
    /// First `w ∈ F_Q^*` in encoding order whose alternating trace of `1/w` is nonzero.
    pub control: Option<Fe>,
}

impl TraceReport {
    pub fn ok(&self) -> bool {
        self.pairs > 0 && self.vanishing == self.pairs && self.norm_in_fq && self.control.is_some()
    }
}

/// Distinct `ρ^{q+1}` values of the third type.
pub fn rho_pow_set(ctx: &FieldCtx) -> BTreeSet<Fe> {
    let alpha = ctx.alpha();
    let fq: Vec<Fe> = ctx
        .subfield_elements(1)
        .expect("1 divides 2n")
        .into_iter()
        .filter(|a| !a.is_zero())
        .collect();
    let ts = t_set(ctx);
    fq.iter()
        .flat_map(|&a| ts.iter().map(move |&t| rho_pow(ctx, alpha, a, t)))
        .collect()
}

pub fn trace_vanishing(ctx: &FieldCtx) -> TraceReport {
    let n = ctx.n();
    let alpha = ctx.alpha();
    let qn1 = ctx.sqrt_order() + 1;
    let fq: Vec<Fe> = ctx
        .subfield_elements(1)
        .expect("1 divides 2n")
        .into_iter()
        .filter(|a| !a.is_zero())
        .collect();
    let ts = t_set(ctx);
    let mut pairs = 0;
    let mut vanishing = 0;
    let mut values = BTreeSet::new();
    for &a in &fq {
        for &t in &ts {
            let w = rho_pow(ctx, alpha, a, t);
            pairs += 1;
            values.insert(w);
            let inv = ctx.inv(w).expect("ρ^{q+1} != 0");
            vanishing += alternating_trace(ctx, inv).is_zero() as u64;
        }
    }
    let norm_in_fq = ts.iter().all(|&t| {
        let a = (0..n).fold(Fe::ONE, |acc, j| {
            ctx.mul(acc, ctx.add(Fe::ONE, ctx.mul(ctx.frob(alpha, j), ctx.frob(t, n - j))))
        });
        let v = ctx.pow(a, qn1);
        !v.is_zero() && in_fq(ctx, v)
    });
    let control = ctx
        .elements()
        .skip(1)
        .find(|&w| !alternating_trace(ctx, ctx.inv(w).expect("w != 0")).is_zero());
    TraceReport {
        pairs,
        vanishing,
        distinct: values.len() as u64,
        norm_in_fq,
        control,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PVanishReport {
    pub witnesses: u64,
    /// `P(s + α) = 0` count over `s ∈ T`.
    pub vanishing: u64,
    /// First `T ∈ F_Q` in encoding order with `P(T) != 0`.
    pub control: Option<Fe>,
}

impl PVanishReport {
    pub fn ok(&self) -> bool {
        self.witnesses > 0 && self.vanishing == self.witnesses && self.control.is_some()
    }
}

pub fn p_vanishing(ctx: &FieldCtx) -> PVanishReport {
    let alpha = ctx.alpha();
    let ts = t_set(ctx);
    let vanishing = ts
        .iter()
        .filter(|&&s| p_of(ctx, ctx.add(s, alpha)).is_zero())
        .count() as u64;
    PVanishReport {
        witnesses: ts.len() as u64,
        vanishing,
        control: ctx.elements().find(|&t| !p_of(ctx, t).is_zero()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1P2Case {
    pub c: Fe,
    pub equal: bool,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1P2Report {
    pub q: u64,
    pub n: u32,
    /// One case per `c ∈ F_{q^2}` with `c^q + c = 0`.
    pub cases: Vec<P1P2Case>,
}

impl P1P2Report {
    pub fn ok(&self) -> bool {
        self.cases.iter().any(|c| !c.c.is_zero()) && self.cases.iter().all(|c| c.equal)
    }
}

/// `Σ_{ℓ=1}^{n} (-1)^ℓ A^{(q^n - q^ℓ)/(q-1)} B^{(q^{ℓ-1}-1)/(q-1)}`.
fn p_side(
    ctx: &FieldCtx,
    q: u64,
    n: u32,
    a: &DensePoly<Fe>,
    b: &DensePoly<Fe>,
) -> Result<DensePoly<Fe>, PolyError> {
    let mut acc = DensePoly::zero(ctx);
    for l in 1..=n {
        let ea = (q.pow(n) - q.pow(l)) / (q - 1);
        let eb = (q.pow(l - 1) - 1) / (q - 1);
        let term = a.pow(ea, ctx)?.mul(&b.pow(eb, ctx)?, ctx)?;
        acc = if l % 2 == 0 {
            acc.add(&term, ctx)?
        } else {
            acc.sub(&term, ctx)?
        };
    }
    Ok(acc)
}

/// Compares `P1(T) = Σ (-1)^ℓ T^{...}(T+c)^{...}` with `P2`, the same sum with
/// `T` and `T + c` exchanged, as polynomials over `F_{q^2}`.
pub fn p1_p2(q: u64, n: u32, log_bound: u64) -> Result<P1P2Report, CurveError> {
    if n.is_multiple_of(2) {
        return Err(GfError::NIsEven(n).into());
    }
    let ctx = FieldCtx::for_q(q, 3, log_bound)?;
    let cs: Vec<Fe> = ctx
        .subfield_elements(2)?
        .into_iter()
        .filter(|&c| ctx.add(ctx.frob(c, 1), c).is_zero())
        .collect();
    let t = DensePoly::monomial(&ctx, Fe::ONE, 1);
    let mut cases = Vec::with_capacity(cs.len());
    for c in cs {
        let tc = t.add(&DensePoly::constant(&ctx, c), &ctx).map_err(|_| CurveError::Overflow)?;
        let p1 = p_side(&ctx, q, n, &t, &tc).map_err(|_| CurveError::Overflow)?;
        let p2 = p_side(&ctx, q, n, &tc, &t).map_err(|_| CurveError::Overflow)?;
        cases.push(P1P2Case {
            c,
            equal: p1 == p2,
            degree: p1.degree(),
        });
    }
    Ok(P1P2Report { q, n, cases })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCountReport {
    pub family1: u64,
    pub family2: u64,
    pub overlap: u64,
    /// `δ ∈ F_Q \ {0, 1}`, a `(q^2-1)`-th power, with `η = δ/(δ-1)` and
    /// `η^{q+1} - η ∈ F_{q^n}^*`.
    pub classified: u64,
    pub classified_is_union: bool,
}

impl SplitCountReport {
    pub fn expected(q: u64, qn: u64) -> (u64, u64) {
        ((qn - q) / (q - 1), qn - q)
    }

    pub fn ok(&self, q: u64, qn: u64) -> bool {
        let (e1, e2) = Self::expected(q, qn);
        self.family1 == e1 && self.family2 == e2 && self.overlap == 0 && self.classified_is_union
    }
}

pub fn splitting_count(ctx: &FieldCtx) -> SplitCountReport {
    let q = ctx.q();
    let f1 = family1(ctx);
    let f2 = family2(ctx);
    let classified: BTreeSet<Fe> = ctx
        .elements()
        .filter(|&d| {
            if d.is_zero() || d == Fe::ONE || !ctx.is_dth_power_unchecked(d, q * q - 1) {
                return false;
            }
            let eta = ctx.div(d, ctx.sub(d, Fe::ONE)).expect("d != 1");
            let v = ctx.sub(ctx.pow(eta, q + 1), eta);
            !v.is_zero() && in_fqn(ctx, v)
        })
        .collect();
    let union: BTreeSet<Fe> = f1.union(&f2).copied().collect();
    SplitCountReport {
        family1: f1.len() as u64,
        family2: f2.len() as u64,
        overlap: f1.intersection(&f2).count() as u64,
        classified: classified.len() as u64,
        classified_is_union: classified == union,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// `ρ ∈ F_Q` with `ρ^{q+1} ∈ F_{q^n} \ F_q`.
    pub type2: u64,
    /// `ρ ∈ F_Q` with `ρ^{q+1}` among the third-type values.
    pub type3: u64,
    /// `ρ` counted by both.
    pub both: u64,
    /// `m q (type2 + type3 - both)`.
    pub implied_split: u64,
    /// Split places of `X_n` from the direct count.
    pub counted_split: u64,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.both == 0 && self.implied_split == self.counted_split
    }
}

pub fn closure_split(ctx: &FieldCtx) -> Result<ClosureReport, CurveError> {
    let q = ctx.q();
    let s3 = rho_pow_set(ctx);
    let (mut type2, mut type3, mut both) = (0u64, 0u64, 0u64);
    for rho in ctx.elements().skip(1) {
        let w = ctx.pow(rho, q + 1);
        let a = in_fqn(ctx, w) && !in_fq(ctx, w);
        let b = s3.contains(&w);
        type2 += a as u64;
        type3 += b as u64;
        both += (a && b) as u64;
    }
    let implied = (type2 + type3 - both)
        .checked_mul(ctx.m() * q)
        .ok_or(CurveError::Overflow)?;
    Ok(ClosureReport {
        type2,
        type3,
        both,
        implied_split: implied,
        counted_split: count_xn(ctx)?.split_places,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_n3_identities() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        assert!(eta_count(&c).ok());
        assert!(delta_power(&c).ok());
        assert!(trace_vanishing(&c).ok());
        assert!(p_vanishing(&c).ok());
        assert!(splitting_count(&c).ok(2, 8));
        assert!(closure_split(&c).unwrap().ok());
    }

    #[test]
    fn p1_p2_small() {
        let r = p1_p2(2, 3, crate::gf::DEFAULT_LOG_BOUND).unwrap();
        assert_eq!(r.cases.len(), 2);
        assert!(r.ok());
    }
}
