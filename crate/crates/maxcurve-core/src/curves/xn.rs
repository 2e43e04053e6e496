//! Counters for `X_n`, the GGS curve `C_n`, and the Hermitian curve.

use alloc::vec::Vec;
use core::ops::Range;

use super::{fe_index, CurveError, CurveSpec, Family, PlaceCounter, Strategy, Tally};
use crate::gf::RootTable;
use crate::gf::{Fe, FieldCtx, GfError};

/// Counts `z^m = y(x^{q^2}-x)/c(x)`, `y^{q+1} = c(x)` with `c = x^{q+1} - 1` (`X_n`)
/// or `c = x^q + x` (GGS), fibre by fibre over `x ∈ F_Q`.
///
/// A fibre with `c = 0` is one totally ramified place. Otherwise, if `c` is a
/// `(q+1)`-th power, each root `y` gives `u = y(x^{q^2}-x)/c`; `u = 0` is a
/// ramified place and a nonzero `u` gives `m` places iff it is an `m`-th power.
/// All `q+1` roots share the verdict: they differ by `(q+1)`-th roots of unity,
/// which are `m`-th powers. The test itself uses `u^{(Q-1)/m} = (u^{q+1})^{q^n-1}`
/// with `u^{q+1} = (x^{q^2}-x)^{q+1}/c^q`, so no root has to be extracted.
pub struct XnCounter<'a> {
    ctx: &'a FieldCtx,
    spec: CurveSpec,
    ggs: bool,
}

impl<'a> XnCounter<'a> {
    pub fn xn(ctx: &'a FieldCtx) -> Self {
        Self {
            ctx,
            spec: CurveSpec::new(Family::Xn, ctx.q(), ctx.n()),
            ggs: false,
        }
    }

    pub fn ggs(ctx: &'a FieldCtx) -> Self {
        Self {
            ctx,
            spec: CurveSpec::new(Family::Ggs, ctx.q(), ctx.n()),
            ggs: true,
        }
    }

    #[inline]
    fn c_of(&self, x: Fe) -> Fe {
        let ctx = self.ctx;
        if self.ggs {
            ctx.add(ctx.frob(x, 1), x)
        } else {
            ctx.sub(ctx.pow(x, ctx.q() + 1), Fe::ONE)
        }
    }

    /// Contribution of the fibre over `x` as `(ramified, split)`.
    #[inline]
    pub fn fibre(&self, x: Fe) -> (u64, u64) {
        let ctx = self.ctx;
        let q = ctx.q();
        let c = self.c_of(x);
        if c.is_zero() {
            return (1, 0);
        }
        if !ctx.is_dth_power_unchecked(c, q + 1) {
            return (0, 0);
        }
        let num = ctx.sub(ctx.frob(x, 2), x);
        if num.is_zero() {
            return (q + 1, 0);
        }
        let cq = ctx.frob(c, 1);
        let v = ctx.mul(ctx.pow(num, q + 1), ctx.inv(cq).expect("c != 0"));
        if ctx.is_fixed_by(v, ctx.n()) {
            (0, (q + 1) * ctx.m())
        } else {
            (0, 0)
        }
    }
}

impl PlaceCounter for XnCounter<'_> {
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
            // X_n: the q+1 points at infinity of the Hermitian model, each totally ramified.
            // GGS: the single point at infinity of y^{q+1} = x^q + x.
            infinite: if self.ggs { 1 } else { self.ctx.q() + 1 },
            ..Tally::default()
        }
    }

    fn tally(&self, range: Range<u64>) -> Result<Tally, CurveError> {
        let mut t = Tally::default();
        for i in range {
            let (r, s) = self.fibre(fe_index(self.ctx, i));
            t.ramified += r;
            t.split += s;
        }
        Ok(t)
    }
}

/// Counts `y^{q+1} = x^{q+1} - 1` over the subfield `F_{q^2}` of `ctx`.
pub struct HermitianCounter<'a> {
    ctx: &'a FieldCtx,
    spec: CurveSpec,
    f_q2: Vec<Fe>,
    /// `(N(y), multiplicity)` over `y ∈ F_{q^2}`, sorted.
    norms: Vec<(Fe, u64)>,
}

impl<'a> HermitianCounter<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Result<Self, CurveError> {
        let q = ctx.q();
        let f_q2 = ctx.subfield_elements(2)?;
        let mut all: Vec<Fe> = f_q2.iter().map(|&y| ctx.pow(y, q + 1)).collect();
        all.sort_unstable();
        let mut norms: Vec<(Fe, u64)> = Vec::new();
        for v in all {
            match norms.last_mut() {
                Some((w, k)) if *w == v => *k += 1,
                _ => norms.push((v, 1)),
            }
        }
        Ok(Self {
            ctx,
            spec: CurveSpec::new(Family::Hermitian, q, ctx.n()),
            f_q2,
            norms,
        })
    }
}

impl PlaceCounter for HermitianCounter<'_> {
    fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    fn strategy(&self) -> Strategy {
        Strategy::of(self.ctx)
    }

    fn domain_len(&self) -> u64 {
        self.f_q2.len() as u64
    }

    fn base(&self) -> Tally {
        Tally {
            infinite: self.ctx.q() + 1,
            ..Tally::default()
        }
    }

    fn tally(&self, range: Range<u64>) -> Result<Tally, CurveError> {
        let ctx = self.ctx;
        let mut t = Tally::default();
        for i in range {
            let x = self.f_q2[i as usize];
            let c = ctx.sub(ctx.pow(x, ctx.q() + 1), Fe::ONE);
            let k = self
                .norms
                .binary_search_by_key(&c, |&(v, _)| v)
                .map(|j| self.norms[j].1)
                .unwrap_or(0);
            if c.is_zero() {
                t.ramified += k;
            } else {
                t.split += k;
            }
        }
        Ok(t)
    }
}

/// `d`-th roots through the log tables, or through a [`RootTable`] built once.
pub(crate) enum RootFinder {
    Logs(u64),
    Table(RootTable),
}

impl RootFinder {
    pub(crate) fn new(ctx: &FieldCtx, d: u64) -> Result<Self, GfError> {
        if ctx.has_log_tables() {
            ctx.roots_of_unity(d)?;
            Ok(RootFinder::Logs(d))
        } else {
            Ok(RootFinder::Table(RootTable::build(ctx, d)?))
        }
    }

    pub(crate) fn roots(&self, ctx: &FieldCtx, x: Fe) -> Vec<Fe> {
        match self {
            RootFinder::Logs(d) => ctx.dth_roots(x, *d).expect("divisor checked"),
            RootFinder::Table(t) => t.roots(ctx, x),
        }
    }
}

fn affine_points(ctx: &FieldCtx, ggs: bool) -> Result<Vec<[Fe; 3]>, CurveError> {
    let q = ctx.q();
    let ry = RootFinder::new(ctx, q + 1)?;
    let rz = RootFinder::new(ctx, ctx.m())?;
    let mut out = Vec::new();
    for x in ctx.elements() {
        let c = if ggs {
            ctx.add(ctx.frob(x, 1), x)
        } else {
            ctx.sub(ctx.pow(x, q + 1), Fe::ONE)
        };
        if c.is_zero() {
            out.push([x, Fe::ZERO, Fe::ZERO]);
            continue;
        }
        let w = ctx.div(ctx.sub(ctx.frob(x, 2), x), c)?;
        for y in ry.roots(ctx, c) {
            let u = ctx.mul(y, w);
            if u.is_zero() {
                out.push([x, y, Fe::ZERO]);
            } else {
                out.extend(rz.roots(ctx, u).into_iter().map(|z| [x, y, z]));
            }
        }
    }
    Ok(out)
}

/// Every affine `F_Q`-point of `X_n`, with the `c = 0` fibres as `(x, 0, 0)`.
pub fn xn_affine_points(ctx: &FieldCtx) -> Result<Vec<[Fe; 3]>, CurveError> {
    affine_points(ctx, false)
}

/// Every affine `F_Q`-point of the GGS curve `C_n`, with the `c = 0` fibres as `(x, 0, 0)`.
pub fn ggs_affine_points(ctx: &FieldCtx) -> Result<Vec<[Fe; 3]>, CurveError> {
    affine_points(ctx, true)
}
