//! The verification suites, each writing items into a [`Recorder`].

use maxcurve_core::arith::{checked_pow, prime_power};
use maxcurve_core::autgroup;
use maxcurve_core::curves::maps::{verify_phi, verify_psi};
use maxcurve_core::curves::{xn_affine_points, CountReport};
use maxcurve_core::genus::{self, SpectrumEntry};
use maxcurve_core::identities;
use maxcurve_core::{CurveSpec, Family, FieldCtx};
use serde::Serialize;

use crate::report::Recorder;
use crate::runner;
use crate::AppError;

pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct Settings {
    pub log_bound: u64,
    /// Worker threads for counting, 0 = one per core.
    pub threads: usize,
    /// Largest field order accepted without `force`.
    pub max_order: u64,
    pub force: bool,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            log_bound: maxcurve_core::gf::DEFAULT_LOG_BOUND,
            threads: 0,
            max_order: DEFAULT_MAX_ORDER,
            force: false,
            seed: 1,
        }
    }
}

impl Settings {
    fn check_order(&self, order: u64) -> Result<(), AppError> {
        if order > self.max_order && !self.force {
            return Err(AppError::Resource {
                order,
                bound: self.max_order,
            });
        }
        Ok(())
    }

    /// `F_{q^{2n}}` after checking `q`, the parity of `n` and the resource bound.
    pub fn field(&self, q: u64, n: u32) -> Result<FieldCtx, AppError> {
        check_qn(q, n)?;
        let order = checked_pow(q, 2 * n).unwrap_or(u64::MAX);
        self.check_order(order)?;
        Ok(FieldCtx::for_q(q, n, self.log_bound)?)
    }
}

pub fn check_qn(q: u64, n: u32) -> Result<(), AppError> {
    if prime_power(q).is_none() {
        return Err(AppError::Usage(format!("q = {q} is not a prime power")));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(AppError::Usage(format!("n = {n} must be odd and at least 3")));
    }
    Ok(())
}

/// Closed-form genus against Riemann–Hurwitz, for `X_n` and the two intermediate
/// covers, or for `Y_{k1,k2}` when `k` is given.
pub fn genus(rec: &mut Recorder, q: u64, n: u32, k: Option<(u64, u64)>) -> Result<(), AppError> {
    check_qn(q, n)?;
    match k {
        Some((k1, k2)) => {
            let (e, ms) = rec.time(|| genus::genus_subcover(q, n, k1, k2));
            let e = e?;
            rec.check(format!("genus.subcover.{k1}.{k2}"), e.genus_rh, e.genus, ms);
            if (k1, k2) == (1, 1) {
                rec.check("genus.subcover.1.1.equals_xn", genus::genus_xn(q, n)?, e.genus, ms);
            }
        }
        None => {
            for family in [Family::Xn, Family::EtaZ, Family::RhoZ] {
                let (r, ms) = rec.time(|| genus::genus_report(&CurveSpec::new(family, q, n)));
                let r = r?;
                rec.check(format!("genus.{family}"), r.genus_rh, r.genus_closed, ms);
            }
        }
    }
    Ok(())
}

/// Counts one curve and checks the total against `N + 1 + 2g sqrt(N)`.
pub fn count(rec: &mut Recorder, s: &Settings, spec: &CurveSpec) -> Result<CountReport, AppError> {
    spec.validate()?;
    // the Hermitian counter only visits the subfield F_{q^2}
    let ctx = s.field(spec.q, spec.n)?;
    let (r, ms) = rec.time(|| runner::count(&ctx, spec, s.threads));
    let r = r?;
    let label = match spec.family {
        Family::Subcover => format!("count.subcover.{}.{}", spec.k1, spec.k2),
        f => format!("count.{f}"),
    };
    rec.check(format!("{label}.total"), r.hw_target, r.total, ms);
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub k1: u64,
    pub k2: u64,
    pub k: u64,
    pub delta1: u64,
    pub delta2: u64,
    pub delta3: u64,
    pub genus: u64,
    pub in_paper_list: bool,
}

impl From<&SpectrumEntry> for SpectrumRow {
    fn from(e: &SpectrumEntry) -> Self {
        Self {
            k1: e.k1,
            k2: e.k2,
            k: e.k,
            delta1: e.deltas[0],
            delta2: e.deltas[1],
            delta3: e.deltas[2],
            genus: e.genus,
            in_paper_list: e.in_paper_list,
        }
    }
}

/// One row per divisor pair, with checks against Riemann–Hurwitz and the published list.
pub fn spectrum(rec: &mut Recorder, q: u64, n: u32) -> Result<Vec<SpectrumRow>, AppError> {
    check_qn(q, n)?;
    let (entries, ms) = rec.time(|| -> Result<Vec<SpectrumEntry>, AppError> {
        genus::subcover_pairs(q, n)?
            .into_iter()
            .map(|(k1, k2)| Ok(genus::genus_subcover(q, n, k1, k2)?))
            .collect()
    });
    let entries = entries?;
    for e in &entries {
        rec.check(format!("spectrum.{}.{}", e.k1, e.k2), e.genus_rh, e.genus, ms);
    }
    if let Some(published) = genus::published_spectrum(q, n) {
        let found: Vec<u64> = published
            .iter()
            .copied()
            .filter(|g| entries.iter().any(|e| e.genus == *g))
            .collect();
        rec.check("spectrum.published", published, found, ms);
    }
    Ok(entries.iter().map(SpectrumRow::from).collect())
}

pub fn write_csv<W: std::io::Write>(rows: &[SpectrumRow], w: W) -> Result<(), AppError> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutCheck {
    Orders,
    Action,
    Orbit,
    All,
}

pub fn autgroup(rec: &mut Recorder, s: &Settings, q: u64, n: u32, check: AutCheck) -> Result<(), AppError> {
    let ctx = s.field(q, n)?;
    let qn1 = q.pow(n) + 1;
    let all = check == AutCheck::All;
    if all || check == AutCheck::Orders {
        let (sl, ms) = rec.time(|| autgroup::enumerate_sl(&ctx).len() as u64);
        rec.check("autgroup.sl_order", q * q * q - q, sl, ms);
        let (ml, ms) = rec.time(|| autgroup::enumerate_ml(&ctx));
        rec.check("autgroup.ml_order", q * (q - 1) * (q + 1) * (q + 1), ml.by_conditions.len() as u64, ms);
        rec.check("autgroup.ml_enumerations_agree", true, ml.agree(), ms);
        let (det, ms) = rec.time(|| autgroup::det_characterizes_sl(&ctx));
        rec.check("autgroup.det_one_iff_zeta_one", true, det, ms);
        let (lifts, ms) = rec.time(|| autgroup::lift_count(&ctx));
        rec.check("autgroup.lift_count", q * (q * q - 1) * qn1, lifts, ms);
        let (gen, ms) = rec.time(|| autgroup::closure(&ctx, &autgroup::generators(&ctx)).len() as u64);
        rec.check("autgroup.generated_order", q * (q * q - 1) * qn1, gen, ms);
    }
    if all || check == AutCheck::Action {
        let (r, ms) = rec.time(|| -> Result<_, AppError> {
            let pts = xn_affine_points(&ctx)?;
            Ok(autgroup::verify_action(&ctx, &pts, &autgroup::generators(&ctx), 1000, s.seed))
        });
        let r = r?;
        rec.check("autgroup.action.preserves_curve", true, r.preserved, ms);
        rec.check("autgroup.action.twist", true, r.twist_ok, ms);
        rec.check("autgroup.action.cy_dy_rejected", true, r.cy_dy_counterexample.is_some(), ms);
    }
    if all || check == AutCheck::Orbit {
        let (r, ms) = rec.time(|| autgroup::verify_orbit_infinity(&ctx));
        rec.check("autgroup.orbit.well_defined", true, r.well_defined, ms);
        rec.check("autgroup.orbit.transitive", true, r.transitive, ms);
        rec.check("autgroup.orbit.sharply_transitive_subgroup", true, r.sharply_transitive.is_some(), ms);
        // -I acts trivially on directions when q is odd
        let image = (q * q * q - q) / if q.is_multiple_of(2) { 1 } else { 2 };
        rec.check("autgroup.orbit.sl_image_size", image, r.sl_image_size as u64, ms);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdCheck {
    EtaCount,
    DeltaPower,
    Trace,
    PVanish,
    P1P2,
    SplitCount,
    Phi,
    Psi,
    All,
}

pub fn identity(rec: &mut Recorder, s: &Settings, q: u64, n: u32, check: IdCheck) -> Result<(), AppError> {
    use IdCheck::*;
    let all = check == All;
    let needs_field = matches!(check, All | EtaCount | DeltaPower | Trace | PVanish | SplitCount);
    let ctx = if needs_field { Some(s.field(q, n)?) } else { None };
    let qn = q.pow(n);
    if all || check == EtaCount {
        let ctx = ctx.as_ref().expect("built above");
        let (r, ms) = rec.time(|| identities::eta_count(ctx));
        rec.check("identity.etacount", qn - q, r.count, ms);
        rec.check("identity.etacount.parametrized", qn - q, r.parametrized, ms);
        rec.check("identity.etacount.sets_equal", true, r.sets_equal, ms);
        rec.check("identity.etacount.alpha_independent", true, r.alpha_independent, ms);
    }
    if all || check == DeltaPower {
        let ctx = ctx.as_ref().expect("built above");
        let (r, ms) = rec.time(|| identities::delta_power(ctx));
        rec.check("identity.deltapower.witnesses", qn - q, r.witnesses, ms);
        rec.check("identity.deltapower.all_powers", true, r.all_powers, ms);
        rec.check("identity.deltapower.product_formula", true, r.product_formula, ms);
        rec.check("identity.deltapower.family1_powers", true, r.family1_powers, ms);
    }
    if all || check == Trace {
        let ctx = ctx.as_ref().expect("built above");
        let (r, ms) = rec.time(|| identities::trace_vanishing(ctx));
        rec.check("identity.trace.vanishing", r.pairs, r.vanishing, ms);
        rec.check("identity.trace.norm_in_fq", true, r.norm_in_fq, ms);
        rec.check("identity.trace.negative_control", true, r.control.is_some(), ms);
    }
    if all || check == PVanish {
        let ctx = ctx.as_ref().expect("built above");
        let (r, ms) = rec.time(|| identities::p_vanishing(ctx));
        rec.check("identity.pvanish.vanishing", r.witnesses, r.vanishing, ms);
        rec.check("identity.pvanish.negative_control", true, r.control.is_some(), ms);
    }
    if all || check == P1P2 {
        check_qn(q, n)?;
        s.check_order(q.pow(6))?;
        let (r, ms) = rec.time(|| identities::p1_p2(q, n, s.log_bound));
        let r = r?;
        for (i, c) in r.cases.iter().enumerate() {
            rec.check(format!("identity.p1p2.c{i}"), true, c.equal, ms);
        }
        rec.check("identity.p1p2.cases", q, r.cases.len() as u64, ms);
    }
    if all || check == SplitCount {
        let ctx = ctx.as_ref().expect("built above");
        let (r, ms) = rec.time(|| identities::splitting_count(ctx));
        let (e1, e2) = identities::SplitCountReport::expected(q, qn);
        rec.check("identity.splitcount.family1", e1, r.family1, ms);
        rec.check("identity.splitcount.family2", e2, r.family2, ms);
        rec.check("identity.splitcount.overlap", 0, r.overlap, ms);
        rec.check("identity.splitcount.classification", true, r.classified_is_union, ms);
        let (c, ms) = rec.time(|| identities::closure_split(ctx));
        let c = c?;
        rec.check("identity.splitcount.closure", c.counted_split, c.implied_split, ms);
    }
    if all || check == Phi {
        check_qn(q, n)?;
        s.check_order(q.pow(6))?;
        let (r, ms) = rec.time(|| verify_phi(q, s.log_bound));
        let r = r?;
        rec.check("identity.phi.invertible", true, !r.det.is_zero() && r.inverse_ok, ms);
        rec.check("identity.phi.c3_to_x3", r.to_x3.defined, r.to_x3.mapped, ms);
        if let Some(c5) = r.to_c5 {
            rec.check("identity.phi.c5_to_twisted", c5.derived.defined, c5.derived.mapped, ms);
        }
    }
    if all || check == Psi {
        check_qn(2, n)?;
        s.check_order(1 << (2 * n))?;
        let (r, ms) = rec.time(|| verify_psi(n, s.log_bound, 1000, s.seed));
        let r = r?;
        rec.check("identity.psi.points", r.affine.defined, r.affine.mapped, ms);
        rec.check("identity.psi.identity", true, r.identity_ok, ms);
    }
    Ok(())
}

/// Genus, every count, the group and the identity suite for one `(q, n)`.
pub fn verify_all(rec: &mut Recorder, s: &Settings, q: u64, n: u32) -> Result<(), AppError> {
    genus(rec, q, n, None)?;
    for family in [Family::Xn, Family::Ggs, Family::Hermitian, Family::EtaZ, Family::RhoZ] {
        count(rec, s, &CurveSpec::new(family, q, n))?;
    }
    for (k1, k2) in genus::subcover_pairs(q, n)? {
        count(rec, s, &CurveSpec::subcover(q, n, k1, k2))?;
    }
    spectrum(rec, q, n)?;
    autgroup(rec, s, q, n, AutCheck::All)?;
    identity(rec, s, q, n, IdCheck::All)
}
