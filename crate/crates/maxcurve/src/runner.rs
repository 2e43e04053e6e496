use std::ops::Range;

use maxcurve_core::curves::{self, CountReport, CurveError, PlaceCounter, Tally};
use maxcurve_core::{CurveSpec, FieldCtx};
use rayon::prelude::*;

use crate::AppError;

/// Counting work is split into ranges of this many field elements.
pub const CHUNK: u64 = 1 << 16;

pub fn chunks(len: u64) -> Vec<Range<u64>> {
    (0..len)
        .step_by(CHUNK as usize)
        .map(|s| s..(s + CHUNK).min(len))
        .collect()
}

/// Runs the counter kernel on `threads` workers (0 = one per core). Partial
/// tallies are added in chunk order, so the result does not depend on scheduling.
pub fn run_parallel<C: PlaceCounter + ?Sized>(counter: &C, threads: usize) -> Result<CountReport, AppError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let parts: Vec<Result<Tally, CurveError>> =
        pool.install(|| chunks(counter.domain_len()).into_par_iter().map(|r| counter.tally(r)).collect());
    let mut t = counter.base();
    for p in parts {
        t += p?;
    }
    Ok(curves::finish(counter.spec(), counter.strategy(), t)?)
}

pub fn count(ctx: &FieldCtx, spec: &CurveSpec, threads: usize) -> Result<CountReport, AppError> {
    let c = curves::counter(ctx, spec)?;
    run_parallel(c.as_ref(), threads)
}
