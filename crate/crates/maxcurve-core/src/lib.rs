//! Exact arithmetic for the maximal curves `X_n : z^m = y(x^{q^2}-x)/(x^{q+1}-1), y^{q+1} = x^{q+1}-1`
//! over `F_{q^{2n}}`, together with the related Hermitian, GGS and Kummer curves.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function of a
//! [`gf::FieldCtx`] and its inputs; threading, timing and file formats live in the
//! `maxcurve` companion crate.
//!
//! * [`gf`]: the field `F_Q`, `Q = q^{2n}`, with subfield and power-residue tests.
//! * [`poly`]: dense univariate polynomials and the Rabin irreducibility test.
//! * [`curves`]: rational-place counters and the model maps.
//! * [`genus`]: closed-form genera, Riemann–Hurwitz for tame Kummer covers, genus spectra.
//! * [`autgroup`]: the lifted automorphism group and its action.
//! * [`identities`]: the splitting criteria and polynomial identities behind maximality.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod autgroup;
pub mod curves;
pub mod genus;
pub mod gf;
pub mod identities;
pub mod poly;

pub use curves::{CountReport, CurveSpec, Family};
pub use gf::{Fe, FieldCtx, GfError};

/// The deterministic sampler behind every randomized check.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform element of `F_Q`.
pub fn random_fe(ctx: &FieldCtx, rng: &mut impl rand_core::RngCore) -> Fe {
    let x = (rng.next_u64() % ctx.order()) as u32;
    ctx.element(x).expect("in range")
}
