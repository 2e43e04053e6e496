//! Brute-force point counts of X_n and the GGS curve, independent of the fibre shortcut.

use maxcurve_core::curves::{count_ggs, count_xn, ggs_affine_points, xn_affine_points};
use maxcurve_core::genus::genus_xn;
use maxcurve_core::{Fe, FieldCtx};

/// Square-and-multiply on the polynomial-basis product, bypassing log tables.
fn slow_pow(ctx: &FieldCtx, mut a: Fe, mut k: u64) -> Fe {
    let mut acc = Fe::ONE;
    while k > 0 {
        if k & 1 == 1 {
            acc = ctx.raw_mul(acc, a);
        }
        a = ctx.raw_mul(a, a);
        k >>= 1;
    }
    acc
}

/// Places of X_n (or GGS) from the fibres of `y ↦ y^{q+1}` and `z ↦ z^m`:
/// one place per affine point with `c(x) != 0`, one per root of `c`, plus infinity.
fn oracle(ctx: &FieldCtx, ggs: bool) -> (u64, u64) {
    let q = ctx.q();
    let m = ctx.m();
    let size = ctx.order() as usize;
    let mut ys: Vec<Vec<Fe>> = vec![Vec::new(); size];
    let mut hz = vec![0u64; size];
    for w in ctx.elements() {
        ys[slow_pow(ctx, w, q + 1).index() as usize].push(w);
        hz[slow_pow(ctx, w, m).index() as usize] += 1;
    }
    let mut affine = 0;
    let mut places = if ggs { 1 } else { q + 1 };
    for x in ctx.elements() {
        let c = if ggs {
            ctx.add(slow_pow(ctx, x, q), x)
        } else {
            ctx.sub(slow_pow(ctx, x, q + 1), Fe::ONE)
        };
        if c.is_zero() {
            affine += 1;
            places += 1;
            continue;
        }
        let w = ctx.raw_mul(
            ctx.sub(slow_pow(ctx, x, q * q), x),
            ctx.inv(c).unwrap(),
        );
        for &y in &ys[c.index() as usize] {
            let u = ctx.raw_mul(y, w);
            let nz = hz[u.index() as usize];
            affine += nz;
            places += nz;
        }
    }
    (affine, places)
}

fn hw(q: u64, n: u32) -> u64 {
    let qn = q.pow(n);
    qn * qn + 1 + 2 * genus_xn(q, n).unwrap() * qn
}

#[test]
fn xn_totals_match_oracle() {
    for (q, n, expected) in [(2, 3, 225), (2, 5, 3969), (3, 3, 6076)] {
        let ctx = FieldCtx::for_q(q, n, 1 << 22).unwrap();
        let (affine, places) = oracle(&ctx, false);
        assert_eq!(places, expected, "q={q} n={n}");
        assert_eq!(places, hw(q, n));
        let r = count_xn(&ctx).unwrap();
        assert_eq!(r.total, expected);
        assert!(r.maximal);
        assert_eq!(xn_affine_points(&ctx).unwrap().len() as u64, affine);
    }
}

#[test]
fn xn_oracle_at_q2_n7() {
    let ctx = FieldCtx::for_q(2, 7, 1 << 22).unwrap();
    let (_, places) = oracle(&ctx, false);
    assert_eq!(places, hw(2, 7));
    assert_eq!(count_xn(&ctx).unwrap().total, places);
}

#[test]
fn ggs_matches_oracle_and_xn() {
    for (q, n) in [(2, 3), (2, 5), (3, 3)] {
        let ctx = FieldCtx::for_q(q, n, 1 << 22).unwrap();
        let (affine, places) = oracle(&ctx, true);
        let r = count_ggs(&ctx).unwrap();
        assert_eq!(r.total, places);
        assert_eq!(r.total, count_xn(&ctx).unwrap().total);
        assert_eq!(ggs_affine_points(&ctx).unwrap().len() as u64, affine);
    }
}

#[test]
fn exponentiation_path_agrees_with_log_tables() {
    let with = FieldCtx::for_q(2, 5, 1 << 22).unwrap();
    let without = FieldCtx::for_q(2, 5, 16).unwrap();
    assert!(with.has_log_tables() && !without.has_log_tables());
    let a = count_xn(&with).unwrap();
    let b = count_xn(&without).unwrap();
    assert_eq!(
        (a.infinite_places, a.ramified_places, a.split_places),
        (b.infinite_places, b.ramified_places, b.split_places)
    );
    assert_eq!(
        xn_affine_points(&with).unwrap().len(),
        xn_affine_points(&without).unwrap().len()
    );
}
