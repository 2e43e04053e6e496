//! Kummer counts against a `w^k` histogram on the unramified part.

use maxcurve_core::curves::{
    etaz_counter, rhoz_counter, run, subcover_counter, Eval, FactoredFn, FamilyFn, KummerCounter,
    Place, PlaceCounter, RationalFn,
};
use maxcurve_core::genus::{genus_etaz, genus_rhoz, subcover_pairs, genus_subcover};
use maxcurve_core::{CurveSpec, Family, FieldCtx};

fn histogram(ctx: &FieldCtx, k: u64) -> Vec<u64> {
    let mut h = vec![0u64; ctx.order() as usize];
    for w in ctx.elements() {
        h[ctx.pow(w, k).index() as usize] += 1;
    }
    h
}

/// Split places over the finite line: Σ over `s` with `f(s)` a nonzero value of `#{w : w^k = f(s)}`.
fn split_oracle<F: RationalFn>(ctx: &FieldCtx, k: u64, f: &F) -> u64 {
    let h = histogram(ctx, k);
    ctx.elements()
        .map(|s| match f.eval(ctx, s) {
            Eval::Value(v) => h[v.index() as usize],
            _ => 0,
        })
        .sum()
}

fn hw(ctx: &FieldCtx, g: u64) -> u64 {
    ctx.order() + 1 + 2 * g * ctx.sqrt_order()
}

const SMALL: [(u64, u32); 4] = [(2, 3), (2, 5), (3, 3), (2, 7)];

#[test]
fn etaz_and_rhoz_split_counts() {
    for (q, n) in SMALL {
        let ctx = FieldCtx::for_q(q, n, 1 << 22).unwrap();
        let e = etaz_counter(&ctx).unwrap();
        let r = run(&e).unwrap();
        assert_eq!(r.split_places, split_oracle(&ctx, e.degree(), &FamilyFn::EtaZ { q }));
        assert_eq!(r.total, hw(&ctx, genus_etaz(q, n).unwrap()));
        let z = rhoz_counter(&ctx).unwrap();
        let r = run(&z).unwrap();
        assert_eq!(r.split_places, split_oracle(&ctx, z.degree(), &FamilyFn::RhoZ { q }));
        assert_eq!(r.total, hw(&ctx, genus_rhoz(q, n).unwrap()));
    }
}

#[test]
fn subcovers_small() {
    for (q, n) in [(2, 3), (2, 5), (3, 3)] {
        let ctx = FieldCtx::for_q(q, n, 1 << 22).unwrap();
        for (k1, k2) in subcover_pairs(q, n).unwrap() {
            let c = subcover_counter(&ctx, k1, k2).unwrap();
            let r = run(&c).unwrap();
            let g = genus_subcover(q, n, k1, k2).unwrap().genus;
            assert_eq!(r.total, hw(&ctx, g), "q={q} n={n} k1={k1} k2={k2}");
            let f = FamilyFn::subcover(q, k1);
            assert_eq!(r.split_places, split_oracle(&ctx, c.degree(), &f));
        }
    }
}

#[test]
fn closed_form_and_factored_evaluations_agree() {
    for (q, n) in [(2, 3), (3, 3), (4, 3)] {
        let ctx = FieldCtx::for_q(q, n, 1 << 22).unwrap();
        let mut pairs: Vec<(FamilyFn, FactoredFn)> = vec![
            (FamilyFn::EtaZ { q }, FactoredFn::etaz(&ctx)),
            (FamilyFn::RhoZ { q }, FactoredFn::rhoz(&ctx)),
        ];
        for k1 in maxcurve_core::arith::divisors(q + 1) {
            pairs.push((FamilyFn::subcover(q, k1), FactoredFn::subcover(&ctx, k1)));
        }
        for (a, b) in &pairs {
            for s in ctx.elements() {
                assert_eq!(a.eval(&ctx, s), b.eval(&ctx, s));
            }
            assert_eq!(a.eval_infinity(&ctx), b.eval_infinity(&ctx));
        }
    }
}

#[test]
fn undeclared_zero_is_rejected() {
    let ctx = FieldCtx::for_q(2, 3, 1 << 22).unwrap();
    let spec = CurveSpec::new(Family::EtaZ, 2, 3);
    let f = FactoredFn::etaz(&ctx);
    let mut support = f.support(&ctx);
    let dropped = support.remove(0);
    // keep the divisor principal by moving the dropped valuation onto infinity
    for s in support.iter_mut() {
        if s.place == Place::Infinity {
            s.d += dropped.d;
        }
    }
    let c = KummerCounter::new(&ctx, spec, 9, f, &support).unwrap();
    assert!(c.tally(0..c.domain_len()).is_err());
}

#[test]
fn bad_degree_is_rejected() {
    let ctx = FieldCtx::for_q(2, 3, 1 << 22).unwrap();
    let spec = CurveSpec::new(Family::EtaZ, 2, 3);
    let f = FactoredFn::etaz(&ctx);
    let support = f.support(&ctx);
    assert!(KummerCounter::new(&ctx, spec.clone(), 5, f.clone(), &support).is_err());
    assert!(KummerCounter::new(&ctx, spec, 2, f, &support).is_err());
}
