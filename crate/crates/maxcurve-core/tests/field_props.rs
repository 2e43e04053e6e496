use std::sync::OnceLock;

use maxcurve_core::arith::gcd;
use maxcurve_core::poly::DensePoly;
use maxcurve_core::{Fe, FieldCtx};
use proptest::prelude::*;

fn fields() -> &'static [FieldCtx] {
    static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            FieldCtx::for_q(2, 3, 1 << 22).unwrap(),
            FieldCtx::for_q(3, 3, 1 << 22).unwrap(),
            FieldCtx::for_q(4, 3, 1 << 22).unwrap(),
            FieldCtx::for_q(5, 3, 1 << 22).unwrap(),
            // no log tables: exercises the exponentiation path
            FieldCtx::for_q(3, 5, 1).unwrap(),
        ]
    })
}

fn fe(ctx: &FieldCtx, i: u64) -> Fe {
    ctx.element((i % ctx.order()) as u32).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(f in 0usize..5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let ctx = &fields()[f];
        let (a, b, c) = (fe(ctx, a), fe(ctx, b), fe(ctx, c));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), Fe::ZERO);
        prop_assert_eq!(ctx.mul(a, b), ctx.raw_mul(a, b));
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(ctx.pow(a, ctx.order() - 1), Fe::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(f in 0usize..5, a in any::<u64>(), b in any::<u64>(), j in 0u32..12) {
        let ctx = &fields()[f];
        let (a, b) = (fe(ctx, a), fe(ctx, b));
        prop_assert_eq!(ctx.frob(ctx.add(a, b), j), ctx.add(ctx.frob(a, j), ctx.frob(b, j)));
        prop_assert_eq!(ctx.frob(ctx.mul(a, b), j), ctx.mul(ctx.frob(a, j), ctx.frob(b, j)));
        prop_assert_eq!(ctx.frob(a, 2 * ctx.n()), a);
        prop_assert_eq!(ctx.frob(a, 1), ctx.pow(a, ctx.q()));
    }

    #[test]
    fn dth_roots_have_the_right_count(f in 0usize..5, a in any::<u64>(), di in any::<prop::sample::Index>()) {
        let ctx = &fields()[f];
        let a = fe(ctx, a);
        prop_assume!(!a.is_zero());
        let divs: Vec<u64> = maxcurve_core::arith::divisors(ctx.order() - 1)
            .into_iter()
            .filter(|d| gcd(*d, ctx.characteristic()) == 1)
            .collect();
        let d = divs[di.index(divs.len())];
        let roots = ctx.dth_roots(a, d).unwrap();
        let expect = if ctx.is_dth_power(a, d).unwrap() { d as usize } else { 0 };
        prop_assert_eq!(roots.len(), expect);
        for r in roots {
            prop_assert_eq!(ctx.pow(r, d), a);
        }
    }

    #[test]
    fn subfield_membership(f in 0usize..5, a in any::<u64>()) {
        let ctx = &fields()[f];
        let a = fe(ctx, a);
        let n = ctx.n();
        prop_assert!(ctx.in_subfield(ctx.pow(a, ctx.sqrt_order() + 1), n).unwrap());
        prop_assert!(ctx.in_subfield(ctx.pow(a, (ctx.order() - 1) / (ctx.q() - 1)), 1).unwrap());
    }

    #[test]
    fn polynomial_ring_axioms(
        a in prop::collection::vec(any::<u64>(), 0..8),
        b in prop::collection::vec(any::<u64>(), 0..8),
        c in prop::collection::vec(any::<u64>(), 0..8),
        x in any::<u64>(),
    ) {
        let ctx = &fields()[1];
        let mk = |v: &[u64]| DensePoly::new(ctx, v.iter().map(|&i| fe(ctx, i)).collect());
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        let x = fe(ctx, x);
        let ab = a.mul(&b, ctx).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a, ctx).unwrap());
        let bc = b.add(&c, ctx).unwrap();
        prop_assert_eq!(
            a.mul(&bc, ctx).unwrap(),
            ab.add(&a.mul(&c, ctx).unwrap(), ctx).unwrap()
        );
        prop_assert_eq!(ab.eval(x, ctx), ctx.mul(a.eval(x, ctx), b.eval(x, ctx)));
        if !b.is_zero() {
            let (qt, r) = a.div_rem(&b, ctx).unwrap();
            prop_assert_eq!(qt.mul(&b, ctx).unwrap().add(&r, ctx).unwrap(), a.clone());
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }
    }
}
