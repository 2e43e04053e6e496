use maxcurve_core::autgroup::{
    closure, det_characterizes_sl, enumerate_g, enumerate_ml, enumerate_sl, generators,
    is_closed, lift_count, verify_action, verify_orbit_infinity, GroupElement,
};
use maxcurve_core::curves::xn_affine_points;
use maxcurve_core::identities::{
    closure_split, delta_power, eta_count, p1_p2, p_vanishing, splitting_count, trace_vanishing,
};
use maxcurve_core::FieldCtx;

fn ctx(q: u64, n: u32) -> FieldCtx {
    FieldCtx::for_q(q, n, 1 << 22).unwrap()
}

#[test]
fn group_orders() {
    for q in [2u64, 3, 4, 5] {
        let c = ctx(q, 3);
        assert_eq!(enumerate_sl(&c).len() as u64, q * q * q - q);
        let ml = enumerate_ml(&c);
        assert!(ml.agree(), "q={q}");
        assert_eq!(ml.by_conditions.len() as u64, q * (q - 1) * (q + 1) * (q + 1));
        assert!(det_characterizes_sl(&c));
    }
    for (q, n) in [(2u64, 3u32), (2, 5), (3, 3)] {
        let c = ctx(q, n);
        assert_eq!(lift_count(&c), q * (q * q - 1) * (q.pow(n) + 1));
    }
}

#[test]
fn g_is_a_group_generated_by_few_elements() {
    let c = ctx(2, 3);
    let g = enumerate_g(&c);
    assert_eq!(g.len(), 54);
    assert!(g.iter().all(|e| e.is_valid(&c)));
    assert!(is_closed(&c, &g));
    let gens = generators(&c);
    let h = closure(&c, &gens);
    assert_eq!(h.len(), 54);
    assert!(h.iter().all(|e| g.contains(e)));
}

#[test]
fn generators_preserve_curve_and_cy_dy_action_does_not() {
    for (q, n) in [(2, 5), (3, 3)] {
        let c = ctx(q, n);
        let pts = xn_affine_points(&c).unwrap();
        let r = verify_action(&c, &pts, &generators(&c), 200, 7);
        assert!(r.preserved && r.twist_ok, "q={q} n={n}");
        assert!(r.cy_dy_counterexample.is_some());
    }
}

#[test]
fn orbit_at_infinity() {
    for q in [2u64, 3, 4, 5, 7, 8] {
        let c = ctx(q, 3);
        let r = verify_orbit_infinity(&c);
        assert!(r.ok(), "q={q}");
        assert_eq!(r.directions as u64, q + 1);
        let g: GroupElement = r.sharply_transitive.unwrap();
        assert_eq!(g.order(&c, q + 1), Some(q + 1));
        assert_eq!(r.fixing_z.is_some(), q % 2 == 0, "q={q}");
    }
}

#[test]
fn identity_suite() {
    for (q, n) in [(2u64, 3u32), (2, 5), (3, 3)] {
        let c = ctx(q, n);
        let e = eta_count(&c);
        assert!(e.ok(), "{e:?}");
        assert_eq!(e.count, q.pow(n) - q);
        assert!(delta_power(&c).ok());
        let t = trace_vanishing(&c);
        assert!(t.ok(), "{t:?}");
        assert!(p_vanishing(&c).ok());
        assert!(splitting_count(&c).ok(q, q.pow(n)));
        let cl = closure_split(&c).unwrap();
        assert!(cl.ok(), "{cl:?}");
    }
}

#[test]
fn p1_equals_p2() {
    for q in [2u64, 3] {
        let r = p1_p2(q, 5, 1 << 22).unwrap();
        assert_eq!(r.cases.len() as u64, q);
        assert!(r.ok());
    }
}
