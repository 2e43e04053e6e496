use maxcurve_core::curves::maps::{
    determinant, phi, phi_inverse_matrix, phi_matrix, verify_phi, verify_psi,
};
use maxcurve_core::{Fe, FieldCtx};

#[test]
fn phi_lands_on_x3() {
    for q in [2, 3] {
        let r = verify_phi(q, 1 << 22).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.to_x3.defined, r.to_x3.mapped);
    }
}

#[test]
fn phi_lands_on_twisted_c5() {
    let r = verify_phi(2, 1 << 22).unwrap();
    let c5 = r.to_c5.unwrap();
    assert_eq!(c5.derived.mapped, c5.derived.defined);
    assert_eq!(c5.derived.defined, 3965);
    // (X - 1)^e in place of ((1-ρ)X - ρ)^e fails almost everywhere in characteristic 2
    assert!(c5.with_x_minus_one < c5.derived.defined);
}

#[test]
fn phi_matrix_is_invertible() {
    let ctx = FieldCtx::for_q(3, 3, 1 << 22).unwrap();
    let rho = ctx.rho();
    assert_eq!(ctx.add(ctx.frob(rho, 1), rho), Fe::ONE);
    assert!(!determinant(&ctx, phi_matrix(&ctx, rho)).is_zero());
    assert!(!determinant(&ctx, phi_inverse_matrix(&ctx, rho)).is_zero());
    assert_eq!(phi(&ctx, rho, [Fe::ZERO; 3]), Some([ctx.neg(Fe::ONE), Fe::ZERO, Fe::ZERO]));
}

#[test]
fn determinant_of_singular_matrix_is_zero() {
    let ctx = FieldCtx::for_q(2, 3, 1 << 22).unwrap();
    let g = ctx.generator();
    let m = [[g, Fe::ONE], [ctx.mul(g, g), g]];
    assert!(determinant(&ctx, m).is_zero());
}

#[test]
fn psi_counts() {
    for n in [3, 5, 7] {
        let r = verify_psi(n, 1 << 22, 1000, 3).unwrap();
        assert!(r.ok());
        let rr = 1u64 << n;
        // H_r is maximal over F_{r^2}: r^3 + 1 points
        assert_eq!(r.projective_points, rr * rr * rr + 1);
    }
    assert_eq!(verify_psi(3, 1 << 22, 10, 3).unwrap().projective_points, 513);
}
