//! The projectivity `φ` from the GGS model to `X_n`, and the map `ψ` from
//! `H_r` onto `Z^{r+1} = X^3(X^3+1)`.

use super::xn::{ggs_affine_points, RootFinder};
use super::CurveError;
use crate::gf::{Fe, FieldCtx, GfError};

/// Points checked by one pass of a map verification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MapCheck {
    pub points: u64,
    /// Points where the map is defined.
    pub defined: u64,
    /// Defined points whose image satisfies the target equations.
    pub mapped: u64,
}

impl MapCheck {
    pub fn ok(&self) -> bool {
        self.defined > 0 && self.mapped == self.defined
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    pub q: u64,
    pub rho: Fe,
    pub det: Fe,
    /// `A · A^{-1} = I`.
    pub inverse_ok: bool,
    /// `C_3 -> X_3` over `F_{q^6}`.
    pub to_x3: MapCheck,
    /// `C_5 -> C~_5` over `F_{2^{10}}`, run for `q = 2` only.
    pub to_c5: Option<TwistCheck>,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        !self.det.is_zero() && self.inverse_ok && self.to_x3.ok() && self.to_c5.is_none_or(|c| c.derived.ok())
    }
}

/// Determinant over `F_Q` by Gaussian elimination.
pub fn determinant<const N: usize>(ctx: &FieldCtx, mut a: [[Fe; N]; N]) -> Fe {
    let mut det = Fe::ONE;
    for col in 0..N {
        let Some(piv) = (col..N).find(|&r| !a[r][col].is_zero()) else {
            return Fe::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            det = ctx.neg(det);
        }
        det = ctx.mul(det, a[col][col]);
        let inv = ctx.inv(a[col][col]).expect("pivot is nonzero");
        for r in col + 1..N {
            let f = ctx.mul(a[r][col], inv);
            if f.is_zero() {
                continue;
            }
            let (top, rest) = a.split_at_mut(r);
            for (x, &y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = ctx.sub(*x, ctx.mul(f, y));
            }
        }
    }
    det
}

/// The 4×4 matrix of `φ` in homogeneous coordinates `(X : Y : Z : W)`.
pub fn phi_matrix(ctx: &FieldCtx, rho: Fe) -> [[Fe; 4]; 4] {
    let (o, z) = (Fe::ONE, Fe::ZERO);
    [
        [o, z, z, o],
        [z, o, z, z],
        [z, z, ctx.neg(o), z],
        [ctx.sub(o, rho), z, z, ctx.neg(rho)],
    ]
}

/// The inverse of [`phi_matrix`]: `(X : Y : Z : W) ↦ (ρX + W : Y : -Z : (1-ρ)X - W)`.
pub fn phi_inverse_matrix(ctx: &FieldCtx, rho: Fe) -> [[Fe; 4]; 4] {
    let (o, z) = (Fe::ONE, Fe::ZERO);
    [
        [rho, z, z, o],
        [z, o, z, z],
        [z, z, ctx.neg(o), z],
        [ctx.sub(o, rho), z, z, ctx.neg(o)],
    ]
}

/// Image of a point of `C_n` under `φ`.
///
/// The coordinate functions of `C_n` are `(X+1)/D`, `Y/D`, `-Z/D` with
/// `D = (1-ρ)X - ρ` in those of the image, so points move by the inverse matrix:
/// `(x, y, z) ↦ ((ρx + 1)/E, y/E, -z/E)` with `E = (1-ρ)x - 1`; `None` where `E = 0`.
pub fn phi(ctx: &FieldCtx, rho: Fe, p: [Fe; 3]) -> Option<[Fe; 3]> {
    let [x, y, z] = p;
    let e = ctx.sub(ctx.mul(ctx.sub(Fe::ONE, rho), x), Fe::ONE);
    let ei = ctx.inv(e).ok()?;
    Some([
        ctx.mul(ctx.add(ctx.mul(rho, x), Fe::ONE), ei),
        ctx.mul(y, ei),
        ctx.mul(ctx.neg(z), ei),
    ])
}

/// Whether `(x, y, z)` satisfies `y^{q+1} = x^{q+1} - 1` and
/// `z^m (x^{q+1} - 1) = y (x^{q^2} - x) L(x)^e` with `L(x) = l.0 x + l.1`.
pub fn on_twisted_model(ctx: &FieldCtx, p: [Fe; 3], l: (Fe, Fe), e: u64) -> bool {
    let [x, y, z] = p;
    let q = ctx.q();
    let c = ctx.sub(ctx.pow(x, q + 1), Fe::ONE);
    if ctx.pow(y, q + 1) != c {
        return false;
    }
    let lhs = ctx.mul(ctx.pow(z, ctx.m()), c);
    let rhs = ctx.mul(
        ctx.mul(y, ctx.sub(ctx.frob(x, 2), x)),
        ctx.pow(ctx.add(ctx.mul(l.0, x), l.1), e),
    );
    lhs == rhs
}

/// Whether `(x, y, z)` lies on `X_n`.
pub fn on_xn(ctx: &FieldCtx, p: [Fe; 3]) -> bool {
    on_twisted_model(ctx, p, (Fe::ZERO, Fe::ONE), 0)
}

/// Result of mapping `C_n` through `φ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TwistCheck {
    /// Against the factor `((1-ρ)X - ρ)^e`, the image of the hyperplane at infinity.
    pub derived: MapCheck,
    /// Images that also satisfy the model with the factor `(X - 1)^e` instead.
    pub with_x_minus_one: u64,
}

/// Maps every affine point of `C_n` over `F_Q` through `φ` and checks the image
/// against `C~_n`, whose extra factor has exponent `e = m - (q^2 - q + 1)`.
///
/// Homogenizing `C_n` puts `W^e` on the right; `φ` sends `W` to `(1-ρ)X - ρW`.
pub fn check_phi(ctx: &FieldCtx) -> Result<TwistCheck, CurveError> {
    let q = ctx.q();
    let rho = ctx.rho();
    let e = ctx.m() - (q * q - q + 1);
    let derived = (ctx.sub(Fe::ONE, rho), ctx.neg(rho));
    let shifted = (Fe::ONE, ctx.neg(Fe::ONE));
    let mut out = TwistCheck::default();
    for p in ggs_affine_points(ctx)? {
        out.derived.points += 1;
        if let Some(img) = phi(ctx, rho, p) {
            out.derived.defined += 1;
            out.derived.mapped += on_twisted_model(ctx, img, derived, e) as u64;
            out.with_x_minus_one += on_twisted_model(ctx, img, shifted, e) as u64;
        }
    }
    Ok(out)
}

/// Checks `φ` for `C_3 -> X_3` over `F_{q^6}` and, for `q = 2`, `C_5 -> C~_5`.
pub fn verify_phi(q: u64, log_bound: u64) -> Result<PhiReport, CurveError> {
    let ctx = FieldCtx::for_q(q, 3, log_bound)?;
    let rho = ctx.rho();
    let a = phi_matrix(&ctx, rho);
    let det = determinant(&ctx, a);
    let b = phi_inverse_matrix(&ctx, rho);
    let inverse_ok = (0..4).all(|i| {
        (0..4).all(|j| {
            let e = (0..4).fold(Fe::ZERO, |acc, k| ctx.add(acc, ctx.mul(a[i][k], b[k][j])));
            e == if i == j { Fe::ONE } else { Fe::ZERO }
        })
    });
    let to_x3 = check_phi(&ctx)?.derived;
    let to_c5 = if q == 2 {
        Some(check_phi(&FieldCtx::for_q(2, 5, log_bound)?)?)
    } else {
        None
    };
    Ok(PhiReport {
        q,
        rho,
        det,
        inverse_ok,
        to_x3,
        to_c5,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiReport {
    pub n: u32,
    /// `r = 2^n`.
    pub r: u64,
    pub affine: MapCheck,
    /// Affine points plus the `r + 1` points at infinity of `H_r`.
    pub projective_points: u64,
    pub identity_samples: u64,
    pub identity_ok: bool,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.affine.ok() && self.identity_ok
    }
}

/// `ψ(u, v) = (u^{(r+1)/3}, uv)` from `U^{r+1} - V^{r+1} + 1 = 0` to
/// `Z^{r+1} = X^3 (X^3 + 1)`, over `F_{r^2}`, `r = 2^n`.
pub fn verify_psi(n: u32, log_bound: u64, samples: u64, seed: u64) -> Result<PsiReport, CurveError> {
    let ctx = FieldCtx::new(2, 1, n, log_bound)?;
    let r = 1u64 << n;
    if !(r + 1).is_multiple_of(3) {
        return Err(GfError::NIsEven(n).into());
    }
    let e = (r + 1) / 3;
    let image_ok = |u: Fe, v: Fe| {
        let x = ctx.pow(u, e);
        let z = ctx.mul(u, v);
        let x3 = ctx.pow(x, 3);
        ctx.pow(z, r + 1) == ctx.mul(x3, ctx.add(x3, Fe::ONE))
    };

    let roots = RootFinder::new(&ctx, r + 1)?;
    let mut affine = MapCheck::default();
    for u in ctx.elements() {
        let c = ctx.add(ctx.pow(u, r + 1), Fe::ONE);
        for v in roots.roots(&ctx, c) {
            affine.points += 1;
            affine.defined += 1;
            affine.mapped += image_ok(u, v) as u64;
        }
    }

    // Z^{r+1} - X^3(X^3+1) = U^{r+1}(V^{r+1} - U^{r+1} - 1) off the curve as well
    let mut rng = crate::rng(seed);
    let mut identity_ok = true;
    let mut taken = 0;
    while taken < samples {
        let u = crate::random_fe(&ctx, &mut rng);
        let v = crate::random_fe(&ctx, &mut rng);
        let ur = ctx.pow(u, r + 1);
        let vr = ctx.pow(v, r + 1);
        if ctx.add(ctx.sub(ur, vr), Fe::ONE).is_zero() {
            continue;
        }
        taken += 1;
        let x = ctx.pow(u, e);
        let x3 = ctx.pow(x, 3);
        let lhs = ctx.sub(
            ctx.pow(ctx.mul(u, v), r + 1),
            ctx.mul(x3, ctx.add(x3, Fe::ONE)),
        );
        let rhs = ctx.mul(ur, ctx.sub(ctx.sub(vr, ur), Fe::ONE));
        identity_ok &= lhs == rhs;
    }

    Ok(PsiReport {
        n,
        r,
        projective_points: affine.points + r + 1,
        affine,
        identity_samples: samples,
        identity_ok,
    })
}
