//! The line stabilizer `M_ℓ ⊂ PGU(3, q)`, its commutator subgroup `S_ℓ ≅ SL(2, q)`,
//! and their lift `G` to `X_n`, acting by `(x, y, z) ↦ (ax + by, cx + dy, ξz)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::curves::maps::on_xn;
use crate::gf::{Fe, FieldCtx};

/// A 2×2 matrix over `F_{q^2}` acting on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Matrix {
    pub fn det(&self, ctx: &FieldCtx) -> Fe {
        ctx.sub(ctx.mul(self.a, self.d), ctx.mul(self.b, self.c))
    }

    /// The three defining conditions of `M_ℓ`.
    pub fn in_ml(&self, ctx: &FieldCtx) -> bool {
        let q = ctx.q();
        let n = |x: Fe| ctx.pow(x, q + 1);
        ctx.sub(n(self.d), n(self.b)) == Fe::ONE
            && ctx.sub(n(self.a), n(self.c)) == Fe::ONE
            && ctx.sub(ctx.mul(ctx.frob(self.c, 1), self.d), ctx.mul(ctx.frob(self.a, 1), self.b))
                .is_zero()
    }
}

/// An automorphism of `X_n`: a matrix of `M_ℓ` in the form `b = ζ c^q`, `d = ζ a^q`,
/// and `ξ` with `ξ^m = ζ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
    pub xi: Fe,
    pub zeta: Fe,
}

impl GroupElement {
    /// The element determined by `(a, c)` with `a^{q+1} - c^{q+1} = 1` and `ξ^{q^n+1} = 1`.
    pub fn new(ctx: &FieldCtx, a: Fe, c: Fe, xi: Fe) -> Self {
        let zeta = ctx.pow(xi, ctx.m());
        Self {
            a,
            b: ctx.mul(zeta, ctx.frob(c, 1)),
            c,
            d: ctx.mul(zeta, ctx.frob(a, 1)),
            xi,
            zeta,
        }
    }

    pub fn identity() -> Self {
        let (o, z) = (Fe::ONE, Fe::ZERO);
        Self {
            a: o,
            b: z,
            c: z,
            d: o,
            xi: o,
            zeta: o,
        }
    }

    pub fn matrix(&self) -> Matrix {
        Matrix {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
        }
    }

    pub fn is_valid(&self, ctx: &FieldCtx) -> bool {
        let q = ctx.q();
        self.matrix().in_ml(ctx)
            && ctx.pow(self.xi, ctx.qn_plus_one()) == Fe::ONE
            && self.zeta == ctx.pow(self.xi, ctx.m())
            && self.b == ctx.mul(self.zeta, ctx.frob(self.c, 1))
            && self.d == ctx.mul(self.zeta, ctx.frob(self.a, 1))
            && ctx.pow(self.zeta, q + 1) == Fe::ONE
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, ctx: &FieldCtx, o: &GroupElement) -> GroupElement {
        let dot = |p: Fe, q: Fe, r: Fe, s: Fe| ctx.add(ctx.mul(p, q), ctx.mul(r, s));
        GroupElement {
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
            xi: ctx.mul(self.xi, o.xi),
            zeta: ctx.mul(self.zeta, o.zeta),
        }
    }

    pub fn act(&self, ctx: &FieldCtx, p: [Fe; 3]) -> [Fe; 3] {
        let [x, y, z] = p;
        [
            ctx.add(ctx.mul(self.a, x), ctx.mul(self.b, y)),
            ctx.add(ctx.mul(self.c, x), ctx.mul(self.d, y)),
            ctx.mul(self.xi, z),
        ]
    }

    /// The action with second coordinate `cy + dy`, kept to show it is not an automorphism.
    pub fn act_cy_dy(&self, ctx: &FieldCtx, p: [Fe; 3]) -> [Fe; 3] {
        let [x, y, z] = p;
        [
            ctx.add(ctx.mul(self.a, x), ctx.mul(self.b, y)),
            ctx.add(ctx.mul(self.c, y), ctx.mul(self.d, y)),
            ctx.mul(self.xi, z),
        ]
    }

    /// Order in `G`, if at most `bound`.
    pub fn order(&self, ctx: &FieldCtx, bound: u64) -> Option<u64> {
        let id = GroupElement::identity();
        let mut acc = *self;
        for k in 1..=bound {
            if acc == id {
                return Some(k);
            }
            acc = self.compose(ctx, &acc);
        }
        None
    }
}

impl FieldCtx {
    /// `q^n + 1`.
    pub fn qn_plus_one(&self) -> u64 {
        self.sqrt_order() + 1
    }
}

/// All `(a, c) ∈ F_{q^2}^2` with `a^{q+1} - c^{q+1} = 1`, in encoding order.
pub fn norm_pairs(ctx: &FieldCtx) -> Vec<(Fe, Fe)> {
    let q = ctx.q();
    let mut f = ctx.subfield_elements(2).expect("2 divides 2n");
    f.sort_unstable();
    let norms: Vec<Fe> = f.iter().map(|&x| ctx.pow(x, q + 1)).collect();
    let mut out = Vec::new();
    for (i, &a) in f.iter().enumerate() {
        for (j, &c) in f.iter().enumerate() {
            if ctx.sub(norms[i], norms[j]) == Fe::ONE {
                out.push((a, c));
            }
        }
    }
    out
}

/// `S_ℓ`: `b = c^q`, `d = a^q`, `ξ = 1`.
pub fn enumerate_sl(ctx: &FieldCtx) -> Vec<GroupElement> {
    norm_pairs(ctx)
        .into_iter()
        .map(|(a, c)| GroupElement::new(ctx, a, c, Fe::ONE))
        .collect()
}

/// `M_ℓ` enumerated twice: from its three defining conditions, and from the
/// normal form `(a, ζc^q, c, ζa^q)`. Both sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlEnumeration {
    pub by_conditions: Vec<Matrix>,
    pub by_normal_form: Vec<Matrix>,
}

impl MlEnumeration {
    pub fn agree(&self) -> bool {
        self.by_conditions == self.by_normal_form
    }
}

pub fn enumerate_ml(ctx: &FieldCtx) -> MlEnumeration {
    let pairs = norm_pairs(ctx);
    let mut by_conditions = Vec::new();
    for &(a, c) in &pairs {
        let aq = ctx.frob(a, 1);
        let cq = ctx.frob(c, 1);
        // (d, b) also satisfies d^{q+1} - b^{q+1} = 1
        for &(d, b) in &pairs {
            if ctx.mul(aq, b) == ctx.mul(cq, d) {
                by_conditions.push(Matrix { a, b, c, d });
            }
        }
    }
    let zetas = ctx.zeta_list();
    let mut by_normal_form: Vec<Matrix> = pairs
        .iter()
        .flat_map(|&(a, c)| {
            zetas.iter().map(move |&z| Matrix {
                a,
                b: ctx.mul(z, ctx.frob(c, 1)),
                c,
                d: ctx.mul(z, ctx.frob(a, 1)),
            })
        })
        .collect();
    by_conditions.sort_unstable();
    by_normal_form.sort_unstable();
    MlEnumeration {
        by_conditions,
        by_normal_form,
    }
}

/// Whether, on `M_ℓ`, `ζ = 1` exactly when `ad - bc = 1`.
pub fn det_characterizes_sl(ctx: &FieldCtx) -> bool {
    let pairs = norm_pairs(ctx);
    let zetas = ctx.zeta_list();
    pairs.iter().all(|&(a, c)| {
        zetas.iter().all(|&z| {
            let m = Matrix {
                a,
                b: ctx.mul(z, ctx.frob(c, 1)),
                c,
                d: ctx.mul(z, ctx.frob(a, 1)),
            };
            (m.det(ctx) == Fe::ONE) == (z == Fe::ONE)
        })
    })
}

/// Number of tuples `(a, c, ζ, ξ)` with `(a, c)` a norm pair, `ζ^{q+1} = 1` and `ξ^m = ζ`,
/// found by running `ξ` over all of `F_Q^*`.
pub fn lift_count(ctx: &FieldCtx) -> u64 {
    let q = ctx.q();
    let m = ctx.m();
    let lifts = ctx
        .elements()
        .skip(1)
        .filter(|&xi| ctx.pow(ctx.pow(xi, m), q + 1) == Fe::ONE)
        .count() as u64;
    norm_pairs(ctx).len() as u64 * lifts
}

/// Every element of `G`.
pub fn enumerate_g(ctx: &FieldCtx) -> Vec<GroupElement> {
    let xis = ctx
        .roots_of_unity(ctx.qn_plus_one())
        .expect("q^n + 1 divides Q - 1");
    let pairs = norm_pairs(ctx);
    let mut out = Vec::with_capacity(pairs.len() * xis.len());
    for &(a, c) in &pairs {
        for &xi in &xis {
            out.push(GroupElement::new(ctx, a, c, xi));
        }
    }
    out
}

/// The subgroup generated by `gens`.
pub fn closure(ctx: &FieldCtx, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut seen = BTreeSet::new();
    seen.insert(GroupElement::identity());
    let mut frontier = alloc::vec![GroupElement::identity()];
    while let Some(h) = frontier.pop() {
        for g in gens {
            let k = g.compose(ctx, &h);
            if seen.insert(k) {
                frontier.push(k);
            }
        }
    }
    seen
}

/// Whether every product of two listed elements is listed.
pub fn is_closed(ctx: &FieldCtx, elems: &[GroupElement]) -> bool {
    let set: BTreeSet<GroupElement> = elems.iter().copied().collect();
    elems
        .iter()
        .all(|g| elems.iter().all(|h| set.contains(&g.compose(ctx, h))))
}

/// The twist `(x, y, z) ↦ (x, ζy, ξz)` for a primitive `(q^n+1)`-th root `ξ`, then
/// elements of `S_ℓ` in enumeration order, each added only if it enlarges the
/// generated group, until the group has order `q(q^2-1)(q^n+1)`.
pub fn generators(ctx: &FieldCtx) -> Vec<GroupElement> {
    let q = ctx.q();
    let target = (q * q * q - q) * ctx.qn_plus_one();
    let xi = ctx.exp((ctx.order() - 1) / ctx.qn_plus_one());
    let mut gens = alloc::vec![GroupElement::new(ctx, Fe::ONE, Fe::ZERO, xi)];
    let mut group = closure(ctx, &gens);
    for s in enumerate_sl(ctx) {
        if group.len() as u64 >= target {
            break;
        }
        if !group.contains(&s) {
            gens.push(s);
            group = closure(ctx, &gens);
        }
    }
    gens
}

/// `u = y (x^{q^2} - x)/(x^{q+1} - 1)`, `None` where the denominator vanishes.
pub fn u_of(ctx: &FieldCtx, p: [Fe; 3]) -> Option<Fe> {
    let [x, y, _] = p;
    let c = ctx.sub(ctx.pow(x, ctx.q() + 1), Fe::ONE);
    let num = ctx.mul(y, ctx.sub(ctx.frob(x, 2), x));
    ctx.div(num, c).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub generators: usize,
    pub points: usize,
    /// Every generator maps every listed point onto `X_n`.
    pub preserved: bool,
    /// Some element and point where the `cy + dy` reading leaves the curve.
    pub cy_dy_counterexample: Option<(GroupElement, [Fe; 3])>,
    pub twist_samples: u64,
    /// `u(gP) = ζ_g u(P)` on every sample.
    pub twist_ok: bool,
}

impl ActionReport {
    pub fn ok(&self) -> bool {
        self.preserved && self.cy_dy_counterexample.is_some() && self.twist_ok
    }
}

/// Checks generator actions on `points`, looks for a witness against the `cy + dy`
/// action among `S_ℓ`, and samples the `u`-twist with random elements of `G`.
pub fn verify_action(
    ctx: &FieldCtx,
    points: &[[Fe; 3]],
    gens: &[GroupElement],
    samples: u64,
    seed: u64,
) -> ActionReport {
    let on = |p: [Fe; 3]| on_xn(ctx, p);
    let preserved = gens
        .iter()
        .all(|g| points.iter().all(|&p| on(g.act(ctx, p))));

    let cy_dy_counterexample = gens
        .iter()
        .copied()
        .chain(enumerate_sl(ctx))
        .find_map(|g| {
            points
                .iter()
                .find(|&&p| !on(g.act_cy_dy(ctx, p)))
                .map(|&p| (g, p))
        });

    let pairs = norm_pairs(ctx);
    let xis = ctx
        .roots_of_unity(ctx.qn_plus_one())
        .expect("q^n + 1 divides Q - 1");
    let with_u: Vec<([Fe; 3], Fe)> = points
        .iter()
        .filter_map(|&p| u_of(ctx, p).filter(|u| !u.is_zero()).map(|u| (p, u)))
        .collect();
    let mut rng = crate::rng(seed);
    let mut twist_ok = !with_u.is_empty();
    let mut taken = 0;
    while twist_ok && taken < samples {
        use rand_core::RngCore;
        let (p, u) = with_u[(rng.next_u64() % with_u.len() as u64) as usize];
        let (a, c) = pairs[(rng.next_u64() % pairs.len() as u64) as usize];
        let xi = xis[(rng.next_u64() % xis.len() as u64) as usize];
        let g = GroupElement::new(ctx, a, c, xi);
        twist_ok = u_of(ctx, g.act(ctx, p)) == Some(ctx.mul(g.zeta, u));
        taken += 1;
    }

    ActionReport {
        generators: gens.len(),
        points: points.len(),
        preserved,
        cy_dy_counterexample,
        twist_samples: taken,
        twist_ok,
    }
}

/// The permutation induced on the directions `β` (points `(1 : β : 0)` at infinity),
/// `β ↦ (c + dβ)/(a + bβ)`, or `None` if some image is not a direction.
pub fn direction_permutation(ctx: &FieldCtx, m: &Matrix, dirs: &[Fe]) -> Option<Vec<usize>> {
    dirs.iter()
        .map(|&beta| {
            let den = ctx.add(m.a, ctx.mul(m.b, beta));
            let img = ctx.div(ctx.add(m.c, ctx.mul(m.d, beta)), den).ok()?;
            dirs.iter().position(|&x| x == img)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub directions: usize,
    /// Every element of `M_ℓ` permutes the directions.
    pub well_defined: bool,
    pub transitive: bool,
    /// Number of distinct permutations induced by `S_ℓ`.
    pub sl_image_size: usize,
    /// A generator of a cyclic subgroup of `G` of order `q + 1` acting sharply transitively.
    pub sharply_transitive: Option<GroupElement>,
    /// The same, searched among elements fixing `z` only. None exist for odd `q`:
    /// there `-I` is the only involution of `S_ℓ` and it fixes every direction.
    pub fixing_z: Option<GroupElement>,
}

impl OrbitReport {
    pub fn ok(&self) -> bool {
        self.well_defined && self.transitive && self.sharply_transitive.is_some()
    }
}

pub fn verify_orbit_infinity(ctx: &FieldCtx) -> OrbitReport {
    let q = ctx.q();
    let dirs = ctx.zeta_list();
    let ml = enumerate_ml(ctx).by_normal_form;
    let perms: Option<Vec<Vec<usize>>> = ml
        .iter()
        .map(|m| direction_permutation(ctx, m, &dirs))
        .collect();
    let well_defined = perms.is_some();
    let perms = perms.unwrap_or_default();
    let orbit: BTreeSet<usize> = perms.iter().map(|p| p[0]).collect();
    let transitive = well_defined && orbit.len() == dirs.len();

    let sl_image: BTreeSet<Vec<usize>> = enumerate_sl(ctx)
        .iter()
        .filter_map(|g| direction_permutation(ctx, &g.matrix(), &dirs))
        .collect();

    // candidates: (a, c) norm pairs with ξ^{q+1} = 1
    let xis = ctx.roots_of_unity(q + 1).expect("q + 1 divides Q - 1");
    let single_cycle = |p: &[usize]| {
        let mut i = 0;
        for k in 1..=p.len() {
            i = p[i];
            if i == 0 {
                return k == p.len();
            }
        }
        false
    };
    let search = |xis: &[Fe]| {
        norm_pairs(ctx).into_iter().find_map(|(a, c)| {
            xis.iter().find_map(|&xi| {
                let g = GroupElement::new(ctx, a, c, xi);
                let p = direction_permutation(ctx, &g.matrix(), &dirs)?;
                (single_cycle(&p) && g.order(ctx, q + 1) == Some(q + 1)).then_some(g)
            })
        })
    };
    let sharply_transitive = search(&xis);
    let fixing_z = search(&[Fe::ONE]);

    OrbitReport {
        directions: dirs.len(),
        well_defined,
        transitive,
        sl_image_size: sl_image.len(),
        sharply_transitive,
        fixing_z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        assert_eq!(enumerate_sl(&c).len(), 6);
        let ml = enumerate_ml(&c);
        assert!(ml.agree());
        assert_eq!(ml.by_conditions.len(), 18);
        assert_eq!(lift_count(&c), 54);
        assert!(enumerate_sl(&c).contains(&GroupElement::identity()));
    }

    #[test]
    fn identity_acts_trivially() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        let e = GroupElement::identity();
        assert!(e.is_valid(&c));
        for x in c.elements().take(20) {
            let p = [x, c.generator(), x];
            assert_eq!(e.act(&c, p), p);
        }
        assert_eq!(e.order(&c, 1), Some(1));
    }

    #[test]
    fn q2_sl_is_symmetric_on_three_directions() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        let r = verify_orbit_infinity(&c);
        assert_eq!(r.directions, 3);
        assert_eq!(r.sl_image_size, 6);
        assert!(r.ok());
    }
}
