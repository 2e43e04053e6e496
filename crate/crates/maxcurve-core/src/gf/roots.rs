//! Power-residue tests, `d`-th roots, and the distinguished elements `α`, `ρ`, `ζ`.

use alloc::vec::Vec;

use super::{Fe, FieldCtx, GfError};

/// Maps each nonzero `d`-th power to one of its `d`-th roots, for contexts
/// without log tables. Built by one pass over `g^i`, `0 <= i < (Q-1)/d`;
/// memory `O(Q/d)`.
#[derive(Debug, Clone)]
pub struct RootTable {
    d: u64,
    /// `(t^d, t)` sorted by the first component.
    reps: Vec<(u32, u32)>,
    unity: Vec<Fe>,
}

impl RootTable {
    pub fn build(ctx: &FieldCtx, d: u64) -> Result<Self, GfError> {
        ctx.check_divisor(d)?;
        let count = (ctx.order - 1) / d;
        let g = ctx.generator();
        let gd = ctx.pow(g, d);
        let mut reps = Vec::with_capacity(count as usize);
        let (mut t, mut td) = (Fe::ONE, Fe::ONE);
        for _ in 0..count {
            reps.push((td.0, t.0));
            t = ctx.mul(t, g);
            td = ctx.mul(td, gd);
        }
        reps.sort_unstable();
        Ok(Self {
            d,
            reps,
            unity: ctx.roots_of_unity(d)?,
        })
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    /// All `t` with `t^d = x`.
    pub fn roots(&self, ctx: &FieldCtx, x: Fe) -> Vec<Fe> {
        if x.is_zero() {
            return alloc::vec![Fe::ZERO];
        }
        match self.reps.binary_search_by_key(&x.0, |&(v, _)| v) {
            Ok(i) => {
                let r = Fe(self.reps[i].1);
                self.unity.iter().map(|&u| ctx.mul(r, u)).collect()
            }
            Err(_) => Vec::new(),
        }
    }
}

impl FieldCtx {
    pub(crate) fn check_divisor(&self, d: u64) -> Result<(), GfError> {
        if d == 0 || !(self.order - 1).is_multiple_of(d) {
            Err(GfError::DNotDivisor(d))
        } else {
            Ok(())
        }
    }

    /// Whether the nonzero `x` is a `d`-th power, for `d | Q-1`.
    pub fn is_dth_power(&self, x: Fe, d: u64) -> Result<bool, GfError> {
        self.check_divisor(d)?;
        if x.is_zero() {
            return Err(GfError::ZeroInput);
        }
        Ok(self.is_dth_power_unchecked(x, d))
    }

    /// As [`is_dth_power`](Self::is_dth_power) with the preconditions assumed.
    #[inline]
    pub fn is_dth_power_unchecked(&self, x: Fe, d: u64) -> bool {
        match self.log(x) {
            Some(l) => l % d == 0,
            None => self.pow(x, (self.order - 1) / d) == Fe::ONE,
        }
    }

    /// All solutions of `t^d = x`: `{0}` for `x = 0`, otherwise either none or exactly `d`.
    ///
    /// Without log tables this builds a [`RootTable`] for `d` on every call; loops
    /// should build one table up front instead.
    pub fn dth_roots(&self, x: Fe, d: u64) -> Result<Vec<Fe>, GfError> {
        self.check_divisor(d)?;
        if x.is_zero() {
            return Ok(alloc::vec![Fe::ZERO]);
        }
        match self.log(x) {
            Some(l) => {
                if l % d != 0 {
                    return Ok(Vec::new());
                }
                let step = (self.order - 1) / d;
                Ok((0..d).map(|j| self.exp(l / d + j * step)).collect())
            }
            None => Ok(RootTable::build(self, d)?.roots(self, x)),
        }
    }

    /// The `d` distinct `d`-th roots of unity, `g^{j(Q-1)/d}`.
    pub fn roots_of_unity(&self, d: u64) -> Result<Vec<Fe>, GfError> {
        self.check_divisor(d)?;
        let w = self.exp((self.order - 1) / d);
        let mut out = Vec::with_capacity(d as usize);
        let mut x = Fe::ONE;
        for _ in 0..d {
            out.push(x);
            x = self.mul(x, w);
        }
        Ok(out)
    }

    /// The `q + 1` elements `ζ` with `ζ^{q+1} = 1`.
    pub fn zeta_list(&self) -> Vec<Fe> {
        self.roots_of_unity(self.q + 1)
            .expect("q + 1 divides q^2 - 1")
    }

    /// The element of `F_{q^2} \ F_q` with the least exponent as a power of the generator.
    pub fn alpha(&self) -> Fe {
        let step = (self.order - 1) / (self.q * self.q - 1);
        (1..self.q * self.q - 1)
            .map(|j| self.exp(j * step))
            .find(|&a| !self.is_fixed_by(a, 1))
            .expect("F_{q^2} is strictly larger than F_q")
    }

    /// All of `F_{q^2} \ F_q`, in generator-power order.
    pub fn alphas(&self) -> Vec<Fe> {
        self.subfield_elements(2)
            .expect("2 divides 2n")
            .into_iter()
            .filter(|&a| !self.is_fixed_by(a, 1))
            .collect()
    }

    /// The least element (by encoding) of `F_{q^2}` with `ρ^q + ρ = 1`.
    pub fn rho(&self) -> Fe {
        let mut f2 = self.subfield_elements(2).expect("2 divides 2n");
        f2.sort_unstable();
        f2.into_iter()
            .find(|&r| self.add(self.frob(r, 1), r) == Fe::ONE)
            .expect("the trace F_{q^2} -> F_q is surjective")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn residue_edge_cases() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        assert!(c.is_dth_power(Fe::ONE, 7).unwrap());
        assert_eq!(c.is_dth_power(Fe::ZERO, 3), Err(GfError::ZeroInput));
        assert_eq!(c.is_dth_power(Fe::ONE, 5), Err(GfError::DNotDivisor(5)));
        assert!(!c.is_dth_power(c.generator(), 3).unwrap());
        for x in c.subfield_elements(2).unwrap().into_iter().skip(1) {
            assert!(c.is_dth_power(x, 3).unwrap());
        }
    }

    #[test]
    fn cube_roots_of_g_cubed() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        let g = c.generator();
        let x = c.pow(g, 3);
        let roots: BTreeSet<Fe> = c.dth_roots(x, 3).unwrap().into_iter().collect();
        // exhaustive: every t in F_64 with t^3 = g^3
        let brute: BTreeSet<Fe> = c.elements().filter(|&t| c.pow(t, 3) == x).collect();
        assert_eq!(roots, brute);
        assert!(roots.contains(&g));
        assert_eq!(c.dth_roots(Fe::ZERO, 3).unwrap(), [Fe::ZERO]);
    }

    #[test]
    fn roots_of_unity_lie_in_f_q2() {
        let c = FieldCtx::with_defaults(3, 1, 3).unwrap();
        let z = c.dth_roots(Fe::ONE, 4).unwrap();
        assert_eq!(z.len(), 4);
        assert!(z.iter().all(|&x| c.in_subfield(x, 2).unwrap()));
        assert_eq!(c.zeta_list().len(), 4);
    }

    #[test]
    fn root_table_matches_log_tables() {
        let with = FieldCtx::new(3, 1, 3, u64::MAX).unwrap();
        let without = FieldCtx::new(3, 1, 3, 0).unwrap();
        let table = RootTable::build(&without, 4).unwrap();
        for x in with.elements() {
            let mut a = with.dth_roots(x, 4).unwrap();
            let mut b = table.roots(&without, x);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn special_elements() {
        let c = FieldCtx::with_defaults(2, 1, 3).unwrap();
        let r = c.rho();
        // brute force over F_4: the solutions of r^2 + r = 1 are the primitive cube roots of unity
        let f4 = c.subfield_elements(2).unwrap();
        let sols: Vec<Fe> = f4
            .iter()
            .copied()
            .filter(|&x| c.add(c.mul(x, x), x) == Fe::ONE)
            .collect();
        assert_eq!(sols.len(), 2);
        assert!(sols.contains(&r));
        assert_eq!(c.pow(r, 3), Fe::ONE);

        let c = FieldCtx::with_defaults(3, 1, 3).unwrap();
        let half = c.inv(c.from_int(2)).unwrap();
        assert_eq!(c.add(c.frob(half, 1), half), Fe::ONE);
        let r = c.rho();
        assert_eq!(c.add(c.frob(r, 1), r), Fe::ONE);
        let a = c.alpha();
        assert!(c.in_subfield(a, 2).unwrap() && !c.in_subfield(a, 1).unwrap());
    }
}
