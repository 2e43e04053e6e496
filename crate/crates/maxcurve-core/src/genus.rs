//! Genus formulas: closed forms for every curve in the family, a Riemann–Hurwitz
//! calculator for tame Kummer covers, and the genus spectrum of the subcovers
//! `Y_{k1,k2} : w^{(q^n+1)/k2} = s^{(q+1)/k1} (s^{(q^2-1)/k1} - 1)^{q+1} / (s^{(q+1)/k1} - 1)^q`.
//!
//! All arithmetic is checked `i128`; every intermediate of the supported
//! parameter range is far below that limit, and overflow is reported rather than wrapped.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{divisors, gcd, prime_power};
use crate::curves::CurveSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("n = {0} must be odd and at least 3")]
    NIsEven(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("k1 = {k1} must divide q + 1 and k2 = {k2} must divide m")]
    BadDivisor { k1: u64, k2: u64 },
    #[error("degree {k} is divisible by the characteristic {p}")]
    WildRamification { k: u64, p: u64 },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("Riemann-Hurwitz produced a non-integral or negative genus")]
    NonIntegral,
}

fn check_qn(q: u64, n: u32) -> Result<u64, GenusError> {
    let (p, _) = prime_power(q).ok_or(GenusError::NotPrimePower(q))?;
    if n.is_multiple_of(2) || n < 3 {
        return Err(GenusError::NIsEven(n));
    }
    Ok(p)
}

fn pow(q: u64, k: u32) -> Result<i128, GenusError> {
    (q as i128).checked_pow(k).ok_or(GenusError::Overflow)
}

fn to_genus(twice: i128) -> Result<u64, GenusError> {
    if twice < 0 || twice % 2 != 0 {
        return Err(GenusError::NonIntegral);
    }
    u64::try_from(twice / 2).map_err(|_| GenusError::Overflow)
}

/// `m = (q^n + 1)/(q + 1)`.
pub fn m_of(q: u64, n: u32) -> Result<u64, GenusError> {
    let qn = pow(q, n)?;
    u64::try_from((qn + 1) / (q as i128 + 1)).map_err(|_| GenusError::Overflow)
}

/// `g(H_q) = q(q-1)/2`.
pub fn genus_hermitian(q: u64) -> u64 {
    q * (q - 1) / 2
}

/// `g(X_n) = (q-1)(q^{n+1} + q^n - q^2)/2`.
pub fn genus_xn(q: u64, n: u32) -> Result<u64, GenusError> {
    check_qn(q, n)?;
    let twice = (q as i128 - 1) * (pow(q, n + 1)? + pow(q, n)? - pow(q, 2)?);
    to_genus(twice)
}

/// Genus of `w^{q^n+1} = η^{q+1} - η`: `(m-1)(q+1)/2`.
pub fn genus_etaz(q: u64, n: u32) -> Result<u64, GenusError> {
    check_qn(q, n)?;
    to_genus((m_of(q, n)? as i128 - 1) * (q as i128 + 1))
}

/// Genus of `z^m = (ρ^{q^2-1} - 1)/ρ^{q-1}`: `(m-1)(q^2-1)/2`.
pub fn genus_rhoz(q: u64, n: u32) -> Result<u64, GenusError> {
    check_qn(q, n)?;
    to_genus((m_of(q, n)? as i128 - 1) * (pow(q, 2)? - 1))
}

/// A ramification datum for a Kummer cover `w^k = f`: the valuation of `f` at
/// a place of the base and that place's degree (or a multiplicity of
/// identical places).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ramification {
    pub valuation: i64,
    pub degree: u64,
}

impl Ramification {
    pub fn new(valuation: i64, degree: u64) -> Self {
        Self { valuation, degree }
    }
}

/// Riemann–Hurwitz for a tame Kummer extension of degree `k`:
/// `g' = 1 + k(g - 1) + ½ Σ (k - gcd(k, d_i)) deg_i`.
pub fn genus_rh_kummer(
    base_genus: u64,
    k: u64,
    ramification: &[Ramification],
    characteristic: u64,
) -> Result<u64, GenusError> {
    if characteristic > 1 && k.is_multiple_of(characteristic) {
        return Err(GenusError::WildRamification {
            k,
            p: characteristic,
        });
    }
    let k128 = k as i128;
    let mut twice = 2 + 2 * k128 * (base_genus as i128 - 1);
    for r in ramification {
        let g = gcd(k, r.valuation.unsigned_abs()) as i128;
        twice = twice
            .checked_add((k128 - g).checked_mul(r.degree as i128).ok_or(GenusError::Overflow)?)
            .ok_or(GenusError::Overflow)?;
    }
    to_genus(twice)
}

/// Divisor of `y(x^{q^2}-x)/(x^{q+1}-1)` on the Hermitian curve: `q^3 - q` simple
/// affine zeros and `q + 1` poles of order `q^2 - q`.
pub fn xn_ramification(q: u64) -> Vec<Ramification> {
    vec![
        Ramification::new(1, q * q * q - q),
        Ramification::new(-((q * q - q) as i64), q + 1),
    ]
}

/// Divisor of `η^{q+1} - η = η(η-1)^q` on the projective line.
pub fn etaz_ramification(q: u64) -> Vec<Ramification> {
    vec![
        Ramification::new(1, 1),
        Ramification::new(q as i64, 1),
        Ramification::new(-(q as i64 + 1), 1),
    ]
}

/// Divisor of `(ρ^{q^2-1} - 1)/ρ^{q-1}` on the projective line.
pub fn rhoz_ramification(q: u64) -> Vec<Ramification> {
    vec![
        Ramification::new(1, q * q - 1),
        Ramification::new(-(q as i64 - 1), 1),
        Ramification::new(-((q * q - q) as i64), 1),
    ]
}

/// Divisor of the subcover right-hand side in `s`.
pub fn subcover_ramification(q: u64, k1: u64) -> Vec<Ramification> {
    let a = (q + 1) / k1;
    let b = (q * q - 1) / k1;
    vec![
        Ramification::new(a as i64, 1),
        Ramification::new(1, a),
        Ramification::new(q as i64 + 1, b - a),
        Ramification::new(-((q * (q * q - 1) / k1) as i64), 1),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub k1: u64,
    pub k2: u64,
    /// Kummer degree `(q^n+1)/k2`.
    pub k: u64,
    pub deltas: [u64; 3],
    pub genus: u64,
    /// The same genus recomputed by Riemann–Hurwitz from the ramification data.
    pub genus_rh: u64,
    pub in_paper_list: bool,
}

/// Closed-form genus of `Y_{k1,k2}` (and its Riemann–Hurwitz cross-check).
pub fn genus_subcover(q: u64, n: u32, k1: u64, k2: u64) -> Result<SpectrumEntry, GenusError> {
    let p = check_qn(q, n)?;
    let m = m_of(q, n)?;
    if k1 == 0 || k2 == 0 || !(q + 1).is_multiple_of(k1) || m % k2 != 0 {
        return Err(GenusError::BadDivisor { k1, k2 });
    }
    let qn1 = pow(q, n)? + 1;
    let k = (qn1 / k2 as i128) as u64;
    let a = (q + 1) / k1;
    let b = (q * q - 1) / k1;
    let d1 = gcd(k, a);
    let d2 = gcd(k, q + 1);
    let d3 = gcd(k, b);
    let (a, b, d1, d2, d3) = (a as i128, b as i128, d1 as i128, d2 as i128, d3 as i128);
    let big = (q as i128 * q as i128 - 1)
        .checked_mul(qn1)
        .ok_or(GenusError::Overflow)?
        / (k1 as i128 * k2 as i128);
    let bracket = -d1 - a + big - b * d2 + a * d2 - d3;
    let genus = to_genus(2 + bracket)?;
    let genus_rh = genus_rh_kummer(0, k, &subcover_ramification(q, k1), p)?;
    Ok(SpectrumEntry {
        k1,
        k2,
        k,
        deltas: [d1 as u64, d2 as u64, d3 as u64],
        genus,
        genus_rh,
        in_paper_list: published_spectrum(q, n).is_some_and(|l| l.contains(&genus)),
    })
}

/// Every divisor pair `(k1, k2)`, `k1 | q+1`, `k2 | m`, in ascending order.
pub fn subcover_pairs(q: u64, n: u32) -> Result<Vec<(u64, u64)>, GenusError> {
    let m = m_of(q, n)?;
    let d2 = divisors(m);
    Ok(divisors(q + 1)
        .into_iter()
        .flat_map(|k1| d2.iter().map(move |&k2| (k1, k2)))
        .collect())
}

/// Distinct genera of all `Y_{k1,k2}`, ascending, each with the first pair that realizes it.
pub fn spectrum(q: u64, n: u32) -> Result<Vec<SpectrumEntry>, GenusError> {
    let mut out: Vec<SpectrumEntry> = Vec::new();
    for (k1, k2) in subcover_pairs(q, n)? {
        let e = genus_subcover(q, n, k1, k2)?;
        if !out.iter().any(|x| x.genus == e.genus) {
            out.push(e);
        }
    }
    out.sort_by_key(|e| e.genus);
    Ok(out)
}

/// Published genera for the four worked parameter sets.
pub fn published_spectrum(q: u64, n: u32) -> Option<&'static [u64]> {
    match (q, n) {
        (4, 5) => Some(&[32, 156, 302, 1506, 1532]),
        (4, 7) => Some(&[212, 842, 1056, 4206, 24572]),
        (5, 5) => Some(&[6242, 12484, 18724]),
        (7, 5) => Some(&[
            243, 485, 969, 1941, 4563, 9125, 18249, 36501, 50403, 100805, 201609,
        ]),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub spec: CurveSpec,
    pub genus_closed: u64,
    pub genus_rh: u64,
    pub agree: bool,
}

/// Closed form and Riemann–Hurwitz genus for a curve specification.
pub fn genus_report(spec: &CurveSpec) -> Result<GenusReport, GenusError> {
    use crate::curves::Family;
    let (q, n) = (spec.q, spec.n);
    let p = prime_power(q).ok_or(GenusError::NotPrimePower(q))?.0;
    let (closed, rh) = match spec.family {
        Family::Hermitian => {
            // y^{q+1} = x^{q+1} - 1 as a Kummer cover of the x-line
            let ram = [Ramification::new(1, q + 1), Ramification::new(-(q as i64 + 1), 1)];
            (genus_hermitian(q), genus_rh_kummer(0, q + 1, &ram, p)?)
        }
        Family::Xn | Family::Ggs => (
            genus_xn(q, n)?,
            genus_rh_kummer(genus_hermitian(q), m_of(q, n)?, &xn_ramification(q), p)?,
        ),
        Family::EtaZ => (
            genus_etaz(q, n)?,
            genus_rh_kummer(0, pow(q, n)? as u64 + 1, &etaz_ramification(q), p)?,
        ),
        Family::RhoZ => (
            genus_rhoz(q, n)?,
            genus_rh_kummer(0, m_of(q, n)?, &rhoz_ramification(q), p)?,
        ),
        Family::Subcover => {
            let e = genus_subcover(q, n, spec.k1, spec.k2)?;
            (e.genus, e.genus_rh)
        }
    };
    Ok(GenusReport {
        spec: spec.clone(),
        genus_closed: closed,
        genus_rh: rh,
        agree: closed == rh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(genus_xn(2, 3), Ok(10));
        assert_eq!(genus_xn(2, 5), Ok(46));
        assert_eq!(genus_xn(3, 5), Ok(963));
        assert_eq!(genus_xn(2, 4), Err(GenusError::NIsEven(4)));
        assert_eq!(genus_etaz(2, 5), Ok(15));
        assert_eq!(genus_rhoz(3, 3), Ok(24));
        assert_eq!(genus_etaz(2, 3), Ok(3));
        assert_eq!(genus_rhoz(2, 3), Ok(3));
    }

    #[test]
    fn riemann_hurwitz_examples() {
        let ram = [
            Ramification::new(1, 1),
            Ramification::new(2, 1),
            Ramification::new(-3, 1),
        ];
        assert_eq!(genus_rh_kummer(0, 33, &ram, 2), Ok(15));
        assert_eq!(genus_rh_kummer(7, 1, &ram, 2), Ok(7));
        assert_eq!(genus_rh_kummer(1, 3, &[Ramification::new(1, 9)], 2), Ok(10));
        assert_eq!(
            genus_rh_kummer(0, 4, &ram, 2),
            Err(GenusError::WildRamification { k: 4, p: 2 })
        );
    }

    #[test]
    fn xn_rh_agrees_with_closed_form() {
        for (q, n) in [(2, 3), (2, 5), (2, 7), (3, 3), (3, 5), (4, 3), (4, 5), (5, 3), (5, 5), (7, 5)] {
            let p = prime_power(q).unwrap().0;
            let rh = genus_rh_kummer(genus_hermitian(q), m_of(q, n).unwrap(), &xn_ramification(q), p);
            assert_eq!(rh, genus_xn(q, n), "q={q} n={n}");
            let k = q.pow(n) + 1;
            assert_eq!(genus_rh_kummer(0, k, &etaz_ramification(q), p), genus_etaz(q, n));
            let m = m_of(q, n).unwrap();
            assert_eq!(genus_rh_kummer(0, m, &rhoz_ramification(q), p), genus_rhoz(q, n));
        }
    }

    #[test]
    fn subcover_examples() {
        assert_eq!(genus_subcover(4, 5, 1, 1).unwrap().genus, 7656);
        assert_eq!(genus_xn(4, 5), Ok(7656));
        assert_eq!(genus_subcover(4, 5, 5, 41).unwrap().genus, 32);
        assert_eq!(genus_subcover(4, 5, 1, 5).unwrap().genus, 1506);
        assert_eq!(
            genus_subcover(4, 5, 2, 1),
            Err(GenusError::BadDivisor { k1: 2, k2: 1 })
        );
    }

    #[test]
    fn spectrum_4_5_is_complete() {
        let g: Vec<u64> = spectrum(4, 5).unwrap().iter().map(|e| e.genus).collect();
        assert_eq!(g, [2, 6, 32, 156, 302, 1506, 1532, 7656]);
    }
}
