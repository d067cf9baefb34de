//! Type-theoretic data of a cuspidal representation `pi` of `GL_n(F)` and
//! the distinction invariants computed from them.
//!
//! A datum records `q_o = |k_{F_o}|`, `n`, `e(F/F_o)`, the ramification
//! index `e(pi)` and residue degree `f(pi)` of the parameter field `E/F`,
//! `e_sigma(pi) = e(E/E_o)`, whether `pi` is supercuspidal, and the
//! caller's claim about distinction. Nothing here decides distinction.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::charlattice::{CaseTag, EllContext, FiniteSetting};
use crate::error::{Error, Result};
use crate::lfactor::RootOfUnity;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Distinction {
    Distinguished,
    /// `pi` is `chi`-distinguished for an unramified `chi` with `chi(varpi_o) = c`.
    TwistOfDistinguished(RootOfUnity),
    NotDistinguishedUpToUnramifiedTwist,
}

impl Distinction {
    pub fn is_distinguished_up_to_twist(&self) -> bool {
        !matches!(self, Distinction::NotDistinguishedUpToUnramifiedTwist)
    }

    /// The twist `c`; `1` for a distinguished representation.
    pub fn twist(&self) -> Option<RootOfUnity> {
        match self {
            Distinction::Distinguished => Some(RootOfUnity::one()),
            Distinction::TwistOfDistinguished(c) => Some(*c),
            Distinction::NotDistinguishedUpToUnramifiedTwist => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuspidalDatum {
    pub q_o: BigUint,
    pub n: u32,
    pub e_ffo: u32,
    pub e_ef: u32,
    pub f_ef: u32,
    pub e_sigma: u32,
    pub supercuspidal: bool,
    pub distinction: Distinction,
}

impl CuspidalDatum {
    /// `m(pi) = n / (e(pi) f(pi))`, when the division is exact.
    pub fn m(&self) -> Option<u32> {
        let d = self.e_ef.checked_mul(self.f_ef)?;
        (d != 0 && self.n.is_multiple_of(d)).then(|| self.n / d)
    }

    fn m_unchecked(&self) -> u32 {
        self.m().expect("validated datum")
    }

    /// `e(E_o/F_o)`.
    pub fn e_eo_fo(&self) -> u32 {
        self.e_ef * self.e_ffo / self.e_sigma
    }

    /// `f(E_o/F_o)`.
    pub fn f_eo_fo(&self) -> u32 {
        self.f_ef * self.e_sigma / self.e_ffo
    }
}

impl fmt::Display for CuspidalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(q_o={}, n={}, e_FFo={}, e={}, f={}, e_sigma={}{})",
            self.q_o,
            self.n,
            self.e_ffo,
            self.e_ef,
            self.f_ef,
            self.e_sigma,
            if self.supercuspidal { "" } else { ", non-supercuspidal" }
        )
    }
}

/// One failed constraint on a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub tag: String,
    pub message: String,
}

impl Violation {
    fn new(tag: &str, message: impl Into<String>) -> Self {
        Violation {
            tag: tag.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self.message)
    }
}

/// Checks every constraint on `d`; with `ell`, also the `ell`-dependent ones.
pub fn validate(d: &CuspidalDatum, ell: Option<u64>) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let q_ok = matches!(arith::prime_power(&d.q_o), Some((p, _)) if p.is_odd());
    if !q_ok {
        out.push(Violation::new("ResidueFieldOdd", format!("q_o = {} must be an odd prime power", d.q_o)));
    }
    let mut ranges_ok = true;
    if d.n == 0 || d.e_ef == 0 || d.f_ef == 0 {
        out.push(Violation::new("ParameterRange", "n, e(pi) and f(pi) must be at least 1"));
        ranges_ok = false;
    }
    if !matches!(d.e_ffo, 1 | 2) || !matches!(d.e_sigma, 1 | 2) {
        out.push(Violation::new("ParameterRange", "e(F/F_o) and e_sigma(pi) must be 1 or 2"));
        ranges_ok = false;
    }
    let m = if ranges_ok { d.m() } else { None };
    if ranges_ok && m.is_none() {
        out.push(Violation::new(
            "DegreeDivisibility",
            format!("e(pi) f(pi) = {} must divide n = {}", d.e_ef as u64 * d.f_ef as u64, d.n),
        ));
    }
    if ranges_ok {
        if d.e_sigma == 2 && d.e_ffo != 2 {
            out.push(Violation::new("RamifiedBase", "e_sigma(pi) = 2 forces F/F_o to be ramified: F/F_o must be ramified"));
        }
        if d.e_sigma == 1 && d.e_ffo == 2 && d.f_ef % 2 == 1 {
            out.push(Violation::new(
                "TowerResidueDegree",
                "e_sigma(pi) = 1 with F/F_o ramified needs f(pi) even, since f(E/E_o) = 2 divides f(E/F_o)",
            ));
        }
    }
    if let Some(m) = m {
        if d.e_sigma == 1 && d.supercuspidal && m % 2 == 0 {
            out.push(Violation::new(
                "SupercuspidalParity",
                format!("a sigma-self-dual supercuspidal with e_sigma(pi) = 1 has m(pi) is odd; got m = {m}"),
            ));
        }
        if d.e_sigma == 2 && m != 1 && m % 2 == 1 {
            out.push(Violation::new(
                "RamifiedParity",
                format!("e_sigma(pi) = 2 needs m(pi) equal to 1 or even; got m = {m}"),
            ));
        }
        if d.distinction.is_distinguished_up_to_twist() && d.e_sigma == 2 && m % 2 == 1 && m >= 3 {
            out.push(Violation::new(
                "CRASremark",
                format!("no chi-distinguished cuspidal has e_sigma(pi) = 2 and odd m(pi) = {m} >= 3"),
            ));
        }
    }
    if let Some(ell) = ell {
        if !arith::is_prime_u64(ell) {
            out.push(Violation::new("EllPrime", format!("ell = {ell} is not prime")));
        } else if (&d.q_o % ell).is_zero() {
            out.push(Violation::new("EllCoprime", format!("ell = {ell} divides q_o = {}", d.q_o)));
        } else if out.is_empty() {
            let m = d.m_unchecked();
            if d.distinction.is_distinguished_up_to_twist()
                && d.e_sigma == 1
                && m.is_multiple_of(2)
                && !q_pow_is_one_mod(d, ell)
            {
                out.push(Violation::new(
                    "BadParityNotBanal",
                    format!(
                        "e_sigma(pi) = 1 and m(pi) = {m} even: a relatively banal representation (q_o^(n/e_o) != 1 mod {ell}) is not distinguished"
                    ),
                ));
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn validated(d: &CuspidalDatum, ell: Option<u64>) -> Result<()> {
    validate(d, ell).map_err(Error::Validation)
}

fn require_distinguished(d: &CuspidalDatum) -> Result<()> {
    if d.distinction.is_distinguished_up_to_twist() {
        Ok(())
    } else {
        Err(Error::NotDistinguishedInput)
    }
}

fn q_pow_is_one_mod(d: &CuspidalDatum, ell: u64) -> bool {
    let q = (&d.q_o % ell).to_u64().unwrap();
    pow_mod(q, (d.n / e_o_unchecked(d)) as u64, ell) == 1 % ell
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    BigUint::from(base)
        .modpow(&BigUint::from(exp), &BigUint::from(m))
        .to_u64()
        .unwrap()
}

fn e_o_unchecked(d: &CuspidalDatum) -> u32 {
    let base = d.e_eo_fo();
    if d.e_sigma == 2 && d.m_unchecked() != 1 {
        2 * base
    } else {
        base
    }
}

/// `e_o(pi)`.
pub fn e_o(d: &CuspidalDatum) -> Result<u32> {
    validated(d, None)?;
    let e = e_o_unchecked(d);
    debug_assert_eq!(d.n % e, 0);
    Ok(e)
}

/// `n / e_o(pi)`.
pub fn big_n(d: &CuspidalDatum) -> Result<u32> {
    Ok(d.n / e_o(d)?)
}

/// `q_o^{n/e_o(pi)}`.
pub fn q_pow(d: &CuspidalDatum) -> Result<BigUint> {
    Ok(d.q_o.pow(big_n(d)?))
}

/// `q_{E_o}`, checked against `q_o^{n/e_o}` through the comparison identities.
pub fn q_eo(d: &CuspidalDatum) -> Result<BigUint> {
    validated(d, None)?;
    let q = d.q_o.pow(d.f_eo_fo());
    let m = d.m_unchecked();
    let target = d.q_o.pow(d.n / e_o_unchecked(d));
    let lhs = match (d.e_sigma, m) {
        (1, _) => q.pow(m),
        (_, 1) => q.clone(),
        _ => q.pow(m / 2),
    };
    assert_eq!(lhs, target, "comparison identity fails for {d}");
    Ok(q)
}

/// `q^{n/e(pi)} != 1 mod ell` with `q = |k_F| = q_o^{2/e(F/F_o)}`.
pub fn is_banal(d: &CuspidalDatum, ell: u64) -> Result<bool> {
    validated(d, Some(ell))?;
    let q = d.q_o.pow(2 / d.e_ffo);
    let r = q.modpow(&BigUint::from(d.n / d.e_ef), &BigUint::from(ell));
    Ok(!r.is_one())
}

/// `q_o^{n/e_o(pi)} != 1 mod ell`.
pub fn is_relatively_banal(d: &CuspidalDatum, ell: u64) -> Result<bool> {
    require_distinguished(d)?;
    validated(d, Some(ell))?;
    Ok(!q_pow_is_one_mod(d, ell))
}

/// Orders of `X_o(pi)` in characteristic 0 and `ell`, and the kernel of reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XoOrders {
    pub char0: u64,
    pub modell: u64,
    pub kernel: u64,
}

pub fn x_o_orders(d: &CuspidalDatum, ell: Option<u64>) -> Result<XoOrders> {
    require_distinguished(d)?;
    validated(d, ell)?;
    let n_big = (d.n / e_o_unchecked(d)) as u64;
    Ok(x_o_orders_of(n_big, ell))
}

pub(crate) fn x_o_orders_of(n_big: u64, ell: Option<u64>) -> XoOrders {
    let a = match ell {
        Some(l) => arith::split_prime_part(n_big, l).0,
        None => n_big,
    };
    XoOrders {
        char0: n_big,
        modell: a,
        kernel: n_big / a,
    }
}

/// The finite-level setting `(k_E / k_{E_o}, GL_m)` attached to `d`, and `m`.
pub fn finite_level(d: &CuspidalDatum) -> Result<(FiniteSetting, u32)> {
    let q = q_eo(d)?;
    let m = d.m_unchecked();
    let s = if d.e_sigma == 1 {
        FiniteSetting::galois_pair(q, m)?
    } else {
        FiniteSetting::self_dual(q, m)?
    };
    Ok((s, m))
}

/// Whether every lift of `d` is an unramified twist of a distinguished
/// representation, decided by the finite-level case of `ell`.
pub fn all_lifts_unramified_twist_distinguished(d: &CuspidalDatum, ell: u64) -> Result<bool> {
    require_distinguished(d)?;
    validated(d, Some(ell))?;
    let (s, _) = finite_level(d)?;
    let ctx = EllContext::new(&s, ell)?;
    let tag = s.classify_case(&ctx)?;
    let result = matches!(tag, CaseTag::Coprime | CaseTag::MinusCase);
    assert_eq!(
        result,
        is_relatively_banal(d, ell)?,
        "finite-level case {tag} disagrees with relative banality for {d}, ell = {ell}"
    );
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub e_o: u32,
    pub n_big: u32,
    pub q_pow: BigUint,
    pub q_eo: BigUint,
    pub banal: bool,
    pub relatively_banal: bool,
    pub x_o: XoOrders,
}

pub fn invariants(d: &CuspidalDatum, ell: u64) -> Result<InvariantReport> {
    require_distinguished(d)?;
    validated(d, Some(ell))?;
    let e_o = e_o(d)?;
    let report = InvariantReport {
        e_o,
        n_big: d.n / e_o,
        q_pow: q_pow(d)?,
        q_eo: q_eo(d)?,
        banal: is_banal(d, ell)?,
        relatively_banal: is_relatively_banal(d, ell)?,
        x_o: x_o_orders(d, Some(ell))?,
    };
    debug_assert_eq!(report.x_o.char0, report.x_o.modell * report.x_o.kernel);
    Ok(report)
}

/// Every structurally possible tuple `(e(F/F_o), e(pi), f(pi), e_sigma)`
/// with `e(pi) f(pi) | n`, valid or not, in lexicographic order.
pub fn candidate_data(q_o: &BigUint, n: u32, supercuspidal: bool, distinction: &Distinction) -> Vec<CuspidalDatum> {
    let mut out = Vec::new();
    for e_ffo in [1, 2] {
        for e_ef in (1..=n).filter(|e| n.is_multiple_of(*e)) {
            for f_ef in (1..=n / e_ef).filter(|f| (n / e_ef).is_multiple_of(*f)) {
                for e_sigma in [1, 2] {
                    out.push(CuspidalDatum {
                        q_o: q_o.clone(),
                        n,
                        e_ffo,
                        e_ef,
                        f_ef,
                        e_sigma,
                        supercuspidal,
                        distinction: distinction.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Odd prime powers up to `bound`.
pub fn odd_prime_powers_up_to(bound: u64) -> Vec<u64> {
    (3..=bound)
        .filter(|&q| matches!(arith::prime_power(&BigUint::from(q)), Some((p, _)) if p.is_odd()))
        .collect()
}

/// Valid distinguished data paired with admissible `ell`: every odd prime
/// power `q_o <= q_bound`, `n <= n_bound`, every divisor splitting, both
/// ramification patterns, both supercuspidality flags, and primes
/// `ell <= ell_bound` prime to `q_o`.
pub fn distinguished_grid(q_bound: u64, n_bound: u32, ell_bound: u64) -> Vec<(CuspidalDatum, u64)> {
    let ells = arith::primes_up_to(ell_bound);
    let mut out = Vec::new();
    for q in odd_prime_powers_up_to(q_bound) {
        let q_o = BigUint::from(q);
        for n in 1..=n_bound {
            for sc in [true, false] {
                for d in candidate_data(&q_o, n, sc, &Distinction::Distinguished) {
                    if validate(&d, None).is_err() {
                        continue;
                    }
                    for &ell in ells.iter().filter(|&&l| q % l != 0) {
                        if validate(&d, Some(ell)).is_ok() {
                            out.push((d.clone(), ell));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::too_many_arguments)]
    fn datum(q_o: u32, n: u32, e_ffo: u32, e_ef: u32, f_ef: u32, e_sigma: u32, sc: bool) -> CuspidalDatum {
        CuspidalDatum {
            q_o: BigUint::from(q_o),
            n,
            e_ffo,
            e_ef,
            f_ef,
            e_sigma,
            supercuspidal: sc,
            distinction: Distinction::Distinguished,
        }
    }

    fn tags(d: &CuspidalDatum, ell: Option<u64>) -> Vec<String> {
        validate(d, ell).err().unwrap_or_default().into_iter().map(|v| v.tag).collect()
    }

    #[test]
    fn validation() {
        assert!(validate(&datum(3, 2, 2, 1, 1, 2, true), None).is_ok());
        let bad = tags(&datum(3, 2, 1, 1, 1, 2, true), None);
        assert!(bad.contains(&"RamifiedBase".to_string()));
        let msgs = validate(&datum(3, 2, 1, 1, 1, 2, true), None).unwrap_err();
        assert!(msgs.iter().any(|v| v.message.contains("F/F_o must be ramified")));
        let v = validate(&datum(3, 2, 1, 1, 1, 1, true), None).unwrap_err();
        assert!(v.iter().any(|v| v.tag == "SupercuspidalParity" && v.message.contains("m(pi) is odd")));
        assert_eq!(tags(&datum(3, 3, 2, 1, 1, 2, true), None), vec!["RamifiedParity", "CRASremark"]);
        let mut not_dist = datum(3, 3, 2, 1, 1, 2, true);
        not_dist.distinction = Distinction::NotDistinguishedUpToUnramifiedTwist;
        assert_eq!(tags(&not_dist, None), vec!["RamifiedParity"]);
        assert_eq!(tags(&datum(3, 2, 2, 1, 1, 1, false), None), vec!["TowerResidueDegree"]);
        assert_eq!(tags(&datum(4, 1, 1, 1, 1, 1, true), None), vec!["ResidueFieldOdd"]);
        assert_eq!(tags(&datum(3, 5, 1, 2, 1, 1, true), None), vec!["DegreeDivisibility"]);
        assert_eq!(tags(&datum(3, 1, 3, 1, 1, 1, true), None), vec!["ParameterRange"]);
        assert_eq!(tags(&datum(3, 3, 1, 1, 1, 1, true), Some(3)), vec!["EllCoprime"]);
        assert_eq!(tags(&datum(3, 3, 1, 1, 1, 1, true), Some(9)), vec!["EllPrime"]);
    }

    #[test]
    fn bad_parity_rejects_relatively_banal() {
        // e_sigma = 1, m = 2: N = 2, 3^2 = 9
        let d = datum(3, 2, 1, 1, 1, 1, false);
        assert!(validate(&d, None).is_ok());
        assert_eq!(tags(&d, Some(5)), vec!["BadParityNotBanal"]);
        assert!(validate(&d, Some(2)).is_ok());
        assert!(validate(&d, Some(7)).is_err());
        let mut ok = d.clone();
        ok.distinction = Distinction::NotDistinguishedUpToUnramifiedTwist;
        assert!(validate(&ok, Some(5)).is_ok());
    }

    #[test]
    fn e_o_examples() {
        assert_eq!(e_o(&datum(3, 2, 2, 1, 1, 2, true)).unwrap(), 2);
        assert_eq!(e_o(&datum(3, 3, 1, 1, 1, 1, true)).unwrap(), 1);
        assert_eq!(e_o(&datum(3, 4, 2, 1, 2, 1, false)).unwrap(), 2);
        assert_eq!(e_o(&datum(5, 2, 2, 2, 1, 2, true)).unwrap(), 2);
        assert!(matches!(e_o(&datum(3, 2, 1, 1, 1, 2, true)), Err(Error::Validation(_))));
    }

    #[test]
    fn q_eo_examples() {
        assert_eq!(q_eo(&datum(3, 2, 2, 1, 1, 2, true)).unwrap(), BigUint::from(3u32));
        assert_eq!(q_eo(&datum(3, 3, 1, 1, 1, 1, true)).unwrap(), BigUint::from(3u32));
        assert_eq!(q_eo(&datum(5, 1, 1, 1, 1, 1, true)).unwrap(), BigUint::from(5u32));
        assert_eq!(q_pow(&datum(3, 3, 1, 1, 1, 1, true)).unwrap(), BigUint::from(27u32));
        // unramified F/F_o, f(pi) = 3: q_Eo = q_o^3
        assert_eq!(q_eo(&datum(3, 3, 1, 1, 3, 1, true)).unwrap(), BigUint::from(27u32));
    }

    #[test]
    fn banality() {
        let d = datum(3, 3, 1, 1, 1, 1, true);
        assert!(is_relatively_banal(&d, 7).unwrap());
        assert!(!is_relatively_banal(&d, 13).unwrap());
        assert!(!is_relatively_banal(&d, 2).unwrap());
        assert!(!is_banal(&d, 7).unwrap());
        assert!(!is_banal(&d, 2).unwrap());
        assert!(is_banal(&datum(3, 2, 2, 1, 1, 2, true), 5).unwrap());
        let mut nd = d.clone();
        nd.distinction = Distinction::NotDistinguishedUpToUnramifiedTwist;
        assert_eq!(is_relatively_banal(&nd, 7), Err(Error::NotDistinguishedInput));
        assert_eq!(x_o_orders(&nd, None), Err(Error::NotDistinguishedInput));
    }

    #[test]
    fn x_o() {
        assert_eq!(x_o_orders_of(12, Some(3)), XoOrders { char0: 12, modell: 4, kernel: 3 });
        assert_eq!(x_o_orders_of(1, Some(5)), XoOrders { char0: 1, modell: 1, kernel: 1 });
        assert_eq!(x_o_orders_of(8, Some(2)), XoOrders { char0: 8, modell: 1, kernel: 8 });
        assert_eq!(x_o_orders_of(8, None), XoOrders { char0: 8, modell: 8, kernel: 1 });
        let d = datum(3, 3, 1, 1, 1, 1, true);
        assert_eq!(x_o_orders(&d, Some(3)), Err(Error::Validation(vec![Violation::new("EllCoprime", "ell = 3 divides q_o = 3")])));
    }

    #[test]
    fn finite_levels() {
        let (s, m) = finite_level(&datum(3, 3, 1, 1, 1, 1, true)).unwrap();
        assert_eq!((s, m), (FiniteSetting::galois_pair(3u32, 3).unwrap(), 3));
        let (s, m) = finite_level(&datum(3, 2, 2, 1, 1, 2, true)).unwrap();
        assert_eq!((s, m), (FiniteSetting::self_dual(3u32, 2).unwrap(), 2));
        let (s, m) = finite_level(&datum(5, 2, 2, 2, 1, 2, true)).unwrap();
        assert_eq!((s, m), (FiniteSetting::self_dual(5u32, 1).unwrap(), 1));
    }

    #[test]
    fn lifts_and_banality_agree() {
        let d = datum(3, 3, 1, 1, 1, 1, true);
        assert!(all_lifts_unramified_twist_distinguished(&d, 7).unwrap());
        assert!(!all_lifts_unramified_twist_distinguished(&d, 13).unwrap());
        assert!(!all_lifts_unramified_twist_distinguished(&d, 2).unwrap());
        assert!(all_lifts_unramified_twist_distinguished(&d, 5).unwrap());
    }

    #[test]
    fn invariant_report() {
        let r = invariants(&datum(3, 3, 1, 1, 1, 1, true), 7).unwrap();
        assert_eq!((r.e_o, r.n_big), (1, 3));
        assert!(r.relatively_banal && !r.banal);
        assert_eq!(r.x_o.char0, 3);
    }

    #[test]
    fn candidates_are_lexicographic() {
        let c = candidate_data(&BigUint::from(3u32), 4, true, &Distinction::Distinguished);
        let keys: Vec<_> = c.iter().map(|d| (d.e_ffo, d.e_ef, d.f_ef, d.e_sigma)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // divisor pairs of 4: (1,1),(1,2),(1,4),(2,1),(2,2),(4,1) times 2 x 2
        assert_eq!(c.len(), 24);
        assert_eq!(odd_prime_powers_up_to(27), vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27]);
    }
}
