//! Euler factors `1 / prod (1 - z X)^m` whose roots `z` are roots of unity,
//! in characteristic 0 or `ell`, and the Asai L-factor of a cuspidal datum.
//!
//! Roots of unity are taken in a compatible system `zeta_{ab}^a = zeta_b`.
//! In characteristic `ell` the system is the reduction of the
//! characteristic 0 one, so `zeta_{d ell^e}` reduces to `zeta_d^u` with
//! `u ell^e = 1 mod d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::{self, CuspidalDatum, Distinction};

/// `zeta_order^exponent`, stored with `gcd(order, exponent) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root of unity order must be at least 1".into()));
        }
        let k = exponent % order;
        let g = k.gcd(&order);
        Ok(RootOfUnity {
            order: order / g,
            exponent: k / g,
        })
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    /// `-1`.
    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, exponent: 1 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent of `self` as a power of `zeta_l`, for `order | l`.
    pub fn exponent_in(&self, l: u64) -> u64 {
        debug_assert_eq!(l % self.order, 0);
        self.exponent * (l / self.order)
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&other.order);
        let e = (self.exponent_in(l) as u128 + other.exponent_in(l) as u128) % l as u128;
        RootOfUnity::new(l, e as u64).expect("positive order")
    }

    pub fn pow(&self, k: u64) -> RootOfUnity {
        let e = (self.exponent as u128 * k as u128) % self.order as u128;
        RootOfUnity::new(self.order, e as u64).expect("positive order")
    }

    /// The image in characteristic `ell`: the prime-to-`ell` part.
    pub fn prime_to(&self, ell: u64) -> RootOfUnity {
        let (d_r, e) = arith::split_prime_part(self.order, ell);
        let u = arith::mod_inverse_u64(ell.pow(e) % d_r, d_r).expect("coprime");
        let k = (self.exponent as u128 * u as u128) % d_r as u128;
        RootOfUnity::new(d_r, k as u64).expect("positive order")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({},{})", self.order, self.exponent)
    }
}

fn check_characteristic(ch: u64) -> Result<()> {
    if ch == 0 || arith::is_prime_u64(ch) {
        Ok(())
    } else {
        Err(Error::NotPrime(ch))
    }
}

/// `1 / prod (1 - z X)^{m_z}` over a finite multiset of roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactor {
    characteristic: u64,
    roots: BTreeMap<RootOfUnity, u64>,
}

impl EulerFactor {
    pub fn unit(characteristic: u64) -> Result<Self> {
        check_characteristic(characteristic)?;
        Ok(EulerFactor {
            characteristic,
            roots: BTreeMap::new(),
        })
    }

    /// Builds a factor from `(root, multiplicity)` pairs, merging repeats.
    pub fn from_roots(characteristic: u64, roots: impl IntoIterator<Item = (RootOfUnity, u64)>) -> Result<Self> {
        let mut f = EulerFactor::unit(characteristic)?;
        for (z, m) in roots {
            if characteristic != 0 && z.order % characteristic == 0 {
                return Err(Error::BadCharacteristic {
                    order: z.order,
                    ell: characteristic,
                });
            }
            if m > 0 {
                *f.roots.entry(z).or_insert(0) += m;
            }
        }
        Ok(f)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Roots in ascending `(order, exponent)` order with multiplicities.
    pub fn roots(&self) -> impl Iterator<Item = (&RootOfUnity, u64)> {
        self.roots.iter().map(|(z, &m)| (z, m))
    }

    pub fn is_unit(&self) -> bool {
        self.roots.is_empty()
    }

    /// Degree of the inverse polynomial.
    pub fn degree(&self) -> u64 {
        self.roots.values().sum()
    }

    pub fn multiplicity(&self, z: &RootOfUnity) -> u64 {
        self.roots.get(z).copied().unwrap_or(0)
    }

    /// Order of the pole at `X = 1`.
    pub fn pole_order_at_one(&self) -> u64 {
        self.multiplicity(&RootOfUnity::one())
    }

    /// The factor with every root multiplied by `c` (`X` replaced by `c X`).
    pub fn twist(&self, c: &RootOfUnity) -> Result<Self> {
        EulerFactor::from_roots(self.characteristic, self.roots.iter().map(|(z, &m)| (z.mul(c), m)))
    }

    /// Coefficientwise reduction of a characteristic 0 factor.
    pub fn reduce_mod_ell(&self, ell: u64) -> Result<Self> {
        if self.characteristic != 0 {
            return Err(Error::CharacteristicMismatch(self.characteristic, 0));
        }
        if !arith::is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        EulerFactor::from_roots(ell, self.roots.iter().map(|(z, &m)| (z.prime_to(ell), m)))
    }

    /// `self | other` in the sense that the inverse polynomial of `self`
    /// divides that of `other`.
    pub fn divides(&self, other: &EulerFactor) -> Result<bool> {
        if self.characteristic != other.characteristic {
            return Err(Error::CharacteristicMismatch(self.characteristic, other.characteristic));
        }
        Ok(self.roots.iter().all(|(z, &m)| m <= other.multiplicity(z)))
    }

    /// `Some((c, d, m))` when the roots form one coset `{z : z^d = c}` with
    /// uniform multiplicity `m`, so the factor is `1/(1 - c X^d)^m`.
    pub fn as_binomial_power(&self) -> Option<(RootOfUnity, u64, u64)> {
        let (first, &m) = self.roots.iter().next()?;
        if self.roots.values().any(|&x| x != m) {
            return None;
        }
        let d = self.roots.len() as u64;
        let zeta_d = RootOfUnity::new(d, 1).ok()?;
        let mut z = *first;
        for _ in 0..d {
            if !self.roots.contains_key(&z) {
                return None;
            }
            z = z.mul(&zeta_d);
        }
        Some((first.pow(d), d, m))
    }

    /// `1/(1 - zeta(d,k) X)^m * ...`, or `1` for the unit factor.
    pub fn render_roots(&self) -> String {
        if self.is_unit() {
            return "1".into();
        }
        self.roots
            .iter()
            .map(|(z, &m)| format!("1/(1 - {z} X){}", power_suffix(m)))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// `1/(1 - X^d)^m` style when the factor is a binomial power, otherwise
    /// the root form.
    pub fn render(&self) -> String {
        match self.as_binomial_power() {
            Some((c, d, m)) => {
                let x = if d == 1 { "X".to_string() } else { format!("X^{d}") };
                let coeff = if c.is_one() { String::new() } else { format!("{c} ") };
                format!("1/(1 - {coeff}{x}){}", power_suffix(m))
            }
            None => self.render_roots(),
        }
    }
}

fn power_suffix(m: u64) -> String {
    if m == 1 {
        String::new()
    } else {
        format!("^{m}")
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Canonical root multiset of `1/(1 - (c X)^N)` in characteristic `ch`.
pub fn expand(c: &RootOfUnity, big_n: u64, ch: u64) -> Result<EulerFactor> {
    check_characteristic(ch)?;
    if big_n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if ch != 0 && c.order.is_multiple_of(ch) {
        return Err(Error::BadCharacteristic { order: c.order, ell: ch });
    }
    let (n_r, mult) = if ch == 0 {
        (big_n, 1)
    } else {
        let (n_r, e) = arith::split_prime_part(big_n, ch);
        (n_r, ch.pow(e))
    };
    let roots = (0..n_r).map(|j| (c.mul(&RootOfUnity::new(n_r, j).expect("n_r >= 1")), mult));
    let f = EulerFactor::from_roots(ch, roots)?;
    debug_assert_eq!(f.degree(), big_n);
    Ok(f)
}

/// `L_As(X, pi)` over `Qbar_ell` (`ell = 0`) or `Fbar_ell`.
pub fn asai_l_factor(d: &CuspidalDatum, ell: u64) -> Result<EulerFactor> {
    check_characteristic(ell)?;
    padic::validate(d, (ell != 0).then_some(ell)).map_err(Error::Validation)?;
    let Some(c) = d.distinction.twist() else {
        return EulerFactor::unit(ell);
    };
    let big_n = padic::big_n(d)? as u64;
    if ell == 0 {
        return expand(&c, big_n, 0);
    }
    let mut underlying = d.clone();
    underlying.distinction = Distinction::Distinguished;
    if padic::is_relatively_banal(&underlying, ell)? {
        expand(&c.prime_to(ell), big_n, ell)
    } else {
        EulerFactor::unit(ell)
    }
}

/// Non-vanishing of the `G_o`-period modulo `ell`, read off
/// `(q_o - 1)(q_o^N - 1) (1 - X^n)/(1 - X^N)` at `X = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub nonzero: bool,
    pub numerator_zero_order: u64,
    pub denominator_zero_order: u64,
    pub scalar_vanishes: bool,
    /// `val_ell(q_o - 1)`, reported but not used in the decision.
    pub q_o_minus_one_valuation: u32,
}

pub fn period_report(d: &CuspidalDatum, ell: u64) -> Result<PeriodReport> {
    if !d.distinction.is_distinguished_up_to_twist() {
        return Err(Error::NotDistinguishedInput);
    }
    let e_o = padic::e_o(d)?;
    let rel_banal = padic::is_relatively_banal(d, ell)?;
    let report = period_from_invariants(&d.q_o, d.n as u64, e_o as u64, ell)?;
    assert_eq!(
        report.nonzero,
        rel_banal && !(e_o as u64).is_multiple_of(ell),
        "period orders disagree with relative banality for {d}, ell = {ell}"
    );
    Ok(report)
}

/// The same computation from `q_o`, `n`, `e_o` directly.
pub fn period_from_invariants(q_o: &BigUint, n: u64, e_o: u64, ell: u64) -> Result<PeriodReport> {
    if !arith::is_prime_u64(ell) {
        return Err(Error::NotPrime(ell));
    }
    if (q_o % ell).is_zero() {
        return Err(Error::EllDividesQ { ell });
    }
    if e_o == 0 || !n.is_multiple_of(e_o) {
        return Err(Error::InvalidArgument(format!("e_o = {e_o} must divide n = {n}")));
    }
    let big_n = n / e_o;
    let one = RootOfUnity::one();
    let numerator_zero_order = expand(&one, n, ell)?.pole_order_at_one();
    let denominator_zero_order = expand(&one, big_n, ell)?.pole_order_at_one();
    let q = (q_o % ell).to_u64().expect("residue below ell");
    let scalar_vanishes = arith::pow_mod_u64(q, big_n, ell) == 1 % ell;
    let q_o_minus_one = q_o - 1u32;
    Ok(PeriodReport {
        nonzero: !scalar_vanishes && numerator_zero_order == denominator_zero_order,
        numerator_zero_order,
        denominator_zero_order,
        scalar_vanishes,
        q_o_minus_one_valuation: if q_o_minus_one.is_zero() { 0 } else { arith::valuation(&q_o_minus_one, ell) },
    })
}
