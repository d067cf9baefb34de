//! Characters of `l^x = F_{q^n}^x` as residues modulo `M = q^n - 1`.
//!
//! The character group of `l^x` is cyclic of order `M`; once a generator is
//! fixed, a character is just an index `a` in `Z/M`, the Frobenius acts by
//! multiplication by `q`, inversion is negation and products are sums. No
//! generator is ever materialized: everything here is a statement about
//! orders, orbits and subgroup membership, which does not depend on it.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Default bound on `M` for operations that enumerate characters.
pub const DEFAULT_MAX_MODULUS: u64 = 1 << 22;

/// Which duality the setting studies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DualityKind {
    /// `k/k_o` quadratic with `|k_o| = q_o`; duality is `rho^sigma ~ rho^dual`.
    GaloisPair { q_o: BigUint },
    /// Plain self-duality `rho ~ rho^dual`.
    SelfDual,
}

/// A finite-level character universe: `k = F_q`, `l/k` of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSetting {
    q_base: BigUint,
    n: u32,
    kind: DualityKind,
    modulus: BigUint,
    frob_mult: BigUint,
    dual_mult: Option<BigUint>,
    // Any element of the coset of Gal(l/k) inside Gal(l/k_o) that implements
    // the duality. Equal to `q_o` (GaloisPair) or `1` (SelfDual).
    twist_mult: Option<BigUint>,
}

impl fmt::Display for FiniteSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DualityKind::GaloisPair { q_o } => write!(f, "GaloisPair(q_o={q_o}, n={})", self.n),
            DualityKind::SelfDual => write!(f, "SelfDual(q={}, n={})", self.q_base, self.n),
        }
    }
}

impl FiniteSetting {
    /// Setting for `sigma`-self-duality with `|k| = q_o^2`.
    pub fn galois_pair(q_o: impl Into<BigUint>, n: u32) -> Result<Self> {
        let q_o = q_o.into();
        check_odd_prime_power(&q_o)?;
        let q_base = &q_o * &q_o;
        Self::build(q_base, n, DualityKind::GaloisPair { q_o })
    }

    /// Setting for self-duality over `|k| = q`.
    pub fn self_dual(q: impl Into<BigUint>, n: u32) -> Result<Self> {
        let q = q.into();
        check_odd_prime_power(&q)?;
        Self::build(q, n, DualityKind::SelfDual)
    }

    fn build(q_base: BigUint, n: u32, kind: DualityKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSetting("degree n must be at least 1".into()));
        }
        let modulus = q_base.pow(n) - 1u32;
        let frob_mult = &q_base % &modulus;
        let (dual_mult, twist_mult) = match &kind {
            DualityKind::GaloisPair { q_o } => {
                (Some(q_o.pow(n) % &modulus), Some(q_o % &modulus))
            }
            DualityKind::SelfDual if n == 1 => {
                // sigma' is the identity on l = k; self-dual means a = -a.
                (Some(BigUint::one() % &modulus), Some(BigUint::one()))
            }
            DualityKind::SelfDual if n.is_multiple_of(2) => {
                (Some(q_base.pow(n / 2) % &modulus), Some(BigUint::one()))
            }
            DualityKind::SelfDual => (None, None),
        };
        let s = FiniteSetting {
            q_base,
            n,
            kind,
            modulus,
            frob_mult,
            dual_mult,
            twist_mult,
        };
        debug_assert!(s.frob_mult.modpow(&BigUint::from(s.n), &s.modulus) == BigUint::one() % &s.modulus);
        if let Some(d) = &s.dual_mult {
            debug_assert!((d * d) % &s.modulus == BigUint::one() % &s.modulus);
        }
        Ok(s)
    }

    pub fn q_base(&self) -> &BigUint {
        &self.q_base
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> &DualityKind {
        &self.kind
    }

    pub fn is_galois_pair(&self) -> bool {
        matches!(self.kind, DualityKind::GaloisPair { .. })
    }

    /// `M = q^n - 1`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn frob_mult(&self) -> &BigUint {
        &self.frob_mult
    }

    /// The involution on indices, if defined.
    pub fn dual_mult(&self) -> Option<&BigUint> {
        self.dual_mult.as_ref()
    }

    /// The exact integer `q_o^n`, `q^{n/2}` (or `1` when `n = 1`) whose
    /// `-1` / `+1` factors split `M`.
    pub fn dual_mult_lift(&self) -> Option<BigUint> {
        match &self.kind {
            DualityKind::GaloisPair { q_o } => Some(q_o.pow(self.n)),
            DualityKind::SelfDual if self.n == 1 => Some(BigUint::one()),
            DualityKind::SelfDual if self.n.is_multiple_of(2) => Some(self.q_base.pow(self.n / 2)),
            DualityKind::SelfDual => None,
        }
    }

    fn require_dual(&self) -> Result<(&BigUint, &BigUint)> {
        match (&self.dual_mult, &self.twist_mult) {
            (Some(d), Some(t)) => Ok((d, t)),
            _ => Err(Error::DualityUndefined(self.n)),
        }
    }

    /// `M` as a machine integer if it is within `bound`.
    pub fn modulus_within(&self, bound: u64) -> Result<u64> {
        match self.modulus.to_u64() {
            Some(m) if m <= bound => Ok(m),
            _ => Err(Error::ModulusTooLarge {
                modulus: self.modulus.clone(),
                bound,
            }),
        }
    }

    pub fn index(&self, a: impl Into<BigUint>) -> CharIndex {
        CharIndex(a.into() % &self.modulus)
    }

    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.modulus - a
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    /// `{a q^k mod M : 0 <= k < n}`, ascending.
    pub fn frobenius_orbit(&self, a: &CharIndex) -> Vec<CharIndex> {
        let mut seen = BTreeSet::new();
        let mut x = a.0.clone();
        for _ in 0..self.n {
            x = self.mul(&x, &self.frob_mult);
            seen.insert(x.clone());
        }
        seen.into_iter().map(CharIndex).collect()
    }

    /// Size of the Frobenius orbit of `a`.
    pub fn orbit_size(&self, a: &CharIndex) -> u32 {
        let mut x = self.mul(&a.0, &self.frob_mult);
        let mut k = 1;
        while x != a.0 {
            x = self.mul(&x, &self.frob_mult);
            k += 1;
        }
        k
    }

    /// Least index of the orbit of `a`.
    pub fn orbit_min(&self, a: &CharIndex) -> CharIndex {
        let mut best = a.0.clone();
        let mut x = self.mul(&a.0, &self.frob_mult);
        while x != a.0 {
            if x < best {
                best = x.clone();
            }
            x = self.mul(&x, &self.frob_mult);
        }
        CharIndex(best)
    }

    /// `a` is `k`-regular: its Frobenius orbit has size `n`.
    pub fn is_regular(&self, a: &CharIndex) -> bool {
        self.orbit_size(a) == self.n
    }

    /// Whether `rho(theta_a)` is `sigma`-self-dual (resp. self-dual), i.e.
    /// `-a` lies in `twist * orbit(a)`.
    pub fn is_dual_selfdual_adic(&self, a: &CharIndex) -> Result<bool> {
        let (dual, twist) = self.require_dual()?;
        let general = self.twisted_orbit_contains_neg(twist, &a.0);
        if self.is_galois_pair() && self.n % 2 == 1 && self.is_regular(a) {
            let closed = self.mul(&(dual + 1u32), &a.0).is_zero();
            assert_eq!(general, closed, "Gamma^- criterion disagrees with orbit test at {a}");
        }
        Ok(general)
    }

    fn twisted_orbit_contains_neg(&self, twist: &BigUint, a: &BigUint) -> bool {
        let target = self.neg(a);
        let mut x = self.mul(twist, a);
        for _ in 0..self.n {
            if x == target {
                return true;
            }
            x = self.mul(&x, &self.frob_mult);
        }
        false
    }

    /// Duality of the reduction mod `ell` of `rho(theta_a)`: a test on `a_r`.
    pub fn is_dual_selfdual_modell(&self, ctx: &EllContext, a: &CharIndex) -> Result<bool> {
        let (dual, twist) = self.require_dual()?;
        let (a_r, _) = self.ell_decompose(ctx, a);
        let general = self.twisted_orbit_contains_neg(twist, &a_r.0);
        if self.is_galois_pair() && self.n % 2 == 1 && ctx.ell % 2 == 1 {
            let closed = self.mul(&(dual + 1u32), &a_r.0).is_zero();
            assert_eq!(general, closed, "theta_r criterion disagrees with orbit test at {a}");
            return Ok(closed);
        }
        Ok(general)
    }

    /// `theta = theta_r theta_s`: `a_r = a e_r`, `a_s = a e_s`.
    pub fn ell_decompose(&self, ctx: &EllContext, a: &CharIndex) -> (CharIndex, CharIndex) {
        (
            CharIndex(self.mul(&a.0, &ctx.idem_r)),
            CharIndex(self.mul(&a.0, &ctx.idem_s)),
        )
    }

    pub fn subgroup_membership(&self, ctx: &EllContext, a: &CharIndex) -> Result<Membership> {
        let (dual, _) = self.require_dual()?;
        let m = &self.modulus;
        let minus_one = if dual.is_zero() { m - 1u32 } else { dual - 1u32 };
        Ok(Membership {
            in_plus: self.mul(&minus_one, &a.0).is_zero(),
            in_minus: self.mul(&(dual + 1u32), &a.0).is_zero(),
            in_s: self.mul(&ctx.ell_pow, &a.0).is_zero(),
            in_r: self.mul(&ctx.m_r, &a.0).is_zero(),
        })
    }

    /// The unique character of order two, `M/2`.
    pub fn quadratic_character(&self) -> CharIndex {
        CharIndex(&self.modulus >> 1)
    }

    pub fn classify_case(&self, ctx: &EllContext) -> Result<CaseTag> {
        if ctx.ell == 2 {
            return Ok(CaseTag::EllTwo);
        }
        if ctx.v == 0 {
            return Ok(CaseTag::Coprime);
        }
        let lift = self.dual_mult_lift().ok_or(Error::DualityUndefined(self.n))?;
        let ell = BigUint::from(ctx.ell);
        if ((&lift + &ell - 1u32) % &ell).is_zero() {
            Ok(CaseTag::PlusCase)
        } else if ((&lift + 1u32) % &ell).is_zero() {
            Ok(CaseTag::MinusCase)
        } else {
            Err(Error::InvalidSetting(format!(
                "ell = {} divides M but neither dual factor",
                ctx.ell
            )))
        }
    }

    /// Supercuspidal lifts of the reduction of `rho(theta_a)`, one per
    /// isomorphism class, with how many of them are dual-self-dual.
    pub fn enumerate_lifts(&self, ctx: &EllContext, a: &CharIndex) -> Result<LiftClass> {
        self.enumerate_lifts_bounded(ctx, a, DEFAULT_MAX_MODULUS)
    }

    pub fn enumerate_lifts_bounded(&self, ctx: &EllContext, a: &CharIndex, bound: u64) -> Result<LiftClass> {
        self.modulus_within(bound)?;
        if !self.is_regular(a) {
            return Err(Error::NonRegularInput(a.0.clone()));
        }
        let (a_r, _) = self.ell_decompose(ctx, a);
        // Gamma_s is generated by M_r.
        let mut reps = BTreeSet::new();
        let mut x = a_r.0.clone();
        let lifts = ctx.ell_pow.to_u64().expect("ell^v fits below the bound");
        for _ in 0..lifts {
            let cand = CharIndex(x.clone());
            if self.is_regular(&cand) {
                reps.insert(self.orbit_min(&cand));
            }
            x = (x + &ctx.m_r) % &self.modulus;
        }
        let mut dual_count = 0;
        for r in &reps {
            if self.is_dual_selfdual_adic(r)? {
                dual_count += 1;
            }
        }
        Ok(LiftClass {
            total: reps.len() as u64,
            representatives: reps.into_iter().collect(),
            dual_count,
            case_tag: self.classify_case(ctx)?,
        })
    }

    /// Number of dual-self-dual supercuspidal lifts predicted by the
    /// case analysis, without enumerating lifts where a formula exists.
    pub fn closed_form_dual_lift_count(
        &self,
        ctx: &EllContext,
        a: &CharIndex,
        supercuspidal_reduction: bool,
    ) -> Result<ClosedFormCount> {
        if !self.is_regular(a) {
            return Err(Error::NonRegularInput(a.0.clone()));
        }
        if !self.is_dual_selfdual_modell(ctx, a)? {
            return Err(Error::DualityViolation(a.0.clone()));
        }
        let (a_r, _) = self.ell_decompose(ctx, a);
        if self.is_regular(&a_r) != supercuspidal_reduction {
            return Err(Error::InvalidArgument(format!(
                "supercuspidal_reduction = {supercuspidal_reduction} but theta_r regularity is {}",
                !supercuspidal_reduction
            )));
        }
        let exact = |count: BigUint| ClosedFormCount {
            count,
            conditional_on_distinction: false,
        };
        if self.is_galois_pair() && self.n.is_multiple_of(2) {
            // no sigma-self-dual supercuspidal representation exists at all
            return Ok(exact(BigUint::zero()));
        }
        let tag = self.classify_case(ctx)?;
        Ok(match tag {
            CaseTag::Coprime => exact(BigUint::one()),
            CaseTag::PlusCase => exact(BigUint::from(supercuspidal_reduction as u8)),
            CaseTag::MinusCase => {
                let (dual, _) = self.require_dual()?;
                let a_r_in_minus = self.mul(&(dual + 1u32), &a_r.0).is_zero();
                let count = if !a_r_in_minus {
                    BigUint::zero()
                } else if supercuspidal_reduction {
                    ctx.ell_pow.clone()
                } else {
                    // every lift is dual-self-dual; count them
                    BigUint::from(self.enumerate_lifts(ctx, a)?.total)
                };
                ClosedFormCount {
                    count,
                    conditional_on_distinction: !self.is_galois_pair() && !supercuspidal_reduction,
                }
            }
            CaseTag::EllTwo => {
                let lifts = self.enumerate_lifts(ctx, a)?;
                if self.is_galois_pair() || self.n >= 2 {
                    debug_assert!(lifts.dual_count < lifts.total);
                }
                exact(BigUint::from(lifts.dual_count))
            }
        })
    }
}

fn check_odd_prime_power(q: &BigUint) -> Result<()> {
    match arith::prime_power(q) {
        Some((p, _)) if p.is_odd() => Ok(()),
        _ => Err(Error::InvalidSetting(format!("{q} is not an odd prime power"))),
    }
}

/// Index of a character of `l^x` with respect to a fixed generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharIndex(BigUint);

impl CharIndex {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CharIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// CRT data splitting `Z/M = Z/M_r x Z/ell^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllContext {
    ell: u64,
    v: u32,
    ell_pow: BigUint,
    m_r: BigUint,
    idem_r: BigUint,
    idem_s: BigUint,
}

impl EllContext {
    pub fn new(s: &FiniteSetting, ell: u64) -> Result<Self> {
        if !arith::is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        if (s.q_base() % ell).is_zero() {
            return Err(Error::EllDividesQ { ell });
        }
        let m = s.modulus();
        let v = arith::valuation(m, ell);
        let ell_pow = BigUint::from(ell).pow(v);
        let m_r = m / &ell_pow;
        // e_r = 1 mod M_r, 0 mod ell^v
        let idem_r = if m_r.is_one() {
            BigUint::zero()
        } else {
            let inv = (&ell_pow % &m_r)
                .modinv(&m_r)
                .expect("ell^v is invertible modulo M_r");
            (&ell_pow * inv) % m
        };
        let idem_s = (m + 1u32 - &idem_r) % m;
        debug_assert!(((&idem_r * &idem_s) % m).is_zero());
        Ok(EllContext {
            ell,
            v,
            ell_pow,
            m_r,
            idem_r,
            idem_s,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// `ell`-adic valuation of `M`.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// `ell^v = |Gamma_s|`.
    pub fn ell_pow(&self) -> &BigUint {
        &self.ell_pow
    }

    /// `M_r = |Gamma_r|`.
    pub fn m_r(&self) -> &BigUint {
        &self.m_r
    }

    pub fn idem_r(&self) -> &BigUint {
        &self.idem_r
    }

    pub fn idem_s(&self) -> &BigUint {
        &self.idem_s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_plus: bool,
    pub in_minus: bool,
    pub in_s: bool,
    pub in_r: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    /// `ell` does not divide `M`.
    Coprime,
    /// Odd `ell` dividing `q_o^n - 1` (resp. `q^{n/2} - 1`).
    PlusCase,
    /// Odd `ell` dividing `q_o^n + 1` (resp. `q^{n/2} + 1`).
    MinusCase,
    EllTwo,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Coprime => "Coprime",
            CaseTag::PlusCase => "PlusCase",
            CaseTag::MinusCase => "MinusCase",
            CaseTag::EllTwo => "EllTwo",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftClass {
    /// Least index of each Frobenius orbit, ascending.
    pub representatives: Vec<CharIndex>,
    pub total: u64,
    pub dual_count: u64,
    pub case_tag: CaseTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCount {
    pub count: BigUint,
    /// Set when the count assumes the reduction is distinguished by the
    /// split Levi `GL_m x GL_m` (self-dual, non-supercuspidal, minus case).
    pub conditional_on_distinction: bool,
}
