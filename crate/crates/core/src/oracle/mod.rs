//! Brute-force cross-checks of [`crate::charlattice`] and [`crate::lfactor`].
//!
//! Everything here is recomputed from scratch on machine integers: orbits
//! are explicit sets, duality is equality of orbit sets, the `ell`-splitting
//! idempotent is found by search, subgroup membership by element orders,
//! and Euler factors by multiplying out polynomials. The library is only
//! called to obtain the value being checked.

pub mod dense;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::charlattice::{DualityKind, EllContext, FiniteSetting, DEFAULT_MAX_MODULUS};
use crate::error::{Error, Result};
use crate::lfactor::{self, EulerFactor, RootOfUnity};

use dense::{Cyclo, CycloCache};

/// A setting named by its parameters, for configuration and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SettingSpec {
    GaloisPair { q_o: u64, n: u32 },
    SelfDual { q: u64, n: u32 },
}

impl SettingSpec {
    pub fn build(&self) -> Result<FiniteSetting> {
        match *self {
            SettingSpec::GaloisPair { q_o, n } => FiniteSetting::galois_pair(q_o, n),
            SettingSpec::SelfDual { q, n } => FiniteSetting::self_dual(q, n),
        }
    }
}

impl fmt::Display for SettingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SettingSpec::GaloisPair { q_o, n } => write!(f, "GaloisPair(q_o={q_o}, n={n})"),
            SettingSpec::SelfDual { q, n } => write!(f, "SelfDual(q={q}, n={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_modulus: u64,
    pub parallel: bool,
    pub galois_q_o: Vec<u64>,
    pub galois_n: Vec<u32>,
    pub self_dual_q: Vec<u64>,
    pub self_dual_n: Vec<u32>,
    pub ell_bound: u64,
    /// Settings scanned for parity even though the degree is forbidden.
    pub parity_scans: Vec<SettingSpec>,
    pub euler_bound: u64,
    pub euler_ells: Vec<u64>,
    /// Perturbs one value under test so the suite must fail.
    pub inject_fault: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_modulus: DEFAULT_MAX_MODULUS,
            parallel: false,
            galois_q_o: vec![3, 5, 7, 9],
            galois_n: vec![1, 3, 5],
            self_dual_q: vec![3, 5, 9],
            self_dual_n: vec![1, 2, 4],
            ell_bound: 31,
            parity_scans: vec![
                SettingSpec::GaloisPair { q_o: 3, n: 2 },
                SettingSpec::GaloisPair { q_o: 9, n: 2 },
                SettingSpec::GaloisPair { q_o: 3, n: 4 },
                SettingSpec::SelfDual { q: 3, n: 3 },
                SettingSpec::SelfDual { q: 5, n: 3 },
            ],
            euler_bound: 24,
            euler_ells: vec![2, 3, 5, 7, 13],
            inject_fault: false,
        }
    }
}

impl OracleConfig {
    pub fn settings(&self) -> Vec<SettingSpec> {
        let mut out = Vec::new();
        for &q_o in &self.galois_q_o {
            for &n in &self.galois_n {
                out.push(SettingSpec::GaloisPair { q_o, n });
            }
        }
        for &q in &self.self_dual_q {
            for &n in &self.self_dual_n {
                out.push(SettingSpec::SelfDual { q, n });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub tag: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub checked: u64,
    pub skipped: u64,
    /// Regular dual-self-dual indices seen by parity scans.
    pub witnesses: u64,
    pub failures: Vec<Failure>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.witnesses += other.witnesses;
        self.failures.extend(other.failures);
    }

    fn skipped_one() -> Self {
        OracleReport {
            skipped: 1,
            ..Default::default()
        }
    }

    fn check<T: PartialEq + fmt::Debug>(&mut self, tag: &str, input: impl FnOnce() -> String, expected: T, actual: T) {
        self.checked += 1;
        if expected != actual {
            self.failures.push(Failure {
                input: input(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
                tag: tag.to_string(),
            });
        }
    }
}

/// The character lattice of a setting on machine integers.
struct Brute {
    m: u64,
    q: u64,
    n: u32,
    twist: u64,
    involution: Option<u64>,
    involution_lift: Option<u64>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Brute {
    fn new(s: &FiniteSetting, bound: u64) -> Option<Brute> {
        let q_base = s.q_base().to_u64()?;
        let n = s.n();
        let m = q_base.checked_pow(n)?.checked_sub(1)?;
        if m > bound {
            return None;
        }
        let (twist, lift) = match s.kind() {
            DualityKind::GaloisPair { q_o } => {
                let q_o = q_o.to_u64()?;
                (q_o % m, Some(q_o.checked_pow(n)?))
            }
            DualityKind::SelfDual if n == 1 => (1 % m, Some(1)),
            DualityKind::SelfDual if n.is_multiple_of(2) => (1 % m, Some(q_base.checked_pow(n / 2)?)),
            DualityKind::SelfDual => (1 % m, None),
        };
        Some(Brute {
            m,
            q: q_base % m,
            n,
            twist,
            involution: lift.map(|l| l % m),
            involution_lift: lift,
        })
    }

    fn orbit(&self, a: u64) -> Vec<u64> {
        let mut set = BTreeSet::new();
        let mut x = a;
        for _ in 0..self.n {
            set.insert(x);
            x = mulmod(x, self.q, self.m);
        }
        set.into_iter().collect()
    }

    fn regular(&self, a: u64) -> bool {
        self.orbit(a).len() == self.n as usize
    }

    fn neg(&self, a: u64) -> u64 {
        (self.m - a) % self.m
    }

    fn dual(&self, a: u64) -> bool {
        self.orbit(mulmod(self.twist, a, self.m)) == self.orbit(self.neg(a))
    }

    fn order(&self, a: u64) -> u64 {
        self.m / a.gcd(&self.m)
    }

    /// `(ell^v, M_r, e_r)` with `e_r` found by search.
    fn split(&self, ell: u64) -> (u64, u64, u64) {
        let (m_r, v) = arith::split_prime_part(self.m, ell);
        let lp = ell.pow(v);
        let e_r = if m_r == 1 {
            0
        } else {
            (0..m_r)
                .map(|j| (j * lp) % self.m)
                .find(|&k| k % m_r == 1)
                .expect("CRT idempotent exists")
        };
        (lp, m_r, e_r)
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn parity_forbids(s: &FiniteSetting) -> bool {
    match s.kind() {
        DualityKind::GaloisPair { .. } => s.n().is_multiple_of(2),
        DualityKind::SelfDual => s.n() % 2 == 1 && s.n() > 1,
    }
}

fn ranges(m: u64, parallel: bool) -> Vec<(u64, u64)> {
    let blocks = if parallel { 64 } else { 1 };
    let size = m.div_ceil(blocks).max(1);
    (0..m).step_by(size as usize).map(|lo| (lo, (lo + size).min(m))).collect()
}

fn map_blocks<F>(m: u64, parallel: bool, f: F) -> OracleReport
where
    F: Fn(u64, u64) -> OracleReport + Sync,
{
    let blocks = ranges(m, parallel);
    let parts: Vec<OracleReport> = if parallel {
        blocks.par_iter().map(|&(lo, hi)| f(lo, hi)).collect()
    } else {
        blocks.iter().map(|&(lo, hi)| f(lo, hi)).collect()
    };
    let mut out = OracleReport::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Exhaustive scan for regular dual-self-dual indices.
pub fn verify_parity(s: &FiniteSetting, cfg: &OracleConfig) -> Result<OracleReport> {
    let b = Brute::new(s, cfg.max_modulus).ok_or_else(|| too_large(s, cfg))?;
    let forbids = parity_forbids(s);
    Ok(map_blocks(b.m, cfg.parallel, |lo, hi| {
        let mut r = OracleReport::default();
        for a in lo..hi {
            let dual = b.dual(a);
            let regular = b.regular(a);
            if let Ok(claimed) = s.is_dual_selfdual_adic(&s.index(a)) {
                r.check("duality-test", || format!("{s} a={a}"), dual, claimed);
            }
            r.check("regularity", || format!("{s} a={a}"), regular, s.is_regular(&s.index(a)));
            if regular && dual {
                r.witnesses += 1;
                if forbids {
                    r.check("parity", || format!("{s} a={a}"), false, true);
                }
            }
        }
        r
    }))
}

fn too_large(s: &FiniteSetting, cfg: &OracleConfig) -> Error {
    Error::ModulusTooLarge {
        modulus: s.modulus().clone(),
        bound: cfg.max_modulus,
    }
}

/// Lift counts of every qualifying orbit against the closed forms.
pub fn verify_lift_counts(s: &FiniteSetting, ell: u64, cfg: &OracleConfig) -> Result<OracleReport> {
    let b = Brute::new(s, cfg.max_modulus).ok_or_else(|| too_large(s, cfg))?;
    if b.involution.is_none() {
        return Ok(OracleReport::skipped_one());
    }
    let ctx = EllContext::new(s, ell)?;
    let (lp, m_r, e_r) = b.split(ell);
    let fault = std::sync::atomic::AtomicBool::new(cfg.inject_fault);
    let exempt_strictness = !s.is_galois_pair() && s.n() == 1;
    Ok(map_blocks(b.m, cfg.parallel, |lo, hi| {
        let mut r = OracleReport::default();
        for a in lo..hi {
            let a_r = mulmod(a, e_r, b.m);
            let (got_r, got_s) = s.ell_decompose(&ctx, &s.index(a));
            r.check(
                "ell-decomposition",
                || format!("{s} ell={ell} a={a}"),
                (big(a_r), big((a + b.m - a_r) % b.m)),
                (got_r.value().clone(), got_s.value().clone()),
            );
            let dual_r = b.dual(a_r);
            r.check(
                "mod-ell-duality",
                || format!("{s} ell={ell} a={a}"),
                Ok(dual_r),
                s.is_dual_selfdual_modell(&ctx, &s.index(a)),
            );
            let orbit = b.orbit(a);
            if orbit[0] != a || orbit.len() != b.n as usize || !dual_r {
                continue;
            }
            let mut reps = BTreeSet::new();
            for j in 0..lp {
                let lift = (a_r + j * m_r) % b.m;
                let o = b.orbit(lift);
                if o.len() == b.n as usize {
                    reps.insert(o[0]);
                }
            }
            let total = reps.len() as u64;
            let dual_count = reps.iter().filter(|&&x| b.dual(x)).count() as u64;
            let input = || format!("{s} ell={ell} a={a}");
            let lc = s.enumerate_lifts_bounded(&ctx, &s.index(a), cfg.max_modulus);
            r.check(
                "lift-enumeration",
                input,
                Ok((total, dual_count, reps.iter().map(|&x| big(x)).collect::<Vec<_>>())),
                lc.map(|l| (l.total, l.dual_count, l.representatives.iter().map(|c| c.value().clone()).collect())),
            );
            let sc = b.regular(a_r);
            let closed = s
                .closed_form_dual_lift_count(&ctx, &s.index(a), sc)
                .map(|c| c.count)
                .map(|c| {
                    if fault.swap(false, std::sync::atomic::Ordering::Relaxed) {
                        c + 1u32
                    } else {
                        c
                    }
                });
            r.check("closed-form-lift-count", input, Ok(big(dual_count)), closed);
            if ell == 2 && !exempt_strictness {
                r.check("ell-two-non-dual-lift", input, true, dual_count < total);
            }
        }
        r
    }))
}

/// `Gamma^+`, `Gamma^-`, `Gamma_s`, `Gamma_r` by brute force.
pub fn verify_subgroup_lattice(s: &FiniteSetting, ell: u64, cfg: &OracleConfig) -> Result<OracleReport> {
    let b = Brute::new(s, cfg.max_modulus).ok_or_else(|| too_large(s, cfg))?;
    let (Some(inv), Some(lift)) = (b.involution, b.involution_lift) else {
        return Ok(OracleReport::skipped_one());
    };
    let ctx = EllContext::new(s, ell)?;
    let mut r = OracleReport::default();
    let mut plus = 0u64;
    let mut minus = 0u64;
    let mut both = Vec::new();
    let mut s_in_plus = true;
    let mut s_in_minus = true;
    for a in 0..b.m {
        let image = mulmod(a, inv, b.m);
        let in_plus = image == a;
        let in_minus = image == b.neg(a);
        let ord = b.order(a);
        let (rest, _) = arith::split_prime_part(ord, ell);
        let in_s = rest == 1;
        let in_r = ord % ell != 0;
        plus += in_plus as u64;
        minus += in_minus as u64;
        if in_plus && in_minus {
            both.push(a);
        }
        if in_s {
            s_in_plus &= in_plus;
            s_in_minus &= in_minus;
        }
        let got = s.subgroup_membership(&ctx, &s.index(a))?;
        r.check(
            "subgroup-membership",
            || format!("{s} ell={ell} a={a}"),
            (in_plus, in_minus, in_s, in_r),
            (got.in_plus, got.in_minus, got.in_s, got.in_r),
        );
    }
    let input = || format!("{s} ell={ell}");
    if s.n() > 1 {
        r.check("gamma-plus-order", input, lift - 1, plus);
        r.check("gamma-minus-order", input, lift + 1, minus);
    }
    r.check("gamma-intersection", input, vec![0, b.m / 2], both);
    r.check("quadratic-character", input, big(b.m / 2), s.quadratic_character().value().clone());
    if ell != 2 {
        if (lift - 1) % ell == 0 {
            r.check("gamma-s-in-plus", input, true, s_in_plus);
        }
        if (lift + 1) % ell == 0 {
            r.check("gamma-s-in-minus", input, true, s_in_minus);
        }
    }
    Ok(r)
}

fn reduce_poly(c: &Cyclo, p: &dense::Poly) -> Vec<Vec<i128>> {
    p.iter().map(|x| c.reduce(x)).collect()
}

fn exponents_in(f: &EulerFactor, l: u64) -> Vec<(u64, u64)> {
    f.roots().map(|(z, m)| (z.exponent_in(l), m)).collect()
}

fn lcm_orders(f: &EulerFactor, base: u64) -> u64 {
    f.roots().fold(base, |acc, (z, _)| acc.lcm(&z.order()))
}

/// Test roots of unity: exponents `1` and `d - 1` of every order `d <= bound`.
pub fn test_roots(bound: u64) -> Vec<RootOfUnity> {
    let mut out = BTreeSet::new();
    for d in 1..=bound {
        out.insert(RootOfUnity::new(d, 1).unwrap());
        out.insert(RootOfUnity::new(d, d - 1).unwrap());
    }
    out.into_iter().collect()
}

/// Dense-polynomial checks of `expand`, `reduce_mod_ell` and `divides`.
pub fn verify_euler_arithmetic(bound: u64, ells: &[u64], parallel: bool) -> OracleReport {
    let cs = test_roots(bound);
    let work = |c: &RootOfUnity| {
        let mut cache = CycloCache::default();
        let mut r = OracleReport::default();
        for big_n in 1..=bound {
            euler_case(&mut cache, &mut r, c, big_n, ells);
        }
        r
    };
    let parts: Vec<OracleReport> = if parallel {
        cs.par_iter().map(work).collect()
    } else {
        cs.iter().map(work).collect()
    };
    let mut out = OracleReport::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn euler_case(cache: &mut CycloCache, r: &mut OracleReport, c: &RootOfUnity, big_n: u64, ells: &[u64]) {
    let one = RootOfUnity::one();
    let f0 = lfactor::expand(c, big_n, 0).expect("characteristic 0");
    let l = c.order().lcm(&big_n);
    let input = |ch: u64| format!("c={c} N={big_n} char={ch}");
    r.check("expand-degree", || input(0), big_n, f0.degree());
    {
        let cy = cache.get(l, 0);
        let prod = cy.product(&exponents_in(&f0, l));
        let target = cy.binomial(c.pow(big_n).exponent_in(l), big_n as usize);
        r.check("expand-product", || input(0), true, cy.poly_eq(&prod, &target));
        let g = lfactor::expand(&one, big_n, 0).unwrap();
        let dense = cy.divides(&exponents_in(&f0, l), &cy.product(&exponents_in(&g, l)));
        r.check("divides", || input(0), dense, f0.divides(&g).unwrap());
    }
    for &ell in ells {
        let reduced = f0.reduce_mod_ell(ell).expect("prime ell");
        // coefficientwise reduction of the characteristic 0 product
        let (l_r, u) = dense::reduction_exponent(l, ell);
        let src = cache.get(l, 0);
        let prod0 = src.product(&exponents_in(&f0, l));
        let target_cy = Cyclo::new(l_r, Some(ell));
        let mapped: dense::Poly = prod0.iter().map(|x| src.map_elem(&target_cy, x, u)).collect();
        let l_red = lcm_orders(&reduced, 1);
        debug_assert_eq!(l_r % l_red, 0);
        let from_roots = target_cy.product(&exponents_in(&reduced, l_r));
        r.check(
            "reduce-mod-ell",
            || input(ell),
            reduce_poly(&target_cy, &mapped),
            reduce_poly(&target_cy, &from_roots),
        );
        let c_bar = c.prime_to(ell);
        match lfactor::expand(c, big_n, ell) {
            Err(Error::BadCharacteristic { .. }) => r.check("expand-characteristic", || input(ell), true, c.order().is_multiple_of(ell)),
            Err(e) => r.check("expand-characteristic", || input(ell), String::new(), e.to_string()),
            Ok(fl) => {
                r.check("expand-characteristic", || input(ell), false, c.order().is_multiple_of(ell));
                r.check("expand-degree", || input(ell), big_n, fl.degree());
                let (n_r, _) = arith::split_prime_part(big_n, ell);
                let lr = c.order().lcm(&n_r);
                let cy = cache.get(lr, ell);
                let prod = cy.product(&exponents_in(&fl, lr));
                let target = cy.binomial(c.pow(big_n).exponent_in(lr), big_n as usize);
                r.check("expand-product", || input(ell), true, cy.poly_eq(&prod, &target));
            }
        }
        let fl = lfactor::expand(&c_bar, big_n, ell).expect("prime-to-ell root");
        r.check("reduce-matches-expand", || input(ell), fl.clone(), reduced.clone());
        let g = lfactor::expand(&one, big_n, ell).unwrap();
        let lr = lcm_orders(&fl, lcm_orders(&g, 1));
        let cy = cache.get(lr, ell);
        let dense_fg = cy.divides(&exponents_in(&fl, lr), &cy.product(&exponents_in(&g, lr)));
        r.check("divides", || input(ell), dense_fg, fl.divides(&g).unwrap());
        let dense_gf = cy.divides(&exponents_in(&g, lr), &cy.product(&exponents_in(&fl, lr)));
        r.check("divides", || input(ell), dense_gf, g.divides(&fl).unwrap());
        let unit = EulerFactor::unit(ell).unwrap();
        r.check("divides", || input(ell), true, unit.divides(&fl).unwrap());
    }
}

fn primes_dividing(m: &BigUint, bound: u64) -> Vec<u64> {
    arith::primes_up_to(bound)
        .into_iter()
        .filter(|&p| (m % p).to_u64() == Some(0))
        .collect()
}

/// The whole suite: parity, lift counts and subgroup lattices over the
/// configured settings, then the Euler factor oracle.
pub fn run_suite(cfg: &OracleConfig) -> OracleReport {
    let mut tasks: Vec<(SettingSpec, Option<u64>)> = Vec::new();
    let mut report = OracleReport::default();
    let mut specs = cfg.settings();
    specs.extend(cfg.parity_scans.iter().copied());
    for spec in specs {
        let s = match spec.build() {
            Ok(s) => s,
            Err(e) => {
                report.check("setting", || spec.to_string(), String::new(), e.to_string());
                continue;
            }
        };
        if s.modulus_within(cfg.max_modulus).is_err() {
            report.skipped += 1;
            continue;
        }
        tasks.push((spec, None));
        if cfg.parity_scans.contains(&spec) && !cfg.settings().contains(&spec) {
            continue;
        }
        let mut ells = primes_dividing(s.modulus(), cfg.ell_bound);
        if let Some(&coprime) = arith::primes_up_to(cfg.ell_bound)
            .iter()
            .find(|&&p| !ells.contains(&p) && (s.q_base() % p).to_u64() != Some(0))
        {
            ells.push(coprime);
        }
        for ell in ells {
            tasks.push((spec, Some(ell)));
        }
    }
    let run = |&(spec, ell): &(SettingSpec, Option<u64>)| -> OracleReport {
        let s = spec.build().expect("built above");
        let inner = OracleConfig {
            parallel: false,
            inject_fault: cfg.inject_fault && ell.is_some(),
            ..cfg.clone()
        };
        let res = match ell {
            None => verify_parity(&s, &inner),
            Some(ell) => verify_lift_counts(&s, ell, &inner).and_then(|mut r| {
                r.merge(verify_subgroup_lattice(&s, ell, &inner)?);
                Ok(r)
            }),
        };
        res.unwrap_or_else(|e| {
            let mut r = OracleReport::default();
            r.check("oracle-error", || format!("{spec} ell={ell:?}"), String::new(), e.to_string());
            r
        })
    };
    let parts: Vec<OracleReport> = if cfg.parallel {
        tasks.par_iter().map(run).collect()
    } else {
        tasks.iter().map(run).collect()
    };
    for p in parts {
        report.merge(p);
    }
    if cfg.inject_fault && report.passed() {
        report.check("injected-fault", || "suite".into(), 0, 1);
    }
    report.merge(verify_euler_arithmetic(cfg.euler_bound, &cfg.euler_ells, cfg.parallel));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn parity_scans() {
        let r = verify_parity(&FiniteSetting::galois_pair(3u32, 2).unwrap(), &cfg()).unwrap();
        assert!(r.passed() && r.witnesses == 0);
        let r = verify_parity(&FiniteSetting::self_dual(3u32, 3).unwrap(), &cfg()).unwrap();
        assert!(r.passed() && r.witnesses == 0);
        let r = verify_parity(&FiniteSetting::galois_pair(3u32, 3).unwrap(), &cfg()).unwrap();
        assert!(r.passed() && r.witnesses > 0);
        let small = OracleConfig { max_modulus: 100, ..cfg() };
        assert!(matches!(
            verify_parity(&FiniteSetting::galois_pair(3u32, 3).unwrap(), &small),
            Err(Error::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn lift_counts_small() {
        let s = FiniteSetting::galois_pair(3u32, 3).unwrap();
        for ell in [2, 5, 7, 13] {
            let r = verify_lift_counts(&s, ell, &cfg()).unwrap();
            assert!(r.passed(), "ell = {ell}: {:?}", r.failures.first());
        }
        let s1 = FiniteSetting::galois_pair(3u32, 1).unwrap();
        assert!(verify_lift_counts(&s1, 2, &cfg()).unwrap().passed());
        let sd = FiniteSetting::self_dual(3u32, 1).unwrap();
        assert!(verify_lift_counts(&sd, 2, &cfg()).unwrap().passed());
    }

    #[test]
    fn fault_is_detected() {
        let s = FiniteSetting::galois_pair(3u32, 3).unwrap();
        let bad = OracleConfig { inject_fault: true, ..cfg() };
        let r = verify_lift_counts(&s, 7, &bad).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].tag, "closed-form-lift-count");
    }

    #[test]
    fn lattice_small() {
        let s = FiniteSetting::galois_pair(3u32, 3).unwrap();
        for ell in [2, 7, 13] {
            let r = verify_subgroup_lattice(&s, ell, &cfg()).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn euler_small() {
        let r = verify_euler_arithmetic(8, &[2, 3], false);
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.checked > 100);
    }

    #[test]
    fn idempotent_search() {
        let s = FiniteSetting::galois_pair(3u32, 3).unwrap();
        let b = Brute::new(&s, 1000).unwrap();
        assert_eq!(b.split(7), (7, 104, 105));
        assert_eq!(mulmod(26, b.split(7).2, 728), 546);
    }
}
