//! Dense polynomial arithmetic over `Z[zeta_L]` and `Z[zeta_L] / ell`.
//!
//! Elements are first built in the group ring `Z[C_L]` (a vector indexed
//! by exponents mod `L`, so multiplication by a root of unity is a
//! rotation) and only reduced modulo `Phi_L` and `ell` for comparison.

use std::collections::HashMap;

use crate::arith;

pub type GroupElem = Vec<i128>;
/// Polynomial in `X`, coefficients in `Z[C_L]`, constant term first.
pub type Poly = Vec<GroupElem>;

/// `Phi_l` from `prod_{d | l} (x^d - 1)^{mu(l/d)}`.
pub fn cyclotomic(l: u64) -> Vec<i128> {
    let divisors: Vec<u64> = (1..=l).filter(|d| l.is_multiple_of(*d)).collect();
    let mut num = vec![1i128];
    let mut den = Vec::new();
    for &d in &divisors {
        match mobius(l / d) {
            1 => num = mul_binomial(&num, d as usize),
            -1 => den.push(d as usize),
            _ => {}
        }
    }
    for d in den {
        num = div_binomial(&num, d);
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    num
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

// p * (x^d - 1)
fn mul_binomial(p: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

// p / (x^d - 1), exact
fn div_binomial(p: &[i128], d: usize) -> Vec<i128> {
    assert!(p.len() > d);
    let deg_q = p.len() - 1 - d;
    let mut q = vec![0i128; deg_q + 1];
    // p_j = q_{j-d} - q_j
    for j in 0..=deg_q {
        let prev = if j >= d { q[j - d] } else { 0 };
        q[j] = prev - p[j];
    }
    debug_assert_eq!(mul_binomial(&q, d), p);
    q
}

/// Reduction data for `Z[C_L] -> Z[zeta_L] (/ ell)`.
pub struct Cyclo {
    l: usize,
    phi: Vec<i128>,
    modulus: Option<i128>,
}

impl Cyclo {
    pub fn new(l: u64, ell: Option<u64>) -> Self {
        Cyclo {
            l: l as usize,
            phi: cyclotomic(l),
            modulus: ell.map(|x| x as i128),
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.l]
    }

    pub fn monomial(&self, k: u64) -> GroupElem {
        let mut v = self.zero();
        v[(k % self.l as u64) as usize] = 1;
        v
    }

    /// Canonical form: remainder mod `Phi_L`, coefficients mod `ell`.
    pub fn reduce(&self, v: &GroupElem) -> Vec<i128> {
        let deg = self.phi.len() - 1;
        let mut r = v.clone();
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for (j, &pj) in self.phi.iter().enumerate() {
                r[i - deg + j] -= c * pj;
            }
            if let Some(m) = self.modulus {
                for x in &mut r[i - deg..i] {
                    *x = x.rem_euclid(m);
                }
            }
        }
        r.truncate(deg);
        if let Some(m) = self.modulus {
            for x in &mut r {
                *x = x.rem_euclid(m);
            }
        }
        r
    }

    pub fn is_zero(&self, v: &GroupElem) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    fn normalize(&self, v: &mut GroupElem) {
        if let Some(m) = self.modulus {
            for x in v.iter_mut() {
                *x = x.rem_euclid(m);
            }
        }
    }

    /// `prod (1 - zeta_L^k X)^{m}` over `(k, m)`.
    pub fn product(&self, roots: &[(u64, u64)]) -> Poly {
        let mut p: Poly = vec![self.monomial(0)];
        for &(k, mult) in roots {
            for _ in 0..mult {
                p = self.mul_linear(&p, k);
            }
        }
        p
    }

    // p * (1 - zeta^k X)
    fn mul_linear(&self, p: &Poly, k: u64) -> Poly {
        let k = (k % self.l as u64) as usize;
        let mut out = vec![self.zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            for (j, &x) in c.iter().enumerate() {
                if x != 0 {
                    out[i][j] += x;
                    out[i + 1][(j + k) % self.l] -= x;
                }
            }
        }
        for c in &mut out {
            self.normalize(c);
        }
        out
    }

    /// `1 - zeta_L^k X^n`.
    pub fn binomial(&self, k: u64, n: usize) -> Poly {
        let mut p = vec![self.zero(); n + 1];
        p[0][0] += 1;
        p[n][(k % self.l as u64) as usize] -= 1;
        p
    }

    pub fn poly_eq(&self, a: &Poly, b: &Poly) -> bool {
        let len = a.len().max(b.len());
        (0..len).all(|i| {
            let mut d = a.get(i).cloned().unwrap_or_else(|| self.zero());
            if let Some(y) = b.get(i) {
                for (x, y) in d.iter_mut().zip(y) {
                    *x -= y;
                }
            }
            self.is_zero(&d)
        })
    }

    /// Divides `p` by `1 - zeta^k X` if it is a divisor, otherwise `None`.
    pub fn div_linear(&self, p: &Poly, k: u64) -> Option<Poly> {
        if p.len() < 2 {
            return None;
        }
        let k = (k % self.l as u64) as usize;
        // p = (1 - z X) q:  q_0 = p_0, q_i = p_i + z q_{i-1}
        let mut q: Poly = Vec::with_capacity(p.len() - 1);
        q.push(p[0].clone());
        for i in 1..p.len() - 1 {
            let mut c = p[i].clone();
            for (j, &x) in q[i - 1].iter().enumerate() {
                c[(j + k) % self.l] += x;
            }
            self.normalize(&mut c);
            q.push(c);
        }
        // remainder: p_top + z q_last must vanish
        let mut rem = p[p.len() - 1].clone();
        for (j, &x) in q[q.len() - 1].iter().enumerate() {
            rem[(j + k) % self.l] += x;
        }
        self.is_zero(&rem).then_some(q)
    }

    /// Whether `prod (1 - zeta^k X)^m` divides `p`.
    pub fn divides(&self, roots: &[(u64, u64)], p: &Poly) -> bool {
        let mut cur = p.clone();
        for &(k, mult) in roots {
            for _ in 0..mult {
                match self.div_linear(&cur, k) {
                    Some(q) => cur = q,
                    None => return false,
                }
            }
        }
        true
    }

    /// Image under `Z[C_L] -> Z[C_{L'}]`, `g -> h^u`.
    pub fn map_elem(&self, target: &Cyclo, v: &GroupElem, u: u64) -> GroupElem {
        let mut out = target.zero();
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                out[((j as u64 * u) % target.l as u64) as usize] += x;
            }
        }
        target_normalized(target, out)
    }
}

fn target_normalized(target: &Cyclo, mut v: GroupElem) -> GroupElem {
    target.normalize(&mut v);
    v
}

/// Exponent `u` with `zeta_L -> zeta_{L_r}^u` the reduction mod `ell`,
/// `L = L_r ell^E`.
pub fn reduction_exponent(l: u64, ell: u64) -> (u64, u64) {
    let (l_r, e) = arith::split_prime_part(l, ell);
    let u = arith::mod_inverse_u64(ell.pow(e) % l_r, l_r).expect("coprime");
    (l_r, u)
}

/// Shared `Cyclo` instances keyed by `(L, ell)`.
#[derive(Default)]
pub struct CycloCache {
    map: HashMap<(u64, u64), Cyclo>,
}

impl CycloCache {
    pub fn get(&mut self, l: u64, ell: u64) -> &Cyclo {
        self.map
            .entry((l, ell))
            .or_insert_with(|| Cyclo::new(l, (ell != 0).then_some(ell)))
    }
}
