//! Truncated formal power series in one grading variable T, with plethystic
//! exponential and logarithm. Coefficients may be rational functions or
//! tensor symmetric functions; Adams maps act on coefficients while the
//! T-power bookkeeping is handled by re-indexing.

use num::One;

use crate::error::{EngineError, Result};
use crate::ring::{rat_int, Rat, RatFunc};

use super::TensorSymFunc;

/// Coefficient ring interface for truncated series.
pub trait Coeff: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale_rat(&self, c: &Rat) -> Self;
    fn adams(&self, k: u32) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

impl Coeff for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars())
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self.mul_rat(c)
    }
    fn adams(&self, k: u32) -> Self {
        RatFunc::adams(self, k)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
}

impl Coeff for TensorSymFunc {
    fn zero_like(&self) -> Self {
        TensorSymFunc::zero(self.vars(), self.slots(), self.bound())
    }
    fn one_like(&self) -> Self {
        TensorSymFunc::one(self.vars(), self.slots(), self.bound())
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        TensorSymFunc::scale_rat(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        self.adams_full(k)
    }
    fn is_zero(&self) -> bool {
        TensorSymFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.terms().count() == 1
            && self
                .terms()
                .all(|(k, c)| k.iter().all(|mu| mu.is_empty()) && c.is_one())
    }
}

/// Power series in T truncated at a fixed order (inclusive).
#[derive(Clone, Debug)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Zero series of the given order, with `proto` supplying the
    /// coefficient context.
    pub fn zero(order: u32, proto: &C) -> Self {
        TruncSeries {
            coeffs: vec![proto.zero_like(); order as usize + 1],
        }
    }

    pub fn one(order: u32, proto: &C) -> Self {
        let mut s = Self::zero(order, proto);
        s.coeffs[0] = proto.one_like();
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, n: u32) -> &C {
        &self.coeffs[n as usize]
    }

    pub fn set_coeff(&mut self, n: u32, c: C) {
        self.coeffs[n as usize] = c;
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order, &self.coeffs[0]);
        for n in 0..=order as usize {
            out.coeffs[n] = self.coeffs[n].add(&other.coeffs[n]);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.scale_rat(c)).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn negate(&self) -> Self {
        self.scale_rat(&-Rat::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order, &self.coeffs[0]);
        for i in 0..=order as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order as usize - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&p);
            }
        }
        out
    }

    /// Multiplies in place by the sparse factor (1 + c T^k).
    pub fn mul_one_plus(&mut self, k: u32, c: &C) {
        let order = self.order() as usize;
        let k = k as usize;
        if k == 0 || k > order {
            return;
        }
        for n in (0..=order).rev() {
            if n >= k && !self.coeffs[n - k].is_zero() {
                let add = self.coeffs[n - k].mul(c);
                self.coeffs[n] = self.coeffs[n].add(&add);
            }
        }
    }

    pub fn equals_by<F: Fn(&C, &C) -> bool>(&self, other: &Self, eq: F) -> bool {
        if self.order() != other.order() {
            return false;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| eq(a, b))
    }
}

/// Moebius function on small arguments.
pub fn moebius(n: u32) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Plethystic exponential of a series with zero constant term:
/// Exp(a) = exp(sum_k adams(a, k)(T^k)/k).
pub fn pleth_exp<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    if !a.coeff(0).is_zero() {
        return Err(EngineError::ExpConstantTerm);
    }
    let order = a.order();
    let proto = a.coeff(0);
    // b = sum_k adams_k(a) with T -> T^k, divided by k
    let mut b = TruncSeries::zero(order, proto);
    for k in 1..=order.max(1) {
        if k > order {
            break;
        }
        let ak = |m: u32| -> C { a.coeff(m).adams(k) };
        let inv = Rat::one() / rat_int(k as i64);
        let mut m = 1;
        while m * k <= order {
            let term = ak(m).scale_rat(&inv);
            let idx = m * k;
            b.coeffs[idx as usize] = b.coeffs[idx as usize].add(&term);
            m += 1;
        }
    }
    // E = exp(b): n E_n = sum_{j=1..n} j b_j E_{n-j}
    let mut e = TruncSeries::zero(order, proto);
    e.coeffs[0] = proto.one_like();
    for n in 1..=order as usize {
        let mut acc = proto.zero_like();
        for j in 1..=n {
            if b.coeffs[j].is_zero() || e.coeffs[n - j].is_zero() {
                continue;
            }
            let t = b.coeffs[j].mul(&e.coeffs[n - j]).scale_rat(&rat_int(j as i64));
            acc = acc.add(&t);
        }
        e.coeffs[n] = acc.scale_rat(&(Rat::one() / rat_int(n as i64)));
    }
    Ok(e)
}

/// Plethystic logarithm of a series with constant term 1, via the Moebius
/// inversion V_n = (1/n) sum_{d|n} mu(d) adams(U_{n/d}, d) with
/// log(F) = sum U_n T^n / n.
pub fn pleth_log<C: Coeff>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    if !f.coeff(0).is_one() {
        return Err(EngineError::LogConstantTerm);
    }
    let order = f.order();
    let proto = f.coeff(0);
    // U_n from n F_n = sum_{j=1..n} U_j F_{n-j}
    let mut u: Vec<C> = vec![proto.zero_like(); order as usize + 1];
    for n in 1..=order as usize {
        let mut acc = f.coeff(n as u32).scale_rat(&rat_int(n as i64));
        for j in 1..n {
            if u[j].is_zero() || f.coeffs[n - j].is_zero() {
                continue;
            }
            let t = u[j].mul(&f.coeffs[n - j]);
            acc = acc.add(&t.scale_rat(&-Rat::one()));
        }
        u[n] = acc;
    }
    let mut v = TruncSeries::zero(order, proto);
    for n in 1..=order as usize {
        let mut acc = proto.zero_like();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let m = moebius(d as u32);
            if m == 0 || u[n / d].is_zero() {
                continue;
            }
            let t = u[n / d].adams(d as u32).scale_rat(&rat_int(m));
            acc = acc.add(&t);
        }
        v.coeffs[n] = acc.scale_rat(&(Rat::one() / rat_int(n as i64)));
    }
    Ok(v)
}

/// The series T/(1-T) truncated: every positive coefficient is 1.
pub fn geometric_t<C: Coeff>(order: u32, proto: &C) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(order, proto);
    for n in 1..=order as usize {
        s.coeffs[n] = proto.one_like();
    }
    s
}
