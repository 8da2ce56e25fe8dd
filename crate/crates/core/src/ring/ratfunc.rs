use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use crate::error::{EngineError, Result};
use crate::ring::mpoly::{rat_pow, Rat};
use crate::ring::{MPoly, VarSet};

/// Reduced fraction of sparse Laurent polynomials.
///
/// The denominator is kept as a multiset of unit-normalized factors
/// (integer-primitive, positive leading coefficient, no monomial content);
/// rational scalars and monomial units live in the numerator. Cancellation
/// is by exact trial division against the factors, so the identity-heavy
/// pipelines never need a full multivariate GCD.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: BTreeMap<MPoly, u32>,
}

impl RatFunc {
    pub fn from_poly(num: MPoly) -> Self {
        RatFunc {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(MPoly::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(MPoly::one(vars))
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        Self::from_poly(MPoly::constant(vars, c))
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::from_poly(MPoly::var(vars, i))
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        let mut f = Self::from_poly(num);
        f.divide_by_poly(&den);
        Ok(f)
    }

    /// num / prod factors[i].0 ^ factors[i].1
    pub fn with_den_factors(num: MPoly, factors: &[(MPoly, u32)]) -> Result<Self> {
        let mut f = Self::from_poly(num);
        for (p, e) in factors {
            if p.is_zero() {
                return Err(EngineError::DivisionByZero);
            }
            for _ in 0..*e {
                f.divide_by_poly(p);
            }
        }
        Ok(f)
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&MPoly, u32)> + '_ {
        self.den.iter().map(|(p, &e)| (p, e))
    }

    pub fn den_expanded(&self) -> MPoly {
        let mut d = MPoly::one(self.num.vars());
        for (p, &e) in &self.den {
            d = d.mul_ref(&p.pow(e));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Divides in place by a nonzero polynomial, splitting off units.
    fn divide_by_poly(&mut self, p: &MPoly) {
        let (c, shift, f) = p.unit_decompose();
        assert!(!c.is_zero(), "division by zero polynomial");
        let neg_shift: Vec<i64> = shift.iter().map(|s| -s).collect();
        self.num = self
            .num
            .mul_ref(&MPoly::monomial(self.num.vars(), c.recip(), &neg_shift));
        if !f.is_one() {
            *self.den.entry(f).or_insert(0) += 1;
            self.reduce();
        }
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    /// Cancels denominator factors that exactly divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<MPoly> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let mult = match self.den.get(&f) {
                    Some(&m) if m > 0 => m,
                    _ => break,
                };
                match self.num.divexact(&f) {
                    Some(q) => {
                        self.num = q;
                        if mult == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), mult - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den: BTreeMap<MPoly, u32> = self.den.clone();
        for (f, &e) in &other.den {
            let cur = den.entry(f.clone()).or_insert(0);
            *cur = (*cur).max(e);
        }
        let mut n1 = self.num.clone();
        let mut n2 = other.num.clone();
        for (f, &e) in &den {
            let e1 = self.den.get(f).copied().unwrap_or(0);
            let e2 = other.den.get(f).copied().unwrap_or(0);
            if e > e1 {
                n1 = n1.mul_ref(&f.pow(e - e1));
            }
            if e > e2 {
                n2 = n2.mul_ref(&f.pow(e - e2));
            }
        }
        let mut out = RatFunc {
            num: n1.add_ref(&n2),
            den,
        };
        if out.num.is_zero() {
            out.den.clear();
        } else {
            out.reduce();
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        let mut out = RatFunc {
            num: self.num.mul_ref(&other.num),
            den: self.den.clone(),
        };
        for (f, &e) in &other.den {
            *out.den.entry(f.clone()).or_insert(0) += e;
        }
        out.reduce();
        out
    }

    pub fn mul_poly(&self, p: &MPoly) -> Self {
        if p.is_zero() {
            return Self::zero(self.vars());
        }
        let mut out = RatFunc {
            num: self.num.mul_ref(p),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc {
            num: self.num.mul_rat(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        let mut num = MPoly::one(self.vars());
        for (f, &e) in &self.den {
            num = num.mul_ref(&f.pow(e));
        }
        let mut out = Self::from_poly(num);
        out.divide_by_poly(&self.num);
        Ok(out)
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.recip()?.pow_i64(-k);
        }
        let mut acc = Self::one(self.vars());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    pub fn adams(&self, k: u32) -> Self {
        if k == 1 {
            return self.clone();
        }
        let num = self.num.adams(k);
        let den = self.den.iter().map(|(f, &e)| (f.adams(k), e)).collect();
        RatFunc { num, den }
    }

    /// Substitutes variable v by a nonzero monomial; errors if a
    /// denominator factor vanishes under the substitution.
    pub fn subst_monomial(&self, v: usize, c: &Rat, exps: &[i64]) -> Result<Self> {
        let mut out = Self::from_poly(self.num.subst_monomial(v, c, exps)?);
        for (f, &e) in &self.den {
            let sf = f.subst_monomial(v, c, exps)?;
            if sf.is_zero() {
                return Err(EngineError::Pole);
            }
            for _ in 0..e {
                out.divide_by_poly(&sf);
            }
        }
        Ok(out)
    }

    /// Maps into another variable set via monomial images (see
    /// `MPoly::map_vars`); errors if a denominator factor collapses to zero.
    pub fn map_vars(&self, target: &VarSet, images: &[(Rat, Vec<i64>)]) -> Result<Self> {
        let mut out = Self::from_poly(self.num.map_vars(target, images));
        for (f, &e) in &self.den {
            let sf = f.map_vars(target, images);
            if sf.is_zero() {
                return Err(EngineError::Pole);
            }
            for _ in 0..e {
                out.divide_by_poly(&sf);
            }
        }
        Ok(out)
    }

    pub fn embed(&self, target: &VarSet) -> Self {
        let num = self.num.embed(target);
        let den = self.den.iter().map(|(f, &e)| (f.embed(target), e)).collect();
        RatFunc { num, den }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let mut acc = self.num.eval(point)?;
        for (f, &e) in &self.den {
            let d = f.eval(point)?;
            if d.is_zero() {
                return Err(EngineError::EvalDenominatorZero);
            }
            acc = acc * rat_pow(&d, -(e as i64));
        }
        Ok(acc)
    }

    /// Exact equality as fractions, by cross multiplication over the
    /// complementary denominator factors.
    pub fn equals_exact(&self, other: &Self) -> bool {
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        let mut all: BTreeMap<MPoly, (u32, u32)> = BTreeMap::new();
        for (f, &e) in &self.den {
            all.entry(f.clone()).or_insert((0, 0)).0 = e;
        }
        for (f, &e) in &other.den {
            all.entry(f.clone()).or_insert((0, 0)).1 = e;
        }
        for (f, (e1, e2)) in all {
            if e1 > e2 {
                rhs = rhs.mul_ref(&f.pow(e1 - e2));
            } else if e2 > e1 {
                lhs = lhs.mul_ref(&f.pow(e2 - e1));
            }
        }
        lhs == rhs
    }

    /// Fully reduced canonical form: the denominator is unit-normalized and
    /// coprime to the numerator. Falls back to a multivariate GCD only when
    /// factor-wise cancellation leaves a nontrivial denominator.
    pub fn normalize(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.vars());
        }
        let mut work = self.clone();
        work.reduce();
        if work.den.is_empty() {
            return work;
        }
        let den = work.den_expanded();
        if let Some(q) = work.num.divexact(&den) {
            return Self::from_poly(q);
        }
        let g = work.num.gcd(&den);
        let (num, den) = if g.is_one() {
            (work.num.clone(), den)
        } else {
            (
                work.num.divexact(&g).expect("gcd divides"),
                den.divexact(&g).expect("gcd divides"),
            )
        };
        let mut out = Self::from_poly(num);
        out.divide_by_poly(&den);
        out
    }

    /// Some(witness) iff the fraction is a Laurent polynomial; the witness
    /// is the cleared polynomial. Complete because every denominator factor
    /// of a Laurent polynomial must divide the numerator.
    pub fn is_laurent_polynomial(&self) -> Option<MPoly> {
        let mut work = self.clone();
        work.reduce();
        if work.den.is_empty() {
            Some(work.num)
        } else {
            None
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_ref(rhs)
    }
}
impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.sub_ref(rhs)
    }
}
impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::ring::text::ratfunc_to_text(self))
    }
}

/// Equality-testing strategy. Exact mode cross-multiplies; probabilistic
/// mode compares evaluations at random rational points (denominators
/// avoided) and is intended for development runs only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqMode {
    Exact,
    Probabilistic { trials: u32, seed: u64 },
}

impl Default for EqMode {
    fn default() -> Self {
        EqMode::Exact
    }
}

impl EqMode {
    pub fn probabilistic(seed: u64) -> Self {
        EqMode::Probabilistic { trials: 20, seed }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EqMode::Exact)
    }

    pub fn equal(&self, a: &RatFunc, b: &RatFunc) -> bool {
        match *self {
            EqMode::Exact => a.equals_exact(b),
            EqMode::Probabilistic { trials, seed } => {
                let nvars = a.vars().len();
                let mut rng = SplitMix::new(seed);
                let mut done = 0;
                let mut attempts = 0;
                while done < trials {
                    attempts += 1;
                    if attempts > 50 * trials {
                        // could not dodge the denominators; fall back
                        return a.equals_exact(b);
                    }
                    let point: Vec<Rat> = (0..nvars)
                        .map(|_| {
                            let n = (rng.next() % 200) as i64 + 1;
                            let d = (rng.next() % 40) as i64 + 1;
                            crate::ring::mpoly::rat(n, d)
                        })
                        .collect();
                    match (a.eval(&point), b.eval(&point)) {
                        (Ok(x), Ok(y)) => {
                            if x != y {
                                return false;
                            }
                            done += 1;
                        }
                        _ => continue,
                    }
                }
                true
            }
        }
    }
}

/// Small deterministic generator for the probabilistic equality mode.
struct SplitMix {
    state: u64,
}

impl SplitMix {
    fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}
