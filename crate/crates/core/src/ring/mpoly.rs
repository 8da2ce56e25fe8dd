use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{EngineError, Result};
use crate::ring::VarSet;

/// Exact rational scalar used throughout the engine.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_pow(c: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    let mut base = if e >= 0 { c.clone() } else { c.recip() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

type Expo = Vec<u32>;
type TermMap = BTreeMap<Expo, Rat>;

fn map_add_term(m: &mut TermMap, e: Expo, c: Rat) {
    if c.is_zero() {
        return;
    }
    match m.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Sparse multivariate Laurent polynomial over exact rationals.
///
/// Negative exponents are carried by a single per-variable shift vector;
/// the stored term map has natural-number exponents with zero monomial
/// content (every variable attains exponent 0 in some term). The zero
/// polynomial has an empty term map and zero shift.
#[derive(Clone, Debug)]
pub struct MPoly {
    vars: VarSet,
    shift: Vec<i64>,
    terms: TermMap,
}

impl MPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MPoly {
            vars: vars.clone(),
            shift: vec![0; vars.len()],
            terms: TermMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut terms = TermMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        MPoly {
            vars: vars.clone(),
            shift: vec![0; vars.len()],
            terms,
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Self::constant(vars, rat_int(n))
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        let mut e = vec![0i64; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Rat::one(), &e)
    }

    pub fn var_pow(vars: &VarSet, i: usize, e: i64) -> Self {
        let mut exps = vec![0i64; vars.len()];
        exps[i] = e;
        Self::monomial(vars, Rat::one(), &exps)
    }

    pub fn monomial(vars: &VarSet, c: Rat, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), vars.len());
        if c.is_zero() {
            return Self::zero(vars);
        }
        let mut terms = TermMap::new();
        terms.insert(vec![0; vars.len()], c);
        MPoly {
            vars: vars.clone(),
            shift: exps.to_vec(),
            terms,
        }
    }

    /// Builds from true (signed) exponent terms.
    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Self {
        let mut wide: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            if c.is_zero() {
                continue;
            }
            match wide.entry(e) {
                Entry::Vacant(v) => {
                    v.insert(c);
                }
                Entry::Occupied(mut o) => {
                    let s = o.get() + &c;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Self::from_wide(vars.clone(), wide)
    }

    fn from_wide(vars: VarSet, wide: BTreeMap<Vec<i64>, Rat>) -> Self {
        if wide.is_empty() {
            return Self::zero(&vars);
        }
        let n = vars.len();
        let mut shift = vec![i64::MAX; n];
        for e in wide.keys() {
            for (s, &x) in shift.iter_mut().zip(e) {
                *s = (*s).min(x);
            }
        }
        let terms: TermMap = wide
            .into_iter()
            .map(|(e, c)| {
                let key: Expo = e.iter().zip(&shift).map(|(&x, &s)| (x - s) as u32).collect();
                (key, c)
            })
            .collect();
        MPoly { vars, shift, terms }
    }

    /// Builds from raw (shift, natural-exponent terms), pruning zeros and
    /// rebasing so the stored map is content-free.
    fn from_raw(vars: VarSet, mut shift: Vec<i64>, mut terms: TermMap) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Self::zero(&vars);
        }
        let n = vars.len();
        let mut min = vec![u32::MAX; n];
        for e in terms.keys() {
            for (m, &x) in min.iter_mut().zip(e.iter()) {
                *m = (*m).min(x);
            }
        }
        if min.iter().any(|&m| m > 0) {
            let rebased: TermMap = terms
                .into_iter()
                .map(|(e, c)| {
                    let e2: Expo = e.iter().zip(&min).map(|(&x, &m)| x - m).collect();
                    (e2, c)
                })
                .collect();
            for (s, &m) in shift.iter_mut().zip(min.iter()) {
                *s += m as i64;
            }
            terms = rebased;
        }
        MPoly { vars, shift, terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some(c) iff the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 && self.shift.iter().all(|&s| s == 0) {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Some((coeff, exponents)) iff the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(Rat, Vec<i64>)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let exps = e
            .iter()
            .zip(&self.shift)
            .map(|(&x, &s)| s + x as i64)
            .collect();
        Some((c.clone(), exps))
    }

    /// Iterates (true exponent vector, coefficient).
    pub fn iter_terms(&self) -> impl Iterator<Item = (Vec<i64>, &Rat)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let exps: Vec<i64> = e
                .iter()
                .zip(&self.shift)
                .map(|(&x, &s)| s + x as i64)
                .collect();
            (exps, c)
        })
    }

    /// (min, max) true exponent of variable `v`; None for the zero polynomial.
    pub fn degree_range(&self, v: usize) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            return None;
        }
        let max = self.terms.keys().map(|e| e[v]).max().unwrap();
        Some((self.shift[v], self.shift[v] + max as i64))
    }

    fn check_vars(&self, other: &Self) {
        assert!(self.vars == other.vars, "variable sets differ");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.check_vars(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.vars.len();
        let mut shift = vec![0i64; n];
        for i in 0..n {
            shift[i] = self.shift[i].min(other.shift[i]);
        }
        let mut terms = TermMap::new();
        for src in [self, other] {
            for (e, c) in &src.terms {
                let e2: Expo = e
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| (src.shift[i] - shift[i] + x as i64) as u32)
                    .collect();
                map_add_term(&mut terms, e2, c.clone());
            }
        }
        Self::from_raw(self.vars.clone(), shift, terms)
    }

    pub fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MPoly {
            vars: self.vars.clone(),
            shift: self.shift.clone(),
            terms,
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        let n = self.vars.len();
        let mut shift = vec![0i64; n];
        for i in 0..n {
            shift[i] = self.shift[i] + other.shift[i];
        }
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = TermMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Expo = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                map_add_term(&mut terms, e, ca * cb);
            }
        }
        Self::from_raw(self.vars.clone(), shift, terms)
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        MPoly {
            vars: self.vars.clone(),
            shift: self.shift.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents require a monomial base.
    pub fn pow_i64(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (c, exps) = self.as_monomial().ok_or(EngineError::DivisionByZero)?;
        let inv_exps: Vec<i64> = exps.iter().map(|e| e * k).collect();
        Ok(Self::monomial(&self.vars, rat_pow(&c, k), &inv_exps))
    }

    /// The k-th Adams (Frobenius) map: every non-exempt variable exponent
    /// is multiplied by k.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        let n = self.vars.len();
        let scale: Vec<bool> = (0..n).map(|i| !self.vars.is_adams_exempt(i)).collect();
        let shift: Vec<i64> = self
            .shift
            .iter()
            .enumerate()
            .map(|(i, &s)| if scale[i] { s * k as i64 } else { s })
            .collect();
        let terms: TermMap = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e2: Expo = e
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if scale[i] { x * k } else { x })
                    .collect();
                (e2, c.clone())
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            shift,
            terms,
        }
    }

    /// Substitutes variable `v` by the monomial `c * prod x_j^{exps[j]}`
    /// (over the same variable set). `c` must be nonzero.
    pub fn subst_monomial(&self, v: usize, c: &Rat, exps: &[i64]) -> Result<Self> {
        if c.is_zero() {
            return Err(EngineError::InvalidParam(
                "monomial substitution requires a nonzero coefficient".into(),
            ));
        }
        assert_eq!(exps.len(), self.vars.len());
        let mut wide: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, coeff) in self.iter_terms() {
            let ev = e[v];
            let mut e2 = e;
            e2[v] = 0;
            for (x, ie) in e2.iter_mut().zip(exps) {
                *x += ev * ie;
            }
            let c2 = if ev != 0 {
                coeff * rat_pow(c, ev)
            } else {
                coeff.clone()
            };
            match wide.entry(e2) {
                Entry::Vacant(slot) => {
                    slot.insert(c2);
                }
                Entry::Occupied(mut o) => {
                    let s = o.get() + &c2;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Ok(Self::from_wide(self.vars.clone(), wide))
    }

    /// Maps this polynomial into `target`, sending variable i to the
    /// monomial `images[i] = (coeff, exponents-in-target)`.
    pub fn map_vars(&self, target: &VarSet, images: &[(Rat, Vec<i64>)]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let mut wide: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in self.iter_terms() {
            let mut coeff = c.clone();
            let mut exps = vec![0i64; target.len()];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let (ic, iexps) = &images[i];
                coeff = coeff * rat_pow(ic, ei);
                for (x, ie) in exps.iter_mut().zip(iexps) {
                    *x += ei * ie;
                }
            }
            match wide.entry(exps) {
                Entry::Vacant(slot) => {
                    slot.insert(coeff);
                }
                Entry::Occupied(mut o) => {
                    let s = o.get() + &coeff;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        Self::from_wide(target.clone(), wide)
    }

    /// Embeds into a superset variable set, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Self {
        let images: Vec<(Rat, Vec<i64>)> = (0..self.vars.len())
            .map(|i| {
                let j = target
                    .index(self.vars.name(i))
                    .unwrap_or_else(|| panic!("variable {} missing in target", self.vars.name(i)));
                let mut e = vec![0i64; target.len()];
                e[j] = 1;
                (Rat::one(), e)
            })
            .collect();
        self.map_vars(target, &images)
    }

    /// Evaluates at a rational point. Errors if a negative exponent meets
    /// a zero coordinate.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        'term: for (e, c) in self.iter_terms() {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if point[i].is_zero() {
                    if ei > 0 {
                        continue 'term;
                    }
                    return Err(EngineError::EvalDenominatorZero);
                }
                t = t * rat_pow(&point[i], ei);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// The coefficient of `var^power`, a polynomial in the other variables.
    pub fn coeff_of(&self, v: usize, power: i64) -> Self {
        let wide: BTreeMap<Vec<i64>, Rat> = self
            .iter_terms()
            .filter(|(e, _)| e[v] == power)
            .map(|(mut e, c)| {
                e[v] = 0;
                (e, c.clone())
            })
            .collect();
        Self::from_wide(self.vars.clone(), wide)
    }

    /// All `var`-exponents present with nonzero coefficient, ascending.
    pub fn var_support(&self, v: usize) -> Vec<i64> {
        let mut set: Vec<i64> = self
            .terms
            .keys()
            .map(|e| self.shift[v] + e[v] as i64)
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    pub fn derivative(&self, v: usize) -> Self {
        let wide: BTreeMap<Vec<i64>, Rat> = self
            .iter_terms()
            .filter(|(e, _)| e[v] != 0)
            .map(|(mut e, c)| {
                let ev = e[v];
                e[v] -= 1;
                (e, c * rat_int(ev))
            })
            .collect();
        Self::from_wide(self.vars.clone(), wide)
    }

    /// Applies the sign flip x -> -x for every listed variable.
    pub fn flip_signs(&self, vars: &[usize]) -> Self {
        let terms: TermMap = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut par = 0i64;
                for &v in vars {
                    par += self.shift[v] + e[v] as i64;
                }
                let c2 = if par.rem_euclid(2) == 1 { -c } else { c.clone() };
                (e.clone(), c2)
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            shift: self.shift.clone(),
            terms,
        }
    }

    /// True iff every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.denom().is_one() && !c.is_negative())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// True iff no exponent of any variable is negative.
    pub fn is_polynomial(&self) -> bool {
        self.shift.iter().all(|&s| s >= 0)
    }

    /// Laurent-exact division: Some(q) with self = q * d, treating
    /// monomials as units.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        self.check_vars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        if self.terms.len() < d.terms.len() {
            return None;
        }
        // quick reject on per-variable degree spans
        for v in 0..self.vars.len() {
            let sn = self.terms.keys().map(|e| e[v]).max().unwrap();
            let sd = d.terms.keys().map(|e| e[v]).max().unwrap();
            if sd > sn {
                return None;
            }
        }
        let q = div_maps(&self.terms, &d.terms)?;
        let shift: Vec<i64> = self
            .shift
            .iter()
            .zip(&d.shift)
            .map(|(a, b)| a - b)
            .collect();
        Some(Self::from_raw(self.vars.clone(), shift, q))
    }

    /// GCD of the polynomial parts, ignoring monomial units; the result is
    /// unit-normalized (integer-primitive, positive leading coefficient,
    /// zero shift).
    pub fn gcd(&self, other: &Self) -> Self {
        self.check_vars(other);
        if self.is_zero() {
            return other.unit_decompose().2;
        }
        if other.is_zero() {
            return self.unit_decompose().2;
        }
        let g = gcd_maps(&self.terms, &other.terms, self.vars.len());
        let raw = Self::from_raw(self.vars.clone(), vec![0; self.vars.len()], g);
        raw.unit_decompose().2
    }

    /// Splits into (scalar, monomial shift, unit-normalized polynomial):
    /// self = scalar * x^shift * P with P integer-primitive, content-free
    /// and positive leading coefficient. Zero decomposes as (0, 0, 0).
    pub fn unit_decompose(&self) -> (Rat, Vec<i64>, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), vec![0; self.vars.len()], self.clone());
        }
        let mut c = map_rational_content(&self.terms);
        let lead = self.terms.iter().next_back().unwrap().1;
        if lead.is_negative() {
            c = -c;
        }
        let terms: TermMap = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v / &c))
            .collect();
        let p = MPoly {
            vars: self.vars.clone(),
            shift: vec![0; self.vars.len()],
            terms,
        };
        (c, self.shift.clone(), p)
    }
}

/// gcd of numerators / lcm of denominators, always positive.
fn map_rational_content(m: &TermMap) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in m.values() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        num = BigInt::one();
    }
    Rat::new(num, den)
}

/// Exact polynomial division on natural-exponent term maps; None if the
/// division is not exact. Plain lexicographic exponent order; a per-variable
/// quotient degree bound guarantees termination on inexact inputs.
fn div_maps(n: &TermMap, d: &TermMap) -> Option<TermMap> {
    let nvars = n.keys().next().map(|e| e.len()).unwrap_or(0);
    let mut bound = vec![0u32; nvars];
    for v in 0..nvars {
        let dn = deg_in(n, v);
        let dd = deg_in(d, v);
        if dd > dn {
            return None;
        }
        bound[v] = dn - dd;
    }
    let (dl, dc) = {
        let (k, v) = d.iter().next_back().unwrap();
        (k.clone(), v.clone())
    };
    let mut rem = n.clone();
    let mut q = TermMap::new();
    while !rem.is_empty() {
        let (rl, rc) = {
            let (k, v) = rem.iter().next_back().unwrap();
            (k.clone(), v.clone())
        };
        let mut e = Vec::with_capacity(rl.len());
        for (i, (&a, &b)) in rl.iter().zip(&dl).enumerate() {
            if a < b || a - b > bound[i] {
                return None;
            }
            e.push(a - b);
        }
        let c = &rc / &dc;
        for (de, dv) in d {
            let k: Expo = de.iter().zip(&e).map(|(&x, &y)| x + y).collect();
            map_add_term(&mut rem, k, -(dv * &c));
        }
        q.insert(e, c);
    }
    Some(q)
}

fn map_is_constant(m: &TermMap) -> bool {
    m.len() == 1 && m.keys().next().unwrap().iter().all(|&x| x == 0)
}

fn map_one(nvars: usize) -> TermMap {
    let mut one = TermMap::new();
    one.insert(vec![0; nvars], Rat::one());
    one
}

fn strip_content(m: &TermMap, nvars: usize) -> TermMap {
    let mut min = vec![u32::MAX; nvars];
    for e in m.keys() {
        for (mm, &x) in min.iter_mut().zip(e) {
            *mm = (*mm).min(x);
        }
    }
    if min.iter().all(|&x| x == 0) {
        return m.clone();
    }
    m.iter()
        .map(|(e, c)| {
            let e2: Expo = e.iter().zip(&min).map(|(&x, &mm)| x - mm).collect();
            (e2, c.clone())
        })
        .collect()
}

/// Multivariate GCD by recursive content / primitive-part reduction with a
/// primitive pseudo-remainder sequence in a selected main variable.
fn gcd_maps(a: &TermMap, b: &TermMap, nvars: usize) -> TermMap {
    let a = strip_content(a, nvars);
    let b = strip_content(b, nvars);
    if map_is_constant(&a) || map_is_constant(&b) {
        return map_one(nvars);
    }
    let mut main = None;
    let mut best = u32::MAX;
    for v in 0..nvars {
        let da = deg_in(&a, v);
        let db = deg_in(&b, v);
        if da > 0 && db > 0 {
            let m = da.max(db);
            if m < best {
                best = m;
                main = Some(v);
            }
        } else if da != db {
            // only one side involves v, so the gcd cannot: recurse on its
            // content with respect to v
            let (with_v, without) = if da > 0 { (&a, &b) } else { (&b, &a) };
            let content = poly_content_in(with_v, v, nvars);
            return gcd_maps(&content, without, nvars);
        }
    }
    let Some(v) = main else {
        return map_one(nvars);
    };

    let ca = poly_content_in(&a, v, nvars);
    let cb = poly_content_in(&b, v, nvars);
    let gc = gcd_maps(&ca, &cb, nvars);
    let pa = div_maps(&a, &ca).expect("content divides");
    let pb = div_maps(&b, &cb).expect("content divides");

    let (mut f, mut g) = if deg_in(&pa, v) >= deg_in(&pb, v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = prem(&f, &g, v, nvars);
        if r.is_empty() {
            break;
        }
        let rc = poly_content_in(&r, v, nvars);
        let rp = div_maps(&r, &rc).expect("content divides");
        if deg_in(&rp, v) == 0 {
            return gc;
        }
        f = g;
        g = rp;
    }
    let cg = poly_content_in(&g, v, nvars);
    let gp = div_maps(&g, &cg).expect("content divides");
    mul_maps(&gc, &gp)
}

fn deg_in(m: &TermMap, v: usize) -> u32 {
    m.keys().map(|e| e[v]).max().unwrap_or(0)
}

/// Leading coefficient as a map in the remaining variables, v-exponent zeroed.
fn lead_coeff_in(m: &TermMap, v: usize) -> TermMap {
    let d = deg_in(m, v);
    m.iter()
        .filter(|(e, _)| e[v] == d)
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[v] = 0;
            (e2, c.clone())
        })
        .collect()
}

/// GCD of the main-variable coefficient polynomials.
fn poly_content_in(m: &TermMap, v: usize, nvars: usize) -> TermMap {
    let mut coeffs: BTreeMap<u32, TermMap> = BTreeMap::new();
    for (e, c) in m {
        let mut e2 = e.clone();
        e2[v] = 0;
        coeffs.entry(e[v]).or_default().insert(e2, c.clone());
    }
    let mut it = coeffs.into_values();
    let mut g = it.next().unwrap();
    for c in it {
        if map_is_constant(&g) {
            break;
        }
        g = gcd_maps(&g, &c, nvars);
    }
    strip_content(&g, nvars)
}

fn mul_maps(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Expo = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
            map_add_term(&mut out, e, ca * cb);
        }
    }
    out
}

fn sub_maps(a: TermMap, b: &TermMap) -> TermMap {
    let mut out = a;
    for (e, c) in b {
        map_add_term(&mut out, e.clone(), -c);
    }
    out
}

/// Pseudo-remainder of f by g in variable v.
fn prem(f: &TermMap, g: &TermMap, v: usize, nvars: usize) -> TermMap {
    let dg = deg_in(g, v);
    let lg = lead_coeff_in(g, v);
    let mut r = f.clone();
    while !r.is_empty() {
        let dr = deg_in(&r, v);
        if dr < dg {
            break;
        }
        let lr = lead_coeff_in(&r, v);
        let mut xe = vec![0u32; nvars];
        xe[v] = dr - dg;
        let mut xmap = TermMap::new();
        xmap.insert(xe, Rat::one());
        let lr_shift = mul_maps(&lr, &xmap);
        r = sub_maps(mul_maps(&lg, &r), &mul_maps(&lr_shift, g));
    }
    r
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.shift == other.shift && self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shift
            .cmp(&other.shift)
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_ref(rhs)
    }
}
impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.sub_ref(rhs)
    }
}
impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_ref(rhs)
    }
}
impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::ring::text::poly_to_text(self))
    }
}
