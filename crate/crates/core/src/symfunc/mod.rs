//! Truncated symmetric functions: the five classical bases, conversions,
//! inner products, plethysm, Exp/Log, and the substitution homomorphisms.

pub mod inner;
pub mod pleth;
pub mod tables;
pub mod tensor;
pub mod tseries;

pub use inner::{inner_hall, inner_macdonald, inner_star, star_weight, QtParams};
pub use pleth::{gamma_minus, gamma_plus, omega_involution, plethysm_scalar, plethysm_sym, upsilon, PlethArg};
pub use tensor::TensorSymFunc;
pub use tseries::{geometric_t, moebius, pleth_exp, pleth_log, Coeff, TruncSeries};

use std::collections::BTreeMap;
use num::Zero;
use std::fmt;

use crate::error::{EngineError, Result};
use crate::partitions::Partition;
use crate::ring::{EqMode, MPoly, Rat, RatFunc, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    P,
    M,
    H,
    E,
    S,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::M => "m",
            Basis::H => "h",
            Basis::E => "e",
            Basis::S => "s",
        }
    }

    pub fn from_tag(s: &str) -> Result<Basis> {
        Ok(match s {
            "p" => Basis::P,
            "m" => Basis::M,
            "h" => Basis::H,
            "e" => Basis::E,
            "s" => Basis::S,
            other => return Err(EngineError::Parse(format!("unknown basis {other:?}"))),
        })
    }
}

/// Basis-tagged, degree-truncated symmetric function with rational-function
/// coefficients. Homogeneous components above the bound are absent by
/// contract; products silently truncate.
#[derive(Clone, Debug)]
pub struct SymFunc {
    vars: VarSet,
    alphabet: u32,
    basis: Basis,
    bound: u32,
    terms: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    pub fn zero(vars: &VarSet, basis: Basis, bound: u32) -> Self {
        SymFunc {
            vars: vars.clone(),
            alphabet: 0,
            basis,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet, basis: Basis, bound: u32) -> Self {
        let mut f = Self::zero(vars, basis, bound);
        f.terms.insert(Partition::empty(), RatFunc::one(vars));
        f
    }

    pub fn term(vars: &VarSet, basis: Basis, bound: u32, mu: Partition, c: RatFunc) -> Self {
        let mut f = Self::zero(vars, basis, bound);
        if !c.is_zero() && mu.size() <= bound {
            f.terms.insert(mu, c);
        }
        f
    }

    /// p_k as a p-basis element.
    pub fn power_sum(vars: &VarSet, bound: u32, k: u32) -> Self {
        Self::term(vars, Basis::P, bound, Partition::row(k), RatFunc::one(vars))
    }

    pub fn with_alphabet(mut self, alphabet: u32) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> RatFunc {
        self.terms
            .get(mu)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.size()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mu: Partition, c: RatFunc) {
        if c.is_zero() || mu.size() > self.bound {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch in add");
        let mut out = self.clone();
        out.bound = self.bound.min(other.bound);
        out.terms.retain(|m, _| m.size() <= out.bound);
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars, self.basis, self.bound);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul_ref(c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(&RatFunc::constant(&self.vars, c.clone()))
    }

    pub fn scale_poly(&self, c: &MPoly) -> Self {
        self.scale(&RatFunc::from_poly(c.clone()))
    }

    /// Product; both factors are converted to the power-sum basis, where
    /// multiplication is multiset union of indices. Truncates at the bound.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let a = self.to_p();
        let b = other.to_p();
        let bound = a.bound.min(b.bound);
        let mut out = Self::zero(&self.vars, Basis::P, bound);
        out.alphabet = self.alphabet;
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if ma.size() + mb.size() > bound {
                    continue;
                }
                out.add_term(ma.union(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn to_p(&self) -> Self {
        self.convert(Basis::P)
    }

    pub fn convert(&self, to: Basis) -> Self {
        if self.basis == to {
            return self.clone();
        }
        // route through p
        let in_p = if self.basis == Basis::P {
            self.clone()
        } else {
            self.apply_tables(|t| match self.basis {
                Basis::M => &t.m_to_p,
                Basis::H => &t.h_to_p,
                Basis::E => &t.e_to_p,
                Basis::S => &t.s_to_p,
                Basis::P => unreachable!(),
            })
            .with_basis(Basis::P)
        };
        if to == Basis::P {
            return in_p;
        }
        in_p.apply_tables(|t| match to {
            Basis::M => &t.p_to_m,
            Basis::H => &t.p_to_h,
            Basis::E => &t.p_to_e,
            Basis::S => &t.p_to_s,
            Basis::P => unreachable!(),
        })
        .with_basis(to)
    }

    fn with_basis(mut self, b: Basis) -> Self {
        self.basis = b;
        self
    }

    fn apply_tables<'a, F>(&self, pick: F) -> Self
    where
        F: for<'t> Fn(&'t tables::DegreeTables) -> &'t Vec<Vec<Rat>>,
    {
        let mut out = Self::zero(&self.vars, self.basis, self.bound);
        out.alphabet = self.alphabet;
        for (mu, c) in &self.terms {
            let t = tables::tables(mu.size());
            let row = &pick(&t)[t.index[mu]];
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                out.add_term(t.parts[j].clone(), c.mul_rat(entry));
            }
        }
        out
    }

    /// The homogeneous component of degree d.
    pub fn degree_component(&self, d: u32) -> Self {
        let mut out = Self::zero(&self.vars, self.basis, self.bound);
        out.alphabet = self.alphabet;
        for (mu, c) in &self.terms {
            if mu.size() == d {
                out.terms.insert(mu.clone(), c.clone());
            }
        }
        out
    }

    /// Adams map on the whole ring: indices scale by k and coefficients get
    /// the variable Adams map.
    pub fn adams_full(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.vars, self.basis, self.bound);
        out.alphabet = self.alphabet;
        assert_eq!(self.basis, Basis::P, "adams acts diagonally in the p basis");
        for (mu, c) in &self.terms {
            let scaled = mu.scale(k);
            if scaled.size() > self.bound {
                continue;
            }
            out.terms.insert(scaled, c.adams(k));
        }
        out
    }

    pub fn map_coeffs<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> Self {
        let mut out = Self::zero(&self.vars, self.basis, self.bound);
        out.alphabet = self.alphabet;
        for (mu, c) in &self.terms {
            let c2 = f(c);
            if !c2.is_zero() {
                out.terms.insert(mu.clone(), c2);
            }
        }
        out
    }

    /// Embeds every coefficient into a superset variable set.
    pub fn embed_coeffs(&self, target: &VarSet) -> SymFunc {
        let mut out = SymFunc {
            vars: target.clone(),
            alphabet: self.alphabet,
            basis: self.basis,
            bound: self.bound,
            terms: BTreeMap::new(),
        };
        for (mu, c) in &self.terms {
            out.terms.insert(mu.clone(), c.embed(target));
        }
        out
    }

    pub fn try_map_coeffs<F: Fn(&RatFunc) -> Result<RatFunc>>(&self, f: F) -> Result<Self> {
        let mut out = Self::zero(&self.vars, self.basis, self.bound);
        out.alphabet = self.alphabet;
        for (mu, c) in &self.terms {
            let c2 = f(c)?;
            if !c2.is_zero() {
                out.terms.insert(mu.clone(), c2);
            }
        }
        Ok(out)
    }

    /// Moves the coefficients into another variable set via monomial images.
    pub fn map_vars(&self, target: &VarSet, images: &[(Rat, Vec<i64>)]) -> Result<Self> {
        let mut out = SymFunc {
            vars: target.clone(),
            alphabet: self.alphabet,
            basis: self.basis,
            bound: self.bound,
            terms: BTreeMap::new(),
        };
        for (mu, c) in &self.terms {
            let c2 = c.map_vars(target, images)?;
            if !c2.is_zero() {
                out.terms.insert(mu.clone(), c2);
            }
        }
        Ok(out)
    }

    pub fn equals(&self, other: &Self, mode: EqMode) -> bool {
        let a = self.to_p();
        let b = other.to_p();
        let keys: std::collections::BTreeSet<&Partition> =
            a.terms.keys().chain(b.terms.keys()).collect();
        for mu in keys {
            let ca = a.coeff(mu);
            let cb = b.coeff(mu);
            if !mode.equal(&ca, &cb) {
                return false;
            }
        }
        true
    }

    /// Serialization: basis tag, then (partition, coefficient) pairs in
    /// reverse-lex partition order.
    pub fn to_text(&self) -> String {
        let mut out = format!("basis {}", self.basis.tag());
        for (mu, c) in &self.terms {
            out.push_str(&format!(
                "; {} : {}",
                mu,
                crate::ring::text::ratfunc_to_text(c)
            ));
        }
        out
    }

    pub fn from_text(vars: &VarSet, bound: u32, s: &str) -> Result<Self> {
        let mut pieces = s.split(';');
        let head = pieces
            .next()
            .ok_or_else(|| EngineError::Parse("empty symfunc".into()))?
            .trim();
        let tag = head
            .strip_prefix("basis ")
            .ok_or_else(|| EngineError::Parse(format!("expected 'basis <tag>', got {head:?}")))?;
        let basis = Basis::from_tag(tag.trim())?;
        let mut f = Self::zero(vars, basis, bound);
        for piece in pieces {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (mu_s, c_s) = piece
                .split_once(':')
                .ok_or_else(|| EngineError::Parse(format!("expected 'mu : coeff' in {piece:?}")))?;
            let mu = Partition::parse(mu_s.trim())?;
            let c = crate::ring::text::ratfunc_from_text(vars, c_s.trim())?;
            f.add_term(mu, c);
        }
        Ok(f)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::ring::{lambda_eval, rat, rat_int, text};

    fn qt() -> VarSet {
        VarSet::new(&["q", "t"])
    }

    fn pp(vars: &VarSet, s: &str) -> MPoly {
        text::poly_from_text(vars, s).unwrap()
    }

    fn rf(vars: &VarSet, s: &str) -> RatFunc {
        text::ratfunc_from_text(vars, s).unwrap()
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    #[test]
    fn conversion_examples() {
        let vs = qt();
        // p_(1,1) in m basis: m_(2) + 2 m_(1,1)
        let p11 = SymFunc::term(&vs, Basis::P, 4, part(&[1, 1]), RatFunc::one(&vs));
        let m = p11.convert(Basis::M);
        assert!(m.coeff(&part(&[2])).equals_exact(&rf(&vs, "1")));
        assert!(m.coeff(&part(&[1, 1])).equals_exact(&rf(&vs, "2")));
        // degree-one elements all agree
        for b in [Basis::M, Basis::H, Basis::E, Basis::S] {
            let f = SymFunc::term(&vs, b, 4, part(&[1]), RatFunc::one(&vs));
            let p = f.to_p();
            assert!(p.coeff(&part(&[1])).equals_exact(&rf(&vs, "1")));
            assert_eq!(p.terms().count(), 1);
        }
        // h_(2) in p basis: 1/2 p_(1,1) + 1/2 p_(2)
        let h2 = SymFunc::term(&vs, Basis::H, 4, part(&[2]), RatFunc::one(&vs)).to_p();
        assert!(h2.coeff(&part(&[1, 1])).equals_exact(&rf(&vs, "1/2")));
        assert!(h2.coeff(&part(&[2])).equals_exact(&rf(&vs, "1/2")));
        // round trips
        for n in 1..=5u32 {
            for mu in Partition::enumerate(n) {
                let f = SymFunc::term(&vs, Basis::S, 6, mu.clone(), RatFunc::one(&vs));
                let back = f.to_p().convert(Basis::S);
                assert!(back.coeff(&mu).equals_exact(&rf(&vs, "1")), "s round trip {mu}");
                assert_eq!(back.terms().count(), 1);
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let vs = qt();
        let qtp = QtParams::plain(&vs);
        let h11 = SymFunc::term(&vs, Basis::H, 4, part(&[1, 1]), RatFunc::one(&vs));
        let m11 = SymFunc::term(&vs, Basis::M, 4, part(&[1, 1]), RatFunc::one(&vs));
        assert!(inner_hall(&h11, &m11).unwrap().equals_exact(&rf(&vs, "1")));
        let p2 = SymFunc::power_sum(&vs, 4, 2);
        assert!(inner_hall(&p2, &p2).unwrap().equals_exact(&rf(&vs, "2")));
        let p1 = SymFunc::power_sum(&vs, 4, 1);
        let star = inner_star(&p1, &p1, &qtp).unwrap();
        let expect = rf(&vs, "-1 + q + t - q*t");
        assert!(star.equals_exact(&expect));
        // orthogonality of h/m duality at degree <= 4
        for n in 1..=4u32 {
            for a in Partition::enumerate(n) {
                for b in Partition::enumerate(n) {
                    let h = SymFunc::term(&vs, Basis::H, 6, a.clone(), RatFunc::one(&vs));
                    let m = SymFunc::term(&vs, Basis::M, 6, b.clone(), RatFunc::one(&vs));
                    let v = inner_hall(&h, &m).unwrap();
                    let want = if a == b { rf(&vs, "1") } else { rf(&vs, "0") };
                    assert!(v.equals_exact(&want), "failed at {a},{b}");
                }
            }
        }
    }

    #[test]
    fn star_matches_plethystic_forms() {
        // (f,g)_* = (f, Upsilon_{-M} g) = (Upsilon_{1-t} f, Upsilon_{t-1} g)_{q,t}
        let vs = qt();
        let qtp = QtParams::plain(&vs);
        let neg_m = PlethArg::Expr(rf(&vs, "-1 + q + t - q*t"));
        let a_1mt = PlethArg::Expr(rf(&vs, "1 - t"));
        let a_tm1 = PlethArg::Expr(rf(&vs, "t - 1"));
        let mut k = 0u64;
        for n in 1..=4u32 {
            for a in Partition::enumerate(n) {
                for b in Partition::enumerate(n) {
                    k += 1;
                    if k % 3 != 0 {
                        continue; // thin the grid, the full set runs in acceptance
                    }
                    let f = SymFunc::term(&vs, Basis::P, 6, a.clone(), RatFunc::one(&vs));
                    let g = SymFunc::term(&vs, Basis::P, 6, b.clone(), RatFunc::one(&vs));
                    let lhs = inner_star(&f, &g, &qtp).unwrap();
                    let r1 = inner_hall(&f, &upsilon(&neg_m, &g)).unwrap();
                    let r2 = inner_macdonald(&upsilon(&a_1mt, &f), &upsilon(&a_tm1, &g), &qtp)
                        .unwrap();
                    assert!(lhs.equals_exact(&r1), "hall form at {a},{b}");
                    assert!(lhs.equals_exact(&r2), "macdonald form at {a},{b}");
                }
            }
        }
    }

    #[test]
    fn plethysm_examples() {
        let vs = qt();
        // p_2[q + t] = q^2 + t^2
        let p2 = SymFunc::power_sum(&vs, 4, 2);
        let a = PlethArg::from_poly(pp(&vs, "q + t"));
        assert!(plethysm_scalar(&p2, &a).equals_exact(&rf(&vs, "q^2 + t^2")));
        // e_i[A] = lambda^i(A): compare against the T-expansion of the product
        // prod (1 - T m) = sum (-T)^i e_i[A] for A = q + 2t
        let tvs = VarSet::new(&["q", "t", "T"]);
        let a_poly = pp(&tvs, "q + 2*t");
        let tvar = MPoly::var(&tvs, 2);
        let prod = lambda_eval(&a_poly, Some(&tvar)).unwrap();
        let witness = prod.is_laurent_polynomial().unwrap();
        let arg = PlethArg::from_poly(a_poly);
        for i in 0..=3u32 {
            let ei = SymFunc::term(&tvs, Basis::E, 4, Partition::row(i), RatFunc::one(&tvs));
            let val = plethysm_scalar(&ei, &arg);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let from_prod = RatFunc::from_poly(witness.coeff_of(2, i as i64)).mul_rat(&rat_int(sign));
            assert!(val.equals_exact(&from_prod), "e_{i}[A] vs lambda^{i}(A)");
        }
        // f[x1+...+xn] = f(x1,...,xn) for f = h_2, n = 3
        let xs = VarSet::new(&["x1", "x2", "x3"]);
        let alph = PlethArg::from_poly(pp(&xs, "x1 + x2 + x3"));
        let h2 = SymFunc::term(&xs, Basis::H, 4, part(&[2]), RatFunc::one(&xs));
        let got = plethysm_scalar(&h2, &alph);
        let expect = rf(&xs, "x1^2+x2^2+x3^2+x1*x2+x1*x3+x2*x3");
        assert!(got.equals_exact(&expect));
    }

    #[test]
    fn gamma_and_upsilon_basics() {
        let vs = qt();
        let one = RatFunc::one(&vs);
        let a = PlethArg::Expr(rf(&vs, "q + t^2"));
        let p1 = SymFunc::power_sum(&vs, 5, 1);
        let shifted = gamma_plus(&one, &a, &p1);
        assert!(shifted.coeff(&Partition::empty()).equals_exact(&rf(&vs, "q + t^2")));
        assert!(shifted.coeff(&part(&[1])).equals_exact(&rf(&vs, "1")));
        // on constants, gamma_plus is the identity
        let c = SymFunc::one(&vs, Basis::P, 5);
        assert!(gamma_plus(&one, &a, &c).equals(&c, crate::ring::EqMode::Exact));
        // gamma_minus with m = 0 is the identity
        let zero = RatFunc::zero(&vs);
        let f = SymFunc::term(&vs, Basis::P, 5, part(&[2, 1]), rf(&vs, "q"));
        assert!(gamma_minus(&zero, &a, &f).equals(&f, crate::ring::EqMode::Exact));
        // upsilon(x, p_k) = x^k p_k with x = q here; upsilon(1, f) = f
        let x = PlethArg::Expr(rf(&vs, "q"));
        for k in 1..=4u32 {
            let pk = SymFunc::power_sum(&vs, 5, k);
            let got = upsilon(&x, &pk);
            assert!(got
                .coeff(&Partition::row(k))
                .equals_exact(&RatFunc::from_poly(pp(&vs, &format!("q^{k}")))));
        }
        let onearg = PlethArg::Expr(RatFunc::one(&vs));
        assert!(upsilon(&onearg, &f).equals(&f, crate::ring::EqMode::Exact));
        // omega(h_n) = e_n for n <= 6
        for n in 1..=6u32 {
            let h = SymFunc::term(&vs, Basis::H, 6, Partition::row(n), RatFunc::one(&vs));
            let e = SymFunc::term(&vs, Basis::E, 6, Partition::row(n), RatFunc::one(&vs));
            assert!(omega_involution(&h).equals(&e.to_p(), crate::ring::EqMode::Exact));
        }
    }

    #[test]
    fn gamma_adjoint_identity() {
        // (Gamma_plus(A) f, g) = (f, Exp(AX) g) for the Hall pairing
        let vs = qt();
        let one = RatFunc::one(&vs);
        let a = PlethArg::Expr(rf(&vs, "q - 2*t"));
        for fa in Partition::enumerate(3) {
            for gb in Partition::enumerate(2) {
                let f = SymFunc::term(&vs, Basis::P, 5, fa.clone(), RatFunc::one(&vs));
                let g = SymFunc::term(&vs, Basis::P, 5, gb.clone(), RatFunc::one(&vs));
                let lhs = inner_hall(&gamma_plus(&one, &a, &f), &g).unwrap();
                let rhs = inner_hall(&f, &gamma_minus(&one, &a, &g)).unwrap();
                assert!(lhs.equals_exact(&rhs), "adjoint at {fa},{gb}");
            }
        }
    }

    #[test]
    fn vocr_commutation() {
        // Gamma_plus(A) Gamma_minus(B) = Exp(AB) Gamma_minus(B) Gamma_plus(A).
        // Both sides are infinite sums; grading the Gamma_minus argument by a
        // formal parameter (B -> TB) turns the identity into one finite exact
        // equation per T-order, which is what gets checked.
        let vs = qt();
        for (a_s, b_s) in [("q", "t + q*t"), ("q^-1", "t"), ("1 - q*t", "q^2")] {
            check_vocr_graded(&vs, &rf(&vs, a_s), &rf(&vs, b_s), 4, 4);
        }
    }

    fn check_vocr_graded(vs: &VarSet, a_r: &RatFunc, b_r: &RatFunc, n_max: u32, j_max: u32) {
        let one = RatFunc::one(vs);
        let a = PlethArg::Expr(a_r.clone());
        let b = PlethArg::Expr(b_r.clone());
        let bound = n_max + j_max;
        // T-order j component of Gamma_minus(TB): multiplication by the
        // degree-j part of Exp(BX)
        let e_full = pleth::exp_alphabet(&one, &b, vs, bound);
        let e_j: Vec<SymFunc> = (0..=j_max).map(|j| e_full.degree_component(j)).collect();
        // T-expansion of the scalar Exp(T * AB)
        let mut arg = TruncSeries::zero(j_max, &RatFunc::zero(vs));
        arg.set_coeff(1, a_r.mul_ref(b_r));
        let exp_ab = pleth_exp(&arg).unwrap();
        for n in 0..=n_max {
            for mu in Partition::enumerate(n) {
                let f = SymFunc::term(vs, Basis::P, bound, mu.clone(), RatFunc::one(vs));
                let gf = gamma_plus(&one, &a, &f);
                for j in 0..=j_max {
                    let lhs = gamma_plus(&one, &a, &e_j[j as usize].mul_ref(&f));
                    let mut rhs = SymFunc::zero(vs, Basis::P, bound);
                    for aa in 0..=j {
                        let scalar = exp_ab.coeff(aa);
                        if scalar.is_zero() {
                            continue;
                        }
                        let part = e_j[(j - aa) as usize].mul_ref(&gf).scale(scalar);
                        rhs = rhs.add_ref(&part);
                    }
                    assert!(
                        lhs.equals(&rhs, crate::ring::EqMode::Exact),
                        "vocr at {mu}, T-order {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn vocr0_geometric_example() {
        // Gamma_plus(x^-1) Gamma_minus(y) = (1 - y x^-1)^-1 Gamma_minus(y)
        // Gamma_plus(x^-1): the scalar expands as the geometric series in the
        // grading parameter, coefficient y^j x^-j at order j.
        let vs = VarSet::new(&["x", "y"]);
        check_vocr_graded(&vs, &rf(&vs, "x^-1"), &rf(&vs, "y"), 3, 5);
        // and the T-expansion of Exp(T y/x) really is the geometric series
        let mut arg = TruncSeries::zero(5, &RatFunc::zero(&vs));
        arg.set_coeff(1, rf(&vs, "y*x^-1"));
        let e = pleth_exp(&arg).unwrap();
        for j in 0..=5u32 {
            let expect = rf(&vs, &format!("y^{j}*x^-{j}"));
            assert!(e.coeff(j).equals_exact(&expect), "geometric at order {j}");
        }
    }

    #[test]
    fn upscr_relations() {
        let vs = qt();
        let one = RatFunc::one(&vs);
        let a_r = rf(&vs, "q*t");
        let b_r = rf(&vs, "t");
        let a = PlethArg::Expr(a_r.clone());
        let b = PlethArg::Expr(b_r.clone());
        let ab = PlethArg::Expr(a_r.mul_ref(&b_r));
        for n in 0..=4u32 {
            for mu in Partition::enumerate(n) {
                let f = SymFunc::term(&vs, Basis::P, 5, mu.clone(), RatFunc::one(&vs));
                // Gamma_plus(B) Upsilon_A = Upsilon_A Gamma_plus(AB)
                let l1 = gamma_plus(&one, &b, &upsilon(&a, &f));
                let r1 = upsilon(&a, &gamma_plus(&one, &ab, &f));
                assert!(l1.equals(&r1, crate::ring::EqMode::Exact), "upscr+ at {mu}");
                // Upsilon_A Gamma_minus(B) = Gamma_minus(AB) Upsilon_A
                let l2 = upsilon(&a, &gamma_minus(&one, &b, &f));
                let r2 = gamma_minus(&one, &ab, &upsilon(&a, &f));
                assert!(l2.equals(&r2, crate::ring::EqMode::Exact), "upscr- at {mu}");
                // Upsilon_A Upsilon_B = Upsilon_{AB}
                let l3 = upsilon(&a, &upsilon(&b, &f));
                let r3 = upsilon(&ab, &f);
                assert!(l3.equals(&r3, crate::ring::EqMode::Exact), "upscr. at {mu}");
            }
        }
    }

    #[test]
    fn exp_log_basics() {
        let vs = qt();
        let zero = RatFunc::zero(&vs);
        // Log(1/(1-T)) = T: 1/(1-T) has all coefficients 1
        let mut f = TruncSeries::zero(8, &zero);
        for n in 0..=8u32 {
            f.set_coeff(n, RatFunc::one(&vs));
        }
        let l = pleth_log(&f).unwrap();
        assert!(l.coeff(1).is_one());
        for n in 2..=8u32 {
            assert!(l.coeff(n).is_zero(), "Log(1/(1-T)) at T^{n}");
        }
        // Exp(T/(1-T)) coefficients count partitions
        let e = pleth_exp(&geometric_t(10, &zero)).unwrap();
        for n in 0..=10u32 {
            let c = e.coeff(n).as_constant().unwrap();
            assert_eq!(c, rat_int(Partition::count(n) as i64), "p({n})");
        }
        // Exp(0) = 1
        let e0 = pleth_exp(&TruncSeries::zero(5, &zero)).unwrap();
        assert!(e0.coeff(0).is_one());
        for n in 1..=5u32 {
            assert!(e0.coeff(n).is_zero());
        }
        // Log . Exp = id on a rational-function series
        let mut a = TruncSeries::zero(6, &zero);
        a.set_coeff(1, rf(&vs, "q"));
        a.set_coeff(2, rf(&vs, "(1-q)/(1-t)"));
        a.set_coeff(3, rf(&vs, "t^-2"));
        let back = pleth_log(&pleth_exp(&a).unwrap()).unwrap();
        for n in 0..=6u32 {
            assert!(back.coeff(n).equals_exact(a.coeff(n)), "roundtrip T^{n}");
        }
    }

    #[test]
    fn exp_of_alphabet_is_complete_homogeneous() {
        // Exp(TX) = sum T^n h_n
        let vs = qt();
        let bound = 6u32;
        let proto = TensorSymFunc::zero(&vs, 1, bound);
        let mut a = TruncSeries::zero(bound, &proto);
        let mut x = TensorSymFunc::zero(&vs, 1, bound);
        x.add_term(vec![part(&[1])], RatFunc::one(&vs));
        a.set_coeff(1, x);
        let e = pleth_exp(&a).unwrap();
        for n in 1..=bound {
            let t = tables::tables(n);
            let h_row = &t.h_to_p[t.index[&Partition::row(n)]];
            for (j, la) in t.parts.iter().enumerate() {
                let got = e.coeff(n).coeff(&[la.clone()]);
                assert!(
                    got.equals_exact(&RatFunc::constant(&vs, h_row[j].clone())),
                    "h_{n} coefficient of p_{la}"
                );
            }
        }
    }

    #[test]
    fn symbolic_gamma_exponent() {
        // with an Adams-exempt symbol m: gamma_plus^m(A) p_1 = p_1 + m A
        let vs = VarSet::with_exempt(&["q", "t", "m"], &["m"]);
        let m = RatFunc::from_poly(MPoly::var(&vs, 2));
        let a = PlethArg::Expr(rf(&vs, "q"));
        let p1 = SymFunc::power_sum(&vs, 4, 1);
        let out = gamma_plus(&m, &a, &p1);
        assert!(out.coeff(&Partition::empty()).equals_exact(&rf(&vs, "m*q")));
        // p_2 image picks up adams(A,2) but m stays m
        let p2 = SymFunc::power_sum(&vs, 4, 2);
        let out2 = gamma_plus(&m, &a, &p2);
        assert!(out2.coeff(&Partition::empty()).equals_exact(&rf(&vs, "m*q^2")));
    }
}
