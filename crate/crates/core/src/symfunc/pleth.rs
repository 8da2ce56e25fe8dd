//! Plethystic substitution f[A] and the substitution homomorphisms:
//! Gamma_plus (alphabet shift), Gamma_minus (multiplication by Exp), and
//! Upsilon (alphabet scaling).

use num::One;

use crate::error::Result;
use crate::partitions::Partition;
use crate::ring::{rat_int, rat_pow, Rat, RatFunc, VarSet};

use super::{Basis, SymFunc};

/// An alphabet argument for the plethystic operators: either a rational
/// function of the ambient variables (Adams maps act by exponent scaling),
/// or a finite list of rational atoms with multiplicities, whose k-th
/// Adams value is sum of mult * atom^k. Atoms carry evaluated alphabets
/// such as rational x-specializations, where variable substitution would
/// wrongly fix them.
#[derive(Clone, Debug)]
pub enum PlethArg {
    Expr(RatFunc),
    Atoms(Vec<(Rat, i64)>),
}

impl PlethArg {
    pub fn from_poly(p: crate::ring::MPoly) -> Self {
        PlethArg::Expr(RatFunc::from_poly(p))
    }

    pub fn adams(&self, k: u32, vars: &VarSet) -> RatFunc {
        match self {
            PlethArg::Expr(f) => f.adams(k),
            PlethArg::Atoms(atoms) => {
                let mut acc = Rat::from_integer(0.into());
                for (base, mult) in atoms {
                    acc += rat_pow(base, k as i64) * rat_int(*mult);
                }
                RatFunc::constant(vars, acc)
            }
        }
    }
}

/// f[A] for a scalar alphabet A: the homomorphism p_k -> A^{(k)}.
pub fn plethysm_scalar(f: &SymFunc, a: &PlethArg) -> RatFunc {
    let p = f.convert(Basis::P);
    let vars = p.vars().clone();
    let mut acc = RatFunc::zero(&vars);
    for (mu, c) in p.terms() {
        let mut term = c.clone();
        for &part in mu.parts() {
            term = term.mul_ref(&a.adams(part, &vars));
        }
        acc = acc.add_ref(&term);
    }
    acc
}

/// f[g] for a symmetric-function argument: p_k -> adams_full(g, k),
/// truncated at the common bound.
pub fn plethysm_sym(f: &SymFunc, g: &SymFunc) -> SymFunc {
    let fp = f.convert(Basis::P);
    let gp = g.convert(Basis::P);
    let bound = gp.bound();
    let vars = fp.vars().clone();
    let mut acc = SymFunc::zero(&vars, Basis::P, bound);
    for (mu, c) in fp.terms() {
        let mut term = SymFunc::term(&vars, Basis::P, bound, Partition::empty(), c.clone());
        for &part in mu.parts() {
            term = term.mul_ref(&gp.adams_full(part));
        }
        acc = acc.add_ref(&term);
    }
    acc
}

/// Gamma_plus^m(A): f -> f[X + mA], acting by p_k -> p_k + m * A^{(k)}.
/// The exponent m is any coefficient (an integer, or an Adams-exempt
/// symbol variable).
pub fn gamma_plus(m: &RatFunc, a: &PlethArg, f: &SymFunc) -> SymFunc {
    let p = f.convert(Basis::P);
    let vars = p.vars().clone();
    let bound = p.bound();
    let shift: Vec<RatFunc> = (1..=bound.max(1))
        .map(|k| m.mul_ref(&a.adams(k, &vars)))
        .collect();
    let mut out = SymFunc::zero(&vars, Basis::P, bound);
    for (mu, c) in p.terms() {
        // expand prod_i (p_{mu_i} + shift_{mu_i})
        let mut partial: Vec<(Partition, RatFunc)> = vec![(Partition::empty(), c.clone())];
        for &part in mu.parts() {
            let s = &shift[part as usize - 1];
            let mut next: Vec<(Partition, RatFunc)> = Vec::with_capacity(partial.len() * 2);
            for (nu, coeff) in &partial {
                next.push((nu.union(&Partition::row(part)), coeff.clone()));
                let sc = coeff.mul_ref(s);
                if !sc.is_zero() {
                    next.push((nu.clone(), sc));
                }
            }
            partial = next;
        }
        for (nu, coeff) in partial {
            out.add_term(nu, coeff);
        }
    }
    out.with_alphabet(f.alphabet())
}

/// Exp(mAX) as a truncated symmetric function.
pub fn exp_alphabet(m: &RatFunc, a: &PlethArg, vars: &VarSet, bound: u32) -> SymFunc {
    let mut s = SymFunc::zero(vars, Basis::P, bound);
    for k in 1..=bound {
        let c = m
            .mul_ref(&a.adams(k, vars))
            .mul_rat(&(Rat::one() / rat_int(k as i64)));
        s.add_term(Partition::row(k), c);
    }
    // exp of a series with no constant term
    let mut acc = SymFunc::one(vars, Basis::P, bound);
    let mut pow = SymFunc::one(vars, Basis::P, bound);
    let mut fact = Rat::one();
    for j in 1..=bound {
        pow = pow.mul_ref(&s);
        if pow.is_zero() {
            break;
        }
        fact = fact * rat_int(j as i64);
        acc = acc.add_ref(&pow.scale_rat(&(Rat::one() / &fact)));
    }
    acc
}

/// Gamma_minus^m(A): multiplication by Exp(mAX), truncated.
pub fn gamma_minus(m: &RatFunc, a: &PlethArg, f: &SymFunc) -> SymFunc {
    let p = f.convert(Basis::P);
    let e = exp_alphabet(m, a, p.vars(), p.bound());
    e.mul_ref(&p).with_alphabet(f.alphabet())
}

/// Upsilon_A: p_k -> A^{(k)} p_k.
pub fn upsilon(a: &PlethArg, f: &SymFunc) -> SymFunc {
    let p = f.convert(Basis::P);
    let vars = p.vars().clone();
    let mut out = SymFunc::zero(&vars, Basis::P, p.bound());
    for (mu, c) in p.terms() {
        let mut c2 = c.clone();
        for &part in mu.parts() {
            c2 = c2.mul_ref(&a.adams(part, &vars));
        }
        if !c2.is_zero() {
            out.add_term(mu.clone(), c2);
        }
    }
    out.with_alphabet(f.alphabet())
}

/// The involution omega = (-1)^d Upsilon_{-1}: p_k -> (-1)^{k-1} p_k.
pub fn omega_involution(f: &SymFunc) -> SymFunc {
    let p = f.convert(Basis::P);
    let vars = p.vars().clone();
    let mut out = SymFunc::zero(&vars, Basis::P, p.bound());
    for (mu, c) in p.terms() {
        let sign = (mu.size() as i64 - mu.len() as i64).rem_euclid(2);
        let c2 = if sign == 1 { c.neg_ref() } else { c.clone() };
        out.add_term(mu.clone(), c2);
    }
    out.with_alphabet(f.alphabet())
}

/// Truncated evaluation helper: f with every p_k sent to the constant 1
/// (the single-variable specialization with the degree tracked elsewhere).
pub fn eval_alphabet_ones(f: &SymFunc) -> Result<RatFunc> {
    let p = f.convert(Basis::P);
    let vars = p.vars().clone();
    let mut acc = RatFunc::zero(&vars);
    for (_, c) in p.terms() {
        acc = acc.add_ref(c);
    }
    Ok(acc)
}
