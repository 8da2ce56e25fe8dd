//! The three inner products, computed through their diagonal forms in the
//! power-sum basis.

use crate::error::{EngineError, Result};
use crate::partitions::Partition;
use crate::ring::{MPoly, RatFunc, VarSet};

/// Monomial images of the Macdonald parameters inside the ambient variable
/// set. In the plain world q, t are themselves variables; in the character
/// series world they are z^2, w^2.
#[derive(Clone, Debug)]
pub struct QtParams {
    pub q: MPoly,
    pub t: MPoly,
}

impl QtParams {
    pub fn new(q: MPoly, t: MPoly) -> Self {
        QtParams { q, t }
    }

    /// Looks up variables named q and t.
    pub fn plain(vars: &VarSet) -> Self {
        let q = vars.index("q").expect("variable q");
        let t = vars.index("t").expect("variable t");
        QtParams {
            q: MPoly::var(vars, q),
            t: MPoly::var(vars, t),
        }
    }

    /// q = z^2, t = w^2 for variables named z and w.
    pub fn squared_zw(vars: &VarSet) -> Self {
        let z = vars.index("z").expect("variable z");
        let w = vars.index("w").expect("variable w");
        QtParams {
            q: MPoly::var_pow(vars, z, 2),
            t: MPoly::var_pow(vars, w, 2),
        }
    }

    pub fn vars(&self) -> &VarSet {
        self.q.vars()
    }

    pub fn q_pow(&self, e: i64) -> MPoly {
        self.q.pow_i64(e).expect("q image is a monomial")
    }

    pub fn t_pow(&self, e: i64) -> MPoly {
        self.t.pow_i64(e).expect("t image is a monomial")
    }

    /// M = (1 - q)(1 - t).
    pub fn m_poly(&self) -> MPoly {
        let vars = self.vars();
        let one = MPoly::one(vars);
        one.sub_ref(&self.q).mul_ref(&one.sub_ref(&self.t))
    }
}

use super::{Basis, SymFunc};

fn check_pairable(f: &SymFunc, g: &SymFunc) -> Result<()> {
    if f.alphabet() != g.alphabet() {
        return Err(EngineError::AlphabetMismatch);
    }
    assert!(f.vars() == g.vars(), "variable sets differ");
    if f.max_degree() > g.bound() {
        return Err(EngineError::DegreeOverflow(f.max_degree(), g.bound()));
    }
    if g.max_degree() > f.bound() {
        return Err(EngineError::DegreeOverflow(g.max_degree(), f.bound()));
    }
    Ok(())
}

fn diagonal_pairing<W>(f: &SymFunc, g: &SymFunc, weight: W) -> Result<RatFunc>
where
    W: Fn(&Partition) -> RatFunc,
{
    check_pairable(f, g)?;
    let a = f.convert(Basis::P);
    let b = g.convert(Basis::P);
    let mut acc = RatFunc::zero(f.vars());
    for (mu, ca) in a.terms() {
        let cb = b.coeff(mu);
        if cb.is_zero() {
            continue;
        }
        acc = acc.add_ref(&ca.mul_ref(&cb).mul_ref(&weight(mu)));
    }
    Ok(acc)
}

/// Standard (Hall) inner product: (p_mu, p_mu) = z_mu.
pub fn inner_hall(f: &SymFunc, g: &SymFunc) -> Result<RatFunc> {
    let vars = f.vars().clone();
    diagonal_pairing(f, g, move |mu| {
        RatFunc::constant(&vars, mu.z_factor())
    })
}

/// Macdonald inner product: z_mu prod (1-q^{mu_i})/(1-t^{mu_i}).
pub fn inner_macdonald(f: &SymFunc, g: &SymFunc, qt: &QtParams) -> Result<RatFunc> {
    let qt = qt.clone();
    diagonal_pairing(f, g, move |mu| {
        let vars = qt.vars();
        let one = MPoly::one(vars);
        let mut num = MPoly::constant(vars, mu.z_factor());
        let mut den: Vec<(MPoly, u32)> = Vec::new();
        for &part in mu.parts() {
            num = num.mul_ref(&one.sub_ref(&qt.q_pow(part as i64)));
            den.push((one.sub_ref(&qt.t_pow(part as i64)), 1));
        }
        RatFunc::with_den_factors(num, &den).expect("1 - t^k is nonzero")
    })
}

/// The weight (p_mu, p_mu)_* = (-1)^{l(mu)} z_mu prod (1-q^{mu_i})(1-t^{mu_i}).
pub fn star_weight(mu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let one = MPoly::one(vars);
    let sign = if mu.len() % 2 == 0 { 1 } else { -1 };
    let mut w = MPoly::constant(vars, mu.z_factor() * crate::ring::rat_int(sign));
    for &part in mu.parts() {
        w = w.mul_ref(&one.sub_ref(&qt.q_pow(part as i64)));
        w = w.mul_ref(&one.sub_ref(&qt.t_pow(part as i64)));
    }
    w
}

/// Modified Macdonald (star) inner product.
pub fn inner_star(f: &SymFunc, g: &SymFunc, qt: &QtParams) -> Result<RatFunc> {
    let qt = qt.clone();
    diagonal_pairing(f, g, move |mu| RatFunc::from_poly(star_weight(mu, &qt)))
}
