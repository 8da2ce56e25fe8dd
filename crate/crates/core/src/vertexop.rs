//! The Ext-character E, the matrix coefficients N(u), the vertex operator
//! Gamma(u), and the Bernstein operators with their Maya-diagram action.

use num::One;

use crate::error::Result;
use crate::macdonald::{b_stat, TableStore};
use crate::partitions::{maya, maya_insert, Partition};
use crate::ring::{lambda_eval, rat_int, MPoly, Rat, RatFunc, VarSet};
use crate::symfunc::{
    gamma_minus, gamma_plus, inner_hall, inner_star, Basis, PlethArg, QtParams, SymFunc,
};

/// E_{mu,nu} by the arm/leg formula: a Laurent polynomial in q, t with
/// |mu| + |nu| monomials, all coefficients positive.
pub fn ext_char(mu: &Partition, nu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let mut acc = MPoly::zero(vars);
    for (i, j) in mu.cells() {
        let a = nu.arm(i, j);
        let l = mu.leg(i, j);
        acc = acc.add_ref(&qt.q_pow(-a).mul_ref(&qt.t_pow(l + 1)));
    }
    for (i, j) in nu.cells() {
        let a = mu.arm(i, j);
        let l = nu.leg(i, j);
        acc = acc.add_ref(&qt.q_pow(a + 1).mul_ref(&qt.t_pow(-l)));
    }
    acc
}

fn b_stat_conj(mu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let mut acc = MPoly::zero(vars);
    for (i, j) in mu.cells() {
        acc = acc.add_ref(&qt.q_pow(1 - j as i64).mul_ref(&qt.t_pow(1 - i as i64)));
    }
    acc
}

/// E_{mu,nu} through the Euler-characteristic route,
/// chi_{0,0} - chi_{mu,nu} with chi built from the ideal characters
/// I = M^{-1} - B: the finite closed form is
/// E = conj(B_nu) + qt B_mu - M B_mu conj(B_nu).
pub fn ext_char_via_chi(mu: &Partition, nu: &Partition, qt: &QtParams) -> MPoly {
    let b_mu = b_stat(mu, qt);
    let bc_nu = b_stat_conj(nu, qt);
    let qt_mono = qt.q.mul_ref(&qt.t);
    bc_nu
        .add_ref(&qt_mono.mul_ref(&b_mu))
        .sub_ref(&qt.m_poly().mul_ref(&b_mu).mul_ref(&bc_nu))
}

/// N_{la,mu}(u) = (-u)^{-|mu|} q^{n(mu')} t^{n(mu)} lambda(u E_{la,mu}).
/// E has positive integer coefficients, so this is a Laurent polynomial.
/// `u` must be an invertible monomial (a variable, a monomial bridge value,
/// or 1).
pub fn n_coeff(la: &Partition, mu: &Partition, u: &MPoly, qt: &QtParams) -> MPoly {
    let e = ext_char(la, mu, qt);
    let prod = lambda_eval(&e, Some(u)).expect("E has integer coefficients");
    let w = prod
        .is_laurent_polynomial()
        .expect("positive character gives a pure product");
    let sign = if mu.size() % 2 == 0 { 1 } else { -1 };
    let pref = u
        .pow_i64(-(mu.size() as i64))
        .expect("u is an invertible monomial")
        .mul_rat(&rat_int(sign));
    pref.mul_ref(&qt.q_pow(mu.conjugate().n_stat() as i64))
        .mul_ref(&qt.t_pow(mu.n_stat() as i64))
        .mul_ref(&w)
}

/// Diagonal N at u = 1, the star norm of H~.
pub fn n_norm(mu: &Partition, qt: &QtParams) -> MPoly {
    n_coeff(mu, mu, &MPoly::one(qt.vars()), qt)
}

/// The alphabet arguments of Gamma(u).
pub fn gamma_u_args(u: &MPoly, qt: &QtParams) -> (PlethArg, PlethArg) {
    let vars = qt.vars();
    let one = MPoly::one(vars);
    let plus = PlethArg::from_poly(one.sub_ref(&u.mul_ref(&qt.q).mul_ref(&qt.t)));
    let u_inv = u.pow_i64(-1).expect("u is an invertible monomial");
    let minus = PlethArg::Expr(
        RatFunc::with_den_factors(
            u_inv.sub_ref(&one),
            &[(one.sub_ref(&qt.q), 1), (one.sub_ref(&qt.t), 1)],
        )
        .expect("1-q, 1-t nonzero"),
    );
    (plus, minus)
}

/// Gamma(u) = Gamma_-((u^{-1}-1)/M) Gamma_+(1 - u q t), truncated at the
/// bound of f.
pub fn gamma_u(u: &MPoly, qt: &QtParams, f: &SymFunc) -> SymFunc {
    let (plus, minus) = gamma_u_args(u, qt);
    let one = RatFunc::one(f.vars());
    gamma_minus(&one, &minus, &gamma_plus(&one, &plus, f))
}

/// One row of a CNO verification: both pairings of the theorem against the
/// explicit product N.
pub struct CnoRow {
    pub la: Partition,
    pub mu: Partition,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
    pub equal: bool,
    pub adjoint_equal: bool,
}

/// Checks (Gamma(u) H~_la, H~_mu)_* = (Gamma_+(1-uqt) H~_la,
/// Gamma_+(1-1/u) H~_mu)_* = N_{la,mu}(u) for all |la|, |mu| <= n_max,
/// plus the expansion of Gamma(u) H~_la over the H~ basis.
pub fn verify_cno(store: &TableStore, n_max: u32, eq: crate::ring::EqMode) -> Result<Vec<CnoRow>> {
    let vars = VarSet::new(&["q", "t", "u"]);
    let qt = QtParams::plain(&vars);
    let u = MPoly::var(&vars, vars.index("u").unwrap());
    let one_rf = RatFunc::one(&vars);
    let one = MPoly::one(&vars);

    // H~ tables embedded into (q,t,u)
    let mut hs: Vec<(Partition, SymFunc)> = Vec::new();
    for n in 0..=n_max {
        let t = store.table(n)?;
        for mu in &t.parts {
            let h = t.modified_h(mu).embed_coeffs(&vars);
            hs.push((mu.clone(), rebound(&h, n_max)));
        }
    }

    let minus_arg_mu = PlethArg::from_poly(one.sub_ref(&u.pow_i64(-1).unwrap()));
    let mut rows = Vec::new();
    for (la, h_la) in &hs {
        let gh = gamma_u(&u, &qt, h_la);
        let (plus_arg, _) = gamma_u_args(&u, &qt);
        let gp_la = gamma_plus(&one_rf, &plus_arg, h_la);
        // expansion coefficients for the CNOeq route
        let mut expansion = SymFunc::zero(&vars, Basis::P, n_max);
        for (mu, h_mu) in &hs {
            let lhs = inner_star(&gh, h_mu, &qt)?;
            let adj = inner_star(&gp_la, &gamma_plus(&one_rf, &minus_arg_mu, h_mu), &qt)?;
            let rhs = RatFunc::from_poly(n_coeff(la, mu, &u, &qt));
            let equal = eq.equal(&lhs, &rhs);
            let adjoint_equal = eq.equal(&adj, &rhs);
            rows.push(CnoRow {
                la: la.clone(),
                mu: mu.clone(),
                lhs,
                rhs: rhs.clone(),
                equal,
                adjoint_equal,
            });
            let norm = RatFunc::from_poly(n_norm(mu, &qt));
            expansion = expansion.add_ref(&h_mu.scale(&rhs.div_ref(&norm)?));
        }
        if !gh.equals(&expansion, eq) {
            rows.push(CnoRow {
                la: la.clone(),
                mu: la.clone(),
                lhs: RatFunc::zero(&vars),
                rhs: RatFunc::one(&vars),
                equal: false,
                adjoint_equal: false,
            });
        }
    }
    Ok(rows)
}

fn rebound(f: &SymFunc, bound: u32) -> SymFunc {
    let mut out = SymFunc::zero(f.vars(), f.basis(), bound);
    for (mu, c) in f.terms() {
        out.add_term(mu.clone(), c.clone());
    }
    out.with_alphabet(f.alphabet())
}

/// psi_i on a Schur-basis element via the Maya insertion rule; blocked
/// insertions give zero.
pub fn bernstein_component(i: i64, f: &SymFunc) -> SymFunc {
    let s = f.convert(Basis::S);
    let vars = s.vars().clone();
    let new_bound = ((s.bound() as i64 + i).max(0)) as u32;
    let mut out = SymFunc::zero(&vars, Basis::S, new_bound.max(s.bound()));
    for (mu, c) in s.terms() {
        let m = maya(mu);
        if m.beta_contains(i) {
            continue;
        }
        let (nu, sign) = maya_insert(&m, i).expect("slot checked free");
        out.add_term(nu, c.mul_rat(&rat_int(sign as i64)));
    }
    out
}

/// Oracle for the Bernstein components: the x^i coefficient of
/// Gamma_-(x) Gamma_+^{-1}(x^{-1}) f, extracted from a scratch variable.
pub fn bernstein_via_operator(i: i64, f: &SymFunc, x_var: usize) -> SymFunc {
    let vars = f.vars().clone();
    let one = RatFunc::one(&vars);
    let neg_one = RatFunc::constant(&vars, -Rat::one());
    let x = MPoly::var(&vars, x_var);
    let x_inv = MPoly::var_pow(&vars, x_var, -1);
    let g = gamma_minus(
        &one,
        &PlethArg::from_poly(x),
        &gamma_plus(&neg_one, &PlethArg::from_poly(x_inv), f),
    );
    g.map_coeffs(|c| {
        for (fac, _) in c.den_factors() {
            assert_eq!(fac.degree_range(x_var), Some((0, 0)), "x-free denominator");
        }
        let mut out = RatFunc::from_poly(c.num().coeff_of(x_var, i));
        for (fac, e) in c.den_factors() {
            for _ in 0..e {
                out = out
                    .div_ref(&RatFunc::from_poly(fac.clone()))
                    .expect("nonzero factor");
            }
        }
        out
    })
}

/// a_mu(q) = q^{n(mu)} prod (1 - q^{h(s)}), the Schur normalization of the
/// principally specialized modified Macdonald polynomial.
pub fn a_factor(mu: &Partition, q: &MPoly) -> MPoly {
    let vars = q.vars();
    let one = MPoly::one(vars);
    let mut acc = q
        .pow_i64(mu.n_stat() as i64)
        .expect("q is an invertible monomial");
    for (i, j) in mu.cells() {
        let h = mu.hook(i, j);
        acc = acc.mul_ref(&one.sub_ref(&q.pow_i64(h).unwrap()));
    }
    acc
}

/// Matrix element of the specialized operator
/// Gamma'(q) = Gamma_-(1+q+...+q^{r-1}) Gamma_+(-1-q^{-1}-...-q^{1-r})
/// in the Schur basis, computed through the Hall-adjoint pairing.
pub fn gamma_prime_matrix_element(r: u32, la: &Partition, mu: &Partition, vars: &VarSet) -> RatFunc {
    let q = vars.index("q").expect("variable q");
    let mut plus_poly = MPoly::zero(vars);
    let mut minus_poly = MPoly::zero(vars);
    for j in 0..r as i64 {
        minus_poly = minus_poly.add_ref(&MPoly::var_pow(vars, q, j));
        plus_poly = plus_poly.sub_ref(&MPoly::var_pow(vars, q, -j));
    }
    let one = RatFunc::one(vars);
    let bound = la.size().max(mu.size());
    let s_la = SymFunc::term(vars, Basis::S, bound, la.clone(), RatFunc::one(vars)).to_p();
    let s_mu = SymFunc::term(vars, Basis::S, bound, mu.clone(), RatFunc::one(vars)).to_p();
    // (Gamma_-(b) Gamma_+(a) s_la, s_mu) = (Gamma_+(a) s_la, Gamma_+(b) s_mu)
    let lhs_left = gamma_plus(&one, &PlethArg::from_poly(plus_poly), &s_la);
    let lhs_right = gamma_plus(&one, &PlethArg::from_poly(minus_poly), &s_mu);
    inner_hall(&lhs_left, &lhs_right).expect("same alphabet")
}

/// The closed form the CNO theorem forces on Gamma'(q)'s matrix elements.
pub fn gamma_prime_closed_form(r: u32, la: &Partition, mu: &Partition, vars: &VarSet) -> RatFunc {
    let qv = vars.index("q").expect("variable q");
    let q = MPoly::var(vars, qv);
    let q_inv = MPoly::var_pow(vars, qv, -1);
    let one = MPoly::one(vars);
    let mut num = q
        .pow_i64(-(r as i64) * la.size() as i64)
        .expect("monomial");
    for (i, j) in la.cells() {
        let e = r as i64 + mu.arm(i, j) + la.leg(i, j) + 1;
        num = num.mul_ref(&one.sub_ref(&q.pow_i64(e).unwrap()));
    }
    for (i, j) in mu.cells() {
        let e = r as i64 - la.arm(i, j) - mu.leg(i, j) - 1;
        num = num.mul_ref(&one.sub_ref(&q.pow_i64(e).unwrap()));
    }
    let den = a_factor(la, &q_inv).mul_ref(&a_factor(mu, &q));
    RatFunc::new(num, den).expect("a-factors are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{text, EqMode};

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    fn qtu() -> VarSet {
        VarSet::new(&["q", "t", "u"])
    }

    #[test]
    fn ext_char_examples() {
        let vs = VarSet::new(&["q", "t"]);
        let qt = QtParams::plain(&vs);
        let e11 = ext_char(&part(&[1]), &part(&[1]), &qt);
        assert_eq!(e11, text::poly_from_text(&vs, "q + t").unwrap());
        assert!(ext_char(&Partition::empty(), &Partition::empty(), &qt).is_zero());
        let e = ext_char(&part(&[2]), &part(&[1, 1]), &qt);
        let expect = text::poly_from_text(&vs, "1 + t + q*t + q^2*t^-1").unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn ext_char_dual_routes_agree() {
        let vs = VarSet::new(&["q", "t"]);
        let qt = QtParams::plain(&vs);
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                for mu in Partition::enumerate(a) {
                    for nu in Partition::enumerate(b) {
                        let e1 = ext_char(&mu, &nu, &qt);
                        let e2 = ext_char_via_chi(&mu, &nu, &qt);
                        assert_eq!(e1, e2, "E mismatch at {mu},{nu}");
                        // invariants: monomial count and positivity
                        let count: i64 = e1
                            .iter_terms()
                            .map(|(_, c)| {
                                assert!(c > &crate::ring::Rat::from_integer(0.into()));
                                let (n, d) = (c.numer().clone(), c.denom().clone());
                                assert!(d.is_one());
                                i64::try_from(n).unwrap()
                            })
                            .sum();
                        assert_eq!(count as u32, mu.size() + nu.size());
                        if mu == nu {
                            assert!(e1.coeff_of(0, 0).coeff_of(1, 0).is_zero(),
                                "E_mu,mu has no constant term");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n_coeff_worked_example() {
        let vs = qtu();
        let qt = QtParams::plain(&vs);
        let u = MPoly::var(&vs, 2);
        let n = n_coeff(&part(&[2]), &part(&[1, 1]), &u, &qt);
        // u^{-2} t (1-u)(1-ut)(1-u q^2/t)(1-u q t)
        let one = MPoly::one(&vs);
        let f = |s: &str| text::poly_from_text(&vs, s).unwrap();
        let expect = MPoly::monomial(&vs, crate::ring::rat_int(1), &[0, 1, -2])
            .mul_ref(&one.sub_ref(&f("u")))
            .mul_ref(&one.sub_ref(&f("u*t")))
            .mul_ref(&one.sub_ref(&f("u*q^2*t^-1")))
            .mul_ref(&one.sub_ref(&f("u*q*t")));
        assert_eq!(n, expect);
        // N_{0,0} = 1
        let qt2 = QtParams::plain(&vs);
        assert!(n_coeff(&Partition::empty(), &Partition::empty(), &u, &qt2).is_one());
    }

    #[test]
    fn n_diagonal_matches_star_norm() {
        let vs = VarSet::new(&["q", "t"]);
        let qt = QtParams::plain(&vs);
        for n in 0..=4u32 {
            for mu in Partition::enumerate(n) {
                let a = n_norm(&mu, &qt);
                let b = crate::macdonald::star_norm(&mu, &qt);
                assert_eq!(a, b, "norm mismatch at {mu}");
            }
        }
    }

    #[test]
    fn gamma_plus_on_h2_matches_worked_display() {
        let store = TableStore::new();
        let vs = qtu();
        let qt = QtParams::plain(&vs);
        let u = MPoly::var(&vs, 2);
        let t2 = store.table(2).unwrap();
        let h2 = t2.modified_h(&part(&[2])).embed_coeffs(&vs);
        let (plus, _) = gamma_u_args(&u, &qt);
        let g = gamma_plus(&RatFunc::one(&vs), &plus, &h2);
        let rf = |s: &str| text::ratfunc_from_text(&vs, s).unwrap();
        assert!(g.coeff(&part(&[1, 1])).equals_exact(&rf("1/2 + 1/2*q")));
        assert!(g.coeff(&part(&[2])).equals_exact(&rf("1/2 - 1/2*q")));
        assert!(g
            .coeff(&part(&[1]))
            .equals_exact(&rf("(1 - u*q*t)*(1 + q)")));
        assert!(g
            .coeff(&Partition::empty())
            .equals_exact(&rf("(1 - u*q*t)*(1 - u*q^2*t)")));
    }

    #[test]
    fn cno_small() {
        let store = TableStore::new();
        let rows = verify_cno(&store, 2, EqMode::Exact).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert!(r.equal, "CNO failed at ({}, {})", r.la, r.mu);
            assert!(r.adjoint_equal, "CNO adjoint failed at ({}, {})", r.la, r.mu);
        }
    }

    #[test]
    fn bernstein_vacuum_and_blocked() {
        let vs = VarSet::new(&["q", "t"]);
        let vac = SymFunc::one(&vs, Basis::S, 6);
        for i in 0..=4i64 {
            let out = bernstein_component(i, &vac);
            assert_eq!(out.terms().count(), 1);
            assert!(out
                .coeff(&Partition::row(i as u32))
                .equals_exact(&RatFunc::one(&vs)));
        }
        for i in [-1i64, -3] {
            assert!(bernstein_component(i, &vac).is_zero(), "psi_{i} on vacuum");
        }
    }

    #[test]
    fn bernstein_matches_operator_oracle() {
        let vs = VarSet::new(&["q", "t", "x"]);
        let x_var = vs.index("x").unwrap();
        for n in 0..=3u32 {
            for mu in Partition::enumerate(n) {
                let f = SymFunc::term(&vs, Basis::S, 5, mu.clone(), RatFunc::one(&vs));
                for i in -2..=4i64 {
                    if n as i64 + i > 5 || n as i64 + i < 0 {
                        continue;
                    }
                    let direct = bernstein_component(i, &f);
                    let oracle = bernstein_via_operator(i, &f, x_var).convert(Basis::S);
                    assert!(
                        direct.equals(&oracle, EqMode::Exact),
                        "psi_{i} s_{mu}: {} vs {}",
                        direct.to_text(),
                        oracle.to_text()
                    );
                }
            }
        }
    }

    #[test]
    fn bernstein_anticommute() {
        let vs = VarSet::new(&["q", "t"]);
        let vac_mu = part(&[2, 1]);
        let f = SymFunc::term(&vs, Basis::S, 8, vac_mu, RatFunc::one(&vs));
        for (i, j) in [(3i64, 4i64), (4, 5), (3, 5)] {
            let a = bernstein_component(i, &bernstein_component(j, &f));
            let b = bernstein_component(j, &bernstein_component(i, &f));
            assert!(
                a.equals(&b.neg_ref(), EqMode::Exact),
                "psi_{i} psi_{j} + psi_{j} psi_{i} != 0"
            );
        }
    }

    #[test]
    fn gamma_prime_closed_form_small() {
        let vs = VarSet::new(&["q"]);
        for r in [2u32, 3] {
            for a in 0..=3u32 {
                for b in 0..=3u32 {
                    for la in Partition::enumerate(a) {
                        for mu in Partition::enumerate(b) {
                            let lhs = gamma_prime_matrix_element(r, &la, &mu, &vs);
                            let rhs = gamma_prime_closed_form(r, &la, &mu, &vs);
                            assert!(
                                lhs.equals_exact(&rhs),
                                "Gamma'({r}) at ({la},{mu}): {lhs} vs {rhs}"
                            );
                        }
                    }
                }
            }
        }
    }
}
