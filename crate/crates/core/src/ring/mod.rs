//! Exact coefficient arithmetic: arbitrary-precision rationals, sparse
//! multivariate Laurent polynomials, reduced rational functions, Adams
//! (Frobenius) maps, and lambda-ring evaluation.

pub mod mpoly;
pub mod ratfunc;
pub mod text;
mod varset;

pub use mpoly::{rat, rat_int, rat_pow, MPoly, Rat};
pub use ratfunc::{EqMode, RatFunc};
pub use varset::VarSet;

use num::One;

use crate::error::{EngineError, Result};

/// Lambda-ring evaluation of an integer combination of Laurent monomials:
/// the product over monomials m of A (with multiplicity c) of
/// (1 - u*m)^c, negative multiplicities contributing denominator factors.
/// `u` defaults to 1 when None.
pub fn lambda_eval(a: &MPoly, u: Option<&MPoly>) -> Result<RatFunc> {
    if !a.has_integer_coeffs() {
        return Err(EngineError::NonIntegerCoeff);
    }
    let vars = a.vars().clone();
    let one = MPoly::one(&vars);
    let u_mono = match u {
        Some(m) => m.clone(),
        None => one.clone(),
    };
    let mut out = RatFunc::one(&vars);
    for (exps, c) in a.iter_terms() {
        let m = MPoly::monomial(&vars, Rat::one(), &exps);
        let factor = one.sub_ref(&u_mono.mul_ref(&m));
        let count: i64 = c
            .numer()
            .try_into()
            .map_err(|_| EngineError::NonIntegerCoeff)?;
        if count >= 0 {
            out = out.mul_poly(&factor.pow(count as u32));
        } else {
            let f = RatFunc::new(MPoly::one(&vars), factor.pow((-count) as u32))?;
            out = out.mul_ref(&f);
        }
    }
    Ok(out)
}

use mpoly::Rat as _Rat;
type Rat_ = _Rat;

/// True iff, after the sign flips, the polynomial has nonnegative integer
/// coefficients.
pub fn has_nonneg_coeffs(f: &MPoly, flips: &[usize]) -> bool {
    f.flip_signs(flips).has_nonneg_integer_coeffs()
}

/// 1 as a rational, convenience for tests and builders.
pub fn rat_one() -> Rat_ {
    Rat_::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn qt() -> VarSet {
        VarSet::new(&["q", "t"])
    }

    fn pq(vars: &VarSet, s: &str) -> MPoly {
        text::poly_from_text(vars, s).unwrap()
    }

    #[test]
    fn monomial_and_constant_forms() {
        let vs = qt();
        let p = pq(&vs, "3/2*q^2*t^-1");
        assert_eq!(p.as_monomial(), Some((rat(3, 2), vec![2, -1])));
        assert!(MPoly::zero(&vs).as_constant().unwrap().is_zero());
        assert_eq!(pq(&vs, "5").as_constant(), Some(rat_int(5)));
    }

    #[test]
    fn add_mul_laurent_shift() {
        let vs = qt();
        let a = pq(&vs, "q^-2 + t");
        let b = pq(&vs, "q^2");
        let c = a.mul_ref(&b);
        assert_eq!(c, pq(&vs, "1 + q^2*t"));
        let d = a.add_ref(&a.neg_ref());
        assert!(d.is_zero());
    }

    #[test]
    fn adams_is_exponent_scaling() {
        let vs = qt();
        let p = pq(&vs, "q + t");
        assert_eq!(p.adams(3), pq(&vs, "q^3 + t^3"));
        let f = RatFunc::new(pq(&vs, "1 - q"), pq(&vs, "1 - t")).unwrap();
        let f2 = f.adams(2);
        let expect = RatFunc::new(pq(&vs, "1 - q^2"), pq(&vs, "1 - t^2")).unwrap();
        assert!(f2.equals_exact(&expect));
    }

    #[test]
    fn adams_exempt_symbol_is_fixed() {
        let vs = VarSet::with_exempt(&["q", "m"], &["m"]);
        let p = text::poly_from_text(&vs, "m*q^2").unwrap();
        assert_eq!(p.adams(3), text::poly_from_text(&vs, "m*q^6").unwrap());
    }

    #[test]
    fn divexact_and_gcd() {
        let vs = qt();
        let n = pq(&vs, "1 - q^2");
        let d = pq(&vs, "1 - q");
        let q = n.divexact(&d).unwrap();
        assert_eq!(q, pq(&vs, "1 + q"));
        assert!(pq(&vs, "1 + q^2").divexact(&d).is_none());

        let a = pq(&vs, "1 - q^2").mul_ref(&pq(&vs, "1 - t"));
        let b = pq(&vs, "1 - q").mul_ref(&pq(&vs, "1 - t^2"));
        let g = a.gcd(&b);
        let expect = pq(&vs, "1 - q").mul_ref(&pq(&vs, "1 - t")).unit_decompose().2;
        assert_eq!(g, expect);
    }

    #[test]
    fn normalize_examples() {
        let vs = qt();
        let f = RatFunc::new(pq(&vs, "1 - q^2"), pq(&vs, "1 - q")).unwrap();
        let n = f.normalize();
        assert!(n.den_expanded().is_one());
        assert_eq!(n.num(), &pq(&vs, "1 + q"));

        let zw = VarSet::new(&["z", "w"]);
        let p = text::poly_from_text(&zw, "z^2 - w^2").unwrap();
        let g = RatFunc::new(p.clone(), p).unwrap();
        assert!(g.normalize().is_one());
    }

    #[test]
    fn is_laurent_polynomial_examples() {
        let vs = qt();
        let yes = RatFunc::new(pq(&vs, "1 - q^2"), pq(&vs, "1 - q")).unwrap();
        assert_eq!(yes.is_laurent_polynomial().unwrap(), pq(&vs, "1 + q"));
        let no = RatFunc::new(pq(&vs, "1"), pq(&vs, "1 - q")).unwrap();
        assert!(no.is_laurent_polynomial().is_none());
    }

    #[test]
    fn lambda_eval_paper_example() {
        // lambda(q - 2*q*t^-2) = (1-q) / (1-q*t^-2)^2
        let vs = qt();
        let a = pq(&vs, "q - 2*q*t^-2");
        let v = lambda_eval(&a, None).unwrap();
        let expect = RatFunc::new(pq(&vs, "1 - q"), pq(&vs, "1 - q*t^-2").pow(2)).unwrap();
        assert!(v.equals_exact(&expect));
        // empty product
        assert!(lambda_eval(&MPoly::zero(&vs), None).unwrap().is_one());
        // non-integer coefficients rejected
        assert!(lambda_eval(&pq(&vs, "1/2*q"), None).is_err());
    }

    #[test]
    fn nonneg_after_flip() {
        let zw = VarSet::new(&["z", "w"]);
        let p = text::poly_from_text(&zw, "z^2 - 2*z*w + w^2").unwrap(); // (z-w)^2
        assert!(has_nonneg_coeffs(&p, &[0]));
        let q = text::poly_from_text(&zw, "z - w").unwrap();
        assert!(!has_nonneg_coeffs(&q, &[]));
    }

    #[test]
    fn text_round_trip() {
        let vs = VarSet::new(&["q", "t", "u"]);
        let samples = [
            "0",
            "1",
            "-3/2",
            "q^2*t^-1 + 1/3*u - 7",
            "-q + t^5*u^-2",
        ];
        for s in samples {
            let p = text::poly_from_text(&vs, s).unwrap();
            let t = text::poly_to_text(&p);
            let p2 = text::poly_from_text(&vs, &t).unwrap();
            assert_eq!(p, p2, "round trip failed for {s}: {t}");
        }
    }

    #[test]
    fn probabilistic_equality_agrees() {
        let vs = qt();
        let a = RatFunc::new(pq(&vs, "1 - q^2"), pq(&vs, "1 - q")).unwrap();
        let b = RatFunc::from_poly(pq(&vs, "1 + q"));
        let mode = EqMode::probabilistic(42);
        assert!(mode.equal(&a, &b));
        let c = RatFunc::from_poly(pq(&vs, "1 + t"));
        assert!(!mode.equal(&a, &c));
    }
}
