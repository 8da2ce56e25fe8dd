//! Canonical text form for polynomials and rational functions: variables in
//! VarSet order, monomials in graded-lexicographic order (total degree
//! descending, then exponent vector descending), integer `p/q` coefficients.

use num::{One, Signed, Zero};

use crate::error::{EngineError, Result};
use crate::ring::{MPoly, Rat, RatFunc, VarSet};

fn cmp_graded(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let ta: i64 = a.iter().sum();
    let tb: i64 = b.iter().sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

fn rat_to_text(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn poly_to_text(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars().clone();
    let mut terms: Vec<(Vec<i64>, Rat)> = p.iter_terms().map(|(e, c)| (e, c.clone())).collect();
    terms.sort_by(|a, b| cmp_graded(&b.0, &a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || e.iter().all(|&x| x == 0) {
            factors.push(rat_to_text(&mag));
        }
        for (v, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if x == 1 {
                factors.push(vars.name(v).to_string());
            } else {
                factors.push(format!("{}^{}", vars.name(v), x));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

pub fn ratfunc_to_text(f: &RatFunc) -> String {
    let den = f.den_expanded();
    if den.is_one() {
        poly_to_text(f.num())
    } else {
        format!("({})/({})", poly_to_text(f.num()), poly_to_text(&den))
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }


    fn integer(&mut self) -> Result<num::BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(EngineError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| EngineError::Parse(format!("bad integer: {e}")))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(EngineError::Parse("expected exponent".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| EngineError::Parse(format!("bad exponent: {e}")))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(EngineError::Parse("expected identifier".into()));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_string())
    }
}

fn parse_term(lx: &mut Lexer, vars: &VarSet) -> Result<(Vec<i64>, Rat)> {
    let mut coeff = Rat::one();
    let mut exps = vec![0i64; vars.len()];
    let mut saw_factor = false;
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = lx.integer()?;
                let d = if lx.peek() == Some(b'/') {
                    lx.bump();
                    lx.integer()?
                } else {
                    num::BigInt::one()
                };
                if d.is_zero() {
                    return Err(EngineError::Parse("zero denominator".into()));
                }
                coeff = coeff * Rat::new(n, d);
                saw_factor = true;
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = lx.ident()?;
                let v = vars
                    .index(&name)
                    .ok_or_else(|| EngineError::Parse(format!("unknown variable {name:?}")))?;
                let e = if lx.peek() == Some(b'^') {
                    lx.bump();
                    lx.signed_exponent()?
                } else {
                    1
                };
                exps[v] += e;
                saw_factor = true;
            }
            _ => break,
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            break;
        }
    }
    if !saw_factor {
        return Err(EngineError::Parse("expected a term".into()));
    }
    Ok((exps, coeff))
}

pub fn poly_from_text(vars: &VarSet, s: &str) -> Result<MPoly> {
    let mut lx = Lexer::new(s);
    let mut terms: Vec<(Vec<i64>, Rat)> = Vec::new();
    let mut sign = match lx.peek() {
        Some(b'-') => {
            lx.bump();
            -Rat::one()
        }
        _ => Rat::one(),
    };
    loop {
        let (e, c) = parse_term(&mut lx, vars)?;
        terms.push((e, c * &sign));
        match lx.peek() {
            Some(b'+') => {
                lx.bump();
                sign = Rat::one();
            }
            Some(b'-') => {
                lx.bump();
                sign = -Rat::one();
            }
            None => break,
            Some(other) => {
                return Err(EngineError::Parse(format!(
                    "unexpected character {:?}",
                    other as char
                )))
            }
        }
    }
    Ok(MPoly::from_terms(vars, terms))
}

pub fn ratfunc_from_text(vars: &VarSet, s: &str) -> Result<RatFunc> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix('(') {
        // "(num)/(den)" form
        if let Some(mid) = find_matching(rest) {
            let num_str = &rest[..mid];
            let tail = rest[mid + 1..].trim_start();
            if let Some(den_part) = tail.strip_prefix('/') {
                let den_part = den_part.trim_start();
                let den_inner = den_part
                    .strip_prefix('(')
                    .and_then(|d| d.strip_suffix(')'))
                    .ok_or_else(|| EngineError::Parse("expected (den)".into()))?;
                let num = poly_from_text(vars, num_str)?;
                let den = poly_from_text(vars, den_inner)?;
                return RatFunc::new(num, den);
            }
        }
    }
    Ok(RatFunc::from_poly(poly_from_text(vars, t)?))
}

fn find_matching(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}
