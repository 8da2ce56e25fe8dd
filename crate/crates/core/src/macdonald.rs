//! Macdonald polynomials P, integral forms J, modified Macdonald
//! polynomials H~, their norms, the psi/B statistics, and the operator D0.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num::One;

use crate::error::{EngineError, Result};
use crate::partitions::Partition;
use crate::ring::{rat_int, MPoly, Rat, RatFunc, VarSet};
use crate::symfunc::{
    gamma_minus, gamma_plus, inner_macdonald, pleth, Basis, PlethArg, QtParams, SymFunc,
};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// One degree worth of Macdonald data over Q(q,t): P in the monomial
/// basis, J in the monomial basis, H~ in the power-sum basis. Partitions
/// are indexed in reverse-lex order.
pub struct MacdonaldTable {
    pub n: u32,
    pub parts: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    pub p_m: Vec<SymFunc>,
    pub j_m: Vec<SymFunc>,
    pub h_p: Vec<SymFunc>,
}

impl MacdonaldTable {
    pub fn macdonald_p(&self, mu: &Partition) -> &SymFunc {
        &self.p_m[self.index[mu]]
    }

    pub fn macdonald_j(&self, mu: &Partition) -> &SymFunc {
        &self.j_m[self.index[mu]]
    }

    pub fn modified_h(&self, mu: &Partition) -> &SymFunc {
        &self.h_p[self.index[mu]]
    }
}

/// Memoized Macdonald tables with an optional on-disk text cache. Table
/// construction within a degree is sequential; completed tables are
/// immutable and shared.
pub struct TableStore {
    vars: VarSet,
    qt: QtParams,
    dir: Option<PathBuf>,
    mem: Mutex<BTreeMap<u32, Arc<MacdonaldTable>>>,
    cache_hits: AtomicU64,
}

impl Default for TableStore {
    fn default() -> Self {
        Self::new()
    }
}

impl TableStore {
    pub fn new() -> Self {
        let vars = VarSet::new(&["q", "t"]);
        let qt = QtParams::plain(&vars);
        TableStore {
            vars,
            qt,
            dir: None,
            mem: Mutex::new(BTreeMap::new()),
            cache_hits: AtomicU64::new(0),
        }
    }

    pub fn with_dir(dir: PathBuf) -> Self {
        let mut s = Self::new();
        s.dir = Some(dir);
        s
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn qt(&self) -> &QtParams {
        &self.qt
    }

    pub fn cache_hits(&self) -> u64 {
        self.cache_hits.load(Ordering::Relaxed)
    }

    pub fn cache_path(&self, n: u32) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("macdonald-v{CACHE_FORMAT_VERSION}-n{n}.txt")))
    }

    pub fn table(&self, n: u32) -> Result<Arc<MacdonaldTable>> {
        if let Some(t) = self.mem.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        if let Some(path) = self.cache_path(n) {
            if path.exists() {
                let text = std::fs::read_to_string(&path)?;
                let table = Arc::new(parse_table(&self.vars, n, &text)?);
                self.cache_hits.fetch_add(1, Ordering::Relaxed);
                let mut guard = self.mem.lock().unwrap();
                return Ok(guard.entry(n).or_insert(table).clone());
            }
        }
        let table = Arc::new(build_table(&self.vars, &self.qt, n));
        if let Some(path) = self.cache_path(n) {
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, serialize_table(&table))?;
        }
        let mut guard = self.mem.lock().unwrap();
        Ok(guard.entry(n).or_insert(table).clone())
    }

    /// Serializes a freshly built table (bypassing the caches) for
    /// cache-verification runs.
    pub fn rebuild_serialized(&self, n: u32) -> String {
        serialize_table(&build_table(&self.vars, &self.qt, n))
    }
}

/// The hook product turning P into the integral form J.
pub fn j_hook_factor(mu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let one = MPoly::one(vars);
    let mut acc = one.clone();
    for (i, j) in mu.cells() {
        let a = mu.arm(i, j);
        let l = mu.leg(i, j);
        let m = qt.q_pow(a).mul_ref(&qt.t_pow(l + 1));
        acc = acc.mul_ref(&one.sub_ref(&m));
    }
    acc
}

fn build_table(vars: &VarSet, qt: &QtParams, n: u32) -> MacdonaldTable {
    let parts = Partition::enumerate(n);
    let index: BTreeMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let bound = n;
    // Gram-Schmidt in a linear extension of dominance, smallest first
    let mut built_p: Vec<SymFunc> = Vec::with_capacity(parts.len());
    let mut built_norm: Vec<RatFunc> = Vec::with_capacity(parts.len());
    let asc: Vec<usize> = (0..parts.len()).rev().collect();
    let mut p_in_p: Vec<Option<SymFunc>> = vec![None; parts.len()];
    for &i in &asc {
        let mu = &parts[i];
        let m_mu = SymFunc::term(vars, Basis::M, bound, mu.clone(), RatFunc::one(vars)).to_p();
        let mut p = m_mu.clone();
        for (k, prev) in built_p.iter().enumerate() {
            let c = inner_macdonald(&m_mu, prev, qt).expect("same alphabet");
            if c.is_zero() {
                continue;
            }
            let coef = c.div_ref(&built_norm[k]).expect("nonzero norm").normalize();
            p = p.sub_ref(&prev.scale(&coef));
        }
        // keep the orthogonal basis in reduced form; unreduced fractions
        // compound across later projection steps
        let p = normalize_coeffs(&p);
        let norm = inner_macdonald(&p, &p, qt).expect("same alphabet").normalize();
        built_norm.push(norm);
        built_p.push(p.clone());
        p_in_p[i] = Some(p);
    }
    let p_in_p: Vec<SymFunc> = p_in_p.into_iter().map(|x| x.unwrap()).collect();

    let mut p_m = Vec::with_capacity(parts.len());
    let mut j_m = Vec::with_capacity(parts.len());
    let mut h_p = Vec::with_capacity(parts.len());
    let t_idx = vars.index("t").expect("variable t");
    for (i, mu) in parts.iter().enumerate() {
        let p_sym = &p_in_p[i];
        p_m.push(normalize_coeffs(&p_sym.convert(Basis::M)));
        let j_sym = p_sym.scale_poly(&j_hook_factor(mu, qt));
        j_m.push(normalize_coeffs(&j_sym.convert(Basis::M)));

        // H~ = t^{-n(mu)} Upsilon_{(1-t^{-1})^{-1}} J[X; q, t^{-1}]
        let mut exps = vec![0i64; vars.len()];
        exps[t_idx] = -1;
        let j_flip = j_sym
            .try_map_coeffs(|c| c.subst_monomial(t_idx, &Rat::one(), &exps))
            .expect("t -> 1/t is a monomial substitution");
        let one = MPoly::one(vars);
        let t_inv = MPoly::monomial(vars, Rat::one(), &exps);
        let ups_arg = PlethArg::Expr(
            RatFunc::new(one.clone(), one.sub_ref(&t_inv)).expect("1 - 1/t is nonzero"),
        );
        // the twist by t^{n(mu)} makes the Schur coefficients polynomial
        let h = pleth::upsilon(&ups_arg, &j_flip);
        let mut tm = vec![0i64; vars.len()];
        tm[t_idx] = mu.n_stat() as i64;
        let h = h.scale(&RatFunc::from_poly(MPoly::monomial(vars, Rat::one(), &tm)));
        h_p.push(normalize_coeffs(&h));
    }

    MacdonaldTable {
        n,
        parts,
        index,
        p_m,
        j_m,
        h_p,
    }
}

fn normalize_coeffs(f: &SymFunc) -> SymFunc {
    f.map_coeffs(|c| c.normalize())
}

/// Arm/leg statistic B_mu = sum over cells of q^{j-1} t^{i-1}.
pub fn b_stat(mu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let mut acc = MPoly::zero(vars);
    for (i, j) in mu.cells() {
        acc = acc.add_ref(&qt.q_pow(j as i64 - 1).mul_ref(&qt.t_pow(i as i64 - 1)));
    }
    acc
}

/// psi_mu = 1 - (1-q)(1-t) B_mu, the D0 eigenvalue on H~_mu. The sign in
/// front of the product is forced jointly by the vertex-operator form of
/// D0 and the genus-one trace identities.
pub fn psi_stat(mu: &Partition, qt: &QtParams) -> MPoly {
    MPoly::one(qt.vars()).sub_ref(&qt.m_poly().mul_ref(&b_stat(mu, qt)))
}

/// The star norm (H~_mu, H~_mu)_* as a hook product:
/// (-1)^{|mu|} prod (q^a - t^{l+1})(t^l - q^{a+1}).
pub fn star_norm(mu: &Partition, qt: &QtParams) -> MPoly {
    let vars = qt.vars();
    let sign = if mu.size() % 2 == 0 { 1 } else { -1 };
    let mut acc = MPoly::constant(vars, rat_int(sign));
    for (i, j) in mu.cells() {
        let a = mu.arm(i, j);
        let l = mu.leg(i, j);
        let f1 = qt.q_pow(a).sub_ref(&qt.t_pow(l + 1));
        let f2 = qt.t_pow(l).sub_ref(&qt.q_pow(a + 1));
        acc = acc.mul_ref(&f1).mul_ref(&f2);
    }
    acc
}

/// Applies D0, the x^0 component of Gamma_minus(-x) Gamma_plus(M/x), to a
/// symmetric function whose variable set contains the scratch variable
/// `x_var`. Denominators must not involve x (they never do along this
/// pipeline).
pub fn apply_d0(f: &SymFunc, qt: &QtParams, x_var: usize) -> SymFunc {
    let vars = f.vars().clone();
    let one = RatFunc::one(&vars);
    let x = MPoly::var(&vars, x_var);
    let x_inv = MPoly::var_pow(&vars, x_var, -1);
    let plus_arg = PlethArg::from_poly(qt.m_poly().mul_ref(&x_inv));
    let minus_arg = PlethArg::from_poly(x.neg_ref());
    let g = gamma_minus(&one, &minus_arg, &gamma_plus(&one, &plus_arg, f));
    g.map_coeffs(|c| {
        for (fac, _) in c.den_factors() {
            let rng = fac.degree_range(x_var);
            assert_eq!(rng, Some((0, 0)), "denominator must be x-free");
        }
        let mut out = RatFunc::from_poly(c.num().coeff_of(x_var, 0));
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

fn serialize_table(t: &MacdonaldTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "plethys macdonald table format {CACHE_FORMAT_VERSION}\n"
    ));
    out.push_str("vars q t\n");
    out.push_str(&format!("degree {}\n", t.n));
    for (i, mu) in t.parts.iter().enumerate() {
        out.push_str(&format!("P {} = {}\n", mu, t.p_m[i].to_text()));
        out.push_str(&format!("J {} = {}\n", mu, t.j_m[i].to_text()));
        out.push_str(&format!("H {} = {}\n", mu, t.h_p[i].to_text()));
    }
    out.push_str("end\n");
    out
}

fn parse_table(vars: &VarSet, n: u32, text: &str) -> Result<MacdonaldTable> {
    let mut lines = text.lines();
    let head = lines.next().unwrap_or_default();
    let expect_head = format!("plethys macdonald table format {CACHE_FORMAT_VERSION}");
    if head != expect_head {
        return Err(EngineError::CacheFormat(format!(
            "bad header {head:?}, expected {expect_head:?}"
        )));
    }
    if lines.next() != Some("vars q t") {
        return Err(EngineError::CacheFormat("bad vars line".into()));
    }
    let deg_line = lines.next().unwrap_or_default();
    let deg: u32 = deg_line
        .strip_prefix("degree ")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| EngineError::CacheFormat(format!("bad degree line {deg_line:?}")))?;
    if deg != n {
        return Err(EngineError::CacheFormat(format!(
            "file holds degree {deg}, expected {n}"
        )));
    }
    let parts = Partition::enumerate(n);
    let index: BTreeMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut p_m: Vec<Option<SymFunc>> = vec![None; parts.len()];
    let mut j_m: Vec<Option<SymFunc>> = vec![None; parts.len()];
    let mut h_p: Vec<Option<SymFunc>> = vec![None; parts.len()];
    let mut saw_end = false;
    for line in lines {
        if line == "end" {
            saw_end = true;
            break;
        }
        if line.trim().is_empty() {
            continue;
        }
        let (kind, rest) = line
            .split_once(' ')
            .ok_or_else(|| EngineError::CacheFormat(format!("bad line {line:?}")))?;
        let (mu_s, body) = rest
            .split_once(" = ")
            .ok_or_else(|| EngineError::CacheFormat(format!("bad line {line:?}")))?;
        let mu = Partition::parse(mu_s)?;
        let i = *index
            .get(&mu)
            .ok_or_else(|| EngineError::CacheFormat(format!("stray partition {mu}")))?;
        let f = SymFunc::from_text(vars, n, body)?;
        match kind {
            "P" => p_m[i] = Some(f),
            "J" => j_m[i] = Some(f),
            "H" => h_p[i] = Some(f),
            other => {
                return Err(EngineError::CacheFormat(format!(
                    "unknown record {other:?}"
                )))
            }
        }
    }
    if !saw_end {
        return Err(EngineError::CacheFormat("missing end marker".into()));
    }
    let unwrap_all = |v: Vec<Option<SymFunc>>, what: &str| -> Result<Vec<SymFunc>> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    EngineError::CacheFormat(format!("missing {what} for {}", parts[i]))
                })
            })
            .collect()
    };
    Ok(MacdonaldTable {
        n,
        parts: parts.clone(),
        index,
        p_m: unwrap_all(p_m, "P")?,
        j_m: unwrap_all(j_m, "J")?,
        h_p: unwrap_all(h_p, "H")?,
    })
}
