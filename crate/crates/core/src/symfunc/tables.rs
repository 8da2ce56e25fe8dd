//! Per-degree transition matrices between the classical bases, built from
//! the Newton recurrences and Hall-duality, cached write-once per degree.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::partitions::Partition;
use crate::ring::{rat_int, Rat};

/// Row-major transition data for one degree: `x_to_p[mu][la]` is the
/// coefficient of `p_la` in `x_mu`, partitions indexed in reverse-lex order.
pub struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: BTreeMap<Partition, usize>,
    pub z: Vec<Rat>,
    pub h_to_p: Vec<Vec<Rat>>,
    pub e_to_p: Vec<Vec<Rat>>,
    pub s_to_p: Vec<Vec<Rat>>,
    pub m_to_p: Vec<Vec<Rat>>,
    pub p_to_m: Vec<Vec<Rat>>,
    pub p_to_h: Vec<Vec<Rat>>,
    pub p_to_e: Vec<Vec<Rat>>,
    pub p_to_s: Vec<Vec<Rat>>,
}

static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<DegreeTables>>>> = OnceLock::new();

pub fn tables(n: u32) -> Arc<DegreeTables> {
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let built = Arc::new(build(n));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert(built).clone()
}

type PMap = BTreeMap<Partition, Rat>;

fn pmap_add(into: &mut PMap, mu: Partition, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = into.entry(mu).or_insert_with(Rat::zero);
    *e += c;
    // prune on read instead of eagerly; zero entries are harmless here
}

fn pmap_mul(a: &PMap, b: &PMap) -> PMap {
    let mut out = PMap::new();
    for (ma, ca) in a {
        if ca.is_zero() {
            continue;
        }
        for (mb, cb) in b {
            if cb.is_zero() {
                continue;
            }
            pmap_add(&mut out, ma.union(mb), ca * cb);
        }
    }
    out
}

/// p-expansion of h_k from k*h_k = sum p_i h_{k-i}.
fn hp_expansions(n: u32) -> Vec<PMap> {
    let mut hp: Vec<PMap> = Vec::with_capacity(n as usize + 1);
    let mut unit = PMap::new();
    unit.insert(Partition::empty(), Rat::one());
    hp.push(unit);
    for k in 1..=n {
        let mut acc = PMap::new();
        for i in 1..=k {
            let prev = &hp[(k - i) as usize];
            for (mu, c) in prev {
                pmap_add(&mut acc, mu.union(&Partition::row(i)), c.clone());
            }
        }
        let inv = rat_int(1) / rat_int(k as i64);
        let acc = acc.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        hp.push(acc);
    }
    hp
}

fn omega_sign(mu: &Partition) -> Rat {
    let d = mu.size() as i64 - mu.len() as i64;
    if d % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

fn invert(mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = mat.len();
    let mut a: Vec<Vec<Rat>> = mat.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let x = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &x;
                let y = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &y;
            }
        }
    }
    inv
}

fn heap_permutations(l: usize, mut visit: impl FnMut(&[usize], i32)) {
    let mut idx: Vec<usize> = (0..l).collect();
    let mut c = vec![0usize; l];
    let mut sign = 1i32;
    visit(&idx, sign);
    let mut i = 0;
    while i < l {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            sign = -sign;
            visit(&idx, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn build(n: u32) -> DegreeTables {
    let parts = Partition::enumerate(n);
    let np = parts.len();
    let index: BTreeMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let z: Vec<Rat> = parts.iter().map(|p| p.z_factor()).collect();

    let hp = hp_expansions(n);
    let row_of = |m: &PMap| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); np];
        for (mu, c) in m {
            if c.is_zero() {
                continue;
            }
            row[index[mu]] = c.clone();
        }
        row
    };

    let mut h_to_p = Vec::with_capacity(np);
    for mu in &parts {
        let mut acc = PMap::new();
        acc.insert(Partition::empty(), Rat::one());
        for &p in mu.parts() {
            acc = pmap_mul(&acc, &hp[p as usize]);
        }
        h_to_p.push(row_of(&acc));
    }

    // e_mu = omega(h_mu) and omega is diagonal on power sums
    let e_to_p: Vec<Vec<Rat>> = h_to_p
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(la, c)| c * omega_sign(&parts[la]))
                .collect()
        })
        .collect();

    // Jacobi-Trudi: s_mu = det(h_{mu_i - i + j})
    let mut s_to_p = Vec::with_capacity(np);
    for mu in &parts {
        let l = mu.len();
        let mut acc = PMap::new();
        if l == 0 {
            acc.insert(Partition::empty(), Rat::one());
        } else {
            heap_permutations(l, |perm, sgn| {
                let mut term: Option<PMap> = Some({
                    let mut unit = PMap::new();
                    unit.insert(Partition::empty(), Rat::one());
                    unit
                });
                for (i, &pi) in perm.iter().enumerate() {
                    let e = mu.part(i + 1) as i64 - (i as i64 + 1) + (pi as i64 + 1);
                    if e < 0 {
                        term = None;
                        break;
                    }
                    if e == 0 {
                        continue;
                    }
                    term = term.map(|t| pmap_mul(&t, &hp[e as usize]));
                }
                if let Some(t) = term {
                    let s = rat_int(sgn as i64);
                    for (m, c) in t {
                        pmap_add(&mut acc, m, c * &s);
                    }
                }
            });
        }
        s_to_p.push(row_of(&acc));
    }

    // <p_la, h_mu> = z_la * [p_la] h_mu gives the m-expansion of p_la
    let mut p_to_m = vec![vec![Rat::zero(); np]; np];
    for (mu, h_row) in h_to_p.iter().enumerate() {
        for la in 0..np {
            p_to_m[la][mu] = &h_row[la] * &z[la];
        }
    }
    let m_to_p = invert(&p_to_m);

    let mut p_to_h = vec![vec![Rat::zero(); np]; np];
    for (mu, m_row) in m_to_p.iter().enumerate() {
        for la in 0..np {
            p_to_h[la][mu] = &m_row[la] * &z[la];
        }
    }
    let p_to_e: Vec<Vec<Rat>> = (0..np)
        .map(|la| {
            let s = omega_sign(&parts[la]);
            (0..np).map(|mu| &p_to_h[la][mu] * &s).collect()
        })
        .collect();
    let mut p_to_s = vec![vec![Rat::zero(); np]; np];
    for (mu, s_row) in s_to_p.iter().enumerate() {
        for la in 0..np {
            p_to_s[la][mu] = &s_row[la] * &z[la];
        }
    }

    DegreeTables {
        parts,
        index,
        z,
        h_to_p,
        e_to_p,
        s_to_p,
        m_to_p,
        p_to_m,
        p_to_h,
        p_to_e,
        p_to_s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn coeff(row: &[Rat], tables: &DegreeTables, mu: &[u32]) -> Rat {
        row[tables.index[&Partition::new(mu.to_vec())]].clone()
    }

    #[test]
    fn degree_two_classics() {
        let t = tables(2);
        // h_2 = 1/2 p_(1,1) + 1/2 p_(2)
        let h2 = &t.h_to_p[t.index[&Partition::row(2)]];
        assert_eq!(coeff(h2, &t, &[1, 1]), rat(1, 2));
        assert_eq!(coeff(h2, &t, &[2]), rat(1, 2));
        // e_2 = 1/2 p_(1,1) - 1/2 p_(2)
        let e2 = &t.e_to_p[t.index[&Partition::row(2)]];
        assert_eq!(coeff(e2, &t, &[2]), rat(-1, 2));
        // p_(1,1) = m_(2) + 2 m_(1,1)
        let p11 = &t.p_to_m[t.index[&Partition::new(vec![1, 1])]];
        assert_eq!(coeff(p11, &t, &[2]), rat(1, 1));
        assert_eq!(coeff(p11, &t, &[1, 1]), rat(2, 1));
        // s_(1,1) = e_2
        let s11 = &t.s_to_p[t.index[&Partition::new(vec![1, 1])]];
        assert_eq!(s11, e2);
    }

    #[test]
    fn round_trips() {
        for n in 1..=6u32 {
            let t = tables(n);
            let np = t.parts.len();
            for (a, b, name) in [
                (&t.p_to_m, &t.m_to_p, "m"),
                (&t.p_to_h, &t.h_to_p, "h"),
                (&t.p_to_e, &t.e_to_p, "e"),
                (&t.p_to_s, &t.s_to_p, "s"),
            ] {
                for i in 0..np {
                    for j in 0..np {
                        let mut acc = Rat::zero();
                        for k in 0..np {
                            acc += &a[i][k] * &b[k][j];
                        }
                        let want = if i == j { Rat::one() } else { Rat::zero() };
                        assert_eq!(acc, want, "basis {name} degree {n} entry ({i},{j})");
                    }
                }
            }
        }
    }

    /// Independent oracle: expand bases as honest polynomials in n variables
    /// and read off monomial coefficients.
    #[test]
    fn finite_variable_oracle() {
        use crate::ring::{MPoly, VarSet};
        for n in 1..=5u32 {
            let t = tables(n);
            let nv = n as usize;
            let names: Vec<String> = (0..nv).map(|i| format!("x{i}")).collect();
            let vs = VarSet::new(&names);
            let power_sum = |k: u32| -> MPoly {
                let mut acc = MPoly::zero(&vs);
                for i in 0..nv {
                    let mut e = vec![0i64; nv];
                    e[i] = k as i64;
                    acc = acc.add_ref(&MPoly::monomial(&vs, Rat::one(), &e));
                }
                acc
            };
            for (mi, mu) in t.parts.iter().enumerate() {
                // p_mu as a polynomial
                let mut p = MPoly::one(&vs);
                for &part in mu.parts() {
                    p = p.mul_ref(&power_sum(part));
                }
                // m-expansion from the table
                let mut expect = MPoly::zero(&vs);
                for (li, la) in t.parts.iter().enumerate() {
                    let c = &t.p_to_m[mi][li];
                    if c.is_zero() {
                        continue;
                    }
                    // m_la in nv variables: sum of distinct monomials with
                    // exponent multiset la
                    let mut exps: Vec<i64> = la.parts().iter().map(|&x| x as i64).collect();
                    exps.resize(nv, 0);
                    let mut seen = std::collections::BTreeSet::new();
                    permute_visit(&mut exps.clone(), &mut seen);
                    for e in &seen {
                        expect = expect.add_ref(&MPoly::monomial(&vs, c.clone(), e));
                    }
                }
                assert_eq!(p, expect, "p_{mu} m-expansion in {nv} variables");
            }
        }
    }

    fn permute_visit(exps: &mut Vec<i64>, seen: &mut std::collections::BTreeSet<Vec<i64>>) {
        exps.sort_unstable();
        loop {
            seen.insert(exps.clone());
            if !next_permutation(exps) {
                break;
            }
        }
    }

    fn next_permutation(v: &mut [i64]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}
