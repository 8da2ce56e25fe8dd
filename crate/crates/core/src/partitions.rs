//! Partitions, Young-diagram statistics, r-cores, the core/lattice-vector
//! bijection, and Maya diagrams.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{EngineError, Result};

/// A partition: weakly decreasing positive parts. The universal index type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        let parts = parts.into_iter().take_while(|&p| p > 0).collect();
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part with 1-based index, 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part value i.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// z_mu = prod over part values i of i^{m_i} * m_i!
    pub fn z_factor(&self) -> crate::ring::Rat {
        use crate::ring::rat_int;
        let mut z = rat_int(1);
        let mut run = 1u64;
        for (k, &p) in self.parts.iter().enumerate() {
            if k > 0 && self.parts[k - 1] == p {
                run += 1;
            } else {
                run = 1;
            }
            z = z * rat_int(p as i64) * rat_int(run as i64);
        }
        z
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Self::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols {
            out.push(self.parts.iter().filter(|&&p| p >= j as u32).count() as u32);
        }
        Partition { parts: out }
    }

    /// Arm length of the (possibly off-diagram) cell (i, j), 1-based.
    pub fn arm(&self, i: u32, j: u32) -> i64 {
        self.part(i as usize) as i64 - j as i64
    }

    /// Leg length of the (possibly off-diagram) cell (i, j), 1-based.
    pub fn leg(&self, i: u32, j: u32) -> i64 {
        // conjugate part j = number of rows with at least j boxes
        let cj = self.parts.iter().filter(|&&p| p >= j).count() as i64;
        cj - i as i64
    }

    pub fn hook(&self, i: u32, j: u32) -> i64 {
        self.arm(i, j) + self.leg(i, j) + 1
    }

    /// Iterates the boxes (i, j) of the diagram, 1-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }

    /// All hook lengths, unsorted.
    pub fn hooks(&self) -> Vec<u32> {
        self.cells().map(|(i, j)| self.hook(i, j) as u32).collect()
    }

    /// n(mu) = sum over rows of (i-1) * mu_i.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 * p)
            .sum()
    }

    pub fn is_r_core(&self, r: u32) -> bool {
        assert!(r >= 2);
        self.hooks().iter().all(|&h| h % r != 0)
    }

    /// Dominance partial order on partitions of equal size.
    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        if self.size() != other.size() {
            return None;
        }
        let rows = self.len().max(other.len());
        let mut le = true;
        let mut ge = true;
        let mut sa = 0u64;
        let mut sb = 0u64;
        for i in 1..=rows {
            sa += self.part(i) as u64;
            sb += other.part(i) as u64;
            if sa < sb {
                ge = false;
            }
            if sa > sb {
                le = false;
            }
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (false, true) => Some(Ordering::Greater),
            (true, false) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// Multiset union of parts (the product rule for power sums).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts: Vec<u32> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Scales every part by k (the Adams map on power sums).
    pub fn scale(&self, k: u32) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// All partitions of n in reverse lexicographic order: (n) first,
    /// (1,...,1) last.
    pub fn enumerate(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let hi = rem.min(max);
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// Number of partitions of n.
    pub fn count(n: u32) -> u64 {
        let n = n as usize;
        let mut table = vec![0u64; n + 1];
        table[0] = 1;
        for p in 1..=n {
            for m in p..=n {
                table[m] += table[m - p];
            }
        }
        table[n]
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| EngineError::Parse(format!("expected [a,b,...], got {t:?}")))?;
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let v: u32 = piece
                .parse()
                .map_err(|e| EngineError::Parse(format!("bad part {piece:?}: {e}")))?;
            parts.push(v);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(EngineError::Parse(format!(
                "parts not weakly decreasing: {t}"
            )));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by size, then reverse-lexicographic within a size class,
/// matching the enumeration order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

/// The lattice vector attached to an r-core (odd r = 2k+1): v = r*n + rho
/// with rho = (-k,...,k), sum v_i = 0, v_i congruent to i mod r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreVector {
    pub r: u32,
    pub n: Vec<i64>,
    pub v: Vec<i64>,
}

/// The n-vector of an r-core (any r >= 2): n_k = floor((lambda_i - i)/r) + 1
/// at the minimal row index i with lambda_i - i = k (mod r).
pub fn core_nvector(mu: &Partition, r: u32) -> Result<Vec<i64>> {
    assert!(r >= 2);
    if !mu.is_r_core(r) {
        return Err(EngineError::NotRCore(mu.to_string(), r));
    }
    let ri = r as i64;
    let mut n = vec![None; r as usize];
    // residues of lambda_i - i cycle with period r on the zero tail, so the
    // scan terminates by i = l + r
    for i in 1..=(mu.len() + r as usize) {
        let b = mu.part(i) as i64 - i as i64;
        let k = b.rem_euclid(ri) as usize;
        if n[k].is_none() {
            n[k] = Some(b.div_euclid(ri) + 1);
        }
    }
    let n: Vec<i64> = n.into_iter().map(|x| x.expect("scan covers residues")).collect();
    debug_assert_eq!(n.iter().sum::<i64>(), 0);
    Ok(n)
}

/// Shifted vector r*n + (0,1,...,r-1); for odd r this is v + k componentwise.
/// Valid for every r >= 2 and used wherever only Vandermonde ratios matter.
pub fn core_shifted_vector(mu: &Partition, r: u32) -> Result<Vec<i64>> {
    let n = core_nvector(mu, r)?;
    Ok(n
        .iter()
        .enumerate()
        .map(|(j, &nk)| r as i64 * nk + j as i64)
        .collect())
}

pub fn core_to_vector(mu: &Partition, r: u32) -> Result<CoreVector> {
    if r % 2 == 0 {
        return Err(EngineError::EvenModulus(r));
    }
    let n = core_nvector(mu, r)?;
    let k = (r as i64 - 1) / 2;
    let v: Vec<i64> = n
        .iter()
        .enumerate()
        .map(|(j, &nk)| r as i64 * nk + (j as i64 - k))
        .collect();
    debug_assert_eq!(v.iter().sum::<i64>(), 0);
    Ok(CoreVector { r, n, v })
}

/// Reconstructs the r-core from its n-vector. Inverse of `core_nvector`.
pub fn vector_to_core(r: u32, n: &[i64]) -> Result<Partition> {
    assert_eq!(n.len(), r as usize);
    if n.iter().sum::<i64>() != 0 {
        return Err(EngineError::InvalidParam(
            "n-vector must sum to zero".into(),
        ));
    }
    let ri = r as i64;
    // beta set {lambda_i - i} = { x : x <= m_{x mod r} } with
    // m_k = r*(n_k - 1) + k
    let m: Vec<i64> = n
        .iter()
        .enumerate()
        .map(|(k, &nk)| ri * (nk - 1) + k as i64)
        .collect();
    let top = *m.iter().max().unwrap();
    let mut parts = Vec::new();
    let mut x = top;
    let mut i = 1i64;
    loop {
        if x <= m[x.rem_euclid(ri) as usize] {
            let lam = x + i;
            if lam <= 0 {
                debug_assert_eq!(lam, 0, "beta set inconsistent with a partition");
                break;
            }
            parts.push(lam as u32);
            i += 1;
        }
        x -= 1;
        if x + i <= 0 {
            break;
        }
    }
    Ok(Partition::new(parts))
}

/// The size of the core determined by its v-vector:
/// (sum v_i^2) / (2r) - (r^2 - 1)/24, always an integer.
pub fn core_size_from_vector(r: u32, v: &[i64]) -> i64 {
    let s: i64 = v.iter().map(|x| x * x).sum();
    let num = 12 * s - (r as i64 * r as i64 - 1) * r as i64;
    debug_assert_eq!(num % (24 * r as i64), 0);
    num / (24 * r as i64)
}

/// Maya diagram of a partition, stored as the finite symmetric difference
/// from the vacuum. The displayed set is {mu_1, mu_2 - 1, mu_3 - 2, ...}
/// (vacuum {0, -1, -2, ...}); insertion positions are labelled in the
/// down-shifted convention {mu_i - i}, which is what the Bernstein operator
/// components act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayaDiagram {
    /// displayed elements >= 1
    added: BTreeSet<i64>,
    /// displayed vacancies <= 0
    holes: BTreeSet<i64>,
}

pub fn maya(mu: &Partition) -> MayaDiagram {
    let mut added = BTreeSet::new();
    let mut present = BTreeSet::new();
    for (i, &p) in mu.parts().iter().enumerate() {
        let d = p as i64 - i as i64; // mu_i - i + 1 with 1-based i
        present.insert(d);
        if d >= 1 {
            added.insert(d);
        }
    }
    let mut holes = BTreeSet::new();
    // rows beyond the length contribute 1 - i for i > l, so every value
    // <= -l is present; vacancies can only occur in (-l, 0]
    let l = mu.len() as i64;
    for x in (1 - l).max(i64::MIN)..=0 {
        if !present.contains(&x) {
            holes.insert(x);
        }
    }
    MayaDiagram { added, holes }
}

impl MayaDiagram {
    /// Membership in the displayed set {mu_i - i + 1}.
    pub fn contains(&self, x: i64) -> bool {
        if x >= 1 {
            self.added.contains(&x)
        } else {
            !self.holes.contains(&x)
        }
    }

    /// Membership in the down-shifted beta set {mu_i - i}.
    pub fn beta_contains(&self, x: i64) -> bool {
        self.contains(x + 1)
    }

    pub fn to_partition(&self) -> Partition {
        let floor = self
            .holes
            .iter()
            .next()
            .copied()
            .unwrap_or(1)
            .min(0);
        let mut parts = Vec::new();
        let top = self.added.iter().next_back().copied().unwrap_or(0).max(0);
        let mut i = 1i64;
        for x in (floor..=top).rev() {
            if self.contains(x) {
                let lam = x + i - 1;
                if lam <= 0 {
                    break;
                }
                parts.push(lam as u32);
                i += 1;
            }
        }
        Partition::new(parts)
    }

    /// Number of displayed elements strictly above x (finite by cofiniteness).
    fn count_above(&self, x: i64) -> i64 {
        let above_added = self.added.range((x + 1).max(1)..).count() as i64;
        if x >= 0 {
            above_added
        } else {
            // vacuum elements in (x, 0] minus holes there
            let span = -x;
            let holes_in = self.holes.range(x + 1..=0).count() as i64;
            above_added + span - holes_in
        }
    }
}

/// Inserts a particle at beta position i (the {mu_i - i} convention) and
/// shifts, returning the unique new partition and the fermionic sign. The
/// displayed sets satisfy D(new) + 1 = {i + 1} union D(old).
pub fn maya_insert(m: &MayaDiagram, i: i64) -> Result<(Partition, i32)> {
    let slot = i + 1;
    if m.contains(slot) {
        return Err(EngineError::OccupiedSlot(i));
    }
    let sign = if m.count_above(slot) % 2 == 0 { 1 } else { -1 };
    let mut d = m.clone();
    // insert the displayed slot
    if slot >= 1 {
        d.added.insert(slot);
    } else {
        d.holes.remove(&slot);
    }
    // shift the whole set down by one
    let shifted_added: BTreeSet<i64> = d.added.iter().map(|x| x - 1).filter(|&x| x >= 1).collect();
    let mut shifted_holes: BTreeSet<i64> = d.holes.iter().map(|x| x - 1).collect();
    // displayed 0 comes from old slot 1; it is a hole unless occupied
    if !d.contains(1) {
        shifted_holes.insert(0);
    }
    let out = MayaDiagram {
        added: shifted_added,
        holes: shifted_holes,
    };
    Ok((out.to_partition(), sign))
}
