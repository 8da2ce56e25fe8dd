//! Elements of a k-fold tensor product of symmetric-function rings, one
//! alphabet per slot, kept internally in the power-sum basis.

use std::collections::BTreeMap;

use num::Zero;

use crate::partitions::Partition;
use crate::ring::{RatFunc, VarSet};

use super::tables;

/// Multilinear combination of p_{mu^1}[X_1] ... p_{mu^k}[X_k] with
/// rational-function coefficients; k = 0 degenerates to a scalar.
#[derive(Clone, Debug)]
pub struct TensorSymFunc {
    vars: VarSet,
    slots: usize,
    bound: u32,
    terms: BTreeMap<Vec<Partition>, RatFunc>,
}

impl TensorSymFunc {
    pub fn zero(vars: &VarSet, slots: usize, bound: u32) -> Self {
        TensorSymFunc {
            vars: vars.clone(),
            slots,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(vars: &VarSet, slots: usize, bound: u32, c: RatFunc) -> Self {
        let mut t = Self::zero(vars, slots, bound);
        if !c.is_zero() {
            t.terms.insert(vec![Partition::empty(); slots], c);
        }
        t
    }

    pub fn one(vars: &VarSet, slots: usize, bound: u32) -> Self {
        Self::scalar(vars, slots, bound, RatFunc::one(vars))
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Partition>, &RatFunc)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Partition>, c: RatFunc) {
        assert_eq!(key.len(), self.slots);
        if c.is_zero() || key.iter().any(|mu| mu.size() > self.bound) {
            return;
        }
        match self.terms.entry(key) {
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
        assert_eq!(self.slots, other.slots);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
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

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.slots, other.slots);
        let mut out = Self::zero(&self.vars, self.slots, self.bound.min(other.bound));
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<Partition> = ka
                    .iter()
                    .zip(kb)
                    .map(|(a, b)| a.union(b))
                    .collect();
                if key.iter().any(|mu| mu.size() > out.bound) {
                    continue;
                }
                out.add_term(key, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(&self.vars, self.slots, self.bound);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &crate::ring::Rat) -> Self {
        self.scale(&RatFunc::constant(&self.vars, c.clone()))
    }

    /// Adams map: every slot partition scales by k, coefficients get the
    /// variable Adams map.
    pub fn adams_full(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.vars, self.slots, self.bound);
        for (key, c) in &self.terms {
            let key2: Vec<Partition> = key.iter().map(|mu| mu.scale(k)).collect();
            if key2.iter().any(|mu| mu.size() > self.bound) {
                continue;
            }
            out.add_term(key2, c.adams(k));
        }
        out
    }

    /// Converts every slot from the p basis to the monomial basis and
    /// returns the coefficient rows.
    pub fn to_m_rows(&self) -> BTreeMap<Vec<Partition>, RatFunc> {
        let mut rows: BTreeMap<Vec<Partition>, RatFunc> = BTreeMap::new();
        for (key, c) in &self.terms {
            // expand slot by slot
            let mut partial: Vec<(Vec<Partition>, RatFunc)> = vec![(Vec::new(), c.clone())];
            for mu in key {
                let t = tables::tables(mu.size());
                let row = &t.p_to_m[t.index[mu]];
                let mut next = Vec::new();
                for (prefix, coeff) in &partial {
                    for (j, entry) in row.iter().enumerate() {
                        if entry.is_zero() {
                            continue;
                        }
                        let mut key2 = prefix.clone();
                        key2.push(t.parts[j].clone());
                        next.push((key2, coeff.mul_rat(entry)));
                    }
                }
                partial = next;
            }
            for (k2, v) in partial {
                match rows.entry(k2) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        if !v.is_zero() {
                            slot.insert(v);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add_ref(&v);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        rows
    }

    /// Pairs the last two slots through the given bilinear form on
    /// power-sum indices, producing an element with two fewer slots.
    pub fn pair_last_two<F>(&self, pairing: F) -> Self
    where
        F: Fn(&Partition, &Partition) -> RatFunc,
    {
        assert!(self.slots >= 2, "need at least two alphabets to glue");
        let mut out = Self::zero(&self.vars, self.slots - 2, self.bound);
        for (key, c) in &self.terms {
            let a = &key[self.slots - 2];
            let b = &key[self.slots - 1];
            let w = pairing(a, b);
            if w.is_zero() {
                continue;
            }
            out.add_term(key[..self.slots - 2].to_vec(), c.mul_ref(&w));
        }
        out
    }

    /// Pairs the last slot of self with the last slot of other, keeping the
    /// remaining slots of self then of other.
    pub fn pair_across<F>(&self, other: &Self, pairing: F) -> Self
    where
        F: Fn(&Partition, &Partition) -> RatFunc,
    {
        assert!(self.slots >= 1 && other.slots >= 1);
        let mut out = Self::zero(
            &self.vars,
            self.slots - 1 + other.slots - 1,
            self.bound.min(other.bound),
        );
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let w = pairing(&ka[self.slots - 1], &kb[other.slots - 1]);
                if w.is_zero() {
                    continue;
                }
                let mut key: Vec<Partition> = ka[..self.slots - 1].to_vec();
                key.extend_from_slice(&kb[..other.slots - 1]);
                out.add_term(key, ca.mul_ref(cb).mul_ref(&w));
            }
        }
        out
    }

    /// Sum of all coefficients: the image under p_k -> 1 in every slot
    /// (each alphabet set to a single variable with the degree tracked by
    /// the series grading).
    pub fn sum_coeffs(&self) -> RatFunc {
        let mut acc = RatFunc::zero(&self.vars);
        for c in self.terms.values() {
            acc = acc.add_ref(c);
        }
        acc
    }

    /// The coefficient of a specific p-basis key.
    pub fn coeff(&self, key: &[Partition]) -> RatFunc {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.vars))
    }

    pub fn equals_exact(&self, other: &Self) -> bool {
        if self.slots != other.slots {
            return false;
        }
        let keys: std::collections::BTreeSet<&Vec<Partition>> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|k| self.coeff(k).equals_exact(&other.coeff(k)))
    }
}
