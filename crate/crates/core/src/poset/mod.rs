//! Finite posets whose elements carry variable labels.
//!
//! The order is stored twice: as the full strict relation (one bitset per
//! element) and as the cover relation of the Hasse diagram. Element ids are
//! positions `0..len`; variable labels are independent of ids so that
//! induced subposets and contractions keep their original variables.

mod catalog;
mod random;
mod text;

use std::collections::{BTreeMap, BTreeSet};

pub use catalog::{planar_catalog, Catalog};
pub use random::{random_connected_poset, random_poset, random_separated_poset};

use crate::algebra::VarIndex;
use crate::error::{Error, Result};

pub type ElementId = usize;

/// Bitset over element ids.
pub type Mask = u64;

/// Largest poset the bitset representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// Size bound for exponential-time operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_elems: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elems: 10 }
    }
}

impl Limits {
    pub fn new(max_elems: usize) -> Self {
        Limits { max_elems }
    }

    pub fn check(&self, size: usize) -> Result<()> {
        if size > self.max_elems {
            Err(Error::SizeExceeded { size, bound: self.max_elems })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    vars: Vec<VarIndex>,
    /// `below[b]` has bit `a` set iff `a < b`.
    below: Vec<Mask>,
    /// `above[a]` has bit `b` set iff `a < b`.
    above: Vec<Mask>,
    /// Cover pairs `(a, b)` with `a ⋖ b`, sorted.
    covers: Vec<(ElementId, ElementId)>,
}

/// An antichain `Z` such that every other element lies below all of `Z` or
/// above all of `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingSubset {
    pub members: Vec<ElementId>,
    pub below: Vec<ElementId>,
    pub above: Vec<ElementId>,
}

impl SeparatingSubset {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members_mask(&self) -> Mask {
        to_mask(&self.members)
    }

    pub fn below_mask(&self) -> Mask {
        to_mask(&self.below)
    }

    pub fn above_mask(&self) -> Mask {
        to_mask(&self.above)
    }

    /// A separator splits the computation unless it is a single extreme
    /// element.
    pub fn is_nontrivial(&self) -> bool {
        self.k() >= 2 || (!self.below.is_empty() && !self.above.is_empty())
    }
}

pub fn to_mask(ids: &[ElementId]) -> Mask {
    ids.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_ids(m: Mask) -> impl Iterator<Item = ElementId> {
    (0..MAX_ELEMENTS).filter(move |&i| m >> i & 1 == 1)
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

impl Poset {
    /// Builds a poset from labeled elements and relations `(a, b)` meaning
    /// `a < b`. Transitive consequences are inferred; redundant pairs are
    /// allowed.
    pub fn new(elements: Vec<(String, VarIndex)>, relations: &[(ElementId, ElementId)]) -> Result<Poset> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeExceeded { size: n, bound: MAX_ELEMENTS });
        }
        let mut seen_names = BTreeSet::new();
        let mut seen_vars = BTreeSet::new();
        for (name, v) in &elements {
            if !seen_names.insert(name.as_str()) {
                return Err(Error::DuplicateElement(name.clone()));
            }
            if !seen_vars.insert(*v) {
                return Err(Error::DuplicateElement(format!("variable x{v}")));
            }
        }
        let mut above = vec![0 as Mask; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            above[a] |= 1 << b;
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            for i in 0..n {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i] >> i & 1 == 1) {
            return Err(Error::CycleDetected(i));
        }
        let mut below = vec![0 as Mask; n];
        for (a, &up) in above.iter().enumerate() {
            for b in mask_ids(up) {
                below[b] |= 1 << a;
            }
        }
        let mut covers = Vec::new();
        for (a, &up) in above.iter().enumerate() {
            for b in mask_ids(up) {
                if up & below[b] == 0 {
                    covers.push((a, b));
                }
            }
        }
        let (names, vars) = elements.into_iter().unzip();
        Ok(Poset { names, vars, below, above, covers })
    }

    /// Elements named `x1..xn` with variables `0..n`.
    pub fn from_relations(n: usize, relations: &[(ElementId, ElementId)]) -> Result<Poset> {
        let elements = (0..n).map(|i| (format!("x{}", i + 1), i)).collect();
        Poset::new(elements, relations)
    }

    /// Elements given by name, variables in declaration order, relations by
    /// name.
    pub fn from_names(names: &[&str], relations: &[(&str, &str)]) -> Result<Poset> {
        let elements = names.iter().enumerate().map(|(i, s)| (s.to_string(), i)).collect();
        let idx = |s: &str| {
            names.iter().position(|&n| n == s).ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let rels = relations
            .iter()
            .map(|&(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(elements, &rels)
    }

    pub fn empty() -> Poset {
        Poset::new(Vec::new(), &[]).expect("empty poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn name(&self, e: ElementId) -> &str {
        &self.names[e]
    }

    pub fn var(&self, e: ElementId) -> VarIndex {
        self.vars[e]
    }

    pub fn vars(&self) -> &[VarIndex] {
        &self.vars
    }

    pub fn elements(&self) -> impl Iterator<Item = (ElementId, &str, VarIndex)> {
        self.names.iter().zip(&self.vars).enumerate().map(|(i, (n, &v))| (i, n.as_str(), v))
    }

    pub fn find(&self, name: &str) -> Result<ElementId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn element_of_var(&self, v: VarIndex) -> Option<ElementId> {
        self.vars.iter().position(|&w| w == v)
    }

    /// Name of the element carrying variable `v`, or `x<v>` if none does.
    pub fn var_name(&self, v: VarIndex) -> String {
        match self.element_of_var(v) {
            Some(e) => self.names[e].clone(),
            None => crate::algebra::default_var_name(v),
        }
    }

    /// Boxed naming function for the `display_with` helpers.
    pub fn namer(&self) -> impl Fn(VarIndex) -> String + '_ {
        move |v| self.var_name(v)
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: ElementId, b: ElementId) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    pub fn below_mask(&self, e: ElementId) -> Mask {
        self.below[e]
    }

    pub fn above_mask(&self, e: ElementId) -> Mask {
        self.above[e]
    }

    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.covers.binary_search(&(a, b)).is_ok()
    }

    /// All comparable pairs `(a, b)` with `a < b`.
    pub fn relations(&self) -> Vec<(ElementId, ElementId)> {
        self.ids().flat_map(|a| mask_ids(self.above[a]).map(move |b| (a, b))).collect()
    }

    /// Elements of `within` with nothing above them inside `within`.
    pub fn maximal_in(&self, within: Mask) -> Mask {
        mask_ids(within)
            .filter(|&e| self.above[e] & within == 0)
            .fold(0, |m, e| m | 1 << e)
    }

    pub fn minimal_in(&self, within: Mask) -> Mask {
        mask_ids(within)
            .filter(|&e| self.below[e] & within == 0)
            .fold(0, |m, e| m | 1 << e)
    }

    pub fn maximal(&self) -> Vec<ElementId> {
        mask_ids(self.maximal_in(self.full())).collect()
    }

    pub fn minimal(&self) -> Vec<ElementId> {
        mask_ids(self.minimal_in(self.full())).collect()
    }

    /// Adds relations `a < b` for incomparable pairs and closes transitively.
    pub fn add_relations(&self, pairs: &[(ElementId, ElementId)]) -> Result<Poset> {
        for &(a, b) in pairs {
            if a >= self.len() || b >= self.len() {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            if self.comparable(a, b) {
                return Err(Error::NotIncomparable(a, b));
            }
        }
        let mut rels = self.covers.clone();
        rels.extend_from_slice(pairs);
        Poset::new(self.labels(), &rels)
    }

    fn labels(&self) -> Vec<(String, VarIndex)> {
        self.names.iter().cloned().zip(self.vars.iter().copied()).collect()
    }

    /// Elements ordered so that everything above `a` comes before `a`.
    fn top_down_order(&self) -> Vec<ElementId> {
        let mut order: Vec<ElementId> = self.ids().collect();
        order.sort_by_key(|&e| (self.above[e].count_ones(), e));
        order
    }

    /// The Möbius function as a full matrix, `m[a][b] = μ(a, b)`.
    pub fn mobius_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut mu = vec![vec![0i64; n]; n];
        let order = self.top_down_order();
        for b in self.ids() {
            mu[b][b] = 1;
            // `order` lists c before every a below it.
            for &a in &order {
                if self.less(a, b) {
                    let s: i64 = mask_ids(self.above[a] & (self.below[b] | 1 << b))
                        .map(|c| mu[c][b])
                        .sum();
                    mu[a][b] = -s;
                }
            }
        }
        mu
    }

    pub fn mobius(&self, a: ElementId, b: ElementId) -> i64 {
        if a == b {
            return 1;
        }
        if !self.less(a, b) {
            return 0;
        }
        self.mobius_matrix()[a][b]
    }

    /// All linear extensions as words from a maximum down to a minimum, in
    /// lexicographic order of element ids.
    pub fn linear_extensions(&self, limits: &Limits) -> Result<Vec<Vec<ElementId>>> {
        limits.check(self.len())?;
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(self.len());
        self.extend_words(0, &mut word, &mut out);
        Ok(out)
    }

    fn extend_words(&self, placed: Mask, word: &mut Vec<ElementId>, out: &mut Vec<Vec<ElementId>>) {
        if placed == self.full() {
            out.push(word.clone());
            return;
        }
        for e in mask_ids(self.maximal_in(self.full() & !placed)) {
            word.push(e);
            self.extend_words(placed | 1 << e, word, out);
            word.pop();
        }
    }

    /// Whether `word` lists every element once with larger elements first.
    pub fn is_linear_extension(&self, word: &[ElementId]) -> bool {
        if word.len() != self.len() {
            return false;
        }
        let mut placed: Mask = 0;
        for &e in word {
            if e >= self.len() || placed >> e & 1 == 1 || self.above[e] & !placed != 0 {
                return false;
            }
            placed |= 1 << e;
        }
        true
    }

    /// Number of linear extensions, by dynamic programming over up-sets.
    pub fn count_linear_extensions(&self) -> num_bigint::BigUint {
        use num_bigint::BigUint;
        let mut counts: BTreeMap<Mask, BigUint> = BTreeMap::new();
        counts.insert(0, BigUint::from(1u32));
        for _ in 0..self.len() {
            let mut next: BTreeMap<Mask, BigUint> = BTreeMap::new();
            for (placed, c) in &counts {
                for e in mask_ids(self.maximal_in(self.full() & !placed)) {
                    *next.entry(placed | 1 << e).or_default() += c;
                }
            }
            counts = next;
        }
        counts.remove(&self.full()).unwrap_or_default()
    }

    /// Every separating subset, ordered lexicographically by members.
    pub fn separating_subsets(&self) -> Vec<SeparatingSubset> {
        let mut out = Vec::new();
        self.antichains_from(0, 0, self.full(), &mut out);
        out
    }

    fn antichains_from(&self, start: usize, chosen: Mask, allowed: Mask, out: &mut Vec<SeparatingSubset>) {
        for e in start..self.len() {
            if allowed >> e & 1 == 0 {
                continue;
            }
            let z = chosen | 1 << e;
            if let Some(s) = self.separator_for(z) {
                out.push(s);
            }
            let next_allowed = allowed & !(self.below[e] | self.above[e] | 1 << e);
            self.antichains_from(e + 1, z, next_allowed, out);
        }
    }

    /// The separating subset with members `z`, if `z` is one.
    pub fn separator_for(&self, z: Mask) -> Option<SeparatingSubset> {
        if z == 0 {
            return None;
        }
        let members: Vec<ElementId> = mask_ids(z).collect();
        if members.iter().any(|&a| self.below[a] & z != 0) {
            return None;
        }
        let below = members.iter().fold(self.full(), |m, &a| m & self.below[a]);
        let above = members.iter().fold(self.full(), |m, &a| m & self.above[a]);
        if below | above | z != self.full() {
            return None;
        }
        Some(SeparatingSubset { members, below: mask_ids(below).collect(), above: mask_ids(above).collect() })
    }

    /// Connected components of the Hasse diagram as masks, ordered by their
    /// smallest element.
    pub fn components(&self) -> Vec<Mask> {
        let mut seen: Mask = 0;
        let mut out = Vec::new();
        for s in self.ids() {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp: Mask = 1 << s;
            loop {
                let grown = mask_ids(comp).fold(comp, |m, e| m | self.below[e] | self.above[e]);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `|covers| - |elements| + components`.
    pub fn cycle_rank(&self) -> usize {
        self.covers.len() + self.components().len() - self.len()
    }

    pub fn is_hasse_tree(&self) -> bool {
        self.is_connected() && self.cycle_rank() == 0
    }

    /// Merges the ends of the cover edge `a ⋖ b` into one element that keeps
    /// `a`'s name and variable. Ids above `b` shift down by one.
    pub fn contract_edge(&self, a: ElementId, b: ElementId) -> Result<Poset> {
        if a >= self.len() || b >= self.len() || !self.is_cover(a, b) {
            return Err(Error::NotCoverEdge(a, b));
        }
        let map = |e: ElementId| {
            let e = if e == b { a } else { e };
            if e > b {
                e - 1
            } else {
                e
            }
        };
        let labels = self.labels().into_iter().enumerate().filter(|&(i, _)| i != b).map(|(_, l)| l).collect();
        let rels: Vec<_> = self
            .relations()
            .into_iter()
            .map(|(c, d)| (map(c), map(d)))
            .filter(|(c, d)| c != d)
            .collect();
        Poset::new(labels, &rels)
    }

    /// The subposet on `within`, keeping names and variables; ids are
    /// renumbered in increasing order.
    pub fn induced(&self, within: Mask) -> Poset {
        let ids: Vec<ElementId> = mask_ids(within & self.full()).collect();
        let pos = |e: ElementId| ids.iter().position(|&x| x == e).expect("member");
        let labels = ids.iter().map(|&e| (self.names[e].clone(), self.vars[e])).collect();
        // Restricted covers would miss relations through removed elements.
        let rels: Vec<_> = self
            .relations()
            .into_iter()
            .filter(|(c, d)| within >> c & 1 == 1 && within >> d & 1 == 1)
            .map(|(c, d)| (pos(c), pos(d)))
            .collect();
        Poset::new(labels, &rels).expect("subposet of a poset")
    }

    /// Same order and names with every variable relabeled by `f`.
    pub fn relabel_vars(&self, f: impl Fn(VarIndex) -> VarIndex) -> Result<Poset> {
        let labels = self.names.iter().cloned().zip(self.vars.iter().map(|&v| f(v))).collect();
        Poset::new(labels, &self.covers)
    }

    /// Same order with names replaced by `f(old name)`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Poset> {
        let labels = self.names.iter().map(|n| f(n)).zip(self.vars.iter().copied()).collect();
        Poset::new(labels, &self.covers)
    }

    /// Whether `0, 1, ..., n-1` read as a word is a linear extension.
    pub fn identity_is_extension(&self) -> bool {
        self.relations().iter().all(|&(a, b)| b < a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Poset {
        Poset::from_names(&["z", "x1", "x2"], &[("x1", "z"), ("x2", "z")]).unwrap()
    }

    #[test]
    fn build_and_reduce() {
        assert_eq!(v_poset().covers().len(), 2);
        let c = Poset::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(c.covers(), &[(0, 1), (1, 2)]);
        let cyc = Poset::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(cyc, Err(Error::CycleDetected(_))));
    }

    #[test]
    fn adding_relations() {
        let anti = Poset::from_relations(2, &[]).unwrap();
        let ch = anti.add_relations(&[(0, 1)]).unwrap();
        assert_eq!(ch.covers(), &[(0, 1)]);
        let v = v_poset().add_relations(&[(1, 2)]).unwrap();
        assert_eq!(v.covers(), &[(1, 2), (2, 0)]);
        assert!(v.less(1, 0));
        assert_eq!(ch.add_relations(&[(0, 1)]), Err(Error::NotIncomparable(0, 1)));
    }

    #[test]
    fn mobius_values() {
        let d = Catalog::Diamond.build();
        let t = d.find("t").unwrap();
        let z = d.find("z").unwrap();
        assert_eq!(d.mobius(t, t), 1);
        assert_eq!(d.mobius(t, z), 1);
        let ch = Catalog::Chain(2).build();
        assert_eq!(ch.mobius(1, 0), -1);
    }

    #[test]
    fn extensions() {
        let lim = Limits::default();
        assert_eq!(Poset::from_relations(3, &[]).unwrap().linear_extensions(&lim).unwrap().len(), 6);
        assert_eq!(Catalog::Chain(3).build().linear_extensions(&lim).unwrap().len(), 1);
        assert_eq!(v_poset().linear_extensions(&lim).unwrap(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        let big = Poset::from_relations(11, &[]).unwrap();
        assert_eq!(big.linear_extensions(&lim), Err(Error::SizeExceeded { size: 11, bound: 10 }));
        assert_eq!(big.count_linear_extensions(), num_bigint::BigUint::from(39916800u64));
    }

    #[test]
    fn separators() {
        let ch = Catalog::Chain(3).build();
        let s: Vec<_> = ch.separating_subsets().into_iter().map(|s| s.members).collect();
        assert_eq!(s, vec![vec![0], vec![1], vec![2]]);
        let s: Vec<_> = v_poset().separating_subsets().into_iter().map(|s| s.members).collect();
        assert_eq!(s, vec![vec![0], vec![1, 2]]);
        let two = Catalog::Chain(2).build().disjoint_union(&Catalog::Chain(2).build());
        assert!(two.separating_subsets().is_empty());
    }

    #[test]
    fn connectivity_and_rank() {
        let anti = Poset::from_relations(2, &[]).unwrap();
        assert!(!anti.is_connected());
        assert_eq!(anti.cycle_rank(), 0);
        let d = Catalog::Diamond.build();
        assert!(d.is_connected());
        assert_eq!(d.cycle_rank(), 1);
        assert_eq!(Catalog::Star(4).build().cycle_rank(), 0);
    }

    #[test]
    fn contraction() {
        let ch = Catalog::Chain(2).build();
        let c = ch.contract_edge(1, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.name(0), "x2");
        let d = Catalog::Diamond.build();
        let (t, x1, x2, z) = (d.find("t").unwrap(), d.find("x1").unwrap(), d.find("x2").unwrap(), d.find("z").unwrap());
        let q = d.contract_edge(t, x1).unwrap();
        // merged element m = t lies below x2 (from t < x2) and below z
        let (m, x2q, zq) = (q.find("t").unwrap(), q.find("x2").unwrap(), q.find("z").unwrap());
        assert_eq!(q.len(), 3);
        assert!(q.is_cover(m, x2q) && q.is_cover(x2q, zq) && q.less(m, zq));
        assert_eq!(d.contract_edge(t, z), Err(Error::NotCoverEdge(t, z)));
        let _ = x2;
    }

    #[test]
    fn induced_keeps_relations_through_removed_elements() {
        let ch = Catalog::Chain(3).build();
        let sub = ch.induced(0b101);
        assert_eq!(sub.len(), 2);
        assert!(sub.less(1, 0));
        assert_eq!(sub.var(1), 2);
    }
}
