//! Sum over linear extensions by dynamic programming on up-sets.
//!
//! A word is built from the top: the placed elements always form an up-set
//! and the next element is a maximal element of the rest. The value of a
//! state `(placed, last)` is the sum over all completions of the product of
//! the remaining step weights, so every state is evaluated once.
//!
//! States of equal size only depend on the next size up, which makes each
//! layer a data-parallel map.

use std::collections::{BTreeSet, HashMap};

use crate::exec::Strategy;
use crate::poset::{mask_ids, ElementId, Mask, Poset};

/// Sums split by whether the marked step `(from, to)` occurs.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Split<V> {
    pub plain: V,
    pub marked: V,
}

pub(crate) struct Ops<'a, V> {
    pub one: V,
    pub zero: V,
    /// `weight(a, b) * v` for the step `a` then `b`, with `placed` the
    /// elements before `b`.
    pub step: &'a (dyn Fn(&V, Mask, ElementId, ElementId) -> V + Sync),
    pub sum: &'a (dyn Fn(Vec<V>) -> V + Sync),
}

type State = (Mask, ElementId);

fn layers(p: &Poset) -> Vec<Vec<State>> {
    let full = p.full();
    let mut out: Vec<Vec<State>> = Vec::new();
    let first: Vec<State> = mask_ids(p.maximal_in(full)).map(|e| (1 << e, e)).collect();
    out.push(first);
    while out.last().is_some_and(|l| l.first().is_some_and(|s| s.0 != full)) {
        let mut next = BTreeSet::new();
        for &(placed, _) in out.last().unwrap() {
            for b in mask_ids(p.maximal_in(full & !placed)) {
                next.insert((placed | 1 << b, b));
            }
        }
        out.push(next.into_iter().collect());
    }
    out
}

/// Returns the extension sum, split at the optional marked step.
pub(crate) fn extension_sum<V>(p: &Poset, strategy: Strategy, marked: Option<(ElementId, ElementId)>, ops: &Ops<'_, V>) -> Split<V>
where
    V: Clone + Send + Sync,
{
    if p.is_empty() {
        return Split { plain: ops.one.clone(), marked: ops.zero.clone() };
    }
    let full = p.full();
    let layers = layers(p);
    let mut values: HashMap<State, Split<V>> = HashMap::new();
    for layer in layers.iter().rev() {
        let computed = strategy.map(layer, |&(placed, a)| {
            if placed == full {
                return Split { plain: ops.one.clone(), marked: ops.zero.clone() };
            }
            let mut plain = Vec::new();
            let mut mark = Vec::new();
            for b in mask_ids(p.maximal_in(full & !placed)) {
                let next = &values[&(placed | 1 << b, b)];
                if marked == Some((a, b)) {
                    mark.push((ops.step)(&(ops.sum)(vec![next.plain.clone(), next.marked.clone()]), placed, a, b));
                } else {
                    plain.push((ops.step)(&next.plain, placed, a, b));
                    mark.push((ops.step)(&next.marked, placed, a, b));
                }
            }
            Split { plain: (ops.sum)(plain), marked: (ops.sum)(mark) }
        });
        values = layer.iter().copied().zip(computed).collect();
    }
    let (plain, mark): (Vec<V>, Vec<V>) = layers[0]
        .iter()
        .map(|s| {
            let v = &values[s];
            (v.plain.clone(), v.marked.clone())
        })
        .unzip();
    Split { plain: (ops.sum)(plain), marked: (ops.sum)(mark) }
}
