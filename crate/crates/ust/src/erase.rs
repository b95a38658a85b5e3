//! Forward, backward and mixed loop erasure.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use crate::error::{Result, UstError};
use crate::walk::WalkPath;

/// Forward erasure on any label sequence: loops are removed in the order
/// they close.
pub fn forward_erase<T: Copy + Eq + Hash>(xs: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(xs.len());
    let mut at: HashMap<T, usize> = HashMap::with_capacity(xs.len());
    for &x in xs {
        if let Some(&i) = at.get(&x) {
            for y in out.drain(i + 1..) {
                at.remove(&y);
            }
        } else {
            at.insert(x, out.len());
            out.push(x);
        }
    }
    out
}

/// Time reversal of the forward erasure of the reversed sequence.
pub fn backward_erase<T: Copy + Eq + Hash>(xs: &[T]) -> Vec<T> {
    let rev: Vec<T> = xs.iter().rev().copied().collect();
    let mut out = forward_erase(&rev);
    out.reverse();
    out
}

/// Forward-erase `xs[..=t]`, keep it up to its first vertex `y` seen again
/// after `t`, then append the backward erasure from the last visit to `y`.
pub fn mixed_erase<T: Copy + Eq + Hash>(xs: &[T], t: usize) -> Vec<T> {
    let head = forward_erase(&xs[..=t]);
    let future: HashSet<T> = xs[t..].iter().copied().collect();
    let s = head.iter().position(|y| future.contains(y)).expect("x_t is in both parts");
    let tau = xs.iter().rposition(|x| *x == head[s]).expect("head vertices occur in xs");
    let mut out = head[..s].to_vec();
    out.extend(backward_erase(&xs[tau..]));
    out
}

pub fn forward_loop_erase(x: &WalkPath) -> WalkPath {
    WalkPath::from_vertices(forward_erase(x.vertices())).expect("erasure keeps the first vertex")
}

pub fn backward_loop_erase(x: &WalkPath) -> WalkPath {
    WalkPath::from_vertices(backward_erase(x.vertices())).expect("erasure keeps the first vertex")
}

/// Mixed erasure with the switch at index `t`, which must be a stopping
/// index of the walk for the law to agree with forward erasure.
pub fn mixed_loop_erase(x: &WalkPath, t: usize) -> Result<WalkPath> {
    if t > x.final_index() {
        return Err(UstError::StopOutOfRange(t, x.final_index()));
    }
    Ok(WalkPath::from_vertices(mixed_erase(x.vertices(), t)).expect("erasure keeps the first vertex"))
}

/// Rules that pick an index from the path prefix alone.
#[derive(Clone, Debug)]
pub enum StoppingRule {
    /// A fixed index, capped at the final one.
    Index(usize),
    /// First visit to the set, or the final index if it is never visited.
    FirstHit(HashSet<usize>),
}

impl StoppingRule {
    pub fn stop_index(&self, x: &WalkPath) -> usize {
        match self {
            StoppingRule::Index(i) => (*i).min(x.final_index()),
            StoppingRule::FirstHit(set) => {
                x.vertices().iter().position(|v| set.contains(v)).unwrap_or(x.final_index())
            }
        }
    }
}

pub trait LoopEraser: Send + Sync {
    fn name(&self) -> &str;
    fn erase(&self, x: &WalkPath) -> WalkPath;
}

pub struct ForwardEraser;

impl LoopEraser for ForwardEraser {
    fn name(&self) -> &str {
        "forward"
    }

    fn erase(&self, x: &WalkPath) -> WalkPath {
        forward_loop_erase(x)
    }
}

pub struct BackwardEraser;

impl LoopEraser for BackwardEraser {
    fn name(&self) -> &str {
        "backward"
    }

    fn erase(&self, x: &WalkPath) -> WalkPath {
        backward_loop_erase(x)
    }
}

pub struct MixedEraser {
    pub rule: StoppingRule,
}

impl LoopEraser for MixedEraser {
    fn name(&self) -> &str {
        "mixed"
    }

    fn erase(&self, x: &WalkPath) -> WalkPath {
        mixed_loop_erase(x, self.rule.stop_index(x)).expect("stop index is capped")
    }
}

/// Loop erasers selectable by name.
#[derive(Default)]
pub struct EraserRegistry {
    entries: BTreeMap<String, Box<dyn LoopEraser>>,
}

impl EraserRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Forward, backward, and mixed switching after the first step.
    pub fn with_defaults() -> Self {
        let mut r = Self::new();
        r.register(Box::new(ForwardEraser));
        r.register(Box::new(BackwardEraser));
        r.register(Box::new(MixedEraser { rule: StoppingRule::Index(1) }));
        r
    }

    pub fn register(&mut self, e: Box<dyn LoopEraser>) {
        self.entries.insert(e.name().to_string(), e);
    }

    pub fn get(&self, name: &str) -> Result<&dyn LoopEraser> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| UstError::UnknownEraser(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_traced_examples() {
        let abc = ['a', 'b', 'c'];
        assert_eq!(forward_erase(&abc), abc);
        assert_eq!(backward_erase(&abc), abc);
        assert_eq!(forward_erase(&['a', 'b', 'a', 'c']), ['a', 'c']);
        assert_eq!(backward_erase(&['a', 'b', 'a', 'c']), ['a', 'c']);
        assert_eq!(forward_erase(&['a', 'b', 'c', 'a', 'c']), ['a', 'c']);
        assert_eq!(backward_erase(&['a', 'b', 'c', 'a', 'c']), ['a', 'b', 'c']);
    }

    #[test]
    fn mixed_extremes() {
        let x = [0usize, 1, 2, 0, 3, 1, 4, 2, 5];
        assert_eq!(mixed_erase(&x, x.len() - 1), forward_erase(&x));
        // switching at 0 keeps only what follows the last visit to the start
        assert_eq!(mixed_erase(&x, 0), backward_erase(&x[3..]));
        assert_ne!(mixed_erase(&x, 0), backward_erase(&x));
        let once = [0usize, 1, 2, 1, 3, 2, 4];
        assert_eq!(mixed_erase(&once, 0), backward_erase(&once));
    }

    #[test]
    fn registry_lookup() {
        let r = EraserRegistry::with_defaults();
        assert_eq!(r.names(), vec!["backward", "forward", "mixed"]);
        let x = WalkPath::from_vertices(vec![0, 1, 2, 0, 2]).unwrap();
        assert_eq!(r.get("forward").unwrap().erase(&x).vertices(), &[0, 2]);
        assert_eq!(r.get("backward").unwrap().erase(&x).vertices(), &[0, 1, 2]);
        assert!(matches!(r.get("sideways"), Err(UstError::UnknownEraser(_))));
    }

    #[test]
    fn stop_index_out_of_range() {
        let x = WalkPath::from_vertices(vec![0, 1]).unwrap();
        assert_eq!(mixed_loop_erase(&x, 2).unwrap_err(), UstError::StopOutOfRange(2, 1));
    }
}
