//! Perfect matchings of a domain.

use std::sync::Arc;

use crate::coords::{Edge, Kind, Vertex};
use crate::domain::HexDomain;
use crate::error::{HexError, Result};

/// A perfect matching, stored as the matched kind of every white vertex.
#[derive(Clone, Debug)]
pub struct DimerConfig {
    domain: Arc<HexDomain>,
    kinds: Vec<Kind>,
}

impl PartialEq for DimerConfig {
    fn eq(&self, other: &Self) -> bool {
        self.kinds == other.kinds && (Arc::ptr_eq(&self.domain, &other.domain) || self.edges() == other.edges())
    }
}

impl Eq for DimerConfig {}

impl DimerConfig {
    /// Checks that `kinds` covers every vertex exactly once.
    pub fn from_kinds(domain: Arc<HexDomain>, kinds: Vec<Kind>) -> Result<DimerConfig> {
        if kinds.len() != domain.num_whites() {
            return Err(HexError::NotPerfect(format!(
                "{} white choices for {} white vertices",
                kinds.len(),
                domain.num_whites()
            )));
        }
        if domain.num_whites() != domain.num_blacks() {
            return Err(HexError::NotPerfect("domain is unbalanced".into()));
        }
        let mut covered = vec![false; domain.num_blacks()];
        for (i, &k) in kinds.iter().enumerate() {
            let w = domain.white(i);
            let e = Edge::new(w.u, w.v, k);
            let b = e.black();
            let j = domain
                .black_index(b.u, b.v)
                .ok_or_else(|| HexError::NotPerfect(format!("edge {e:?} leaves the domain")))?;
            if std::mem::replace(&mut covered[j], true) {
                return Err(HexError::NotPerfect(format!("black vertex {b:?} covered twice")));
            }
        }
        Ok(DimerConfig { domain, kinds })
    }

    pub fn from_edges(domain: Arc<HexDomain>, edges: &[Edge]) -> Result<DimerConfig> {
        let mut kinds: Vec<Option<Kind>> = vec![None; domain.num_whites()];
        for e in edges {
            let i = domain
                .white_index(e.u, e.v)
                .ok_or_else(|| HexError::NotPerfect(format!("edge {e:?} leaves the domain")))?;
            if kinds[i].replace(e.kind).is_some() {
                return Err(HexError::NotPerfect(format!("white vertex {:?} covered twice", e.white())));
            }
        }
        let kinds = kinds
            .into_iter()
            .enumerate()
            .map(|(i, k)| k.ok_or_else(|| HexError::NotPerfect(format!("white vertex {:?} uncovered", domain.white(i)))))
            .collect::<Result<Vec<_>>>()?;
        DimerConfig::from_kinds(domain, kinds)
    }

    /// Parses canonical edge indices `3 * white_index + kind`.
    pub fn from_edge_indices(domain: Arc<HexDomain>, indices: &[usize]) -> Result<DimerConfig> {
        let edges = indices
            .iter()
            .map(|&i| domain.edge_from_index(i).ok_or_else(|| HexError::NotPerfect(format!("bad edge index {i}"))))
            .collect::<Result<Vec<_>>>()?;
        DimerConfig::from_edges(domain, &edges)
    }

    pub fn domain(&self) -> &Arc<HexDomain> {
        &self.domain
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn kind_of(&self, white: usize) -> Kind {
        self.kinds[white]
    }

    /// Matched edges in canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        self.kinds
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let w = self.domain.white(i);
                Edge::new(w.u, w.v, k)
            })
            .collect()
    }

    pub fn edge_indices(&self) -> Vec<usize> {
        self.kinds.iter().enumerate().map(|(i, &k)| 3 * i + k.index()).collect()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.domain.white_index(e.u, e.v).is_some_and(|i| self.kinds[i] == e.kind)
    }

    pub fn contains_ref(&self, white: usize, kind: Kind) -> bool {
        self.kinds[white] == kind
    }

    /// The matched edge at a vertex of the domain.
    pub fn edge_at(&self, t: Vertex) -> Option<Edge> {
        match t.color {
            crate::coords::Color::White => {
                let i = self.domain.white_index(t.u, t.v)?;
                Some(Edge::new(t.u, t.v, self.kinds[i]))
            }
            crate::coords::Color::Black => t.edges().into_iter().find(|&e| self.contains(e)),
        }
    }

    /// Counts of matched edges per kind.
    pub fn kind_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for k in &self.kinds {
            c[k.index()] += 1;
        }
        c
    }
}
