use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::engine::{Cmp, Exp, IPoly, Term};
use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, VarSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Elimination order: grevlex on the first `block` variables of the
    /// sequence, ties broken by grevlex on the remaining ones.
    Elimination {
        block: usize,
    },
}

/// A monomial order together with the variable sequence it ranks
/// (first variable largest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub sequence: Vec<String>,
}

impl MonomialOrder {
    pub fn grevlex(ring: &VarSpec) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            sequence: ring.names().to_vec(),
        }
    }

    pub fn lex(ring: &VarSpec) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Lex,
            sequence: ring.names().to_vec(),
        }
    }

    /// Block order with `first` leading (in the given order), the rest of the
    /// ring's variables after them in declaration order.
    pub fn elimination(ring: &VarSpec, first: &[String]) -> MonomialOrder {
        let mut sequence: Vec<String> = first.to_vec();
        sequence.extend(ring.names().iter().filter(|n| !first.contains(n)).cloned());
        MonomialOrder {
            kind: OrderKind::Elimination { block: first.len() },
            sequence,
        }
    }

    pub fn with_sequence(kind: OrderKind, sequence: Vec<String>) -> MonomialOrder {
        MonomialOrder { kind, sequence }
    }

    pub(crate) fn cmp(&self) -> Cmp {
        match self.kind {
            OrderKind::Lex => Cmp::Lex,
            OrderKind::Grevlex => Cmp::Grevlex,
            OrderKind::Elimination { block } => Cmp::Block(block),
        }
    }

    /// `perm[k]` is the ring index of the `k`-th variable in the sequence.
    pub(crate) fn permutation(&self, ring: &VarSpec) -> Result<Vec<usize>> {
        if self.sequence.len() != ring.len() {
            return Err(Error::RingMismatch(format!(
                "order sequence {:?} does not match ring {ring}",
                self.sequence
            )));
        }
        let mut perm = Vec::with_capacity(ring.len());
        for name in &self.sequence {
            let i = ring
                .index(name)
                .ok_or_else(|| Error::RingMismatch(format!("order mentions unknown variable `{name}`")))?;
            if perm.contains(&i) {
                return Err(Error::precondition(format!("variable `{name}` repeated in order")));
            }
            perm.push(i);
        }
        if let OrderKind::Elimination { block } = self.kind {
            if block > ring.len() {
                return Err(Error::precondition("elimination block larger than the ring"));
            }
        }
        Ok(perm)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::Lex => write!(f, "lex")?,
            OrderKind::Grevlex => write!(f, "grevlex")?,
            OrderKind::Elimination { block } => write!(f, "elim{block}")?,
        }
        write!(f, "({})", self.sequence.join(","))
    }
}

pub(crate) fn to_internal(p: &Poly, perm: &[usize], cmp: Cmp) -> IPoly {
    let terms = p
        .terms()
        .map(|(m, c)| {
            let exp: Exp = perm.iter().map(|&i| m.exps()[i] as u32).collect();
            Term {
                deg: exp.iter().sum(),
                exp,
                coeff: c.clone(),
            }
        })
        .collect();
    IPoly::from_terms(terms, cmp)
}

pub(crate) fn from_internal(p: &IPoly, perm: &[usize], ring: &Arc<VarSpec>) -> Poly {
    let mut map = std::collections::BTreeMap::new();
    for t in &p.terms {
        debug_assert!(!t.coeff.is_zero());
        let mut m = Mono::one(ring.len());
        for (k, &i) in perm.iter().enumerate() {
            m.0[i] = t.exp[k] as i32;
        }
        map.insert(m, t.coeff.clone());
    }
    Poly::from_map_unchecked(ring, map)
}
