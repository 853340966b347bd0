//! Monomial orders: strict multiplicative well-orders on exponent vectors.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Exps, VarTable};
use crate::error::Error;

/// Inner comparison used inside a block or as a weight tiebreak.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GradedLex,
    GradedRevLex,
}

#[derive(Clone, Debug)]
enum Kind {
    Simple(OrderKind),
    /// Weight-first, with a simple tiebreak.
    Weight { weights: Vec<BigInt>, tie: OrderKind },
    /// Ordered blocks of variable indices; earlier blocks dominate.
    /// Blocks must partition the table.
    Block { blocks: Vec<(Vec<usize>, OrderKind)> },
}

/// A total multiplicative well-order on exponent vectors of a fixed table.
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    table: Arc<VarTable>,
    kind: Kind,
}

fn cmp_simple(kind: OrderKind, u: &[u32], v: &[u32], du: u32, dv: u32) -> Ordering {
    match kind {
        OrderKind::Lex => cmp_lex(u, v),
        OrderKind::GradedLex => du.cmp(&dv).then_with(|| cmp_lex(u, v)),
        OrderKind::GradedRevLex => du.cmp(&dv).then_with(|| cmp_revlex(u, v)),
    }
}

fn cmp_lex(u: &[u32], v: &[u32]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Block comparison without materializing the restricted vectors.
fn cmp_block_restricted(
    kind: OrderKind,
    idx: &[usize],
    u: &Exps,
    v: &Exps,
    du: u32,
    dv: u32,
) -> Ordering {
    let lex = || {
        for &i in idx {
            match u.get(i).cmp(&v.get(i)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    };
    match kind {
        OrderKind::Lex => lex(),
        OrderKind::GradedLex => du.cmp(&dv).then_with(lex),
        OrderKind::GradedRevLex => du.cmp(&dv).then_with(|| {
            for &i in idx.iter().rev() {
                match u.get(i).cmp(&v.get(i)) {
                    Ordering::Equal => {}
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }),
    }
}

fn cmp_revlex(u: &[u32], v: &[u32]) -> Ordering {
    // at equal degree: last differing entry, smaller exponent wins
    for (a, b) in u.iter().zip(v).rev() {
        match a.cmp(b) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn lex(table: Arc<VarTable>) -> Self {
        MonomialOrder { table, kind: Kind::Simple(OrderKind::Lex) }
    }

    pub fn graded_lex(table: Arc<VarTable>) -> Self {
        MonomialOrder { table, kind: Kind::Simple(OrderKind::GradedLex) }
    }

    pub fn graded_revlex(table: Arc<VarTable>) -> Self {
        MonomialOrder { table, kind: Kind::Simple(OrderKind::GradedRevLex) }
    }

    pub fn weighted(table: Arc<VarTable>, weights: Vec<BigInt>, tie: OrderKind) -> Self {
        assert_eq!(weights.len(), table.len());
        MonomialOrder { table, kind: Kind::Weight { weights, tie } }
    }

    /// Elimination order: the `dominant` indices outrank the rest.
    pub fn block_elimination(
        table: Arc<VarTable>,
        dominant: Vec<usize>,
        dominant_kind: OrderKind,
        rest_kind: OrderKind,
    ) -> Self {
        let mut in_dom = vec![false; table.len()];
        for &i in &dominant {
            in_dom[i] = true;
        }
        let rest: Vec<usize> = (0..table.len()).filter(|i| !in_dom[*i]).collect();
        MonomialOrder {
            table,
            kind: Kind::Block {
                blocks: vec![(dominant, dominant_kind), (rest, rest_kind)],
            },
        }
    }

    /// The working order for K_{a,b}: graded lex on the alphabet
    /// x_1 > ... > x_a > x'_1 > ... > x'_b > y'_1 > ... > y'_a > y_1 > ... > y_b.
    pub fn bipartite_frame_order(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1);
        Self::graded_lex(VarTable::s_ab(a, b))
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn compare(&self, u: &Exps, v: &Exps) -> Result<Ordering, Error> {
        let n = self.table.len();
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        Ok(self.cmp_unchecked(u, v))
    }

    pub(crate) fn cmp_unchecked(&self, u: &Exps, v: &Exps) -> Ordering {
        match &self.kind {
            Kind::Simple(k) => cmp_simple(*k, u.exps(), v.exps(), u.degree(), v.degree()),
            Kind::Weight { weights, tie } => {
                let wu = weight_of(weights, u);
                let wv = weight_of(weights, v);
                wu.cmp(&wv)
                    .then_with(|| cmp_simple(*tie, u.exps(), v.exps(), u.degree(), v.degree()))
            }
            Kind::Block { blocks } => {
                for (idx, k) in blocks {
                    let du: u32 = idx.iter().map(|i| u.get(*i)).sum();
                    let dv: u32 = idx.iter().map(|i| v.get(*i)).sum();
                    match cmp_block_restricted(*k, idx, u, v, du, dv) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

pub fn weight_of(weights: &[BigInt], e: &Exps) -> BigInt {
    let mut s = BigInt::from(0u32);
    for (i, x) in e.exps().iter().enumerate() {
        if *x > 0 {
            s += &weights[i] * BigInt::from(*x);
        }
    }
    s
}

/// The weight vector (2^{N-1}, ..., 2, 1): every entry strictly exceeds the
/// sum of all later entries, so weight comparison refines lex rank.
pub fn weight_vector_pow2(n: usize) -> Vec<BigInt> {
    (0..n).map(|r| BigInt::from(1u32) << (n - 1 - r)).collect()
}
