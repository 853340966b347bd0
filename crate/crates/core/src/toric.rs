//! Toric ideals of nonnegative integer point configurations, lattice ranks,
//! and truncated monoid enumeration.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::groebner::{kernel_of_map, AlgebraMap, GbConfig, GroebnerBasis};
use crate::poly::{Exps, Poly, VarTable};

/// A finite list of distinct nonnegative integer vectors, one z-variable
/// label per point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl PointConfiguration {
    pub fn new(points: Vec<Vec<i64>>, labels: Vec<String>) -> Self {
        assert_eq!(points.len(), labels.len());
        if let Some(first) = points.first() {
            assert!(points.iter().all(|p| p.len() == first.len()));
        }
        let distinct: HashSet<&Vec<i64>> = points.iter().collect();
        assert_eq!(distinct.len(), points.len(), "points must be pairwise distinct");
        PointConfiguration { points, labels }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    /// The z-variable table of the configuration, in label order.
    pub fn z_table(&self) -> Arc<VarTable> {
        VarTable::new(
            self.labels.clone(),
            vec![crate::poly::VarRole::Z; self.labels.len()],
        )
    }
}

/// Reduced Groebner basis of the kernel of z_i -> x^{a_i}, over the z-table.
/// Every basis element is a binomial with coefficients 1 and -1.
pub fn toric_ideal<F: Field>(
    config: &PointConfiguration,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>, Error> {
    assert!(
        config.points.iter().all(|p| p.iter().all(|c| *c >= 0)),
        "toric_ideal requires nonnegative points"
    );
    let n = config.ambient_dim();
    let x_names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let x_refs: Vec<&str> = x_names.iter().map(|s| s.as_str()).collect();
    let x_table = VarTable::aux(&x_refs);
    let z_table = config.z_table();
    let images = config
        .points
        .iter()
        .map(|p| {
            let e = Exps::new(p.iter().map(|c| *c as u32).collect());
            Poly::monomial(x_table.clone(), e, F::one())
        })
        .collect();
    kernel_of_map(&AlgebraMap::new(z_table, images), cfg)
}

/// Rank over the integers of the span of the points.
pub fn lattice_rank(points: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|c| BigInt::from(*c)).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows.len() && col < cols {
        let pivot = (rank..rows.len()).find(|r| !rows[*r][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            // fraction-free: row_r := p*row_r - q*row_rank
            let p = rows[rank][col].clone();
            let q = rows[r][col].clone();
            for c in col..cols {
                rows[r][c] = &p * &rows[r][c] - &q * &rows[rank][c];
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Number of distinct lattice points expressible as nonnegative integer
/// combinations of the points with total grading exactly `degree`.
pub fn monoid_count_at_degree(
    config: &PointConfiguration,
    grading: &[u32],
    degree: u32,
) -> usize {
    assert_eq!(grading.len(), config.len());
    assert!(grading.iter().all(|g| *g > 0), "grading must be positive");
    let d = degree as usize;
    let mut reachable: Vec<HashSet<Vec<i64>>> = vec![HashSet::new(); d + 1];
    reachable[0].insert(vec![0i64; config.ambient_dim()]);
    for (point, g) in config.points.iter().zip(grading) {
        let g = *g as usize;
        for level in g..=d {
            let prev: Vec<Vec<i64>> = reachable[level - g].iter().cloned().collect();
            for base in prev {
                let next: Vec<i64> = base.iter().zip(point).map(|(a, b)| a + b).collect();
                reachable[level].insert(next);
            }
        }
    }
    reachable[d].len()
}
