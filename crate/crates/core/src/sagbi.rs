//! Subduction and the SAGBI criterion: a generating set is a SAGBI basis iff
//! every lifted toric relation among the leading monomials subducts to zero.

use crate::error::Error;
use crate::field::Field;
use crate::groebner::GbConfig;
use crate::poly::{Exps, MonomialOrder, Poly};
use crate::toric::{toric_ideal, PointConfiguration};

/// Generators of a subalgebra, with the monomial order used for leading
/// terms and one z-variable label per generator.
#[derive(Clone, Debug)]
pub struct SubalgebraGens<F: Field> {
    pub gens: Vec<Poly<F>>,
    pub order: MonomialOrder,
    pub labels: Vec<String>,
}

impl<F: Field> SubalgebraGens<F> {
    pub fn new(gens: Vec<Poly<F>>, order: MonomialOrder, labels: Vec<String>) -> Self {
        assert_eq!(gens.len(), labels.len());
        assert!(gens.iter().all(|g| !g.is_zero()), "generators must be nonzero");
        assert!(gens.iter().all(|g| g.table() == order.table()));
        SubalgebraGens { gens, order, labels }
    }

    /// Leading exponent of each generator, labeled by its z-variable.
    pub fn initial_exponents(&self) -> PointConfiguration {
        let points = self
            .gens
            .iter()
            .map(|g| {
                let (e, _) = g.leading_term(&self.order).expect("nonzero generator");
                e.exps().iter().map(|x| *x as i64).collect()
            })
            .collect();
        PointConfiguration::new(points, self.labels.clone())
    }

    fn lead_terms(&self) -> Vec<(Exps, F)> {
        self.gens
            .iter()
            .map(|g| g.leading_term(&self.order).expect("nonzero generator"))
            .collect()
    }
}

/// Factor `target` as a product of the given lead exponents: nonnegative
/// integers e_i with sum e_i * lead_i = target. Depth-first over generators
/// in label order, trying maximal exponents first, so the result is
/// deterministic.
fn factor_as_leads(target: &Exps, leads: &[Exps]) -> Option<Vec<u32>> {
    fn dfs(remaining: &Exps, leads: &[Exps], idx: usize, acc: &mut Vec<u32>) -> bool {
        if remaining.degree() == 0 {
            acc.extend(std::iter::repeat(0).take(leads.len() - idx));
            return true;
        }
        if idx >= leads.len() {
            return false;
        }
        let lead = &leads[idx];
        let max = if lead.degree() == 0 {
            0
        } else {
            remaining
                .exps()
                .iter()
                .zip(lead.exps())
                .filter(|(_, l)| **l > 0)
                .map(|(r, l)| r / l)
                .min()
                .unwrap_or(0)
        };
        for k in (0..=max).rev() {
            let used = lead.mul_scalar(k);
            acc.push(k);
            if dfs(&used.quotient(remaining), leads, idx + 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::with_capacity(leads.len());
    if dfs(target, leads, 0, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Subduction of `p` against `gens`: while the leading term factors as a
/// product of generator leading terms, subtract the matching product of
/// generators. The remainder is zero or has a leading term outside the
/// monoid generated by the leading terms; `p - subduct(p)` lies in the
/// subalgebra generated by `gens`.
pub fn subduct<F: Field>(p: &Poly<F>, gens: &SubalgebraGens<F>) -> Result<Poly<F>, Error> {
    let leads: Vec<(Exps, F)> = gens.lead_terms();
    let lead_exps: Vec<Exps> = leads.iter().map(|(e, _)| e.clone()).collect();
    let mut work = p.clone();
    loop {
        if work.is_zero() {
            return Ok(work);
        }
        let (le, lc) = work.leading_term(&gens.order)?;
        let Some(exps) = factor_as_leads(&le, &lead_exps) else {
            return Ok(work);
        };
        // coefficient of the product's leading term
        let mut prod_lc = F::one();
        for ((_, c), k) in leads.iter().zip(&exps) {
            for _ in 0..*k {
                prod_lc = prod_lc.mul(c);
            }
        }
        let scale = lc.mul(&prod_lc.inv());
        let mut prod = Poly::constant(work.table().clone(), scale);
        for (g, k) in gens.gens.iter().zip(&exps) {
            if *k > 0 {
                prod = prod.mul(&g.pow(*k));
            }
        }
        work = work.sub(&prod);
    }
}

/// Outcome of the SAGBI criterion.
#[derive(Clone, Debug)]
pub enum SagbiOutcome<F: Field> {
    Pass,
    /// A nonzero element of the subalgebra whose leading term is not a
    /// product of generator leading terms, plus the toric binomial it lifts.
    Fail { witness: Poly<F>, relation: Poly<F> },
}

impl<F: Field> SagbiOutcome<F> {
    pub fn passed(&self) -> bool {
        matches!(self, SagbiOutcome::Pass)
    }
}

/// Tests whether `gens` is a SAGBI basis: every binomial generator
/// z^u - z^v of the toric ideal of the leading exponents lifts to
/// gens^u - gens^v, which must subduct to zero.
pub fn sagbi_check<F: Field>(
    gens: &SubalgebraGens<F>,
    cfg: &GbConfig,
) -> Result<SagbiOutcome<F>, Error> {
    let config = gens.initial_exponents();
    let toric = toric_ideal::<F>(&config, cfg)?;
    for rel in &toric.basis {
        if rel.num_terms() != 2 {
            return Err(Error::Domain(format!(
                "toric basis element is not binomial: {rel}"
            )));
        }
        let lifted = lift_relation(gens, rel);
        let rem = subduct(&lifted, gens)?;
        if !rem.is_zero() {
            return Ok(SagbiOutcome::Fail { witness: rem, relation: rel.clone() });
        }
    }
    Ok(SagbiOutcome::Pass)
}

/// Evaluates a z-level polynomial at the generators.
pub fn lift_relation<F: Field>(gens: &SubalgebraGens<F>, rel: &Poly<F>) -> Poly<F> {
    rel.substitute(&gens.gens)
}

/// Dimension over the field of the span of all products of generators with
/// ambient total degree exactly `degree`, by exact linear algebra.
pub fn subalgebra_graded_dim<F: Field>(gens: &SubalgebraGens<F>, degree: u32) -> usize {
    if degree == 0 {
        return 1; // constants
    }
    let degs: Vec<u32> = gens
        .gens
        .iter()
        .map(|g| g.total_degree().expect("nonzero generator"))
        .collect();
    let mut products: Vec<Poly<F>> = Vec::new();
    fn enumerate<F: Field>(
        gens: &[Poly<F>],
        degs: &[u32],
        idx: usize,
        remaining: u32,
        current: Poly<F>,
        out: &mut Vec<Poly<F>>,
    ) {
        if remaining == 0 {
            out.push(current);
            return;
        }
        if idx >= gens.len() {
            return;
        }
        let max = remaining / degs[idx];
        for k in (0..=max).rev() {
            if remaining < k * degs[idx] {
                continue;
            }
            let next = if k > 0 {
                current.mul(&gens[idx].pow(k))
            } else {
                current.clone()
            };
            enumerate(gens, degs, idx + 1, remaining - k * degs[idx], next, out);
        }
    }
    let one = Poly::one(gens.order.table().clone());
    enumerate(&gens.gens, &degs, 0, degree, one, &mut products);
    rank_of_span(&products)
}

/// Exact rank of the span of a set of polynomials.
fn rank_of_span<F: Field>(polys: &[Poly<F>]) -> usize {
    use std::collections::HashMap;
    let mut col_of: HashMap<Exps, usize> = HashMap::new();
    for p in polys {
        for (e, _) in p.terms() {
            let next = col_of.len();
            col_of.entry(e.clone()).or_insert(next);
        }
    }
    let ncols = col_of.len();
    let mut rows: Vec<Vec<F>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut row = vec![F::zero(); ncols];
            for (e, c) in p.terms() {
                row[col_of[e]] = c.clone();
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].mul(&inv);
            for c in col..ncols {
                let delta = rows[rank][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
