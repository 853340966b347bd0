//! Buchberger's algorithm, multivariate division, elimination ideals, kernels
//! of algebra maps, and Krull dimension of quotient rings.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use crate::error::Error;
use crate::field::Field;
use crate::poly::{Exps, MonomialOrder, OrderKind, Poly, VarRole, VarTable};

/// A finite list of generators over one variable table.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    table: Arc<VarTable>,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(table: Arc<VarTable>, gens: Vec<Poly<F>>) -> Self {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.table(), &table, "generator over a different table");
        }
        Ideal { table, gens }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A reduced Groebner basis together with its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub basis: Vec<Poly<F>>,
    pub order: MonomialOrder,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn as_ideal(&self) -> Ideal<F> {
        Ideal::new(self.order.table().clone(), self.basis.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// True iff some basis element is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| {
            g.terms()
                .iter()
                .all(|(e, _)| e.is_constant())
                && !g.is_zero()
        })
    }
}

/// A polynomial-algebra map: one source variable per image polynomial.
#[derive(Clone, Debug)]
pub struct AlgebraMap<F: Field> {
    pub source: Arc<VarTable>,
    pub images: Vec<Poly<F>>,
}

impl<F: Field> AlgebraMap<F> {
    pub fn new(source: Arc<VarTable>, images: Vec<Poly<F>>) -> Self {
        assert_eq!(source.len(), images.len());
        AlgebraMap { source, images }
    }

    pub fn target(&self) -> &Arc<VarTable> {
        self.images[0].table()
    }

    pub fn apply(&self, p: &Poly<F>) -> Poly<F> {
        p.substitute(&self.images)
    }
}

/// Resource limits for Groebner runs.
#[derive(Clone, Debug, Default)]
pub struct GbConfig {
    /// Abort if a basis element would exceed this total degree.
    pub max_degree: Option<u32>,
    /// Abort past this instant.
    pub deadline: Option<Instant>,
}

impl GbConfig {
    fn check(&self, stage: &str) -> Result<(), Error> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded { stage: stage.to_string() });
            }
        }
        Ok(())
    }
}

// ---- internal representation: terms sorted descending under the active order

type Ep<F> = Vec<(Exps, F)>;

fn to_ep<F: Field>(p: &Poly<F>, ord: &MonomialOrder) -> Ep<F> {
    let mut t: Ep<F> = p.terms().to_vec();
    t.sort_by(|(a, _), (b, _)| ord.cmp_unchecked(b, a));
    t
}

fn from_ep<F: Field>(ep: Ep<F>, table: &Arc<VarTable>) -> Poly<F> {
    Poly::from_terms(table.clone(), ep)
}

/// a - c * x^m * b, both sorted descending under `ord`.
fn sub_mul<F: Field>(a: &Ep<F>, c: &F, m: &Exps, b: &Ep<F>, ord: &MonomialOrder) -> Ep<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let eb = b[j].0.add(m);
        match ord.cmp_unchecked(&a[i].0, &eb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((eb, b[j].1.mul(c).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let k = a[i].1.sub(&b[j].1.mul(c));
                if !k.is_zero() {
                    out.push((a[i].0.clone(), k));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push((b[j].0.add(m), b[j].1.mul(c).neg()));
        j += 1;
    }
    out
}

fn make_monic<F: Field>(p: &mut Ep<F>) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.inv();
            for (_, c) in p.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

/// Full normal form of `p` against `basis`: divisors tried in list order, the
/// leading term is rewritten first.
fn normal_form<F: Field>(
    mut work: Ep<F>,
    basis: &[Ep<F>],
    ord: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<Ep<F>, Error> {
    let mut rem: Ep<F> = Vec::new();
    let mut steps = 0usize;
    while let Some((le, lc)) = work.first().cloned() {
        steps += 1;
        if steps % 256 == 0 {
            cfg.check("reduction")?;
        }
        let divisor = basis
            .iter()
            .find(|g| !g.is_empty() && g[0].0.divides(&le));
        match divisor {
            Some(g) => {
                let m = g[0].0.quotient(&le);
                let c = lc.mul(&g[0].1.inv());
                work = sub_mul(&work, &c, &m, g, ord);
            }
            None => {
                rem.push((le, lc));
                work.remove(0);
            }
        }
    }
    Ok(rem)
}

fn spoly<F: Field>(f: &Ep<F>, g: &Ep<F>, ord: &MonomialOrder) -> Ep<F> {
    let (ef, cf) = &f[0];
    let (eg, cg) = &g[0];
    let l = ef.lcm(eg);
    let mf = ef.quotient(&l);
    let mg = eg.quotient(&l);
    // (1/cf) x^mf f - (1/cg) x^mg g
    let lhs: Ep<F> = f
        .iter()
        .map(|(e, c)| (e.add(&mf), c.mul(&cf.inv())))
        .collect();
    sub_mul(&lhs, &cg.inv(), &mg, g, ord)
}

fn buchberger_inner<F: Field>(
    gens: &[Poly<F>],
    ord: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<Vec<Ep<F>>, Error> {
    let mut basis: Vec<Ep<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut ep = to_ep(g, ord);
        make_monic(&mut ep);
        if !basis.contains(&ep) {
            basis.push(ep);
        }
    }

    // Pending pairs keyed by (i, j), i < j; selection pops the minimal
    // (lcm degree, lcm exponents) entry. Any deterministic selection gives
    // the same reduced basis, so the tiebreak is plain lex on the lcm.
    // Pairs are pruned lazily at pop time by Buchberger's coprimality and
    // chain criteria; the chain test runs over the full current basis, so
    // elements found after a pair was queued still help discard it.
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut pending: BinaryHeap<Reverse<(u32, Vec<u32>, usize, usize)>> = BinaryHeap::new();
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    let push_pair =
        |heap: &mut BinaryHeap<Reverse<(u32, Vec<u32>, usize, usize)>>, i: usize, j: usize, l: Exps| {
            heap.push(Reverse((l.degree(), l.exps().to_vec(), i, j)));
        };
    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&mut pending, i, j, basis[i][0].0.lcm(&basis[j][0].0));
        }
    }

    while let Some(Reverse((_, lexps, i, j))) = pending.pop() {
        cfg.check("buchberger")?;
        let l = Exps::new(lexps);
        treated.insert((i, j));

        // product criterion
        if basis[i][0].0.gcd_is_one(&basis[j][0].0) {
            continue;
        }
        // chain criterion: some k with lt_k | lcm_ij and both pairs treated
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && treated.contains(&(i.min(k), i.max(k)))
                && treated.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], ord);
        let mut r = normal_form(s, &basis, ord, cfg)?;
        if r.is_empty() {
            continue;
        }
        if let Some(cap) = cfg.max_degree {
            if r[0].0.degree() > cap {
                return Err(Error::BudgetExceeded {
                    stage: format!("degree cap {cap} exceeded"),
                });
            }
        }
        make_monic(&mut r);
        let idx = basis.len();
        for k in 0..idx {
            push_pair(&mut pending, k, idx, basis[k][0].0.lcm(&r[0].0));
        }
        basis.push(r);
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && basis[j][0].0.divides(&basis[i][0].0) {
                // prefer the later, smaller-lead element on ties
                if basis[i][0].0 == basis[j][0].0 && i < j {
                    keep[j] = false;
                } else {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<Ep<F>> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(b, _)| b)
        .collect();

    // autoreduce tails
    let mut reduced: Vec<Ep<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Ep<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = normal_form(minimal[i].clone(), &others, ord, cfg)?;
        make_monic(&mut r);
        if !r.is_empty() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| ord.cmp_unchecked(&a[0].0, &b[0].0));
    Ok(reduced)
}

/// Full normal form of `p` modulo the list `divisors` under `order`.
pub fn reduce<F: Field>(
    p: &Poly<F>,
    divisors: &[Poly<F>],
    order: &MonomialOrder,
) -> Poly<F> {
    let basis: Vec<Ep<F>> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ep(g, order))
        .collect();
    let r = normal_form(to_ep(p, order), &basis, order, &GbConfig::default())
        .expect("unbudgeted reduction cannot fail");
    from_ep(r, p.table())
}

pub fn buchberger<F: Field>(
    ideal: &Ideal<F>,
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>, Error> {
    buchberger_with(ideal, order, &GbConfig::default())
}

pub fn buchberger_with<F: Field>(
    ideal: &Ideal<F>,
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>, Error> {
    assert_eq!(order.table(), ideal.table(), "order over a different table");
    let eps = buchberger_inner(ideal.gens(), order, cfg)?;
    let basis = eps
        .into_iter()
        .map(|ep| from_ep(ep, ideal.table()))
        .collect();
    Ok(GroebnerBasis { basis, order: order.clone() })
}

/// Reduced Groebner basis of `I ∩ k[table \ drop]`, over the projected table.
///
/// Uses a block order with the dropped variables dominant (graded revlex
/// within each block); the kept block is compared with `keep_kind`, so the
/// projected basis is reduced with respect to that order.
pub fn eliminate<F: Field>(
    ideal: &Ideal<F>,
    drop: &[usize],
    keep_kind: OrderKind,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>, Error> {
    let table = ideal.table();
    let dropped: HashSet<usize> = drop.iter().copied().collect();
    let keep: Vec<usize> = (0..table.len()).filter(|i| !dropped.contains(i)).collect();

    let elim_order = MonomialOrder::block_elimination(
        table.clone(),
        drop.to_vec(),
        OrderKind::GradedRevLex,
        keep_kind,
    );
    let eps = buchberger_inner(ideal.gens(), &elim_order, cfg)?;

    let keep_table = VarTable::new(
        keep.iter().map(|i| table.name(*i).to_string()).collect(),
        keep.iter().map(|i| table.role(*i)).collect(),
    );
    let keep_order = match keep_kind {
        OrderKind::Lex => MonomialOrder::lex(keep_table.clone()),
        OrderKind::GradedLex => MonomialOrder::graded_lex(keep_table.clone()),
        OrderKind::GradedRevLex => MonomialOrder::graded_revlex(keep_table.clone()),
    };

    let mut basis = Vec::new();
    for ep in eps {
        let p = from_ep(ep, table);
        let support = p.var_support();
        if support.iter().all(|i| !dropped.contains(i)) {
            basis.push(p.project_to(&keep_table)?);
        }
    }
    basis.sort_by(|a, b| {
        let la = a.leading_term(&keep_order).expect("nonzero basis element").0;
        let lb = b.leading_term(&keep_order).expect("nonzero basis element").0;
        keep_order.cmp_unchecked(&la, &lb)
    });
    Ok(GroebnerBasis { basis, order: keep_order })
}

/// Generators of Ker(phi), obtained by eliminating the target variables from
/// the relations z_i - image_i. The returned basis is reduced with respect to
/// the induced graded-lex order on the source variables.
///
/// No saturation is needed: the adjoined relations make the eliminated
/// variables polynomially dependent on the source block.
pub fn kernel_of_map<F: Field>(
    map: &AlgebraMap<F>,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>, Error> {
    let target = map.target().clone();
    let source = map.source.clone();
    for img in &map.images {
        assert!(!img.is_zero(), "kernel_of_map requires nonzero images");
        assert_eq!(img.table(), &target);
    }

    let mut names: Vec<String> = target.names().to_vec();
    let mut roles: Vec<VarRole> = (0..target.len()).map(|i| target.role(i)).collect();
    let offset = names.len();
    names.extend(source.names().iter().cloned());
    roles.extend((0..source.len()).map(|i| source.role(i)));
    let combined = VarTable::new(names, roles);

    let mut gens = Vec::with_capacity(source.len());
    for (i, img) in map.images.iter().enumerate() {
        let zi = Poly::var(combined.clone(), offset + i);
        let lifted = img.project_to(&combined)?;
        gens.push(zi.sub(&lifted));
    }
    let ideal = Ideal::new(combined, gens);
    let drop: Vec<usize> = (0..offset).collect();
    let gb = eliminate(&ideal, &drop, OrderKind::GradedLex, cfg)?;
    // re-express over the caller's source table (same names, same ranking)
    let basis = gb
        .basis
        .iter()
        .map(|p| p.project_to(&source))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroebnerBasis {
        basis,
        order: MonomialOrder::graded_lex(source),
    })
}

/// True iff `p` reduces to zero against a Groebner basis of `I`.
pub fn ideal_membership<F: Field>(p: &Poly<F>, ideal: &Ideal<F>) -> Result<bool, Error> {
    let order = MonomialOrder::graded_revlex(ideal.table().clone());
    let gb = buchberger(ideal, &order)?;
    Ok(reduce(p, &gb.basis, &order).is_zero())
}

pub fn membership_in_gb<F: Field>(p: &Poly<F>, gb: &GroebnerBasis<F>) -> bool {
    reduce(p, &gb.basis, &gb.order).is_zero()
}

/// True iff both ideals have the same reduced Groebner basis under one fixed
/// order (graded revlex on the shared table).
pub fn ideals_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool, Error> {
    ideals_equal_with(a, b, &GbConfig::default())
}

/// `ideals_equal` under the caller's resource limits.
pub fn ideals_equal_with<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    cfg: &GbConfig,
) -> Result<bool, Error> {
    assert_eq!(a.table(), b.table(), "ideals over different tables");
    let order = MonomialOrder::graded_revlex(a.table().clone());
    let ga = buchberger_with(a, &order, cfg)?;
    let gb = buchberger_with(b, &order, cfg)?;
    Ok(ga.basis == gb.basis)
}

/// Krull dimension of (polynomial ring)/I from a Groebner basis: the maximum
/// size of a variable subset U such that no leading monomial lies in k[U].
/// Computed as n minus a minimum hitting set of the leading-term supports.
pub fn quotient_dimension<F: Field>(gb: &GroebnerBasis<F>) -> Result<usize, Error> {
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = gb.order.table().len();
    let mut supports: Vec<Vec<usize>> = gb
        .basis
        .iter()
        .map(|g| {
            g.leading_term(&gb.order)
                .expect("nonzero basis element")
                .0
                .support()
        })
        .collect();
    // drop supersets; they are hit whenever the subset is hit
    supports.sort_by_key(|s| s.len());
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !minimal
            .iter()
            .any(|m| m.iter().all(|v| s.contains(v)))
        {
            minimal.push(s);
        }
    }
    let mut best = n;
    let mut chosen: HashSet<usize> = HashSet::new();
    fn search(
        supports: &[Vec<usize>],
        chosen: &mut HashSet<usize>,
        best: &mut usize,
    ) {
        if chosen.len() >= *best {
            return;
        }
        match supports
            .iter()
            .find(|s| !s.iter().any(|v| chosen.contains(v)))
        {
            None => {
                *best = chosen.len();
            }
            Some(s) => {
                for &v in s {
                    chosen.insert(v);
                    search(supports, chosen, best);
                    chosen.remove(&v);
                }
            }
        }
    }
    search(&minimal, &mut chosen, &mut best);
    Ok(n - best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::poly::parse_poly;

    fn table3() -> Arc<VarTable> {
        VarTable::aux(&["x", "y", "z"])
    }

    fn p(t: &Arc<VarTable>, s: &str) -> Poly<Rat> {
        parse_poly(t, s).unwrap()
    }

    #[test]
    fn reduce_self_and_empty() {
        let t = table3();
        let ord = MonomialOrder::graded_lex(t.clone());
        let g = p(&t, "x^2*y - z");
        assert!(reduce(&g, &[g.clone()], &ord).is_zero());
        assert_eq!(reduce(&g, &[], &ord), g);
    }

    #[test]
    fn hand_buchberger_lex() {
        // (x - y, y - z) under lex x > y > z -> {x - z, y - z}
        let t = table3();
        let ord = MonomialOrder::lex(t.clone());
        let ideal = Ideal::new(t.clone(), vec![p(&t, "x - y"), p(&t, "y - z")]);
        let gb = buchberger(&ideal, &ord).unwrap();
        let mut got: Vec<String> = gb.basis.iter().map(|g| g.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x - z".to_string(), "y - z".to_string()]);
    }

    #[test]
    fn single_binomial_is_its_own_gb() {
        let t = VarTable::aux(&["z11", "z12", "z21", "z22"]);
        let ord = MonomialOrder::graded_lex(t.clone());
        let g = p(&t, "z11*z22 - z12*z21");
        let ideal = Ideal::new(t.clone(), vec![g.clone()]);
        let gb = buchberger(&ideal, &ord).unwrap();
        assert_eq!(gb.basis, vec![g]);
    }

    #[test]
    fn elimination_hand_example() {
        // eliminate x from (x - z1, x^2 - z2) -> {z1^2 - z2}
        let t = VarTable::aux(&["x", "z1", "z2"]);
        let ideal = Ideal::new(t.clone(), vec![p(&t, "x - z1"), p(&t, "x^2 - z2")]);
        let gb = eliminate(&ideal, &[0], OrderKind::GradedLex, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.basis[0].to_string(), "z1^2 - z2");
    }

    #[test]
    fn eliminate_zero_ideal() {
        let t = table3();
        let ideal = Ideal::<Rat>::new(t, vec![]);
        let gb = eliminate(&ideal, &[0], OrderKind::GradedLex, &GbConfig::default()).unwrap();
        assert!(gb.basis.is_empty());
    }

    #[test]
    fn membership_basics() {
        let t = table3();
        let i = Ideal::new(t.clone(), vec![p(&t, "x*y - z"), p(&t, "y^2 - 1")]);
        assert!(ideal_membership(&p(&t, "x*y - z"), &i).unwrap());
        assert!(!ideal_membership(&p(&t, "x"), &i).unwrap());
    }

    #[test]
    fn ideals_equal_examples() {
        let t = table3();
        let a = Ideal::new(t.clone(), vec![p(&t, "x"), p(&t, "y")]);
        let b = Ideal::new(t.clone(), vec![p(&t, "y"), p(&t, "x + y")]);
        assert!(ideals_equal(&a, &b).unwrap());
        let c = Ideal::new(t.clone(), vec![p(&t, "x")]);
        let d = Ideal::new(t.clone(), vec![p(&t, "x^2")]);
        assert!(!ideals_equal(&c, &d).unwrap());
    }

    #[test]
    fn dimension_zero_ideal() {
        let t = table3();
        let ord = MonomialOrder::graded_lex(t.clone());
        let gb = buchberger(&Ideal::<Rat>::new(t, vec![]), &ord).unwrap();
        assert_eq!(quotient_dimension(&gb).unwrap(), 3);
    }

    #[test]
    fn dimension_unit_ideal_errors() {
        let t = table3();
        let ord = MonomialOrder::graded_lex(t.clone());
        let gb = buchberger(&Ideal::new(t.clone(), vec![p(&t, "2")]), &ord).unwrap();
        assert!(matches!(quotient_dimension(&gb), Err(Error::UnitIdeal)));
    }

    #[test]
    fn dimension_hypersurface() {
        let t = table3();
        let ord = MonomialOrder::graded_lex(t.clone());
        let gb = buchberger(&Ideal::new(t.clone(), vec![p(&t, "x*y - z^2")]), &ord).unwrap();
        assert_eq!(quotient_dimension(&gb).unwrap(), 2);
    }

    #[test]
    fn kernel_of_monomial_map() {
        // z1 -> u^2, z2 -> u^3 gives the cuspidal relation z1^3 - z2^2
        let tgt = VarTable::aux(&["u"]);
        let src = VarTable::aux(&["z1", "z2"]);
        let map = AlgebraMap::new(
            src,
            vec![p(&tgt, "u^2"), p(&tgt, "u^3")],
        );
        let gb = kernel_of_map(&map, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert!(map.apply(&gb.basis[0]).is_zero());
    }

    #[test]
    fn degree_cap_aborts() {
        let t = VarTable::aux(&["u", "z1", "z2"]);
        let ideal = Ideal::new(t.clone(), vec![p(&t, "u^5 - z1"), p(&t, "u^7 - z2")]);
        let cfg = GbConfig { max_degree: Some(3), deadline: None };
        let ord = MonomialOrder::lex(t);
        assert!(matches!(
            buchberger_with(&ideal, &ord, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
