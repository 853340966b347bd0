//! Finite posets, poset-ideal enumeration, Hibi ring generators and toric
//! relations, gradedness, and the poset family Pi_{a,b} attached to complete
//! bipartite graphs.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::poly::{Exps, Poly, VarRole, VarTable};
use crate::toric::PointConfiguration;

/// A finite poset given by labeled elements and covering relations.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// leq[i][j] == true iff element i <= element j
    leq: Vec<Vec<bool>>,
}

/// A downward-closed subset, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetIdeal {
    pub members: Vec<usize>,
}

impl PosetIdeal {
    pub fn empty() -> Self {
        PosetIdeal { members: Vec::new() }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// JSON form: {"elements": [labels], "covers": [[lower, upper], ...]}
#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds from labels and covering pairs (lower, upper). The cover
    /// digraph must be acyclic and transitively reduced.
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self, Error> {
        let n = labels.len();
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::Domain("duplicate poset labels".into()));
        }
        for &(l, u) in &covers {
            if l >= n || u >= n || l == u {
                return Err(Error::Domain("cover out of range".into()));
            }
        }
        // reflexive-transitive closure of the cover digraph
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(l, u) in &covers {
            leq[l][u] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Domain("cover digraph has a cycle".into()));
                }
            }
        }
        // transitive reduction: a cover must not be implied by two others
        for &(l, u) in &covers {
            for k in 0..n {
                if k != l && k != u && leq[l][k] && leq[k][u] {
                    return Err(Error::Domain(format!(
                        "cover {} < {} is implied through {}",
                        labels[l], labels[u], labels[k]
                    )));
                }
            }
        }
        Ok(Poset { labels, covers, leq })
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, Error> {
        let labels = json.elements.clone();
        let pos = |name: &str| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Domain(format!("unknown element {name}")))
        };
        let covers = json
            .covers
            .iter()
            .map(|(l, u)| Ok((pos(l)?, pos(u)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(labels, covers)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(l, u)| (self.labels[l].clone(), self.labels[u].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn is_downward_closed(&self, members: &BTreeSet<usize>) -> bool {
        members
            .iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq[y][x] || members.contains(&y)))
    }

    /// All poset ideals, ordered by cardinality then lexicographically on
    /// sorted label lists.
    pub fn enumerate_ideals(&self) -> Vec<PosetIdeal> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        seen.insert(Vec::new());
        while let Some(current) = frontier.pop() {
            // extend by any minimal element of the complement
            for x in 0..self.len() {
                if current.contains(&x) {
                    continue;
                }
                let minimal = (0..self.len())
                    .all(|y| y == x || !self.leq[y][x] || current.contains(&y));
                if minimal {
                    let mut next = current.clone();
                    next.insert(x);
                    let key: Vec<usize> = next.iter().copied().collect();
                    if seen.insert(key) {
                        frontier.push(next);
                    }
                }
            }
        }
        let mut ideals: Vec<PosetIdeal> = seen
            .into_iter()
            .map(|members| PosetIdeal { members })
            .collect();
        ideals.sort_by(|a, b| {
            a.len().cmp(&b.len()).then_with(|| {
                let la: Vec<&str> = self.ideal_labels(a);
                let lb: Vec<&str> = self.ideal_labels(b);
                la.cmp(&lb)
            })
        });
        ideals
    }

    fn ideal_labels<'a>(&'a self, ideal: &PosetIdeal) -> Vec<&'a str> {
        let mut l: Vec<&str> = ideal.members.iter().map(|&i| self.label(i)).collect();
        l.sort();
        l
    }

    /// Sorted label list of an ideal (the serialized form).
    pub fn ideal_label_list(&self, ideal: &PosetIdeal) -> Vec<String> {
        self.ideal_labels(ideal).iter().map(|s| s.to_string()).collect()
    }

    pub fn ideal_union(&self, a: &PosetIdeal, b: &PosetIdeal) -> PosetIdeal {
        let set: BTreeSet<usize> = a.members.iter().chain(&b.members).copied().collect();
        PosetIdeal { members: set.into_iter().collect() }
    }

    pub fn ideal_intersection(&self, a: &PosetIdeal, b: &PosetIdeal) -> PosetIdeal {
        let bs: HashSet<usize> = b.members.iter().copied().collect();
        PosetIdeal {
            members: a.members.iter().copied().filter(|i| bs.contains(i)).collect(),
        }
    }

    /// The down-set generated by an antichain.
    pub fn ideal_from_antichain(&self, antichain: &[usize]) -> Result<PosetIdeal, Error> {
        for (k, &x) in antichain.iter().enumerate() {
            for &y in &antichain[k + 1..] {
                if self.leq[x][y] || self.leq[y][x] {
                    return Err(Error::Domain(format!(
                        "{} and {} are comparable",
                        self.label(x),
                        self.label(y)
                    )));
                }
            }
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&q| antichain.iter().any(|&p| self.leq[q][p]))
            .collect();
        Ok(PosetIdeal { members })
    }

    /// Maximal elements of an ideal.
    pub fn antichain_of_ideal(&self, ideal: &PosetIdeal) -> Vec<usize> {
        ideal
            .members
            .iter()
            .copied()
            .filter(|&x| {
                ideal
                    .members
                    .iter()
                    .all(|&y| y == x || !self.leq[x][y])
            })
            .collect()
    }

    /// One squarefree monomial per ideal: the member product times a
    /// homogenizing variable, over the table (element labels..., "t").
    pub fn hibi_generators<F: Field>(&self) -> (Vec<Poly<F>>, Arc<VarTable>) {
        let mut names = self.labels.clone();
        names.push("t".to_string());
        let table = VarTable::new(names, vec![VarRole::Aux; self.len() + 1]);
        let n = table.len();
        let gens = self
            .enumerate_ideals()
            .iter()
            .map(|ideal| {
                let mut e = vec![0u32; n];
                for &i in &ideal.members {
                    e[i] = 1;
                }
                e[n - 1] = 1;
                Poly::monomial(table.clone(), Exps::new(e), F::one())
            })
            .collect();
        (gens, table)
    }

    /// The relations z_I z_J - z_{I union J} z_{I intersect J} over one
    /// z-variable per ideal (in enumeration order), one binomial per
    /// inclusion-incomparable unordered pair.
    pub fn hibi_toric_gens<F: Field>(&self) -> (Vec<Poly<F>>, Arc<VarTable>, Vec<PosetIdeal>) {
        let ideals = self.enumerate_ideals();
        let names: Vec<String> = (0..ideals.len()).map(|k| format!("zI{k}")).collect();
        let table = VarTable::new(names, vec![VarRole::Z; ideals.len()]);
        let index_of = |ideal: &PosetIdeal| {
            ideals
                .iter()
                .position(|x| x == ideal)
                .expect("union/intersection of ideals is an ideal")
        };
        let mut gens = Vec::new();
        for i in 0..ideals.len() {
            for j in i + 1..ideals.len() {
                let (a, b) = (&ideals[i], &ideals[j]);
                let u = self.ideal_union(a, b);
                let v = self.ideal_intersection(a, b);
                if &u == a || &u == b {
                    continue; // comparable pair, relation is zero
                }
                let n = table.len();
                let mut lhs = vec![0u32; n];
                lhs[i] += 1;
                lhs[j] += 1;
                let mut rhs = vec![0u32; n];
                rhs[index_of(&u)] += 1;
                rhs[index_of(&v)] += 1;
                let p = Poly::monomial(table.clone(), Exps::new(lhs), F::one()).sub(
                    &Poly::monomial(table.clone(), Exps::new(rhs), F::one()),
                );
                gens.push(p);
            }
        }
        (gens, table, ideals)
    }

    /// True iff every maximal chain has the same number of elements.
    pub fn is_graded(&self) -> bool {
        let n = self.len();
        let minimals: Vec<usize> = (0..n)
            .filter(|&x| (0..n).all(|y| y == x || !self.leq[y][x]))
            .collect();
        let mut lengths = HashSet::new();
        let mut stack: Vec<(usize, usize)> = minimals.iter().map(|&m| (m, 1)).collect();
        while let Some((x, len)) = stack.pop() {
            let uppers: Vec<usize> = self
                .covers
                .iter()
                .filter(|&&(l, _)| l == x)
                .map(|&(_, u)| u)
                .collect();
            if uppers.is_empty() {
                lengths.insert(len);
            } else {
                for u in uppers {
                    stack.push((u, len + 1));
                }
            }
        }
        lengths.len() <= 1
    }
}

/// The poset Pi_{a,b} on 2a+2b-5 elements
/// e_1..e_{a-1}, e'_2..e'_{a-1}, f'_1..f'_{b-1}, f_2..f_b.
pub fn build_pi(a: usize, b: usize) -> Result<Poset, Error> {
    if a < 2 || a > b {
        return Err(Error::Domain(format!(
            "Pi_{{a,b}} requires 2 <= a <= b, got a={a}, b={b}"
        )));
    }
    let mut labels = Vec::new();
    for i in 1..=a - 1 {
        labels.push(format!("e{i}"));
    }
    for i in 2..=a.saturating_sub(1) {
        labels.push(format!("ep{i}"));
    }
    for j in 1..=b - 1 {
        labels.push(format!("fp{j}"));
    }
    for j in 2..=b {
        labels.push(format!("f{j}"));
    }
    let poset_index = |name: String| labels.iter().position(|l| *l == name).unwrap();

    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut cover = |lo: String, hi: String| {
        covers.push((poset_index(lo), poset_index(hi)));
    };
    // e-chain: e_{a-1} < ... < e_1
    for i in 1..=a.saturating_sub(2) {
        cover(format!("e{}", i + 1), format!("e{i}"));
    }
    // f-chain: f_2 < f_3 < ... < f_b
    for j in 2..=b - 1 {
        cover(format!("f{j}"), format!("f{}", j + 1));
    }
    // f'-chain: f'_1 < f'_2 < ... < f'_{b-1}
    for j in 1..=b.saturating_sub(2) {
        cover(format!("fp{j}"), format!("fp{}", j + 1));
    }
    // e'-chain: e'_{a-1} < ... < e'_2
    for i in 2..=a.saturating_sub(2) {
        cover(format!("ep{}", i + 1), format!("ep{i}"));
    }
    // joints around f'_1
    cover(format!("e{}", a - 1), "fp1".to_string());
    cover("f2".to_string(), "fp1".to_string());
    if a >= 3 {
        cover("fp1".to_string(), format!("ep{}", a - 1));
    }
    // diagonal rungs
    for j in 1..=b - 1 {
        cover(format!("f{}", j + 1), format!("fp{j}"));
    }
    for i in 2..=a - 1 {
        cover(format!("e{}", i - 1), format!("ep{i}"));
    }
    // dedupe: at small a, b some families coincide
    let mut seen = HashSet::new();
    covers.retain(|c| seen.insert(*c));
    Poset::new(labels, covers)
}

/// The 0/1 indicator vectors of the ideals of Pi_{a,b}, on the fixed basis
/// e_1..e_{a-1}, e'_2..e'_{a-1}, f'_1..f'_{b-1}, f_2..f_b.
pub fn encode_ideals_b(a: usize, b: usize) -> Result<(PointConfiguration, Poset), Error> {
    let pi = build_pi(a, b)?;
    let ideals = pi.enumerate_ideals();
    let points: Vec<Vec<i64>> = ideals
        .iter()
        .map(|ideal| {
            (0..pi.len())
                .map(|i| if ideal.contains(i) { 1 } else { 0 })
                .collect()
        })
        .collect();
    let labels: Vec<String> = ideals
        .iter()
        .map(|ideal| format!("I[{}]", pi.ideal_label_list(ideal).join(",")))
        .collect();
    Ok((PointConfiguration::new(points, labels), pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn antichain(n: usize) -> Poset {
        Poset::new((0..n).map(|i| format!("p{i}")).collect(), vec![]).unwrap()
    }

    fn chain(n: usize) -> Poset {
        Poset::new(
            (0..n).map(|i| format!("p{i}")).collect(),
            (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        )
        .unwrap()
    }

    /// Brute-force oracle: filter all subsets for downward closure.
    fn ideals_oracle(p: &Poset) -> HashSet<Vec<usize>> {
        let n = p.len();
        let mut out = HashSet::new();
        for mask in 0u64..(1 << n) {
            let members: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if p.is_downward_closed(&members) {
                out.insert(members.into_iter().collect());
            }
        }
        out
    }

    #[test]
    fn antichain_ideals_are_the_power_set() {
        assert_eq!(antichain(2).enumerate_ideals().len(), 4);
    }

    #[test]
    fn chain_ideals() {
        assert_eq!(chain(5).enumerate_ideals().len(), 6);
    }

    #[test]
    fn pi22_roster() {
        let pi = build_pi(2, 2).unwrap();
        assert_eq!(pi.len(), 3);
        let ideals = pi.enumerate_ideals();
        let got: Vec<Vec<String>> =
            ideals.iter().map(|i| pi.ideal_label_list(i)).collect();
        let want: Vec<Vec<String>> = vec![
            vec![],
            vec!["e1".into()],
            vec!["f2".into()],
            vec!["e1".into(), "f2".into()],
            vec!["e1".into(), "f2".into(), "fp1".into()],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn pi_matches_brute_force_and_count_formula() {
        let choose2 = |n: usize| n * (n - 1) / 2;
        for a in 2..=5 {
            for b in a..=5 {
                let pi = build_pi(a, b).unwrap();
                assert_eq!(pi.len(), 2 * a + 2 * b - 5);
                let fast: HashSet<Vec<usize>> = pi
                    .enumerate_ideals()
                    .into_iter()
                    .map(|i| i.members)
                    .collect();
                assert_eq!(fast, ideals_oracle(&pi), "({a},{b})");
                assert_eq!(fast.len(), a * b + choose2(a) * choose2(b), "({a},{b})");
            }
        }
    }

    #[test]
    fn union_intersection_minmax() {
        // <e_1,f_3> union <e_2,f_2> = <e_1,f_3> in Pi_{3,3}
        let pi = build_pi(3, 3).unwrap();
        let at = |names: &[&str]| {
            let idx: Vec<usize> = names.iter().map(|n| pi.position(n).unwrap()).collect();
            pi.ideal_from_antichain(&idx).unwrap()
        };
        let i13 = at(&["e1", "f3"]);
        let i22 = at(&["e2", "f2"]);
        assert_eq!(pi.ideal_union(&i13, &i22), i13);
        assert_eq!(pi.ideal_intersection(&i13, &i22), i22);
        let empty = PosetIdeal::empty();
        assert_eq!(pi.ideal_union(&i13, &empty), i13);
        assert_eq!(pi.ideal_intersection(&i13, &i13), i13);
    }

    #[test]
    fn antichain_bijection_round_trip() {
        let pi = build_pi(3, 4).unwrap();
        for ideal in pi.enumerate_ideals() {
            let a = pi.antichain_of_ideal(&ideal);
            assert_eq!(pi.ideal_from_antichain(&a).unwrap(), ideal);
        }
        // top element of Pi_{2,2} generates everything
        let pi = build_pi(2, 2).unwrap();
        let top = vec![pi.position("fp1").unwrap()];
        let down = pi.ideal_from_antichain(&top).unwrap();
        assert_eq!(pi.ideal_label_list(&down), vec!["e1", "f2", "fp1"]);
    }

    #[test]
    fn hibi_generators_antichain2() {
        let (gens, table) = antichain(2).hibi_generators::<Rat>();
        let strs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(table.len(), 3);
        assert_eq!(strs, vec!["t", "p0*t", "p1*t", "p0*p1*t"]);
    }

    #[test]
    fn hibi_toric_chain_is_empty() {
        let (gens, _, _) = chain(4).hibi_toric_gens::<Rat>();
        assert!(gens.is_empty());
    }

    #[test]
    fn hibi_toric_pi22_single_relation() {
        let (gens, _, ideals) = build_pi(2, 2).unwrap().hibi_toric_gens::<Rat>();
        assert_eq!(gens.len(), 1);
        assert_eq!(ideals.len(), 5);
        // the only incomparable pair is {e_1} vs {f_2}
        let table = gens[0].table().clone();
        let want = crate::poly::parse_poly(&table, "zI1*zI2 - zI0*zI3").unwrap();
        assert_eq!(gens[0], want);
    }

    #[test]
    fn gradedness_matches_gorenstein_pattern() {
        assert!(build_pi(2, 5).unwrap().is_graded());
        assert!(build_pi(3, 3).unwrap().is_graded());
        assert!(!build_pi(3, 4).unwrap().is_graded());
        for a in 2..=6 {
            for b in a..=6 {
                let expect = a == 2 || a == b;
                assert_eq!(build_pi(a, b).unwrap().is_graded(), expect, "({a},{b})");
            }
        }
    }

    #[test]
    fn encode_b_indicator() {
        let (config, pi) = encode_ideals_b(2, 2).unwrap();
        assert_eq!(config.len(), 5);
        // full ideal maps to the all-ones indicator
        let all_ones = vec![1i64; pi.len()];
        assert!(config.points.contains(&all_ones));
        assert!(config.points.contains(&vec![0i64; pi.len()]));
    }

    #[test]
    fn distributivity_on_triples() {
        let pi = build_pi(3, 4).unwrap();
        let ideals = pi.enumerate_ideals();
        for a in ideals.iter().step_by(3) {
            for b in ideals.iter().step_by(4) {
                for c in ideals.iter().step_by(5) {
                    let lhs = pi.ideal_intersection(&pi.ideal_union(a, b), c);
                    let rhs = pi.ideal_union(
                        &pi.ideal_intersection(a, c),
                        &pi.ideal_intersection(b, c),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
