//! Graphs and their binomial edge rings; the complete-bipartite apparatus
//! (generators, point configuration, weight vector, relation families, the
//! unimodular lattice map) and dimension computations.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::{Field, Fp, Rat};
use crate::groebner::{kernel_of_map, quotient_dimension, AlgebraMap, GbConfig};
use crate::poly::{weight_vector_pow2, Exps, MonomialOrder, Poly, VarRole, VarTable};
use crate::sagbi::{sagbi_check, SagbiOutcome, SubalgebraGens};
use crate::toric::{lattice_rank, PointConfiguration};

/// A finite simple connected graph on vertices 1..=d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    d: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// JSON form: {"vertices": d, "edges": [[i, j], ...]}, 1-indexed.
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(d: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::Domain("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            let (i, j) = (i.min(j), i.max(j));
            if j > d || i < 1 {
                return Err(Error::Domain(format!("edge ({i},{j}) out of range 1..={d}")));
            }
            set.insert((i, j));
        }
        let g = Graph { d, edges: set };
        if !g.is_connected() {
            return Err(Error::Domain("graph must be connected".into()));
        }
        Ok(g)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, Error> {
        Self::new(json.vertices, json.edges.iter().copied())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.d,
            edges: self.edges.iter().copied().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.d + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.d
    }

    /// 2-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.d + 1];
        let mut queue = VecDeque::from([1usize]);
        color[1] = 0;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Named graphs: the two eight-vertex examples plus standard families.
pub fn named_graph(name: &str) -> Result<Graph, Error> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let parse_num = |what: &str| -> Result<usize, Error> {
        arg.ok_or_else(|| Error::Domain(format!("{kind} needs an argument, e.g. {kind}:{what}")))?
            .parse()
            .map_err(|_| Error::Domain(format!("bad argument for {kind}")))
    };
    match kind {
        "g1" => Graph::new(
            8,
            [
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (1, 8),
                (1, 4),
                (1, 5),
                (4, 8),
                (5, 8),
            ],
        ),
        "g2" => Graph::new(
            8,
            [
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (1, 4),
                (1, 6),
                (2, 5),
                (3, 6),
                (6, 7),
                (7, 8),
                (5, 8),
            ],
        ),
        "path" => {
            let d = parse_num("5")?;
            Graph::new(d, (1..d).map(|i| (i, i + 1)))
        }
        "cycle" => {
            let d = parse_num("6")?;
            if d < 3 {
                return Err(Error::Domain("cycle needs at least 3 vertices".into()));
            }
            Graph::new(d, (1..d).map(|i| (i, i + 1)).chain([(1, d)]))
        }
        "star" => {
            let b = parse_num("4")?;
            Graph::new(b + 1, (2..=b + 1).map(|j| (1, j)))
        }
        "complete" => {
            let d = parse_num("4")?;
            Graph::new(
                d,
                (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))),
            )
        }
        "complete-bipartite" => {
            let raw = arg.ok_or_else(|| {
                Error::Domain("complete-bipartite needs arguments a,b".into())
            })?;
            let (a, b) = raw
                .split_once(',')
                .ok_or_else(|| Error::Domain("expected complete-bipartite:a,b".into()))?;
            let a: usize = a.trim().parse().map_err(|_| Error::Domain("bad a".into()))?;
            let b: usize = b.trim().parse().map_err(|_| Error::Domain("bad b".into()))?;
            complete_bipartite(a, b)
        }
        other => Err(Error::Domain(format!("unknown graph name `{other}`"))),
    }
}

/// K_{a,b} on vertices {1..a} and {a+1..a+b}.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, Error> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("complete bipartite parts must be nonempty".into()));
    }
    Graph::new(
        a + b,
        (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j))),
    )
}

/// One generator x_i y_j - x_j y_i per edge, over the 2d-variable table
/// x_1..x_d, y_1..y_d with the graded-lex order.
pub fn binomial_gens(g: &Graph) -> SubalgebraGens<Rat> {
    let d = g.vertex_count();
    let table = binomial_gens_table(d);
    let order = MonomialOrder::graded_lex(table.clone());
    let n = table.len();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for (i, j) in g.edges() {
        let mut lhs = vec![0u32; n];
        lhs[i - 1] = 1;
        lhs[d + j - 1] = 1;
        let mut rhs = vec![0u32; n];
        rhs[j - 1] = 1;
        rhs[d + i - 1] = 1;
        let p = Poly::monomial(table.clone(), Exps::new(lhs), Rat::one())
            .sub(&Poly::monomial(table.clone(), Exps::new(rhs), Rat::one()));
        gens.push(p);
        labels.push(format!("z{i}_{j}"));
    }
    SubalgebraGens::new(gens, order, labels)
}

// ---- the K_{a,b} apparatus ----------------------------------------------

/// Everything attached to K_{a,b}: the four-block variable alphabet, the
/// graded-lex order on it, the dominating 2-power weight vector, the generators
/// (quadrics f_ij and quartics f_ii'j'j), and their leading-exponent
/// configuration.
#[derive(Clone, Debug)]
pub struct KabFrame {
    pub a: usize,
    pub b: usize,
    pub table: Arc<VarTable>,
    pub order: MonomialOrder,
    pub weight: Vec<BigInt>,
    pub gens: SubalgebraGens<Rat>,
    pub config: PointConfiguration,
}

/// Position of x_i in the S_{a,b} table (1-indexed arguments throughout).
fn pos_x(i: usize) -> usize {
    i - 1
}
fn pos_xp(a: usize, j: usize) -> usize {
    a + j - 1
}
fn pos_yp(a: usize, b: usize, i: usize) -> usize {
    a + b + i - 1
}
fn pos_y(a: usize, b: usize, j: usize) -> usize {
    2 * a + b + j - 1
}

/// f_ij = x_i y_j - x'_j y'_i over S_{a,b}.
fn f_quadric(table: &Arc<VarTable>, a: usize, b: usize, i: usize, j: usize) -> Poly<Rat> {
    let n = table.len();
    let mut lhs = vec![0u32; n];
    lhs[pos_x(i)] = 1;
    lhs[pos_y(a, b, j)] = 1;
    let mut rhs = vec![0u32; n];
    rhs[pos_xp(a, j)] = 1;
    rhs[pos_yp(a, b, i)] = 1;
    Poly::monomial(table.clone(), Exps::new(lhs), Rat::one())
        .sub(&Poly::monomial(table.clone(), Exps::new(rhs), Rat::one()))
}

/// Enumeration order of the generator labels: quadrics (i, j) row-major,
/// then quartics lex on (i, i', j', j). Shared by the generator list, the
/// point configuration, and the z-variable table.
fn kab_index_lists(a: usize, b: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize, usize, usize)>) {
    let quadrics = (1..=a)
        .flat_map(|i| (1..=b).map(move |j| (i, j)))
        .collect();
    let quartics = (1..=a)
        .flat_map(move |i| {
            (i + 1..=a).flat_map(move |ip| {
                (1..=b).flat_map(move |jp| (jp + 1..=b).map(move |j| (i, ip, jp, j)))
            })
        })
        .collect();
    (quadrics, quartics)
}

pub fn quadric_label(i: usize, j: usize) -> String {
    format!("z{i}_{j}")
}

pub fn quartic_label(i: usize, ip: usize, jp: usize, j: usize) -> String {
    format!("z{i}_{ip}_{jp}_{j}")
}

pub fn kab_frame(a: usize, b: usize) -> Result<KabFrame, Error> {
    if a < 2 || a > b {
        return Err(Error::Domain(format!(
            "K_{{a,b}} frame requires 2 <= a <= b, got a={a}, b={b}"
        )));
    }
    let table = VarTable::s_ab(a, b);
    let order = MonomialOrder::graded_lex(table.clone());
    let weight = weight_vector_pow2(table.len());
    let (quadrics, quartics) = kab_index_lists(a, b);

    let mut gens = Vec::new();
    let mut labels = Vec::new();
    let mut points = Vec::new();
    let n = table.len();
    for &(i, j) in &quadrics {
        gens.push(f_quadric(&table, a, b, i, j));
        labels.push(quadric_label(i, j));
        let mut e = vec![0i64; n];
        e[pos_x(i)] = 1;
        e[pos_y(a, b, j)] = 1;
        points.push(e);
    }
    for &(i, ip, jp, j) in &quartics {
        let fij_p = f_quadric(&table, a, b, i, jp);
        let fip_j = f_quadric(&table, a, b, ip, j);
        let fij = f_quadric(&table, a, b, i, j);
        let fip_jp = f_quadric(&table, a, b, ip, jp);
        gens.push(fij_p.mul(&fip_j).sub(&fij.mul(&fip_jp)));
        labels.push(quartic_label(i, ip, jp, j));
        let mut e = vec![0i64; n];
        e[pos_x(i)] = 1;
        e[pos_xp(a, jp)] = 1;
        e[pos_yp(a, b, ip)] = 1;
        e[pos_y(a, b, j)] = 1;
        points.push(e);
    }
    let config = PointConfiguration::new(points, labels.clone());
    let gens = SubalgebraGens::new(gens, order.clone(), labels);
    Ok(KabFrame { a, b, table, order, weight, gens, config })
}

/// The z-variable table of R_{a,b}, in the frame's label order.
pub fn r_table(a: usize, b: usize) -> Arc<VarTable> {
    let (quadrics, quartics) = kab_index_lists(a, b);
    let mut names: Vec<String> = quadrics.iter().map(|&(i, j)| quadric_label(i, j)).collect();
    names.extend(
        quartics
            .iter()
            .map(|&(i, ip, jp, j)| quartic_label(i, ip, jp, j)),
    );
    let roles = vec![VarRole::Z; names.len()];
    VarTable::new(names, roles)
}

/// The map phi_{a,b}: R_{a,b} -> S_{a,b}, z-variable to generator.
pub fn phi_map(frame: &KabFrame) -> AlgebraMap<Rat> {
    AlgebraMap::new(r_table(frame.a, frame.b), frame.gens.gens.clone())
}

/// The weight A^T w on R_{a,b}: each z-variable gets the w-weight of its
/// leading exponent.
pub fn atw_weights(frame: &KabFrame) -> Vec<BigInt> {
    frame
        .config
        .points
        .iter()
        .map(|p| {
            p.iter()
                .zip(&frame.weight)
                .map(|(c, w)| w * BigInt::from(*c))
                .sum()
        })
        .collect()
}

// ---- relation families ---------------------------------------------------

struct ZBuilder {
    table: Arc<VarTable>,
}

impl ZBuilder {
    fn new(a: usize, b: usize) -> Self {
        ZBuilder { table: r_table(a, b) }
    }

    fn quad(&self, i: usize, j: usize) -> Exps {
        let pos = self
            .table
            .position(&quadric_label(i, j))
            .expect("quadric variable");
        Exps::unit(self.table.len(), pos)
    }

    fn quart(&self, i: usize, ip: usize, jp: usize, j: usize) -> Exps {
        let pos = self
            .table
            .position(&quartic_label(i, ip, jp, j))
            .expect("quartic variable");
        Exps::unit(self.table.len(), pos)
    }

    /// Signed sum of products of two z-variables (or one, for the lift of a
    /// single variable: pass the zero exponent as the partner).
    fn combine(&self, terms: &[(i64, Exps, Exps)]) -> Poly<Rat> {
        let parts = terms
            .iter()
            .map(|(sign, u, v)| (u.add(v), Rat::from_int(*sign)))
            .collect();
        Poly::from_terms(self.table.clone(), parts)
    }
}

fn sign_insensitive_key(p: &Poly<Rat>) -> String {
    let s = p.to_string();
    let t = p.neg().to_string();
    if s < t {
        s
    } else {
        t
    }
}

/// The binomial generators of the toric ideal I_{A_{a,b}}: eleven families,
/// instantiated over their index ranges and deduplicated.
pub fn toric_binomials(a: usize, b: usize) -> Vec<Poly<Rat>> {
    relation_families(a, b)
        .into_iter()
        .map(|(binomial, _)| binomial)
        .collect()
}

/// The kernel elements of phi_{a,b}: thirteen families. Each element's first
/// two monomials form the matching binomial of the toric families.
pub fn kernel_relations(a: usize, b: usize) -> Vec<Poly<Rat>> {
    relation_families(a, b)
        .into_iter()
        .map(|(_, relation)| relation)
        .collect()
}

/// Paired (toric binomial, kernel relation): the binomial is the first two
/// monomials of the relation.
pub fn relation_families(a: usize, b: usize) -> Vec<(Poly<Rat>, Poly<Rat>)> {
    let zb = ZBuilder::new(a, b);
    let mut out: Vec<(Poly<Rat>, Poly<Rat>)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut push = |binomial: Poly<Rat>, relation: Poly<Rat>, seen: &mut HashSet<String>| {
        if binomial.is_zero() {
            return;
        }
        if seen.insert(sign_insensitive_key(&binomial)) {
            out.push((binomial, relation));
        }
    };

    // family 1: z_ij z_pq - z_iq z_pj (- z_ipjq), i < p, j < q
    for i in 1..=a {
        for p in i + 1..=a {
            for j in 1..=b {
                for q in j + 1..=b {
                    let bin = zb.combine(&[
                        (1, zb.quad(i, j), zb.quad(p, q)),
                        (-1, zb.quad(i, q), zb.quad(p, j)),
                    ]);
                    let zero = Exps::zero(zb.table.len());
                    let rel = bin.sub(&zb.combine(&[(1, zb.quart(i, p, j, q), zero)]));
                    push(bin, rel, &mut seen);
                }
            }
        }
    }

    // mixed quadric-quartic families 2-4: indices i in [a], j in [b],
    // p < p' in [a], q' < q in [b]
    for i in 1..=a {
        for j in 1..=b {
            for p in 1..=a {
                for pp in p + 1..=a {
                    for qp in 1..=b {
                        for q in qp + 1..=b {
                            // family 2: i < p, q < j
                            if i < p && q < j {
                                let bin = zb.combine(&[
                                    (1, zb.quad(i, j), zb.quart(p, pp, qp, q)),
                                    (-1, zb.quad(p, q), zb.quart(i, pp, qp, j)),
                                ]);
                                let tail = zb.combine(&[
                                    (1, zb.quad(i, qp), zb.quart(p, pp, q, j)),
                                    (1, zb.quad(pp, j), zb.quart(i, p, qp, q)),
                                    (1, zb.quad(pp, qp), zb.quart(i, p, q, j)),
                                ]);
                                push(bin.clone(), bin.add(&tail), &mut seen);
                            }
                            // family 3: p <= i, q < j
                            if p <= i && q < j {
                                let bin = zb.combine(&[
                                    (1, zb.quad(i, j), zb.quart(p, pp, qp, q)),
                                    (-1, zb.quad(i, q), zb.quart(p, pp, qp, j)),
                                ]);
                                let tail = zb.combine(&[(
                                    1,
                                    zb.quad(i, qp),
                                    zb.quart(p, pp, q, j),
                                )]);
                                push(bin.clone(), bin.add(&tail), &mut seen);
                            }
                            // family 4: i < p, j <= q
                            if i < p && j <= q {
                                let bin = zb.combine(&[
                                    (1, zb.quad(i, j), zb.quart(p, pp, qp, q)),
                                    (-1, zb.quad(p, j), zb.quart(i, pp, qp, q)),
                                ]);
                                let tail = zb.combine(&[(
                                    1,
                                    zb.quad(pp, j),
                                    zb.quart(i, p, qp, q),
                                )]);
                                push(bin.clone(), bin.add(&tail), &mut seen);
                            }
                        }
                    }
                }
            }
        }
    }

    // quartic-quartic families 5-13:
    // i < i', p < p' in [a]; j' < j, q' < q in [b]
    for i in 1..=a {
        for ip in i + 1..=a {
            for jp in 1..=b {
                for j in jp + 1..=b {
                    for p in 1..=a {
                        for pp in p + 1..=a {
                            for qp in 1..=b {
                                for q in qp + 1..=b {
                                    let lhs = (1, zb.quart(i, ip, jp, j), zb.quart(p, pp, qp, q));
                                    // family 5 (no third term)
                                    if i <= p && ip <= pp && jp <= qp && j <= q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(i, ip, qp, q), zb.quart(p, pp, jp, j)),
                                        ]);
                                        push(bin.clone(), bin.clone(), &mut seen);
                                    }
                                    // family 6
                                    if i > p && ip < pp && jp <= qp && j <= q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(p, ip, qp, q), zb.quart(i, pp, jp, j)),
                                        ]);
                                        let tail = zb.combine(&[(
                                            1,
                                            zb.quart(p, i, qp, q),
                                            zb.quart(ip, pp, jp, j),
                                        )]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    // family 7
                                    if i < p && ip > pp && jp <= qp && j <= q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(i, pp, qp, q), zb.quart(p, ip, jp, j)),
                                        ]);
                                        let tail = zb.combine(&[(
                                            1,
                                            zb.quart(pp, ip, jp, j),
                                            zb.quart(i, p, qp, q),
                                        )]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    // family 8
                                    if i <= p && ip <= pp && jp > qp && j < q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(i, ip, jp, q), zb.quart(p, pp, qp, j)),
                                        ]);
                                        let tail = zb.combine(&[(
                                            1,
                                            zb.quart(i, ip, j, q),
                                            zb.quart(p, pp, qp, jp),
                                        )]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    // family 9
                                    if i <= p && ip <= pp && jp < qp && j > q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(i, ip, qp, j), zb.quart(p, pp, jp, q)),
                                        ]);
                                        let tail = zb.combine(&[(
                                            1,
                                            zb.quart(i, ip, jp, qp),
                                            zb.quart(p, pp, q, j),
                                        )]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    // families 10/11 of the binomial list split
                                    // into four relation families
                                    if i > p && ip < pp && jp > qp && j < q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(p, ip, jp, q), zb.quart(i, pp, qp, j)),
                                        ]);
                                        let tail = zb.combine(&[
                                            (1, zb.quart(p, i, jp, q), zb.quart(ip, pp, qp, j)),
                                            (1, zb.quart(i, pp, j, q), zb.quart(p, ip, qp, jp)),
                                            (-1, zb.quart(ip, pp, j, q), zb.quart(p, i, qp, jp)),
                                        ]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    if i < p && ip > pp && jp < qp && j > q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(p, ip, jp, q), zb.quart(i, pp, qp, j)),
                                        ]);
                                        let tail = zb.combine(&[
                                            (1, zb.quart(i, p, qp, j), zb.quart(pp, ip, jp, q)),
                                            (1, zb.quart(p, ip, q, j), zb.quart(i, pp, jp, qp)),
                                            (-1, zb.quart(pp, ip, q, j), zb.quart(i, p, jp, qp)),
                                        ]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    if i > p && ip < pp && jp < qp && j > q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(p, ip, qp, j), zb.quart(i, pp, jp, q)),
                                        ]);
                                        let tail = zb.combine(&[
                                            (1, zb.quart(p, i, qp, j), zb.quart(ip, pp, jp, q)),
                                            (1, zb.quart(i, pp, q, j), zb.quart(p, ip, jp, qp)),
                                            (-1, zb.quart(ip, pp, q, j), zb.quart(p, i, jp, qp)),
                                        ]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                    if i < p && ip > pp && jp > qp && j < q {
                                        let bin = zb.combine(&[
                                            lhs.clone(),
                                            (-1, zb.quart(p, ip, qp, j), zb.quart(i, pp, jp, q)),
                                        ]);
                                        let tail = zb.combine(&[
                                            (1, zb.quart(i, p, jp, q), zb.quart(pp, ip, qp, j)),
                                            (1, zb.quart(p, ip, j, q), zb.quart(i, pp, qp, jp)),
                                            (-1, zb.quart(pp, ip, j, q), zb.quart(i, p, qp, jp)),
                                        ]);
                                        push(bin.clone(), bin.add(&tail), &mut seen);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

// ---- unimodular map ------------------------------------------------------

/// The lattice map Z^{2(a+b)} -> Z^{2a+2b-5} that carries the leading
/// exponents A_{a,b} onto the poset-ideal indicators B_{a,b}: partial-sum
/// substitutions followed by deletion of the three constant coordinates.
/// Output basis order: e_1..e_{a-1}, e'_2..e'_{a-1}, f'_1..f'_{b-1}, f_2..f_b.
pub fn unimodular_map(a: usize, b: usize, v: &[i64]) -> Result<Vec<i64>, Error> {
    if v.len() != 2 * (a + b) {
        return Err(Error::DimensionMismatch { expected: 2 * (a + b), got: v.len() });
    }
    let c = |i: usize| v[pos_x(i)]; // e_i coefficient
    let dp = |j: usize| v[pos_xp(a, j)]; // f'_j coefficient
    let cp = |i: usize| v[pos_yp(a, b, i)]; // e'_i coefficient
    let d = |j: usize| v[pos_y(a, b, j)]; // f_j coefficient

    let mut out = Vec::with_capacity(2 * a + 2 * b - 5);
    for i in 1..=a - 1 {
        out.push((1..=i).map(c).sum());
    }
    for i in 2..=a.saturating_sub(1) {
        out.push((2..=i).map(cp).sum());
    }
    for j in 1..=b - 1 {
        out.push((j..=b - 1).map(dp).sum());
    }
    for j in 2..=b {
        out.push((j..=b).map(d).sum());
    }
    Ok(out)
}

// ---- dimension operations ------------------------------------------------

/// Upper bound of the edge-ring dimension: min(n, 2d-4) for bipartite
/// graphs, min(n, 2d-3) otherwise.
pub fn dim_upper_bound(g: &Graph) -> usize {
    let n = g.edge_count();
    let d = g.vertex_count();
    if g.is_bipartite() {
        n.min(2 * d - 4)
    } else {
        n.min(2 * d - 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Fp(u64),
}

impl FieldChoice {
    pub fn name(&self) -> String {
        match self {
            FieldChoice::Q => "q".into(),
            FieldChoice::Fp(p) => format!("fp:{p}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimResult {
    pub dim: usize,
    pub field: String,
    pub strategy: String,
}

/// Krull dimension of the edge ring via the kernel of the edge map.
pub fn dim_edge_ring_kernel(
    g: &Graph,
    field: &FieldChoice,
    cfg: &GbConfig,
) -> Result<DimResult, Error> {
    let gens = binomial_gens(g);
    let labels: Vec<String> = gens.labels.clone();
    let source = VarTable::new(labels, vec![VarRole::Z; gens.gens.len()]);
    let dim = match field {
        FieldChoice::Q => {
            let map = AlgebraMap::new(source, gens.gens.clone());
            let gb = kernel_of_map(&map, cfg)?;
            quotient_dimension(&gb)?
        }
        FieldChoice::Fp(p) => {
            let images: Vec<Poly<Fp>> = gens
                .gens
                .iter()
                .map(|g| g.map_coeffs(|r| Fp::from_rat(r, *p)))
                .collect();
            let map = AlgebraMap::new(source, images);
            let gb = kernel_of_map(&map, cfg)?;
            quotient_dimension(&gb)?
        }
    };
    Ok(DimResult {
        dim,
        field: field.name(),
        strategy: "kernel".into(),
    })
}

/// Krull dimension via the lattice rank of the leading exponents; valid
/// only once the generating set passes the SAGBI criterion.
pub fn dim_edge_ring_lattice(
    gens: &SubalgebraGens<Rat>,
    cfg: &GbConfig,
) -> Result<DimResult, Error> {
    match sagbi_check(gens, cfg)? {
        SagbiOutcome::Pass => {}
        SagbiOutcome::Fail { .. } => {
            return Err(Error::Strategy(
                "lattice strategy requires a verified SAGBI basis".into(),
            ))
        }
    }
    let config = gens.initial_exponents();
    Ok(DimResult {
        dim: lattice_rank(&config.points),
        field: "q".into(),
        strategy: "lattice".into(),
    })
}

/// Order on the 2d-variable edge table that makes the x-variables of odd
/// vertices dominant: weight 1 on x_1, x_3, ..., graded-lex tiebreak. Around
/// an even cycle the edge leading terms then alternate x_odd y_even, so the
/// 2k lead exponents span only a rank-(2k-1) lattice and the extra cycle
/// generator contributes a genuinely new initial monomial.
pub fn odd_dominant_order(d: usize) -> MonomialOrder {
    let table = binomial_gens_table(d);
    let mut weights = vec![BigInt::from(0u32); 2 * d];
    for i in (1..=d).step_by(2) {
        weights[i - 1] = BigInt::from(1u32);
    }
    MonomialOrder::weighted(table, weights, crate::poly::OrderKind::GradedLex)
}

fn binomial_gens_table(d: usize) -> Arc<VarTable> {
    let mut names = Vec::with_capacity(2 * d);
    let mut roles = Vec::with_capacity(2 * d);
    for i in 1..=d {
        names.push(format!("x{i}"));
        roles.push(VarRole::X);
    }
    for i in 1..=d {
        names.push(format!("y{i}"));
        roles.push(VarRole::Y);
    }
    VarTable::new(names, roles)
}

/// The extra initial monomial of an even cycle C_{2k}: the combination
/// prod f_{2j-1,2j} - c * f_{1,2k} prod f_{2j,2j+1}, with the scalar c
/// chosen so that the two products' leading terms under the odd-dominant
/// order cancel. With the f_{ij} stored in min-max form the leading
/// coefficients of the two products agree only up to a sign depending on k,
/// so c = lc(p1)/lc(p2); for odd k this is 1 and the combination is the
/// plain difference.
pub fn even_cycle_extra_gen(k: usize) -> Result<Poly<Rat>, Error> {
    if k < 2 {
        return Err(Error::Domain("even cycle needs k >= 2".into()));
    }
    let g = named_graph(&format!("cycle:{}", 2 * k))?;
    let gens = binomial_gens(&g);
    let gen_of = |i: usize, j: usize| -> &Poly<Rat> {
        let label = format!("z{}_{}", i.min(j), i.max(j));
        let pos = gens.labels.iter().position(|l| *l == label).expect("cycle edge");
        &gens.gens[pos]
    };
    let table = gens.order.table().clone();
    let mut p1 = Poly::one(table.clone());
    for j in 1..=k {
        p1 = p1.mul(gen_of(2 * j - 1, 2 * j));
    }
    let mut p2 = gen_of(1, 2 * k).clone();
    for j in 1..=k - 1 {
        p2 = p2.mul(gen_of(2 * j, 2 * j + 1));
    }
    let order = odd_dominant_order(2 * k);
    let (m1, c1) = p1.leading_term(&order)?;
    let (m2, c2) = p2.leading_term(&order)?;
    debug_assert_eq!(m1, m2, "product leading monomials must coincide");
    Ok(p1.sub(&p2.scale(&c1.mul(&c2.inv()))))
}

impl Fp {
    /// Reduction of an exact rational mod p.
    pub fn from_rat(r: &Rat, p: u64) -> Fp {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let pb = BigInt::from(p);
        let num = r.0.numer().mod_floor(&pb).to_i64().expect("reduced numerator fits");
        let den = r.0.denom().mod_floor(&pb).to_i64().expect("reduced denominator fits");
        let num = Fp::new(num, p);
        let den = Fp::new(den, p);
        assert!(!den.is_zero(), "denominator divisible by the prime");
        num.mul(&den.inv())
    }
}

/// Maps leading exponents of the binomial edge generators of `g` into Z^{2d}.
pub fn edge_lead_exponents(g: &Graph) -> Vec<Vec<i64>> {
    let gens = binomial_gens(g);
    gens.initial_exponents().points
}

/// Same, but under a caller-chosen order on the 2d-variable edge table.
pub fn edge_lead_exponents_with(g: &Graph, order: &MonomialOrder) -> Vec<Vec<i64>> {
    let gens = binomial_gens(g);
    gens.gens
        .iter()
        .map(|f| {
            let (e, _) = f.leading_term(order).expect("nonzero generator");
            e.exps().iter().map(|x| *x as i64).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn edge_generator_shape() {
        let g = named_graph("path:3").unwrap();
        let gens = binomial_gens(&g);
        let t = gens.order.table().clone();
        assert_eq!(gens.gens.len(), 2);
        assert_eq!(
            gens.gens[0],
            parse_poly(&t, "x1*y2 - x2*y1").unwrap()
        );
        assert_eq!(
            gens.gens[1],
            parse_poly(&t, "x2*y3 - x3*y2").unwrap()
        );
    }

    #[test]
    fn edge_swap_antisymmetry() {
        // swapping x_i <-> y_i, x_j <-> y_j negates each edge generator
        let g = named_graph("complete:4").unwrap();
        let gens = binomial_gens(&g);
        let t = gens.order.table().clone();
        let d = 4;
        for f in &gens.gens {
            let swapped: Vec<Poly<Rat>> = (0..2 * d)
                .map(|v| {
                    let w = if v < d { v + d } else { v - d };
                    Poly::var(t.clone(), w)
                })
                .collect();
            assert_eq!(f.substitute(&swapped), f.neg());
        }
    }

    #[test]
    fn frame_22_quartic_expansion() {
        let frame = kab_frame(2, 2).unwrap();
        assert_eq!(frame.gens.gens.len(), 5);
        let t = frame.table.clone();
        let quartic = &frame.gens.gens[4];
        let want = parse_poly(
            &t,
            "x1*xp1*yp2*y2 + x2*xp2*yp1*y1 - x1*xp2*yp2*y1 - x2*xp1*yp1*y2",
        )
        .unwrap();
        assert_eq!(quartic, &want);
    }

    #[test]
    fn frame_leading_terms_match_config() {
        for (a, b) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
            let frame = kab_frame(a, b).unwrap();
            assert_eq!(frame.gens.initial_exponents(), frame.config, "({a},{b})");
            let c2 = |n: usize| n * (n - 1) / 2;
            assert_eq!(frame.gens.gens.len(), a * b + c2(a) * c2(b));
        }
    }

    #[test]
    fn weight_realizes_order_on_generators() {
        for (a, b) in [(2, 2), (3, 3), (3, 4), (4, 4)] {
            let frame = kab_frame(a, b).unwrap();
            for (g, point) in frame.gens.gens.iter().zip(&frame.config.points) {
                let init = g.initial_form(&frame.weight).unwrap();
                assert_eq!(init.num_terms(), 1, "({a},{b})");
                let (e, _) = &init.terms()[0];
                let expect: Vec<i64> = e.exps().iter().map(|x| *x as i64).collect();
                assert_eq!(&expect, point);
            }
        }
    }

    #[test]
    fn binomials_22_is_single() {
        let bins = toric_binomials(2, 2);
        assert_eq!(bins.len(), 1);
        let t = r_table(2, 2);
        let want = parse_poly(&t, "z1_1*z2_2 - z1_2*z2_1").unwrap();
        assert_eq!(bins[0], want);
    }

    #[test]
    fn relations_22_is_single() {
        let rels = kernel_relations(2, 2);
        assert_eq!(rels.len(), 1);
        let t = r_table(2, 2);
        let want = parse_poly(&t, "z1_1*z2_2 - z1_2*z2_1 - z1_2_1_2").unwrap();
        assert_eq!(rels[0], want);
    }

    #[test]
    fn relations_vanish_under_phi() {
        for (a, b) in [(2, 2), (2, 3), (3, 3)] {
            let frame = kab_frame(a, b).unwrap();
            let phi = phi_map(&frame);
            for rel in kernel_relations(a, b) {
                assert!(phi.apply(&rel).is_zero(), "({a},{b}): {rel}");
            }
        }
    }

    #[test]
    fn family1_count_23() {
        // first family alone contributes C(2,2)*C(3,2) = 3 binomials at (2,3)
        let bins = toric_binomials(2, 3);
        let quad_only = bins
            .iter()
            .filter(|p| {
                p.var_support()
                    .iter()
                    .all(|v| r_table(2, 3).name(*v).matches('_').count() == 1)
            })
            .count();
        assert_eq!(quad_only, 3);
    }

    #[test]
    fn unimodular_base_cases() {
        // e_a + f_1 -> 0
        let (a, b) = (3, 4);
        let mut v = vec![0i64; 2 * (a + b)];
        v[pos_x(a)] = 1;
        v[pos_y(a, b, 1)] = 1;
        assert_eq!(unimodular_map(a, b, &v).unwrap(), vec![0; 2 * a + 2 * b - 5]);

        // (2,2): quartic exponent -> indicator of {e_1, f'_1, f_2}
        let (a, b) = (2, 2);
        let mut v = vec![0i64; 8];
        v[pos_x(1)] = 1;
        v[pos_xp(a, 1)] = 1;
        v[pos_yp(a, b, 2)] = 1;
        v[pos_y(a, b, 2)] = 1;
        assert_eq!(unimodular_map(a, b, &v).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn unimodular_bijects_a_onto_b() {
        use crate::poset::encode_ideals_b;
        for a in 2..=5 {
            for b in a..=5 {
                let frame = kab_frame(a, b).unwrap();
                let images: Vec<Vec<i64>> = frame
                    .config
                    .points
                    .iter()
                    .map(|p| unimodular_map(a, b, p).unwrap())
                    .collect();
                let distinct: HashSet<&Vec<i64>> = images.iter().collect();
                assert_eq!(distinct.len(), images.len(), "injective ({a},{b})");
                let (bconf, _) = encode_ideals_b(a, b).unwrap();
                let bset: HashSet<&Vec<i64>> = bconf.points.iter().collect();
                assert_eq!(distinct, bset, "image = B ({a},{b})");
            }
        }
    }

    #[test]
    fn named_graph_examples() {
        let g1 = named_graph("g1").unwrap();
        assert_eq!(g1.vertex_count(), 8);
        assert_eq!(g1.edge_count(), 12);
        assert!(g1.edges().any(|e| e == (5, 8)));
        // g1 contains the triangle 1-4-5 and is non-bipartite
        assert!(!g1.is_bipartite());

        let g2 = named_graph("g2").unwrap();
        assert_eq!(g2.edge_count(), 12);
        let coloring = g2.bipartition().unwrap();
        for v in [1, 3, 5, 7] {
            assert_eq!(coloring[v], coloring[1]);
        }
        for v in [2, 4, 6, 8] {
            assert_ne!(coloring[v], coloring[1]);
        }

        assert!(named_graph("star:4").unwrap().is_bipartite());
        assert!(named_graph("bogus").is_err());
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(dim_upper_bound(&complete_bipartite(3, 3).unwrap()), 8);
        assert_eq!(dim_upper_bound(&named_graph("g2").unwrap()), 12);
        assert_eq!(dim_upper_bound(&named_graph("cycle:3").unwrap()), 3);
    }

    #[test]
    fn even_cycle_rank_jump() {
        for k in [2usize, 3] {
            let cycle = named_graph(&format!("cycle:{}", 2 * k)).unwrap();
            let order = odd_dominant_order(2 * k);
            let mut points = edge_lead_exponents_with(&cycle, &order);
            assert_eq!(lattice_rank(&points), 2 * k - 1, "k={k}");
            let extra = even_cycle_extra_gen(k).unwrap();
            assert!(!extra.is_zero());
            let (e, _) = extra.leading_term(&order).unwrap();
            points.push(e.exps().iter().map(|x| *x as i64).collect());
            assert_eq!(lattice_rank(&points), 2 * k, "k={k}");
        }
    }

    #[test]
    fn odd_cycle_points_independent() {
        let c5 = named_graph("cycle:5").unwrap();
        assert_eq!(lattice_rank(&edge_lead_exponents(&c5)), 5);
    }

    #[test]
    fn fp_from_rat_reduces() {
        let half = Rat::from_frac(1, 2);
        let x = Fp::from_rat(&half, 32003);
        assert_eq!(x.mul(&Fp::new(2, 32003)), Fp::new(1, 32003));
    }
}
