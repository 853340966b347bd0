//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted descending under the ambient graded-lex order of the
//! variable table, independent of whatever query order a caller uses, so
//! polynomial equality is structural and serialization is deterministic.

mod order;
mod parse;

pub use order::{weight_vector_pow2, MonomialOrder, OrderKind};
pub use parse::parse_poly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::field::{Field, Rat};

/// Role tag of a variable in the S_{a,b} alphabet (or elsewhere).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarRole {
    X,
    XPrime,
    YPrime,
    Y,
    Z,
    Aux,
}

/// An ordered variable alphabet. List position is the lexicographic rank:
/// earlier variables outrank later ones.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new(names: Vec<String>, roles: Vec<VarRole>) -> Arc<Self> {
        assert_eq!(names.len(), roles.len());
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate variable name {n}");
        }
        Arc::new(VarTable { names, roles, index })
    }

    pub fn aux(names: &[&str]) -> Arc<Self> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![VarRole::Aux; names.len()],
        )
    }

    /// The 2(a+b)-variable alphabet of S_{a,b}, ranked
    /// x_1..x_a, x'_1..x'_b, y'_1..y'_a, y_1..y_b.
    pub fn s_ab(a: usize, b: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(2 * (a + b));
        let mut roles = Vec::with_capacity(2 * (a + b));
        for i in 1..=a {
            names.push(format!("x{i}"));
            roles.push(VarRole::X);
        }
        for j in 1..=b {
            names.push(format!("xp{j}"));
            roles.push(VarRole::XPrime);
        }
        for i in 1..=a {
            names.push(format!("yp{i}"));
            roles.push(VarRole::YPrime);
        }
        for j in 1..=b {
            names.push(format!("y{j}"));
            roles.push(VarRole::Y);
        }
        Self::new(names, roles)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Exponent vector of a monomial, with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exps {
    e: Vec<u32>,
    deg: u32,
}

impl Exps {
    pub fn new(e: Vec<u32>) -> Self {
        let deg = e.iter().sum();
        Exps { e, deg }
    }

    pub fn zero(n: usize) -> Self {
        Exps { e: vec![0; n], deg: 0 }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exps { e, deg: 1 }
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.e
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i]
    }

    pub fn is_constant(&self) -> bool {
        self.deg == 0
    }

    pub fn add(&self, other: &Exps) -> Exps {
        debug_assert_eq!(self.e.len(), other.e.len());
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        Exps { e, deg: self.deg + other.deg }
    }

    pub fn mul_scalar(&self, k: u32) -> Exps {
        let e = self.e.iter().map(|a| a * k).collect();
        Exps { e, deg: self.deg * k }
    }

    pub fn divides(&self, other: &Exps) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn quotient(&self, other: &Exps) -> Exps {
        debug_assert!(self.divides(other));
        let e = other.e.iter().zip(&self.e).map(|(b, a)| b - a).collect();
        Exps { e, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Exps) -> Exps {
        let e: Vec<u32> = self.e.iter().zip(&other.e).map(|(a, b)| *a.max(b)).collect();
        Exps::new(e)
    }

    pub fn gcd_is_one(&self, other: &Exps) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variable indices with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, v)| **v > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Canonical graded-lex comparison used for internal term storage.
    pub fn cmp_grlex(&self, other: &Exps) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| {
                for (a, b) in self.e.iter().zip(&other.e) {
                    match a.cmp(b) {
                        // earlier variable with larger exponent wins
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            })
    }
}

/// One term of a polynomial.
pub type Term<F> = (Exps, F);

/// Sparse multivariate polynomial over an exact field.
///
/// Invariants: no zero coefficients, no duplicate exponent vectors, terms
/// sorted descending under the canonical graded-lex order of the table.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    table: Arc<VarTable>,
    terms: Vec<Term<F>>,
}

pub type QPoly = Poly<Rat>;

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.terms == other.terms
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(table: Arc<VarTable>) -> Self {
        Poly { table, terms: Vec::new() }
    }

    pub fn constant(table: Arc<VarTable>, c: F) -> Self {
        let n = table.len();
        if c.is_zero() {
            Poly::zero(table)
        } else {
            Poly { table, terms: vec![(Exps::zero(n), c)] }
        }
    }

    pub fn one(table: Arc<VarTable>) -> Self {
        Self::constant(table, F::one())
    }

    pub fn var(table: Arc<VarTable>, i: usize) -> Self {
        let n = table.len();
        Poly { table, terms: vec![(Exps::unit(n, i), F::one())] }
    }

    pub fn monomial(table: Arc<VarTable>, e: Exps, c: F) -> Self {
        assert_eq!(e.len(), table.len());
        if c.is_zero() {
            Poly::zero(table)
        } else {
            Poly { table, terms: vec![(e, c)] }
        }
    }

    /// Builds from arbitrary (exps, coeff) pairs, combining duplicates.
    pub fn from_terms(table: Arc<VarTable>, terms: Vec<Term<F>>) -> Self {
        let mut map: HashMap<Exps, F> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), table.len());
            match map.entry(e) {
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let s = o.get().add(&c);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    if !c.is_zero() {
                        v.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<Term<F>> = map.into_iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.cmp_grlex(a));
        Poly { table, terms }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    pub fn coeff(&self, e: &Exps) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert!(Arc::ptr_eq(&self.table, &other.table) || self.table == other.table);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp_grlex(eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { cb.neg() } else { cb.clone() };
                    out.push((eb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (e, c) in &self.terms[i..] {
            out.push((e.clone(), c.clone()));
        }
        for (e, c) in &other.terms[j..] {
            let c = if negate { c.neg() } else { c.clone() };
            out.push((e.clone(), c));
        }
        Poly { table: self.table.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        Poly { table: self.table.clone(), terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.table.clone());
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect();
        Poly { table: self.table.clone(), terms }
    }

    /// self * c * x^m
    pub fn mul_term(&self, m: &Exps, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.table.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.add(m), k.mul(c)))
            .collect();
        // adding a fixed monomial preserves the canonical term order
        Poly { table: self.table.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.table.clone());
        }
        let mut map: HashMap<Exps, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let c = ca.mul(cb);
                match map.entry(e) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&c);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<Term<F>> = map.into_iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.cmp_grlex(a));
        Poly { table: self.table.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.table.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Order-maximal term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<Term<F>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut best = &self.terms[0];
        for t in &self.terms[1..] {
            if order.compare(&t.0, &best.0)? == Ordering::Greater {
                best = t;
            }
        }
        Ok(best.clone())
    }

    /// Sum of terms of maximal weight under an integer weight vector.
    pub fn initial_form(&self, w: &[num_bigint::BigInt]) -> Result<Self, Error> {
        use num_bigint::BigInt;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if w.len() != self.table.len() {
            return Err(Error::DimensionMismatch {
                expected: self.table.len(),
                got: w.len(),
            });
        }
        let weight = |e: &Exps| -> BigInt {
            let mut s = BigInt::from(0u32);
            for (i, x) in e.exps().iter().enumerate() {
                if *x > 0 {
                    s += &w[i] * BigInt::from(*x);
                }
            }
            s
        };
        let mut best: Option<BigInt> = None;
        for (e, _) in &self.terms {
            let wt = weight(e);
            if best.as_ref().map_or(true, |b| wt > *b) {
                best = Some(wt);
            }
        }
        let best = best.unwrap();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| weight(e) == best)
            .cloned()
            .collect();
        Ok(Poly { table: self.table.clone(), terms })
    }

    /// Divides all coefficients so the `order`-leading coefficient is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Self, Error> {
        let (_, lc) = self.leading_term(order)?;
        Ok(self.scale(&lc.inv()))
    }

    /// Substitutes each variable by the polynomial `images[i]` (over any table).
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.table.len());
        let target = images
            .first()
            .map(|p| p.table.clone())
            .expect("substitute needs at least one image");
        let mut acc = Poly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target.clone(), c.clone());
            for (i, k) in e.exps().iter().enumerate() {
                if *k > 0 {
                    t = t.mul(&images[i].pow(*k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let c = f(c);
                if c.is_zero() {
                    None
                } else {
                    Some((e.clone(), c))
                }
            })
            .collect();
        Poly { table: self.table.clone(), terms }
    }

    /// Re-expresses over `target`, matching variables by name.
    /// Fails if a variable with positive exponent is missing from `target`.
    pub fn project_to(&self, target: &Arc<VarTable>) -> Result<Poly<F>, Error> {
        let map: Vec<Option<usize>> = self
            .table
            .names()
            .iter()
            .map(|n| target.position(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut out = vec![0u32; target.len()];
            for (i, k) in e.exps().iter().enumerate() {
                if *k > 0 {
                    match map[i] {
                        Some(j) => out[j] += *k,
                        None => {
                            return Err(Error::Domain(format!(
                                "variable {} not present in target table",
                                self.table.name(i)
                            )))
                        }
                    }
                }
            }
            terms.push((Exps::new(out), c.clone()));
        }
        Ok(Poly::from_terms(target.clone(), terms))
    }

    /// Union of variable supports over all terms.
    pub fn var_support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.table.len()];
        for (e, _) in &self.terms {
            for i in e.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(i, _)| i)
            .collect()
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != "1" || e.is_constant() {
                parts.push(mag);
            }
            for (i, x) in e.exps().iter().enumerate() {
                if *x == 1 {
                    parts.push(self.table.name(i).to_string());
                } else if *x > 1 {
                    parts.push(format!("{}^{}", self.table.name(i), x));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn t3() -> Arc<VarTable> {
        VarTable::aux(&["x", "y", "z"])
    }

    fn p(src: &str) -> QPoly {
        parse_poly(&t3(), src).unwrap()
    }

    #[test]
    fn add_cancels() {
        let a = p("x*y - z^2");
        let b = p("z^2 - x*y");
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn mul_expands() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(a.mul(&b), p("x^2 - y^2"));
    }

    #[test]
    fn display_round_trip() {
        let a = p("2*x^2*y - 3/2*z + 1");
        let s = a.to_string();
        assert_eq!(parse_poly(&t3(), &s).unwrap(), a);
    }

    #[test]
    fn substitute_evaluates() {
        // x -> u^2, y -> v, z -> u*v over a new table
        let tgt = VarTable::aux(&["u", "v"]);
        let imgs = vec![
            parse_poly::<Rat>(&tgt, "u^2").unwrap(),
            parse_poly(&tgt, "v").unwrap(),
            parse_poly(&tgt, "u*v").unwrap(),
        ];
        let q = p("x*y^2 - z^2");
        assert!(q.substitute(&imgs).is_zero());
    }

    #[test]
    fn project_to_rejects_missing_vars() {
        let tgt = VarTable::aux(&["x", "y"]);
        assert!(p("x + z").project_to(&tgt).is_err());
        assert!(p("x*y").project_to(&tgt).is_ok());
    }
}
