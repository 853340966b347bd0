//! Randomized invariants: order axioms, arithmetic laws, subduction and
//! Groebner determinism.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use sagbi_forge_core::edge_ring::kab_frame;
use sagbi_forge_core::field::{Field, Rat};
use sagbi_forge_core::groebner::{buchberger, Ideal};
use sagbi_forge_core::poly::{Exps, MonomialOrder, OrderKind, Poly, VarRole, VarTable};
use sagbi_forge_core::sagbi::subduct;

const NVARS: usize = 4;

fn table() -> Arc<VarTable> {
    VarTable::new(
        (0..NVARS).map(|i| format!("v{i}")).collect(),
        vec![VarRole::Aux; NVARS],
    )
}

fn exps() -> impl Strategy<Value = Exps> {
    proptest::collection::vec(0u32..4, NVARS).prop_map(Exps::new)
}

fn orders() -> Vec<MonomialOrder> {
    let t = table();
    vec![
        MonomialOrder::lex(t.clone()),
        MonomialOrder::graded_lex(t.clone()),
        MonomialOrder::graded_revlex(t.clone()),
        MonomialOrder::weighted(
            t.clone(),
            vec![BigInt::from(5), BigInt::from(3), BigInt::from(2), BigInt::from(1)],
            OrderKind::GradedRevLex,
        ),
        MonomialOrder::block_elimination(t, vec![0, 2], OrderKind::GradedRevLex, OrderKind::GradedLex),
    ]
}

fn poly() -> impl Strategy<Value = Poly<Rat>> {
    proptest::collection::vec((exps(), -6i64..=6), 0..5).prop_map(|terms| {
        let t = table();
        Poly::from_terms(
            t,
            terms
                .into_iter()
                .map(|(e, c)| (e, Rat::from_int(c)))
                .collect(),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly<Rat>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Total, antisymmetric, multiplicative, and with 1 as the minimum:
    /// the defining axioms of a monomial order.
    #[test]
    fn order_axioms(u in exps(), v in exps(), w in exps()) {
        for ord in orders() {
            let uv = ord.compare(&u, &v).unwrap();
            let vu = ord.compare(&v, &u).unwrap();
            prop_assert_eq!(uv, vu.reverse());
            prop_assert_eq!(uv == Ordering::Equal, u == v);

            // multiplicativity: order is stable under a common factor
            let uw = u.add(&w);
            let vw = v.add(&w);
            prop_assert_eq!(ord.compare(&uw, &vw).unwrap(), uv);

            // the constant monomial is the global minimum
            let one = Exps::zero(NVARS);
            prop_assert_ne!(ord.compare(&one, &u).unwrap(), Ordering::Greater);
        }
    }

    /// lt(f * g) = lt(f) * lt(g): leading terms are multiplicative over a
    /// domain.
    #[test]
    fn leading_term_multiplicative(f in nonzero_poly(), g in nonzero_poly()) {
        for ord in orders() {
            let (ef, cf) = f.leading_term(&ord).unwrap();
            let (eg, cg) = g.leading_term(&ord).unwrap();
            let (efg, cfg) = f.mul(&g).leading_term(&ord).unwrap();
            prop_assert_eq!(efg, ef.add(&eg));
            prop_assert_eq!(cfg, cf.mul(&cg));
        }
    }

    /// in_w(f * g) = in_w(f) * in_w(g) for a weight vector.
    #[test]
    fn initial_form_multiplicative(f in nonzero_poly(), g in nonzero_poly()) {
        let w: Vec<BigInt> = [7, 4, 2, 1].map(BigInt::from).to_vec();
        let lhs = f.mul(&g).initial_form(&w).unwrap();
        let rhs = f.initial_form(&w).unwrap().mul(&g.initial_form(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// Commutativity, associativity, and distributivity of the ring
    /// operations.
    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    /// Subducting twice changes nothing, and any product of generators
    /// subducts to zero (it lies in the subalgebra by construction).
    #[test]
    fn subduction_idempotent_and_sound(
        picks in proptest::collection::vec(0usize..9, 1..4),
    ) {
        let frame = kab_frame(2, 3).unwrap();
        let gens = &frame.gens;

        let mut member = Poly::one(frame.table.clone());
        for i in &picks {
            member = member.mul(&gens.gens[*i]);
        }
        prop_assert!(subduct(&member, gens).unwrap().is_zero());

        // idempotence on a perturbed element that need not reduce to zero
        let perturbed = member.add(&Poly::var(frame.table.clone(), picks[0]));
        let once = subduct(&perturbed, gens).unwrap();
        let twice = subduct(&once, gens).unwrap();
        prop_assert_eq!(once, twice);
    }

    /// The reduced Groebner basis is a function of the ideal, not of the
    /// order in which its generators are listed.
    #[test]
    fn groebner_deterministic_under_shuffles(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let t = table();
        let parse = |s: &str| sagbi_forge_core::poly::parse_poly::<Rat>(&t, s).unwrap();
        let gens = vec![
            parse("v0^2 - v1*v2"),
            parse("v1^2 - v0*v3"),
            parse("v0*v1 - v2*v3"),
            parse("v2^2*v3 - v0*v1*v2"),
        ];
        let ord = MonomialOrder::graded_revlex(t.clone());
        let reference = buchberger(&Ideal::new(t.clone(), gens.clone()), &ord)
            .unwrap()
            .basis;

        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut shuffled = gens;
        shuffled.shuffle(&mut rng);
        let basis = buchberger(&Ideal::new(t.clone(), shuffled), &ord)
            .unwrap()
            .basis;
        prop_assert_eq!(basis, reference);
    }
}
