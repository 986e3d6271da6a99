//! Randomized invariants over generated chain and loop atoms.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bhlab::bhmat::{Atom, BHMatrix};
use bhlab::chaincx::Cx;
use bhlab::clifford::{contract_e, e_op, e_vee_op, mul_e, star, ExtElement, PiLaurent, Wedge};
use bhlab::cohoring::{eigenvalue_identity, milnor_basis, orbifold_basis};
use bhlab::dwork::PiField;
use bhlab::homolab::milnor_dimension;
use bhlab::rational::{qi, Q};
use bhlab::suites::random_element;

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        prop::collection::vec(2u32..=4, 1..=3).prop_map(Atom::Chain),
        prop::collection::vec(2u32..=4, 2..=3).prop_map(Atom::Loop),
    ]
}

fn small_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        prop::collection::vec(2u32..=5, 1..=2).prop_map(Atom::Chain),
        prop::collection::vec(2u32..=4, 2..=2).prop_map(Atom::Loop),
    ]
}

fn matrix(a: &Atom) -> BHMatrix {
    BHMatrix::from_atom(a).expect("generated atoms are invertible")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sectors_enumerate_the_group(a in atom()) {
        let m = matrix(&a);
        let g = m.group_elements();
        prop_assert_eq!(g.len() as i64, m.det().abs());
        for s in &g {
            prop_assert!(s.charges.iter().all(|c| c >= &Q::zero() && c < &Q::one()));
            prop_assert_eq!(&m.lambda_from_charges(&s.charges), &s.lambda);
        }
        prop_assert!(m.weights().iter().all(|q| q > &Q::zero() && q < &Q::one()));
    }

    #[test]
    fn noninteger_propagation(a in atom(), beta in prop::collection::vec(0i64..24, 3)) {
        let m = matrix(&a);
        prop_assert!(m.check_noninteger_propagation(&beta[..m.n()]).unwrap());
    }

    #[test]
    fn transpose_is_an_involution(a in atom()) {
        let m = matrix(&a);
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().det(), m.det());
    }

    #[test]
    fn milnor_basis_has_milnor_size(a in small_atom()) {
        let m = matrix(&a);
        prop_assert_eq!(milnor_basis(&a).len(), milnor_dimension(&m));
        let mu: Q = m.weights().iter().fold(Q::one(), |acc, q| acc * (q.recip() - Q::one()));
        prop_assert_eq!(Q::from(num_bigint::BigInt::from(milnor_dimension(&m))), mu);
    }

    #[test]
    fn orbifold_totals_agree_with_dual(a in atom()) {
        let m = matrix(&a);
        let b = orbifold_basis(&m);
        prop_assert_eq!(b.len(), orbifold_basis(&m.transpose()).len());
        for e in &b.entries {
            prop_assert_eq!(eigenvalue_identity(&e.gradings, m.n()), Some(true));
        }
    }

    #[test]
    fn total_differential_squares_to_zero(a in atom(), seed in any::<u64>()) {
        let m = matrix(&a);
        let cx = Cx::new(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = cx.canonical(&random_element(&m, &mut rng, 6, false));
        prop_assert!(cx.apply_d(&cx.apply_d(&v)).is_zero());
        prop_assert!(cx.apply_dvee(&cx.apply_dvee(&v)).is_zero());
        prop_assert!(cx.apply_total(&cx.apply_total(&v)).is_zero());
    }

    #[test]
    fn delta_is_a_chain_map(a in atom(), seed in any::<u64>()) {
        let m = matrix(&a);
        let cx = Cx::new(&m);
        let dual = cx.dual();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = cx.canonical(&random_element(&m, &mut rng, 6, true));
        let lhs = dual.canonical(&cx.delta(&cx.apply_total(&v)).unwrap());
        let rhs = dual.apply_total(&dual.canonical(&cx.delta(&v).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_intertwines_clifford_operators(a in atom(), w in 0u32..8, i in 0usize..3) {
        let m = matrix(&a);
        let n = m.n();
        let (w, i) = (Wedge(w & ((1 << n) - 1)), i % n);
        let v = ExtElement::monomial(w, PiLaurent::int(1));
        prop_assert_eq!(star(&m, &e_op(&m, i, &v)), contract_e(i, &star(&m, &v)));
        prop_assert_eq!(star(&m, &e_vee_op(&m, i, &v)), mul_e(i, &star(&m, &v)));
        let t = m.transpose();
        let ss = |x: &ExtElement| star(&t, &star(&m, x));
        prop_assert_eq!(ss(&mul_e(i, &v)), mul_e(i, &ss(&v)));
    }

    #[test]
    fn pi_field_is_a_field(p in prop::sample::select(vec![3u64, 5, 7, 11]), a in -50i64..50, b in 1i64..50, k in -4i64..8) {
        let x = PiField::from_q(p, Q::new(a.into(), b.into()));
        let y = &PiField::pi_pow(p, k) + &PiField::from_q(p, qi(b));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(PiField::pi_pow(p, p as i64 - 1), PiField::from_q(p, qi(-(p as i64))));
    }
}
