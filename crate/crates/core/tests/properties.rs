use proptest::prelude::*;

use voaf::characters::{eta_inverse, graded_dimension, QSeries};
use voaf::exact::{rat, ri, MultiPoly, Phase, Rat, Scalar, UPoly, Var};
use voaf::fock::{FockVector, Partition, Sector};
use voaf::fusion::decide;
use voaf::labels::ModuleLabel;
use voaf::virasoro::l_op;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((small_rat(), 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        let (x, y, z) = (MultiPoly::var(Var::X), MultiPoly::var(Var::Y), MultiPoly::var(Var::Z));
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j, k)| {
            &acc + &(&(&x.pow(i) * &y.pow(j)) * &z.pow(k)).scale(&c)
        })
    })
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 1..4).prop_map(UPoly::from_coeffs)
}

/// A random vector of a sector, supported on degrees <= 3.
fn fock_vector(sector: Sector) -> impl Strategy<Value = FockVector> {
    let parity = sector.parity();
    prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -3i64..=3), 1..4).prop_map(move |terms| {
        let it = terms.into_iter().map(|(parts, c)| {
            let d2: Vec<u32> = parts.into_iter().map(|k| 2 * k + if parity == 1 { 1 } else { 2 }).collect();
            (Partition::from_doubled(d2), Scalar::from_i64(c))
        });
        FockVector::from_terms(sector.clone(), it)
    })
}

fn any_sector() -> impl Strategy<Value = Sector> {
    prop_oneof![Just(Sector::vacuum()), Just(Sector::lambda(&rat(2, 3))), Just(Sector::Twisted)]
}

fn legal_mode(sector: &Sector, k: i64) -> Rat {
    if sector.is_twisted() {
        rat(2 * k + 1, 2)
    } else {
        ri(k)
    }
}

fn label() -> impl Strategy<Value = ModuleLabel> {
    prop_oneof![
        Just(ModuleLabel::MPlus),
        Just(ModuleLabel::MMinus),
        Just(ModuleLabel::ThetaPlus),
        Just(ModuleLabel::ThetaMinus),
        Just(ModuleLabel::lambda(rat(1, 2))),
        Just(ModuleLabel::lambda(ri(2))),
        Just(ModuleLabel::lambda(ri(8))),
        Just(ModuleLabel::lambda(rat(1, 3))),
    ]
}

fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec((0i64..8, -3i64..=3), 0..5)
        .prop_map(|t| QSeries::from_terms(Rat::from_integer(0.into()), ri(4), t.into_iter().map(|(e, c)| (rat(e, 2), ri(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in multipoly(), b in multipoly(), c in multipoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn polynomial_text_round_trip(a in multipoly()) {
        let back: MultiPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn common_root_kills_resultant(r in small_rat(), a in multipoly(), b in multipoly()) {
        let lin = &MultiPoly::var(Var::X) - &MultiPoly::constant(r);
        let (f, g) = (&(&lin * &a) + &lin, &(&lin * &b) - &lin.scale(&ri(2)));
        let res = MultiPoly::resultant(&f, &g, Var::X).unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn gcd_keeps_common_factor(a in upoly(), b in upoly(), c in upoly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = UPoly::gcd(&(&a * &c), &(&b * &c));
        prop_assert!(g.divrem(&c).1.is_zero());
    }

    #[test]
    fn phases_form_a_group(r in small_rat(), k in -3i64..=3) {
        let p = Phase::new(r.clone());
        prop_assert_eq!(&p * &p.inverse(), Phase::one());
        prop_assert_eq!(Phase::new(&r + ri(2 * k)), p.clone());
        prop_assert_eq!(Phase::new(ri(k)).sign(), Some(if k % 2 == 0 { 1 } else { -1 }));
    }

    #[test]
    fn heisenberg_relation((sec, v) in any_sector().prop_flat_map(|s| (Just(s.clone()), fock_vector(s))), m in -3i64..3, n in -3i64..3) {
        let (hm, hn) = (legal_mode(&sec, m), legal_mode(&sec, n));
        let a = v.apply_mode(&hn).unwrap().apply_mode(&hm).unwrap();
        let b = v.apply_mode(&hm).unwrap().apply_mode(&hn).unwrap();
        let expect = if (&hm + &hn) == ri(0) { v.scale_rat(&hm) } else { FockVector::zero(sec.clone()) };
        prop_assert_eq!(a.sub(&b), expect);
    }

    #[test]
    fn virasoro_relation((_, v) in any_sector().prop_flat_map(|s| (Just(s.clone()), fock_vector(s))), m in -3i64..=3, n in -3i64..=3) {
        let lhs = l_op(m, &l_op(n, &v)).sub(&l_op(n, &l_op(m, &v)));
        let mut rhs = l_op(m + n, &v).scale_rat(&ri(m - n));
        if m + n == 0 {
            rhs = rhs.add(&v.scale_rat(&rat(m * m * m - m, 12)));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_is_an_involution(v in prop_oneof![fock_vector(Sector::vacuum()), fock_vector(Sector::Twisted)]) {
        prop_assert_eq!(v.theta().unwrap().theta().unwrap(), v);
    }

    #[test]
    fn contravariance(u in fock_vector(Sector::Twisted), v in fock_vector(Sector::Twisted), n in -3i64..=3) {
        let l = l_op(n, &u).contravariant_form(&v).unwrap();
        let r = u.contravariant_form(&l_op(-n, &v)).unwrap();
        prop_assert_eq!(l, r);
        if !u.is_zero() {
            prop_assert!(u.contravariant_form(&u).unwrap().to_rat().unwrap() > Rat::from_integer(0.into()));
        }
    }

    #[test]
    fn state_text_round_trip((sec, v) in any_sector().prop_flat_map(|s| (Just(s.clone()), fock_vector(s)))) {
        // the zero vector prints as "0" and carries no sector
        prop_assume!(!v.is_zero());
        let s = sec.momentum().and_then(|m| m.modulus().cloned());
        let back = FockVector::parse(&v.to_string(), s.as_ref()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn label_text_round_trip(m in label()) {
        prop_assert_eq!(m.to_string().parse::<ModuleLabel>().unwrap(), m);
    }

    #[test]
    fn series_distribute(a in series(), b in series(), c in series()) {
        let l = a.add(&b).mul(&c);
        let r = a.mul(&c).add(&b.mul(&c));
        prop_assert!(l.compare(&r).is_ok());
    }

    #[test]
    fn parity_halves_add_up(k in 0i64..12) {
        let cutoff = ri(k);
        let sum = graded_dimension(&ModuleLabel::MPlus, &cutoff).unwrap().add(&graded_dimension(&ModuleLabel::MMinus, &cutoff).unwrap());
        prop_assert!(sum.compare(&eta_inverse(&cutoff)).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fusion_rules_are_symmetric(m in label(), n in label(), l in label()) {
        let v = decide(&m, &n, &l).unwrap().verdict;
        prop_assert_eq!(decide(&n, &m, &l).unwrap().verdict, v);
        prop_assert_eq!(decide(&m, &l, &n).unwrap().verdict, v);
    }
}
