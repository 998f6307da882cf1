mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use moorek::abelian::{subquotients, tensor, tensor_zn, tor, tor_zn, AbelianGroup, GroupHom};
use moorek::fields::{lemma_tec_check, pimsner_pieces, sim_n_quotient, FiniteNilRing};
use moorek::kprofile::{catalog, smash, validate, KProfile, SpaceExpr, Splitting};
use moorek::snf::smith_normal_form;
use moorek::{Int, IntMatrix};

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<Int>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn finite_factors() -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(2i64..=6, 0..=3)
}

fn group(factors: &[Int]) -> AbelianGroup {
    moorek::abelian::normalize(factors, &vec![String::new(); factors.len()]).unwrap().group
}

fn leaf(n: Int) -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        Just(SpaceExpr::Point),
        (0u32..=3).prop_map(SpaceExpr::Sphere),
        Just(SpaceExpr::Moore(n)),
        (1u32..=2).prop_map(SpaceExpr::ProjectiveSpace),
    ]
}

fn expr(n: Int) -> impl Strategy<Value = SpaceExpr> {
    leaf(n).prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| SpaceExpr::Susp(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::Smash(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| SpaceExpr::Prod(Box::new(a), Box::new(b))),
        ]
    })
}

/// Profiles with small carriers so validation stays quick.
fn small_profile() -> impl Strategy<Value = KProfile> {
    (2i64..=4).prop_flat_map(|n| expr(n).prop_map(move |e| (n, e))).prop_filter_map("carrier too large", |(n, e)| {
        let p = catalog(&e, n, Some(&Splitting::direct())).ok()?;
        let size = p.red(0).ngens() + p.red(1).ngens() + p.modn(0).ngens() + p.modn(1).ngens();
        (size <= 12).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_matches_determinantal_divisors(a in matrix_strategy()) {
        let m = IntMatrix::from_rows(&a, a[0].len()).unwrap();
        let s = smith_normal_form(&m).unwrap();
        // transforms can approach 1e15, so products are checked in i128
        let wide = |x: &IntMatrix| x.map(|v| v as i128);
        let (u, v, v_inv) = (wide(&s.u), wide(&s.v), wide(&s.v_inv));
        prop_assert_eq!(u.mul(&wide(&m)).unwrap().mul(&v).unwrap(), wide(&s.d));
        prop_assert_eq!(common::det(u.to_rows()).abs(), 1);
        prop_assert_eq!(common::det(v.to_rows()).abs(), 1);
        prop_assert_eq!(v.mul(&v_inv).unwrap(), moorek::matrix::Matrix::<i128>::identity(s.v.rows()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0 && (w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)));
        }
        prop_assert_eq!(diag, common::invariant_factors(&a));
    }

    #[test]
    fn kernel_times_image_is_domain(dom in finite_factors(), cod in finite_factors(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // entry (i, j) must be a multiple of e_i / gcd(d_j, e_i)
        let m: Vec<Vec<Int>> = cod.iter().map(|&e| dom.iter().map(|&d| {
            let g = num_gcd(d, e);
            rng.gen_range(0..g) * (e / g)
        }).collect()).collect();
        let (ker, im) = common::hom_sizes(&dom, &cod, &m);
        prop_assert_eq!(ker * im, common::order(&dom) as usize);

        let (gd, gc) = (group(&dom), group(&cod));
        let raw_d = moorek::abelian::normalize(&dom, &vec![String::new(); dom.len()]).unwrap();
        let raw_c = moorek::abelian::normalize(&cod, &vec![String::new(); cod.len()]).unwrap();
        let raw = if cod.is_empty() || dom.is_empty() {
            IntMatrix::zeros(cod.len(), dom.len())
        } else {
            IntMatrix::from_rows(&m, dom.len()).unwrap()
        };
        let mat = raw_c.to_new().mul(&raw).unwrap().mul(raw_d.to_old()).unwrap();
        let h = GroupHom::new(gd, gc, mat).unwrap();
        let sq = subquotients(&h).unwrap();
        prop_assert_eq!(sq.kernel.order().unwrap(), ker as u128);
        prop_assert_eq!(sq.image.order().unwrap(), im as u128);
        prop_assert_eq!(sq.cokernel.order().unwrap(), common::order(&cod) / im as u128);
    }

    #[test]
    fn tensor_and_tor_match_enumeration(g in finite_factors(), h in finite_factors(), n in 2i64..=6) {
        let (gg, hh) = (group(&g), group(&h));
        prop_assert_eq!(tensor(&gg, &hh).unwrap().order().unwrap(), common::tensor_order(&g, &h));
        prop_assert_eq!(tor(&gg, &hh).unwrap().order().unwrap(), common::tensor_order(&g, &h));
        prop_assert_eq!(tensor_zn(&gg, n).unwrap().order().unwrap(), common::mod_n_order(&g, n));
        prop_assert_eq!(tor_zn(&gg, n).unwrap().order().unwrap(), common::killed_by(n, &g));
    }
}

fn num_gcd(a: Int, b: Int) -> Int {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn catalog_profiles_validate_and_round_trip(p in small_profile()) {
        let report = validate(&p).unwrap();
        prop_assert!(report.passed, "{}", report.text());
        let json = serde_json::to_string(&p).unwrap();
        let back: KProfile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn smash_is_commutative_up_to_isomorphism(a in expr(2), b in expr(2)) {
        let split = Splitting::direct();
        let (pa, pb) = (catalog(&a, 2, Some(&split)).unwrap(), catalog(&b, 2, Some(&split)).unwrap());
        let size = |p: &KProfile| p.red(0).ngens() + p.red(1).ngens();
        prop_assume!(size(&pa) * size(&pb) <= 16);
        let ab = smash(&pa, &pb, Some(&split)).unwrap();
        let ba = smash(&pb, &pa, Some(&split)).unwrap();
        for d in 0..2 {
            prop_assert_eq!(ab.red(d), ba.red(d));
            prop_assert_eq!(ab.modn(d), ba.modn(d));
        }
        if ab.red(0).ngens() + ab.red(1).ngens() <= 8 {
            prop_assert!(validate(&ab).unwrap().check("sign-rule").unwrap().passed);
        }
    }

    #[test]
    fn pimsner_with_trivial_bundle_reduces_mod_n(p in small_profile()) {
        let n = p.modulus();
        let r = pimsner_pieces(&p, n + 1, &p.red(0).zero()).unwrap();
        let k0 = AbelianGroup::free(1).direct_sum(p.red(0)).unwrap();
        prop_assert_eq!(&r.coker0, &tensor_zn(&k0, n).unwrap());
        prop_assert_eq!(&r.ker0, &tor_zn(&k0, n).unwrap());
        prop_assert_eq!(&r.coker1, &tensor_zn(p.red(1), n).unwrap());
        prop_assert_eq!(&r.ker1, &tor_zn(p.red(1), n).unwrap());
    }

    #[test]
    fn sim_n_is_an_equivalence_already_in_one_step(seed in any::<u64>(), n in 2i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = common::random_nil_ring(&mut rng, n, 512);
        let (elems, rel) = common::one_step_relation(&r, n);
        let k = elems.len();
        for a in 0..k {
            prop_assert!(rel[a][a]);
            for b in 0..k {
                prop_assert_eq!(rel[a][b], rel[b][a]);
                if rel[a][b] {
                    for (bc, ac) in rel[b].iter().zip(&rel[a]) {
                        prop_assert!(!bc || *ac);
                    }
                }
            }
        }
        let classes = sim_n_quotient(&r, n).unwrap();
        prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), k);
        for class in &classes {
            let a = elems.binary_search(&class[0]).unwrap();
            let members: Vec<usize> = (0..k).filter(|&b| rel[a][b]).collect();
            let listed: Vec<usize> = class.iter().map(|e| elems.binary_search(e).unwrap()).collect();
            prop_assert_eq!(members, listed);
        }
    }

    #[test]
    fn zero_product_rings_are_sharp(factors in prop::collection::vec(1u32..=3, 0..=3), n in 2i64..=4) {
        let orders: Vec<Int> = factors.iter().map(|&e| n.pow(e)).collect();
        prop_assume!(common::order(&orders) <= 512);
        let r = FiniteNilRing::zero_product(group(&orders)).unwrap();
        let rep = lemma_tec_check(&r, n).unwrap();
        prop_assert_eq!(rep.classes, rep.tensor_order);
        prop_assert_eq!(rep.classes, common::mod_n_order(&orders, n));
    }
}
