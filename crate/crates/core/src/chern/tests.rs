use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::algebra::{GradedAlgebra, TruncatedPolyRing};
use crate::polyring::{Gf2, GradedPolynomial, Monomial, VarSet};
use crate::schubert::{Partition, SchubertRing};

fn gf2(vars: &std::sync::Arc<VarSet>, terms: &[&[u32]]) -> GradedPolynomial<Gf2> {
    GradedPolynomial::from_terms(vars, terms.iter().map(|e| (e.to_vec(), Gf2::ONE)))
}

fn mono(vars: &VarSet, e: &[u32]) -> Monomial {
    Monomial::from_exponents(e.to_vec(), &vars.degrees())
}

#[test]
fn segre_classes_mod_two() {
    let s = segre_polynomials::<Gf2>(3, 5).unwrap();
    let v = chern_vars(3);
    assert_eq!(s[3], gf2(&v, &[&[3, 0, 0], &[0, 0, 1]]));
    assert_eq!(s[4], gf2(&v, &[&[4, 0, 0], &[2, 1, 0], &[0, 2, 0]]));
    assert_eq!(s[5], gf2(&v, &[&[5, 0, 0], &[2, 0, 1], &[1, 2, 0]]));
}

#[test]
fn grassmannian_mod_two_presentations() {
    let g = Gr35Mod2::new().unwrap();
    let v = g.ring().vars().clone();
    assert_eq!(g.full().dimensions(), vec![1, 1, 2, 2, 2, 1, 1]);
    assert_eq!(g.ring().dimensions(), vec![1, 1, 2, 2, 2, 1, 1]);
    assert_eq!(g.c3_image(), &gf2(&v, &[&[3, 0]]));
    assert_eq!(
        g.ring().relations(),
        &[gf2(&v, &[&[4, 0], &[2, 1], &[0, 2]]), gf2(&v, &[&[1, 2]])]
    );
    let c1_4 = gf2(&v, &[&[4, 0]]);
    assert_eq!(g.ring().normal_form(&c1_4).unwrap(), gf2(&v, &[&[2, 1], &[0, 2]]));
    assert_eq!(g.ring().basis_of_degree(4).unwrap(), vec![mono(&v, &[2, 1]), mono(&v, &[0, 2])]);
    assert_eq!(g.ring().basis_of_degree(6).unwrap(), vec![mono(&v, &[4, 1])]);
}

#[test]
fn dimensions_match_schubert_betti_numbers() {
    for (k, n) in [(1, 4), (2, 4), (2, 5), (3, 5), (3, 6)] {
        let q = grassmannian_presentation::<BigRational>(k, n, None).unwrap();
        let s = SchubertRing::new(k, n).unwrap();
        assert_eq!(q.dimensions(), s.betti_numbers(), "Gr({k},{n})");
        let q2 = grassmannian_presentation::<Gf2>(k, n, None).unwrap();
        assert_eq!(q2.dimensions(), s.betti_numbers(), "Gr({k},{n}) mod 2");
    }
}

#[test]
fn sub_and_quotient_multiply_to_one() {
    let q = grassmannian_presentation::<BigRational>(2, 4, None).unwrap();
    let v = q.vars().clone();
    let t = TruncatedPolyRing::<BigRational>::new(&v, 4);
    let s = raw_tautological(&t, 2).unwrap();
    let quot = complement(&q, &s, "Q", 2).unwrap();
    let sum = whitney_sum(&q, &s, &quot);
    for i in 1..=4 {
        assert!(q.is_zero(sum.chern(i).unwrap()).unwrap(), "c_{i}");
    }
}

#[test]
fn dual_is_an_involution() {
    let v = chern_vars(3);
    let t = TruncatedPolyRing::<BigInt>::new(&v, 8);
    let s = raw_tautological(&t, 3).unwrap();
    assert_eq!(dual(&t, &dual(&t, &s)).parts(), s.parts());
    assert_eq!(dual(&t, &s).chern(1).unwrap(), &t.var("c1").unwrap().neg());
}

#[test]
fn endomorphism_bundle_has_no_odd_classes() {
    for r in 1..=3 {
        let v = chern_vars(r);
        let t = TruncatedPolyRing::<BigInt>::new(&v, 6);
        let s = raw_tautological(&t, r).unwrap();
        let end = tensor(&t, &s, &dual(&t, &s)).unwrap();
        assert_eq!(end.rank(), (r * r) as u32);
        for i in (1..=6).step_by(2) {
            assert!(end.chern(i).unwrap().is_zero(), "rank {r}, c_{i}");
        }
    }
}

#[test]
fn twisting_a_trivial_bundle() {
    // c(O^r ⊗ L) = (1 + l)^r
    let v = VarSet::from_pairs(&[("l", 1)]).unwrap();
    let t = TruncatedPolyRing::<BigInt>::new(&v, 5);
    let l = line_bundle(&t, "L", t.var("l").unwrap()).unwrap();
    let e = BundleClass::trivial(&t, 4);
    let tw = tensor(&t, &e, &l).unwrap();
    let expected = GradedPolynomial::from_bigint_terms(&v, &[(vec![0], 1), (vec![1], 4), (vec![2], 6), (vec![3], 4), (vec![4], 1)]);
    assert_eq!(tw.total(&t), expected);
    let tw2 = tensor(&t, &l, &e).unwrap();
    assert_eq!(tw2.parts(), tw.parts());
}

#[test]
fn projective_space_as_bundle_over_a_point() {
    let v = VarSet::from_pairs(&[("a", 1)]).unwrap();
    let base = crate::polyring::QuotientRing::<Gf2>::new(&v, vec![gf2(&v, &[&[1]])], 0).unwrap();
    let e = BundleClass::trivial(&base, 4);
    let p = projective_bundle_ring(&base, &e, "h", None).unwrap();
    assert_eq!(p.ring().dimensions(), vec![1, 1, 1, 1]);
    let h3 = p.ring().pow(&p.h(), 3).unwrap();
    assert_eq!(p.pushforward(&h3).unwrap(), base.one());
}

#[test]
fn projective_bundle_of_five_copies_mod_two() {
    let g = Gr35Mod2::new().unwrap();
    let s = g.tautological().unwrap();
    let s5 = direct_sum_power(g.ring(), &s, 5);
    assert_eq!(s5.rank(), 15);
    let p = projective_bundle_ring(g.ring(), &s5, "h", None).unwrap();
    let dims = p.ring().dimensions();
    assert_eq!(dims.len(), 21);
    assert_eq!(dims.iter().sum::<usize>(), 150);
    assert_eq!(dims[20], 1);
    let vars = p.ring().vars().clone();
    assert_eq!(p.ring().basis_of_degree(20).unwrap(), vec![mono(&vars, &[4, 1, 14])]);
    // h^20 pushes forward to s_6(S^5), the Segre class of degree 6
    let h20 = p.ring().pow(&p.h(), 20).unwrap();
    assert_eq!(p.pushforward(&h20).unwrap(), gf2(g.ring().vars(), &[]));
    assert!(!p.ring().is_zero(&p.ring().pow(&p.h(), 19).unwrap().try_mul(&p.pullback(&g.ring().var("c1").unwrap()).unwrap()).unwrap()).unwrap());
}

#[test]
fn degree_of_top_segre_class_over_rationals() {
    // ∫ s_6(S^{⊕5}) over Gr(3,5): normalize against ∫ σ_1^6 = 5 with σ_1 = −c_1(S)
    let q = grassmannian_presentation::<BigRational>(3, 5, None).unwrap();
    let t = TruncatedPolyRing::<BigRational>::new(q.vars(), 6);
    let s = raw_tautological(&t, 3).unwrap();
    let s5 = direct_sum_power(&q, &s, 5);
    let seg = segre(&q, &s5);
    let c1_6 = q.pow(&q.var("c1").unwrap(), 6).unwrap();
    let a = q.coordinates(&seg[6], 6).unwrap();
    let b = q.coordinates(&c1_6, 6).unwrap();
    assert_eq!(a.len(), 1);
    let degree = a[0].clone() / b[0].clone() * BigRational::from_integer(5.into());
    assert_eq!(degree, BigRational::from_integer(50.into()));
}

#[test]
fn degree_through_schubert_tower() {
    let gr = SchubertRing::new(3, 5).unwrap();
    let parts = gr.tautological_total();
    let s = BundleClass::from_parts(&gr, "S", 3, parts).unwrap();
    let s5 = direct_sum_power(&gr, &s, 5);
    let p = ProjectiveBundle::new(gr, s5).unwrap();
    assert_eq!(p.top_degree(), 20);
    let h20 = p.h_power(20);
    assert_eq!(gr.integrate(&p.pushforward(&h20)), BigInt::from(50));

    // independent: [c(Q)^5]_6 expanded by Pieri products
    let q = gr.quotient_total();
    let mut acc = gr.one();
    for _ in 0..5 {
        acc = GradedAlgebra::mul(&gr, &acc, &gr.sum(&q));
    }
    assert_eq!(gr.integrate(&acc.homogeneous_part(6)), BigInt::from(50));
    let _ = Partition::empty();
}

#[test]
fn pushforward_of_low_powers_vanishes() {
    let gr = SchubertRing::new(2, 4).unwrap();
    let s = BundleClass::from_parts(&gr, "S", 2, gr.tautological_total()).unwrap();
    let p = ProjectiveBundle::new(gr, s).unwrap();
    assert!(gr.is_zero(&p.pushforward(&p.h_power(0))));
    assert_eq!(p.pushforward(&p.h_power(1)), gr.one());
}

#[test]
fn tangent_bundle_of_grassmannian_routes_agree() {
    // T = S^∨ ⊗ Q and c(T) = c(S^∨ ⊗ C^n) / c(S^∨ ⊗ S)
    let q = grassmannian_presentation::<BigRational>(2, 4, None).unwrap();
    let t = TruncatedPolyRing::<BigRational>::new(q.vars(), 4);
    let s = raw_tautological(&t, 2).unwrap();
    let quot = complement(&q, &s, "Q", 2).unwrap();
    let tan = tensor(&q, &dual(&q, &s), &quot).unwrap();
    let sd = dual(&q, &s);
    let num = direct_sum_power(&q, &sd, 4);
    let den = tensor(&q, &sd, &s).unwrap();
    let den_inv = complement(&q, &den, "inv", 4).unwrap();
    let alt = whitney_sum(&q, &num, &den_inv);
    for i in 0..=4 {
        assert!(q.equal(tan.chern(i).unwrap(), alt.chern(i).unwrap()).unwrap(), "c_{i}");
    }
    // Euler characteristic of Gr(2,4) is 6
    let top = q.coordinates(tan.chern(4).unwrap(), 4).unwrap()[0].clone();
    let pt = q.coordinates(&q.pow(&q.var("c1").unwrap(), 4).unwrap(), 4).unwrap()[0].clone();
    assert_eq!(top / pt * BigRational::from_integer(2.into()), BigRational::from_integer(6.into()));
}

#[test]
fn solve_linear_rejects_nonlinear_occurrence() {
    let v = chern_vars(2);
    let rel = gf2(&v, &[&[1, 0], &[1, 1]]);
    assert!(solve_linear(&rel, "c1").is_err());
    let ok = gf2(&v, &[&[0, 1], &[2, 0]]);
    assert_eq!(solve_linear(&ok, "c2").unwrap(), gf2(&v, &[&[2, 0]]));
}

#[test]
fn bundle_validation() {
    let v = chern_vars(2);
    let t = TruncatedPolyRing::<BigInt>::new(&v, 3);
    let bad = vec![GradedPolynomial::from_int(&v, 2)];
    assert!(BundleClass::from_parts(&t, "E", 1, bad).is_err());
    let inhom = vec![GradedPolynomial::one(&v), t.var("c2").unwrap()];
    assert!(BundleClass::from_parts(&t, "E", 1, inhom).is_err());
    assert!(BigInt::one() > BigInt::zero());
}

fn small_bundle() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2), -3i64..=3), 0..5)
}

fn bundle_from(t: &TruncatedPolyRing<BigInt>, rank: u32, seeds: &[(Vec<u32>, i64)]) -> BundleClass<GradedPolynomial<BigInt>> {
    let v = t.vars().clone();
    let mut parts = vec![GradedPolynomial::one(&v)];
    for d in 1..=t.top_degree() {
        let mut p = GradedPolynomial::zero(&v);
        for (e, c) in seeds {
            let m = Monomial::from_exponents(e.clone(), &v.degrees());
            if m.degree() == d && d <= rank {
                p.add_term(m, BigInt::from(*c));
            }
        }
        parts.push(p);
    }
    BundleClass::from_parts(t, "E", rank, parts).unwrap()
}

proptest! {
    #[test]
    fn whitney_sum_is_commutative_and_segre_inverts(a in small_bundle(), b in small_bundle()) {
        let v = VarSet::from_pairs(&[("x", 1), ("y", 2)]).unwrap();
        let t = TruncatedPolyRing::<BigInt>::new(&v, 5);
        let e = bundle_from(&t, 2, &a);
        let f = bundle_from(&t, 3, &b);
        let (ef, fe) = (whitney_sum(&t, &e, &f), whitney_sum(&t, &f, &e));
        prop_assert_eq!(ef.parts(), fe.parts());
        let inv = BundleClass::from_parts(&t, "s", 0, segre(&t, &e)).unwrap();
        let prod = whitney_sum(&t, &e, &inv);
        prop_assert_eq!(prod.total(&t), t.one());
    }

    #[test]
    fn tensor_is_commutative_and_dual_compatible(a in small_bundle(), b in small_bundle()) {
        let v = VarSet::from_pairs(&[("x", 1), ("y", 2)]).unwrap();
        let t = TruncatedPolyRing::<BigInt>::new(&v, 4);
        let e = bundle_from(&t, 2, &a);
        let f = bundle_from(&t, 2, &b);
        let ef = tensor(&t, &e, &f).unwrap();
        let fe = tensor(&t, &f, &e).unwrap();
        prop_assert_eq!(ef.parts(), fe.parts());
        let dd = tensor(&t, &dual(&t, &e), &dual(&t, &f)).unwrap();
        let de = dual(&t, &ef);
        prop_assert_eq!(de.parts(), dd.parts());
    }

    #[test]
    fn tensor_with_sum_distributes(a in small_bundle(), b in small_bundle(), l in -2i64..=2) {
        let v = VarSet::from_pairs(&[("x", 1), ("y", 2)]).unwrap();
        let t = TruncatedPolyRing::<BigInt>::new(&v, 4);
        let e = bundle_from(&t, 2, &a);
        let f = bundle_from(&t, 1, &b);
        let line = line_bundle(&t, "L", t.var("x").unwrap().scale(&BigInt::from(l))).unwrap();
        let lhs = tensor(&t, &whitney_sum(&t, &e, &f), &line).unwrap();
        let rhs = whitney_sum(&t, &tensor(&t, &e, &line).unwrap(), &tensor(&t, &f, &line).unwrap());
        prop_assert_eq!(lhs.parts(), rhs.parts());
    }
}
