//! Property tests for the algebraic invariants of every layer.

use gwcorr::cancel::{left_inverse_check, FSpec, FTriple, RhoOptions};
use gwcorr::corr::{
    boxtimes_gm, compose, dot_terms, specialize, stability_bound, unit_section, AffineModel, Correspondence,
};
use gwcorr::exactalg::{hilbert_symbol, BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Place, Ring, Scalar, UniPoly};
use gwcorr::quadform::{gw_equal, gw_invariants, is_metabolic, isometric, GwClass, PreQuadSpace, QuadSpace};
use gwcorr::random;
use gwcorr::residue::{residue_form, residue_functional, split_at_simple_roots, FiniteAlgebra, FunctionalMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = BaseField> {
    prop_oneof![
        Just(BaseField::Rationals),
        Just(BaseField::Prime(3)),
        Just(BaseField::Prime(5)),
        Just(BaseField::Prime(7)),
    ]
}

fn scalar_in(f: BaseField) -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(move |(a, b)| match f {
        BaseField::Rationals => f.frac(a, b).unwrap(),
        _ => f.int(a),
    })
}

fn unit_in(f: BaseField) -> impl Strategy<Value = Scalar> {
    scalar_in(f).prop_filter("nonzero", |x| !x.is_zero())
}

fn field_matrix(max: usize) -> impl Strategy<Value = FieldMatrix> {
    (field(), 0..=max).prop_flat_map(|(f, n)| {
        prop::collection::vec(scalar_in(f), n * n).prop_map(move |d| FieldMatrix::new(f, n, n, d).unwrap())
    })
}

fn laurent_in(f: BaseField) -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=2, prop::collection::vec(scalar_in(f), 0..=3)).prop_map(move |(v, c)| LaurentPoly::from_coeffs(f, v, c))
}

fn laurent_matrix(max: usize) -> impl Strategy<Value = LaurentMatrix> {
    (field(), 0..=max).prop_flat_map(|(f, n)| {
        prop::collection::vec(laurent_in(f), n * n).prop_map(move |d| LaurentMatrix::new(f, n, n, d).unwrap())
    })
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn space_in(f: BaseField, max: usize) -> impl Strategy<Value = QuadSpace> {
    (0..=max, any::<u64>()).prop_map(move |(r, s)| random::form(f, r, &mut random::rng(s)))
}

fn space(max: usize) -> impl Strategy<Value = QuadSpace> {
    field().prop_flat_map(move |f| space_in(f, max))
}

fn invertible_in(f: BaseField, n: usize) -> impl Strategy<Value = FieldMatrix> {
    any::<u64>().prop_map(move |s| random::invertible(f, n, &mut random::rng(s)))
}

fn gm_corr(max_rank: usize) -> impl Strategy<Value = Correspondence> {
    (field(), 1..=max_rank, any::<u64>()).prop_map(|(f, r, s)| random::gm_correspondence(f, r, &mut random::rng(s)))
}

fn odd_primes_of(x: &BigRational) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [x.numer(), x.denom()] {
        let mut m: u64 = n.magnitude().try_into().unwrap();
        let mut p = 3;
        while m > 1 && p <= m {
            if m.is_multiple_of(p) {
                out.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 2;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn adjugate_identity_field(m in field_matrix(5)) {
        let n = m.rows();
        let d = m.det().unwrap();
        prop_assert_eq!(m.mul(&m.adjugate().unwrap()), FieldMatrix::scalar_matrix(n, d));
        prop_assert_eq!(m.det().unwrap(), m.det_field().unwrap());
    }

    #[test]
    fn adjugate_identity_laurent(m in laurent_matrix(4)) {
        let n = m.rows();
        let d = m.det().unwrap();
        prop_assert_eq!(m.mul(&m.adjugate().unwrap()), LaurentMatrix::scalar_matrix(n, d));
    }

    #[test]
    fn cayley_hamilton(m in field_matrix(5), l in laurent_matrix(3)) {
        prop_assert!(m.eval_poly(&m.charpoly().unwrap()).is_zero());
        prop_assert!(l.eval_poly(&l.charpoly().unwrap()).is_zero());
    }

    #[test]
    fn laurent_normalize_recomposes(f in field(), v in -3i64..=3, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let coeffs: Vec<Scalar> = (0..4).map(|_| random::scalar(f, &mut rng)).collect();
        let l = LaurentPoly::from_coeffs(f, v, coeffs);
        prop_assume!(!l.is_zero());
        let n = l.normalize().unwrap();
        prop_assert!(n.n_tilde.is_monic());
        prop_assert!(!n.n_tilde.coeff(0).is_zero());
        let back = LaurentPoly::monomial(n.c.clone(), n.v).times(&LaurentPoly::from_poly(&n.n_tilde));
        prop_assert_eq!(back, l);
    }

    #[test]
    fn hilbert_symmetric_bimultiplicative(a1 in small_rational(), a2 in small_rational(), b in small_rational()) {
        let mut places = vec![Place::Real, Place::Prime(2)];
        for x in [&a1, &a2, &b] {
            places.extend(odd_primes_of(x).into_iter().map(Place::Prime));
        }
        for place in places {
            let h = |x: &BigRational, y: &BigRational| hilbert_symbol(x, y, place).unwrap();
            prop_assert_eq!(h(&a1, &b), h(&b, &a1));
            prop_assert_eq!(h(&(&a1 * &a2), &b), h(&a1, &b) * h(&a2, &b));
        }
    }

    #[test]
    fn hilbert_product_formula(a in small_rational(), b in small_rational()) {
        let mut primes = vec![2];
        primes.extend(odd_primes_of(&a));
        primes.extend(odd_primes_of(&b));
        primes.sort();
        primes.dedup();
        let mut prod = hilbert_symbol(&a, &b, Place::Real).unwrap();
        for p in primes {
            prod *= hilbert_symbol(&a, &b, Place::Prime(p)).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn gw_equal_is_an_equivalence(
        (q, p1, p2, other) in space(4).prop_flat_map(|q| {
            let (f, r) = (q.field(), q.rank());
            (Just(q), invertible_in(f, r), invertible_in(f, r), space_in(f, 4))
        })
    ) {
        let a = GwClass::of(q.clone());
        let b = GwClass::of(q.congruent(&p1).unwrap());
        let c = GwClass::of(q.congruent(&p1).unwrap().congruent(&p2).unwrap());
        let o = GwClass::of(other);
        prop_assert!(gw_equal(&a, &a).unwrap());
        prop_assert!(gw_equal(&a, &b).unwrap() && gw_equal(&b, &c).unwrap() && gw_equal(&a, &c).unwrap());
        prop_assert_eq!(gw_equal(&a, &o).unwrap(), gw_equal(&o, &a).unwrap());
        prop_assert_eq!(gw_equal(&a, &o).unwrap(), gw_equal(&c, &o).unwrap());
    }

    #[test]
    fn rank_two_split_forms_are_hyperbolic(a in field().prop_flat_map(unit_in)) {
        let f = a.field();
        let s = QuadSpace::diag(f, &[a.clone(), -&a]).unwrap();
        prop_assert!(isometric(&s, &QuadSpace::hyperbolic(f)).unwrap());
    }

    #[test]
    fn q_minus_q_is_metabolic(q in space(4)) {
        let minus = q.scale(&-q.field().one()).unwrap();
        prop_assert!(is_metabolic(&q.direct_sum(&minus).unwrap()).unwrap());
    }

    #[test]
    fn diagonalization_is_a_congruence(q in space(5)) {
        let (d, p) = q.diagonalize_with_transform();
        prop_assert_eq!(p.transpose().mul(q.gram()).mul(&p), FieldMatrix::diagonal(q.field(), &d));
        prop_assert!(!p.det_field().unwrap().is_zero());
        prop_assert!(isometric(&q, &QuadSpace::diag(q.field(), &d).unwrap()).unwrap());
    }

    #[test]
    fn reduce_realizes_quotient(f in field(), seed in any::<u64>(), n in 1usize..=5, k in 0usize..=3) {
        // Symmetric A^T D A with A of rank <= n - k.
        let mut rng = random::rng(seed);
        let d: Vec<Scalar> = (0..n).map(|i| if i < n.saturating_sub(k) { random::unit(f, &mut rng) } else { f.zero() }).collect();
        let a = random::invertible(f, n, &mut rng);
        let g = a.transpose().mul(&FieldMatrix::diagonal(f, &d)).mul(&a);
        let pre = PreQuadSpace::new(g.clone()).unwrap();
        let red = pre.reduce_with_basis();
        prop_assert_eq!(red.kernel.len(), g.kernel_basis().len());
        prop_assert_eq!(red.kernel.len() + red.space.rank(), n);
        let realized = red.complement.transpose().mul(&g).mul(&red.complement);
        prop_assert_eq!(&realized, red.space.gram());
    }

    #[test]
    fn residue_crt_additivity(f in field(), seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let mut rng = random::rng(seed);
        let mut monic = |d: usize| {
            let mut c: Vec<Scalar> = (0..d).map(|_| random::scalar(f, &mut rng)).collect();
            c[0] = random::unit(f, &mut rng);
            c.push(f.one());
            UniPoly::new(f, c)
        };
        let (a, b) = (monic(d1), monic(d2));
        prop_assume!(a.gcd(&b).degree() == Some(0));
        let m = FunctionalMode::Coefficient;
        let whole = residue_form(&LaurentPoly::from_poly(&a.mul(&b)), m).unwrap().space().unwrap();
        // Each local summand carries the functional twisted by the cofactor's inverse.
        let local = |x: &UniPoly, y: &UniPoly| {
            let alg = FiniteAlgebra::new(x.clone()).unwrap();
            let l = residue_functional(&LaurentPoly::from_poly(x), m).unwrap();
            let w = alg.inverse(&alg.reduce(y)).unwrap();
            let g = FieldMatrix::from_fn(f, alg.dim(), alg.dim(), |i, j| {
                l.eval(&alg.mul(&alg.t_pow((i + j) as i64).unwrap(), &w))
            });
            QuadSpace::new(g).unwrap()
        };
        prop_assert!(isometric(&whole, &local(&a, &b).direct_sum(&local(&b, &a)).unwrap()).unwrap());
    }

    #[test]
    fn residue_matches_simple_roots(f in field(), seed in any::<u64>(), k in 1usize..=4, v in -2i64..=2) {
        let mut rng = random::rng(seed);
        let mut roots: Vec<Scalar> = Vec::new();
        while roots.len() < k {
            let x = random::unit(f, &mut rng);
            if !roots.contains(&x) {
                roots.push(x);
            }
            if f.modulus().is_some_and(|p| roots.len() as u64 == p - 1) {
                break;
            }
        }
        let c = random::unit(f, &mut rng);
        let n = LaurentPoly::monomial(c, v).times(&LaurentPoly::from_poly(&UniPoly::from_roots(f, &roots)));
        let form = residue_form(&n, FunctionalMode::Coefficient).unwrap();
        prop_assert_eq!(form.action.transpose().mul(&form.gram), form.gram.mul(&form.action));
        prop_assert!(isometric(&form.space().unwrap(), &split_at_simple_roots(&n).unwrap()).unwrap());
    }

    #[test]
    fn residue_square_unit_invariance(f in field(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let mut c: Vec<Scalar> = (0..3).map(|_| random::scalar(f, &mut rng)).collect();
        c[0] = random::unit(f, &mut rng);
        let n = LaurentPoly::from_coeffs(f, 0, c);
        prop_assume!(n.normalize().unwrap().n_tilde.degree().unwrap_or(0) > 0);
        let u = random::unit(f, &mut rng);
        let scaled = n.times(&LaurentPoly::constant(&u * &u));
        let m = FunctionalMode::Coefficient;
        let a = residue_form(&n, m).unwrap().space().unwrap();
        let b = residue_form(&scaled, m).unwrap().space().unwrap();
        prop_assert!(isometric(&a, &b).unwrap());
    }

    #[test]
    fn permutation_fiber_all_pairs(f in field(), seed in any::<u64>()) {
        let (x, y) = random::distinct_units(f, &mut random::rng(seed));
        let n = LaurentPoly::from_poly(&UniPoly::from_roots(f, &[x.clone(), y.clone()]));
        let s = residue_form(&n, FunctionalMode::Coefficient).unwrap().space().unwrap();
        prop_assert!(isometric(&s, &QuadSpace::diag(f, &[&x - &y, &y - &x]).unwrap()).unwrap());
        prop_assert!(is_metabolic(&s).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_associative_on_fibers(f in field(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let [a, b, c] = [1, 2, 1].map(|r| random::gm_correspondence(f, r, &mut rng));
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        for s in [1, 2, 3] {
            let x = f.int(s);
            prop_assume!(!x.is_zero());
            let fiber = |k: &Correspondence| specialize(k, &x).unwrap().forget_target().to_space().unwrap();
            prop_assert_eq!(gw_invariants(&fiber(&left)).unwrap(), gw_invariants(&fiber(&right)).unwrap());
        }
    }

    #[test]
    fn operations_preserve_validity(c in gm_corr(2), q in space(3)) {
        for (_, t) in dot_terms(&c).unwrap() {
            prop_assert!(t.validate().is_valid());
        }
        let f = c.field();
        let q = if q.field() == f { q } else { QuadSpace::diag_ints(f, &[1]).unwrap() };
        prop_assert!(boxtimes_gm(&Correspondence::from_space(&q)).unwrap().validate().is_valid());
        prop_assert!(specialize(&c, &f.one()).unwrap().validate().is_valid());
    }

    #[test]
    fn gram_intertwines_polynomials_in_u(c in gm_corr(2), seed in any::<u64>()) {
        let f = c.field();
        let mut rng = random::rng(seed);
        let p = LaurentPoly::from_coeffs(f, -1, (0..3).map(|_| random::scalar(f, &mut rng)).collect());
        let u = c.action().unwrap();
        let ut = u.transpose();
        let pu = u.eval_laurent(&p, Some(&u.laurent_inverse().unwrap())).unwrap();
        let put = ut.eval_laurent(&p, Some(&ut.laurent_inverse().unwrap())).unwrap();
        prop_assert_eq!(c.gram().mul(&pu), put.mul(c.gram()));
    }

    #[test]
    fn specialization_commutes_with_pt_composition(c in gm_corr(2), s in 1i64..=4) {
        let f = c.field();
        let x = f.int(s);
        prop_assume!(!x.is_zero());
        let a = c.forget_target();
        let b = unit_section(f);
        let lhs = specialize(&compose(&b, &a).unwrap(), &x).unwrap();
        let spec_a = Correspondence::new(AffineModel::Pt, AffineModel::Pt, a.gram().eval_at(&x).unwrap().to_laurent(), None).unwrap();
        let rhs = compose(&b, &spec_a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generated_triples_are_applicable(c in gm_corr(3), extra in 1u32..=2) {
        let n = (stability_bound(&c).unwrap().n_p + extra as i64).max(1) as u32;
        for fspec in [FSpec::Plus(n), FSpec::Minus(n)] {
            let t = FTriple::canonical(&c, fspec).unwrap();
            prop_assert!(t.check_applicable().is_ok());
            prop_assert_eq!(t.g.mul(&t.mf), LaurentMatrix::scalar_matrix(c.rank(), t.norm.clone()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn beta_is_independent_of_the_input_form(q in space(2), n in 2u32..=3) {
        prop_assume!(q.rank() > 0);
        let r = left_inverse_check(&Correspondence::from_space(&q), n, &RhoOptions::default()).unwrap();
        prop_assert!(r.passed, "{}", r.detail);
    }

    #[test]
    fn gw_equal_matches_isometry_search_mod_7(r in 1usize..=2, s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = BaseField::Prime(7);
        let a = random::form(f, r, &mut random::rng(s1));
        let b = random::form(f, r, &mut random::rng(s2));
        let all: Vec<FieldMatrix> = (0..7u64.pow((r * r) as u32))
            .map(|mut code| {
                FieldMatrix::from_fn(f, r, r, |_, _| {
                    let d = code % 7;
                    code /= 7;
                    f.int(d as i64)
                })
            })
            .filter(|m| !m.det_field().unwrap().is_zero())
            .collect();
        let found = all.iter().any(|p| &p.transpose().mul(a.gram()).mul(p) == b.gram());
        prop_assert_eq!(isometric(&a, &b).unwrap(), found);
    }
}
