use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use stablat_core::charge::{charge_functional, phase_of_value, same_ray};
use stablat_core::cohomology::{ch_line_bundle, ch_skyscraper, euler_form, CohClass};
use stablat_core::descent::{descend, hilbert_setup};
use stablat_core::lattice::{induced_permutation_matrix, v_map, v_recursive};
use stablat_core::matrix::{self, int_to_rat, RatMatrix};
use stablat_core::support::{glue_check, is_negative_definite_on, kernel_basis, support_constant, QuadraticForm};
use stablat_core::{GaussianRational, Permutation, ProductSpace, Rational, Subset};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn space(max_n: usize) -> impl Strategy<Value = ProductSpace> {
    prop::collection::vec(0u32..4, 1..=max_n).prop_map(|g| ProductSpace::new(&g).unwrap())
}

fn class_on(space: ProductSpace, real: bool) -> impl Strategy<Value = CohClass> {
    let rank = space.rank();
    prop::collection::vec(gaussian(), rank).prop_map(move |coeffs| {
        let terms = space.subsets().into_iter().zip(coeffs).map(|(s, c)| {
            if real {
                (s, GaussianRational::real(c.re))
            } else {
                (s, c)
            }
        });
        CohClass::from_terms(&space, terms).unwrap()
    })
}

fn classes(max_n: usize, count: usize, real: bool) -> impl Strategy<Value = Vec<CohClass>> {
    space(max_n).prop_flat_map(move |s| prop::collection::vec(class_on(s, real), count))
}

/// Sums of twisted line bundles and skyscrapers with integer multiplicities.
fn sheaf_class(space: ProductSpace) -> impl Strategy<Value = CohClass> {
    let n = space.n();
    (
        prop::collection::vec((-3i64..=3, prop::collection::vec(-4i64..=4, n)), 1..4),
        -3i64..=3,
    )
        .prop_map(move |(bundles, sky)| {
            let mut acc = ch_skyscraper(&space).scale(&GaussianRational::from_ints(sky, 0));
            for (mult, degs) in bundles {
                let lb = ch_line_bundle(&space, &degs).unwrap().scale(&GaussianRational::from_ints(mult, 0));
                acc = acc.try_add(&lb).unwrap();
            }
            acc
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(xs in classes(4, 3, false)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x.try_mul(y).unwrap(), y.try_mul(x).unwrap());
        prop_assert_eq!(x.try_mul(y).unwrap().try_mul(z).unwrap(), x.try_mul(&y.try_mul(z).unwrap()).unwrap());
        prop_assert_eq!(
            x.try_mul(&y.try_add(z).unwrap()).unwrap(),
            x.try_mul(y).unwrap().try_add(&x.try_mul(z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.try_mul(&CohClass::one(x.space())).unwrap(), x.clone());
    }

    #[test]
    fn exp_inverse(xs in classes(4, 1, false)) {
        let x = &xs[0];
        let nil = x.try_sub(&x.component(0)).unwrap();
        let e = nil.exp().unwrap().try_mul(&nil.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(e, CohClass::one(x.space()));
    }

    #[test]
    fn dualize_is_involution(xs in classes(4, 1, false)) {
        prop_assert_eq!(xs[0].dualize().dualize(), xs[0].clone());
    }

    #[test]
    fn pushforward_is_linear(xs in classes(4, 2, false), k in gaussian()) {
        let n = xs[0].space().n();
        prop_assume!(n >= 2);
        for r in 1..=n {
            let lhs = xs[0].scale(&k).try_add(&xs[1]).unwrap().pushforward(r).unwrap();
            let rhs = xs[0].pushforward(r).unwrap().scale(&k).try_add(&xs[1].pushforward(r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_symmetric_on_elliptic_surface(xs in class_on(ProductSpace::new(&[1, 1]).unwrap(), false).prop_flat_map(|x| (Just(x), class_on(ProductSpace::new(&[1, 1]).unwrap(), false)))) {
        prop_assert_eq!(euler_form(&xs.0, &xs.1).unwrap(), euler_form(&xs.1, &xs.0).unwrap());
    }

    #[test]
    fn euler_integral_on_sheaves(pair in space(3).prop_flat_map(|s| (sheaf_class(s.clone()), sheaf_class(s)))) {
        prop_assert!(euler_form(&pair.0, &pair.1).unwrap().is_integral());
    }

    #[test]
    fn v_recursive_matches_closed_form(x in space(4).prop_flat_map(sheaf_class), m in -3i64..=3) {
        let v = v_map(&x).unwrap();
        prop_assert!(v.is_integral());
        prop_assert_eq!(v_recursive(&x, m).unwrap(), v);
    }

    #[test]
    fn v_recursive_on_rational_classes(xs in classes(3, 1, true), m in -3i64..=3) {
        prop_assert_eq!(v_recursive(&xs[0], m).unwrap(), v_map(&xs[0]).unwrap());
    }

    #[test]
    fn v_is_equivariant_under_transpositions(n in 2usize..=4, g in 0u32..3, xs in prop::collection::vec(prop::collection::vec(small_rational(), 16), 1)) {
        let space = ProductSpace::new(&vec![g; n]).unwrap();
        let x = CohClass::from_terms(&space, space.subsets().into_iter().zip(xs[0].iter().cycle()).map(|(s, c)| (s, GaussianRational::real(c.clone())))).unwrap();
        for a in 1..=n {
            for b in a + 1..=n {
                let t = Permutation::transposition(n, a, b);
                let m = int_to_rat(&induced_permutation_matrix(&space, &t).unwrap());
                let lhs = v_map(&x.permute_curves(&t).unwrap()).unwrap();
                let rhs = m.mul_vec(v_map(&x).unwrap().coords()).unwrap();
                prop_assert_eq!(lhs.coords(), rhs.as_slice());
            }
        }
    }

    #[test]
    fn charge_invariant_under_pair_swaps(n in 1usize..=3, b in small_rational(), w in positive_rational()) {
        let setup = hilbert_setup(1, 2, n, false).unwrap();
        let z = charge_functional(&setup.space, &b, &w).unwrap();
        for g in setup.action.generators() {
            let moved = z.compose(&int_to_rat(g)).unwrap();
            prop_assert_eq!(moved.coeffs(), z.coeffs());
        }
    }

    #[test]
    fn same_ray_is_equivalence(zs in prop::collection::vec(gaussian(), 3), k in positive_rational()) {
        prop_assume!(zs.iter().all(|z| !z.is_zero()));
        let (a, b, c) = (&zs[0], &zs[1], &zs[2]);
        prop_assert!(same_ray(a, a).unwrap());
        prop_assert!(same_ray(a, &a.scale(&k)).unwrap());
        prop_assert_eq!(same_ray(a, b).unwrap(), same_ray(b, a).unwrap());
        if same_ray(a, b).unwrap() && same_ray(b, c).unwrap() {
            prop_assert!(same_ray(a, c).unwrap());
        }
        prop_assert_eq!(same_ray(a, b).unwrap(), phase_of_value(a).unwrap().ray == phase_of_value(b).unwrap().ray);
    }

    #[test]
    fn kernel_vectors_vanish(s in space(4), b in small_rational(), w in positive_rational()) {
        let z = charge_functional(&s, &b, &w).unwrap();
        let k = kernel_basis(&z);
        for v in &k {
            prop_assert!(z.eval(v).unwrap().is_zero());
        }
        let rows = RatMatrix::from_rows(z.rank(), vec![z.real_coeffs(), z.imag_coeffs()]).unwrap();
        prop_assert_eq!(k.len() + matrix::rank(&rows), z.rank());
    }

    #[test]
    fn negdef_agrees_with_oracles(entries in prop::collection::vec(-4i64..=4, 10), dim in 1usize..=4) {
        // Symmetric matrix from the upper triangle.
        let mut m = RatMatrix::zeros(dim, dim);
        let mut it = entries.iter();
        for i in 0..dim {
            for j in i..dim {
                let x = Rational::from_integer(BigInt::from(*it.next().unwrap()));
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        let q = QuadraticForm::new(m.clone()).unwrap();
        let basis: Vec<Vec<Rational>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let verdict = is_negative_definite_on(&q, &basis).unwrap();
        // Sylvester: (-1)^k * (k-th leading minor) > 0 for all k.
        let sylvester = (1..=dim).all(|k| {
            let sub = RatMatrix::from_rows(k, (0..k).map(|i| m.row(i)[..k].to_vec()).collect()).unwrap();
            let d = matrix::determinant(&sub);
            if k % 2 == 1 { d.is_negative() } else { d.is_positive() }
        });
        prop_assert_eq!(verdict, sylvester);
        if verdict {
            // Necessary condition on a grid of nonzero integer points.
            let grid: Vec<i64> = vec![-2, -1, 0, 1, 2];
            let mut idx = vec![0usize; dim];
            loop {
                let v: Vec<Rational> = idx.iter().map(|&i| Rational::from_integer(BigInt::from(grid[i]))).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    prop_assert!(q.eval(&v).unwrap().is_negative());
                }
                let mut p = 0;
                while p < dim && idx[p] == grid.len() - 1 {
                    idx[p] = 0;
                    p += 1;
                }
                if p == dim { break; }
                idx[p] += 1;
            }
        }
    }

    #[test]
    fn support_constant_scale_invariant(vs in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..5), k in 1i64..=6, sign in prop::bool::ANY, b in small_rational(), w in positive_rational()) {
        let vs: Vec<Vec<Rational>> = vs.into_iter().map(|v| v.into_iter().map(|x| Rational::from_integer(BigInt::from(x))).collect()).collect();
        prop_assume!(vs.iter().all(|v| v.iter().any(|x| !x.is_zero())));
        let z = charge_functional(&ProductSpace::new(&[1, 1]).unwrap(), &b, &w).unwrap();
        let kk = Rational::from_integer(BigInt::from(if sign { -k } else { k }));
        let mut scaled = vs.clone();
        for x in scaled[0].iter_mut() {
            *x = &*x * &kk;
        }
        prop_assert_eq!(support_constant(&z, &vs).unwrap(), support_constant(&z, &scaled).unwrap());
    }

    #[test]
    fn glue_check_passes_on_elliptic_products(n in 2usize..=3, b in small_rational(), w in positive_rational()) {
        let r = glue_check(&ProductSpace::new(&vec![1; n]).unwrap(), &b, &w).unwrap();
        prop_assert!(r.pass());
    }
}

#[test]
fn skyscraper_is_invariant_under_all_relabellings() {
    let space = ProductSpace::new(&[1, 1, 1]).unwrap();
    let sky = v_map(&ch_skyscraper(&space)).unwrap();
    for t in [Permutation::transposition(3, 1, 2), Permutation::transposition(3, 2, 3)] {
        let m = int_to_rat(&induced_permutation_matrix(&space, &t).unwrap());
        assert_eq!(m.mul_vec(sky.coords()).unwrap(), sky.coords());
    }
    assert_eq!(sky.at(Subset::EMPTY), &Rational::one());
}

#[test]
fn invariant_rank_for_four_points() {
    let d = descend(&hilbert_setup(1, 1, 4, false).unwrap(), &Rational::zero(), &Rational::one()).unwrap();
    assert_eq!(d.invariant_rank, 35);
    assert!(matrix::is_saturated_basis(&d.invariant_basis));
}
