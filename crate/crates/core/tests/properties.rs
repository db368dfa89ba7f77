use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ptri::enumerate::{apply_flip, find_flips};
use ptri::exact::{affine_dependence, q, Point, QuadForm, SmallMatrix, Q};
use ptri::predicates::{freudenthal_seed, voronoi_regulator};
use ptri::symmetry::{canonical_triangulation, isomorphic};
use ptri::tri::{pairwise_compatible, PeriodicTriangulation, Simplex};

fn point(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| Point::new(&v))
}

fn simplex(n: usize) -> impl Strategy<Value = Simplex> {
    prop::collection::vec(point(n), n + 1).prop_filter_map("degenerate", move |v| Simplex::new(n, v).ok())
}

fn small_simplex(n: usize) -> impl Strategy<Value = Simplex> {
    prop::collection::vec(prop::collection::vec(-1i64..=2, n), n + 1)
        .prop_filter_map("degenerate", move |v| Simplex::new(n, v.iter().map(|p| Point::new(p)).collect()).ok())
}

/// Product of random elementary matrices and coordinate swaps.
fn unimodular(n: usize) -> impl Strategy<Value = SmallMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 1..3 * n).prop_map(move |ops| {
        let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        for (i, j, k, neg) in ops {
            if i != j {
                for c in 0..n {
                    rows[i][c] += k * rows[j][c];
                }
                if neg {
                    rows.swap(i, j);
                }
            }
        }
        SmallMatrix::from_rows(&rows)
    })
}

/// `B^T B + I` with small integer `B`.
fn pd_form(n: usize) -> impl Strategy<Value = QuadForm> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |b| {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum::<i64>() + (i == j) as i64;
            }
        }
        QuadForm::from_i64(n, &a).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_is_translation_invariant(s in simplex(3), t in point(3)) {
        prop_assert_eq!(s.translate(t).class(), s.class());
        prop_assert_eq!(s.translate(t).volume(), s.volume());
    }

    #[test]
    fn compatibility_is_symmetric(a in small_simplex(2), b in small_simplex(2)) {
        let ab = pairwise_compatible(&a.class(), &b.class()).is_none();
        let ba = pairwise_compatible(&b.class(), &a.class()).is_none();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn compatibility_is_symmetric_dim3(a in small_simplex(3), b in small_simplex(3)) {
        let ab = pairwise_compatible(&a.class(), &b.class()).is_none();
        let ba = pairwise_compatible(&b.class(), &a.class()).is_none();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn validation_is_equivariant((n, g, drop) in (2usize..=4).prop_flat_map(|n| (Just(n), unimodular(n), 0usize..24))) {
        prop_assume!(g.det().abs() == 1);
        let t = freudenthal_seed(n);
        prop_assert!(t.transform(&g).validate().is_valid());
        // damaging commutes with transforming
        let mut classes = t.classes().to_vec();
        classes.remove(drop % classes.len());
        let damaged = PeriodicTriangulation::new(n, classes).unwrap();
        prop_assert!(!damaged.transform(&g).validate().is_valid());
    }

    #[test]
    fn regulator_is_linear(s in simplex(2), v in point(2), a in pd_form(2), b in pd_form(2), x in 0i64..5, y in 0i64..5) {
        prop_assume!(!s.vertices.contains(&v));
        let r = voronoi_regulator(&s, v);
        let combo = a.scale(&q(x)).add(&b.scale(&q(y)));
        prop_assert_eq!(r.eval(&combo), q(x) * r.eval(&a) + q(y) * r.eval(&b));
    }

    #[test]
    fn regulator_sign_is_circumsphere_side(
        (n, s, v, a) in (2usize..=3).prop_flat_map(|n| (Just(n), simplex(n), point(n), pd_form(n)))
    ) {
        prop_assume!(!s.vertices.contains(&v));
        let mut pts = s.vertices.clone();
        pts.push(v);
        let dep = affine_dependence(&pts, n);
        prop_assume!(dep.is_ok());
        let dep = dep.unwrap();
        prop_assume!(dep.coeffs[n + 1] != 0);
        // A[v] - l(v) for the affine l interpolating A on the vertices
        let lifted: Q = pts.iter().zip(&dep.coeffs).map(|(p, &c)| q(c) * a.eval(p)).sum::<Q>() / q(dep.coeffs[n + 1]);
        let reg = voronoi_regulator(&s, v).eval(&a);
        prop_assert_eq!(sign(&reg), sign(&lifted));
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(g in unimodular(4)) {
        prop_assume!(g.det().abs() == 1);
        let t = freudenthal_seed(4);
        let u = t.transform(&g);
        prop_assert!(isomorphic(&t, &t).is_some());
        let f = isomorphic(&t, &u);
        prop_assert!(f.is_some());
        prop_assert!(f.unwrap().maps_onto(&t, &u));
        let b = isomorphic(&u, &t);
        prop_assert!(b.is_some());
        prop_assert!(b.unwrap().maps_onto(&u, &t));
        prop_assert_eq!(canonical_triangulation(&u), canonical_triangulation(&t));
    }
}

fn sign(x: &Q) -> i8 {
    use num_traits::Signed;
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Random flip walks: every applied flip has an inverse restoring the
/// previous triangulation exactly, and volume is conserved.
#[test]
fn flip_involution_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (n, steps) in [(2, 20), (3, 25), (4, 30), (5, 25)] {
        let mut t = freudenthal_seed(n);
        for _ in 0..steps {
            let flips = find_flips(&t);
            let f = flips.choose(&mut rng).expect("every member has a flip");
            let t2 = apply_flip(&t, f).unwrap();
            assert_eq!(t2.total_volume(), t.total_volume());
            let back: Vec<_> =
                find_flips(&t2).into_iter().filter(|g| g.inserted == f.removed && g.removed == f.inserted).collect();
            assert_eq!(back.len(), 1, "no inverse flip in dim {n}");
            assert_eq!(apply_flip(&t2, &back[0]).unwrap(), t);
            checked += 1;
            t = t2;
        }
    }
    assert_eq!(checked, 100);
}
