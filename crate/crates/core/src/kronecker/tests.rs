use proptest::prelude::*;

use super::*;
use crate::classify::{trichotomy, Tag};
use crate::decomp::is_isomorphic;
use crate::forms::defect;
use crate::random;
use crate::reflect::coxeter_power;
use crate::rep::{cokernel, direct_sum, ext_dim, ext_dim_standard, hom_dim, kernel};

const Q: Field = Field::Rationals;

fn arc(x: Representation) -> Arc<Representation> {
    Arc::new(x)
}

fn s(field: Field, v: i64) -> Scalar {
    field.from_i64(v)
}

fn point(field: Field, a: i64, b: i64) -> ProjectivePoint {
    ProjectivePoint::new(s(field, a), s(field, b)).unwrap()
}

fn r(field: Field, p: usize, a: i64, b: i64) -> Arc<Representation> {
    arc(kronecker_indec(&KroneckerIndec::R { p, point: point(field, a, b) }, field).unwrap())
}

#[test]
fn standard_morphisms() {
    let l = s(Q, 3);
    assert!(standard_morphism(Q, 3, 3, &l).unwrap().is_identity());
    let f = standard_morphism(Q, 3, 2, &l).unwrap();
    assert_eq!(*f.comp(1), Matrix::from_i64(Q, &[vec![0, 1, 0], vec![0, 0, 1]]));
    // 0 -> J_1 -> J_3 -> J_2 -> 0
    let g = standard_morphism(Q, 1, 3, &l).unwrap();
    assert!(g.is_mono() && f.is_epi());
    assert!(f.compose(&g).unwrap().is_zero());
    assert_eq!(g.ranks()[0] + f.ranks()[0], 3);
}

#[test]
fn jordan_hom_bases() {
    for field in [Q, Field::prime(3).unwrap()] {
        for p in 1..=4 {
            for q in 1..=4 {
                for (l, m) in [(0, 0), (1, 1), (0, 1), (2, 1)] {
                    let (l, m) = (s(field, l), s(field, m));
                    let basis = jordan_hom_basis(field, p, &l, q, &m).unwrap();
                    let x = arc(jordan_rep(field, p, &l).unwrap());
                    let y = arc(jordan_rep(field, q, &m).unwrap());
                    let expected = if l == m { p.min(q) } else { 0 };
                    assert_eq!(basis.len(), expected);
                    assert_eq!(hom_dim(&x, &y).unwrap(), expected);
                    if !basis.is_empty() {
                        let h = crate::rep::HomSpace::new(&x, &y).unwrap();
                        let coords: Vec<Vec<Scalar>> = basis.iter().map(|f| h.coordinates(f).unwrap()).collect();
                        let mat = Matrix::from_rows(field, h.dim(), coords).unwrap();
                        assert_eq!(mat.rank(), expected, "basis is independent");
                    } else if l != m {
                        assert_eq!(ext_dim_standard(&x, &y).unwrap(), 0);
                    }
                }
            }
        }
    }
    assert_eq!(jordan_hom_basis(Q, 3, &s(Q, 1), 2, &s(Q, 1)).unwrap().len(), 2);
}

#[test]
fn uniserial_chains() {
    let l = s(Q, -2);
    assert_eq!(jordan_subreps(Q, 1, &l).unwrap().len(), 2);
    let chain = jordan_subreps(Q, 3, &l).unwrap();
    let dims: Vec<usize> = chain.iter().map(|(x, _)| x.total_dim()).collect();
    assert_eq!(dims, vec![0, 1, 2, 3]);
    for (k, (sub, incl)) in chain.iter().enumerate() {
        assert!(incl.is_mono());
        if k > 0 {
            assert!(is_isomorphic(sub, &arc(jordan_rep(Q, k, &l).unwrap())).unwrap().is_some());
        }
    }
    let x = arc(jordan_rep(Q, 3, &l).unwrap());
    let (quo, _) = quotient(&x, &[standard_matrix(Q, 1, 3)]).unwrap();
    assert!(is_isomorphic(&quo, &arc(jordan_rep(Q, 2, &l).unwrap())).unwrap().is_some());
}

#[test]
fn jordan_irreducibility_criterion() {
    // Ker ⊕ Coker simple  <=>  |p - q| = 1 and mono or epi, over every nonzero standard composite.
    let l = s(Q, 1);
    for p in 1..=4 {
        for q in 1..=4 {
            for f in jordan_hom_basis(Q, p, &l, q, &l).unwrap() {
                let kd = kernel(&f).unwrap().0.total_dim();
                let cd = cokernel(&f).unwrap().0.total_dim();
                let simple = kd + cd == 1;
                let criterion = p.abs_diff(q) == 1 && (f.is_mono() || f.is_epi());
                assert_eq!(simple, criterion, "p={p} q={q}");
            }
        }
    }
}

#[test]
fn kronecker_families() {
    let p0 = kronecker_indec(&KroneckerIndec::P { r: 0 }, Q).unwrap();
    assert_eq!(p0, Representation::simple(Q, &Quiver::kronecker(), 2));
    let r01 = r(Q, 1, 0, 1);
    assert_eq!(*r01.map(0), Matrix::from_i64(Q, &[vec![0]]));
    assert_eq!(*r01.map(1), Matrix::from_i64(Q, &[vec![1]]));
    let a = r(Q, 2, 1, 1);
    let b = arc(kronecker_regular_second_chart(Q, 2, &point(Q, 1, 1)).unwrap());
    assert_ne!(a, b);
    assert!(is_isomorphic(&a, &b).unwrap().is_some());
    for kind in [KroneckerIndec::P { r: 3 }, KroneckerIndec::I { r: 2 }, KroneckerIndec::R { p: 3, point: point(Q, 2, 1) }] {
        let x = arc(kronecker_indec(&kind, Q).unwrap());
        assert_eq!(x.dims(), &kind.dims());
        assert!(is_indecomposable(&x).unwrap());
    }
}

#[test]
fn points_normalize() {
    assert_eq!(point(Q, 10, 2), point(Q, 5, 1));
    assert_eq!(point(Q, 3, 0), ProjectivePoint::infinity(Q));
    assert!(ProjectivePoint::new(s(Q, 0), s(Q, 0)).is_err());
    let f5 = Field::prime(5).unwrap();
    assert_eq!(point(Q, 5, 1).in_field(f5).unwrap(), point(f5, 0, 1));
    // (1 : 5) is stored as (1/5 : 1), which has no image in GF(5).
    assert!(point(Q, 1, 5).in_field(f5).is_err());
    assert!(point(f5, 1, 1) < ProjectivePoint::infinity(f5));
}

#[test]
fn serialization_shapes() {
    let p = KroneckerIndec::P { r: 1 };
    assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"kind":"P","r":1}"#);
    let rk = KroneckerIndec::R { p: 2, point: point(Q, 5, 1) };
    let json = serde_json::to_string(&rk).unwrap();
    assert_eq!(json, r#"{"kind":"R","p":2,"point":["5","1"]}"#);
    assert_eq!(serde_json::from_str::<KroneckerIndec>(&json).unwrap(), rk);
    let half: KroneckerIndec = serde_json::from_str(r#"{"kind":"R","p":1,"point":["1","2"]}"#).unwrap();
    assert_eq!(half, KroneckerIndec::R { p: 1, point: ProjectivePoint::affine(Q.parse_scalar("1/2").unwrap()) });
}

#[test]
fn classify_examples() {
    let k = Quiver::kronecker();
    let mut rng = random::rng(17);
    let parts = [r(Q, 2, 5, 1), arc(kronecker_indec(&KroneckerIndec::P { r: 1 }, Q).unwrap())];
    let sum = direct_sum(Q, &k, &parts).unwrap().sum;
    let g: Vec<Matrix> = sum.dims().iter().map(|&d| random::invertible(Q, d, &mut rng)).collect();
    let (moved, _) = sum.base_change(&g).unwrap();
    assert_ne!(moved, sum);
    assert_eq!(
        kronecker_classify(&moved).unwrap(),
        vec![(KroneckerIndec::P { r: 1 }, 1), (KroneckerIndec::R { p: 2, point: point(Q, 5, 1) }, 1)]
    );
    let p0 = arc(kronecker_indec(&KroneckerIndec::P { r: 0 }, Q).unwrap());
    let twice = direct_sum(Q, &k, &[p0.clone(), p0]).unwrap().sum;
    assert_eq!(kronecker_classify(&twice).unwrap(), vec![(KroneckerIndec::P { r: 0 }, 2)]);
    // Nilpotent first map, identity second.
    let nil = arc(Representation::new(Q, k.clone(), vec![3, 3], vec![Matrix::jordan_block(Q, 3, &s(Q, 0)), Matrix::identity(Q, 3)]).unwrap());
    assert_eq!(kronecker_classify(&nil).unwrap(), vec![(KroneckerIndec::R { p: 3, point: point(Q, 0, 1) }, 1)]);
    let inf = r(Q, 2, 1, 0);
    assert_eq!(kronecker_classify(&inf).unwrap(), vec![(KroneckerIndec::R { p: 2, point: ProjectivePoint::infinity(Q) }, 1)]);
}

#[test]
fn irrational_points_are_reported() {
    // (I, companion of t² − 2): indecomposable regular with no rational point.
    let k = Quiver::kronecker();
    let c = Matrix::from_i64(Q, &[vec![0, 2], vec![1, 0]]);
    let x = arc(Representation::new(Q, k, vec![2, 2], vec![c, Matrix::identity(Q, 2)]).unwrap());
    assert!(matches!(kronecker_classify(&x), Err(Error::IrrationalEigenvalue(_))));
}

#[test]
fn classify_over_finite_fields() {
    let f = Field::prime(5).unwrap();
    let k = Quiver::kronecker();
    let parts = [r(f, 1, 2, 1), r(f, 2, 2, 1), r(f, 1, 1, 0), arc(kronecker_indec(&KroneckerIndec::I { r: 1 }, f).unwrap())];
    let sum = direct_sum(f, &k, &parts).unwrap().sum;
    let mut got = kronecker_classify(&sum).unwrap();
    got.sort();
    assert_eq!(
        got,
        vec![
            (KroneckerIndec::I { r: 1 }, 1),
            (KroneckerIndec::R { p: 1, point: point(f, 2, 1) }, 1),
            (KroneckerIndec::R { p: 1, point: ProjectivePoint::infinity(f) }, 1),
            (KroneckerIndec::R { p: 2, point: point(f, 2, 1) }, 1),
        ]
    );
}

#[test]
fn regular_subrepresentations() {
    for (x, expected) in [
        (r(Q, 1, 3, 1), point(Q, 3, 1)),
        (r(Q, 3, 2, 1), point(Q, 2, 1)),
        (r(Q, 2, 1, 0), ProjectivePoint::infinity(Q)),
        (r(Q, 2, 0, 1), point(Q, 0, 1)),
    ] {
        let (pt, f) = reg_sub_find(&x).unwrap();
        assert_eq!(pt, expected);
        assert!(f.is_mono());
        assert_eq!(f.source().dims(), &[1, 1]);
    }
    let (_, id) = reg_sub_find(&r(Q, 1, 3, 1)).unwrap();
    assert!(id.is_isomorphism());
    let p1 = arc(kronecker_indec(&KroneckerIndec::P { r: 1 }, Q).unwrap());
    assert!(reg_sub_find(&p1).is_err());
}

#[test]
fn regular_hom_and_ext_table() {
    let pts = [(0, 1), (1, 0), (1, 1), (2, 1)];
    for p in 1..=4 {
        for q in 1..=4 {
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate() {
                    let x = r(Q, p, a.0, a.1);
                    let y = r(Q, q, b.0, b.1);
                    let expected = if i == j { p.min(q) } else { 0 };
                    assert_eq!(hom_dim(&x, &y).unwrap(), expected);
                    if i != j {
                        assert_eq!(ext_dim(&x, &y).unwrap(), 0);
                    }
                }
            }
        }
    }
}

#[test]
fn kronecker_series_identities() {
    let k = Quiver::kronecker();
    let p1 = arc(Representation::projective(Q, &k, 1).unwrap());
    let i2 = arc(Representation::injective(Q, &k, 2).unwrap());
    for rr in 0..=2i64 {
        let c = coxeter_power(&p1, -rr).unwrap();
        let model = arc(kronecker_indec(&KroneckerIndec::P { r: 2 * rr as usize + 1 }, Q).unwrap());
        assert!(is_isomorphic(&c, &model).unwrap().is_some());
        let c = coxeter_power(&i2, rr).unwrap();
        let model = arc(kronecker_indec(&KroneckerIndec::I { r: 2 * rr as usize + 1 }, Q).unwrap());
        assert!(is_isomorphic(&c, &model).unwrap().is_some());
    }
}

#[test]
fn regulars_have_zero_defect_and_survive_coxeter() {
    let k = Quiver::kronecker();
    for (a, b) in [(0, 1), (1, 0), (3, 1)] {
        for p in 1..=2 {
            let x = r(Q, p, a, b);
            assert_eq!(defect(&k, &x.dim_vector()).unwrap(), 0);
            assert_eq!(trichotomy(&x).unwrap(), Tag::Regular);
            for t in -3..=3 {
                assert!(!coxeter_power(&x, t).unwrap().is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_survives_base_change(
        lam in 0i64..7, p in 1usize..=3, r1 in 0usize..=2, seed in 0u64..1000,
    ) {
        let f = Field::prime(7).unwrap();
        let k = Quiver::kronecker();
        let parts = [r(f, p, lam, 1), arc(kronecker_indec(&KroneckerIndec::P { r: r1 }, f).unwrap())];
        let sum = direct_sum(f, &k, &parts).unwrap().sum;
        let mut rng = random::rng(seed);
        let g: Vec<Matrix> = sum.dims().iter().map(|&d| random::invertible(f, d, &mut rng)).collect();
        let (moved, _) = sum.base_change(&g).unwrap();
        let mut expected = vec![(KroneckerIndec::P { r: r1 }, 1), (KroneckerIndec::R { p, point: point(f, lam, 1) }, 1)];
        expected.sort();
        prop_assert_eq!(kronecker_classify(&moved).unwrap(), expected);
    }

    #[test]
    fn point_normalization_is_scale_invariant(a in -5i64..=5, b in -5i64..=5, c in 1i64..=4) {
        prop_assume!(a != 0 || b != 0);
        prop_assert_eq!(point(Q, a, b), point(Q, c * a, c * b));
    }
}
