use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::classify::dynkin_indecomposables;
use crate::decomp::is_isomorphic;
use crate::random;
use crate::rep::{hom_basis, hom_dim};

const Q: Field = Field::Rationals;

fn gf5() -> Field {
    Field::prime(5).unwrap()
}

fn a2_indecomposables(field: Field) -> Vec<Arc<Representation>> {
    dynkin_indecomposables(field, &Quiver::linear_a(2)).unwrap().into_iter().map(|c| c.rep).collect()
}

#[test]
fn total_of_a_simple() {
    let q = Quiver::linear_a(3);
    let s = Representation::simple(Q, &q, 2);
    let t = total(&s);
    assert_eq!(t.dim, 1);
    assert!(t.idempotents[1].is_identity());
    assert!(t.idempotents[0].is_zero() && t.idempotents[2].is_zero());
    assert!(t.arrows.iter().all(Matrix::is_zero));
}

#[test]
fn untotal_rejects_broken_families() {
    let q = Quiver::kronecker();
    let mut rng = random::rng(2);
    let x = random::representation(gf5(), &q, &[2, 1], &mut rng);
    let t = total(&x);

    let mut bad = t.clone();
    bad.idempotents[0] = Matrix::zeros(gf5(), 3, 3);
    assert!(matches!(untotal(&bad, &q), Err(Error::NotTotal(_))));

    let mut bad = t.clone();
    bad.arrows[1] = Matrix::identity(gf5(), 3);
    assert!(matches!(untotal(&bad, &q), Err(Error::NotTotal(_))));

    let mut bad = t.clone();
    bad.arrows.pop();
    assert!(matches!(untotal(&bad, &q), Err(Error::NotTotal(_))));

    // A non-coordinate splitting of V is still a valid family.
    let g = random::invertible(gf5(), 3, &mut rng);
    let gi = g.inverse().unwrap();
    let conj = |m: &Matrix| &(&g * m) * &gi;
    let moved = TotalRep {
        field: t.field,
        dim: t.dim,
        idempotents: t.idempotents.iter().map(conj).collect(),
        arrows: t.arrows.iter().map(conj).collect(),
    };
    let y = Arc::new(untotal(&moved, &q).unwrap());
    assert!(is_isomorphic(&y, &Arc::new(x)).unwrap().is_some());
}

#[test]
fn e_block_layout() {
    let k = Quiver::kronecker();
    let s1 = Representation::simple(Q, &k, 1);
    let e = embed_e(&s1);
    assert_eq!(e.dims(), &[6]);
    let sigma = e.map(0);
    // σ is the block shift: σ^5 has its single id block in the corner.
    let mut corner = Matrix::zeros(Q, 6, 6);
    corner.set(0, 5, Q.one());
    assert_eq!(sigma.pow(5), corner);
    assert!(sigma.pow(6).is_zero());

    // S(1) ⊕ S(2) of A2: X̄ has dimension 2, blocks n + r + 2 = 5.
    let a2 = Quiver::linear_a(2);
    let x = Representation::projective(Q, &a2, 1).unwrap();
    let e = embed_e(&x);
    let d = 2;
    assert_eq!(e.dims(), &[5 * d]);
    let tau = e.map(1);
    let t = total(&x);
    assert!(tau.block(0, 0, d, 5 * d).is_zero());
    assert!(tau.block(d, 0, d, d).is_identity());
    assert_eq!(tau.block(2 * d, 0, d, d), t.idempotents[0]);
    assert_eq!(tau.block(3 * d, d, d, d), t.idempotents[1]);
    assert_eq!(tau.block(4 * d, 2 * d, d, d), t.arrows[0]);
    assert!(tau.block(4 * d, 3 * d, d, d).is_identity());
    assert!(tau.block(0, 4 * d, 5 * d, d).is_zero());
}

#[test]
fn f_and_fr_shapes() {
    let zero = Representation::zero(Q, &Quiver::two_loop());
    let f = embed_f(&zero).unwrap();
    assert!(f.is_zero());
    assert_eq!(f.quiver(), &Quiver::kronecker_r(3));
    assert!(embed_f(&Representation::zero(Q, &Quiver::kronecker())).is_err());

    for r in 1..=3 {
        let k = Quiver::kronecker_r(r);
        let s1 = Representation::simple(Q, &k, 1);
        let fr = embed_fr(&s1).unwrap();
        assert_eq!(fr.quiver(), &Quiver::subspace(r + 2));
        assert_eq!(fr.dim(r + 3), 1);
        // Line, zero, and r copies of the same line: graphs of zero maps are X_1 × 0.
        assert_eq!(fr.dim(2), 0);
        for k in 0..r {
            assert_eq!(fr.map(k + 2), fr.map(0));
        }
        for k in 0..r + 2 {
            assert!(fr.map(k).is_injective());
        }
    }
    let mut rng = random::rng(9);
    let x = random::representation(gf5(), &Quiver::kronecker_r(3), &[2, 3], &mut rng);
    assert_eq!(embed_fr(&x).unwrap().dim(6), 5);
}

#[test]
fn a2_pairs_through_every_embedding() {
    let inds = a2_indecomposables(Q);
    assert_eq!(inds.len(), 3);
    let fq: Vec<_> = inds.iter().map(|x| embed_fq(x)).collect();
    let sub: Vec<_> = fq.iter().map(|x| embed_fr(x).unwrap()).collect();
    for (i, x) in inds.iter().enumerate() {
        for (j, y) in inds.iter().enumerate() {
            let h = hom_dim(x, y).unwrap();
            assert_eq!(hom_dim(&embed_e(x), &embed_e(y)).unwrap(), h);
            assert_eq!(hom_dim(&fq[i], &fq[j]).unwrap(), h);
            assert_eq!(hom_dim(&sub[i], &sub[j]).unwrap(), h);
            assert_eq!(is_isomorphic(&fq[i], &fq[j]).unwrap().is_some(), i == j);
        }
    }
}

#[test]
fn morphisms_map_to_morphisms() {
    let mut rng = random::rng(13);
    let k = Quiver::kronecker();
    for _ in 0..4 {
        let x = Arc::new(random::representation(gf5(), &k, &[1, 2], &mut rng));
        let y = Arc::new(random::representation(gf5(), &k, &[1, 1], &mut rng));
        for f in hom_basis(&x, &y).unwrap() {
            assert!(embed_e_morphism(&f).is_ok());
            assert!(embed_fq_morphism(&f).is_ok());
            assert!(embed_fr_morphism(&f).is_ok());
            let bar = total_morphism(&f);
            let tx = total(&x);
            let ty = total(&y);
            for (a, b) in tx.idempotents.iter().chain(&tx.arrows).zip(ty.idempotents.iter().chain(&ty.arrows)) {
                assert_eq!(&bar * a, b * &bar);
            }
        }
    }
}

#[test]
fn embed_targets() {
    let k = Quiver::kronecker();
    let s = Representation::simple(Q, &k, 2);
    assert_eq!(embed(&s, EmbedTarget::Gamma2).unwrap().quiver(), &Quiver::two_loop());
    assert_eq!(embed(&s, EmbedTarget::K3).unwrap().quiver(), &Quiver::kronecker_r(3));
    assert_eq!(embed(&s, EmbedTarget::Subspace).unwrap().quiver(), &Quiver::subspace(4));
    // A2 is K_1, so F_1 applies; A3 is not a Kronecker quiver and goes through F_3 F_Q.
    let a2 = Representation::simple(Q, &Quiver::linear_a(2), 1);
    assert_eq!(embed(&a2, EmbedTarget::Subspace).unwrap().quiver(), &Quiver::subspace(3));
    let a3 = Representation::simple(Q, &Quiver::linear_a(3), 1);
    let e = embed(&a3, EmbedTarget::Subspace).unwrap();
    assert_eq!(e.quiver(), &Quiver::subspace(5));
    assert_eq!(e.dim(6), 2 * 7);
    assert_eq!(serde_json::to_string(&EmbedTarget::Gamma2).unwrap(), "\"gamma2\"");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn total_roundtrip_and_hom(seed in 0u64..1000, d in proptest::collection::vec(0usize..3, 4)) {
        let k = Quiver::kronecker();
        let mut rng = random::rng(seed);
        let x = random::representation(gf5(), &k, &d[..2], &mut rng);
        let y = random::representation(gf5(), &k, &d[2..], &mut rng);
        prop_assert_eq!(untotal(&total(&x), &k).unwrap(), x.clone());
        prop_assert_eq!(total(&x).dim, x.total_dim());
        let (x, y) = (Arc::new(x), Arc::new(y));
        let h = hom_dim(&x, &y).unwrap();
        prop_assert_eq!(hom_dim(&total(&x).to_loop_rep(), &total(&y).to_loop_rep()).unwrap(), h);
    }

    #[test]
    fn e_f_and_fr_preserve_hom(seed in 0u64..1000, d in proptest::collection::vec(0usize..3, 4)) {
        let k = Quiver::kronecker();
        let mut rng = random::rng(seed);
        let x = Arc::new(random::representation(gf5(), &k, &d[..2], &mut rng));
        let y = Arc::new(random::representation(gf5(), &k, &d[2..], &mut rng));
        let h = hom_dim(&x, &y).unwrap();
        let (ex, ey) = (embed_e(&x), embed_e(&y));
        prop_assert_eq!(ex.dim(1), 6 * x.total_dim());
        prop_assert_eq!(hom_dim(&ex, &ey).unwrap(), h);
        prop_assert_eq!(hom_dim(&embed_f(&ex).unwrap(), &embed_f(&ey).unwrap()).unwrap(), h);
        prop_assert_eq!(hom_dim(&embed_fr(&x).unwrap(), &embed_fr(&y).unwrap()).unwrap(), h);
    }

    #[test]
    fn f_preserves_hom_on_two_loop_reps(seed in 0u64..1000, a in 0usize..4, b in 0usize..4) {
        let g = Quiver::two_loop();
        let mut rng = random::rng(seed);
        let x = Arc::new(random::representation(gf5(), &g, &[a], &mut rng));
        let y = Arc::new(random::representation(gf5(), &g, &[b], &mut rng));
        prop_assert_eq!(hom_dim(&embed_f(&x).unwrap(), &embed_f(&y).unwrap()).unwrap(), hom_dim(&x, &y).unwrap());
    }
}
