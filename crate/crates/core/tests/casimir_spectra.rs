use std::sync::Arc;

use eqquant::algebra::{make_algebra, Algebra, Family, GradedElement};
use eqquant::casimir::{
    casimir_matrix, casimir_matrix_with, check_block_spectrum, eigenvalue, eigenvalue_general, eigenvalue_orthogonal,
    eigenvalue_symplectic, mu_mu_plus_S, mu_mu_plus_S_split, n_c_matrix, weight_inner, CasimirOperator,
    Representation, WeightVector,
};
use eqquant::ferrers::admissible_diagrams;
use eqquant::poly::PhasePoly;
use eqquant::rational::{q, qr, Q};
use eqquant::space::{SymbolSpace, Truncation};
use eqquant::symbol::{lie_tensor, Weights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILIES: [Family; 2] = [Family::Orthogonal, Family::Symplectic];

#[test]
fn closed_forms_agree() {
    for fam in FAMILIES {
        for n in 2..=6 {
            let s = make_algebra(fam, n).unwrap();
            for k in 0..=5 {
                for dg in admissible_diagrams(&s, k) {
                    let general = eigenvalue_general(&dg, &s, k).unwrap();
                    let explicit = match fam {
                        Family::Orthogonal => eigenvalue_orthogonal(&dg, n).unwrap(),
                        Family::Symplectic => eigenvalue_symplectic(&dg, n).unwrap(),
                    };
                    assert_eq!(general, explicit, "{fam} n={n} {dg}");
                    assert_eq!(general.c2, qr(s.d as i64, 2));
                }
            }
        }
    }
}

#[test]
fn inner_product_is_bilinear_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..=5 {
        for _ in 0..10 {
            let mut v = || WeightVector((0..n).map(|_| rng.gen_range(-4..=4)).collect());
            let (a, b, c) = (v(), v(), v());
            assert_eq!(weight_inner(&a, &b, n), weight_inner(&b, &a, n));
            let ab = WeightVector(a.0.iter().zip(&b.0).map(|(x, y)| x + 2 * y).collect());
            assert_eq!(weight_inner(&ab, &c, n), weight_inner(&a, &c, n) + q(2) * weight_inner(&b, &c, n));
        }
    }
    for n in 2..=6 {
        for fam in FAMILIES {
            let s = make_algebra(fam, n).unwrap();
            for dg in admissible_diagrams(&s, 3) {
                assert_eq!(mu_mu_plus_S(&dg, n).unwrap(), mu_mu_plus_S_split(&dg, n));
            }
        }
    }
}

#[test]
fn tensor_casimir_matches_closed_forms_small() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        for delta in [q(0), qr(1, 2), q(1), q(3)] {
            let w = Weights::new(q(0), delta.clone());
            let c = casimir_matrix(Representation::TensorFields, &alg, &w, Truncation::new(3, 2)).unwrap();
            for k in 0..=3 {
                for m in 0..=2 {
                    let r = check_block_spectrum(&c, k, m, &delta).unwrap();
                    assert!(r.matches(), "{fam} delta={delta} ({k},{m}): {r:?}");
                }
            }
        }
    }
}

#[test]
fn tensor_casimir_is_central() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        let spec = *alg.spec();
        let delta = qr(2, 3);
        let w = Weights::new(q(0), delta.clone());
        let op = CasimirOperator::new(Representation::TensorFields, &alg, &alg.dual_bases().unwrap(), &w).unwrap();
        let space = SymbolSpace::new(spec.d, Truncation::new(2, 2));
        for x in spec.basis() {
            let f = spec.realize_vector_field(&x).unwrap();
            for _ in 0..4 {
                let j = rng.gen_range(0..space.dim());
                let p = space.basis_poly(j);
                let lhs = op.apply(&lie_tensor(&f, &p, &delta));
                let rhs = lie_tensor(&f, &op.apply(&p), &delta);
                assert_eq!(lhs, rhs, "{fam}");
            }
        }
    }
}

fn shuffled_minus_basis(spec: &eqquant::algebra::AlgebraSpec, rng: &mut ChaCha8Rng) -> Vec<GradedElement> {
    let base = spec.minus_basis();
    let d = spec.d;
    loop {
        let coeffs: Vec<Vec<Q>> = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        let m = eqquant::linalg::Matrix::from_fn(d, d, |i, j| coeffs[i][j].clone());
        if m.rank() < d {
            continue;
        }
        return (0..d)
            .map(|i| (0..d).fold(GradedElement::zero(spec.n), |acc, j| acc.add(&base[j].scale(&coeffs[i][j]))))
            .collect();
    }
}

#[test]
fn casimir_is_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (fam, n) in [(Family::Orthogonal, 3), (Family::Symplectic, 2)] {
        let alg = Algebra::new(make_algebra(fam, n).unwrap());
        let spec = *alg.spec();
        let w = Weights::new(qr(1, 3), qr(5, 4));
        let trunc = Truncation::new(2, 1);
        let standard = casimir_matrix(Representation::TensorFields, &alg, &w, trunc).unwrap();
        let e = shuffled_minus_basis(&spec, &mut rng);
        let pkg = alg.dual_bases_with(e, spec.h0_basis()).unwrap();
        let space = Arc::new(SymbolSpace::new(spec.d, trunc));
        let shuffled = casimir_matrix_with(Representation::TensorFields, &alg, &pkg, &w, space.clone()).unwrap();
        assert_eq!(standard.matrix, shuffled.matrix, "{fam}");
        let standard_ops = casimir_matrix(Representation::DiffOps, &alg, &w, trunc).unwrap();
        let shuffled_ops = casimir_matrix_with(Representation::DiffOps, &alg, &pkg, &w, space).unwrap();
        assert_eq!(standard_ops.matrix, shuffled_ops.matrix, "{fam}");
    }
}

#[test]
fn casimir_difference_is_n_c() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        for (l, m) in [(q(0), q(0)), (qr(1, 2), qr(1, 2)), (qr(1, 3), qr(2, 3)), (qr(-1, 4), q(2))] {
            let w = Weights::new(l, m);
            let trunc = Truncation::new(2, 1);
            let ct = casimir_matrix(Representation::TensorFields, &alg, &w, trunc).unwrap();
            let cd = casimir_matrix(Representation::DiffOps, &alg, &w, trunc).unwrap();
            let nc = n_c_matrix(&alg, &w, trunc).unwrap();
            assert_eq!(cd.matrix.sub(&ct.matrix), nc.matrix, "{fam}");
        }
    }
}

#[test]
fn n_c_block_structure() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        let w = Weights::new(qr(1, 5), qr(3, 5));
        let nc = n_c_matrix(&alg, &w, Truncation::new(3, 2)).unwrap();
        let space = &nc.space;
        for (r, c, _) in nc.matrix.triplets() {
            let (kc, mc) = space.block_of(c);
            assert_eq!(space.block_of(r), (kc - 1, mc - 1), "{fam}");
        }
        for ((_, m), range) in space.blocks() {
            if m == 0 {
                assert!(range.clone().all(|j| nc.matrix.column(j).is_empty()));
            }
        }
        assert!(!nc.matrix.is_zero());
    }
}

#[test]
fn casimir_assembles_at_any_truncation() {
    // intermediates are untruncated and the Casimir never raises either degree
    let alg = Algebra::new(make_algebra(Family::Symplectic, 2).unwrap());
    let w = Weights::new(qr(1, 2), qr(1, 2));
    for (k, m) in [(0, 0), (1, 0), (0, 3), (2, 2)] {
        assert!(casimir_matrix(Representation::DiffOps, &alg, &w, Truncation::new(k, m)).is_ok());
    }
    let space = SymbolSpace::new(3, Truncation::new(1, 1));
    let p = PhasePoly::x_var(3, 0).mul(&PhasePoly::x_var(3, 1));
    assert!(space.to_vec(&p).is_err());
}

#[test]
fn family_dispatch() {
    let s = make_algebra(Family::Orthogonal, 4).unwrap();
    for dg in admissible_diagrams(&s, 2) {
        assert_eq!(eigenvalue(&dg, &s).unwrap(), eigenvalue_orthogonal(&dg, 4).unwrap());
    }
}
