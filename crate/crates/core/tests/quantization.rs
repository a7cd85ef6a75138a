use std::collections::BTreeSet;

use eqquant::algebra::{make_algebra, Algebra, Family};
use eqquant::casimir::{casimir_matrix, Representation};
use eqquant::error::Error;
use eqquant::ferrers::{admissible_diagrams, tilde_tree};
use eqquant::linalg::{sv_scale, SparseVec};
use eqquant::quantization::{
    eigen_decompose, gamma_tree, quantization_matrix, quantize_symbol, verify_equivariance, Quantizer,
};
use eqquant::rational::{q, qr, Q};
use eqquant::space::Truncation;
use eqquant::symbol::Weights;
use num_traits::One;

const FAMILIES: [Family; 2] = [Family::Orthogonal, Family::Symplectic];

#[test]
fn projectors_are_idempotent_orthogonal_and_complete() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        let dec = eigen_decompose(&alg, &qr(1, 3), Truncation::new(2, 1)).unwrap();
        let projs = dec.projectors();
        let dim = dec.space().dim();
        let mut sum = eqquant::linalg::SparseMatrix::zeros(dim, dim);
        for (i, (_, p)) in projs.iter().enumerate() {
            assert_eq!(p.mul(p), *p, "{fam}");
            for (j, (_, r)) in projs.iter().enumerate() {
                if i != j {
                    assert!(p.mul(r).is_zero(), "{fam}");
                }
            }
            sum = sum.add(p);
        }
        assert_eq!(sum, eqquant::linalg::SparseMatrix::identity(dim));
        for (v, p) in &projs {
            let c = &dec.casimir.matrix;
            assert_eq!(c.mul(p), p.scale(v), "{fam}");
        }
    }
}

#[test]
fn quantized_eigenvectors_are_eigenvectors() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        let w = Weights::new(qr(1, 2), qr(1, 2));
        let trunc = Truncation::new(2, 2);
        let qz = Quantizer::new(&alg, &w, trunc).unwrap();
        let cd = casimir_matrix(Representation::DiffOps, &alg, &w, trunc).unwrap();
        let space = qz.space().clone();
        for ((k, _), range) in space.blocks() {
            for j in range {
                let e = SparseVec::from([(j, Q::one())]);
                for (which, (alpha, _)) in qz.decomposition().values[k].iter().enumerate() {
                    let p = qz.decomposition().project(&e, k, which);
                    if p.is_empty() {
                        continue;
                    }
                    let hat = qz.quantize_eigenvector(&p, k, which).unwrap();
                    assert_eq!(cd.matrix.apply(&hat), sv_scale(&hat, alpha), "{fam}");
                    let via_poly = quantize_symbol(&alg, &space.to_poly(&p), &w, trunc).unwrap();
                    assert_eq!(space.to_vec(&via_poly).unwrap(), hat);
                }
            }
        }
    }
}

#[test]
fn quantization_intertwines_casimirs() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        for (l, m) in [(qr(1, 2), qr(1, 2)), (q(0), qr(1, 3)), (qr(1, 4), q(2))] {
            let w = Weights::new(l, m);
            let trunc = Truncation::new(2, 2);
            let map = quantization_matrix(&alg, &w, trunc).unwrap();
            assert!(map.is_unipotent_triangular(), "{fam}");
            let ct = casimir_matrix(Representation::TensorFields, &alg, &w, trunc).unwrap();
            let cd = casimir_matrix(Representation::DiffOps, &alg, &w, trunc).unwrap();
            assert_eq!(cd.matrix.mul(&map.matrix.matrix), map.matrix.matrix.mul(&ct.matrix), "{fam}");
        }
    }
}

#[test]
fn quantization_is_equivariant() {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).unwrap());
        let w = Weights::new(qr(1, 3), qr(1, 3));
        let mut map = quantization_matrix(&alg, &w, Truncation::new(2, 2)).unwrap();
        let report = map.verify().unwrap();
        assert!(report.checked > 0);
        assert_eq!(report.violations, vec![], "{fam}");
        assert!(map.verified_on_margin);
    }
}

#[test]
fn corrupted_map_is_caught() {
    let alg = Algebra::new(make_algebra(Family::Symplectic, 2).unwrap());
    let w = Weights::new(qr(1, 2), qr(1, 2));
    let mut map = quantization_matrix(&alg, &w, Truncation::new(2, 2)).unwrap();
    let space = map.matrix.space.clone();
    // perturb one lower-order entry of a degree 2 column
    let j = space.block(2, 0).start;
    let i = space.block(1, 0).start;
    let old = map.matrix.matrix.get(i, j);
    map.matrix.matrix.set(i, j, old + qr(1, 7));
    assert!(map.is_unipotent_triangular());
    let report = verify_equivariance(&map).unwrap();
    assert!(!report.violations.is_empty());
    assert!(!map.verify().unwrap().violations.is_empty());
    assert!(!map.verified_on_margin);
}

#[test]
fn eigenvalue_order_does_not_matter() {
    let alg = Algebra::new(make_algebra(Family::Orthogonal, 3).unwrap());
    let w = Weights::new(q(0), qr(1, 2));
    let trunc = Truncation::new(2, 1);
    let plain = Quantizer::new(&alg, &w, trunc).unwrap();
    let mut reversed = plain.clone();
    reversed.decomposition_mut().permute_values(|len| (0..len).rev().collect());
    let mut rotated = plain.clone();
    rotated.decomposition_mut().permute_values(|len| (0..len).map(|i| (i + 1) % len).collect());
    let a = plain.matrix().unwrap().matrix.matrix;
    assert_eq!(a, reversed.matrix().unwrap().matrix.matrix);
    assert_eq!(a, rotated.matrix().unwrap().matrix.matrix);
}

#[test]
fn critical_shifts_are_refused() {
    for fam in FAMILIES {
        let s = make_algebra(fam, 2).unwrap();
        let alg = Algebra::new(s);
        for c in eqquant::critical::critical_set(&s, 2).unwrap() {
            let w = Weights::new(q(0), c.delta.clone());
            let r = quantization_matrix(&alg, &w, Truncation::new(2, 1));
            assert!(matches!(r, Err(Error::Critical(_))), "{fam} {}", c.delta);
        }
    }
}

#[test]
fn non_eigenvector_is_rejected() {
    let alg = Algebra::new(make_algebra(Family::Symplectic, 2).unwrap());
    let w = Weights::new(q(0), q(0));
    let trunc = Truncation::new(2, 1);
    let qz = Quantizer::new(&alg, &w, trunc).unwrap();
    let space = qz.space().clone();
    let r = space.block(2, 0);
    // sum of two components with different eigenvalues
    let dec = qz.decomposition();
    let mut v = SparseVec::new();
    for which in 0..dec.values[2].len() {
        for j in r.clone() {
            let p = dec.project(&SparseVec::from([(j, Q::one())]), 2, which);
            if !p.is_empty() {
                eqquant::linalg::sv_add_scaled(&mut v, &p, &Q::one());
                break;
            }
        }
    }
    assert!(dec.values[2].len() > 1);
    assert!(quantize_symbol(&alg, &space.to_poly(&v), &w, trunc).is_err());
}

#[test]
fn gamma_tree_sits_inside_the_tilde_tree() {
    for fam in FAMILIES {
        for n in 2..=3 {
            let s = make_algebra(fam, n).unwrap();
            let alg = Algebra::new(s);
            for (l, m) in [(q(0), q(0)), (qr(1, 3), qr(1, 2))] {
                let nonzero = l != q(0);
                let w = Weights::new(l, m);
                for k in 1..=2 {
                    for root in admissible_diagrams(&s, k) {
                        let g = gamma_tree(&root, k, &alg, &w).unwrap();
                        let t = tilde_tree(&root, k, &s).unwrap();
                        assert_eq!(g.content[0].len(), 1);
                        for (lvl, found) in g.content.iter().enumerate() {
                            let found: BTreeSet<_> = found.keys().cloned().collect();
                            assert!(found.is_subset(&t.levels[lvl]), "{fam} n={n} {root}@{k} level {lvl}");
                        }
                        // gamma on g_1 carries a factor of lambda in these low degrees
                        if nonzero {
                            assert!(g.levels.len() >= 2, "{fam} n={n} {root}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn gamma_image_of_a_generator() {
    let s = make_algebra(Family::Symplectic, 2).unwrap();
    let alg = Algebra::new(s);
    let g = gamma_tree(&"2".parse().unwrap(), 1, &alg, &Weights::new(qr(1, 3), q(0))).unwrap();
    assert_eq!(g.levels[1].len(), 1);
    assert_eq!(g.level_diagrams(1), BTreeSet::from(["".parse().unwrap()]));
}
