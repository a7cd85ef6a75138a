//! Acceptance checks, one PASS/FAIL line each, with a wall-clock budget per check.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eqquant::algebra::{make_algebra, Algebra, Family, GradedElement};
use eqquant::casimir::{casimir_matrix, check_block_spectrum, eigenvalue_orthogonal, eigenvalue_symplectic, n_c_matrix, Representation};
use eqquant::critical::{critical_delta, critical_delta_by_root, critical_set};
use eqquant::ferrers::{admissible_diagrams, dim_irrep, dominance_lt, tilde_tree};
use eqquant::poly::{Monomial, PhasePoly};
use eqquant::quantization::{gamma_tree, quantization_matrix, verify_equivariance};
use eqquant::rational::{binomial, q, qr, Q};
use eqquant::space::Truncation;
use eqquant::symbol::{lie_diffop, lie_tensor, Weights};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILIES: [Family; 2] = [Family::Orthogonal, Family::Symplectic];

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: eqquant::Error) -> String {
    e.to_string()
}

fn c1_collisions() -> Result<String, String> {
    let d = |s: &str| s.parse().unwrap();
    let o = (
        eigenvalue_orthogonal(&d("6,2,2,2"), 6).map_err(err)?.eval(&q(0)),
        eigenvalue_orthogonal(&d("6,4"), 6).map_err(err)?.eval(&q(0)),
    );
    let s = (
        eigenvalue_symplectic(&d("6,2,2,2"), 5).map_err(err)?.eval(&q(0)),
        eigenvalue_symplectic(&d("6,4"), 5).map_err(err)?.eval(&q(0)),
    );
    ensure(o.0 == o.1 && o.0 == qr(36, 5), || format!("orthogonal values {} and {}", o.0, o.1))?;
    ensure(s.0 == s.1 && s.0 == q(6), || format!("symplectic values {} and {}", s.0, s.1))?;
    Ok("o: 36/5, sp: 6".into())
}

fn c2_spectra() -> Result<String, String> {
    let mut blocks = 0;
    for fam in FAMILIES {
        for n in 2..=3 {
            let alg = Algebra::new(make_algebra(fam, n).map_err(err)?);
            for delta in [q(0), qr(1, 2), q(1), q(3)] {
                let w = Weights::new(q(0), delta.clone());
                let c = casimir_matrix(Representation::TensorFields, &alg, &w, Truncation::new(3, 2)).map_err(err)?;
                for k in 0..=3 {
                    for m in 0..=2 {
                        let r = check_block_spectrum(&c, k, m, &delta).map_err(err)?;
                        ensure(r.matches(), || format!("{fam} n={n} delta={delta} block ({k},{m}): {r:?}"))?;
                        blocks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{blocks} blocks"))
}

fn c3_casimir_relation() -> Result<String, String> {
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).map_err(err)?);
        for (l, m) in [(q(0), q(0)), (qr(1, 2), qr(1, 2)), (qr(1, 3), qr(2, 3))] {
            let w = Weights::new(l, m);
            let trunc = Truncation::new(2, 2);
            let ct = casimir_matrix(Representation::TensorFields, &alg, &w, trunc).map_err(err)?;
            let cd = casimir_matrix(Representation::DiffOps, &alg, &w, trunc).map_err(err)?;
            let nc = n_c_matrix(&alg, &w, trunc).map_err(err)?;
            ensure(cd.matrix.sub(&ct.matrix) == nc.matrix, || format!("{fam} {w:?}"))?;
        }
    }
    Ok("6 cases, K=2 M=2".into())
}

fn c4_dual_bases() -> Result<String, String> {
    for fam in FAMILIES {
        for n in 2..=5 {
            let s = make_algebra(fam, n).map_err(err)?;
            let alg = Algebra::new(s);
            let p = alg.dual_bases().map_err(err)?;
            ensure(alg.killing_form(&p.euler, &p.euler) == q(2 * s.d as i64), || format!("{fam} n={n}: beta(E,E)"))?;
            let mut sum = GradedElement::zero(n);
            for (e, eps) in p.e.iter().zip(&p.eps) {
                sum = sum.add(&s.bracket(e, eps).map_err(err)?);
            }
            ensure(sum == p.euler.scale(&qr(-1, 2)), || format!("{fam} n={n}: sum of brackets"))?;
        }
    }
    Ok("n = 2..5".into())
}

fn c5_dimension_sums() -> Result<String, String> {
    for fam in FAMILIES {
        for n in 2..=6 {
            let s = make_algebra(fam, n).map_err(err)?;
            for k in 0..=6 {
                let mut total = 0u64;
                for dg in admissible_diagrams(&s, k) {
                    total += dim_irrep(&dg, n).map_err(err)?;
                }
                let expected = binomial((s.d + k - 1) as u64, k as u64);
                ensure(expected == total.into(), || format!("{fam} n={n} k={k}: {total} vs {expected}"))?;
            }
        }
    }
    Ok("n <= 6, k <= 6".into())
}

fn c6_critical_positivity() -> Result<String, String> {
    let mut values = 0;
    for fam in FAMILIES {
        for n in 2..=5 {
            let s = make_algebra(fam, n).map_err(err)?;
            for c in critical_set(&s, 6).map_err(err)? {
                ensure(c.delta > Q::zero(), || format!("{fam} n={n}: {}", c.delta))?;
                for (u, l) in &c.witnesses {
                    ensure(critical_delta(u, l, &s).as_ref() == Some(&c.delta), || format!("{fam} n={n} {u}/{l}"))?;
                    let root = critical_delta_by_root(u, l, &s).map_err(err)?;
                    ensure(root.as_ref() == Some(&c.delta), || format!("{fam} n={n} {u}/{l}: root {root:?}"))?;
                }
                values += 1;
            }
        }
    }
    Ok(format!("{values} values"))
}

fn c7_quantization() -> Result<String, String> {
    let mut checked = 0;
    for fam in FAMILIES {
        let alg = Algebra::new(make_algebra(fam, 2).map_err(err)?);
        let w = Weights::new(qr(1, 2), qr(1, 2));
        let map = quantization_matrix(&alg, &w, Truncation::new(2, 2)).map_err(err)?;
        ensure(map.is_unipotent_triangular(), || format!("{fam}: not unipotent"))?;
        let r = verify_equivariance(&map).map_err(err)?;
        ensure(r.violations.is_empty(), || format!("{fam}: {} violations", r.violations.len()))?;
        checked += r.checked;
    }
    Ok(format!("{checked} pairs, 0 violations"))
}

fn c8_trees() -> Result<String, String> {
    let mut edges = 0;
    for fam in FAMILIES {
        for n in 2..=4 {
            let s = make_algebra(fam, n).map_err(err)?;
            for k in 0..=4 {
                for root in admissible_diagrams(&s, k) {
                    let t = tilde_tree(&root, k, &s).map_err(err)?;
                    for (l, parent, child) in &t.edges {
                        ensure(dominance_lt(child, parent), || format!("{fam} n={n} {root}: level {l} {parent} -> {child}"))?;
                        edges += 1;
                    }
                }
            }
        }
        let s = make_algebra(fam, 2).map_err(err)?;
        let alg = Algebra::new(s);
        for w in [Weights::new(q(0), q(0)), Weights::new(qr(1, 3), qr(1, 2)), Weights::new(qr(-2, 5), q(1))] {
            for k in 0..=2 {
                for root in admissible_diagrams(&s, k) {
                    let g = gamma_tree(&root, k, &alg, &w).map_err(err)?;
                    let t = tilde_tree(&root, k, &s).map_err(err)?;
                    for (l, found) in g.content.iter().enumerate() {
                        ensure(found.keys().all(|d| t.levels[l].contains(d)), || format!("{fam} {root}@{k} level {l}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{edges} edges"))
}

fn random_poly(rng: &mut ChaCha8Rng, d: usize) -> PhasePoly {
    let mut p = PhasePoly::zero(d);
    for _ in 0..5 {
        let mut x = vec![0u8; d];
        let mut xi = vec![0u8; d];
        for _ in 0..rng.gen_range(0..=2) {
            x[rng.gen_range(0..d)] += 1;
        }
        for _ in 0..rng.gen_range(0..=3) {
            xi[rng.gen_range(0..d)] += 1;
        }
        p.add_term(Monomial::from_parts(&x, &xi), qr(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    p
}

fn c9_affine() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = 0;
    for fam in FAMILIES {
        for n in 2..=3 {
            let s = make_algebra(fam, n).map_err(err)?;
            for x in s.minus_basis().into_iter().chain(s.zero_basis()) {
                let field = s.realize_vector_field(&x).map_err(err)?;
                for _ in 0..3 {
                    let p = random_poly(&mut rng, s.d);
                    let lambda = qr(rng.gen_range(-7..=7), rng.gen_range(1..=4));
                    let mu = qr(rng.gen_range(-7..=7), rng.gen_range(1..=4));
                    let lhs = lie_diffop(&field, &p, &lambda, &mu);
                    ensure(lhs == lie_tensor(&field, &p, &(&mu - &lambda)), || format!("{fam} n={n}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn main() -> ExitCode {
    let checks: [(&str, Check, Duration); 9] = [
        ("eigenvalue collisions", c1_collisions, Duration::from_millis(1)),
        ("tensor Casimir spectra", c2_spectra, Duration::from_secs(60)),
        ("Casimir difference", c3_casimir_relation, Duration::from_secs(10)),
        ("dual bases", c4_dual_bases, Duration::from_secs(1)),
        ("dimension sums", c5_dimension_sums, Duration::from_secs(5)),
        ("critical positivity", c6_critical_positivity, Duration::from_secs(30)),
        ("quantization", c7_quantization, Duration::from_secs(120)),
        ("tree monotonicity", c8_trees, Duration::from_secs(30)),
        ("affine coincidence", c9_affine, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= *budget => format!("PASS {}: {name} ({detail}; {elapsed:.2?} of {budget:?})", i + 1),
            Ok(detail) => format!("FAIL {}: {name} over budget ({detail}; {elapsed:.2?} of {budget:?})", i + 1),
            Err(why) => format!("FAIL {}: {name}: {why} ({elapsed:.2?})", i + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance checks failed");
        ExitCode::FAILURE
    }
}
