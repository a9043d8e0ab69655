use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coeffective::builder::{
    build_extended_complex, build_extended_complex_with, middle_operator, middle_operator_poly, twisted_differential,
    validate_structure, StructureInput,
};
use coeffective::exterior::{basis, right_wedge_map, wedge_map, Form};
use coeffective::homology::{cohomology, cohomology_with, cohomology_with_generators, cup_map, de_rham_complex};
use coeffective::models::{
    builtin, hopf4, kodaira_thurston, torus, torus7_g2, BuiltinModel, BuiltinParams, MonomialBasis, PolyForm,
    BUILTIN_NAMES,
};
use coeffective::pipeline::{cone_structure, hj_direct, les_structure};
use coeffective::qlinalg::Matrix;
use coeffective::structures::{standard_g2, standard_symplectic, Calibration};
use coeffective::{Execution, Rational};

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn lie_builtins() -> Vec<(&'static str, StructureInput)> {
    vec![
        ("torus(2)", torus(2).unwrap()),
        ("torus(3)", torus(3).unwrap()),
        ("hopf4", hopf4()),
        ("kodaira_thurston", kodaira_thurston()),
        ("torus7_g2", torus7_g2()),
    ]
}

fn random_form<R: Rng>(rng: &mut R, m: usize, k: usize) -> Form {
    let mut f = Form::zero(m);
    for &mask in basis(m).masks(k) {
        f.add_term(mask, q(rng.gen_range(-4..=4)));
    }
    f
}

fn random_poly<R: Rng>(rng: &mut R, m: usize, k: usize, h: usize) -> PolyForm {
    let mut w = PolyForm::zero(m);
    let monos = MonomialBasis::new(m, h);
    for &mask in basis(m).masks(k) {
        for e in monos.exps() {
            if rng.gen_bool(0.3) {
                w.add_term(mask, e.clone(), q(rng.gen_range(-3..=3)));
            }
        }
    }
    w
}

/// σ with F∧σ = dw found by one global solve over Λ^split ⊗ P, built from
/// polynomial wedges rather than the blade-wise inverse.
fn middle_by_global_solve(cal: &Calibration, w: &PolyForm, h: usize) -> PolyForm {
    let m = cal.dim();
    let k = cal.split_degree();
    let target = k + cal.degree();
    let monos = MonomialBasis::new(m, h - 1);
    let columns: Vec<_> = basis(m)
        .masks(k)
        .iter()
        .flat_map(|&mask| monos.exps().iter().map(move |e| (mask, e.clone())))
        .collect();
    let images: Vec<_> = columns
        .iter()
        .map(|(mask, e)| {
            let mut t = PolyForm::zero(m);
            t.add_term(*mask, e.clone(), q(1));
            t.wedge_const_left(cal.form()).to_sparse(target, h - 1)
        })
        .collect();
    let rows = basis(m).len(target) * monos.len();
    let a = Matrix::from_sparse_columns(rows, &images);
    let rhs = coeffective::qlinalg::to_dense(&w.d().to_sparse(target, h - 1), rows);
    let x = a.solve(&rhs).expect("F∧ is onto at the split degree");
    let mut sigma = PolyForm::zero(m);
    for ((mask, e), c) in columns.into_iter().zip(x) {
        if !c.is_zero() {
            sigma.add_term(mask, e, c);
        }
    }
    sigma.d()
}

#[test]
fn polynomial_middle_operator_matches_global_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (cal, h) in [(standard_symplectic(2).unwrap(), 3), (standard_symplectic(3).unwrap(), 2), (standard_g2(), 2)] {
        let mid = cal.middle();
        for _ in 0..4 {
            let w = random_poly(&mut rng, cal.dim(), mid, h);
            if w.d().is_zero() {
                continue;
            }
            let fast = middle_operator_poly(&cal, &w).unwrap();
            assert_eq!(fast, middle_by_global_solve(&cal, &w, h));
        }
    }
}

#[test]
fn middle_operator_factors_through_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, input) in lie_builtins() {
        let s = input.validate().unwrap();
        let cal = s.calibration();
        let m = cal.dim();
        for _ in 0..5 {
            let w = random_form(&mut rng, m, cal.middle());
            let tau = random_form(&mut rng, m, cal.middle() - cal.degree());
            let shifted = w.add(&cal.form().wedge(&tau).unwrap());
            assert_eq!(middle_operator(&s, &w).unwrap(), middle_operator(&s, &shifted).unwrap(), "{name}");
        }
    }
}

#[test]
fn twisted_square_vanishes_exactly_when_alpha_closed() {
    let h = hopf4();
    let d = twisted_differential(&h.model, &h.alpha, &q(2)).unwrap();
    assert!(d.windows(2).all(|w| w[1].mul(&w[0]).is_zero()));
    let broken = Form::e(4, &[2]);
    let d = twisted_differential(&h.model, &broken, &q(2)).unwrap();
    assert!(!d[1].mul(&d[0]).is_zero());
}

#[test]
fn right_wedge_is_a_chain_map() {
    for (name, input) in lie_builtins() {
        let s = input.validate().unwrap();
        let cal = s.calibration();
        let (m, p) = (cal.dim(), cal.degree());
        let plain = twisted_differential(s.model(), s.alpha(), &q(0)).unwrap();
        let twisted = twisted_differential(s.model(), s.alpha(), &q(2)).unwrap();
        for k in 0..m.saturating_sub(p) {
            let lhs = twisted[k + p].mul(&right_wedge_map(cal.form(), k).unwrap());
            let rhs = right_wedge_map(cal.form(), k + 1).unwrap().mul(&plain[k]);
            assert_eq!(lhs, rhs, "{name} at degree {k}");
        }
    }
}

#[test]
fn euler_characteristic_survives_cohomology() {
    for (name, input) in lie_builtins() {
        let ec = build_extended_complex(&input.validate().unwrap()).unwrap();
        let table = cohomology(&ec.complex);
        assert_eq!(ec.complex.euler_characteristic(), table.euler_characteristic(), "{name}");
    }
}

#[test]
fn cup_with_symplectic_form_is_associative() {
    let t = torus(2).unwrap();
    let j = t.form.clone();
    let plain = de_rham_complex(&t.model, &t.alpha, &q(0)).unwrap();
    let table = cohomology_with_generators(&plain);
    let once = cup_map(&plain, &table, &plain, &table, &wedge_map(&j, 0).unwrap(), 0, 2).unwrap();
    let twice = cup_map(&plain, &table, &plain, &table, &wedge_map(&j, 2).unwrap(), 2, 4).unwrap();
    let square = cup_map(&plain, &table, &plain, &table, &wedge_map(&j.wedge(&j).unwrap(), 0).unwrap(), 0, 4).unwrap();
    assert_eq!(twice.mul(&once), square);
    assert!(!square.is_zero());
}

#[test]
fn three_routes_agree() {
    for (name, input) in lie_builtins() {
        let s = input.validate().unwrap();
        let les = les_structure(&s, Execution::Parallel).unwrap();
        let cone = cone_structure(&s).unwrap();
        assert_eq!(les.direct.as_ref().unwrap(), &cone.dims, "{name}");
        assert_eq!(les.predicted, cone.dims, "{name}");
    }
}

#[test]
fn kodaira_thurston_first_group() {
    let s = kodaira_thurston().validate().unwrap();
    let (_, table) = hj_direct(&s, Execution::Parallel).unwrap();
    assert_eq!(table.dim(1), 3);
    assert_eq!(table.dims.len(), s.calibration().positions());
}

#[test]
fn unit_rescaling_is_identity() {
    for (name, input) in lie_builtins() {
        let s = input.validate().unwrap();
        let r = s.rescaled(&q(1)).unwrap();
        assert_eq!(r.calibration().form(), s.calibration().form(), "{name}");
        let a = build_extended_complex(&s).unwrap();
        let b = build_extended_complex(&r).unwrap();
        assert_eq!(a.complex.diffs(), b.complex.diffs(), "{name}");
    }
}

#[test]
fn every_builtin_validates() {
    for name in BUILTIN_NAMES {
        match builtin(name, &BuiltinParams::default()).unwrap() {
            BuiltinModel::Lie(input) => {
                let rep = validate_structure(&input);
                assert!(rep.valid, "{name}: {:?}", rep.failure);
            }
            BuiltinModel::Ring(ring) => assert!(ring.complex().d_squared_failure().is_none(), "{name}"),
            BuiltinModel::Polynomial(_) => {}
        }
    }
}

#[test]
fn sequential_matches_parallel() {
    for (name, input) in lie_builtins() {
        let s = input.validate().unwrap();
        let seq = build_extended_complex_with(&s, Execution::Sequential).unwrap();
        let par = build_extended_complex_with(&s, Execution::Parallel).unwrap();
        assert_eq!(seq.complex.diffs(), par.complex.diffs(), "{name}");
        assert_eq!(
            cohomology_with(&seq.complex, Execution::Sequential).dims,
            cohomology_with(&par.complex, Execution::Parallel).dims,
            "{name}"
        );
    }
}
