//! Acceptance suite: one line per criterion, then a single assertion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coeffective::builder::{build_extended_complex, middle_operator, StructureInput};
use coeffective::exterior::{contract, Form};
use coeffective::homology::cohomology;
use coeffective::models::{cpn, hopf4, kodaira_thurston, torus, torus7_g2};
use coeffective::pipeline::{les_ring, les_structure};
use coeffective::report::{report, ReportConfig};
use coeffective::structures::{lepage_decompose, pairing_gram, standard_g2, standard_symplectic, MapClass};
use coeffective::sweeps::{local_exactness, symbol_sweep, Shape, StrandClass};
use coeffective::{Execution, Rational};

const LIMIT_CPN: Duration = Duration::from_secs(1);
const LIMIT_G2_PROFILE: Duration = Duration::from_secs(1);
const LIMIT_SYMPLECTIC_LES: Duration = Duration::from_secs(5);
const LIMIT_G2_LES: Duration = Duration::from_secs(10);
const LIMIT_SYMBOL: Duration = Duration::from_secs(60);
const LIMIT_LOCAL: Duration = Duration::from_secs(120);
const LIMIT_STRUCTURAL: Duration = Duration::from_secs(60);

const SYMBOL_SAMPLES: usize = 100;
const SYMBOL_SEED: u64 = 7;
const LEPAGE_SAMPLES: usize = 1000;
const RESCALINGS: [i64; 2] = [2, -3];

fn builtins() -> Vec<(&'static str, StructureInput)> {
    vec![
        ("torus(2)", torus(2).unwrap()),
        ("torus(3)", torus(3).unwrap()),
        ("hopf4", hopf4()),
        ("kodaira_thurston", kodaira_thurston()),
        ("torus7_g2", torus7_g2()),
    ]
}

fn criterion_cpn() {
    for n in [2usize, 3] {
        let rep = les_ring(&cpn(n).unwrap()).unwrap();
        let mut expected = vec![0; 2 * n + 2];
        expected[0] = 1;
        expected[2 * n + 1] = 1;
        assert_eq!(rep.predicted, expected, "CP^{n} predicted");
        assert_eq!(rep.direct.as_ref().unwrap(), &expected, "CP^{n} direct");
        assert!(rep.all_match());
    }
}

fn criterion_g2_profile() {
    use MapClass::*;
    let g2 = standard_g2();
    let profile = g2.profile();
    assert_eq!(profile.classes(), vec![Injective, Injective, Isomorphism, Surjective, Surjective]);
    assert_eq!(profile.ranks(), vec![1, 7, 21, 7, 1]);
    let kernels: Vec<usize> = profile.entries[3..].iter().map(|e| e.kernel_dim()).collect();
    assert_eq!(kernels, vec![28, 34]);
}

fn criterion_symplectic_les() {
    for (name, input) in builtins().into_iter().filter(|(n, _)| *n != "torus7_g2") {
        let s = input.validate().unwrap();
        let rep = les_structure(&s, Execution::Parallel).unwrap();
        assert!(rep.all_match(), "{name}: {:?} vs {:?}", rep.predicted, rep.direct);
        match name {
            "torus(2)" => assert_eq!(rep.predicted, vec![1, 4, 5, 5, 4, 1]),
            "hopf4" => {
                assert_eq!(rep.predicted, vec![0, 1, 1, 0, 1, 1]);
                assert_eq!(rep.betti_twisted, vec![0; 5]);
            }
            _ => {}
        }
    }
}

fn criterion_g2_les() {
    let s = torus7_g2().validate().unwrap();
    let rep = les_structure(&s, Execution::Parallel).unwrap();
    let expected = vec![1, 7, 21, 34, 28, 28, 34, 21, 7, 1];
    assert_eq!(rep.predicted, expected);
    assert_eq!(rep.direct.unwrap(), expected);
}

fn criterion_symbol() {
    for shape in [Shape::Symplectic { n: 2 }, Shape::Symplectic { n: 3 }, Shape::Symplectic { n: 4 }, Shape::G2] {
        let sw = symbol_sweep(shape, SYMBOL_SAMPLES, SYMBOL_SEED, Execution::Parallel).unwrap();
        assert!(sw.failures.is_empty(), "{shape}: {:?}", sw.failures);
        assert_eq!(sw.exact_full, SYMBOL_SAMPLES);
        assert_eq!(sw.exact_half, SYMBOL_SAMPLES);
        assert!(sw.half_defect_dims.iter().all(|&d| d > 0), "{shape}: kernel half exact at its first position");
    }
}

fn criterion_local() {
    let symplectic = vec![StrandClass { h: 0, position: 0, dim: 1 }, StrandClass { h: 2, position: 1, dim: 1 }];
    for n in [2usize, 3] {
        let l = local_exactness(Shape::Symplectic { n }, 6, Execution::Parallel).unwrap();
        assert_eq!(l.classes, symplectic, "m = {}", 2 * n);
        assert!(l.de_rham_defects.is_empty());
    }
    let l = local_exactness(Shape::G2, 4, Execution::Parallel).unwrap();
    let positions: Vec<(usize, usize)> = l.classes.iter().map(|c| (c.position, c.dim)).collect();
    assert_eq!(positions, vec![(0, 1), (2, 1)], "{:?}", l.classes);
    assert_eq!(l.classes[0].h, 0);
    assert!(l.de_rham_defects.is_empty());
}

fn random_form<R: Rng>(rng: &mut R, m: usize, k: usize) -> Form {
    let mut f = Form::zero(m);
    let b = coeffective::exterior::basis(m);
    for &mask in b.masks(k) {
        f.add_term(mask, Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
    }
    f
}

fn criterion_structural() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, input) in builtins() {
        let s = input.validate().unwrap();
        let ec = build_extended_complex(&s).unwrap();
        assert!(ec.complex.d_squared_failure().is_none(), "{name}");
        let cal = s.calibration();
        let tau_degree = cal.middle() - cal.degree();
        for _ in 0..5 {
            let tau = random_form(&mut rng, cal.dim(), tau_degree);
            let w = cal.form().wedge(&tau).unwrap();
            assert!(middle_operator(&s, &w).unwrap().is_zero(), "{name}");
        }
        let base = cohomology(&ec.complex).dims;
        for lambda in RESCALINGS {
            let r = s.rescaled(&Rational::from_int(lambda)).unwrap();
            let ec_r = build_extended_complex(&r).unwrap();
            assert_eq!(ec_r.dims(), ec.dims(), "{name} λ={lambda}");
            assert_eq!(cohomology(&ec_r.complex).dims, base, "{name} λ={lambda}");
        }
    }
    for n in 1..=3usize {
        let cal = standard_symplectic(n).unwrap();
        let jinv = cal.inverse().unwrap();
        for k in 0..=n {
            for _ in 0..LEPAGE_SAMPLES {
                let w = random_form(&mut rng, 2 * n, k);
                let parts = lepage_decompose(&cal, &w).unwrap();
                let mut sum = Form::zero(2 * n);
                for (j, part) in parts.iter().enumerate() {
                    if k - 2 * j >= 2 {
                        assert!(contract(jinv, part).unwrap().is_zero());
                    }
                    sum = sum.add(&cal.form().pow(j).wedge(part).unwrap());
                }
                assert_eq!(sum, w);
            }
        }
    }
    let cal = standard_symplectic(2).unwrap();
    for k in 0..=2 {
        let g = pairing_gram(&cal, k).unwrap();
        assert_eq!(g.rank(), g.rows(), "Gram on Λ_⊥^{k}");
    }
}

fn criterion_determinism() {
    let cfg = ReportConfig { seed: SYMBOL_SEED, samples: 20, exec: Execution::Parallel };
    let a = report(&cfg).unwrap();
    let b = report(&cfg).unwrap();
    assert_eq!(a.markdown, b.markdown);
    assert!(a.all_match);
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn(), Option<Duration>); 8] = [
        ("1 CP^n table", criterion_cpn, Some(LIMIT_CPN)),
        ("2 G2 rank profile", criterion_g2_profile, Some(LIMIT_G2_PROFILE)),
        ("3 oracle equivalence, symplectic", criterion_symplectic_les, Some(LIMIT_SYMPLECTIC_LES)),
        ("4 oracle equivalence, G2", criterion_g2_les, Some(LIMIT_G2_LES)),
        ("5 ellipticity sweep", criterion_symbol, Some(LIMIT_SYMBOL)),
        ("6 local exactness", criterion_local, Some(LIMIT_LOCAL)),
        ("7 structural properties", criterion_structural, Some(LIMIT_STRUCTURAL)),
        ("8 determinism", criterion_determinism, None),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = outcome.is_ok() && in_time;
        let limit_text = limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        println!("criterion {name}: {} in {:.2} s{limit_text}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
