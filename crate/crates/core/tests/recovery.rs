use pencil_svd::eigen::solve_general;
use pencil_svd::genmat::{generate, GeneratorConfig, ProblemKind, StructureKind, StructureTemplate};
use pencil_svd::kcf::predict_kcf;
use pencil_svd::matcore::seeded_rng;
use pencil_svd::pencil::Formulation;
use pencil_svd::recovery::{classify_spectrum, extract_vectors, TripletClass};

#[test]
fn template_classes_match_prediction() {
    let mut rng = seeded_rng(404);
    for (kind, f) in [
        (StructureKind::Svd, Formulation::CpfSvd),
        (StructureKind::Qsvd, Formulation::CpfQsvd),
        (StructureKind::Rsvd, Formulation::CpfRsvd),
    ] {
        for _ in 0..15 {
            let t = StructureTemplate::random(kind, 2, &mut rng);
            let sol = solve_general(&t.pencil(f).unwrap()).unwrap().structural();
            let cls = classify_spectrum(&sol, f).unwrap();
            let mut want = t.sigmas.clone();
            want.sort_by(|a, b| b.total_cmp(a));
            let expected = predict_kcf(f, &t.partition, &want).unwrap().expected_counts();
            let tag = format!("{kind:?} {:?}", t.partition);
            assert_eq!(4 * cls.regular, expected.finite_nonzero, "{tag}");
            assert_eq!(2 * cls.zero, expected.zero, "{tag}");
            assert_eq!(cls.infinite, expected.infinite, "{tag}");
            assert_eq!(cls.trivial, expected.indeterminate, "{tag}");
            assert_eq!(cls.triplets.len(), cls.regular + cls.zero + cls.infinite + cls.trivial);
            for (q, s) in cls.quadruples.iter().zip(&want) {
                assert!((q.sigma - s).abs() <= 1e-8 * s, "{tag}: {} vs {s}", q.sigma);
            }
        }
    }
}

#[test]
fn generated_problems_are_all_regular() {
    for (kind, f) in [(ProblemKind::Qsvd, Formulation::CpfQsvd), (ProblemKind::Rsvd, Formulation::CpfRsvd)] {
        let cfg = GeneratorConfig { n: 4, kappa_x: 10.0, kappa_y: 10.0, kappa_sigma: 10.0, seed: 8 };
        let g = generate(kind, &cfg).unwrap();
        let sol = solve_general(&g.pencil(f).unwrap()).unwrap();
        let cls = classify_spectrum(&sol, f).unwrap();
        assert_eq!(cls.regular, 4);
        assert_eq!(cls.triplets.len(), 4);
        for (t, s) in cls.triplets.iter().zip(g.sigma_f64()) {
            assert_eq!(t.class, TripletClass::Regular);
            assert!((t.sigma - s).abs() <= 1e-12 * s, "{} vs {s}", t.sigma);
            assert!((t.alpha / (t.beta * t.gamma) - t.sigma).abs() <= 1e-13 * t.sigma);
            assert!((t.alpha.hypot(t.gamma) - 1.0).abs() <= 1e-15);
            assert!(t.phase_residual <= 1e-12);
        }
    }
}

#[test]
fn vectors_satisfy_the_triplet_equations() {
    for (kind, f) in [(ProblemKind::Qsvd, Formulation::CpfQsvd), (ProblemKind::Rsvd, Formulation::CpfRsvd)] {
        let cfg = GeneratorConfig { n: 5, kappa_x: 10.0, kappa_y: 100.0, kappa_sigma: 100.0, seed: 31 };
        let g = generate(kind, &cfg).unwrap();
        let p = g.pencil(f).unwrap();
        let sol = solve_general(&p).unwrap();
        let cls = classify_spectrum(&sol, f).unwrap();
        for q in &cls.quadruples {
            let r = extract_vectors(&sol, q, &p).unwrap();
            let zn: f64 = r.z.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let scale = q.sigma.max(1.0) * zn.max(1.0);
            assert!(r.residual_a <= 1e-10 * scale, "{kind:?} sigma {}: {}", q.sigma, r.residual_a);
            assert!(r.residual_c <= 1e-10 * scale, "{kind:?} sigma {}: {}", q.sigma, r.residual_c);
        }
    }
}
