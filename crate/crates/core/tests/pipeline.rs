use nilmetric::analysis::{
    analyze, verify_report, InputDescriptor, RunConfig, SolverMode, Verdict, VerdictReport,
};
use nilmetric::graphs::{build_algebra, classify_graph, parse_graph, Prediction};
use nilmetric::obstructions::{
    heisenberg_reiter_obstruction, theta_ideal, verify_certificate, ObstructionCertificate,
};
use nilmetric::parabolic::specs_for_type;
use nilmetric::parabolic::{
    build_nilradical, classify_nilradical, NilradicalPrediction, RefuteReason,
};
use nilmetric::roots::Family;
use nilmetric::scan::classical_types;

#[test]
fn b4_theta_of_epsilon_split_is_the_center() {
    let pn = build_nilradical(&"B4:g2".parse().unwrap());
    let split = pn.epsilon_split().expect("type B has an epsilon split");
    assert_eq!(split.parts().len(), 3);
    let theta = theta_ideal(&pn.algebra, &split).unwrap();
    assert!(!theta.is_zero());
    assert_eq!(theta, pn.algebra.center());
}

#[test]
fn heisenberg_reiter_on_two_step_c_and_d_nilradicals() {
    let mut seen = 0;
    for t in classical_types(5)
        .into_iter()
        .filter(|t| matches!(t.family, Family::C | Family::D))
    {
        for spec in specs_for_type(t, false) {
            let pn = build_nilradical(&spec);
            let reason = classify_nilradical(&spec);
            if pn.k != 2 || reason.admits() {
                continue;
            }
            assert_eq!(
                reason,
                NilradicalPrediction::Refutes {
                    reason: RefuteReason::HeisenbergReiter
                }
            );
            let split = pn.epsilon_split().expect("C and D have an epsilon split");
            let [v1, v2] = split.parts() else {
                panic!("{spec}: expected two parts");
            };
            let cert = heisenberg_reiter_obstruction(&pn.algebra, v1, v2)
                .unwrap()
                .unwrap_or_else(|| panic!("{spec}: no certificate"));
            assert!(matches!(
                cert,
                ObstructionCertificate::HeisenbergReiter { .. }
            ));
            verify_certificate(&pn.algebra, &cert).unwrap();
            seen += 1;
        }
    }
    assert!(seen >= 4, "only {seen} cases");
}

#[test]
fn triangle_edge_list_admits() {
    let g = parse_graph("# triangle\na b\nb c\nc a\n").unwrap();
    assert_eq!(g.edge_count(), 3);
    assert_eq!(classify_graph(&g).prediction, Prediction::Admits);
    let ga = build_algebra(&g);
    let a = analyze(&ga.algebra, &[], &RunConfig::default(), SolverMode::Always).unwrap();
    assert!(a.verdict.admits());
}

#[test]
fn reports_are_deterministic_and_verify() {
    let cfg = RunConfig::default();
    for spec in ["B3:g3", "G2:g1", "C3:g3", "E6:g3", "A4:g1,g3"] {
        let pn = build_nilradical(&spec.parse().unwrap());
        let registered = pn.registered_decompositions();
        let make = || {
            let a = analyze(
                &pn.algebra,
                &registered,
                &cfg,
                SolverMode::AfterObstructions,
            )
            .unwrap();
            let r = VerdictReport::new(
                InputDescriptor {
                    kind: "parabolic".into(),
                    source: spec.into(),
                },
                &cfg,
                &pn.algebra,
                a,
            );
            serde_json::to_string(&r).unwrap()
        };
        let first = make();
        assert_eq!(first, make(), "{spec}");
        let back: VerdictReport = serde_json::from_str(&first).unwrap();
        verify_report(&back).unwrap_or_else(|e| panic!("{spec}: {e}"));
    }
}

#[test]
fn verdict_does_not_depend_on_the_seed() {
    for seed in [1, 2, 3, 0xdead_beef] {
        let cfg = RunConfig {
            seed,
            ..RunConfig::default()
        };
        let pn = build_nilradical(&"G2:g1".parse().unwrap());
        let a = analyze(&pn.algebra, &[], &cfg, SolverMode::Always).unwrap();
        assert!(matches!(a.verdict, Verdict::Admits { .. }));
    }
}

#[test]
fn obstructions_only_beyond_the_cap() {
    let cfg = RunConfig {
        solver_dim_cap: 10,
        ..RunConfig::default()
    };
    let pn = build_nilradical(&"E6:g4".parse().unwrap());
    let a = analyze(
        &pn.algebra,
        &pn.registered_decompositions(),
        &cfg,
        SolverMode::Always,
    )
    .unwrap();
    assert!(a.solver.is_none());
    assert!(matches!(a.verdict, Verdict::Refuted { .. }));
}
