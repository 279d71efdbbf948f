use proptest::prelude::*;

use nilmetric::analysis::{analyze, RunConfig, SolverMode};
use nilmetric::forms::{
    check_orthogonality_relations, decide_nondegenerate, invariant_form_space, is_invariant,
    verify_form, DecisionPolicy, SymForm,
};
use nilmetric::graphs::{build_algebra, Graph};
use nilmetric::lie::{BracketRecord, StructureConstantsFile, TermRecord};
use nilmetric::linalg::{dot, frac, int};
use nilmetric::{free_nilpotent, LieAlgebra, Rational, Subspace};

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), 0..=max)
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn span(n: usize, vs: &[Vec<i64>]) -> Subspace {
    Subspace::span(n, vs.iter().map(|v| to_q(v))).unwrap()
}

fn metric_algebras() -> Vec<(LieAlgebra, SymForm)> {
    [free_nilpotent(3, 2), free_nilpotent(2, 3)]
        .into_iter()
        .map(|g| {
            let w = decide_nondegenerate(&invariant_form_space(&g), &DecisionPolicy::default())
                .witness()
                .cloned()
                .unwrap();
            (g, w)
        })
        .collect()
}

/// `g` with its basis reordered by `perm` (new index of old basis vector i).
fn relabel(g: &LieAlgebra, perm: &[usize]) -> LieAlgebra {
    let file = StructureConstantsFile::from_algebra(g);
    let brackets = file
        .brackets
        .iter()
        .map(|b| {
            let (i, j) = (perm[b.i - 1] + 1, perm[b.j - 1] + 1);
            let flip = i > j;
            BracketRecord {
                i: i.min(j),
                j: i.max(j),
                terms: b
                    .terms
                    .iter()
                    .map(|t| TermRecord {
                        k: perm[t.k - 1] + 1,
                        c: if flip {
                            format!("{}", -nilmetric::linalg::parse_rational(&t.c).unwrap())
                        } else {
                            t.c.clone()
                        },
                    })
                    .collect(),
            }
        })
        .collect();
    StructureConstantsFile {
        dim: file.dim,
        labels: None,
        brackets,
    }
    .to_algebra()
    .unwrap()
}

fn triangles_and_points(g: &Graph) -> bool {
    g.components().iter().all(|c| {
        let inner = g.edges().iter().filter(|(a, _)| c.contains(a)).count();
        (c.len() == 1 && inner == 0) || (c.len() == 3 && inner == 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_dimension_law(a in vectors(6, 5), b in vectors(6, 5)) {
        let (u, w) = (span(6, &a), span(6, &b));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(u.contains(&cap).unwrap() && w.contains(&cap).unwrap());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&w).unwrap());
    }

    #[test]
    fn annihilator_is_orthogonal(a in vectors(5, 4)) {
        let u = span(5, &a);
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim() + u.dim(), 5);
        for x in u.basis_vectors() {
            for y in ann.basis_vectors() {
                prop_assert_eq!(dot(x, y), int(0));
            }
        }
    }

    #[test]
    fn bracket_antisymmetric_and_bilinear(
        x in prop::collection::vec(-5i64..=5, 5),
        y in prop::collection::vec(-5i64..=5, 5),
        z in prop::collection::vec(-5i64..=5, 5),
        c in -5i64..=5,
    ) {
        let g = free_nilpotent(2, 3);
        let (x, y, z) = (to_q(&x), to_q(&y), to_q(&z));
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| a == &-b));
        let ycz: Vec<Rational> = y.iter().zip(&z).map(|(a, b)| a + int(c) * b).collect();
        let lhs = g.bracket(&x, &ycz).unwrap();
        let xz = g.bracket(&x, &z).unwrap();
        for k in 0..5 {
            prop_assert_eq!(&lhs[k], &(&xy[k] + int(c) * &xz[k]));
        }
    }

    #[test]
    fn scaled_witness_is_still_a_metric(p in 1i64..50, q in 1i64..50, neg in any::<bool>()) {
        let s = if neg { frac(-p, q) } else { frac(p, q) };
        for (g, w) in metric_algebras() {
            prop_assert!(verify_form(&g, &w.scale(&s)).is_ok());
        }
    }

    #[test]
    fn form_space_members_are_invariant(coeffs in prop::collection::vec(-9i64..=9, 8)) {
        for g in [free_nilpotent(3, 2), free_nilpotent(2, 2), LieAlgebra::abelian(3)] {
            let space = invariant_form_space(&g);
            let c: Vec<Rational> = coeffs.iter().cycle().take(space.dim()).map(|&x| int(x)).collect();
            prop_assert!(is_invariant(&g, &space.combination(&c)));
        }
    }

    #[test]
    fn orthogonality_on_random_subspaces(a in vectors(5, 4), b in vectors(6, 5)) {
        let algs = metric_algebras();
        let (g23, w23) = &algs[1];
        let (g32, w32) = &algs[0];
        for (g, w, v) in [(g23, w23, span(5, &a)), (g32, w32, span(6, &b))] {
            let r = check_orthogonality_relations(g, w, &v).unwrap();
            prop_assert!(r.all_pass());
        }
    }

    #[test]
    fn relabelling_preserves_the_verdict(seed in 0u64..1000) {
        let g = free_nilpotent(3, 2);
        let mut perm: Vec<usize> = (0..6).collect();
        let mut s = seed;
        for i in (1..6).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(invariant_form_space(&h).dim(), invariant_form_space(&g).dim());
        let cfg = RunConfig::default();
        let a = analyze(&h, &[], &cfg, SolverMode::Always).unwrap();
        prop_assert!(a.verdict.admits());
    }

    #[test]
    fn graph_dimensions_and_verdicts(n in 1usize..=5, mask in any::<u16>()) {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        let graph = Graph::unlabeled(n, &edges).unwrap();
        let ga = build_algebra(&graph);
        let e = edges.len();
        prop_assert_eq!(ga.algebra.dim(), n + e);
        prop_assert_eq!(ga.algebra.commutator().dim(), e);
        prop_assert_eq!(ga.algebra.center().dim(), graph.isolated().len() + e);
        let a = analyze(&ga.algebra, &[], &RunConfig::default(), SolverMode::Always).unwrap();
        prop_assert_eq!(a.verdict.admits(), triangles_and_points(&graph));
        prop_assert!(!a.soundness_conflict);
    }
}
