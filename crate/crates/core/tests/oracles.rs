mod common;

use common::{brute_min, doubly_resolves_all, floyd_warshall, random_corpus, resolves, strong_resolves_all};
use mdim::solvers::{solve_min, solve_min_strong_checked, solve_min_strong_vc, Budget};
use mdim::witnesses::{Kind, Method};
use mdim::{Family, SolveOptions};

fn unlimited() -> SolveOptions {
    SolveOptions::with_budget(Budget::unlimited())
}

#[test]
fn naive_and_pruned_agree_with_enumeration() {
    for (i, g) in random_corpus(30).iter().enumerate() {
        let fw = floyd_warshall(g);
        let n = g.order();
        let reference = [
            (Kind::Resolving, brute_min(n, 1, |s| resolves(&fw, s))),
            (Kind::Doubly, brute_min(n, 2, |s| doubly_resolves_all(&fw, s))),
            (Kind::Strong, brute_min(n, 1, |s| strong_resolves_all(&fw, s))),
        ];
        for (kind, expected) in reference {
            let naive = solve_min(kind, g, Method::Naive, &unlimited()).unwrap();
            let pruned = solve_min(kind, g, Method::Pruned, &unlimited()).unwrap();
            assert_eq!(naive.optimum, expected, "graph {i} {kind} naive");
            assert_eq!(pruned.optimum, expected, "graph {i} {kind} pruned");
            assert_eq!(naive.witness, pruned.witness, "graph {i} {kind} witness");
        }
        let vc = solve_min_strong_vc(g, &unlimited()).unwrap();
        assert_eq!(vc.optimum, reference[2].1, "graph {i} vc");
    }
}

#[test]
fn checked_strong_solver_returns_both_routes() {
    for g in random_corpus(12) {
        let (direct, vc) = solve_min_strong_checked(&g, Method::Naive, &unlimited()).unwrap();
        assert_eq!(direct.optimum, vc.optimum);
        assert_eq!(vc.method, Method::VcReduction);
    }
}

#[test]
fn parallel_search_returns_the_sequential_witness() {
    let par = SolveOptions {
        parallel: true,
        ..unlimited()
    };
    let mut graphs = random_corpus(15);
    graphs.push(Family::Lcg { n: 4, k: 2 }.build().unwrap());
    graphs.push(Family::Lcg { n: 3, k: 3 }.build().unwrap());
    for g in &graphs {
        for kind in Kind::ALL {
            let seq = solve_min(kind, g, Method::Pruned, &unlimited()).unwrap();
            let p = solve_min(kind, g, Method::Pruned, &par).unwrap();
            assert_eq!(seq.optimum, p.optimum);
            assert_eq!(seq.witness, p.witness, "{kind}");
        }
    }
}

#[test]
fn family_pruning_does_not_change_small_optima() {
    let fam = SolveOptions {
        family_pruning: true,
        ..unlimited()
    };
    for f in [Family::Lcg { n: 3, k: 2 }, Family::Lcg { n: 4, k: 2 }] {
        let g = f.build().unwrap();
        for kind in Kind::ALL {
            let plain = solve_min(kind, &g, Method::Pruned, &unlimited()).unwrap();
            let restricted = solve_min(kind, &g, Method::Pruned, &fam).unwrap();
            assert_eq!(plain.optimum, restricted.optimum, "{f} {kind}");
            assert!(restricted.stats.family_pruned);
            assert!(kind.verify(&mdim::apsp(&g).unwrap(), &restricted.witness).unwrap());
        }
    }
}

#[test]
fn repeated_solves_are_identical() {
    let g = Family::Lcg { n: 4, k: 2 }.build().unwrap();
    for kind in Kind::ALL {
        let a = solve_min(kind, &g, Method::Pruned, &unlimited()).unwrap();
        let b = solve_min(kind, &g, Method::Pruned, &unlimited()).unwrap();
        assert_eq!(a.witness, b.witness);
    }
}
