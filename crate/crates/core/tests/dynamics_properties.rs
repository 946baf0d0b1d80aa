use bricklayer::dynamics::{
    effective_growth, evolve, measured_robustness, predicted_growth, MutationParams, PopulationState,
};
use bricklayer::graphs::{bricklayer, hamming_ball, induced_subgraph, Adjacency, LabeledGraph};
use bricklayer::spectra::{principal_eigenvalue, robustness};

fn test_graphs() -> Vec<LabeledGraph> {
    vec![
        bricklayer(3, 2).unwrap(),
        bricklayer(5, 2).unwrap(),
        bricklayer(12, 2).unwrap(),
        hamming_ball(4, 2).unwrap(),
        bricklayer(7, 3).unwrap(),
        bricklayer(40, 2).unwrap(),
        bricklayer(64, 2).unwrap(),
    ]
}

fn l2_unit(v: &[f64]) -> Vec<f64> {
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / s).collect()
}

#[test]
fn measured_robustness_converges_to_eigenvalue_ratio() {
    let p = MutationParams::default();
    for g in test_graphs() {
        let (d, a) = (g.dimension(), g.alphabet());
        let (s, tr) = evolve(&g, d, a, &p, &PopulationState::uniform(g.order()), 10_000).unwrap();
        let measured = measured_robustness(&g, d, a, &s).unwrap();
        assert!((measured - robustness(&g).unwrap()).abs() < 1e-6, "{g:?}");
        let lambda = principal_eigenvalue(&g).unwrap().lambda;
        assert!((effective_growth(&tr).unwrap() - predicted_growth(lambda, d, a, &p)).abs() < 1e-8);
    }
}

#[test]
fn limit_shape_ignores_rate_and_fitness() {
    for g in [bricklayer(5, 2).unwrap(), hamming_ball(4, 2).unwrap(), bricklayer(6, 3).unwrap()] {
        let (d, a) = (g.dimension(), g.alphabet());
        let reference = {
            let p = MutationParams { mu: 0.01, f: 1.0 };
            evolve(&g, d, a, &p, &PopulationState::uniform(g.order()), 20_000).unwrap().0.normalized()
        };
        for mu in [0.001, 0.01, 0.05] {
            for f in [0.5, 1.0, 2.0] {
                let t = (200.0 / mu) as u64;
                let p = MutationParams { mu, f };
                let s = evolve(&g, d, a, &p, &PopulationState::uniform(g.order()), t).unwrap().0;
                for (x, y) in s.normalized().iter().zip(&reference) {
                    assert!((x - y).abs() < 1e-6, "mu={mu} f={f}");
                }
            }
        }
    }
}

#[test]
fn trajectory_is_shifted_power_iteration() {
    let g = bricklayer(11, 2).unwrap();
    let (d, a, mu) = (g.dimension(), g.alphabet(), 0.02);
    let start: Vec<f64> = (0..g.order()).map(|i| 1.0 + i as f64).collect();
    let n0 = PopulationState::from_vector(start.clone()).unwrap();
    let p = MutationParams { mu, f: 1.3 };
    let (s, _) = evolve(&g, d, a, &p, &n0, 300).unwrap();
    let stay = 1.0 - mu * (d * (a - 1)) as f64;
    let mut x = start;
    for _ in 0..300 {
        let y: Vec<f64> =
            (0..g.order()).map(|i| stay * x[i] + mu * g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>()).collect();
        let total: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / total).collect();
    }
    for (u, v) in s.normalized().iter().zip(&x) {
        assert!((u - v).abs() < 1e-12);
    }
}

#[test]
fn limit_is_the_perron_vector() {
    let p = MutationParams::default();
    for g in test_graphs() {
        let (d, a) = (g.dimension(), g.alphabet());
        let s = evolve(&g, d, a, &p, &PopulationState::uniform(g.order()), 10_000).unwrap().0;
        let x = l2_unit(&s.n);
        let ax: Vec<f64> = (0..g.order()).map(|i| g.neighbors(i).iter().map(|&j| x[j]).sum()).collect();
        let lambda: f64 = x.iter().zip(&ax).map(|(u, v)| u * v).sum();
        let residual = x.iter().zip(&ax).map(|(u, v)| (v - lambda * u).powi(2)).sum::<f64>().sqrt();
        assert!(residual < 1e-6);
    }
}

#[test]
fn disconnected_network_concentrates_on_best_component() {
    // A square {0,1,2,3} and a lone edge {12,14} in Q4.
    let g = induced_subgraph(4, 2, &[0, 1, 2, 3, 12, 14]).unwrap();
    let p = MutationParams::default();
    let n0 = PopulationState::uniform(g.order());
    let (s, _) = evolve(&g, 4, 2, &p, &n0, 20_000).unwrap();
    let shape = s.normalized();
    assert!(shape[4] + shape[5] < 1e-6);
    assert!(shape[..4].iter().all(|x| (x - 0.25).abs() < 1e-6));
    assert!((measured_robustness(&g, 4, 2, &s).unwrap() - 0.5).abs() < 1e-6);
}
