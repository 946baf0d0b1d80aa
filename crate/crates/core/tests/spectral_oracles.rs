use bricklayer::graphs::{bricklayer, cartesian_product_k2, hamming_ball, hamming_graph, star, Adjacency};
use bricklayer::polynomials::{cube_minus_poly, cube_plus_poly, largest_real_root};
use bricklayer::spectra::{
    ball_eigenvalue_reduced, char_poly_eigenvalue, exact_spectrum, principal_eigenvalue, DEFAULT_TOL,
};
use proptest::prelude::*;

fn lambda(n: u64) -> f64 {
    principal_eigenvalue(&bricklayer(n, 2).unwrap()).unwrap().lambda
}

#[test]
fn first_sixteen_against_characteristic_polynomials() {
    let sqrt2 = 2f64.sqrt();
    let known = [(1, 0.0), (2, 1.0), (3, sqrt2), (4, 2.0), (6, 1.0 + sqrt2), (8, 3.0), (16, 4.0)];
    for n in 1..=16u64 {
        let g = bricklayer(n, 2).unwrap();
        let power = principal_eigenvalue(&g).unwrap().lambda;
        let exact = char_poly_eigenvalue(&g).unwrap().lambda;
        assert!((power - exact).abs() < 1e-9, "n={n}: {power} vs {exact}");
        if let Some(&(_, v)) = known.iter().find(|k| k.0 == n) {
            assert!((exact - v).abs() < 1e-9, "n={n}");
        }
    }
}

#[test]
fn three_routes_agree_on_small_graphs() {
    for n in 1..=32u64 {
        let g = bricklayer(n, 2).unwrap();
        let a = principal_eigenvalue(&g).unwrap().lambda;
        let b = char_poly_eigenvalue(&g).unwrap().lambda;
        assert!((a - b).abs() < 1e-9, "bricklayer {n}");
    }
    for (d, r) in [(1, 1), (2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2), (6, 1), (10, 1), (19, 1)] {
        let g = hamming_ball(d, r).unwrap();
        assert!(g.order() <= 32);
        let a = principal_eigenvalue(&g).unwrap().lambda;
        let b = char_poly_eigenvalue(&g).unwrap().lambda;
        let c = ball_eigenvalue_reduced(d, r, DEFAULT_TOL).unwrap().result.lambda;
        assert!((a - b).abs() < 1e-9 && (a - c).abs() < 1e-9, "ball {d},{r}: {a} {b} {c}");
    }
    for leaves in [1, 5, 19, 31] {
        let s = star(leaves).unwrap();
        let a = principal_eigenvalue(&s).unwrap().lambda;
        let b = char_poly_eigenvalue(&s).unwrap().lambda;
        assert!((a - (leaves as f64).sqrt()).abs() < 1e-9 && (a - b).abs() < 1e-9);
    }
}

#[test]
fn eigenvalue_grows_with_every_vertex() {
    let values: Vec<f64> = (1..=256).map(lambda).collect();
    for w in values.windows(2).enumerate() {
        assert!(w.1[1] - w.1[0] > 1e-10, "n={}", w.0 + 2);
    }
}

#[test]
fn doubling_adds_one() {
    for n in 1..=128 {
        let g = bricklayer(n, 2).unwrap();
        let doubled = principal_eigenvalue(&cartesian_product_k2(&g).unwrap()).unwrap().lambda;
        assert!((doubled - lambda(n) - 1.0).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn polynomial_roots_match_graphs() {
    for d in 1..=6u32 {
        let dd = d as f64;
        let minus = largest_real_root(&cube_minus_poly(d).unwrap(), 0.0, dd, 1e-13).unwrap();
        assert!((minus - lambda((1 << d) - 1)).abs() < 1e-8, "minus d={d}");
        let plus = largest_real_root(&cube_plus_poly(d).unwrap(), dd, dd + 1.0, 1e-13).unwrap();
        assert!((plus - lambda((1 << d) + 1)).abs() < 1e-8, "plus d={d}");
    }
}

#[test]
fn degree_bracket() {
    let mut graphs = Vec::new();
    for n in 1..=200 {
        graphs.push(bricklayer(n, 2).unwrap());
    }
    for n in 1..=81 {
        graphs.push(bricklayer(n, 3).unwrap());
    }
    for (d, r) in [(4, 2), (6, 3), (8, 1)] {
        graphs.push(hamming_ball(d, r).unwrap());
    }
    graphs.push(hamming_graph(3, 4).unwrap());
    for g in graphs {
        let l = principal_eigenvalue(&g).unwrap().lambda;
        assert!(g.mean_degree() - 1e-9 <= l && l <= g.max_degree() as f64 + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn spectra_interlace(n in 1u64..=20) {
        let inner = exact_spectrum(&bricklayer(n, 2).unwrap(), 1e-12).unwrap();
        let outer = exact_spectrum(&bricklayer(n + 1, 2).unwrap(), 1e-12).unwrap();
        prop_assert_eq!(inner.len() + 1, outer.len());
        // Ascending: outer[i] <= inner[i] <= outer[i+1].
        for (i, v) in inner.iter().enumerate() {
            prop_assert!(outer[i] <= v + 1e-9 && *v <= outer[i + 1] + 1e-9, "n={} i={}", n, i);
        }
    }
}
