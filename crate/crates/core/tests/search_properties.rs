use bricklayer::graphs::{connected_components, induced_subgraph, is_connected};
use bricklayer::search::{
    canonical_form, exhaustive_max_eig, labels_of, sample_max_eig, unrestricted_max_eig, CubeGroup,
};
use bricklayer::spectra::principal_eigenvalue;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_form_is_constant_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=4u32 {
        let group = CubeGroup::new(d).unwrap();
        let full = (1u64 << (1 << d)) - 1;
        for _ in 0..200 {
            let mask = rng.random::<u64>() & full;
            let g = rng.random_range(0..group.order());
            let image = group.apply(g, mask);
            assert_eq!(group.canonical_mask(mask), group.canonical_mask(image));
            let c = canonical_form(&labels_of(mask), d).unwrap();
            assert_eq!(canonical_form(&c, d).unwrap(), c);
        }
    }
}

#[test]
fn bricklayers_are_optimal_up_to_dimension_four() {
    for d in 1..=4u32 {
        for n in 1..=(1u64 << d) {
            let r = exhaustive_max_eig(d, n).unwrap();
            assert!((r.best_lambda.unwrap() - r.bricklayer_lambda).abs() < 1e-9, "d={d} n={n}");
            assert!(r.is_bricklayer, "d={d} n={n}");
        }
    }
}

#[test]
fn connected_search_loses_nothing_in_q3() {
    for n in 1..=8 {
        let all = unrestricted_max_eig(3, n).unwrap();
        let connected = exhaustive_max_eig(3, n).unwrap();
        assert!((all.best_lambda.unwrap() - connected.best_lambda.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn disconnected_eigenvalue_is_component_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    while seen < 100 {
        let labels = labels_of(rng.random::<u64>() & 0xffff);
        if labels.is_empty() {
            continue;
        }
        let g = induced_subgraph(4, 2, &labels).unwrap();
        if is_connected(&g) {
            continue;
        }
        seen += 1;
        let best = connected_components(&g)
            .into_iter()
            .map(|comp| {
                let sub: Vec<u64> = comp.iter().map(|&i| labels[i]).collect();
                principal_eigenvalue(&induced_subgraph(4, 2, &sub).unwrap()).unwrap().lambda
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((principal_eigenvalue(&g).unwrap().lambda - best).abs() < 1e-10);
    }
}

#[test]
fn sampling_never_beats_bricklayers() {
    for (d, n) in [(5, 8), (5, 12), (6, 20), (7, 9)] {
        let r = sample_max_eig(d, n, 500, 42).unwrap();
        assert!(r.best_lambda.unwrap() <= r.bricklayer_lambda + 1e-9, "d={d} n={n}");
        assert_eq!(r.explored, 500);
    }
    let a = sample_max_eig(8, 10, 200, 9).unwrap();
    assert_eq!(a, sample_max_eig(8, 10, 200, 9).unwrap());
    assert_ne!(a.witness, sample_max_eig(8, 10, 200, 10).unwrap().witness);
}
