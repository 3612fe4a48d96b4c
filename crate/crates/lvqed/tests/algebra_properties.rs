//! Property tests for the tensor and gamma-matrix layers.

use lvqed::clifford::{dirac3, dirac4, trace_product};
use lvqed::tensor_core::{
    c64, cmatrix, eig_hermitian, epsilon_contraction_3d, epsilon_contraction_3d_identity,
    levi_civita, minkowski_dot, FourVector,
};
use proptest::prelude::*;

fn four() -> impl Strategy<Value = FourVector> {
    prop::array::uniform4(-10.0..10.0f64).prop_map(FourVector)
}

proptest! {
    #[test]
    fn minkowski_dot_is_symmetric(u in four(), v in four()) {
        prop_assert_eq!(minkowski_dot(&u, &v), minkowski_dot(&v, &u));
    }

    #[test]
    fn levi_civita_flips_under_transposition(
        idx in prop::array::uniform4(0usize..4),
        i in 0usize..4,
        j in 0usize..4,
    ) {
        prop_assume!(i != j);
        let mut swapped = idx;
        swapped.swap(i, j);
        prop_assert_eq!(levi_civita(&swapped).unwrap(), -levi_civita(&idx).unwrap());
    }

    #[test]
    fn hermitian_eigenvalues_sum_to_trace(entries in prop::collection::vec(-5.0..5.0f64, 32)) {
        let raw: Vec<_> = (0..16).map(|k| c64(entries[2 * k], entries[2 * k + 1])).collect();
        let a = cmatrix(4, &raw);
        let h = &a + a.adjoint();
        let eig = eig_hermitian(&h).unwrap();
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - h.trace().re).abs() <= 1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn trace_is_cyclic(idx in prop::collection::vec(0usize..4, 2..7), shift in 0usize..6) {
        let g = dirac4();
        let factors: Vec<_> = idx.iter().map(|&i| &g.gamma[i]).collect();
        let mut rotated = factors.clone();
        rotated.rotate_left(shift % factors.len());
        let a = trace_product(g, &factors).unwrap();
        let b = trace_product(g, &rotated).unwrap();
        prop_assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn odd_traces_vanish_in_four_dimensions(idx in prop::collection::vec(0usize..4, 1..4)) {
        let g = dirac4();
        let n = 2 * idx.len() - 1;
        let factors: Vec<_> = idx.iter().cycle().take(n).map(|&i| &g.gamma[i]).collect();
        prop_assert!(trace_product(g, &factors).unwrap().norm() <= 1e-13);
    }
}

#[test]
fn epsilon_contraction_matches_brute_force_everywhere() {
    for mu in 0..3 {
        for sigma in 0..3 {
            for rho in 0..3 {
                for tau in 0..3 {
                    assert_eq!(
                        epsilon_contraction_3d(mu, sigma, rho, tau).unwrap(),
                        epsilon_contraction_3d_identity(mu, sigma, rho, tau)
                    );
                }
            }
        }
    }
}

#[test]
fn contraction_identities_in_both_dimensions() {
    for (basis, factor) in [(dirac3(), -1.0), (dirac4(), -2.0)] {
        for nu in 0..basis.dimension {
            let mut sum = basis.gamma[0].clone() * c64(0.0, 0.0);
            for mu in 0..basis.dimension {
                sum += basis.gamma_lower(mu) * &basis.gamma[nu] * &basis.gamma[mu];
            }
            let diff = sum - &basis.gamma[nu] * c64(factor, 0.0);
            assert!(diff.iter().all(|z| z.norm() <= 1e-13));
        }
    }
}
