//! Independent oracle for the quadric-ideal dimensions.
//!
//! The quadrics vanishing on the minimal nilpotent cone are the kernel of the
//! restriction Sym^2 g* -> sections of O(2), and the target is the
//! irreducible module of highest weight 2*theta; so
//! dim Sigma = dim Sym^2 g* - dim R(2 theta). The right side is computed
//! here from scratch with the Weyl dimension formula and frozen against the
//! sampled kernels the engine produces.

use liecert::grading::contact_grading;
use liecert::liealg::build_chevalley;
use liecert::orbit::{sigma_quadrics, SampleStream};
use liecert::rootsys::{build_root_system, RootSystem};
use liecert::Rat;
use num_traits::{One, ToPrimitive};

/// dim R(lambda) = prod over positive roots of (lambda + rho, a) / (rho, a),
/// with rho the half-sum of positive roots, in any invariant form.
fn weyl_dim(rs: &RootSystem, lambda: &[i64]) -> u64 {
    // 2*rho stays integral; the form is bilinear so the halves cancel.
    let mut two_rho = vec![0i64; rs.rank];
    for r in rs.positive_roots() {
        for (t, c) in two_rho.iter_mut().zip(r) {
            *t += c;
        }
    }
    let mut num = Rat::one();
    let mut den = Rat::one();
    for alpha in rs.positive_roots() {
        let two_lam_rho: Vec<i64> = lambda
            .iter()
            .zip(&two_rho)
            .map(|(l, r)| 2 * l + r)
            .collect();
        num *= Rat::from_integer(rs.sym_product(&two_lam_rho, alpha).into());
        den *= Rat::from_integer(rs.sym_product(&two_rho, alpha).into());
    }
    let dim = num / den;
    assert!(dim.is_integer(), "Weyl dimension must be integral");
    dim.to_integer().to_u64().unwrap()
}

#[test]
fn weyl_formula_reproduces_known_dimensions() {
    // adjoint representations: R(theta) = g itself
    for (t, dim) in [("A2", 8), ("G2", 14), ("B3", 21), ("D4", 28), ("F4", 52)] {
        let rs = build_root_system(t.parse().unwrap()).unwrap();
        let theta = rs.highest_root.clone();
        assert_eq!(weyl_dim(&rs, &theta), dim, "{t}");
    }
    // the standard representations via their highest weights
    let a2 = build_root_system("A2".parse().unwrap()).unwrap();
    // fundamental weight pi_1 of A2 = (2 a1 + a2)/3; use 3*pi_1 = 2a1 + a2
    // instead: R(3 pi_1) is the 10-dimensional symmetric cube
    assert_eq!(weyl_dim(&a2, &[2, 1]), 10);
}

#[test]
fn sigma_dimensions_match_the_weyl_oracle() {
    let expected_sampled = [("A2", 9), ("G2", 28), ("B3", 63), ("D4", 106)];
    for (t, frozen) in expected_sampled {
        let rs = build_root_system(t.parse().unwrap()).unwrap();
        let n = liecert::rootsys::algebra_dim(&rs);
        let two_theta: Vec<i64> = rs.highest_root.iter().map(|c| 2 * c).collect();
        let oracle = n * (n + 1) / 2 - weyl_dim(&rs, &two_theta) as usize;
        assert_eq!(oracle, frozen, "{t}: frozen value disagrees with oracle");

        let alg = build_chevalley(&rs).unwrap();
        let cg = contact_grading(&alg).unwrap();
        let mut stream = SampleStream::generic(&alg, &cg, 11).unwrap();
        let sigma = sigma_quadrics(&alg, &mut stream, 8, 384).unwrap();
        assert_eq!(sigma.space.dim(), oracle, "{t}: engine vs oracle");
    }
}
