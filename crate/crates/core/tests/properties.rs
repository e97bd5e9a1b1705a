use proptest::prelude::*;
use twistor_core::classify::{frame_scan_many, nijenhuis_quadratic_table, quadratic_einstein_table};
use twistor_core::lambda2::{alpha_basis, sample_rotation};
use twistor_core::twistor::{j_matrix, kaehler_differential, kaehler_differential_closed, nabla_structure_residual};
use twistor_core::zoo::{make_einstein, make_self_dual, random_curvature};
use twistor_core::{
    build, decompose_blocks, gray_hervella, hodge_star, induced_so3_pair, predicates, rotate_curvature,
    transform_blocks, Check, FrameRotation, GrayHervellaClass, Orientation, ScanConfig, Structure, TwoForm,
};

fn structure(es: bool) -> Structure {
    if es {
        Structure::Es
    } else {
        Structure::Ahs
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_an_involution(c in prop::array::uniform6(-10.0f64..10.0)) {
        let f = TwoForm::new(c);
        prop_assert!((hodge_star(&hodge_star(&f)) - f).max_abs() < 1e-14);
    }

    #[test]
    fn alpha_bases_are_orthonormal_eigenvectors(neg in any::<bool>()) {
        let o = if neg { Orientation::Negative } else { Orientation::Positive };
        let basis = alpha_basis(o);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((a.dot(b) - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mu_is_a_homomorphism(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (r1, r2) = (sample_rotation(s1), sample_rotation(s2));
        let prod = induced_so3_pair(&(r1.matrix * r2.matrix)).unwrap();
        prop_assert!((prod.plus - r1.plus * r2.plus).amax() < 1e-9);
        prop_assert!((prod.minus - r1.minus * r2.minus).amax() < 1e-9);
    }

    #[test]
    fn mu_inverse_recovers_the_rotation_up_to_sign(s in any::<u64>()) {
        let r = sample_rotation(s);
        let back = FrameRotation::from_pair(&r.plus, &r.minus).unwrap();
        let d = (back.matrix - r.matrix).amax().min((back.matrix + r.matrix).amax());
        prop_assert!(d < 1e-9);
    }

    #[test]
    fn rotation_commutes_with_block_decomposition(seed in 0u64..10_000, frame in any::<u64>()) {
        let c = random_curvature(seed).curvature;
        let rot = sample_rotation(frame);
        let lhs = decompose_blocks(&rotate_curvature(&c, &rot));
        let rhs = transform_blocks(&decompose_blocks(&c), &rot);
        prop_assert!((lhs.a - rhs.a).amax() < 1e-9);
        prop_assert!((lhs.b - rhs.b).amax() < 1e-9);
        prop_assert!((lhs.c - rhs.c).amax() < 1e-9);
        prop_assert!((lhs.a.trace() - lhs.s / 4.0).abs() < 1e-9);
        prop_assert!((lhs.c.trace() - lhs.s / 4.0).abs() < 1e-9);
    }

    #[test]
    fn classification_respects_inclusions(seed in 0u64..10_000, t in 0.2f64..3.0, es in any::<bool>(), frame in any::<u64>(), kind in 0u8..3) {
        let c = random_curvature(seed).curvature;
        let c = match kind {
            0 => c,
            1 => make_einstein(&c),
            _ => make_self_dual(&make_einstein(&c)),
        };
        let d = build(&rotate_curvature(&c, &sample_rotation(frame)), t).unwrap();
        let r = gray_hervella(&d, structure(es), 1e-8);
        prop_assert!(r.inclusion_consistent());
    }

    #[test]
    fn self_dual_inputs_are_semi_kaehler(seed in 0u64..10_000, t in 0.2f64..3.0, es in any::<bool>(), frame in any::<u64>()) {
        let c = make_self_dual(&random_curvature(seed).curvature);
        prop_assert!(predicates(&c, 1e-9).self_dual);
        let d = build(&rotate_curvature(&c, &sample_rotation(frame)), t).unwrap();
        prop_assert!(GrayHervellaClass::SK.residual(d.nabla(structure(es)), structure(es)) < 1e-9);
    }

    #[test]
    fn nabla_anticommutes_with_structure(seed in 0u64..10_000, t in 0.2f64..3.0, es in any::<bool>()) {
        let d = build(&random_curvature(seed).curvature, t).unwrap();
        let s = structure(es);
        prop_assert!(nabla_structure_residual(d.nabla(s), s) < 1e-12);
        let j = j_matrix(s);
        prop_assert!((j * j + nalgebra::Matrix6::identity()).amax() == 0.0);
    }

    #[test]
    fn einstein_inputs_pass_both_quadratic_conditions(seed in 0u64..10_000, t in 0.2f64..3.0, frame in any::<u64>()) {
        let c = make_einstein(&random_curvature(seed).curvature);
        let d = build(&rotate_curvature(&c, &sample_rotation(frame)), t).unwrap();
        let scale = d.norm2_nabla_j.max(1.0);
        prop_assert!(quadratic_einstein_table(&d.nabla_j) < 1e-9 * scale);
        prop_assert!(nijenhuis_quadratic_table(&d.nabla_j, &d.nj) < 1e-9 * scale);
    }

    #[test]
    fn kaehler_differential_matches_closed_form(seed in 0u64..10_000, t in 0.2f64..3.0, es in any::<bool>()) {
        let d = build(&random_curvature(seed).curvature, t).unwrap();
        let s = structure(es);
        let oracle = kaehler_differential(d.nabla(s));
        let closed = kaehler_differential_closed(&d.q, t, s);
        let keys: std::collections::BTreeSet<_> = oracle.keys().chain(closed.keys()).collect();
        for k in keys {
            let a = oracle.get(k).copied().unwrap_or(0.0);
            let b = closed.get(k).copied().unwrap_or(0.0);
            prop_assert!((a - b).abs() < 1e-10, "{:?}: {} vs {}", k, a, b);
        }
    }
}

#[test]
fn scan_is_independent_of_thread_count() {
    let c = random_curvature(7).curvature;
    let checks = [
        Check::QuadraticEinstein,
        Check::Class(GrayHervellaClass::QK),
        Check::Nijenhuis,
    ];
    let cfg = ScanConfig {
        n: 200,
        seed: 3,
        ..ScanConfig::default()
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| frame_scan_many(&c, &checks, &cfg).unwrap())
    };
    let one = run(1);
    for threads in [2, 4, 7] {
        assert_eq!(one, run(threads));
    }
}
