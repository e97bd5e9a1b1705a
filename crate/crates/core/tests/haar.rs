//! Moments of the Haar sampler: for a uniform rotation in SO(n) every entry
//! has mean 0 and variance 1/n, and the induced pair is uniform on
//! SO(3) × SO(3).

use twistor_core::lambda2::sample_rotation_indexed;

const SAMPLES: u64 = 20_000;

#[test]
fn entry_moments() {
    let mut mean = [[0.0f64; 4]; 4];
    let mut second = [[0.0f64; 4]; 4];
    let mut plus2 = [[0.0f64; 3]; 3];
    let mut minus2 = [[0.0f64; 3]; 3];
    let mut cross = 0.0f64;
    for k in 0..SAMPLES {
        let r = sample_rotation_indexed(11, k);
        assert!((r.matrix.determinant() - 1.0).abs() < 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                mean[i][j] += r.matrix[(i, j)];
                second[i][j] += r.matrix[(i, j)].powi(2);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                plus2[i][j] += r.plus[(i, j)].powi(2);
                minus2[i][j] += r.minus[(i, j)].powi(2);
            }
        }
        cross += r.plus[(0, 0)] * r.minus[(0, 0)];
    }
    let n = SAMPLES as f64;
    for i in 0..4 {
        for j in 0..4 {
            assert!((mean[i][j] / n).abs() < 0.02, "mean {i}{j}");
            assert!((second[i][j] / n - 0.25).abs() < 0.02, "variance {i}{j}");
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            assert!((plus2[i][j] / n - 1.0 / 3.0).abs() < 0.02);
            assert!((minus2[i][j] / n - 1.0 / 3.0).abs() < 0.02);
        }
    }
    assert!((cross / n).abs() < 0.02);
}

#[test]
fn streams_differ_and_repeat() {
    let a = sample_rotation_indexed(5, 0);
    assert_eq!(a, sample_rotation_indexed(5, 0));
    assert_ne!(a, sample_rotation_indexed(5, 1));
    assert_ne!(a, sample_rotation_indexed(6, 0));
}
