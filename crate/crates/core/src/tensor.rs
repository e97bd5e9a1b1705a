//! Dense fixed-size tensors used throughout the crate.

pub type Tensor3<const N: usize> = [[[f64; N]; N]; N];
pub type Tensor4<const N: usize> = [[[[f64; N]; N]; N]; N];
/// `∇Riem` components `DR[a][b][c][d][e] = R_{abcd;e}`.
pub type Tensor5<const N: usize> = [[[[[f64; N]; N]; N]; N]; N];

pub fn zeros3<const N: usize>() -> Tensor3<N> {
    [[[0.0; N]; N]; N]
}

pub fn zeros4<const N: usize>() -> Tensor4<N> {
    [[[[0.0; N]; N]; N]; N]
}

pub fn zeros5<const N: usize>() -> Tensor5<N> {
    [[[[[0.0; N]; N]; N]; N]; N]
}

/// Writes `v` at `(a,b,c,d)` and every image under the antisymmetries and
/// the pair exchange of a curvature tensor.
pub fn set_curvature<const N: usize>(t: &mut Tensor4<N>, a: usize, b: usize, c: usize, d: usize, v: f64) {
    for (i, j, s1) in [(a, b, 1.0), (b, a, -1.0)] {
        for (k, l, s2) in [(c, d, 1.0), (d, c, -1.0)] {
            t[i][j][k][l] = s1 * s2 * v;
            t[k][l][i][j] = s1 * s2 * v;
        }
    }
}

/// Sets `t[p][q][r] = v` and `t[q][p][r] = -v`.
pub fn set_antisym_01<const N: usize>(t: &mut Tensor3<N>, p: usize, q: usize, r: usize, v: f64) {
    t[p][q][r] = v;
    t[q][p][r] = -v;
}

/// Sets `t[r][p][q] = v` and `t[r][q][p] = -v`.
pub fn set_antisym_12<const N: usize>(t: &mut Tensor3<N>, r: usize, p: usize, q: usize, v: f64) {
    t[r][p][q] = v;
    t[r][q][p] = -v;
}

pub fn max_abs3<const N: usize>(t: &Tensor3<N>) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs4<const N: usize>(t: &Tensor4<N>) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs5<const N: usize>(t: &Tensor5<N>) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs_diff3<const N: usize>(x: &Tensor3<N>, y: &Tensor3<N>) -> f64 {
    x.iter()
        .flatten()
        .flatten()
        .zip(y.iter().flatten().flatten())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

pub fn max_abs_diff4<const N: usize>(x: &Tensor4<N>, y: &Tensor4<N>) -> f64 {
    x.iter()
        .flatten()
        .flatten()
        .flatten()
        .zip(y.iter().flatten().flatten().flatten())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// Largest violation of the algebraic curvature symmetries (both
/// antisymmetries, pair exchange, first Bianchi identity).
pub fn curvature_symmetry_residual<const N: usize>(t: &Tensor4<N>) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..N {
        for b in 0..N {
            for c in 0..N {
                for d in 0..N {
                    let r = t[a][b][c][d];
                    worst = worst
                        .max((r + t[b][a][c][d]).abs())
                        .max((r + t[a][b][d][c]).abs())
                        .max((r - t[c][d][a][b]).abs())
                        .max((r + t[a][c][d][b] + t[a][d][b][c]).abs());
                }
            }
        }
    }
    worst
}
