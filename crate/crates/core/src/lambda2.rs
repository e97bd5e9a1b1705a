//! Two-forms on ℝ⁴, the Hodge star, the self-dual/anti-self-dual splitting and
//! the factorisation of the SO(4) action on Λ² through SO(3)×SO(3).
//!
//! A [`TwoForm`] stores its six coefficients in the lexicographic basis
//! `θ¹∧θ², θ¹∧θ³, θ¹∧θ⁴, θ²∧θ³, θ²∧θ⁴, θ³∧θ⁴`, which is orthonormal for the
//! induced inner product.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Matrix4, Matrix6, SMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::curvature::AlgebraicCurvature;
use crate::error::{Error, Result};
use crate::tensor::zeros4;

/// Index pairs `(i, j)`, `i < j`, of the basis of Λ², 0-based.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Absolute tolerance for orthogonality and determinant checks.
pub const ORTHO_TOL: f64 = 1e-9;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    /// The orientation the twistor tables are written for.
    #[default]
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "+" => Ok(Orientation::Positive),
            "negative" | "-" => Ok(Orientation::Negative),
            other => Err(Error::InvalidInput(format!("unknown orientation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoForm {
    pub coeffs: [f64; 6],
}

impl TwoForm {
    pub const ZERO: TwoForm = TwoForm { coeffs: [0.0; 6] };

    pub fn new(coeffs: [f64; 6]) -> Self {
        TwoForm { coeffs }
    }

    /// `θⁱ∧θʲ` for 0-based `i ≠ j`; `θʲ∧θⁱ = −θⁱ∧θʲ` is handled.
    pub fn wedge(i: usize, j: usize) -> Self {
        let mut f = TwoForm::ZERO;
        if i == j {
            return f;
        }
        let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        let slot = PAIRS.iter().position(|&p| p == (lo, hi)).expect("indices below 4");
        f.coeffs[slot] = sign;
        f
    }

    /// Reads the components `X_ij`, `i < j`, of an antisymmetric matrix.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        let mut coeffs = [0.0; 6];
        for (slot, &(i, j)) in PAIRS.iter().enumerate() {
            coeffs[slot] = m[(i, j)];
        }
        TwoForm { coeffs }
    }

    /// The antisymmetric matrix `X` with `f = ½ X_ij θⁱ∧θʲ`.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for (slot, &(i, j)) in PAIRS.iter().enumerate() {
            m[(i, j)] = self.coeffs[slot];
            m[(j, i)] = -self.coeffs[slot];
        }
        m
    }

    pub fn dot(&self, other: &TwoForm) -> f64 {
        self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Add for TwoForm {
    type Output = TwoForm;
    fn add(self, rhs: TwoForm) -> TwoForm {
        let mut c = self.coeffs;
        c.iter_mut().zip(rhs.coeffs).for_each(|(a, b)| *a += b);
        TwoForm { coeffs: c }
    }
}

impl Sub for TwoForm {
    type Output = TwoForm;
    fn sub(self, rhs: TwoForm) -> TwoForm {
        self + (-rhs)
    }
}

impl Neg for TwoForm {
    type Output = TwoForm;
    fn neg(self) -> TwoForm {
        self * -1.0
    }
}

impl Mul<f64> for TwoForm {
    type Output = TwoForm;
    fn mul(self, s: f64) -> TwoForm {
        TwoForm {
            coeffs: self.coeffs.map(|v| v * s),
        }
    }
}

/// Hodge star for the volume form `θ¹∧θ²∧θ³∧θ⁴` of the coframe.
pub fn hodge_star(f: &TwoForm) -> TwoForm {
    let [c12, c13, c14, c23, c24, c34] = f.coeffs;
    // ⋆θ¹² = θ³⁴, ⋆θ¹³ = θ⁴², ⋆θ¹⁴ = θ²³ and the reverse images
    TwoForm::new([c34, -c24, c23, c14, -c13, c12])
}

/// `(½(f + ⋆f), ½(f − ⋆f))`.
pub fn sd_asd_split(f: &TwoForm) -> (TwoForm, TwoForm) {
    let s = hodge_star(f);
    ((*f + s) * 0.5, (*f - s) * 0.5)
}

fn alpha(sign: f64) -> [TwoForm; 3] {
    let s = FRAC_1_SQRT_2;
    [
        (TwoForm::wedge(0, 1) + TwoForm::wedge(2, 3) * sign) * s,
        (TwoForm::wedge(0, 2) + TwoForm::wedge(3, 1) * sign) * s,
        (TwoForm::wedge(0, 3) + TwoForm::wedge(1, 2) * sign) * s,
    ]
}

/// Orthonormal bases `(α₊¹, α₊², α₊³, α₋¹, α₋², α₋³)` of Λ₊ ⊕ Λ₋.
///
/// For a negatively oriented coframe the two triples trade places, so the
/// first triple always spans the +1 eigenspace of the star of the actual
/// orientation.
pub fn alpha_basis(orientation: Orientation) -> [TwoForm; 6] {
    let (first, second) = match orientation {
        Orientation::Positive => (alpha(1.0), alpha(-1.0)),
        Orientation::Negative => (alpha(-1.0), alpha(1.0)),
    };
    [first[0], first[1], first[2], second[0], second[1], second[2]]
}

/// Columns are the positively oriented α basis expressed in the `θⁱ∧θʲ` basis.
pub(crate) fn alpha_matrix() -> Matrix6<f64> {
    let basis = alpha_basis(Orientation::Positive);
    Matrix6::from_fn(|row, col| basis[col].coeffs[row])
}

/// Matrix of the induced action on Λ² in the `θⁱ∧θʲ` basis, for the frame
/// change `θ̃ʲ = Σᵢ r_ij θⁱ`.
pub fn lambda2_action(r: &Matrix4<f64>) -> Matrix6<f64> {
    let mut out = Matrix6::zeros();
    for (col, &(k, l)) in PAIRS.iter().enumerate() {
        let image = TwoForm::from_matrix(&(r * TwoForm::wedge(k, l).to_matrix() * r.transpose()));
        for row in 0..6 {
            out[(row, col)] = image.coeffs[row];
        }
    }
    out
}

/// An element of SO(4) with its image `(a₊, a₋)` under `μ: SO(4) → SO(3)×SO(3)`.
///
/// `matrix` is the change of frame `ẽ_j = Σᵢ r_ij eᵢ`; `plus`/`minus` are the
/// matrices of the induced action on Λ₊/Λ₋ in the positively oriented α
/// bases, so that `(a₊)_ij = ⟨α₊ⁱ, r·α₊ʲ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRotation {
    pub matrix: Matrix4<f64>,
    pub plus: Matrix3<f64>,
    pub minus: Matrix3<f64>,
}

impl FrameRotation {
    pub fn identity() -> Self {
        FrameRotation {
            matrix: Matrix4::identity(),
            plus: Matrix3::identity(),
            minus: Matrix3::identity(),
        }
    }

    /// Applies the frame change to a two-form.
    pub fn act(&self, f: &TwoForm) -> TwoForm {
        TwoForm::from_matrix(&(self.matrix * f.to_matrix() * self.matrix.transpose()))
    }

    /// Frame change `self` followed by `other`.
    pub fn then(&self, other: &FrameRotation) -> FrameRotation {
        FrameRotation {
            matrix: self.matrix * other.matrix,
            plus: self.plus * other.plus,
            minus: self.minus * other.minus,
        }
    }

    pub fn inverse(&self) -> FrameRotation {
        FrameRotation {
            matrix: self.matrix.transpose(),
            plus: self.plus.transpose(),
            minus: self.minus.transpose(),
        }
    }

    /// A preimage of `(a₊, a₋)` under μ. The preimage is unique up to sign;
    /// the sign is fixed so that the first entry of largest magnitude (row
    /// major) is positive.
    pub fn from_pair(plus: &Matrix3<f64>, minus: &Matrix3<f64>) -> Result<FrameRotation> {
        check_so3(plus)?;
        check_so3(minus)?;
        let alpha = alpha_matrix();
        let mut block = Matrix6::zeros();
        block.fixed_view_mut::<3, 3>(0, 0).copy_from(plus);
        block.fixed_view_mut::<3, 3>(3, 3).copy_from(minus);
        let action = alpha * block * alpha.transpose();

        // r X_m = Y_m r for every basis element X_m of so(4), Y_m its image.
        let mut normal = SMatrix::<f64, 16, 16>::zeros();
        for (m, &(k, l)) in PAIRS.iter().enumerate() {
            let x = TwoForm::wedge(k, l).to_matrix();
            let y = TwoForm::new(std::array::from_fn(|row| action[(row, m)])).to_matrix();
            for i in 0..4 {
                for j in 0..4 {
                    // coefficient row for entry (i, j) of r X − Y r, unknowns r_ab at a + 4b
                    let mut row = SMatrix::<f64, 1, 16>::zeros();
                    for s in 0..4 {
                        row[i + 4 * s] += x[(s, j)];
                        row[s + 4 * j] -= y[(i, s)];
                    }
                    normal += row.transpose() * row;
                }
            }
        }
        let eig = SymmetricEigen::new(normal);
        let (min_idx, _) =
            eig.eigenvalues.iter().enumerate().fold(
                (0, f64::INFINITY),
                |best, (i, &v)| if v < best.1 { (i, v) } else { best },
            );
        let v = eig.eigenvectors.column(min_idx);
        let mut r = Matrix4::from_fn(|a, b| v[a + 4 * b]);
        let scale = ((r.transpose() * r).trace() / 4.0).sqrt();
        r /= scale;
        let pivot = r
            .transpose()
            .iter()
            .copied()
            .fold(0.0f64, |best, x| if x.abs() > best.abs() + 1e-12 { x } else { best });
        if pivot < 0.0 {
            r = -r;
        }
        let rot = induced_so3_pair(&r)?;
        let err = (rot.plus - plus).amax().max((rot.minus - minus).amax());
        if err > 1e-8 {
            return Err(Error::InvalidInput(format!(
                "no SO(4) preimage found for the given pair (residual {err:.3e})"
            )));
        }
        Ok(FrameRotation {
            matrix: r,
            plus: *plus,
            minus: *minus,
        })
    }
}

fn check_so3(m: &Matrix3<f64>) -> Result<()> {
    let residual = (m.transpose() * m - Matrix3::identity()).amax();
    let det = m.determinant();
    if residual > ORTHO_TOL || (det - 1.0).abs() > ORTHO_TOL {
        return Err(Error::NotSpecialOrthogonal { residual, det });
    }
    Ok(())
}

pub fn check_special_orthogonal(r: &Matrix4<f64>) -> Result<()> {
    let residual = (r.transpose() * r - Matrix4::identity()).amax();
    let det = r.determinant();
    if residual > ORTHO_TOL || (det - 1.0).abs() > ORTHO_TOL {
        return Err(Error::NotSpecialOrthogonal { residual, det });
    }
    Ok(())
}

/// μ(r) = (a₊, a₋), read off the induced action on the α± bases.
pub fn induced_so3_pair(r: &Matrix4<f64>) -> Result<FrameRotation> {
    check_special_orthogonal(r)?;
    let alpha = alpha_matrix();
    let p = alpha.transpose() * lambda2_action(r) * alpha;
    Ok(FrameRotation {
        matrix: *r,
        plus: p.fixed_view::<3, 3>(0, 0).into_owned(),
        minus: p.fixed_view::<3, 3>(3, 3).into_owned(),
    })
}

/// Haar-distributed rotation from an RNG: modified Gram–Schmidt on the
/// columns of a standard Gaussian matrix, last column negated when the
/// determinant comes out negative.
pub fn haar_rotation<R: rand::Rng + ?Sized>(rng: &mut R) -> FrameRotation {
    loop {
        let mut m: Matrix4<f64> = Matrix4::from_fn(|_, _| StandardNormal.sample(rng));
        let mut degenerate = false;
        for j in 0..4 {
            for k in 0..j {
                let proj: f64 = m.column(k).dot(&m.column(j));
                let ck = m.column(k).into_owned();
                m.column_mut(j).axpy(-proj, &ck, 1.0);
            }
            let n = m.column(j).norm();
            if n < 1e-12 {
                degenerate = true;
                break;
            }
            m.column_mut(j).unscale_mut(n);
        }
        if degenerate {
            continue;
        }
        if m.determinant() < 0.0 {
            m.column_mut(3).neg_mut();
        }
        return induced_so3_pair(&m).expect("Gram-Schmidt output is special orthogonal");
    }
}

/// Deterministic Haar sample for a seed.
pub fn sample_rotation(seed: u64) -> FrameRotation {
    haar_rotation(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Sample number `index` of the counter-based stream for `seed`; independent
/// of evaluation order.
pub fn sample_rotation_indexed(seed: u64, index: u64) -> FrameRotation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    haar_rotation(&mut rng)
}

/// A symmetric (0,2)-tensor in the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2(Matrix4<f64>);

impl Sym2 {
    /// Builds from the upper triangle `f(i, j)`, `i ≤ j`.
    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Self {
        Sym2(Matrix4::from_fn(|i, j| if i <= j { f(i, j) } else { f(j, i) }))
    }

    /// Fails if `m` is not symmetric to within `1e-12` relative to its largest entry.
    pub fn try_from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let asym = (m - m.transpose()).amax();
        if asym > 1e-12 * m.amax().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "matrix is not symmetric (residual {asym:.3e})"
            )));
        }
        Ok(Sym2::from_fn(|i, j| m[(i, j)]))
    }

    pub fn identity() -> Self {
        Sym2(Matrix4::identity())
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        Sym2::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Sym2(self.0 * s)
    }

    /// `rᵀ S r`, the components in the frame `ẽ = e·r`.
    pub fn rotated(&self, r: &Matrix4<f64>) -> Self {
        Sym2::from_fn(|i, j| (r.transpose() * self.0 * r)[(i, j)])
    }
}

/// `(h⊙k)_{ijkt} = h_ik k_jt − h_it k_jk + h_jt k_ik − h_jk k_it`, returned as
/// a locally symmetric curvature with the default (negative) orientation.
pub fn kulkarni_nomizu(h: &Sym2, k: &Sym2) -> AlgebraicCurvature {
    let mut riem = zeros4::<4>();
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                for t in 0..4 {
                    riem[i][j][l][t] = h.get(i, l) * k.get(j, t) - h.get(i, t) * k.get(j, l)
                        + h.get(j, t) * k.get(i, l)
                        - h.get(j, l) * k.get(i, t);
                }
            }
        }
    }
    AlgebraicCurvature::from_tensor_unchecked(riem, Orientation::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::curvature_symmetry_residual;

    fn basis6() -> Vec<TwoForm> {
        (0..6)
            .map(|s| {
                let mut c = [0.0; 6];
                c[s] = 1.0;
                TwoForm::new(c)
            })
            .collect()
    }

    #[test]
    fn star_of_theta12_is_theta34() {
        assert_eq!(hodge_star(&TwoForm::wedge(0, 1)), TwoForm::wedge(2, 3));
        assert_eq!(hodge_star(&TwoForm::wedge(0, 2)), TwoForm::wedge(3, 1));
        assert_eq!(hodge_star(&TwoForm::wedge(0, 3)), TwoForm::wedge(1, 2));
        assert_eq!(hodge_star(&TwoForm::ZERO), TwoForm::ZERO);
    }

    #[test]
    fn star_is_an_involution_on_the_basis() {
        for f in basis6() {
            assert_eq!(hodge_star(&hodge_star(&f)), f);
        }
    }

    #[test]
    fn alpha_bases_are_orthonormal_eigenvectors() {
        let b = alpha_basis(Orientation::Positive);
        for (i, f) in b.iter().enumerate() {
            let eig = if i < 3 { 1.0 } else { -1.0 };
            assert!((hodge_star(f) - *f * eig).max_abs() < 1e-15);
            for (j, g) in b.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((f.dot(g) - expect).abs() < 1e-15);
            }
        }
        let s = FRAC_1_SQRT_2;
        assert_eq!(b[0], TwoForm::new([s, 0.0, 0.0, 0.0, 0.0, s]));
    }

    #[test]
    fn negative_orientation_swaps_triples() {
        let pos = alpha_basis(Orientation::Positive);
        let neg = alpha_basis(Orientation::Negative);
        assert_eq!(&neg[0..3], &pos[3..6]);
        assert_eq!(&neg[3..6], &pos[0..3]);
    }

    #[test]
    fn split_examples() {
        let (p, m) = sd_asd_split(&TwoForm::wedge(0, 1));
        assert_eq!(p, (TwoForm::wedge(0, 1) + TwoForm::wedge(2, 3)) * 0.5);
        assert_eq!(m, (TwoForm::wedge(0, 1) - TwoForm::wedge(2, 3)) * 0.5);
        let a2m = alpha_basis(Orientation::Positive)[4];
        let (p, m) = sd_asd_split(&a2m);
        assert!(p.max_abs() < 1e-16);
        assert_eq!(m, a2m);
        // θ¹∧θ³ + θ⁴∧θ² is self-dual
        let f = TwoForm::wedge(0, 2) + TwoForm::wedge(3, 1);
        let (p, m) = sd_asd_split(&f);
        assert_eq!(p, f);
        assert_eq!(m, TwoForm::ZERO);
    }

    #[test]
    fn matrix_round_trip() {
        let f = TwoForm::new([1.0, -2.0, 3.0, 0.5, 0.25, -4.0]);
        assert_eq!(TwoForm::from_matrix(&f.to_matrix()), f);
    }

    #[test]
    fn mu_of_identity_and_half_turn() {
        let id = induced_so3_pair(&Matrix4::identity()).unwrap();
        assert!((id.plus - Matrix3::identity()).amax() < 1e-15);
        assert!((id.minus - Matrix3::identity()).amax() < 1e-15);
        // hand computation: θ³, θ⁴ ↦ −θ³, −θ⁴ fixes α¹± and negates α²±, α³±
        let half = induced_so3_pair(&Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, -1.0, -1.0))).unwrap();
        let expect = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, -1.0));
        assert!((half.plus - expect).amax() < 1e-15);
        assert!((half.minus - expect).amax() < 1e-15);
    }

    #[test]
    fn rejects_reflection() {
        let refl = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        assert!(matches!(
            induced_so3_pair(&refl),
            Err(Error::NotSpecialOrthogonal { .. })
        ));
        assert!(induced_so3_pair(&(Matrix4::identity() * 1.1)).is_err());
    }

    #[test]
    fn sampled_rotations_are_deterministic_and_valid() {
        let a = sample_rotation(42);
        let b = sample_rotation(42);
        assert_eq!(a.matrix, b.matrix);
        check_special_orthogonal(&a.matrix).unwrap();
        check_so3(&a.plus).unwrap();
        check_so3(&a.minus).unwrap();
        assert_ne!(sample_rotation(43).matrix, a.matrix);
        assert_eq!(
            sample_rotation_indexed(7, 3).matrix,
            sample_rotation_indexed(7, 3).matrix
        );
    }

    #[test]
    fn action_factors_through_the_pair() {
        let r = sample_rotation(5);
        let alpha = alpha_basis(Orientation::Positive);
        for f in basis6() {
            let (fp, fm) = sd_asd_split(&f);
            let cp: Vec<f64> = alpha[..3].iter().map(|a| a.dot(&fp)).collect();
            let cm: Vec<f64> = alpha[3..].iter().map(|a| a.dot(&fm)).collect();
            let mut expect = TwoForm::ZERO;
            for i in 0..3 {
                for j in 0..3 {
                    expect = expect + alpha[i] * (r.plus[(i, j)] * cp[j]) + alpha[3 + i] * (r.minus[(i, j)] * cm[j]);
                }
            }
            assert!((r.act(&f) - expect).max_abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_mu_recovers_pairs() {
        for seed in 0..20 {
            let r = sample_rotation(seed);
            let back = FrameRotation::from_pair(&r.plus, &r.minus).unwrap();
            let same = (back.matrix - r.matrix).amax() < 1e-9 || (back.matrix + r.matrix).amax() < 1e-9;
            assert!(same, "seed {seed}");
        }
        let plus = Matrix3::new(0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0);
        let r = FrameRotation::from_pair(&plus, &Matrix3::identity()).unwrap();
        check_special_orthogonal(&r.matrix).unwrap();
        assert!((r.plus - plus).amax() < 1e-12);
        assert!((r.minus - Matrix3::identity()).amax() < 1e-12);
    }

    #[test]
    fn mu_inverse_is_transpose() {
        let r = sample_rotation(9);
        let inv = induced_so3_pair(&r.matrix.transpose()).unwrap();
        assert!((inv.plus - r.plus.transpose()).amax() < 1e-12);
        assert!((inv.minus - r.minus.transpose()).amax() < 1e-12);
    }

    #[test]
    fn kulkarni_nomizu_examples() {
        let g = Sym2::identity();
        let gg = kulkarni_nomizu(&g, &g);
        assert_eq!(gg.riem()[0][1][0][1], 2.0);
        assert_eq!(gg.riem()[0][0][0][1], 0.0);
        let h = Sym2::from_fn(|i, j| (i * 3 + j * 5) as f64 * 0.1 - 0.4);
        let k = Sym2::from_fn(|i, j| ((i + 2 * j) % 3) as f64 - 1.0);
        assert!(curvature_symmetry_residual(kulkarni_nomizu(&h, &k).riem()) < 1e-14);
    }

    #[test]
    fn sym2_rejects_asymmetric_input() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 1.0;
        assert!(Sym2::try_from_matrix(m).is_err());
    }
}
