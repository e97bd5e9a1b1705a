//! Algebraic curvature tensors at a point of an oriented four-manifold.
//!
//! Components refer to an orthonormal coframe; `R_{abcd}` is stored densely
//! with 0-based indices. The curvature operator is split into the 3×3 blocks
//! `A`, `B`, `C` with respect to the positively oriented α bases of Λ±, so
//! `A` acts on the span of `θ¹²+θ³⁴, θ¹³+θ⁴², θ¹⁴+θ²³` whatever the orientation
//! flag says; the flag only decides which block measures which half of Weyl.

use nalgebra::{Matrix3, Matrix6};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::lambda2::{alpha_matrix, FrameRotation, Orientation, Sym2, PAIRS};
use crate::tensor::{max_abs4, max_abs5, set_curvature, zeros3, zeros4, zeros5, Tensor3, Tensor4, Tensor5};

/// Relative tolerance for symmetry checks, scaled by the largest entry.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor for symmetry checks.
pub const ABS_FLOOR: f64 = 1e-12;

fn symmetry_tol(scale: f64) -> f64 {
    (REL_TOL * scale).max(ABS_FLOOR)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicCurvature {
    riem: Tensor4<4>,
    /// `None` means locally symmetric (`∇Riem = 0` exactly).
    driem: Option<Box<Tensor5<4>>>,
    orientation: Orientation,
}

impl AlgebraicCurvature {
    /// Validates `riem` and wraps it as a locally symmetric curvature.
    pub fn new(riem: Tensor4<4>, orientation: Orientation) -> Result<Self> {
        validate_tensor(&riem, None)?;
        Ok(AlgebraicCurvature {
            riem,
            driem: None,
            orientation,
        })
    }

    pub fn with_derivative(riem: Tensor4<4>, driem: Tensor5<4>, orientation: Orientation) -> Result<Self> {
        validate_tensor(&riem, Some(&driem))?;
        Ok(AlgebraicCurvature {
            riem,
            driem: Some(Box::new(driem)),
            orientation,
        })
    }

    pub(crate) fn from_tensor_unchecked(riem: Tensor4<4>, orientation: Orientation) -> Self {
        AlgebraicCurvature {
            riem,
            driem: None,
            orientation,
        }
    }

    /// Builds from 1-based components `([a,b,c,d], value)` and derivative
    /// components `([a,b,c,d,e], value)`; unlisted entries are filled by the
    /// curvature symmetries, and a listed entry contradicting one already
    /// implied is an error.
    pub fn from_components(
        orientation: Orientation,
        components: &[([usize; 4], f64)],
        dcomponents: &[([usize; 5], f64)],
    ) -> Result<Self> {
        let mut riem = zeros4::<4>();
        let mut seen = [[[[false; 4]; 4]; 4]; 4];
        for &(idx, v) in components {
            let [a, b, c, d] = zero_based(&idx)?;
            fill_checked(&mut riem, &mut seen, [a, b, c, d], v, &idx)?;
        }
        if dcomponents.is_empty() {
            return AlgebraicCurvature::new(riem, orientation);
        }
        let mut driem = zeros5::<4>();
        let mut dseen = [[[[[false; 4]; 4]; 4]; 4]; 4];
        for &(idx, v) in dcomponents {
            let [a, b, c, d, e] = zero_based(&idx)?;
            let mut slice: Tensor4<4> = std::array::from_fn(|i| {
                std::array::from_fn(|j| std::array::from_fn(|k| std::array::from_fn(|l| driem[i][j][k][l][e])))
            });
            let mut seen_slice: [[[[bool; 4]; 4]; 4]; 4] = std::array::from_fn(|i| {
                std::array::from_fn(|j| std::array::from_fn(|k| std::array::from_fn(|l| dseen[i][j][k][l][e])))
            });
            fill_checked(&mut slice, &mut seen_slice, [a, b, c, d], v, &idx)?;
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        for l in 0..4 {
                            driem[i][j][k][l][e] = slice[i][j][k][l];
                            dseen[i][j][k][l][e] = seen_slice[i][j][k][l];
                        }
                    }
                }
            }
        }
        AlgebraicCurvature::with_derivative(riem, driem, orientation)
    }

    /// Projects an arbitrary 4⁴ table onto the curvature-symmetric subspace:
    /// antisymmetrize both pairs, symmetrize under pair exchange, then remove
    /// the totally antisymmetric (Bianchi) part.
    pub fn project(t: &Tensor4<4>, orientation: Orientation) -> Self {
        let mut r = zeros4::<4>();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let x = |a: usize, b: usize, c: usize, d: usize| {
                            (t[a][b][c][d] - t[b][a][c][d] - t[a][b][d][c] + t[b][a][d][c]) / 4.0
                        };
                        r[a][b][c][d] = (x(a, b, c, d) + x(c, d, a, b)) / 2.0;
                    }
                }
            }
        }
        let mut out = zeros4::<4>();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let bianchi = (r[a][b][c][d] + r[a][c][d][b] + r[a][d][b][c]) / 3.0;
                        out[a][b][c][d] = r[a][b][c][d] - bianchi;
                    }
                }
            }
        }
        AlgebraicCurvature::from_tensor_unchecked(out, orientation)
    }

    pub fn riem(&self) -> &Tensor4<4> {
        &self.riem
    }

    /// `∇Riem` components, `None` when locally symmetric.
    pub fn driem(&self) -> Option<&Tensor5<4>> {
        self.driem.as_deref()
    }

    pub fn is_locally_symmetric(&self) -> bool {
        self.driem.is_none()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// 1-based accessor, `R_{abcd}`.
    pub fn r(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.riem[a - 1][b - 1][c - 1][d - 1]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs4(&self.riem)
    }

    /// Tolerance used by [`validate`](Self::validate) for this tensor.
    pub fn tolerance(&self) -> f64 {
        symmetry_tol(self.max_abs())
    }

    /// Re-checks every symmetry; an `Ok` here is what the constructors guarantee.
    pub fn validate(&self) -> Result<()> {
        validate_tensor(&self.riem, self.driem())
    }

    /// Largest violation of `R_{abcd;e} + R_{abde;c} + R_{abec;d} = 0`.
    /// Reported, never enforced.
    pub fn second_bianchi_residual(&self) -> f64 {
        let Some(dr) = self.driem() else { return 0.0 };
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        for e in 0..4 {
                            worst = worst.max((dr[a][b][c][d][e] + dr[a][b][d][e][c] + dr[a][b][e][c][d]).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Relabels the frame by exchanging legs 3 and 4, which reverses the
    /// orientation of the coframe.
    pub fn swap_legs_34(&self) -> Self {
        let p = |i: usize| match i {
            2 => 3,
            3 => 2,
            i => i,
        };
        let mut riem = zeros4::<4>();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        riem[a][b][c][d] = self.riem[p(a)][p(b)][p(c)][p(d)];
                    }
                }
            }
        }
        let driem = self.driem().map(|dr| {
            let mut out = zeros5::<4>();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            for e in 0..4 {
                                out[a][b][c][d][e] = dr[p(a)][p(b)][p(c)][p(d)][p(e)];
                            }
                        }
                    }
                }
            }
            Box::new(out)
        });
        AlgebraicCurvature {
            riem,
            driem,
            orientation: self.orientation.flipped(),
        }
    }

    pub fn to_input(&self) -> CurvatureInput {
        let mut components = Vec::new();
        for (m, &(a, b)) in PAIRS.iter().enumerate() {
            for &(c, d) in &PAIRS[m..] {
                let v = self.riem[a][b][c][d];
                if v != 0.0 {
                    components.push(vec![(a + 1) as f64, (b + 1) as f64, (c + 1) as f64, (d + 1) as f64, v]);
                }
            }
        }
        let mut dcomponents = Vec::new();
        if let Some(dr) = self.driem() {
            for (m, &(a, b)) in PAIRS.iter().enumerate() {
                for &(c, d) in &PAIRS[m..] {
                    for e in 0..4 {
                        let v = dr[a][b][c][d][e];
                        if v != 0.0 {
                            dcomponents.push(vec![
                                (a + 1) as f64,
                                (b + 1) as f64,
                                (c + 1) as f64,
                                (d + 1) as f64,
                                (e + 1) as f64,
                                v,
                            ]);
                        }
                    }
                }
            }
        }
        CurvatureInput {
            orientation: self.orientation,
            components,
            dcomponents,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let input: CurvatureInput = serde_json::from_str(s)?;
        input.into_curvature()
    }
}

/// Serialized curvature: `{"orientation": "negative", "components":
/// [[a,b,c,d,value],...], "dcomponents": [[a,b,c,d,e,value],...]}` with
/// 1-based indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureInput {
    #[serde(default)]
    pub orientation: Orientation,
    pub components: Vec<Vec<f64>>,
    #[serde(default)]
    pub dcomponents: Vec<Vec<f64>>,
}

impl CurvatureInput {
    pub fn into_curvature(self) -> Result<AlgebraicCurvature> {
        let comps = self
            .components
            .iter()
            .map(|row| {
                let (idx, v) = split_row::<4>(row)?;
                Ok((idx, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let dcomps = self
            .dcomponents
            .iter()
            .map(|row| split_row::<5>(row))
            .collect::<Result<Vec<_>>>()?;
        AlgebraicCurvature::from_components(self.orientation, &comps, &dcomps)
    }
}

fn split_row<const K: usize>(row: &[f64]) -> Result<([usize; K], f64)> {
    if row.len() != K + 1 {
        return Err(Error::InvalidInput(format!(
            "component row {row:?} must have {} indices and a value",
            K
        )));
    }
    let mut idx = [0usize; K];
    for (slot, &x) in idx.iter_mut().zip(row.iter()) {
        if x.fract() != 0.0 || !(1.0..=4.0).contains(&x) {
            return Err(Error::IndexOutOfRange(format!("{row:?}")));
        }
        *slot = x as usize;
    }
    Ok((idx, row[K]))
}

fn zero_based<const K: usize>(idx: &[usize; K]) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    for (o, &i) in out.iter_mut().zip(idx.iter()) {
        if !(1..=4).contains(&i) {
            return Err(Error::IndexOutOfRange(fmt_index(idx)));
        }
        *o = i - 1;
    }
    Ok(out)
}

fn fmt_index(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fill_checked(
    t: &mut Tensor4<4>,
    seen: &mut [[[[bool; 4]; 4]; 4]; 4],
    [a, b, c, d]: [usize; 4],
    v: f64,
    label: &[usize],
) -> Result<()> {
    if a == b || c == d {
        if v != 0.0 {
            return Err(Error::ComponentConflict {
                index: fmt_index(label),
                given: v,
                existing: 0.0,
            });
        }
        return Ok(());
    }
    if seen[a][b][c][d] {
        let existing = t[a][b][c][d];
        if (existing - v).abs() > symmetry_tol(existing.abs().max(v.abs())) {
            return Err(Error::ComponentConflict {
                index: fmt_index(label),
                given: v,
                existing,
            });
        }
        return Ok(());
    }
    set_curvature(t, a, b, c, d, v);
    for (i, j) in [(a, b), (b, a)] {
        for (k, l) in [(c, d), (d, c)] {
            seen[i][j][k][l] = true;
            seen[k][l][i][j] = true;
        }
    }
    Ok(())
}

fn collect_violations(t: &Tensor4<4>, tol: f64, extra: Option<usize>, out: &mut Vec<Violation>) {
    let idx = |v: &[usize]| {
        let mut i: Vec<usize> = v.iter().map(|x| x + 1).collect();
        if let Some(e) = extra {
            i.push(e + 1);
        }
        i
    };
    let (anti1, anti2, pair, bianchi) = if extra.is_some() {
        (
            "derivative antisymmetry in first pair",
            "derivative antisymmetry in second pair",
            "derivative pair exchange",
            "derivative first Bianchi identity",
        )
    } else {
        (
            "antisymmetry in first pair",
            "antisymmetry in second pair",
            "pair exchange",
            "first Bianchi identity",
        )
    };
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let r = t[a][b][c][d];
                    let checks = [
                        (anti1, (r + t[b][a][c][d]).abs(), a <= b),
                        (anti2, (r + t[a][b][d][c]).abs(), c <= d),
                        (pair, (r - t[c][d][a][b]).abs(), (a, b) < (c, d)),
                        (bianchi, (r + t[a][c][d][b] + t[a][d][b][c]).abs(), b < c && c < d),
                    ];
                    for (name, res, canonical) in checks {
                        if canonical && res > tol {
                            out.push(Violation {
                                identity: name,
                                indices: idx(&[a, b, c, d]),
                                residual: res,
                            });
                        }
                    }
                }
            }
        }
    }
}

fn validate_tensor(riem: &Tensor4<4>, driem: Option<&Tensor5<4>>) -> Result<()> {
    let mut violations = Vec::new();
    if riem.iter().flatten().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("curvature contains non-finite entries".into()));
    }
    collect_violations(riem, symmetry_tol(max_abs4(riem)), None, &mut violations);
    if let Some(dr) = driem {
        let tol = symmetry_tol(max_abs5(dr));
        for e in 0..4 {
            let slice: Tensor4<4> = std::array::from_fn(|a| {
                std::array::from_fn(|b| std::array::from_fn(|c| std::array::from_fn(|d| dr[a][b][c][d][e])))
            });
            collect_violations(&slice, tol, Some(e), &mut violations);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::SymmetryViolation(violations))
    }
}

/// `(Ric, S)` with `R_{ij} = Σ_k R_{ikjk}`.
pub fn ricci_scalar(c: &AlgebraicCurvature) -> (Sym2, f64) {
    let r = c.riem();
    let ric = Sym2::from_fn(|i, j| (0..4).map(|k| r[i][k][j][k]).sum());
    let s = ric.trace();
    (ric, s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureBlocks {
    pub a: Matrix3<f64>,
    /// Maps Λ₊ to Λ₋: rows index α₋, columns α₊.
    pub b: Matrix3<f64>,
    pub c: Matrix3<f64>,
    pub ric: Sym2,
    pub s: f64,
}

impl CurvatureBlocks {
    /// The curvature operator in the α₊ ⊕ α₋ basis, `[[A, Bᵀ], [B, C]]`.
    pub fn operator(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.a);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(&self.b.transpose());
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&self.b);
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(&self.c);
        m
    }
}

/// A, B, C from the raw-component lists, plus Ricci and scalar curvature.
pub fn decompose_blocks(c: &AlgebraicCurvature) -> CurvatureBlocks {
    let r = |a, b, cc, d| c.r(a, b, cc, d);
    let a = Matrix3::new(
        0.5 * (r(1, 2, 1, 2) + 2.0 * r(1, 2, 3, 4) + r(3, 4, 3, 4)),
        0.5 * (r(1, 2, 1, 3) + r(1, 3, 3, 4) + r(1, 2, 4, 2) + r(3, 4, 4, 2)),
        0.5 * (r(1, 2, 1, 4) + r(1, 4, 3, 4) + r(1, 2, 2, 3) + r(2, 3, 3, 4)),
        0.5 * (r(1, 2, 1, 3) + r(1, 3, 3, 4) + r(1, 2, 4, 2) + r(3, 4, 4, 2)),
        0.5 * (r(1, 3, 1, 3) + 2.0 * r(1, 3, 4, 2) + r(4, 2, 4, 2)),
        0.5 * (r(1, 3, 1, 4) + r(1, 4, 4, 2) + r(1, 3, 2, 3) + r(2, 3, 4, 2)),
        0.5 * (r(1, 2, 1, 4) + r(1, 4, 3, 4) + r(1, 2, 2, 3) + r(2, 3, 3, 4)),
        0.5 * (r(1, 3, 1, 4) + r(1, 4, 4, 2) + r(1, 3, 2, 3) + r(2, 3, 4, 2)),
        0.5 * (r(1, 4, 1, 4) + 2.0 * r(1, 4, 2, 3) + r(2, 3, 2, 3)),
    );
    let b = Matrix3::new(
        0.5 * (r(1, 2, 1, 2) - r(3, 4, 3, 4)),
        0.5 * (r(1, 2, 1, 3) - r(1, 3, 3, 4) + r(1, 2, 4, 2) - r(3, 4, 4, 2)),
        0.5 * (r(1, 2, 1, 4) - r(1, 4, 3, 4) + r(1, 2, 2, 3) - r(2, 3, 3, 4)),
        0.5 * (r(1, 2, 1, 3) + r(1, 3, 3, 4) - r(1, 2, 4, 2) - r(3, 4, 4, 2)),
        0.5 * (r(1, 3, 1, 3) - r(4, 2, 4, 2)),
        0.5 * (r(1, 3, 1, 4) + r(1, 3, 2, 3) - r(1, 4, 4, 2) - r(2, 3, 4, 2)),
        0.5 * (r(1, 2, 1, 4) + r(1, 4, 3, 4) - r(1, 2, 2, 3) - r(2, 3, 3, 4)),
        0.5 * (r(1, 3, 1, 4) - r(1, 3, 2, 3) + r(1, 4, 4, 2) - r(2, 3, 4, 2)),
        0.5 * (r(1, 4, 1, 4) - r(2, 3, 2, 3)),
    );
    let cm = Matrix3::new(
        0.5 * (r(1, 2, 1, 2) - 2.0 * r(1, 2, 3, 4) + r(3, 4, 3, 4)),
        0.5 * (r(1, 2, 1, 3) - r(1, 3, 3, 4) - r(1, 2, 4, 2) + r(3, 4, 4, 2)),
        0.5 * (r(1, 2, 1, 4) - r(1, 4, 3, 4) - r(1, 2, 2, 3) + r(2, 3, 3, 4)),
        0.5 * (r(1, 2, 1, 3) - r(1, 3, 3, 4) - r(1, 2, 4, 2) + r(3, 4, 4, 2)),
        0.5 * (r(1, 3, 1, 3) - 2.0 * r(1, 3, 4, 2) + r(4, 2, 4, 2)),
        0.5 * (r(1, 3, 1, 4) - r(1, 4, 4, 2) - r(1, 3, 2, 3) + r(2, 3, 4, 2)),
        0.5 * (r(1, 2, 1, 4) - r(1, 4, 3, 4) - r(1, 2, 2, 3) + r(2, 3, 3, 4)),
        0.5 * (r(1, 3, 1, 4) - r(1, 4, 4, 2) - r(1, 3, 2, 3) + r(2, 3, 4, 2)),
        0.5 * (r(1, 4, 1, 4) - 2.0 * r(1, 4, 2, 3) + r(2, 3, 2, 3)),
    );
    let (ric, s) = ricci_scalar(c);
    CurvatureBlocks { a, b, c: cm, ric, s }
}

/// A and B from their q-quantity expressions.
pub fn blocks_from_q(q: &QTable) -> (Matrix3<f64>, Matrix3<f64>) {
    let (q2, q3, q4) = (
        |a: usize, b: usize| q.q2[(a - 1, b - 1)],
        |a: usize, b: usize| q.q3[(a - 1, b - 1)],
        |a: usize, b: usize| q.q4[(a - 1, b - 1)],
    );
    let a12 = 0.5 * (q3(1, 2) + q3(3, 4));
    let a13 = 0.5 * (q4(1, 2) + q4(3, 4));
    let a23 = 0.5 * (q3(1, 4) + q3(2, 3));
    let a = Matrix3::new(
        0.5 * (q2(1, 2) + q2(3, 4)),
        a12,
        a13,
        a12,
        0.5 * (q3(1, 3) + q3(4, 2)),
        a23,
        a13,
        a23,
        0.5 * (q4(1, 4) + q4(2, 3)),
    );
    let b = Matrix3::new(
        0.5 * (q2(1, 2) - q2(3, 4)),
        0.5 * (q3(1, 2) - q3(3, 4)),
        0.5 * (q4(1, 2) - q4(3, 4)),
        0.5 * (q2(1, 3) - q2(4, 2)),
        0.5 * (q3(1, 3) - q3(4, 2)),
        0.5 * (q4(1, 3) - q4(4, 2)),
        0.5 * (q2(1, 4) - q2(2, 3)),
        0.5 * (q3(1, 4) - q3(2, 3)),
        0.5 * (q4(1, 4) - q4(2, 3)),
    );
    (a, b)
}

/// Matrix of the curvature operator in the `θⁱ∧θʲ` basis, entry
/// `[(ij), (kl)] = R_{ijkl}`.
pub fn operator_matrix(c: &AlgebraicCurvature) -> Matrix6<f64> {
    let r = c.riem();
    Matrix6::from_fn(|m, n| {
        let (i, j) = PAIRS[m];
        let (k, l) = PAIRS[n];
        r[i][j][k][l]
    })
}

/// Inverse of [`decompose_blocks`]: the curvature whose operator has blocks
/// `a`, `b`, `c`. Requires `tr a = tr c` (the first Bianchi identity).
pub fn from_blocks(
    a: &Matrix3<f64>,
    b: &Matrix3<f64>,
    c: &Matrix3<f64>,
    orientation: Orientation,
) -> Result<AlgebraicCurvature> {
    let gap = a.trace() - c.trace();
    if gap.abs() > symmetry_tol(a.amax().max(c.amax())) {
        return Err(Error::InvalidInput(format!(
            "tr A - tr C = {gap:.3e}, blocks violate the Bianchi identity"
        )));
    }
    let asym = (a - a.transpose()).amax().max((c - c.transpose()).amax());
    if asym > symmetry_tol(a.amax().max(c.amax())) {
        return Err(Error::InvalidInput(format!(
            "A or C not symmetric (residual {asym:.3e})"
        )));
    }
    let mut op = Matrix6::zeros();
    op.fixed_view_mut::<3, 3>(0, 0).copy_from(a);
    op.fixed_view_mut::<3, 3>(0, 3).copy_from(&b.transpose());
    op.fixed_view_mut::<3, 3>(3, 0).copy_from(b);
    op.fixed_view_mut::<3, 3>(3, 3).copy_from(c);
    let alpha = alpha_matrix();
    let m = alpha * op * alpha.transpose();
    let mut riem = zeros4::<4>();
    for (p, &(i, j)) in PAIRS.iter().enumerate() {
        for (q, &(k, l)) in PAIRS.iter().enumerate().skip(p) {
            set_curvature(&mut riem, i, j, k, l, 0.5 * (m[(p, q)] + m[(q, p)]));
        }
    }
    AlgebraicCurvature::new(riem, orientation)
}

/// Pairs in the order the Weyl table uses them, with the α index they belong
/// to and the sign they carry in α₋.
const WEYL_PAIRS: [((usize, usize), usize, f64); 6] = [
    ((0, 1), 0, 1.0),
    ((0, 2), 1, 1.0),
    ((0, 3), 2, 1.0),
    ((1, 2), 2, -1.0),
    ((3, 1), 1, -1.0),
    ((2, 3), 0, -1.0),
];

/// `(W⁺, W⁻)`. The A-part of the table is `W⁺` for a positively oriented
/// coframe and `W⁻` for a negatively oriented one.
pub fn weyl_split(c: &AlgebraicCurvature) -> (Tensor4<4>, Tensor4<4>) {
    let blocks = decompose_blocks(c);
    let s12 = blocks.s / 12.0;
    let mut a_part = zeros4::<4>();
    let mut c_part = zeros4::<4>();
    for (m, &((i, j), ki, si)) in WEYL_PAIRS.iter().enumerate() {
        for &((k, l), kk, sk) in &WEYL_PAIRS[m..] {
            let shift = if ki == kk { s12 } else { 0.0 };
            set_curvature(&mut a_part, i, j, k, l, 0.5 * (blocks.a[(ki, kk)] - shift));
            set_curvature(&mut c_part, i, j, k, l, 0.5 * si * sk * (blocks.c[(ki, kk)] - shift));
        }
    }
    match c.orientation() {
        Orientation::Positive => (a_part, c_part),
        Orientation::Negative => (c_part, a_part),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    pub q2: nalgebra::Matrix4<f64>,
    pub q3: nalgebra::Matrix4<f64>,
    pub q4: nalgebra::Matrix4<f64>,
    /// `dq[a][b][c] = (q_{ab})_c`, zero for locally symmetric input.
    pub dq2: Tensor3<4>,
    pub dq3: Tensor3<4>,
    pub dq4: Tensor3<4>,
}

impl QTable {
    /// Largest violation of the three Bianchi relations between the tables.
    pub fn bianchi_residual(&self) -> f64 {
        let (q2, q3, q4) = (&self.q2, &self.q3, &self.q4);
        let r1 = q3[(0, 1)] + q3[(2, 3)] - q2[(0, 2)] - q2[(3, 1)];
        let r2 = q4[(0, 1)] + q4[(2, 3)] - q2[(0, 3)] - q2[(1, 2)];
        let r3 = q3[(0, 3)] + q3[(1, 2)] - q4[(0, 2)] - q4[(3, 1)];
        r1.abs().max(r2.abs()).max(r3.abs())
    }
}

/// `q²_{ab} = R_{12ab}+R_{34ab}`, `q³_{ab} = R_{13ab}+R_{42ab}`,
/// `q⁴_{ab} = R_{14ab}+R_{23ab}` and the same combinations of `∇Riem`.
pub fn q_tables(c: &AlgebraicCurvature) -> QTable {
    let r = c.riem();
    let q = |(i, j): (usize, usize), (k, l): (usize, usize)| {
        nalgebra::Matrix4::from_fn(|a, b| r[i][j][a][b] + r[k][l][a][b])
    };
    let dq = |(i, j): (usize, usize), (k, l): (usize, usize)| {
        let mut out = zeros3::<4>();
        if let Some(dr) = c.driem() {
            for a in 0..4 {
                for b in 0..4 {
                    for e in 0..4 {
                        out[a][b][e] = dr[i][j][a][b][e] + dr[k][l][a][b][e];
                    }
                }
            }
        }
        out
    };
    QTable {
        q2: q((0, 1), (2, 3)),
        q3: q((0, 2), (3, 1)),
        q4: q((0, 3), (1, 2)),
        dq2: dq((0, 1), (2, 3)),
        dq3: dq((0, 2), (3, 1)),
        dq4: dq((0, 3), (1, 2)),
    }
}

/// Components in the frame `ẽ_j = Σᵢ r_ij eᵢ`:
/// `R̃_{ijkl} = r_ai r_bj r_ck r_dl R_{abcd}`, and likewise on five slots for `∇Riem`.
pub fn rotate_curvature(c: &AlgebraicCurvature, rot: &FrameRotation) -> AlgebraicCurvature {
    let r = &rot.matrix;
    let mut t = *c.riem();
    for slot in 0..4 {
        let mut next = zeros4::<4>();
        for i0 in 0..4 {
            for i1 in 0..4 {
                for i2 in 0..4 {
                    for i3 in 0..4 {
                        let idx = [i0, i1, i2, i3];
                        let mut acc = 0.0;
                        for a in 0..4 {
                            let mut src = idx;
                            src[slot] = a;
                            acc += r[(a, idx[slot])] * t[src[0]][src[1]][src[2]][src[3]];
                        }
                        next[i0][i1][i2][i3] = acc;
                    }
                }
            }
        }
        t = next;
    }
    let driem = c.driem().map(|dr| {
        let mut t = *dr;
        for slot in 0..5 {
            let mut next = zeros5::<4>();
            for i0 in 0..4 {
                for i1 in 0..4 {
                    for i2 in 0..4 {
                        for i3 in 0..4 {
                            for i4 in 0..4 {
                                let idx = [i0, i1, i2, i3, i4];
                                let mut acc = 0.0;
                                for a in 0..4 {
                                    let mut src = idx;
                                    src[slot] = a;
                                    acc += r[(a, idx[slot])] * t[src[0]][src[1]][src[2]][src[3]][src[4]];
                                }
                                next[i0][i1][i2][i3][i4] = acc;
                            }
                        }
                    }
                }
            }
            t = next;
        }
        Box::new(t)
    });
    AlgebraicCurvature {
        riem: t,
        driem,
        orientation: c.orientation(),
    }
}

/// `Ã = a₊ᵀ A a₊`, `B̃ = a₋ᵀ B a₊`, `C̃ = a₋ᵀ C a₋`, `R̃ic = rᵀ Ric r`.
pub fn transform_blocks(b: &CurvatureBlocks, rot: &FrameRotation) -> CurvatureBlocks {
    let (p, m) = (&rot.plus, &rot.minus);
    CurvatureBlocks {
        a: p.transpose() * b.a * p,
        b: m.transpose() * b.b * p,
        c: m.transpose() * b.c * m,
        ric: b.ric.rotated(&rot.matrix),
        s: b.s,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Predicates {
    pub einstein: bool,
    pub einstein_residual: f64,
    pub self_dual: bool,
    pub self_dual_residual: f64,
    pub anti_self_dual: bool,
    pub anti_self_dual_residual: f64,
}

/// Einstein ⇔ `‖B‖∞ ≤ tol`; self-duality compares the orientation-appropriate
/// block with `(S/12)I₃`.
pub fn predicates(c: &AlgebraicCurvature, tol: f64) -> Predicates {
    let blocks = decompose_blocks(c);
    let scalar = Matrix3::identity() * (blocks.s / 12.0);
    let a_res = (blocks.a - scalar).amax();
    let c_res = (blocks.c - scalar).amax();
    let (sd, asd) = match c.orientation() {
        Orientation::Positive => (c_res, a_res),
        Orientation::Negative => (a_res, c_res),
    };
    let e = blocks.b.amax();
    Predicates {
        einstein: e <= tol,
        einstein_residual: e,
        self_dual: sd <= tol,
        self_dual_residual: sd,
        anti_self_dual: asd <= tol,
        anti_self_dual_residual: asd,
    }
}
