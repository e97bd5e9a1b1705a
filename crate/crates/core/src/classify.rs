//! Gray–Hervella membership, linear and quadratic conditions on `∇J`, the
//! scalar-curvature gaps, and the frame-scanning engine that stands in for
//! "for every orthonormal frame" quantifiers.
//!
//! A frame scan evaluates a residual at a fixed list of structured rotations
//! (the explicit `(a₊, a₋)` pairs used in the classical arguments, applied
//! both to the input frame and to an eigenframe of `A`) and at `n` Haar
//! samples drawn from a counter-based stream, and reduces with `max`, so
//! results do not depend on evaluation order or thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::curvature::{decompose_blocks, predicates, q_tables, rotate_curvature, AlgebraicCurvature};
use crate::error::{Error, Result};
use crate::lambda2::{sample_rotation_indexed, FrameRotation};
use crate::tensor::{max_abs3, Tensor3};
use crate::twistor::{build, j_matrix, nabla_j, nijenhuis_oracle, normalize_orientation, Structure, TwistorPointData};

/// Default membership threshold on residuals.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default number of Haar frames per scan.
pub const DEFAULT_SAMPLES: usize = 1000;

/// `J` as a signed permutation: `J e_p = sign[p] · e_{target[p]}`.
#[derive(Clone, Copy)]
struct SparseJ {
    target: [usize; 6],
    sign: [f64; 6],
}

impl SparseJ {
    fn new(structure: Structure) -> Self {
        let j = j_matrix(structure);
        let mut target = [0; 6];
        let mut sign = [0.0; 6];
        for p in 0..6 {
            for r in 0..6 {
                if j[(r, p)] != 0.0 {
                    target[p] = r;
                    sign[p] = j[(r, p)];
                }
            }
        }
        SparseJ { target, sign }
    }
}

/// Coefficients `a₁..a₈` of the general linear condition on `∇J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearCondition(pub [f64; 8]);

impl LinearCondition {
    pub const KAEHLER: LinearCondition = LinearCondition([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    pub const NEARLY_KAEHLER: LinearCondition = LinearCondition([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    pub const QUASI_KAEHLER: LinearCondition = LinearCondition([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    pub const Q2_KAEHLER: LinearCondition = LinearCondition([1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
    /// Reproduces `N^t_{pq}` term by term.
    pub const NIJENHUIS: LinearCondition = LinearCondition([0.0, 0.0, -1.0, 1.0, 0.0, 0.0, -1.0, 1.0]);

    pub fn is_nonzero(&self) -> bool {
        self.0.iter().any(|&a| a != 0.0)
    }

    fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(Error::UnknownCheckName(format!("linear:{spec} (need 8 coefficients)")));
        }
        let mut a = [0.0; 8];
        for (slot, p) in a.iter_mut().zip(parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::UnknownCheckName(format!("linear:{spec}")))?;
        }
        Ok(LinearCondition(a))
    }
}

/// Max over `(p, q, t)` of the eight-term combination
/// `a₁J^t_{q,p} + a₂J^t_{p,q} + a₃J^r_pJ^t_{q,r} + a₄J^r_qJ^t_{p,r}
///  + a₅J^r_pJ^s_qJ^t_{s,r} + a₆J^r_qJ^s_pJ^t_{s,r} + a₇J^s_qJ^t_{s,p} + a₈J^s_pJ^t_{s,q}`.
pub fn linear_residual_table(nabla: &Tensor3<6>, cond: &LinearCondition, structure: Structure) -> f64 {
    let j = SparseJ::new(structure);
    let a = cond.0;
    let mut worst = 0.0f64;
    for p in 0..6 {
        let (jp, sp) = (j.target[p], j.sign[p]);
        for q in 0..6 {
            let (jq, sq) = (j.target[q], j.sign[q]);
            for t in 0..6 {
                let n = &nabla[t];
                let v = a[0] * n[q][p]
                    + a[1] * n[p][q]
                    + a[2] * sp * n[q][jp]
                    + a[3] * sq * n[p][jq]
                    + a[4] * sp * sq * n[jq][jp]
                    + a[5] * sq * sp * n[jp][jq]
                    + a[6] * sq * n[jq][p]
                    + a[7] * sp * n[jp][q];
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}

pub fn linear_residual(data: &TwistorPointData, cond: &LinearCondition, structure: Structure) -> f64 {
    linear_residual_table(data.nabla(structure), cond, structure)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GrayHervellaClass {
    K,
    AK,
    NK,
    QK,
    QQK,
    SK,
}

impl GrayHervellaClass {
    pub const ALL: [GrayHervellaClass; 6] = [
        GrayHervellaClass::K,
        GrayHervellaClass::AK,
        GrayHervellaClass::NK,
        GrayHervellaClass::QK,
        GrayHervellaClass::QQK,
        GrayHervellaClass::SK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GrayHervellaClass::K => "K",
            GrayHervellaClass::AK => "AK",
            GrayHervellaClass::NK => "NK",
            GrayHervellaClass::QK => "QK",
            GrayHervellaClass::QQK => "QQK",
            GrayHervellaClass::SK => "SK",
        }
    }

    /// Max absolute value of the defining component equation.
    pub fn residual(self, nabla: &Tensor3<6>, structure: Structure) -> f64 {
        let j = SparseJ::new(structure);
        let n = nabla;
        let mut worst = 0.0f64;
        match self {
            GrayHervellaClass::K => return max_abs3(n),
            GrayHervellaClass::SK => {
                for q in 0..6 {
                    worst = worst.max((0..6).map(|p| n[q][p][p]).sum::<f64>().abs());
                }
                return worst;
            }
            _ => {}
        }
        for q in 0..6 {
            for p in 0..6 {
                for t in 0..6 {
                    let twist = |x: usize, y: usize| j.sign[x] * j.sign[y] * n[q][j.target[y]][j.target[x]];
                    let v = match self {
                        GrayHervellaClass::AK => n[q][p][t] + n[p][t][q] + n[t][q][p],
                        GrayHervellaClass::NK => n[q][p][t] + n[q][t][p],
                        // J^r_t J^s_p J^q_{s,r}
                        GrayHervellaClass::QK => n[q][p][t] + twist(t, p),
                        GrayHervellaClass::QQK => n[q][p][t] + n[q][t][p] + twist(t, p) + twist(p, t),
                        GrayHervellaClass::K | GrayHervellaClass::SK => unreachable!(),
                    };
                    worst = worst.max(v.abs());
                }
            }
        }
        worst
    }
}

impl fmt::Display for GrayHervellaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMembership {
    pub class: GrayHervellaClass,
    pub member: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub structure: Structure,
    pub t: f64,
    pub tol: f64,
    pub memberships: Vec<ClassMembership>,
}

impl ClassificationReport {
    pub fn member(&self, class: GrayHervellaClass) -> bool {
        self.memberships.iter().any(|m| m.class == class && m.member)
    }

    pub fn residual(&self, class: GrayHervellaClass) -> f64 {
        self.memberships
            .iter()
            .find(|m| m.class == class)
            .map(|m| m.residual)
            .unwrap_or(f64::NAN)
    }

    /// `K ⇒ AK ∧ NK`, `AK ∨ NK ⇒ QK ⇒ QQK ⇒ SK` on the reported flags.
    pub fn inclusion_consistent(&self) -> bool {
        use GrayHervellaClass::*;
        let m = |c| self.member(c);
        (!m(K) || (m(AK) && m(NK))) && (!(m(AK) || m(NK)) || m(QK)) && (!m(QK) || m(QQK)) && (!m(QQK) || m(SK))
    }

    /// The most specific class the structure belongs to, if any.
    pub fn strongest(&self) -> Option<GrayHervellaClass> {
        GrayHervellaClass::ALL.into_iter().find(|&c| self.member(c))
    }
}

pub fn gray_hervella(data: &TwistorPointData, structure: Structure, tol: f64) -> ClassificationReport {
    let nabla = data.nabla(structure);
    let memberships = GrayHervellaClass::ALL
        .iter()
        .map(|&class| {
            let residual = class.residual(nabla, structure);
            ClassMembership {
                class,
                member: residual <= tol,
                residual,
            }
        })
        .collect();
    ClassificationReport {
        structure,
        t: data.t,
        tol,
        memberships,
    }
}

/// `Σ_t (J^t_{p,q} + J^t_{q,p})(J^t_{p,p} − J^t_{q,q})` for 0-based `p, q`.
pub fn quadratic_einstein_slot(nabla: &Tensor3<6>, p: usize, q: usize) -> f64 {
    (0..6)
        .map(|t| (nabla[t][p][q] + nabla[t][q][p]) * (nabla[t][p][p] - nabla[t][q][q]))
        .sum()
}

pub fn quadratic_einstein_table(nabla: &Tensor3<6>) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..6 {
        for q in 0..6 {
            worst = worst.max(quadratic_einstein_slot(nabla, p, q).abs());
        }
    }
    worst
}

pub fn quadratic_einstein_residual(data: &TwistorPointData) -> f64 {
    quadratic_einstein_table(&data.nabla_j)
}

/// `(J^t_{q,p} + J^t_{p,q}) N^t_{pq}` for 0-based `t, p, q`, no summation.
pub fn nijenhuis_quadratic_slot(nabla: &Tensor3<6>, nij: &Tensor3<6>, t: usize, p: usize, q: usize) -> f64 {
    (nabla[t][q][p] + nabla[t][p][q]) * nij[t][p][q]
}

pub fn nijenhuis_quadratic_table(nabla: &Tensor3<6>, nij: &Tensor3<6>) -> f64 {
    let mut worst = 0.0f64;
    for t in 0..6 {
        for p in 0..6 {
            for q in 0..6 {
                worst = worst.max(nijenhuis_quadratic_slot(nabla, nij, t, p, q).abs());
            }
        }
    }
    worst
}

pub fn nijenhuis_quadratic_residual(data: &TwistorPointData) -> f64 {
    nijenhuis_quadratic_table(&data.nabla_j, &data.nj)
}

/// `(S̄_J + ½|∇J|², |∇J|² − S̄_J)`; both are non-negative exactly when the
/// two-sided estimate on the holomorphic scalar curvature holds.
pub fn scalar_gaps(data: &TwistorPointData) -> (f64, f64) {
    (data.sj + 0.5 * data.norm2_nabla_j, data.norm2_nabla_j - data.sj)
}

/// A named residual evaluated at one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Check {
    QuadraticEinstein,
    NijenhuisQuadratic,
    /// `max |N^r_{pq}|` by contraction.
    Nijenhuis,
    /// `‖B‖∞` in the rotated frame.
    BlockB,
    Class(GrayHervellaClass),
    Linear(LinearCondition),
    /// Signed `S̄_J + ½|∇J|²`.
    GapLow,
    /// Signed `|∇J|² − S̄_J`.
    GapHigh,
}

impl Check {
    pub fn name(&self) -> String {
        match self {
            Check::QuadraticEinstein => "quadratic_einstein".into(),
            Check::NijenhuisQuadratic => "nijenhuis_quadratic".into(),
            Check::Nijenhuis => "nijenhuis".into(),
            Check::BlockB => "block_b".into(),
            Check::Class(c) => c.name().into(),
            Check::Linear(l) => {
                let parts: Vec<String> = l.0.iter().map(|a| format!("{a}")).collect();
                format!("linear:{}", parts.join(","))
            }
            Check::GapLow => "gap_low".into(),
            Check::GapHigh => "gap_high".into(),
        }
    }

    /// Names accepted by [`FromStr`].
    pub const NAMES: [&'static str; 13] = [
        "quadratic_einstein",
        "nijenhuis_quadratic",
        "nijenhuis",
        "block_b",
        "K",
        "AK",
        "NK",
        "QK",
        "QQK",
        "SK",
        "gap_low",
        "gap_high",
        "linear:a1,a2,a3,a4,a5,a6,a7,a8",
    ];

    fn needs_full_build(&self) -> bool {
        matches!(self, Check::GapLow | Check::GapHigh)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("linear:") {
            return LinearCondition::parse(rest).map(Check::Linear);
        }
        Ok(match s {
            "quadratic_einstein" => Check::QuadraticEinstein,
            "nijenhuis_quadratic" => Check::NijenhuisQuadratic,
            "nijenhuis" => Check::Nijenhuis,
            "block_b" => Check::BlockB,
            "gap_low" => Check::GapLow,
            "gap_high" => Check::GapHigh,
            "K" => Check::Class(GrayHervellaClass::K),
            "AK" => Check::Class(GrayHervellaClass::AK),
            "NK" => Check::Class(GrayHervellaClass::NK),
            "QK" => Check::Class(GrayHervellaClass::QK),
            "QQK" => Check::Class(GrayHervellaClass::QQK),
            "SK" => Check::Class(GrayHervellaClass::SK),
            other => return Err(Error::UnknownCheckName(other.to_string())),
        })
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub t: f64,
    pub structure: Structure,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            n: DEFAULT_SAMPLES,
            seed: 0,
            tol: DEFAULT_TOL,
            t: 1.0,
            structure: Structure::Ahs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameResidual {
    pub frame: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub check: Check,
    pub structure: Structure,
    pub t: f64,
    pub seed: u64,
    pub tol: f64,
    pub n_samples: usize,
    pub frames_checked: usize,
    pub worst_residual: f64,
    pub worst_frame_label: String,
    pub worst_frame: [[f64; 4]; 4],
    pub min_residual: f64,
    pub within_tol: bool,
    pub structured: Vec<FrameResidual>,
}

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The `SO(3)` matrices used as `a₊` / `a₋` in the structured frame list.
pub fn structured_so3() -> Vec<(&'static str, Matrix3<f64>)> {
    vec![
        ("P13", Matrix3::new(0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0)),
        ("P23", Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0)),
        ("P12", Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0)),
        ("P21", Matrix3::new(0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0)),
        ("P31", Matrix3::new(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0)),
        ("G23", Matrix3::new(1.0, 0.0, 0.0, 0.0, S, -S, 0.0, S, S)),
        ("G12", Matrix3::new(S, -S, 0.0, S, S, 0.0, 0.0, 0.0, 1.0)),
        ("G13", Matrix3::new(S, 0.0, -S, 0.0, 1.0, 0.0, S, 0.0, S)),
    ]
}

/// Rotation whose `a₊` diagonalizes `A` (ascending eigenvalues), `a₋ = I`.
pub fn eigenframe(c: &AlgebraicCurvature) -> FrameRotation {
    let a = decompose_blocks(c).a;
    let eig = SymmetricEigen::new(a);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut v = Matrix3::from_fn(|r, k| eig.eigenvectors[(r, order[k])]);
    if v.determinant() < 0.0 {
        v.column_mut(2).neg_mut();
    }
    FrameRotation::from_pair(&v, &Matrix3::identity()).unwrap_or_else(|_| FrameRotation::identity())
}

/// Labelled structured frames for an input, in a fixed order.
pub fn structured_frames(c: &AlgebraicCurvature) -> Vec<(String, FrameRotation)> {
    let id3 = Matrix3::identity();
    let pairs = structured_so3();
    let mut steps: Vec<(String, FrameRotation)> = Vec::new();
    for (name, m) in &pairs {
        for (label, plus, minus) in [
            (format!("({name},I)"), m, &id3),
            (format!("(I,{name})"), &id3, m),
            (format!("({name},{name})"), m, m),
        ] {
            let rot = FrameRotation::from_pair(plus, minus).expect("structured matrices are rotations");
            steps.push((label, rot));
        }
    }
    let g23 = FrameRotation::from_pair(&pairs[5].1, &id3).expect("rotation");
    let mut out = Vec::new();
    for (base_label, base) in [
        ("identity".to_string(), FrameRotation::identity()),
        ("eigen(A)".to_string(), eigenframe(c)),
    ] {
        out.push((base_label.clone(), base));
        for (label, step) in &steps {
            out.push((format!("{base_label}*{label}"), base.then(step)));
        }
        for (name, m) in &pairs[..5] {
            let step = FrameRotation::from_pair(m, &id3).expect("rotation");
            out.push((format!("{base_label}*(G23,I)*({name},I)"), base.then(&g23).then(&step)));
        }
    }
    out
}

/// Everything a check may need at one frame.
struct FrameData {
    nabla: Tensor3<6>,
    structure: Structure,
    curvature: AlgebraicCurvature,
    full: Option<TwistorPointData>,
}

impl FrameData {
    fn new(c: &AlgebraicCurvature, rot: &FrameRotation, cfg: &ScanConfig, full: bool) -> Result<Self> {
        let curvature = rotate_curvature(c, rot);
        let q = q_tables(&curvature);
        let nabla = nabla_j(&q, cfg.t, cfg.structure);
        let full = if full { Some(build(&curvature, cfg.t)?) } else { None };
        Ok(FrameData {
            nabla,
            structure: cfg.structure,
            curvature,
            full,
        })
    }

    fn eval(&self, check: &Check) -> f64 {
        match check {
            Check::QuadraticEinstein => quadratic_einstein_table(&self.nabla),
            Check::NijenhuisQuadratic => {
                nijenhuis_quadratic_table(&self.nabla, &nijenhuis_oracle(&self.nabla, self.structure))
            }
            Check::Nijenhuis => max_abs3(&nijenhuis_oracle(&self.nabla, self.structure)),
            Check::BlockB => decompose_blocks(&self.curvature).b.amax(),
            Check::Class(c) => c.residual(&self.nabla, self.structure),
            Check::Linear(l) => linear_residual_table(&self.nabla, l, self.structure),
            Check::GapLow | Check::GapHigh => {
                let data = self.full.as_ref().expect("full build requested");
                let (lo, hi) = scalar_gaps(data);
                if matches!(check, Check::GapLow) {
                    lo
                } else {
                    hi
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Extremes {
    worst: (f64, usize),
    min: f64,
}

impl Extremes {
    fn single(v: f64, i: usize) -> Self {
        Extremes { worst: (v, i), min: v }
    }

    fn merge(a: Extremes, b: Extremes) -> Extremes {
        // max residual, ties and NaN resolved toward the lower frame index
        let worst = match (a.worst.0.is_nan(), b.worst.0.is_nan()) {
            (true, false) => a.worst,
            (false, true) => b.worst,
            _ if a.worst.0 > b.worst.0 || (a.worst.0 == b.worst.0 && a.worst.1 < b.worst.1) => a.worst,
            (true, true) if a.worst.1 < b.worst.1 => a.worst,
            _ => b.worst,
        };
        Extremes {
            worst,
            min: a.min.min(b.min),
        }
    }
}

/// Evaluates several checks over the same frames; one report per check.
pub fn frame_scan_many(c: &AlgebraicCurvature, checks: &[Check], cfg: &ScanConfig) -> Result<Vec<ScanReport>> {
    c.validate()?;
    if !(cfg.t > 0.0) {
        return Err(Error::NonPositiveT(cfg.t));
    }
    let (c, _) = normalize_orientation(c);
    let full = checks.iter().any(Check::needs_full_build);
    let structured = structured_frames(&c);
    let n_struct = structured.len();
    let frame_at = |i: usize| -> (String, FrameRotation) {
        if i < n_struct {
            structured[i].clone()
        } else {
            let k = (i - n_struct) as u64;
            (format!("haar:{k}"), sample_rotation_indexed(cfg.seed, k))
        }
    };
    let total = n_struct + cfg.n;
    let values: Vec<Vec<f64>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let (_, rot) = frame_at(i);
            let fd = FrameData::new(&c, &rot, cfg, full)?;
            Ok(checks.iter().map(|ch| fd.eval(ch)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut reports = Vec::with_capacity(checks.len());
    for (k, check) in checks.iter().enumerate() {
        let ext = values
            .par_iter()
            .enumerate()
            .map(|(i, row)| Extremes::single(row[k], i))
            .reduce_with(Extremes::merge)
            .unwrap_or(Extremes {
                worst: (f64::NAN, 0),
                min: f64::NAN,
            });
        let (label, rot) = frame_at(ext.worst.1);
        let worst_frame = std::array::from_fn(|i| std::array::from_fn(|j| rot.matrix[(i, j)]));
        reports.push(ScanReport {
            check: *check,
            structure: cfg.structure,
            t: cfg.t,
            seed: cfg.seed,
            tol: cfg.tol,
            n_samples: cfg.n,
            frames_checked: total,
            worst_residual: ext.worst.0,
            worst_frame_label: label,
            worst_frame,
            min_residual: ext.min,
            within_tol: ext.worst.0 <= cfg.tol,
            structured: structured
                .iter()
                .zip(values.iter())
                .map(|((l, _), row)| FrameResidual {
                    frame: l.clone(),
                    residual: row[k],
                })
                .collect(),
        });
    }
    Ok(reports)
}

pub fn frame_scan(c: &AlgebraicCurvature, check: &Check, cfg: &ScanConfig) -> Result<ScanReport> {
    Ok(frame_scan_many(c, std::slice::from_ref(check), cfg)?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// `J` integrable ⇔ self-dual.
    Integrability,
    /// Gray–Hervella classes of `J`.
    MuskarovJ,
    /// Gray–Hervella classes of `𝐉`.
    MuskarovJJ,
    /// Linear conditions on `∇J` / `∇𝐉` force self-duality.
    Linear,
    /// Quadratic characterization of Einstein metrics.
    Quadratic,
    /// Nijenhuis-weighted quadratic condition.
    NijQuadratic,
    /// Two-sided holomorphic scalar curvature estimate.
    Gaps,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::Integrability,
        TheoremId::MuskarovJ,
        TheoremId::MuskarovJJ,
        TheoremId::Linear,
        TheoremId::Quadratic,
        TheoremId::NijQuadratic,
        TheoremId::Gaps,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremId::Integrability => "T5.2-integrability",
            TheoremId::MuskarovJ => "T5.4-muskarov-J",
            TheoremId::MuskarovJJ => "T5.6-muskarov-JJ",
            TheoremId::Linear => "T1.1-linear",
            TheoremId::Quadratic => "T1.2-quadratic",
            TheoremId::NijQuadratic => "T1.3-nij-quadratic",
            TheoremId::Gaps => "T1.4-gaps",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the full id or its leading tag (`T5.4`, `T5.6-AK`, ...).
    fn from_str(s: &str) -> Result<Self> {
        let tag = s.split('-').next().unwrap_or("");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id() == s || t.id().split('-').next() == Some(tag))
            .ok_or_else(|| Error::UnknownTheoremId(s.to_string()))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Flagged,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Flagged => "FLAGGED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub theorem: String,
    pub input_fingerprint: String,
    pub verdict: Verdict,
    pub residuals: BTreeMap<String, f64>,
    pub frames_checked: usize,
    pub t: f64,
    pub seed: u64,
    pub n: usize,
    pub tol: f64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Fiber parameter; `None` means 1, except for the scalar-gap check
    /// where it means `t² = 12/S` when `S > 0`.
    pub t: Option<f64>,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            t: None,
            n: DEFAULT_SAMPLES,
            seed: 0,
            tol: DEFAULT_TOL,
        }
    }
}

/// SHA-256 of the canonical JSON form of the curvature.
pub fn fingerprint(c: &AlgebraicCurvature) -> String {
    let json = serde_json::to_string(&c.to_input()).expect("curvature serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// Coefficient vectors tried by the linear-condition check: the named
/// conditions, the eight unit vectors, and `extra` Gaussian directions.
pub fn linear_condition_samples(seed: u64, extra: usize) -> Vec<LinearCondition> {
    let mut out = vec![
        LinearCondition::KAEHLER,
        LinearCondition::NEARLY_KAEHLER,
        LinearCondition::QUASI_KAEHLER,
        LinearCondition::Q2_KAEHLER,
        LinearCondition::NIJENHUIS,
    ];
    for j in 0..8 {
        let mut a = [0.0; 8];
        a[j] = 1.0;
        out.push(LinearCondition(a));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_11ea);
    for _ in 0..extra {
        let a: [f64; 8] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        out.push(LinearCondition(a.map(|x| x / norm)));
    }
    out
}

fn close(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol * target.abs().max(1.0)
}

/// Checks one theorem on one input, both directions where finitely checkable.
pub fn theorem_check(id: TheoremId, c: &AlgebraicCurvature, cfg: &VerifyConfig) -> Result<VerdictRecord> {
    c.validate()?;
    let (c, converted) = normalize_orientation(c);
    let tol = cfg.tol;
    let pred = predicates(&c, tol);
    let s = decompose_blocks(&c).s;
    let t = match (cfg.t, id) {
        (Some(t), _) => t,
        (None, TheoremId::Gaps) if s > 0.0 => (12.0 / s).sqrt(),
        (None, _) => 1.0,
    };
    if !(t > 0.0) {
        return Err(Error::NonPositiveT(t));
    }
    let scan_cfg = |structure| ScanConfig {
        n: cfg.n,
        seed: cfg.seed,
        tol,
        t,
        structure,
    };
    let mut residuals = BTreeMap::new();
    let mut notes = Vec::new();
    if converted {
        notes.push("positive orientation converted by exchanging frame legs 3 and 4".to_string());
    }
    residuals.insert("einstein_residual".to_string(), pred.einstein_residual);
    residuals.insert("self_dual_residual".to_string(), pred.self_dual_residual);
    residuals.insert("scalar_curvature".to_string(), s);
    let frames_checked;

    let verdict = match id {
        TheoremId::Integrability => {
            let r = frame_scan(&c, &Check::Nijenhuis, &scan_cfg(Structure::Ahs))?;
            frames_checked = r.frames_checked;
            residuals.insert("nijenhuis_max".to_string(), r.worst_residual);
            let integrable = r.within_tol;
            notes.push(format!(
                "self_dual={} integrable_on_scanned_frames={}",
                pred.self_dual, integrable
            ));
            if pred.self_dual == integrable {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        TheoremId::MuskarovJ => {
            let checks: Vec<Check> = GrayHervellaClass::ALL.iter().map(|&c| Check::Class(c)).collect();
            let reports = frame_scan_many(&c, &checks, &scan_cfg(Structure::Ahs))?;
            frames_checked = reports[0].frames_checked;
            let strong = pred.einstein && pred.self_dual && close(s, 12.0 / (t * t), tol);
            let mut ok = true;
            for (class, r) in GrayHervellaClass::ALL.iter().zip(&reports) {
                residuals.insert(format!("{class}_max"), r.worst_residual);
                let expected = if *class == GrayHervellaClass::SK {
                    pred.self_dual
                } else {
                    strong
                };
                if r.within_tol != expected {
                    ok = false;
                    notes.push(format!(
                        "{class}: member={} but curvature condition={expected}",
                        r.within_tol
                    ));
                }
            }
            notes.push(format!("einstein_self_dual_s_eq_12_over_t2={strong}"));
            if ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        TheoremId::MuskarovJJ => {
            use GrayHervellaClass::*;
            let classes = [AK, NK, QK, SK];
            let checks: Vec<Check> = classes.iter().map(|&c| Check::Class(c)).collect();
            let reports = frame_scan_many(&c, &checks, &scan_cfg(Structure::Es))?;
            frames_checked = reports[0].frames_checked;
            let es_sd = pred.einstein && pred.self_dual;
            let mut ok = true;
            for (class, r) in classes.iter().zip(&reports) {
                residuals.insert(format!("{class}_max"), r.worst_residual);
                let expected = match class {
                    AK => es_sd && close(s, -12.0 / (t * t), tol),
                    NK => es_sd && close(s, 6.0 / (t * t), tol),
                    QK => es_sd,
                    _ => pred.self_dual,
                };
                if r.within_tol != expected {
                    ok = false;
                    notes.push(format!(
                        "{class}: member={} but curvature condition={expected}",
                        r.within_tol
                    ));
                }
            }
            if ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        TheoremId::Linear => {
            let conds = linear_condition_samples(cfg.seed, 16);
            if pred.self_dual {
                frames_checked = 0;
                notes.push("input is self-dual: the implication holds vacuously".to_string());
                Verdict::Pass
            } else {
                let checks: Vec<Check> = conds.iter().map(|&l| Check::Linear(l)).collect();
                let mut ok = true;
                let mut frames = 0;
                let mut weakest = f64::INFINITY;
                for structure in Structure::BOTH {
                    let reports = frame_scan_many(&c, &checks, &scan_cfg(structure))?;
                    frames += reports[0].frames_checked;
                    for r in &reports {
                        weakest = weakest.min(r.worst_residual);
                        if r.within_tol {
                            ok = false;
                            notes.push(format!("{structure} {} holds on every scanned frame", r.check.name()));
                        }
                    }
                }
                frames_checked = frames;
                residuals.insert("min_over_conditions_of_max_residual".to_string(), weakest);
                notes.push(format!("{} coefficient vectors x 2 structures", conds.len()));
                if ok {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        }
        TheoremId::Quadratic => {
            let r = frame_scan(&c, &Check::QuadraticEinstein, &scan_cfg(Structure::Ahs))?;
            frames_checked = r.frames_checked;
            residuals.insert("quadratic_einstein_max".to_string(), r.worst_residual);
            if pred.einstein == r.within_tol {
                Verdict::Pass
            } else {
                notes.push(format!(
                    "einstein={} but condition_holds={}",
                    pred.einstein, r.within_tol
                ));
                Verdict::Fail
            }
        }
        TheoremId::NijQuadratic => {
            let r = frame_scan(&c, &Check::NijenhuisQuadratic, &scan_cfg(Structure::Ahs))?;
            frames_checked = r.frames_checked;
            residuals.insert("nijenhuis_quadratic_max".to_string(), r.worst_residual);
            if pred.einstein && !r.within_tol {
                notes.push("Einstein input violates the condition".to_string());
                Verdict::Fail
            } else if !pred.self_dual && r.within_tol && !pred.einstein {
                notes.push("non-self-dual, non-Einstein input satisfies the condition".to_string());
                Verdict::Fail
            } else {
                if pred.self_dual && !pred.einstein {
                    notes.push("self-dual input: converse direction not applicable".to_string());
                }
                Verdict::Pass
            }
        }
        TheoremId::Gaps => {
            let data = build(&c, t)?;
            let (lo, hi) = scalar_gaps(&data);
            let reports = frame_scan_many(&c, &[Check::GapLow, Check::GapHigh], &scan_cfg(Structure::Ahs))?;
            frames_checked = reports[0].frames_checked;
            residuals.insert("gap_low".to_string(), lo);
            residuals.insert("gap_high".to_string(), hi);
            residuals.insert("gap_low_min_over_frames".to_string(), reports[0].min_residual);
            residuals.insert("gap_high_min_over_frames".to_string(), reports[1].min_residual);
            residuals.insert("sj".to_string(), data.sj);
            residuals.insert("norm2_nabla_j".to_string(), data.norm2_nabla_j);
            let hypotheses = pred.einstein && s > 0.0;
            let consistent = reports[0].min_residual >= -tol && reports[1].min_residual >= -tol;
            if hypotheses && pred.self_dual && consistent {
                Verdict::Pass
            } else {
                if !hypotheses {
                    notes.push("hypotheses not met (needs Einstein with positive scalar curvature)".to_string());
                } else if !pred.self_dual {
                    notes.push(
                        "non-self-dual Einstein input: gaps are reported from the contraction values, not asserted"
                            .to_string(),
                    );
                }
                if !consistent {
                    notes.push("a gap is negative on at least one frame".to_string());
                }
                Verdict::Flagged
            }
        }
    };

    Ok(VerdictRecord {
        theorem: id.id().to_string(),
        input_fingerprint: fingerprint(&c),
        verdict,
        residuals,
        frames_checked,
        t,
        seed: cfg.seed,
        n: cfg.n,
        tol,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda2::{kulkarni_nomizu, Orientation, Sym2};

    fn space_form(k: f64) -> AlgebraicCurvature {
        kulkarni_nomizu(&Sym2::identity(), &Sym2::identity().scaled(k * 0.5))
    }

    fn product_spheres() -> AlgebraicCurvature {
        AlgebraicCurvature::from_components(Orientation::Negative, &[([1, 2, 1, 2], 1.0), ([3, 4, 3, 4], 1.0)], &[])
            .unwrap()
    }

    fn pure_ricci() -> AlgebraicCurvature {
        let ric = Sym2::from_fn(|i, j| match (i, j) {
            (0, 0) | (2, 2) => 1.0,
            (1, 1) | (3, 3) => -1.0,
            (1, 2) => 1.0,
            _ => 0.0,
        });
        kulkarni_nomizu(&ric, &Sym2::identity().scaled(0.5))
    }

    fn quick(structure: Structure) -> ScanConfig {
        ScanConfig {
            n: 50,
            seed: 1,
            tol: 1e-9,
            t: 1.0,
            structure,
        }
    }

    #[test]
    fn check_names_round_trip() {
        for name in &Check::NAMES[..12] {
            assert_eq!(&name.parse::<Check>().unwrap().name(), name);
        }
        assert!(matches!(
            "linear:1,0,0,0,0,0,0,0".parse::<Check>(),
            Ok(Check::Linear(_))
        ));
        assert!(matches!("bogus".parse::<Check>(), Err(Error::UnknownCheckName(_))));
        assert!(matches!("linear:1,2".parse::<Check>(), Err(Error::UnknownCheckName(_))));
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("T5.4".parse::<TheoremId>().unwrap(), TheoremId::MuskarovJ);
        assert_eq!("T5.6-AK".parse::<TheoremId>().unwrap(), TheoremId::MuskarovJJ);
        assert_eq!("T1.4-gaps".parse::<TheoremId>().unwrap(), TheoremId::Gaps);
        assert!(matches!("T9.9".parse::<TheoremId>(), Err(Error::UnknownTheoremId(_))));
    }

    #[test]
    fn kaehler_case() {
        let d = build(&space_form(1.0), 1.0).unwrap();
        let r = gray_hervella(&d, Structure::Ahs, 1e-12);
        assert_eq!(r.strongest(), Some(GrayHervellaClass::K));
        assert!(r.inclusion_consistent());
    }

    #[test]
    fn nearly_kaehler_es_case() {
        let d = build(&space_form(0.5), 1.0).unwrap();
        let r = gray_hervella(&d, Structure::Es, 1e-12);
        assert!(r.member(GrayHervellaClass::NK));
        assert!(!r.member(GrayHervellaClass::K));
        assert!(r.inclusion_consistent());
        let d = build(&space_form(-1.0), 1.0).unwrap();
        let r = gray_hervella(&d, Structure::Es, 1e-12);
        assert!(r.member(GrayHervellaClass::AK));
    }

    #[test]
    fn pure_ricci_is_semi_kaehler_only() {
        let d = build(&pure_ricci(), 0.8).unwrap();
        let r = gray_hervella(&d, Structure::Ahs, 1e-9);
        assert!(r.member(GrayHervellaClass::SK));
        assert!(!r.member(GrayHervellaClass::K));
    }

    #[test]
    fn linear_kaehler_coefficients_give_max_abs() {
        let d = build(&product_spheres(), 1.3).unwrap();
        assert_eq!(
            linear_residual(&d, &LinearCondition::KAEHLER, Structure::Ahs),
            max_abs3(&d.nabla_j)
        );
        assert_eq!(
            linear_residual(
                &build(&space_form(1.0), 1.0).unwrap(),
                &LinearCondition([1.0; 8]),
                Structure::Ahs
            ),
            0.0
        );
    }

    #[test]
    fn nijenhuis_linear_condition_matches_oracle() {
        let d = build(&pure_ricci(), 0.9).unwrap();
        let lin = linear_residual(&d, &LinearCondition::NIJENHUIS, Structure::Ahs);
        assert!((lin - max_abs3(&d.nj)).abs() < 1e-12);
    }

    #[test]
    fn quadratic_slots_for_pure_ricci() {
        let d = build(&pure_ricci(), 1.0).unwrap();
        let b = d.blocks.b;
        // slot (1,3) is B12 B32 + B13 B33, slot (1,4) is −(B12 B22 + B13 B23)
        assert!(
            (quadratic_einstein_slot(&d.nabla_j, 0, 2) - (b[(0, 1)] * b[(2, 1)] + b[(0, 2)] * b[(2, 2)])).abs() < 1e-12
        );
        assert!(
            (quadratic_einstein_slot(&d.nabla_j, 0, 3) + (b[(0, 1)] * b[(1, 1)] + b[(0, 2)] * b[(1, 2)])).abs() < 1e-12
        );
        assert!((quadratic_einstein_residual(&d) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn einstein_inputs_satisfy_quadratic_conditions() {
        let d = build(&product_spheres(), 1.0).unwrap();
        assert!(quadratic_einstein_residual(&d) < 1e-12);
        assert!(nijenhuis_quadratic_residual(&d) < 1e-12);
    }

    #[test]
    fn nearnij_slot_value() {
        let c = crate::zoo::pure_ricci_weyl().curvature;
        let t = 0.9;
        let d = build(&c, t).unwrap();
        let blocks = &d.blocks;
        assert!(blocks.b[(2, 1)].abs() > 0.1);
        let slot = nijenhuis_quadratic_slot(&d.nabla_j, &d.nj, 4, 0, 2);
        let expected = 2.0 * t * t * blocks.b[(2, 1)] * (blocks.a[(1, 1)] - blocks.a[(2, 2)]);
        assert!((slot - expected).abs() < 1e-12, "{slot} vs {expected}");
    }

    #[test]
    fn gap_examples() {
        let (lo, hi) = scalar_gaps(&build(&space_form(1.0), 1.0).unwrap());
        assert!(lo.abs() < 1e-12 && hi.abs() < 1e-12);
        let (lo, hi) = scalar_gaps(&build(&space_form(0.0), 1.0).unwrap());
        assert!((lo - 4.0).abs() < 1e-12 && (hi - 8.0).abs() < 1e-12);
        let (lo, hi) = scalar_gaps(&build(&product_spheres(), 3f64.sqrt()).unwrap());
        assert!((lo + 20.0 / 3.0).abs() < 1e-12 && (hi - 32.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn scans() {
        let r = frame_scan(&product_spheres(), &Check::QuadraticEinstein, &quick(Structure::Ahs)).unwrap();
        assert!(r.worst_residual <= 1e-9);
        assert_eq!(r.frames_checked, r.structured.len() + 50);
        let r = frame_scan(&pure_ricci(), &Check::QuadraticEinstein, &quick(Structure::Ahs)).unwrap();
        assert!(r.worst_residual >= 0.5 - 1e-9);
        for check in [
            Check::Nijenhuis,
            Check::QuadraticEinstein,
            Check::Class(GrayHervellaClass::K),
        ] {
            let r = frame_scan(&space_form(1.0), &check, &quick(Structure::Ahs)).unwrap();
            assert!(r.worst_residual < 1e-12);
        }
    }

    #[test]
    fn structured_frame_sends_a_to_diag_010() {
        let frames = structured_frames(&product_spheres());
        let (_, rot) = frames.iter().find(|(l, _)| l == "identity*(P13,I)").unwrap();
        let a = decompose_blocks(&rotate_curvature(&product_spheres(), rot)).a;
        assert!((a - Matrix3::from_diagonal(&nalgebra::Vector3::new(0.0, 0.0, 1.0))).amax() < 1e-12);
        let (_, rot) = frames.iter().find(|(l, _)| l == "identity*(P12,I)").unwrap();
        let rotated = rotate_curvature(&product_spheres(), rot);
        let a = decompose_blocks(&rotated).a;
        assert!((a - Matrix3::from_diagonal(&nalgebra::Vector3::new(0.0, 1.0, 0.0))).amax() < 1e-12);
        let d = build(&rotated, 1.0).unwrap();
        assert!((d.nj[4][0][2] + 2.0).abs() < 1e-12);
        assert!(linear_residual(&d, &LinearCondition::NIJENHUIS, Structure::Ahs) >= 2.0 - 1e-12);
    }

    #[test]
    fn verdicts() {
        let cfg = VerifyConfig {
            t: Some(1.0),
            n: 30,
            seed: 2,
            tol: 1e-8,
        };
        assert_eq!(
            theorem_check(TheoremId::MuskarovJ, &space_form(1.0), &cfg)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        assert_eq!(
            theorem_check(TheoremId::Integrability, &product_spheres(), &cfg)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        assert_eq!(
            theorem_check(TheoremId::MuskarovJJ, &space_form(-1.0), &cfg)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        assert_eq!(
            theorem_check(TheoremId::Quadratic, &product_spheres(), &cfg)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        assert_eq!(
            theorem_check(TheoremId::Quadratic, &pure_ricci(), &cfg)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        let gaps = theorem_check(TheoremId::Gaps, &product_spheres(), &VerifyConfig { t: None, ..cfg }).unwrap();
        assert_eq!(gaps.verdict, Verdict::Flagged);
        assert!((gaps.t - 3f64.sqrt()).abs() < 1e-15);
        assert!((gaps.residuals["gap_low"] + 20.0 / 3.0).abs() < 1e-9);
        assert_eq!(
            theorem_check(TheoremId::Gaps, &space_form(1.0), &cfg).unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn fingerprint_is_stable() {
        assert_eq!(fingerprint(&space_form(1.0)), fingerprint(&space_form(1.0)));
        assert_ne!(fingerprint(&space_form(1.0)), fingerprint(&space_form(2.0)));
        assert_eq!(fingerprint(&space_form(1.0)).len(), 64);
    }
}
