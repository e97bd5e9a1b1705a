//! Quantities on the twistor space `(Z, g_t)` over one point of the base.
//!
//! The fiber point is the one singled out by the input coframe; the adapted
//! coframe `(θ¹..θ⁴, tω⁵, tω⁶)` of `g_t` is used throughout, so every 6-index
//! table is in the orthonormal frame `e₁..e₆` of `Z` (0-based `0..6`).
//!
//! Conventions for stored tables:
//! * `nabla[p][q][r] = J^p_{q,r}`, antisymmetric in `p, q`;
//! * `nij[r][p][q] = N^r_{pq}`, antisymmetric in `p, q`;
//! * `J` matrices are `[out, in]`, so `J[p][q] = J^p_q`.

use std::collections::BTreeMap;

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::curvature::{decompose_blocks, q_tables, AlgebraicCurvature, CurvatureBlocks, QTable};
use crate::error::{Error, Result};
use crate::lambda2::Orientation;
use crate::tensor::{
    max_abs3, max_abs_diff3, set_antisym_01, set_antisym_12, set_curvature, zeros3, zeros4, Tensor3, Tensor4,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    /// Atiyah–Hitchin–Singer, `J`.
    Ahs,
    /// Eells–Salamon, `𝐉`.
    Es,
}

impl Structure {
    pub const BOTH: [Structure; 2] = [Structure::Ahs, Structure::Es];

    pub fn label(self) -> &'static str {
        match self {
            Structure::Ahs => "ahs",
            Structure::Es => "es",
        }
    }

    /// `+1` for AHS, `−1` for ES: the sign of `θ⁵⊗e₆` in the structure.
    fn fiber_sign(self) -> f64 {
        match self {
            Structure::Ahs => 1.0,
            Structure::Es => -1.0,
        }
    }
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ahs" | "j" | "plus" => Ok(Structure::Ahs),
            "es" | "jj" | "minus" => Ok(Structure::Es),
            other => Err(Error::InvalidInput(format!(
                "unknown structure `{other}` (expected ahs or es)"
            ))),
        }
    }
}

/// `θ¹⊗e₂ − θ²⊗e₁ + θ³⊗e₄ − θ⁴⊗e₃ ± (θ⁵⊗e₆ − θ⁶⊗e₅)` as an `[out, in]` matrix.
pub fn j_matrix(structure: Structure) -> Matrix6<f64> {
    let s = structure.fiber_sign();
    let mut j = Matrix6::zeros();
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    j[(5, 4)] = s;
    j[(4, 5)] = -s;
    j
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveT(t));
    }
    Ok(())
}

/// Brings a positively oriented input into the negatively oriented
/// convention by exchanging legs 3 and 4. Returns whether it did.
pub fn normalize_orientation(c: &AlgebraicCurvature) -> (AlgebraicCurvature, bool) {
    match c.orientation() {
        Orientation::Negative => (c.clone(), false),
        Orientation::Positive => (c.swap_legs_34(), true),
    }
}

/// Curvature of `g_t`, all 6⁴ components.
pub fn twistor_curvature(c: &AlgebraicCurvature, q: &QTable, t: f64) -> Tensor4<6> {
    let r = c.riem();
    let (q2, q3, q4) = (&q.q2, &q.q3, &q.q4);
    let t2 = t * t;
    let mut rb = zeros4::<6>();
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    rb[a][b][cc][d] = r[a][b][cc][d]
                        - 0.25
                            * t2
                            * ((q3[(a, cc)] * q3[(b, d)] - q3[(a, d)] * q3[(b, cc)])
                                + (q4[(a, cc)] * q4[(b, d)] - q4[(a, d)] * q4[(b, cc)]))
                        - 0.5 * t2 * (q3[(a, b)] * q3[(cc, d)] + q4[(a, b)] * q4[(cc, d)]);
                }
            }
        }
    }
    for a in 0..4 {
        for b in 0..4 {
            let mixed: f64 = (0..4).map(|k| q3[(a, k)] * q4[(b, k)] - q3[(b, k)] * q4[(a, k)]).sum();
            set_curvature(&mut rb, a, b, 4, 5, q2[(a, b)] - 0.25 * t2 * mixed);
            for cc in 0..4 {
                set_curvature(&mut rb, a, b, cc, 4, -0.5 * t * q.dq3[a][b][cc]);
                set_curvature(&mut rb, a, b, cc, 5, -0.5 * t * q.dq4[a][b][cc]);
            }
            let s33: f64 = (0..4).map(|k| q3[(a, k)] * q3[(b, k)]).sum();
            let s34: f64 = (0..4).map(|k| q3[(b, k)] * q4[(a, k)]).sum();
            let s44: f64 = (0..4).map(|k| q4[(a, k)] * q4[(b, k)]).sum();
            set_curvature(&mut rb, 4, a, b, 4, -0.25 * t2 * s33);
            set_curvature(&mut rb, 4, a, b, 5, -0.5 * q2[(a, b)] - 0.25 * t2 * s34);
            set_curvature(&mut rb, 5, a, b, 5, -0.25 * t2 * s44);
        }
    }
    set_curvature(&mut rb, 4, 5, 4, 5, 1.0 / t2);
    rb
}

/// `R̄ic_{pq} = R̄_{prqr}` and its trace.
pub fn contract_ricci(rb: &Tensor4<6>) -> (Matrix6<f64>, f64) {
    let ric = Matrix6::from_fn(|p, q| (0..6).map(|r| rb[p][r][q][r]).sum());
    let s = ric.trace();
    (ric, s)
}

/// `∇J` for the given structure, `nabla[p][q][r] = J^p_{q,r}`.
pub fn nabla_j(q: &QTable, t: f64, structure: Structure) -> Tensor3<6> {
    let q3 = |a: usize, b: usize| q.q3[(a - 1, b - 1)];
    let q4 = |a: usize, b: usize| q.q4[(a - 1, b - 1)];
    let es = structure == Structure::Es;
    let mut n = zeros3::<6>();
    let mut set = |p: usize, qq: usize, r: usize, v: f64| set_antisym_01(&mut n, p - 1, qq - 1, r - 1, v);
    for r in 1..=6 {
        let (mut v13, mut v14, mut v15, mut v16, mut v35, mut v36) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        match r {
            5 => {
                v13 = -0.5 * t * (q3(1, 4) + q3(2, 3));
                v14 = -0.5 * t * (2.0 / (t * t) - (q3(1, 3) + q3(4, 2)));
            }
            6 => {
                v13 = 0.5 * t * (2.0 / (t * t) - (q4(1, 4) + q4(2, 3)));
                v14 = 0.5 * t * (q4(1, 3) + q4(4, 2));
            }
            a if !es => {
                v15 = -0.5 * t * (q3(2, a) + q4(1, a));
                v16 = 0.5 * t * (q3(1, a) - q4(2, a));
                v35 = -0.5 * t * (q3(4, a) + q4(3, a));
                v36 = 0.5 * t * (q3(3, a) - q4(4, a));
            }
            a => {
                v15 = -0.5 * t * (q3(2, a) - q4(1, a));
                v16 = -0.5 * t * (q3(1, a) + q4(2, a));
                v35 = -0.5 * t * (q3(4, a) - q4(3, a));
                v36 = -0.5 * t * (q3(3, a) + q4(4, a));
            }
        }
        let s = structure.fiber_sign();
        set(1, 3, r, v13);
        set(1, 4, r, v14);
        set(1, 5, r, v15);
        set(1, 6, r, v16);
        set(2, 3, r, v14);
        set(2, 4, r, -v13);
        set(2, 5, r, s * v16);
        set(2, 6, r, -s * v15);
        set(3, 5, r, v35);
        set(3, 6, r, v36);
        set(4, 5, r, s * v36);
        set(4, 6, r, -s * v35);
    }
    n
}

/// `|∇J|² = Σ (J^t_{p,q})²`.
pub fn norm2(nabla: &Tensor3<6>) -> f64 {
    nabla.iter().flatten().flatten().map(|v| v * v).sum()
}

/// Largest violation of `J^p_{q,r} = −J^q_{p,r}` and of `M_r J + J M_r = 0`,
/// where `M_r = (J^p_{q,r})_{pq}`.
pub fn nabla_structure_residual(nabla: &Tensor3<6>, structure: Structure) -> f64 {
    let j = j_matrix(structure);
    let mut worst = 0.0f64;
    for r in 0..6 {
        let m = Matrix6::from_fn(|p, q| nabla[p][q][r]);
        worst = worst.max((m + m.transpose()).amax()).max((m * j + j * m).amax());
    }
    worst
}

/// `N^r_{pq} = J^s_p J^r_{s,q} − J^s_q J^r_{s,p} + J^s_q J^r_{p,s} − J^s_p J^r_{q,s}`.
pub fn nijenhuis_oracle(nabla: &Tensor3<6>, structure: Structure) -> Tensor3<6> {
    let j = j_matrix(structure);
    let mut out = zeros3::<6>();
    for r in 0..6 {
        for p in 0..6 {
            for q in 0..6 {
                let mut acc = 0.0;
                for s in 0..6 {
                    acc += j[(s, p)] * nabla[r][s][q] - j[(s, q)] * nabla[r][s][p] + j[(s, q)] * nabla[r][p][s]
                        - j[(s, p)] * nabla[r][q][s];
                }
                out[r][p][q] = acc;
            }
        }
    }
    out
}

/// One listed entry of the closed Nijenhuis tables: 1-based `(r, p, q)` and value.
pub fn nijenhuis_listed(blocks: &CurvatureBlocks, t: f64, structure: Structure) -> Vec<([usize; 3], f64)> {
    let a = &blocks.a;
    match structure {
        Structure::Ahs => {
            let n513 = 2.0 * t * (a[(2, 2)] - a[(1, 1)]);
            let n514 = -4.0 * t * a[(1, 2)];
            vec![
                ([5, 1, 3], n513),
                ([5, 2, 4], -n513),
                ([6, 1, 4], -n513),
                ([6, 2, 3], -n513),
                ([5, 1, 4], n514),
                ([5, 2, 3], n514),
                ([6, 1, 3], n514),
                ([6, 2, 4], -n514),
            ]
        }
        Structure::Es => {
            let n513 = -2.0 * t * (a[(1, 1)] + a[(2, 2)]);
            let n135 = -2.0 / (t * t);
            vec![
                ([5, 1, 3], n513),
                ([5, 2, 4], -n513),
                ([6, 1, 4], n513),
                ([6, 2, 3], n513),
                ([1, 3, 5], n135),
                ([3, 1, 5], -n135),
                ([4, 1, 6], -n135),
                ([4, 2, 5], n135),
                ([3, 2, 6], -n135),
                ([2, 3, 6], n135),
                ([2, 4, 5], -n135),
                ([1, 4, 6], n135),
            ]
        }
    }
}

/// The closed Nijenhuis table: the listed entries, antisymmetric in the
/// lower pair, everything else zero.
pub fn nijenhuis_closed(blocks: &CurvatureBlocks, t: f64, structure: Structure) -> Tensor3<6> {
    let mut out = zeros3::<6>();
    for ([r, p, q], v) in nijenhuis_listed(blocks, t, structure) {
        set_antisym_12(&mut out, r - 1, p - 1, q - 1, v);
    }
    out
}

/// Nijenhuis tensor by contraction. With `verify`, the closed table is
/// compared and a disagreement beyond `tol` is an error.
pub fn nijenhuis(data: &TwistorPointData, structure: Structure, verify: Option<f64>) -> Result<Tensor3<6>> {
    let oracle = match structure {
        Structure::Ahs => data.nj,
        Structure::Es => data.njj,
    };
    if let Some(tol) = verify {
        let closed = nijenhuis_closed(&data.blocks, data.t, structure);
        let diff = max_abs_diff3(&oracle, &closed);
        if diff > tol {
            let mut worst = ([0usize; 3], 0.0f64);
            for r in 0..6 {
                for p in 0..6 {
                    for q in 0..6 {
                        let d = (oracle[r][p][q] - closed[r][p][q]).abs();
                        if d > worst.1 {
                            worst = ([r + 1, p + 1, q + 1], d);
                        }
                    }
                }
            }
            let [r, p, q] = worst.0;
            return Err(Error::ClosedFormMismatch(format!(
                "{structure} Nijenhuis N^{r}_{p}{q}: contraction {} vs closed form {} (t = {})",
                oracle[r - 1][p - 1][q - 1],
                closed[r - 1][p - 1][q - 1],
                data.t
            )));
        }
    }
    Ok(oracle)
}

/// `dω(e_t, e_p, e_q) = J^q_{p,t} + J^t_{q,p} + J^p_{t,q}` for `t < p < q`,
/// keyed by 0-based sorted triples; exact zeros are dropped.
pub fn kaehler_differential(nabla: &Tensor3<6>) -> BTreeMap<[usize; 3], f64> {
    let mut out = BTreeMap::new();
    for t in 0..6 {
        for p in t + 1..6 {
            for q in p + 1..6 {
                let v = nabla[q][p][t] + nabla[t][q][p] + nabla[p][t][q];
                if v != 0.0 {
                    out.insert([t, p, q], v);
                }
            }
        }
    }
    out
}

/// The closed `dω` expansion, same keying as [`kaehler_differential`].
pub fn kaehler_differential_closed(q: &QTable, t: f64, structure: Structure) -> BTreeMap<[usize; 3], f64> {
    let s = structure.fiber_sign();
    let q3 = |a: usize, b: usize| q.q3[(a - 1, b - 1)];
    let q4 = |a: usize, b: usize| q.q4[(a - 1, b - 1)];
    let terms: [([usize; 3], f64); 12] = [
        ([1, 2, 5], -s * t * q4(1, 2)),
        ([1, 2, 6], s * t * q3(1, 2)),
        ([1, 3, 5], -s * t * q4(1, 3)),
        ([1, 3, 6], s * t * q3(1, 3) - 1.0 / t),
        ([1, 4, 5], 1.0 / t - s * t * q4(1, 4)),
        ([1, 4, 6], s * t * q3(1, 4)),
        ([2, 3, 5], 1.0 / t - s * t * q4(2, 3)),
        ([2, 3, 6], s * t * q3(2, 3)),
        ([4, 2, 5], -s * t * q4(4, 2)),
        ([4, 2, 6], s * t * q3(4, 2) - 1.0 / t),
        ([3, 4, 5], -s * t * q4(3, 4)),
        ([3, 4, 6], s * t * q3(3, 4)),
    ];
    let mut out = BTreeMap::new();
    for (idx, v) in terms {
        let (key, sign) = sort_triple(idx);
        if v != 0.0 {
            *out.entry(key).or_insert(0.0) += sign * v;
        }
    }
    out
}

/// Sorted 0-based triple and the sign of the sorting permutation.
fn sort_triple(idx: [usize; 3]) -> ([usize; 3], f64) {
    let mut v = idx.map(|i| i - 1);
    let mut sign = 1.0;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (v, sign)
}

/// `δω_q = −Σ_p J^q_{p,p}`.
pub fn codifferential(nabla: &Tensor3<6>) -> [f64; 6] {
    std::array::from_fn(|q| -(0..6).map(|p| nabla[q][p][p]).sum::<f64>())
}

/// `t(q³₁₂+q³₃₄)θ⁵ + t(q⁴₁₂+q⁴₃₄)θ⁶`, identical for both structures.
pub fn codifferential_closed(q: &QTable, t: f64) -> [f64; 6] {
    let mut out = [0.0; 6];
    out[4] = t * (q.q3[(0, 1)] + q.q3[(2, 3)]);
    out[5] = t * (q.q4[(0, 1)] + q.q4[(2, 3)]);
    out
}

/// `R̄*_{pq} = J^s_q J^u_t R̄_{ptsu}`.
pub fn ricci_star(rb: &Tensor4<6>, structure: Structure) -> Matrix6<f64> {
    let j = j_matrix(structure);
    Matrix6::from_fn(|p, q| {
        let mut acc = 0.0;
        for s in 0..6 {
            let jsq = j[(s, q)];
            if jsq == 0.0 {
                continue;
            }
            for t in 0..6 {
                for u in 0..6 {
                    acc += jsq * j[(u, t)] * rb[p][t][s][u];
                }
            }
        }
        acc
    })
}

/// Everything over one fiber point.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistorPointData {
    pub t: f64,
    /// The curvature the tables were computed from (after orientation normalization).
    pub curvature: AlgebraicCurvature,
    pub orientation_converted: bool,
    pub q: QTable,
    pub blocks: CurvatureBlocks,
    pub rbar: Box<Tensor4<6>>,
    pub ricbar: Matrix6<f64>,
    pub sbar: f64,
    pub nabla_j: Tensor3<6>,
    pub nabla_jj: Tensor3<6>,
    pub nj: Tensor3<6>,
    pub njj: Tensor3<6>,
    pub ricstar: Matrix6<f64>,
    pub sstar: f64,
    pub sj: f64,
    pub norm2_nabla_j: f64,
    pub norm2_nabla_jj: f64,
    pub domega_plus: BTreeMap<[usize; 3], f64>,
    pub domega_minus: BTreeMap<[usize; 3], f64>,
    pub delta_omega_plus: [f64; 6],
    pub delta_omega_minus: [f64; 6],
}

impl TwistorPointData {
    pub fn nabla(&self, structure: Structure) -> &Tensor3<6> {
        match structure {
            Structure::Ahs => &self.nabla_j,
            Structure::Es => &self.nabla_jj,
        }
    }

    pub fn nijenhuis(&self, structure: Structure) -> &Tensor3<6> {
        match structure {
            Structure::Ahs => &self.nj,
            Structure::Es => &self.njj,
        }
    }

    pub fn domega(&self, structure: Structure) -> &BTreeMap<[usize; 3], f64> {
        match structure {
            Structure::Ahs => &self.domega_plus,
            Structure::Es => &self.domega_minus,
        }
    }

    pub fn delta_omega(&self, structure: Structure) -> &[f64; 6] {
        match structure {
            Structure::Ahs => &self.delta_omega_plus,
            Structure::Es => &self.delta_omega_minus,
        }
    }
}

/// Computes every twistor quantity at the fiber point of the input coframe.
pub fn build(c: &AlgebraicCurvature, t: f64) -> Result<TwistorPointData> {
    check_t(t)?;
    let (c, orientation_converted) = normalize_orientation(c);
    let q = q_tables(&c);
    let blocks = decompose_blocks(&c);
    let rbar = Box::new(twistor_curvature(&c, &q, t));
    let (ricbar, sbar) = contract_ricci(&rbar);
    let nabla_j = nabla_j(&q, t, Structure::Ahs);
    let nabla_jj = self::nabla_j(&q, t, Structure::Es);
    let nj = nijenhuis_oracle(&nabla_j, Structure::Ahs);
    let njj = nijenhuis_oracle(&nabla_jj, Structure::Es);
    let ricstar = ricci_star(&rbar, Structure::Ahs);
    let sstar = ricstar.trace();
    Ok(TwistorPointData {
        t,
        orientation_converted,
        sj: sbar - sstar,
        norm2_nabla_j: norm2(&nabla_j),
        norm2_nabla_jj: norm2(&nabla_jj),
        domega_plus: kaehler_differential(&nabla_j),
        domega_minus: kaehler_differential(&nabla_jj),
        delta_omega_plus: codifferential(&nabla_j),
        delta_omega_minus: codifferential(&nabla_jj),
        curvature: c,
        q,
        blocks,
        rbar,
        ricbar,
        sbar,
        nabla_j,
        nabla_jj,
        nj,
        njj,
        ricstar,
        sstar,
    })
}

/// One closed-form value next to the contraction it is meant to equal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormCheck {
    pub quantity: String,
    /// Label of the printed table the closed form comes from.
    pub eq: &'static str,
    /// 1-based.
    pub index: Vec<usize>,
    pub oracle: f64,
    pub printed: f64,
    pub delta: f64,
}

fn check(
    quantity: impl Into<String>,
    eq: &'static str,
    index: Vec<usize>,
    oracle: f64,
    printed: f64,
) -> ClosedFormCheck {
    ClosedFormCheck {
        quantity: quantity.into(),
        eq,
        index,
        oracle,
        printed,
        delta: oracle - printed,
    }
}

/// The printed `|∇J|²` expansion for `J`.
pub fn squarejplus_closed(q: &QTable, t: f64) -> f64 {
    let q3 = |a: usize, b: usize| q.q3[(a - 1, b - 1)];
    let q4 = |a: usize, b: usize| q.q4[(a - 1, b - 1)];
    let sq = |x: f64| x * x;
    let bracket = sq(q3(1, 4) + q3(2, 3))
        + sq(q4(1, 4) + q4(2, 3))
        + sq(q3(1, 3) + q3(4, 2))
        + sq(q4(1, 3) + q4(4, 2))
        + sq(q3(2, 3) - q4(1, 4))
        + sq(q3(4, 2) - q4(1, 4))
        + sq(q3(1, 3) - q4(2, 3))
        + sq(q3(1, 4) + q4(4, 2))
        + sq(q3(1, 4) + q4(1, 3))
        + sq(q4(2, 3) - q3(4, 2))
        + sq(q4(1, 4) - q3(1, 3))
        + sq(q3(2, 3) + q4(4, 2));
    let squares = 2.0 * (sq(q3(1, 2)) + sq(q4(1, 2)) + sq(q3(3, 4)) + sq(q4(3, 4)));
    let linear = -(q3(1, 3) + q3(4, 2)) - (q4(1, 4) + q4(2, 3));
    t * t * (bracket + squares + linear + 8.0 / t.powi(4))
}

/// The printed scalar curvature of `g_t`.
pub fn scaltwist_closed(q: &QTable, s: f64, t: f64) -> f64 {
    s + 2.0 / (t * t) - 0.25 * t * t * (q.q3.norm_squared() + q.q4.norm_squared())
}

/// The printed scalar* curvature.
pub fn scalstar_closed(q: &QTable, t: f64) -> f64 {
    let q2 = |a: usize, b: usize| q.q2[(a - 1, b - 1)];
    let q3 = |a: usize, b: usize| q.q3[(a - 1, b - 1)];
    let q4 = |a: usize, b: usize| q.q4[(a - 1, b - 1)];
    let t2 = t * t;
    -1.5 * t2 * (q3(1, 2).powi(2) + q4(1, 2).powi(2) + q3(3, 4).powi(2) + q4(3, 4).powi(2))
        + t2 * (q3(1, 3) * q3(4, 2) + q3(1, 4) * q3(2, 3) + q4(1, 3) * q4(4, 2) + q4(1, 4) * q4(2, 3))
        - 2.0 * t2 * (q3(1, 2) * q3(3, 4) + q4(1, 2) * q4(3, 4))
        + 6.0 * (q2(1, 2) + q2(3, 4))
        - t2 * ((q3(1, 3) + q3(4, 2)) * (q4(1, 4) + q4(2, 3)) - (q4(1, 3) + q4(4, 2)) * (q3(1, 4) + q3(2, 3)))
        + 2.0 / t2
}

/// Every closed component formula evaluated beside its contraction.
pub fn closed_form_report(data: &TwistorPointData) -> Vec<ClosedFormCheck> {
    let q = &data.q;
    let t = data.t;
    let t2 = t * t;
    let mut out = Vec::new();

    out.push(check(
        "sbar",
        "eq:scaltwist",
        vec![],
        data.sbar,
        scaltwist_closed(q, data.blocks.s, t),
    ));

    let ric = data.blocks.ric.matrix();
    for a in 0..4 {
        for b in a..4 {
            let corr: f64 = (0..4)
                .map(|c| q.q3[(a, c)] * q.q3[(b, c)] + q.q4[(a, c)] * q.q4[(b, c)])
                .sum();
            out.push(check(
                "ricbar",
                "eq:ricctwist",
                vec![a + 1, b + 1],
                data.ricbar[(a, b)],
                ric[(a, b)] - 0.5 * t2 * corr,
            ));
        }
    }
    for a in 0..4 {
        let d3: f64 = (0..4).map(|c| q.dq3[a][c][c]).sum();
        let d4: f64 = (0..4).map(|c| q.dq4[a][c][c]).sum();
        out.push(check(
            "ricbar",
            "eq:ricctwist",
            vec![a + 1, 5],
            data.ricbar[(a, 4)],
            0.5 * t * d3,
        ));
        out.push(check(
            "ricbar",
            "eq:ricctwist",
            vec![a + 1, 6],
            data.ricbar[(a, 5)],
            0.5 * t * d4,
        ));
    }
    out.push(check(
        "ricbar",
        "eq:ricctwist",
        vec![5, 5],
        data.ricbar[(4, 4)],
        1.0 / t2 + 0.25 * q.q3.norm_squared(),
    ));
    out.push(check(
        "ricbar",
        "eq:ricctwist",
        vec![5, 6],
        data.ricbar[(4, 5)],
        0.25 * t2 * q.q3.component_mul(&q.q4).sum(),
    ));
    out.push(check(
        "ricbar",
        "eq:ricctwist",
        vec![6, 6],
        data.ricbar[(5, 5)],
        1.0 / t2 + 0.25 * q.q4.norm_squared(),
    ));

    out.push(check(
        "norm2_nabla_j",
        "eq:squarejplus",
        vec![],
        data.norm2_nabla_j,
        squarejplus_closed(q, t),
    ));

    for structure in Structure::BOTH {
        let (name, eq) = match structure {
            Structure::Ahs => ("nj", "eq:nijcompplus"),
            Structure::Es => ("njj", "eq:nijcompmin"),
        };
        let oracle = data.nijenhuis(structure);
        let listed = nijenhuis_listed(&data.blocks, t, structure);
        let mut covered = [[[false; 6]; 6]; 6];
        for ([r, p, qq], v) in &listed {
            out.push(check(name, eq, vec![*r, *p, *qq], oracle[r - 1][p - 1][qq - 1], *v));
            covered[r - 1][p - 1][qq - 1] = true;
            covered[r - 1][qq - 1][p - 1] = true;
        }
        let mut rest = 0.0f64;
        for r in 0..6 {
            for p in 0..6 {
                for qq in 0..6 {
                    if !covered[r][p][qq] {
                        rest = rest.max(oracle[r][p][qq].abs());
                    }
                }
            }
        }
        out.push(check(format!("{name}_unlisted_max_abs"), eq, vec![], rest, 0.0));
    }

    for structure in Structure::BOTH {
        let (name, eq) = match structure {
            Structure::Ahs => ("domega_plus", "eq:kahtwistplus"),
            Structure::Es => ("domega_minus", "eq:kahtwistmin"),
        };
        let oracle = data.domega(structure);
        let closed = kaehler_differential_closed(q, t, structure);
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let key = [i, j, k];
                    out.push(check(
                        name,
                        eq,
                        vec![i + 1, j + 1, k + 1],
                        oracle.get(&key).copied().unwrap_or(0.0),
                        closed.get(&key).copied().unwrap_or(0.0),
                    ));
                }
            }
        }
    }
    let delta_closed = codifferential_closed(q, t);
    for structure in Structure::BOTH {
        let name = match structure {
            Structure::Ahs => "delta_omega_plus",
            Structure::Es => "delta_omega_minus",
        };
        for (i, (&o, &p)) in data.delta_omega(structure).iter().zip(delta_closed.iter()).enumerate() {
            out.push(check(name, "eq:codifftwist", vec![i + 1], o, p));
        }
    }

    let j = j_matrix(Structure::Ahs);
    let mut r55 = 1.0 / t2;
    for c in 0..4 {
        for d in 0..4 {
            let inner: f64 = (0..4).map(|a| q.q3[(c, a)] * q.q4[(d, a)]).sum();
            r55 += j[(c, d)] * (0.5 * q.q2[(d, c)] + 0.25 * t2 * inner);
        }
    }
    out.push(check(
        "ricstar",
        "eq:ricstarcomp",
        vec![5, 5],
        data.ricstar[(4, 4)],
        r55,
    ));
    out.push(check(
        "ricstar",
        "eq:ricstarcomp",
        vec![5, 6],
        data.ricstar[(4, 5)],
        0.0,
    ));
    out.push(check(
        "ricstar",
        "eq:ricstarcomp",
        vec![6, 5],
        data.ricstar[(5, 4)],
        0.0,
    ));
    out.push(check(
        "ricstar",
        "eq:ricstarcomp",
        vec![6, 6],
        data.ricstar[(5, 5)],
        r55,
    ));
    out.push(check(
        "sstar",
        "eq:scalstarcurv",
        vec![],
        data.sstar,
        scalstar_closed(q, t),
    ));
    out
}

/// Max over the AHS and ES tables of `|N_closed − N_oracle|`.
pub fn nijenhuis_closed_form_gap(data: &TwistorPointData) -> f64 {
    Structure::BOTH
        .iter()
        .map(|&s| max_abs_diff3(data.nijenhuis(s), &nijenhuis_closed(&data.blocks, data.t, s)))
        .fold(0.0, f64::max)
}

/// `max |J^p_{q,r}|`.
pub fn max_abs_nabla(nabla: &Tensor3<6>) -> f64 {
    max_abs3(nabla)
}
