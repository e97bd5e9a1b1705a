//! Flattening of tables into `(quantity, index, value, tag)` rows and their
//! JSON, CSV and plain-text renderings. Indices are 1-based; entries with
//! `|v| < 1e-14` are dropped from tensor tables (scalars are always kept).

use std::fmt::Write as _;

use nalgebra::{Matrix3, Matrix6};
use serde::Serialize;

use crate::classify::{Check, ClassificationReport, GrayHervellaClass, ScanReport, TheoremId, VerdictRecord};
use crate::curvature::{decompose_blocks, predicates, weyl_split, AlgebraicCurvature};
use crate::tensor::{Tensor3, Tensor4};
use crate::twistor::{ClosedFormCheck, Structure, TwistorPointData};

pub const ZERO_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub quantity: String,
    pub index: Vec<usize>,
    pub value: f64,
    pub paper_ref: &'static str,
}

#[derive(Default)]
pub struct Table {
    pub entries: Vec<Entry>,
}

impl Table {
    pub fn scalar(&mut self, quantity: &str, value: f64, tag: &'static str) {
        self.entries.push(Entry {
            quantity: quantity.to_string(),
            index: vec![],
            value,
            paper_ref: tag,
        });
    }

    fn push(&mut self, quantity: &str, index: Vec<usize>, value: f64, tag: &'static str) {
        if value.abs() >= ZERO_CUTOFF {
            self.entries.push(Entry {
                quantity: quantity.to_string(),
                index,
                value,
                paper_ref: tag,
            });
        }
    }

    pub fn matrix3(&mut self, quantity: &str, m: &Matrix3<f64>, tag: &'static str) {
        for i in 0..3 {
            for j in 0..3 {
                self.push(quantity, vec![i + 1, j + 1], m[(i, j)], tag);
            }
        }
    }

    pub fn matrix4(&mut self, quantity: &str, m: &nalgebra::Matrix4<f64>, tag: &'static str) {
        for i in 0..4 {
            for j in 0..4 {
                self.push(quantity, vec![i + 1, j + 1], m[(i, j)], tag);
            }
        }
    }

    pub fn matrix6(&mut self, quantity: &str, m: &Matrix6<f64>, tag: &'static str) {
        for i in 0..6 {
            for j in 0..6 {
                self.push(quantity, vec![i + 1, j + 1], m[(i, j)], tag);
            }
        }
    }

    pub fn tensor3<const N: usize>(&mut self, quantity: &str, t: &Tensor3<N>, tag: &'static str) {
        for i in 0..N {
            for j in 0..N {
                for k in 0..N {
                    self.push(quantity, vec![i + 1, j + 1, k + 1], t[i][j][k], tag);
                }
            }
        }
    }

    pub fn tensor4<const N: usize>(&mut self, quantity: &str, t: &Tensor4<N>, tag: &'static str) {
        for i in 0..N {
            for j in 0..N {
                for k in 0..N {
                    for l in 0..N {
                        self.push(quantity, vec![i + 1, j + 1, k + 1, l + 1], t[i][j][k][l], tag);
                    }
                }
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,index,value,paper_ref\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{:e},{}",
                e.quantity,
                index_label(&e.index),
                e.value,
                e.paper_ref
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let q = if e.index.is_empty() {
                e.quantity.clone()
            } else {
                format!("{}[{}]", e.quantity, index_label(&e.index))
            };
            let _ = writeln!(out, "{q:<28} {:>24.16e}  {}", e.value, e.paper_ref);
        }
        out
    }
}

/// `1` or `1-2-3`; a dash keeps the CSV column free of separators.
pub fn index_label(index: &[usize]) -> String {
    index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("-")
}

pub fn decompose_table(c: &AlgebraicCurvature) -> Table {
    let b = decompose_blocks(c);
    let (wp, wm) = weyl_split(c);
    let mut t = Table::default();
    t.matrix3("A", &b.a, "eq:matrdeco");
    t.matrix3("B", &b.b, "eq:matrdeco");
    t.matrix3("C", &b.c, "eq:matrdeco");
    t.matrix4("ric", b.ric.matrix(), "eq:riemdec");
    t.scalar("S", b.s, "eq:riemdec");
    t.tensor4("weyl_plus", &wp, "eq:riemdeccomp");
    t.tensor4("weyl_minus", &wm, "eq:riemdeccomp");
    t
}

/// Predicates at `tol` as a JSON object.
pub fn predicates_json(c: &AlgebraicCurvature, tol: f64) -> serde_json::Value {
    serde_json::to_value(predicates(c, tol)).expect("predicates serialize")
}

pub fn twistor_table(d: &TwistorPointData) -> Table {
    let mut t = Table::default();
    t.scalar("t", d.t, "eq:metrictwist2");
    t.tensor4("rbar", &d.rbar, "eq:riemtwist");
    t.matrix6("ricbar", &d.ricbar, "eq:ricctwist");
    t.scalar("sbar", d.sbar, "eq:scaltwist");
    for s in Structure::BOTH {
        let (nabla, norm, nij, dw, dl, tag_n, tag_d) = match s {
            Structure::Ahs => (
                "nabla_j",
                "norm2_nabla_j",
                "nj",
                "domega_plus",
                "delta_omega_plus",
                "eq:nablajplus",
                "eq:kahtwistplus",
            ),
            Structure::Es => (
                "nabla_jj",
                "norm2_nabla_jj",
                "njj",
                "domega_minus",
                "delta_omega_minus",
                "eq:nablajmin",
                "eq:kahtwistmin",
            ),
        };
        t.tensor3(nabla, d.nabla(s), tag_n);
        let n2 = match s {
            Structure::Ahs => d.norm2_nabla_j,
            Structure::Es => d.norm2_nabla_jj,
        };
        t.scalar(norm, n2, "eq:absnablaj");
        t.tensor3(nij, d.nijenhuis(s), "eq:nijenComp");
        for (idx, v) in d.domega(s) {
            t.push(dw, idx.iter().map(|i| i + 1).collect(), *v, tag_d);
        }
        for (i, v) in d.delta_omega(s).iter().enumerate() {
            t.push(dl, vec![i + 1], *v, "eq:codifftwist");
        }
    }
    t.matrix6("ricstar", &d.ricstar, "eq:riccistar");
    t.scalar("sstar", d.sstar, "eq:scalstar");
    t.scalar("sj", d.sj, "eq:scalstar");
    t
}

/// Closed-form deltas (`oracle − printed`) as rows named `diff:<quantity>`.
pub fn closed_form_table(checks: &[ClosedFormCheck]) -> Table {
    let mut t = Table::default();
    for c in checks {
        t.entries.push(Entry {
            quantity: format!("diff:{}", c.quantity),
            index: c.index.clone(),
            value: c.delta,
            paper_ref: c.eq,
        });
    }
    t
}

pub fn class_tag(class: GrayHervellaClass) -> &'static str {
    match class {
        GrayHervellaClass::K => "eq:kahlerform",
        GrayHervellaClass::AK => "eq:diffkahl",
        GrayHervellaClass::NK => "eq:nablajcomp",
        GrayHervellaClass::QK => "eq:quasikahloc",
        GrayHervellaClass::QQK => "eq:q2kahloc",
        GrayHervellaClass::SK => "eq:semikahloc",
    }
}

pub fn check_tag(check: &Check) -> &'static str {
    match check {
        Check::QuadraticEinstein => "eq:quadrcond",
        Check::NijenhuisQuadratic => "eq:nijeinst",
        Check::Nijenhuis => "eq:nijenComp",
        Check::BlockB => "eq:cond4mani",
        Check::Class(c) => class_tag(*c),
        Check::Linear(_) => "eq:lincondort",
        Check::GapLow | Check::GapHigh => "eq:scalstar",
    }
}

pub fn theorem_tag(id: TheoremId) -> &'static str {
    match id {
        TheoremId::Integrability => "eq:linselfdual",
        TheoremId::MuskarovJ => "eq:muskar1",
        TheoremId::MuskarovJJ => "eq:muskar2",
        TheoremId::Linear => "eq:lincondort",
        TheoremId::Quadratic => "eq:quadrcond",
        TheoremId::NijQuadratic => "eq:nijeinst",
        TheoremId::Gaps => "eq:scalstar",
    }
}

pub fn classification_table(r: &ClassificationReport) -> Table {
    let mut t = Table::default();
    for m in &r.memberships {
        t.scalar(&format!("{}_residual", m.class), m.residual, class_tag(m.class));
        t.scalar(
            &format!("{}_member", m.class),
            if m.member { 1.0 } else { 0.0 },
            class_tag(m.class),
        );
    }
    t
}

pub fn scan_table(r: &ScanReport) -> Table {
    let tag = check_tag(&r.check);
    let mut t = Table::default();
    t.scalar("worst_residual", r.worst_residual, tag);
    t.scalar("min_residual", r.min_residual, tag);
    t.scalar("frames_checked", r.frames_checked as f64, tag);
    for (i, row) in r.worst_frame.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t.push("worst_frame", vec![i + 1, j + 1], *v, tag);
        }
    }
    t
}

pub fn verdict_table(v: &VerdictRecord, id: TheoremId) -> Table {
    let mut t = Table::default();
    for (k, value) in &v.residuals {
        t.scalar(k, *value, theorem_tag(id));
    }
    t.scalar("frames_checked", v.frames_checked as f64, theorem_tag(id));
    t
}
