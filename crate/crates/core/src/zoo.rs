//! Curvature fixtures. Every fixture is locally symmetric (no derivative
//! data), carries the properties it is expected to have, and can re-derive
//! them with [`ZooEntry::verify_known`].

use nalgebra::Matrix3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::curvature::{decompose_blocks, from_blocks, predicates, AlgebraicCurvature};
use crate::error::{Error, Result};
use crate::lambda2::{kulkarni_nomizu, Orientation, Sym2};
use crate::tensor::{set_curvature, zeros4};

type Block = [[f64; 3]; 3];

fn block(m: &Matrix3<f64>) -> Block {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn diag3(a: f64, b: f64, c: f64) -> Block {
    [[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]
}

/// Expected properties of a fixture.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Known {
    pub einstein: bool,
    pub self_dual: bool,
    pub anti_self_dual: bool,
    pub scalar: f64,
    pub a: Option<Block>,
    pub b: Option<Block>,
    pub c: Option<Block>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZooEntry {
    pub name: String,
    pub curvature: AlgebraicCurvature,
    pub known: Known,
}

impl ZooEntry {
    fn derived(name: String, curvature: AlgebraicCurvature) -> Self {
        let b = decompose_blocks(&curvature);
        let p = predicates(&curvature, 1e-9);
        let known = Known {
            einstein: p.einstein,
            self_dual: p.self_dual,
            anti_self_dual: p.anti_self_dual,
            scalar: b.s,
            a: Some(block(&b.a)),
            b: Some(block(&b.b)),
            c: Some(block(&b.c)),
        };
        ZooEntry { name, curvature, known }
    }

    /// Recomputes blocks and predicates and compares them with `known`.
    pub fn verify_known(&self, tol: f64) -> Result<()> {
        self.curvature.validate()?;
        let b = decompose_blocks(&self.curvature);
        let p = predicates(&self.curvature, tol);
        let mismatch = |what: &str| {
            Err(Error::InvalidInput(format!(
                "zoo entry {}: {what} differs from its known value",
                self.name
            )))
        };
        if p.einstein != self.known.einstein {
            return mismatch("einstein");
        }
        if p.self_dual != self.known.self_dual {
            return mismatch("self_dual");
        }
        if p.anti_self_dual != self.known.anti_self_dual {
            return mismatch("anti_self_dual");
        }
        if (b.s - self.known.scalar).abs() > tol * self.known.scalar.abs().max(1.0) {
            return mismatch("scalar curvature");
        }
        for (label, expected, got) in [
            ("A", &self.known.a, b.a),
            ("B", &self.known.b, b.b),
            ("C", &self.known.c, b.c),
        ] {
            if let Some(e) = expected {
                if (Matrix3::from_fn(|i, j| e[i][j]) - got).amax() > tol {
                    return mismatch(label);
                }
            }
        }
        Ok(())
    }
}

/// Constant sectional curvature `k`: `R_abcd = k(δ_ac δ_bd − δ_ad δ_bc)`.
pub fn space_form(k: f64) -> ZooEntry {
    let curvature = kulkarni_nomizu(&Sym2::identity(), &Sym2::identity().scaled(0.5 * k));
    ZooEntry {
        name: format!("space-form:{k}"),
        curvature,
        known: Known {
            einstein: true,
            self_dual: true,
            anti_self_dual: true,
            scalar: 12.0 * k,
            a: Some(diag3(k, k, k)),
            b: Some(diag3(0.0, 0.0, 0.0)),
            c: Some(diag3(k, k, k)),
        },
    }
}

/// `S²(r1) × S²(r2)`: only `R_1212 = 1/r1²` and `R_3434 = 1/r2²`.
pub fn product_spheres(r1: f64, r2: f64) -> Result<ZooEntry> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::InvalidInput(format!("radii must be positive, got ({r1}, {r2})")));
    }
    let (x, y) = (1.0 / (r1 * r1), 1.0 / (r2 * r2));
    let mut riem = zeros4::<4>();
    set_curvature(&mut riem, 0, 1, 0, 1, x);
    set_curvature(&mut riem, 2, 3, 2, 3, y);
    let curvature = AlgebraicCurvature::new(riem, Orientation::Negative)?;
    let h = 0.5 * (x + y);
    Ok(ZooEntry {
        name: format!("product-spheres:{r1}:{r2}"),
        curvature,
        known: Known {
            einstein: x == y,
            self_dual: false,
            anti_self_dual: false,
            scalar: 2.0 * (x + y),
            a: Some(diag3(h, 0.0, 0.0)),
            b: Some(diag3(0.5 * (x - y), 0.0, 0.0)),
            c: Some(diag3(h, 0.0, 0.0)),
        },
    })
}

/// Constant holomorphic sectional curvature `c` for `J e₁ = e₂, J e₃ = e₄`,
/// positively oriented so the Kähler form is self-dual.
pub fn complex_space_form(c: f64) -> ZooEntry {
    let mut j = [[0.0; 4]; 4];
    j[1][0] = 1.0;
    j[0][1] = -1.0;
    j[3][2] = 1.0;
    j[2][3] = -1.0;
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut riem = zeros4::<4>();
    for a in 0..4 {
        for b in 0..4 {
            for e in 0..4 {
                for f in 0..4 {
                    riem[a][b][e][f] = 0.25
                        * c
                        * (d(a, e) * d(b, f) - d(a, f) * d(b, e) + j[a][e] * j[b][f] - j[a][f] * j[b][e]
                            + 2.0 * j[a][b] * j[e][f]);
                }
            }
        }
    }
    let curvature = AlgebraicCurvature::new(riem, Orientation::Positive).expect("constructor has curvature symmetries");
    ZooEntry {
        name: format!("complex-space-form:{c}"),
        curvature,
        known: Known {
            einstein: true,
            self_dual: true,
            anti_self_dual: c == 0.0,
            scalar: 6.0 * c,
            a: None,
            b: Some(diag3(0.0, 0.0, 0.0)),
            c: Some(diag3(0.5 * c, 0.5 * c, 0.5 * c)),
        },
    }
}

/// `½ Ric₀⊙g` for traceless `Ric₀`: zero Weyl and scalar curvature.
pub fn pure_ricci(ric0: &Sym2) -> Result<ZooEntry> {
    let tr = ric0.trace();
    if tr.abs() > 1e-9 * ric0.matrix().amax().max(1.0) {
        return Err(Error::NotTraceless(tr));
    }
    let curvature = kulkarni_nomizu(ric0, &Sym2::identity().scaled(0.5));
    let mut entry = ZooEntry::derived("pure-ricci".to_string(), curvature);
    entry.known.einstein = ric0.matrix().amax() == 0.0;
    entry.known.self_dual = true;
    entry.known.anti_self_dual = true;
    entry.known.scalar = 0.0;
    entry.known.a = Some(diag3(0.0, 0.0, 0.0));
    entry.known.c = Some(diag3(0.0, 0.0, 0.0));
    Ok(entry)
}

/// `Ric₀ = diag(1, −1, 1, −1)` with `R₂₃ = R₃₂ = 1`.
pub fn standard_ricci() -> Sym2 {
    Sym2::from_fn(|i, j| match (i, j) {
        (0, 0) | (2, 2) => 1.0,
        (1, 1) | (3, 3) => -1.0,
        (1, 2) => 1.0,
        _ => 0.0,
    })
}

/// Symmetrization of a Gaussian 4-tensor.
pub fn random_curvature(seed: u64) -> ZooEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = zeros4::<4>();
    for x in raw.iter_mut().flatten().flatten().flatten() {
        *x = StandardNormal.sample(&mut rng);
    }
    ZooEntry::derived(
        format!("random:{seed}"),
        AlgebraicCurvature::project(&raw, Orientation::Negative),
    )
}

/// Same `A` and `C`, `B := 0`.
pub fn make_einstein(c: &AlgebraicCurvature) -> AlgebraicCurvature {
    let b = decompose_blocks(c);
    from_blocks(&b.a, &Matrix3::zeros(), &b.c, c.orientation()).expect("blocks of a valid curvature")
}

/// Replaces the block that carries the orientation's anti-self-dual Weyl
/// part by its trace part.
pub fn make_self_dual(c: &AlgebraicCurvature) -> AlgebraicCurvature {
    let mut b = decompose_blocks(c);
    let scalarize = |m: &Matrix3<f64>| Matrix3::identity() * (m.trace() / 3.0);
    match c.orientation() {
        Orientation::Negative => b.a = scalarize(&b.a),
        Orientation::Positive => b.c = scalarize(&b.c),
    }
    from_blocks(&b.a, &b.b, &b.c, c.orientation()).expect("blocks of a valid curvature")
}

/// A pure-Ricci curvature with `R₃₄ = 1` added (so `B₃₂ = ½`) plus a
/// traceless Weyl part `diag(−⅓, ⅔, −⅓)` in `A`, so that `A₂₂ ≠ A₃₃`.
pub fn pure_ricci_weyl() -> ZooEntry {
    let ric = Sym2::from_fn(|i, j| {
        if (i, j) == (2, 3) {
            1.0
        } else {
            standard_ricci().get(i, j)
        }
    });
    let base = kulkarni_nomizu(&ric, &Sym2::identity().scaled(0.5));
    let b = decompose_blocks(&base);
    let weyl = Matrix3::from_diagonal(&nalgebra::Vector3::new(-1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0));
    let c = from_blocks(&(b.a + weyl), &b.b, &b.c, Orientation::Negative).expect("traceless Weyl part");
    ZooEntry::derived("pure-ricci-weyl".to_string(), c)
}

/// Names accepted by [`lookup`] without parameters.
pub const NAMED: [&str; 9] = [
    "flat",
    "s4",
    "hyperbolic",
    "space-form-half",
    "product-spheres-1-1",
    "product-spheres-1-2",
    "complex-space-form",
    "pure-ricci",
    "pure-ricci-weyl",
];

/// Parametric name patterns accepted by [`lookup`].
pub const PARAMETRIC: [&str; 6] = [
    "space-form:K",
    "product-spheres:R1:R2",
    "complex-space-form:C",
    "random:SEED",
    "random-einstein:SEED",
    "random-self-dual-einstein:SEED",
];

fn num<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::UnknownZooName(name.to_string()))
}

pub fn lookup(name: &str) -> Result<ZooEntry> {
    let mut entry = match name {
        "flat" => space_form(0.0),
        "s4" => space_form(1.0),
        "hyperbolic" => space_form(-1.0),
        "space-form-half" => space_form(0.5),
        "product-spheres-1-1" => product_spheres(1.0, 1.0)?,
        "product-spheres-1-2" => product_spheres(1.0, 2.0)?,
        "complex-space-form" => complex_space_form(1.0),
        "pure-ricci" => pure_ricci(&standard_ricci())?,
        "pure-ricci-weyl" => pure_ricci_weyl(),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            match parts.as_slice() {
                ["space-form", k] => space_form(num(name, k)?),
                ["product-spheres", a, b] => product_spheres(num(name, a)?, num(name, b)?)?,
                ["complex-space-form", c] => complex_space_form(num(name, c)?),
                ["random", s] => random_curvature(num(name, s)?),
                ["random-einstein", s] => ZooEntry::derived(
                    name.to_string(),
                    make_einstein(&random_curvature(num(name, s)?).curvature),
                ),
                ["random-self-dual-einstein", s] => ZooEntry::derived(
                    name.to_string(),
                    make_self_dual(&make_einstein(&random_curvature(num(name, s)?).curvature)),
                ),
                _ => return Err(Error::UnknownZooName(name.to_string())),
            }
        }
    };
    entry.name = name.to_string();
    entry.verify_known(1e-8)?;
    Ok(entry)
}

/// All unparametrized fixtures.
pub fn all_named() -> Vec<ZooEntry> {
    NAMED
        .iter()
        .map(|n| lookup(n).expect("named fixtures are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::ricci_scalar;

    #[test]
    fn named_fixtures_verify() {
        for e in all_named() {
            e.verify_known(1e-9).unwrap();
            assert!(e.curvature.is_locally_symmetric());
        }
    }

    #[test]
    fn space_form_values() {
        let b = decompose_blocks(&space_form(1.0).curvature);
        assert!((b.s - 12.0).abs() < 1e-12);
        assert!((b.a - Matrix3::identity()).amax() < 1e-12);
        assert!((decompose_blocks(&space_form(-1.0).curvature).s + 12.0).abs() < 1e-12);
        assert_eq!(space_form(2.0).curvature.r(1, 2, 1, 2), 2.0);
        assert_eq!(space_form(2.0).curvature.r(1, 2, 2, 1), -2.0);
    }

    #[test]
    fn product_spheres_values() {
        let e = product_spheres(1.0, 1.0).unwrap();
        let (ric, s) = ricci_scalar(&e.curvature);
        assert_eq!(s, 4.0);
        assert!((ric.matrix() - nalgebra::Matrix4::identity()).amax() < 1e-15);
        let b = decompose_blocks(&product_spheres(1.0, 2.0).unwrap().curvature).b;
        assert!((b[(0, 0)] - 0.375).abs() < 1e-15);
        assert!(product_spheres(0.0, 1.0).is_err());
        for r in [0.3, 0.7, 1.5, 2.0, 4.2] {
            let e = product_spheres(r, r).unwrap();
            let p = predicates(&e.curvature, 1e-9);
            assert!(p.einstein && !p.self_dual);
        }
    }

    #[test]
    fn complex_space_form_orientation() {
        let e = complex_space_form(1.0);
        let p = predicates(&e.curvature, 1e-9);
        assert!(p.einstein && p.self_dual && !p.anti_self_dual);
        assert!((decompose_blocks(&e.curvature).s - 6.0).abs() < 1e-12);
        let flipped = predicates(&e.curvature.clone().with_orientation(Orientation::Negative), 1e-9);
        assert!(!flipped.self_dual && flipped.anti_self_dual);
        assert_eq!(complex_space_form(0.0).curvature.max_abs(), 0.0);
    }

    #[test]
    fn pure_ricci_values() {
        let e = lookup("pure-ricci").unwrap();
        let b = decompose_blocks(&e.curvature);
        assert!((b.b[(1, 1)] - 1.0).abs() < 1e-12);
        assert!((b.b[(0, 1)] - 0.5).abs() < 1e-12);
        assert!(b.a.amax() < 1e-12 && b.c.amax() < 1e-12);
        assert!(!predicates(&e.curvature, 1e-9).einstein);
        assert!(matches!(pure_ricci(&Sym2::identity()), Err(Error::NotTraceless(_))));
        assert_eq!(pure_ricci(&Sym2::diagonal([0.0; 4])).unwrap().curvature.max_abs(), 0.0);
    }

    #[test]
    fn pure_ricci_weyl_has_the_needed_entries() {
        let b = decompose_blocks(&pure_ricci_weyl().curvature);
        assert!((b.a[(1, 1)] - b.a[(2, 2)]).abs() > 0.5);
        assert!(b.b[(2, 1)].abs() > 0.1);
    }

    #[test]
    fn projections() {
        for seed in 0..20 {
            let c = random_curvature(seed).curvature;
            let e = make_einstein(&c);
            let p = predicates(&e, 1e-9);
            assert!(p.einstein);
            let (b0, b1) = (decompose_blocks(&c), decompose_blocks(&e));
            assert!((b0.a - b1.a).amax() < 1e-12 && (b0.c - b1.c).amax() < 1e-12);
            let sd = make_self_dual(&e);
            let p = predicates(&sd, 1e-9);
            assert!(p.einstein && p.self_dual);
        }
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(lookup("nope"), Err(Error::UnknownZooName(_))));
        assert!(matches!(lookup("space-form:x"), Err(Error::UnknownZooName(_))));
        assert_eq!(lookup("space-form:2").unwrap().known.scalar, 24.0);
        assert!(lookup("random-self-dual-einstein:3").unwrap().known.self_dual);
    }
}
