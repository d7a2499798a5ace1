//! Affine automorphisms of the Suzuki curve.
//!
//! Every map here fixes P∞ and has the form
//!
//! ```text
//! (x, y) ↦ (c(x + a), c^(q0+1)(y + a^q0 x + b)),   a, b, c ∈ F_q, c ≠ 0,
//! ```
//!
//! a translation T_{a,b} followed by a torus element M_c. Together they form
//! a group of order q²(q - 1). The maps fix every F_q-rational point setwise
//! and permute the points of E, so they act on codewords by coordinate
//! permutation.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::code::Code;
use crate::curve::{CurvePoint, Extension, SuzukiCurve};
use crate::error::{Error, Result};
use crate::gf2e::Fe;

/// σ = M_c ∘ T_{a,b}, parameters in the base field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AffineAut {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
}

impl AffineAut {
    pub const IDENTITY: AffineAut = AffineAut {
        a: Fe::ZERO,
        b: Fe::ZERO,
        c: Fe::ONE,
    };

    pub fn new(curve: &SuzukiCurve, a: Fe, b: Fe, c: Fe) -> Result<Self> {
        let f = curve.field(Extension::Base);
        for v in [a, b, c] {
            if !f.contains(v) {
                return Err(Error::NotInField {
                    value: v.0 as u64,
                    degree: f.degree(),
                });
            }
        }
        if c.is_zero() {
            return Err(Error::ZeroScaling);
        }
        Ok(AffineAut { a, b, c })
    }

    pub fn translation(curve: &SuzukiCurve, a: Fe, b: Fe) -> Result<Self> {
        Self::new(curve, a, b, Fe::ONE)
    }

    pub fn random<R: Rng>(curve: &SuzukiCurve, rng: &mut R) -> Self {
        let q = curve.params().q as u32;
        AffineAut {
            a: Fe(rng.gen_range(0..q)),
            b: Fe(rng.gen_range(0..q)),
            c: Fe(rng.gen_range(1..q)),
        }
    }

    /// All q²(q - 1) maps.
    pub fn all(curve: &SuzukiCurve) -> impl Iterator<Item = AffineAut> {
        let q = curve.params().q as u32;
        (0..q).flat_map(move |a| {
            (0..q).flat_map(move |b| {
                (1..q).map(move |c| AffineAut {
                    a: Fe(a),
                    b: Fe(b),
                    c: Fe(c),
                })
            })
        })
    }

    /// self ∘ other (other applied first).
    pub fn compose(&self, curve: &SuzukiCurve, other: &AffineAut) -> AffineAut {
        let f = curve.field(Extension::Base);
        let q0 = curve.params().q0;
        // T_{a,b} M_c = M_c T_{a/c, b/c^(q0+1)} and
        // T_{a,b} T_{a',b'} = T_{a+a', b+b'+a^q0 a'}.
        let inv_c2 = f.inv(other.c).expect("c is nonzero");
        let a1 = f.mul(self.a, inv_c2);
        let b1 = f.mul(self.b, f.pow(inv_c2, q0 + 1));
        AffineAut {
            a: a1 + other.a,
            b: b1 + other.b + f.mul(f.pow(a1, q0), other.a),
            c: f.mul(self.c, other.c),
        }
    }

    pub fn inverse(&self, curve: &SuzukiCurve) -> AffineAut {
        let f = curve.field(Extension::Base);
        let q0 = curve.params().q0;
        // (M_c T_{a,b})^(-1) = T_{a, b + a^(q0+1)} M_{1/c} = M_{1/c} T_{ca, c^(q0+1)(b + a^(q0+1))}
        let cq = f.pow(self.c, q0 + 1);
        AffineAut {
            a: f.mul(self.c, self.a),
            b: f.mul(cq, self.b + f.pow(self.a, q0 + 1)),
            c: f.inv(self.c).expect("c is nonzero"),
        }
    }

    pub fn apply(&self, curve: &SuzukiCurve, ext: Extension, p: &CurvePoint) -> CurvePoint {
        let CurvePoint::Affine { x, y } = *p else {
            return CurvePoint::Infinity;
        };
        let f = curve.field(ext);
        let lift = |v: Fe| match ext {
            Extension::Base => v,
            Extension::Quartic => curve.tower().embed(v),
        };
        let (a, b, c) = (lift(self.a), lift(self.b), lift(self.c));
        let q0 = curve.params().q0;
        let x2 = f.mul(c, x + a);
        let y2 = f.mul(f.pow(c, q0 + 1), y + f.mul(f.pow(a, q0), x) + b);
        CurvePoint::Affine { x: x2, y: y2 }
    }

    /// perm[i] = index of σ(points[i]).
    pub fn point_permutation(
        &self,
        curve: &SuzukiCurve,
        ext: Extension,
        points: &[CurvePoint],
    ) -> Result<Vec<usize>> {
        let index: HashMap<CurvePoint, usize> =
            points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        points
            .iter()
            .map(|p| {
                index
                    .get(&self.apply(curve, ext, p))
                    .copied()
                    .ok_or(Error::PointNotFound)
            })
            .collect()
    }

    /// Checks on-curve preservation at `samples` random F_{q^4}-points.
    pub fn certify<R: Rng>(&self, curve: &SuzukiCurve, samples: usize, rng: &mut R) -> bool {
        (0..samples).all(|_| {
            let p = random_quartic_point(curve, rng);
            let CurvePoint::Affine { x, y } = self.apply(curve, Extension::Quartic, &p) else {
                return false;
            };
            curve.on_curve(Extension::Quartic, x, y)
        })
    }
}

/// A uniformly chosen affine F_{q^4}-point: a random x with a solvable fibre
/// and a random y in that fibre.
pub fn random_quartic_point<R: Rng>(curve: &SuzukiCurve, rng: &mut R) -> CurvePoint {
    let f = curve.field(Extension::Quartic);
    let tower = curve.tower();
    let params = curve.params();
    loop {
        let x = Fe(rng.gen_range(0..f.size()) as u32);
        let rhs = f.mul(f.pow(x, params.q0), f.frobenius(x, params.log_q()) + x);
        if let Some(y0) = tower.solve_artin_schreier(rhs) {
            // the fibre is y0 + F_q
            let t = tower.embedded_base()[rng.gen_range(0..params.q as usize)];
            return CurvePoint::Affine { x, y: y0 + t };
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceFailure {
    pub aut: AffineAut,
    pub trial: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub aut: AffineAut,
    pub fixes_base_points: bool,
    pub permutes_e: bool,
    pub trials: usize,
    pub passed_trials: usize,
    pub failure: Option<InvarianceFailure>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.fixes_base_points && self.permutes_e && self.failure.is_none()
    }
}

/// For `trials` random codewords w, checks that w ∘ σ⁻¹ is again a codeword,
/// after checking that σ maps the F_q-points onto themselves and permutes E.
pub fn invariance_check<R: Rng>(
    code: &Code,
    aut: &AffineAut,
    trials: usize,
    rng: &mut R,
) -> Result<InvarianceReport> {
    let family = code.family();
    let curve = family.curve();
    let base_points = curve.enumerate_points(Extension::Base);
    let fixes_base_points = aut
        .point_permutation(curve, Extension::Base, &base_points)
        .is_ok();
    let mut report = InvarianceReport {
        aut: *aut,
        fixes_base_points,
        permutes_e: false,
        trials,
        passed_trials: 0,
        failure: None,
    };
    let perm = match aut.point_permutation(curve, Extension::Quartic, family.points()) {
        Ok(p) => p,
        Err(_) => {
            report.failure = Some(InvarianceFailure {
                aut: *aut,
                trial: 0,
                reason: "image of E not in E".into(),
            });
            return Ok(report);
        }
    };
    report.permutes_e = true;
    for trial in 0..trials {
        let w = code.encode(&code.random_message(rng))?;
        // (w ∘ σ⁻¹)(σ(P_i)) = w(P_i)
        let mut v = vec![Fe::ZERO; w.len()];
        for (i, &target) in perm.iter().enumerate() {
            v[target] = w[i];
        }
        if code.contains(&v)? {
            report.passed_trials += 1;
        } else if report.failure.is_none() {
            report.failure = Some(InvarianceFailure {
                aut: *aut,
                trial,
                reason: "permuted codeword fails the parity check".into(),
            });
        }
    }
    Ok(report)
}
