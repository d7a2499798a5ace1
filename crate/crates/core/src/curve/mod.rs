//! The Suzuki curve y^q + y = x^q0 (x^q + x) and its rational points.

mod params;

use std::sync::Arc;

pub use params::{SuzukiParams, MAX_FORMULA_M};

use crate::error::{Error, Result};
use crate::gf2e::{conventional_modulus, Fe, FieldCtx, SubfieldTower, DEFAULT_TABLE_BUDGET};

/// Which field a point's coordinates live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    /// F_q.
    Base,
    /// F_{q^4}.
    Quartic,
}

impl Extension {
    pub fn j(self) -> u32 {
        match self {
            Extension::Base => 1,
            Extension::Quartic => 4,
        }
    }

    pub fn from_j(j: u32) -> Option<Self> {
        match j {
            1 => Some(Extension::Base),
            4 => Some(Extension::Quartic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    /// The unique point above the singularity at infinity.
    Infinity,
    Affine {
        x: Fe,
        y: Fe,
    },
}

/// Values of the coordinate functions x, y, z, w at an affine point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Xyzw {
    pub x: Fe,
    pub y: Fe,
    pub z: Fe,
    pub w: Fe,
}

/// The curve together with its field tower F_q ⊂ F_{q^4}.
///
/// Point enumeration is supported for m ∈ {1, 2}.
#[derive(Debug, Clone)]
pub struct SuzukiCurve {
    params: SuzukiParams,
    tower: Arc<SubfieldTower>,
}

impl SuzukiCurve {
    pub fn new(m: u32) -> Result<Self> {
        Self::with_table_budget(m, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_table_budget(m: u32, budget: u32) -> Result<Self> {
        if !(1..=2).contains(&m) {
            return Err(Error::UnsupportedM(m));
        }
        let s = 2 * m + 1;
        let base_mod = conventional_modulus(s).expect("fixed modulus");
        let ext_mod = conventional_modulus(4 * s).expect("fixed modulus");
        Self::with_moduli(m, base_mod, ext_mod, budget)
    }

    /// Builds the tower from explicit moduli. Fails when either is reducible.
    pub fn with_moduli(m: u32, base_mod: u64, ext_mod: u64, budget: u32) -> Result<Self> {
        let params = SuzukiParams::new(m)?;
        let s = params.log_q();
        let base = Arc::new(FieldCtx::with_options(s, base_mod, None, budget)?);
        let ext = Arc::new(FieldCtx::with_options(4 * s, ext_mod, Some(s), budget)?);
        let tower = Arc::new(SubfieldTower::new(base, ext)?);
        Ok(SuzukiCurve { params, tower })
    }

    pub fn params(&self) -> &SuzukiParams {
        &self.params
    }

    pub fn tower(&self) -> &Arc<SubfieldTower> {
        &self.tower
    }

    pub fn field(&self, ext: Extension) -> &FieldCtx {
        match ext {
            Extension::Base => self.tower.base(),
            Extension::Quartic => self.tower.ext(),
        }
    }

    /// x^q0 (x^q + x), the right-hand side of the curve equation.
    fn rhs(&self, f: &FieldCtx, x: Fe) -> Fe {
        let xq = f.frobenius(x, self.params.log_q());
        f.mul(f.frobenius(x, self.params.m), xq + x)
    }

    pub fn on_curve(&self, ext: Extension, x: Fe, y: Fe) -> bool {
        let f = self.field(ext);
        f.frobenius(y, self.params.log_q()) + y == self.rhs(f, x)
    }

    /// Whether an affine point of the quartic field is F_q-rational.
    pub fn is_base_rational(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.tower.in_base(x) && self.tower.in_base(y),
        }
    }

    /// The set T of x-values in F_{q^4} whose fibre splits completely.
    pub fn splitting_x_values(&self) -> Vec<Fe> {
        let f = self.tower.ext();
        f.elements()
            .filter(|&a| self.tower.trace_to_subfield(self.rhs(f, a)).is_zero())
            .collect()
    }

    /// P∞ followed by every affine point, sorted by (x, y).
    pub fn enumerate_points(&self, ext: Extension) -> Vec<CurvePoint> {
        let mut affine = match ext {
            Extension::Base => {
                let f = self.tower.base();
                f.elements()
                    .flat_map(|x| f.elements().map(move |y| (x, y)))
                    .filter(|&(x, y)| self.on_curve(Extension::Base, x, y))
                    .map(|(x, y)| CurvePoint::Affine { x, y })
                    .collect::<Vec<_>>()
            }
            Extension::Quartic => {
                let f = self.tower.ext();
                let kernel = self.tower.embedded_base();
                let mut pts = Vec::with_capacity(self.params.n4 as usize);
                for x in f.elements() {
                    if let Some(y0) = self.tower.solve_artin_schreier(self.rhs(f, x)) {
                        pts.extend(kernel.iter().map(|&k| CurvePoint::Affine { x, y: y0 + k }));
                    }
                }
                pts
            }
        };
        affine.sort_unstable();
        let mut out = Vec::with_capacity(affine.len() + 1);
        out.push(CurvePoint::Infinity);
        out.extend(affine);
        out
    }

    /// The support of E: F_{q^4}-rational points that are not F_q-rational, sorted.
    pub fn points_of_e(&self) -> Vec<CurvePoint> {
        self.enumerate_points(Extension::Quartic)
            .into_iter()
            .filter(|p| !self.is_base_rational(p))
            .collect()
    }

    /// (x, y, z, w) at an affine point, with z = x^(2q0+1) + y^(2q0) and
    /// w = x y^(2q0) + z^(2q0) (signs vanish in characteristic 2).
    pub fn eval_xyzw(&self, ext: Extension, p: &CurvePoint) -> Result<Xyzw> {
        let CurvePoint::Affine { x, y } = *p else {
            return Err(Error::PointAtInfinity);
        };
        let f = self.field(ext);
        let m = self.params.m;
        let x2q0 = f.frobenius(x, m + 1);
        let y2q0 = f.frobenius(y, m + 1);
        let z = f.mul(x2q0, x) + y2q0;
        let w = f.mul(x, y2q0) + f.frobenius(z, m + 1);
        Ok(Xyzw { x, y, z, w })
    }

    pub fn format_point(&self, ext: Extension, p: &CurvePoint) -> String {
        let f = self.field(ext);
        match p {
            CurvePoint::Infinity => format!("j={} inf", ext.j()),
            CurvePoint::Affine { x, y } => {
                format!("j={} x={} y={}", ext.j(), f.to_hex(*x), f.to_hex(*y))
            }
        }
    }
}
