use serde::Serialize;

use crate::curve::SuzukiParams;
use crate::error::Result;
use crate::riemann_roch::expected_dimension;

/// Closed-form parameters of C_{m,ℓ} = C_L(E, ℓD) over F_{q^4}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CodeParams {
    pub m: u32,
    pub ell: u64,
    /// Length, deg E.
    pub n: u64,
    /// Dimension, ℓ(q^2+1) - g + 1.
    pub k: u64,
    /// Designed distance n - ℓ(q^2+1).
    pub dstar: u64,
    /// Guaranteed correctable errors, floor((d* - 1) / 2).
    pub t: u64,
    pub rate: f64,
    /// ℓ' = q^2 + 2g - 2 - ℓ when the dual is again a member of the family.
    pub dual_level: Option<u64>,
    pub isodual_level: u64,
    pub isodual: bool,
    pub iso_orthogonal: bool,
}

impl CodeParams {
    pub fn new(m: u32, ell: u64) -> Result<Self> {
        Self::from_suzuki(&SuzukiParams::new(m)?, ell)
    }

    pub fn from_suzuki(p: &SuzukiParams, ell: u64) -> Result<Self> {
        p.check_level(ell)?;
        let n = p.n_e;
        let k = expected_dimension(p, ell);
        let dstar = n - ell * p.deg_d();
        let iso = isodual_level(p);
        Ok(CodeParams {
            m: p.m,
            ell,
            n,
            k,
            dstar,
            t: (dstar - 1) / 2,
            rate: k as f64 / n as f64,
            dual_level: dual_level(p, ell),
            isodual_level: iso,
            isodual: ell == iso,
            iso_orthogonal: iso_orthogonal(p, ell),
        })
    }

    /// The rate cut (not rounded) to `digits` decimal places, as it is usually printed.
    pub fn rate_truncated(&self, digits: u32) -> f64 {
        truncate_ratio(self.k, self.n, digits)
    }
}

/// floor(10^digits · num / den) / 10^digits, computed in integers.
pub fn truncate_ratio(num: u64, den: u64, digits: u32) -> f64 {
    let scale = 10u128.pow(digits);
    ((num as u128 * scale) / den as u128) as f64 / scale as f64
}

/// ℓ' = q^2 + 2g - 2 - ℓ when 2g - 1 <= ℓ <= q^2 - 1.
pub fn dual_level(p: &SuzukiParams, ell: u64) -> Option<u64> {
    (ell >= 2 * p.g - 1 && ell <= p.max_level()).then(|| p.q * p.q + 2 * p.g - 2 - ell)
}

/// q^2 / 2 + g - 1.
pub fn isodual_level(p: &SuzukiParams) -> u64 {
    p.q * p.q / 2 + p.g - 1
}

pub fn iso_orthogonal(p: &SuzukiParams, ell: u64) -> bool {
    ell <= isodual_level(p)
}
