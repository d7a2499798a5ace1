use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use super::{dual_level, CodeFamily};
use crate::error::{Error, Result};
use crate::gf2e::Fe;
use crate::riemann_roch::{Monomial, RRBasis};

/// A nonzero entry of the scaled Gram product G · diag(h) · G'ᵀ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramMismatch {
    pub row: usize,
    pub col: usize,
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ell: u64,
    pub ell_dual: u64,
    pub n: usize,
    pub k: usize,
    pub k_dual: usize,
    pub dimensions_ok: bool,
    pub full: bool,
    pub pairs_checked: u64,
    pub first_mismatch: Option<GramMismatch>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.dimensions_ok && self.first_mismatch.is_none()
    }
}

fn product(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial {
        a: a.a + b.a,
        b: a.b + b.b,
        c: a.c + b.c,
        d: a.d + b.d,
        r: a.r + b.r,
    }
}

impl CodeFamily {
    /// Σ_i f(P_i) h_i for a monomial f.
    fn scaled_sum(&self, mono: &Monomial, h: &[Fe]) -> Fe {
        let f = self.field();
        (0..self.len()).fold(Fe::ZERO, |acc, i| match self.cache().log_eval(mono, i) {
            Some(l) => acc + f.mul(f.exp(l as usize), h[i]),
            None => acc,
        })
    }

    /// Checks that the h-scaled level-ℓ' code annihilates the level-ℓ code.
    ///
    /// With `full`, every entry of G · diag(h) · G'ᵀ is checked. Entry (j, k)
    /// equals Σ_i (f_j g_k)(P_i) h_i and f_j g_k is again a monomial, so each
    /// distinct product is summed once and shared. Otherwise `samples` random
    /// pairs are checked.
    pub fn verify_duality<R: Rng>(
        &self,
        ell: u64,
        samples: u64,
        full: bool,
        rng: &mut R,
    ) -> Result<DualityReport> {
        self.verify_duality_with(self.dual_scaling_vector(), ell, samples, full, rng)
    }

    /// [`verify_duality`](Self::verify_duality) against an arbitrary scaling vector.
    pub fn verify_duality_with<R: Rng>(
        &self,
        h: &[Fe],
        ell: u64,
        samples: u64,
        full: bool,
        rng: &mut R,
    ) -> Result<DualityReport> {
        if h.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: h.len(),
            });
        }
        let params = self.curve().params();
        params.check_level(ell)?;
        let ell_dual = dual_level(params, ell).ok_or(Error::DualUnavailable {
            ell,
            min: 2 * params.g - 1,
        })?;
        let basis = RRBasis::new(params, ell)?;
        let dual = RRBasis::new(params, ell_dual)?;
        let (k, k_dual, n) = (basis.dim(), dual.dim(), self.len());
        let mut report = DualityReport {
            ell,
            ell_dual,
            n,
            k,
            k_dual,
            dimensions_ok: k + k_dual == n,
            full,
            pairs_checked: 0,
            first_mismatch: None,
        };
        let mono = basis.monomials();
        let dual_mono = dual.monomials();
        let record = |row: usize, col: usize, v: Fe, report: &mut DualityReport| {
            report.pairs_checked += 1;
            if !v.is_zero() && report.first_mismatch.is_none() {
                report.first_mismatch = Some(GramMismatch {
                    row,
                    col,
                    value: v.0,
                });
            }
        };
        if full {
            let mut sums: HashMap<Monomial, Fe> = HashMap::new();
            for (j, fj) in mono.iter().enumerate() {
                for (c, gc) in dual_mono.iter().enumerate() {
                    let p = product(fj, gc);
                    let v = *sums.entry(p).or_insert_with(|| self.scaled_sum(&p, h));
                    record(j, c, v, &mut report);
                }
            }
        } else {
            for _ in 0..samples {
                let j = rng.gen_range(0..k);
                let c = rng.gen_range(0..k_dual);
                let v = self.scaled_sum(&product(&mono[j], &dual_mono[c]), h);
                record(j, c, v, &mut report);
            }
        }
        Ok(report)
    }
}
