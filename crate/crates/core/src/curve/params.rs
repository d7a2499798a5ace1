use serde::Serialize;

use crate::error::{Error, Result};
use crate::riemann_roch::Monomial;

/// Largest m for which every closed-form quantity fits in a `u64`.
pub const MAX_FORMULA_M: u32 = 7;

/// Numeric data of the Suzuki curve for q = 2^(2m+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuzukiParams {
    pub m: u32,
    pub q0: u64,
    pub q: u64,
    /// Genus q0 (q - 1).
    pub g: u64,
    /// Pole orders of x, y, z, w at the point at infinity.
    pub gens: [u64; 4],
    /// Number of F_q-rational points.
    pub n1: u64,
    /// Number of F_{q^4}-rational points.
    pub n4: u64,
    /// deg E = n4 - n1.
    pub n_e: u64,
}

impl SuzukiParams {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_FORMULA_M {
            return Err(Error::UnsupportedM(m));
        }
        let q0 = 1u64 << m;
        let q = 1u64 << (2 * m + 1);
        let g = q0 * (q - 1);
        let n1 = point_count(q0, q, g, 1) as u64;
        let n4 = point_count(q0, q, g, 4) as u64;
        Ok(SuzukiParams {
            m,
            q0,
            q,
            g,
            gens: [q, q + q0, q + 2 * q0, q + 2 * q0 + 1],
            n1,
            n4,
            n_e: n4 - n1,
        })
    }

    /// log2 q = 2m + 1.
    pub fn log_q(&self) -> u32 {
        2 * self.m + 1
    }

    /// Largest admissible level, q^2 - 1.
    pub fn max_level(&self) -> u64 {
        self.q * self.q - 1
    }

    /// deg D = q^2 + 1.
    pub fn deg_d(&self) -> u64 {
        self.q * self.q + 1
    }

    pub fn check_level(&self, ell: u64) -> Result<()> {
        if ell == 0 || ell > self.max_level() {
            return Err(Error::LevelOutOfRange {
                ell,
                max: self.max_level(),
            });
        }
        Ok(())
    }

    /// Number of F_{q^j}-rational points from the L-polynomial (1 + 2q0 t + q t^2)^g.
    pub fn n_points(&self, j: u32) -> i128 {
        point_count(self.q0, self.q, self.g, j)
    }

    /// aq + b(q+q0) + c(q+2q0) + d(q+2q0+1) + r q^2.
    pub fn pole_order(&self, mono: &Monomial) -> u64 {
        let [gx, gy, gz, gw] = self.gens;
        mono.a as u64 * gx
            + mono.b as u64 * gy
            + mono.c as u64 * gz
            + mono.d as u64 * gw
            + mono.r as u64 * self.q * self.q
    }
}

/// q^j + 1 - g (α^j + conj(α)^j) with α = q0(-1 + i).
fn point_count(q0: u64, q: u64, g: u64, j: u32) -> i128 {
    // (re, im) of (-1 + i)^j
    let (mut re, mut im) = (1i128, 0i128);
    for _ in 0..j {
        (re, im) = (-re - im, re - im);
    }
    let alpha_re = re * (q0 as i128).pow(j);
    (q as i128).pow(j) + 1 - 2 * g as i128 * alpha_re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_values() {
        let p = SuzukiParams::new(1).unwrap();
        assert_eq!((p.q0, p.q, p.g), (2, 8, 14));
        assert_eq!(p.gens, [8, 10, 12, 13]);
        assert_eq!(p.n1, 65);
        assert_eq!(p.n4, 4096 + 1 + 1792);
        assert_eq!(p.n_e, 5824);
    }

    #[test]
    fn structural_identities() {
        for m in 1..=MAX_FORMULA_M {
            let p = SuzukiParams::new(m).unwrap();
            assert_eq!(p.q, 2 * p.q0 * p.q0);
            assert_eq!(p.n1, p.q * p.q + 1);
            assert_eq!(
                p.n_e,
                p.q.pow(4) + 2 * p.q0 * p.q * p.q * (p.q - 1) - p.q * p.q
            );
            assert!(2 * p.g < p.q * p.q + 1);
            // the degenerate extensions carry no new points
            assert_eq!(p.n_points(2), (p.q * p.q + 1) as i128);
            assert_eq!(p.n_points(3), (p.q * p.q + 1) as i128);
        }
        assert!(SuzukiParams::new(0).is_err());
        assert!(SuzukiParams::new(MAX_FORMULA_M + 1).is_err());
    }

    #[test]
    fn pole_orders_of_generators() {
        let p = SuzukiParams::new(1).unwrap();
        let mono = |a, b, c, d, r| Monomial { a, b, c, d, r };
        assert_eq!(p.pole_order(&mono(0, 0, 0, 0, 0)), 0);
        assert_eq!(p.pole_order(&mono(1, 0, 0, 0, 0)), 8);
        assert_eq!(p.pole_order(&mono(0, 1, 0, 0, 0)), 10);
        assert_eq!(p.pole_order(&mono(0, 0, 1, 0, 0)), 12);
        assert_eq!(p.pole_order(&mono(0, 0, 0, 1, 0)), 13);
        // 5*8 + 10 + 13 + 63*64
        assert_eq!(p.pole_order(&mono(5, 1, 0, 1, 63)), 4095);
    }
}
