use serde::Serialize;

use crate::curve::SuzukiParams;
use crate::error::Result;

/// Exponents of the function x^a y^b z^c w^d / (x^q + x)^r.
///
/// Inside [`decompose`] the same tuple is read in the shifted form
/// x^a y^b z^c w^d (x^q + x)^r; [`RRBasis`] stores the quotient form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub r: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        r: 0,
    };

    /// Whether a, b, c, d are in the reduced ranges and r <= ell.
    pub fn in_range(&self, params: &SuzukiParams, ell: u64) -> bool {
        (self.a as u64) < params.q
            && self.b <= 1
            && (self.c as u64) < params.q0
            && (self.d as u64) < params.q0
            && self.r as u64 <= ell
    }
}

/// Writes n = a q + b (q+q0) + c (q+2q0) + d (q+2q0+1) + r q^2 with the
/// reduced ranges via the remainder cascade; `None` when n is a gap or r > ell.
pub fn decompose(params: &SuzukiParams, n: u64, ell: u64) -> Option<Monomial> {
    let (q, q0) = (params.q as i64, params.q0 as i64);
    let n = n as i64;

    let d = n.rem_euclid(q0);
    let nd = n - d * (q + 2 * q0 + 1);
    if nd < 0 {
        return None;
    }
    let nd = nd / q0;

    let b = nd.rem_euclid(2);
    let nb = nd - b * (2 * q0 + 1);
    if nb < 0 {
        return None;
    }
    let nb = nb / 2;

    let c = nb.rem_euclid(q0);
    let nc = nb - c * (q0 + 1);
    if nc < 0 {
        return None;
    }
    let nc = nc / q0;

    let a = nc.rem_euclid(q);
    let r = (nc - a) / q;
    if r as u64 > ell {
        return None;
    }
    let mono = Monomial {
        a: a as u32,
        b: b as u32,
        c: c as u32,
        d: d as u32,
        r: r as u32,
    };
    debug_assert_eq!(params.pole_order(&mono), n as u64);
    Some(mono)
}

/// An explicit basis of L(ℓD), ordered by increasing pole order of the
/// shifted function f · (x^q + x)^ℓ.
#[derive(Debug, Clone)]
pub struct RRBasis {
    level: u64,
    monomials: Vec<Monomial>,
    pole_orders: Vec<u64>,
}

impl RRBasis {
    pub fn new(params: &SuzukiParams, ell: u64) -> Result<Self> {
        params.check_level(ell)?;
        let mut monomials = Vec::new();
        let mut pole_orders = Vec::new();
        for n in 0..=ell * params.deg_d() {
            if let Some(mut mono) = decompose(params, n, ell) {
                mono.r = (ell - mono.r as u64) as u32;
                monomials.push(mono);
                pole_orders.push(n);
            }
        }
        Ok(RRBasis {
            level: ell,
            monomials,
            pole_orders,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Basis functions x^a y^b z^c w^d / (x^q + x)^r.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Pole order at P∞ of each function after multiplying by (x^q + x)^ℓ.
    pub fn pole_orders(&self) -> &[u64] {
        &self.pole_orders
    }
}

/// ℓ(q^2 + 1) - g + 1.
pub fn expected_dimension(params: &SuzukiParams, ell: u64) -> u64 {
    ell * params.deg_d() - params.g + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann_roch::Semigroup;

    fn p1() -> SuzukiParams {
        SuzukiParams::new(1).unwrap()
    }

    // Oracle: search every in-range tuple.
    fn exhaustive(p: &SuzukiParams, n: u64, ell: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..p.q as u32 {
            for b in 0..2 {
                for c in 0..p.q0 as u32 {
                    for d in 0..p.q0 as u32 {
                        for r in 0..=ell as u32 {
                            let mono = Monomial { a, b, c, d, r };
                            if p.pole_order(&mono) == n {
                                out.push(mono);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn decompose_examples() {
        let p = p1();
        let m = |a, b, c, d, r| Some(Monomial { a, b, c, d, r });
        assert_eq!(decompose(&p, 13, 1), m(0, 0, 0, 1, 0));
        assert_eq!(decompose(&p, 20, 1), m(1, 0, 1, 0, 0));
        assert_eq!(
            exhaustive(&p, 20, 1),
            vec![Monomial {
                a: 1,
                b: 0,
                c: 1,
                d: 0,
                r: 0
            }]
        );
        assert_eq!(decompose(&p, 4095, 63), m(5, 1, 0, 1, 63));
        assert_eq!(decompose(&p, 9, 1), None);
        assert!(exhaustive(&p, 9, 1).is_empty());
    }

    #[test]
    fn decompose_matches_exhaustive_search() {
        let p = p1();
        for n in 0..=400 {
            let found = exhaustive(&p, n, 7);
            assert!(found.len() <= 1);
            assert_eq!(decompose(&p, n, 7), found.first().copied(), "n = {n}");
        }
    }

    #[test]
    fn decompose_certifies_every_nongap() {
        let p = p1();
        let s = Semigroup::build(&p, 4095);
        for n in 0..=4095 {
            let got = decompose(&p, n, 63);
            assert_eq!(got.is_some(), s.contains(n), "n = {n}");
            if let Some(mono) = got {
                assert!(mono.in_range(&p, 63));
                assert_eq!(p.pole_order(&mono), n);
            }
        }
    }

    #[test]
    fn basis_dimensions() {
        let p = p1();
        let s = Semigroup::build(&p, 63 * 65);
        for ell in 1..=63 {
            let b = RRBasis::new(&p, ell).unwrap();
            assert_eq!(b.dim() as u64, expected_dimension(&p, ell));
            assert_eq!(b.dim() as u64, s.count_up_to(ell * 65));
        }
        assert_eq!(RRBasis::new(&p, 1).unwrap().dim(), 52);
        assert_eq!(RRBasis::new(&p, 45).unwrap().dim(), 2912);
        assert_eq!(RRBasis::new(&p, 63).unwrap().dim(), 4082);
        assert!(RRBasis::new(&p, 0).is_err());
        assert!(RRBasis::new(&p, 64).is_err());
    }

    #[test]
    fn basis_is_s_form_with_distinct_shifted_orders() {
        let p = p1();
        let b = RRBasis::new(&p, 63).unwrap();
        assert_eq!(
            b.monomials()[0],
            Monomial {
                a: 0,
                b: 0,
                c: 0,
                d: 0,
                r: 0
            }
            .with_r(63)
        );
        let mut seen = std::collections::HashSet::new();
        for (mono, &n) in b.monomials().iter().zip(b.pole_orders()) {
            let shifted = mono.with_r(63 - mono.r);
            assert_eq!(p.pole_order(&shifted), n);
            assert!(n <= 4095);
            assert!(seen.insert(n));
        }
    }

    impl Monomial {
        fn with_r(mut self, r: u32) -> Self {
            self.r = r;
            self
        }
    }
}
