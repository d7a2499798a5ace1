use crate::curve::{CurvePoint, Extension, SuzukiCurve};
use crate::error::{Error, Result};
use crate::gf2e::{Fe, FieldCtx};

use super::Monomial;

const ZERO_LOG: u32 = u32::MAX;

/// Evaluates x^a y^b z^c w^d / (x^q + x)^r at a point of E using plain field operations.
pub fn eval_monomial(curve: &SuzukiCurve, mono: &Monomial, p: &CurvePoint) -> Result<Fe> {
    let f = curve.field(Extension::Quartic);
    let v = curve.eval_xyzw(Extension::Quartic, p)?;
    let u = f.frobenius(v.x, curve.params().log_q()) + v.x;
    if u.is_zero() {
        return Err(Error::PointInSupportOfD);
    }
    let num = [(v.x, mono.a), (v.y, mono.b), (v.z, mono.c), (v.w, mono.d)]
        .into_iter()
        .fold(Fe::ONE, |acc, (base, e)| f.mul(acc, f.pow(base, e as u64)));
    Ok(f.mul(num, f.pow(f.inv(u)?, mono.r as u64)))
}

/// Discrete logs of (x, y, z, w, 1/(x^q + x)) at each point of E, so that a
/// monomial evaluates with one table lookup.
#[derive(Debug, Clone)]
pub struct PointCache {
    logs: Vec<[u32; 5]>,
    // log of x^q + x
    u_logs: Vec<u32>,
    order: u64,
}

impl PointCache {
    pub fn new(curve: &SuzukiCurve, points: &[CurvePoint]) -> Result<Self> {
        let f = curve.field(Extension::Quartic);
        if !f.has_tables() {
            return Err(Error::TablesRequired(f.degree()));
        }
        let order = f.order();
        let lg = |a: Fe| f.log(a).unwrap_or(ZERO_LOG);
        let mut logs = Vec::with_capacity(points.len());
        let mut u_logs = Vec::with_capacity(points.len());
        for p in points {
            let v = curve.eval_xyzw(Extension::Quartic, p)?;
            let u = f.frobenius(v.x, curve.params().log_q()) + v.x;
            let lu = f.log(u).ok_or(Error::PointInSupportOfD)?;
            let inv_u = ((order - lu as u64) % order) as u32;
            logs.push([lg(v.x), lg(v.y), lg(v.z), lg(v.w), inv_u]);
            u_logs.push(lu);
        }
        Ok(PointCache {
            logs,
            u_logs,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    /// log of the monomial at point `i`, or `None` when it vanishes there.
    #[inline]
    pub fn log_eval(&self, mono: &Monomial, i: usize) -> Option<u64> {
        let l = &self.logs[i];
        let exps = [mono.a, mono.b, mono.c, mono.d, mono.r];
        let mut acc = 0u64;
        for k in 0..5 {
            if exps[k] != 0 {
                if l[k] == ZERO_LOG {
                    return None;
                }
                acc += exps[k] as u64 * l[k] as u64;
            }
        }
        Some(acc % self.order)
    }

    #[inline]
    pub fn eval(&self, f: &FieldCtx, mono: &Monomial, i: usize) -> Fe {
        match self.log_eval(mono, i) {
            Some(l) => f.exp(l as usize),
            None => Fe::ZERO,
        }
    }

    /// log of x^q + x at point `i`.
    pub fn u_log(&self, i: usize) -> u32 {
        self.u_logs[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SuzukiParams;
    use crate::riemann_roch::RRBasis;

    #[test]
    fn constant_and_coordinate_monomials() {
        let curve = SuzukiCurve::new(1).unwrap();
        let f = curve.field(Extension::Quartic);
        let pts = curve.points_of_e();
        let cache = PointCache::new(&curve, &pts).unwrap();
        let x_mono = Monomial {
            a: 1,
            ..Monomial::ONE
        };
        let inv_u = Monomial {
            r: 1,
            ..Monomial::ONE
        };
        for (i, p) in pts.iter().enumerate().step_by(13) {
            let CurvePoint::Affine { x, .. } = *p else {
                panic!()
            };
            assert_eq!(eval_monomial(&curve, &Monomial::ONE, p).unwrap(), Fe::ONE);
            assert_eq!(eval_monomial(&curve, &x_mono, p).unwrap(), x);
            let v = eval_monomial(&curve, &inv_u, p).unwrap();
            let u = f.frobenius(x, 3) + x;
            assert_eq!(f.mul(v, u), Fe::ONE);
            assert_eq!(cache.eval(f, &inv_u, i), v);
        }
    }

    #[test]
    fn cache_agrees_with_direct_evaluation() {
        let curve = SuzukiCurve::new(1).unwrap();
        let f = curve.field(Extension::Quartic);
        let pts = curve.points_of_e();
        let cache = PointCache::new(&curve, &pts).unwrap();
        let basis = RRBasis::new(&SuzukiParams::new(1).unwrap(), 63).unwrap();
        for mono in basis.monomials().iter().step_by(101) {
            for i in (0..pts.len()).step_by(53) {
                assert_eq!(
                    cache.eval(f, mono, i),
                    eval_monomial(&curve, mono, &pts[i]).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_points_outside_e() {
        let curve = SuzukiCurve::new(1).unwrap();
        let one = curve.tower().embed(Fe(1));
        let p = CurvePoint::Affine { x: one, y: Fe(0) };
        assert_eq!(
            eval_monomial(&curve, &Monomial::ONE, &p),
            Err(Error::PointInSupportOfD)
        );
        assert_eq!(
            eval_monomial(&curve, &Monomial::ONE, &CurvePoint::Infinity),
            Err(Error::PointAtInfinity)
        );
    }
}
