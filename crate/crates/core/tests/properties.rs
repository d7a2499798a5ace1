use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use suzuki_core::automorphism::AffineAut;
use suzuki_core::code::{Code, CodeFamily};
use suzuki_core::curve::{Extension, SuzukiCurve, SuzukiParams};
use suzuki_core::gf2e::Fe;
use suzuki_core::riemann_roch::{decompose, Semigroup};

fn family() -> &'static Arc<CodeFamily> {
    static F: OnceLock<Arc<CodeFamily>> = OnceLock::new();
    F.get_or_init(|| Arc::new(CodeFamily::new(SuzukiCurve::new(1).unwrap()).unwrap()))
}

fn code(ell: u64) -> &'static Code {
    static C1: OnceLock<Code> = OnceLock::new();
    static C27: OnceLock<Code> = OnceLock::new();
    let cell = match ell {
        1 => &C1,
        27 => &C27,
        _ => unreachable!(),
    };
    cell.get_or_init(|| family().build(ell).unwrap())
}

fn message(k: usize) -> impl Strategy<Value = Vec<Fe>> {
    prop::collection::vec((0u32..4096).prop_map(Fe), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn encoding_is_linear(a in message(52), b in message(52), s in 1u32..4096) {
        let c = code(1);
        let f = c.field();
        let combo: Vec<Fe> = a.iter().zip(&b).map(|(&x, &y)| f.mul(Fe(s), x) + y).collect();
        let lhs = c.encode(&combo).unwrap();
        let (ea, eb) = (c.encode(&a).unwrap(), c.encode(&b).unwrap());
        let rhs: Vec<Fe> = ea.iter().zip(&eb).map(|(&x, &y)| f.mul(Fe(s), x) + y).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn erasures_below_designed_distance_are_recovered(
        msg in message(52),
        erased in prop::collection::btree_set(0usize..5824, 0..=5758usize),
    ) {
        let c = code(1);
        let word = c.encode(&msg).unwrap();
        let received: Vec<Option<Fe>> =
            word.iter().enumerate().map(|(i, &v)| (!erased.contains(&i)).then_some(v)).collect();
        prop_assert_eq!(c.erasure_decode(&received).unwrap(), msg);
    }

    #[test]
    fn codewords_pass_the_parity_check_and_single_changes_do_not(
        msg in message(1742), pos in 0usize..5824, delta in 1u32..4096,
    ) {
        let c = code(27);
        let mut w = c.encode(&msg).unwrap();
        prop_assert!(c.contains(&w).unwrap());
        w[pos] += Fe(delta);
        prop_assert!(!c.contains(&w).unwrap());
    }

    #[test]
    fn automorphisms_compose_pointwise(
        a1 in 0u32..8, b1 in 0u32..8, c1 in 1u32..8,
        a2 in 0u32..8, b2 in 0u32..8, c2 in 1u32..8,
        idx in 0usize..5824,
    ) {
        let fam = family();
        let curve = fam.curve();
        let s = AffineAut::new(curve, Fe(a1), Fe(b1), Fe(c1)).unwrap();
        let t = AffineAut::new(curve, Fe(a2), Fe(b2), Fe(c2)).unwrap();
        let p = fam.points()[idx];
        let q = Extension::Quartic;
        let direct = s.apply(curve, q, &t.apply(curve, q, &p));
        prop_assert_eq!(s.compose(curve, &t).apply(curve, q, &p), direct);
        let suzuki_core::curve::CurvePoint::Affine { x, y } = direct else { panic!("affine") };
        prop_assert!(curve.on_curve(q, x, y));
        prop_assert!(!curve.is_base_rational(&direct));
    }

    #[test]
    fn decompose_resubstitutes(m in 1u32..=3, frac in 0.0f64..1.0) {
        let p = SuzukiParams::new(m).unwrap();
        let ell = p.max_level();
        let top = ell * p.deg_d();
        let n = (frac * top as f64) as u64;
        let sg = Semigroup::build(&p, n.max(2 * p.g));
        match decompose(&p, n, ell) {
            Some(mono) => {
                prop_assert!(sg.contains(n));
                prop_assert!(mono.in_range(&p, ell));
                prop_assert_eq!(p.pole_order(&mono), n);
            }
            None => prop_assert!(!sg.contains(n)),
        }
    }
}

#[test]
fn scaled_dual_annihilates_every_basis_pair_at_the_isodual_level() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    let r = family().verify_duality(45, 0, true, &mut rng).unwrap();
    assert_eq!((r.k, r.k_dual), (2912, 2912));
    assert!(r.passed(), "{r:?}");
}
