//! The codes C_{m,ℓ} = C_L(E, ℓD): generator matrices, encoding, erasure
//! decoding and duals.
//!
//! Rows of the generator matrix follow the canonical basis order of
//! [`RRBasis`]; columns follow the sorted points of E.

mod dual;
mod params;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use sha2::{Digest, Sha256};

pub use dual::{DualityReport, GramMismatch};
pub use params::{dual_level, iso_orthogonal, isodual_level, truncate_ratio, CodeParams};

use crate::curve::{CurvePoint, Extension, SuzukiCurve};
use crate::error::{Error, Result};
use crate::gf2e::{Fe, FieldCtx};
use crate::linalg::{self, Matrix};
use crate::riemann_roch::{Monomial, PointCache, RRBasis};

/// Largest generator matrix (in entries) that [`CodeFamily::build`] materializes.
pub const MATRIX_BUDGET: usize = 1 << 26;

/// Everything shared by the codes of one m: the curve, the ordered support
/// of E, per-point evaluation caches and the dual scaling vector.
#[derive(Debug)]
pub struct CodeFamily {
    curve: SuzukiCurve,
    points: Vec<CurvePoint>,
    cache: PointCache,
    pole_scaling: Vec<Fe>,
    dual_scaling: Vec<Fe>,
}

/// t'(x_i) for t(x) = ∏_{α ∈ T} (x - α), T the x-values whose fibre splits;
/// equals ∏_{β ∈ T, β ≠ x_i} (x_i - β).
fn splitting_derivative(curve: &SuzukiCurve, points: &[CurvePoint]) -> Vec<Fe> {
    let f = curve.field(Extension::Quartic);
    let t = curve.splitting_x_values();
    let mut memo: HashMap<Fe, Fe> = HashMap::new();
    points
        .iter()
        .map(|p| {
            let CurvePoint::Affine { x, .. } = *p else {
                unreachable!("E is affine")
            };
            *memo.entry(x).or_insert_with(|| {
                t.iter()
                    .filter(|&&b| b != x)
                    .fold(Fe::ONE, |acc, &b| f.mul(acc, x + b))
            })
        })
        .collect()
}

impl CodeFamily {
    pub fn new(curve: SuzukiCurve) -> Result<Self> {
        let points = curve.points_of_e();
        let cache = PointCache::new(&curve, &points)?;
        let f = curve.field(Extension::Quartic);
        let p = curve.params();
        let exponent = p.q * p.q + 2 * p.g - 1;
        let order = f.order();
        let pole_scaling: Vec<Fe> = (0..points.len())
            .map(|i| f.exp(((cache.u_log(i) as u64 * exponent) % order) as usize))
            .collect();
        let derivative = splitting_derivative(&curve, &points);
        let dual_scaling = pole_scaling
            .iter()
            .zip(&derivative)
            .map(|(&a, &d)| f.div(a, d))
            .collect::<Result<_>>()?;
        Ok(CodeFamily {
            curve,
            points,
            cache,
            pole_scaling,
            dual_scaling,
        })
    }

    pub fn curve(&self) -> &SuzukiCurve {
        &self.curve
    }

    pub fn field(&self) -> &FieldCtx {
        self.curve.field(Extension::Quartic)
    }

    /// The n points of Supp(E), sorted by (x, y).
    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn cache(&self) -> &PointCache {
        &self.cache
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// h_i = (x_i^q + x_i)^(q^2 + 2g - 1) / t'(x_i). Scaling the level-ℓ'
    /// evaluation code by h gives the dual of the level-ℓ code,
    /// ℓ + ℓ' = q^2 + 2g - 2.
    ///
    /// η = dt/t has simple poles with residue 1 on E, and
    /// (η) = div(t'(x)) + (2g-2)P∞ - (t). With D = (q^2+1)P∞ + div(x^q + x)
    /// the space L(E - ℓD + (η)) is (x^q + x)^(q^2+2g-1) t'(x)^(-1) · L(ℓ'D).
    pub fn dual_scaling_vector(&self) -> &[Fe] {
        &self.dual_scaling
    }

    /// (x_i^q + x_i)^(q^2 + 2g - 1) alone, i.e. the scaling obtained when the
    /// factor div(t'(x)) is left out of (η). It does not annihilate the code
    /// in general; kept for comparison.
    pub fn pole_only_scaling_vector(&self) -> &[Fe] {
        &self.pole_scaling
    }

    /// Evaluations of one basis function at every point of E.
    pub fn evaluate(&self, mono: &Monomial) -> Vec<Fe> {
        let f = self.field();
        (0..self.len())
            .map(|i| self.cache.eval(f, mono, i))
            .collect()
    }

    /// SHA-256 over the serialized point order, hex encoded.
    pub fn point_order_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for p in &self.points {
            hasher.update(self.curve.format_point(Extension::Quartic, p).as_bytes());
            hasher.update(b"\n");
        }
        hex::encode(hasher.finalize())
    }

    /// Builds C_{m,ℓ} with its full generator matrix.
    pub fn build(self: &Arc<Self>, ell: u64) -> Result<Code> {
        let params = CodeParams::from_suzuki(self.curve.params(), ell)?;
        let basis = RRBasis::new(self.curve.params(), ell)?;
        let (k, n) = (basis.dim(), self.len());
        if k * n > MATRIX_BUDGET {
            return Err(Error::TooLarge { rows: k, cols: n });
        }
        let f = self.field();
        let mut generator = Matrix::zeros(k, n);
        let mut generator_logs = vec![u32::MAX; k * n];
        for (j, mono) in basis.monomials().iter().enumerate() {
            for i in 0..n {
                if let Some(l) = self.cache.log_eval(mono, i) {
                    generator.set(j, i, f.exp(l as usize));
                    generator_logs[j * n + i] = l as u32;
                }
            }
        }
        Ok(Code {
            family: Arc::clone(self),
            params,
            basis,
            generator,
            generator_logs,
            parity: OnceLock::new(),
        })
    }
}

/// One code C_{m,ℓ}: parameters, basis and materialized generator matrix.
#[derive(Debug)]
pub struct Code {
    family: Arc<CodeFamily>,
    params: CodeParams,
    basis: RRBasis,
    generator: Matrix,
    // Discrete logs of the generator entries, u32::MAX for zero.
    generator_logs: Vec<u32>,
    parity: OnceLock<Option<(RRBasis, Matrix)>>,
}

impl Code {
    pub fn family(&self) -> &Arc<CodeFamily> {
        &self.family
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn basis(&self) -> &RRBasis {
        &self.basis
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> &FieldCtx {
        self.family.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Index of the row of the constant function 1.
    pub fn constant_row(&self) -> usize {
        self.basis
            .monomials()
            .iter()
            .position(|m| *m == Monomial::ONE)
            .expect("constants lie in L(ℓD)")
    }

    /// msg · G; symbol j multiplies the j-th basis function.
    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<Fe>> {
        if msg.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: msg.len(),
            });
        }
        let f = self.field();
        let n = self.n();
        let mut out = vec![Fe::ZERO; n];
        for (j, &coef) in msg.iter().enumerate() {
            let Some(lc) = f.log(coef) else { continue };
            let row = &self.generator_logs[j * n..(j + 1) * n];
            for (o, &l) in out.iter_mut().zip(row) {
                if l != u32::MAX {
                    *o += f.exp((lc + l) as usize);
                }
            }
        }
        Ok(out)
    }

    pub fn random_message<R: Rng>(&self, rng: &mut R) -> Vec<Fe> {
        let size = self.field().size();
        (0..self.k())
            .map(|_| Fe(rng.gen_range(0..size) as u32))
            .collect()
    }

    /// Recovers the message from a word whose erased coordinates are `None`,
    /// by elimination on the generator matrix restricted to the surviving columns.
    ///
    /// Reports [`Error::RankDeficient`] when the survivors do not determine the
    /// message and [`Error::InconsistentWord`] when no codeword matches them.
    pub fn erasure_decode(&self, received: &[Option<Fe>]) -> Result<Vec<Fe>> {
        if received.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: received.len(),
            });
        }
        let survivors: Vec<(usize, Fe)> = received
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i, v)))
            .collect();
        let k = self.k();
        if survivors.len() < k {
            return Err(Error::RankDeficient {
                rank: survivors.len(),
                needed: k,
            });
        }
        let mut aug = Matrix::zeros(survivors.len(), k + 1);
        for (row, &(i, v)) in survivors.iter().enumerate() {
            let dst = aug.row_mut(row);
            for (j, d) in dst[..k].iter_mut().enumerate() {
                *d = self.generator.get(j, i);
            }
            dst[k] = v;
        }
        linalg::solve_augmented(self.field(), aug, k)
    }

    /// Exact rank of the generator matrix.
    pub fn rank(&self) -> usize {
        linalg::rank(self.field(), &self.generator)
    }

    /// Basis of the dual level and the h-scaled parity-check matrix
    /// H[j][i] = g_j(P_i) h_i, or `None` when ℓ < 2g - 1.
    pub fn parity_check(&self) -> Option<&(RRBasis, Matrix)> {
        self.parity
            .get_or_init(|| {
                let ell_dual = self.params.dual_level?;
                let basis = RRBasis::new(self.family.curve().params(), ell_dual).ok()?;
                let f = self.field();
                let h = self.family.dual_scaling_vector();
                let n = self.n();
                let mut m = Matrix::zeros(basis.dim(), n);
                for (j, mono) in basis.monomials().iter().enumerate() {
                    for (i, &hi) in h.iter().enumerate() {
                        let g = self.family.cache.eval(f, mono, i);
                        m.set(j, i, f.mul(g, hi));
                    }
                }
                Some((basis, m))
            })
            .as_ref()
    }

    /// Membership through the dual: v ∈ C iff H vᵀ = 0.
    pub fn contains(&self, v: &[Fe]) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        let Some((_, h)) = self.parity_check() else {
            let min = 2 * self.family.curve().params().g - 1;
            return Err(Error::DualUnavailable {
                ell: self.params.ell,
                min,
            });
        };
        let f = self.field();
        Ok(h.iter_rows().all(|row| linalg::dot(f, row, v).is_zero()))
    }

    /// Reduced generator matrix [I | A] up to column order, and the pivot columns.
    pub fn systematic_generator(&self) -> (Matrix, Vec<usize>) {
        linalg::reduced_row_echelon(self.field(), &self.generator)
    }
}

pub fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn family() -> Arc<CodeFamily> {
        static F: OnceLock<Arc<CodeFamily>> = OnceLock::new();
        F.get_or_init(|| Arc::new(CodeFamily::new(SuzukiCurve::new(1).unwrap()).unwrap()))
            .clone()
    }

    #[test]
    fn small_code_shape_and_constant_row() {
        let code = family().build(1).unwrap();
        assert_eq!((code.k(), code.n()), (52, 5824));
        let row = code.generator().row(code.constant_row());
        assert!(row.iter().all(|&x| x == Fe::ONE));
        assert_eq!(code.rank(), 52);
    }

    #[test]
    fn dual_scaling_depends_only_on_x() {
        let fam = family();
        let f = fam.field();
        let h = fam.dual_scaling_vector();
        for (i, p) in fam.points().iter().enumerate() {
            let CurvePoint::Affine { x, .. } = *p else {
                panic!()
            };
            assert!(!h[i].is_zero());
            assert_eq!(
                fam.pole_only_scaling_vector()[i],
                f.pow(f.frobenius(x, 3) + x, 91)
            );
        }
    }

    #[test]
    fn encode_is_linear_and_hits_rows() {
        let code = family().build(2).unwrap();
        let f = code.field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(code
            .encode(&vec![Fe::ZERO; code.k()])
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
        let mut unit = vec![Fe::ZERO; code.k()];
        unit[7] = Fe::ONE;
        assert_eq!(code.encode(&unit).unwrap(), code.generator().row(7));
        let a = code.random_message(&mut rng);
        let b = code.random_message(&mut rng);
        let sum: Vec<Fe> = a.iter().zip(&b).map(|(x, y)| *x + *y).collect();
        let ca = code.encode(&a).unwrap();
        let cb = code.encode(&b).unwrap();
        let cs = code.encode(&sum).unwrap();
        assert!(ca.iter().zip(&cb).zip(&cs).all(|((x, y), s)| *x + *y == *s));
        assert_eq!(
            code.encode(&a).unwrap(),
            linalg::vec_mat(f, &a, code.generator()).unwrap()
        );
        assert!(code.encode(&a[1..]).is_err());
    }

    #[test]
    fn erasure_round_trip_small_level() {
        let code = family().build(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let msg = code.random_message(&mut rng);
        let word = code.encode(&msg).unwrap();
        let full: Vec<Option<Fe>> = word.iter().copied().map(Some).collect();
        assert_eq!(code.erasure_decode(&full).unwrap(), msg);

        let mut idx: Vec<usize> = (0..code.n()).collect();
        idx.shuffle(&mut rng);
        let mut received = full.clone();
        for &i in &idx[..(code.params().dstar - 1) as usize] {
            received[i] = None;
        }
        assert_eq!(code.erasure_decode(&received).unwrap(), msg);

        // corrupt a survivor: no codeword agrees any more
        let survivor = idx[code.params().dstar as usize];
        received[survivor] = Some(received[survivor].unwrap() + Fe::ONE);
        assert_eq!(code.erasure_decode(&received), Err(Error::InconsistentWord));

        let all_but_few: Vec<Option<Fe>> =
            (0..code.n()).map(|i| (i < 10).then(|| word[i])).collect();
        assert!(matches!(
            code.erasure_decode(&all_but_few),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn membership_and_perturbation() {
        let code = family().build(63).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(code.contains(&vec![Fe::ZERO; code.n()]).unwrap());
        let word = code.encode(&code.random_message(&mut rng)).unwrap();
        assert!(code.contains(&word).unwrap());
        let mut bad = word.clone();
        bad[1234] += Fe(0x5a);
        assert!(!code.contains(&bad).unwrap());
        let low = family().build(26).unwrap();
        assert!(matches!(
            low.contains(&word),
            Err(Error::DualUnavailable { .. })
        ));
    }

    #[test]
    fn shortened_dual_annihilates_punctured_code() {
        let fam = family();
        let code = fam.build(40).unwrap();
        let f = code.field();
        let (_, h) = code.parity_check().unwrap();
        let erased = [3usize, 500, 2048, 4000];
        // A combination of the first five checks vanishing on the erased coordinates.
        let mut sys = Matrix::zeros(erased.len(), 5);
        for (r, &i) in erased.iter().enumerate() {
            for j in 0..5 {
                sys.set(r, j, h.get(j, i));
            }
        }
        let (rref, pivots) = linalg::reduced_row_echelon(f, &sys);
        let free = (0..5).find(|c| !pivots.contains(c)).unwrap();
        let mut coeffs = vec![Fe::ZERO; 5];
        coeffs[free] = Fe::ONE;
        for (r, &p) in pivots.iter().enumerate() {
            coeffs[p] = rref.get(r, free);
        }
        let check = linalg::vec_mat(
            f,
            &coeffs,
            &Matrix::from_rows((0..5).map(|j| h.row(j).to_vec()).collect()),
        )
        .unwrap();
        for &i in &erased {
            assert!(check[i].is_zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let word = code.encode(&code.random_message(&mut rng)).unwrap();
        let survivors: Vec<usize> = (0..code.n()).filter(|i| !erased.contains(i)).collect();
        let acc = survivors
            .iter()
            .fold(Fe::ZERO, |acc, &i| acc + f.mul(word[i], check[i]));
        assert!(acc.is_zero());
    }

    #[test]
    fn systematic_form_has_identity_on_pivots() {
        let code = family().build(1).unwrap();
        let (sys, pivots) = code.systematic_generator();
        assert_eq!(pivots.len(), 52);
        for (r, &p) in pivots.iter().enumerate() {
            for r2 in 0..52 {
                assert_eq!(sys.get(r2, p), if r == r2 { Fe::ONE } else { Fe::ZERO });
            }
        }
    }

    #[test]
    fn level_out_of_range() {
        assert!(matches!(
            family().build(64),
            Err(Error::LevelOutOfRange { .. })
        ));
    }
}
