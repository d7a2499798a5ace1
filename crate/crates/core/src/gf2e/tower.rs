use std::sync::Arc;

use super::field::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// A base field F_q = GF(2^s) realized inside an extension GF(2^e), s | e,
/// through an explicit embedding.
///
/// The embedding sends the polynomial-basis generator `u` of the base field to
/// the smallest (by bit value) root of the base modulus in the extension.
#[derive(Debug, Clone)]
pub struct SubfieldTower {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    embed_table: Vec<Fe>,
    // (ext image, base preimage), sorted by image.
    project_table: Vec<(Fe, Fe)>,
    solver: ArtinSchreierSolver,
}

impl SubfieldTower {
    pub fn new(base: Arc<FieldCtx>, ext: Arc<FieldCtx>) -> Result<Self> {
        let s = base.degree();
        if ext.subfield_degree() != Some(s) || !ext.degree().is_multiple_of(s) {
            return Err(Error::BadSubfield {
                sub: s,
                degree: ext.degree(),
            });
        }
        let image_of_u = find_root(&ext, base.modulus());
        let powers: Vec<Fe> = (0..s)
            .scan(Fe::ONE, |acc, _| {
                let cur = *acc;
                *acc = ext.mul(*acc, image_of_u);
                Some(cur)
            })
            .collect();
        let embed_table: Vec<Fe> = base
            .elements()
            .map(|a| {
                (0..s)
                    .filter(|i| a.0 >> i & 1 == 1)
                    .fold(Fe::ZERO, |acc, i| acc + powers[i as usize])
            })
            .collect();
        let mut project_table: Vec<(Fe, Fe)> = base
            .elements()
            .map(|a| (embed_table[a.0 as usize], a))
            .collect();
        project_table.sort_unstable();
        let solver = ArtinSchreierSolver::new(&ext, s);
        Ok(SubfieldTower {
            base,
            ext,
            embed_table,
            project_table,
            solver,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }

    /// q = |base field|.
    pub fn q(&self) -> u64 {
        self.base.size()
    }

    #[inline]
    pub fn embed(&self, a: Fe) -> Fe {
        self.embed_table[a.0 as usize]
    }

    /// Images of all base-field elements, indexed by base value.
    pub fn embedded_base(&self) -> &[Fe] {
        &self.embed_table
    }

    /// Inverse of [`embed`](Self::embed); `None` when `c` is not in the subfield.
    pub fn project(&self, c: Fe) -> Option<Fe> {
        self.project_table
            .binary_search_by(|(img, _)| img.cmp(&c))
            .ok()
            .map(|i| self.project_table[i].1)
    }

    /// Whether c is fixed by x -> x^q.
    #[inline]
    pub fn in_base(&self, c: Fe) -> bool {
        self.ext.frobenius(c, self.base.degree()) == c
    }

    /// Sum of the q-power conjugates of `c`, as an element of the extension.
    pub fn trace_in_ext(&self, c: Fe) -> Fe {
        let s = self.base.degree();
        let n = self.ext.degree() / s;
        (0..n).fold(Fe::ZERO, |acc, i| acc + self.ext.frobenius(c, i * s))
    }

    /// Relative trace to the base field: c + c^q + c^(q^2) + ... .
    pub fn trace_to_subfield(&self, c: Fe) -> Fe {
        self.project(self.trace_in_ext(c))
            .expect("relative trace lies in the base field")
    }

    /// Some y with y^q + y = c, or `None` when no solution exists
    /// (exactly when the relative trace of c is nonzero). The full solution
    /// set is y + F_q.
    pub fn solve_artin_schreier(&self, c: Fe) -> Option<Fe> {
        let y = self.solver.solve(c)?;
        let check = self.ext.frobenius(y, self.base.degree()) + y;
        assert_eq!(check, c, "Artin-Schreier solution failed verification");
        Some(y)
    }

    pub fn solver(&self) -> &ArtinSchreierSolver {
        &self.solver
    }
}

/// Smallest element of `ext` that is a root of the GF(2) polynomial `poly`.
fn find_root(ext: &FieldCtx, poly: u64) -> Fe {
    ext.elements()
        .find(|&b| {
            let mut acc = Fe::ZERO;
            let mut pw = Fe::ONE;
            let mut p = poly;
            while p != 0 {
                if p & 1 == 1 {
                    acc += pw;
                }
                pw = ext.mul(pw, b);
                p >>= 1;
            }
            acc.is_zero()
        })
        .expect("base modulus splits in the extension")
}

/// Solves y^(2^s) + y = c over GF(2^e) through a GF(2)-matrix factored once.
#[derive(Debug, Clone)]
pub struct ArtinSchreierSolver {
    degree: u32,
    // Columns: image of each basis vector u^i under y -> y^(2^s) + y.
    columns: Vec<u32>,
    // Reduced rows: (pivot column, combination of original equations).
    pivots: Vec<(u32, u32)>,
    // Combinations of original equations that reduce to 0 = 0.
    consistency: Vec<u32>,
}

impl ArtinSchreierSolver {
    pub fn new(ext: &FieldCtx, s: u32) -> Self {
        let e = ext.degree();
        let columns: Vec<u32> = (0..e)
            .map(|i| {
                let b = Fe(1 << i);
                (ext.frobenius(b, s) + b).0
            })
            .collect();
        // Row r has bit i set iff bit r of columns[i] is set; tag tracks row operations.
        let mut rows: Vec<(u32, u32)> = (0..e)
            .map(|r| {
                let coeffs =
                    (0..e).fold(0u32, |acc, i| acc | ((columns[i as usize] >> r & 1) << i));
                (coeffs, 1u32 << r)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..e {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].0 >> col & 1 == 1) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.0 >> col & 1 == 1 {
                    row.0 ^= pivot.0;
                    row.1 ^= pivot.1;
                }
            }
            pivots.push(col);
            next += 1;
        }
        let pivots: Vec<(u32, u32)> = pivots.into_iter().zip(rows.iter().map(|r| r.1)).collect();
        let consistency = rows[next..].iter().map(|r| r.1).collect();
        ArtinSchreierSolver {
            degree: e,
            columns,
            pivots,
            consistency,
        }
    }

    /// Dimension of the kernel (= s when the map is y -> y^(2^s) + y).
    pub fn kernel_dim(&self) -> u32 {
        self.degree - self.pivots.len() as u32
    }

    /// Applies the linear map through its matrix.
    pub fn apply(&self, y: Fe) -> Fe {
        Fe((0..self.degree)
            .filter(|i| y.0 >> i & 1 == 1)
            .fold(0u32, |acc, i| acc ^ self.columns[i as usize]))
    }

    pub fn solve(&self, c: Fe) -> Option<Fe> {
        let parity = |mask: u32| (c.0 & mask).count_ones() & 1;
        if self.consistency.iter().any(|&z| parity(z) == 1) {
            return None;
        }
        let y = self
            .pivots
            .iter()
            .fold(0u32, |acc, &(col, comb)| acc | (parity(comb) << col));
        debug_assert_eq!(self.apply(Fe(y)), c);
        Some(Fe(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tower_m1() -> SubfieldTower {
        let base = Arc::new(FieldCtx::new(3, 0b1011).unwrap());
        let ext = Arc::new(FieldCtx::with_options(12, 0x1053, Some(3), 20).unwrap());
        SubfieldTower::new(base, ext).unwrap()
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let t = tower_m1();
        let (b, x) = (t.base().clone(), t.ext().clone());
        assert_eq!(t.embed(Fe::ZERO), Fe::ZERO);
        assert_eq!(t.embed(Fe::ONE), Fe::ONE);
        for a in b.elements() {
            assert!(t.in_base(t.embed(a)));
            assert_eq!(x.frobenius(t.embed(a), 3), t.embed(a));
            assert_eq!(t.project(t.embed(a)), Some(a));
            for c in b.elements() {
                assert_eq!(t.embed(a + c), t.embed(a) + t.embed(c));
                assert_eq!(t.embed(b.mul(a, c)), x.mul(t.embed(a), t.embed(c)));
            }
        }
    }

    #[test]
    fn generator_keeps_its_order() {
        let t = tower_m1();
        let g = t.base().generator();
        assert_eq!(t.base().multiplicative_order(g), Some(7));
        // Order oracle: smallest k > 0 with g^k = 1, computed by repeated multiplication.
        let img = t.embed(g);
        let mut acc = img;
        let mut k = 1;
        while acc != Fe::ONE {
            acc = t.ext().mul(acc, img);
            k += 1;
        }
        assert_eq!(k, 7);
    }

    #[test]
    fn trace_zero_count_is_q_cubed() {
        let t = tower_m1();
        let zeros = t
            .ext()
            .elements()
            .filter(|&c| t.trace_to_subfield(c).is_zero())
            .count();
        assert_eq!(zeros, 512);
        assert_eq!(t.trace_to_subfield(Fe::ZERO), Fe::ZERO);
        for a in t.embedded_base() {
            assert_eq!(t.trace_in_ext(*a), Fe::ZERO);
        }
    }

    #[test]
    fn artin_schreier_solvable_exactly_on_trace_zero() {
        let t = tower_m1();
        assert_eq!(t.solver().kernel_dim(), 3);
        assert_eq!(t.solve_artin_schreier(Fe::ZERO), Some(Fe::ZERO));
        let ext = t.ext();
        for c in ext.elements() {
            let sol = t.solve_artin_schreier(c);
            assert_eq!(sol.is_some(), t.trace_to_subfield(c).is_zero());
            if let Some(y) = sol {
                assert_eq!(t.solver().apply(y), c);
            }
        }
        // kernel of y -> y^q + y is exactly F_q
        let kernel: Vec<Fe> = ext
            .elements()
            .filter(|&y| ext.frobenius(y, 3) + y == Fe::ZERO)
            .collect();
        let mut base: Vec<Fe> = t.embedded_base().to_vec();
        base.sort();
        assert_eq!(kernel, base);
    }

    #[test]
    fn m2_tower_builds() {
        let base = Arc::new(FieldCtx::new(5, 0b100101).unwrap());
        let ext = Arc::new(FieldCtx::with_options(20, 0x100009, Some(5), 20).unwrap());
        let t = SubfieldTower::new(base, ext).unwrap();
        assert_eq!(t.solver().kernel_dim(), 5);
        let c = Fe(0xabcde);
        let tr = t.trace_to_subfield(c);
        assert_eq!(t.embed(tr), t.trace_in_ext(c));
    }

    proptest! {
        #[test]
        fn artin_schreier_round_trip(y in 0u32..4096) {
            let t = tower_m1();
            let c = t.ext().frobenius(Fe(y), 3) + Fe(y);
            let y2 = t.solve_artin_schreier(c).unwrap();
            prop_assert_eq!(t.ext().frobenius(y2, 3) + y2, c);
            prop_assert!(t.in_base(y2 + Fe(y)));
        }

        #[test]
        fn trace_annihilates_conjugate_sum(c in 0u32..4096) {
            let t = tower_m1();
            let x = t.ext();
            let c = Fe(c);
            let sum = (0..4).fold(Fe::ZERO, |acc, i| acc + x.frobenius(c, 3 * i));
            prop_assert_eq!(t.embed(t.trace_to_subfield(c)) + sum, Fe::ZERO);
        }
    }
}
