use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use super::poly2;
use crate::error::{Error, Result};

/// Largest extension degree for which log/antilog tables are built by default.
pub const DEFAULT_TABLE_BUDGET: u32 = 20;

/// An element of some GF(2^e), stored as its polynomial-basis bit vector.
///
/// The element does not carry its field; all arithmetic other than addition
/// goes through a [`FieldCtx`].
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// Addition in characteristic 2 is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    // log[0] is unused.
    log: Vec<u32>,
    // Doubled so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
}

/// Serializable description of a field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub e: u32,
    pub modulus: String,
    pub subfield_degree: Option<u32>,
}

/// Arithmetic context for GF(2^e) with a fixed irreducible modulus.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    degree: u32,
    modulus: u64,
    subfield_degree: Option<u32>,
    tables: Option<LogTables>,
}

impl FieldCtx {
    pub fn new(degree: u32, modulus: u64) -> Result<Self> {
        Self::with_options(degree, modulus, None, DEFAULT_TABLE_BUDGET)
    }

    /// Builds the context, certifying the modulus with Rabin's test. Tables are
    /// built when `degree <= table_budget`.
    pub fn with_options(
        degree: u32,
        modulus: u64,
        subfield_degree: Option<u32>,
        table_budget: u32,
    ) -> Result<Self> {
        if degree == 0 || degree > 32 {
            return Err(Error::UnsupportedDegree(degree));
        }
        if poly2::degree(modulus) != Some(degree) || !poly2::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { degree, modulus });
        }
        if let Some(sub) = subfield_degree {
            if sub == 0 || !degree.is_multiple_of(sub) {
                return Err(Error::BadSubfield { sub, degree });
            }
        }
        let mut ctx = FieldCtx {
            degree,
            modulus,
            subfield_degree,
            tables: None,
        };
        if degree <= table_budget {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.order() as usize;
        let gen = self.find_generator();
        let mut log = vec![0u32; order + 1];
        let mut exp = vec![0u32; 2 * order];
        let mut acc = 1u32;
        for i in 0..order {
            exp[i] = acc;
            exp[i + order] = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_schoolbook(Fe(acc), gen).0;
        }
        debug_assert_eq!(acc, 1);
        LogTables { log, exp }
    }

    /// Smallest element (by bit value) generating the multiplicative group.
    fn find_generator(&self) -> Fe {
        let order = self.order();
        let factors = poly2::distinct_prime_factors(order);
        (2..=order as u32)
            .map(Fe)
            .find(|&g| {
                factors
                    .iter()
                    .all(|p| self.pow_schoolbook(g, order / p) != Fe::ONE)
            })
            .unwrap_or(Fe::ONE)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subfield_degree(&self) -> Option<u32> {
        self.subfield_degree
    }

    /// Number of field elements, 2^e.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    /// Order of the multiplicative group, 2^e - 1.
    #[inline]
    pub fn order(&self) -> u64 {
        self.size() - 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            e: self.degree,
            modulus: format!("{:x}", self.modulus),
            subfield_degree: self.subfield_degree,
        }
    }

    pub fn elem(&self, value: u64) -> Result<Fe> {
        if value >> self.degree != 0 {
            return Err(Error::NotInField {
                value,
                degree: self.degree,
            });
        }
        Ok(Fe(value as u32))
    }

    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        (a.0 as u64) >> self.degree == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size()).map(|v| Fe(v as u32))
    }

    /// Checked addition; fails when either operand does not belong to this field.
    pub fn add(&self, a: Fe, b: Fe) -> Result<Fe> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotInField {
                    value: x.0 as u64,
                    degree: self.degree,
                });
            }
        }
        Ok(a + b)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Fe::ZERO
                } else {
                    Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Shift-and-add multiplication; independent of the tables.
    pub fn mul_schoolbook(&self, a: Fe, b: Fe) -> Fe {
        Fe(poly2::mulmod(a.0 as u64, b.0 as u64, self.modulus) as u32)
    }

    fn pow_schoolbook(&self, mut base: Fe, mut n: u64) -> Fe {
        let mut acc = Fe::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Fe(t.exp[((self.order() as u32 - l) % self.order() as u32) as usize])
            }
            None => self.pow_schoolbook(a, self.order() - 1),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^n; 0^0 = 1.
    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let order = self.order();
                let l = t.log[a.0 as usize] as u64;
                let e = ((l as u128 * (n % order) as u128) % order as u128) as usize;
                Fe(t.exp[e])
            }
            None => self.pow_schoolbook(a, n % self.order()),
        }
    }

    /// a^(2^k).
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        let k = k % self.degree;
        match &self.tables {
            Some(t) if !a.is_zero() => {
                let order = self.order();
                let l = t.log[a.0 as usize] as u64;
                let e = ((l << k) % order) as usize;
                Fe(t.exp[e])
            }
            _ => (0..k).fold(a, |x, _| self.mul(x, x)),
        }
    }

    /// Discrete log to the table generator; `None` for zero or when tables are absent.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u32> {
        match &self.tables {
            Some(t) if !a.is_zero() => Some(t.log[a.0 as usize]),
            _ => None,
        }
    }

    /// generator^i for `i < 2 * order`. Panics without tables.
    #[inline]
    pub fn exp(&self, i: usize) -> Fe {
        let t = self.tables.as_ref().expect("log tables present");
        Fe(t.exp[i])
    }

    /// The generator underlying the log tables.
    pub fn generator(&self) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.exp[1]),
            None => self.find_generator(),
        }
    }

    pub fn multiplicative_order(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut n = self.order();
        for p in poly2::distinct_prime_factors(self.order()) {
            while n.is_multiple_of(p) && self.pow(a, n / p) == Fe::ONE {
                n /= p;
            }
        }
        Some(n)
    }

    /// Lowercase hex, most significant nibble first, padded to ceil(e/4) digits.
    pub fn to_hex(&self, a: Fe) -> String {
        let width = self.degree.div_ceil(4) as usize;
        format!("{:0width$x}", a.0, width = width)
    }

    pub fn parse_hex(&self, s: &str) -> Result<Fe> {
        let v = u64::from_str_radix(s.trim(), 16).map_err(|_| Error::BadHex(s.to_string()))?;
        self.elem(v)
    }

    /// Cross-checks table multiplication against schoolbook multiplication
    /// on `samples` pseudo-random pairs plus the inverse tables.
    pub fn self_check(&self, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let size = self.size();
        (0..samples).all(|_| {
            let a = Fe(rng.gen_range(0..size) as u32);
            let b = Fe(rng.gen_range(0..size) as u32);
            let ok_mul = self.mul(a, b) == self.mul_schoolbook(a, b);
            let ok_inv = a.is_zero() || self.mul_schoolbook(a, self.inv(a).unwrap()) == Fe::ONE;
            ok_mul && ok_inv
        })
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.degree, self.modulus)
    }
}
