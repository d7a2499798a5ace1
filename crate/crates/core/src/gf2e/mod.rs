//! Binary extension fields GF(2^e), the F_q ⊂ F_{q^4} tower and
//! Artin–Schreier solving.
//!
//! Conventional moduli (bit i = coefficient of u^i):
//!
//! | field     | modulus                  | bitmask    |
//! |-----------|--------------------------|------------|
//! | GF(2^3)   | u^3 + u + 1              | `0xb`      |
//! | GF(2^5)   | u^5 + u^2 + 1            | `0x25`     |
//! | GF(2^12)  | u^12 + u^6 + u^4 + u + 1 | `0x1053`   |
//! | GF(2^20)  | u^20 + u^3 + 1           | `0x100009` |

mod field;
pub(crate) mod poly2;
mod tower;

pub use field::{Fe, FieldCtx, FieldDescriptor, DEFAULT_TABLE_BUDGET};
pub use tower::{ArtinSchreierSolver, SubfieldTower};

/// Conventional modulus for GF(2^degree), when one is fixed for this crate.
pub fn conventional_modulus(degree: u32) -> Option<u64> {
    match degree {
        3 => Some(0xb),
        5 => Some(0x25),
        12 => Some(0x1053),
        20 => Some(0x10_0009),
        _ => None,
    }
}
