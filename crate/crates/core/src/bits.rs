//! Bitstring helpers. A register value is written most significant bit
//! first, so `"01"` is `k0 = 0, k1 = 1` and the integer 1.

use crate::error::{Error, Result};

pub fn format_bits(value: u64, len: usize) -> String {
    (0..len)
        .map(|i| if value >> (len - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bits(text: &str, len: usize) -> Result<u64> {
    let err = |reason| Error::Bitstring {
        text: text.to_string(),
        reason,
    };
    if text.len() != len {
        return Err(err("length does not match the register size"));
    }
    if len > 63 {
        return Err(err("too long"));
    }
    text.chars().try_fold(0u64, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(err("only 0 and 1 are allowed")),
    })
}

/// Bit `i` of an `len`-bit register value, counting from the left.
#[inline]
pub fn bit_at(value: u64, i: usize, len: usize) -> u8 {
    (value >> (len - 1 - i) & 1) as u8
}
