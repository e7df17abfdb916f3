//! The polar transform and encoding.
//!
//! `G_N = B_N G_2^{⊗n}` where `B_N` is the bit-reversal permutation. Since
//! `B_N` commutes with `G_2^{⊗n}`, the codeword `c = u G_N` is the bit-reversed
//! image of `x = u G_2^{⊗n}`. The decoders consume channel LLRs of `x`, the
//! word actually put on the channel; see [`transmitted_word`].

use crate::code::CodeSpec;
use crate::error::{Error, Result};

fn log2_exact(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros())
}

fn reverse_bits(v: usize, n: u32) -> usize {
    if n == 0 {
        0
    } else {
        v.reverse_bits() >> (usize::BITS - n)
    }
}

/// Bit-reversal permutation of `1..=len` (1-based).
pub fn bit_reversal_perm(len: usize) -> Result<Vec<usize>> {
    let n = log2_exact(len)?;
    Ok((0..len).map(|i| reverse_bits(i, n) + 1).collect())
}

/// Permutes `bits` by bit reversal of the index.
pub fn bit_reverse<T: Copy>(bits: &[T]) -> Result<Vec<T>> {
    let n = log2_exact(bits.len())?;
    Ok((0..bits.len()).map(|i| bits[reverse_bits(i, n)]).collect())
}

/// In-place `x <- x G_2^{⊗n}`; the length must be a power of two.
pub(crate) fn kron_in_place(x: &mut [u8]) {
    let len = x.len();
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for k in block..block + half {
                x[k] ^= x[k + half];
            }
        }
        half *= 2;
    }
}

/// `u G_2^{⊗n}` (no bit reversal).
pub fn kron_transform(u: &[u8]) -> Result<Vec<u8>> {
    log2_exact(u.len())?;
    let mut x = u.to_vec();
    kron_in_place(&mut x);
    Ok(x)
}

/// `u G_N = u B_N G_2^{⊗n}`.
pub fn polar_transform(u: &[u8]) -> Result<Vec<u8>> {
    bit_reverse(&kron_transform(u)?)
}

/// The word sent over the channel for input `u`: `u G_2^{⊗n}`, i.e. the
/// codeword `u G_N` in bit-reversed order.
pub fn transmitted_word(u: &[u8]) -> Result<Vec<u8>> {
    kron_transform(u)
}

/// Input vector `u^N` for a payload: CRC attach, placement into `A`, frozen evaluation.
pub fn encode_input(spec: &CodeSpec, payload: &[u8]) -> Result<Vec<u8>> {
    spec.u_from_message(&spec.message_from_payload(payload)?)
}

/// Codeword `c = u G_N` for a payload.
pub fn encode(spec: &CodeSpec, payload: &[u8]) -> Result<Vec<u8>> {
    polar_transform(&encode_input(spec, payload)?)
}
