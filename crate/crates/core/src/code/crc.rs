use crate::error::{Error, Result};

/// Outer CRC given by its generator polynomial, MSB first, leading coefficient included.
///
/// `[1, 0, 1, 1]` is `x^3 + x + 1`. A degree-0 polynomial (`[1]`) is the identity code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crc {
    poly: Vec<u8>,
}

impl Crc {
    pub fn new(poly: Vec<u8>) -> Result<Self> {
        if poly.first() != Some(&1) {
            return Err(Error::InvalidCode(
                "CRC polynomial must start with its leading coefficient 1".into(),
            ));
        }
        if poly.iter().any(|&b| b > 1) {
            return Err(Error::InvalidCode("CRC polynomial must be binary".into()));
        }
        Ok(Self { poly })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let poly = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("invalid CRC polynomial {text:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(poly)
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[u8] {
        &self.poly
    }

    /// Remainder of `bits(x) * x^deg` modulo the generator when `shift`, else of `bits(x)`.
    fn remainder(&self, bits: &[u8], shift: bool) -> Vec<u8> {
        let deg = self.degree();
        let mut reg: Vec<u8> = bits.to_vec();
        if shift {
            reg.extend(std::iter::repeat_n(0, deg));
        }
        if reg.len() < self.poly.len() {
            // already reduced; left-pad to deg bits
            let mut out = vec![0; deg.saturating_sub(reg.len())];
            out.extend(reg);
            return out;
        }
        for start in 0..=reg.len() - self.poly.len() {
            if reg[start] == 1 {
                for (r, &p) in reg[start..].iter_mut().zip(&self.poly) {
                    *r ^= p;
                }
            }
        }
        reg[reg.len() - deg..].to_vec()
    }
}

/// Appends the CRC remainder to `payload`.
pub fn crc_attach(payload: &[u8], crc: &Crc) -> Result<Vec<u8>> {
    if payload.iter().any(|&b| b > 1) {
        return Err(Error::Parse("payload must be binary".into()));
    }
    let mut out = payload.to_vec();
    out.extend(crc.remainder(payload, true));
    Ok(out)
}

/// Whether `message` (payload followed by its remainder) is divisible by the generator.
pub fn crc_check(message: &[u8], crc: &Crc) -> bool {
    message.len() >= crc.degree() && crc.remainder(message, false).iter().all(|&b| b == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_remainder() {
        // 11010011101100 / 1011 leaves 100
        let crc = Crc::parse("1011").unwrap();
        let payload = [1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 0];
        let msg = crc_attach(&payload, &crc).unwrap();
        assert_eq!(&msg[payload.len()..], &[1, 0, 0]);
        assert!(crc_check(&msg, &crc));
    }

    #[test]
    fn single_bit_flips_detected() {
        let crc = Crc::parse("10011").unwrap();
        for word in 0u32..256 {
            let payload: Vec<u8> = (0..8).map(|k| ((word >> k) & 1) as u8).collect();
            let msg = crc_attach(&payload, &crc).unwrap();
            for pos in 0..msg.len() {
                let mut bad = msg.clone();
                bad[pos] ^= 1;
                assert!(!crc_check(&bad, &crc), "word {word} flip {pos}");
            }
        }
    }

    #[test]
    fn degree_zero_is_identity() {
        let crc = Crc::parse("1").unwrap();
        let payload = [1, 0, 1];
        assert_eq!(crc_attach(&payload, &crc).unwrap(), payload);
        assert!(crc_check(&payload, &crc));
        assert!(crc_check(&[], &crc));
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(Crc::parse("011").is_err());
        assert!(Crc::parse("").is_err());
        assert!(Crc::parse("12").is_err());
    }

    proptest! {
        #[test]
        fn attach_then_check(payload in proptest::collection::vec(0u8..2, 0..40)) {
            let crc = Crc::parse("11000000000000101").unwrap();
            let msg = crc_attach(&payload, &crc).unwrap();
            prop_assert_eq!(msg.len(), payload.len() + 16);
            prop_assert!(crc_check(&msg, &crc));
        }
    }
}
