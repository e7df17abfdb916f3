//! JSON persistence of [`CodeSpec`].

use super::{CodeSpec, Crc, Metadata};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct SpecFile {
    n: u32,
    info_set: Vec<usize>,
    frozen_rows: Vec<(usize, Vec<usize>)>,
    crc: Option<Vec<u8>>,
    metadata: Metadata,
}

impl CodeSpec {
    pub fn to_json(&self) -> String {
        let file = SpecFile {
            n: self.log_len,
            info_set: self.info_set.clone(),
            frozen_rows: self.frozen_rows.clone(),
            crc: self.crc.as_ref().map(|c| c.poly().to_vec()),
            metadata: self.metadata.clone(),
        };
        serde_json::to_string_pretty(&file).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text)?;
        let crc = file.crc.map(Crc::new).transpose()?;
        Ok(Self::new(file.n, file.info_set, file.frozen_rows, crc)?.with_metadata(file.metadata))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Hex SHA-256 of the serialized spec.
    pub fn fingerprint(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{pac_precoder, rm_info_set, sample_drm_polar};

    #[test]
    fn round_trips() {
        let spec = sample_drm_polar(5, 13, 2f64.powf(0.25), 3)
            .unwrap()
            .with_crc(Some(Crc::parse("1011").unwrap()))
            .unwrap();
        let back = CodeSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.fingerprint(), spec.fingerprint());

        let pac = pac_precoder(7, rm_info_set(7, 3).unwrap(), &[0, 1, 1, 0, 1, 1]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pac.json");
        pac.save(&path).unwrap();
        assert_eq!(CodeSpec::load(&path).unwrap(), pac);
        assert_ne!(pac.fingerprint(), spec.fingerprint());
    }

    #[test]
    fn rejects_invalid_files() {
        let text = r#"{"n":2,"info_set":[2,4],"frozen_rows":[[3,[1]]],"crc":null,"metadata":{"construction":"x"}}"#;
        assert!(CodeSpec::from_json(text).is_err());
        assert!(CodeSpec::from_json("{").is_err());
    }
}
