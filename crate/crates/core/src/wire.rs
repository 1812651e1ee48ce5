//! Syndrome file formats.
//!
//! A syndrome file is a versioned JSON header carrying the parameters and
//! the family descriptors that produced the value, plus the value itself as
//! a decimal string (hex for the Reed-Solomon parity symbols). Decoders
//! read everything they need from the header; command-line flags never
//! override it.

use serde::{Deserialize, Serialize};

use crate::channel::EditRepertoire;
use crate::coloring::Syndrome;
use crate::coverfree::{PolyFamily, RvlFamily};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Family descriptor tuple as serialized: (kind, N, r, v, l, Q, b, A, t,
/// seed), with fields absent when they do not apply to the kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_sets: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl FamilyDescriptor {
    pub fn poly(f: &PolyFamily) -> Self {
        FamilyDescriptor {
            kind: "polynomial".into(),
            n_sets: Some(f.size),
            r: Some(f.r),
            v: None,
            l: None,
            q: Some(f.q),
            b: Some(f.b),
            a_max: None,
            t: None,
            seed: None,
        }
    }

    pub fn rvl(f: &RvlFamily) -> Self {
        FamilyDescriptor {
            kind: "rvl".into(),
            n_sets: Some(f.size),
            r: Some(f.r),
            v: Some(f.v),
            l: Some(f.l),
            q: None,
            b: None,
            a_max: None,
            t: Some(f.t),
            seed: Some(f.seed),
        }
    }
}

/// Channel / code parameters as serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsHeader {
    pub n: usize,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub list_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repertoire: Option<EditRepertoire>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
}

/// A syndrome file: scheme name, parameters, families, seed, and the value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeFile {
    pub version: u32,
    pub scheme: String,
    pub params: ParamsHeader,
    pub families: Vec<FamilyDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Color value as a decimal string.
    pub value: String,
    /// Declared color-space size, decimal.
    pub range: String,
    pub bits: u32,
    /// Reed-Solomon parity symbols as hex words, when the scheme has them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi1_hex: Option<Vec<String>>,
    /// Interleaved parity bits, when the scheme has them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi1_bits: Option<String>,
}

impl SyndromeFile {
    pub fn syndrome(&self) -> Result<Syndrome> {
        let value = self
            .value
            .parse::<u64>()
            .map_err(|_| Error::InvalidInput(format!("bad value field {:?}", self.value)))?;
        let range = self
            .range
            .parse::<u64>()
            .map_err(|_| Error::InvalidInput(format!("bad range field {:?}", self.range)))?;
        if value >= range {
            return Err(Error::InvalidInput(format!("value {value} outside range {range}")));
        }
        Ok(Syndrome { value, range, bits: self.bits })
    }

    pub fn rs_parity(&self) -> Result<Vec<u64>> {
        let hex = self
            .phi1_hex
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("file carries no RS parity".into()))?;
        hex.iter()
            .map(|h| {
                u64::from_str_radix(h.trim_start_matches("0x"), 16)
                    .map_err(|_| Error::InvalidInput(format!("bad hex symbol {h:?}")))
            })
            .collect()
    }

    pub fn burst_parity(&self) -> Result<Vec<u8>> {
        let bits = self
            .phi1_bits
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("file carries no parity bits".into()))?;
        bits.chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::InvalidInput(format!("bad parity bit {other:?}"))),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable by construction")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SyndromeFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("syndrome file does not parse: {e}")))?;
        if file.version != FORMAT_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported syndrome file version {}",
                file.version
            )));
        }
        Ok(file)
    }
}

pub fn hex_words(symbols: &[u64]) -> Vec<String> {
    symbols.iter().map(|s| format!("{s:x}")).collect()
}

pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}
