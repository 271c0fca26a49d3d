//! S-box lookup tables over a field, including the bundled AES S-box.
//!
//! A table holds one canonical-integer entry per field element. The hex
//! interchange format is whitespace-separated `0x`-prefixed tokens; the JSON
//! format embeds the field description so a file is self-contained.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certify::{inv_affine_apply, LinearMap};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A complete lookup table f: GF(p^n) -> GF(p^n), indexed by canonical
/// integer.
#[derive(Clone)]
pub struct SBox {
    field: Field,
    table: Vec<u32>,
    is_permutation: bool,
}

/// Self-contained JSON form: `{ "field": {..}, "table": [ints] }`.
#[derive(Serialize, Deserialize)]
struct SBoxFile {
    field: crate::field::FieldDescription,
    table: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SBoxFormat {
    HexTable,
    Json,
}

impl SBox {
    pub fn new(field: Field, table: Vec<u64>) -> Result<SBox> {
        let q = field.order() as usize;
        if table.len() != q {
            return Err(Error::WrongLength {
                expected: q,
                got: table.len(),
            });
        }
        let mut seen = vec![false; q];
        let mut distinct = 0usize;
        let mut packed = Vec::with_capacity(q);
        for (index, &value) in table.iter().enumerate() {
            if value >= q as u64 {
                return Err(Error::OutOfRangeEntry {
                    index,
                    value,
                    order: q as u64,
                });
            }
            if !seen[value as usize] {
                seen[value as usize] = true;
                distinct += 1;
            }
            packed.push(value as u32);
        }
        Ok(SBox {
            field,
            table: packed,
            is_permutation: distinct == q,
        })
    }

    pub fn from_fn(
        field: &Field,
        mut f: impl FnMut(&FieldElement) -> FieldElement,
    ) -> Result<SBox> {
        let table: Vec<u64> = field.elements().map(|x| f(&x).value()).collect();
        SBox::new(field.clone(), table)
    }

    pub fn identity(field: &Field) -> SBox {
        SBox::from_fn(field, |x| x.clone()).expect("identity is well formed")
    }

    /// The inversion permutation x -> inv0(x).
    pub fn inversion(field: &Field) -> SBox {
        SBox::from_fn(field, |x| x.inv0()).expect("inversion is well formed")
    }

    /// Tabulates x -> A(inv0(x)) + b.
    pub fn from_inv_affine(map: &LinearMap, b: &FieldElement) -> Result<SBox> {
        let field = map.field().clone();
        let table: Vec<u64> = field
            .elements()
            .map(|x| inv_affine_apply(map, b, &x).map(|y| y.value()))
            .collect::<Result<_>>()?;
        SBox::new(field, table)
    }

    /// Tabulates x -> alpha * inv0(x) + b.
    pub fn from_scalar(alpha: &FieldElement, b: &FieldElement) -> Result<SBox> {
        let field = alpha.field().clone();
        if !field.same_field(b.field()) {
            return Err(Error::FieldMismatch);
        }
        SBox::from_fn(&field, |x| &(alpha * x.inv0()) + b)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_permutation(&self) -> bool {
        self.is_permutation
    }

    pub fn apply_value(&self, v: u64) -> u64 {
        self.table[v as usize] as u64
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !self.field.same_field(x.field()) {
            return Err(Error::FieldMismatch);
        }
        self.field.from_value(self.apply_value(x.value()))
    }

    /// Content identity of the table: SHA-256 over the canonical integers,
    /// each encoded as 8 little-endian bytes.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for &v in &self.table {
            h.update((v as u64).to_le_bytes());
        }
        let bytes = h.finalize();
        let mut out = String::with_capacity(7 + 2 * bytes.len());
        out.push_str("sha256:");
        for b in bytes {
            out.push_str(&format!("{b:02x}"));
        }
        out
    }

    pub fn load(path: &Path, format: SBoxFormat, field: Option<&Field>) -> Result<SBox> {
        let text = std::fs::read_to_string(path)?;
        match format {
            SBoxFormat::HexTable => SBox::from_hex_text(&text, field),
            SBoxFormat::Json => SBox::from_json_str(&text, field),
        }
    }

    /// Parses the hex-table format. Without an explicit field the entry
    /// count must be a power of two, and GF(2^m) with the default modulus is
    /// assumed; pure invariance scanning only depends on (p, n), not on the
    /// modulus.
    pub fn from_hex_text(text: &str, field: Option<&Field>) -> Result<SBox> {
        let mut entries = Vec::new();
        for tok in text.split_whitespace() {
            let hex = tok
                .strip_prefix("0x")
                .or_else(|| tok.strip_prefix("0X"))
                .ok_or_else(|| Error::Parse(format!("expected 0x-prefixed token, got {tok:?}")))?;
            let v = u64::from_str_radix(hex, 16)
                .map_err(|e| Error::Parse(format!("bad hex token {tok:?}: {e}")))?;
            entries.push(v);
        }
        let field = match field {
            Some(f) => {
                if entries.len() != f.order() as usize {
                    return Err(Error::WrongLength {
                        expected: f.order() as usize,
                        got: entries.len(),
                    });
                }
                f.clone()
            }
            None => {
                let len = entries.len();
                if len < 2 || !len.is_power_of_two() {
                    return Err(Error::Parse(format!(
                        "cannot infer a field from {len} entries; pass the field explicitly"
                    )));
                }
                Field::new(2, len.trailing_zeros() as usize, None)?
            }
        };
        SBox::new(field, entries)
    }

    pub fn from_json_str(text: &str, field: Option<&Field>) -> Result<SBox> {
        let file: SBoxFile = serde_json::from_str(text)?;
        let table_field = Field::from_description(&file.field)?;
        if let Some(f) = field {
            if !f.same_field(&table_field) {
                return Err(Error::Parse(
                    "field given on the command line differs from the field in the file".into(),
                ));
            }
        }
        SBox::new(table_field, file.table)
    }

    pub fn to_json_string(&self) -> String {
        let file = SBoxFile {
            field: self.field.description(),
            table: self.table.iter().map(|&v| v as u64).collect(),
        };
        serde_json::to_string_pretty(&file).expect("table serialization cannot fail")
    }
}

impl std::fmt::Debug for SBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SBox({:?}, {} entries, permutation={})",
            self.field,
            self.table.len(),
            self.is_permutation
        )
    }
}

/// The AES field GF(2^8) with modulus x^8 + x^4 + x^3 + x + 1.
pub fn aes_field() -> Field {
    Field::new(2, 8, Some(&[1, 1, 0, 1, 1, 0, 0, 0, 1])).expect("AES parameters are valid")
}

/// The AES affine layer: the circulant bit matrix A and the constant
/// b = 0x63, so that S(x) = A(inv0(x)) + b.
pub fn aes_affine_layer() -> (LinearMap, FieldElement) {
    let field = aes_field();
    let mut rows = vec![vec![0u64; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        // y_i = x_i + x_{i+4} + x_{i+5} + x_{i+6} + x_{i+7}, indices mod 8.
        for d in [0usize, 4, 5, 6, 7] {
            row[(i + d) % 8] = 1;
        }
    }
    let map = LinearMap::from_rows(&field, rows).expect("AES matrix is well formed");
    let b = field.from_value(0x63).unwrap();
    (map, b)
}

/// Builds the AES S-box from its algebraic description.
pub fn build_aes_sbox() -> SBox {
    let (map, b) = aes_affine_layer();
    SBox::from_inv_affine(&map, &b).expect("AES construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    // FIPS-197 Figure 7, row-major.
    pub(crate) const AES_SBOX_TABLE: [u8; 256] = [
        0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab,
        0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4,
        0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71,
        0xd8, 0x31, 0x15, 0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
        0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6,
        0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb,
        0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf, 0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45,
        0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
        0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44,
        0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73, 0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a,
        0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49,
        0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
        0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08, 0xba, 0x78, 0x25,
        0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e,
        0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1,
        0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
        0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb,
        0x16,
    ];

    #[test]
    fn aes_sbox_matches_published_table() {
        let sbox = build_aes_sbox();
        assert!(sbox.is_permutation());
        for (x, &expected) in AES_SBOX_TABLE.iter().enumerate() {
            assert_eq!(
                sbox.apply_value(x as u64),
                expected as u64,
                "S({x:#04x}) mismatch"
            );
        }
        // Same digest as an S-box built straight from the published bytes.
        let published = SBox::new(
            aes_field(),
            AES_SBOX_TABLE.iter().map(|&b| b as u64).collect(),
        )
        .unwrap();
        assert_eq!(sbox.digest(), published.digest());
    }

    #[test]
    fn aes_landmark_values() {
        let sbox = build_aes_sbox();
        assert_eq!(sbox.apply_value(0x00), 0x63);
        assert_eq!(sbox.apply_value(0x01), 0x7C);
        assert_eq!(sbox.apply_value(0x63), 0xFB);
        assert_eq!(sbox.apply_value(0x73), 0x8F);
        assert_eq!(sbox.apply_value(0x8F), 0x73);
    }

    #[test]
    fn table_validation() {
        let f = Field::new(2, 2, None).unwrap();
        assert!(matches!(
            SBox::new(f.clone(), vec![0, 1, 2]),
            Err(Error::WrongLength {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            SBox::new(f.clone(), vec![0, 1, 2, 4]),
            Err(Error::OutOfRangeEntry {
                index: 3,
                value: 4,
                ..
            })
        ));
        let constant = SBox::new(f.clone(), vec![1, 1, 1, 1]).unwrap();
        assert!(!constant.is_permutation());
        assert!(SBox::identity(&f).is_permutation());
    }

    #[test]
    fn hex_format_round_trip_and_inference() {
        let sbox = build_aes_sbox();
        let text: String = sbox
            .table()
            .iter()
            .map(|v| format!("0x{v:02X}"))
            .collect::<Vec<_>>()
            .join(" ");
        let loaded = SBox::from_hex_text(&text, Some(&aes_field())).unwrap();
        assert_eq!(loaded.table(), sbox.table());
        // Field inference from 256 entries.
        let inferred = SBox::from_hex_text(&text, None).unwrap();
        assert_eq!(inferred.field().order(), 256);
        assert_eq!(inferred.table(), sbox.table());

        // 255 entries: wrong length with an explicit field, uninferrable
        // without one.
        let short: String = text.rsplit_once(' ').unwrap().0.to_string();
        assert!(matches!(
            SBox::from_hex_text(&short, Some(&aes_field())),
            Err(Error::WrongLength {
                expected: 256,
                got: 255
            })
        ));
        assert!(matches!(
            SBox::from_hex_text(&short, None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            SBox::from_hex_text("63 7c", None),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn json_format_round_trip() {
        let f = Field::new(3, 2, None).unwrap();
        let sbox = SBox::inversion(&f);
        let text = sbox.to_json_string();
        let loaded = SBox::from_json_str(&text, None).unwrap();
        assert_eq!(loaded.table(), sbox.table());
        assert!(loaded.field().same_field(&f));
        let other = Field::new(2, 3, None).unwrap();
        assert!(SBox::from_json_str(&text, Some(&other)).is_err());
    }

    #[test]
    fn digest_distinguishes_tables() {
        let f = Field::new(2, 3, None).unwrap();
        assert_ne!(SBox::identity(&f).digest(), SBox::inversion(&f).digest());
        assert_eq!(SBox::inversion(&f).digest(), SBox::inversion(&f).digest());
    }
}
