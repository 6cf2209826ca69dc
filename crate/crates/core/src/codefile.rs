//! JSON code files: persistence for linear codes and constructed codes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::construction::{from_parts, ConstructedCode, Family};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::metric::BlockStructure;

/// One block of the structure: length and scaling factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub n: u32,
    pub lambda: u64,
}

/// The optional construction object embedded in a code file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionEntry {
    pub family: String,
    pub h1: Vec<Vec<u32>>,
    pub h2: Vec<Vec<u32>>,
    pub h3: Vec<Vec<u32>>,
}

/// On-disk form of a code: q, blocks, and exactly one defining matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub q: u32,
    pub blocks: Vec<BlockEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_check: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionEntry>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

impl CodeFile {
    /// Captures a linear code in generator form.
    pub fn from_code(code: &LinearCode) -> CodeFile {
        let blocks = code
            .bs()
            .lengths()
            .iter()
            .zip(code.bs().scalings())
            .map(|(&n, &lambda)| BlockEntry { n, lambda })
            .collect();
        CodeFile {
            q: code.q(),
            blocks,
            generator: Some(matrix_rows(code.generator())),
            parity_check: None,
            construction: None,
        }
    }

    /// Captures a constructed code in parity-check form with its blocks.
    pub fn from_constructed(cc: &ConstructedCode) -> CodeFile {
        let mut file = CodeFile::from_code(cc.code());
        file.generator = None;
        file.parity_check = Some(matrix_rows(cc.code().parity_check()));
        file.construction = Some(ConstructionEntry {
            family: cc.family().to_string(),
            h1: matrix_rows(cc.h1()),
            h2: matrix_rows(cc.h2()),
            h3: matrix_rows(cc.h3()),
        });
        file
    }

    /// Block structure described by the file.
    pub fn block_structure(&self) -> Result<BlockStructure> {
        let pairs: Vec<(u32, u64)> = self.blocks.iter().map(|b| (b.n, b.lambda)).collect();
        BlockStructure::new(&pairs)
    }

    /// Builds the linear code from whichever matrix the file carries.
    pub fn to_code(&self) -> Result<LinearCode> {
        let field = Field::new(self.q)?;
        let bs = self.block_structure()?;
        match (&self.generator, &self.parity_check) {
            (Some(g), None) => LinearCode::from_generator(field, bs, &Matrix::from_rows(g.clone())?),
            (None, Some(h)) => {
                LinearCode::from_parity_check(field, bs, &Matrix::from_rows(h.clone())?)
            }
            _ => Err(Error::InvalidParameter(
                "exactly one of generator and parity_check must be present".into(),
            )),
        }
    }

    /// Rebuilds the constructed code, if the file embeds one, and checks it
    /// describes the same code as the stored matrix.
    pub fn to_constructed(&self) -> Result<Option<ConstructedCode>> {
        let Some(entry) = &self.construction else {
            return Ok(None);
        };
        let family: Family = entry.family.parse()?;
        let field = Field::new(self.q)?;
        let cc = from_parts(
            field,
            family,
            Matrix::from_rows(entry.h1.clone())?,
            Matrix::from_rows(entry.h2.clone())?,
            Matrix::from_rows(entry.h3.clone())?,
        )?;
        let stored = self.to_code()?;
        if stored.generator() != cc.code().generator() || stored.bs() != cc.code().bs() {
            return Err(Error::InvalidParameter(
                "construction blocks do not describe the stored code".into(),
            ));
        }
        Ok(Some(cc))
    }

    /// Parses a code file from JSON text.
    pub fn from_json(text: &str) -> Result<CodeFile> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("malformed code file: {e}")))
    }

    /// Serializes to pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files always serialize")
    }

    /// Reads a code file from disk.
    pub fn load(path: &Path) -> Result<CodeFile> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
        })?;
        CodeFile::from_json(&text)
    }

    /// Writes the file atomically (temp file, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))
            .map_err(|e| Error::InvalidParameter(format!("cannot create temp file: {e}")))?;
        std::fs::write(tmp.path(), self.to_json() + "\n").map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?;
        tmp.persist(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Budgets;
    use crate::construction::{construction1, construction1_decode};

    fn example_code() -> LinearCode {
        let g = Matrix::from_rows(vec![
            vec![1, 0, 0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 1, 1, 0],
        ])
        .unwrap();
        let bs = BlockStructure::new(&[(4, 1), (4, 2)]).unwrap();
        LinearCode::from_generator(Field::new(2).unwrap(), bs, &g).unwrap()
    }

    #[test]
    fn generator_form_round_trips() {
        let code = example_code();
        let file = CodeFile::from_code(&code);
        let parsed = CodeFile::from_json(&file.to_json()).unwrap();
        let back = parsed.to_code().unwrap();
        assert_eq!(back.generator(), code.generator());
        assert_eq!(back.bs(), code.bs());
        assert_eq!(back.q(), code.q());
        assert!(parsed.to_constructed().unwrap().is_none());
    }

    #[test]
    fn constructed_form_round_trips_with_working_decoder() {
        let cc = construction1(Field::new(2).unwrap(), 7, 7, Family::Binary).unwrap();
        let file = CodeFile::from_constructed(&cc);
        let parsed = CodeFile::from_json(&file.to_json()).unwrap();
        let code = parsed.to_code().unwrap();
        assert_eq!((code.n(), code.k()), (14, 8));
        let back = parsed.to_constructed().unwrap().unwrap();
        let c = back.code().encode(&[1, 0, 1, 1, 0, 0, 1, 0]).unwrap();
        let mut r = c.clone();
        r[3] ^= 1;
        r[6] ^= 1;
        assert_eq!(construction1_decode(&back, &r).unwrap(), c);
    }

    #[test]
    fn exactly_one_matrix_is_required() {
        let code = example_code();
        let mut both = CodeFile::from_code(&code);
        both.parity_check = Some(matrix_rows(code.parity_check()));
        assert!(matches!(both.to_code(), Err(Error::InvalidParameter(_))));
        let mut neither = CodeFile::from_code(&code);
        neither.generator = None;
        assert!(matches!(neither.to_code(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(CodeFile::from_json("{\"q\": 2,").is_err());
        assert!(CodeFile::from_json("{\"q\": 2, \"blocks\": [], \"extra\": 1}").is_err());
    }

    #[test]
    fn unreduced_entries_are_rejected() {
        let mut file = CodeFile::from_code(&example_code());
        file.generator.as_mut().unwrap()[0][0] = 7;
        assert!(file.to_code().is_err());
    }

    #[test]
    fn tampered_construction_blocks_are_rejected() {
        let cc = construction1(Field::new(7).unwrap(), 7, 7, Family::Mds).unwrap();
        let mut file = CodeFile::from_constructed(&cc);
        let entry = file.construction.as_mut().unwrap();
        entry.h1[0][0] = (entry.h1[0][0] + 1) % 7;
        let res = file.to_constructed();
        assert!(res.is_err(), "tampered blocks accepted: {res:?}");
    }

    #[test]
    fn save_and_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.json");
        let file = CodeFile::from_code(&example_code());
        file.save(&path).unwrap();
        assert_eq!(CodeFile::load(&path).unwrap(), file);
        let d = CodeFile::load(&path)
            .unwrap()
            .to_code()
            .unwrap()
            .min_wh_distance(crate::code::MinDistanceMethod::Codebook, &Budgets::default())
            .unwrap()
            .d;
        assert_eq!(d, 5);
    }
}
