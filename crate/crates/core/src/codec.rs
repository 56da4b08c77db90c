//! On-disk JSON formats for matrices, pairs, and vectors. Every file carries
//! a field tag ("Q" or "Qi"); entries are scalar literals like "2/3" or
//! "1/2-3/4*i". Entries with an imaginary part are rejected under "Q".

use crate::field::{parse_scalar, GRat, ScalarParseError};
use crate::matrix::Mat;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ScalarField {
    Q,
    Qi,
}

impl ScalarField {
    pub fn admits(&self, z: &GRat) -> bool {
        match self {
            ScalarField::Q => z.is_rational(),
            ScalarField::Qi => true,
        }
    }

    /// The smallest tag that can represent every entry.
    pub fn covering(entries: impl Iterator<Item = GRat>) -> ScalarField {
        for z in entries {
            if !z.is_rational() {
                return ScalarField::Qi;
            }
        }
        ScalarField::Q
    }
}

impl std::fmt::Display for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarField::Q => write!(f, "Q"),
            ScalarField::Qi => write!(f, "Qi"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CodecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error("entry {entry:?} has an imaginary part but the field tag is Q")]
    FieldMismatch { entry: String },
    #[error("rows have unequal lengths")]
    Ragged,
    #[error("empty matrix")]
    Empty,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixJson {
    pub field: ScalarField,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PairJson {
    pub field: ScalarField,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct VectorJson {
    pub field: ScalarField,
    pub entries: Vec<String>,
}

fn parse_rows(field: ScalarField, rows: &[Vec<String>]) -> Result<Mat<GRat>, CodecError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 {
        return Err(CodecError::Empty);
    }
    let mut data = Vec::with_capacity(nrows * ncols);
    for row in rows {
        if row.len() != ncols {
            return Err(CodecError::Ragged);
        }
        for entry in row {
            let z = parse_scalar(entry)?;
            if !field.admits(&z) {
                return Err(CodecError::FieldMismatch {
                    entry: entry.clone(),
                });
            }
            data.push(z);
        }
    }
    Ok(Mat::new(nrows, ncols, data))
}

fn emit_rows(m: &Mat<GRat>) -> Vec<Vec<String>> {
    (0..m.nrows)
        .map(|i| (0..m.ncols).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

impl MatrixJson {
    pub fn parse(&self) -> Result<Mat<GRat>, CodecError> {
        parse_rows(self.field, &self.rows)
    }

    pub fn emit(field: ScalarField, m: &Mat<GRat>) -> Self {
        MatrixJson {
            field,
            rows: emit_rows(m),
        }
    }

    pub fn from_str(text: &str) -> Result<Self, CodecError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl PairJson {
    pub fn parse(&self) -> Result<(Mat<GRat>, Mat<GRat>), CodecError> {
        Ok((
            parse_rows(self.field, &self.a)?,
            parse_rows(self.field, &self.b)?,
        ))
    }

    pub fn emit(field: ScalarField, a: &Mat<GRat>, b: &Mat<GRat>) -> Self {
        PairJson {
            field,
            a: emit_rows(a),
            b: emit_rows(b),
        }
    }

    pub fn from_str(text: &str) -> Result<Self, CodecError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl VectorJson {
    pub fn parse(&self) -> Result<Vec<GRat>, CodecError> {
        let mut out = Vec::with_capacity(self.entries.len());
        for entry in &self.entries {
            let z = parse_scalar(entry)?;
            if !self.field.admits(&z) {
                return Err(CodecError::FieldMismatch {
                    entry: entry.clone(),
                });
            }
            out.push(z);
        }
        Ok(out)
    }

    pub fn emit(field: ScalarField, v: &[GRat]) -> Self {
        VectorJson {
            field,
            entries: v.iter().map(|z| z.to_string()).collect(),
        }
    }

    pub fn from_str(text: &str) -> Result<Self, CodecError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GRat;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"field":"Qi","rows":[["0","1/2"],["-3/4*i","1-2*i"]]}"#;
        let mj = MatrixJson::from_str(text).unwrap();
        let m = mj.parse().unwrap();
        assert_eq!(m[(0, 1)], GRat::frac(1, 2));
        assert_eq!(m[(1, 0)], GRat::new(crate::field::rat(0, 1), crate::field::rat(-3, 4)));
        let back = MatrixJson::emit(ScalarField::Qi, &m);
        let m2 = back.parse().unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn rational_tag_rejects_imaginary_entries() {
        let text = r#"{"field":"Q","rows":[["1","i"]]}"#;
        let mj = MatrixJson::from_str(text).unwrap();
        assert!(matches!(
            mj.parse(),
            Err(CodecError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn pair_and_vector_formats() {
        let text = r#"{"field":"Q","a":[["0","1"],["0","0"]],"b":[["1","0"],["0","1"]]}"#;
        let pj = PairJson::from_str(text).unwrap();
        let (a, b) = pj.parse().unwrap();
        assert_eq!(a.nrows, 2);
        assert!(b[(0, 0)] == GRat::int(1));

        let vt = r#"{"field":"Qi","entries":["1","-i","2/3+1/5*i"]}"#;
        let vj = VectorJson::from_str(vt).unwrap();
        let v = vj.parse().unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], -GRat::i());
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let text = r#"{"field":"Q","rows":[["1","2"],["3"]]}"#;
        let mj = MatrixJson::from_str(text).unwrap();
        assert!(matches!(mj.parse(), Err(CodecError::Ragged)));
    }
}
