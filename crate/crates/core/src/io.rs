//! JSON file formats for series, polynomials and support shapes.
//!
//! Series: `{"coeffs": ["1", "-1/2", ...], "precision": 2}` with `coeffs`
//! starting at `c_1`; `precision`, when present, must equal the length.
//! Polynomials: `{"terms": [{"i": 0, "j": 2, "c": "1"}, ...]}`.
//! Shapes: `{"F": [[2, 1], [0, 2]], "G": [[2, 0]]}`.
//! Rationals are always canonical strings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{rat, BivarPoly, Mono, Rat, SupportShape, TruncatedSeries};
use crate::error::{input, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub i: u32,
    pub j: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub terms: Vec<TermFile>,
    /// Set on reconstructed polynomials: vanishing is only guaranteed if the
    /// series is algebraic within the bounds used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_assumed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeFile {
    #[serde(rename = "F")]
    pub f: Vec<[u32; 2]>,
    #[serde(rename = "G")]
    pub g: Vec<[u32; 2]>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed {what} JSON: {e}")))
}

pub fn rats_to_text(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat::to_text).collect()
}

pub fn parse_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| rat::parse(s)).collect()
}

impl SeriesFile {
    pub fn from_coeffs(c: &[Rat]) -> Self {
        SeriesFile {
            coeffs: rats_to_text(c),
            precision: Some(c.len()),
        }
    }

    /// `c_1, ..., c_T`.
    pub fn to_coeffs(&self) -> Result<Vec<Rat>> {
        if let Some(p) = self.precision {
            if p != self.coeffs.len() {
                return input(format!(
                    "series precision {p} does not match {} coefficients",
                    self.coeffs.len()
                ));
            }
        }
        parse_rats(&self.coeffs)
    }
}

impl PolyFile {
    pub fn from_poly(p: &BivarPoly) -> Self {
        PolyFile {
            terms: p
                .terms()
                .map(|(m, c)| TermFile {
                    i: m.i,
                    j: m.j,
                    c: rat::to_text(c),
                })
                .collect(),
            hypothesis_assumed: None,
        }
    }

    /// Rejects repeated monomials and explicit zero coefficients.
    pub fn to_poly(&self) -> Result<BivarPoly> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !seen.insert((t.i, t.j)) {
                return input(format!("monomial ({},{}) appears twice", t.i, t.j));
            }
            let c = rat::parse(&t.c)?;
            if c == Rat::default() {
                return input(format!("monomial ({},{}) has a zero coefficient", t.i, t.j));
            }
            terms.push((t.i, t.j, c));
        }
        Ok(BivarPoly::from_terms(terms))
    }
}

impl ShapeFile {
    pub fn from_shape(s: &SupportShape) -> Self {
        let pairs = |v: &[Mono]| v.iter().map(|m| [m.i, m.j]).collect();
        ShapeFile {
            f: pairs(s.f()),
            g: pairs(s.g()),
        }
    }

    pub fn to_shape(&self) -> Result<SupportShape> {
        let monos = |v: &[[u32; 2]]| v.iter().map(|&[i, j]| Mono::new(i, j)).collect();
        SupportShape::from_unsorted(monos(&self.f), monos(&self.g))
    }
}

pub fn parse_series(text: &str) -> Result<TruncatedSeries> {
    let file: SeriesFile = from_json(text, "series")?;
    Ok(TruncatedSeries::from_tail(&file.to_coeffs()?))
}

pub fn parse_poly(text: &str) -> Result<BivarPoly> {
    from_json::<PolyFile>(text, "polynomial")?.to_poly()
}

pub fn parse_shape(text: &str) -> Result<SupportShape> {
    from_json::<ShapeFile>(text, "shape")?.to_shape()
}

pub fn series_json(c: &[Rat]) -> String {
    to_json(&SeriesFile::from_coeffs(c))
}

pub fn poly_json(p: &BivarPoly) -> String {
    to_json(&PolyFile::from_poly(p))
}

/// Pretty JSON; field order follows the struct definitions, so output is
/// byte-identical across runs.
pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};

    #[test]
    fn series_round_trip() {
        let c = vec![int(1), frac(-1, 2), int(0)];
        let text = series_json(&c);
        assert_eq!(parse_series(&text).unwrap().tail(), c.as_slice());
    }

    #[test]
    fn series_without_precision() {
        let s = parse_series(r#"{"coeffs": ["1", "1", "0"]}"#).unwrap();
        assert_eq!(s.precision(), 3);
    }

    #[test]
    fn series_rejections() {
        for bad in [
            r#"{"coeffs": ["1", "2/4"]}"#,
            r#"{"coeffs": ["1"], "precision": 2}"#,
            r#"{"coeffs": ["1"], "extra": 0}"#,
            r#"["1", "2"]"#,
            r#"{"coeffs": [1]}"#,
        ] {
            assert!(matches!(parse_series(bad), Err(Error::Input(_))), "{bad}");
        }
    }

    #[test]
    fn poly_round_trip() {
        let p = BivarPoly::from_int_terms(&[(2, 0, -1), (2, 1, -2), (0, 2, 1), (2, 2, 1)]);
        assert_eq!(parse_poly(&poly_json(&p)).unwrap(), p);
    }

    #[test]
    fn poly_rejections() {
        let dup = r#"{"terms": [{"i": 1, "j": 0, "c": "1"}, {"i": 1, "j": 0, "c": "2"}]}"#;
        let zero = r#"{"terms": [{"i": 1, "j": 0, "c": "0"}]}"#;
        let noncanon = r#"{"terms": [{"i": 1, "j": 0, "c": "+1"}]}"#;
        for bad in [dup, zero, noncanon] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn shape_round_trip_and_validation() {
        let s = parse_shape(r#"{"F": [[2, 2], [2, 1], [0, 2]], "G": [[2, 0]]}"#).unwrap();
        assert_eq!(s.f(), &[Mono::new(2, 1), Mono::new(0, 2), Mono::new(2, 2)]);
        assert_eq!(
            parse_shape(&to_json(&ShapeFile::from_shape(&s))).unwrap(),
            s
        );
        assert!(parse_shape(r#"{"F": [[1, 0]], "G": []}"#).is_err());
        assert!(parse_shape(r#"{"F": [[1, 1]], "G": [[0, 0]]}"#).is_err());
    }
}
