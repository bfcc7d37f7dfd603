use std::path::Path;

use serde::{Deserialize, Serialize};
use swan_core::{BoundaryLaurent, Character, Field, SeriesW};

use crate::parse::{highest_variable, mentions_curve_parameter, parse_expression, Model};
use crate::CliError;

fn one() -> u32 {
    1
}

/// Character description, read from JSON or assembled from flags.
///
/// ```json
/// { "p": 3, "m": 1, "d": 2, "n": 1, "coords": ["x/y^2"] }
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default, alias = "n_len")]
    pub n: Option<usize>,
    pub coords: Vec<String>,
}

/// A parsed character in whichever model its coordinates use.
#[derive(Clone, Debug)]
pub enum Built {
    Surface {
        d: usize,
        chi: Character<BoundaryLaurent>,
    },
    Curve(Character<SeriesW>),
}

impl CharacterSpec {
    pub fn from_file(path: &Path) -> Result<CharacterSpec, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn field(&self) -> Result<Field, CliError> {
        Ok(Field::new(self.p, self.m)?)
    }

    pub fn is_curve(&self) -> bool {
        self.coords.iter().any(|c| mentions_curve_parameter(c))
    }

    /// `d` if given, else `max(2, highest t-index used)`.
    pub fn dimension(&self) -> usize {
        self.d.unwrap_or_else(|| {
            self.coords
                .iter()
                .map(|c| highest_variable(c))
                .max()
                .unwrap_or(0)
                .max(2)
        })
    }

    pub fn build(&self) -> Result<Built, CliError> {
        if self.coords.is_empty() {
            return Err(CliError::Input(
                "at least one coordinate is required".into(),
            ));
        }
        if let Some(n) = self.n {
            if n != self.coords.len() {
                return Err(CliError::Input(format!(
                    "n = {n} but {} coordinate(s) given",
                    self.coords.len()
                )));
            }
        }
        let field = self.field()?;
        let model = if self.is_curve() {
            Model::Curve
        } else {
            let d = self.dimension();
            if d < 1 {
                return Err(CliError::Input("d must be at least 1".into()));
            }
            Model::Surface { d }
        };
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, src)| {
                parse_expression(src, &field, model)
                    .map_err(|source| CliError::Parse { index: i, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match model {
            Model::Curve => Built::Curve(Character::from_coords(
                self.p,
                coords
                    .iter()
                    .map(|c| c.to_series().expect("curve model"))
                    .collect(),
            )?),
            Model::Surface { d } => Built::Surface {
                d,
                chi: Character::from_coords(self.p, coords)?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s: CharacterSpec = serde_json::from_str(r#"{"p":3,"coords":["x/y^2"]}"#).unwrap();
        assert_eq!(s.m, 1);
        assert_eq!(s.dimension(), 2);
        let back: CharacterSpec =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let aliased: CharacterSpec =
            serde_json::from_str(r#"{"p":2,"n_len":1,"coords":["t3/t1"]}"#).unwrap();
        assert_eq!(aliased.n, Some(1));
        assert_eq!(aliased.dimension(), 3);
    }

    #[test]
    fn length_must_match() {
        let s = CharacterSpec {
            p: 3,
            m: 1,
            d: None,
            n: Some(2),
            coords: vec!["x".into()],
        };
        assert!(matches!(s.build(), Err(CliError::Input(_))));
    }

    #[test]
    fn curve_detection() {
        let s = CharacterSpec {
            p: 2,
            m: 1,
            d: None,
            n: None,
            coords: vec!["w^-3".into(), "0".into()],
        };
        assert!(matches!(s.build().unwrap(), Built::Curve(c) if c.len() == 2));
    }
}
