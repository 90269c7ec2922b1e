//! JSON wire forms. Rationals travel as canonical strings (`"p"` or `"p/q"`);
//! readers also accept bare JSON integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::tableau::{Params, Tableau};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Integer(i64),
}

impl RationalText {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Self::Text(s) => rational::parse(s),
            Self::Integer(v) => Ok(rational::int(*v)),
        }
    }
}

impl From<&Rational> for RationalText {
    fn from(r: &Rational) -> Self {
        Self::Text(rational::format(r))
    }
}

/// `{"N": int, "d": int, "rows": [[rational]]}`, rows listed `i = 1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub rows: Vec<Vec<RationalText>>,
}

impl From<&Tableau> for TableauJson {
    fn from(t: &Tableau) -> Self {
        Self {
            n: t.params().n(),
            d: t.params().d(),
            rows: t
                .rows()
                .map(|r| r.iter().map(RationalText::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<&TableauJson> for Tableau {
    type Error = Error;

    fn try_from(j: &TableauJson) -> Result<Self> {
        let params = Params::new(j.n, j.d)?;
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(RationalText::to_rational).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Tableau::from_rows(params, rows)
    }
}

pub fn tableau_to_json(t: &Tableau) -> String {
    serde_json::to_string(&TableauJson::from(t)).expect("tableau serializes")
}

pub fn tableau_from_json(s: &str) -> Result<Tableau> {
    let j: TableauJson = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    Tableau::try_from(&j)
}
