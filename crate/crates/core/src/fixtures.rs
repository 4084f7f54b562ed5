//! Golden relations for worked examples, stored as JSON with coefficients
//! written as polynomial expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::commutation::{commute_with, Relation, Term};
use crate::error::Result;
use crate::minors::MinorSpec;
use crate::poly::LaurentPoly;
use crate::rewrite::Normalizer;
use crate::verify::verify_relation_with;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureTerm {
    pub coef: String,
    pub left: MinorSpec,
    pub right: MinorSpec,
}

/// A stored relation. Terms may repeat a product; they are collated on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub n: u32,
    pub lhs: MinorSpec,
    pub rhs: MinorSpec,
    pub lead_coef: String,
    pub terms: Vec<FixtureTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Fixture {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// The stored relation with coefficients parsed and repeated products
    /// merged.
    pub fn relation(&self) -> Result<Relation> {
        let mut terms: Vec<Term> = Vec::new();
        for t in &self.terms {
            let coef: LaurentPoly = t.coef.parse()?;
            match terms
                .iter_mut()
                .find(|u| u.left == t.left && u.right == t.right)
            {
                Some(u) => u.coef += &coef,
                None => terms.push(Term {
                    coef,
                    left: t.left.clone(),
                    right: t.right.clone(),
                }),
            }
        }
        terms.retain(|t| !t.coef.is_zero());
        Ok(Relation {
            n: self.n,
            lead_coef: self.lead_coef.parse()?,
            lead: (self.lhs.clone(), self.rhs.clone()),
            terms,
            case: String::new(),
            verified: false,
            swapped: false,
        })
    }
}

const BUILTIN: [(&str, &str); 5] = [
    (
        "disjoint-pair",
        include_str!("../fixtures/disjoint_pair.json"),
    ),
    (
        "disjoint-block",
        include_str!("../fixtures/disjoint_block.json"),
    ),
    (
        "shared-column",
        include_str!("../fixtures/shared_column.json"),
    ),
    (
        "row-and-column-towers",
        include_str!("../fixtures/row_and_column_towers.json"),
    ),
    (
        "shared-rows-and-columns",
        include_str!("../fixtures/shared_rows_and_columns.json"),
    ),
];

/// The fixtures compiled into the crate.
pub fn builtin() -> Vec<Fixture> {
    BUILTIN
        .iter()
        .map(|(name, src)| {
            Fixture::from_json(src).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
        })
        .collect()
}

/// One coefficient that differs between the stored and generated relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffDiff {
    pub product: String,
    pub expected: LaurentPoly,
    pub actual: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    /// The stored relation itself reduces to zero.
    pub golden_verified: bool,
    /// The generator's relation reduces to zero.
    pub generated_verified: bool,
    pub diffs: Vec<CoeffDiff>,
    pub error: Option<String>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.golden_verified
            && self.generated_verified
            && self.diffs.is_empty()
            && self.error.is_none()
    }
}

fn coefficient_map(rel: &Relation) -> BTreeMap<String, LaurentPoly> {
    let mut map = BTreeMap::new();
    map.insert(
        format!("lead {}{}", rel.lead.0, rel.lead.1),
        rel.lead_coef.clone(),
    );
    for t in &rel.terms {
        map.insert(format!("{}{}", t.left, t.right), t.coef.clone());
    }
    map
}

/// Runs the generator on the fixture's pair and compares coefficient by
/// coefficient.
pub fn check(fixture: &Fixture, norm: &mut Normalizer) -> FixtureOutcome {
    let mut out = FixtureOutcome {
        name: fixture.name.clone(),
        golden_verified: false,
        generated_verified: false,
        diffs: Vec::new(),
        error: None,
    };
    let golden = match fixture.relation() {
        Ok(r) => r,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.golden_verified = verify_relation_with(&golden, fixture.n, norm).is_zero();
    let generated = match commute_with(&fixture.lhs, &fixture.rhs, fixture.n, norm) {
        Ok(r) => r,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.generated_verified = generated.verified;
    let expected = coefficient_map(&golden);
    let actual = coefficient_map(&generated);
    for key in expected
        .keys()
        .chain(actual.keys())
        .collect::<std::collections::BTreeSet<_>>()
    {
        let e = expected.get(key).cloned().unwrap_or_default();
        let a = actual.get(key).cloned().unwrap_or_default();
        if e != a {
            out.diffs.push(CoeffDiff {
                product: key.clone(),
                expected: e,
                actual: a,
            });
        }
    }
    out
}
