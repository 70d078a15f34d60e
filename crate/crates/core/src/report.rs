//! Invariant reports: computed values with certification status,
//! witnesses that re-validate, and the samples behind generic-value
//! claims. Serializable mirrors keep every number an exact string.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::curve::CurveGerm;
use crate::poly::{LinearForm, Rat};
use crate::tower::{NfVec, Tower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantName {
    T1,
    Tq,
    BetaQ,
    Dq,
    Delta1,
    DeltaQ,
    DqHyper,
    Mult,
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvariantName::T1 => "T_1",
            InvariantName::Tq => "T_q",
            InvariantName::BetaQ => "beta_q",
            InvariantName::Dq => "D_q",
            InvariantName::Delta1 => "Delta_1",
            InvariantName::DeltaQ => "Delta_q",
            InvariantName::DqHyper => "D_q(M)",
            InvariantName::Mult => "mult",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    UpperBound,
    LowerBound,
    Bracket,
    TruncationLimited,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Exact => "exact",
            Status::UpperBound => "upper bound",
            Status::LowerBound => "lower bound",
            Status::Bracket => "bracket",
            Status::TruncationLimited => "truncation-limited",
        };
        write!(f, "{s}")
    }
}

/// Computed value: exact, infinite, or a two-sided bracket (upper side
/// `None` meaning unbounded).
#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Exact(Rat),
    Infinite,
    Bracket { lower: Rat, upper: Option<Rat> },
}

impl ReportValue {
    pub fn exact_int(v: i64) -> Self {
        ReportValue::Exact(Rat::from_integer(v.into()))
    }

    /// Best upper estimate: the exact value, the bracket top, or infinity.
    pub fn upper(&self) -> Option<Rat> {
        match self {
            ReportValue::Exact(v) => Some(v.clone()),
            ReportValue::Infinite => None,
            ReportValue::Bracket { upper, .. } => upper.clone(),
        }
    }

    /// Best lower estimate.
    pub fn lower(&self) -> Option<Rat> {
        match self {
            ReportValue::Exact(v) => Some(v.clone()),
            ReportValue::Infinite => None,
            ReportValue::Bracket { lower, .. } => Some(lower.clone()),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ReportValue::Infinite)
    }

    /// Render as an exact string: "4", "7/2", "inf", or "[3, 9]".
    pub fn render(&self) -> String {
        match self {
            ReportValue::Exact(v) => rat_string(v),
            ReportValue::Infinite => "inf".to_string(),
            ReportValue::Bracket { lower, upper } => match upper {
                Some(u) => format!("[{}, {}]", rat_string(lower), rat_string(u)),
                None => format!("[{}, inf)", rat_string(lower)),
            },
        }
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub fn rat_string(v: &Rat) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn rat_from_string(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => Some(Rat::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// A truncated curve in the original coordinates, with coefficients in an
/// explicit number-field tower (trivial tower = rational coefficients).
#[derive(Debug, Clone)]
pub struct AlgebraicCurve {
    pub tower: Tower,
    /// components[i][k]: coefficient of t^k in the i-th coordinate.
    pub components: Vec<Vec<NfVec>>,
    /// Exponents below this bound are exact; `None` for exact polynomials.
    pub trunc: Option<u32>,
}

impl AlgebraicCurve {
    pub fn curve_order(&self) -> Option<u32> {
        self.components
            .iter()
            .filter_map(|c| c.iter().position(|v| !self.tower.is_zero_elem(v)))
            .min()
            .map(|o| o as u32)
    }

    /// Convert to a plain rational curve when the coefficients allow it.
    pub fn to_rational(&self) -> Option<CurveGerm> {
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let mut out = Vec::with_capacity(c.len());
            for v in c {
                out.push(self.tower.to_rat(v)?);
            }
            comps.push(out);
        }
        CurveGerm::new(comps, self.trunc).ok()
    }

    pub fn describe(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let mut parts = Vec::new();
                for (k, v) in c.iter().enumerate() {
                    if self.tower.is_zero_elem(v) {
                        continue;
                    }
                    let cs = self.tower.elem_to_string(v);
                    let pow = if k == 1 { "t".into() } else { format!("t^{k}") };
                    match cs.as_str() {
                        "1" => parts.push(pow),
                        "-1" => parts.push(format!("-{pow}")),
                        _ if cs.contains(' ') => parts.push(format!("({cs})*{pow}")),
                        _ => parts.push(format!("{cs}*{pow}")),
                    }
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ").replace("+ -", "- ")
                }
            })
            .collect();
        format!("t -> ({})", comps.join(", "))
    }
}

/// Pullback order claimed for one generator: `None` means identically
/// zero (to the stated truncation).
pub type ClaimedOrders = Vec<Option<u32>>;

#[derive(Debug, Clone)]
pub enum Witness {
    /// A curve whose per-generator pullback orders certify a ratio. The
    /// targets are rendered polynomials, so the claim is self-contained
    /// and can be re-checked from the serialized form alone.
    Curve {
        curve: AlgebraicCurve,
        curve_order: u32,
        targets: Vec<String>,
        generator_orders: ClaimedOrders,
    },
    /// A tuple of linear forms realizing a sliced value.
    FormTuple {
        forms: Vec<LinearForm>,
        value: ReportValue,
    },
    /// A slicing-bound witness: variety, plane, and the branch data.
    Slice {
        variety: String,
        plane: Vec<Rat>,
        branch: String,
        bound: Rat,
    },
}

/// One sample behind a generic-value computation.
#[derive(Debug, Clone)]
pub struct SampleRecord {
    pub label: String,
    pub forms: Vec<LinearForm>,
    pub value: ReportValue,
    pub status: Status,
}

/// A computed invariant with its certification data.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub name: InvariantName,
    pub value: ReportValue,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub samples: Vec<SampleRecord>,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn relabel(mut self, name: InvariantName) -> Self {
        self.name = name;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Multiply a finite value by two (hypersurface correspondence).
    pub fn doubled(mut self) -> Self {
        let two = Rat::from_integer(2.into());
        self.value = match self.value {
            ReportValue::Exact(v) => ReportValue::Exact(v * &two),
            ReportValue::Infinite => ReportValue::Infinite,
            ReportValue::Bracket { lower, upper } => ReportValue::Bracket {
                lower: lower * &two,
                upper: upper.map(|u| u * &two),
            },
        };
        self
    }
}

// ---------------------------------------------------------------------------
// Serializable mirrors (exact strings only, schema version 1).
// ---------------------------------------------------------------------------

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonValue {
    pub kind: String, // "exact" | "inf" | "bracket"
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
}

impl From<&ReportValue> for JsonValue {
    fn from(v: &ReportValue) -> Self {
        match v {
            ReportValue::Exact(x) => JsonValue {
                kind: "exact".into(),
                value: Some(rat_string(x)),
                lower: None,
                upper: None,
            },
            ReportValue::Infinite => JsonValue {
                kind: "inf".into(),
                value: Some("inf".into()),
                lower: None,
                upper: None,
            },
            ReportValue::Bracket { lower, upper } => JsonValue {
                kind: "bracket".into(),
                value: None,
                lower: Some(rat_string(lower)),
                upper: upper.as_ref().map(rat_string),
            },
        }
    }
}

impl JsonValue {
    pub fn to_value(&self) -> Option<ReportValue> {
        match self.kind.as_str() {
            "exact" => Some(ReportValue::Exact(rat_from_string(
                self.value.as_deref()?,
            )?)),
            "inf" => Some(ReportValue::Infinite),
            "bracket" => Some(ReportValue::Bracket {
                lower: rat_from_string(self.lower.as_deref()?)?,
                upper: match &self.upper {
                    Some(u) => Some(rat_from_string(u)?),
                    None => None,
                },
            }),
            _ => None,
        }
    }
}

/// Tower spec: levels, each a minimal polynomial given by coefficient
/// coordinate vectors over the tower below.
pub type JsonTower = Vec<Vec<Vec<String>>>;

pub fn tower_to_json(tower: &Tower) -> JsonTower {
    (0..tower.height())
        .map(|lvl| {
            tower
                .minimal_polynomial(lvl)
                .iter()
                .map(|c| c.iter().map(rat_string).collect())
                .collect()
        })
        .collect()
}

pub fn tower_from_json(spec: &JsonTower) -> Option<Tower> {
    let mut tower = Tower::rationals();
    for level in spec {
        let minpoly: Vec<NfVec> = level
            .iter()
            .map(|c| c.iter().map(|s| rat_from_string(s)).collect::<Option<NfVec>>())
            .collect::<Option<_>>()?;
        tower = tower.extend_unchecked(minpoly).ok()?;
    }
    Some(tower)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonCurve {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub tower: JsonTower,
    /// components[i][k]: coordinates of the t^k coefficient.
    pub components: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    pub display: String,
}

pub fn curve_to_json(c: &AlgebraicCurve) -> JsonCurve {
    JsonCurve {
        tower: tower_to_json(&c.tower),
        components: c
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|v| v.iter().map(rat_string).collect())
                    .collect()
            })
            .collect(),
        trunc: c.trunc,
        display: c.describe(),
    }
}

pub fn curve_from_json(j: &JsonCurve) -> Option<AlgebraicCurve> {
    let tower = tower_from_json(&j.tower)?;
    let dim = tower.dim();
    let mut components = Vec::with_capacity(j.components.len());
    for comp in &j.components {
        let mut out = Vec::with_capacity(comp.len());
        for v in comp {
            if v.len() != dim {
                return None;
            }
            out.push(v.iter().map(|s| rat_from_string(s)).collect::<Option<NfVec>>()?);
        }
        components.push(out);
    }
    Some(AlgebraicCurve {
        tower,
        components,
        trunc: j.trunc,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonWitness {
    Curve {
        curve: JsonCurve,
        curve_order: u32,
        targets: Vec<String>,
        /// Per-generator orders, null meaning identically zero.
        generator_orders: Vec<Option<u32>>,
    },
    FormTuple {
        forms: Vec<Vec<String>>,
        value: JsonValue,
    },
    Slice {
        variety: String,
        plane: Vec<String>,
        branch: String,
        bound: String,
    },
}

pub fn witness_to_json(w: &Witness) -> JsonWitness {
    match w {
        Witness::Curve {
            curve,
            curve_order,
            targets,
            generator_orders,
        } => JsonWitness::Curve {
            curve: curve_to_json(curve),
            curve_order: *curve_order,
            targets: targets.clone(),
            generator_orders: generator_orders.clone(),
        },
        Witness::FormTuple { forms, value } => JsonWitness::FormTuple {
            forms: forms
                .iter()
                .map(|f| f.coeffs().iter().map(rat_string).collect())
                .collect(),
            value: value.into(),
        },
        Witness::Slice {
            variety,
            plane,
            branch,
            bound,
        } => JsonWitness::Slice {
            variety: variety.clone(),
            plane: plane.iter().map(rat_string).collect(),
            branch: branch.clone(),
            bound: rat_string(bound),
        },
    }
}

pub fn witness_from_json(j: &JsonWitness) -> Option<Witness> {
    Some(match j {
        JsonWitness::Curve {
            curve,
            curve_order,
            targets,
            generator_orders,
        } => Witness::Curve {
            curve: curve_from_json(curve)?,
            curve_order: *curve_order,
            targets: targets.clone(),
            generator_orders: generator_orders.clone(),
        },
        JsonWitness::FormTuple { forms, value } => Witness::FormTuple {
            forms: forms
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|s| rat_from_string(s))
                        .collect::<Option<Vec<Rat>>>()
                        .map(LinearForm::new)
                })
                .collect::<Option<_>>()?,
            value: value.to_value()?,
        },
        JsonWitness::Slice {
            variety,
            plane,
            branch,
            bound,
        } => Witness::Slice {
            variety: variety.clone(),
            plane: plane
                .iter()
                .map(|s| rat_from_string(s))
                .collect::<Option<_>>()?,
            branch: branch.clone(),
            bound: rat_from_string(bound)?,
        },
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonSample {
    pub label: String,
    pub forms: Vec<Vec<String>>,
    pub value: JsonValue,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonReport {
    pub schema_version: u32,
    pub invariant: InvariantName,
    pub value: JsonValue,
    pub rendered: String,
    pub status: Status,
    pub witnesses: Vec<JsonWitness>,
    pub samples: Vec<JsonSample>,
    pub seed: u64,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl JsonReport {
    pub fn from_report(r: &InvariantReport) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            invariant: r.name,
            value: (&r.value).into(),
            rendered: r.value.render(),
            status: r.status,
            witnesses: r.witnesses.iter().map(witness_to_json).collect(),
            samples: r
                .samples
                .iter()
                .map(|s| JsonSample {
                    label: s.label.clone(),
                    forms: s
                        .forms
                        .iter()
                        .map(|f| f.coeffs().iter().map(rat_string).collect())
                        .collect(),
                    value: (&s.value).into(),
                    status: s.status,
                })
                .collect(),
            seed: r.seed,
            notes: r.notes.clone(),
            timing_ms: None,
        }
    }

    /// Reconstruct the rich report (samples keep only their values).
    pub fn to_report(&self) -> Option<InvariantReport> {
        Some(InvariantReport {
            name: self.invariant,
            value: self.value.to_value()?,
            status: self.status,
            witnesses: self
                .witnesses
                .iter()
                .map(witness_from_json)
                .collect::<Option<_>>()?,
            samples: self
                .samples
                .iter()
                .map(|s| {
                    Some(SampleRecord {
                        label: s.label.clone(),
                        forms: s
                            .forms
                            .iter()
                            .map(|f| {
                                f.iter()
                                    .map(|x| rat_from_string(x))
                                    .collect::<Option<Vec<Rat>>>()
                                    .map(LinearForm::new)
                            })
                            .collect::<Option<_>>()?,
                        value: s.value.to_value()?,
                        status: s.status,
                    })
                })
                .collect::<Option<_>>()?,
            seed: self.seed,
            notes: self.notes.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn values_render_exactly() {
        assert_eq!(ReportValue::exact_int(4).render(), "4");
        assert_eq!(ReportValue::Exact(ratio(7, 2)).render(), "7/2");
        assert_eq!(ReportValue::Infinite.render(), "inf");
        assert_eq!(
            ReportValue::Bracket {
                lower: rat(3),
                upper: Some(rat(9))
            }
            .render(),
            "[3, 9]"
        );
        assert_eq!(
            ReportValue::Bracket {
                lower: rat(3),
                upper: None
            }
            .render(),
            "[3, inf)"
        );
    }

    #[test]
    fn rat_strings_round_trip() {
        for s in ["4", "-7/2", "0", "10000"] {
            let v = rat_from_string(s).unwrap();
            assert_eq!(rat_string(&v), s);
        }
    }

    #[test]
    fn json_value_round_trip() {
        for v in [
            ReportValue::exact_int(3),
            ReportValue::Infinite,
            ReportValue::Bracket {
                lower: rat(1),
                upper: None,
            },
            ReportValue::Bracket {
                lower: ratio(3, 2),
                upper: Some(rat(9)),
            },
        ] {
            let j: JsonValue = (&v).into();
            assert_eq!(j.to_value().unwrap(), v);
        }
    }

    #[test]
    fn curve_json_round_trip_with_tower() {
        use crate::tower::NfPoly;
        let q = Tower::rationals();
        let m: NfPoly = vec![q.from_rat(&rat(-2)), q.zero(), q.one()];
        let k = q.extend_checked(m).unwrap();
        let curve = AlgebraicCurve {
            tower: k.clone(),
            components: vec![
                vec![k.zero(), k.one()],
                vec![k.zero(), k.zero(), k.generator(0)],
            ],
            trunc: Some(16),
        };
        let j = curve_to_json(&curve);
        let back = curve_from_json(&j).unwrap();
        assert_eq!(back.tower, k);
        assert_eq!(back.components, curve.components);
        assert_eq!(back.trunc, Some(16));
    }
}
