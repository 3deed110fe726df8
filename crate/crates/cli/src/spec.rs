//! The TOML problem file: a space, a ground metric, named objects and command parameters.
//!
//! ```toml
//! [space]
//! labels = ["R", "G", "B"]
//!
//! [metric]
//! kind = "discrete"
//!
//! [objects.u1]
//! multiset = { G = 8, B = 2 }
//!
//! [objects.w]
//! dist = { R = "1/2", G = "1/2" }
//!
//! [params]
//! left = "u1"
//! draw = "hypergeometric"
//! k = 2
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use urnkit::draws::DrawKind;
use urnkit::metric::GroundMetric;
use urnkit::rational::{parse, to_fraction_string};
use urnkit::{Dist, Elem, Multiset, Rational, Space};

use crate::error::SpecError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub space: SpaceSpec,
    #[serde(default)]
    pub metric: MetricSpec,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub labels: Vec<String>,
    /// Rational coordinates, one per label, for the numeric metric.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    #[default]
    Discrete,
    Numeric,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    #[serde(default)]
    pub kind: MetricKind,
    /// Row-major distances in label order, for `kind = "matrix"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

/// Exactly one of `multiset` or `dist`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiset: Option<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DrawName {
    Multinomial,
    Hypergeometric,
    Polya,
}

impl From<DrawName> for DrawKind {
    fn from(d: DrawName) -> Self {
        match d {
            DrawName::Multinomial => DrawKind::Multinomial,
            DrawName::Hypergeometric => DrawKind::Hypergeometric,
            DrawName::Polya => DrawKind::Polya,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceName {
    Tvd,
    Kantorovich,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draw: Option<DrawName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_div: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceName>,
    /// Side of the binary-urn grid for `polya-dirichlet`; without it a single urn is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_max: Option<u64>,
    /// Reference distribution for the triangle columns of `sweep-draw`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Multiset(Multiset<Elem>),
    Dist(Dist<Elem>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Multiset(_) => "multiset",
            Object::Dist(_) => "dist",
        }
    }
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub space: Space,
    pub metric: GroundMetric,
    pub objects: BTreeMap<String, Object>,
    pub params: Params,
}

fn field_err(field: impl Into<String>, e: impl ToString) -> SpecError {
    SpecError::Field {
        field: field.into(),
        message: e.to_string(),
    }
}

fn rational(field: &str, s: &str) -> Result<Rational, SpecError> {
    parse(s).map_err(|e| field_err(field, e))
}

impl ProblemSpec {
    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem specs always serialize")
    }

    /// Builds the core objects, reporting the first offending field.
    pub fn validate(&self) -> Result<Problem, SpecError> {
        let mut space = Space::new(self.space.labels.iter().cloned())
            .map_err(|e| field_err("space.labels", e))?;
        if space.is_empty() {
            return Err(field_err("space.labels", "at least one label is required"));
        }
        if let Some(coords) = &self.space.coords {
            let cs = coords
                .iter()
                .enumerate()
                .map(|(i, c)| rational(&format!("space.coords[{i}]"), c))
                .collect::<Result<Vec<_>, _>>()?;
            space = space.with_coords(cs).map_err(|e| field_err("space.coords", e))?;
        }
        let metric = match self.metric.kind {
            MetricKind::Discrete => GroundMetric::discrete(&space),
            MetricKind::Numeric => {
                GroundMetric::numeric(&space).map_err(|e| field_err("metric.kind", e))?
            }
            MetricKind::Matrix => {
                let rows = self
                    .metric
                    .matrix
                    .as_ref()
                    .ok_or_else(|| field_err("metric.matrix", "required for kind = \"matrix\""))?;
                let mut parsed = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    let r = row
                        .iter()
                        .enumerate()
                        .map(|(j, c)| rational(&format!("metric.matrix[{i}][{j}]"), c))
                        .collect::<Result<Vec<_>, _>>()?;
                    parsed.push(r);
                }
                GroundMetric::matrix(&space, parsed).map_err(|e| field_err("metric.matrix", e))?
            }
        };
        let mut objects = BTreeMap::new();
        for (name, o) in &self.objects {
            let base = format!("objects.{name}");
            let obj = match (&o.multiset, &o.dist) {
                (Some(m), None) => {
                    let mut out = Multiset::new();
                    for (label, &n) in m {
                        let e = space
                            .elem(label)
                            .map_err(|e| field_err(format!("{base}.multiset.{label}"), e))?;
                        out.insert(e, n);
                    }
                    Object::Multiset(out)
                }
                (None, Some(d)) => {
                    let mut items = Vec::with_capacity(d.len());
                    for (label, w) in d {
                        let field = format!("{base}.dist.{label}");
                        let e = space.elem(label).map_err(|e| field_err(&field, e))?;
                        items.push((e, rational(&field, w)?));
                    }
                    Object::Dist(Dist::new(items).map_err(|e| field_err(format!("{base}.dist"), e))?)
                }
                _ => {
                    return Err(field_err(base, "needs exactly one of `multiset` or `dist`"));
                }
            };
            objects.insert(name.clone(), obj);
        }
        for (field, name) in [
            ("params.left", &self.params.left),
            ("params.right", &self.params.right),
            ("params.rho", &self.params.rho),
        ] {
            if let Some(n) = name {
                if !objects.contains_key(n) {
                    return Err(field_err(field, format!("no object named `{n}`")));
                }
            }
        }
        Ok(Problem {
            space,
            metric,
            objects,
            params: self.params.clone(),
        })
    }
}

impl Problem {
    pub fn object(&self, field: &str, name: Option<&String>) -> Result<&Object, SpecError> {
        let name = name.ok_or_else(|| field_err(field, "required"))?;
        Ok(&self.objects[name])
    }

    pub fn multiset(&self, field: &str, name: Option<&String>) -> Result<&Multiset<Elem>, SpecError> {
        match self.object(field, name)? {
            Object::Multiset(m) => Ok(m),
            Object::Dist(_) => Err(field_err(field, "expected a multiset object")),
        }
    }

    pub fn dist(&self, field: &str, name: Option<&String>) -> Result<&Dist<Elem>, SpecError> {
        match self.object(field, name)? {
            Object::Dist(d) => Ok(d),
            Object::Multiset(_) => Err(field_err(field, "expected a dist object")),
        }
    }

    pub fn require<T: Copy>(&self, field: &str, v: Option<T>) -> Result<T, SpecError> {
        v.ok_or_else(|| field_err(field, "required"))
    }
}

/// Serializes a validated object back into its file form.
pub fn object_spec(space: &Space, o: &Object) -> ObjectSpec {
    match o {
        Object::Multiset(m) => ObjectSpec {
            multiset: Some(m.iter().map(|(e, n)| (space.label(*e).to_string(), n)).collect()),
            dist: None,
        },
        Object::Dist(d) => ObjectSpec {
            multiset: None,
            dist: Some(
                d.iter()
                    .map(|(e, w)| (space.label(*e).to_string(), to_fraction_string(w)))
                    .collect(),
            ),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTRO: &str = r#"
[space]
labels = ["R", "G", "B"]

[objects.u1]
multiset = { G = 8, B = 2 }

[objects.u2]
multiset = { R = 5, G = 4, B = 1 }

[objects.w]
dist = { R = "1/3", G = "2/3" }

[params]
left = "u1"
right = "u2"
draw = "hypergeometric"
k = 2
"#;

    #[test]
    fn round_trip() {
        let spec = ProblemSpec::from_toml(INTRO).unwrap();
        let again = ProblemSpec::from_toml(&spec.to_toml()).unwrap();
        assert_eq!(spec, again);
        let p = spec.validate().unwrap();
        for (name, o) in &p.objects {
            assert_eq!(&object_spec(&p.space, o), &spec.objects[name]);
        }
    }

    #[test]
    fn float_weights_are_rejected_with_a_line() {
        let text = INTRO.replace("\"1/3\"", "0.333");
        let err = ProblemSpec::from_toml(&text).unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn errors_name_the_field() {
        let text = INTRO.replace("G = 8", "Y = 8");
        let err = ProblemSpec::from_toml(&text).unwrap().validate().unwrap_err();
        assert!(err.to_string().starts_with("objects.u1.multiset.Y:"), "{err}");

        let text = INTRO.replace("\"2/3\"", "\"1/3\"");
        let err = ProblemSpec::from_toml(&text).unwrap().validate().unwrap_err();
        assert!(err.to_string().starts_with("objects.w.dist:"), "{err}");

        let text = INTRO.replace("right = \"u2\"", "right = \"nope\"");
        let err = ProblemSpec::from_toml(&text).unwrap().validate().unwrap_err();
        assert!(err.to_string().starts_with("params.right:"), "{err}");
    }

    #[test]
    fn matrix_metric_is_validated() {
        let text = r#"
[space]
labels = ["a", "b", "c"]
[metric]
kind = "matrix"
matrix = [["0", "1", "5"], ["1", "0", "1"], ["5", "1", "0"]]
"#;
        let err = ProblemSpec::from_toml(text).unwrap().validate().unwrap_err();
        assert!(err.to_string().starts_with("metric.matrix:"), "{err}");
    }
}
