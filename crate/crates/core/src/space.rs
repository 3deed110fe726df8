//! Finite ordered colour sets.

use std::collections::HashMap;
use std::fmt;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{self, Rational};

/// An element of a [`Space`], identified by its position. Ordering follows the space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    labels: Vec<String>,
    coords: Option<Vec<Rational>>,
    index: HashMap<String, usize>,
}

impl Space {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Space {
            labels,
            coords: None,
            index,
        })
    }

    pub fn with_coords(mut self, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != self.labels.len() {
            return Err(Error::CoordCount {
                labels: self.labels.len(),
                coords: coords.len(),
            });
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Integer points labelled by their value, e.g. `{0, 10, 50}`.
    pub fn numeric(points: &[i64]) -> Result<Self> {
        Space::new(points.iter().map(|p| p.to_string()))?
            .with_coords(points.iter().map(|&p| rational::int(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.labels.len()).map(Elem)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> Option<&[Rational]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, e: Elem) -> Option<&Rational> {
        self.coords.as_ref().map(|c| &c[e.0])
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.index
            .get(label)
            .map(|&i| Elem(i))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.labels.len()
    }

    pub fn check(&self, e: Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                index: e.0,
                size: self.len(),
            })
        }
    }

    /// Builds a multiset from `(label, count)` pairs.
    pub fn multiset(&self, entries: &[(&str, u64)]) -> Result<Multiset<Elem>> {
        let mut m = Multiset::new();
        for &(l, n) in entries {
            m.insert(self.elem(l)?, n);
        }
        Ok(m)
    }

    /// Builds a distribution from `(label, "a/b")` pairs.
    pub fn dist(&self, entries: &[(&str, &str)]) -> Result<Dist<Elem>> {
        let mut items = Vec::with_capacity(entries.len());
        for &(l, w) in entries {
            items.push((self.elem(l)?, rational::parse(w)?));
        }
        Dist::new(items)
    }

    pub fn fmt_mset(&self, m: &Multiset<Elem>) -> String {
        if m.is_empty() {
            return "0".to_string();
        }
        m.iter()
            .map(|(e, n)| format!("{}|{}>", n, self.label(*e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn fmt_dist(&self, d: &Dist<Elem>) -> String {
        d.iter()
            .map(|(e, w)| format!("{}|{}>", w, self.label(*e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
