//! Ordered coordinate systems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordKind {
    Base,
    Fiber,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub index: usize,
    pub kind: CoordKind,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct ChartData {
    coords: Vec<Coordinate>,
    /// Order in which a monomial's factors are printed. Fiber coordinates
    /// sit right after their base partner.
    print_order: Vec<usize>,
}

/// An ordered list of uniquely named coordinates. Cheap to clone.
///
/// Two charts are equal when they declare the same names, kinds and order.
#[derive(Clone, Debug, Eq)]
pub struct Chart(Arc<ChartData>);

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Chart {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

/// Whether `name` is a valid coordinate or object name.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Chart {
    /// A chart of base coordinates.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let kinds = vec![CoordKind::Base; names.len()];
        Self::with_kinds(names, &kinds)
    }

    pub(crate) fn with_kinds<S: AsRef<str>>(names: &[S], kinds: &[CoordKind]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        let mut coords = Vec::with_capacity(names.len());
        for (index, (name, &kind)) in names.iter().zip(kinds).enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::InvalidChart(format!("`{name}` is not an identifier")));
            }
            if name == "j" {
                return Err(Error::InvalidChart("`j` is reserved for the split-complex unit".into()));
            }
            if coords.iter().any(|c: &Coordinate| c.name == name) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{name}`")));
            }
            coords.push(Coordinate { name: name.to_string(), index, kind });
        }
        let base: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].kind == CoordKind::Base).collect();
        let fiber: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].kind == CoordKind::Fiber).collect();
        let print_order = if fiber.len() == base.len() {
            base.iter().zip(&fiber).flat_map(|(&b, &f)| [b, f]).collect()
        } else {
            base.into_iter().chain(fiber).collect()
        };
        Ok(Chart(Arc::new(ChartData { coords, print_order })))
    }

    pub fn dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.0.coords
    }

    pub fn coord(&self, index: usize) -> &Coordinate {
        &self.0.coords[index]
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.coords[index].name
    }

    pub fn names(&self) -> Vec<&str> {
        self.0.coords.iter().map(|c| c.name.as_str()).collect()
    }

    pub(crate) fn print_order(&self) -> &[usize] {
        &self.0.print_order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.coords.iter().position(|c| c.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    /// Fails with a chart-mismatch error unless `other` equals `self`.
    pub fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(crate::error::chart_mismatch(self, other))
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names().join(", "))
    }
}
