//! Name-keyed registries of interchangeable strategies.
//!
//! Each family of algorithms (polynomial evaluation routes, kernel routes,
//! verification suites) is a trait; implementations are boxed and registered
//! under the name returned by the trait. The CLI selects among them at
//! runtime by that name.

use crate::bargmann::{ClosedKernel, KernelRoute, SeriesKernel};
use crate::error::{Error, Result};
use crate::polynomials::{DeterminantRoute, ExplicitRoute, PolynomialRoute, RecurrenceRoute};
use crate::verify::{self, Suite};

/// Anything that can be registered needs a stable name.
pub trait Named {
    fn registry_name(&self) -> &'static str;
}

impl Named for dyn PolynomialRoute {
    fn registry_name(&self) -> &'static str {
        self.name()
    }
}

impl Named for dyn KernelRoute {
    fn registry_name(&self) -> &'static str {
        self.name()
    }
}

impl Named for dyn Suite {
    fn registry_name(&self) -> &'static str {
        self.name()
    }
}

/// Ordered collection of boxed strategies. Registration order is preserved
/// and is the order used when running "all" entries.
pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Registers a strategy; a later entry with the same name replaces the
    /// earlier one in place.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        let name = entry.registry_name();
        match self.entries.iter().position(|e| e.registry_name() == name) {
            Some(i) => self.entries[i] = entry,
            None => self.entries.push(entry),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.registry_name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.registry_name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| e.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn polynomial_routes() -> Registry<dyn PolynomialRoute> {
    let mut r: Registry<dyn PolynomialRoute> = Registry::new("polynomial route");
    r.register(Box::new(RecurrenceRoute))
        .register(Box::new(DeterminantRoute))
        .register(Box::new(ExplicitRoute));
    r
}

pub fn kernel_routes() -> Registry<dyn KernelRoute> {
    let mut r: Registry<dyn KernelRoute> = Registry::new("kernel route");
    r.register(Box::new(ClosedKernel))
        .register(Box::new(SeriesKernel::default()));
    r
}

pub fn verification_suites() -> Registry<dyn Suite> {
    let mut r: Registry<dyn Suite> = Registry::new("verification suite");
    for suite in verify::builtin_suites() {
        r.register(suite);
    }
    r
}
