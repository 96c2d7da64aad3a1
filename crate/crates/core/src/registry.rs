use crate::error::{Error, Result};

/// Anything that can be registered and looked up by a stable name.
pub trait Named {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

/// Name-keyed collection of trait objects, kept in registration order.
pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Adds an entry; a later entry with the same name replaces the earlier one.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        match self.entries.iter().position(|e| e.name() == entry.name()) {
            Some(i) => self.entries[i] = entry,
            None => self.entries.push(entry),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: self.kind,
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
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

    /// Resolves a list of names, keeping registration order and dropping
    /// duplicates. An empty selection means everything.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<&T>> {
        if names.is_empty() {
            return Ok(self.iter().collect());
        }
        for n in names {
            self.get(n.as_ref())?;
        }
        Ok(self
            .iter()
            .filter(|e| names.iter().any(|n| n.as_ref() == e.name()))
            .collect())
    }
}
