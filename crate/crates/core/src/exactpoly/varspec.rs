use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered variable names of a ring, which of them are invertible (Laurent),
/// and an optional distinguished series variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSpec {
    names: Vec<String>,
    invertible: Vec<bool>,
    series_var: Option<usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSpec {
    pub fn new<S: AsRef<str>>(names: &[S], invertible: &[S], series_var: Option<&str>) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::precondition(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::precondition(format!("variable `{n}` declared twice")));
            }
        }
        let mut inv = vec![false; names.len()];
        for v in invertible {
            let v = v.as_ref();
            let i = names
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::precondition(format!("invertible variable `{v}` is not declared")))?;
            inv[i] = true;
        }
        let series_var = match series_var {
            None => None,
            Some(t) => {
                let i = names
                    .iter()
                    .position(|n| n == t)
                    .ok_or_else(|| Error::precondition(format!("series variable `{t}` is not declared")))?;
                if inv[i] {
                    return Err(Error::precondition("series variable cannot be invertible"));
                }
                Some(i)
            }
        };
        Ok(VarSpec {
            names,
            invertible: inv,
            series_var,
        })
    }

    /// Polynomial ring in `names`, nothing invertible, no series variable.
    pub fn polynomial<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        VarSpec::new::<S>(names, &[], None)
    }

    pub fn shared(self) -> Arc<VarSpec> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn invertible_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.invertible[i])
    }

    pub fn invertible_names(&self) -> Vec<String> {
        self.invertible_indices().map(|i| self.names[i].clone()).collect()
    }

    pub fn has_invertible(&self) -> bool {
        self.invertible.iter().any(|&b| b)
    }

    pub fn series_var(&self) -> Option<usize> {
        self.series_var
    }

    pub fn series_name(&self) -> Option<&str> {
        self.series_var.map(|i| self.names[i].as_str())
    }

    /// Same names and series variable, nothing invertible: the polynomial
    /// model ring of a Laurent ring.
    pub fn without_inverses(&self) -> VarSpec {
        VarSpec {
            names: self.names.clone(),
            invertible: vec![false; self.names.len()],
            series_var: self.series_var,
        }
    }

    /// A name starting with `hint` that is not yet declared.
    pub fn fresh_name(&self, hint: &str) -> String {
        if self.index(hint).is_none() {
            return hint.to_string();
        }
        (1..)
            .map(|k| format!("{hint}{k}"))
            .find(|n| self.index(n).is_none())
            .unwrap()
    }

    /// Appends a fresh polynomial variable; returns the new spec and the
    /// variable's name.
    pub fn extend_fresh(&self, hint: &str) -> (VarSpec, String) {
        let name = self.fresh_name(hint);
        let mut out = self.clone();
        out.names.push(name.clone());
        out.invertible.push(false);
        (out, name)
    }

    /// Drops the named variables (the series marker is kept when it survives).
    pub fn remove(&self, drop: &[String]) -> VarSpec {
        let mut names = Vec::new();
        let mut invertible = Vec::new();
        let mut series_var = None;
        for i in 0..self.len() {
            if drop.contains(&self.names[i]) {
                continue;
            }
            if self.series_var == Some(i) {
                series_var = Some(names.len());
            }
            names.push(self.names[i].clone());
            invertible.push(self.invertible[i]);
        }
        VarSpec {
            names,
            invertible,
            series_var,
        }
    }
}

impl fmt::Display for VarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(n)?;
            if self.invertible[i] {
                f.write_str("^±")?;
            }
            if self.series_var == Some(i) {
                f.write_str(" (series)")?;
            }
        }
        f.write_str("]")
    }
}
