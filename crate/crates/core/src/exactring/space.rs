use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Named integer weight vector over the variables of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub name: String,
    pub weights: Vec<i64>,
}

/// Ordered list of distinct variable names with attached gradings.  The
/// `total` grading (all weights 1) is always present.
#[derive(Clone, Debug)]
pub struct VariableSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
    gradings: Vec<Grading>,
}

impl PartialEq for VariableSpace {
    fn eq(&self, o: &Self) -> bool {
        self.names == o.names && self.gradings == o.gradings
    }
}

impl Eq for VariableSpace {}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

impl VariableSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::unshared(names)?))
    }

    fn unshared<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid identifier")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        let total = Grading { name: "total".into(), weights: vec![1; names.len()] };
        Ok(VariableSpace { names, index, gradings: vec![total] })
    }

    /// Builder: names plus extra gradings, each given as a full weight vector.
    pub fn with_gradings<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        gradings: impl IntoIterator<Item = (String, Vec<i64>)>,
    ) -> Result<Arc<Self>> {
        let mut s = Self::unshared(names)?;
        for (name, weights) in gradings {
            if weights.len() != s.names.len() {
                return Err(Error::GradingLength { name, expected: s.names.len(), got: weights.len() });
            }
            match s.gradings.iter_mut().find(|g| g.name == name) {
                Some(g) => g.weights = weights,
                None => s.gradings.push(Grading { name, weights }),
            }
        }
        Ok(Arc::new(s))
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn grading(&self, name: &str) -> Result<&[i64]> {
        self.gradings
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.weights.as_slice())
            .ok_or_else(|| Error::UnknownGrading(name.to_string()))
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}
