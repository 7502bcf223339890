use crate::error::{Error, Result};
use crate::tensor::{Array2, NodeId, Tape};

/// Named trainable arrays in a fixed order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamSet {
    names: Vec<String>,
    values: Vec<Array2>,
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, value: Array2) {
        self.names.push(name.into());
        self.values.push(value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[Array2] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Array2] {
        &mut self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Array2)> {
        self.names.iter().map(String::as_str).zip(&self.values)
    }

    pub fn get(&self, name: &str) -> Option<&Array2> {
        self.position(name).map(|i| &self.values[i])
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Array2> {
        self.position(name).map(|i| &mut self.values[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn scalar_count(&self) -> usize {
        self.values.iter().map(Array2::len).sum()
    }

    pub fn zeros_like(&self) -> Self {
        Self {
            names: self.names.clone(),
            values: self.values.iter().map(|v| Array2::zeros(v.rows(), v.cols())).collect(),
        }
    }

    /// Records every parameter as a differentiable leaf.
    pub fn bind_variables(&self, tape: &mut Tape) -> Vec<NodeId> {
        self.values.iter().map(|v| tape.variable(v.clone())).collect()
    }

    /// Records every parameter as a constant (inference only).
    pub fn bind_constants(&self, tape: &mut Tape) -> Vec<NodeId> {
        self.values.iter().map(|v| tape.constant(v.clone())).collect()
    }

    /// Checks that `other` has exactly the names and shapes of `self`.
    pub fn check_layout(&self, other: &ParamSet) -> Result<()> {
        if self.names != other.names {
            return Err(Error::InvalidArgument(format!(
                "parameter names differ: expected {:?}, got {:?}",
                self.names, other.names
            )));
        }
        for (name, (a, b)) in self.names.iter().zip(self.values.iter().zip(&other.values)) {
            if a.shape() != b.shape() {
                return Err(Error::ShapeMismatch {
                    op: "params",
                    detail: format!("`{name}` expected {:?}, got {:?}", a.shape(), b.shape()),
                });
            }
        }
        Ok(())
    }
}
