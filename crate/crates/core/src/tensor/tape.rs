//! Reverse-mode differentiation over a linear tape of matrix operations.
//!
//! Nodes are appended in evaluation order, so every node's inputs precede it
//! and the backward sweep is a single reverse pass over the node list.

use crate::error::{shape_err, Error, Result};
use crate::tensor::array::{matmul_at_into, matmul_bt_into, Array2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Primitive operations recorded on the tape.
#[derive(Clone, Debug, PartialEq)]
pub enum OpKind {
    Add,
    Sub,
    /// Elementwise product.
    Mul,
    MatMul,
    Tanh,
    Sigmoid,
    /// Horizontal concatenation of any number of equal-row inputs.
    ConcatCols,
    SliceCols {
        start: usize,
        len: usize,
    },
    /// Vertical concatenation of any number of equal-column inputs.
    ConcatRows,
    SoftmaxRow,
    Sum,
    Mean,
    Square,
    Transpose,
    Reshape {
        rows: usize,
        cols: usize,
    },
    Scale(f64),
}

impl OpKind {
    pub fn name(&self) -> &'static str {
        match self {
            OpKind::Add => "add",
            OpKind::Sub => "sub",
            OpKind::Mul => "mul",
            OpKind::MatMul => "matmul",
            OpKind::Tanh => "tanh",
            OpKind::Sigmoid => "sigmoid",
            OpKind::ConcatCols => "concat-cols",
            OpKind::SliceCols { .. } => "slice-cols",
            OpKind::ConcatRows => "concat-rows",
            OpKind::SoftmaxRow => "softmax-row",
            OpKind::Sum => "sum",
            OpKind::Mean => "mean",
            OpKind::Square => "square",
            OpKind::Transpose => "transpose",
            OpKind::Reshape { .. } => "reshape",
            OpKind::Scale(_) => "scale",
        }
    }
}

#[derive(Debug)]
enum Source {
    Variable,
    Constant,
    Op { kind: OpKind, inputs: Vec<NodeId> },
}

#[derive(Debug)]
struct Node {
    source: Source,
    value: Array2,
    /// Whether any variable leaf feeds this node.
    tracked: bool,
}

/// Recording of a forward computation.
#[derive(Debug, Default)]
pub struct Tape {
    nodes: Vec<Node>,
}

/// Adjoints produced by [`Tape::backward`], one per node.
#[derive(Debug)]
pub struct Gradients {
    adjoints: Vec<Array2>,
}

impl Gradients {
    pub fn get(&self, id: NodeId) -> &Array2 {
        &self.adjoints[id.0]
    }

    pub fn take(&mut self, id: NodeId) -> Array2 {
        std::mem::replace(&mut self.adjoints[id.0], Array2::zeros(0, 0))
    }
}

impl Tape {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Leaf that receives a gradient.
    pub fn variable(&mut self, value: Array2) -> NodeId {
        self.push(Source::Variable, value, true)
    }

    /// Leaf treated as data; no adjoint is propagated into it.
    pub fn constant(&mut self, value: Array2) -> NodeId {
        self.push(Source::Constant, value, false)
    }

    pub fn value(&self, id: NodeId) -> &Array2 {
        &self.nodes[id.0].value
    }

    fn push(&mut self, source: Source, value: Array2, tracked: bool) -> NodeId {
        self.nodes.push(Node { source, value, tracked });
        NodeId(self.nodes.len() - 1)
    }

    /// Evaluates `kind` on `inputs` and records the result.
    pub fn apply(&mut self, kind: OpKind, inputs: &[NodeId]) -> Result<NodeId> {
        let value = self.evaluate(&kind, inputs)?;
        let tracked = inputs.iter().any(|i| self.nodes[i.0].tracked);
        Ok(self.push(
            Source::Op {
                kind,
                inputs: inputs.to_vec(),
            },
            value,
            tracked,
        ))
    }

    fn arity(kind: &OpKind, inputs: &[NodeId], expected: usize) -> Result<()> {
        if inputs.len() != expected {
            return shape_err(kind.name(), format!("expected {expected} inputs, got {}", inputs.len()));
        }
        Ok(())
    }

    fn evaluate(&self, kind: &OpKind, inputs: &[NodeId]) -> Result<Array2> {
        let v = |i: usize| &self.nodes[inputs[i].0].value;
        match kind {
            OpKind::Add | OpKind::Sub | OpKind::Mul => {
                Self::arity(kind, inputs, 2)?;
                let (a, b) = (v(0), v(1));
                a.check_same_shape(b, kind.name())?;
                Ok(match kind {
                    OpKind::Add => a.zip_map(b, |x, y| x + y),
                    OpKind::Sub => a.zip_map(b, |x, y| x - y),
                    _ => a.zip_map(b, |x, y| x * y),
                })
            }
            OpKind::MatMul => {
                Self::arity(kind, inputs, 2)?;
                v(0).matmul(v(1))
            }
            OpKind::Tanh => {
                Self::arity(kind, inputs, 1)?;
                Ok(v(0).map(f64::tanh))
            }
            OpKind::Sigmoid => {
                Self::arity(kind, inputs, 1)?;
                Ok(v(0).map(sigmoid))
            }
            OpKind::Square => {
                Self::arity(kind, inputs, 1)?;
                Ok(v(0).map(|x| x * x))
            }
            OpKind::Scale(s) => {
                Self::arity(kind, inputs, 1)?;
                let s = *s;
                Ok(v(0).map(|x| x * s))
            }
            OpKind::Sum => {
                Self::arity(kind, inputs, 1)?;
                Ok(Array2::scalar(v(0).sum()))
            }
            OpKind::Mean => {
                Self::arity(kind, inputs, 1)?;
                let a = v(0);
                if a.is_empty() {
                    return shape_err("mean", "empty input");
                }
                Ok(Array2::scalar(a.sum() / a.len() as f64))
            }
            OpKind::Transpose => {
                Self::arity(kind, inputs, 1)?;
                Ok(v(0).transpose())
            }
            OpKind::Reshape { rows, cols } => {
                Self::arity(kind, inputs, 1)?;
                v(0).reshape(*rows, *cols)
            }
            OpKind::SoftmaxRow => {
                Self::arity(kind, inputs, 1)?;
                Ok(softmax_rows(v(0)))
            }
            OpKind::SliceCols { start, len } => {
                Self::arity(kind, inputs, 1)?;
                let a = v(0);
                if start + len > a.cols() || *len == 0 {
                    return shape_err(
                        "slice-cols",
                        format!("columns {start}..{} of {} columns", start + len, a.cols()),
                    );
                }
                let mut data = Vec::with_capacity(a.rows() * len);
                for r in 0..a.rows() {
                    data.extend_from_slice(&a.row_slice(r)[*start..start + len]);
                }
                Array2::new(a.rows(), *len, data)
            }
            OpKind::ConcatCols => {
                if inputs.is_empty() {
                    return shape_err("concat-cols", "no inputs");
                }
                let rows = v(0).rows();
                if let Some(bad) = inputs.iter().map(|i| &self.nodes[i.0].value).find(|a| a.rows() != rows) {
                    return shape_err("concat-cols", format!("row counts differ: {rows} vs {}", bad.rows()));
                }
                let cols: usize = inputs.iter().map(|i| self.nodes[i.0].value.cols()).sum();
                let mut data = Vec::with_capacity(rows * cols);
                for r in 0..rows {
                    for i in inputs {
                        data.extend_from_slice(self.nodes[i.0].value.row_slice(r));
                    }
                }
                Array2::new(rows, cols, data)
            }
            OpKind::ConcatRows => {
                if inputs.is_empty() {
                    return shape_err("concat-rows", "no inputs");
                }
                let cols = v(0).cols();
                if let Some(bad) = inputs.iter().map(|i| &self.nodes[i.0].value).find(|a| a.cols() != cols) {
                    return shape_err("concat-rows", format!("column counts differ: {cols} vs {}", bad.cols()));
                }
                let mut data = Vec::new();
                let mut rows = 0;
                for i in inputs {
                    let a = &self.nodes[i.0].value;
                    data.extend_from_slice(a.data());
                    rows += a.rows();
                }
                Array2::new(rows, cols, data)
            }
        }
    }

    /// Propagates adjoints from a scalar `loss` back to every node.
    ///
    /// Nodes that do not influence the loss (or are constants) receive a zero
    /// adjoint of their own shape.
    pub fn backward(&self, loss: NodeId) -> Result<Gradients> {
        let loss_value = &self.nodes[loss.0].value;
        if loss_value.shape() != (1, 1) {
            return Err(Error::NonScalarLoss {
                rows: loss_value.rows(),
                cols: loss_value.cols(),
            });
        }
        let mut adj: Vec<Option<Array2>> = Vec::with_capacity(self.nodes.len());
        adj.resize_with(self.nodes.len(), || None);
        adj[loss.0] = Some(Array2::scalar(1.0));

        for idx in (0..=loss.0).rev() {
            let node = &self.nodes[idx];
            let Source::Op { kind, inputs } = &node.source else {
                continue;
            };
            if !node.tracked {
                continue;
            }
            let Some(g) = adj[idx].take() else {
                continue;
            };
            self.propagate(kind, inputs, &node.value, &g, &mut adj);
            adj[idx] = Some(g);
        }

        let adjoints = adj
            .into_iter()
            .zip(&self.nodes)
            .map(|(a, n)| a.unwrap_or_else(|| Array2::zeros(n.value.rows(), n.value.cols())))
            .collect();
        Ok(Gradients { adjoints })
    }

    fn propagate(&self, kind: &OpKind, inputs: &[NodeId], out: &Array2, g: &Array2, adj: &mut [Option<Array2>]) {
        let val = |i: usize| &self.nodes[inputs[i].0].value;
        let wants = |i: usize| self.nodes[inputs[i].0].tracked;
        let mut accumulate = |id: NodeId, contrib: Array2| match &mut adj[id.0] {
            Some(a) => a.add_assign(&contrib),
            slot @ None => *slot = Some(contrib),
        };

        match kind {
            OpKind::Add => {
                for i in 0..2 {
                    if wants(i) {
                        accumulate(inputs[i], g.clone());
                    }
                }
            }
            OpKind::Sub => {
                if wants(0) {
                    accumulate(inputs[0], g.clone());
                }
                if wants(1) {
                    accumulate(inputs[1], g.map(|x| -x));
                }
            }
            OpKind::Mul => {
                if wants(0) {
                    accumulate(inputs[0], g.zip_map(val(1), |d, b| d * b));
                }
                if wants(1) {
                    accumulate(inputs[1], g.zip_map(val(0), |d, a| d * a));
                }
            }
            OpKind::MatMul => {
                let (a, b) = (val(0), val(1));
                if wants(0) {
                    let mut da = Array2::zeros(a.rows(), a.cols());
                    matmul_bt_into(g, b, &mut da);
                    accumulate(inputs[0], da);
                }
                if wants(1) {
                    let mut db = Array2::zeros(b.rows(), b.cols());
                    matmul_at_into(a, g, &mut db);
                    accumulate(inputs[1], db);
                }
            }
            OpKind::Tanh => {
                accumulate(inputs[0], g.zip_map(out, |d, y| d * (1.0 - y * y)));
            }
            OpKind::Sigmoid => {
                accumulate(inputs[0], g.zip_map(out, |d, y| d * y * (1.0 - y)));
            }
            OpKind::Square => {
                accumulate(inputs[0], g.zip_map(val(0), |d, x| 2.0 * d * x));
            }
            OpKind::Scale(s) => {
                let s = *s;
                accumulate(inputs[0], g.map(|d| d * s));
            }
            OpKind::Sum => {
                let a = val(0);
                accumulate(inputs[0], Array2::filled(a.rows(), a.cols(), g.data()[0]));
            }
            OpKind::Mean => {
                let a = val(0);
                let share = g.data()[0] / a.len() as f64;
                accumulate(inputs[0], Array2::filled(a.rows(), a.cols(), share));
            }
            OpKind::Transpose => {
                accumulate(inputs[0], g.transpose());
            }
            OpKind::Reshape { .. } => {
                let a = val(0);
                accumulate(
                    inputs[0],
                    Array2::new(a.rows(), a.cols(), g.data().to_vec()).expect("reshape adjoint"),
                );
            }
            OpKind::SoftmaxRow => {
                // dx = y * (g - <g, y>) per row
                let mut dx = Array2::zeros(out.rows(), out.cols());
                for r in 0..out.rows() {
                    let y = out.row_slice(r);
                    let gr = g.row_slice(r);
                    let dot: f64 = y.iter().zip(gr).map(|(a, b)| a * b).sum();
                    for c in 0..out.cols() {
                        dx.set(r, c, y[c] * (gr[c] - dot));
                    }
                }
                accumulate(inputs[0], dx);
            }
            OpKind::SliceCols { start, len } => {
                let a = val(0);
                let mut da = Array2::zeros(a.rows(), a.cols());
                for r in 0..a.rows() {
                    for c in 0..*len {
                        da.set(r, start + c, g.get(r, c));
                    }
                }
                accumulate(inputs[0], da);
            }
            OpKind::ConcatCols => {
                let mut offset = 0;
                for &id in inputs {
                    let a = &self.nodes[id.0].value;
                    if self.nodes[id.0].tracked {
                        let mut da = Array2::zeros(a.rows(), a.cols());
                        for r in 0..a.rows() {
                            for c in 0..a.cols() {
                                da.set(r, c, g.get(r, offset + c));
                            }
                        }
                        accumulate(id, da);
                    }
                    offset += a.cols();
                }
            }
            OpKind::ConcatRows => {
                let mut offset = 0;
                for &id in inputs {
                    let a = &self.nodes[id.0].value;
                    if self.nodes[id.0].tracked {
                        let start = offset * a.cols();
                        let data = g.data()[start..start + a.len()].to_vec();
                        accumulate(id, Array2::new(a.rows(), a.cols(), data).expect("rows adjoint"));
                    }
                    offset += a.rows();
                }
            }
        }
    }

    // Convenience wrappers used by the model code.

    pub fn add(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Add, &[a, b])
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Sub, &[a, b])
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Mul, &[a, b])
    }

    pub fn matmul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(OpKind::MatMul, &[a, b])
    }

    pub fn tanh(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Tanh, &[a])
    }

    pub fn sigmoid(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Sigmoid, &[a])
    }

    pub fn square(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Square, &[a])
    }

    pub fn sum(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Sum, &[a])
    }

    pub fn mean(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Mean, &[a])
    }

    pub fn softmax_row(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::SoftmaxRow, &[a])
    }

    pub fn transpose(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(OpKind::Transpose, &[a])
    }

    pub fn scale(&mut self, a: NodeId, s: f64) -> Result<NodeId> {
        self.apply(OpKind::Scale(s), &[a])
    }

    pub fn reshape(&mut self, a: NodeId, rows: usize, cols: usize) -> Result<NodeId> {
        self.apply(OpKind::Reshape { rows, cols }, &[a])
    }

    pub fn slice_cols(&mut self, a: NodeId, start: usize, len: usize) -> Result<NodeId> {
        self.apply(OpKind::SliceCols { start, len }, &[a])
    }

    pub fn concat_cols(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        self.apply(OpKind::ConcatCols, parts)
    }

    pub fn concat_rows(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        self.apply(OpKind::ConcatRows, parts)
    }

    /// `x * w + b` for a row vector `x`.
    pub fn affine(&mut self, x: NodeId, w: NodeId, b: NodeId) -> Result<NodeId> {
        let xw = self.matmul(x, w)?;
        self.add(xw, b)
    }
}

#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

pub fn softmax_rows(a: &Array2) -> Array2 {
    let mut out = Array2::zeros(a.rows(), a.cols());
    for r in 0..a.rows() {
        let row = a.row_slice(r);
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = row.iter().map(|&x| (x - max).exp()).collect();
        let total: f64 = exps.iter().sum();
        for (c, e) in exps.into_iter().enumerate() {
            out.set(r, c, e / total);
        }
    }
    out
}
