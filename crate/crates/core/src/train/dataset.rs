use crate::error::{Error, Result};
use crate::signal::Wave;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WavePair {
    pub source: Wave,
    pub target: Wave,
}

impl WavePair {
    pub fn new(source: Wave, target: Wave) -> Self {
        Self { source, target }
    }
}

/// Paired source/target waves sharing channel counts.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pairs: Vec<WavePair>,
    split: Split,
}

impl Dataset {
    pub fn new(pairs: Vec<WavePair>, split: Split) -> Result<Self> {
        let first = pairs
            .first()
            .ok_or_else(|| Error::InvalidArgument("dataset must contain at least one pair".into()))?;
        let (dx, dy) = (first.source.channels(), first.target.channels());
        if let Some((i, _)) = pairs
            .iter()
            .enumerate()
            .find(|(_, p)| p.source.channels() != dx || p.target.channels() != dy)
        {
            return Err(Error::ShapeMismatch {
                op: "dataset",
                detail: format!("pair {i} does not have {dx} source / {dy} target channels"),
            });
        }
        Ok(Self { pairs, split })
    }

    pub fn pairs(&self) -> &[WavePair] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<WavePair> {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = split;
        self
    }

    pub fn source_channels(&self) -> usize {
        self.pairs[0].source.channels()
    }

    pub fn target_channels(&self) -> usize {
        self.pairs[0].target.channels()
    }

    /// Common source length, if all sources agree.
    pub fn source_steps(&self) -> Option<usize> {
        let n = self.pairs[0].source.steps();
        self.pairs.iter().all(|p| p.source.steps() == n).then_some(n)
    }

    /// Common target length, if all targets agree.
    pub fn target_steps(&self) -> Option<usize> {
        let n = self.pairs[0].target.steps();
        self.pairs.iter().all(|p| p.target.steps() == n).then_some(n)
    }

    pub fn require_uniform_lengths(&self) -> Result<(usize, usize)> {
        match (self.source_steps(), self.target_steps()) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(Error::InvalidArgument(
                "dataset has ragged lengths; all sources and all targets must share a length".into(),
            )),
        }
    }

    /// Same sources, targets reduced to channel `j`.
    pub fn target_channel(&self, j: usize) -> Result<Self> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| Ok(WavePair::new(p.source.clone(), p.target.select_channels(&[j])?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs, self.split)
    }

    /// Target-to-source pairs.
    pub fn swapped(&self) -> Self {
        Self {
            pairs: self
                .pairs
                .iter()
                .map(|p| WavePair::new(p.target.clone(), p.source.clone()))
                .collect(),
            split: self.split,
        }
    }

    pub fn concat(&self, other: &Dataset) -> Result<Self> {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Self::new(pairs, self.split)
    }
}
