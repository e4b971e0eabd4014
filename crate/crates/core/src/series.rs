//! Sampled time series `(t, C(ρ(t)), ρ(t))`.

use crate::error::{Error, Result};
use crate::qmat::DensityMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub t: f64,
    pub concurrence: f64,
    pub state: Option<DensityMatrix>,
}

impl Record {
    pub fn new(t: f64, concurrence: f64) -> Self {
        Self {
            t,
            concurrence,
            state: None,
        }
    }

    pub fn with_state(t: f64, concurrence: f64, state: DensityMatrix) -> Self {
        Self {
            t,
            concurrence,
            state: Some(state),
        }
    }
}

/// Records with strictly ascending times and concurrences in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub scenario: String,
    pub gamma0: f64,
    pub g: f64,
    records: Vec<Record>,
}

impl TimeSeries {
    pub fn new(scenario: impl Into<String>, gamma0: f64, g: f64) -> Self {
        Self {
            scenario: scenario.into(),
            gamma0,
            g,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: Record) -> Result<()> {
        if !record.t.is_finite() {
            return Err(Error::InvalidGrid(format!("non-finite time {}", record.t)));
        }
        if let Some(last) = self.records.last() {
            if record.t <= last.t {
                return Err(Error::InvalidGrid(format!(
                    "times must be strictly ascending: {} after {}",
                    record.t, last.t
                )));
            }
        }
        if !(0.0..=1.0).contains(&record.concurrence) {
            return Err(Error::InvalidParams(format!(
                "concurrence {} outside [0, 1]",
                record.concurrence
            )));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.t)
    }

    pub fn concurrences(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.concurrence)
    }

    /// Drops the stored states, keeping `(t, C)` only.
    pub fn without_states(mut self) -> Self {
        for r in &mut self.records {
            r.state = None;
        }
        self
    }
}

/// `samples` equally spaced points on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::InvalidGrid("need at least one sample".into()));
    }
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::InvalidGrid(format!(
            "t_max must be finite and nonnegative, got {t_max}"
        )));
    }
    if samples == 1 {
        return Ok(vec![0.0]);
    }
    if t_max == 0.0 {
        return Err(Error::InvalidGrid(
            "t_max = 0 admits a single sample only".into(),
        ));
    }
    let n = (samples - 1) as f64;
    Ok((0..samples).map(|k| t_max * k as f64 / n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = uniform_grid(5.0, 501).unwrap();
        assert_eq!(g.len(), 501);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[500], 5.0);
        assert!((g[1] - 0.01).abs() < 1e-15);
        assert_eq!(uniform_grid(3.0, 1).unwrap(), vec![0.0]);
        assert!(uniform_grid(3.0, 0).is_err());
        assert!(uniform_grid(0.0, 4).is_err());
    }

    #[test]
    fn push_enforces_invariants() {
        let mut s = TimeSeries::new("x", 1.0, 1.0);
        s.push(Record::new(0.0, 0.5)).unwrap();
        assert!(s.push(Record::new(0.0, 0.5)).is_err());
        assert!(s.push(Record::new(1.0, 1.5)).is_err());
        s.push(Record::new(1.0, 1.0)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.times().collect::<Vec<_>>(), vec![0.0, 1.0]);
    }
}
