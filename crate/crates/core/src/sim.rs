//! Simulation configuration, state snapshots, and recorded traces.

use std::io::Write;

use crate::error::{Error, Result};

/// Fixed-step integrator settings shared by the single-oscillator and
/// network simulations.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Base integration step in seconds. Use [`SimConfig::for_period`] to
    /// derive it from an estimated oscillation period.
    pub dt: f64,
    /// Run length in estimated natural periods.
    pub n_cycles: f64,
    /// Event-time bisection tolerance in seconds (must be < dt).
    pub event_tol: f64,
    /// Seed for initial-condition draws.
    pub seed: u64,
    /// Initial capacitor voltages are drawn uniformly from
    /// `[-ic_spread, +ic_spread]` volts.
    pub ic_spread: f64,
    /// Trace decimation: keep every k-th sample. 0 selects automatically
    /// so traces stay under about 10^6 scalar samples.
    pub sample_every: usize,
}

/// Steps per estimated period used by [`SimConfig::for_period`].
pub const STEPS_PER_PERIOD: f64 = 500.0;

impl SimConfig {
    /// Default config for an oscillator with estimated period `t_est`:
    /// `dt = t_est/500`, `event_tol = dt/1000`, automatic decimation.
    pub fn for_period(t_est: f64, n_cycles: f64, seed: u64, ic_spread: f64) -> SimConfig {
        let dt = t_est / STEPS_PER_PERIOD;
        SimConfig {
            dt,
            n_cycles,
            event_tol: dt / 1000.0,
            seed,
            ic_spread,
            sample_every: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be > 0, got {}", self.dt)));
        }
        if !(self.event_tol > 0.0 && self.event_tol < self.dt) {
            return Err(Error::InvalidConfig(format!(
                "event_tol must be in (0, dt), got {}",
                self.event_tol
            )));
        }
        if !(self.n_cycles >= 1.0 && self.n_cycles.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "n_cycles must be >= 1, got {}",
                self.n_cycles
            )));
        }
        if !(self.ic_spread >= 0.0 && self.ic_spread.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "ic_spread must be >= 0, got {}",
                self.ic_spread
            )));
        }
        Ok(())
    }
}

/// Instantaneous simulation state: node voltages, comparator output signs,
/// and time.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    pub v: Vec<f64>,
    /// +1 for output high, -1 for output low.
    pub s: Vec<i8>,
    pub t: f64,
}

/// Comparator flip direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipDirection {
    /// Output low -> high (capacitor starts charging).
    Rising,
    /// Output high -> low (capacitor starts discharging).
    Falling,
}

impl FlipDirection {
    pub fn sign(self) -> i8 {
        match self {
            FlipDirection::Rising => 1,
            FlipDirection::Falling => -1,
        }
    }
}

/// One comparator flip, located to event tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipEvent {
    pub osc: usize,
    pub t: f64,
    pub dir: FlipDirection,
}

/// One crossing of the autaptic-branch knee voltage during discharge.
/// `into_fast` is true when the branch switches on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KneeEvent {
    pub osc: usize,
    pub t: f64,
    pub into_fast: bool,
}

/// Decimated time series plus exact comparator flip events.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    n: usize,
    times: Vec<f64>,
    v: Vec<f64>, // row-major, stride n
    s: Vec<i8>,
    flip_events: Vec<FlipEvent>,
    knee_events: Vec<KneeEvent>,
    final_state: NetworkState,
}

impl Trace {
    pub(crate) fn new(n: usize) -> Trace {
        Trace {
            n,
            times: Vec::new(),
            v: Vec::new(),
            s: Vec::new(),
            flip_events: Vec::new(),
            knee_events: Vec::new(),
            final_state: NetworkState {
                v: vec![0.0; n],
                s: vec![1; n],
                t: 0.0,
            },
        }
    }

    pub(crate) fn push_sample(&mut self, t: f64, v: &[f64], s: &[i8]) {
        debug_assert_eq!(v.len(), self.n);
        self.times.push(t);
        self.v.extend_from_slice(v);
        self.s.extend_from_slice(s);
    }

    pub(crate) fn record_flip(&mut self, ev: FlipEvent) {
        self.flip_events.push(ev);
    }

    pub(crate) fn record_knee(&mut self, ev: KneeEvent) {
        self.knee_events.push(ev);
    }

    pub(crate) fn set_final_state(&mut self, state: NetworkState) {
        self.final_state = state;
    }

    /// Number of oscillators.
    pub fn oscillator_count(&self) -> usize {
        self.n
    }

    /// Number of recorded samples.
    pub fn sample_count(&self) -> usize {
        self.times.len()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Voltage of oscillator `osc` at sample `k`.
    pub fn voltage(&self, k: usize, osc: usize) -> f64 {
        self.v[k * self.n + osc]
    }

    /// All node voltages at sample `k`.
    pub fn voltages_at(&self, k: usize) -> &[f64] {
        &self.v[k * self.n..(k + 1) * self.n]
    }

    /// Comparator output sign (+1/-1) of oscillator `osc` at sample `k`.
    pub fn comparator_sign(&self, k: usize, osc: usize) -> i8 {
        self.s[k * self.n + osc]
    }

    /// All flips in time order (ties by oscillator index).
    pub fn flip_events(&self) -> &[FlipEvent] {
        &self.flip_events
    }

    pub fn knee_events(&self) -> &[KneeEvent] {
        &self.knee_events
    }

    pub fn final_state(&self) -> &NetworkState {
        &self.final_state
    }

    /// Times of `dir` flips for one oscillator, in time order.
    pub fn flip_times(&self, osc: usize, dir: FlipDirection) -> Vec<f64> {
        self.flip_events
            .iter()
            .filter(|e| e.osc == osc && e.dir == dir)
            .map(|e| e.t)
            .collect()
    }

    pub fn flip_count(&self, osc: usize) -> usize {
        self.flip_events.iter().filter(|e| e.osc == osc).count()
    }

    /// Write the decimated samples as CSV: `t,v0..v{n-1},s0..s{n-1}`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        write!(w, "t")?;
        for i in 0..self.n {
            write!(w, ",v{i}")?;
        }
        for i in 0..self.n {
            write!(w, ",s{i}")?;
        }
        writeln!(w)?;
        for k in 0..self.sample_count() {
            write!(w, "{}", self.times[k])?;
            for i in 0..self.n {
                write!(w, ",{}", self.voltage(k, i))?;
            }
            for i in 0..self.n {
                write!(w, ",{}", self.comparator_sign(k, i))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Write flip events as CSV: `osc,t,dir` with dir +1 rising, -1 falling.
    pub fn write_events_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "osc,t,dir")?;
        for e in &self.flip_events {
            writeln!(w, "{},{},{}", e.osc, e.t, e.dir.sign())?;
        }
        Ok(())
    }
}
