//! Device models: the conventional Schmitt-trigger relaxation oscillator and
//! the autaptic variant with an extra self-feedback branch.
//!
//! Both devices are modeled as a load capacitor driven through
//! piecewise-linear conductance branches toward the comparator output rail,
//! plus comparator hysteresis. The conventional device charges fast through
//! a diode and discharges through the feedback resistor alone; the autaptic
//! device adds a branch that conducts during the upper part of the
//! discharge, giving the characteristic two-slope fall.

use crate::error::{Error, Result};
use crate::integrate::{integrate, Drive};
use crate::sim::{FlipDirection, SimConfig, Trace};

/// Which relaxation-oscillator circuit to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviceKind {
    /// Schmitt-trigger oscillator with a diode-assisted fast rise.
    Conventional,
    /// Same core plus an autaptic branch active above the knee voltage
    /// during discharge.
    Eao,
}

/// Comparator output state. Output voltage is `+v_sat` when high,
/// `-v_sat` when low.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparatorState {
    OutHigh,
    OutLow,
}

impl ComparatorState {
    pub fn sign(self) -> i8 {
        match self {
            ComparatorState::OutHigh => 1,
            ComparatorState::OutLow => -1,
        }
    }
}

/// Device constants for one oscillator. All oscillators in a network share
/// one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorParams {
    pub kind: DeviceKind,
    /// Output swing: comparator output is +/- v_sat volts.
    pub v_sat: f64,
    /// Hysteresis fraction in (0,1); thresholds sit at +/- alpha*v_sat.
    pub alpha: f64,
    /// Feedback resistance, ohms.
    pub r_f: f64,
    /// Load capacitance, farads.
    pub c_l: f64,
    /// Diode dynamic resistance during charging, ohms. Must be << r_f.
    pub r_d: f64,
    /// Autaptic branch on-resistance, ohms (Eao only).
    pub r_fet: f64,
    /// Autaptic branch cutoff, volts above the low rail (Eao only): the
    /// branch conducts while `v - (-v_sat) > v_knee` during discharge.
    pub v_knee: f64,
}

impl OscillatorParams {
    /// Conventional-device defaults: 5 V swing, half-swing hysteresis,
    /// 100 kohm / 5.3 nF feedback for a natural frequency near 1.7 kHz.
    pub fn conventional() -> OscillatorParams {
        OscillatorParams {
            kind: DeviceKind::Conventional,
            v_sat: 5.0,
            alpha: 0.5,
            r_f: 100e3,
            c_l: 5.3e-9,
            r_d: 100.0,
            r_fet: 10e3,
            v_knee: 4.0,
        }
    }

    /// Autaptic-device defaults: conventional values plus a 10 kohm branch
    /// that cuts off 4 V above the low rail, putting the fast-fall fraction
    /// near 0.11.
    pub fn eao() -> OscillatorParams {
        OscillatorParams {
            kind: DeviceKind::Eao,
            ..OscillatorParams::conventional()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.v_sat > 0.0 && self.v_sat.is_finite()) {
            return bad(format!("v_sat must be > 0, got {}", self.v_sat));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must be in (0,1), got {}", self.alpha));
        }
        for (name, val) in [
            ("r_f", self.r_f),
            ("c_l", self.c_l),
            ("r_d", self.r_d),
            ("r_fet", self.r_fet),
        ] {
            if !(val > 0.0 && val.is_finite()) {
                return bad(format!("{name} must be > 0, got {val}"));
            }
        }
        if self.r_d >= self.r_f {
            return bad(format!(
                "charging must be faster than discharge: r_d = {} >= r_f = {}",
                self.r_d, self.r_f
            ));
        }
        if self.kind == DeviceKind::Eao {
            if self.r_fet >= self.r_f {
                return bad(format!(
                    "autaptic branch must dominate: r_fet = {} >= r_f = {}",
                    self.r_fet, self.r_f
                ));
            }
            if !(self.v_knee > 0.0 && self.v_knee < (1.0 + self.alpha) * self.v_sat) {
                return bad(format!(
                    "v_knee must be in (0, (1+alpha)*v_sat), got {}",
                    self.v_knee
                ));
            }
        }
        Ok(())
    }

    /// Upper comparator threshold `+alpha*v_sat`.
    pub fn upper_threshold(&self) -> f64 {
        self.alpha * self.v_sat
    }

    /// Lower comparator threshold `-alpha*v_sat`.
    pub fn lower_threshold(&self) -> f64 {
        -self.alpha * self.v_sat
    }

    /// Comparator output voltage for a given state.
    pub fn output_voltage(&self, s: ComparatorState) -> f64 {
        self.v_sat * s.sign() as f64
    }

    /// Total conductance from the output rail into the load node.
    ///
    /// Charging always conducts through the diode in parallel with the
    /// feedback resistor. Discharge conducts through the feedback resistor,
    /// plus the autaptic branch while the node sits more than `v_knee`
    /// above the low rail. Drive current into the node is
    /// `G * (output_voltage - v)`.
    pub fn branch_conductance(&self, v: f64, s: ComparatorState) -> f64 {
        match s {
            ComparatorState::OutHigh => 1.0 / self.r_f + 1.0 / self.r_d,
            ComparatorState::OutLow => match self.kind {
                DeviceKind::Conventional => 1.0 / self.r_f,
                DeviceKind::Eao => {
                    if v + self.v_sat > self.v_knee {
                        1.0 / self.r_f + 1.0 / self.r_fet
                    } else {
                        1.0 / self.r_f
                    }
                }
            },
        }
    }

    /// Hysteresis update: high output flips low once the node reaches the
    /// upper threshold; low flips high once it reaches the lower threshold.
    pub fn comparator_update(&self, v: f64, s: ComparatorState) -> ComparatorState {
        match s {
            ComparatorState::OutHigh if v >= self.upper_threshold() => ComparatorState::OutLow,
            ComparatorState::OutLow if v <= self.lower_threshold() => ComparatorState::OutHigh,
            _ => s,
        }
    }

    /// Charging time constant `(r_f || r_d) * c_l`.
    pub fn tau_rise(&self) -> f64 {
        parallel(self.r_f, self.r_d) * self.c_l
    }

    /// Fast-discharge time constant `(r_f || r_fet) * c_l` (autaptic branch on).
    pub fn tau_fall_fast(&self) -> f64 {
        parallel(self.r_f, self.r_fet) * self.c_l
    }

    /// Slow-discharge time constant `r_f * c_l`.
    pub fn tau_fall_slow(&self) -> f64 {
        self.r_f * self.c_l
    }

    /// Closed-form steady-state rise duration (lower to upper threshold).
    pub fn estimate_rise_time(&self) -> f64 {
        self.tau_rise() * ((1.0 + self.alpha) / (1.0 - self.alpha)).ln()
    }

    /// Closed-form steady-state fall duration (upper to lower threshold),
    /// accounting for the autaptic knee when present.
    pub fn estimate_fall_time(&self) -> f64 {
        let swing = ((1.0 + self.alpha) / (1.0 - self.alpha)).ln();
        match self.kind {
            DeviceKind::Conventional => self.tau_fall_slow() * swing,
            DeviceKind::Eao => {
                // Height above the low rail decays exponentially from
                // (1+alpha)*v_sat to (1-alpha)*v_sat.
                let top = (1.0 + self.alpha) * self.v_sat;
                let bottom = (1.0 - self.alpha) * self.v_sat;
                if self.v_knee >= top {
                    self.tau_fall_slow() * swing
                } else if self.v_knee <= bottom {
                    self.tau_fall_fast() * swing
                } else {
                    self.tau_fall_fast() * (top / self.v_knee).ln()
                        + self.tau_fall_slow() * (self.v_knee / bottom).ln()
                }
            }
        }
    }

    /// Closed-form duration of the fast-discharge segment (0 when the
    /// autaptic branch never conducts).
    pub fn estimate_fast_fall_time(&self) -> f64 {
        if self.kind != DeviceKind::Eao {
            return 0.0;
        }
        let top = (1.0 + self.alpha) * self.v_sat;
        let bottom = (1.0 - self.alpha) * self.v_sat;
        if self.v_knee >= top {
            0.0
        } else if self.v_knee <= bottom {
            self.estimate_fall_time()
        } else {
            self.tau_fall_fast() * (top / self.v_knee).ln()
        }
    }

    /// Closed-form steady-state period estimate.
    pub fn estimate_period(&self) -> f64 {
        self.estimate_rise_time() + self.estimate_fall_time()
    }

    /// Closed-form natural-frequency estimate in hertz.
    pub fn estimate_frequency(&self) -> f64 {
        1.0 / self.estimate_period()
    }
}

fn parallel(a: f64, b: f64) -> f64 {
    a * b / (a + b)
}

/// Measurements from a steady-state single-oscillator run.
#[derive(Debug, Clone)]
pub struct SingleRun {
    pub trace: Trace,
    /// Mean steady-state period, seconds.
    pub period: f64,
    /// 1 / period, hertz.
    pub frequency: f64,
    /// Mean rise duration divided by the period.
    pub rise_fraction: f64,
    /// Mean fast-discharge duration (knee-bounded), when the autaptic
    /// branch was active.
    pub fast_fall_duration: Option<f64>,
    /// Log-linear decay-constant fit of the fast fall segment.
    pub tau_fall_fast_fit: Option<f64>,
    /// Log-linear decay-constant fit of the slow fall segment (the whole
    /// fall for a conventional device).
    pub tau_fall_slow_fit: f64,
}

impl SingleRun {
    /// Fast-discharge duration relative to the period, when present.
    pub fn fast_fall_fraction(&self) -> Option<f64> {
        self.fast_fall_duration.map(|d| d / self.period)
    }
}

struct ScalarDrive<'a> {
    p: &'a OscillatorParams,
}

impl Drive for ScalarDrive<'_> {
    fn derivs(&mut self, _t: f64, v: &[f64], s: &[ComparatorState], dv: &mut [f64]) {
        let g = self.p.branch_conductance(v[0], s[0]);
        dv[0] = g * (self.p.output_voltage(s[0]) - v[0]) / self.p.c_l;
    }
}

/// Simulate one isolated oscillator and measure its steady-state timing.
pub fn simulate_single(p: &OscillatorParams, cfg: &SimConfig) -> Result<SingleRun> {
    p.validate()?;
    cfg.validate()?;
    let mut drive = ScalarDrive { p };
    let trace = integrate(p, cfg, 1, &mut drive, p.estimate_period())?;
    measure_single(p, trace)
}

fn measure_single(p: &OscillatorParams, trace: Trace) -> Result<SingleRun> {
    let rising = trace.flip_times(0, FlipDirection::Rising);
    let falling = trace.flip_times(0, FlipDirection::Falling);
    if rising.len() < 3 {
        return Err(Error::NonOscillation {
            osc: 0,
            flips: trace.flip_count(0),
        });
    }

    // Steady state: skip the first full cycle, average the rest.
    let periods: Vec<f64> = rising.windows(2).skip(1).map(|w| w[1] - w[0]).collect();
    let period = periods.iter().sum::<f64>() / periods.len() as f64;

    // Rise = rising flip to the next falling flip.
    let mut rise_durations = Vec::new();
    for &r in rising.iter().skip(1) {
        if let Some(&f) = falling.iter().find(|&&f| f > r) {
            rise_durations.push(f - r);
        }
    }
    if rise_durations.is_empty() {
        return Err(Error::NonOscillation {
            osc: 0,
            flips: trace.flip_count(0),
        });
    }
    let rise_fraction = rise_durations.iter().sum::<f64>() / rise_durations.len() as f64 / period;

    // Fast-fall duration: falling flip to the knee crossing that switches
    // the autaptic branch off.
    let fast_fall_duration = {
        let mut durs = Vec::new();
        for &f in falling.iter().skip(1) {
            if let Some(k) = trace
                .knee_events()
                .iter()
                .find(|k| k.osc == 0 && !k.into_fast && k.t > f)
            {
                durs.push(k.t - f);
            }
        }
        if durs.is_empty() {
            None
        } else {
            Some(durs.iter().sum::<f64>() / durs.len() as f64)
        }
    };

    let (tau_fast_fit, tau_slow_fit) = fit_fall_taus(p, &trace, &falling, &rising)?;

    Ok(SingleRun {
        period,
        frequency: 1.0 / period,
        rise_fraction,
        fast_fall_duration,
        tau_fall_fast_fit: tau_fast_fit,
        tau_fall_slow_fit: tau_slow_fit,
        trace,
    })
}

/// Fit exponential decay constants of the fall segments by log-linear
/// regression of `ln(v + v_sat)` against time over trace samples.
fn fit_fall_taus(
    p: &OscillatorParams,
    trace: &Trace,
    falling: &[f64],
    rising: &[f64],
) -> Result<(Option<f64>, f64)> {
    // Use the last complete fall: the latest falling flip followed by a
    // rising flip.
    let (fall_start, fall_end) = falling
        .iter()
        .rev()
        .find_map(|&f| {
            rising
                .iter()
                .find(|&&r| r > f)
                .map(|&r| (f, r))
        })
        .ok_or(Error::NonOscillation { osc: 0, flips: 0 })?;

    // Knee crossing inside this fall, if any.
    let knee_t = trace
        .knee_events()
        .iter()
        .find(|k| k.osc == 0 && !k.into_fast && k.t > fall_start && k.t < fall_end)
        .map(|k| k.t);

    let fit = |t0: f64, t1: f64| -> Option<f64> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for k in 0..trace.sample_count() {
            let t = trace.times()[k];
            if t > t0 && t < t1 {
                let w = trace.voltage(k, 0) + p.v_sat;
                if w > 0.0 {
                    xs.push(t);
                    ys.push(w.ln());
                }
            }
        }
        if xs.len() < 4 {
            return None;
        }
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        if slope < 0.0 {
            Some(-1.0 / slope)
        } else {
            None
        }
    };

    // Trim the segment edges by a couple of samples' worth of time so the
    // regression sees pure exponential decay.
    let dt_sample = if trace.sample_count() >= 2 {
        trace.times()[1] - trace.times()[0]
    } else {
        0.0
    };
    let margin = 2.0 * dt_sample;

    match knee_t {
        Some(kt) => {
            let fast = fit(fall_start + margin, kt - margin);
            let slow = fit(kt + margin, fall_end - margin)
                .ok_or_else(|| Error::InvalidConfig("slow fall segment too short to fit".into()))?;
            Ok((fast, slow))
        }
        None => {
            let slow = fit(fall_start + margin, fall_end - margin)
                .ok_or_else(|| Error::InvalidConfig("fall segment too short to fit".into()))?;
            Ok((None, slow))
        }
    }
}
