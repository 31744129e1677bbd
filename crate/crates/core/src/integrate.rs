//! Fixed-step RK4 integration with event-accurate discrete switching.
//!
//! The vector field is smooth between comparator flips and autaptic-knee
//! crossings. Each base step is checked for such events at its endpoint;
//! when one triggers, the step size is bisected down to the event tolerance,
//! the step is committed just past the earliest event, the discrete
//! transition is applied, and integration resumes for the remainder of the
//! base step. Simultaneous events are applied in oscillator-index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oscillator::{ComparatorState, DeviceKind, OscillatorParams};
use crate::sim::{FlipDirection, FlipEvent, KneeEvent, NetworkState, SimConfig, Trace};

/// Right-hand side supplier: fills `dv` with dv/dt for the current state.
pub(crate) trait Drive {
    fn derivs(&mut self, t: f64, v: &[f64], s: &[ComparatorState], dv: &mut [f64]);
}

/// Soft cap on retained scalar samples when decimation is automatic.
const AUTO_SAMPLE_BUDGET: f64 = 1e6;

/// Voltage magnitude treated as numerical blowup, relative to the rail.
const BLOWUP_FACTOR: f64 = 3.0;

struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    vt: Vec<f64>,
}

impl Rk4 {
    fn new(n: usize) -> Rk4 {
        Rk4 {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            vt: vec![0.0; n],
        }
    }

    /// One classical RK4 step of size `h` from `(t, v)` into `out`.
    fn step(
        &mut self,
        drive: &mut impl Drive,
        t: f64,
        v: &[f64],
        s: &[ComparatorState],
        h: f64,
        out: &mut [f64],
    ) {
        let n = v.len();
        drive.derivs(t, v, s, &mut self.k1);
        for i in 0..n {
            self.vt[i] = v[i] + 0.5 * h * self.k1[i];
        }
        drive.derivs(t + 0.5 * h, &self.vt, s, &mut self.k2);
        for i in 0..n {
            self.vt[i] = v[i] + 0.5 * h * self.k2[i];
        }
        drive.derivs(t + 0.5 * h, &self.vt, s, &mut self.k3);
        for i in 0..n {
            self.vt[i] = v[i] + h * self.k3[i];
        }
        drive.derivs(t + h, &self.vt, s, &mut self.k4);
        for i in 0..n {
            out[i] =
                v[i] + h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// True when a comparator threshold is reached at the endpoint, or an
/// autaptic knee is crossed between the start and the endpoint.
fn any_event(
    p: &OscillatorParams,
    v_start: &[f64],
    v_end: &[f64],
    s: &[ComparatorState],
) -> bool {
    for i in 0..v_start.len() {
        if comparator_fires(p, v_end[i], s[i]) || knee_crossed(p, v_start[i], v_end[i], s[i]) {
            return true;
        }
    }
    false
}

fn comparator_fires(p: &OscillatorParams, v_end: f64, s: ComparatorState) -> bool {
    p.comparator_update(v_end, s) != s
}

fn knee_crossed(p: &OscillatorParams, v_start: f64, v_end: f64, s: ComparatorState) -> bool {
    if p.kind != DeviceKind::Eao || s != ComparatorState::OutLow {
        return false;
    }
    let g0 = v_start + p.v_sat - p.v_knee;
    let g1 = v_end + p.v_sat - p.v_knee;
    g0 * g1 < 0.0
}

/// Integrate `n` oscillators for `cfg.n_cycles` estimated periods.
///
/// Initial voltages are uniform in `[-ic_spread, ic_spread)` and initial
/// comparator states are fair coin flips, both drawn from `cfg.seed`
/// (voltages first, then states).
pub(crate) fn integrate(
    p: &OscillatorParams,
    cfg: &SimConfig,
    n: usize,
    drive: &mut impl Drive,
    t_est: f64,
) -> Result<Trace> {
    let dt = cfg.dt;
    let n_steps = (cfg.n_cycles * t_est / dt).ceil() as usize;
    let sample_every = if cfg.sample_every == 0 {
        ((n_steps as f64 * n as f64) / AUTO_SAMPLE_BUDGET).ceil().max(1.0) as usize
    } else {
        cfg.sample_every
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            if cfg.ic_spread > 0.0 {
                rng.random_range(-cfg.ic_spread..cfg.ic_spread)
            } else {
                0.0
            }
        })
        .collect();
    let mut s: Vec<ComparatorState> = (0..n)
        .map(|_| {
            if rng.random::<bool>() {
                ComparatorState::OutHigh
            } else {
                ComparatorState::OutLow
            }
        })
        .collect();
    // Normalize states already past their threshold; not a flip event.
    for i in 0..n {
        s[i] = p.comparator_update(v[i], s[i]);
    }

    let mut rk4 = Rk4::new(n);
    let mut trial = vec![0.0; n];
    let mut v_sub = vec![0.0; n];
    let signs = |s: &[ComparatorState]| -> Vec<i8> { s.iter().map(|x| x.sign()).collect() };

    let mut trace = Trace::new(n);
    trace.push_sample(0.0, &v, &signs(&s));

    let blowup = BLOWUP_FACTOR * p.v_sat;

    for step in 0..n_steps {
        let t0 = step as f64 * dt;
        let mut consumed = 0.0;

        while consumed < dt {
            let h = dt - consumed;
            let t_sub = t0 + consumed;
            rk4.step(drive, t_sub, &v, &s, h, &mut trial);

            if !any_event(p, &v, &trial, &s) {
                v.copy_from_slice(&trial);
                break;
            }

            // Earliest event is somewhere in (0, h]; shrink to tolerance.
            let mut lo = 0.0;
            let mut hi = h;
            while hi - lo > cfg.event_tol {
                let mid = 0.5 * (lo + hi);
                rk4.step(drive, t_sub, &v, &s, mid, &mut trial);
                if any_event(p, &v, &trial, &s) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            v_sub.copy_from_slice(&v);
            rk4.step(drive, t_sub, &v_sub, &s, hi, &mut v);
            consumed += hi;
            let t_event = t0 + consumed;

            for i in 0..n {
                if knee_crossed(p, v_sub[i], v[i], s[i]) {
                    trace.record_knee(KneeEvent {
                        osc: i,
                        t: t_event,
                        into_fast: v[i] + p.v_sat > p.v_knee,
                    });
                }
                let s_new = p.comparator_update(v[i], s[i]);
                if s_new != s[i] {
                    let dir = match s_new {
                        ComparatorState::OutHigh => FlipDirection::Rising,
                        ComparatorState::OutLow => FlipDirection::Falling,
                    };
                    trace.record_flip(FlipEvent {
                        osc: i,
                        t: t_event,
                        dir,
                    });
                    s[i] = s_new;
                }
            }
        }

        let t_now = (step + 1) as f64 * dt;
        for (i, &vi) in v.iter().enumerate() {
            if !vi.is_finite() || vi.abs() > blowup {
                return Err(Error::Instability {
                    osc: i,
                    t: t_now,
                    v: vi,
                });
            }
        }
        if (step + 1) % sample_every == 0 || step + 1 == n_steps {
            trace.push_sample(t_now, &v, &signs(&s));
        }
    }

    trace.set_final_state(NetworkState {
        v: v.clone(),
        s: signs(&s),
        t: n_steps as f64 * dt,
    });
    Ok(trace)
}
