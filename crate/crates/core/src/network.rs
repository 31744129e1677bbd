//! Coupled-oscillator network assembly and simulation.
//!
//! Coupling capacitors attach at the load-capacitor nodes, so the coupled
//! system is `M dv/dt = i(v, s, t)` with a constant capacitance (mass)
//! matrix `M` that is factored once per run. The drive current collects the
//! per-device conductance branches plus an optional sinusoidal injection
//! applied identically to every node.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::integrate::{integrate, Drive};
use crate::oscillator::{ComparatorState, OscillatorParams};
pub use crate::sim::{NetworkState, SimConfig, Trace};

/// Capacitive coupling: one capacitor of `c_c` farads per graph edge.
///
/// With `trim_loading` set, each node's load capacitor is trimmed so that
/// the total capacitance at every node is the same (`c_l + deg_max * c_c`).
/// This removes the degree-dependent detuning of the natural frequencies
/// that otherwise desynchronizes irregular graphs; it is a no-op on regular
/// graphs.
#[derive(Debug, Clone)]
pub struct CouplingSpec {
    pub graph: Graph,
    pub c_c: f64,
    pub trim_loading: bool,
}

impl CouplingSpec {
    pub fn new(graph: Graph, c_c: f64) -> Result<CouplingSpec> {
        if !(c_c >= 0.0 && c_c.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "coupling capacitance must be >= 0, got {c_c}"
            )));
        }
        Ok(CouplingSpec {
            graph,
            c_c,
            trim_loading: false,
        })
    }

    pub fn trimmed(graph: Graph, c_c: f64) -> Result<CouplingSpec> {
        let mut spec = CouplingSpec::new(graph, c_c)?;
        spec.trim_loading = true;
        Ok(spec)
    }
}

/// Sinusoidal current injected identically into every node.
#[derive(Debug, Clone)]
pub struct InjectionConfig {
    pub enabled: bool,
    /// Amplitude in amperes.
    pub amplitude: f64,
    /// Frequency in hertz.
    pub frequency: f64,
}

impl InjectionConfig {
    pub fn off() -> InjectionConfig {
        InjectionConfig {
            enabled: false,
            amplitude: 0.0,
            frequency: 0.0,
        }
    }

    pub fn sine(amplitude: f64, frequency: f64) -> InjectionConfig {
        InjectionConfig {
            enabled: true,
            amplitude,
            frequency,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.enabled {
            return Ok(());
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "injection amplitude must be >= 0, got {}",
                self.amplitude
            )));
        }
        if !(self.frequency > 0.0 && self.frequency.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "injection frequency must be > 0, got {}",
                self.frequency
            )));
        }
        Ok(())
    }
}

/// Period estimate for an oscillator embedded in the coupled network.
///
/// Coupling capacitors load every node, stretching the relaxation
/// timescales by up to `M_ii / c_l` relative to the isolated device. The
/// worst-case diagonal gives a safe run-length and step-size basis.
pub fn loaded_period_estimate(p: &OscillatorParams, spec: &CouplingSpec) -> f64 {
    let n = spec.graph.node_count();
    let deg_max = (0..n).map(|i| spec.graph.degree(i)).max().unwrap_or(0) as f64;
    let worst_diag = if spec.trim_loading {
        // Anti-phase locked state: uniform effective loading.
        p.c_l + 2.0 * deg_max * spec.c_c
    } else {
        p.c_l + deg_max * spec.c_c
    };
    p.estimate_period() * worst_diag / p.c_l
}

/// Capacitance matrix of the coupled network:
/// `M[i][i] = c_l + sum of c_c over edges at i`, `M[i][j] = -c_c` on edges.
///
/// Symmetric and strictly diagonally dominant for `c_l > 0`, hence positive
/// definite.
pub fn assemble_mass_matrix(spec: &CouplingSpec, c_l: f64) -> DMatrix<f64> {
    let n = spec.graph.node_count();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c_l;
    }
    for &(u, v) in spec.graph.edges() {
        m[(u, u)] += spec.c_c;
        m[(v, v)] += spec.c_c;
        m[(u, v)] -= spec.c_c;
        m[(v, u)] -= spec.c_c;
    }
    if spec.trim_loading {
        // In the anti-phase locked state each coupling capacitor presents
        // twice its value to the node, so the trim targets
        // C_L + 2*(deg_max - deg_i)*C_c of extra shunt per node. That makes
        // the locked-state effective capacitance uniform across nodes.
        // Gershgorin keeps every eigenvalue >= c_l, so M stays positive
        // definite.
        let deg_max = (0..n).map(|i| spec.graph.degree(i)).max().unwrap_or(0);
        for i in 0..n {
            let deg = spec.graph.degree(i);
            m[(i, i)] += 2.0 * (deg_max - deg) as f64 * spec.c_c;
        }
    }
    m
}

struct NetworkDrive<'a> {
    p: &'a OscillatorParams,
    inj: &'a InjectionConfig,
    chol: Cholesky<f64, Dyn>,
    current: DVector<f64>,
}

impl Drive for NetworkDrive<'_> {
    fn derivs(&mut self, t: f64, v: &[f64], s: &[ComparatorState], dv: &mut [f64]) {
        let inj = if self.inj.enabled {
            self.inj.amplitude * (2.0 * std::f64::consts::PI * self.inj.frequency * t).sin()
        } else {
            0.0
        };
        for i in 0..v.len() {
            let g = self.p.branch_conductance(v[i], s[i]);
            self.current[i] = g * (self.p.output_voltage(s[i]) - v[i]) + inj;
        }
        self.chol.solve_mut(&mut self.current);
        dv.copy_from_slice(self.current.as_slice());
    }
}

/// Simulate the coupled network and return its trace.
///
/// Initial conditions are drawn from `cfg.seed`; the run is a pure function
/// of its arguments. Fails with a distinct error if an oscillator never
/// completes a cycle or if the voltages blow up.
pub fn run(
    params: &OscillatorParams,
    spec: &CouplingSpec,
    inj: &InjectionConfig,
    cfg: &SimConfig,
) -> Result<Trace> {
    params.validate()?;
    inj.validate()?;
    cfg.validate()?;
    if !(spec.c_c >= 0.0 && spec.c_c.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "coupling capacitance must be >= 0, got {}",
            spec.c_c
        )));
    }

    let n = spec.graph.node_count();
    let m = assemble_mass_matrix(spec, params.c_l);
    let chol = Cholesky::new(m).ok_or_else(|| {
        Error::InvalidConfig("mass matrix is not positive definite".to_string())
    })?;

    let mut drive = NetworkDrive {
        p: params,
        inj,
        chol,
        current: DVector::zeros(n),
    };
    let trace = integrate(params, cfg, n, &mut drive, loaded_period_estimate(params, spec))?;

    // Every oscillator must have completed at least two full cycles.
    for i in 0..n {
        let rising = trace
            .flip_events()
            .iter()
            .filter(|e| e.osc == i && e.dir == crate::sim::FlipDirection::Rising)
            .count();
        if rising < 2 {
            return Err(Error::NonOscillation {
                osc: i,
                flips: trace.flip_count(i),
            });
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use approx::assert_relative_eq;

    #[test]
    fn mass_matrix_two_nodes() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let spec = CouplingSpec::new(g, 1e-9).unwrap();
        let m = assemble_mass_matrix(&spec, 5.3e-9);
        assert_relative_eq!(m[(0, 0)], 6.3e-9);
        assert_relative_eq!(m[(1, 1)], 6.3e-9);
        assert_relative_eq!(m[(0, 1)], -1e-9);
        assert_relative_eq!(m[(1, 0)], -1e-9);
    }

    #[test]
    fn mass_matrix_edgeless_is_diagonal() {
        let g = Graph::new(3, []).unwrap();
        let spec = CouplingSpec::new(g, 1e-9).unwrap();
        let m = assemble_mass_matrix(&spec, 2e-9);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2e-9 } else { 0.0 };
                assert_relative_eq!(m[(i, j)], want);
            }
        }
    }

    #[test]
    fn mass_matrix_c4_diagonal_has_degree_terms() {
        let g = Graph::cycle(4).unwrap();
        let spec = CouplingSpec::new(g, 1e-9).unwrap();
        let m = assemble_mass_matrix(&spec, 5.3e-9);
        for i in 0..4 {
            assert_relative_eq!(m[(i, i)], 5.3e-9 + 2e-9);
        }
    }

    #[test]
    fn mass_matrix_random_graphs_are_spd() {
        for seed in 0..5 {
            let g = graph::gen_random(12, 0.5, seed).unwrap();
            let spec = CouplingSpec::new(g, 1e-9).unwrap();
            let m = assemble_mass_matrix(&spec, 5.3e-9);
            assert_eq!(m.transpose(), m);
            assert!(Cholesky::new(m).is_some());
        }
    }

    #[test]
    fn uncoupled_matches_single_oscillator_period() {
        let p = OscillatorParams::conventional();
        let g = Graph::new(3, []).unwrap();
        let spec = CouplingSpec::new(g, 0.0).unwrap();
        let cfg = SimConfig::for_period(p.estimate_period(), 12.0, 5, p.upper_threshold());
        let tr = run(&p, &spec, &InjectionConfig::off(), &cfg).unwrap();

        let single = crate::oscillator::simulate_single(&p, &cfg).unwrap();
        for osc in 0..3 {
            let times = tr.flip_times(osc, crate::sim::FlipDirection::Rising);
            let periods: Vec<f64> = times.windows(2).skip(1).map(|w| w[1] - w[0]).collect();
            let mean = periods.iter().sum::<f64>() / periods.len() as f64;
            assert!(
                (mean - single.period).abs() / single.period < 0.01,
                "osc {osc}: {mean} vs {}",
                single.period
            );
        }
    }

    #[test]
    fn same_seed_same_trace() {
        let p = OscillatorParams::eao();
        let g = Graph::cycle(4).unwrap();
        let spec = CouplingSpec::new(g, 1e-9).unwrap();
        let cfg = SimConfig::for_period(p.estimate_period(), 8.0, 77, p.upper_threshold());
        let a = run(&p, &spec, &InjectionConfig::off(), &cfg).unwrap();
        let b = run(&p, &spec, &InjectionConfig::off(), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn two_coupled_conventional_settle_antiphase() {
        let p = OscillatorParams::conventional();
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let spec = CouplingSpec::new(g, 1e-9).unwrap();
        let cfg = SimConfig::for_period(p.estimate_period(), 60.0, 3, p.upper_threshold());
        let tr = run(&p, &spec, &InjectionConfig::off(), &cfg).unwrap();
        let phases = crate::analysis::extract_phases(&tr, 10).unwrap();
        let diff = phases.as_slice()[1].to_degrees();
        let dist = (diff - 180.0).abs().min((diff + 180.0).abs()).min((diff - 540.0).abs());
        assert!(dist < 10.0, "phase difference {diff} deg not antiphase");
    }
}
