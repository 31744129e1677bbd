//! Scratch robustness probe (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn eao() -> OscillatorParams {
    OscillatorParams {
        kind: DeviceKind::Eao,
        v_sat: 5.0,
        alpha: 0.5,
        r_f: 100e3,
        c_l: 5.3e-9,
        r_d: 100.0,
        r_fet: 5e3,
        v_knee: 3.5,
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n_cycles: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(120.0);
    let seeds: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20);
    let g = Graph::cycle(4).unwrap();
    let p = eao();
    println!("tA/T = {:.3}, f = {:.0} Hz", p.estimate_fast_fall_time() / p.estimate_period(), p.estimate_frequency());
    let mut nb = 0;
    let mut nc = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..seeds {
        // spread seeds around u64 space like the harness hash will
        let s = seed.wrapping_mul(0x9E3779B97F4A7C15).rotate_left(17) ^ 0xD1B54A32D192ED03;
        let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();
        let cfg = SimConfig::for_period(p.estimate_period(), n_cycles, s, p.upper_threshold());
        match run(&p, &spec, &InjectionConfig::off(), &cfg) {
            Ok(tr) => match extract_phases(&tr, 10) {
                Ok(ph) => {
                    let res = bipartition_residual(&ph);
                    worst = worst.max(res);
                    let cut = cut_value(&g, &phases_to_spins(&ph)).unwrap();
                    if res < 15.0 {
                        nb += 1;
                        if cut == 4 {
                            nc += 1;
                        }
                    }
                }
                Err(e) => println!("seed {seed}: {e}"),
            },
            Err(e) => println!("seed {seed}: {e}"),
        }
    }
    println!("n_cycles {n_cycles}: {nb}/{seeds} bip, {nc}/{seeds} bip+cut4, worst res {worst:.1}");
}
