//! Scratch random-graph machine-vs-oracle probe (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn conv() -> OscillatorParams {
    OscillatorParams {
        kind: DeviceKind::Conventional,
        v_sat: 5.0, alpha: 0.5, r_f: 100e3, c_l: 5.3e-9, r_d: 100.0, r_fet: 5e3, v_knee: 3.5,
    }
}
fn eao() -> OscillatorParams {
    OscillatorParams { kind: DeviceKind::Eao, ..conv() }
}

fn net_freq(p: &OscillatorParams, g: &Graph, seed: u64, cycles: f64) -> Option<f64> {
    let spec = CouplingSpec::new(g.clone(), 1e-9).ok()?;
    let cfg = SimConfig::for_period(p.estimate_period(), cycles, seed, p.upper_threshold());
    let tr = run(p, &spec, &InjectionConfig::off(), &cfg).ok()?;
    let times = tr.flip_times(0, FlipDirection::Rising);
    if times.len() < 6 { return None; }
    let np: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &np[np.len() / 2..];
    Some(tail.len() as f64 / tail.iter().sum::<f64>())
}

fn trial(p: &OscillatorParams, g: &Graph, inj: &InjectionConfig, seed: u64, cycles: f64) -> Option<(f64, usize)> {
    let spec = CouplingSpec::new(g.clone(), 1e-9).ok()?;
    let cfg = SimConfig::for_period(p.estimate_period(), cycles, seed, p.upper_threshold());
    let tr = run(p, &spec, inj, &cfg).ok()?;
    let ph = extract_phases(&tr, 10).ok()?;
    let res = bipartition_residual(&ph);
    let cut = cut_value(g, &phases_to_spins(&ph)).ok()?;
    Some((res, cut))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let cycles: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(100.0);
    let a_inj: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(10e-6);

    for eta in [0.2, 0.5, 0.8] {
        for gseed in [11u64, 22] {
            let g = gen_random(n, eta, gseed).unwrap();
            let opt = if n <= 24 { Some(brute_force_maxcut(&g).unwrap().cut) } else { None };

            // EAO trials
            let pe = eao();
            let mut eao_best = 0; let mut eao_sync = 0; let mut eao_res_ok = 0;
            for t in 0..5u64 {
                if let Some((res, cut)) = trial(&pe, &g, &InjectionConfig::off(), 1000 + t, cycles) {
                    eao_sync += 1;
                    if res < 15.0 { eao_res_ok += 1; }
                    eao_best = eao_best.max(cut);
                }
            }
            // SHIL trials
            let pc = conv();
            let fnet = net_freq(&pc, &g, 999, 40.0);
            let mut shil_best = 0; let mut shil_sync = 0; let mut shil_res_ok = 0;
            if let Some(f) = fnet {
                let inj = InjectionConfig::sine(a_inj, 2.0 * f);
                for t in 0..5u64 {
                    if let Some((res, cut)) = trial(&pc, &g, &inj, 2000 + t, cycles) {
                        shil_sync += 1;
                        if res < 15.0 { shil_res_ok += 1; }
                        shil_best = shil_best.max(cut);
                    }
                }
            }
            let dev = if shil_best > 0 {
                100.0 * (eao_best as f64 - shil_best as f64) / shil_best as f64
            } else { f64::NAN };
            println!(
                "n{n} eta {eta} g{gseed}: |E|={} opt={opt:?} EAO best {eao_best} (sync {eao_sync}/5, res<15: {eao_res_ok}) SHIL best {shil_best} (sync {shil_sync}/5, res<15: {shil_res_ok}, fnet {:.0}) dev {dev:.1}%",
                g.edge_count(), fnet.unwrap_or(0.0)
            );
        }
    }
}
