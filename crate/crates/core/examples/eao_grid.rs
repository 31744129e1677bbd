//! Scratch EAO knob grid on C4 (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n_cycles: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(120.0);
    let g = Graph::cycle(4).unwrap();
    let c_c = 1e-9;

    for vknee in [3.0f64, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5] {
        for rfet in [2e3f64, 5e3, 10e3, 20e3, 50e3] {
            let p = OscillatorParams {
                kind: DeviceKind::Eao,
                v_sat: 5.0,
                alpha: 0.5,
                r_f: 100e3,
                c_l: 5.3e-9,
                r_d: 100.0,
                r_fet: rfet,
                v_knee: vknee,
            };
            if p.validate().is_err() {
                continue;
            }
            let frac = p.estimate_fast_fall_time() / p.estimate_period();
            let mut nb = 0;
            let mut nc4 = 0;
            let mut nok = 0;
            let mut res_sum = 0.0;
            for seed in 0..10u64 {
                let spec = CouplingSpec::new(g.clone(), c_c).unwrap();
                let cfg =
                    SimConfig::for_period(p.estimate_period(), n_cycles, seed, p.upper_threshold());
                if let Ok(tr) = run(&p, &spec, &InjectionConfig::off(), &cfg) {
                    if let Ok(ph) = extract_phases(&tr, 10) {
                        nok += 1;
                        let res = bipartition_residual(&ph);
                        res_sum += res;
                        let cut = cut_value(&g, &phases_to_spins(&ph)).unwrap();
                        if res < 15.0 {
                            nb += 1;
                            if cut == 4 {
                                nc4 += 1;
                            }
                        }
                    }
                }
            }
            println!(
                "vknee {vknee:4.1} rfet {rfet:8.0} tA/T {frac:.3}: ok {nok} bip {nb} bip+cut4 {nc4} mean_res {:.1}",
                res_sum / nok.max(1) as f64
            );
        }
    }
}
