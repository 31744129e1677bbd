//! Scratch K2 pair-equilibrium probe (not part of the deliverable).
use oscim::analysis::extract_phases;
use oscim::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let scale: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let vknee: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4.0);
    let rfet_frac: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.1); // r_fet = frac*r_f
    let n_cycles: f64 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(100.0);

    let g = Graph::new(2, [(0, 1)]).unwrap();
    let c_c = 1e-9;

    for kind in [DeviceKind::Conventional, DeviceKind::Eao] {
        let p = OscillatorParams {
            kind,
            v_sat: 5.0,
            alpha: 0.5,
            r_f: 100e3 / scale,
            c_l: 5.3e-9 * scale,
            r_d: 100.0,
            r_fet: 100e3 / scale * rfet_frac,
            v_knee: vknee,
        };
        p.validate().unwrap();
        let tfast = p.estimate_fast_fall_time() / p.estimate_period();
        let mut diffs = Vec::new();
        for seed in 0..6u64 {
            let spec = CouplingSpec::new(g.clone(), c_c).unwrap();
            let cfg = SimConfig::for_period(p.estimate_period(), n_cycles, seed, p.upper_threshold());
            match run(&p, &spec, &InjectionConfig::off(), &cfg) {
                Ok(tr) => match extract_phases(&tr, 10) {
                    Ok(ph) => diffs.push(ph.as_slice()[1].to_degrees().round()),
                    Err(e) => println!("  seed {seed}: {e}"),
                },
                Err(e) => println!("  seed {seed}: {e}"),
            }
        }
        println!(
            "{kind:?} scale {scale} vknee {vknee} rfet_frac {rfet_frac} tA/T {tfast:.3}: pair diffs {diffs:?}"
        );
    }
}
