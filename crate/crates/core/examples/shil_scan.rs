//! Scratch SHIL amplitude/frequency scan on a random graph (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn conv() -> OscillatorParams {
    OscillatorParams {
        kind: DeviceKind::Conventional,
        v_sat: 5.0, alpha: 0.5, r_f: 100e3, c_l: 5.3e-9, r_d: 100.0, r_fet: 5e3, v_knee: 3.5,
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let eta: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let cycles: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(150.0);

    let g = gen_random(n, eta, 11).unwrap();
    let opt = if n <= 24 { Some(brute_force_maxcut(&g).unwrap().cut) } else { None };
    let pc = conv();

    // mean uninjected network frequency across oscillators
    let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();
    let cfg = SimConfig::for_period(pc.estimate_period(), 40.0, 999, pc.upper_threshold());
    let tr = run(&pc, &spec, &InjectionConfig::off(), &cfg).unwrap();
    let mut fsum = 0.0; let mut cnt = 0.0;
    for osc in 0..n {
        let times = tr.flip_times(osc, FlipDirection::Rising);
        if times.len() >= 12 {
            let k = 10;
            fsum += k as f64 / (times[times.len()-1] - times[times.len()-1-k]);
            cnt += 1.0;
        }
    }
    let fmean = fsum / cnt;
    println!("graph |E|={} opt={opt:?} mean uninjected f = {fmean:.0} Hz", g.edge_count());

    for fmul in [1.0f64, 1.05, 1.1] {
        for a in [60e-6f64, 100e-6, 200e-6, 400e-6] {
            let inj = InjectionConfig::sine(a, 2.0 * fmean * fmul);
            let mut best = 0usize; let mut sync = 0; let mut res_best = 180.0f64;
            for t in 0..5u64 {
                let cfg = SimConfig::for_period(pc.estimate_period(), cycles, 3000 + t, pc.upper_threshold());
                if let Ok(tr) = run(&pc, &spec, &inj, &cfg) {
                    if let Ok(ph) = extract_phases(&tr, 10) {
                        sync += 1;
                        let res = bipartition_residual(&ph);
                        res_best = res_best.min(res);
                        let cut = cut_value(&g, &phases_to_spins(&ph)).unwrap();
                        best = best.max(cut);
                    }
                }
            }
            println!("  fmul {fmul} a {a:.0e}: sync {sync}/5 best cut {best} best res {res_best:.1}");
        }
    }
}
