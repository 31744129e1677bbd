//! Scratch SHIL board scan on random graphs (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn board(scale: f64) -> OscillatorParams {
    OscillatorParams {
        kind: DeviceKind::Conventional,
        v_sat: 5.0, alpha: 0.5,
        r_f: 100e3 / scale, c_l: 5.3e-9 * scale,
        r_d: 100.0, r_fet: 5e3, v_knee: 3.5,
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let scale: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let n: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(16);
    let cycles: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(150.0);
    let pc = board(scale);

    for eta in [0.2f64, 0.5, 0.8] {
        // pick a connected instance deterministically
        let mut gseed = 11u64;
        let g = loop {
            let g = gen_random(n, eta, gseed).unwrap();
            let adj = g.adjacency();
            let mut seen = vec![false; n];
            let mut st = vec![0usize];
            seen[0] = true;
            while let Some(u) = st.pop() {
                for &w in &adj[u] { if !seen[w] { seen[w] = true; st.push(w); } }
            }
            if seen.iter().all(|&x| x) { break g; }
            gseed += 1;
        };
        let opt = if n <= 24 { Some(brute_force_maxcut(&g).unwrap().cut) } else { None };
        let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();

        // probe mean network frequency (uninjected)
        let cfg = SimConfig::for_period(pc.estimate_period(), 40.0, 999, pc.upper_threshold());
        let tr = run(&pc, &spec, &InjectionConfig::off(), &cfg).unwrap();
        let mut fsum = 0.0; let mut cnt = 0.0;
        for osc in 0..n {
            let times = tr.flip_times(osc, FlipDirection::Rising);
            if times.len() >= 12 {
                fsum += 10.0 / (times[times.len()-1] - times[times.len()-11]);
                cnt += 1.0;
            }
        }
        let fmean = fsum / cnt;

        for a in [20e-6f64, 50e-6, 100e-6, 200e-6] {
            let a_scaled = a * scale; // keep injection/intrinsic-current ratio fixed across boards
            let inj = InjectionConfig::sine(a_scaled, 2.0 * fmean);
            let mut best = 0usize; let mut sync = 0;
            for t in 0..5u64 {
                let cfg = SimConfig::for_period(pc.estimate_period(), cycles, 3000 + t, pc.upper_threshold());
                if let Ok(tr) = run(&pc, &spec, &inj, &cfg) {
                    if let Ok(ph) = extract_phases(&tr, 10) {
                        sync += 1;
                        let _ = bipartition_residual(&ph);
                        best = best.max(cut_value(&g, &phases_to_spins(&ph)).unwrap());
                    }
                }
            }
            let q = opt.map(|o| best as f64 / o as f64);
            println!("scale {scale} eta {eta} gseed {gseed} |E| {} opt {opt:?}: a {a_scaled:.1e} sync {sync}/5 best {best} ratio {q:?}", g.edge_count());
        }
    }
}
