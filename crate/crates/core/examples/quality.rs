//! Scratch solution-quality panel (not part of the deliverable).
use oscim::analysis::{extract_phases, phases_to_spins};
use oscim::*;

fn board(kind: DeviceKind, scale: f64) -> OscillatorParams {
    OscillatorParams {
        kind,
        v_sat: 5.0, alpha: 0.5,
        r_f: 100e3 / scale, c_l: 5.3e-9 * scale,
        r_d: 100.0, r_fet: 5e3 / scale, v_knee: 3.5,
    }
}

fn connected_seed(n: usize, eta: f64, start: u64) -> u64 {
    let mut s = start;
    loop {
        let g = gen_random(n, eta, s).unwrap();
        let adj = g.adjacency();
        let mut seen = vec![false; n];
        let mut st = vec![0usize];
        seen[0] = true;
        while let Some(u) = st.pop() {
            for &w in &adj[u] { if !seen[w] { seen[w] = true; st.push(w); } }
        }
        if seen.iter().all(|&x| x) { return s; }
        s += 1;
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("eao");
    let scale: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let a_base: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let cycles: f64 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(150.0);
    let trials: u64 = args.get(5).and_then(|s| s.parse().ok()).unwrap_or(5);
    let n = 16usize;

    for eta in [0.2f64, 0.5, 0.8] {
        for k in 0..2u64 {
            let gseed = connected_seed(n, eta, 11 + 100 * k);
            let g = gen_random(n, eta, gseed).unwrap();
            let opt = brute_force_maxcut(&g).unwrap().cut;
            let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();
            let (p, inj) = match mode {
                "eao" => (board(DeviceKind::Eao, scale), InjectionConfig::off()),
                _ => {
                    let pc = board(DeviceKind::Conventional, scale);
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
                    (pc, InjectionConfig::sine(a_base * scale, 2.0 * fsum / cnt))
                }
            };
            let mut cuts = Vec::new();
            for t in 0..trials {
                let cfg = SimConfig::for_period(p.estimate_period(), cycles, 5000 + t, p.upper_threshold());
                if let Ok(tr) = run(&p, &spec, &inj, &cfg) {
                    if let Ok(ph) = extract_phases(&tr, 10) {
                        cuts.push(cut_value(&g, &phases_to_spins(&ph)).unwrap());
                    }
                }
            }
            let best = cuts.iter().max().copied().unwrap_or(0);
            println!(
                "{mode} scale {scale} eta {eta} g{gseed} opt {opt}: cuts {cuts:?} best {best} ratio {:.2}",
                best as f64 / opt as f64
            );
        }
    }
}
