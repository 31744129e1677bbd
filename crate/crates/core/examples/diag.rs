//! Scratch sync diagnosis (not part of the deliverable).
use oscim::*;

fn conv() -> OscillatorParams {
    OscillatorParams {
        kind: DeviceKind::Conventional,
        v_sat: 5.0, alpha: 0.5, r_f: 100e3, c_l: 5.3e-9, r_d: 100.0, r_fet: 5e3, v_knee: 3.5,
    }
}
fn eao() -> OscillatorParams { OscillatorParams { kind: DeviceKind::Eao, ..conv() } }

fn connected(g: &Graph) -> bool {
    let adj = g.adjacency();
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] { seen[w] = true; stack.push(w); }
        }
    }
    seen.iter().all(|&x| x)
}

fn report(name: &str, p: &OscillatorParams, g: &Graph, inj: &InjectionConfig, seed: u64, cycles: f64) {
    let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();
    let cfg = SimConfig::for_period(p.estimate_period(), cycles, seed, p.upper_threshold());
    match run(p, &spec, inj, &cfg) {
        Ok(tr) => {
            let mut periods: Vec<(usize, f64, usize)> = Vec::new();
            for osc in 0..g.node_count() {
                let times = tr.flip_times(osc, FlipDirection::Rising);
                if times.len() < 12 { periods.push((osc, f64::NAN, times.len())); continue; }
                let k = 10.min(times.len() - 1);
                let t = (times[times.len()-1] - times[times.len()-1-k]) / k as f64;
                periods.push((osc, 1.0 / t, times.len()));
            }
            let fs: Vec<f64> = periods.iter().map(|x| x.1).collect();
            let fmin = fs.iter().cloned().fold(f64::INFINITY, f64::min);
            let fmax = fs.iter().cloned().fold(0.0f64, f64::max);
            println!("{name}: deg range {:?} f range [{fmin:.0}, {fmax:.0}] spread {:.1}%",
                (0..g.node_count()).map(|i| g.degree(i)).fold((usize::MAX,0), |(lo,hi),d| (lo.min(d), hi.max(d))),
                100.0*(fmax-fmin)/(0.5*(fmax+fmin)));
        }
        Err(e) => println!("{name}: run error {e}"),
    }
}

fn main() {
    for eta in [0.2, 0.5] {
        let g = gen_random(16, eta, 11).unwrap();
        println!("eta {eta}: connected = {}", connected(&g));
        report(&format!("eao eta{eta}"), &eao(), &g, &InjectionConfig::off(), 1001, 150.0);
        report(&format!("conv eta{eta} noinj"), &conv(), &g, &InjectionConfig::off(), 2001, 150.0);
        for a in [10e-6, 30e-6, 60e-6] {
            let pc = conv();
            // rough fnet from earlier: use the measured uninjected freq of this graph
            let spec = CouplingSpec::new(g.clone(), 1e-9).unwrap();
            let cfg = SimConfig::for_period(pc.estimate_period(), 40.0, 999, pc.upper_threshold());
            let tr = run(&pc, &spec, &InjectionConfig::off(), &cfg).unwrap();
            let times = tr.flip_times(0, FlipDirection::Rising);
            let np: Vec<f64> = times.windows(2).map(|w| w[1]-w[0]).collect();
            let tail = &np[np.len()/2..];
            let f = tail.len() as f64 / tail.iter().sum::<f64>();
            report(&format!("conv eta{eta} shil a={a:.0e} f_inj={:.0}", 2.0*f), &pc, &g, &InjectionConfig::sine(a, 2.0*f), 2001, 150.0);
        }
    }
}
