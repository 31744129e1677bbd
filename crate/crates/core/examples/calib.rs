//! Scratch calibration probe (not part of the deliverable).
use oscim::analysis::{bipartition_residual, extract_phases, phases_to_spins};
use oscim::*;

fn params(kind: DeviceKind, scale: f64) -> OscillatorParams {
    // scale=1: spec draft defaults; scale=10: R_F/10, C_L*10 etc.
    OscillatorParams {
        kind,
        v_sat: 5.0,
        alpha: 0.5,
        r_f: 100e3 / scale,
        c_l: 5.3e-9 * scale,
        r_d: 100.0,
        r_fet: 10e3 / scale,
        v_knee: 4.0,
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("all");
    let n_cycles: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(50.0);
    let a_inj: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(20e-6);
    let scale: f64 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let finj_mode = args.get(5).map(|s| s.as_str()).unwrap_or("single");

    let g = Graph::cycle(4).unwrap();
    let c_c = 1e-9;

    let conv = params(DeviceKind::Conventional, scale);
    let eao = params(DeviceKind::Eao, scale);
    let cfg1 = SimConfig::for_period(conv.estimate_period(), 20.0, 0, conv.upper_threshold());
    let conv_run = simulate_single(&conv, &cfg1).unwrap();
    let cfg2 = SimConfig::for_period(eao.estimate_period(), 20.0, 0, eao.upper_threshold());
    let eao_run = simulate_single(&eao, &cfg2).unwrap();
    println!(
        "single conv f = {:.1} Hz; eao f = {:.1} Hz, fast frac {:?}",
        conv_run.frequency,
        eao_run.frequency,
        eao_run.fast_fall_fraction()
    );

    // probe coupled conv network frequency without injection
    let probe_cfg = SimConfig::for_period(conv.estimate_period(), 30.0, 12345, conv.upper_threshold());
    let spec = CouplingSpec::new(g.clone(), c_c).unwrap();
    let probe = run(&conv, &spec, &InjectionConfig::off(), &probe_cfg).unwrap();
    let times = probe.flip_times(0, FlipDirection::Rising);
    let np: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let tnet = np[np.len() / 2..].iter().sum::<f64>() / (np.len() - np.len() / 2) as f64;
    println!("coupled conv network f = {:.1} Hz", 1.0 / tnet);

    let f_inj = match finj_mode {
        "net" => 2.0 / tnet,
        _ => 2.0 * conv_run.frequency,
    };
    println!("f_inj = {f_inj:.1} Hz (mode {finj_mode}), a_inj = {a_inj:.2e} A");

    let machines: Vec<(&str, &OscillatorParams, InjectionConfig)> = vec![
        ("conv-noinj", &conv, InjectionConfig::off()),
        ("conv-shil", &conv, InjectionConfig::sine(a_inj, f_inj)),
        ("eao-noinj", &eao, InjectionConfig::off()),
    ];

    for (name, p, inj) in machines {
        if mode != "all" && mode != name {
            continue;
        }
        let mut results = Vec::new();
        for seed in 0..10u64 {
            let spec = CouplingSpec::new(g.clone(), c_c).unwrap();
            let cfg = SimConfig::for_period(p.estimate_period(), n_cycles, seed, p.upper_threshold());
            match run(p, &spec, &inj, &cfg) {
                Ok(tr) => match extract_phases(&tr, 10) {
                    Ok(ph) => {
                        let res = bipartition_residual(&ph);
                        let spins = phases_to_spins(&ph);
                        let cut = cut_value(&g, &spins).unwrap();
                        let degs: Vec<f64> =
                            ph.as_slice().iter().map(|x| x.to_degrees().round()).collect();
                        println!("{name} seed {seed}: res {res:6.1} cut {cut} phases {degs:?}");
                        results.push((res, cut));
                    }
                    Err(e) => println!("{name} seed {seed}: phases error: {e}"),
                },
                Err(e) => println!("{name} seed {seed}: run error: {e}"),
            }
        }
        let n_ok = results.len();
        let n_bip = results.iter().filter(|(r, _)| *r < 15.0).count();
        let n_cut4 = results.iter().filter(|(r, c)| *r < 15.0 && *c == 4).count();
        println!("== {name}: {n_ok} ok, {n_bip} bipartite(<15deg), {n_cut4} bip+cut4\n");
    }
}
