//! Scratch instance inspection (not part of the deliverable).
use oscim::*;

fn main() {
    let g = gen_random(32, 0.2, 111).unwrap();
    let degs: Vec<usize> = (0..32).map(|i| g.degree(i)).collect();
    println!("degrees: {degs:?}");
    println!("min {} max {}", degs.iter().min().unwrap(), degs.iter().max().unwrap());

    let p = OscillatorParams {
        kind: DeviceKind::Eao,
        v_sat: 5.0, alpha: 0.5, r_f: 100e3, c_l: 5.3e-9, r_d: 100.0, r_fet: 5e3, v_knee: 3.5,
    };
    let spec = CouplingSpec::trimmed(g.clone(), 1e-9).unwrap();
    let t_est = loaded_period_estimate(&p, &spec);
    let cfg = SimConfig::for_period(t_est, 150.0, 5000, p.upper_threshold());
    let tr = run(&p, &spec, &InjectionConfig::off(), &cfg).unwrap();
    let mut rows: Vec<(usize, usize, f64)> = Vec::new();
    for osc in 0..32 {
        let times = tr.flip_times(osc, FlipDirection::Rising);
        let f = if times.len() >= 12 {
            10.0 / (times[times.len() - 1] - times[times.len() - 11])
        } else {
            f64::NAN
        };
        rows.push((osc, g.degree(osc), f));
    }
    rows.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    for (osc, d, f) in &rows {
        println!("osc {osc:2} deg {d:2} f {f:8.1}");
    }
}
