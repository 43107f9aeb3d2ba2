use proptest::prelude::*;
use reduced_eos::numerics::sound_speed_fd_oracle;
use reduced_eos::{DensityRange, GasLaw, GasParams, MixtureSpec, Mna, Mvo1, NobleAbel, Virial};

fn record(name: &str, law: GasLaw, r: f64) -> GasParams {
    GasParams {
        name: name.into(),
        r,
        law,
        q: 0.0,
        e_s_eff: 5e6,
        t_flame: 3500.0,
        gamma_cal: None,
        rho_range: DensityRange { lo: 100.0, hi: 150.0 },
    }
}

fn vo1_set() -> Vec<GasParams> {
    vec![
        record("NC-13", GasLaw::Virial { a: 0.002359, cv: 1640.5 }, 322.0),
        record("RDX", GasLaw::Virial { a: 0.002249, cv: 1644.1 }, 330.2),
        record("NG", GasLaw::Virial { a: 0.002185, cv: 1576.0 }, 270.6),
        record("HMX", GasLaw::Virial { a: 0.002237, cv: 1645.2 }, 330.6),
    ]
}

fn na_set() -> Vec<GasParams> {
    vec![
        record("NC-13", GasLaw::NobleAbel { covolume: 0.001484, cv: 1637.1 }, 338.9),
        record("RDX", GasLaw::NobleAbel { covolume: 0.001440, cv: 1640.9 }, 346.2),
        record("NG", GasLaw::NobleAbel { covolume: 0.001413, cv: 1573.1 }, 283.2),
        record("HMX", GasLaw::NobleAbel { covolume: 0.001435, cv: 1642.0 }, 346.5),
    ]
}

fn binary(a: &GasParams, b: &GasParams, y: f64) -> MixtureSpec {
    MixtureSpec::new(vec![(a.clone(), y), (b.clone(), 1.0 - y)], true).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn mixture_sound_speeds_match_oracle() {
    let vo1 = vo1_set();
    let na = na_set();
    for i in 1..=9 {
        let y = 0.1 * i as f64;
        let mvo1 = Mvo1::new(&binary(&vo1[0], &vo1[2], y)).unwrap();
        let mna = Mna::new(&binary(&na[0], &na[2], y)).unwrap();
        for rho in [50.0, 200.0, 400.0, 600.0] {
            for t in [1500.0, 3000.0, 4500.0] {
                let p = mvo1.pressure(rho, t).unwrap().p;
                let o = sound_speed_fd_oracle(&mvo1, rho, t).unwrap();
                assert!(rel(mvo1.sound_speed(p, t).unwrap().powi(2), o.c2_gibbs) < 1e-5);
                assert!(o.relative_disagreement() < 1e-6);

                let p = mna.pressure_vt(1.0 / rho, t).unwrap();
                let o = sound_speed_fd_oracle(&mna, rho, t).unwrap();
                assert!(rel(mna.sound_speed(p, 1.0 / rho).unwrap().powi(2), o.c2_gibbs) < 1e-5);
            }
        }
    }
}

#[test]
fn mvo1_bracket_contains_root_on_grid() {
    let set = vo1_set();
    for i in 0..4 {
        for j in 0..4 {
            for y in [0.0, 0.1, 0.5, 0.9, 1.0] {
                let mix = Mvo1::new(&binary(&set[i], &set[j], y)).unwrap();
                for rho in [50.0, 300.0, 600.0] {
                    for t in [1500.0, 4500.0] {
                        let sol = mix.pressure(rho, t).unwrap();
                        let (lo, hi) = mix.pressure_bracket(rho, t);
                        assert!(sol.p >= lo && sol.p <= hi);
                        assert!(sol.residual <= 1e-12);
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn identical_components_collapse(y in 0.0f64..1.0, rho in 50.0f64..600.0, t in 1500.0f64..4500.0, k in 0usize..4) {
        let vo1 = &vo1_set()[k];
        let kernel = Virial::try_from(vo1).unwrap();
        let mix = Mvo1::new(&binary(vo1, vo1, y)).unwrap();
        prop_assert!(rel(mix.pressure(rho, t).unwrap().p, kernel.pressure(rho, t).unwrap()) < 1e-12);

        let na = &na_set()[k];
        let kernel = NobleAbel::try_from(na).unwrap();
        let mna = Mna::new(&binary(na, na, y)).unwrap();
        prop_assert!(rel(mna.pressure_vt(1.0 / rho, t).unwrap(), kernel.pressure_vt(1.0 / rho, t).unwrap()) < 1e-12);
    }

    #[test]
    fn mvo1_volume_closure(y in 0.0f64..1.0, rho in 50.0f64..600.0, t in 1500.0f64..4500.0) {
        let set = vo1_set();
        let mix = Mvo1::new(&binary(&set[1], &set[2], y)).unwrap();
        let sol = mix.pressure(rho, t).unwrap();
        let v = y / sol.component_densities[0] + (1.0 - y) / sol.component_densities[1];
        prop_assert!(rel(v, 1.0 / rho) < 1e-12);
        prop_assert!(sol.iterations <= 30);
    }

    #[test]
    fn mvo1_pressure_between_components(y in 0.0f64..1.0, rho in 50.0f64..600.0, t in 1500.0f64..4500.0) {
        let set = vo1_set();
        let p: Vec<f64> = [&set[0], &set[2]]
            .iter()
            .map(|g| Virial::try_from(*g).unwrap().pressure(rho, t).unwrap())
            .collect();
        let mix = Mvo1::new(&binary(&set[0], &set[2], y)).unwrap();
        let pm = mix.pressure(rho, t).unwrap().p;
        let tol = 1e-12 * pm;
        prop_assert!(pm >= p[0].min(p[1]) - tol && pm <= p[0].max(p[1]) + tol);
    }
}
