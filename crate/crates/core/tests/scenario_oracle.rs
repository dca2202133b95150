//! Scenario matrices recomputed by expanding every output mode as a real
//! linear combination of the input modes `(e, s, v, vac, v_α, v_β)`.

use nalgebra::{DMatrix, Matrix2};

use thermokey::scenarios::{
    build_basic, build_full, build_thermal_channel, ModeLabel, ScenarioKind, ScenarioParams,
};

const NU: [f64; 5] = [1.0, 2.0, 10.0, 100.0, 1040.0];
const ETA: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const V: [f64; 5] = [1.0, 2.0, 10.0, 100.0, 500.0];

const IN_E: usize = 0;
const IN_S: usize = 1;
const IN_V: usize = 2;
const IN_VAC: usize = 3;
const IN_VA: usize = 4;
const IN_VB: usize = 5;

fn input_block(p: &ScenarioParams, k: usize, l: usize) -> Matrix2<f64> {
    let z = Matrix2::new(1.0, 0.0, 0.0, -1.0);
    let zeta = (p.nu * p.nu - 1.0).sqrt();
    match (k, l) {
        (IN_E, IN_E) | (IN_S, IN_S) => Matrix2::identity() * p.nu,
        (IN_E, IN_S) | (IN_S, IN_E) => z * zeta,
        (IN_V, IN_V) => Matrix2::identity() * p.v_th,
        (IN_VAC, IN_VAC) => Matrix2::identity(),
        (IN_VA, IN_VA) => Matrix2::identity() * p.v_alpha,
        (IN_VB, IN_VB) => Matrix2::identity() * p.v_beta,
        _ => Matrix2::zeros(),
    }
}

/// Output modes as coefficient rows over the six inputs.
fn modes(p: &ScenarioParams, kind: ScenarioKind) -> Vec<[f64; 6]> {
    let (t, r) = (p.eta_th.sqrt(), (1.0 - p.eta_th).sqrt());
    let (ta, ra) = (p.eta_ab.sqrt(), (1.0 - p.eta_ab).sqrt());
    let e = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    match kind {
        ScenarioKind::Basic => {
            let b = [0.0, ta, 0.0, ra, 0.0, 0.0];
            let a = [0.0, -ra, 0.0, ta, 0.0, 0.0];
            vec![e, b, a]
        }
        _ => {
            // s' = t s + r v, v' = -r s + t v
            let v = [0.0, -r, t, 0.0, 0.0, 0.0];
            let b = [0.0, ta * t, ta * r, ra, 0.0, 0.0];
            let a = [0.0, -ra * t, -ra * r, ta, 0.0, 0.0];
            if kind == ScenarioKind::ThermalChannel {
                return vec![e, v, b, a];
            }
            let (tal, ral) = (p.eta_th_a.sqrt(), (1.0 - p.eta_th_a).sqrt());
            let (tbe, rbe) = (p.eta_th_b.sqrt(), (1.0 - p.eta_th_b).sqrt());
            let mix = |m: [f64; 6], c: f64, anc: usize, d: f64| {
                let mut o = m.map(|x| x * c);
                o[anc] += d;
                o
            };
            let a_out = mix(a, tal, IN_VA, ral);
            let va_out = mix(a, -ral, IN_VA, tal);
            let b_out = mix(b, tbe, IN_VB, rbe);
            let vb_out = mix(b, -rbe, IN_VB, tbe);
            vec![e, v, b_out, a_out, va_out, vb_out]
        }
    }
}

fn oracle(p: &ScenarioParams, kind: ScenarioKind) -> DMatrix<f64> {
    let rows = modes(p, kind);
    let n = rows.len();
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for (i, ci) in rows.iter().enumerate() {
        for (j, cj) in rows.iter().enumerate() {
            let mut block = Matrix2::zeros();
            for (k, &a) in ci.iter().enumerate() {
                for (l, &b) in cj.iter().enumerate() {
                    if a != 0.0 && b != 0.0 {
                        block += input_block(p, k, l) * (a * b);
                    }
                }
            }
            g.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(&block);
        }
    }
    g
}

fn grid() -> impl Iterator<Item = ScenarioParams> {
    NU.into_iter().flat_map(|nu| {
        ETA.into_iter().flat_map(move |eta_ab| {
            ETA.into_iter().flat_map(move |eta_th| {
                V.into_iter().map(move |v_th| ScenarioParams {
                    nu,
                    eta_ab,
                    eta_th,
                    v_th,
                    ..Default::default()
                })
            })
        })
    })
}

fn check(kind: ScenarioKind, p: &ScenarioParams) {
    let built = kind.build(p).unwrap();
    let expect = oracle(p, kind);
    let diff = (built.state().matrix() - &expect).amax();
    assert!(diff <= 1e-12 * p.nu.max(p.v_th), "{kind} {p:?}: {diff}");
}

#[test]
fn basic_matches_mode_expansion() {
    for p in grid().filter(|p| p.eta_th == 1.0 && p.v_th == 1.0) {
        check(ScenarioKind::Basic, &p);
    }
}

#[test]
fn thermal_channel_matches_mode_expansion() {
    for p in grid() {
        check(ScenarioKind::ThermalChannel, &p);
    }
}

#[test]
fn full_matches_mode_expansion() {
    for (k, p) in grid().enumerate() {
        let p = ScenarioParams {
            eta_th_a: ETA[k % 5],
            v_alpha: V[(k / 5) % 5],
            eta_th_b: ETA[(k / 3) % 5],
            v_beta: V[(k / 7) % 5],
            ..p
        };
        check(ScenarioKind::Full, &p);
    }
}

#[test]
fn mode_labels_follow_topology() {
    use ModeLabel::*;
    let p = ScenarioParams::default();
    assert_eq!(build_basic(&p).unwrap().labels(), &[E, B, A]);
    assert_eq!(build_thermal_channel(&p).unwrap().labels(), &[E, V, B, A]);
    assert_eq!(build_full(&p).unwrap().labels(), &[E, V, B, A, Va, Vb]);
}

#[test]
fn full_with_clear_legal_channels_reduces_to_thermal_channel() {
    for p in grid() {
        let inner = build_thermal_channel(&p).unwrap();
        let outer = build_full(&p).unwrap();
        let inner_m = inner.state().matrix();
        let outer_m = outer.state().reduce(&[0, 1, 2, 3]).unwrap();
        assert!((inner_m - outer_m.matrix()).amax() < 1e-12 * p.nu.max(p.v_th));
    }
}

#[test]
fn grid_states_are_physical() {
    for p in grid() {
        for kind in [ScenarioKind::Basic, ScenarioKind::ThermalChannel, ScenarioKind::Full] {
            let p = ScenarioParams {
                eta_th_a: 0.3,
                v_alpha: 10.0,
                eta_th_b: 0.6,
                v_beta: 2.0,
                ..p
            };
            assert!(kind.build(&p).unwrap().state().validate_physicality().is_pass());
        }
    }
}

#[test]
fn discord_increases_with_channel_noise() {
    for eta_th in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let mut prev = f64::NEG_INFINITY;
        for v_th in V {
            let p = ScenarioParams {
                nu: 2.0,
                eta_ab: 0.5,
                eta_th,
                v_th,
                ..Default::default()
            };
            let d = build_thermal_channel(&p).unwrap().analyze().unwrap().discord;
            assert!(d > prev, "eta_th={eta_th} v_th={v_th}: {d} <= {prev}");
            prev = d;
        }
    }
}

#[test]
fn conditional_information_grows_with_strong_channel_noise() {
    for eta_th in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let cmi = |v_th| {
            let p = ScenarioParams {
                nu: 2.0,
                eta_ab: 0.5,
                eta_th,
                v_th,
                ..Default::default()
            };
            build_thermal_channel(&p).unwrap().analyze().unwrap().cmi
        };
        assert!(cmi(10.0) <= cmi(100.0) && cmi(100.0) <= cmi(500.0), "eta_th={eta_th}");
    }
}

#[test]
fn conditional_information_dips_at_weak_channel_noise() {
    let cmi = |v_th| {
        let p = ScenarioParams {
            nu: 2.0,
            eta_ab: 0.5,
            eta_th: 0.5,
            v_th,
            ..Default::default()
        };
        build_thermal_channel(&p).unwrap().analyze().unwrap().cmi
    };
    assert!((cmi(1.0) - 0.0297).abs() < 1e-3);
    assert!(cmi(2.0) < cmi(1.0));
}

#[test]
fn basic_reference_values() {
    // ν, CMI, discord at η_ab = 0.5
    let table = [
        (2.0, 0.16992500144231237, 0.32321),
        (10.0, 1.5969, 1.2107),
        (100.0, 4.6726, 2.7765),
        (1040.0, 8.0251, 4.4550),
    ];
    for (nu, cmi, discord) in table {
        let r = build_basic(&ScenarioParams { nu, eta_ab: 0.5, ..Default::default() })
            .unwrap()
            .analyze()
            .unwrap();
        assert!((r.cmi - cmi).abs() < 1e-4, "nu={nu}: {}", r.cmi);
        assert!((r.discord - discord).abs() < 1e-4, "nu={nu}: {}", r.discord);
    }
}
