//! The solver, energy function and QUBO conversion checked against small,
//! deliberately naive reimplementations.

use qlang::anneal::{
    brute_force_ground_states, ising_offset, ising_to_qubo, pair, qubo_to_ising, solve, Execution, IsingModel,
    SpinConfiguration,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn random_model(rng: &mut ChaCha8Rng, n: usize, grid: bool, constraints: bool) -> IsingModel {
    let coef = |rng: &mut ChaCha8Rng| {
        if grid {
            f64::from(rng.gen_range(-512..=512)) / 256.0
        } else {
            rng.gen_range(-2.0..=2.0)
        }
    };
    let names: Vec<String> = (0..n).map(|i| format!("s{i:02}")).collect();
    let mut m = IsingModel::default();
    for s in &names {
        m.h.insert(s.clone(), if rng.gen_bool(0.8) { coef(rng) } else { 0.0 });
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                m.j.insert(pair(&names[i], &names[j]), coef(rng));
            }
        }
    }
    if constraints && n >= 2 {
        for _ in 0..rng.gen_range(0..3) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            match rng.gen_range(0..3) {
                0 => {
                    m.pins.insert(names[a].clone(), rng.gen());
                }
                1 => {
                    m.chains.insert(pair(&names[a], &names[b]));
                }
                _ => {
                    m.antichains.insert(pair(&names[a], &names[b]));
                }
            }
        }
    }
    m
}

/// Every ±1 assignment over `names`, built by recursive doubling.
fn all_configs(names: &[String]) -> Vec<SpinConfiguration> {
    let mut out = vec![SpinConfiguration::new()];
    for s in names {
        let mut next = Vec::with_capacity(out.len() * 2);
        for c in out {
            for v in [-1i8, 1] {
                let mut c2 = c.clone();
                c2.insert(s.clone(), v);
                next.push(c2);
            }
        }
        out = next;
    }
    out
}

/// Double loop over the symbol list, looking coupling up both ways.
fn oracle_energy(m: &IsingModel, c: &SpinConfiguration) -> f64 {
    let names: Vec<&String> = m.h.keys().collect();
    let mut e = 0.0;
    for (i, a) in names.iter().enumerate() {
        let sa = f64::from(c[*a]);
        e += m.h[*a] * sa;
        for b in &names[i + 1..] {
            let j = m.j.get(&(a.to_string(), b.to_string())).or_else(|| m.j.get(&(b.to_string(), a.to_string())));
            if let Some(j) = j {
                e += j * sa * f64::from(c[*b]);
            }
        }
    }
    e
}

fn oracle_feasible(m: &IsingModel, c: &SpinConfiguration) -> bool {
    let up = |s: &str| c[s] > 0;
    m.pins.iter().all(|(s, v)| up(s) == *v)
        && m.chains.iter().all(|(a, b)| up(a) == up(b))
        && m.antichains.iter().all(|(a, b)| up(a) != up(b))
}

/// Returns (min energy, sorted ground states, feasible count) or `None` when
/// nothing is feasible.
fn oracle_ground(m: &IsingModel) -> Option<(f64, Vec<Vec<i8>>, u64)> {
    let names: Vec<String> = m.h.keys().cloned().collect();
    let feasible: Vec<(SpinConfiguration, f64)> = all_configs(&names)
        .into_iter()
        .filter(|c| oracle_feasible(m, c))
        .map(|c| {
            let e = oracle_energy(m, &c);
            (c, e)
        })
        .collect();
    let min = feasible.iter().map(|(_, e)| *e).reduce(f64::min)?;
    let mut states: Vec<Vec<i8>> = feasible
        .iter()
        .filter(|(_, e)| *e <= min + 1e-9)
        .map(|(c, _)| names.iter().map(|s| c[s]).collect())
        .collect();
    states.sort();
    Some((min, states, feasible.len() as u64))
}

#[test]
fn energy_matches_summation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let m = random_model(&mut rng, n, false, false);
        let names: Vec<String> = m.h.keys().cloned().collect();
        for _ in 0..32 {
            let c: SpinConfiguration = names.iter().map(|s| (s.clone(), if rng.gen() { 1 } else { -1 })).collect();
            let got = m.energy(&c).unwrap();
            assert!((got - oracle_energy(&m, &c)).abs() <= 1e-12);
        }
    }
}

#[test]
fn solver_matches_enumeration_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..100 {
        let n = rng.gen_range(1..=10);
        let m = random_model(&mut rng, n, false, round % 2 == 1);
        match (brute_force_ground_states(&m, 24), oracle_ground(&m)) {
            (Ok(r), Some((min, states, feasible))) => {
                assert!((r.min_energy - min).abs() <= 1e-9);
                let got: Vec<Vec<i8>> = r.configurations.iter().map(|c| c.values().copied().collect()).collect();
                assert_eq!(got, states);
                assert_eq!(r.feasible_count, feasible);
                for c in &r.configurations {
                    assert!(oracle_feasible(&m, c));
                    assert!((oracle_energy(&m, c) - r.min_energy).abs() <= 1e-9);
                }
            }
            (Err(d), None) => assert_eq!(d.code, "SEM312"),
            (got, want) => panic!("solver {got:?} vs oracle {want:?}"),
        }
    }
}

#[test]
fn three_spin_models_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let m = random_model(&mut rng, 3, true, true);
        let got = brute_force_ground_states(&m, 24).ok().map(|r| {
            (r.min_energy, r.configurations.iter().map(|c| c.values().copied().collect::<Vec<_>>()).collect::<Vec<_>>())
        });
        let want = oracle_ground(&m).map(|(e, s, _)| (e, s));
        assert_eq!(got, want);
    }
}

#[test]
fn sequential_and_parallel_agree_on_larger_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [15, 16, 18] {
        let m = random_model(&mut rng, n, true, true);
        let a = solve(&m, 24, Execution::Sequential);
        let b = solve(&m, 24, Execution::Parallel);
        assert_eq!(a, b);
    }
}

fn qubo_energy_of(m: &IsingModel, c: &SpinConfiguration) -> f64 {
    let q = ising_to_qubo(m);
    let x: BTreeMap<String, u8> = c.iter().map(|(s, v)| (s.clone(), ((v + 1) / 2) as u8)).collect();
    q.energy(&x)
}

#[test]
fn qubo_energies_match_for_every_configuration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..50 {
        let n = rng.gen_range(1..=8);
        let m = random_model(&mut rng, n, round % 2 == 0, false);
        let names: Vec<String> = m.h.keys().cloned().collect();
        for c in all_configs(&names) {
            let (ei, eq) = (m.energy(&c).unwrap(), qubo_energy_of(&m, &c));
            assert!((ei - eq).abs() <= 1e-12, "{ei} vs {eq}");
        }
    }
}

#[test]
fn qubo_round_trip_is_exact_on_dyadic_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let m = random_model(&mut rng, n, true, false);
        let q = ising_to_qubo(&m);
        let back = qubo_to_ising(&q);
        assert_eq!(back.h, m.h);
        assert_eq!(back.j, m.j);
        assert_eq!(ising_offset(&q), 0.0);
    }
}

#[test]
fn qubo_round_trip_is_close_on_continuous_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let m = random_model(&mut rng, n, false, false);
        let back = qubo_to_ising(&ising_to_qubo(&m));
        assert_eq!(back.j, m.j);
        for (s, h) in &m.h {
            assert!((back.h[s] - h).abs() <= 1e-12);
        }
    }
}

#[test]
fn qubo_argmin_corresponds_to_ising_ground_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let n = rng.gen_range(1..=6);
        let m = random_model(&mut rng, n, true, false);
        let ground = brute_force_ground_states(&m, 24).unwrap();
        let names: Vec<String> = m.h.keys().cloned().collect();
        let energies: Vec<(SpinConfiguration, f64)> =
            all_configs(&names).into_iter().map(|c| (c.clone(), qubo_energy_of(&m, &c))).collect();
        let min = energies.iter().map(|(_, e)| *e).fold(f64::INFINITY, f64::min);
        let argmin: Vec<SpinConfiguration> =
            energies.into_iter().filter(|(_, e)| *e <= min + 1e-9).map(|(c, _)| c).collect();
        assert_eq!(argmin, ground.configurations);
        assert!((min - ground.min_energy).abs() <= 1e-9);
    }
}
