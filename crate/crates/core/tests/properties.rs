use proptest::collection::{btree_map, vec};
use proptest::prelude::*;
use qlang::anneal::{
    brute_force_ground_states, compile_source, expand_macros, solve, Execution, IsingModel, SpinConfiguration,
};
use qlang::qmasm::parse_qmasm_string;
use qlang::Language;

const SYMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn weight_line() -> impl Strategy<Value = String> {
    let coef = (-16i32..=16).prop_map(|k| f64::from(k) / 4.0);
    prop_oneof![
        (0..6usize, coef.clone()).prop_map(|(i, c)| format!("{} {c:?}\n", SYMS[i])),
        (0..6usize, 1..6usize, coef).prop_map(|(i, d, c)| format!("{} {} {c:?}\n", SYMS[i], SYMS[(i + d) % 6])),
    ]
}

fn constraint_line() -> impl Strategy<Value = String> {
    prop_oneof![
        (0..6usize, any::<bool>()).prop_map(|(i, v)| format!("{} := {v}\n", SYMS[i])),
        (0..6usize, 1..6usize).prop_map(|(i, d)| format!("{} = {}\n", SYMS[i], SYMS[(i + d) % 6])),
        (0..6usize, 1..6usize).prop_map(|(i, d)| format!("{} /= {}\n", SYMS[i], SYMS[(i + d) % 6])),
    ]
}

fn program(max: usize) -> impl Strategy<Value = String> {
    vec(weight_line(), 1..max).prop_map(|ls| ls.concat())
}

fn spins(m: &IsingModel, bits: u64) -> SpinConfiguration {
    m.h.keys().enumerate().map(|(i, s)| (s.clone(), if bits >> i & 1 == 1 { 1 } else { -1 })).collect()
}

proptest! {
    #[test]
    fn global_flip_preserves_energy_without_fields(src in program(12), bits: u64) {
        let mut m = compile_source(&src).unwrap().model;
        m.h.values_mut().for_each(|h| *h = 0.0);
        let c = spins(&m, bits);
        let flipped: SpinConfiguration = c.iter().map(|(s, v)| (s.clone(), -v)).collect();
        prop_assert_eq!(m.energy(&c).unwrap(), m.energy(&flipped).unwrap());
    }

    #[test]
    fn flattening_is_additive(x in program(10), y in program(10)) {
        let both = compile_source(&format!("{x}{y}")).unwrap().model;
        let (mx, my) = (compile_source(&x).unwrap().model, compile_source(&y).unwrap().model);
        let mut h = mx.h.clone();
        for (s, v) in &my.h {
            *h.entry(s.clone()).or_insert(0.0) += v;
        }
        let mut j = mx.j.clone();
        for (p, v) in &my.j {
            *j.entry(p.clone()).or_insert(0.0) += v;
        }
        prop_assert_eq!(both.h, h);
        prop_assert_eq!(both.j, j);
    }

    #[test]
    fn ground_states_satisfy_constraints(src in program(10), cons in vec(constraint_line(), 0..4)) {
        let Ok(c) = compile_source(&format!("{src}{}", cons.concat())) else { return Ok(()) };
        match brute_force_ground_states(&c.model, 24) {
            Ok(r) => {
                prop_assert!(!r.configurations.is_empty());
                for cfg in &r.configurations {
                    prop_assert!(c.model.satisfies(cfg));
                    prop_assert!((c.model.energy(cfg).unwrap() - r.min_energy).abs() <= 1e-9);
                }
                let mut sorted = r.configurations.clone();
                sorted.sort_by_key(|c| c.values().copied().collect::<Vec<_>>());
                prop_assert_eq!(sorted, r.configurations);
            }
            Err(d) => prop_assert_eq!(d.code, "SEM312"),
        }
    }

    #[test]
    fn execution_strategy_does_not_change_results(src in program(20)) {
        let m = compile_source(&src).unwrap().model;
        prop_assert_eq!(solve(&m, 24, Execution::Sequential), solve(&m, 24, Execution::Parallel));
    }

    #[test]
    fn macro_expansion_emits_k_times_b(k in 1usize..8, b in 1usize..8) {
        let body: String = (0..b).map(|i| format!("s{i} 1\n")).collect();
        let inst: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
        let src = format!("!begin_macro m\n{body}!end_macro m\n!use_macro m {}\n", inst.join(" "));
        prop_assert_eq!(expand_macros(parse_qmasm_string(&src).unwrap()).unwrap().len(), k * b);
    }

    #[test]
    fn lexing_never_loses_bytes(src in "[ -~\t\n]{0,80}", which in 0usize..3) {
        let lang = Language::ALL[which];
        if let Ok(text) = lang.reconstruct(&src) {
            prop_assert_eq!(text, src);
        }
    }

    #[test]
    fn diagnostics_point_inside_the_input(src in "[ -~\n]{0,80}", which in 0usize..3) {
        let lang = Language::ALL[which];
        if let Err(d) = lang.parse(&src) {
            prop_assert!(d.span.start.off <= d.span.end.off && d.span.end.off <= src.len());
            let rendered = d.render(&src);
            prop_assert!(rendered.contains(d.code));
        }
    }

    #[test]
    fn energy_agrees_with_config_map(h in btree_map("[a-e]", -2.0f64..2.0, 1..5), bits: u64) {
        let m = IsingModel { h, ..Default::default() };
        let c = spins(&m, bits);
        let want: f64 = m.h.iter().map(|(s, v)| v * f64::from(c[s])).sum();
        prop_assert!((m.energy(&c).unwrap() - want).abs() <= 1e-12);
    }
}
