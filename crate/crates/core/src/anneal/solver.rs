use super::ising::{json_num, json_str, IsingModel, SpinConfiguration};
use crate::frontend::{Diagnostic, Result, Span};

pub const DEFAULT_MAX_SPINS: usize = 24;

/// Two energies closer than this are the same level.
pub const ENERGY_TOLERANCE: f64 = 1e-9;

/// Bits enumerated inside one work unit; the bits above choose the unit.
const CHUNK_BITS: usize = 14;

/// Slack for candidates tracked with incrementally updated energies; they are
/// recomputed exactly before the final cut.
const CANDIDATE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub min_energy: f64,
    /// Sorted lexicographically by spin vector in symbol order, -1 before +1.
    pub configurations: Vec<SpinConfiguration>,
    /// Configurations that satisfy every hard constraint.
    pub feasible_count: u64,
}

impl GroundStateResult {
    /// `{"energy":E,"states":[...],"feasible":n}`. `model` supplies aliases
    /// so that every written symbol appears in each state.
    pub fn to_json(&self, model: &IsingModel) -> String {
        let states: Vec<String> = self
            .configurations
            .iter()
            .map(|c| {
                let fields: Vec<String> =
                    model.with_aliases(c).iter().map(|(s, v)| format!("{}:{v}", json_str(s))).collect();
                format!("{{{}}}", fields.join(","))
            })
            .collect();
        format!(
            "{{\"energy\":{},\"states\":[{}],\"feasible\":{}}}",
            json_num(self.min_energy),
            states.join(","),
            self.feasible_count
        )
    }
}

/// Exhaustively finds every minimum-energy configuration that satisfies
/// the model's pins, chains and anti-chains.
pub fn brute_force_ground_states(model: &IsingModel, max_spins: usize) -> Result<GroundStateResult> {
    solve(model, max_spins, Execution::default())
}

/// Compiled form of the model over spin indices. Spin `i` (in symbol order)
/// lives at bit `n - 1 - i`, so increasing masks are lexicographic order.
struct Dense {
    n: usize,
    h: Vec<f64>,
    /// Neighbours of each spin with coupling strengths.
    adj: Vec<Vec<(usize, f64)>>,
    pairs: Vec<(usize, usize, f64)>,
    pin_mask: u64,
    pin_value: u64,
    chains: Vec<(u64, u64)>,
    antichains: Vec<(u64, u64)>,
}

impl Dense {
    fn new(model: &IsingModel) -> Dense {
        let names: Vec<&String> = model.h.keys().collect();
        let n = names.len();
        let index = |s: &String| names.binary_search(&s).expect("constraint symbols appear in h");
        let bit = |s: &String| 1u64 << (n - 1 - index(s));
        let h = model.h.values().copied().collect();
        let mut adj = vec![Vec::new(); n];
        let mut pairs = Vec::new();
        for ((a, b), &j) in &model.j {
            let (ia, ib) = (index(a), index(b));
            adj[ia].push((ib, j));
            adj[ib].push((ia, j));
            pairs.push((ia, ib, j));
        }
        let (mut pin_mask, mut pin_value) = (0, 0);
        for (s, &v) in &model.pins {
            pin_mask |= bit(s);
            if v {
                pin_value |= bit(s);
            }
        }
        let chains = model.chains.iter().map(|(a, b)| (bit(a), bit(b))).collect();
        let antichains = model.antichains.iter().map(|(a, b)| (bit(a), bit(b))).collect();
        Dense { n, h, adj, pairs, pin_mask, pin_value, chains, antichains }
    }

    fn spin(&self, mask: u64, i: usize) -> f64 {
        if mask >> (self.n - 1 - i) & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    fn energy(&self, mask: u64) -> f64 {
        let mut e = 0.0;
        for (i, h) in self.h.iter().enumerate() {
            e += h * self.spin(mask, i);
        }
        for &(a, b, j) in &self.pairs {
            e += j * self.spin(mask, a) * self.spin(mask, b);
        }
        e
    }

    fn feasible(&self, mask: u64) -> bool {
        mask & self.pin_mask == self.pin_value
            && self.chains.iter().all(|&(a, b)| (mask & a == 0) == (mask & b == 0))
            && self.antichains.iter().all(|&(a, b)| (mask & a == 0) != (mask & b == 0))
    }

    fn configuration(&self, names: &[&String], mask: u64) -> SpinConfiguration {
        names.iter().enumerate().map(|(i, s)| ((*s).clone(), self.spin(mask, i) as i8)).collect()
    }
}

#[derive(Default)]
struct ChunkResult {
    best: f64,
    candidates: Vec<(u64, f64)>,
    feasible: u64,
}

impl ChunkResult {
    fn offer(&mut self, mask: u64, e: f64) {
        self.feasible += 1;
        if self.feasible == 1 || e < self.best {
            self.best = e;
            let cut = e + CANDIDATE_SLACK;
            self.candidates.retain(|&(_, ce)| ce <= cut);
        }
        if e <= self.best + CANDIDATE_SLACK {
            self.candidates.push((mask, e));
        }
    }
}

/// Walks the low `low_bits` bits in Gray-code order with `high` fixed,
/// updating the energy one flip at a time.
fn scan_chunk(d: &Dense, high: u64, low_bits: usize) -> ChunkResult {
    let mut out = ChunkResult::default();
    let mut mask = high << low_bits;
    let mut spins: Vec<f64> = (0..d.n).map(|i| d.spin(mask, i)).collect();
    let mut e = d.energy(mask);
    let total = 1u64 << low_bits;
    for k in 0..total {
        if k > 0 {
            let b = k.trailing_zeros() as usize;
            let i = d.n - 1 - b;
            let field = d.h[i] + d.adj[i].iter().map(|&(o, j)| j * spins[o]).sum::<f64>();
            e -= 2.0 * spins[i] * field;
            spins[i] = -spins[i];
            mask ^= 1 << b;
        }
        if d.feasible(mask) {
            out.offer(mask, e);
        }
    }
    out
}

/// Like [`brute_force_ground_states`] with an explicit execution strategy.
/// Output does not depend on the strategy or the number of workers.
pub fn solve(model: &IsingModel, max_spins: usize, execution: Execution) -> Result<GroundStateResult> {
    let n = model.num_spins();
    if n > max_spins || n > 63 {
        return Err(Diagnostic::error(
            "SEM311",
            format!("{n} spins exceed the limit of {}", max_spins.min(63)),
            Span::default(),
        ));
    }
    let d = Dense::new(model);
    let low_bits = n.min(CHUNK_BITS);
    let chunks = 1u64 << (n - low_bits);
    let results: Vec<ChunkResult> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..chunks).into_par_iter().map(|c| scan_chunk(&d, c, low_bits)).collect()
        }
        _ => (0..chunks).map(|c| scan_chunk(&d, c, low_bits)).collect(),
    };
    let feasible_count = results.iter().map(|r| r.feasible).sum();
    if feasible_count == 0 {
        return Err(Diagnostic::error("SEM312", "no configuration satisfies the constraints", Span::default()));
    }
    let best = results.iter().filter(|r| r.feasible > 0).map(|r| r.best).fold(f64::INFINITY, f64::min);
    let mut exact: Vec<(u64, f64)> = results
        .iter()
        .flat_map(|r| &r.candidates)
        .filter(|&&(_, e)| e <= best + CANDIDATE_SLACK)
        .map(|&(m, _)| (m, d.energy(m)))
        .collect();
    let min_energy = exact.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min);
    exact.retain(|&(_, e)| e <= min_energy + ENERGY_TOLERANCE);
    exact.sort_unstable_by_key(|&(m, _)| m);
    let names: Vec<&String> = model.h.keys().collect();
    let configurations = exact.iter().map(|&(m, _)| d.configuration(&names, m)).collect();
    Ok(GroundStateResult { min_energy, configurations, feasible_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anneal::compile_source;

    fn ground(src: &str) -> Result<GroundStateResult> {
        brute_force_ground_states(&compile_source(src)?.model, DEFAULT_MAX_SPINS)
    }

    fn states(r: &GroundStateResult) -> Vec<Vec<i8>> {
        r.configurations.iter().map(|c| c.values().copied().collect()).collect()
    }

    #[test]
    fn ferromagnet() {
        let r = ground("a b -1\n").unwrap();
        assert_eq!(r.min_energy, -1.0);
        assert_eq!(states(&r), vec![vec![-1, -1], vec![1, 1]]);
        assert_eq!(r.feasible_count, 4);
        let r = ground("a b -1\na := true\n").unwrap();
        assert_eq!(states(&r), vec![vec![1, 1]]);
        let r = ground("a b -1\na /= b\n").unwrap();
        assert_eq!(r.min_energy, 1.0);
        assert_eq!(states(&r), vec![vec![-1, 1], vec![1, -1]]);
    }

    #[test]
    fn errors() {
        assert_eq!(ground("a 1\na := true\na /= b\nb := true\n").unwrap_err().code, "SEM312");
        let m = compile_source("a 1\nb 1\nc 1\n").unwrap().model;
        assert_eq!(brute_force_ground_states(&m, 2).unwrap_err().code, "SEM311");
    }

    #[test]
    fn chunked_matches_sequential() {
        let mut src = String::new();
        for i in 0..17 {
            src.push_str(&format!("s{i} s{} {}\n", (i + 1 + i % 3) % 17, if i % 3 == 0 { 1 } else { -1 }));
            src.push_str(&format!("s{i} {}\n", (i % 4) as f64 * 0.25 - 0.375));
        }
        let m = compile_source(&src).unwrap().model;
        let a = solve(&m, 24, Execution::Sequential).unwrap();
        let b = solve(&m, 24, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_expands_aliases() {
        let c = compile_source("a b -1\nb <-> c\na := true\n").unwrap();
        let r = brute_force_ground_states(&c.model, 24).unwrap();
        assert_eq!(r.to_json(&c.model), r#"{"energy":-1,"states":[{"a":1,"b":1,"c":1}],"feasible":2}"#);
    }
}
