use super::elaborate::{Resolved, ResolvedStatement};
use crate::frontend::{Diagnostic, Result, Span};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Unordered symbol pair stored with the smaller name first.
pub type Pair = (String, String);

pub fn pair(a: &str, b: &str) -> Pair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Spin assignment: symbol to -1 or +1.
pub type SpinConfiguration = BTreeMap<String, i8>;

/// A 2-local Ising model with hard constraints.
///
/// Equivalent symbols are merged before anything is recorded, so `h`, `j`,
/// `pins`, `chains` and `antichains` mention only canonical names (the
/// lexicographically least member of each class). `h` lists every canonical
/// symbol, including those with a zero field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IsingModel {
    pub h: BTreeMap<String, f64>,
    pub j: BTreeMap<Pair, f64>,
    pub pins: BTreeMap<String, bool>,
    pub chains: BTreeSet<Pair>,
    pub antichains: BTreeSet<Pair>,
    /// Equivalences as written, after ordering each pair.
    pub equiv: BTreeSet<Pair>,
    /// Non-canonical symbol to its canonical representative.
    pub aliases: BTreeMap<String, String>,
}

struct UnionFind {
    parent: BTreeMap<String, String>,
}

impl UnionFind {
    fn find(&mut self, s: &str) -> String {
        let mut root = s.to_string();
        while let Some(p) = self.parent.get(&root) {
            if *p == root {
                break;
            }
            root = p.clone();
        }
        let mut cur = s.to_string();
        while cur != root {
            let next = self.parent.insert(cur.clone(), root.clone()).unwrap_or_else(|| root.clone());
            cur = next;
        }
        root
    }

    fn union(&mut self, a: &str, b: &str) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, drop) = if ra <= rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(keep.clone(), keep.clone());
        self.parent.insert(drop, keep);
    }
}

/// Builds the Ising model. Repeated weights and couplings add up; relations
/// and pins become hard constraints. Assertions are ignored here.
pub fn flatten_to_ising(statements: &[ResolvedStatement]) -> Result<IsingModel> {
    let mut uf = UnionFind { parent: BTreeMap::new() };
    let mut model = IsingModel::default();
    for s in statements {
        if let Resolved::Equiv { a, b } = &s.kind {
            uf.union(a, b);
            model.equiv.insert(pair(a, b));
        }
    }
    let mut pin_spans: BTreeMap<String, Span> = BTreeMap::new();
    let mut canon = |name: &str, model: &mut IsingModel| {
        let c = uf.find(name);
        if c != name {
            model.aliases.insert(name.to_string(), c.clone());
        }
        model.h.entry(c.clone()).or_insert(0.0);
        c
    };
    for s in statements {
        match &s.kind {
            Resolved::Weight { sym, value } => {
                let c = canon(sym, &mut model);
                *model.h.get_mut(&c).expect("just inserted") += value;
            }
            Resolved::Coupling { a, b, value } => {
                let (ca, cb) = (canon(a, &mut model), canon(b, &mut model));
                if ca == cb {
                    let how = if a == b { String::new() } else { format!(" ('{a}' and '{b}' are equivalent)") };
                    return Err(Diagnostic::error("SEM308", format!("'{ca}' is coupled to itself{how}"), s.span));
                }
                *model.j.entry(pair(&ca, &cb)).or_insert(0.0) += value;
            }
            Resolved::Chain { a, b } => {
                let (ca, cb) = (canon(a, &mut model), canon(b, &mut model));
                if ca != cb {
                    model.chains.insert(pair(&ca, &cb));
                }
            }
            Resolved::AntiChain { a, b } => {
                let (ca, cb) = (canon(a, &mut model), canon(b, &mut model));
                model.antichains.insert(pair(&ca, &cb));
            }
            Resolved::Equiv { a, b } => {
                canon(a, &mut model);
                canon(b, &mut model);
            }
            Resolved::Pin { sym, value } => {
                let c = canon(sym, &mut model);
                match model.pins.get(&c) {
                    Some(prev) if prev != value => {
                        let first = pin_spans[&c];
                        return Err(Diagnostic::error(
                            "SEM309",
                            format!("'{sym}' is pinned to {value} but was pinned to {prev} at {}", first.start),
                            s.span,
                        ));
                    }
                    Some(_) => {}
                    None => {
                        model.pins.insert(c.clone(), *value);
                        pin_spans.insert(c, s.span);
                    }
                }
            }
            Resolved::Assert { .. } => {}
        }
    }
    Ok(model)
}

impl IsingModel {
    pub fn num_spins(&self) -> usize {
        self.h.len()
    }

    /// Canonical name for `sym`.
    pub fn canonical<'a>(&'a self, sym: &'a str) -> &'a str {
        self.aliases.get(sym).map_or(sym, String::as_str)
    }

    /// `Σ h_i σ_i + Σ_{i<j} J_ij σ_i σ_j`. `config` must give ±1 for every
    /// symbol in `h`; other keys are ignored.
    pub fn energy(&self, config: &SpinConfiguration) -> Result<f64> {
        let spin = |s: &str| match config.get(s) {
            Some(v @ (-1 | 1)) => Ok(f64::from(*v)),
            Some(v) => Err(Diagnostic::error("SEM310", format!("spin of '{s}' is {v}, not -1 or +1"), Span::default())),
            None => Err(Diagnostic::error("SEM310", format!("configuration has no spin for '{s}'"), Span::default())),
        };
        let mut e = 0.0;
        for (s, h) in &self.h {
            e += h * spin(s)?;
        }
        for ((a, b), j) in &self.j {
            e += j * spin(a)? * spin(b)?;
        }
        Ok(e)
    }

    /// Whether `config` honours every pin, chain and anti-chain.
    pub fn satisfies(&self, config: &SpinConfiguration) -> bool {
        let up = |s: &String| config.get(s).copied() == Some(1);
        self.pins.iter().all(|(s, v)| up(s) == *v)
            && self.chains.iter().all(|(a, b)| up(a) == up(b))
            && self.antichains.iter().all(|(a, b)| up(a) != up(b))
    }

    /// Extends a configuration over canonical symbols to aliased names too.
    pub fn with_aliases(&self, config: &SpinConfiguration) -> SpinConfiguration {
        let mut out = config.clone();
        for (alias, c) in &self.aliases {
            if let Some(v) = config.get(c) {
                out.insert(alias.clone(), *v);
            }
        }
        out
    }

    /// Deterministic JSON with keys and pairs sorted; integral values are
    /// written without a fractional part.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"h\":{");
        for (i, (s, v)) in self.h.iter().enumerate() {
            let sep = if i > 0 { "," } else { "" };
            let _ = write!(out, "{sep}{}:{}", json_str(s), json_num(*v));
        }
        out.push_str("},\"J\":[");
        for (i, ((a, b), v)) in self.j.iter().enumerate() {
            let sep = if i > 0 { "," } else { "" };
            let _ = write!(out, "{sep}[{},{},{}]", json_str(a), json_str(b), json_num(*v));
        }
        out.push_str("],\"pins\":{");
        for (i, (s, v)) in self.pins.iter().enumerate() {
            let sep = if i > 0 { "," } else { "" };
            let _ = write!(out, "{sep}{}:{v}", json_str(s));
        }
        out.push('}');
        for (key, set) in [("chains", &self.chains), ("antichains", &self.antichains), ("equiv", &self.equiv)] {
            let _ = write!(out, ",\"{key}\":[");
            for (i, (a, b)) in set.iter().enumerate() {
                let sep = if i > 0 { "," } else { "" };
                let _ = write!(out, "{sep}[{},{}]", json_str(a), json_str(b));
            }
            out.push(']');
        }
        out.push('}');
        out
    }
}

pub(crate) fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Integral values print as integers (`-1`), others in shortest round-trip
/// form.
pub(crate) fn json_num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 9.007_199_254_740_992e15 {
        format!("{}", v as i64)
    } else {
        serde_json::to_string(&v).expect("finite floats serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anneal::compile_source;

    fn model(src: &str) -> Result<IsingModel> {
        compile_source(src).map(|c| c.model)
    }

    #[test]
    fn accumulates() {
        let m = model("a 1\na 0.5\n").unwrap();
        assert_eq!(m.h["a"], 1.5);
        let m = model("a b -1\nb a -1\n").unwrap();
        assert_eq!(m.j[&pair("a", "b")], -2.0);
        assert_eq!(m.h.len(), 2);
    }

    #[test]
    fn aliases_merge_to_least_name() {
        let m = model("c <-> b\nc 1\nb 2\nc d -1\n").unwrap();
        assert_eq!(m.h.keys().collect::<Vec<_>>(), vec!["b", "d"]);
        assert_eq!(m.h["b"], 3.0);
        assert_eq!(m.j[&pair("b", "d")], -1.0);
        assert_eq!(m.aliases["c"], "b");
    }

    #[test]
    fn errors() {
        assert_eq!(model("a a 1\n").unwrap_err().code, "SEM308");
        assert_eq!(model("a <-> b\na b 1\n").unwrap_err().code, "SEM308");
        assert_eq!(model("a <-> b\na := true\nb := false\n").unwrap_err().code, "SEM309");
    }

    #[test]
    fn energy_examples() {
        let m = model("a 1\n").unwrap();
        assert_eq!(m.energy(&[("a".to_string(), -1)].into()).unwrap(), -1.0);
        let m = model("a b -1\n").unwrap();
        assert_eq!(m.energy(&[("a".to_string(), 1), ("b".to_string(), 1)].into()).unwrap(), -1.0);
        assert_eq!(m.energy(&[("a".to_string(), 1)].into()).unwrap_err().code, "SEM310");
    }

    #[test]
    fn json_layout() {
        let m = model("b 1\na b -0.5\na := true\na = c\nd /= c\ne <-> f\n").unwrap();
        assert_eq!(
            m.to_json(),
            r#"{"h":{"a":0,"b":1,"c":0,"d":0,"e":0},"J":[["a","b",-0.5]],"pins":{"a":true},"chains":[["a","c"]],"antichains":[["c","d"]],"equiv":[["e","f"]]}"#
        );
    }
}
