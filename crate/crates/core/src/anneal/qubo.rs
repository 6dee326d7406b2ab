use super::ising::{pair, IsingModel, Pair};
use std::collections::BTreeMap;

/// Quadratic model over binary variables `x ∈ {0, 1}` with a constant term.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuboModel {
    pub linear: BTreeMap<String, f64>,
    pub quadratic: BTreeMap<Pair, f64>,
    pub offset: f64,
}

impl QuboModel {
    /// `offset + Σ linear_i x_i + Σ quad_ij x_i x_j`. Missing variables read
    /// as 0.
    pub fn energy(&self, x: &BTreeMap<String, u8>) -> f64 {
        let get = |s: &String| f64::from(x.get(s).copied().unwrap_or(0));
        let mut e = self.offset;
        for (s, c) in &self.linear {
            e += c * get(s);
        }
        for ((a, b), c) in &self.quadratic {
            e += c * get(a) * get(b);
        }
        e
    }
}

/// Substitutes `σ = 2x − 1`. Constraints are not carried over.
pub fn ising_to_qubo(model: &IsingModel) -> QuboModel {
    let mut q = QuboModel::default();
    for (s, h) in &model.h {
        *q.linear.entry(s.clone()).or_insert(0.0) += 2.0 * h;
        q.offset -= h;
    }
    for ((a, b), j) in &model.j {
        q.quadratic.insert(pair(a, b), 4.0 * j);
        *q.linear.entry(a.clone()).or_insert(0.0) -= 2.0 * j;
        *q.linear.entry(b.clone()).or_insert(0.0) -= 2.0 * j;
        q.offset += j;
    }
    q
}

/// Substitutes `x = (σ + 1) / 2`. The constant this produces is dropped,
/// since an Ising model has no offset; see [`ising_offset`].
pub fn qubo_to_ising(q: &QuboModel) -> IsingModel {
    let mut m = IsingModel::default();
    for (s, c) in &q.linear {
        *m.h.entry(s.clone()).or_insert(0.0) += c / 2.0;
    }
    for ((a, b), c) in &q.quadratic {
        m.j.insert(pair(a, b), c / 4.0);
        *m.h.entry(a.clone()).or_insert(0.0) += c / 4.0;
        *m.h.entry(b.clone()).or_insert(0.0) += c / 4.0;
    }
    m
}

/// Constant `c` such that `E_qubo(x) = E_ising(σ) + c` for the model
/// returned by [`qubo_to_ising`].
pub fn ising_offset(q: &QuboModel) -> f64 {
    q.offset + q.linear.values().sum::<f64>() / 2.0 + q.quadratic.values().sum::<f64>() / 4.0
}
