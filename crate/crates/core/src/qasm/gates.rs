/// Parameter and qubit arity of a gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSignature {
    pub name: String,
    pub param_count: usize,
    pub qubit_count: usize,
}

/// Built-in gates, following the usual `qelib1.inc` arities. `reset` is
/// listed so it can be arity-checked, but parses as a statement.
pub const BUILTIN_GATES: [(&str, usize, usize); 19] = [
    ("x", 0, 1),
    ("y", 0, 1),
    ("z", 0, 1),
    ("u1", 1, 1),
    ("u2", 2, 1),
    ("u3", 3, 1),
    ("s", 0, 1),
    ("sdg", 0, 1),
    ("h", 0, 1),
    ("tdg", 0, 1),
    ("cx", 0, 2),
    ("cy", 0, 2),
    ("cz", 0, 2),
    ("t", 0, 1),
    ("ccx", 0, 3),
    ("reset", 0, 1),
    ("cu1", 1, 2),
    ("ccy", 0, 3),
    ("ccz", 0, 3),
];

pub fn builtin(name: &str) -> Option<GateSignature> {
    BUILTIN_GATES.iter().find(|(n, ..)| *n == name).map(|&(n, p, q)| GateSignature {
        name: n.to_string(),
        param_count: p,
        qubit_count: q,
    })
}

/// Functions accepted in parameter expressions; each takes one argument.
pub const FUNCTIONS: [&str; 6] = ["sin", "cos", "tan", "exp", "ln", "sqrt"];
