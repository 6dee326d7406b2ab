use std::ops::RangeInclusive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeCount {
    Fixed(usize),
    /// Determined by the array argument's dimension.
    Variable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpClass {
    Gate,
    Preparation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSignature {
    pub name: &'static str,
    pub class: OpClass,
    pub arg_counts: RangeInclusive<usize>,
    pub mode_count: ModeCount,
}

impl OperatorSignature {
    /// Rows of the array argument per mode, for variable-mode operators.
    /// Interferometers take an N x N unitary; Gaussian operators take a
    /// 2N x 2N symplectic or covariance matrix.
    pub fn rows_per_mode(&self) -> Option<usize> {
        match (self.mode_count, self.name) {
            (ModeCount::Variable, "Interferometer") => Some(1),
            (ModeCount::Variable, _) => Some(2),
            _ => None,
        }
    }
}

const fn sig(
    name: &'static str,
    class: OpClass,
    min_args: usize,
    max_args: usize,
    mode_count: ModeCount,
) -> OperatorSignature {
    OperatorSignature { name, class, arg_counts: min_args..=max_args, mode_count }
}

use ModeCount::{Fixed, Variable};
use OpClass::{Gate, Preparation};

pub const OPERATORS: [OperatorSignature; 24] = [
    sig("Xgate", Gate, 1, 1, Fixed(1)),
    sig("Zgate", Gate, 1, 1, Fixed(1)),
    sig("Dgate", Gate, 1, 2, Fixed(1)),
    sig("Sgate", Gate, 1, 2, Fixed(1)),
    sig("Rgate", Gate, 1, 1, Fixed(1)),
    sig("Pgate", Gate, 1, 1, Fixed(1)),
    sig("Vgate", Gate, 1, 1, Fixed(1)),
    sig("Kgate", Gate, 1, 1, Fixed(1)),
    sig("Fouriergate", Gate, 0, 0, Fixed(1)),
    sig("CXgate", Gate, 1, 1, Fixed(2)),
    sig("CZgate", Gate, 1, 1, Fixed(2)),
    sig("CKgate", Gate, 1, 1, Fixed(2)),
    sig("BSgate", Gate, 2, 2, Fixed(2)),
    sig("S2gate", Gate, 1, 2, Fixed(2)),
    sig("Interferometer", Gate, 1, 1, Variable),
    sig("GaussianTransform", Gate, 1, 1, Variable),
    sig("Gaussian", Gate, 1, 1, Variable),
    sig("Fock", Preparation, 1, 1, Fixed(1)),
    sig("Coherent", Preparation, 1, 2, Fixed(1)),
    sig("Squeezed", Preparation, 1, 2, Fixed(1)),
    sig("Vac", Preparation, 0, 0, Fixed(1)),
    sig("Thermal", Preparation, 1, 1, Fixed(1)),
    sig("DisplacedSqueezed", Preparation, 2, 4, Fixed(1)),
    sig("Catstate", Preparation, 1, 2, Fixed(1)),
];

pub fn lookup(name: &str) -> Option<&'static OperatorSignature> {
    OPERATORS.iter().find(|s| s.name == name)
}
