/// How a symbol name is interpreted once interpolation is done.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolRole {
    /// A plain spin such as `a` or `inst.out`.
    Qubit,
    /// A helper spin whose last dotted segment starts with `_`.
    Ancilliary,
    /// One element of an indexed family: `q[3]`.
    QubitArray,
    /// A bit range `r[hi:lo]`. Pinning it to an integer pins each bit.
    Register,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumSymbol {
    pub role: SymbolRole,
    /// Name without the bracketed suffix.
    pub base: String,
    pub index: Option<i64>,
    pub bits: Option<(i64, i64)>,
}

impl QuantumSymbol {
    pub fn classify(name: &str) -> QuantumSymbol {
        let plain = |role| QuantumSymbol { role, base: name.to_string(), index: None, bits: None };
        if let Some(inner) = name.strip_suffix(']') {
            if let Some((base, idx)) = inner.rsplit_once('[') {
                let base = base.to_string();
                if let Some((hi, lo)) = idx.split_once(':') {
                    if let (Ok(hi), Ok(lo)) = (hi.parse(), lo.parse()) {
                        return QuantumSymbol { role: SymbolRole::Register, base, index: None, bits: Some((hi, lo)) };
                    }
                } else if let Ok(i) = idx.parse() {
                    return QuantumSymbol { role: SymbolRole::QubitArray, base, index: Some(i), bits: None };
                }
            }
        }
        let last = name.rsplit('.').next().unwrap_or(name);
        if last.starts_with('_') {
            plain(SymbolRole::Ancilliary)
        } else {
            plain(SymbolRole::Qubit)
        }
    }

    /// Names of the individual bits of a register, most significant first.
    pub fn bit_names(&self) -> Vec<String> {
        match (self.role, self.bits) {
            (SymbolRole::Register, Some((hi, lo))) => {
                let idx: Vec<i64> = if hi >= lo { (lo..=hi).rev().collect() } else { (hi..=lo).collect() };
                idx.into_iter().map(|i| format!("{}[{i}]", self.base)).collect()
            }
            _ => vec![self.base.clone()],
        }
    }
}
