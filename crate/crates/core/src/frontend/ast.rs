//! Uniform syntax-tree representation shared by every frontend, with its
//! JSON and indented-text encodings.
//!
//! The JSON form is fixed: each node is an object with exactly the keys
//! `kind`, `span`, `attrs` and `children`, in that order. Attribute keys are
//! sorted. Reals always carry a fraction or exponent so they read back as
//! reals; integers never do.

use super::span::Span;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

/// Attribute value. Arrays and matrices are modelled as child nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Text(String),
    Int(i64),
    Real(f64),
    Bool(bool),
}

impl From<&str> for Scalar {
    fn from(v: &str) -> Self {
        Scalar::Text(v.to_string())
    }
}

impl From<String> for Scalar {
    fn from(v: String) -> Self {
        Scalar::Text(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Int(v)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Real(v)
    }
}

impl From<bool> for Scalar {
    fn from(v: bool) -> Self {
        Scalar::Bool(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Text(s) => write!(f, "{s:?}"),
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Real(v) => write!(f, "{v:?}"),
            Scalar::Bool(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Text(v) => s.serialize_str(v),
            Scalar::Int(v) => s.serialize_i64(*v),
            Scalar::Real(v) => s.serialize_f64(*v),
            Scalar::Bool(v) => s.serialize_bool(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a string, number or boolean")
            }

            fn visit_bool<E: de::Error>(self, v: bool) -> Result<Scalar, E> {
                Ok(Scalar::Bool(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::Int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                i64::try_from(v).map(Scalar::Int).map_err(|_| E::custom("integer out of range"))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
                Ok(Scalar::Real(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                Ok(Scalar::Text(v.to_string()))
            }
        }

        d.deserialize_any(ScalarVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AstNode {
    pub kind: String,
    pub span: Span,
    pub attrs: BTreeMap<String, Scalar>,
    pub children: Vec<AstNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AstFormat {
    Json,
    Pretty,
}

impl AstNode {
    pub fn new(kind: impl Into<String>, span: Span) -> Self {
        AstNode { kind: kind.into(), span, attrs: BTreeMap::new(), children: Vec::new() }
    }

    pub fn attr(mut self, name: &str, value: impl Into<Scalar>) -> Self {
        self.attrs.insert(name.to_string(), value.into());
        self
    }

    pub fn child(mut self, node: AstNode) -> Self {
        self.children.push(node);
        self
    }

    pub fn children(mut self, nodes: impl IntoIterator<Item = AstNode>) -> Self {
        self.children.extend(nodes);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.attrs.get(name)
    }

    /// Structural equality that disregards every span in both trees.
    pub fn eq_ignoring_spans(&self, other: &AstNode) -> bool {
        self.kind == other.kind
            && self.attrs == other.attrs
            && self.children.len() == other.children.len()
            && self.children.iter().zip(&other.children).all(|(a, b)| a.eq_ignoring_spans(b))
    }

    /// Every child span lies within its parent's span, recursively.
    pub fn spans_nested(&self) -> bool {
        self.children.iter().all(|c| self.span.contains(&c.span) && c.spans_nested())
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(AstNode::node_count).sum::<usize>()
    }

    pub fn serialize(&self, format: AstFormat) -> String {
        match format {
            AstFormat::Json => self.to_json(),
            AstFormat::Pretty => self.to_pretty(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("AST attributes are JSON-representable")
    }

    pub fn from_json(text: &str) -> Result<AstNode, serde_json::Error> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let node = AstNode::deserialize(&mut de)?;
        de.end()?;
        Ok(node)
    }

    /// Indented tree, one node per line: `Kind key=value ... [span]`.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        self.write_pretty(&mut out, 0);
        out
    }

    fn write_pretty(&self, out: &mut String, depth: usize) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&self.kind);
        for (k, v) in &self.attrs {
            let _ = write!(out, " {k}={v}");
        }
        let _ = writeln!(out, " [{}]", self.span);
        for c in &self.children {
            c.write_pretty(out, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::span::SourcePosition;
    use proptest::prelude::*;

    fn sp(a: usize, b: usize) -> Span {
        Span::new(
            SourcePosition { line: 1, col: a as u32 + 1, off: a },
            SourcePosition { line: 1, col: b as u32 + 1, off: b },
        )
    }

    #[test]
    fn leaf_schema() {
        let n = AstNode::new("Int", sp(0, 1)).attr("value", 3i64);
        assert_eq!(
            n.to_json(),
            r#"{"kind":"Int","span":{"start":{"line":1,"col":1,"off":0},"end":{"line":1,"col":2,"off":1}},"attrs":{"value":3},"children":[]}"#
        );
    }

    #[test]
    fn attrs_sorted_and_children_ordered() {
        let n = AstNode::new("P", sp(0, 4))
            .attr("zeta", true)
            .attr("alpha", "x")
            .attr("mid", 0.5)
            .child(AstNode::new("A", sp(0, 1)))
            .child(AstNode::new("B", sp(2, 3)));
        let json = n.to_json();
        let a = json.find("\"alpha\"").unwrap();
        let m = json.find("\"mid\"").unwrap();
        let z = json.find("\"zeta\"").unwrap();
        assert!(a < m && m < z);
        assert!(json.find("\"A\"").unwrap() < json.find("\"B\"").unwrap());
        assert!(json.contains("\"mid\":0.5"));
    }

    #[test]
    fn reals_keep_their_type() {
        let n = AstNode::new("Real", sp(0, 1)).attr("value", 3.0);
        assert!(n.to_json().contains("\"value\":3.0"));
        let back = AstNode::from_json(&n.to_json()).unwrap();
        assert_eq!(back.get("value"), Some(&Scalar::Real(3.0)));
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"kind":"X","span":{"start":{"line":1,"col":1,"off":0},"end":{"line":1,"col":1,"off":0}},"attrs":{},"children":[],"extra":1}"#;
        assert!(AstNode::from_json(bad).is_err());
    }

    #[test]
    fn pretty_is_indented() {
        let n = AstNode::new("P", sp(0, 2)).child(AstNode::new("C", sp(0, 1)).attr("name", "q"));
        assert_eq!(n.to_pretty(), "P [1:1-1:3]\n  C name=\"q\" [1:1-1:2]\n");
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            "[a-z\"\\\\ é]{0,6}".prop_map(Scalar::Text),
            any::<i64>().prop_map(Scalar::Int),
            any::<f64>().prop_filter("finite", |v| v.is_finite()).prop_map(Scalar::Real),
            any::<bool>().prop_map(Scalar::Bool),
        ]
    }

    fn arb_node() -> impl Strategy<Value = AstNode> {
        let leaf = ("[A-Z][a-z]{0,5}", prop::collection::btree_map("[a-z]{1,4}", arb_scalar(), 0..4))
            .prop_map(|(kind, attrs)| AstNode { kind, span: sp(0, 3), attrs, children: vec![] });
        leaf.prop_recursive(4, 32, 4, |inner| {
            (inner.clone(), prop::collection::vec(inner, 0..4)).prop_map(|(mut n, kids)| {
                n.children = kids;
                n
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(node in arb_node()) {
            let json = node.to_json();
            let back = AstNode::from_json(&json).unwrap();
            prop_assert_eq!(&back, &node);
            prop_assert_eq!(back.to_json(), json);
        }
    }
}
