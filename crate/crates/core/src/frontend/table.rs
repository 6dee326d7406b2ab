use super::cursor::Cursor;

/// Literal-text to token-kind lookup with longest-match semantics.
#[derive(Debug, Clone)]
pub struct LexemeTable<K> {
    // sorted by descending literal length so the first hit is the longest
    entries: Vec<(&'static str, K)>,
}

impl<K: Copy> LexemeTable<K> {
    /// Panics if two entries share the same literal or a literal is empty;
    /// tables are static program data.
    pub fn new(entries: &[(&'static str, K)]) -> Self {
        let mut sorted: Vec<(&'static str, K)> = entries.to_vec();
        for (i, (lit, _)) in sorted.iter().enumerate() {
            assert!(!lit.is_empty(), "empty lexeme in table");
            assert!(
                sorted[..i].iter().all(|(other, _)| other != lit),
                "duplicate lexeme {lit:?} in table"
            );
        }
        sorted.sort_by_key(|e| std::cmp::Reverse(e.0.len()));
        LexemeTable { entries: sorted }
    }

    /// Longest entry that prefixes the cursor's remaining input, with its
    /// byte length. The cursor is not advanced.
    pub fn match_longest(&self, cursor: &Cursor<'_>) -> Option<(K, usize)> {
        self.match_str(cursor.rest())
    }

    pub fn match_str(&self, rest: &str) -> Option<(K, usize)> {
        self.entries
            .iter()
            .find(|(lit, _)| rest.starts_with(lit))
            .map(|(lit, kind)| (*kind, lit.len()))
    }

    pub fn lookup(&self, text: &str) -> Option<K> {
        self.entries.iter().find(|(lit, _)| *lit == text).map(|(_, k)| *k)
    }

    pub fn literals(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|(lit, _)| *lit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    enum K {
        Times,
        Power,
        Comma,
    }

    fn table() -> LexemeTable<K> {
        LexemeTable::new(&[("*", K::Times), (",", K::Comma), ("**", K::Power)])
    }

    #[test]
    fn longest_wins() {
        let c = Cursor::new("**2");
        assert_eq!(table().match_longest(&c), Some((K::Power, 2)));
        assert_eq!(c.offset(), 0);
    }

    #[test]
    fn single_char() {
        assert_eq!(table().match_longest(&Cursor::new(",x")), Some((K::Comma, 1)));
        assert_eq!(table().match_longest(&Cursor::new("*x")), Some((K::Times, 1)));
    }

    #[test]
    fn absent_entry() {
        assert_eq!(table().match_longest(&Cursor::new("@")), None);
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn duplicates_rejected() {
        LexemeTable::new(&[("*", K::Times), ("*", K::Power)]);
    }
}
