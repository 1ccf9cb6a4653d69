//! Word parsing: inline strings are single-character symbols; files hold
//! whitespace- or comma-separated tokens (contiguous text allowed for
//! single-character alphabets).

use std::path::Path;

use anagram_core::words::{Alphabet, Word};

pub fn word_from_inline(text: &str) -> Result<Word, String> {
    Word::from_chars(text).map_err(|e| e.to_string())
}

pub fn word_from_tokens(text: &str) -> Result<Word, String> {
    let tokens: Vec<&str> = text
        .split(|ch: char| ch.is_whitespace() || ch == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() <= 1 {
        // Contiguous text: each character is a symbol.
        return word_from_inline(tokens.first().copied().unwrap_or(""));
    }
    let mut distinct: Vec<&str> = tokens.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let alphabet = Alphabet::new(distinct.iter().map(|s| s.to_string()).collect())
        .map_err(|e| e.to_string())?;
    let letters = tokens
        .iter()
        .map(|t| distinct.binary_search(t).unwrap() as u32)
        .collect();
    Word::new(alphabet, letters).map_err(|e| e.to_string())
}

pub fn word_from_file(path: &Path) -> Result<Word, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    word_from_tokens(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_tokens() {
        assert_eq!(word_from_inline("aab").unwrap().letters(), &[0, 0, 1]);
        assert_eq!(word_from_tokens("x y x").unwrap().letters(), &[0, 1, 0]);
        assert_eq!(word_from_tokens("red,blue,red").unwrap().len(), 3);
        assert_eq!(word_from_tokens("abc").unwrap().len(), 3);
    }
}
