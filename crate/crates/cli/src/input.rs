//! Word and generator-list parsing for the command line.
//!
//! A word is a run of alphabet letters, lowercase for a generator and
//! uppercase for its inverse. The alphabet string maps characters to
//! generator indices by position, so `--alphabet xyz` reads `xYzy` as
//! generators 1, 2⁻¹, 3, 2. Generator lists are comma- or
//! whitespace-separated words. The ambient rank is the highest generator
//! mentioned anywhere in the invocation unless `--rank` raises it.

use stallings::words::{Letter, Word};

pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(spec: &str) -> Result<Alphabet, String> {
        let chars: Vec<char> = spec.chars().collect();
        if chars.is_empty() || chars.len() > 26 {
            return Err(format!("alphabet must have 1..=26 letters, got {}", chars.len()));
        }
        for (i, c) in chars.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(format!("alphabet letter {c:?} at position {i} is not a lowercase ascii letter"));
            }
            if chars[..i].contains(c) {
                return Err(format!("alphabet letter {c:?} repeats"));
            }
        }
        Ok(Alphabet { chars })
    }

    fn index_of(&self, lower: char) -> Option<u32> {
        self.chars.iter().position(|&c| c == lower).map(|i| i as u32 + 1)
    }

    /// Scan one word token into (generator, sign) pairs; errors carry the
    /// 1-based column of the offending character.
    fn scan(&self, token: &str) -> Result<Vec<(u32, bool)>, String> {
        let mut letters = Vec::with_capacity(token.len());
        for (i, ch) in token.chars().enumerate() {
            let positive = ch.is_ascii_lowercase();
            let lower = ch.to_ascii_lowercase();
            match self.index_of(lower) {
                Some(idx) if ch.is_ascii_alphabetic() => letters.push((idx, positive)),
                _ => {
                    return Err(format!(
                        "invalid character {ch:?} at column {} of word {token:?}",
                        i + 1
                    ))
                }
            }
        }
        Ok(letters)
    }

    pub fn word_to_text(&self, w: &Word) -> String {
        let mut s = String::with_capacity(w.len());
        for l in w.letters() {
            let c = self.chars[(l.generator() - 1) as usize];
            s.push(if l.is_positive() { c } else { c.to_ascii_uppercase() });
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn label_char(&self, label: u32) -> char {
        self.chars[(label - 1) as usize]
    }

    pub fn letter_text(&self, l: Letter) -> char {
        let c = self.chars[(l.generator() - 1) as usize];
        if l.is_positive() {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }
}

/// Split a generator-list argument on commas and whitespace.
pub fn split_list(arg: &str) -> Vec<&str> {
    arg.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parse a batch of word tokens under one common rank: the highest generator
/// used anywhere, raised to `--rank` when given.
pub fn parse_batch(
    alphabet: &Alphabet,
    rank_flag: Option<u32>,
    token_groups: &[Vec<&str>],
) -> Result<(u32, Vec<Vec<Word>>), String> {
    let mut scanned: Vec<Vec<Vec<(u32, bool)>>> = Vec::new();
    let mut max_index = 1;
    for group in token_groups {
        let mut g = Vec::new();
        for token in group {
            let letters = alphabet.scan(token)?;
            for &(idx, _) in &letters {
                max_index = max_index.max(idx);
            }
            g.push(letters);
        }
        scanned.push(g);
    }
    let rank = match rank_flag {
        Some(r) if r < max_index => {
            return Err(format!(
                "--rank {r} is below the highest generator used ({max_index})"
            ))
        }
        Some(r) => r,
        None => max_index,
    };
    let mut out = Vec::new();
    for group in scanned {
        let mut words = Vec::new();
        for letters in group {
            let word = Word::reduce(rank, letters.into_iter().map(|(i, p)| Letter::new(i, p)))
                .map_err(|e| e.to_string())?;
            words.push(word);
        }
        out.push(words);
    }
    Ok((rank, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_alphabet_round_trip() {
        let al = Alphabet::new("abcdefghijklmnopqrstuvwxyz").unwrap();
        let (rank, groups) = parse_batch(&al, None, &[vec!["aBa", "AAb"]]).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(al.word_to_text(&groups[0][0]), "aBa");
    }

    #[test]
    fn xyz_alphabet_maps_to_first_generators() {
        let al = Alphabet::new("xyz").unwrap();
        let (rank, groups) = parse_batch(&al, None, &[vec!["xxYzzy"]]).unwrap();
        assert_eq!(rank, 3);
        let std = Alphabet::new("abc").unwrap();
        assert_eq!(std.word_to_text(&groups[0][0]), "aaBccb");
    }

    #[test]
    fn column_is_reported() {
        let al = Alphabet::new("ab").unwrap();
        let err = parse_batch(&al, None, &[vec!["ab?c"]]).unwrap_err();
        assert!(err.contains("column 3"), "{err}");
    }

    #[test]
    fn rank_flag_raises_but_never_lowers() {
        let al = Alphabet::new("abcdefghijklmnopqrstuvwxyz").unwrap();
        let (rank, _) = parse_batch(&al, Some(3), &[vec!["ab"]]).unwrap();
        assert_eq!(rank, 3);
        assert!(parse_batch(&al, Some(1), &[vec!["ab"]]).is_err());
    }

    #[test]
    fn list_splitting() {
        assert_eq!(split_list("aBa,AAb"), vec!["aBa", "AAb"]);
        assert_eq!(split_list(" aBa  AAb "), vec!["aBa", "AAb"]);
        assert_eq!(split_list("aBa, AAb"), vec!["aBa", "AAb"]);
    }
}
