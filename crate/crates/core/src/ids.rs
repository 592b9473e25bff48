use std::fmt;
use std::str::FromStr;

use crate::error::IdError;
use crate::pos::PartOfSpeech;

/// A synset, identified by its part of speech and byte offset in the data file.
///
/// Ordered by `(pos letter, offset)`, which is also the order of its text form
/// `n#02084442`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SynsetId {
    pub pos: PartOfSpeech,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(pos: PartOfSpeech, offset: u32) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{:08}", self.pos.letter(), self.offset)
    }
}

impl FromStr for SynsetId {
    type Err = IdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IdError::Synset(s.to_string());
        let (p, off) = s.split_once('#').ok_or_else(bad)?;
        let mut chars = p.chars();
        let pos = match (chars.next(), chars.next()) {
            (Some(c), None) => PartOfSpeech::from_letter(c).ok_or_else(bad)?,
            _ => return Err(bad()),
        };
        if off.len() != 8 || !off.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(SynsetId::new(pos, off.parse().map_err(|_| bad())?))
    }
}

/// A WordNet sense key, `lemma%ss_type:lex_filenum:lex_id:head_word:head_id`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SenseKey {
    text: String,
    split: usize,
}

impl SenseKey {
    /// Assembles a key from its parts. `head` is only meaningful for satellites.
    pub fn build(lemma: &str, pos: PartOfSpeech, lex_filenum: u8, lex_id: u8, head: Option<(&str, u8)>) -> SenseKey {
        let (hw, hid) = match head {
            Some((w, id)) => (w.to_string(), format!("{id:02}")),
            None => (String::new(), String::new()),
        };
        let text = format!("{}%{}:{:02}:{:02}:{}:{}", lemma, pos.sense_key_digit(), lex_filenum, lex_id, hw, hid);
        SenseKey { split: lemma.len(), text }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn lemma(&self) -> &str {
        &self.text[..self.split]
    }

    pub fn pos(&self) -> PartOfSpeech {
        let d = self.text.as_bytes()[self.split + 1] - b'0';
        PartOfSpeech::from_sense_key_digit(d).expect("validated on construction")
    }
}

impl fmt::Display for SenseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for SenseKey {
    type Err = IdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IdError::SenseKey(s.to_string());
        let split = s.rfind('%').ok_or_else(bad)?;
        let lemma = &s[..split];
        if lemma.is_empty() || lemma.chars().any(|c| c.is_uppercase() || c.is_whitespace()) {
            return Err(bad());
        }
        let fields: Vec<&str> = s[split + 1..].split(':').collect();
        if fields.len() != 5 {
            return Err(bad());
        }
        let digits = |f: &str, n: usize| f.len() == n && f.bytes().all(|b| b.is_ascii_digit());
        if !digits(fields[0], 1) || !digits(fields[1], 2) || !digits(fields[2], 2) {
            return Err(bad());
        }
        let pos = PartOfSpeech::from_sense_key_digit(fields[0].as_bytes()[0] - b'0').ok_or_else(bad)?;
        let satellite_ok = if pos == PartOfSpeech::AdjectiveSatellite {
            !fields[3].is_empty() && digits(fields[4], 2)
        } else {
            fields[3].is_empty() && fields[4].is_empty()
        };
        if !satellite_ok {
            return Err(bad());
        }
        Ok(SenseKey { text: s.to_string(), split })
    }
}
