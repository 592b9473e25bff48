use std::fmt;
use std::str::FromStr;

/// WordNet syntactic category.
///
/// Variants are declared in the alphabetical order of their WNdb `ss_type`
/// letters so the derived `Ord` matches the canonical synset id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartOfSpeech {
    Adjective,
    Noun,
    Adverb,
    AdjectiveSatellite,
    Verb,
}

impl PartOfSpeech {
    pub const ALL: [PartOfSpeech; 5] = [
        PartOfSpeech::Adjective,
        PartOfSpeech::Noun,
        PartOfSpeech::Adverb,
        PartOfSpeech::AdjectiveSatellite,
        PartOfSpeech::Verb,
    ];

    /// The four word classes that own an `index.*`/`data.*` file pair.
    pub const WORD_CLASSES: [PartOfSpeech; 4] =
        [PartOfSpeech::Noun, PartOfSpeech::Verb, PartOfSpeech::Adjective, PartOfSpeech::Adverb];

    pub fn letter(self) -> char {
        match self {
            PartOfSpeech::Noun => 'n',
            PartOfSpeech::Verb => 'v',
            PartOfSpeech::Adjective => 'a',
            PartOfSpeech::AdjectiveSatellite => 's',
            PartOfSpeech::Adverb => 'r',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'n' => PartOfSpeech::Noun,
            'v' => PartOfSpeech::Verb,
            'a' => PartOfSpeech::Adjective,
            's' => PartOfSpeech::AdjectiveSatellite,
            'r' => PartOfSpeech::Adverb,
            _ => return None,
        })
    }

    /// The `ss_type` digit used inside sense keys.
    pub fn sense_key_digit(self) -> u8 {
        match self {
            PartOfSpeech::Noun => 1,
            PartOfSpeech::Verb => 2,
            PartOfSpeech::Adjective => 3,
            PartOfSpeech::Adverb => 4,
            PartOfSpeech::AdjectiveSatellite => 5,
        }
    }

    pub fn from_sense_key_digit(d: u8) -> Option<Self> {
        Some(match d {
            1 => PartOfSpeech::Noun,
            2 => PartOfSpeech::Verb,
            3 => PartOfSpeech::Adjective,
            4 => PartOfSpeech::Adverb,
            5 => PartOfSpeech::AdjectiveSatellite,
            _ => return None,
        })
    }

    /// Collapses satellites onto adjectives, the grouping used by the
    /// `index.adj` file and therefore by "word" identity.
    pub fn word_class(self) -> Self {
        match self {
            PartOfSpeech::AdjectiveSatellite => PartOfSpeech::Adjective,
            p => p,
        }
    }

    /// Suffix of the WNdb file holding synsets of this category.
    pub fn file_suffix(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective | PartOfSpeech::AdjectiveSatellite => "adj",
            PartOfSpeech::Adverb => "adv",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective => "adjective",
            PartOfSpeech::AdjectiveSatellite => "adjective_satellite",
            PartOfSpeech::Adverb => "adverb",
        }
    }

    /// Normalizes part-of-speech tags found in annotated corpora.
    ///
    /// Accepts the universal tags, single letters, full names, and Penn
    /// Treebank prefixes (`NN*`, `VB*`, `JJ*`, `RB*`). Satellites map to
    /// plain adjectives since corpora do not distinguish them.
    pub fn from_tag(tag: &str) -> Option<Self> {
        let t = tag.trim();
        let p = match t {
            "NOUN" | "N" | "n" | "noun" => PartOfSpeech::Noun,
            "VERB" | "V" | "v" | "verb" => PartOfSpeech::Verb,
            "ADJ" | "J" | "a" | "s" | "adj" | "adjective" | "adjective_satellite" => PartOfSpeech::Adjective,
            "ADV" | "R" | "r" | "adv" | "adverb" => PartOfSpeech::Adverb,
            _ if t.starts_with("NN") => PartOfSpeech::Noun,
            _ if t.starts_with("VB") => PartOfSpeech::Verb,
            _ if t.starts_with("JJ") => PartOfSpeech::Adjective,
            _ if t.starts_with("RB") => PartOfSpeech::Adverb,
            _ => return None,
        };
        Some(p)
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartOfSpeech {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PartOfSpeech::from_tag(s).ok_or_else(|| format!("unknown part of speech `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_and_digit_are_bijective() {
        for p in PartOfSpeech::ALL {
            assert_eq!(PartOfSpeech::from_letter(p.letter()), Some(p));
            assert_eq!(PartOfSpeech::from_sense_key_digit(p.sense_key_digit()), Some(p));
        }
        let digits: Vec<u8> = PartOfSpeech::ALL.iter().map(|p| p.sense_key_digit()).collect();
        assert_eq!(digits, vec![3, 1, 4, 5, 2]);
    }

    #[test]
    fn ordering_follows_letters() {
        let mut all = PartOfSpeech::ALL.to_vec();
        all.reverse();
        all.sort();
        let letters: String = all.iter().map(|p| p.letter()).collect();
        assert_eq!(letters, "anrsv");
    }

    #[test]
    fn corpus_tags() {
        assert_eq!(PartOfSpeech::from_tag("NOUN"), Some(PartOfSpeech::Noun));
        assert_eq!(PartOfSpeech::from_tag("NNS"), Some(PartOfSpeech::Noun));
        assert_eq!(PartOfSpeech::from_tag("VBD"), Some(PartOfSpeech::Verb));
        assert_eq!(PartOfSpeech::from_tag("J"), Some(PartOfSpeech::Adjective));
        assert_eq!(PartOfSpeech::from_tag("s"), Some(PartOfSpeech::Adjective));
        assert_eq!(PartOfSpeech::from_tag("R"), Some(PartOfSpeech::Adverb));
        assert_eq!(PartOfSpeech::from_tag("DT"), None);
        assert_eq!(PartOfSpeech::AdjectiveSatellite.word_class(), PartOfSpeech::Adjective);
    }
}
