//! Small hand-written lexicons rendered as genuine WNdb files.
//!
//! A [`ToyWordNet`] is built either programmatically or from a compact line
//! format, then written out as `data.*`/`index.*` text with correct byte
//! offsets so that it goes through the same parser as the real database.
//!
//! Line format, one synset per line:
//!
//! ```text
//! # comment
//! n rodent = rodent gnawer ; @ placental
//! n mouse_animal = mouse ; @ rodent | a small rodent
//! s tepid = tepid lukewarm ; & warm
//! ```
//!
//! `pos` is one of `n v a s r`; the label is local to the file; words use
//! underscores for spaces; each pointer is a WNdb symbol followed by a label.
//! Words listed for several synsets get sense numbers in line order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::ids::SynsetId;
use crate::pos::PartOfSpeech;
use crate::relation::RelationType;
use crate::wndb::{WndbFiles, WndbSource};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToyError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown synset label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: duplicate synset label `{label}`")]
    DuplicateLabel { line: usize, label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ToyPointer {
    relation: RelationType,
    target: usize,
    source_word: u8,
    target_word: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToySynset {
    pub label: String,
    pub pos: PartOfSpeech,
    pub lex_filenum: u8,
    pub words: Vec<String>,
    pub gloss: String,
    pointers: Vec<ToyPointer>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ToyWordNet {
    synsets: Vec<ToySynset>,
}

const HEADER: &str = "  1 WordNet toy fixture  \n";

impl ToyWordNet {
    pub fn new() -> Self {
        ToyWordNet::default()
    }

    pub fn synsets(&self) -> &[ToySynset] {
        &self.synsets
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    /// Adds a synset and returns its handle. Lex file numbers default to the
    /// generic file of each category (`03` nouns, `29` verbs, `00` adjectives,
    /// `02` adverbs).
    pub fn synset(&mut self, pos: PartOfSpeech, words: &[&str]) -> usize {
        let label = format!("s{}", self.synsets.len());
        self.synset_labeled(&label, pos, words)
    }

    pub fn synset_labeled(&mut self, label: &str, pos: PartOfSpeech, words: &[&str]) -> usize {
        let lex_filenum = match pos {
            PartOfSpeech::Noun => 3,
            PartOfSpeech::Verb => 29,
            PartOfSpeech::Adjective | PartOfSpeech::AdjectiveSatellite => 0,
            PartOfSpeech::Adverb => 2,
        };
        self.synsets.push(ToySynset {
            label: label.to_string(),
            pos,
            lex_filenum,
            words: words.iter().map(|w| w.to_string()).collect(),
            gloss: format!("{label} gloss"),
            pointers: Vec::new(),
        });
        self.synsets.len() - 1
    }

    /// Adds a synset-level pointer.
    pub fn link(&mut self, from: usize, relation: RelationType, to: usize) {
        self.link_words(from, 0, relation, to, 0);
    }

    /// Adds a pointer between specific words (1-based; 0 means the whole synset).
    pub fn link_words(&mut self, from: usize, from_word: u8, relation: RelationType, to: usize, to_word: u8) {
        self.synsets[from].pointers.push(ToyPointer {
            relation,
            target: to,
            source_word: from_word,
            target_word: to_word,
        });
    }

    /// Parses the line format described in the module docs.
    pub fn parse(text: &str) -> Result<ToyWordNet, ToyError> {
        let mut toy = ToyWordNet::new();
        let mut labels: HashMap<String, usize> = HashMap::new();
        let mut pending: Vec<(usize, usize, RelationType, String)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |m: &str| ToyError::Syntax { line: line_no, message: m.to_string() };
            let (head, gloss) = match line.split_once('|') {
                Some((h, g)) => (h, Some(g.trim())),
                None => (line, None),
            };
            let (decl, ptrs) = match head.split_once(';') {
                Some((d, p)) => (d, p),
                None => (head, ""),
            };
            let (lhs, words) = decl.split_once('=').ok_or_else(|| syntax("expected `pos label = words`"))?;
            let mut lhs = lhs.split_whitespace();
            let pos = lhs
                .next()
                .filter(|p| p.len() == 1)
                .and_then(|p| PartOfSpeech::from_letter(p.chars().next().unwrap()))
                .ok_or_else(|| syntax("part of speech must be one of n v a s r"))?;
            let label = lhs.next().ok_or_else(|| syntax("missing label"))?;
            if lhs.next().is_some() {
                return Err(syntax("label must be a single token"));
            }
            let words: Vec<&str> = words.split_whitespace().collect();
            if words.is_empty() {
                return Err(syntax("synset needs at least one word"));
            }
            if words.iter().any(|w| w.contains('%') || w.contains(':')) {
                return Err(syntax("words may not contain `%` or `:`"));
            }
            if labels.contains_key(label) {
                return Err(ToyError::DuplicateLabel { line: line_no, label: label.to_string() });
            }
            let idx = toy.synset_labeled(label, pos, &words);
            if let Some(g) = gloss {
                toy.synsets[idx].gloss = g.to_string();
            }
            labels.insert(label.to_string(), idx);
            let toks: Vec<&str> = ptrs.split_whitespace().collect();
            if !toks.len().is_multiple_of(2) {
                return Err(syntax("pointers come in `symbol label` pairs"));
            }
            for pair in toks.chunks(2) {
                let rel = RelationType::from_symbol(pair[0])
                    .ok_or_else(|| syntax(&format!("unknown pointer symbol `{}`", pair[0])))?;
                pending.push((line_no, idx, rel, pair[1].to_string()));
            }
        }
        for (line, from, rel, label) in pending {
            let to = *labels.get(&label).ok_or(ToyError::UnknownLabel { line, label })?;
            toy.link(from, rel, to);
        }
        Ok(toy)
    }

    /// Synset ids that [`to_files`](Self::to_files) assigns, by handle.
    pub fn synset_ids(&self) -> Vec<SynsetId> {
        let offsets = self.offsets(&self.lex_ids());
        self.synsets.iter().zip(offsets).map(|(s, o)| SynsetId::new(s.pos, o)).collect()
    }

    /// lex_id distinguishes repeated (lemma, pos, lex file) combinations.
    fn lex_ids(&self) -> Vec<Vec<u8>> {
        let mut lex_ids: Vec<Vec<u8>> = Vec::with_capacity(self.synsets.len());
        let mut seen: HashMap<(String, char, u8), u8> = HashMap::new();
        for s in &self.synsets {
            let mut ids = Vec::new();
            for w in &s.words {
                let k = (w.to_lowercase(), s.pos.letter(), s.lex_filenum);
                let e = seen.entry(k).or_insert(0);
                ids.push(*e % 16);
                *e += 1;
            }
            lex_ids.push(ids);
        }
        lex_ids
    }

    /// Offsets have a fixed width, so line lengths do not depend on them.
    fn offsets(&self, lex_ids: &[Vec<u8>]) -> Vec<u32> {
        let mut offsets = vec![0u32; self.synsets.len()];
        for class in PartOfSpeech::WORD_CLASSES {
            let mut at = HEADER.len() as u32;
            for (i, s) in self.synsets.iter().enumerate() {
                if s.pos.word_class() == class {
                    offsets[i] = at;
                    at += self.data_line(i, &lex_ids[i], &offsets).len() as u32;
                }
            }
        }
        offsets
    }

    /// Renders the lexicon as WNdb files.
    pub fn to_files(&self) -> WndbFiles {
        let lex_ids = self.lex_ids();
        let offsets = self.offsets(&lex_ids);

        let mut files = WndbFiles::default();
        let mut index: BTreeMap<PartOfSpeech, BTreeMap<String, Vec<usize>>> = BTreeMap::new();
        for class in PartOfSpeech::WORD_CLASSES {
            let mut text = HEADER.to_string();
            for (i, s) in self.synsets.iter().enumerate() {
                if s.pos.word_class() != class {
                    continue;
                }
                text.push_str(&self.data_line(i, &lex_ids[i], &offsets));
                let mut lemmas_here = BTreeSet::new();
                for w in &s.words {
                    let lemma = w.to_lowercase();
                    if lemmas_here.insert(lemma.clone()) {
                        index.entry(class).or_default().entry(lemma).or_default().push(i);
                    }
                }
            }
            let name = format!("data.{}", class.file_suffix());
            files.data.insert(class, WndbSource { name, text });
        }
        for class in PartOfSpeech::WORD_CLASSES {
            let mut text = HEADER.to_string();
            if let Some(words) = index.get(&class) {
                for (lemma, list) in words {
                    let symbols: BTreeSet<&str> = list
                        .iter()
                        .flat_map(|&i| self.synsets[i].pointers.iter().map(|p| p.relation.symbol()))
                        .collect();
                    let _ = write!(text, "{lemma} {} {} {}", class.letter(), list.len(), symbols.len());
                    for s in &symbols {
                        let _ = write!(text, " {s}");
                    }
                    let _ = write!(text, " {} 0", list.len());
                    for &i in list {
                        let _ = write!(text, " {:08}", offsets[i]);
                    }
                    text.push_str("  \n");
                }
            }
            let name = format!("index.{}", class.file_suffix());
            files.index.insert(class, WndbSource { name, text });
        }
        files
    }

    fn data_line(&self, i: usize, lex_ids: &[u8], offsets: &[u32]) -> String {
        let s = &self.synsets[i];
        let mut line = format!("{:08} {:02} {} {:02x}", offsets[i], s.lex_filenum, s.pos.letter(), s.words.len());
        for (w, id) in s.words.iter().zip(lex_ids) {
            let _ = write!(line, " {w} {id:x}");
        }
        let _ = write!(line, " {:03}", s.pointers.len());
        for p in &s.pointers {
            let t = &self.synsets[p.target];
            let _ = write!(
                line,
                " {} {:08} {} {:02x}{:02x}",
                p.relation.symbol(),
                offsets[p.target],
                t.pos.word_class().letter(),
                p.source_word,
                p.target_word
            );
        }
        if s.pos == PartOfSpeech::Verb {
            line.push_str(" 01 + 02 00");
        }
        let _ = writeln!(line, " | {}  ", s.gloss);
        line
    }
}

/// The "mouse" fragment: both senses' hypernym chains up to `entity`, plus
/// "prey" (a person / an animal) and a few other words.
pub const MOUSE_FRAGMENT: &str = "\
n entity = entity
n physical_entity = physical_entity ; @ entity
n object = object physical_object ; @ physical_entity
n whole = whole unit ; @ object
n living_thing = living_thing animate_thing ; @ whole
n organism = organism being ; @ living_thing
n animal = animal animate_being beast ; @ organism
n person = person individual someone ; @ organism
n victim = victim prey ; @ person | a person who is tricked or swindled
n quarry = quarry prey ; @ animal | animal hunted or caught for food
n chordate = chordate ; @ animal
n vertebrate = vertebrate craniate ; @ chordate
n mammal = mammal mammalian ; @ vertebrate
n placental = placental eutherian ; @ mammal
n rodent = rodent gnawer ; @ placental
n mouse_animal = mouse ; @ rodent | any of numerous small rodents
n artifact = artifact artefact ; @ whole
n instrumentality = instrumentality instrumentation ; @ artifact
n device = device ; @ instrumentality
n electronic_device = electronic_device ; @ device
n mouse_device = mouse computer_mouse ; @ electronic_device %p mouse_button | a hand-operated electronic device
n mouse_button = mouse_button ; @ device
n physicist = physicist ; @ person -c physics
n einstein = einstein albert_einstein ; @i physicist
n physics = physics natural_philosophy ; @ whole
v help = help assist aid | give help or assistance
v help_out = help ; @ help | improve the condition of
v assist_v = assist ; @ help
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wndb::parse_wndb;

    #[test]
    fn offsets_are_byte_positions() {
        let toy = ToyWordNet::parse(MOUSE_FRAGMENT).unwrap();
        let files = toy.to_files();
        for src in files.data.values() {
            let mut at = 0usize;
            for line in src.text.split_inclusive('\n') {
                if !line.starts_with("  ") {
                    assert_eq!(line[..8].parse::<usize>().unwrap(), at, "{line}");
                }
                at += line.len();
            }
        }
    }

    #[test]
    fn fragment_parses() {
        let toy = ToyWordNet::parse(MOUSE_FRAGMENT).unwrap();
        let g = parse_wndb(&toy.to_files()).unwrap();
        assert_eq!(g.synset_count(), toy.len());
        let mice = g.senses_of("mouse", PartOfSpeech::Noun);
        assert_eq!(mice.len(), 2);
        assert_eq!(mice[0].sense_number, 1);
        assert_eq!(g.senses_of("prey", PartOfSpeech::Noun).len(), 2);
        assert_eq!(g.version(), "unknown");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let err = ToyWordNet::parse("n a = x\nn b = y ; @ nowhere").unwrap_err();
        assert_eq!(err, ToyError::UnknownLabel { line: 2, label: "nowhere".into() });
        assert!(matches!(ToyWordNet::parse("q a = x"), Err(ToyError::Syntax { line: 1, .. })));
        assert!(matches!(ToyWordNet::parse("n a = x\nn a = y"), Err(ToyError::DuplicateLabel { line: 2, .. })));
        assert!(matches!(ToyWordNet::parse("n a = x ; @"), Err(ToyError::Syntax { .. })));
    }

    #[test]
    fn synset_ids_match_parsed_graph() {
        let toy = ToyWordNet::parse(MOUSE_FRAGMENT).unwrap();
        let g = crate::wndb::parse_wndb(&toy.to_files()).unwrap();
        for (s, id) in toy.synsets().iter().zip(toy.synset_ids()) {
            assert_eq!(g.synset(id).unwrap().gloss, s.gloss);
        }
    }
}
