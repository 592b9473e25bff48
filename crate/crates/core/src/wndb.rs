//! Strict reader for the WNdb plain-text database (`data.*` and `index.*`).

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::error::ParseError;
use crate::ids::{SenseKey, SynsetId};
use crate::pos::PartOfSpeech;
use crate::relation::RelationType;
use crate::wordnet::{Synset, WordNetGraph, WordSense};

/// One named text file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WndbSource {
    pub name: String,
    pub text: String,
}

/// The eight files the graph is built from, keyed by word class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WndbFiles {
    pub data: BTreeMap<PartOfSpeech, WndbSource>,
    pub index: BTreeMap<PartOfSpeech, WndbSource>,
}

impl WndbFiles {
    /// Reads `data.{noun,verb,adj,adv}` and `index.{...}` from a `dict` directory.
    pub fn read_dir(dir: &Path) -> Result<Self, ParseError> {
        let mut files = WndbFiles::default();
        for pos in PartOfSpeech::WORD_CLASSES {
            for (kind, map) in [("data", &mut files.data), ("index", &mut files.index)] {
                let name = format!("{kind}.{}", pos.file_suffix());
                let path = dir.join(&name);
                if !path.is_file() {
                    return Err(ParseError::MissingFile(path));
                }
                let bytes = std::fs::read(&path).map_err(|source| ParseError::Io { path: path.clone(), source })?;
                let text = String::from_utf8_lossy(&bytes).into_owned();
                map.insert(pos, WndbSource { name, text });
            }
        }
        Ok(files)
    }

    /// Writes every file into `dir`, which must exist.
    pub fn write_dir(&self, dir: &Path) -> std::io::Result<()> {
        for src in self.data.values().chain(self.index.values()) {
            std::fs::write(dir.join(&src.name), &src.text)?;
        }
        Ok(())
    }
}

/// Parses a WNdb `dict` directory into a graph.
pub fn parse_wordnet(dir: impl AsRef<Path>) -> Result<WordNetGraph, ParseError> {
    parse_wndb(&WndbFiles::read_dir(dir.as_ref())?)
}

struct RawPointer {
    relation: RelationType,
    target_class: PartOfSpeech,
    target_offset: u32,
    source_word: u8,
    target_word: u8,
    line: usize,
}

struct RawSynset {
    id: SynsetId,
    lex_filenum: u8,
    words: Vec<(String, u8)>,
    pointers: Vec<RawPointer>,
    gloss: String,
    file: String,
    line: usize,
}

struct Fields<'a> {
    tokens: std::iter::Peekable<std::str::SplitAsciiWhitespace<'a>>,
    file: &'a str,
    line: usize,
}

impl<'a> Fields<'a> {
    fn next(&mut self, field: &'static str) -> Result<&'a str, ParseError> {
        self.tokens.next().ok_or_else(|| ParseError::Malformed {
            file: self.file.to_string(),
            line: self.line,
            field,
            message: "missing".into(),
        })
    }

    fn err(&self, field: &'static str, message: impl Into<String>) -> ParseError {
        ParseError::Malformed { file: self.file.to_string(), line: self.line, field, message: message.into() }
    }

    fn number(&mut self, field: &'static str, width: Option<usize>, radix: u32) -> Result<u32, ParseError> {
        let tok = self.next(field)?;
        let width_ok = width.map_or(!tok.is_empty(), |w| tok.len() == w);
        if !width_ok || !tok.chars().all(|c| c.is_digit(radix)) {
            return Err(self.err(field, format!("`{tok}`")));
        }
        u32::from_str_radix(tok, radix).map_err(|_| self.err(field, format!("`{tok}`")))
    }
}

fn is_header(line: &str) -> bool {
    line.starts_with("  ")
}

/// Strips the adjective syntactic markers `(a)`, `(p)`, `(ip)`.
fn strip_marker(word: &str) -> &str {
    for m in ["(a)", "(p)", "(ip)"] {
        if let Some(w) = word.strip_suffix(m) {
            return w;
        }
    }
    word
}

fn detect_version(files: &WndbFiles) -> String {
    for src in files.data.values() {
        for line in src.text.lines().take_while(|l| is_header(l)) {
            if let Some(rest) = line.split("WordNet ").nth(1) {
                let v: String = rest.chars().take_while(|c| c.is_ascii_digit() || *c == '.').collect();
                if v.contains('.') {
                    return v.trim_end_matches('.').to_string();
                }
            }
        }
    }
    "unknown".into()
}

fn parse_data_line(text: &str, file: &str, line: usize, class: PartOfSpeech) -> Result<RawSynset, ParseError> {
    let (body, gloss) = text.split_once('|').ok_or_else(|| ParseError::Malformed {
        file: file.to_string(),
        line,
        field: "gloss",
        message: "missing `|` separator".into(),
    })?;
    let mut f = Fields { tokens: body.split_ascii_whitespace().peekable(), file, line };
    let offset = f.number("synset_offset", Some(8), 10)?;
    let lex_filenum = f.number("lex_filenum", Some(2), 10)? as u8;
    let ss = f.next("ss_type")?;
    let pos = match ss {
        "n" | "v" | "a" | "s" | "r" => PartOfSpeech::from_letter(ss.chars().next().unwrap()).unwrap(),
        _ => return Err(f.err("ss_type", format!("`{ss}`"))),
    };
    if pos.word_class() != class {
        return Err(f.err("ss_type", format!("`{ss}` in {} file", class.file_suffix())));
    }
    let w_cnt = f.number("w_cnt", Some(2), 16)?;
    if w_cnt == 0 {
        return Err(f.err("w_cnt", "zero words"));
    }
    let mut words = Vec::with_capacity(w_cnt as usize);
    for _ in 0..w_cnt {
        let word = f.next("word")?;
        let lex_id = f.number("lex_id", Some(1), 16)? as u8;
        words.push((word.to_string(), lex_id));
    }
    let p_cnt = f.number("p_cnt", Some(3), 10)?;
    let mut pointers = Vec::with_capacity(p_cnt as usize);
    for _ in 0..p_cnt {
        let sym = f.next("pointer_symbol")?;
        let relation =
            RelationType::from_symbol(sym).ok_or_else(|| f.err("pointer_symbol", format!("unknown symbol `{sym}`")))?;
        let target_offset = f.number("pointer offset", Some(8), 10)?;
        let tp = f.next("pointer pos")?;
        let target_class = match tp {
            "n" | "v" | "a" | "s" | "r" => PartOfSpeech::from_letter(tp.chars().next().unwrap()).unwrap().word_class(),
            _ => return Err(f.err("pointer pos", format!("`{tp}`"))),
        };
        let st = f.number("pointer source/target", Some(4), 16)?;
        pointers.push(RawPointer {
            relation,
            target_class,
            target_offset,
            source_word: (st >> 8) as u8,
            target_word: (st & 0xff) as u8,
            line,
        });
    }
    if class == PartOfSpeech::Verb {
        let f_cnt = f.number("f_cnt", Some(2), 10)?;
        for _ in 0..f_cnt {
            if f.next("frame")? != "+" {
                return Err(f.err("frame", "expected `+`"));
            }
            f.number("f_num", Some(2), 10)?;
            f.number("w_num", Some(2), 16)?;
        }
    }
    if let Some(extra) = f.tokens.next() {
        return Err(f.err("trailing field", format!("`{extra}`")));
    }
    for p in &pointers {
        if p.source_word as u32 > w_cnt {
            return Err(f.err("pointer source/target", "source word out of range"));
        }
    }
    Ok(RawSynset {
        id: SynsetId::new(pos, offset),
        lex_filenum,
        words,
        pointers,
        gloss: gloss.trim().to_string(),
        file: file.to_string(),
        line,
    })
}

/// Builds the graph from in-memory WNdb files.
pub fn parse_wndb(files: &WndbFiles) -> Result<WordNetGraph, ParseError> {
    let mut raw: Vec<RawSynset> = Vec::new();
    for class in PartOfSpeech::WORD_CLASSES {
        let src = files
            .data
            .get(&class)
            .ok_or_else(|| ParseError::MissingFile(format!("data.{}", class.file_suffix()).into()))?;
        for (i, line) in src.text.lines().enumerate() {
            if is_header(line) || line.trim().is_empty() {
                continue;
            }
            raw.push(parse_data_line(line, &src.name, i + 1, class)?);
        }
    }
    raw.sort_by_key(|s| s.id);

    // Pointers name their target by file and offset only, so satellites are
    // found through the adjective file.
    let mut by_file_offset: HashMap<(PartOfSpeech, u32), u32> = HashMap::with_capacity(raw.len());
    let mut by_id = HashMap::with_capacity(raw.len());
    for (i, s) in raw.iter().enumerate() {
        if by_file_offset.insert((s.id.pos.word_class(), s.id.offset), i as u32).is_some() {
            return Err(ParseError::Malformed {
                file: s.file.clone(),
                line: s.line,
                field: "synset_offset",
                message: format!("duplicate offset {:08}", s.id.offset),
            });
        }
        by_id.insert(s.id, i as u32);
    }
    let resolve = |p: &RawPointer, s: &RawSynset| -> Result<u32, ParseError> {
        by_file_offset.get(&(p.target_class, p.target_offset)).copied().ok_or_else(|| ParseError::DanglingPointer {
            file: s.file.clone(),
            line: p.line,
            target: format!("{}#{:08}", p.target_class.letter(), p.target_offset),
        })
    };

    // Senses: one per distinct lowercased lemma in each synset, first occurrence wins.
    let mut senses: Vec<WordSense> = Vec::new();
    let mut sense_synset: Vec<u32> = Vec::new();
    let mut synsets: Vec<Synset> = Vec::with_capacity(raw.len());
    let mut by_key = HashMap::new();
    for (i, s) in raw.iter().enumerate() {
        let head = if s.id.pos == PartOfSpeech::AdjectiveSatellite {
            let p = s.pointers.iter().find(|p| p.relation == RelationType::SimilarTo).ok_or_else(|| {
                ParseError::Malformed {
                    file: s.file.clone(),
                    line: s.line,
                    field: "pointer",
                    message: "satellite without a similar-to head".into(),
                }
            })?;
            let h = &raw[resolve(p, s)? as usize];
            if h.id.pos != PartOfSpeech::Adjective {
                return Err(ParseError::Malformed {
                    file: s.file.clone(),
                    line: s.line,
                    field: "pointer",
                    message: format!("satellite head {} is not a head adjective", h.id),
                });
            }
            let (w, lex_id) = &h.words[0];
            Some((strip_marker(w).to_lowercase(), *lex_id))
        } else {
            None
        };
        let mut members = Vec::new();
        for (word, lex_id) in &s.words {
            let lemma = strip_marker(word).to_lowercase();
            if lemma.is_empty() {
                return Err(ParseError::Malformed {
                    file: s.file.clone(),
                    line: s.line,
                    field: "word",
                    message: format!("`{word}`"),
                });
            }
            if members.iter().any(|&m: &u32| senses[m as usize].lemma == lemma) {
                continue;
            }
            let key = SenseKey::build(
                &lemma,
                s.id.pos,
                s.lex_filenum,
                *lex_id,
                head.as_ref().map(|(w, id)| (w.as_str(), *id)),
            );
            let idx = senses.len() as u32;
            if by_key.insert(key.clone(), idx).is_some() {
                return Err(ParseError::Malformed {
                    file: s.file.clone(),
                    line: s.line,
                    field: "word",
                    message: format!("sense key {key} generated twice"),
                });
            }
            members.push(idx);
            senses.push(WordSense { lemma, pos: s.id.pos, sense_number: 0, key, synset: s.id, lex_id: *lex_id });
            sense_synset.push(i as u32);
        }
        synsets.push(Synset { id: s.id, lex_filenum: s.lex_filenum, senses: members, gloss: s.gloss.clone() });
    }

    // Index files fix sense numbers.
    let mut lemma_index = BTreeMap::new();
    for class in PartOfSpeech::WORD_CLASSES {
        let src = files
            .index
            .get(&class)
            .ok_or_else(|| ParseError::MissingFile(format!("index.{}", class.file_suffix()).into()))?;
        for (i, line) in src.text.lines().enumerate() {
            if is_header(line) || line.trim().is_empty() {
                continue;
            }
            let mut f = Fields { tokens: line.split_ascii_whitespace().peekable(), file: &src.name, line: i + 1 };
            let lemma = f.next("lemma")?;
            if lemma.chars().any(char::is_uppercase) {
                return Err(f.err("lemma", format!("`{lemma}` is not lowercase")));
            }
            let p = f.next("pos")?;
            if p.len() != 1 || PartOfSpeech::from_letter(p.chars().next().unwrap()) != Some(class) {
                return Err(f.err("pos", format!("`{p}` in index.{}", class.file_suffix())));
            }
            let synset_cnt = f.number("synset_cnt", None, 10)?;
            let p_cnt = f.number("p_cnt", None, 10)?;
            for _ in 0..p_cnt {
                let sym = f.next("ptr_symbol")?;
                // Index files list domain pointers by their bare class symbol.
                if RelationType::from_symbol(sym).is_none() && sym != ";" && sym != "-" {
                    return Err(f.err("ptr_symbol", format!("unknown symbol `{sym}`")));
                }
            }
            let sense_cnt = f.number("sense_cnt", None, 10)?;
            if sense_cnt != synset_cnt {
                return Err(f.err("sense_cnt", format!("{sense_cnt} != synset_cnt {synset_cnt}")));
            }
            f.number("tagsense_cnt", None, 10)?;
            let mut list = Vec::with_capacity(synset_cnt as usize);
            for n in 0..synset_cnt {
                let offset = f.number("synset_offset", Some(8), 10)?;
                let sidx = *by_file_offset.get(&(class, offset)).ok_or_else(|| ParseError::DanglingPointer {
                    file: src.name.clone(),
                    line: i + 1,
                    target: format!("{}#{offset:08}", class.letter()),
                })?;
                let synset = &synsets[sidx as usize];
                let sense =
                    synset.senses.iter().copied().find(|&m| senses[m as usize].lemma == lemma).ok_or_else(|| {
                        ParseError::IndexMismatch {
                            file: src.name.clone(),
                            line: i + 1,
                            lemma: lemma.to_string(),
                            synset: synset.id,
                        }
                    })?;
                let ws = &mut senses[sense as usize];
                if ws.sense_number != 0 {
                    return Err(f.err("synset_offset", format!("{} listed twice for `{lemma}`", synset.id)));
                }
                ws.sense_number = n + 1;
                list.push(sense);
            }
            if let Some(extra) = f.tokens.next() {
                return Err(f.err("synset_offset", format!("more offsets than synset_cnt: `{extra}`")));
            }
            if lemma_index.insert((lemma.to_string(), class), list).is_some() {
                return Err(f.err("lemma", format!("`{lemma}` indexed twice")));
            }
        }
    }
    if let Some(s) = senses.iter().find(|s| s.sense_number == 0) {
        return Err(ParseError::UnindexedSense { lemma: s.lemma.clone(), synset: s.synset });
    }

    // Edges: word-level pointers lift to their synsets; inverses are materialized.
    let mut edges: Vec<Vec<(RelationType, u32)>> = vec![Vec::new(); raw.len()];
    let mut semantic: Vec<Vec<(RelationType, u32)>> = vec![Vec::new(); raw.len()];
    for (i, s) in raw.iter().enumerate() {
        for p in &s.pointers {
            let t = resolve(p, s)?;
            if p.target_word as usize > raw[t as usize].words.len() {
                return Err(ParseError::Malformed {
                    file: s.file.clone(),
                    line: p.line,
                    field: "pointer source/target",
                    message: "target word out of range".into(),
                });
            }
            let inv = p.relation.inverse();
            edges[i].push((p.relation, t));
            if let Some(inv) = inv {
                edges[t as usize].push((inv, i as u32));
            }
            if p.source_word == 0 {
                semantic[i].push((p.relation, t));
                if let Some(inv) = inv {
                    semantic[t as usize].push((inv, i as u32));
                }
            }
        }
    }
    for e in edges.iter_mut().chain(semantic.iter_mut()) {
        e.sort_unstable();
        e.dedup();
    }

    Ok(WordNetGraph {
        version: detect_version(files),
        synsets,
        senses,
        sense_synset,
        edges,
        semantic,
        by_id,
        by_key,
        lemma_index,
    })
}

/// Cycles in the hypernym + instance-hypernym relation, each listed from its
/// first-visited synset. WordNet 3.0 has exactly one (`restrain` / `inhibit`).
pub fn hypernym_cycles(graph: &WordNetGraph) -> Vec<Vec<SynsetId>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = graph.synset_count();
    let mut colour = vec![WHITE; n];
    let mut cycles = Vec::new();
    let parents = |i: usize| -> Vec<usize> {
        graph.edges_at(i).iter().filter(|(r, _)| r.is_hypernymy()).map(|&(_, t)| t as usize).rev().collect()
    };
    for start in 0..n {
        if colour[start] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, parents(start))];
        colour[start] = GREY;
        while let Some((node, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(next) => match colour[next] {
                    WHITE => {
                        colour[next] = GREY;
                        stack.push((next, parents(next)));
                    }
                    GREY => {
                        let from = stack.iter().position(|(s, _)| *s == next).unwrap();
                        cycles.push(stack[from..].iter().map(|(s, _)| graph.synsets()[*s].id).collect());
                    }
                    _ => {}
                },
                None => {
                    colour[*node] = BLACK;
                    stack.pop();
                }
            }
        }
    }
    cycles
}
