use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sensevocab::{
    compress_all_relations, compress_hypernymy, compress_synonymy, first_sense_predict, hypernym_cycles,
    identity_mapping, inventory_coverage, mfs_predict, parse_corpus, parse_wordnet, score_keys, system_coverage,
    verify_mapping, ClusterConfig, Corpus, CorpusFormat, HypernymyConfig, KeyPolicy, Method, PredictionSet,
    RelationSet, Score, SenseMapping, WordNetGraph,
};

use crate::{Baseline, BaselineArgs, CompressArgs, CorpusArgs, CoverageArgs, ScoreArgs, StatsArgs, VerifyArgs};

fn load_wordnet(dir: &Path) -> Result<WordNetGraph> {
    parse_wordnet(dir).with_context(|| format!("reading WordNet from {}", dir.display()))
}

fn load_mapping(path: &Path, graph: &WordNetGraph) -> Result<SenseMapping> {
    SenseMapping::load(path, graph).with_context(|| format!("reading mapping {}", path.display()))
}

fn load_corpora(paths: &[PathBuf], args: &CorpusArgs, graph: &WordNetGraph) -> Result<Corpus> {
    let policy = if args.lenient { KeyPolicy::Lenient } else { KeyPolicy::Strict };
    let mut parts = Vec::with_capacity(paths.len());
    for p in paths {
        let format = args.format.unwrap_or_else(|| CorpusFormat::from_path(p));
        let (corpus, report) =
            parse_corpus(p, format, graph, policy).with_context(|| format!("reading corpus {}", p.display()))?;
        if report.dropped_keys > 0 {
            eprintln!(
                "warning: {}: dropped {} unknown sense keys (e.g. {})",
                p.display(),
                report.dropped_keys,
                report.dropped_examples.join(", ")
            );
        }
        parts.push(corpus);
    }
    if parts.len() == 1 {
        return Ok(parts.pop().unwrap());
    }
    let name = parts.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("+");
    Ok(Corpus::concat(name, &parts))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn pct(x: f64) -> String {
    format!("{:.2}", 100.0 * x)
}

fn opt(x: Option<u64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

const MAPPING_HEADER: &str = "#method\tsenses\tvocabulary\tcompression_pct\tmean_senses_per_tag\tsteps\trepairs";

fn mapping_row(m: &SenseMapping) -> String {
    let s = m.stats();
    format!(
        "{}\t{}\t{}\t{}\t{:.3}\t{}\t{}",
        m.method(),
        s.sense_count,
        s.vocabulary_size,
        pct(s.compression_rate),
        s.mean_senses_per_tag,
        opt(m.metadata().steps),
        opt(m.metadata().repairs)
    )
}

impl CompressArgs {
    fn check_options(&self) -> Result<()> {
        let hypernymy = [("--no-instance-hypernyms", self.no_instance_hypernyms)];
        let clustering = [
            ("--relations", !self.relations.is_empty()),
            ("--lexical-links", self.lexical_links),
            ("--max-steps", self.max_steps.is_some()),
            ("--seed", self.seed.is_some()),
            ("--strict-cross-pos", self.strict_cross_pos),
            ("--merge-log", self.merge_log.is_some()),
        ];
        let foreign: Vec<_> = match self.method {
            Method::Hypernymy => clustering.to_vec(),
            Method::AllRelations => hypernymy.to_vec(),
            Method::Identity | Method::Synonymy => hypernymy.iter().chain(&clustering).copied().collect(),
        };
        if let Some((flag, _)) = foreign.into_iter().find(|(_, set)| *set) {
            bail!("{flag} does not apply to --method {}", self.method);
        }
        Ok(())
    }
}

pub fn compress(args: CompressArgs) -> Result<()> {
    args.check_options()?;
    let graph = load_wordnet(&args.wordnet.wordnet)?;
    let mapping = match args.method {
        Method::Identity => identity_mapping(&graph),
        Method::Synonymy => compress_synonymy(&graph),
        Method::Hypernymy => {
            compress_hypernymy(&graph, HypernymyConfig { include_instances: !args.no_instance_hypernyms })
        }
        Method::AllRelations => {
            let relation_filter =
                if args.relations.is_empty() { RelationSet::all() } else { args.relations.iter().copied().collect() };
            let cfg = ClusterConfig {
                relation_filter,
                lexical_links: args.lexical_links,
                max_steps: args.max_steps,
                strict_cross_pos: args.strict_cross_pos,
                seed: args.seed,
            };
            let (mapping, clusters) = compress_all_relations(&graph, cfg);
            if let Some(path) = &args.merge_log {
                let mut w = create(path)?;
                clusters.write_merge_log(&mut w)?;
                w.flush()?;
            }
            if let Some(n) = args.max_steps.filter(|&n| clusters.step_count < n) {
                eprintln!(
                    "note: stopped after {} merges, {} short of --max-steps {n}",
                    clusters.step_count,
                    n - clusters.step_count
                );
            }
            mapping
        }
    };
    if let Some(path) = &args.out {
        let mut w = create(path)?;
        mapping.write_to(&mut w)?;
        w.flush()?;
    }
    let mut out = io::stdout().lock();
    writeln!(out, "{MAPPING_HEADER}")?;
    writeln!(out, "{}", mapping_row(&mapping))?;
    Ok(())
}

pub fn stats(args: StatsArgs) -> Result<()> {
    let graph = load_wordnet(&args.wordnet.wordnet)?;
    let mappings = if args.mapping.is_empty() {
        vec![
            identity_mapping(&graph),
            compress_synonymy(&graph),
            compress_hypernymy(&graph, HypernymyConfig::default()),
            compress_all_relations(&graph, ClusterConfig::default()).0,
        ]
    } else {
        args.mapping.iter().map(|p| load_mapping(p, &graph)).collect::<Result<_>>()?
    };
    let corpus =
        if args.corpus.is_empty() { None } else { Some(load_corpora(&args.corpus, &args.corpus_args, &graph)?) };

    let mut out = io::stdout().lock();
    let (polysemous, in_hierarchy) = graph.hierarchy_stats();
    writeln!(out, "#synsets\tsenses\twords\tedges\thypernym_cycles\tpolysemous_noun_senses\tin_hierarchy")?;
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{polysemous}\t{in_hierarchy}",
        graph.synset_count(),
        graph.sense_count(),
        graph.word_count(),
        graph.edge_count(),
        hypernym_cycles(&graph).len()
    )?;
    writeln!(out)?;
    match &corpus {
        None => writeln!(out, "{MAPPING_HEADER}")?,
        Some(_) => writeln!(out, "{MAPPING_HEADER}\tcoverage_pct")?,
    }
    for m in &mappings {
        write!(out, "{}", mapping_row(m))?;
        if let Some(c) = &corpus {
            write!(out, "\t{}", pct(inventory_coverage(c, m)))?;
        }
        writeln!(out)?;
    }
    if let Some(c) = &corpus {
        writeln!(out)?;
        writeln!(out, "#corpus\ttokens\tannotated\tdistinct_keys")?;
        writeln!(out, "{}\t{}\t{}\t{}", c.name, c.token_count(), c.annotated_count(), c.sense_keys().len())?;
    }
    Ok(())
}

pub fn coverage(args: CoverageArgs) -> Result<()> {
    let graph = load_wordnet(&args.wordnet.wordnet)?;
    let mapping = load_mapping(&args.mapping, &graph)?;
    let train = load_corpora(&args.train, &args.corpus_args, &graph)?;
    let eval = load_corpora(&args.eval, &args.corpus_args, &graph)?;
    let report = system_coverage(&train, &eval, &mapping, &graph, args.backoff);
    if let Some(path) = &args.misses {
        let mut w = create(path)?;
        for m in &report.misses {
            writeln!(w, "{}\t{}\t{}", m.instance_id, m.lemma, m.pos.letter())?;
        }
        w.flush()?;
    }
    let mut out = io::stdout().lock();
    writeln!(out, "#method\tbackoff\tinstances\tcovered\tmissed\tcoverage_pct")?;
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}",
        mapping.method(),
        report.monosemic_backoff,
        report.total_instances,
        report.covered,
        report.misses.len(),
        pct(report.coverage)
    )?;
    Ok(())
}

fn score_row(out: &mut impl Write, label: &str, s: &Score) -> io::Result<()> {
    writeln!(
        out,
        "{label}\t{}\t{}\t{}\t{}\t{}\t{}",
        s.total,
        s.attempted,
        s.correct,
        pct(s.precision),
        pct(s.recall),
        pct(s.f1)
    )
}

pub fn score(args: ScoreArgs) -> Result<()> {
    let gold = PredictionSet::load(&args.gold).with_context(|| format!("reading gold keys {}", args.gold.display()))?;
    let pred =
        PredictionSet::load(&args.pred).with_context(|| format!("reading predictions {}", args.pred.display()))?;
    let report = score_keys(&gold, &pred)?;
    if report.no_attempts {
        eprintln!("warning: no instance was attempted; precision reported as 0");
    }
    let mut out = io::stdout().lock();
    writeln!(out, "#pos\ttotal\tattempted\tcorrect\tprecision_pct\trecall_pct\tf1_pct")?;
    score_row(&mut out, "all", &report.overall)?;
    for (pos, s) in &report.per_pos {
        score_row(&mut out, pos.name(), s)?;
    }
    Ok(())
}

pub fn baseline(args: BaselineArgs) -> Result<()> {
    match args.method {
        Baseline::FirstSense => {
            let unused = [
                ("--train", !args.train.is_empty()),
                ("--mapping", args.mapping.is_some()),
                ("--backoff", args.backoff),
            ];
            if let Some((flag, _)) = unused.into_iter().find(|(_, set)| *set) {
                bail!("{flag} does not apply to --method first-sense");
            }
        }
        Baseline::Mfs if args.train.is_empty() => bail!("--method mfs needs at least one --train corpus"),
        Baseline::Mfs => {}
    }
    let graph = load_wordnet(&args.wordnet.wordnet)?;
    let eval = load_corpora(&args.eval, &args.corpus_args, &graph)?;
    let pred = match args.method {
        Baseline::FirstSense => first_sense_predict(&eval, &graph)?,
        Baseline::Mfs => {
            let mapping = match &args.mapping {
                Some(p) => load_mapping(p, &graph)?,
                None => identity_mapping(&graph),
            };
            let train = load_corpora(&args.train, &args.corpus_args, &graph)?;
            mfs_predict(&train, &eval, &mapping, &graph, args.backoff)?
        }
    };
    if let Some(path) = &args.gold_out {
        let mut w = create(path)?;
        PredictionSet::from_corpus(&eval)?.write_to(&mut w)?;
        w.flush()?;
    }
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            pred.write_to(&mut w)?;
            w.flush()?;
            let mut out = io::stdout().lock();
            writeln!(out, "#instances\tpredicted\tbackoff")?;
            writeln!(out, "{}\t{}\t{}", eval.annotated_count(), pred.len(), pred.backoff_count())?;
        }
        None => {
            let mut out = io::stdout().lock();
            pred.write_to(&mut out)?;
        }
    }
    Ok(())
}

pub fn verify(args: VerifyArgs) -> Result<()> {
    let graph = load_wordnet(&args.wordnet.wordnet)?;
    let mapping = load_mapping(&args.mapping, &graph)?;
    let report = verify_mapping(&mapping, &graph);
    let mut out = io::stdout().lock();
    writeln!(out, "#method\ttotal\tmissing\tunknown\tcollisions")?;
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}",
        mapping.method(),
        report.total,
        report.missing,
        report.unknown,
        report.collisions.len()
    )?;
    if !report.collisions.is_empty() {
        writeln!(out)?;
        writeln!(out, "#lemma\tpos\tsense_a\tsense_b")?;
        for c in &report.collisions {
            writeln!(out, "{}\t{}\t{}\t{}", c.lemma, c.pos.letter(), c.sense_a, c.sense_b)?;
        }
    }
    out.flush()?;
    if !report.ok() {
        bail!("{} does not discriminate every sense", args.mapping.display());
    }
    Ok(())
}
