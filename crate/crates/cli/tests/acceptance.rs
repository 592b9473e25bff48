//! Acceptance criteria, one PASS/FAIL/SKIP line each.
//!
//! Criteria 1-4 run on generated fixtures. Criteria 5-8 need `WORDNET_DIR`
//! (a WordNet 3.0 `dict` directory). Criteria 9-11 also need UFSAC corpora:
//! `SEMCOR`, `WNGC`, `WSD_ALL` and `WSD_SE07`, each a path or a
//! `:`-separated list of paths.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use sensevocab::{
    compress_all_relations, compress_hypernymy, compress_synonymy, decompress, first_sense_predict, identity_mapping,
    inventory_coverage, mark_necessary, parse_corpus, parse_wordnet, score_f1, system_coverage, verify_mapping,
    ClusterConfig, ClusterSet, Corpus, CorpusFormat, HypernymyConfig, KeyPolicy, SenseMapping, WordNetGraph,
};
use sensevocab_testkit::reference::{closure, hypernymy_tags, naive_clusters, necessary};
use sensevocab_testkit::{samples, Fixture};

/// Criteria expected to fail; see the decisions ledger.
const KNOWN_FAILURES: &[u32] = &[8];

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::{Fail, Pass, Skip};

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn failing(bad: &[String]) -> String {
    match bad.first() {
        None => "none failing".to_string(),
        Some(first) => format!("{} failing, first: {first}", bad.len()),
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn methods(g: &WordNetGraph) -> [SenseMapping; 3] {
    [
        compress_synonymy(g),
        compress_hypernymy(g, HypernymyConfig::default()),
        compress_all_relations(g, ClusterConfig::default()).0,
    ]
}

fn discriminability(fixtures: &[Fixture]) -> Outcome {
    let mut bad = Vec::new();
    for (i, f) in fixtures.iter().enumerate() {
        let (_, g) = f.build();
        for m in methods(&g) {
            let r = verify_mapping(&m, &g);
            if !r.ok() {
                bad.push(format!("fixture {i} {}: {} collisions, total={}", m.method(), r.collisions.len(), r.total));
            }
        }
    }
    check(bad.is_empty(), format!("{} fixtures x 3 methods, {}", fixtures.len(), failing(&bad)))
}

fn cluster_members(set: &ClusterSet, g: &WordNetGraph) -> Vec<BTreeSet<usize>> {
    set.clusters.iter().map(|c| c.members.iter().map(|m| g.index_of(*m).unwrap()).collect()).collect()
}

fn oracle_equivalence(large: &[Fixture], small: &[Fixture]) -> Outcome {
    let mut bad = Vec::new();
    for (i, f) in large.iter().enumerate() {
        let (_, g) = f.build();
        for include_instances in [true, false] {
            let cfg = HypernymyConfig { include_instances };
            let c = closure(&g, include_instances);
            let want = necessary(&g, &c);
            let nec = mark_necessary(&g, cfg);
            let got: Vec<bool> = (0..g.synset_count()).map(|s| nec.contains_index(s)).collect();
            let (tags, _) = sensevocab::hypernymy::hypernymy_tags(&g, &nec, cfg);
            if got != want || tags != hypernymy_tags(&g, &c, &want) {
                bad.push(format!("hypernymy fixture {i} instances={include_instances}"));
            }
        }
    }
    for (i, f) in small.iter().enumerate() {
        let (_, g) = f.build();
        let cfg = ClusterConfig {
            lexical_links: i % 2 == 1,
            strict_cross_pos: i % 3 == 2,
            max_steps: (i % 5 == 4).then_some(i as u64 % 7),
            ..Default::default()
        };
        let (_, set) = compress_all_relations(&g, cfg);
        let (want, log) = naive_clusters(&g, cfg);
        if set.merge_log != log || cluster_members(&set, &g) != want {
            bad.push(format!("clusters fixture {i}"));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "hypernymy on {} fixtures (<= 50 synsets), clustering on {} fixtures (<= 30 synsets), {}",
            large.len(),
            small.len(),
            failing(&bad)
        ),
    )
}

fn round_trip(fixtures: &[Fixture]) -> Outcome {
    let (mut senses, mut bad) = (0usize, Vec::new());
    for (i, f) in fixtures.iter().enumerate() {
        let (_, g) = f.build();
        let mut all = vec![identity_mapping(&g)];
        all.extend(methods(&g));
        for m in all {
            for s in g.senses() {
                senses += 1;
                let tag = m.get(&s.key).unwrap();
                if decompress(&m, &g, &s.lemma, s.pos, tag) != vec![s.key.clone()] {
                    bad.push(format!("fixture {i} {} {}", m.method(), s.key));
                }
            }
            let text = m.to_text();
            match SenseMapping::read_from(text.as_bytes(), &g) {
                Ok(back) if back == m && back.to_text() == text => {}
                _ => bad.push(format!("fixture {i} {} file", m.method())),
            }
        }
    }
    check(bad.is_empty(), format!("{senses} sense decompressions, {}", failing(&bad)))
}

/// A sense-tagged TSV corpus over `g`: senses whose index passes `keep`.
fn toy_corpus(g: &WordNetGraph, name: &str, keep: impl Fn(usize) -> bool) -> String {
    let mut text = String::new();
    for (i, s) in g.senses().iter().enumerate().filter(|(i, _)| keep(*i)) {
        let keys = if i % 5 == 3 { String::new() } else { s.key.to_string() };
        text.push_str(&format!("{}\t{}\t{}\t{keys}\t{name}.{i}\n", s.lemma, s.lemma, s.pos.letter()));
        if i % 4 == 0 {
            text.push('\n');
        }
    }
    text
}

/// Every subcommand, run in a fresh directory; returns each output file and standard output.
fn run_all(dir: &Path, fixture: &Fixture) -> Result<Vec<(String, Vec<u8>)>, String> {
    let dict = dir.join("dict");
    std::fs::create_dir_all(&dict).map_err(|e| e.to_string())?;
    let (toy, g) = fixture.build();
    toy.to_files().write_dir(&dict).map_err(|e| e.to_string())?;
    std::fs::write(dir.join("train.tsv"), toy_corpus(&g, "train", |i| i % 3 != 0)).map_err(|e| e.to_string())?;
    std::fs::write(dir.join("eval.tsv"), toy_corpus(&g, "eval", |i| i % 2 == 0)).map_err(|e| e.to_string())?;

    let runs: &[&[&str]] = &[
        &["compress", "--method", "synonyms", "-o", "syn.map"],
        &["compress", "--method", "hypernyms", "-o", "hyp.map"],
        &["compress", "--method", "all-relations", "--seed", "7", "-o", "all.map", "--merge-log", "merges.tsv"],
        &["compress", "--method", "all-relations", "--lexical-links", "--max-steps", "3"],
        &["stats", "--corpus", "train.tsv"],
        &["stats", "--mapping", "hyp.map", "--mapping", "all.map"],
        &["coverage", "--mapping", "hyp.map", "--train", "train.tsv", "--eval", "eval.tsv", "--misses", "misses.tsv"],
        &["coverage", "--mapping", "all.map", "--train", "train.tsv", "--eval", "eval.tsv", "--backoff"],
        &["baseline", "--method", "first-sense", "--eval", "eval.tsv", "-o", "fs.key", "--gold-out", "gold.key"],
        &[
            "baseline",
            "--method",
            "mfs",
            "--train",
            "train.tsv",
            "--eval",
            "eval.tsv",
            "--mapping",
            "syn.map",
            "--backoff",
        ],
        &["score", "--gold", "gold.key", "--pred", "fs.key"],
        &["verify", "--mapping", "all.map"],
    ];
    let mut outputs = Vec::new();
    for args in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_sensevocab"))
            .args(*args)
            .env("WORDNET_DIR", &dict)
            .current_dir(dir)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("`{}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
        }
        outputs.push((args.join(" "), out.stdout));
    }
    for file in ["syn.map", "hyp.map", "all.map", "merges.tsv", "misses.tsv", "fs.key", "gold.key"] {
        outputs.push((file.to_string(), std::fs::read(dir.join(file)).map_err(|e| e.to_string())?));
    }
    Ok(outputs)
}

fn determinism(fixtures: &[Fixture]) -> Outcome {
    let fixture = fixtures.iter().max_by_key(|f| f.synsets.len()).unwrap();
    let runs: Result<Vec<_>, String> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            run_all(dir.path(), fixture)
        })
        .collect();
    match runs {
        Err(e) => Fail(e),
        Ok(runs) => {
            let differ: Vec<&str> =
                runs[0].iter().zip(&runs[1]).filter(|(a, b)| a != b).map(|(a, _)| a.0.as_str()).collect();
            check(
                differ.is_empty(),
                format!("{} outputs of 6 subcommands compared across two runs, differing: {differ:?}", runs[0].len()),
            )
        }
    }
}

fn parser_counts(g: &WordNetGraph, secs: f64) -> Outcome {
    let (senses, synsets) = (g.sense_count(), g.synset_count());
    check(
        senses == 206_941 && synsets == 117_659 && secs < 30.0,
        format!("{senses} senses, {synsets} synsets, parsed in {secs:.1} s"),
    )
}

fn hypernymy_vocabulary(g: &WordNetGraph) -> Outcome {
    let t = Instant::now();
    let s = compress_hypernymy(g, HypernymyConfig::default()).stats();
    let secs = t.elapsed().as_secs_f64();
    check(
        within(s.vocabulary_size as f64, 39_147.0, 0.05 * 39_147.0)
            && within(100.0 * s.compression_rate, 81.0, 2.0)
            && within(s.mean_senses_per_tag, 5.0, 1.0)
            && secs < 300.0,
        format!(
            "vocabulary {} (target 39147 +-5%), rate {:.2}%, {:.3} senses/tag, {secs:.1} s",
            s.vocabulary_size,
            100.0 * s.compression_rate,
            s.mean_senses_per_tag
        ),
    )
}

fn all_relations_vocabulary(g: &WordNetGraph) -> Outcome {
    let t = Instant::now();
    let (m, set) = compress_all_relations(g, ClusterConfig::default());
    let secs = t.elapsed().as_secs_f64();
    let mean = m.stats().mean_senses_per_tag;
    let cap = 105_774;
    let (_, capped) = compress_all_relations(g, ClusterConfig { max_steps: Some(cap), ..Default::default() });
    let capped_note = if capped.step_count == cap {
        format!("capped run reached {cap} merges")
    } else {
        format!("capped run stopped after {} merges, shortfall {}", capped.step_count, cap - capped.step_count)
    };
    let capped_ok = capped.step_count < cap || capped.len() == g.synset_count() - cap as usize;
    check(
        (11_000..=13_000).contains(&set.len()) && within(mean, 17.0, 2.0) && capped_ok && secs < 1800.0,
        format!(
            "{} clusters after {} merges, {mean:.3} senses/cluster, {secs:.1} s; {capped_note}, vocabulary {}",
            set.len(),
            set.step_count,
            capped.len()
        ),
    )
}

fn hierarchy_counts(g: &WordNetGraph) -> Outcome {
    let (polysemous, in_hierarchy) = g.hierarchy_stats();
    check(
        (polysemous, in_hierarchy) == (44_449, 41_607),
        format!("({polysemous}, {in_hierarchy}) polysemous noun senses, in the hierarchy (target (44449, 41607))"),
    )
}

fn corpus_env(var: &str, g: &WordNetGraph) -> Option<Result<Corpus, String>> {
    let paths: Vec<PathBuf> = std::env::split_paths(&std::env::var_os(var)?).collect();
    let mut parts = Vec::new();
    for p in &paths {
        match parse_corpus(p, CorpusFormat::from_path(p), g, KeyPolicy::Lenient) {
            Ok((c, report)) => {
                if report.dropped_keys > 0 {
                    eprintln!("note: {}: {} unknown keys dropped", p.display(), report.dropped_keys);
                }
                parts.push(c);
            }
            Err(e) => return Some(Err(format!("{}: {e}", p.display()))),
        }
    }
    Some(Ok(Corpus::concat(var, &parts)))
}

macro_rules! corpus_or_skip {
    ($var:literal, $g:expr) => {
        match corpus_env($var, $g) {
            None => return Skip(format!("set {} to run", $var)),
            Some(Err(e)) => return Fail(e),
            Some(Ok(c)) => c,
        }
    };
}

fn semcor_inventory(g: &WordNetGraph) -> Outcome {
    let semcor = corpus_or_skip!("SEMCOR", g);
    let mut all = vec![identity_mapping(g)];
    all.extend(methods(g));
    let cov: Vec<f64> = all.iter().map(|m| 100.0 * inventory_coverage(&semcor, m)).collect();
    let keys = semcor.sense_keys().len();
    let ok = cov.iter().zip([16.0, 22.0, 32.0, 39.0]).all(|(&c, t)| within(c, t, 2.0))
        && within(keys as f64, 33_760.0, 337.6);
    check(ok, format!("coverage {cov:.2?} (targets 16/22/32/39), {keys} distinct keys (target 33760)"))
}

fn system_coverage_all(g: &WordNetGraph) -> Outcome {
    let semcor = corpus_or_skip!("SEMCOR", g);
    let wngc = corpus_or_skip!("WNGC", g);
    let eval = corpus_or_skip!("WSD_ALL", g);
    let train = Corpus::concat("train", [&semcor, &wngc]);
    let [syn, hyp, all] = methods(g);
    let mut ok = true;
    let mut parts = Vec::new();
    for (backoff, targets) in [(false, [93.23, 98.75, 99.67]), (true, [98.13, 99.68, 99.99])] {
        for (m, t) in [&syn, &hyp, &all].into_iter().zip(targets) {
            let r = system_coverage(&train, &eval, m, g, backoff);
            ok &= within(100.0 * r.coverage, t, 1.0);
            parts.push(format!("{:.2}", 100.0 * r.coverage));
        }
    }
    let base = system_coverage(&train, &eval, &syn, g, false);
    ok &= within(base.misses.len() as f64, 491.0, 30.0);
    check(
        ok,
        format!(
            "{} instances, coverage {} (targets 93.23/98.75/99.67, 98.13/99.68/99.99), baseline misses {}",
            base.total_instances,
            parts.join("/"),
            base.misses.len()
        ),
    )
}

fn first_sense_f1(g: &WordNetGraph) -> Outcome {
    let f1 = |c: &Corpus| first_sense_predict(c, g).and_then(|p| score_f1(c, &p)).map(|r| 100.0 * r.overall.f1);
    let all = corpus_or_skip!("WSD_ALL", g);
    let all_f1 = match f1(&all) {
        Ok(x) => x,
        Err(e) => return Fail(e.to_string()),
    };
    let mut ok = within(all_f1, 65.5, 0.5);
    let mut detail = format!("ALL {all_f1:.2} (target 65.5)");
    match corpus_env("WSD_SE07", g) {
        None => detail.push_str(", SE07 not set"),
        Some(Err(e)) => return Fail(e),
        Some(Ok(se07)) => match f1(&se07) {
            Ok(x) => {
                ok &= within(x, 54.5, 1.0);
                detail.push_str(&format!(", SE07 {x:.2} (target 54.5)"));
            }
            Err(e) => return Fail(e.to_string()),
        },
    }
    check(ok, detail)
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    let mut report = |n: u32, name: &str, outcome: Outcome| {
        let (status, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Skip(d) => ("SKIP", d),
            Fail(d) if KNOWN_FAILURES.contains(&n) => ("FAIL (known)", d),
            Fail(d) => {
                unexpected.push(n);
                ("FAIL", d)
            }
        };
        println!("{status} {n:>2} {name}: {detail}");
    };

    let large = samples(50, 256);
    let small = samples(30, 256);
    report(1, "discriminability", discriminability(&large));
    report(2, "oracle equivalence", oracle_equivalence(&large, &small));
    report(3, "round trip", round_trip(&large));
    report(4, "determinism", determinism(&large));

    let dir = std::env::var_os("WORDNET_DIR").map(PathBuf::from);
    let graph = dir.as_deref().map(|d| {
        let t = Instant::now();
        parse_wordnet(d).map(|g| (g, t.elapsed().as_secs_f64()))
    });
    match graph {
        None => {
            for (n, name) in [
                (5, "parser counts"),
                (6, "hypernymy vocabulary"),
                (7, "all-relations vocabulary"),
                (8, "hierarchy counts"),
                (9, "SemCor inventory coverage"),
                (10, "system coverage on ALL"),
                (11, "first-sense F1"),
            ] {
                report(n, name, Skip("set WORDNET_DIR to run".into()));
            }
        }
        Some(Err(e)) => {
            for n in 5..=11 {
                report(n, "WordNet", Fail(format!("cannot parse WordNet: {e}")));
            }
        }
        Some(Ok((g, secs))) => {
            report(5, "parser counts", parser_counts(&g, secs));
            report(6, "hypernymy vocabulary", hypernymy_vocabulary(&g));
            report(7, "all-relations vocabulary", all_relations_vocabulary(&g));
            report(8, "hierarchy counts", hierarchy_counts(&g));
            report(9, "SemCor inventory coverage", semcor_inventory(&g));
            report(10, "system coverage on ALL", system_coverage_all(&g));
            report(11, "first-sense F1", first_sense_f1(&g));
        }
    }

    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
