mod common;

use std::collections::BTreeMap;

use dialup::langgen::{make_cloud_corpus, make_shell_corpus, run_theta_sweep, RadiusSchedule};
use dialup::metrics::{char_edit_distance, noise_rate_report};
use dialup::noisers::{sample_language, ArtificialLanguage, Dimension, NoiseDials};
use dialup::text::{self, Detached};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn zero_dial_shell_is_byte_identical() {
    let bitext = common::bitext(1000, 1);
    let res = common::latin_resources(&common::sentences(1000, 1));
    let out = make_shell_corpus(&bitext, NoiseDials::ZERO, &res, 9).unwrap();
    assert_eq!(out.bitext, bitext);
}

#[test]
fn shell_and_cloud_ignore_thread_count() {
    let bitext = common::bitext(600, 2);
    let res = common::latin_resources(&common::sentences(600, 2));
    let sched = RadiusSchedule::Cloud { radii: 10, max: NoiseDials::new(0.3, 0.5, 0.8, 0.2).unwrap(), langs_per_radius: 2 };
    let run = || {
        let shell = make_shell_corpus(&bitext, NoiseDials::SHELL_DEFAULT, &res, 5).unwrap();
        let cloud = make_cloud_corpus(&bitext, &sched, &res, 5).unwrap();
        let langs: Vec<String> = cloud.chunks.iter().map(|c| c.language.to_text()).collect();
        (shell.bitext.to_tsv(), shell.chunks[0].language.to_text(), cloud.bitext.to_tsv(), langs)
    };
    let one = in_pool(1, run);
    let many = in_pool(8, run);
    assert_eq!(one, many);
    assert_ne!(one.0, bitext.to_tsv());
}

#[test]
fn different_seeds_give_different_languages() {
    let res = common::latin_resources(&common::sentences(300, 3));
    let dials = NoiseDials::new(0.5, 0.5, 0.5, 0.5).unwrap();
    assert_ne!(sample_language(dials, &res, 1).unwrap(), sample_language(dials, &res, 2).unwrap());
}

/// Every occurrence of a surface form is rewritten the same way. Forms are compared as
/// written: folding the output would merge e.g. dotless ı with i after capitalization.
fn assert_consistent(original: &[String], noised: &[String]) {
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for (o, n) in original.iter().zip(noised) {
        let ot: Vec<&str> = o.split_whitespace().collect();
        let nt: Vec<&str> = n.split_whitespace().collect();
        assert_eq!(ot.len(), nt.len());
        for (a, b) in ot.iter().zip(&nt) {
            let (da, db) = (Detached::new(a), Detached::new(b));
            let key = da.core.to_string();
            let val = db.core.to_string();
            if let Some(prev) = seen.insert(key.clone(), val.clone()) {
                assert_eq!(prev, val, "{key} mapped two ways");
            }
        }
    }
}

#[test]
fn maps_are_global_within_a_language() {
    let bitext = common::bitext(3000, 4);
    let res = common::latin_resources(&common::sentences(3000, 4));
    let out = make_shell_corpus(&bitext, NoiseDials::new(0.2, 0.6, 0.8, 0.3).unwrap(), &res, 11).unwrap();
    let orig: Vec<String> = bitext.sources().map(String::from).collect();
    let noised: Vec<String> = out.bitext.sources().map(String::from).collect();
    assert_consistent(&orig, &noised);
}

fn mean_distance(orig: &[String], noised: &[String]) -> f64 {
    let total: usize = orig.iter().zip(noised).map(|(a, b)| char_edit_distance(a, b)).sum();
    total as f64 / orig.len() as f64
}

#[test]
fn cloud_distance_grows_with_radius() {
    let bitext = common::bitext(2000, 5);
    let res = common::latin_resources(&common::sentences(2000, 5));
    let out = make_cloud_corpus(&bitext, &RadiusSchedule::default_cloud(), &res, 3).unwrap();
    let first = &out.chunks[0].lines;
    let last = &out.chunks[9].lines;
    let slice = |b: &dialup::langgen::Bitext, r: &std::ops::Range<usize>| -> Vec<String> {
        b.pairs[r.clone()].iter().map(|p| p.0.clone()).collect()
    };
    let d1 = mean_distance(&slice(&bitext, first), &slice(&out.bitext, first));
    let dk = mean_distance(&slice(&bitext, last), &slice(&out.bitext, last));
    assert!(dk > d1, "radius 1: {d1}, radius 10: {dk}");
    assert_eq!(out.bitext.targets().collect::<Vec<_>>(), bitext.targets().collect::<Vec<_>>());
}

#[test]
fn sweep_changes_are_nested() {
    let bitext = common::bitext(500, 6);
    let res = common::latin_resources(&common::sentences(500, 6));
    let grid = [0.0, 0.1, 0.3, 0.6, 1.0];
    for dim in [Dimension::Phonological, Dimension::Morphological, Dimension::FunctionWord] {
        let runs = run_theta_sweep(&bitext, dim, &grid, &res, 8).unwrap();
        let maps: Vec<Vec<String>> = runs
            .iter()
            .map(|(_, nb)| {
                let l: &ArtificialLanguage = &nb.chunks[0].language;
                match dim {
                    Dimension::Phonological => l.phoneme_map().keys().cloned().collect(),
                    Dimension::Morphological => l.suffix_map().keys().cloned().collect(),
                    _ => l.function_word_map().keys().cloned().collect(),
                }
            })
            .collect();
        for w in maps.windows(2) {
            assert!(w[0].iter().all(|k| w[1].contains(k)), "{dim:?}: {:?} not within {:?}", w[0], w[1]);
        }
        let orig: Vec<String> = bitext.sources().map(String::from).collect();
        let dists: Vec<f64> = runs
            .iter()
            .map(|(_, nb)| mean_distance(&orig, &nb.bitext.sources().map(String::from).collect::<Vec<_>>()))
            .collect();
        assert_eq!(dists[0], 0.0);
        assert!(dists[4] > 0.0, "{dim:?}: {dists:?}");
    }
    assert!(run_theta_sweep(&bitext, Dimension::ContentWord, &grid, &res, 8).is_err());
}

#[test]
fn noise_report_edges() {
    let corpus = common::sentences(400, 7);
    let res = common::latin_resources(&corpus);
    let zero = sample_language(NoiseDials::ZERO, &res, 1).unwrap();
    let report = noise_rate_report(&corpus, &corpus, &zero, &res).unwrap();
    for row in &report.rows {
        assert!(row.universe > 0, "{:?}", row.dimension);
        assert_eq!(row.changed, 0);
    }

    let full_f = sample_language(NoiseDials::new(0.0, 0.0, 1.0, 0.0).unwrap(), &res, 1).unwrap();
    let report = noise_rate_report(&corpus, &corpus, &full_f, &res).unwrap();
    let f = report.get(Dimension::FunctionWord);
    assert_eq!(f.universe, common::FUNCTION_WORDS.len());
    // a function word only stays put when none of its phonemes move at the internal dial
    assert!(f.observed() > 0.9, "{f:?}");
    assert!(report.to_tsv().starts_with("dimension\tuniverse\tchanged\tobserved\tconfigured\np\t"));

    assert!(noise_rate_report(&corpus, &corpus[..10], &zero, &res).is_err());
}

#[test]
fn content_dial_one_replaces_every_content_word() {
    let corpus = common::sentences(200, 8);
    let res = common::latin_resources(&corpus);
    let lang = sample_language(NoiseDials::new(0.0, 0.0, 0.0, 1.0).unwrap(), &res, 4).unwrap();
    for line in &corpus {
        let out = dialup::noisers::apply_language(line, &lang, &res);
        for (a, b) in line.split_whitespace().zip(out.split_whitespace()) {
            let core = text::fold(Detached::new(a).core);
            let new = text::fold(Detached::new(b).core);
            if res.function_words.contains(&core) {
                assert_eq!(core, new);
            } else {
                assert!(!res.vocab.contains(&new), "{new} is a real word");
            }
        }
    }
    let report = noise_rate_report(&corpus, &corpus, &lang, &res).unwrap();
    assert_eq!(report.get(Dimension::ContentWord).observed(), 1.0);
}
