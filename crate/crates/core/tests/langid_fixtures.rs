use greedygram::langid::{
    fixture_models, heldout_sentences, identify, normalized_length, DEFAULT_TOP_K,
};

const BINS: [(usize, usize); 3] = [(0, 20), (20, 60), (60, usize::MAX)];

fn binned_accuracy() -> Vec<(usize, usize)> {
    let models = fixture_models(DEFAULT_TOP_K);
    let mut bins = vec![(0usize, 0usize); BINS.len()];
    for (lang, sentence) in heldout_sentences() {
        let len = normalized_length(sentence);
        let bin = BINS
            .iter()
            .position(|(lo, hi)| len >= *lo && len < *hi)
            .unwrap();
        let p = identify(sentence, &models).unwrap();
        bins[bin].1 += 1;
        if p.language == lang {
            bins[bin].0 += 1;
        } else {
            eprintln!("miss [{lang} -> {}] ({len}) {sentence}", p.language);
        }
    }
    bins
}

#[test]
fn accuracy_grows_with_length() {
    let bins = binned_accuracy();
    let rates: Vec<f64> = bins.iter().map(|(ok, n)| *ok as f64 / *n as f64).collect();
    eprintln!("bins {bins:?} rates {rates:?}");
    assert!(bins.iter().all(|(_, n)| *n > 0));
    assert!(rates.windows(2).all(|w| w[0] <= w[1]), "{rates:?}");
    assert!(rates[2] >= 0.9, "{rates:?}");
}

#[test]
fn heldout_is_disjoint_from_training() {
    for (lang, sentence) in heldout_sentences() {
        let corpus = greedygram::langid::fixture_corpus(lang).unwrap();
        assert!(!corpus.contains(sentence), "{sentence}");
    }
}
