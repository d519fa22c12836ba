//! Seeded synthetic legal-text generator. Ground truth is exact by
//! construction: planted abbreviations never end sentences, citations never
//! contain boundaries, and every gold offset is recorded while the text is
//! assembled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::text::{BoundarySet, TextDocument};

use super::loader::AnnotatedExample;

/// Mid-sentence vocabulary. No terminator characters.
const LEXICON: &[&str] = &[
    "the", "court", "party", "plaintiff", "defendant", "agreement", "shall", "hereby", "pursuant",
    "under", "this", "section", "provision", "obligation", "liability", "breach", "notice",
    "within", "days", "payment", "amount", "interest", "claim", "motion", "order", "filed",
    "granted", "denied", "entered", "record", "evidence", "witness", "testimony", "contract",
    "perform", "deliver", "waiver", "remedy", "term", "herein", "damages", "costs", "relief",
    "judgment", "fees",
];

/// Words frequently used in sentence-final position; they also appear
/// mid-sentence via the lexicon so a trainer should never call them
/// abbreviations.
pub const FINAL_WORDS: &[&str] = &["damages", "costs", "relief", "judgment", "fees", "interest"];

/// Citation templates; `#` placeholders are replaced with random digits.
/// Each is inserted mid-sentence, so no gold boundary ever falls inside.
pub const CITATION_TEMPLATES: &[&str] = &[
    "### F.2d ### (2d Cir. 19##)",
    "### U.S. ### (19##)",
    "I.R.C. § ###A(a)(2)(B)(i)",
    "## F. Supp. 2d ### (S.D.N.Y. 20##)",
];

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub n_docs: usize,
    /// Planted abbreviation inventory: period-final form and per-sentence
    /// insertion probability.
    pub abbreviations: Vec<(String, f64)>,
    pub citation_templates: Vec<String>,
    pub citation_probability: f64,
    pub enumeration_probability: f64,
    /// Probability a sentence ends with '!' or '?' instead of '.'.
    pub exclaim_probability: f64,
    pub sentences_per_doc: (usize, usize),
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_docs: 100,
            abbreviations: vec![
                ("sec.".into(), 0.30),
                ("corp.".into(), 0.20),
                ("no.".into(), 0.15),
                ("approx.".into(), 0.10),
            ],
            citation_templates: CITATION_TEMPLATES.iter().map(|s| s.to_string()).collect(),
            citation_probability: 0.15,
            enumeration_probability: 0.10,
            exclaim_probability: 0.12,
            sentences_per_doc: (3, 10),
            seed: 42,
        }
    }
}

impl SynthConfig {
    fn assert_valid(&self) {
        assert!(!LEXICON.is_empty());
        for &(ref form, p) in &self.abbreviations {
            assert!(!form.is_empty() && form.ends_with('.'), "abbreviation {form:?}");
            assert!((0.0..=1.0).contains(&p), "probability {p}");
        }
        for p in [
            self.citation_probability,
            self.enumeration_probability,
            self.exclaim_probability,
        ] {
            assert!((0.0..=1.0).contains(&p), "probability {p}");
        }
        assert!(self.sentences_per_doc.0 >= 1);
        assert!(self.sentences_per_doc.0 <= self.sentences_per_doc.1);
    }
}

fn fill_template(template: &str, rng: &mut ChaCha8Rng) -> String {
    template
        .chars()
        .map(|c| {
            if c == '#' {
                char::from_digit(rng.random_range(1..=9), 10).unwrap()
            } else {
                c
            }
        })
        .collect()
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// One sentence's text, terminator included, with no trailing separator.
fn sentence(config: &SynthConfig, rng: &mut ChaCha8Rng) -> String {
    let n_words = rng.random_range(5..=12);
    let mut words: Vec<String> = (0..n_words)
        .map(|_| LEXICON[rng.random_range(0..LEXICON.len())].to_string())
        .collect();

    // Planted abbreviations go strictly mid-sentence, always followed by a
    // number token so the next character is never uppercase.
    for (form, p) in &config.abbreviations {
        if *p > 0.0 && rng.random_bool(*p) {
            let at = rng.random_range(1..n_words);
            words.insert(at, rng.random_range(1..=99u32).to_string());
            words.insert(at, form.clone());
        }
    }

    if config.citation_probability > 0.0
        && !config.citation_templates.is_empty()
        && rng.random_bool(config.citation_probability)
    {
        let t = &config.citation_templates[rng.random_range(0..config.citation_templates.len())];
        let at = rng.random_range(1..words.len());
        words.insert(at, fill_template(t, rng));
    }

    // Half of all sentences close with a designated final word.
    if rng.random_bool(0.5) {
        words.push(FINAL_WORDS[rng.random_range(0..FINAL_WORDS.len())].to_string());
    }

    words[0] = capitalize(&words[0]);
    let terminator = if config.exclaim_probability > 0.0 && rng.random_bool(config.exclaim_probability)
    {
        if rng.random_bool(0.5) {
            '!'
        } else {
            '?'
        }
    } else {
        '.'
    };
    let mut text = words.join(" ");
    text.push(terminator);
    text
}

/// Generates the corpus. Same config yields the identical corpus.
pub fn generate_synthetic(config: &SynthConfig) -> Vec<AnnotatedExample> {
    config.assert_valid();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut examples = Vec::with_capacity(config.n_docs);

    for d in 0..config.n_docs {
        let n_sentences = rng.random_range(config.sentences_per_doc.0..=config.sentences_per_doc.1);
        let mut text = String::new();
        let mut char_len = 0usize;
        let mut gold: Vec<usize> = Vec::new();
        let enumerated = config.enumeration_probability > 0.0
            && rng.random_bool(config.enumeration_probability);

        for s in 0..n_sentences {
            let mut sent = sentence(config, &mut rng);
            if enumerated {
                sent = format!("{}. {}", s + 1, sent);
            }
            char_len += sent.chars().count();
            text.push_str(&sent);
            if s + 1 < n_sentences {
                let sep = if enumerated {
                    '\n'
                } else if rng.random_bool(0.1) {
                    '\n'
                } else {
                    ' '
                };
                text.push(sep);
                char_len += 1;
            }
            // Boundary after the separator: the next sentence's first char,
            // or end of text. Snap-fixed by construction.
            gold.push(char_len);
        }

        let doc = TextDocument::new(&format!("synth-{d}"), &text);
        let gold = BoundarySet::for_text(gold, doc.char_len()).expect("generator offsets are valid");
        examples.push(AnnotatedExample { doc, gold });
    }
    examples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::snap_boundary;

    #[test]
    fn deterministic() {
        let config = SynthConfig::default();
        assert_eq!(generate_synthetic(&config), generate_synthetic(&config));
    }

    #[test]
    fn inventory_respected() {
        let config = SynthConfig {
            abbreviations: vec![("corp.".into(), 0.0), ("sec.".into(), 0.8)],
            n_docs: 30,
            ..SynthConfig::default()
        };
        let corpus = generate_synthetic(&config);
        let all: String = corpus.iter().map(|e| e.doc.text().to_lowercase()).collect();
        assert!(!all.contains("corp."));
        assert!(all.contains("sec."));
    }

    #[test]
    fn gold_is_snap_fixed_and_final() {
        for ex in generate_synthetic(&SynthConfig { n_docs: 20, ..SynthConfig::default() }) {
            for &b in ex.gold.offsets() {
                assert_eq!(snap_boundary(&ex.doc, b).unwrap(), b, "doc {}", ex.doc.id());
            }
            assert_eq!(*ex.gold.offsets().last().unwrap(), ex.doc.char_len());
        }
    }

    #[test]
    fn abbreviations_never_sentence_final() {
        let config = SynthConfig { n_docs: 50, ..SynthConfig::default() };
        for ex in generate_synthetic(&config) {
            for &b in ex.gold.offsets() {
                // The word before each boundary must not be a planted form.
                let upto: String = ex.doc.slice(0, b).trim_end().to_lowercase();
                for (form, _) in &config.abbreviations {
                    assert!(!upto.ends_with(form.as_str()), "{form:?} ends a sentence");
                }
            }
        }
    }

    #[test]
    fn gold_boundaries_sit_after_terminators() {
        for ex in generate_synthetic(&SynthConfig { n_docs: 20, ..SynthConfig::default() }) {
            let len = ex.doc.char_len();
            for &b in ex.gold.offsets() {
                // Walk back over the separator to the terminator.
                let mut i = b;
                while i > 0 && ex.doc.char_at(i - 1).unwrap().is_whitespace() {
                    i -= 1;
                }
                assert!(i > 0 && i <= len);
                let c = ex.doc.char_at(i - 1).unwrap();
                assert!(matches!(c, '.' | '!' | '?'), "boundary {b} follows {c:?}");
            }
        }
    }

    #[test]
    fn round_trips_through_delimited_format() {
        use crate::datasets::loader::{load_delimited_str, render_delimited_corpus};
        let corpus = generate_synthetic(&SynthConfig { n_docs: 10, ..SynthConfig::default() });
        let rendered = render_delimited_corpus(&corpus);
        let back = load_delimited_str(&rendered).unwrap();
        assert_eq!(back.len(), corpus.len());
        for (a, b) in corpus.iter().zip(&back) {
            assert_eq!(a.doc.text(), b.doc.text());
            assert_eq!(a.gold, b.gold);
        }
    }
}
