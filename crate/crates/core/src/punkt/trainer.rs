//! Unsupervised training: abbreviation scoring, collocation and
//! sentence-starter detection, and orthographic context collection.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::punkt::params::{ortho, PunktParameters};
use crate::punkt::tokens::{
    ends_unambiguous, ends_with_period, first_alpha, internal_periods, len_without_periods,
    strip_final_period, token_type,
};
use crate::text::TextDocument;

#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Co-occurrence counts for one token type (keyed by the type with its final
/// period stripped).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenTypeStats {
    /// The type form the stats are keyed under (final period stripped).
    pub type_form: String,
    /// Total occurrences of the type.
    pub type_count: u64,
    /// Occurrences ending with '.'.
    pub period_final_count: u64,
    /// Count of '.' chars not in final position.
    pub internal_periods: u64,
}

/// Runtime/training thresholds. The statistical constants live here so
/// experiments can vary them.
#[derive(Debug, Clone)]
pub struct PunktConfig {
    pub abbrev_threshold: f64,
    pub collocation_threshold: f64,
    pub starter_threshold: f64,
    pub legal_kb_enabled: bool,
}

impl Default for PunktConfig {
    fn default() -> Self {
        PunktConfig {
            abbrev_threshold: 0.3,
            collocation_threshold: 7.88,
            starter_threshold: 30.0,
            legal_kb_enabled: true,
        }
    }
}

/// Minimum joint count before a collocation or starter is considered.
const MIN_PAIR_COUNT: u64 = 2;

/// Dunning binomial log-likelihood ratio of observing `count_ab` joint events.
///
/// Terms of the form `0 * ln 0` evaluate to 0.
pub fn log_likelihood(
    count_ab: u64,
    count_a: u64,
    count_b: u64,
    n: u64,
) -> Result<f64, TrainError> {
    if n == 0 {
        return Err(TrainError::Domain("n must be positive".into()));
    }
    if count_ab > count_a.min(count_b) || count_a > n || count_b > n {
        return Err(TrainError::Domain(format!(
            "inconsistent counts: ab={count_ab} a={count_a} b={count_b} n={n}"
        )));
    }
    fn ell(k: f64, m: f64, x: f64) -> f64 {
        let mut v = 0.0;
        if k > 0.0 {
            v += k * x.ln();
        }
        if m - k > 0.0 {
            v += (m - k) * (1.0 - x).ln();
        }
        v
    }
    let (ab, a, b, n) = (count_ab as f64, count_a as f64, count_b as f64, n as f64);
    let p = b / n;
    let p1 = if a > 0.0 { ab / a } else { 0.0 };
    let p2 = if n - a > 0.0 { (b - ab) / (n - a) } else { 0.0 };
    let ll = 2.0
        * (ell(ab, a, p1) + ell(b - ab, n - a, p2) - ell(ab, a, p) - ell(b - ab, n - a, p));
    // Clamp the tiny negative values float rounding can produce at independence.
    Ok(if ll.abs() < 1e-9 { 0.0 } else { ll })
}

/// Abbreviation score: the log-likelihood of the type/period association
/// weighted by the length, internal-period, and bare-occurrence factors.
/// Types scoring at or above the abbreviation threshold are classified as
/// abbreviations.
pub fn score_abbreviation(
    stats: &TokenTypeStats,
    global_periods: u64,
    global_tokens: u64,
) -> Result<f64, TrainError> {
    if stats.period_final_count > stats.type_count
        || stats.period_final_count > global_periods
        || stats.type_count > global_tokens
    {
        return Err(TrainError::Domain("stats exceed global counts".into()));
    }
    if stats.period_final_count == 0 || global_periods == 0 {
        return Ok(0.0);
    }
    let len = len_without_periods(&stats.type_form);
    if len == 0 {
        return Ok(0.0);
    }
    let ll = log_likelihood(
        stats.period_final_count,
        stats.type_count,
        global_periods,
        global_tokens,
    )?;
    let f_length = (-(len as f64)).exp();
    let f_periods = 1.0 + stats.internal_periods as f64;
    let bare = stats.type_count - stats.period_final_count;
    let f_penalty = (len as f64).powi(-(bare.min(i32::MAX as u64) as i32));
    Ok(ll * f_length * f_periods * f_penalty)
}

/// Learns parameters from a corpus: abbreviation types, collocations spanning
/// a period, frequent sentence starters, and orthographic context. Fully
/// deterministic for a fixed corpus order.
pub fn train(corpus: &[TextDocument], config: &PunktConfig) -> Result<PunktParameters, TrainError> {
    if corpus.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }

    // Pass 1: per-type counts.
    let mut stats: BTreeMap<String, TokenTypeStats> = BTreeMap::new();
    let mut global_tokens: u64 = 0;
    let mut global_periods: u64 = 0;
    for doc in corpus {
        for raw in doc.text().split_whitespace() {
            let ty = token_type(raw);
            if ty.is_empty() {
                continue;
            }
            global_tokens += 1;
            let final_period = ends_with_period(&ty);
            if final_period {
                global_periods += 1;
            }
            let key = strip_final_period(&ty).to_string();
            let e = stats.entry(key.clone()).or_insert_with(|| TokenTypeStats {
                type_form: key,
                ..TokenTypeStats::default()
            });
            e.type_count += 1;
            if final_period {
                e.period_final_count += 1;
            }
            e.internal_periods += internal_periods(&ty);
        }
    }
    if global_tokens == 0 {
        return Err(TrainError::EmptyCorpus);
    }

    let mut abbreviations: BTreeSet<String> = BTreeSet::new();
    for (key, st) in &stats {
        if st.period_final_count == 0 {
            continue;
        }
        if score_abbreviation(st, global_periods, global_tokens)? >= config.abbrev_threshold {
            abbreviations.insert(key.clone());
        }
    }

    // Pass 2: context statistics relative to the learned abbreviations.
    let mut pair_counts: BTreeMap<(String, String), u64> = BTreeMap::new();
    let mut starter_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut n_starts: u64 = 0;
    let mut ortho_flags: BTreeMap<String, u8> = BTreeMap::new();

    for doc in corpus {
        let mut prev_raw: Option<&str> = None;
        for raw in doc.text().split_whitespace() {
            let ty = token_type(raw);
            if ty.is_empty() {
                prev_raw = Some(raw);
                continue;
            }
            let key = strip_final_period(&ty).to_string();

            let after_unambiguous = prev_raw.map(ends_unambiguous).unwrap_or(false);
            let after_period = prev_raw
                .map(|p| ends_with_period(&token_type(p)))
                .unwrap_or(false);

            if after_unambiguous {
                n_starts += 1;
                *starter_counts.entry(key.clone()).or_insert(0) += 1;
            }

            if let Some(c) = first_alpha(raw) {
                let flag = match (after_unambiguous, after_period, c.is_uppercase()) {
                    (true, _, true) => Some(ortho::UC_INITIAL),
                    (true, _, false) => Some(ortho::LC_INITIAL),
                    // Position after an ambiguous '.' is skipped.
                    (false, true, _) => None,
                    (false, false, true) => Some(ortho::UC_INTERNAL),
                    (false, false, false) => Some(ortho::LC_INTERNAL),
                };
                if let Some(f) = flag {
                    *ortho_flags.entry(key.clone()).or_insert(0) |= f;
                }
            }

            if let Some(prev) = prev_raw {
                let pty = token_type(prev);
                if ends_with_period(&pty) {
                    let pkey = strip_final_period(&pty).to_string();
                    *pair_counts.entry((pkey, key.clone())).or_insert(0) += 1;
                }
            }
            prev_raw = Some(raw);
        }
    }

    let count_of = |key: &str| stats.get(key).map(|s| s.type_count).unwrap_or(0);

    let mut collocations: BTreeSet<(String, String)> = BTreeSet::new();
    for ((left, right), &pair) in &pair_counts {
        if pair < MIN_PAIR_COUNT {
            continue;
        }
        let ca = count_of(left);
        let cb = count_of(right);
        if ca == 0 || cb == 0 {
            continue;
        }
        // Positive association only.
        if (pair as f64) / (ca as f64) <= (cb as f64) / (global_tokens as f64) {
            continue;
        }
        let ll = log_likelihood(pair.min(ca).min(cb), ca, cb, global_tokens)?;
        if ll >= config.collocation_threshold {
            collocations.insert((left.clone(), right.clone()));
        }
    }

    let mut sentence_starters: BTreeSet<String> = BTreeSet::new();
    if n_starts > 0 {
        for (ty, &starts) in &starter_counts {
            if starts < MIN_PAIR_COUNT {
                continue;
            }
            let cb = count_of(ty);
            if cb == 0 {
                continue;
            }
            if (starts as f64) / (n_starts as f64) <= (cb as f64) / (global_tokens as f64) {
                continue;
            }
            let ll = log_likelihood(starts.min(n_starts).min(cb), n_starts, cb, global_tokens)?;
            if ll >= config.starter_threshold {
                sentence_starters.insert(ty.clone());
            }
        }
    }

    Ok(PunktParameters {
        abbreviations,
        collocations,
        sentence_starters,
        ortho_context: ortho_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent closed-form evaluation used as the oracle for the
    /// log-likelihood implementation.
    fn ll_oracle(ab: f64, a: f64, b: f64, n: f64) -> f64 {
        let xlx = |k: f64, x: f64| if k == 0.0 { 0.0 } else { k * x.ln() };
        let ell = |k: f64, m: f64, x: f64| xlx(k, x) + xlx(m - k, 1.0 - x);
        let p = b / n;
        let p1 = if a > 0.0 { ab / a } else { 0.0 };
        let p2 = (b - ab) / (n - a);
        2.0 * (ell(ab, a, p1) + ell(b - ab, n - a, p2) - ell(ab, a, p) - ell(b - ab, n - a, p))
    }

    #[test]
    fn ll_independence_is_zero() {
        assert_eq!(log_likelihood(10, 100, 100, 1000).unwrap(), 0.0);
    }

    #[test]
    fn ll_perfect_association() {
        let v = log_likelihood(60, 60, 60, 1000).unwrap();
        let expect = ll_oracle(60.0, 60.0, 60.0, 1000.0);
        assert!(v > 0.0);
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
        // Frozen from the direct formula: -2*(60*ln(0.06) + 940*ln(0.94)).
        assert!((v - 453.9350450012089).abs() < 1e-9, "{v}");
    }

    #[test]
    fn ll_zero_b_is_zero() {
        assert_eq!(log_likelihood(0, 50, 0, 100).unwrap(), 0.0);
    }

    #[test]
    fn ll_rejects_bad_counts() {
        assert!(log_likelihood(5, 4, 10, 100).is_err());
        assert!(log_likelihood(1, 1, 1, 0).is_err());
    }

    #[test]
    fn abbrev_score_monotone_in_period_ratio() {
        let always = TokenTypeStats {
            type_form: "se.c".into(), // len 3 with 1 internal period
            type_count: 10,
            period_final_count: 10,
            internal_periods: 1,
        };
        let rare = TokenTypeStats {
            type_form: "se.c".into(),
            type_count: 100,
            period_final_count: 10,
            internal_periods: 1,
        };
        let hi = score_abbreviation(&always, 500, 5000).unwrap();
        let lo = score_abbreviation(&rare, 500, 5000).unwrap();
        assert!(hi > lo, "{hi} vs {lo}");
    }

    #[test]
    fn abbrev_score_zero_without_periods() {
        let st = TokenTypeStats {
            type_form: "word".into(),
            type_count: 40,
            period_final_count: 0,
            internal_periods: 0,
        };
        assert_eq!(score_abbreviation(&st, 100, 1000).unwrap(), 0.0);
    }

    #[test]
    fn train_empty_corpus_rejected() {
        assert_eq!(train(&[], &PunktConfig::default()), Err(TrainError::EmptyCorpus));
    }

    #[test]
    fn train_no_periods_no_abbreviations() {
        let docs: Vec<TextDocument> = (0..5)
            .map(|i| TextDocument::new(format!("d{i}"), "alpha beta gamma"))
            .collect();
        let params = train(&docs, &PunktConfig::default()).unwrap();
        assert!(params.abbreviations.is_empty());
    }

    #[test]
    fn train_recovers_planted_starter() {
        // "United" always follows '!' boundaries, 60 times.
        let mut text = String::new();
        for _ in 0..60 {
            text.push_str("The claim was denied! United argued the point again and again. ");
        }
        let docs = vec![TextDocument::new("d", text)];
        let params = train(&docs, &PunktConfig::default()).unwrap();
        assert!(
            params.sentence_starters.contains("united"),
            "starters: {:?}",
            params.sentence_starters
        );
    }

    #[test]
    fn train_recovers_planted_abbreviation() {
        // "sec." always mid-sentence, followed by digits. The sentence-final
        // words "here" and "now" also occur bare mid-sentence, which is what
        // keeps ordinary words out of the abbreviation list.
        let mut text = String::new();
        for i in 0..40 {
            text.push_str(&format!(
                "The parties rely on sec. {} of the agreement here. More text follows now. \
                 It was here that the now binding terms were settled by counsel. ",
                i % 9 + 1
            ));
        }
        let docs = vec![TextDocument::new("d", text)];
        let params = train(&docs, &PunktConfig::default()).unwrap();
        assert!(params.abbreviations.contains("sec"), "{:?}", params.abbreviations);
        // Ordinary sentence-final words must not be classified.
        assert!(!params.abbreviations.contains("here"));
        assert!(!params.abbreviations.contains("now"));
    }
}
