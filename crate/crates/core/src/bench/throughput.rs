//! Wall-clock throughput measurement: warmup passes, then a median over
//! repeated timed passes so a single scheduler hiccup cannot skew the rate.

use std::time::Instant;

use crate::text::{Segmenter, TextDocument};

use super::metrics::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputResult {
    pub chars_per_second: f64,
    pub total_chars: usize,
    pub wall_seconds: f64,
    pub repetitions: usize,
}

/// Times `repetitions` full passes over `texts` after `warmup` untimed
/// passes and reports the median-of-runs rate. Single-threaded so rates
/// stay comparable across engines.
pub fn measure_throughput(
    segmenter: &dyn Segmenter,
    texts: &[TextDocument],
    repetitions: usize,
    warmup: usize,
) -> Result<ThroughputResult, BenchError> {
    assert!(repetitions >= 3, "need at least 3 repetitions");
    assert!(warmup >= 1, "need at least 1 warmup pass");
    if texts.is_empty() || texts.iter().all(|t| t.is_empty()) {
        return Err(BenchError::EmptyInput);
    }
    let total_chars: usize = texts.iter().map(|t| t.char_len()).sum();

    for _ in 0..warmup {
        for t in texts {
            std::hint::black_box(segmenter.segment(t));
        }
    }

    let mut runs: Vec<f64> = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        for t in texts {
            std::hint::black_box(segmenter.segment(t));
        }
        runs.push(start.elapsed().as_secs_f64());
    }
    runs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = if runs.len() % 2 == 1 {
        runs[runs.len() / 2]
    } else {
        (runs[runs.len() / 2 - 1] + runs[runs.len() / 2]) / 2.0
    };
    // wall_seconds is normalized so the rate invariant
    // chars_per_second = total_chars * repetitions / wall_seconds holds
    // with the median-of-runs rate.
    let wall_seconds = median * repetitions as f64;
    Ok(ThroughputResult {
        chars_per_second: total_chars as f64 / median,
        total_chars,
        wall_seconds,
        repetitions,
    })
}
