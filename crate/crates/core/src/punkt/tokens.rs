//! Whitespace tokenization and token-type derivation for the unsupervised
//! trainer. A token's type is its case-folded form with digit runs replaced
//! by a number placeholder; trailing non-period punctuation is stripped and a
//! final '.' is retained.

/// Placeholder substituted for every maximal digit run inside a type.
pub const NUMBER_PLACEHOLDER: char = '#';

/// Derives the type of a raw whitespace-delimited token.
pub fn token_type(raw: &str) -> String {
    // Trim to the span from the first alphanumeric char through the last
    // char that is alphanumeric or '.'.
    let Some(start) = raw.char_indices().find(|(_, c)| c.is_alphanumeric()).map(|(i, _)| i)
    else {
        return String::new();
    };
    let mut end = start;
    for (i, c) in raw[start..].char_indices() {
        if c.is_alphanumeric() || c == '.' {
            end = start + i + c.len_utf8();
        }
    }
    let core = &raw[start..end];
    let mut out = String::with_capacity(core.len());
    let mut in_digits = false;
    for c in core.chars() {
        if c.is_ascii_digit() {
            if !in_digits {
                out.push(NUMBER_PLACEHOLDER);
                in_digits = true;
            }
        } else {
            in_digits = false;
            for l in c.to_lowercase() {
                out.push(l);
            }
        }
    }
    out
}

/// Type with any final '.' removed; the key under which abbreviation
/// statistics are stored.
pub fn strip_final_period(ty: &str) -> &str {
    ty.strip_suffix('.').unwrap_or(ty)
}

/// True when the token type carries a final period.
pub fn ends_with_period(ty: &str) -> bool {
    ty.ends_with('.')
}

/// Number of '.' chars not in final position.
pub fn internal_periods(ty: &str) -> u64 {
    let body = strip_final_period(ty);
    body.chars().filter(|&c| c == '.').count() as u64
}

/// Length of a type excluding all periods (the abbreviation length factor).
pub fn len_without_periods(ty: &str) -> usize {
    ty.chars().filter(|&c| c != '.').count()
}

/// First cased alphabetic char of a raw token, skipping leading punctuation.
pub fn first_alpha(raw: &str) -> Option<char> {
    raw.chars().find(|c| c.is_alphabetic())
}

/// True when the raw token, ignoring trailing quotes/brackets, ends with an
/// unambiguous sentence terminator ('!' or '?').
pub fn ends_unambiguous(raw: &str) -> bool {
    raw.trim_end_matches(|c: char| {
        matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{2019}' | '\u{201D}')
    })
    .ends_with(['!', '?'])
}
