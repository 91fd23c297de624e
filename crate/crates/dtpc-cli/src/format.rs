//! The on-disk codebook format, line-oriented text:
//!
//! ```text
//! # dtpc-codebook v1
//! N=2 K=1 n=5
//! 2 2 2 2 0
//! 2 2 2 1 0
//! ```
//!
//! LF endings, no trailing blank lines, one codeword per line after the two
//! header lines. Parsing is strict and is the exact inverse of
//! serialization, so write-then-read reproduces the codebook byte for byte.

use std::fmt;

use dtpc::{ChannelParams, Codebook, ParticleSeq};

pub const MAGIC: &str = "# dtpc-codebook v1";

/// Where and why a codebook file failed to parse. `line` is 1-based; 0
/// means the file as a whole (e.g. an ordering violation across lines).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

pub fn serialize(cb: &Codebook) -> String {
    let p = cb.params();
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!(
        "N={} K={} n={}\n",
        p.max_per_slot,
        p.max_delay,
        cb.word_len()
    ));
    for word in cb {
        out.push_str(&word.to_string());
        out.push('\n');
    }
    out
}

/// Parse a `key=value` header field into an integer.
fn field<T: std::str::FromStr>(token: Option<&str>, key: &str) -> Result<T, FormatError> {
    let token = token.ok_or_else(|| err(2, format!("missing {key}= field")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(2, format!("expected {key}=<integer>, got {token:?}")))?;
    value
        .parse()
        .map_err(|_| err(2, format!("{key}= is not a valid integer: {value:?}")))
}

pub fn parse(text: &str) -> Result<Codebook, FormatError> {
    if text.contains('\r') {
        return Err(err(0, "carriage returns are not allowed (LF endings only)"));
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');

    match lines.next() {
        Some(MAGIC) => {}
        Some(other) => return Err(err(1, format!("expected {MAGIC:?}, got {other:?}"))),
        None => return Err(err(1, "empty file")),
    }
    let header = lines.next().ok_or_else(|| err(2, "missing header line"))?;
    let mut tokens = header.split_whitespace();
    let max_per_slot: u32 = field(tokens.next(), "N")?;
    let max_delay: u32 = field(tokens.next(), "K")?;
    let word_len: usize = field(tokens.next(), "n")?;
    if let Some(extra) = tokens.next() {
        return Err(err(2, format!("unexpected trailing token {extra:?}")));
    }

    let params = ChannelParams::new(max_per_slot, max_delay);
    let mut words = Vec::new();
    for (offset, line) in lines.enumerate() {
        let line_no = offset + 3;
        let word: ParticleSeq = line
            .parse()
            .map_err(|e| err(line_no, format!("bad codeword: {e}")))?;
        if word.len() != word_len {
            return Err(err(
                line_no,
                format!("expected {word_len} symbols, got {}", word.len()),
            ));
        }
        words.push(word);
    }

    Codebook::new(params, word_len, words).map_err(|e| err(0, e.to_string()))
}
