//! Literal syntaxes accepted on the command line.

use crate::error::{QpaError, Result};
use crate::scalar::{parse_rational, Rational};
use crate::spectrum::{depolarizing, Spectrum};
use crate::tableaux::{SemistandardTableau, Word};

/// `"0.1,0.9"`, `"1/10,9/10"` or `"depolarizing:d=3,eta=0.3"`, parsed exactly.
pub fn parse_spectrum(text: &str) -> Result<Spectrum<Rational>> {
    let text = text.trim();
    if let Some(params) = text.strip_prefix("depolarizing:") {
        let mut d = None;
        let mut eta = None;
        for field in params.split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "d" => {
                    d = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| invalid(format!("bad dimension {value:?}")))?,
                    )
                }
                "eta" => eta = Some(parse_rational(value).ok_or_else(|| invalid(format!("bad noise rate {value:?}")))?),
                other => return Err(invalid(format!("unknown depolarizing parameter {other:?}"))),
            }
        }
        let d = d.ok_or_else(|| invalid("depolarizing spectrum needs d"))?;
        let eta = eta.ok_or_else(|| invalid("depolarizing spectrum needs eta"))?;
        return depolarizing(d, eta);
    }
    let p = text
        .split(',')
        .map(|item| parse_rational(item).ok_or_else(|| invalid(format!("bad probability {item:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(p)
}

fn invalid(msg: impl Into<String>) -> QpaError {
    QpaError::InvalidSpectrum(msg.into())
}

/// Letters separated by whitespace or commas.
pub fn parse_letters(text: &str) -> Result<Vec<u32>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<u32>() {
            Ok(x) if x >= 1 => Ok(x),
            _ => Err(QpaError::Parse(format!("{t:?} is not a letter (positive integer)"))),
        })
        .collect()
}

/// A word, using `d` if given and the largest letter otherwise.
pub fn parse_word(text: &str, d: Option<usize>) -> Result<Word> {
    let letters = parse_letters(text)?;
    match d {
        Some(d) => Word::new(letters, d),
        None => Word::with_inferred_alphabet(letters),
    }
}

/// Rows separated by `/`, e.g. `"1 1 2 3 / 2 2 3 / 3"`.
pub fn parse_tableau(text: &str, d: Option<usize>) -> Result<SemistandardTableau> {
    let rows = text.split('/').map(parse_letters).collect::<Result<Vec<_>>>()?;
    let largest = rows.iter().flatten().copied().max().unwrap_or(1) as usize;
    let d = d.unwrap_or(largest.max(2));
    SemistandardTableau::from_rows(d, &rows)
}

/// A nonempty comma-separated list.
pub fn parse_grid<T>(text: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| item(t).ok_or_else(|| QpaError::Parse(format!("bad grid value {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(QpaError::Parse("grid is empty".into()));
    }
    Ok(values)
}
