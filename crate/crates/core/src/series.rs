//! Reading numeric series from plain text, CSV columns, and PGM rows.

use std::fmt;
use std::io::{self, Read};
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::pgm::{Pgm, PgmError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("failed to read input: {0}")]
    Io(#[from] io::Error),
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("line {line}, column {column}: cannot parse {token:?} as a number")]
    BadToken {
        line: u64,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: {token:?} is not a finite number")]
    NonFinite {
        line: u64,
        column: usize,
        token: String,
    },
    #[error("line {line}: column {column} is missing (row has {available} fields)")]
    MissingColumn {
        line: u64,
        column: usize,
        available: usize,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("PGM: {0}")]
    Pgm(#[from] PgmError),
    #[error("row {row} is missing (image has {height} rows)")]
    MissingRow { row: usize, height: usize },
    #[error("input contains no values")]
    Empty,
}

/// How to pull numbers out of the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFormat {
    /// Whitespace- or newline-separated decimals.
    Plain,
    /// One 0-based column of a comma-separated file.
    Csv { column: usize },
    /// One 0-based row of a P2/P5 graymap.
    PgmRow { row: usize },
}

impl FromStr for SeriesFormat {
    type Err = String;

    /// Accepts `plain`, `csv:<column>`, or `pgm:<row>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let index = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| format!("invalid index {rest:?} in format {s:?}"))
        };
        match s.split_once(':') {
            None if s == "plain" => Ok(SeriesFormat::Plain),
            Some(("csv", rest)) => Ok(SeriesFormat::Csv {
                column: index(rest)?,
            }),
            Some(("pgm", rest)) => Ok(SeriesFormat::PgmRow { row: index(rest)? }),
            _ => Err(format!(
                "unknown format {s:?} (expected plain, csv:<col>, or pgm:<row>)"
            )),
        }
    }
}

impl fmt::Display for SeriesFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesFormat::Plain => f.write_str("plain"),
            SeriesFormat::Csv { column } => write!(f, "csv:{column}"),
            SeriesFormat::PgmRow { row } => write!(f, "pgm:{row}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputPath {
    Stdin,
    File(PathBuf),
}

impl From<&str> for InputPath {
    /// `-` selects standard input.
    fn from(s: &str) -> Self {
        if s == "-" {
            InputPath::Stdin
        } else {
            InputPath::File(PathBuf::from(s))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSource {
    pub input: InputPath,
    pub format: SeriesFormat,
}

impl SeriesSource {
    pub fn new(input: impl Into<InputPath>, format: SeriesFormat) -> Self {
        Self {
            input: input.into(),
            format,
        }
    }
}

/// Reads and parses the series described by `source`.
pub fn parse_series(source: &SeriesSource) -> Result<Vec<f64>, ParseError> {
    let bytes = match &source.input {
        InputPath::Stdin => {
            let mut buf = Vec::new();
            io::stdin().lock().read_to_end(&mut buf)?;
            buf
        }
        InputPath::File(path) => std::fs::read(path)?,
    };
    parse_series_bytes(&bytes, source.format)
}

/// Parses an in-memory document.
pub fn parse_series_bytes(bytes: &[u8], format: SeriesFormat) -> Result<Vec<f64>, ParseError> {
    let values = match format {
        SeriesFormat::Plain => {
            parse_plain(std::str::from_utf8(bytes).map_err(|_| ParseError::Utf8)?)?
        }
        SeriesFormat::Csv { column } => parse_csv(bytes, column)?,
        SeriesFormat::PgmRow { row } => {
            let img = Pgm::parse(bytes)?;
            img.row(row)
                .ok_or(ParseError::MissingRow {
                    row,
                    height: img.height(),
                })?
                .iter()
                .map(|&p| p as f64)
                .collect()
        }
    };
    if values.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(values)
}

enum TokenError {
    Bad,
    NonFinite,
}

fn parse_number(token: &str) -> Result<f64, TokenError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(TokenError::NonFinite),
        Err(_) => Err(TokenError::Bad),
    }
}

fn token_error(kind: TokenError, line: u64, column: usize, token: &str) -> ParseError {
    let token = token.to_owned();
    match kind {
        TokenError::Bad => ParseError::BadToken {
            line,
            column,
            token,
        },
        TokenError::NonFinite => ParseError::NonFinite {
            line,
            column,
            token,
        },
    }
}

fn parse_plain(text: &str) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            // 1-based character column of the token within its line
            let offset = token.as_ptr() as usize - line.as_ptr() as usize;
            let column = line[..offset].chars().count() + 1;
            let value = parse_number(token)
                .map_err(|e| token_error(e, line_no as u64 + 1, column, token))?;
            values.push(value);
        }
    }
    Ok(values)
}

/// A first record whose selected field is not numeric is taken as a header.
fn parse_csv(bytes: &[u8], column: usize) -> Result<Vec<f64>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let field = record.get(column).ok_or(ParseError::MissingColumn {
            line,
            column,
            available: record.len(),
        })?;
        match parse_number(field) {
            Ok(v) => values.push(v),
            Err(TokenError::Bad) if i == 0 => continue,
            Err(e) => return Err(token_error(e, line, column, field)),
        }
    }
    Ok(values)
}
