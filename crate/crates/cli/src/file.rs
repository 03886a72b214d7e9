//! Coefficient files.
//!
//! Text: an optional header `# basis=<tag> params=<csv> n=<len>` followed by
//! one value per line, written with 17 significant digits.
//!
//! Binary: the magic bytes `PXF1`, the length as a little-endian `u64`, then
//! the values as little-endian `f64`.

use std::io::Write;

use polyconv::Basis;

use crate::CliError;

pub const MAGIC: &[u8; 4] = b"PXF1";

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    /// Basis named in the text header, if any.
    pub basis: Option<Basis>,
    pub values: Vec<f64>,
}

impl CoefficientFile {
    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        if bytes.starts_with(MAGIC) {
            parse_binary(bytes)
        } else {
            let text = std::str::from_utf8(bytes)
                .map_err(|_| CliError::Parse("input is neither PXF1 binary nor UTF-8 text".into()))?;
            parse_text(text)
        }
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        Self::parse(&bytes)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(basis) = &self.basis {
            out.push_str(&header(basis, self.values.len()));
            out.push('\n');
        }
        for v in &self.values {
            out.push_str(&format!("{v:.16e}\n"));
        }
        out
    }

    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 8 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.values.len() as u64).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Writes to `path`, or to standard output when `path` is `None`.
    pub fn write(&self, path: Option<&str>, binary: bool) -> Result<(), CliError> {
        let bytes = if binary {
            self.to_binary()
        } else {
            self.to_text().into_bytes()
        };
        match path {
            Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{p}: {e}"))),
            None => std::io::stdout()
                .lock()
                .write_all(&bytes)
                .map_err(|e| CliError::Io(format!("stdout: {e}"))),
        }
    }
}

pub fn header(basis: &Basis, len: usize) -> String {
    let params: Vec<String> = basis.params().iter().map(|p| p.to_string()).collect();
    format!("# basis={} params={} n={len}", basis.tag(), params.join(","))
}

fn parse_binary(bytes: &[u8]) -> Result<CoefficientFile, CliError> {
    let len_bytes: [u8; 8] = bytes
        .get(4..12)
        .and_then(|b| b.try_into().ok())
        .ok_or_else(|| CliError::Parse("truncated PXF1 header".into()))?;
    let len = u64::from_le_bytes(len_bytes) as usize;
    let body = &bytes[12..];
    if Some(body.len()) != len.checked_mul(8) {
        return Err(CliError::Parse(format!(
            "PXF1 header announces {len} values but the body holds {} bytes",
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunks of 8")))
        .collect();
    Ok(CoefficientFile {
        basis: None,
        values,
    })
}

fn parse_text(text: &str) -> Result<CoefficientFile, CliError> {
    let mut basis = None;
    let mut declared = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if lineno == 0 {
                let (b, n) = parse_header(rest)?;
                basis = b;
                declared = n;
            }
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::Parse(format!("line {}: cannot parse '{line}'", lineno + 1)))?;
        values.push(v);
    }
    if let Some(n) = declared {
        if n != values.len() {
            return Err(CliError::Parse(format!(
                "header declares n={n} but the file holds {} values",
                values.len()
            )));
        }
    }
    Ok(CoefficientFile { basis, values })
}

fn parse_header(rest: &str) -> Result<(Option<Basis>, Option<usize>), CliError> {
    let mut tag = None;
    let mut params = Vec::new();
    let mut n = None;
    for field in rest.split_whitespace() {
        let Some((key, value)) = field.split_once('=') else {
            continue;
        };
        match key {
            "basis" => tag = Some(value.to_string()),
            "params" if !value.is_empty() => {
                params = value
                    .split(',')
                    .map(|p| {
                        p.parse::<f64>()
                            .map_err(|_| CliError::Parse(format!("bad header parameter '{p}'")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "n" => {
                n = Some(
                    value
                        .parse()
                        .map_err(|_| CliError::Parse(format!("bad header length '{value}'")))?,
                )
            }
            _ => {}
        }
    }
    let basis = tag
        .map(|t| Basis::from_parts(&t, &params))
        .transpose()
        .map_err(CliError::from)?;
    Ok((basis, n))
}
