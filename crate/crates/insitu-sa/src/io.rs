//! Reading texts and writing suffix arrays in the command-line formats.

use std::fmt;

use crate::text::Text;

/// Input encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// Raw bytes; byte `b` becomes symbol `b + 1`.
    Bytes,
    /// Little-endian 32-bit words.
    U32,
    /// Whitespace-separated decimal integers.
    Text,
}

/// Output encodings for suffix arrays and transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    U32,
    U64,
    Text,
}

/// Magic bytes opening a file written with a header.
pub const MAGIC: &[u8; 8] = b"INSITUSA";

/// A malformed input, with the byte offset of the offending item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestError {
    pub offset: usize,
    pub msg: String,
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.msg)
    }
}

impl std::error::Error for IngestError {}

fn err(offset: usize, msg: impl Into<String>) -> IngestError {
    IngestError {
        offset,
        msg: msg.into(),
    }
}

/// Parses `data` as a text. The sentinel is appended unless the input
/// already ends with `0`; a `0` anywhere else is rejected.
pub fn ingest(data: &[u8], format: InputFormat) -> Result<Text, IngestError> {
    let mut items: Vec<(usize, usize)> = Vec::new();
    match format {
        InputFormat::Bytes => return Ok(Text::from_bytes(data)),
        InputFormat::U32 => {
            if !data.len().is_multiple_of(4) {
                return Err(err(
                    data.len() - data.len() % 4,
                    "trailing bytes after last 32-bit word",
                ));
            }
            for (k, w) in data.chunks_exact(4).enumerate() {
                let v = u32::from_le_bytes(w.try_into().unwrap());
                items.push((4 * k, v as usize));
            }
        }
        InputFormat::Text => {
            let mut i = 0;
            while i < data.len() {
                if data[i].is_ascii_whitespace() {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < data.len() && !data[i].is_ascii_whitespace() {
                    i += 1;
                }
                let tok = &data[start..i];
                if !tok.iter().all(u8::is_ascii_digit) {
                    return Err(err(
                        start,
                        format!("not a decimal integer: {:?}", String::from_utf8_lossy(tok)),
                    ));
                }
                let v: u64 = std::str::from_utf8(tok)
                    .unwrap()
                    .parse()
                    .map_err(|_| err(start, "integer too large"))?;
                if v > u32::MAX as u64 {
                    return Err(err(start, format!("value {v} exceeds 2^32 - 1")));
                }
                items.push((start, v as usize));
            }
        }
    }
    let body = &items[..items.len().saturating_sub(1)];
    if let Some(&(off, _)) = body.iter().find(|&&(_, v)| v == 0) {
        return Err(err(off, "symbol 0 is reserved for the final sentinel"));
    }
    let mut symbols: Vec<usize> = items.into_iter().map(|(_, v)| v).collect();
    if symbols.last() != Some(&0) {
        symbols.push(0);
    }
    Text::from_symbols(symbols).map_err(|e| err(0, e.to_string()))
}

/// Encodes `values` in `format`, optionally behind a header of the magic
/// bytes, the count and the width in bytes (all little-endian `u64`; width 0
/// for decimal text).
pub fn encode(values: &[usize], format: OutputFormat, header: bool) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    if header {
        let width: u64 = match format {
            OutputFormat::U32 => 4,
            OutputFormat::U64 => 8,
            OutputFormat::Text => 0,
        };
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(values.len() as u64).to_le_bytes());
        out.extend_from_slice(&width.to_le_bytes());
    }
    match format {
        OutputFormat::U32 => {
            if values.iter().any(|&v| v > u32::MAX as usize) {
                return Err("values do not fit in 32 bits; use u64".into());
            }
            for &v in values {
                out.extend_from_slice(&(v as u32).to_le_bytes());
            }
        }
        OutputFormat::U64 => {
            for &v in values {
                out.extend_from_slice(&(v as u64).to_le_bytes());
            }
        }
        OutputFormat::Text => {
            for &v in values {
                out.extend_from_slice(v.to_string().as_bytes());
                out.push(b'\n');
            }
        }
    }
    Ok(out)
}

/// Decodes what [`encode`] wrote. A leading header is detected by its magic
/// and overrides `format`.
pub fn decode(data: &[u8], format: OutputFormat) -> Result<Vec<usize>, IngestError> {
    let (mut body, mut format, mut expect) = (data, format, None);
    if data.len() >= 24 && &data[..8] == MAGIC {
        let n = u64::from_le_bytes(data[8..16].try_into().unwrap()) as usize;
        format = match u64::from_le_bytes(data[16..24].try_into().unwrap()) {
            4 => OutputFormat::U32,
            8 => OutputFormat::U64,
            0 => OutputFormat::Text,
            w => return Err(err(16, format!("unknown width {w}"))),
        };
        body = &data[24..];
        expect = Some(n);
    }
    let values: Vec<usize> = match format {
        OutputFormat::U32 | OutputFormat::U64 => {
            let w = if format == OutputFormat::U32 { 4 } else { 8 };
            if body.len() % w != 0 {
                return Err(err(data.len() - body.len() % w, "trailing bytes after last word"));
            }
            body.chunks_exact(w)
                .map(|c| {
                    let mut b = [0u8; 8];
                    b[..w].copy_from_slice(c);
                    u64::from_le_bytes(b) as usize
                })
                .collect()
        }
        OutputFormat::Text => {
            let base = data.len() - body.len();
            let mut v = Vec::new();
            let mut off = 0;
            for tok in body.split(|b| b.is_ascii_whitespace()) {
                if !tok.is_empty() {
                    let x = std::str::from_utf8(tok)
                        .ok()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(base + off, "not a decimal integer"))?;
                    v.push(x);
                }
                off += tok.len() + 1;
            }
            v
        }
    };
    if let Some(n) = expect {
        if n != values.len() {
            return Err(err(8, format!("header says {n} entries, found {}", values.len())));
        }
    }
    Ok(values)
}

/// Renames symbols to their ranks among the distinct values, which keeps
/// suffix order and makes the alphabet bound at most `n - 1`.
pub fn compact_alphabet(symbols: &mut [usize]) -> usize {
    let mut distinct = symbols.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for s in symbols.iter_mut() {
        *s = distinct.binary_search(s).unwrap();
    }
    (distinct.len() - 1).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_formats() {
        assert_eq!(ingest(b"ab", InputFormat::Bytes).unwrap().symbols(), [98, 99, 0]);
        let t = ingest(b"2 1 1 3 3 1 1 3 3 1 2 1 0\n", InputFormat::Text).unwrap();
        assert_eq!(t.symbols(), [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0]);
        assert_eq!(t.sigma(), 3);
        assert_eq!(
            ingest(&[1, 0, 0, 0, 0, 0, 0, 0], InputFormat::U32).unwrap().symbols(),
            [1, 0]
        );
        assert_eq!(ingest(&[5, 0, 0, 0], InputFormat::U32).unwrap().symbols(), [5, 0]);
        assert_eq!(ingest(b"3 4", InputFormat::Text).unwrap().symbols(), [3, 4, 0]);
    }

    #[test]
    fn ingest_errors_carry_offsets() {
        assert_eq!(ingest(b"1 x2 0", InputFormat::Text).unwrap_err().offset, 2);
        assert_eq!(ingest(b"1 0 2 0", InputFormat::Text).unwrap_err().offset, 2);
        assert_eq!(ingest(b"1 4294967296", InputFormat::Text).unwrap_err().offset, 2);
        assert_eq!(ingest(&[1, 0, 0], InputFormat::U32).unwrap_err().offset, 0);
        assert_eq!(
            ingest(&[0, 0, 0, 0, 1, 0, 0, 0], InputFormat::U32).unwrap_err().offset,
            0
        );
    }

    #[test]
    fn encode_round_trips() {
        let sa = [12, 11, 1, 5, 9, 2, 6, 10, 0, 4, 8, 3, 7];
        for f in [OutputFormat::U32, OutputFormat::U64, OutputFormat::Text] {
            for h in [false, true] {
                let bytes = encode(&sa, f, h).unwrap();
                assert_eq!(decode(&bytes, f).unwrap(), sa);
            }
        }
        assert_eq!(encode(&sa, OutputFormat::U32, false).unwrap().len(), 52);
        assert!(encode(&[1 << 33], OutputFormat::U32, false).is_err());
    }

    #[test]
    fn compaction_keeps_order() {
        let mut t = vec![300, 7, 7, 1000, 0];
        assert_eq!(compact_alphabet(&mut t), 3);
        assert_eq!(t, [2, 1, 1, 3, 0]);
    }
}
