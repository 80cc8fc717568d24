//! OV instance text format.
//!
//! ```text
//! # optional comment lines
//! <n> <l>
//! <l characters over {0,1}>   (n lines)
//! ```
//!
//! The writer emits no comments, so `parse -> to_text` is the identity on
//! writer output.

use std::fmt::Write;

use super::{BitVector, OvError, OvInstance};

impl OvInstance {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.len(), self.dim()).unwrap();
        for v in self.vectors() {
            writeln!(out, "{v}").unwrap();
        }
        out
    }

    /// Parses the text format. The header count must match the number of
    /// vector lines; duplicates are then dropped as in [`OvInstance::new`].
    pub fn parse(text: &str) -> Result<Self, OvError> {
        let err = |line: usize, msg: String| OvError::Parse { line, msg };
        let mut header: Option<(usize, usize)> = None;
        let mut vectors = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    let parsed = match fields.as_slice() {
                        [n, l] => n.parse::<usize>().ok().zip(l.parse::<usize>().ok()),
                        _ => None,
                    };
                    let (n, l) = parsed.ok_or_else(|| {
                        err(line_no, format!("expected \"<n> <l>\", got {line:?}"))
                    })?;
                    if n == 0 || l == 0 {
                        return Err(err(line_no, "n and l must be positive".into()));
                    }
                    header = Some((n, l));
                }
                Some((n, l)) => {
                    if vectors.len() == n {
                        return Err(err(line_no, format!("more than {n} vector lines")));
                    }
                    let v = BitVector::parse(line).map_err(|e| match e {
                        OvError::Parse { msg, .. } => err(line_no, msg),
                        other => err(line_no, other.to_string()),
                    })?;
                    if v.len() != l {
                        return Err(err(
                            line_no,
                            format!("vector has length {}, header says {l}", v.len()),
                        ));
                    }
                    vectors.push(v);
                }
            }
        }
        let (n, _) = header.ok_or_else(|| err(0, "missing \"<n> <l>\" header".into()))?;
        if vectors.len() != n {
            return Err(err(
                text.lines().count(),
                format!("header announces {n} vectors, found {}", vectors.len()),
            ));
        }
        OvInstance::new(vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let s = OvInstance::parse("# test\n3 3\n111\n# mid\n110\n101\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_text(), "3 3\n111\n110\n101\n");
    }

    #[test]
    fn round_trips_writer_output() {
        let text = "4 4\n0111\n1011\n1101\n1110\n";
        assert_eq!(OvInstance::parse(text).unwrap().to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = OvInstance::parse("2 3\n111\n1a1\n").unwrap_err();
        assert!(matches!(e, OvError::Parse { line: 3, .. }), "{e:?}");
        let e = OvInstance::parse("2 3\n111\n11\n").unwrap_err();
        assert!(matches!(e, OvError::Parse { line: 3, .. }), "{e:?}");
        assert!(OvInstance::parse("3 3\n111\n").is_err());
        assert!(OvInstance::parse("x y\n").is_err());
        assert!(OvInstance::parse("").is_err());
        assert!(OvInstance::parse("1 2\n11\n00\n").is_err());
    }
}
