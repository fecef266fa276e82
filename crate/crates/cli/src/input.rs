//! Parsing of vertex lists and batch files.

use std::fmt;

use besant::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadInput {
    pub label: Option<String>,
    pub vertices: [Point; 4],
}

/// A decimal number or a fraction `p/q`.
fn number(tok: &str) -> Result<f64, ParseError> {
    let bad = || ParseError(format!("invalid number `{tok}`"));
    let value = match tok.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => tok.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ParseError(format!("non-finite number `{tok}`")))
    }
}

/// Parses `"x1,y1 x2,y2 x3,y3 x4,y4"`.
pub fn parse_vertices(text: &str) -> Result<[Point; 4], ParseError> {
    let pairs: Vec<&str> = text.split_whitespace().collect();
    if pairs.len() != 4 {
        return Err(ParseError(format!("expected 4 vertices, got {}", pairs.len())));
    }
    let mut out = [Point::ORIGIN; 4];
    for (slot, pair) in out.iter_mut().zip(pairs) {
        let (x, y) = pair
            .split_once(',')
            .ok_or_else(|| ParseError(format!("vertex `{pair}` is not of the form x,y")))?;
        *slot = Point::new(number(x)?, number(y)?);
    }
    Ok(out)
}

/// One batch line: an optional `label:` prefix followed by four vertices.
pub fn parse_line(line: &str) -> Result<QuadInput, ParseError> {
    let line = line.trim();
    let (label, rest) = match line.split_once(':') {
        Some((label, rest)) => (Some(label.trim().to_string()), rest),
        None => (None, line),
    };
    Ok(QuadInput { label, vertices: parse_vertices(rest)? })
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub fn batch_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_fractions() {
        let v = parse_vertices("0,0 0,1 2,4 34/5,-12/5").unwrap();
        assert_eq!(v[3], Point::new(6.8, -2.4));
        assert_eq!(parse_vertices(" 0,0\t0,1  1,1 1,0 ").unwrap()[2], Point::new(1.0, 1.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_vertices("0,0 0,1 1,2").unwrap_err().0.contains("expected 4"));
        assert!(parse_vertices("0,0 0,1 1,2 3").is_err());
        assert!(parse_vertices("0,0 0,1 1,2 a,3").is_err());
        assert!(parse_vertices("0,0 0,1 1,2 inf,3").is_err());
        assert!(parse_vertices("0,0 0,1 1,2 1/0,3").is_err());
    }

    #[test]
    fn batch_labels_and_comments() {
        let text = "# header\n\nex: 0,0 0,1 2,4 6.8,-2.4\n0,0 0,1 1,1 1,0\n";
        let lines = batch_lines(text);
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].0, 3);
        let q = parse_line(lines[0].1).unwrap();
        assert_eq!(q.label.as_deref(), Some("ex"));
        assert_eq!(parse_line(lines[1].1).unwrap().label, None);
    }
}
