//! Line-oriented ring presentation format.
//!
//! ```text
//! RING cp2
//! DIM 4
//! BASIS 0 1 1
//! BASIS 1 0
//! BASIS 2 1 a
//! BASIS 3 0
//! BASIS 4 1 a2
//! CUP 2.0 2.0 -> 4.0
//! W1 0
//! W2 2.0
//! TOP 4.0
//! ```

use std::fmt::Write as _;

use super::ring::{Class, CohomRing, RingBuilder};
use super::CharClassError;

fn err(line: usize, msg: impl Into<String>) -> CharClassError {
    CharClassError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_ref(token: &str) -> Option<(usize, usize)> {
    let (p, i) = token.split_once('.')?;
    Some((p.parse().ok()?, i.parse().ok()?))
}

/// Parses `0` or `p.i + p.j + ...`, all terms in `degree`.
fn parse_class(text: &str, degree: usize, ranks: &[usize]) -> Result<Class, String> {
    let rank = ranks.get(degree).copied().unwrap_or(0);
    let mut class = Class::zero(degree, rank);
    let text = text.trim();
    if text == "0" {
        return Ok(class);
    }
    for term in text.split('+') {
        let term = term.trim();
        let (p, i) = parse_ref(term).ok_or_else(|| format!("bad basis reference `{term}`"))?;
        if p != degree {
            return Err(format!("`{term}` is not in degree {degree}"));
        }
        if i >= rank {
            return Err(format!("`{term}` is out of range (rank {rank})"));
        }
        class.coeffs[i] ^= true;
    }
    Ok(class)
}

pub fn parse_ring(text: &str) -> Result<CohomRing, CharClassError> {
    let mut name = None;
    let mut dim = None;
    let mut ranks: Vec<Option<usize>> = Vec::new();
    let mut builder: Option<RingBuilder> = None;
    let mut deferred = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match key {
            "RING" => {
                if name.is_some() {
                    return Err(err(line, "duplicate RING header"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(line, "RING expects a single name"));
                }
                name = Some(rest.to_string());
            }
            "DIM" => {
                let n = name.as_ref().ok_or_else(|| err(line, "DIM before RING"))?;
                if dim.is_some() {
                    return Err(err(line, "duplicate DIM"));
                }
                let d: usize = rest.parse().map_err(|_| err(line, format!("bad dimension `{rest}`")))?;
                dim = Some(d);
                ranks = vec![None; d + 1];
                builder = Some(RingBuilder::new(n, d));
            }
            "BASIS" => {
                let b = builder.take().ok_or_else(|| err(line, "BASIS before DIM"))?;
                let mut it = rest.split_whitespace();
                let p: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line, "BASIS expects a degree"))?;
                let count: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line, "BASIS expects a rank"))?;
                let labels: Vec<String> = it.map(str::to_string).collect();
                if p >= ranks.len() {
                    return Err(err(line, format!("degree {p} exceeds the dimension")));
                }
                if ranks[p].is_some() {
                    return Err(err(line, format!("duplicate BASIS for degree {p}")));
                }
                if labels.len() != count {
                    return Err(err(
                        line,
                        format!("rank {count} but {} labels", labels.len()),
                    ));
                }
                ranks[p] = Some(count);
                builder = Some(b.basis(p, labels));
            }
            "CUP" | "W1" | "W2" | "TOP" => {
                if builder.is_none() {
                    return Err(err(line, format!("{key} before DIM")));
                }
                deferred.push((line, key, rest));
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let d = dim.ok_or_else(|| err(last_line, "missing DIM (file truncated?)"))?;
    let mut b = builder.expect("builder exists once DIM is read");
    let mut full = Vec::with_capacity(d + 1);
    for (p, r) in ranks.iter().enumerate() {
        full.push(r.ok_or_else(|| err(last_line, format!("missing BASIS for degree {p} (file truncated?)")))?);
    }

    let (mut w1, mut w2, mut top) = (None, None, None);
    for (line, key, rest) in deferred {
        match key {
            "CUP" => {
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| err(line, "CUP expects `p.i q.j -> ...`"))?;
                let refs: Vec<&str> = lhs.split_whitespace().collect();
                let [a, c] = refs[..] else {
                    return Err(err(line, "CUP expects two factors"));
                };
                let a = parse_ref(a).ok_or_else(|| err(line, format!("bad basis reference `{a}`")))?;
                let c = parse_ref(c).ok_or_else(|| err(line, format!("bad basis reference `{c}`")))?;
                for (p, i) in [a, c] {
                    if p > d || i >= full[p] {
                        return Err(err(line, format!("`{p}.{i}` is not a basis element")));
                    }
                }
                if a.0 + c.0 > d {
                    return Err(err(line, "product exceeds the top degree"));
                }
                if b.has_product(a, c) {
                    return Err(err(line, "duplicate CUP entry"));
                }
                let result = parse_class(rhs, a.0 + c.0, &full).map_err(|m| err(line, m))?;
                b = b.product(a, c, result);
            }
            "W1" => {
                if w1.is_some() {
                    return Err(err(line, "duplicate W1"));
                }
                w1 = Some(parse_class(rest, 1, &full).map_err(|m| err(line, m))?);
            }
            "W2" => {
                if w2.is_some() {
                    return Err(err(line, "duplicate W2"));
                }
                w2 = Some(parse_class(rest, 2, &full).map_err(|m| err(line, m))?);
            }
            _ => {
                let r = parse_ref(rest).ok_or_else(|| err(line, format!("bad TOP `{rest}`")))?;
                if r != (d, 0) {
                    return Err(err(line, format!("TOP must be {d}.0")));
                }
                top = Some(r);
            }
        }
    }
    let w1 = w1.ok_or_else(|| err(last_line, "missing W1 (file truncated?)"))?;
    let w2 = w2.ok_or_else(|| err(last_line, "missing W2 (file truncated?)"))?;
    top.ok_or_else(|| err(last_line, "missing TOP (file truncated?)"))?;
    b.w1(w1).w2(w2).build()
}

pub fn serialize_ring(ring: &CohomRing) -> String {
    let d = ring.dim();
    let mut out = String::new();
    writeln!(out, "RING {}", ring.name()).unwrap();
    writeln!(out, "DIM {d}").unwrap();
    for p in 0..=d {
        let labels = ring.labels(p);
        let mut line = format!("BASIS {p} {}", labels.len());
        for l in labels {
            line.push(' ');
            line.push_str(l);
        }
        writeln!(out, "{line}").unwrap();
    }
    for p in 1..=d {
        for q in p..=d - p {
            for i in 0..ring.rank(p) {
                let j0 = if p == q { i } else { 0 };
                for j in j0..ring.rank(q) {
                    let c = ring.cup_basis(p, i, q, j);
                    if !c.is_zero() {
                        writeln!(out, "CUP {p}.{i} {q}.{j} -> {c}").unwrap();
                    }
                }
            }
        }
    }
    writeln!(out, "W1 {}", ring.w1()).unwrap();
    writeln!(out, "W2 {}", ring.w2()).unwrap();
    writeln!(out, "TOP {d}.{}", ring.top_index()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::{cp2, torus};

    #[test]
    fn round_trip() {
        for ring in [cp2(), torus(3)] {
            let text = serialize_ring(&ring);
            assert_eq!(parse_ring(&text).unwrap(), ring);
            assert_eq!(serialize_ring(&parse_ring(&text).unwrap()), text);
        }
    }

    #[test]
    fn truncated_names_line() {
        let text = serialize_ring(&cp2());
        let cut: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        match parse_ring(&cut) {
            Err(CharClassError::Parse { line: 4, msg }) => assert!(msg.contains("BASIS")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_associative_rejected() {
        // (x·y)·y = t while y·y = 0.
        let text = "RING bad\nDIM 3\nBASIS 0 1 1\nBASIS 1 2 x y\nBASIS 2 2 z w\nBASIS 3 1 t\n\
                    CUP 1.0 1.1 -> 2.0\nCUP 2.0 1.1 -> 3.0\nCUP 2.1 1.0 -> 3.0\nCUP 2.1 1.1 -> 0\n\
                    CUP 2.0 1.0 -> 0\nW1 0\nW2 0\nTOP 3.0\n";
        match parse_ring(text) {
            Err(CharClassError::NonAssociative(a, b, c)) => {
                assert!([a, b, c].iter().all(|r| r.starts_with('1') || r.starts_with('2')))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_reference_reports_line() {
        let text = "RING s\nDIM 2\nBASIS 0 1 1\nBASIS 1 0\nBASIS 2 1 s\nW1 0\nW2 2.3\nTOP 2.0\n";
        assert!(matches!(parse_ring(text), Err(CharClassError::Parse { line: 7, .. })));
    }
}
