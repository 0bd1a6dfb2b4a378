//! Line-oriented text format for covering certificates.
//!
//! ```text
//! field m=7 M=9/14
//! point 0 x=0 y=0
//! point c0 x=1/2 y=5/14
//! pair 0 0
//! region owner=(0,0): P0 P1 c0 arc[0,0,+,-] P4
//! claim geq B[1,0,+,-] B[0,0,+,-] on [0,1/7] poly=1,2 case=a2
//! claim geqc B[1,0,+,-] 1/2 on [0,1/2] poly=1,8,4 case=a2
//! claim leqc B[1,0,+,+] 1/2 on [0,1/2] poly=-5,8,4 case=b
//! ```
//!
//! Exact numbers are written without spaces (`-73/44+1/44*sqrt(5335)`) so
//! every line splits on whitespace; polynomial coefficients are ascending.
//! Blank lines and `#` comments are ignored. Parse then serialize is the
//! identity on the certificate data.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Signed;

use quadeuclid_core::covering::{
    Certificate, Claim, ClaimKind, LabeledPoint, PointLabel, Region, RegionItem,
};
use quadeuclid_core::exact::{parse_rat, ExactNumber, Rat};
use quadeuclid_core::hyperbola::{Branch, Pm};
use quadeuclid_core::polysign::{CaseLabel, Poly};

#[derive(Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn compact(x: &ExactNumber) -> String {
    x.to_string().replace(' ', "")
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn branch_str(b: &Branch) -> String {
    format!("B[{},{},{},{}]", b.u, b.v, b.theta, b.epsilon)
}

fn poly_str(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .map(rat_str)
        .collect::<Vec<_>>()
        .join(",")
}

fn label_str(l: PointLabel) -> String {
    match l {
        PointLabel::P(i) => format!("P{i}"),
        PointLabel::C(i) => format!("c{i}"),
    }
}

/// Renders a certificate in the text format.
pub fn serialize(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field m={} M={}", cert.m, rat_str(&cert.m1));
    for p in &cert.points {
        let name = match p.label {
            PointLabel::P(i) => format!("{i}"),
            PointLabel::C(i) => format!("c{i}"),
        };
        let _ = writeln!(out, "point {name} x={} y={}", compact(&p.x), compact(&p.y));
    }
    for (u, v) in &cert.pairs {
        let _ = writeln!(out, "pair {u} {v}");
    }
    for r in &cert.regions {
        let items: Vec<String> = r
            .items
            .iter()
            .map(|item| match item {
                RegionItem::Point(l) => label_str(*l),
                RegionItem::Arc(b) => format!("arc[{},{},{},{}]", b.u, b.v, b.theta, b.epsilon),
            })
            .collect();
        let _ = writeln!(
            out,
            "region owner=({},{}): {}",
            r.owner.0,
            r.owner.1,
            items.join(" ")
        );
    }
    for c in &cert.claims {
        let (kind, lhs, rhs) = match &c.kind {
            ClaimKind::Geq { lhs, rhs } => ("geq", branch_str(lhs), branch_str(rhs)),
            ClaimKind::GeqConst { lhs, c } => ("geqc", branch_str(lhs), rat_str(c)),
            ClaimKind::LeqConst { lhs, c } => ("leqc", branch_str(lhs), rat_str(c)),
        };
        let _ = writeln!(
            out,
            "claim {kind} {lhs} {rhs} on [{},{}] poly={} case={}",
            compact(&c.lo),
            compact(&c.hi),
            poly_str(&c.poly),
            c.case
        );
    }
    out
}

fn parse_label(s: &str) -> Option<PointLabel> {
    if let Some(i) = s.strip_prefix('P') {
        return i.parse().ok().map(PointLabel::P);
    }
    if let Some(i) = s.strip_prefix('c') {
        return i.parse().ok().map(PointLabel::C);
    }
    None
}

fn parse_branch(s: &str) -> Option<Branch> {
    let inner = s.strip_prefix("B[")?.strip_suffix(']')?;
    parse_branch_fields(inner)
}

fn parse_branch_fields(inner: &str) -> Option<Branch> {
    let mut it = inner.split(',');
    let u: i64 = it.next()?.parse().ok()?;
    let v: i64 = it.next()?.parse().ok()?;
    let theta: Pm = it.next()?.parse().ok()?;
    let epsilon: Pm = it.next()?.parse().ok()?;
    it.next().is_none().then(|| Branch::new(u, v, theta, epsilon))
}

fn parse_exact(s: &str) -> Option<ExactNumber> {
    ExactNumber::from_str(s).ok()
}

fn parse_interval(s: &str) -> Option<(ExactNumber, ExactNumber)> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    // the comma separating the endpoints is the only comma outside sqrt(..)
    let mut depth = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                return Some((parse_exact(&inner[..i])?, parse_exact(&inner[i + 1..])?));
            }
            _ => {}
        }
    }
    None
}

fn parse_poly(s: &str) -> Option<Poly> {
    if s == "0" {
        return Some(Poly::zero());
    }
    let coeffs: Option<Vec<Rat>> = s.split(',').map(parse_rat).collect();
    Some(Poly::from_coeffs(coeffs?))
}

/// Parses the text format back into a certificate.
pub fn parse(text: &str) -> Result<Certificate, FormatError> {
    let mut m: Option<i64> = None;
    let mut m1: Option<Rat> = None;
    let mut points = Vec::new();
    let mut pairs = Vec::new();
    let mut regions = Vec::new();
    let mut claims = Vec::new();
    let err = |line: usize, message: &str| FormatError {
        line,
        message: message.into(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "field" => {
                for t in &tokens[1..] {
                    if let Some(v) = t.strip_prefix("m=") {
                        m = Some(v.parse().map_err(|_| err(line_no, "bad m"))?);
                    } else if let Some(v) = t.strip_prefix("M=") {
                        m1 = Some(parse_rat(v).ok_or_else(|| err(line_no, "bad M"))?);
                    }
                }
            }
            "point" => {
                if tokens.len() != 4 {
                    return Err(err(line_no, "point needs a label, x= and y="));
                }
                let label = if let Some(i) = tokens[1].strip_prefix('c') {
                    PointLabel::C(i.parse().map_err(|_| err(line_no, "bad critical index"))?)
                } else {
                    PointLabel::P(tokens[1].parse().map_err(|_| err(line_no, "bad point index"))?)
                };
                let x = tokens[2]
                    .strip_prefix("x=")
                    .and_then(parse_exact)
                    .ok_or_else(|| err(line_no, "bad x coordinate"))?;
                let y = tokens[3]
                    .strip_prefix("y=")
                    .and_then(parse_exact)
                    .ok_or_else(|| err(line_no, "bad y coordinate"))?;
                points.push(LabeledPoint { label, x, y });
            }
            "pair" => {
                if tokens.len() != 3 {
                    return Err(err(line_no, "pair needs two integers"));
                }
                let u = tokens[1].parse().map_err(|_| err(line_no, "bad u"))?;
                let v = tokens[2].parse().map_err(|_| err(line_no, "bad v"))?;
                pairs.push((u, v));
            }
            "region" => {
                let owner = tokens
                    .get(1)
                    .and_then(|t| t.strip_prefix("owner=("))
                    .and_then(|t| t.strip_suffix("):"))
                    .and_then(|t| {
                        let (u, v) = t.split_once(',')?;
                        Some((u.parse().ok()?, v.parse().ok()?))
                    })
                    .ok_or_else(|| err(line_no, "bad region owner"))?;
                let mut items = Vec::new();
                for t in &tokens[2..] {
                    if let Some(inner) = t.strip_prefix("arc[").and_then(|t| t.strip_suffix(']')) {
                        let b = parse_branch_fields(inner)
                            .ok_or_else(|| err(line_no, "bad arc descriptor"))?;
                        items.push(RegionItem::Arc(b));
                    } else {
                        let l =
                            parse_label(t).ok_or_else(|| err(line_no, "bad boundary label"))?;
                        items.push(RegionItem::Point(l));
                    }
                }
                regions.push(Region { owner, items });
            }
            "claim" => {
                if tokens.len() != 8 || tokens[4] != "on" {
                    return Err(err(line_no, "malformed claim"));
                }
                let lhs =
                    parse_branch(tokens[2]).ok_or_else(|| err(line_no, "bad claim branch"))?;
                let kind = match tokens[1] {
                    "geq" => ClaimKind::Geq {
                        lhs,
                        rhs: parse_branch(tokens[3])
                            .ok_or_else(|| err(line_no, "bad claim branch"))?,
                    },
                    "geqc" => ClaimKind::GeqConst {
                        lhs,
                        c: parse_rat(tokens[3]).ok_or_else(|| err(line_no, "bad claim bound"))?,
                    },
                    "leqc" => ClaimKind::LeqConst {
                        lhs,
                        c: parse_rat(tokens[3]).ok_or_else(|| err(line_no, "bad claim bound"))?,
                    },
                    other => return Err(err(line_no, &format!("unknown claim kind {other:?}"))),
                };
                let (lo, hi) =
                    parse_interval(tokens[5]).ok_or_else(|| err(line_no, "bad interval"))?;
                let poly = tokens[6]
                    .strip_prefix("poly=")
                    .and_then(parse_poly)
                    .ok_or_else(|| err(line_no, "bad polynomial"))?;
                let case: CaseLabel = tokens[7]
                    .strip_prefix("case=")
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| err(line_no, "bad case label"))?;
                claims.push(Claim {
                    kind,
                    lo,
                    hi,
                    poly,
                    case,
                });
            }
            other => return Err(err(line_no, &format!("unknown directive {other:?}"))),
        }
    }
    let m = m.ok_or_else(|| err(0, "missing field line"))?;
    if !(2..=1_000_000).contains(&m) {
        return Err(err(0, "m must be an integer between 2 and 10^6"));
    }
    let m1 = m1.ok_or_else(|| err(0, "missing M on the field line"))?;
    if !m1.is_positive() {
        return Err(err(0, "M must be positive"));
    }
    Ok(Certificate {
        m,
        m1,
        points,
        pairs,
        regions,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_small() {
        let text = "\
field m=7 M=9/14
point 0 x=0 y=0
point c0 x=1/2 y=5/14
point 4 x=0 y=3/14*sqrt(2)
pair 0 0
pair 1 0
region owner=(0,0): P0 c0 arc[0,0,+,-] P4
claim geq B[1,0,+,-] B[0,0,+,-] on [0,1/7] poly=1,2 case=a2
claim geqc B[1,0,+,-] 1/2 on [-1+1/14*sqrt(217),1/2] poly=-3,56,28 case=a2
claim leqc B[1,0,+,+] 1/2 on [0,1/2] poly=-39,56,28 case=b
";
        let cert = parse(text).unwrap();
        assert_eq!(cert.m, 7);
        assert_eq!(cert.points.len(), 3);
        assert_eq!(cert.claims.len(), 3);
        let printed = serialize(&cert);
        let again = parse(&printed).unwrap();
        assert_eq!(cert, again);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("fiel m=7").is_err());
        assert!(parse("field m=7 M=9/14\npoint x\n").is_err());
        assert!(parse("field m=7 M=9/14\nclaim geq B[1] B[2] on [0,1] poly=1 case=b\n").is_err());
    }
}
