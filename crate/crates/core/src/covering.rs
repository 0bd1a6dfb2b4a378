//! Covering sets, region certificates, and certificate verification.
//!
//! A certificate records, for one field, a labeled point list, the covering
//! pairs, a set of regions (each owned by a pair, bounded by straight
//! segments and branch arcs between labeled points), and the dominance
//! claims whose polynomial sign facts entail that every region lies inside
//! its owner's admissible band `|f_m(a+u, b+v)| <= M`.
//!
//! Verification recomputes everything: points against their arcs, claim
//! polynomials against a fresh radical elimination, region entailment from
//! the claims, and that the regions tile the quarter square.

pub mod search;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Signed;

use crate::division::round_half;
use crate::exact::{rat, rat_int, ExactNumber, Rat};
use crate::field::{FieldData, NormScan};
use crate::hyperbola::{prove_geq, prove_geq_const, prove_leq_const, Branch, Pm};
use crate::polysign::{poly_sign_on_interval, CaseLabel, Interval, Poly, SignClass};

/// A point-in-box covering query.
#[derive(Clone, Debug)]
pub struct CoverQuery {
    pub point: (Rat, Rat),
    pub bound: u32,
}

/// All integer shifts `(u, v)` with `|u|, |v| <= bound` whose shifted norm at
/// the point has absolute value at most `M1`, in lexicographic order.
pub fn cover_set(field: &FieldData, query: &CoverQuery) -> Vec<(i64, i64)> {
    let b = query.bound as i64;
    let scan = NormScan::new(field, &query.point.0, &query.point.1, field.m1(), b);
    let mut out = Vec::new();
    for u in -b..=b {
        for v in -b..=b {
            if scan.within(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Label of a certificate point: a plain index or a critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointLabel {
    P(u32),
    C(u32),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::P(i) => write!(f, "P{i}"),
            PointLabel::C(i) => write!(f, "c{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPoint {
    pub label: PointLabel,
    pub x: ExactNumber,
    pub y: ExactNumber,
}

/// One item of a region boundary cycle. Consecutive point labels are joined
/// by straight segments; an arc item between two labels follows the named
/// branch. The cycle closes from the last label back to the first.
#[derive(Clone, Debug, PartialEq)]
pub enum RegionItem {
    Point(PointLabel),
    Arc(Branch),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub owner: (i64, i64),
    pub items: Vec<RegionItem>,
}

/// The kind of a dominance claim.
#[derive(Clone, Debug, PartialEq)]
pub enum ClaimKind {
    /// `lhs(a) >= rhs(a)` on the interval.
    Geq { lhs: Branch, rhs: Branch },
    /// `lhs(a) >= c` on the interval.
    GeqConst { lhs: Branch, c: Rat },
    /// `lhs(a) <= c` on the interval.
    LeqConst { lhs: Branch, c: Rat },
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimKind::Geq { lhs, rhs } => write!(f, "{lhs} >= {rhs}"),
            ClaimKind::GeqConst { lhs, c } => write!(f, "{lhs} >= {c}"),
            ClaimKind::LeqConst { lhs, c } => write!(f, "{lhs} <= {c}"),
        }
    }
}

/// A dominance claim with its reduced polynomial and case label.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub kind: ClaimKind,
    pub lo: ExactNumber,
    pub hi: ExactNumber,
    pub poly: Poly,
    pub case: CaseLabel,
}

impl Claim {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    fn covers(&self, lo: &ExactNumber, hi: &ExactNumber) -> bool {
        self.lo.cmp_real(lo) != Ordering::Greater && hi.cmp_real(&self.hi) != Ordering::Greater
    }
}

/// A machine-checkable covering proof for one field.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub m: i64,
    pub m1: Rat,
    pub points: Vec<LabeledPoint>,
    pub pairs: Vec<(i64, i64)>,
    pub regions: Vec<Region>,
    pub claims: Vec<Claim>,
}

impl Certificate {
    pub fn point(&self, label: PointLabel) -> Option<&LabeledPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    /// The field row the certificate's claims are interpreted in: the
    /// built-in row when the bound matches, otherwise a custom row with the
    /// certificate's own bound.
    pub fn field_data(&self) -> FieldData {
        match FieldData::builtin(self.m) {
            Ok(f) if f.m1() == &self.m1 => f,
            _ => FieldData::custom(self.m, self.m1.clone(), Vec::new(), self.pairs.clone()),
        }
    }
}

/// One verification step with its outcome.
#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Result of verifying a certificate: the ordered list of checks.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckEntry {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "verification {}",
            if self.pass() { "PASSED" } else { "FAILED" }
        )
    }
}

/// Verifies a certificate from scratch.
///
/// Checks, in order: field row consistency, point placement, critical-point
/// attainment, arcs through their labeled endpoints, every claim against a
/// recomputed dominance proof (polynomial match up to positive scaling, case
/// label, and validity), region coverage entailment from the claims, and the
/// tiling of the quarter square by the regions.
pub fn verify(cert: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    if cert.m < 2 || !cert.m1.is_positive() {
        report.push(
            "field",
            false,
            format!("m={} with M={} is not a usable field row", cert.m, cert.m1),
        );
        return report;
    }
    let field = cert.field_data();

    // field row: a bound below the Euclidean minimum is impossible (the
    // critical points attain M1 exactly); a larger bound is a legitimate
    // weaker certificate
    match FieldData::builtin(cert.m) {
        Ok(f) if f.m1() == &cert.m1 => {
            report.push("field", true, format!("m={} M1={}", cert.m, cert.m1));
        }
        Ok(f) if &cert.m1 > f.m1() => {
            report.push(
                "field",
                true,
                format!(
                    "m={} with weaker bound M={} (Euclidean minimum is {})",
                    cert.m,
                    cert.m1,
                    f.m1()
                ),
            );
        }
        Ok(f) => {
            report.push(
                "field",
                false,
                format!(
                    "certificate claims M={} below the Euclidean minimum {}",
                    cert.m1,
                    f.m1()
                ),
            );
        }
        Err(_) => {
            report.push("field", true, format!("custom field m={}", cert.m));
        }
    }

    check_points(cert, &mut report);
    check_critical(cert, &field, &mut report);
    check_arcs(cert, &field, &mut report);
    check_claims(cert, &field, &mut report);
    let geometries = check_regions(cert, &field, &mut report);
    check_tiling(cert, geometries, &mut report);
    report
}

fn check_points(cert: &Certificate, report: &mut VerificationReport) {
    let half = ExactNumber::from_rat(rat(1, 2));
    let mut seen: Vec<PointLabel> = Vec::new();
    for p in &cert.points {
        if seen.contains(&p.label) {
            report.push("points", false, format!("duplicate label {}", p.label));
            return;
        }
        seen.push(p.label);
        for coord in [&p.x, &p.y] {
            if coord.sign() < 0 || coord.cmp_real(&half) == Ordering::Greater {
                report.push(
                    "points",
                    false,
                    format!("{} = ({}, {}) outside the quarter square", p.label, p.x, p.y),
                );
                return;
            }
        }
    }
    report.push("points", true, format!("{} labeled points", cert.points.len()));
}

fn check_critical(cert: &Certificate, field: &FieldData, report: &mut VerificationReport) {
    let criticals: Vec<&LabeledPoint> = cert
        .points
        .iter()
        .filter(|p| matches!(p.label, PointLabel::C(_)))
        .collect();
    for p in &criticals {
        let (x, y) = match (p.x.as_rational(), p.y.as_rational()) {
            (Some(x), Some(y)) => (x.clone(), y.clone()),
            _ => {
                report.push(
                    "critical",
                    false,
                    format!("{} has irrational coordinates", p.label),
                );
                return;
            }
        };
        let (_, _, a) = round_half(&x);
        let (_, _, b) = round_half(&y);
        let min = cert
            .pairs
            .iter()
            .map(|&(u, v)| field.shifted_norm(&a, &b, u, v).abs())
            .min();
        match min {
            Some(min) if min == cert.m1 => {}
            Some(min) => {
                report.push(
                    "critical",
                    false,
                    format!("{}: best |norm| over pairs is {min}, expected {}", p.label, cert.m1),
                );
                return;
            }
            None => {
                report.push("critical", false, "certificate lists no pairs".to_string());
                return;
            }
        }
    }
    report.push(
        "critical",
        true,
        format!("{} critical points attain M1 exactly", criticals.len()),
    );
}

fn check_arcs(cert: &Certificate, field: &FieldData, report: &mut VerificationReport) {
    let mut arcs = 0usize;
    for (ri, region) in cert.regions.iter().enumerate() {
        let edges = match region_edges(cert, region) {
            Ok(e) => e,
            Err(msg) => {
                report.push("arcs", false, format!("region {ri}: {msg}"));
                return;
            }
        };
        for edge in &edges {
            if let Some(branch) = edge.arc {
                arcs += 1;
                for p in [&edge.from, &edge.to] {
                    match branch.eval(field, &p.x) {
                        Ok(y) if y == p.y => {}
                        Ok(y) => {
                            report.push(
                                "arcs",
                                false,
                                format!(
                                    "region {ri}: {} is not on {branch}: curve gives {y}, point has {}",
                                    p.label, p.y
                                ),
                            );
                            return;
                        }
                        Err(e) => {
                            report.push(
                                "arcs",
                                false,
                                format!("region {ri}: {branch} undefined at {}: {e}", p.label),
                            );
                            return;
                        }
                    }
                }
            }
        }
    }
    report.push("arcs", true, format!("{arcs} arc endpoints verified"));
}

fn check_claims(cert: &Certificate, field: &FieldData, report: &mut VerificationReport) {
    for (i, claim) in cert.claims.iter().enumerate() {
        let iv = match Interval::try_new(claim.lo.clone(), claim.hi.clone()) {
            Some(iv) => iv,
            None => {
                report.push("claims", false, format!("claim {i}: empty interval"));
                return;
            }
        };
        let proof = match &claim.kind {
            ClaimKind::Geq { lhs, rhs } => prove_geq(field, lhs, rhs, &iv),
            ClaimKind::GeqConst { lhs, c } => prove_geq_const(field, lhs, c, &iv),
            ClaimKind::LeqConst { lhs, c } => prove_leq_const(field, lhs, c, &iv),
        };
        let proof = match proof {
            Ok(p) => p,
            Err(e) => {
                report.push("claims", false, format!("claim {i} ({}): {e}", claim.kind));
                return;
            }
        };
        if !claim.poly.matches_up_to_positive_scale(&proof.main_poly) {
            report.push(
                "claims",
                false,
                format!(
                    "claim {i} ({}): stated polynomial {} does not match recomputed {}",
                    claim.kind, claim.poly, proof.main_poly
                ),
            );
            return;
        }
        if claim.case != proof.case() {
            report.push(
                "claims",
                false,
                format!(
                    "claim {i} ({}): stated case {} but recomputed {}",
                    claim.kind,
                    claim.case,
                    proof.case()
                ),
            );
            return;
        }
        if !proof.holds {
            report.push(
                "claims",
                false,
                format!("claim {i} ({}) does not hold on its interval", claim.kind),
            );
            return;
        }
    }
    report.push("claims", true, format!("{} claims recomputed", cert.claims.len()));
}

// ---- region geometry ----

struct EdgePoint {
    label: PointLabel,
    x: ExactNumber,
    y: ExactNumber,
}

struct Edge {
    from: EdgePoint,
    to: EdgePoint,
    arc: Option<Branch>,
}

fn region_edges(cert: &Certificate, region: &Region) -> Result<Vec<Edge>, String> {
    let items = &region.items;
    if items.is_empty() {
        return Err("empty region".to_string());
    }
    let n = items.len();
    let resolve = |label: PointLabel| -> Result<EdgePoint, String> {
        let p = cert
            .point(label)
            .ok_or_else(|| format!("dangling label {label}"))?;
        Ok(EdgePoint {
            label,
            x: p.x.clone(),
            y: p.y.clone(),
        })
    };
    let mut edges = Vec::new();
    let mut i = 0;
    let RegionItem::Point(_first) = items[0] else {
        return Err("region must start with a point label".to_string());
    };
    while i < n {
        let RegionItem::Point(from) = items[i] else {
            return Err("two consecutive arcs in boundary".to_string());
        };
        let (arc, step) = match items.get(i + 1) {
            Some(RegionItem::Arc(b)) => (Some(*b), 2),
            _ => (None, 1),
        };
        let to = match items.get(i + step) {
            Some(RegionItem::Point(p)) => *p,
            Some(RegionItem::Arc(_)) => return Err("two consecutive arcs in boundary".to_string()),
            None => {
                let RegionItem::Point(p) = items[0] else { unreachable!() };
                p
            }
        };
        edges.push(Edge {
            from: resolve(from)?,
            to: resolve(to)?,
            arc,
        });
        i += step;
    }
    Ok(edges)
}

/// Identity of a boundary piece for the tiling check.
#[derive(Clone, Debug, PartialEq)]
enum PieceCurve {
    Horizontal(ExactNumber),
    Branch(Branch),
}

impl fmt::Display for PieceCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceCurve::Horizontal(c) => write!(f, "y={c}"),
            PieceCurve::Branch(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug)]
struct ChainPiece {
    curve: PieceCurve,
    lo: ExactNumber,
    hi: ExactNumber,
}

impl ChainPiece {
    fn value_at(&self, field: &FieldData, a: &ExactNumber) -> Result<ExactNumber, String> {
        match &self.curve {
            PieceCurve::Horizontal(c) => Ok(c.clone()),
            PieceCurve::Branch(b) => b
                .eval(field, a)
                .map_err(|e| format!("{b} undefined at {a}: {e}")),
        }
    }
}

/// A region decomposed into cells with one upper and one lower piece each.
struct RegionGeometry {
    owner: (i64, i64),
    /// Per cell: a-interval, upper piece, lower piece.
    cells: Vec<(ExactNumber, ExactNumber, ChainPiece, ChainPiece)>,
}

fn region_geometry(
    cert: &Certificate,
    field: &FieldData,
    region: &Region,
) -> Result<RegionGeometry, String> {
    let edges = region_edges(cert, region)?;
    let mut pieces: Vec<ChainPiece> = Vec::new();
    for edge in &edges {
        let (lo, hi) = match edge.from.x.cmp_real(&edge.to.x) {
            Ordering::Less => (edge.from.x.clone(), edge.to.x.clone()),
            Ordering::Greater => (edge.to.x.clone(), edge.from.x.clone()),
            Ordering::Equal => {
                if edge.arc.is_some() {
                    return Err(format!(
                        "arc between {} and {} has zero width",
                        edge.from.label, edge.to.label
                    ));
                }
                continue; // vertical wall
            }
        };
        let curve = match edge.arc {
            Some(b) => PieceCurve::Branch(b),
            None => {
                if edge.from.y != edge.to.y {
                    return Err(format!(
                        "sloped segment between {} and {}",
                        edge.from.label, edge.to.label
                    ));
                }
                PieceCurve::Horizontal(edge.from.y.clone())
            }
        };
        pieces.push(ChainPiece { curve, lo, hi });
    }
    if pieces.is_empty() {
        return Err("region has no horizontal extent".to_string());
    }
    // breakpoints
    let mut cuts: Vec<ExactNumber> = Vec::new();
    for p in &pieces {
        for x in [&p.lo, &p.hi] {
            if !cuts.iter().any(|c| c == x) {
                cuts.push(x.clone());
            }
        }
    }
    cuts.sort_by(|a, b| a.cmp_real(b));
    let mut cells = Vec::new();
    for w in cuts.windows(2) {
        let (clo, chi) = (&w[0], &w[1]);
        let spanning: Vec<&ChainPiece> = pieces
            .iter()
            .filter(|p| {
                p.lo.cmp_real(clo) != Ordering::Greater && chi.cmp_real(&p.hi) != Ordering::Greater
            })
            .collect();
        if spanning.len() != 2 {
            return Err(format!(
                "cell [{clo}, {chi}] is bounded by {} pieces, expected 2",
                spanning.len()
            ));
        }
        let probe = Interval::new(clo.clone(), chi.clone())
            .inner_rational()
            .ok_or_else(|| "degenerate cell".to_string())?;
        let probe = ExactNumber::from_rat(probe);
        let v0 = spanning[0].value_at(field, &probe)?;
        let v1 = spanning[1].value_at(field, &probe)?;
        let (upper, lower) = match v0.cmp_real(&v1) {
            Ordering::Greater => (spanning[0].clone(), spanning[1].clone()),
            Ordering::Less => (spanning[1].clone(), spanning[0].clone()),
            Ordering::Equal => {
                return Err(format!(
                    "boundary pieces coincide at a={probe} in cell [{clo}, {chi}]"
                ))
            }
        };
        cells.push((clo.clone(), chi.clone(), upper, lower));
    }
    Ok(RegionGeometry {
        owner: region.owner,
        cells,
    })
}

/// Options that establish `piece <= branch` (for upper pieces) on a cell.
fn upper_bounded_by(
    cert: &Certificate,
    branch: Branch,
    piece: &ChainPiece,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> bool {
    match &piece.curve {
        PieceCurve::Branch(b) if *b == branch => true,
        PieceCurve::Branch(b) => cert.claims.iter().any(|c| {
            matches!(&c.kind, ClaimKind::Geq { lhs, rhs } if *lhs == branch && rhs == b)
                && c.covers(lo, hi)
        }),
        PieceCurve::Horizontal(y) => match y.as_rational() {
            Some(yc) => cert.claims.iter().any(|c| {
                matches!(&c.kind, ClaimKind::GeqConst { lhs, c: cc } if *lhs == branch && cc == yc)
                    && c.covers(lo, hi)
            }),
            None => false,
        },
    }
}

/// Options that establish `piece >= branch` (for lower pieces) on a cell.
fn lower_bounded_by(
    cert: &Certificate,
    branch: Branch,
    piece: &ChainPiece,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> bool {
    match &piece.curve {
        PieceCurve::Branch(b) if *b == branch => true,
        PieceCurve::Branch(b) => cert.claims.iter().any(|c| {
            matches!(&c.kind, ClaimKind::Geq { lhs, rhs } if lhs == b && *rhs == branch)
                && c.covers(lo, hi)
        }),
        PieceCurve::Horizontal(y) => match y.as_rational() {
            Some(yc) => cert.claims.iter().any(|c| {
                matches!(&c.kind, ClaimKind::LeqConst { lhs, c: cc } if *lhs == branch && cc == yc)
                    && c.covers(lo, hi)
            }),
            None => false,
        },
    }
}

/// The inner-band exclusion on one cell: either the inner radicand is
/// nonpositive, or the region clears the inner curves on one side. Splits
/// the cell at the radicand roots when the sign is mixed.
#[allow(clippy::too_many_arguments)]
fn middle_excluded(
    cert: &Certificate,
    field: &FieldData,
    owner: (i64, i64),
    upper: &ChainPiece,
    lower: &ChainPiece,
    lo: &ExactNumber,
    hi: &ExactNumber,
    depth: u32,
) -> Result<(), String> {
    let (u, v) = owner;
    // inner radicand (a+u)^2 - M, up to the positive factor 1/m
    let r_in = Poly::from_coeffs(vec![
        rat_int(u * u) - field.m1().clone(),
        rat_int(2 * u),
        rat_int(1),
    ]);
    let iv = Interval::new(lo.clone(), hi.clone());
    let verdict = poly_sign_on_interval(&r_in, &iv);
    if verdict.sign.is_nonpos() {
        return Ok(()); // inner curves do not exist over this cell
    }
    if verdict.sign == SignClass::Mixed {
        if depth >= 4 {
            return Err("inner radicand kept changing sign".to_string());
        }
        // split at the radicand roots -u -+ sqrt(M)
        let sqrt_m = ExactNumber::sqrt_rat(field.m1()).expect("M1 > 0");
        let mut cuts = vec![lo.clone()];
        for root in [
            &ExactNumber::from_int(-u) - &sqrt_m,
            &ExactNumber::from_int(-u) + &sqrt_m,
        ] {
            if root.cmp_real(lo) == Ordering::Greater && root.cmp_real(hi) == Ordering::Less {
                cuts.push(root);
            }
        }
        cuts.push(hi.clone());
        if cuts.len() == 2 {
            return Err("mixed inner radicand but no interior root".to_string());
        }
        for w in cuts.windows(2) {
            middle_excluded(cert, field, owner, upper, lower, &w[0], &w[1], depth + 1)?;
        }
        return Ok(());
    }
    // inner band present: clear it from above or from below
    let inner_top = Branch::new(u, v, Pm::Plus, Pm::Plus);
    let inner_bottom = Branch::new(u, v, Pm::Minus, Pm::Plus);
    if lower_bounded_by(cert, inner_top, lower, lo, hi)
        || upper_bounded_by(cert, inner_bottom, upper, lo, hi)
    {
        Ok(())
    } else {
        Err(format!(
            "no claim clears the band between {inner_bottom} and {inner_top} on [{lo}, {hi}]"
        ))
    }
}

fn check_regions(
    cert: &Certificate,
    field: &FieldData,
    report: &mut VerificationReport,
) -> Vec<RegionGeometry> {
    if cert.regions.is_empty() {
        report.push("regions", true, "no regions (claim-only certificate)");
        return Vec::new();
    }
    let mut geometries = Vec::new();
    for (ri, region) in cert.regions.iter().enumerate() {
        let geometry = match region_geometry(cert, field, region) {
            Ok(g) => g,
            Err(msg) => {
                report.push("regions", false, format!("region {ri}: {msg}"));
                return Vec::new();
            }
        };
        let (u, v) = geometry.owner;
        let outer_top = Branch::new(u, v, Pm::Plus, Pm::Minus);
        let outer_bottom = Branch::new(u, v, Pm::Minus, Pm::Minus);
        for (lo, hi, upper, lower) in &geometry.cells {
            // upper chain below the owner's outer top sheet
            let a_ok = v <= -1 || upper_bounded_by(cert, outer_top, upper, lo, hi);
            if !a_ok {
                report.push(
                    "regions",
                    false,
                    format!("region {ri} (owner ({u},{v})): upper piece {} not below {outer_top} on [{lo}, {hi}]", upper.curve),
                );
                return Vec::new();
            }
            // lower chain above the owner's outer bottom sheet
            let b_ok = v >= 0 || lower_bounded_by(cert, outer_bottom, lower, lo, hi);
            if !b_ok {
                report.push(
                    "regions",
                    false,
                    format!("region {ri} (owner ({u},{v})): lower piece {} not above {outer_bottom} on [{lo}, {hi}]", lower.curve),
                );
                return Vec::new();
            }
            if let Err(msg) =
                middle_excluded(cert, field, geometry.owner, upper, lower, lo, hi, 0)
            {
                report.push(
                    "regions",
                    false,
                    format!("region {ri} (owner ({u},{v})): {msg}"),
                );
                return Vec::new();
            }
        }
        geometries.push(geometry);
    }
    report.push(
        "regions",
        true,
        format!("{} regions entailed by the claims", geometries.len()),
    );
    geometries
}

/// Merges a list of intervals (sorted by construction order) into maximal
/// disjoint intervals.
fn merge_intervals(mut ivs: Vec<(ExactNumber, ExactNumber)>) -> Vec<(ExactNumber, ExactNumber)> {
    ivs.sort_by(|a, b| a.0.cmp_real(&b.0));
    let mut out: Vec<(ExactNumber, ExactNumber)> = Vec::new();
    for (lo, hi) in ivs {
        match out.last_mut() {
            Some(last) if last.1.cmp_real(&lo) != Ordering::Less => {
                if hi.cmp_real(&last.1) == Ordering::Greater {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

fn check_tiling(
    cert: &Certificate,
    geometries: Vec<RegionGeometry>,
    report: &mut VerificationReport,
) {
    if cert.regions.is_empty() {
        report.push("tiling", true, "no regions (claim-only certificate)");
        return;
    }
    // collect (curve, side) -> intervals; side: true = upper boundary of a region
    let mut entries: Vec<(PieceCurve, bool, ExactNumber, ExactNumber)> = Vec::new();
    for g in &geometries {
        for (lo, hi, upper, lower) in &g.cells {
            entries.push((upper.curve.clone(), true, lo.clone(), hi.clone()));
            entries.push((lower.curve.clone(), false, lo.clone(), hi.clone()));
        }
    }
    let zero = ExactNumber::zero();
    let half = ExactNumber::from_rat(rat(1, 2));
    let mut curves: Vec<PieceCurve> = Vec::new();
    for (c, _, _, _) in &entries {
        if !curves.iter().any(|k| k == c) {
            curves.push(c.clone());
        }
    }
    for curve in curves {
        let collect = |side: bool| -> Vec<(ExactNumber, ExactNumber)> {
            entries
                .iter()
                .filter(|(c, s, _, _)| *c == curve && *s == side)
                .map(|(_, _, lo, hi)| (lo.clone(), hi.clone()))
                .collect()
        };
        let uppers = merge_intervals(collect(true));
        let lowers = merge_intervals(collect(false));
        let is_bottom = curve == PieceCurve::Horizontal(zero.clone());
        let is_top = curve == PieceCurve::Horizontal(half.clone());
        if is_bottom || is_top {
            let (edge, own, other) = if is_bottom {
                ("bottom", lowers, uppers)
            } else {
                ("top", uppers, lowers)
            };
            if !other.is_empty() {
                report.push(
                    "tiling",
                    false,
                    format!("the {edge} edge appears on the wrong side of a region"),
                );
                return;
            }
            if own.len() != 1 || own[0].0 != zero || own[0].1 != half {
                report.push(
                    "tiling",
                    false,
                    format!("the {edge} edge of the square is not fully covered"),
                );
                return;
            }
        } else if uppers != lowers {
            report.push(
                "tiling",
                false,
                format!("interior boundary {curve} is not shared consistently by two regions"),
            );
            return;
        }
    }
    report.push(
        "tiling",
        true,
        "interior boundaries shared pairwise; square edges covered",
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_set_m7_critical() {
        let f = FieldData::builtin(7).unwrap();
        let query = CoverQuery {
            point: (rat(1, 2), rat(5, 14)),
            bound: 100,
        };
        let expected: Vec<(i64, i64)> = vec![
            (-57, 21),
            (-26, -10),
            (-12, 4),
            (-4, 1),
            (-2, -1),
            (-1, 0),
            (0, 0),
            (1, -1),
            (3, 1),
            (11, 4),
            (25, -10),
            (56, 21),
        ];
        assert_eq!(cover_set(&f, &query), expected);
    }

    #[test]
    fn cover_set_m11_critical() {
        let f = FieldData::builtin(11).unwrap();
        let query = CoverQuery {
            point: (rat(1, 2), rat(7, 22)),
            bound: 100,
        };
        let expected: Vec<(i64, i64)> =
            vec![(-16, -5), (-6, -2), (-1, 0), (0, 0), (5, -2), (15, -5)];
        assert_eq!(cover_set(&f, &query), expected);
    }

    #[test]
    fn region_interiors_are_covered_by_their_owner() {
        // search-produced certificates have full region data; interior
        // points of every region must satisfy the owner's norm bound exactly
        use crate::covering::search::{search, SearchConfig};
        use num_traits::One;
        for m in [2i64, 3, 6] {
            let field = FieldData::builtin(m).unwrap();
            let out = search(&field, &SearchConfig::default());
            assert!(out.complete);
            let cert = &out.certificate;
            for region in &cert.regions {
                let geometry = region_geometry(cert, &field, region).unwrap();
                let (u, v) = geometry.owner;
                let mut sampled = 0;
                'outer: for k in 1..200 {
                    for (lo, hi, upper, lower) in &geometry.cells {
                        if sampled >= 25 {
                            break 'outer;
                        }
                        let iv = Interval::new(lo.clone(), hi.clone());
                        let Some(a) = iv.inner_rational() else { continue };
                        // drift the abscissa a little between rounds
                        let a = a + rat(1, 1000) * rat_int(k % 7 - 3);
                        let ax = ExactNumber::from_rat(a.clone());
                        if ax.cmp_real(lo) != Ordering::Greater
                            || hi.cmp_real(&ax) != Ordering::Greater
                        {
                            continue;
                        }
                        let y_lo = lower.value_at(&field, &ax).unwrap();
                        let y_hi = upper.value_at(&field, &ax).unwrap();
                        // a rational strictly between the chains
                        let (_, l_ub) = y_lo.bounds(30);
                        let (h_lb, _) = y_hi.bounds(30);
                        if l_ub >= h_lb {
                            continue;
                        }
                        let t = rat(k % 9 + 1, 10);
                        let b = &l_ub + (&h_lb - &l_ub) * t;
                        let norm = field.shifted_norm(&a, &b, u, v);
                        assert!(
                            norm.abs() <= *field.m1(),
                            "m={m} owner ({u},{v}) at ({a}, {b}): {norm}"
                        );
                        sampled += 1;
                    }
                }
                assert!(sampled > 0, "no interior samples for a region of m={m}");
                let _ = Rat::one();
            }
        }
    }

    fn m6_base_certificate() -> Certificate {
        use crate::covering::search::{search, SearchConfig};
        let field = FieldData::builtin(6).unwrap();
        let out = search(&field, &SearchConfig::default());
        assert!(out.complete);
        out.certificate
    }

    #[test]
    fn verify_rejects_dangling_label() {
        let mut cert = m6_base_certificate();
        cert.regions[0].items.push(RegionItem::Point(PointLabel::P(99)));
        let report = verify(&cert);
        assert!(!report.pass());
        assert!(report.first_failure().unwrap().detail.contains("dangling"));
    }

    #[test]
    fn verify_rejects_point_off_curve() {
        let mut cert = m6_base_certificate();
        // move a point that lies on a region arc
        let arc_label = cert
            .regions
            .iter()
            .flat_map(|r| r.items.windows(2))
            .find_map(|w| match (&w[0], &w[1]) {
                (RegionItem::Point(p), RegionItem::Arc(_)) => Some(*p),
                _ => None,
            })
            .unwrap();
        let p = cert.points.iter_mut().find(|p| p.label == arc_label).unwrap();
        p.y = &p.y + &ExactNumber::from_rat(rat(1, 97));
        let report = verify(&cert);
        assert!(!report.pass());
    }

    #[test]
    fn verify_rejects_point_outside_square() {
        let mut cert = m6_base_certificate();
        cert.points.push(LabeledPoint {
            label: PointLabel::P(98),
            x: ExactNumber::from_rat(rat(3, 4)),
            y: ExactNumber::zero(),
        });
        let report = verify(&cert);
        assert!(!report.pass());
        assert!(report
            .first_failure()
            .unwrap()
            .detail
            .contains("outside the quarter square"));
    }

    #[test]
    fn verify_rejects_sloped_segment() {
        let mut cert = m6_base_certificate();
        // replace a region by a triangle with a genuinely sloped edge
        cert.regions[0] = Region {
            owner: (0, 0),
            items: vec![
                RegionItem::Point(PointLabel::P(0)),
                RegionItem::Point(PointLabel::P(1)),
                RegionItem::Point(PointLabel::P(2)),
            ],
        };
        let report = verify(&cert);
        assert!(!report.pass());
        assert!(report.first_failure().unwrap().detail.contains("sloped"));
    }

    #[test]
    fn verify_rejects_missing_region() {
        // dropping a region breaks the tiling even though all claims hold
        let mut cert = m6_base_certificate();
        cert.regions.pop();
        let report = verify(&cert);
        assert!(!report.pass());
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "tiling");
    }

    #[test]
    fn verify_rejects_wrong_field_row() {
        let mut cert = m6_base_certificate();
        cert.m1 = rat(1, 2);
        let report = verify(&cert);
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().name, "field");
    }

    #[test]
    fn verify_rejects_wrong_owner() {
        // reassigning a region to a pair whose band does not contain it
        let mut cert = m6_base_certificate();
        let owner = &mut cert.regions[0].owner;
        *owner = (3, 2);
        let report = verify(&cert);
        assert!(!report.pass());
    }

    #[test]
    fn cover_set_two_route_agreement() {
        // the fast scaled-integer scan agrees with direct rational norms
        let f = FieldData::builtin(6).unwrap();
        let p = (rat(3, 7), rat(2, 5));
        let got = cover_set(
            &f,
            &CoverQuery {
                point: p.clone(),
                bound: 12,
            },
        );
        let mut expected = Vec::new();
        for u in -12..=12i64 {
            for v in -12..=12i64 {
                let n = f.norm(&(&p.0 + rat_int(u)), &(&p.1 + rat_int(v)));
                if n.abs() <= *f.m1() {
                    expected.push((u, v));
                }
            }
        }
        assert_eq!(got, expected);
    }
}
