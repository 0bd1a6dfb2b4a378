//! Certificate search: covering the quarter square one region at a time.
//!
//! The search keeps an upper envelope of the area certified so far (a chain
//! of horizontal segments and branch arcs from `a = 0` to `a = 1/2`,
//! starting at the bottom edge). Each step targets the leftmost unfinished
//! envelope piece, probes a few points just above it for covering pairs,
//! and tries the candidates in a deterministic order: the band of a
//! candidate pair is clipped against the piece, the polynomial proofs for
//! the new region are produced, and the envelope is raised. Pieces that
//! reach the top edge are finished.
//!
//! Every emitted region comes with the claims the verifier needs, so a
//! completed search yields a certificate that passes verification; running
//! out of budget (or of provable candidates) yields a partial certificate
//! flagged incomplete, with the uncovered ranges reported.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Signed;

use crate::covering::{Certificate, Claim, ClaimKind, LabeledPoint, PointLabel, Region, RegionItem};
use crate::exact::{rat, rat_int, ExactNumber, Rat};
use crate::field::FieldData;
use crate::hyperbola::{
    intersect, intersect_line, prove_geq, prove_geq_const, prove_leq_const, AxisLine, Branch,
    DominanceProof, HyperbolaError, Pm,
};
use crate::polysign::{poly_sign_on_interval, Interval, Poly};

/// Budget knobs for the search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Box bound for covering-set probes.
    pub bound: u32,
    /// Maximum number of regions emitted before giving up.
    pub max_steps: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bound: 100,
            max_steps: 200,
        }
    }
}

/// Search result: a certificate, complete or not.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Certificate,
    pub complete: bool,
    pub steps: u32,
    /// `a`-ranges of the envelope that were not pushed to the top edge.
    pub uncovered: Vec<(ExactNumber, ExactNumber)>,
}

/// Covering pairs for a single point, smallest box first; the degenerate
/// one-point region of the covering problem.
pub fn search_point(field: &FieldData, point: &(Rat, Rat), bound: u32) -> Option<(i64, i64)> {
    let mut pairs = crate::covering::cover_set(
        field,
        &crate::covering::CoverQuery {
            point: point.clone(),
            bound,
        },
    );
    pairs.sort_by_key(|&(u, v)| (u.abs().max(v.abs()), u, v));
    pairs.first().copied()
}

#[derive(Clone, Debug, PartialEq)]
enum EnvCurve {
    /// Finished: the piece sits on the top edge `y = 1/2`.
    Done,
    /// A horizontal line `y = c` (the bottom edge at the start).
    Floor(Rat),
    /// A branch arc.
    Arc(Branch),
}

#[derive(Clone, Debug)]
struct EnvPiece {
    curve: EnvCurve,
    lo: ExactNumber,
    hi: ExactNumber,
}

impl EnvPiece {
    fn value_at(&self, field: &FieldData, a: &ExactNumber) -> Option<ExactNumber> {
        match &self.curve {
            EnvCurve::Done => Some(ExactNumber::from_rat(rat(1, 2))),
            EnvCurve::Floor(c) => Some(ExactNumber::from_rat(c.clone())),
            EnvCurve::Arc(b) => b.eval(field, a).ok(),
        }
    }
}

struct Builder {
    field: FieldData,
    points: Vec<LabeledPoint>,
    next_label: u32,
    regions: Vec<Region>,
    claims: Vec<Claim>,
    pairs: Vec<(i64, i64)>,
}

impl Builder {
    fn new(field: &FieldData) -> Builder {
        let mut b = Builder {
            field: field.clone(),
            points: Vec::new(),
            next_label: 0,
            regions: Vec::new(),
            claims: Vec::new(),
            pairs: Vec::new(),
        };
        // the square corners, in the customary order
        for (x, y) in [(0, 0), (1, 0), (1, 1), (0, 1)] {
            b.point(
                ExactNumber::from_rat(rat(x, 2)),
                ExactNumber::from_rat(rat(y, 2)),
            );
        }
        b
    }

    fn point(&mut self, x: ExactNumber, y: ExactNumber) -> PointLabel {
        if let Some(p) = self.points.iter().find(|p| p.x == x && p.y == y) {
            return p.label;
        }
        let label = PointLabel::P(self.next_label);
        self.next_label += 1;
        self.points.push(LabeledPoint { label, x, y });
        label
    }

    fn claim(&mut self, claim: Claim) {
        if !self.claims.contains(&claim) {
            self.claims.push(claim);
        }
    }

    fn pair(&mut self, pair: (i64, i64)) {
        if !self.pairs.contains(&pair) {
            self.pairs.push(pair);
        }
    }

    fn into_certificate(self, m1: Rat) -> Certificate {
        Certificate {
            m: self.field.m(),
            m1,
            points: self.points,
            pairs: self.pairs,
            regions: self.regions,
            claims: self.claims,
        }
    }
}

fn claim_from_proof(kind: ClaimKind, proof: &DominanceProof) -> Claim {
    Claim {
        kind,
        lo: proof.interval.lo().clone(),
        hi: proof.interval.hi().clone(),
        poly: proof.main_poly.clone(),
        case: proof.case(),
    }
}

/// Proves `piece >= branch` over `[lo, hi]` and returns the claim, or None.
fn prove_piece_above(
    field: &FieldData,
    piece: &EnvPiece,
    branch: &Branch,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> Option<Claim> {
    let iv = Interval::try_new(lo.clone(), hi.clone())?;
    match &piece.curve {
        EnvCurve::Done => {
            let half = rat(1, 2);
            let proof = prove_leq_const(field, branch, &half, &iv).ok()?;
            proof.holds.then(|| {
                claim_from_proof(
                    ClaimKind::LeqConst {
                        lhs: *branch,
                        c: half,
                    },
                    &proof,
                )
            })
        }
        EnvCurve::Floor(c) => {
            let proof = prove_leq_const(field, branch, c, &iv).ok()?;
            proof.holds.then(|| {
                claim_from_proof(
                    ClaimKind::LeqConst {
                        lhs: *branch,
                        c: c.clone(),
                    },
                    &proof,
                )
            })
        }
        EnvCurve::Arc(b) => {
            let proof = prove_geq(field, b, branch, &iv).ok()?;
            proof.holds.then(|| {
                claim_from_proof(
                    ClaimKind::Geq {
                        lhs: *b,
                        rhs: *branch,
                    },
                    &proof,
                )
            })
        }
    }
}

/// Dominance `top >= piece` over `[lo, hi]`, used only to clip the new band
/// against the envelope (the emitted certificate does not depend on it).
fn top_dominates_piece(
    field: &FieldData,
    top: &Branch,
    piece: &EnvPiece,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> bool {
    let Some(iv) = Interval::try_new(lo.clone(), hi.clone()) else {
        return false;
    };
    match &piece.curve {
        EnvCurve::Done => false,
        EnvCurve::Floor(c) => prove_geq_const(field, top, c, &iv).is_ok_and(|p| p.holds),
        EnvCurve::Arc(b) => prove_geq(field, top, b, &iv).is_ok_and(|p| p.holds),
    }
}

/// Crossings of a branch with an envelope piece, strictly inside `(lo, hi)`.
fn piece_crossings(
    field: &FieldData,
    branch: &Branch,
    piece: &EnvPiece,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> Vec<ExactNumber> {
    let points: Result<Vec<crate::hyperbola::Point>, HyperbolaError> = match &piece.curve {
        EnvCurve::Done => intersect_line(field, branch, &AxisLine::Y(rat(1, 2))),
        EnvCurve::Floor(c) => intersect_line(field, branch, &AxisLine::Y(c.clone())),
        EnvCurve::Arc(b) => intersect(field, branch, b),
    };
    let mut xs = Vec::new();
    if let Ok(points) = points {
        for p in points {
            if p.x.cmp_real(lo) == Ordering::Greater && p.x.cmp_real(hi) == Ordering::Less {
                xs.push(p.x);
            }
        }
    }
    xs
}

/// Roots of the inner radicand `(a+u)^2 = M` inside `(lo, hi)`.
fn inner_radicand_roots(
    field: &FieldData,
    u: i64,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> Vec<ExactNumber> {
    let sqrt_m = ExactNumber::sqrt_rat(field.m1()).expect("M1 > 0");
    let mut out = Vec::new();
    for root in [
        &ExactNumber::from_int(-u) - &sqrt_m,
        &ExactNumber::from_int(-u) + &sqrt_m,
    ] {
        if root.cmp_real(lo) == Ordering::Greater && root.cmp_real(hi) == Ordering::Less {
            out.push(root);
        }
    }
    out
}

fn dedup_sorted(mut cuts: Vec<ExactNumber>) -> Vec<ExactNumber> {
    cuts.sort_by(|a, b| a.cmp_real(b));
    cuts.dedup();
    cuts
}

/// Everything needed to splice one new region into the envelope.
struct Move {
    alpha: ExactNumber,
    beta: ExactNumber,
    lower_l: ExactNumber,
    lower_r: ExactNumber,
    /// Upper chain pieces left to right with their endpoint values;
    /// a `None` curve stands for the top edge.
    upper: Vec<(Option<Branch>, ExactNumber, ExactNumber, ExactNumber, ExactNumber)>,
    claims: Vec<Claim>,
}

/// Lower-side obligations of pair `(u, v)` against the piece on `[lo, hi]`:
/// the claims needed, or None when some proof fails.
fn lower_obligations(
    field: &FieldData,
    piece: &EnvPiece,
    pair: (i64, i64),
    bottom: &Branch,
    lo: &ExactNumber,
    hi: &ExactNumber,
) -> Option<Vec<Claim>> {
    let (u, v) = pair;
    let mut claims = Vec::new();
    if v >= 0 {
        // the inner band only constrains where its radicand is nonnegative
        let r_in = Poly::from_coeffs(vec![
            rat_int(u * u) - field.m1().clone(),
            rat_int(2 * u),
            rat_int(1),
        ]);
        let mut sub = vec![lo.clone()];
        sub.extend(inner_radicand_roots(field, u, lo, hi));
        sub.push(hi.clone());
        for w in dedup_sorted(sub).windows(2) {
            let iv = Interval::new(w[0].clone(), w[1].clone());
            if poly_sign_on_interval(&r_in, &iv).sign.is_nonpos() {
                continue;
            }
            claims.push(prove_piece_above(field, piece, bottom, &w[0], &w[1])?);
        }
    } else {
        claims.push(prove_piece_above(field, piece, bottom, lo, hi)?);
    }
    Some(claims)
}

fn try_candidate(
    field: &FieldData,
    piece: &EnvPiece,
    pair: (i64, i64),
    probe_a: &Rat,
) -> Option<Move> {
    let (u, v) = pair;
    let (top, bottom) = if v >= 0 {
        (
            Branch::new(u, v, Pm::Plus, Pm::Minus),
            Branch::new(u, v, Pm::Plus, Pm::Plus),
        )
    } else {
        (
            Branch::new(u, v, Pm::Minus, Pm::Plus),
            Branch::new(u, v, Pm::Minus, Pm::Minus),
        )
    };
    if piece.curve == EnvCurve::Arc(top) {
        return None;
    }
    // strict progress at the probe
    let probe = ExactNumber::from_rat(probe_a.clone());
    let top_at = top.eval(field, &probe).ok()?;
    let piece_at = piece.value_at(field, &probe)?;
    if top_at.cmp_real(&piece_at) != Ordering::Greater {
        return None;
    }

    // subdivide the piece where the candidate's curves cross it and qualify
    // each cell (what the pair can cover is limited by those crossings)
    let mut cuts = vec![piece.lo.clone(), piece.hi.clone()];
    cuts.extend(piece_crossings(field, &top, piece, &piece.lo, &piece.hi));
    cuts.extend(piece_crossings(field, &bottom, piece, &piece.lo, &piece.hi));
    let cuts = dedup_sorted(cuts);

    let mut qualifying = vec![false; cuts.len() - 1];
    for (i, w) in cuts.windows(2).enumerate() {
        let (lo, hi) = (&w[0], &w[1]);
        qualifying[i] = top_dominates_piece(field, &top, piece, lo, hi)
            && lower_obligations(field, piece, pair, &bottom, lo, hi).is_some();
    }
    // leftmost maximal run of qualifying cells
    let start = qualifying.iter().position(|&q| q)?;
    let mut end = start;
    while end + 1 < qualifying.len() && qualifying[end + 1] {
        end += 1;
    }
    let alpha = cuts[start].clone();
    let beta = cuts[end + 1].clone();

    // the claims the verifier will look up, on the merged run
    let mut claims = lower_obligations(field, piece, pair, &bottom, &alpha, &beta)?;

    // clip the top curve against the top edge of the square
    let mut top_cuts = vec![alpha.clone(), beta.clone()];
    if let Ok(points) = intersect_line(field, &top, &AxisLine::Y(rat(1, 2))) {
        for p in points {
            if p.x.cmp_real(&alpha) == Ordering::Greater && p.x.cmp_real(&beta) == Ordering::Less {
                top_cuts.push(p.x);
            }
        }
    }
    let top_cuts = dedup_sorted(top_cuts);
    let half = ExactNumber::from_rat(rat(1, 2));
    let mut upper = Vec::new();
    for w in top_cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let iv = Interval::new(lo.clone(), hi.clone());
        let half_rat = rat(1, 2);
        let below = prove_leq_const(field, &top, &half_rat, &iv)
            .ok()
            .filter(|p| p.holds);
        if below.is_some() {
            // all junction values must exist exactly, else the candidate is
            // unusable for region construction
            let ylo = top.eval(field, lo).ok()?;
            let yhi = top.eval(field, hi).ok()?;
            upper.push((Some(top), lo.clone(), hi.clone(), ylo, yhi));
            continue;
        }
        let above = prove_geq_const(field, &top, &half_rat, &iv)
            .ok()
            .filter(|p| p.holds)?;
        claims.push(claim_from_proof(
            ClaimKind::GeqConst {
                lhs: top,
                c: half_rat,
            },
            &above,
        ));
        upper.push((None, lo.clone(), hi.clone(), half.clone(), half.clone()));
    }

    let lower_l = piece.value_at(field, &alpha)?;
    let lower_r = piece.value_at(field, &beta)?;
    let in_square =
        |p: &ExactNumber| p.sign() >= 0 && p.cmp_real(&half) != Ordering::Greater;
    for y in upper
        .iter()
        .flat_map(|(_, _, _, a, b)| [a, b])
        .chain([&lower_l, &lower_r])
    {
        if !in_square(y) {
            return None;
        }
    }

    Some(Move {
        alpha,
        beta,
        lower_l,
        lower_r,
        upper,
        claims,
    })
}

fn apply_move(
    builder: &mut Builder,
    env: &mut Vec<EnvPiece>,
    index: usize,
    pair: (i64, i64),
    mv: Move,
) {
    let piece = env[index].clone();

    // labels
    let ll = builder.point(mv.alpha.clone(), mv.lower_l.clone());
    let lr = builder.point(mv.beta.clone(), mv.lower_r.clone());
    let mut items = vec![RegionItem::Point(ll)];
    match &piece.curve {
        EnvCurve::Arc(b) => items.push(RegionItem::Arc(*b)),
        EnvCurve::Floor(_) | EnvCurve::Done => {}
    }
    items.push(RegionItem::Point(lr));
    // upper chain right to left
    let mut upper_labels: Vec<(Option<Branch>, PointLabel, PointLabel)> = Vec::new();
    for (curve, lo, hi, ylo, yhi) in &mv.upper {
        let pl = builder.point(lo.clone(), ylo.clone());
        let ph = builder.point(hi.clone(), yhi.clone());
        upper_labels.push((*curve, pl, ph));
    }
    for (curve, pl, ph) in upper_labels.iter().rev() {
        if items.last() != Some(&RegionItem::Point(*ph)) {
            items.push(RegionItem::Point(*ph));
        }
        if let Some(b) = curve {
            items.push(RegionItem::Arc(*b));
        }
        items.push(RegionItem::Point(*pl));
    }
    // drop a duplicated closing point
    if items.len() > 1 && items.last() == Some(&items[0]) {
        items.pop();
    }
    builder.regions.push(Region {
        owner: pair,
        items,
    });
    builder.pair(pair);
    for c in mv.claims {
        builder.claim(c);
    }

    // splice the envelope
    let mut replacement = Vec::new();
    if piece.lo.cmp_real(&mv.alpha) == Ordering::Less {
        replacement.push(EnvPiece {
            curve: piece.curve.clone(),
            lo: piece.lo.clone(),
            hi: mv.alpha.clone(),
        });
    }
    for (curve, lo, hi, _, _) in &mv.upper {
        replacement.push(EnvPiece {
            curve: match curve {
                Some(b) => EnvCurve::Arc(*b),
                None => EnvCurve::Done,
            },
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    if mv.beta.cmp_real(&piece.hi) == Ordering::Less {
        replacement.push(EnvPiece {
            curve: piece.curve.clone(),
            lo: mv.beta.clone(),
            hi: piece.hi.clone(),
        });
    }
    env.splice(index..=index, replacement);
}

/// Probe points for one envelope piece: rationals just above the piece
/// (these are what the next region must cover) and the top edge above it
/// (used only to rank candidates).
struct Probes {
    curve: Vec<(Rat, Rat)>,
    top: Vec<(Rat, Rat)>,
}

fn probes(field: &FieldData, piece: &EnvPiece) -> Probes {
    let mut out = Probes {
        curve: Vec::new(),
        top: Vec::new(),
    };
    let Some(iv) = Interval::try_new(piece.lo.clone(), piece.hi.clone()) else {
        return out;
    };
    let Some(mid) = iv.inner_rational() else {
        return out;
    };
    let mut xs = vec![mid.clone()];
    if let Some(left) =
        Interval::new(piece.lo.clone(), ExactNumber::from_rat(mid.clone())).inner_rational()
    {
        xs.push(left);
    }
    if let Some(right) =
        Interval::new(ExactNumber::from_rat(mid), piece.hi.clone()).inner_rational()
    {
        xs.push(right);
    }
    for a in xs {
        let ax = ExactNumber::from_rat(a.clone());
        if let Some(y) = piece.value_at(field, &ax) {
            // a rational point on or just above the curve
            let (_, y_hi) = y.bounds(24);
            let y_probe = if y_hi > rat(1, 2) { rat(1, 2) } else { y_hi };
            out.curve.push((a.clone(), y_probe));
        }
        out.top.push((a, rat(1, 2)));
    }
    out
}

/// Runs the covering search over the quarter square.
pub fn search(field: &FieldData, config: &SearchConfig) -> SearchOutcome {
    let mut builder = Builder::new(field);
    let mut env = vec![EnvPiece {
        curve: EnvCurve::Floor(rat_int(0)),
        lo: ExactNumber::zero(),
        hi: ExactNumber::from_rat(rat(1, 2)),
    }];
    let mut steps = 0u32;
    // pieces before the cursor are finished or stuck; an advance anywhere
    // restarts the scan from the left
    let mut cursor = 0usize;
    while steps < config.max_steps && cursor < env.len() {
        if env[cursor].curve == EnvCurve::Done {
            cursor += 1;
            continue;
        }
        let index = cursor;
        let piece = env[index].clone();
        let probe_points = probes(field, &piece);
        if probe_points.curve.is_empty() {
            cursor += 1;
            continue;
        }
        // candidates ranked by missed curve probes, then missed top probes,
        // then by shift size
        let mut candidates: Vec<(i64, i64)> = Vec::new();
        for p in probe_points.curve.iter().chain(&probe_points.top) {
            for pair in crate::covering::cover_set(
                field,
                &crate::covering::CoverQuery {
                    point: p.clone(),
                    bound: config.bound,
                },
            ) {
                if !candidates.contains(&pair) {
                    candidates.push(pair);
                }
            }
        }
        let misses = |probes: &[(Rat, Rat)], pair: &(i64, i64)| -> usize {
            probes
                .iter()
                .filter(|(a, b)| field.shifted_norm(a, b, pair.0, pair.1).abs() > *field.m1())
                .count()
        };
        candidates.sort_by_key(|&(u, v)| {
            (
                misses(&probe_points.curve, &(u, v)),
                misses(&probe_points.top, &(u, v)),
                u.abs().max(v.abs()),
                u,
                v,
            )
        });
        let mut advanced = false;
        for pair in candidates {
            if let Some(mv) = try_candidate(field, &piece, pair, &probe_points.curve[0].0) {
                #[cfg(feature = "search-trace")]
                std::eprintln!(
                    "step {steps}: piece {:?} [{}, {}] pair {:?} -> [{}, {}]",
                    piece.curve,
                    piece.lo,
                    piece.hi,
                    pair,
                    mv.alpha,
                    mv.beta
                );
                apply_move(&mut builder, &mut env, index, pair, mv);
                advanced = true;
                steps += 1;
                cursor = 0;
                break;
            }
        }
        if !advanced {
            // no candidate advanced the whole piece: split it at an interior
            // rational and retry the halves separately (the barycenter move)
            let width_ok = {
                let (_, lo_ub) = piece.lo.bounds(20);
                let (hi_lb, _) = piece.hi.bounds(20);
                &hi_lb - &lo_ub > rat(1, 4096)
            };
            let split = width_ok
                .then(|| Interval::new(piece.lo.clone(), piece.hi.clone()).inner_rational())
                .flatten();
            match split {
                Some(mid) => {
                    let mid = ExactNumber::from_rat(mid);
                    let left = EnvPiece {
                        curve: piece.curve.clone(),
                        lo: piece.lo.clone(),
                        hi: mid.clone(),
                    };
                    let right = EnvPiece {
                        curve: piece.curve.clone(),
                        lo: mid,
                        hi: piece.hi.clone(),
                    };
                    env.splice(index..=index, [left, right]);
                    steps += 1;
                }
                None => {
                    cursor += 1;
                }
            }
        }
    }
    let uncovered: Vec<(ExactNumber, ExactNumber)> = env
        .iter()
        .filter(|p| p.curve != EnvCurve::Done)
        .map(|p| (p.lo.clone(), p.hi.clone()))
        .collect();
    let complete = uncovered.is_empty();
    SearchOutcome {
        certificate: builder.into_certificate(field.m1().clone()),
        complete,
        steps,
        uncovered,
    }
}
