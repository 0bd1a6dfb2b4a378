//! The shipped covering certificates for the six built-in fields.
//!
//! Certificates for m in {2, 3, 6, 7} carry full region decompositions of
//! the quarter square; m = 11 and m = 19 ship the labeled points and the
//! complete dominance-claim lists of the covering proofs (their region data
//! is too bulky to be useful in text form and the claims are what the
//! verification recomputes).
//!
//! Every point is constructed exactly (branch/line intersections) and every
//! claim polynomial comes out of the radical elimination itself, so the
//! builders panic early if anything fails to prove.

use quadeuclid_core::covering::{
    Certificate, Claim, ClaimKind, LabeledPoint, PointLabel, Region, RegionItem,
};
use quadeuclid_core::exact::{rat, rat_int, ExactNumber, Rat};
use quadeuclid_core::field::FieldData;
use quadeuclid_core::hyperbola::{
    intersect, intersect_line, prove_geq, prove_geq_const, prove_leq_const, AxisLine, Branch, Pm,
};
use quadeuclid_core::polysign::Interval;

/// `b(u, v, "+-")` is the branch with theta = '+', epsilon = '-'.
fn b(u: i64, v: i64, signs: &str) -> Branch {
    let mut chars = signs.chars();
    let pm = |c: char| if c == '+' { Pm::Plus } else { Pm::Minus };
    Branch::new(u, v, pm(chars.next().unwrap()), pm(chars.next().unwrap()))
}

struct CertBuilder {
    field: FieldData,
    points: Vec<LabeledPoint>,
    regions: Vec<Region>,
    claims: Vec<Claim>,
    pairs: Vec<(i64, i64)>,
}

impl CertBuilder {
    fn new(m: i64) -> CertBuilder {
        let field = FieldData::builtin(m).expect("built-in field");
        let pairs = field.covering_pairs().to_vec();
        CertBuilder {
            field,
            points: Vec::new(),
            regions: Vec::new(),
            claims: Vec::new(),
            pairs,
        }
    }

    fn point(&mut self, label: PointLabel, x: ExactNumber, y: ExactNumber) {
        self.points.push(LabeledPoint { label, x, y });
    }

    fn corner_points(&mut self) {
        for (i, (x, y)) in [(0, 0), (1, 0), (1, 1), (0, 1)].iter().enumerate() {
            self.point(
                PointLabel::P(i as u32),
                ExactNumber::from_rat(rat(*x, 2)),
                ExactNumber::from_rat(rat(*y, 2)),
            );
        }
    }

    /// The in-square critical point, labeled `c0`.
    fn critical_point(&mut self) {
        let half = ExactNumber::from_rat(rat(1, 2));
        let (x, y) = self
            .field
            .critical_points()
            .iter()
            .find(|(x, y)| {
                let to = |r: &Rat| ExactNumber::from_rat(r.clone());
                to(x) <= half && to(y) <= half
            })
            .expect("a critical point inside the quarter square")
            .clone();
        self.point(
            PointLabel::C(0),
            ExactNumber::from_rat(x),
            ExactNumber::from_rat(y),
        );
    }

    /// The unique intersection of two branches in the strip, labeled.
    fn cross(&mut self, label: u32, b1: Branch, b2: Branch) {
        let points = intersect(&self.field, &b1, &b2).expect("intersection");
        assert_eq!(points.len(), 1, "expected a unique intersection of {b1} and {b2}");
        let p = points.into_iter().next().unwrap();
        self.point(PointLabel::P(label), p.x, p.y);
    }

    fn on_line(&mut self, label: u32, branch: Branch, line: AxisLine) {
        let points = intersect_line(&self.field, &branch, &line).expect("line intersection");
        assert_eq!(points.len(), 1, "expected a unique line crossing of {branch}");
        let p = points.into_iter().next().unwrap();
        self.point(PointLabel::P(label), p.x, p.y);
    }

    fn coord(&self, label: PointLabel) -> (ExactNumber, ExactNumber) {
        let p = self
            .points
            .iter()
            .find(|p| p.label == label)
            .unwrap_or_else(|| panic!("unknown label {label}"));
        (p.x.clone(), p.y.clone())
    }

    fn x_of(&self, idx: u32) -> ExactNumber {
        self.coord(PointLabel::P(idx)).0
    }

    fn interval(&self, lo: ExactNumber, hi: ExactNumber) -> Interval {
        Interval::new(lo, hi)
    }

    fn geq(&mut self, lhs: Branch, rhs: Branch, lo: ExactNumber, hi: ExactNumber) {
        let iv = self.interval(lo, hi);
        let proof = prove_geq(&self.field, &lhs, &rhs, &iv).expect("claim in domain");
        assert!(proof.holds, "claim {lhs} >= {rhs} does not hold");
        self.claims.push(Claim {
            kind: ClaimKind::Geq { lhs, rhs },
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
            poly: proof.main_poly,
            case: proof.main_verdict.case,
        });
    }

    fn geqc(&mut self, lhs: Branch, c: Rat, lo: ExactNumber, hi: ExactNumber) {
        let iv = self.interval(lo, hi);
        let proof = prove_geq_const(&self.field, &lhs, &c, &iv).expect("claim in domain");
        assert!(proof.holds, "claim {lhs} >= {c} does not hold");
        self.claims.push(Claim {
            kind: ClaimKind::GeqConst { lhs, c },
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
            poly: proof.main_poly,
            case: proof.main_verdict.case,
        });
    }

    fn leqc(&mut self, lhs: Branch, c: Rat, lo: ExactNumber, hi: ExactNumber) {
        let iv = self.interval(lo, hi);
        let proof = prove_leq_const(&self.field, &lhs, &c, &iv).expect("claim in domain");
        assert!(proof.holds, "claim {lhs} <= {c} does not hold");
        self.claims.push(Claim {
            kind: ClaimKind::LeqConst { lhs, c },
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
            poly: proof.main_poly,
            case: proof.main_verdict.case,
        });
    }

    fn region(&mut self, owner: (i64, i64), items: Vec<RegionItem>) {
        self.regions.push(Region { owner, items });
    }

    fn build(self) -> Certificate {
        Certificate {
            m: self.field.m(),
            m1: self.field.m1().clone(),
            points: self.points,
            pairs: self.pairs,
            regions: self.regions,
            claims: self.claims,
        }
    }
}

fn p(i: u32) -> RegionItem {
    RegionItem::Point(PointLabel::P(i))
}

fn c(i: u32) -> RegionItem {
    RegionItem::Point(PointLabel::C(i))
}

fn arc(branch: Branch) -> RegionItem {
    RegionItem::Arc(branch)
}

fn zero() -> ExactNumber {
    ExactNumber::zero()
}

fn half() -> ExactNumber {
    ExactNumber::from_rat(rat(1, 2))
}

fn exact(n: i64, d: i64) -> ExactNumber {
    ExactNumber::from_rat(rat(n, d))
}

/// The whole square is one region of the pair (0, 0).
fn build_m2() -> Certificate {
    let mut cb = CertBuilder::new(2);
    cb.corner_points();
    cb.critical_point();
    cb.region((0, 0), vec![p(0), p(1), p(2), p(3)]);
    cb.geqc(b(0, 0, "+-"), rat(1, 2), zero(), half());
    cb.build()
}

/// Below the arc of (0, 0) and the band of (-1, 0) above it.
fn build_m3() -> Certificate {
    let mut cb = CertBuilder::new(3);
    cb.corner_points();
    cb.critical_point();
    cb.on_line(4, b(0, 0, "+-"), AxisLine::X(rat_int(0)));
    // the (0,0) arc passes through the critical corner (1/2, 1/2)
    cb.region((0, 0), vec![p(0), p(1), c(0), arc(b(0, 0, "+-")), p(4)]);
    cb.region((-1, 0), vec![p(4), arc(b(0, 0, "+-")), c(0), p(3)]);
    cb.geqc(b(-1, 0, "+-"), rat(1, 2), zero(), half());
    // the inner band of (-1, 0) ends where (a-1)^2 = 1/2
    let split = &ExactNumber::from_int(1) - &ExactNumber::sqrt_rat(&rat(1, 2)).unwrap();
    cb.geq(b(0, 0, "+-"), b(-1, 0, "++"), zero(), split);
    cb.build()
}

/// The three regions of the pairs (0,0), (1,0), (-2,-1).
fn build_m6() -> Certificate {
    let mut cb = CertBuilder::new(6);
    cb.corner_points();
    cb.critical_point();
    cb.on_line(4, b(0, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.cross(5, b(1, 0, "++"), b(0, 0, "+-"));
    cb.on_line(6, b(0, 0, "+-"), AxisLine::X(rat(1, 2)));
    cb.region((0, 0), vec![p(0), p(1), p(6), arc(b(0, 0, "+-")), p(4)]);
    cb.region(
        (1, 0),
        vec![p(2), p(3), p(4), arc(b(0, 0, "+-")), p(5), arc(b(1, 0, "++"))],
    );
    cb.region(
        (-2, -1),
        vec![p(5), arc(b(1, 0, "++")), p(2), p(6), arc(b(0, 0, "+-"))],
    );
    cb.geq(b(1, 0, "+-"), b(0, 0, "+-"), zero(), half());
    cb.geq(b(0, 0, "+-"), b(1, 0, "++"), zero(), exact(1, 4));
    cb.geqc(b(1, 0, "+-"), rat(1, 2), zero(), half());
    cb.leqc(b(1, 0, "++"), rat(1, 2), zero(), half());
    cb.geq(b(-2, -1, "-+"), b(0, 0, "+-"), exact(1, 4), half());
    cb.geq(b(0, 0, "+-"), b(-2, -1, "--"), exact(1, 4), half());
    // the lens between B_{1,0}^{++} and B_{0,0}^{+-} stays below the inner
    // sheet of (-2,-1); the reduction degenerates to the square (2a-1)^2
    cb.geq(b(-2, -1, "-+"), b(1, 0, "++"), exact(1, 4), half());
    cb.build()
}

/// The four regions of the pairs (0,0), (1,0), (-4,1), (-2,-1).
fn build_m7() -> Certificate {
    let mut cb = CertBuilder::new(7);
    cb.corner_points();
    cb.critical_point();
    cb.on_line(4, b(0, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.on_line(5, b(1, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.cross(6, b(1, 0, "++"), b(0, 0, "+-"));
    cb.on_line(7, b(1, 0, "++"), AxisLine::X(rat(1, 2)));
    cb.on_line(8, b(1, 0, "+-"), AxisLine::Y(rat(1, 2)));
    cb.region((0, 0), vec![p(0), p(1), c(0), arc(b(0, 0, "+-")), p(4)]);
    cb.region(
        (1, 0),
        vec![
            p(7),
            p(2),
            p(8),
            arc(b(1, 0, "+-")),
            p(5),
            p(4),
            arc(b(0, 0, "+-")),
            p(6),
            arc(b(1, 0, "++")),
        ],
    );
    cb.region((-4, 1), vec![p(5), arc(b(1, 0, "+-")), p(8), p(3)]);
    cb.region(
        (-2, -1),
        vec![c(0), p(7), arc(b(1, 0, "++")), p(6), arc(b(0, 0, "+-"))],
    );
    let x8 = cb.x_of(8);
    cb.geq(b(1, 0, "+-"), b(0, 0, "+-"), zero(), exact(1, 7));
    cb.geq(b(0, 0, "+-"), b(1, 0, "++"), zero(), exact(1, 7));
    cb.geqc(b(1, 0, "+-"), rat(1, 2), x8.clone(), half());
    cb.leqc(b(1, 0, "++"), rat(1, 2), x8.clone(), half());
    cb.geq(b(-4, 1, "+-"), b(1, 0, "+-"), zero(), x8.clone());
    cb.geq(b(1, 0, "+-"), b(-4, 1, "++"), zero(), x8.clone());
    cb.geqc(b(-4, 1, "+-"), rat(1, 2), zero(), x8.clone());
    cb.leqc(b(-4, 1, "++"), rat(1, 2), zero(), x8);
    cb.geq(b(-2, -1, "-+"), b(1, 0, "++"), zero(), half());
    cb.geq(b(1, 0, "++"), b(-2, -1, "--"), zero(), half());
    cb.geq(b(0, 0, "+-"), b(-2, -1, "--"), zero(), half());
    cb.build()
}

/// Points and dominance claims of the m=11 covering proof (no region data).
fn build_m11() -> Certificate {
    let mut cb = CertBuilder::new(11);
    cb.corner_points();
    cb.critical_point();
    cb.on_line(4, b(0, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.on_line(5, b(1, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.cross(6, b(1, 0, "++"), b(0, 0, "+-"));
    cb.on_line(7, b(1, 0, "++"), AxisLine::X(rat(1, 2)));
    cb.on_line(8, b(1, 0, "+-"), AxisLine::Y(rat(1, 2)));
    cb.on_line(9, b(-2, -1, "-+"), AxisLine::Y(rat(1, 2)));
    cb.on_line(10, b(-2, -1, "-+"), AxisLine::X(rat_int(0)));
    cb.cross(11, b(-5, 1, "++"), b(-2, -1, "-+"));
    cb.on_line(12, b(-5, 1, "++"), AxisLine::X(rat_int(0)));
    cb.on_line(13, b(5, -2, "--"), AxisLine::X(rat_int(0)));
    cb.cross(14, b(5, -2, "--"), b(-2, -1, "-+"));
    let x6 = cb.x_of(6);
    let x8 = cb.x_of(8);
    let x9 = cb.x_of(9);
    let x11 = cb.x_of(11);
    let x14 = cb.x_of(14);
    // step 2: the band of (1, 0)
    cb.geq(b(1, 0, "+-"), b(0, 0, "+-"), zero(), half());
    cb.geq(b(0, 0, "+-"), b(1, 0, "++"), zero(), x6.clone());
    cb.geqc(b(1, 0, "+-"), rat(1, 2), x8.clone(), half());
    cb.leqc(b(1, 0, "++"), rat(1, 2), x8, half());
    // step 3: (-6, -2) over the arc toward the critical point, and (-2, -1)
    cb.geq(b(-6, -2, "-+"), b(1, 0, "++"), x6.clone(), half());
    cb.geq(b(1, 0, "++"), b(-6, -2, "--"), x6, half());
    cb.geq(b(-2, -1, "-+"), b(1, 0, "+-"), zero(), half());
    cb.geq(b(1, 0, "+-"), b(-2, -1, "--"), zero(), half());
    // step 4: (-5, 1)
    cb.geq(b(-5, 1, "+-"), b(-2, -1, "-+"), x11.clone(), x9.clone());
    cb.geq(b(-2, -1, "-+"), b(-5, 1, "++"), x11.clone(), x9.clone());
    cb.geqc(b(-5, 1, "+-"), rat(1, 2), zero(), x9.clone());
    cb.leqc(b(-5, 1, "++"), rat(1, 2), zero(), x9);
    // step 5: (5, -2)
    cb.geq(b(5, -2, "-+"), b(-5, 1, "++"), zero(), x11.clone());
    cb.geq(b(-5, 1, "++"), b(5, -2, "--"), zero(), x11);
    // step 6: (25, -8)
    cb.geq(b(25, -8, "-+"), b(5, -2, "--"), zero(), x14.clone());
    cb.geq(b(5, -2, "-+"), b(25, -8, "--"), zero(), x14);
    cb.build()
}

/// Points and dominance claims of the m=19 covering proof (no region data).
fn build_m19() -> Certificate {
    let mut cb = CertBuilder::new(19);
    cb.corner_points();
    cb.critical_point();
    cb.on_line(4, b(0, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.on_line(5, b(0, 0, "+-"), AxisLine::X(rat(1, 2)));
    cb.on_line(6, b(1, 0, "+-"), AxisLine::X(rat_int(0)));
    cb.on_line(7, b(1, 0, "++"), AxisLine::X(rat(1, 2)));
    cb.cross(8, b(1, 0, "++"), b(0, 0, "+-"));
    cb.on_line(9, b(1, 0, "+-"), AxisLine::X(rat(1, 2)));
    cb.on_line(10, b(-2, 0, "+-"), AxisLine::Y(rat(1, 2)));
    cb.on_line(11, b(-2, 0, "++"), AxisLine::X(rat_int(0)));
    cb.cross(12, b(-2, 0, "++"), b(1, 0, "+-"));
    cb.on_line(13, b(2, -1, "-+"), AxisLine::X(rat(1, 2)));
    cb.on_line(14, b(2, -1, "-+"), AxisLine::Y(rat(1, 2)));
    cb.cross(15, b(-3, -1, "-+"), b(-2, 0, "++"));
    cb.on_line(16, b(7, -2, "--"), AxisLine::X(rat_int(0)));
    cb.cross(17, b(7, -2, "--"), b(-3, -1, "-+"));
    cb.on_line(18, b(-6, 1, "++"), AxisLine::X(rat_int(0)));
    cb.cross(19, b(-6, 1, "++"), b(-3, -1, "-+"));
    cb.on_line(20, b(991, 227, "+-"), AxisLine::X(rat_int(0)));
    cb.cross(21, b(-19, 4, "++"), b(991, 227, "+-"));
    cb.on_line(22, b(-19, 4, "++"), AxisLine::X(rat_int(0)));
    cb.on_line(23, b(-80, 18, "++"), AxisLine::X(rat_int(0)));
    cb.cross(24, b(-80, 18, "++"), b(991, 227, "+-"));
    cb.cross(25, b(-430, -99, "-+"), b(-80, 18, "++"));
    cb.on_line(26, b(-430, -99, "-+"), AxisLine::X(rat_int(0)));
    let x8 = cb.x_of(8);
    let x10 = cb.x_of(10);
    let x14 = cb.x_of(14);
    let x19 = cb.x_of(19);
    let x25 = cb.x_of(25);
    let two_fifths = exact(2, 5);
    // step 2: (1, 0), plus (5, 1) for the sliver at the right edge
    cb.geq(b(1, 0, "+-"), b(0, 0, "+-"), zero(), x8.clone());
    cb.geq(b(0, 0, "+-"), b(1, 0, "++"), zero(), x8);
    cb.geq(b(5, 1, "+-"), b(1, 0, "++"), zero(), half());
    cb.geq(b(5, 1, "+-"), b(0, 0, "+-"), exact(1, 3), half());
    cb.geq(b(0, 0, "+-"), b(5, 1, "++"), exact(1, 3), half());
    // step 3: (-2, 0)
    cb.geq(b(-2, 0, "+-"), b(1, 0, "+-"), exact(173, 1026), half());
    cb.geq(b(1, 0, "+-"), b(-2, 0, "++"), exact(173, 1026), half());
    cb.geqc(b(-2, 0, "+-"), rat(1, 2), zero(), x10.clone());
    cb.leqc(b(-2, 0, "++"), rat(1, 2), zero(), x10.clone());
    // step 4: (2, -1)
    cb.geq(b(2, -1, "-+"), b(-2, 0, "+-"), zero(), half());
    cb.geq(b(-2, 0, "+-"), b(2, -1, "--"), zero(), half());
    cb.geqc(b(2, -1, "-+"), rat(1, 2), x10.clone(), x14.clone());
    cb.leqc(b(2, -1, "--"), rat(1, 2), x10, x14.clone());
    // step 5: (-7, 1)
    cb.geqc(b(-7, 1, "+-"), rat(1, 2), x14.clone(), half());
    cb.leqc(b(-7, 1, "++"), rat(1, 2), x14, half());
    cb.geq(b(-7, 1, "+-"), b(2, -1, "-+"), zero(), half());
    cb.geq(b(2, -1, "-+"), b(-7, 1, "++"), zero(), half());
    // step 6: (-3, -1)
    cb.geq(b(-3, -1, "-+"), b(1, 0, "+-"), zero(), half());
    cb.geq(b(1, 0, "+-"), b(-3, -1, "--"), zero(), half());
    // step 7: (7, -2)
    cb.geq(b(7, -2, "-+"), b(-2, 0, "++"), zero(), two_fifths.clone());
    cb.geq(b(-2, 0, "++"), b(7, -2, "--"), zero(), two_fifths.clone());
    // step 8: (-6, 1)
    cb.geq(b(-6, 1, "+-"), b(7, -2, "--"), zero(), two_fifths.clone());
    cb.geq(b(7, -2, "--"), b(-6, 1, "++"), zero(), two_fifths.clone());
    // step 9: (991, 227) takes the critical point, (-19, 4) the rest
    cb.geq(b(991, 227, "+-"), b(-3, -1, "-+"), zero(), x19.clone());
    cb.geq(b(-3, -1, "-+"), b(991, 227, "++"), zero(), x19);
    cb.geq(b(-19, 4, "+-"), b(-6, 1, "++"), zero(), two_fifths.clone());
    cb.geq(b(-6, 1, "++"), b(-19, 4, "++"), zero(), two_fifths.clone());
    // step 10: (-80, 18) and (-430, -99)
    cb.geq(b(-80, 18, "+-"), b(-19, 4, "++"), zero(), two_fifths.clone());
    cb.geq(b(-19, 4, "++"), b(-80, 18, "++"), zero(), two_fifths.clone());
    cb.geq(b(-430, -99, "-+"), b(991, 227, "+-"), zero(), two_fifths.clone());
    cb.geq(b(991, 227, "+-"), b(-430, -99, "--"), zero(), two_fifths.clone());
    // step 11: (90, -21) finishes the last three points
    cb.geq(b(90, -21, "-+"), b(-80, 18, "++"), zero(), two_fifths.clone());
    cb.geq(b(-80, 18, "++"), b(90, -21, "--"), zero(), two_fifths.clone());
    cb.geq(b(90, -21, "-+"), b(-430, -99, "-+"), zero(), x25);
    cb.geq(b(-430, -99, "-+"), b(90, -21, "--"), zero(), two_fifths);
    cb.build()
}

/// Builds the shipped certificate for a built-in field.
pub fn build(m: i64) -> Option<Certificate> {
    Some(match m {
        2 => build_m2(),
        3 => build_m3(),
        6 => build_m6(),
        7 => build_m7(),
        11 => build_m11(),
        19 => build_m19(),
        _ => return None,
    })
}

/// The committed text files, embedded for tests and for regeneration checks.
pub fn shipped_text(m: i64) -> Option<&'static str> {
    Some(match m {
        2 => include_str!("../data/m2.cert"),
        3 => include_str!("../data/m3.cert"),
        6 => include_str!("../data/m6.cert"),
        7 => include_str!("../data/m7.cert"),
        11 => include_str!("../data/m11.cert"),
        19 => include_str!("../data/m19.cert"),
        _ => return None,
    })
}
