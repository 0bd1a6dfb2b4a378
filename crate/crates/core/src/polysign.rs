//! Sign of a rational polynomial over an interval whose endpoints are exact
//! numbers.
//!
//! Degree two and below follows the discriminant case analysis (cases `-`,
//! `0`, `a1`, `a2`, `b` for a constant sign, `d`/`e` for a crossing); higher
//! degrees go through Sturm root isolation with exact rational arithmetic.
//! Case labels for quadratics always describe the polynomial with positive
//! leading coefficient; for a negative leading coefficient the polynomial is
//! negated before classification and the sign verdict flipped, which matches
//! how such facts are usually quoted.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::exact::{rat_int, ExactNumber, Rat};

/// Polynomial with rational coefficients, ascending degree, trailing zeros
/// stripped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_exact(&self, x: &ExactNumber) -> ExactNumber {
        let mut acc = ExactNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &ExactNumber::from_rat(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(d.coeffs.len()) + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let factor = r.leading() / d.leading();
            q[shift] = factor.clone();
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &factor));
            r = &r - &Poly::from_coeffs(sub);
        }
        (Poly::from_coeffs(q), r)
    }

    /// Integer-coefficient form with content 1; only positive scaling is
    /// applied, so signs are preserved.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for n in &ints {
            gcd = gcd.gcd(n);
        }
        Poly::from_coeffs(
            ints.into_iter()
                .map(|n| Rat::from_integer(n / &gcd))
                .collect(),
        )
    }

    /// True when the polynomials agree up to a positive rational factor.
    pub fn matches_up_to_positive_scale(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.degree() != other.degree() {
            return false;
        }
        let k = other.leading() / self.leading();
        k.is_positive() && self.scale(&k) == *other
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Closed interval with exact-number endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: ExactNumber,
    hi: ExactNumber,
}

impl Interval {
    pub fn new(lo: ExactNumber, hi: ExactNumber) -> Self {
        assert!(
            lo.cmp_real(&hi) != Ordering::Greater,
            "interval endpoints out of order"
        );
        Interval { lo, hi }
    }

    pub fn try_new(lo: ExactNumber, hi: ExactNumber) -> Option<Self> {
        (lo.cmp_real(&hi) != Ordering::Greater).then_some(Interval { lo, hi })
    }

    pub fn rat(lo_num: i64, lo_den: i64, hi_num: i64, hi_den: i64) -> Self {
        Interval::new(
            ExactNumber::from_rat(Ratio::new(BigInt::from(lo_num), BigInt::from(lo_den))),
            ExactNumber::from_rat(Ratio::new(BigInt::from(hi_num), BigInt::from(hi_den))),
        )
    }

    pub fn lo(&self) -> &ExactNumber {
        &self.lo
    }

    pub fn hi(&self) -> &ExactNumber {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// True when `other` is contained in `self`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.lo.cmp_real(&other.lo) != Ordering::Greater
            && other.hi.cmp_real(&self.hi) != Ordering::Greater
    }

    /// Some rational strictly between the endpoints (refining the endpoint
    /// enclosures as far as needed). None for a point interval.
    pub fn inner_rational(&self) -> Option<Rat> {
        if self.is_point() {
            return None;
        }
        let mut bits = 16u32;
        loop {
            let (_, lo_hi) = self.lo.bounds(bits);
            let (hi_lo, _) = self.hi.bounds(bits);
            if lo_hi < hi_lo {
                let mid = (&lo_hi + &hi_lo) / rat_int(2);
                return Some(mid);
            }
            // the upper approximation of lo itself may already work
            if self.lo.cmp_real(&ExactNumber::from_rat(lo_hi.clone())) == Ordering::Less
                && ExactNumber::from_rat(lo_hi.clone()).cmp_real(&self.hi) == Ordering::Less
            {
                return Some(lo_hi);
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "endpoint refinement failed to converge");
        }
    }
}

/// Sign of a polynomial over an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    /// Strictly positive everywhere.
    Positive,
    /// Nonnegative, vanishing at isolated points.
    NonnegativeWithZero,
    /// Strictly negative everywhere.
    Negative,
    /// Nonpositive, vanishing at isolated points.
    NonpositiveWithZero,
    /// The zero polynomial.
    IdenticallyZero,
    /// Changes sign on the interval.
    Mixed,
}

impl SignClass {
    pub fn is_nonneg(self) -> bool {
        matches!(
            self,
            SignClass::Positive | SignClass::NonnegativeWithZero | SignClass::IdenticallyZero
        )
    }

    pub fn is_nonpos(self) -> bool {
        matches!(
            self,
            SignClass::Negative | SignClass::NonpositiveWithZero | SignClass::IdenticallyZero
        )
    }

    fn flip(self) -> SignClass {
        match self {
            SignClass::Positive => SignClass::Negative,
            SignClass::Negative => SignClass::Positive,
            SignClass::NonnegativeWithZero => SignClass::NonpositiveWithZero,
            SignClass::NonpositiveWithZero => SignClass::NonnegativeWithZero,
            other => other,
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Positive => "positive",
            SignClass::NonnegativeWithZero => "nonnegative",
            SignClass::Negative => "negative",
            SignClass::NonpositiveWithZero => "nonpositive",
            SignClass::IdenticallyZero => "zero",
            SignClass::Mixed => "mixed",
        };
        write!(f, "{s}")
    }
}

/// Which case of the discriminant analysis decided the verdict.
///
/// `Minus` is `disc < 0`, `Zero` is `disc = 0`, `A1`/`A2`/`B` are the
/// root-versus-interval positions with constant sign, `D`/`E` are crossings
/// (downward, upward), `Sturm` marks the general-degree path. Degree one is
/// classified by monotonicity: nonnegative increasing is `A2`, nonnegative
/// decreasing `A1`, nonpositive `B`, crossings `D`/`E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Minus,
    Zero,
    A1,
    A2,
    B,
    D,
    E,
    Sturm,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Minus => "-",
            CaseLabel::Zero => "0",
            CaseLabel::A1 => "a1",
            CaseLabel::A2 => "a2",
            CaseLabel::B => "b",
            CaseLabel::D => "d",
            CaseLabel::E => "e",
            CaseLabel::Sturm => "sturm",
        };
        write!(f, "{s}")
    }
}

impl core::str::FromStr for CaseLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "-" => CaseLabel::Minus,
            "0" => CaseLabel::Zero,
            "a1" => CaseLabel::A1,
            "a2" => CaseLabel::A2,
            "b" => CaseLabel::B,
            "d" => CaseLabel::D,
            "e" => CaseLabel::E,
            "sturm" => CaseLabel::Sturm,
            other => return Err(alloc::format!("unknown case label {other:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignVerdict {
    pub sign: SignClass,
    pub case: CaseLabel,
}

impl SignVerdict {
    fn new(sign: SignClass, case: CaseLabel) -> Self {
        SignVerdict { sign, case }
    }
}

/// Sign of a degree `<= 2` polynomial over the interval.
pub fn quad_sign_on_interval(p: &Poly, iv: &Interval) -> SignVerdict {
    assert!(p.degree() <= 2, "quad_sign_on_interval needs degree <= 2");
    if p.is_zero() {
        return SignVerdict::new(SignClass::IdenticallyZero, CaseLabel::Zero);
    }
    match p.degree() {
        0 => {
            let sign = if p.coeff(0).is_positive() {
                SignClass::Positive
            } else {
                SignClass::Negative
            };
            SignVerdict::new(sign, CaseLabel::Minus)
        }
        1 => linear_sign(p, iv),
        _ => {
            let alpha = p.coeff(2);
            if alpha.is_negative() {
                let v = quad_sign_positive_leading(&-p, iv);
                SignVerdict::new(v.sign.flip(), v.case)
            } else {
                quad_sign_positive_leading(p, iv)
            }
        }
    }
}

fn linear_sign(p: &Poly, iv: &Interval) -> SignVerdict {
    let beta = p.coeff(1);
    let root = ExactNumber::from_rat(-p.coeff(0) / &beta);
    let at_lo = root.cmp_real(iv.lo());
    let at_hi = root.cmp_real(iv.hi());
    let increasing = beta.is_positive();
    if at_lo != Ordering::Greater {
        // root <= lo
        let touches = at_lo == Ordering::Equal;
        return if increasing {
            SignVerdict::new(
                if touches { SignClass::NonnegativeWithZero } else { SignClass::Positive },
                CaseLabel::A2,
            )
        } else {
            SignVerdict::new(
                if touches { SignClass::NonpositiveWithZero } else { SignClass::Negative },
                CaseLabel::B,
            )
        };
    }
    if at_hi != Ordering::Less {
        // root >= hi
        let touches = at_hi == Ordering::Equal;
        return if increasing {
            SignVerdict::new(
                if touches { SignClass::NonpositiveWithZero } else { SignClass::Negative },
                CaseLabel::B,
            )
        } else {
            SignVerdict::new(
                if touches { SignClass::NonnegativeWithZero } else { SignClass::Positive },
                CaseLabel::A1,
            )
        };
    }
    // root strictly inside
    SignVerdict::new(
        SignClass::Mixed,
        if increasing { CaseLabel::E } else { CaseLabel::D },
    )
}

/// Case analysis for `alpha > 0`.
fn quad_sign_positive_leading(p: &Poly, iv: &Interval) -> SignVerdict {
    let alpha = p.coeff(2);
    let beta = p.coeff(1);
    let gamma = p.coeff(0);
    let disc = &beta * &beta - rat_int(4) * &alpha * &gamma;
    if disc.is_negative() {
        return SignVerdict::new(SignClass::Positive, CaseLabel::Minus);
    }
    let vertex = -&beta / (rat_int(2) * &alpha);
    if disc.is_zero() {
        let v = ExactNumber::from_rat(vertex);
        let inside = v.cmp_real(iv.lo()) != Ordering::Less && v.cmp_real(iv.hi()) != Ordering::Greater;
        let sign = if inside {
            SignClass::NonnegativeWithZero
        } else {
            SignClass::Positive
        };
        return SignVerdict::new(sign, CaseLabel::Zero);
    }
    // disc > 0: roots (-beta -+ sqrt(disc)) / (2 alpha), exact
    let sqrt_disc = ExactNumber::sqrt_rat(&disc).expect("disc > 0");
    let half = Rat::one() / (rat_int(2) * &alpha);
    let x_minus = (&ExactNumber::from_rat(-beta.clone()) - &sqrt_disc).mul_rat(&half);
    let x_plus = (&ExactNumber::from_rat(-beta) + &sqrt_disc).mul_rat(&half);
    let hi_vs_xm = iv.hi().cmp_real(&x_minus);
    if hi_vs_xm != Ordering::Greater {
        let sign = if hi_vs_xm == Ordering::Equal {
            SignClass::NonnegativeWithZero
        } else {
            SignClass::Positive
        };
        return SignVerdict::new(sign, CaseLabel::A1);
    }
    let xp_vs_lo = x_plus.cmp_real(iv.lo());
    if xp_vs_lo != Ordering::Greater {
        let sign = if xp_vs_lo == Ordering::Equal {
            SignClass::NonnegativeWithZero
        } else {
            SignClass::Positive
        };
        return SignVerdict::new(sign, CaseLabel::A2);
    }
    let xm_vs_lo = x_minus.cmp_real(iv.lo());
    let hi_vs_xp = iv.hi().cmp_real(&x_plus);
    if xm_vs_lo != Ordering::Greater && hi_vs_xp != Ordering::Greater {
        // interval inside the root span
        let touches = xm_vs_lo == Ordering::Equal || hi_vs_xp == Ordering::Equal;
        let sign = if touches {
            SignClass::NonpositiveWithZero
        } else {
            SignClass::Negative
        };
        return SignVerdict::new(sign, CaseLabel::B);
    }
    // a root strictly inside: sign change; direction from which root is inside
    let xm_inside = xm_vs_lo == Ordering::Greater && iv.hi().cmp_real(&x_minus) == Ordering::Greater;
    SignVerdict::new(
        SignClass::Mixed,
        if xm_inside { CaseLabel::D } else { CaseLabel::E },
    )
}

/// Sign of an arbitrary-degree polynomial over the interval.
///
/// Delegates to the quadratic analysis for degree `<= 2`; otherwise isolates
/// the real roots with Sturm sequences and samples the gaps at rationals.
pub fn poly_sign_on_interval(p: &Poly, iv: &Interval) -> SignVerdict {
    if p.degree() <= 2 {
        return quad_sign_on_interval(p, iv);
    }
    if iv.is_point() {
        let s = p.eval_exact(iv.lo()).sign();
        let sign = match s {
            1 => SignClass::Positive,
            -1 => SignClass::Negative,
            _ => SignClass::NonnegativeWithZero,
        };
        return SignVerdict::new(sign, CaseLabel::Sturm);
    }
    let sig_lo = p.eval_exact(iv.lo()).sign();
    let sig_hi = p.eval_exact(iv.hi()).sign();

    // rational enclosure [enc_lo, enc_hi] of the interval, endpoints non-roots
    let (mut enc_lo, _) = iv.lo().bounds(32);
    let (_, mut enc_hi) = iv.hi().bounds(32);
    while p.eval(&enc_lo).is_zero() {
        enc_lo -= Rat::one();
    }
    while p.eval(&enc_hi).is_zero() {
        enc_hi += Rat::one();
    }

    let chain = sturm_chain(p);
    let mut brackets = isolate_roots(p, &chain, &enc_lo, &enc_hi);
    // classify each bracket against the interval, refining as needed
    let mut interior: Vec<Bracket> = Vec::new();
    for b in brackets.drain(..) {
        if let BracketPosition::Interior(b) = classify_bracket(p, &chain, b, iv, sig_lo, sig_hi) {
            interior.push(b);
        }
    }
    interior.sort_by(|a, b| a.lo.cmp(&b.lo));

    // sample strictly between lo, the interior roots, and hi
    let mut samples: Vec<Rat> = Vec::new();
    if interior.is_empty() {
        let s = iv.inner_rational().expect("non-point interval");
        // an interior rational could coincide with a root only if a root is
        // interior, which it is not here
        samples.push(s);
    } else {
        let first = refine_until_above(p, &chain, interior[0].clone(), iv.lo());
        samples.push(first.lo.clone());
        interior[0] = first;
        for i in 1..interior.len() {
            // brackets are disjoint: the right end of one sits below the next root
            samples.push(interior[i - 1].hi.clone());
        }
        let last = refine_until_below(p, &chain, interior.last().unwrap().clone(), iv.hi());
        samples.push(last.hi.clone());
    }

    let signs: Vec<i8> = samples.iter().map(|s| rat_sign(&p.eval(s))).collect();
    debug_assert!(signs.iter().all(|&s| s != 0));
    let has_zero = sig_lo == 0 || sig_hi == 0 || !interior.is_empty();
    let first = signs[0];
    if signs.iter().all(|&s| s == first) {
        let sign = match (first, has_zero) {
            (1, false) => SignClass::Positive,
            (1, true) => SignClass::NonnegativeWithZero,
            (-1, false) => SignClass::Negative,
            _ => SignClass::NonpositiveWithZero,
        };
        return SignVerdict::new(sign, CaseLabel::Sturm);
    }
    let downward = signs.windows(2).find(|w| w[0] != w[1]).map(|w| w[0] == 1);
    SignVerdict::new(
        SignClass::Mixed,
        if downward == Some(true) { CaseLabel::D } else { CaseLabel::E },
    )
}

fn rat_sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Debug)]
struct Bracket {
    lo: Rat,
    hi: Rat,
}

enum BracketPosition {
    Outside,
    Interior(Bracket),
    Boundary,
}

/// Sturm chain of `p` (works for non-square-free input too; the chain counts
/// distinct roots).
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut prev = 0i8;
    let mut count = 0;
    for p in chain {
        let s = rat_sign(&p.eval(x));
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Distinct roots in the half-open interval `(a, b]`; requires `p(a) != 0`
/// and `p(b) != 0`.
fn count_roots(chain: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// A split point in `(lo, hi)` that is not a root of `p`: the midpoint, or
/// failing that a point at offset `width/k`. Terminates because `p` has
/// finitely many roots.
fn non_root_split(p: &Poly, lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    for k in 2u64.. {
        let cand = lo + &width / Rat::from_integer(BigInt::from(k));
        if !p.eval(&cand).is_zero() {
            return cand;
        }
    }
    unreachable!()
}

/// Disjoint brackets `(lo, hi]`, each containing exactly one distinct real
/// root of `p`, covering all roots in `(enc_lo, enc_hi]`.
fn isolate_roots(p: &Poly, chain: &[Poly], enc_lo: &Rat, enc_hi: &Rat) -> Vec<Bracket> {
    let mut out = Vec::new();
    let mut stack = vec![(enc_lo.clone(), enc_hi.clone(), count_roots(chain, enc_lo, enc_hi))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(Bracket { lo, hi }),
            _ => {
                let mid = non_root_split(p, &lo, &hi);
                let left = count_roots(chain, &lo, &mid);
                stack.push((lo, mid.clone(), left));
                stack.push((mid, hi, n - left));
            }
        }
    }
    out
}

fn halve(p: &Poly, chain: &[Poly], b: &Bracket) -> Bracket {
    let mid = non_root_split(p, &b.lo, &b.hi);
    if count_roots(chain, &b.lo, &mid) == 1 {
        Bracket { lo: b.lo.clone(), hi: mid }
    } else {
        Bracket { lo: mid, hi: b.hi.clone() }
    }
}

/// Decides whether the unique root in the bracket lies left of, inside, or
/// right of the open interval, or coincides with an endpoint.
fn classify_bracket(
    p: &Poly,
    chain: &[Poly],
    mut b: Bracket,
    iv: &Interval,
    sig_lo: i8,
    sig_hi: i8,
) -> BracketPosition {
    loop {
        let hi_ex = ExactNumber::from_rat(b.hi.clone());
        let lo_ex = ExactNumber::from_rat(b.lo.clone());
        if hi_ex.cmp_real(iv.lo()) != Ordering::Greater {
            return BracketPosition::Outside; // root < b.hi <= lo is impossible to be inside
        }
        if lo_ex.cmp_real(iv.hi()) != Ordering::Less {
            return BracketPosition::Outside; // root > b.lo >= hi
        }
        // endpoint roots: the bracket has a single root, so containment of a
        // root endpoint identifies it exactly
        let contains_lo =
            sig_lo == 0 && lo_ex.cmp_real(iv.lo()) == Ordering::Less && hi_ex.cmp_real(iv.lo()) != Ordering::Less;
        if contains_lo {
            return BracketPosition::Boundary;
        }
        let contains_hi =
            sig_hi == 0 && lo_ex.cmp_real(iv.hi()) == Ordering::Less && hi_ex.cmp_real(iv.hi()) != Ordering::Less;
        if contains_hi {
            return BracketPosition::Boundary;
        }
        if lo_ex.cmp_real(iv.lo()) != Ordering::Less && hi_ex.cmp_real(iv.hi()) != Ordering::Greater {
            return BracketPosition::Interior(b);
        }
        b = halve(p, chain, &b);
    }
}

fn refine_until_above(p: &Poly, chain: &[Poly], mut b: Bracket, lo: &ExactNumber) -> Bracket {
    while ExactNumber::from_rat(b.lo.clone()).cmp_real(lo) != Ordering::Greater {
        b = halve(p, chain, &b);
    }
    b
}

fn refine_until_below(p: &Poly, chain: &[Poly], mut b: Bracket, hi: &ExactNumber) -> Bracket {
    while ExactNumber::from_rat(b.hi.clone()).cmp_real(hi) != Ordering::Less {
        b = halve(p, chain, &b);
    }
    b
}
