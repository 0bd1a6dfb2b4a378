//! Exact numbers `x0 + sum_i c_i * sqrt(y_i)` with rational `x0`, `c_i` and
//! positive integer radicands `y_i`, together with a total, float-free sign
//! oracle.
//!
//! Canonical form: radicands are pairwise distinct, square-reduced integers
//! `>= 2` (square parts are extracted into the coefficient, perfect squares
//! fold into the rational part) and coefficients are nonzero. With fully
//! square-free radicands this form is unique, so structural equality is value
//! equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms by `Ratio`.
pub type Rat = Ratio<BigInt>;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for a small integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Ratio::from_integer(BigInt::from(n))
}

/// Trial-division bound used when extracting square parts of radicands.
/// Square factors of primes above the bound stay inside the radicand.
pub const SQUARE_EXTRACTION_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// A radicand was negative (square roots of negatives are out of domain).
    NegativeRadicand,
    /// `sqrt` of a multi-radical expression did not denest to `r + s*sqrt(n)`.
    NotDenestable,
    /// Text that does not match the `R | R*sqrt(R) | expr +- expr` grammar.
    Parse(String),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::NegativeRadicand => write!(f, "negative radicand"),
            ExactError::NotDenestable => write!(f, "square root does not denest"),
            ExactError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

/// One radical term `coeff * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalTerm {
    coeff: Rat,
    radicand: BigInt,
}

impl RadicalTerm {
    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }
}

/// A sum `rational + sum_i coeff_i * sqrt(radicand_i)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactNumber {
    rational: Rat,
    terms: Vec<RadicalTerm>,
}

/// Splits `n >= 0` as `root^2 * rest`, extracting every square prime factor
/// with prime `<= bound` and any remaining perfect-square residue.
fn split_square(n: &BigInt, bound: u64) -> (BigInt, BigInt) {
    if n.is_zero() || n.is_one() {
        return (BigInt::one(), n.clone());
    }
    if let Some(small) = to_u128(n) {
        let (root, rest) = split_square_u128(small, bound);
        return (BigInt::from(root), BigInt::from(rest));
    }
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut d: u64 = 2;
    while d <= bound {
        let dd = BigInt::from(d) * BigInt::from(d);
        if dd > rest {
            break;
        }
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            root *= BigInt::from(d);
        }
        d = next_trial(d);
    }
    // the residue may itself be a perfect square (e.g. p^2 for a large prime)
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= &s;
        rest = BigInt::one();
    }
    (root, rest)
}

fn split_square_u128(n: u128, bound: u64) -> (u128, u128) {
    let mut rest = n;
    let mut root: u128 = 1;
    let mut d: u64 = 2;
    while (d as u128) * (d as u128) <= rest && d <= bound {
        let dd = (d as u128) * (d as u128);
        while rest.is_multiple_of(dd) {
            rest /= dd;
            root *= d as u128;
        }
        d = next_trial(d);
    }
    let s = rest.sqrt();
    if s * s == rest {
        root *= s;
        rest = 1;
    }
    (root, rest)
}

fn next_trial(d: u64) -> u64 {
    match d {
        2 => 3,
        3 => 5,
        _ => {
            if d % 6 == 5 {
                d + 2
            } else {
                d + 4
            }
        }
    }
}

fn to_u128(n: &BigInt) -> Option<u128> {
    u128::try_from(n.magnitude().clone()).ok().filter(|_| !n.is_negative())
}

/// Floor of `sqrt(n)` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// The exact rational square root of `r >= 0`, if it is one.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Ratio::new(ns, ds))
    } else {
        None
    }
}

impl ExactNumber {
    pub fn zero() -> Self {
        ExactNumber::default()
    }

    pub fn one() -> Self {
        ExactNumber::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        ExactNumber {
            rational: r,
            terms: Vec::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactNumber::from_rat(rat_int(n))
    }

    /// Builds a canonical number from a rational part and raw
    /// `(coefficient, radicand)` pairs with rational radicands.
    ///
    /// Square parts are extracted (`sqrt(8) -> 2*sqrt(2)`), perfect squares
    /// fold into the rational part, and like radicands merge. A negative
    /// radicand is a domain error.
    pub fn normalize<I>(rational: Rat, raw: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        let mut out = ExactNumber::from_rat(rational);
        for (coeff, radicand) in raw {
            if radicand.is_negative() {
                return Err(ExactError::NegativeRadicand);
            }
            if coeff.is_zero() || radicand.is_zero() {
                continue;
            }
            // sqrt(p/q) = sqrt(p*q)/q
            let int_radicand = radicand.numer() * radicand.denom();
            let scaled = coeff / Rat::from_integer(radicand.denom().clone());
            out.push_radical(scaled, int_radicand);
        }
        out.canonicalize();
        Ok(out)
    }

    /// `sqrt(r)` of a nonnegative rational as a canonical number.
    pub fn sqrt_rat(r: &Rat) -> Result<Self, ExactError> {
        ExactNumber::normalize(Rat::zero(), [(Rat::one(), r.clone())])
    }

    fn push_radical(&mut self, coeff: Rat, radicand: BigInt) {
        debug_assert!(!radicand.is_negative());
        let (root, rest) = split_square(&radicand, SQUARE_EXTRACTION_BOUND);
        let coeff = coeff * Rat::from_integer(root);
        if rest.is_one() {
            self.rational += coeff;
        } else if !rest.is_zero() {
            self.terms.push(RadicalTerm {
                coeff,
                radicand: rest,
            });
        }
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| a.radicand.cmp(&b.radicand));
        let mut merged: Vec<RadicalTerm> = Vec::with_capacity(self.terms.len());
        for term in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.radicand == term.radicand => last.coeff += term.coeff,
                _ => merged.push(term),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        self.terms = merged;
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn terms(&self) -> &[RadicalTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.terms.is_empty().then_some(&self.rational)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return ExactNumber::zero();
        }
        ExactNumber {
            rational: &self.rational * r,
            terms: self
                .terms
                .iter()
                .map(|t| RadicalTerm {
                    coeff: &t.coeff * r,
                    radicand: t.radicand.clone(),
                })
                .collect(),
        }
    }

    /// The same number with every radical coefficient replaced by its
    /// absolute value (the all-positive counterpart used to strip signs).
    fn abs_radicals(&self) -> Self {
        ExactNumber {
            rational: self.rational.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| RadicalTerm {
                    coeff: t.coeff.abs(),
                    radicand: t.radicand.clone(),
                })
                .collect(),
        }
    }

    /// Number of distinct radicands.
    pub fn radical_count(&self) -> usize {
        self.terms.len()
    }

    /// Product of the `2^t` sign variants (every choice of signs on the
    /// radical terms). The result is rational and vanishes exactly when the
    /// number is zero, which makes it a zero test that does not depend on
    /// the radicands being fully square-free.
    pub fn sign_variant_norm(&self) -> Rat {
        let t = self.terms.len();
        assert!(t <= 16, "sign_variant_norm: too many radical terms");
        let mut acc = ExactNumber::one();
        for mask in 0u32..(1u32 << t) {
            let mut variant = self.clone();
            for (i, term) in variant.terms.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    term.coeff = -term.coeff.clone();
                }
            }
            acc = &acc * &variant;
        }
        debug_assert!(acc.terms.is_empty(), "variant product must be rational");
        acc.rational
    }

    /// Rational enclosure `lo <= self <= hi` with each radical bounded to
    /// `2^-bits`.
    pub fn bounds(&self, bits: u32) -> (Rat, Rat) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        let den = BigInt::one() << bits;
        for term in &self.terms {
            let shifted: BigInt = &term.radicand << (2 * bits);
            let s = shifted.sqrt();
            let root_lo = Ratio::new(s.clone(), den.clone());
            let root_hi = Ratio::new(s + 1, den.clone());
            if term.coeff.is_positive() {
                lo += &term.coeff * &root_lo;
                hi += &term.coeff * &root_hi;
            } else {
                lo += &term.coeff * &root_hi;
                hi += &term.coeff * &root_lo;
            }
        }
        (lo, hi)
    }

    /// Exact sign of the real value: `-1`, `0` or `+1`.
    ///
    /// Trivial sign patterns are answered directly; mixed two- and
    /// three-radical patterns are reduced by multiplying with the
    /// all-positive counterpart (which is positive, so the sign is
    /// preserved while the radical count strictly drops); everything else
    /// falls back to an exact zero test followed by interval refinement.
    pub fn sign(&self) -> i8 {
        let t = self.terms.len();
        if t == 0 {
            return sign_of_rat(&self.rational);
        }
        let pos = self.terms.iter().filter(|t| t.coeff.is_positive()).count();
        let neg = t - pos;
        if neg == 0 && !self.rational.is_negative() {
            return 1;
        }
        if pos == 0 && !self.rational.is_positive() {
            return -1;
        }
        if t == 1 {
            // compare |x0| against |c| * sqrt(y)
            let term = &self.terms[0];
            let gap = &self.rational * &self.rational
                - &term.coeff * &term.coeff * Rat::from_integer(term.radicand.clone());
            return match sign_of_rat(&gap) {
                0 => 0,
                1 => sign_of_rat(&self.rational),
                _ => sign_of_rat(&term.coeff),
            };
        }
        if self.rational.is_zero() {
            // multiply by the positive sqrt(y_1); the radical count drops by
            // one and the rational part becomes nonzero
            let factor = ExactNumber {
                rational: Rat::zero(),
                terms: alloc::vec![RadicalTerm {
                    coeff: Rat::one(),
                    radicand: self.terms[0].radicand.clone(),
                }],
            };
            return (self * &factor).sign();
        }
        if self.rational.is_negative() {
            return -(-self).sign();
        }
        // rational part > 0 and signs mixed from here on
        if t == 2 || (t == 3 && neg == 2) {
            let product = self * &self.abs_radicals();
            debug_assert!(product.radical_count() < t);
            return product.sign();
        }
        if self.sign_variant_norm().is_zero() {
            return 0;
        }
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.bounds(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign refinement failed to converge");
        }
    }

    /// Total order consistent with the real values.
    pub fn cmp_real(&self, other: &ExactNumber) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Exact square root. Works for nonnegative rationals and for
    /// single-radical numbers `A + B*sqrt(n)` whose root denests to
    /// `r + s*sqrt(n)`; anything else is an error.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        match self.sign() {
            -1 => return Err(ExactError::NegativeRadicand),
            0 => return Ok(ExactNumber::zero()),
            _ => {}
        }
        if let Some(r) = self.as_rational() {
            return ExactNumber::sqrt_rat(r);
        }
        if self.terms.len() != 1 {
            return Err(ExactError::NotDenestable);
        }
        let a = &self.rational;
        let b = &self.terms[0].coeff;
        let n = Rat::from_integer(self.terms[0].radicand.clone());
        // sqrt(A + B*sqrt(n)) = r + s*sqrt(n) requires A^2 - B^2 n = d^2
        let disc = a * a - b * b * &n;
        let d = rational_sqrt(&disc).ok_or(ExactError::NotDenestable)?;
        for dd in [d.clone(), -d] {
            let r2 = (a + &dd) / rat_int(2);
            let s2 = (a - &dd) / (rat_int(2) * &n);
            if let (Some(r), Some(s)) = (rational_sqrt(&r2), rational_sqrt(&s2)) {
                let s = if b.is_negative() { -s } else { s };
                let candidate = ExactNumber::normalize(r, [(s, n)])?;
                // of the two square roots +-(r + s sqrt(n)), keep the
                // nonnegative one
                return Ok(if candidate.sign() < 0 { -candidate } else { candidate });
            }
        }
        Err(ExactError::NotDenestable)
    }
}

fn sign_of_rat(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_real(other)
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber {
            rational: -self.rational.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| RadicalTerm {
                    coeff: -t.coeff.clone(),
                    radicand: t.radicand.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl Add for &ExactNumber {
    type Output = ExactNumber;
    fn add(self, rhs: &ExactNumber) -> ExactNumber {
        let mut out = ExactNumber {
            rational: &self.rational + &rhs.rational,
            terms: self.terms.iter().chain(rhs.terms.iter()).cloned().collect(),
        };
        out.canonicalize();
        out
    }
}

impl Sub for &ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: &ExactNumber) -> ExactNumber {
        self + &(-rhs)
    }
}

impl Mul for &ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: &ExactNumber) -> ExactNumber {
        let mut out = rhs.mul_rat(&self.rational);
        for lt in &self.terms {
            // c * sqrt(y) * rhs.rational
            out.push_radical(&lt.coeff * &rhs.rational, lt.radicand.clone());
            for rt in &rhs.terms {
                // sqrt(y1) * sqrt(y2) = sqrt(y1 * y2)
                out.push_radical(&lt.coeff * &rt.coeff, &lt.radicand * &rt.radicand);
            }
        }
        out.canonicalize();
        out
    }
}

macro_rules! forward_binop {
    ($trait_:ident, $method:ident) => {
        impl $trait_ for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait_<&ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait_<ExactNumber> for &ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl From<Rat> for ExactNumber {
    fn from(r: Rat) -> Self {
        ExactNumber::from_rat(r)
    }
}

// ---- text form: `R | R*sqrt(R) | <expr> +- <expr>` with R a rational p/q ----

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.rational.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.rational)?;
            wrote = true;
        }
        for term in &self.terms {
            if wrote {
                if term.coeff.is_negative() {
                    write!(f, " - {}*sqrt({})", -term.coeff.clone(), term.radicand)?;
                } else {
                    write!(f, " + {}*sqrt({})", term.coeff, term.radicand)?;
                }
            } else {
                write!(f, "{}*sqrt({})", term.coeff, term.radicand)?;
                wrote = true;
            }
        }
        Ok(())
    }
}

impl FromStr for ExactNumber {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let err = |msg: &str| ExactError::Parse(alloc::format!("{msg}: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // split on top-level +/- (a sign directly after '(', '/', '*' or at
        // the start binds to the following number)
        let bytes = compact.as_bytes();
        let mut pieces: Vec<&str> = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, '(' | '/' | '*' | '+' | '-')
            {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut rational = Rat::zero();
        let mut raw: Vec<(Rat, Rat)> = Vec::new();
        for piece in pieces {
            let (signless, negative) = match piece.strip_prefix('-') {
                Some(rest) => (rest.strip_prefix('+').unwrap_or(rest), true),
                None => (piece.strip_prefix('+').unwrap_or(piece), false),
            };
            if signless.is_empty() {
                return Err(err("dangling sign"));
            }
            let apply = |r: Rat| if negative { -r } else { r };
            if let Some(idx) = signless.find("sqrt(") {
                let coeff_str = &signless[..idx];
                let inner = signless[idx + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| err("unterminated sqrt"))?;
                let coeff = if coeff_str.is_empty() {
                    Rat::one()
                } else {
                    let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
                    parse_rat(coeff_str).ok_or_else(|| err("bad coefficient"))?
                };
                let radicand = parse_rat(inner).ok_or_else(|| err("bad radicand"))?;
                raw.push((apply(coeff), radicand));
            } else {
                rational += apply(parse_rat(signless).ok_or_else(|| err("bad rational"))?);
            }
        }
        ExactNumber::normalize(rational, raw)
    }
}

/// Parses `p` or `p/q` (no sign handling beyond a leading `-`).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Ratio::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn parse(s: &str) -> ExactNumber {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_extracts_square_parts() {
        // sqrt(8) = 2 sqrt(2)
        let x = ExactNumber::normalize(Rat::zero(), [(rat_int(1), rat_int(8))]).unwrap();
        assert_eq!(x, parse("2*sqrt(2)"));
        // cancellation: 1 + sqrt(2) - sqrt(2) = 1
        let y = ExactNumber::normalize(
            rat_int(1),
            [(rat_int(1), rat_int(2)), (rat_int(-1), rat_int(2))],
        )
        .unwrap();
        assert_eq!(y, ExactNumber::one());
        // perfect square folds into the rational part
        let z = ExactNumber::normalize(Rat::zero(), [(rat_int(1), rat_int(9))]).unwrap();
        assert_eq!(z, ExactNumber::from_int(3));
    }

    #[test]
    fn normalize_rejects_negative_radicand() {
        let e = ExactNumber::normalize(Rat::zero(), [(rat_int(1), rat_int(-2))]);
        assert_eq!(e, Err(ExactError::NegativeRadicand));
    }

    #[test]
    fn normalize_handles_rational_radicands() {
        // sqrt(9/2) = (3/2) sqrt(2)
        let x = ExactNumber::sqrt_rat(&rat(9, 2)).unwrap();
        assert_eq!(x, parse("3/2*sqrt(2)"));
    }

    #[test]
    fn mul_conjugates() {
        let a = parse("1 + 1*sqrt(2)");
        let b = parse("1 - 1*sqrt(2)");
        assert_eq!(&a * &b, ExactNumber::from_int(-1));
        let c = parse("1 + 2*sqrt(2) - 1*sqrt(5)");
        let d = parse("1 + 2*sqrt(2) + 1*sqrt(5)");
        assert_eq!(&c * &d, parse("4 + 4*sqrt(2)"));
        assert_eq!(&parse("3*sqrt(2)") * &parse("5*sqrt(2)"), ExactNumber::from_int(30));
    }

    #[test]
    fn sign_basic() {
        assert_eq!(parse("-73/44 + 1/44*sqrt(5335)").sign(), 1);
        let zero = &parse("2*sqrt(2)") - &parse("2*sqrt(2)");
        assert_eq!(zero.sign(), 0);
        // reduces via the all-positive multiplier: (1+sqrt(2))^2 - 5 = -2 + 2 sqrt(2) > 0
        assert_eq!(parse("1 + 1*sqrt(2) - 1*sqrt(5)").sign(), 1);
        // four radicals goes through the interval fallback; value is about -0.55
        assert_eq!(parse("1 + 1*sqrt(2) - 1*sqrt(5) - 1*sqrt(3)").sign(), -1);
    }

    #[test]
    fn sign_zero_rational_part() {
        assert_eq!(parse("1*sqrt(2) - 1*sqrt(3)").sign(), -1);
        assert_eq!(parse("1*sqrt(3) - 1*sqrt(2)").sign(), 1);
        assert_eq!(parse("1*sqrt(2) + 1*sqrt(3) - 1*sqrt(5)").sign(), 1);
    }

    #[test]
    fn cmp_examples() {
        let sqrt2 = ExactNumber::sqrt_rat(&rat_int(2)).unwrap();
        assert_eq!(sqrt2.cmp_real(&ExactNumber::from_rat(rat(3, 2))), Ordering::Less);
        assert_eq!(sqrt2.cmp_real(&sqrt2), Ordering::Equal);
        // -4 + sqrt(61561)/57 is about 0.3529, below 1/2
        let p22 = parse("-4 + 1/57*sqrt(61561)");
        assert_eq!(p22.cmp_real(&ExactNumber::from_rat(rat(1, 2))), Ordering::Less);
    }

    #[test]
    fn abs_multiplier_strictly_reduces_radical_count() {
        for s in [
            "1 + 1*sqrt(2) - 1*sqrt(5)",
            "3 - 1*sqrt(2) - 1*sqrt(7)",
            "2 + 1*sqrt(3) - 1*sqrt(5) - 1*sqrt(7)",
        ] {
            let x = parse(s);
            let product = &x * &x.abs_radicals();
            assert!(product.radical_count() < x.radical_count(), "{s}");
        }
    }

    #[test]
    fn squares_are_nonnegative() {
        for s in ["0", "-5/3", "1 - 1*sqrt(2)", "1 + 1*sqrt(2) - 1*sqrt(5) - 1*sqrt(3)"] {
            let x = parse(s);
            let sq = &x * &x;
            assert!(sq.sign() >= 0);
            assert_eq!(sq.sign() == 0, x.sign() == 0);
            assert_eq!(x.sign(), -(-&x).sign());
        }
    }

    #[test]
    fn sqrt_denests() {
        // sqrt(3 + 2 sqrt(2)) = 1 + sqrt(2)
        let x = parse("3 + 2*sqrt(2)");
        assert_eq!(x.sqrt().unwrap(), parse("1 + 1*sqrt(2)"));
        // sqrt of a plain rational
        assert_eq!(
            ExactNumber::from_rat(rat(9, 4)).sqrt().unwrap(),
            ExactNumber::from_rat(rat(3, 2))
        );
        // 1 + sqrt(3) has no denested square root
        assert_eq!(parse("1 + 1*sqrt(3)").sqrt(), Err(ExactError::NotDenestable));
        assert_eq!(parse("-1 - 1*sqrt(3)").sqrt(), Err(ExactError::NegativeRadicand));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "-73/44 + 1/44*sqrt(5335)",
            "0",
            "7/2 - 3/35*sqrt(1645)",
            "1*sqrt(2) + 1/3*sqrt(3)",
            "-2",
        ] {
            let x = parse(s);
            let printed = x.to_string();
            assert_eq!(parse(&printed), x, "{s} -> {printed}");
        }
    }

    #[test]
    fn display_round_trip_random() {
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(0x707);
        for _ in 0..500 {
            let t = rng.gen_range(0..=4);
            let mut raw = Vec::new();
            for _ in 0..t {
                raw.push((
                    rat(rng.gen_range(-99i64..=99), rng.gen_range(1i64..=99)),
                    rat(rng.gen_range(0i64..500), rng.gen_range(1i64..=20)),
                ));
            }
            let rational = rat(rng.gen_range(-99i64..=99), rng.gen_range(1i64..=99));
            let x = ExactNumber::normalize(rational, raw).unwrap();
            let printed = x.to_string();
            assert_eq!(parse(&printed), x, "{printed}");
            // and the whitespace-free form used by the certificate files
            assert_eq!(parse(&printed.replace(' ', "")), x, "{printed}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = parse("1/3 + 2/7*sqrt(6) - 5*sqrt(10)");
        let b = parse("-4/5 + 1*sqrt(6) + 1/2*sqrt(35)");
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn variant_norm_zero_iff_zero() {
        assert!(ExactNumber::zero().sign_variant_norm().is_zero());
        assert!(!parse("1 + 1*sqrt(2) + 1*sqrt(3) - 1*sqrt(5)")
            .sign_variant_norm()
            .is_zero());
        // the variant norm of sqrt2+sqrt3+sqrt6 famously collapses to 529
        assert_eq!(
            parse("1*sqrt(2) + 1*sqrt(3) + 1*sqrt(6)").sign_variant_norm(),
            rat_int(529)
        );
    }

    #[test]
    fn random_signs_match_interval_oracle() {
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let t = rng.gen_range(0..=4);
            let mut raw = Vec::new();
            for _ in 0..t {
                let num = rng.gen_range(-1000i64..=1000);
                let den = rng.gen_range(1i64..=1000);
                let radicand = rng.gen_range(0i64..10_000);
                raw.push((rat(num, den), rat_int(radicand)));
            }
            let rational = rat(rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=1000));
            let x = ExactNumber::normalize(rational, raw).unwrap();
            let got = x.sign();
            // oracle: enclose each sqrt by integer-sqrt bounds at 2^-100
            let (lo, hi) = x.bounds(100);
            if lo.is_positive() {
                assert_eq!(got, 1);
            } else if hi.is_negative() {
                assert_eq!(got, -1);
            } else {
                assert_eq!(got, 0);
            }
        }
    }
}
