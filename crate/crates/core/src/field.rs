//! Per-field constants and the norm form `f_m(a, b) = a^2 - m b^2` for the
//! real quadratic fields `Q(sqrt(m))`, `m` squarefree and not 1 mod 4.
//!
//! A [`FieldData`] row carries the Euclidean minimum `M1`, the critical
//! points attaining it, and the ordered list of integer shifts `(u, v)` that
//! the division algorithm scans. Rows for `m` in `{2, 3, 6, 7, 11, 19}` are
//! built in; custom rows can be constructed for experimentation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exact::{rat, rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// `m` is not one of the built-in fields.
    Unsupported(i64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Unsupported(m) => write!(
                f,
                "unsupported field m={m}; built-in fields are m in {{2, 3, 6, 7, 11, 19}}"
            ),
        }
    }
}

/// Static data for one field `Q(sqrt(m))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldData {
    m: i64,
    m1: Rat,
    critical_points: Vec<(Rat, Rat)>,
    covering_pairs: Vec<(i64, i64)>,
}

/// A field element `a + b*sqrt(m)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub a: Rat,
    pub b: Rat,
}

impl FieldElement {
    pub fn new(a: Rat, b: Rat) -> Self {
        FieldElement { a, b }
    }
}

/// A ring integer `x + y*sqrt(m)` in `Z[sqrt(m)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub x: BigInt,
    pub y: BigInt,
}

impl RingElement {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        RingElement {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*w", self.x, self.y)
    }
}

impl FieldData {
    /// The built-in table row for `m`, with the covering pairs in the order
    /// the division algorithm scans them.
    pub fn builtin(m: i64) -> Result<FieldData, FieldError> {
        let (m1, critical_points, covering_pairs): (Rat, Vec<(Rat, Rat)>, Vec<(i64, i64)>) =
            match m {
                2 => (rat(1, 2), vec![(rat_int(0), rat(1, 2))], vec![(0, 0)]),
                3 => (
                    rat(1, 2),
                    vec![(rat(1, 2), rat(1, 2))],
                    vec![(0, 0), (-1, 0)],
                ),
                6 => (
                    rat(3, 4),
                    vec![(rat(1, 2), rat(1, 2))],
                    vec![(0, 0), (1, 0), (-2, -1)],
                ),
                7 => (
                    rat(9, 14),
                    vec![(rat(1, 2), rat(5, 14)), (rat(1, 2), rat(9, 14))],
                    vec![(0, 0), (1, 0), (-4, 1), (-2, -1)],
                ),
                // the pair list follows the proof's order of appearance;
                // (-2, -1) carries part of the covering even though the
                // headline list of six pairs leaves it out
                11 => (
                    rat(19, 22),
                    vec![(rat(1, 2), rat(15, 22)), (rat(1, 2), rat(7, 22))],
                    vec![
                        (0, 0),
                        (1, 0),
                        (-6, -2),
                        (-2, -1),
                        (-5, 1),
                        (5, -2),
                        (25, -8),
                    ],
                ),
                19 => (
                    rat(170, 171),
                    vec![(rat_int(0), rat(20, 57)), (rat_int(0), rat(37, 57))],
                    vec![
                        (0, 0),
                        (1, 0),
                        (-2, 0),
                        (2, -1),
                        (-7, 1),
                        (-3, -1),
                        (7, -2),
                        (-6, 1),
                        (991, 227),
                        (-19, 4),
                        (-80, 18),
                        (-430, -99),
                        (90, -21),
                    ],
                ),
                other => return Err(FieldError::Unsupported(other)),
            };
        Ok(FieldData {
            m,
            m1,
            critical_points,
            covering_pairs,
        })
    }

    /// A user-supplied row for experimentation; built-in rows stay sealed.
    pub fn custom(
        m: i64,
        m1: Rat,
        critical_points: Vec<(Rat, Rat)>,
        covering_pairs: Vec<(i64, i64)>,
    ) -> FieldData {
        assert!(m > 1, "m must be a positive nonsquare");
        FieldData {
            m,
            m1,
            critical_points,
            covering_pairs,
        }
    }

    pub fn builtin_list() -> [i64; 6] {
        [2, 3, 6, 7, 11, 19]
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn m_rat(&self) -> Rat {
        rat_int(self.m)
    }

    pub fn discriminant(&self) -> i64 {
        4 * self.m
    }

    pub fn m1(&self) -> &Rat {
        &self.m1
    }

    pub fn critical_points(&self) -> &[(Rat, Rat)] {
        &self.critical_points
    }

    pub fn covering_pairs(&self) -> &[(i64, i64)] {
        &self.covering_pairs
    }

    /// The norm form `f_m(a, b) = a^2 - m b^2`.
    pub fn norm(&self, a: &Rat, b: &Rat) -> Rat {
        a * a - self.m_rat() * b * b
    }

    /// Norm of a ring integer.
    pub fn norm_int(&self, z: &RingElement) -> BigInt {
        &z.x * &z.x - BigInt::from(self.m) * &z.y * &z.y
    }

    /// `f_m(a + u, b + v)` through the shift expansion
    /// `f_m(a, b) + f_m(u, v) + 2(a u - m b v)`.
    pub fn shifted_norm(&self, a: &Rat, b: &Rat, u: i64, v: i64) -> Rat {
        self.shifter(a, b).eval(u, v)
    }

    /// Precomputes the point-dependent parts of the shift expansion for a
    /// fixed `(a, b)` scanned over many `(u, v)`.
    pub fn shifter(&self, a: &Rat, b: &Rat) -> NormShifter {
        NormShifter {
            m: self.m,
            norm_ab: self.norm(a, b),
            two_a: rat_int(2) * a,
            two_mb: rat_int(2 * self.m) * b,
        }
    }
}

/// Cached pieces of `f_m(a+u, b+v) = f_m(a,b) + f_m(u,v) + 2(au - m b v)`.
#[derive(Clone, Debug)]
pub struct NormShifter {
    m: i64,
    norm_ab: Rat,
    two_a: Rat,
    two_mb: Rat,
}

impl NormShifter {
    pub fn eval(&self, u: i64, v: i64) -> Rat {
        let fm_uv = rat_int(u * u - self.m * v * v);
        &self.norm_ab + fm_uv + &self.two_a * rat_int(u) - &self.two_mb * rat_int(v)
    }

    /// `|f_m(a+u, b+v)| <= bound`, without building the intermediate rational
    /// when a fast integer path applies.
    pub fn within(&self, u: i64, v: i64, bound: &Rat) -> bool {
        self.eval(u, v).abs() <= *bound
    }
}

/// The exact covering test `|f_m(a+u, b+v)| <= bound` over integer shifts,
/// using scaled i128 arithmetic when everything fits (a few multiplications
/// per probe) and exact rationals otherwise.
pub enum NormScan {
    Fast {
        m: i128,
        p1: i128,
        q1: i128,
        p2: i128,
        q2: i128,
        // |num| <= bound scaled by q1^2 q2^2 bound_den
        bn: i128,
        bd: i128,
    },
    Exact(NormShifter, Rat),
}

impl NormScan {
    pub fn new(field: &FieldData, a: &Rat, b: &Rat, bound: &Rat, max_shift: i64) -> NormScan {
        if let Some(scan) = Self::try_fast(field, a, b, bound, max_shift) {
            scan
        } else {
            NormScan::Exact(field.shifter(a, b), bound.clone())
        }
    }

    fn try_fast(field: &FieldData, a: &Rat, b: &Rat, bound: &Rat, max_shift: i64) -> Option<NormScan> {
        let to = |n: &BigInt| -> Option<i128> { i128::try_from(n).ok() };
        let m = field.m as i128;
        let p1 = to(a.numer())?;
        let q1 = to(a.denom())?;
        let p2 = to(b.numer())?;
        let q2 = to(b.denom())?;
        let bn = to(bound.numer())?;
        let bd = to(bound.denom())?;
        // worst-case magnitude check: ((|p1| + s q1)^2 q2^2 + m (|p2| + s q2)^2 q1^2) * bd
        let s = max_shift.unsigned_abs() as i128;
        let t1 = (p1.unsigned_abs() as i128).checked_add(s.checked_mul(q1)?)?;
        let t2 = (p2.unsigned_abs() as i128).checked_add(s.checked_mul(q2)?)?;
        let lhs = t1
            .checked_mul(t1)?
            .checked_mul(q2.checked_mul(q2)?)?
            .checked_add(m.checked_mul(t2.checked_mul(t2)?)?.checked_mul(q1.checked_mul(q1)?)?)?;
        lhs.checked_mul(bd)?;
        let rhs = bn
            .checked_mul(q1.checked_mul(q1)?)?
            .checked_mul(q2.checked_mul(q2)?)?;
        rhs.checked_abs()?;
        Some(NormScan::Fast {
            m,
            p1,
            q1,
            p2,
            q2,
            bn,
            bd,
        })
    }

    /// Exact test `|f_m(a+u, b+v)| <= bound`.
    pub fn within(&self, u: i64, v: i64) -> bool {
        match self {
            NormScan::Fast {
                m,
                p1,
                q1,
                p2,
                q2,
                bn,
                bd,
            } => {
                let x = p1 + (u as i128) * q1;
                let y = p2 + (v as i128) * q2;
                let num = x * x * q2 * q2 - m * y * y * q1 * q1;
                num.abs() * bd <= bn * q1 * q1 * q2 * q2
            }
            NormScan::Exact(shifter, bound) => shifter.within(u, v, bound),
        }
    }
}

/// Utility for error messages.
pub fn pair_list_string(pairs: &[(i64, i64)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, (u, v)) in pairs.iter().enumerate() {
        if i > 0 {
            let _ = write!(s, ", ");
        }
        let _ = write!(s, "({u}, {v})");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::round_half;

    #[test]
    fn builtin_rows() {
        let f7 = FieldData::builtin(7).unwrap();
        assert_eq!(f7.m1(), &rat(9, 14));
        assert_eq!(
            f7.critical_points(),
            &[(rat(1, 2), rat(5, 14)), (rat(1, 2), rat(9, 14))]
        );
        let f19 = FieldData::builtin(19).unwrap();
        assert_eq!(f19.m1(), &rat(170, 171));
        assert_eq!(f19.covering_pairs().len(), 13);
        assert_eq!(f19.discriminant(), 76);
        assert_eq!(FieldData::builtin(5), Err(FieldError::Unsupported(5)));
    }

    #[test]
    fn norm_examples() {
        let f7 = FieldData::builtin(7).unwrap();
        assert_eq!(f7.norm(&rat(1, 2), &rat(5, 14)), rat(-9, 14));
        let f2 = FieldData::builtin(2).unwrap();
        assert_eq!(f2.norm(&rat_int(0), &rat(1, 2)), rat(-1, 2));
        assert_eq!(f2.norm(&rat_int(0), &rat_int(0)), rat_int(0));
    }

    #[test]
    fn shifted_norm_examples() {
        let f7 = FieldData::builtin(7).unwrap();
        let direct = f7.norm(&rat(3, 2), &rat(5, 14));
        assert_eq!(f7.shifted_norm(&rat(1, 2), &rat(5, 14), 1, 0), direct);
        assert_eq!(direct, rat(19, 14));
        assert_eq!(
            f7.shifted_norm(&rat(1, 2), &rat(5, 14), 0, 0),
            f7.norm(&rat(1, 2), &rat(5, 14))
        );
        let f11 = FieldData::builtin(11).unwrap();
        assert_eq!(
            f11.shifted_norm(&rat(1, 2), &rat(7, 22), 5, -2).abs(),
            rat(19, 22)
        );
    }

    #[test]
    fn shift_expansion_matches_direct_norm() {
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(7);
        for &m in FieldData::builtin_list().iter() {
            let f = FieldData::builtin(m).unwrap();
            for _ in 0..2000 {
                let a = rat(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=20));
                let b = rat(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=20));
                let u = rng.gen_range(-30i64..=30);
                let v = rng.gen_range(-30i64..=30);
                let direct = f.norm(&(&a + rat_int(u)), &(&b + rat_int(v)));
                assert_eq!(f.shifted_norm(&a, &b, u, v), direct);
                let scan = NormScan::new(&f, &a, &b, f.m1(), 30);
                assert_eq!(scan.within(u, v), direct.abs() <= *f.m1());
            }
        }
    }

    #[test]
    fn norm_sign_symmetry() {
        let f = FieldData::builtin(6).unwrap();
        let (a, b) = (rat(3, 7), rat(-5, 9));
        assert_eq!(f.norm(&a, &b), f.norm(&(-a.clone()), &b));
        assert_eq!(f.norm(&a, &b), f.norm(&a, &(-b.clone())));
    }

    #[test]
    fn critical_points_attain_m1_under_covering_pairs() {
        for &m in FieldData::builtin_list().iter() {
            let f = FieldData::builtin(m).unwrap();
            for (x, y) in f.critical_points() {
                // reduce into the quarter square first
                let (_, _, a) = round_half(x);
                let (_, _, b) = round_half(y);
                let min = f
                    .covering_pairs()
                    .iter()
                    .map(|&(u, v)| f.shifted_norm(&a, &b, u, v).abs())
                    .min()
                    .unwrap();
                assert_eq!(&min, f.m1(), "m={m} critical ({x}, {y})");
            }
        }
    }

    #[test]
    fn pairs_covering_a_critical_point_hit_m1_exactly() {
        // no shift can do better than M1 at a critical point, so any shift
        // within the bound lands exactly on it
        for &m in FieldData::builtin_list().iter() {
            let f = FieldData::builtin(m).unwrap();
            for (x, y) in f.critical_points() {
                let (_, _, a) = round_half(x);
                let (_, _, b) = round_half(y);
                for u in -100..=100 {
                    for v in -100..=100 {
                        let n = f.shifted_norm(&a, &b, u, v).abs();
                        if &n <= f.m1() {
                            assert_eq!(&n, f.m1(), "m={m} pair ({u},{v})");
                        }
                    }
                }
            }
        }
    }
}
