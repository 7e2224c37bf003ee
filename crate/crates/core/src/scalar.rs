//! Exact coefficient ring.
//!
//! A [`Scalar`] is a sparse polynomial with arbitrary-precision rational
//! coefficients in the base coordinates `x1..xm`, the fiber coordinates
//! `y1..yn`, a family parameter `t`, and a Laurent unit `s` standing for
//! `(2*pi)^(1/2)`. Terms are kept in graded lexicographic order, so two
//! scalars are equal exactly when their term maps are identical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `"p/q"`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

/// A coordinate or the unit `s`. Indices are 1-based, matching `x1`, `y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    X(u16),
    Y(u16),
    T,
    S,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i) => write!(f, "x{i}"),
            Variable::Y(j) => write!(f, "y{j}"),
            Variable::T => f.write_str("t"),
            Variable::S => f.write_str("s"),
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let index = |rest: &str| -> Result<u16> {
            let i: u16 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("invalid variable {text:?}")))?;
            if i == 0 {
                return Err(Error::Parse(format!(
                    "variable index must be >= 1: {text:?}"
                )));
            }
            Ok(i)
        };
        match text {
            "t" => Ok(Variable::T),
            "s" => Ok(Variable::S),
            _ if text.starts_with('x') => Ok(Variable::X(index(&text[1..])?)),
            _ if text.starts_with('y') => Ok(Variable::Y(index(&text[1..])?)),
            _ => Err(Error::Parse(format!("invalid variable {text:?}"))),
        }
    }
}

/// Product of powers of `x`, `y`, `t` times an integer power of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // sorted by variable, no zero exponents, never contains `S`
    exps: Vec<(Variable, u32)>,
    s: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Variable, e: i32) -> Self {
        match v {
            Variable::S => Monomial {
                exps: Vec::new(),
                s: e,
            },
            _ if e == 0 => Self::one(),
            _ => {
                assert!(e > 0, "negative power of {v}");
                Monomial {
                    exps: vec![(v, e as u32)],
                    s: 0,
                }
            }
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, i32)>>(pairs: I) -> Self {
        pairs
            .into_iter()
            .fold(Self::one(), |acc, (v, e)| &acc * &Self::power(v, e))
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        if v == Variable::S {
            return self.s;
        }
        self.exps
            .iter()
            .find(|(w, _)| *w == v)
            .map_or(0, |&(_, e)| e as i32)
    }

    pub fn s_exponent(&self) -> i32 {
        self.s
    }

    /// Total degree in `x`, `y`, `t` (the unit `s` does not count).
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty() && self.s == 0
    }

    /// Splits off the `y` part: returns (exponents of y1..yn, remaining monomial).
    pub(crate) fn split_fiber(&self, n: usize) -> (Vec<u32>, Monomial) {
        let mut ys = vec![0u32; n];
        let mut rest = Monomial {
            exps: Vec::with_capacity(self.exps.len()),
            s: self.s,
        };
        for &(v, e) in &self.exps {
            match v {
                Variable::Y(j) if (j as usize) <= n => ys[j as usize - 1] = e,
                _ => rest.exps.push((v, e)),
            }
        }
        (ys, rest)
    }

    /// `d/dv` of this monomial as (multiplier, monomial), or `None` when zero.
    fn derivative(&self, v: Variable) -> Option<(u32, Monomial)> {
        let pos = self.exps.iter().position(|&(w, _)| w == v)?;
        let e = self.exps[pos].1;
        let mut out = self.clone();
        if e == 1 {
            out.exps.remove(pos);
        } else {
            out.exps[pos].1 = e - 1;
        }
        Some((e, out))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + rhs.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < rhs.exps.len() {
            let (a, b) = (self.exps[i], rhs.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&rhs.exps[j..]);
        Monomial {
            exps,
            s: self.s + rhs.s,
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared in
    /// variable order, then the power of `s`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let (mut i, mut j) = (0, 0);
                loop {
                    match (self.exps.get(i), other.exps.get(j)) {
                        (None, None) => return Ordering::Equal,
                        (Some(_), None) => return Ordering::Greater,
                        (None, Some(_)) => return Ordering::Less,
                        (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => {
                                if ea != eb {
                                    return ea.cmp(&eb);
                                }
                                i += 1;
                                j += 1;
                            }
                        },
                    }
                }
            })
            .then_with(|| self.s.cmp(&other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if self.s != 0 {
            parts.push(if self.s == 1 {
                "s".to_string()
            } else {
                format!("s^{}", self.s)
            });
        }
        f.write_str(&parts.join("*"))
    }
}

/// Sparse polynomial over [`Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rational_int(c))
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    /// `s^k`, i.e. `(2*pi)^(k/2)`.
    pub fn s_power(k: i32) -> Self {
        Self::monomial(Monomial::power(Variable::S, k), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = Scalar::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant coefficient if this scalar has no variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self.scale(&rational_int(c))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (k * m, v * c)).collect(),
        }
    }

    /// Formal partial derivative in `x_i`, `y_j` or `t`.
    pub fn partial_derivative(&self, v: Variable) -> Result<Scalar> {
        if v == Variable::S {
            return Err(Error::NotDifferentiable(v));
        }
        Ok(self.partial_unchecked(v))
    }

    pub(crate) fn partial_unchecked(&self, v: Variable) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(v) {
                out.add_term(dm, c * rational_int(e as i64));
            }
        }
        out
    }

    /// Every non-`s` variable occurring with a nonzero exponent.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.exps.iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn depends_on(&self, pred: impl Fn(Variable) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.exps.iter().any(|&(v, _)| pred(v)))
    }

    pub fn has_s(&self) -> bool {
        self.terms.keys().any(|m| m.s != 0)
    }

    /// Floating-point value at `point`, with `s` evaluated at `s_value`.
    pub fn evaluate_numeric(&self, point: &HashMap<Variable, f64>, s_value: f64) -> Result<f64> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut value = c.to_f64().unwrap_or(f64::NAN);
            for &(v, e) in &m.exps {
                let x = point.get(&v).ok_or(Error::MissingBinding(v))?;
                value *= x.powi(e as i32);
            }
            if m.s != 0 {
                value *= s_value.powi(m.s);
            }
            total += value;
        }
        Ok(total)
    }

    /// First term in canonical order, for residual reporting.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $tr::$method(&self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u16) -> Scalar {
        Scalar::var(Variable::X(i))
    }

    fn y(j: u16) -> Scalar {
        Scalar::var(Variable::Y(j))
    }

    #[test]
    fn additive_cancellation_leaves_s_inverse() {
        let a = &x(1) + &Scalar::s_power(-1);
        let b = -x(1);
        assert_eq!(&a + &b, Scalar::s_power(-1));
    }

    #[test]
    fn monomial_product() {
        let y1 = y(1);
        let expect = Scalar::monomial(Monomial::power(Variable::Y(1), 2), Rational::one());
        assert_eq!(&y1 * &y1, expect);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let p = Scalar::constant(rational(1, 2)) * Scalar::constant(rational(2, 3));
        assert_eq!(p, Scalar::constant(rational(1, 3)));
    }

    #[test]
    fn power_rule_in_y() {
        let y1 = y(1);
        let sq = &y1 * &y1;
        assert_eq!(
            sq.partial_derivative(Variable::Y(1)).unwrap(),
            y1.scale_int(2)
        );
    }

    #[test]
    fn derivative_of_independent_variable_is_zero() {
        let a = &y(2) * &Scalar::s_power(1);
        assert!(a.partial_derivative(Variable::X(1)).unwrap().is_zero());
    }

    #[test]
    fn derivative_in_t() {
        let t = Scalar::var(Variable::T);
        let a = &(&t * &x(1)) + &(&t * &t);
        let expect = &x(1) + &t.scale_int(2);
        assert_eq!(a.partial_derivative(Variable::T).unwrap(), expect);
    }

    #[test]
    fn derivative_in_s_is_rejected() {
        assert!(matches!(
            Scalar::s_power(2).partial_derivative(Variable::S),
            Err(Error::NotDifferentiable(Variable::S))
        ));
    }

    #[test]
    fn numeric_evaluation() {
        let pt = HashMap::from([(Variable::X(1), 3.0)]);
        let sq = &x(1) * &x(1);
        assert_eq!(sq.evaluate_numeric(&pt, 1.0).unwrap(), 9.0);
        let root = (2.0 * std::f64::consts::PI).sqrt();
        let s = Scalar::s_power(1).evaluate_numeric(&pt, root).unwrap();
        assert!((s - 2.5066282746310002).abs() < 1e-15);
        assert_eq!(
            Scalar::zero()
                .evaluate_numeric(&HashMap::new(), 7.0)
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn missing_binding_is_reported() {
        let err = y(2).evaluate_numeric(&HashMap::new(), 1.0).unwrap_err();
        assert!(matches!(err, Error::MissingBinding(Variable::Y(2))));
    }

    #[test]
    fn rational_text_round_trip() {
        for (p, q) in [(0, 1), (-3, 4), (7, 1), (12, 8)] {
            let r = rational(p, q);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(format_rational(&rational(0, 5)), "0/1");
        assert_eq!(parse_rational("-5").unwrap(), rational_int(-5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Monomial::from_pairs([(Variable::X(2), 1)]);
        let b = Monomial::from_pairs([(Variable::X(1), 1), (Variable::Y(1), 1)]);
        let c = Monomial::from_pairs([(Variable::X(1), 1)]);
        assert!(a < b);
        assert!(a < c, "x1 outranks x2 at equal degree");
    }

    #[test]
    fn variable_names_parse() {
        for v in [Variable::X(3), Variable::Y(1), Variable::T, Variable::S] {
            assert_eq!(v.to_string().parse::<Variable>().unwrap(), v);
        }
        assert!("x0".parse::<Variable>().is_err());
        assert!("z1".parse::<Variable>().is_err());
    }
}
