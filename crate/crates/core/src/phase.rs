//! Exact circle-group arithmetic.
//!
//! A phase `e^{2πi t}` is stored through its exponent `t = q0 + Σ qj·ξj`,
//! where the `ξj` are formal symbols taken to be Q-linearly independent
//! together with 1. Two exponents name the same phase iff their difference
//! is an integer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::scalar::{Exact, Rational, Scalar};

/// A declared irrational.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhaseParseError {
    #[error("empty phase literal")]
    Empty,
    #[error("malformed phase literal {literal:?} near {rest:?}")]
    Malformed { literal: String, rest: String },
    #[error("zero denominator in phase literal {0:?}")]
    ZeroDenominator(String),
    #[error("undeclared symbol {symbol:?} in phase literal {literal:?}")]
    Undeclared { literal: String, symbol: String },
}

/// Exponent of a point of the circle group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseExponent<I: Scalar = Exact> {
    rational: Rational<I>,
    coeffs: BTreeMap<Symbol, Rational<I>>,
}

impl<I: Scalar> PhaseExponent<I> {
    pub fn zero() -> Self {
        PhaseExponent {
            rational: Rational::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rational(q: Rational<I>) -> Self {
        PhaseExponent {
            rational: q,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn integer(n: I) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(crate::scalar::rat(n, d))
    }

    /// `coeff · sym`.
    pub fn term(coeff: Rational<I>, sym: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(sym, coeff);
        p
    }

    /// `1 · sym`.
    pub fn symbol(name: &str) -> Self {
        Self::term(Rational::one(), Symbol::new(name))
    }

    pub fn rational_part(&self) -> &Rational<I> {
        &self.rational
    }

    pub fn coefficient(&self, sym: &Symbol) -> Rational<I> {
        self.coeffs.get(sym).cloned().unwrap_or_else(Rational::zero)
    }

    /// Symbols with a nonzero coefficient, in sorted order.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Rational<I>)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeffs.is_empty()
    }

    /// No irrational part.
    pub fn is_rational(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The phase is `1`: no irrational part and an integral rational part.
    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty() && self.rational.is_integer()
    }

    /// Equality in the circle group.
    pub fn same_phase(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_trivial()
    }

    /// Representative with rational part in `[0, 1)`.
    pub fn reduced(&self) -> Self {
        let q = &self.rational;
        let fl = q.floor();
        PhaseExponent {
            rational: q - fl,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale_int(&self, n: &I) -> Self {
        self.scale(&Rational::from_integer(n.clone()))
    }

    pub fn scale(&self, q: &Rational<I>) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        PhaseExponent {
            rational: &self.rational * q,
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (s.clone(), c * q))
                .collect(),
        }
    }

    fn add_term(&mut self, sym: Symbol, coeff: Rational<I>) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(sym).or_insert_with(Rational::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
    }

    /// Converts to another scalar type, if every numerator and denominator fits.
    pub fn convert<J: Scalar>(&self) -> Option<PhaseExponent<J>> {
        let conv = |q: &Rational<I>| -> Option<Rational<J>> {
            let n = J::from_i128(q.numer().to_i128()?)?;
            let d = J::from_i128(q.denom().to_i128()?)?;
            Some(Rational::new(n, d))
        };
        let mut out = PhaseExponent::rational(conv(&self.rational)?);
        for (s, c) in &self.coeffs {
            out.add_term(s.clone(), conv(c)?);
        }
        Some(out)
    }

    /// Parses a literal, rejecting symbols outside `declared`.
    pub fn parse_declared(
        text: &str,
        declared: &BTreeSet<Symbol>,
    ) -> Result<Self, PhaseParseError> {
        let p: Self = text.parse()?;
        if let Some(s) = p.symbols().find(|s| !declared.contains(*s)) {
            return Err(PhaseParseError::Undeclared {
                literal: text.to_string(),
                symbol: s.to_string(),
            });
        }
        Ok(p)
    }
}

impl<I: Scalar> Default for PhaseExponent<I> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<I: Scalar> Add for PhaseExponent<I> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a, I: Scalar> Add<&'a PhaseExponent<I>> for PhaseExponent<I> {
    type Output = Self;
    fn add(mut self, rhs: &'a Self) -> Self {
        self += rhs.clone();
        self
    }
}

impl<I: Scalar> AddAssign for PhaseExponent<I> {
    fn add_assign(&mut self, rhs: Self) {
        self.rational = self.rational.clone() + rhs.rational;
        for (s, c) in rhs.coeffs {
            self.add_term(s, c);
        }
    }
}

impl<I: Scalar> Neg for PhaseExponent<I> {
    type Output = Self;
    fn neg(self) -> Self {
        PhaseExponent {
            rational: -self.rational,
            coeffs: self.coeffs.into_iter().map(|(s, c)| (s, -c)).collect(),
        }
    }
}

impl<I: Scalar> Sub for PhaseExponent<I> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a, I: Scalar> Sub<&'a PhaseExponent<I>> for PhaseExponent<I> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self + (-rhs.clone())
    }
}

impl<I: Scalar> SubAssign for PhaseExponent<I> {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl<I: Scalar> Sum for PhaseExponent<I> {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

fn fmt_rational<I: Scalar>(q: &Rational<I>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Canonical literal: `q0`, or symbol terms after an optional nonzero
/// rational part, e.g. `1/2 + theta - 2/3*eta`. Symbols are sorted.
impl<I: Scalar> fmt::Display for PhaseExponent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rational.is_zero() || self.coeffs.is_empty() {
            fmt_rational(&self.rational, f)?;
            first = false;
        }
        for (s, c) in &self.coeffs {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                fmt_rational(&mag, f)?;
                f.write_str("*")?;
            }
            write!(f, "{}", s)?;
            first = false;
        }
        Ok(())
    }
}

impl<I: Scalar> fmt::Debug for PhaseExponent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self)
    }
}

struct Lexer<'a> {
    literal: &'a str,
    rest: &'a str,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if let Some(r) = self.rest.strip_prefix(c) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn err(&self) -> PhaseParseError {
        PhaseParseError::Malformed {
            literal: self.literal.to_string(),
            rest: self.rest.to_string(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| !pred(c))
            .unwrap_or(self.rest.len());
        let (tok, r) = self.rest.split_at(end);
        self.rest = r;
        tok
    }

    fn rational<I: Scalar>(&mut self) -> Result<Option<Rational<I>>, PhaseParseError> {
        let num = self.take_while(|c| c.is_ascii_digit());
        if num.is_empty() {
            return Ok(None);
        }
        let n: I = num.parse().map_err(|_| self.err())?;
        if self.eat('/') {
            let den = self.take_while(|c| c.is_ascii_digit());
            if den.is_empty() {
                return Err(self.err());
            }
            let d: I = den.parse().map_err(|_| self.err())?;
            if d.is_zero() {
                return Err(PhaseParseError::ZeroDenominator(self.literal.to_string()));
            }
            Ok(Some(Rational::new(n, d)))
        } else {
            Ok(Some(Rational::from_integer(n)))
        }
    }

    fn symbol(&mut self) -> Option<Symbol> {
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        (Symbol::is_valid_name(name)).then(|| Symbol::new(name))
    }
}

/// Accepts `p/q`, `p/q + r/s*sym`, bare `sym`, and `-` between terms.
impl<I: Scalar> FromStr for PhaseExponent<I> {
    type Err = PhaseParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer {
            literal: text,
            rest: text,
        };
        lx.skip_ws();
        if lx.rest.is_empty() {
            return Err(PhaseParseError::Empty);
        }
        let mut out = Self::zero();
        let mut first = true;
        loop {
            let mut negative = false;
            if !first {
                if lx.eat('+') {
                } else if lx.eat('-') {
                    negative = true;
                } else {
                    break;
                }
            }
            // signs directly attached to the term, e.g. "+ -1/2*theta"
            loop {
                if lx.eat('-') {
                    negative = !negative;
                } else if !lx.eat('+') {
                    break;
                }
            }
            first = false;
            let coeff = lx.rational::<I>()?;
            let sym = match coeff {
                Some(_) if lx.eat('*') => Some(lx.symbol().ok_or_else(|| lx.err())?),
                Some(_) => None,
                None => Some(lx.symbol().ok_or_else(|| lx.err())?),
            };
            let mut coeff = coeff.unwrap_or_else(Rational::one);
            if negative {
                coeff = -coeff;
            }
            match sym {
                Some(s) => out.add_term(s, coeff),
                None => out.rational = out.rational.clone() + coeff,
            }
        }
        lx.skip_ws();
        if !lx.rest.is_empty() {
            return Err(lx.err());
        }
        Ok(out)
    }
}

/// `true` iff the exponent names the identity of the circle group.
pub fn phase_is_trivial<I: Scalar>(e: &PhaseExponent<I>) -> bool {
    e.is_trivial()
}

/// A point of the torus `T^d` in exponent coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhaseVector<I: Scalar = Exact>(pub Vec<PhaseExponent<I>>);

impl<I: Scalar> PhaseVector<I> {
    pub fn zero(d: usize) -> Self {
        PhaseVector(vec![PhaseExponent::zero(); d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[PhaseExponent<I>] {
        &self.0
    }

    /// Pairing with an integer vector: `Σ ni·vi`.
    pub fn pair(&self, n: &[I]) -> PhaseExponent<I> {
        assert_eq!(n.len(), self.0.len(), "pairing dimension mismatch");
        self.0.iter().zip(n).map(|(v, k)| v.scale_int(k)).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|p| p.is_trivial())
    }

    pub fn same_point(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.same_phase(b))
    }

    pub fn reduced(&self) -> Self {
        PhaseVector(self.0.iter().map(|p| p.reduced()).collect())
    }

    pub fn scale_int(&self, n: &I) -> Self {
        PhaseVector(self.0.iter().map(|p| p.scale_int(n)).collect())
    }
}

impl<I: Scalar> Add for PhaseVector<I> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.len(), rhs.len(), "phase vector length mismatch");
        PhaseVector(self.0.into_iter().zip(rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<I: Scalar> Sub for PhaseVector<I> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<I: Scalar> Neg for PhaseVector<I> {
    type Output = Self;
    fn neg(self) -> Self {
        PhaseVector(self.0.into_iter().map(|p| -p).collect())
    }
}

impl<I: Scalar> fmt::Display for PhaseVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", p)?;
        }
        f.write_str(")")
    }
}

impl<I: Scalar> fmt::Debug for PhaseVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseVector{}", self)
    }
}

/// Union of the symbols occurring anywhere in `phases`, sorted.
pub fn symbols_of<'a, I: Scalar + 'a>(
    phases: impl IntoIterator<Item = &'a PhaseExponent<I>>,
) -> Vec<Symbol> {
    let set: BTreeSet<Symbol> = phases
        .into_iter()
        .flat_map(|p| p.symbols().cloned())
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = PhaseExponent<i64>;

    #[test]
    fn triviality() {
        assert!(!P::ratio(1, 2).is_trivial());
        let three_plus_zero_theta: P = "3 + 0*theta".parse().unwrap();
        assert!(three_plus_zero_theta.is_trivial());
        let theta: P = "0 + 1*theta".parse().unwrap();
        assert!(!theta.is_trivial());
    }

    #[test]
    fn literal_round_trip() {
        let p: P = "1/3 + 2*theta".parse().unwrap();
        assert_eq!(p.rational_part(), &Rational::new(1, 3));
        assert_eq!(
            p.coefficient(&Symbol::new("theta")),
            Rational::from_integer(2)
        );
        assert_eq!(p.to_string(), "1/3 + 2*theta");
        assert_eq!(p.to_string().parse::<P>().unwrap(), p);
        let q: P = "-1/2 - theta + 1/4*rho".parse().unwrap();
        assert_eq!(q.to_string(), "-1/2 + 1/4*rho - theta");
        assert_eq!(q.to_string().parse::<P>().unwrap(), q);
        for lit in ["0", "theta", "-theta", "-2/3*eta + theta", "5 - 1/2*theta"] {
            let p: P = lit.parse().unwrap();
            assert_eq!(p.to_string(), lit);
        }
    }

    #[test]
    fn literal_errors() {
        assert!("".parse::<P>().is_err());
        assert!("1/0".parse::<P>().is_err());
        assert!("1/2 +".parse::<P>().is_err());
        assert!("2*".parse::<P>().is_err());
        let declared: BTreeSet<Symbol> = [Symbol::new("theta")].into_iter().collect();
        assert!(matches!(
            P::parse_declared("1 + rho", &declared),
            Err(PhaseParseError::Undeclared { .. })
        ));
        assert!(P::parse_declared("1 + theta", &declared).is_ok());
    }

    #[test]
    fn cancellation_drops_symbols() {
        let a: P = "1/2 + theta".parse().unwrap();
        let b: P = "1/2 + theta".parse().unwrap();
        let d = a - b;
        assert!(d.is_zero());
        assert_eq!(d.symbols().count(), 0);
    }

    #[test]
    fn reduced_is_in_unit_interval() {
        let p: P = "-7/3 + theta".parse().unwrap();
        let r = p.reduced();
        assert_eq!(r.rational_part(), &Rational::new(2, 3));
        assert!(r.same_phase(&p));
    }

    #[test]
    fn pairing() {
        let v = PhaseVector::<i64>(vec!["theta".parse().unwrap(), "2*theta".parse().unwrap()]);
        assert!(v.pair(&[2, -1]).is_trivial());
        assert!(!v.pair(&[1, 0]).is_trivial());
    }
}
