//! Exact scalar arithmetic in the multiplicative group generated by the
//! algebra parameters.
//!
//! Every scalar is a sign together with an integer exponent vector over a
//! basis of generators. Generators are either concrete primes (coming
//! from rational parameter entries) or formal symbols (declared names).
//! Formal symbols are assumed multiplicatively independent of each other
//! and of all primes, which makes equality against 1 exact and decidable.
//! The only torsion representable is the sign `{+1, -1}`; inputs needing
//! other roots of unity are rejected at the grammar level.

mod factor;
mod parse;

pub use factor::{factorize, is_prime};
pub use parse::parse_scalar;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Largest exponent magnitude accepted by the parser and the evaluator.
pub const MAX_EXPONENT: i64 = 1 << 20;

/// One multiplicative generator of the scalar group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// A concrete prime number.
    Prime(u64),
    /// A formal symbol, multiplicatively independent of everything else.
    Symbol(String),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Prime(p) => write!(f, "{p}"),
            Generator::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// An ordered, append-only list of generators. Indices of existing
/// generators never change, so exponent vectors created against an older
/// state of the basis stay valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorBasis {
    generators: Vec<Generator>,
    prime_index: BTreeMap<u64, usize>,
    symbol_index: BTreeMap<String, usize>,
}

/// Errors from scalar parsing and basis manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalar value is zero")]
    Zero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("integer literal has a prime factor exceeding 64 bits")]
    IntTooLarge,
    #[error("exponent magnitude exceeds {MAX_EXPONENT}")]
    ExponentRange,
    #[error("invalid symbol name {0:?}")]
    BadSymbol(String),
}

impl GeneratorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Index of `p`, appending it if new.
    pub fn intern_prime(&mut self, p: u64) -> usize {
        debug_assert!(factor::is_prime(p), "intern_prime requires a prime");
        *self.prime_index.entry(p).or_insert_with(|| {
            self.generators.push(Generator::Prime(p));
            self.generators.len() - 1
        })
    }

    /// Index of the formal symbol `name`, appending it if new.
    pub fn intern_symbol(&mut self, name: &str) -> Result<usize, ScalarError> {
        if !is_valid_symbol(name) {
            return Err(ScalarError::BadSymbol(name.to_string()));
        }
        if let Some(&i) = self.symbol_index.get(name) {
            return Ok(i);
        }
        self.generators.push(Generator::Symbol(name.to_string()));
        let i = self.generators.len() - 1;
        self.symbol_index.insert(name.to_string(), i);
        Ok(i)
    }

    /// True when one basis extends the other, i.e. exponent vectors over
    /// either refer to the same generators.
    pub fn compatible_with(&self, other: &GeneratorBasis) -> bool {
        let short = self.generators.len().min(other.generators.len());
        self.generators[..short] == other.generators[..short]
    }
}

/// Symbols match `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_valid_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The sign part of a scalar: the only representable torsion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn combine(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

/// A unit scalar: sign times a product of generator powers. The exponent
/// vector is indexed by the basis and implicitly zero beyond its length;
/// trailing zeros are trimmed so derived equality is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    sign: Sign,
    exponents: Vec<i64>,
}

impl GroupElement {
    pub fn one() -> Self {
        GroupElement {
            sign: Sign::Plus,
            exponents: Vec::new(),
        }
    }

    pub fn minus_one() -> Self {
        GroupElement {
            sign: Sign::Minus,
            exponents: Vec::new(),
        }
    }

    pub fn from_parts(sign: Sign, mut exponents: Vec<i64>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        GroupElement { sign, exponents }
    }

    /// Single generator to the given power.
    pub fn generator_power(idx: usize, exp: i64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut exponents = vec![0i64; idx + 1];
        exponents[idx] = exp;
        GroupElement {
            sign: Sign::Plus,
            exponents,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn exponent(&self, idx: usize) -> i64 {
        self.exponents.get(idx).copied().unwrap_or(0)
    }

    /// Nonzero `(generator index, exponent)` pairs in basis order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn is_one(&self) -> bool {
        self.sign == Sign::Plus && self.exponents.is_empty()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let len = self.exponents.len().max(other.exponents.len());
        let mut exps = Vec::with_capacity(len);
        for i in 0..len {
            let e = self
                .exponent(i)
                .checked_add(other.exponent(i))
                .expect("exponent overflow in mul");
            exps.push(e);
        }
        GroupElement::from_parts(self.sign.combine(other.sign), exps)
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            sign: self.sign,
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let sign = if self.sign == Sign::Minus && k.rem_euclid(2) == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let exps = self
            .exponents
            .iter()
            .map(|e| e.checked_mul(k).expect("exponent overflow in pow"))
            .collect();
        GroupElement::from_parts(sign, exps)
    }

    /// Canonical text form; parsing it back yields an equal element.
    pub fn render(&self, basis: &GeneratorBasis) -> String {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut symbols: Vec<String> = Vec::new();
        for (idx, e) in self.support() {
            match basis.generator(idx) {
                Generator::Prime(p) => {
                    let mag = e.unsigned_abs() as u32;
                    let pw = BigUint::from(*p).pow(mag);
                    if e > 0 {
                        num *= pw;
                    } else {
                        den *= pw;
                    }
                }
                Generator::Symbol(s) => {
                    if e == 1 {
                        symbols.push(s.clone());
                    } else {
                        symbols.push(format!("{s}^{e}"));
                    }
                }
            }
        }
        let mut parts: Vec<String> = Vec::new();
        if !num.is_one() || !den.is_one() {
            if den.is_one() {
                parts.push(num.to_string());
            } else {
                parts.push(format!("{num}/{den}"));
            }
        }
        parts.extend(symbols);
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        match self.sign {
            Sign::Plus => body,
            Sign::Minus => format!("-{body}"),
        }
    }

    /// Exact rational value under an assignment of the formal symbols.
    /// Concrete primes always map to themselves; the assignment is
    /// multiplicative, so `embed(a*b) = embed(a)*embed(b)`.
    pub fn embed_rational(
        &self,
        basis: &GeneratorBasis,
        assignment: &Assignment,
    ) -> Result<BigRational, EvalError> {
        let mut value = BigRational::one();
        for (idx, e) in self.support() {
            let base = match basis.generator(idx) {
                Generator::Prime(p) => BigRational::from_integer(BigInt::from(*p)),
                Generator::Symbol(s) => assignment
                    .get(s)
                    .cloned()
                    .ok_or_else(|| EvalError::MissingAssignment(s.clone()))?,
            };
            value *= rational_pow(&base, e)?;
        }
        if self.sign == Sign::Minus {
            value = -value;
        }
        Ok(value)
    }
}

fn rational_pow(base: &BigRational, e: i64) -> Result<BigRational, EvalError> {
    if e.unsigned_abs() > MAX_EXPONENT as u64 {
        return Err(EvalError::ExponentRange);
    }
    let mag = e.unsigned_abs() as u32;
    let powed = BigRational::new(base.numer().pow(mag), base.denom().pow(mag));
    if e < 0 {
        Ok(powed.recip())
    } else {
        Ok(powed)
    }
}

/// Errors from [`GroupElement::embed_rational`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to formal generator {0:?}")]
    MissingAssignment(String),
    #[error("assignment of zero to formal generator {0:?}")]
    ZeroAssignment(String),
    #[error("exponent magnitude exceeds {MAX_EXPONENT}")]
    ExponentRange,
}

/// A map from formal symbols to nonzero rationals. Concrete primes are
/// never listed here; they evaluate to themselves.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    values: BTreeMap<String, BigRational>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assign a nonzero value to a formal symbol.
    pub fn insert(&mut self, symbol: &str, value: BigRational) -> Result<(), EvalError> {
        if value.is_zero() {
            // A unit can never evaluate to zero.
            return Err(EvalError::ZeroAssignment(symbol.to_string()));
        }
        self.values.insert(symbol.to_string(), value);
        Ok(())
    }

    pub fn get(&self, symbol: &str) -> Option<&BigRational> {
        self.values.get(symbol)
    }

    /// Assign distinct fresh primes (not already concrete in `basis`) to
    /// every formal symbol of `basis`, in basis order.
    pub fn fresh_primes_for(basis: &GeneratorBasis) -> Assignment {
        let used: Vec<u64> = basis
            .generators()
            .iter()
            .filter_map(|g| match g {
                Generator::Prime(p) => Some(*p),
                Generator::Symbol(_) => None,
            })
            .collect();
        let mut assignment = Assignment::new();
        let mut candidate = 2u64;
        for g in basis.generators() {
            if let Generator::Symbol(s) = g {
                while used.contains(&candidate) || !factor::is_prime(candidate) {
                    candidate += 1;
                }
                assignment.values.insert(
                    s.clone(),
                    BigRational::from_integer(BigInt::from(candidate)),
                );
                candidate += 1;
            }
        }
        assignment
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;

    fn parse_fresh(text: &str) -> (GroupElement, GeneratorBasis) {
        let mut basis = GeneratorBasis::new();
        let e = parse_scalar(text, &mut basis).expect("parse");
        (e, basis)
    }

    #[test]
    fn spec_parse_examples() {
        let mut basis = GeneratorBasis::new();
        let half = parse_scalar("1/2", &mut basis).unwrap();
        assert_eq!(half.sign(), Sign::Plus);
        let two = basis.intern_prime(2);
        assert_eq!(half.exponent(two), -1);

        let eight = parse_scalar("8", &mut basis).unwrap();
        assert_eq!(eight.sign(), Sign::Plus);
        assert_eq!(eight.exponent(two), 3);

        let m = parse_scalar("-g1^2", &mut basis).unwrap();
        assert_eq!(m.sign(), Sign::Minus);
        let g1 = basis.intern_symbol("g1").unwrap();
        assert_eq!(m.exponent(g1), 2);
    }

    #[test]
    fn spec_mul_examples() {
        let mut basis = GeneratorBasis::new();
        let two = parse_scalar("2", &mut basis).unwrap();
        let half = parse_scalar("1/2", &mut basis).unwrap();
        let four = parse_scalar("4", &mut basis).unwrap();
        let eight = parse_scalar("8", &mut basis).unwrap();
        assert!(two.mul(&half).is_one());
        assert_eq!(two.mul(&four), eight);
        assert!(GroupElement::minus_one()
            .mul(&GroupElement::minus_one())
            .is_one());
    }

    #[test]
    fn spec_inv_examples() {
        let mut basis = GeneratorBasis::new();
        let two = parse_scalar("2", &mut basis).unwrap();
        let half = parse_scalar("1/2", &mut basis).unwrap();
        assert_eq!(two.inv(), half);
        assert!(GroupElement::one().inv().is_one());
        let mq = parse_scalar("-1/4", &mut basis).unwrap();
        let m4 = parse_scalar("-4", &mut basis).unwrap();
        assert_eq!(mq.inv(), m4);
    }

    #[test]
    fn spec_embed_examples() {
        let (eight, basis) = parse_fresh("8");
        let empty = Assignment::new();
        assert_eq!(
            eight.embed_rational(&basis, &empty).unwrap(),
            BigRational::from_i64(8).unwrap()
        );
        assert_eq!(
            GroupElement::one().embed_rational(&basis, &empty).unwrap(),
            BigRational::one()
        );

        let (mg, basis) = parse_fresh("-g1");
        let mut assignment = Assignment::new();
        assignment
            .insert("g1", BigRational::from_i64(5).unwrap())
            .unwrap();
        assert_eq!(
            mg.embed_rational(&basis, &assignment).unwrap(),
            BigRational::from_i64(-5).unwrap()
        );
    }

    #[test]
    fn embed_missing_symbol_errors() {
        let (g, basis) = parse_fresh("g1^3");
        let err = g.embed_rational(&basis, &Assignment::new()).unwrap_err();
        assert_eq!(err, EvalError::MissingAssignment("g1".to_string()));
    }

    #[test]
    fn render_examples() {
        let mut basis = GeneratorBasis::new();
        for (text, expected) in [
            ("8", "8"),
            ("1/2", "1/2"),
            ("-1/4", "-1/4"),
            ("-g1^2", "-g1^2"),
            ("3/6", "1/2"),
            ("g1^2*g2^-1", "g1^2*g2^-1"),
            ("2*g1", "2*g1"),
            ("1", "1"),
            ("-1", "-1"),
        ] {
            let e = parse_scalar(text, &mut basis).unwrap();
            assert_eq!(e.render(&basis), expected, "render of {text:?}");
        }
    }

    fn arb_element(n_gens: usize) -> impl Strategy<Value = GroupElement> {
        (
            any::<bool>(),
            proptest::collection::vec(-6i64..=6, 0..=n_gens),
        )
            .prop_map(|(neg, exps)| {
                GroupElement::from_parts(if neg { Sign::Minus } else { Sign::Plus }, exps)
            })
    }

    fn test_basis(n_gens: usize) -> GeneratorBasis {
        let mut basis = GeneratorBasis::new();
        basis.intern_prime(2);
        basis.intern_prime(3);
        basis.intern_prime(5);
        for i in 3..n_gens {
            basis.intern_symbol(&format!("g{i}")).unwrap();
        }
        basis
    }

    proptest! {
        #[test]
        fn round_trip_render_parse(e in arb_element(6)) {
            let basis = test_basis(6);
            let mut reparse_basis = basis.clone();
            let text = e.render(&basis);
            let back = parse_scalar(&text, &mut reparse_basis).unwrap();
            // The reparsed element may index generators differently if the
            // bases diverged; over the same starting basis they cannot.
            prop_assert!(basis.compatible_with(&reparse_basis));
            let len = basis.len().max(reparse_basis.len());
            for i in 0..len {
                prop_assert_eq!(e.exponent(i), back.exponent(i));
            }
            prop_assert_eq!(e.sign(), back.sign());
        }

        #[test]
        fn group_laws(a in arb_element(6), b in arb_element(6), c in arb_element(6)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.inv().inv(), a.clone());
            prop_assert!(a.mul(&a.inv()).is_one());
            prop_assert_eq!(a.mul(&GroupElement::one()), a.clone());
        }

        #[test]
        fn embed_is_homomorphism(a in arb_element(6), b in arb_element(6)) {
            let basis = test_basis(6);
            let mut assignment = Assignment::new();
            assignment.insert("g3", BigRational::new(BigInt::from(7), BigInt::from(3))).unwrap();
            assignment.insert("g4", BigRational::from_i64(-2).unwrap()).unwrap();
            assignment.insert("g5", BigRational::new(BigInt::from(-5), BigInt::from(11))).unwrap();
            let ea = a.embed_rational(&basis, &assignment).unwrap();
            let eb = b.embed_rational(&basis, &assignment).unwrap();
            let eab = a.mul(&b).embed_rational(&basis, &assignment).unwrap();
            prop_assert_eq!(eab, ea * eb);
        }

        #[test]
        fn is_one_is_exact(a in arb_element(6)) {
            let identity = a.mul(&a.inv());
            prop_assert!(identity.is_one());
            if a.is_one() {
                prop_assert_eq!(a, GroupElement::one());
            }
        }
    }
}
