//! Parser for the scalar grammar:
//!
//! ```text
//! SCALAR   := ['-'] FACTOR ('*' FACTOR)*
//! FACTOR   := RATIONAL | MONOMIAL
//! RATIONAL := ['-'] INT ['/' INT]      (the sign only mid-expression)
//! MONOMIAL := SYMBOL ['^' SIGNED_INT]
//! SYMBOL   := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Rationals are factored into primes on the fly; new primes and symbols
//! are appended to the basis. ASCII whitespace between tokens is ignored.

use super::factor::factorize;
use super::{GeneratorBasis, GroupElement, ScalarError, Sign, MAX_EXPONENT};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Digit-count cap on integer literals; keeps factorization cheap.
const MAX_INT_DIGITS: usize = 4096;

/// Parse a scalar, extending `basis` with any new primes or symbols.
pub fn parse_scalar(text: &str, basis: &mut GeneratorBasis) -> Result<GroupElement, ScalarError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        basis,
        sign: Sign::Plus,
        exponents: Vec::new(),
    };
    p.parse()?;
    Ok(GroupElement::from_parts(p.sign, p.exponents))
}

struct Parser<'a, 'b> {
    bytes: &'a [u8],
    pos: usize,
    basis: &'b mut GeneratorBasis,
    sign: Sign,
    exponents: Vec<i64>,
}

impl Parser<'_, '_> {
    fn parse(&mut self) -> Result<(), ScalarError> {
        self.skip_ws();
        let leading_minus = self.eat(b'-');
        if leading_minus {
            self.sign = Sign::Minus;
            self.skip_ws();
        }
        // After an explicit leading minus the first factor may not carry
        // another sign of its own.
        self.factor(!leading_minus)?;
        loop {
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
            self.factor(true)?;
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(())
    }

    fn factor(&mut self, allow_minus: bool) -> Result<(), ScalarError> {
        self.skip_ws();
        let mut negate = false;
        if allow_minus && self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            negate = true;
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.rational(negate),
            Some(c) if c.is_ascii_alphabetic() => {
                if negate {
                    return Err(self.syntax("'-' must be followed by an integer here"));
                }
                self.monomial()
            }
            _ => Err(self.syntax("expected a rational or a symbol")),
        }
    }

    fn rational(&mut self, negate: bool) -> Result<(), ScalarError> {
        let numerator = self.integer()?;
        if numerator.is_zero() {
            return Err(ScalarError::Zero);
        }
        self.push_factored(&numerator, 1)?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.syntax("expected a denominator"));
            }
            let denominator = self.integer()?;
            if denominator.is_zero() {
                return Err(ScalarError::ZeroDenominator);
            }
            self.push_factored(&denominator, -1)?;
        }
        if negate {
            self.sign = self.sign.combine(Sign::Minus);
        }
        Ok(())
    }

    fn monomial(&mut self) -> Result<(), ScalarError> {
        let start = self.pos;
        self.pos += 1;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ASCII range checked")
            .to_string();
        let mut exp = 1i64;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            exp = self.signed_int()?;
        }
        let idx = self.basis.intern_symbol(&name)?;
        self.add_exponent(idx, exp)?;
        Ok(())
    }

    fn integer(&mut self) -> Result<BigUint, ScalarError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected digits"));
        }
        if self.pos - start > MAX_INT_DIGITS {
            return Err(ScalarError::IntTooLarge);
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ASCII");
        Ok(digits.parse::<BigUint>().expect("digit string"))
    }

    fn signed_int(&mut self) -> Result<i64, ScalarError> {
        let negative = self.eat(b'-');
        if negative {
            self.skip_ws();
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected an integer exponent"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ASCII");
        let mag: i64 = digits.parse().map_err(|_| ScalarError::ExponentRange)?;
        if mag > MAX_EXPONENT {
            return Err(ScalarError::ExponentRange);
        }
        Ok(if negative { -mag } else { mag })
    }

    /// Factor `value` into primes and add `direction * multiplicity` to
    /// the exponent of each.
    fn push_factored(&mut self, value: &BigUint, direction: i64) -> Result<(), ScalarError> {
        for (prime, multiplicity) in factor_biguint(value)? {
            let idx = self.basis.intern_prime(prime);
            self.add_exponent(idx, direction * multiplicity as i64)?;
        }
        Ok(())
    }

    fn add_exponent(&mut self, idx: usize, delta: i64) -> Result<(), ScalarError> {
        if self.exponents.len() <= idx {
            self.exponents.resize(idx + 1, 0);
        }
        let total = self.exponents[idx]
            .checked_add(delta)
            .ok_or(ScalarError::ExponentRange)?;
        if total.unsigned_abs() > MAX_EXPONENT as u64 {
            return Err(ScalarError::ExponentRange);
        }
        self.exponents[idx] = total;
        Ok(())
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }
}

/// Factor a nonnegative big integer. Values beyond `u64` are first
/// stripped of prime factors below 10^5; whatever remains must fit in a
/// `u64` or the literal is rejected.
fn factor_biguint(value: &BigUint) -> Result<Vec<(u64, u32)>, ScalarError> {
    if let Some(small) = value.to_u64() {
        return Ok(factorize(small));
    }
    let mut rest = value.clone();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut candidate = 2u64;
    while candidate < 100_000 {
        let big_candidate = BigUint::from(candidate);
        let mut multiplicity = 0u32;
        while (&rest % &big_candidate).is_zero() {
            rest /= &big_candidate;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            out.push((candidate, multiplicity));
        }
        if rest.is_one() {
            return Ok(out);
        }
        candidate = if candidate == 2 { 3 } else { candidate + 2 };
    }
    match rest.to_u64() {
        Some(small) => {
            for (p, e) in factorize(small) {
                out.push((p, e));
            }
            out.sort_unstable();
            Ok(out)
        }
        None => Err(ScalarError::IntTooLarge),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<GroupElement, ScalarError> {
        let mut basis = GeneratorBasis::new();
        parse_scalar(text, &mut basis)
    }

    #[test]
    fn accepts_grammar_forms() {
        for ok in [
            "8",
            "-1/4",
            "1/2",
            "g1^2*g2^-1",
            "-g1^2",
            "2*3",
            "2 * g1 * 1/7",
            "q",
            "q^-3",
            "12/8*q^2",
            " 7 ",
            "2*-3",
        ] {
            assert!(parse(ok).is_ok(), "should parse: {ok:?}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse("0"), Err(ScalarError::Zero));
        assert_eq!(parse("0/5"), Err(ScalarError::Zero));
        assert_eq!(parse("5/0"), Err(ScalarError::ZeroDenominator));
        assert!(matches!(parse(""), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("2**3"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("^2"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("g^1.5"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("2/"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("--1"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("-*2"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("2+3"), Err(ScalarError::Syntax { .. })));
        assert_eq!(parse("g^99999999"), Err(ScalarError::ExponentRange));
    }

    #[test]
    fn reduction_happens_through_factoring() {
        let mut basis = GeneratorBasis::new();
        let a = parse_scalar("12/8", &mut basis).unwrap();
        let b = parse_scalar("3/2", &mut basis).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn big_smooth_literal() {
        let mut basis = GeneratorBasis::new();
        // 2^100 has 31 digits, well beyond u64.
        let text = BigUint::from(2u32).pow(100).to_string();
        let e = parse_scalar(&text, &mut basis).unwrap();
        let two = basis.intern_prime(2);
        assert_eq!(e.exponent(two), 100);
    }

    #[test]
    fn whitespace_is_tolerated() {
        let mut basis = GeneratorBasis::new();
        let a = parse_scalar(" - 1 / 2 * g ^ -1 ", &mut basis).unwrap();
        let b = parse_scalar("-1/2*g^-1", &mut basis).unwrap();
        assert_eq!(a, b);
    }
}
