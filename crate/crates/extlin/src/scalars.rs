//! Exact field arithmetic for the ground field: the rationals and the
//! Gaussian rationals (rationals with i adjoined, carrying conjugation).
//!
//! Every value is kept in canonical form (reduced fraction, positive
//! denominator) after every operation, so equality is structural equality
//! and all downstream checks can demand exact matches with zero tolerance.
//! Arbitrary-precision integers back the fractions: exact Gaussian
//! elimination blows up coefficient sizes, and fixed-width integers would
//! overflow silently.
//!
//! The complex numbers appearing in quantum examples are modeled by ℚ(i);
//! every construction in this crate is defined over any field, so nothing
//! is lost by staying exact.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The two ground fields the engine supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Field {
    /// ℚ — the rational numbers.
    Rational,
    /// ℚ(i) — the Gaussian rationals, with conjugation.
    Gaussian,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Gaussian => write!(f, "Q(i)"),
        }
    }
}

/// Errors raised by scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Arithmetic combined a rational with a Gaussian rational.
    #[error("mixed scalar variants: {left} vs {right}; promote the rational operand first")]
    VariantMismatch { left: Field, right: Field },
    /// Multiplicative inverse of zero requested.
    #[error("division by zero")]
    DivisionByZero,
    /// A fraction was built with denominator zero.
    #[error("denominator is zero")]
    ZeroDenominator,
    /// The text did not match the scalar grammar.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, ScalarError>;

/// An exact element of ℚ or of ℚ(i), always in canonical form.
///
/// Canonical form: fractions are fully reduced with positive denominator
/// (delegated to the rational backing type, which maintains exactly that
/// invariant), and the variant is part of the value — `1` as a rational and
/// `1 + 0i` as a Gaussian rational are distinct values that refuse to mix
/// in checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
}

impl FieldElement {
    /// The zero of the given field.
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Gaussian => FieldElement::Gaussian {
                re: BigRational::zero(),
                im: BigRational::zero(),
            },
        }
    }

    /// The one of the given field.
    pub fn one(field: Field) -> Self {
        match field {
            Field::Rational => FieldElement::Rational(BigRational::one()),
            Field::Gaussian => FieldElement::Gaussian {
                re: BigRational::one(),
                im: BigRational::zero(),
            },
        }
    }

    /// The imaginary unit of ℚ(i).
    pub fn i() -> Self {
        FieldElement::Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// An integer as an element of the given field.
    pub fn integer(n: i64, field: Field) -> Self {
        let r = BigRational::from_integer(BigInt::from(n));
        match field {
            Field::Rational => FieldElement::Rational(r),
            Field::Gaussian => FieldElement::Gaussian {
                re: r,
                im: BigRational::zero(),
            },
        }
    }

    /// The rational p/q in canonical form.
    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(FieldElement::Rational(BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )))
    }

    /// The Gaussian rational (p/q) + (r/s)·i in canonical form.
    pub fn gaussian(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        if q == 0 || s == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(FieldElement::Gaussian {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::new(BigInt::from(r), BigInt::from(s)),
        })
    }

    /// Which field this element belongs to.
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Gaussian { .. } => Field::Gaussian,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Gaussian { re, im } => re.is_zero() && im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Gaussian { re, im } => re.is_one() && im.is_zero(),
        }
    }

    /// View as a Gaussian rational (ℚ ⊂ ℚ(i)); identity on Gaussians.
    pub fn promote(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Gaussian {
                re: r.clone(),
                im: BigRational::zero(),
            },
            g @ FieldElement::Gaussian { .. } => g.clone(),
        }
    }

    fn mismatch(&self, other: &Self) -> ScalarError {
        ScalarError::VariantMismatch {
            left: self.field(),
            right: other.field(),
        }
    }

    /// Exact sum; the operands must share a variant.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(a + b))
            }
            (
                FieldElement::Gaussian { re: ar, im: ai },
                FieldElement::Gaussian { re: br, im: bi },
            ) => Ok(FieldElement::Gaussian {
                re: ar + br,
                im: ai + bi,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Exact difference; the operands must share a variant.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product; the operands must share a variant.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(a * b))
            }
            (
                FieldElement::Gaussian { re: ar, im: ai },
                FieldElement::Gaussian { re: br, im: bi },
            ) => Ok(FieldElement::Gaussian {
                re: ar * br - ai * bi,
                im: ar * bi + ai * br,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Exact quotient; errors on a zero divisor or mixed variants.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Gaussian { re, im } => FieldElement::Gaussian {
                re: -re,
                im: -im,
            },
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            FieldElement::Rational(a) => Ok(FieldElement::Rational(a.recip())),
            FieldElement::Gaussian { re, im } => {
                // 1/(a+bi) = (a − bi)/(a² + b²), exact because a² + b² ≠ 0 in ℚ.
                let norm = re * re + im * im;
                Ok(FieldElement::Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                })
            }
        }
    }

    /// Complex conjugation: an involutive field automorphism that fixes the
    /// Rational variant.
    pub fn conj(&self) -> Self {
        match self {
            r @ FieldElement::Rational(_) => r.clone(),
            FieldElement::Gaussian { re, im } => FieldElement::Gaussian {
                re: re.clone(),
                im: -im,
            },
        }
    }

    /// Canonical textual form: `p/q` with `/1` omitted for rationals,
    /// `re±imi` (both parts always present) for Gaussian rationals.
    pub fn format(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match self {
            FieldElement::Rational(r) => rat(r),
            FieldElement::Gaussian { re, im } => {
                let sign = if im.is_negative() { "-" } else { "+" };
                format!("{}{}{}i", rat(re), sign, rat(&im.abs()))
            }
        }
    }

    /// Parse the grammar `±p/q` or `±p/q ± r/s i` (whitespace-insensitive,
    /// `/1` omissible, pure-imaginary forms like `2i` and bare `i`/`-i`
    /// accepted). Malformed text reports the byte offset of the problem.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).run()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format(), self.field())
    }
}

impl FromStr for FieldElement {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self> {
        FieldElement::parse(s)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format())
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        FieldElement::parse(&s).map_err(serde::de::Error::custom)
    }
}

// Operator sugar for engine-internal arithmetic. All engine containers
// validate field uniformity at construction, so a variant mismatch here is a
// bug, not an input error — these panic rather than propagate.
impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs).expect("scalar variants validated at container construction")
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs).expect("scalar variants validated at container construction")
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs).expect("scalar variants validated at container construction")
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Hand-rolled scanner for the scalar grammar; keeps byte offsets for
/// error reporting.
struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> ScalarError {
        ScalarError::Parse {
            offset,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    /// Optional sign; accepts ASCII `+`/`-` and the typographic minus `−`.
    fn sign(&mut self) -> BigInt {
        match self.peek() {
            Some('-') | Some('−') => {
                self.bump();
                BigInt::from(-1)
            }
            Some('+') => {
                self.bump();
                BigInt::from(1)
            }
            _ => BigInt::from(1),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error(start, "expected digits"));
        }
        Ok(self.text[start..self.pos]
            .parse::<BigInt>()
            .expect("ascii digits always form an integer"))
    }

    /// `p` or `p/q`, returning the reduced fraction; notes the byte offset
    /// of the denominator so a zero denominator is reported precisely.
    fn number(&mut self) -> Result<BigRational> {
        let numer = self.digits()?;
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let den_at = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(self.error(den_at, "denominator is zero"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// One signed term: a number, optionally suffixed `i`, or a bare `i`.
    /// Returns (coefficient, is_imaginary).
    fn term(&mut self) -> Result<(BigRational, bool)> {
        let sign = self.sign();
        self.skip_ws();
        let at = self.pos;
        if self.peek() == Some('i') {
            self.bump();
            return Ok((BigRational::from_integer(sign), true));
        }
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.error(at, "expected a number or 'i'"));
        }
        let magnitude = self.number()?;
        self.skip_ws();
        if self.peek() == Some('i') {
            self.bump();
            Ok((magnitude * BigRational::from_integer(sign), true))
        } else {
            Ok((magnitude * BigRational::from_integer(sign), false))
        }
    }

    fn run(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty input"));
        }
        let (first, first_imag) = self.term()?;
        self.skip_ws();

        let looking_at_sign = matches!(self.peek(), Some('+') | Some('-') | Some('−'));
        let value = if looking_at_sign {
            let second_at = self.pos;
            if first_imag {
                return Err(self.error(
                    second_at,
                    "imaginary part must come last: real ± imaginary·i",
                ));
            }
            let (second, second_imag) = self.term()?;
            if !second_imag {
                // the scanner sits just past the coefficient, exactly where
                // the 'i' marker should have appeared
                return Err(self.error(
                    self.pos,
                    "expected 'i' to mark the imaginary part",
                ));
            }
            FieldElement::Gaussian {
                re: first,
                im: second,
            }
        } else if first_imag {
            FieldElement::Gaussian {
                re: BigRational::zero(),
                im: first,
            }
        } else {
            FieldElement::Rational(first)
        };

        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.error(self.pos, format!("unexpected character '{c}'")));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, q_: i64) -> FieldElement {
        FieldElement::ratio(p, q_).unwrap()
    }

    fn g(p: i64, q_: i64, r: i64, s: i64) -> FieldElement {
        FieldElement::gaussian(p, q_, r, s).unwrap()
    }

    #[test]
    fn addition_reduces_to_canonical_form() {
        assert_eq!(q(1, 2).add(&q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
    }

    #[test]
    fn conjugate_pair_sums_to_one() {
        let a = g(1, 2, 1, 2);
        let b = g(1, 2, -1, 2);
        assert_eq!(a.add(&b).unwrap(), FieldElement::one(Field::Gaussian));
    }

    #[test]
    fn multiplicative_inverse_pairs() {
        assert_eq!(q(2, 3).mul(&q(3, 2)).unwrap(), FieldElement::one(Field::Rational));
        // inv(i) = −i
        assert_eq!(FieldElement::i().inv().unwrap(), g(0, 1, -1, 1));
        // i² = −1
        assert_eq!(
            FieldElement::i().mul(&FieldElement::i()).unwrap(),
            FieldElement::integer(-1, Field::Gaussian)
        );
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(
            FieldElement::zero(Field::Rational).inv(),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(
            FieldElement::zero(Field::Gaussian).inv(),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn mixed_variants_refuse_arithmetic() {
        let err = q(1, 2).add(&FieldElement::i()).unwrap_err();
        assert_eq!(
            err,
            ScalarError::VariantMismatch {
                left: Field::Rational,
                right: Field::Gaussian
            }
        );
    }

    #[test]
    fn conjugation_fixes_rationals_and_flips_imaginary_part() {
        let r = q(3, 4);
        assert_eq!(r.conj(), r);
        assert_eq!(g(3, 4, -2, 1).conj(), g(3, 4, 2, 1));
    }

    #[test]
    fn parses_integers_fractions_and_gaussians() {
        assert_eq!(FieldElement::parse("3").unwrap(), q(3, 1));
        assert_eq!(FieldElement::parse("-1/2").unwrap(), q(-1, 2));
        assert_eq!(FieldElement::parse("−1/2+2/3i").unwrap(), g(-1, 2, 2, 3));
        assert_eq!(FieldElement::parse(" 1/2 - 3 i ").unwrap(), g(1, 2, -3, 1));
        assert_eq!(FieldElement::parse("i").unwrap(), FieldElement::i());
        assert_eq!(FieldElement::parse("-i").unwrap(), g(0, 1, -1, 1));
        assert_eq!(FieldElement::parse("2i").unwrap(), g(0, 1, 2, 1));
        // non-canonical input parses to the canonical value
        assert_eq!(FieldElement::parse("2/4").unwrap(), q(1, 2));
    }

    #[test]
    fn parse_errors_carry_byte_offsets() {
        match FieldElement::parse("1/0") {
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match FieldElement::parse("abc") {
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        match FieldElement::parse("1/2 + 2/3j") {
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 9),
            other => panic!("expected parse error, got {other:?}"),
        }
        match FieldElement::parse("1 + 2") {
            // second component lacks the imaginary marker; reported where
            // the 'i' should have appeared
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match FieldElement::parse("") {
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn fuzz_corpus_round_trips_to_canonical_text() {
        // Independent oracle: non-canonical spellings of known values, each
        // paired with the canonical rendering computed by hand.
        let corpus: &[(&str, &str)] = &[
            ("2/4", "1/2"),
            ("0/5", "0"),
            ("  7 ", "7"),
            ("-0", "0"),
            ("3/3", "1"),
            ("10/4", "5/2"),
            ("0+0i", "0+0i"),
            ("1+1i", "1+1i"),
            ("1 - 1 i", "1-1i"),
            ("0 + 2/4 i", "0+1/2i"),
            ("−3/6 − 2/8i", "-1/2-1/4i"),
            ("4/2+0i", "2+0i"),
            ("i", "0+1i"),
            ("-i", "0-1i"),
            ("12/8i", "0+3/2i"),
        ];
        for (input, canonical) in corpus {
            let parsed = FieldElement::parse(input).unwrap();
            assert_eq!(
                parsed.format(),
                *canonical,
                "canonicalization of {input:?}"
            );
            // format∘parse is the identity on canonical text
            assert_eq!(FieldElement::parse(canonical).unwrap(), parsed);
        }
    }

    #[test]
    fn serde_round_trips_values() {
        for v in [q(-5, 3), g(1, 2, -7, 4), FieldElement::zero(Field::Gaussian)] {
            let j = serde_json::to_string(&v).unwrap();
            let back: FieldElement = serde_json::from_str(&j).unwrap();
            assert_eq!(back, v);
        }
    }

    prop_compose! {
        fn arb_rational()(p in -40i64..40, q_ in 1i64..20) -> FieldElement {
            q(p, q_)
        }
    }

    prop_compose! {
        fn arb_gaussian()(p in -12i64..12, q_ in 1i64..9, r in -12i64..12, s in 1i64..9) -> FieldElement {
            g(p, q_, r, s)
        }
    }

    fn arb_scalar() -> impl Strategy<Value = FieldElement> {
        prop_oneof![arb_rational(), arb_gaussian()]
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            // coerce all three into ℚ(i) so the laws are testable on one variant
            let (a, b, c) = (a.promote(), b.promote(), c.promote());
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);

            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);

            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());

            if !a.is_zero() {
                prop_assert_eq!(
                    a.mul(&a.inv().unwrap()).unwrap(),
                    FieldElement::one(Field::Gaussian)
                );
            }
        }

        #[test]
        fn additive_identity_and_negation(x in arb_scalar()) {
            let zero = FieldElement::zero(x.field());
            prop_assert_eq!(x.add(&zero).unwrap(), x.clone());
            prop_assert_eq!(x.add(&x.neg()).unwrap(), zero);
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in arb_gaussian(), b in arb_gaussian()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(
                a.mul(&b).unwrap().conj(),
                a.conj().mul(&b.conj()).unwrap()
            );
            prop_assert_eq!(
                a.add(&b).unwrap().conj(),
                a.conj().add(&b.conj()).unwrap()
            );
        }

        #[test]
        fn format_parse_round_trip(x in arb_scalar()) {
            prop_assert_eq!(FieldElement::parse(&x.format()).unwrap(), x);
        }
    }
}
