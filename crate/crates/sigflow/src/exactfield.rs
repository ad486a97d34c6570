//! Exact scalar arithmetic for the three supported coefficient fields:
//! arbitrary-precision rationals `Q`, prime fields `GF(p)`, and the field
//! `Q(s)` of rational functions in one variable `s` with rational
//! coefficients.
//!
//! Every value is kept in a canonical form so that field-element equality
//! is plain structural comparison:
//!
//! * rationals are reduced with a positive denominator,
//! * `GF(p)` residues live in `[0, p)`,
//! * rational functions are reduced fractions of polynomials with a
//!   *monic* denominator (all scaling absorbed into the numerator).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced, denominator > 0.
/// (`num`'s `BigRational` maintains exactly these invariants.)
pub type Rational = BigRational;

/// Errors produced by scalar construction, arithmetic and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed field elements: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("modulus {0} is not a prime below 2^31")]
    InvalidModulus(u64),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

fn parse_err<T>(position: usize, message: impl Into<String>) -> Result<T, FieldError> {
    Err(FieldError::Parse { position, message: message.into() })
}

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// Rational numbers.
    Q,
    /// Integers modulo a prime `p < 2^31`.
    GFp(u32),
    /// Rational functions in `s` over the rationals.
    Qs,
}

impl FieldTag {
    /// Validated constructor for a prime-field tag.
    pub fn gfp(p: u64) -> Result<FieldTag, FieldError> {
        if p < (1 << 31) && is_prime_u64(p) {
            Ok(FieldTag::GFp(p as u32))
        } else {
            Err(FieldError::InvalidModulus(p))
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::GFp(p) => write!(f, "GF({p})"),
            FieldTag::Qs => write!(f, "Qs"),
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over Q
// ---------------------------------------------------------------------------

/// Dense univariate polynomial in `s` with rational coefficients.
/// `coeffs[i]` is the coefficient of `s^i`; the top coefficient is nonzero
/// (the zero polynomial has an empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    /// The variable `s`.
    pub fn var() -> Poly {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics if `div` is zero (internal misuse, not a user-facing path).
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dlead = div.leading().unwrap().clone();
        let ddeg = div.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading().unwrap() / &dlead;
            let shift = rdeg - ddeg;
            quot[shift] = factor.clone();
            // rem -= factor * s^shift * div
            let mut sub = vec![Rational::zero(); shift];
            sub.extend(div.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Poly::new(sub));
        }
        (Poly::new(quot), rem)
    }

    /// Rescale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = Rational::one() / l;
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Monic greatest common divisor by the Euclidean algorithm.
/// `poly_gcd(0, 0) = 0`; otherwise the result is monic and divides both
/// arguments exactly.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Reduced rational function `num/den` with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalize `num/den`: reduce by the gcd and make the denominator
    /// monic. The only error is a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: Poly::zero(), den: Poly::one() });
        }
        let g = poly_gcd(&num, &den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::one() / lead;
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_rational(r: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::constant(r))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator product")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator product")
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An exact scalar tagged with the field it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Q(Rational),
    GFp { p: u32, r: u32 },
    Qs(RatFunc),
}

impl FieldElem {
    pub fn tag(&self) -> FieldTag {
        match self {
            FieldElem::Q(_) => FieldTag::Q,
            FieldElem::GFp { p, .. } => FieldTag::GFp(*p),
            FieldElem::Qs(_) => FieldTag::Qs,
        }
    }

    pub fn zero(tag: FieldTag) -> FieldElem {
        match tag {
            FieldTag::Q => FieldElem::Q(Rational::zero()),
            FieldTag::GFp(p) => FieldElem::GFp { p, r: 0 },
            FieldTag::Qs => FieldElem::Qs(RatFunc::zero()),
        }
    }

    pub fn one(tag: FieldTag) -> FieldElem {
        match tag {
            FieldTag::Q => FieldElem::Q(Rational::one()),
            FieldTag::GFp(p) => FieldElem::GFp { p, r: 1 % p },
            FieldTag::Qs => FieldElem::Qs(RatFunc::one()),
        }
    }

    pub fn from_int(tag: FieldTag, v: i64) -> FieldElem {
        let b = BigInt::from(v);
        FieldElem::from_rational(tag, &Rational::from_integer(b))
            .expect("integers embed into every supported field")
    }

    /// Embed a rational constant. For `GF(p)` this reduces numerator and
    /// denominator mod p and fails when the denominator vanishes there.
    pub fn from_rational(tag: FieldTag, v: &Rational) -> Result<FieldElem, FieldError> {
        match tag {
            FieldTag::Q => Ok(FieldElem::Q(v.clone())),
            FieldTag::Qs => Ok(FieldElem::Qs(RatFunc::from_rational(v.clone()))),
            FieldTag::GFp(p) => {
                let n = bigint_mod_p(v.numer(), p);
                let d = bigint_mod_p(v.denom(), p);
                if d == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(FieldElem::GFp { p, r: gf_mul(n, gf_inv(d, p), p) })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_zero(),
            FieldElem::GFp { r, .. } => *r == 0,
            FieldElem::Qs(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_one(),
            FieldElem::GFp { p, r } => *r == 1 % p,
            FieldElem::Qs(f) => f.is_one(),
        }
    }

    fn check_tag(&self, other: &FieldElem) {
        assert_eq!(
            self.tag(),
            other.tag(),
            "field elements from different fields mixed in arithmetic"
        );
    }

    /// Addition within one field. Panics on mixed tags (see `scalar_arith`
    /// for the checked entry point).
    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.check_tag(other);
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::GFp { p, r: a }, FieldElem::GFp { r: b, .. }) => {
                FieldElem::GFp { p: *p, r: ((*a as u64 + *b as u64) % *p as u64) as u32 }
            }
            (FieldElem::Qs(a), FieldElem::Qs(b)) => FieldElem::Qs(a.add(b)),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::GFp { p, r } => FieldElem::GFp { p: *p, r: if *r == 0 { 0 } else { p - r } },
            FieldElem::Qs(a) => FieldElem::Qs(a.neg()),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.check_tag(other);
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::GFp { p, r: a }, FieldElem::GFp { r: b, .. }) => {
                FieldElem::GFp { p: *p, r: gf_mul(*a, *b, *p) }
            }
            (FieldElem::Qs(a), FieldElem::Qs(b)) => FieldElem::Qs(a.mul(b)),
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::GFp { p, r } => FieldElem::GFp { p: *p, r: gf_inv(*r, *p) },
            FieldElem::Qs(a) => FieldElem::Qs(a.inv()?),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(&other.inv()?))
    }
}

fn bigint_mod_p(v: &BigInt, p: u32) -> u32 {
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    // after reduction the value fits in u32
    let (_, digits) = m.to_u32_digits();
    digits.first().copied().unwrap_or(0)
}

fn gf_mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn gf_pow(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_mul(acc, base, p);
        }
        base = gf_mul(base, base, p);
        e >>= 1;
    }
    acc
}

fn gf_inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    gf_pow(a, p as u64 - 2, p)
}

/// Kind of operation accepted by [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked scalar arithmetic: validates field tags before dispatching to
/// the operation. Binary operations require `b`, unary ones forbid it
/// (violations are programming errors and panic).
pub fn scalar_arith(
    op: ScalarOp,
    a: &FieldElem,
    b: Option<&FieldElem>,
) -> Result<FieldElem, FieldError> {
    match op {
        ScalarOp::Add | ScalarOp::Mul => {
            let b = b.expect("binary scalar operation requires a second operand");
            if a.tag() != b.tag() {
                return Err(FieldError::FieldMismatch(a.tag(), b.tag()));
            }
            Ok(match op {
                ScalarOp::Add => a.add(b),
                ScalarOp::Mul => a.mul(b),
                _ => unreachable!(),
            })
        }
        ScalarOp::Neg | ScalarOp::Inv => {
            assert!(b.is_none(), "unary scalar operation takes no second operand");
            match op {
                ScalarOp::Neg => Ok(a.neg()),
                _ => a.inv(),
            }
        }
    }
}

/// Canonicalize a polynomial fraction into a [`RatFunc`] (reduced, monic
/// denominator).
pub fn ratfunc_canonical(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
    RatFunc::new(num, den)
}

// ---------------------------------------------------------------------------
// Scalar literal parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    S,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex_scalar(text: &str) -> Result<Vec<(Tok, usize)>, FieldError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digit run parses");
                toks.push((Tok::Int(v), start));
            }
            's' => {
                toks.push((Tok::S, i));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            other => return parse_err(i, format!("unexpected character {other:?} in scalar")),
        }
    }
    Ok(toks)
}

struct ScalarParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    saw_s: bool,
}

impl<'a> ScalarParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn polyexpr(&mut self) -> Result<Poly, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, FieldError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, FieldError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::S) => {
                self.saw_s = true;
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    let at = self.here();
                    match self.bump() {
                        Some(Tok::Int(e)) => {
                            let e: u32 = e.try_into().map_err(|_| FieldError::Parse {
                                position: at,
                                message: "exponent too large".into(),
                            })?;
                            Ok(Poly::var().pow(e))
                        }
                        _ => parse_err(at, "expected nonnegative integer exponent after ^"),
                    }
                } else {
                    Ok(Poly::var())
                }
            }
            Some(Tok::Int(n)) => {
                // A rational literal `a/b` is consumed here only when the
                // slash is directly followed by another integer; otherwise
                // the slash belongs to the top-level polynomial division.
                if matches!(self.peek(), Some(Tok::Slash)) && matches!(self.peek2(), Some(Tok::Int(_))) {
                    self.bump();
                    let at = self.here();
                    let Some(Tok::Int(d)) = self.bump() else { unreachable!() };
                    if d.is_zero() {
                        return parse_err(at, "zero denominator in rational literal");
                    }
                    Ok(Poly::constant(Rational::new(n, d)))
                } else {
                    Ok(Poly::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.polyexpr()?;
                let at = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => parse_err(at, "expected closing parenthesis"),
                }
            }
            _ => parse_err(at, "expected a scalar factor"),
        }
    }
}

/// Parse a scalar literal in the grammar
/// `scalar := polyexpr ('/' polyexpr)?` where
/// `polyexpr := term (('+'|'-') term)*`,
/// `term := factor ('*' factor)*`,
/// `factor := 's' ('^' uint)? | rational | '(' polyexpr ')' | '-' factor`.
///
/// The variable `s` is only legal when `tag` is `Qs`.
pub fn parse_scalar(text: &str, tag: FieldTag) -> Result<FieldElem, FieldError> {
    let toks = lex_scalar(text)?;
    let mut p = ScalarParser { toks: &toks, pos: 0, end: text.len(), saw_s: false };
    let num = p.polyexpr()?;
    let den = if matches!(p.peek(), Some(Tok::Slash)) {
        p.bump();
        Some(p.polyexpr()?)
    } else {
        None
    };
    if p.pos != toks.len() {
        return parse_err(p.here(), "trailing input after scalar");
    }
    if p.saw_s && tag != FieldTag::Qs {
        return Err(FieldError::FieldMismatch(FieldTag::Qs, tag));
    }
    match tag {
        FieldTag::Qs => {
            let f = RatFunc::new(num, den.unwrap_or_else(Poly::one))?;
            Ok(FieldElem::Qs(f))
        }
        FieldTag::Q | FieldTag::GFp(_) => {
            // s is excluded above, so both polynomials are constants.
            let n = num.coeff(0);
            let v = match den {
                None => n,
                Some(d) => {
                    let d = d.coeff(0);
                    if d.is_zero() {
                        return Err(FieldError::DivisionByZero);
                    }
                    n / d
                }
            };
            FieldElem::from_rational(tag, &v)
        }
    }
}

// ---------------------------------------------------------------------------
// Scalar formatting
// ---------------------------------------------------------------------------

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let deg = p.degree().unwrap();
    let mut first = true;
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let power = match k {
            0 => String::new(),
            1 => "s".to_string(),
            _ => format!("s^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}*{power}"));
        }
    }
    out
}

/// True when the polynomial prints as a single grammar `factor`
/// (a pure power of `s` or a nonnegative constant), so it may appear on
/// either side of the fraction bar without parentheses.
fn poly_is_simple_factor(p: &Poly) -> bool {
    match p.degree() {
        None => true,
        Some(0) => !p.coeff(0).is_negative(),
        Some(d) => p.coeff(d).is_one() && (0..d).all(|k| p.coeff(k).is_zero()),
    }
}

fn fmt_poly_side(p: &Poly) -> String {
    if poly_is_simple_factor(p) {
        fmt_poly(p)
    } else {
        format!("({})", fmt_poly(p))
    }
}

/// Canonical text for a scalar; `parse_scalar(format_scalar(x), x.tag())`
/// returns `x` exactly.
pub fn format_scalar(x: &FieldElem) -> String {
    match x {
        FieldElem::Q(r) => r.to_string(),
        FieldElem::GFp { r, .. } => r.to_string(),
        FieldElem::Qs(f) => {
            if f.den().is_one() {
                fmt_poly(f.num())
            } else {
                format!("{}/{}", fmt_poly_side(f.num()), fmt_poly_side(f.den()))
            }
        }
    }
}
