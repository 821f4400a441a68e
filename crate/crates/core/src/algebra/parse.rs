//! Map expression parser.
//!
//! Accepts infix sums of monomials (`2*z^2-1`, `(3/5+4/5i)*z^2`, `2z+1`),
//! quotients of parenthesized polynomials (`(z^2+1)/(z-1)`, `1/z`), bracketed
//! coefficient lists in ascending order (`[-1, 0, 1]`) and the canonical JSON
//! form `{"num": [...], "den": [...]}`.
//!
//! A literal `a/b` immediately followed by `i` is one coefficient, so `4/5i`
//! means `(4/5)·i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, CanonicalMap, GaussianRational, Poly, RationalMap};

const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_map(text: &str) -> Result<RationalMap, AlgebraError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let c: CanonicalMap = serde_json::from_str(trimmed)
            .map_err(|e| AlgebraError::Syntax { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
        return RationalMap::from_canonical(&c);
    }
    let (num, den) = if trimmed.starts_with('[') {
        (parse_coeff_list(text)?, Poly::one())
    } else {
        let mut p = Parser::new(text);
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected trailing input"));
        }
        (v.num, v.den)
    };
    RationalMap::new(num, den)
}

/// Parses a constant Gaussian rational such as `3/5+4/5i` or the canonical
/// `"1/2+-3/1 i"`.
pub fn parse_constant(text: &str) -> Result<GaussianRational, AlgebraError> {
    let mut p = Parser::new(text);
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    match (v.num.degree(), v.den.degree()) {
        (None, _) => Ok(GaussianRational::zero()),
        (Some(0), Some(0)) => Ok(&v.num.coeff(0) / &v.den.coeff(0)),
        _ => Err(AlgebraError::Syntax { pos: 0, msg: "expected a constant".into() }),
    }
}

fn parse_coeff_list(text: &str) -> Result<Poly, AlgebraError> {
    let start = text.find('[').unwrap() + 1;
    let end = text
        .rfind(']')
        .ok_or(AlgebraError::Syntax { pos: text.len(), msg: "missing ']'".into() })?;
    if !text[end + 1..].trim().is_empty() {
        return Err(AlgebraError::Syntax { pos: end + 1, msg: "unexpected trailing input".into() });
    }
    let mut coeffs = Vec::new();
    let mut offset = start;
    for piece in text[start..end].split(',') {
        let c = parse_constant(piece).map_err(|e| match e {
            AlgebraError::Syntax { pos, msg } => AlgebraError::Syntax { pos: pos + offset, msg },
            other => other,
        })?;
        coeffs.push(c);
        offset += piece.len() + 1;
    }
    Ok(Poly::new(coeffs))
}

/// Intermediate value: a rational function, unreduced.
#[derive(Clone)]
struct Value {
    num: Poly,
    den: Poly,
}

impl Value {
    fn constant(c: GaussianRational) -> Self {
        Value { num: Poly::constant(c), den: Poly::one() }
    }
    fn add(&self, o: &Value) -> Value {
        if self.den == o.den {
            return Value { num: self.num.add(&o.num), den: self.den.clone() };
        }
        Value { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }
    fn neg(&self) -> Value {
        Value { num: self.num.neg(), den: self.den.clone() }
    }
    fn mul(&self, o: &Value) -> Value {
        Value { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }
    fn div(&self, o: &Value) -> Option<Value> {
        if o.num.is_zero() {
            return None;
        }
        Some(Value { num: self.num.mul(&o.den), den: self.den.mul(&o.num) })
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Value, AlgebraError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).ok_or(AlgebraError::ZeroDenominator)?;
                }
                // implicit multiplication: 2z, 3(z+1), (..)z
                Some(c) if c == 'z' || c == '(' || c == 'i' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value, AlgebraError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let e: u64 = digits.parse().map_err(|_| AlgebraError::Syntax {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            if e > MAX_EXPONENT {
                return Err(AlgebraError::CapExceeded { resource: "exponent", limit: MAX_EXPONENT, requested: e });
            }
            let e = e as u32;
            return Ok(Value { num: base.num.pow(e), den: base.den.pow(e) });
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn primary(&mut self) -> Result<Value, AlgebraError> {
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                Ok(Value { num: Poly::z(), den: Poly::one() })
            }
            Some('i') => {
                self.pos += 1;
                Ok(Value::constant(GaussianRational::i()))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) => Err(self.err(&format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// `digits[.digits][/digits][ i]`
    fn literal(&mut self) -> Result<Value, AlgebraError> {
        let int_part = self.digits();
        let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return Err(self.err("expected digits after '.'"));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            value += BigRational::new(frac.parse::<BigInt>().unwrap(), scale);
        }
        // a/b is one literal only when b is a digit string
        let save = self.pos;
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'/') {
            let slash = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                let den = self.digits();
                let den: BigInt = den.parse().unwrap();
                if den.is_zero() {
                    return Err(AlgebraError::ZeroDenominator);
                }
                value /= BigRational::from_integer(den);
            } else {
                self.pos = slash;
            }
        } else {
            self.pos = save;
        }
        let save = self.pos;
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'i') {
            self.pos += 1;
            return Ok(Value::constant(GaussianRational::new(BigRational::zero(), value)));
        }
        self.pos = save;
        if value.is_one() {
            return Ok(Value::constant(GaussianRational::one()));
        }
        Ok(Value::constant(GaussianRational::from_rational(value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Caps;

    #[test]
    fn spec_forms() {
        let f = parse_map("z^2-1").unwrap();
        assert_eq!(f.as_poly().unwrap(), Poly::from_ints(&[-1, 0, 1]));
        let g = parse_map("(3/5+4/5i)*z^2").unwrap();
        let m = g.to_monomial().unwrap();
        assert_eq!(m.degree, 2);
        assert_eq!(m.coef.materialize(&Caps::default()).unwrap(), GaussianRational::from_parts(3, 5, 4, 5));
        let h = parse_map("1/z").unwrap();
        assert_eq!(h.num().unwrap(), Poly::from_ints(&[1]));
        assert_eq!(h.den(), Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn coefficient_literals() {
        assert_eq!(parse_constant("4/5i").unwrap(), GaussianRational::from_parts(0, 1, 4, 5));
        assert_eq!(parse_constant("4/5 i").unwrap(), GaussianRational::from_parts(0, 1, 4, 5));
        assert_eq!(parse_constant("1/2+-3/1 i").unwrap(), GaussianRational::from_parts(1, 2, -3, 1));
        assert_eq!(parse_constant("2.5").unwrap(), GaussianRational::from_ratio(5, 2));
    }

    #[test]
    fn list_and_json_forms() {
        let a = parse_map("[-1, 0, 1]").unwrap();
        assert_eq!(a, parse_map("z^2-1").unwrap());
        let j = r#"{"num":["1/1+0/1 i"],"den":["0/1+0/1 i","1/1+0/1 i"]}"#;
        assert_eq!(parse_map(j).unwrap(), parse_map("1/z").unwrap());
    }

    #[test]
    fn errors_report_position() {
        match parse_map("z^2+*3") {
            Err(AlgebraError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_map("7").unwrap_err(), AlgebraError::ConstantMap);
        assert_eq!(parse_map("z/0").unwrap_err(), AlgebraError::ZeroDenominator);
        assert!(matches!(parse_map("z^2)"), Err(AlgebraError::Syntax { pos: 3, .. })));
    }
}
