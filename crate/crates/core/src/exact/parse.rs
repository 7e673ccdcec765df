//! Text form of [`LaurentPoly`].
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := rational | var ['^' integer] | '(' expression ')' ['^' integer]
//! rational   := integer ['/' positive-integer]
//! ```
//!
//! Whitespace is insignificant. Printing emits terms in descending graded lex
//! order, so `parse(print(p)) == p` and `print(parse(s))` canonicalizes `s`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational, Ring};

pub fn poly_parse(text: &str, ring: &Arc<Ring>) -> Result<LaurentPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expression()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

pub fn poly_print(p: &LaurentPoly) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.ring);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                match self.exponent()? {
                    Some(k) => inner.pow(k),
                    None => Ok(inner),
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(LaurentPoly::constant(self.ring, q))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let name = self.identifier();
                let idx = self.ring.index_of(&name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                let k = self.exponent()?.unwrap_or(1);
                let mut e = vec![0i32; self.ring.nvars()];
                e[idx] = i32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
                LaurentPoly::monomial(self.ring, &e, 1)
            }
            Some(_) => Err(self.err("expected a factor")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let num = self.digits()?;
        if self.eat(b'/') {
            let den = self.digits()?;
            if den == BigInt::from(0) {
                let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                return Err(Error::MalformedRational(text.trim().to_string()));
            }
            Ok(Rational::from_big(num, den))
        } else {
            Ok(Rational::from_bigint(num))
        }
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if !self.eat(b'^') {
            return Ok(None);
        }
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits()?;
        let k: i64 = d.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(Some(if neg { -k } else { k }))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.ring().vars();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = e
                .iter()
                .zip(vars)
                .filter(|(k, _)| **k != 0)
                .map(|(&k, v)| if k == 1 { v.name.clone() } else { format!("{}^{}", v.name, k) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::VarSpec;

    fn v_ring() -> Arc<Ring> {
        Ring::laurent(&["v"]).unwrap()
    }

    #[test]
    fn three_terms() {
        let p = poly_parse("(v^-1) - 2 + 3*v^2", &v_ring()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "3*v^2 - 2 + v^-1");
    }

    #[test]
    fn generator_f10() {
        let r = v_ring();
        let p = poly_parse("1/8*v - 1/8", &r).unwrap();
        let v = LaurentPoly::var(&r, "v").unwrap();
        let expected = (&v - &LaurentPoly::one(&r)).scale(&Rational::new(1, 8));
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "1/8*v - 1/8");
    }

    #[test]
    fn nilpotent_literal_vanishes() {
        let r = Ring::new(vec![VarSpec::nilpotent("x", 2)]).unwrap();
        assert!(poly_parse("x^2", &r).unwrap().is_zero());
        assert_eq!(poly_parse("x + x^3", &r).unwrap().to_string(), "x");
    }

    #[test]
    fn errors() {
        let r = v_ring();
        assert!(matches!(poly_parse("w + 1", &r), Err(Error::UnknownVariable(w)) if w == "w"));
        assert!(matches!(poly_parse("1/0*v", &r), Err(Error::MalformedRational(_))));
        let pr = Ring::polynomial(&["xi"]).unwrap();
        assert!(matches!(poly_parse("xi^-2", &pr), Err(Error::BadExponent { .. })));
        assert!(matches!(poly_parse("v +", &r), Err(Error::Parse { .. })));
        assert!(matches!(poly_parse("v v", &r), Err(Error::Parse { .. })));
        assert!(matches!(poly_parse("(v - 1", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn multivariate_print_order() {
        let r = Ring::new(vec![VarSpec::laurent("beta"), VarSpec::polynomial("xi")]).unwrap();
        let p = poly_parse("-8*xi + beta*xi^3 - 1/2", &r).unwrap();
        assert_eq!(p.to_string(), "beta*xi^3 - 8*xi - 1/2");
        assert_eq!(poly_parse(&p.to_string(), &r).unwrap(), p);
        assert_eq!(poly_parse("-(beta - 1)^2", &r).unwrap().to_string(), "-beta^2 + 2*beta - 1");
    }
}
