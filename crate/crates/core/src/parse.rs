//! Text and JSON input for ideals.
//!
//! ```text
//! ideal     := generator (',' generator)*
//! generator := factor ('*' factor)*
//! factor    := 'x' NAT ('^' NAT)?
//! ```
//!
//! Whitespace is insignificant and an optional header `vars: NAT;` may
//! precede the generators. Variables are written 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};

/// Largest accepted variable index.
pub const MAX_VARIABLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDocument {
    /// Explicit ambient size from the header or JSON.
    pub vars: Option<usize>,
    pub nvars: usize,
    /// Generators as written, before minimization.
    pub generators: Vec<Monomial>,
    pub source: Source,
}

impl IdealDocument {
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::from_generators(self.nvars, self.generators.iter().cloned())
    }
}

/// Parses either format; input starting with `{` is read as JSON.
pub fn parse_document(input: &str) -> Result<IdealDocument> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_ideal(input)
    }
}

pub fn parse_ideal(text: &str) -> Result<IdealDocument> {
    Parser::new(text).document()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonIdeal {
    vars: usize,
    generators: Vec<Vec<Exp>>,
}

pub fn parse_json(text: &str) -> Result<IdealDocument> {
    let raw: JsonIdeal = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if raw.vars > MAX_VARIABLES {
        return Err(Error::Json(format!("at most {MAX_VARIABLES} variables are supported")));
    }
    if raw.generators.is_empty() {
        return Err(Error::Json("an ideal needs at least one generator".into()));
    }
    let mut generators = Vec::with_capacity(raw.generators.len());
    for (k, row) in raw.generators.into_iter().enumerate() {
        if row.len() != raw.vars {
            return Err(Error::Json(format!(
                "generator {} has {} exponents, expected {}",
                k + 1,
                row.len(),
                raw.vars
            )));
        }
        generators.push(Monomial::from_exponents(row));
    }
    Ok(IdealDocument {
        vars: Some(raw.vars),
        nvars: raw.vars,
        generators,
        source: Source::Json,
    })
}

/// Canonical text form with an explicit header; parses back to an equal ideal.
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    format!("vars: {};\n{}\n", ideal.nvars(), ideal)
}

pub fn render_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(ideal).expect("ideal serializes")
}

/// Parses a single monomial such as `x2^4*x3^4` or `1` in a ring with
/// `nvars` variables.
pub fn parse_monomial(text: &str, nvars: usize) -> Result<Monomial> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.peek() == Some('1') {
        p.bump();
        p.skip_ws();
        p.expect_end()?;
        return Ok(Monomial::one(nvars));
    }
    let factors = p.generator()?;
    p.skip_ws();
    p.expect_end()?;
    if let Some(&(v, _)) = factors.iter().max_by_key(|f| f.0) {
        if v >= nvars {
            return Err(Error::VariableOutOfRange { index: v + 1, nvars });
        }
    }
    Monomial::from_factors(nvars, &factors)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            });
        }
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("number too large"))?;
            self.bump();
        }
        Ok(value)
    }

    fn header(&mut self) -> Result<Option<usize>> {
        self.skip_ws();
        if self.peek() != Some('v') {
            return Ok(None);
        }
        for want in "vars".chars() {
            if self.peek() != Some(want) {
                return Err(self.error("expected header 'vars:'"));
            }
            self.bump();
        }
        self.expect(':')?;
        let (line, column) = (self.line, self.column);
        let n = self.nat()?;
        if n == 0 || n > MAX_VARIABLES as u64 {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("vars must be between 1 and {MAX_VARIABLES}"),
            });
        }
        self.expect(';')?;
        Ok(Some(n as usize))
    }

    /// Factors of one generator as 0-based `(variable, exponent)`.
    fn generator(&mut self) -> Result<Vec<(usize, Exp)>> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                return Ok(factors);
            }
            self.bump();
            factors.push(self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<(usize, Exp)> {
        self.expect('x')?;
        let (line, column) = (self.line, self.column);
        let index = self.nat()?;
        if index == 0 {
            return Err(Error::Syntax {
                line,
                column,
                message: "variables are numbered from 1".into(),
            });
        }
        if index > MAX_VARIABLES as u64 {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("variable index above {MAX_VARIABLES}"),
            });
        }
        self.skip_ws();
        let exp = if self.peek() == Some('^') {
            self.bump();
            let (line, column) = (self.line, self.column);
            let e = self.nat()?;
            Exp::try_from(e).map_err(|_| Error::Syntax {
                line,
                column,
                message: format!("exponent above {}", Exp::MAX),
            })?
        } else {
            1
        };
        Ok((index as usize - 1, exp))
    }

    fn document(&mut self) -> Result<IdealDocument> {
        let vars = self.header()?;
        let mut raw = vec![self.generator()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(',') => {
                    self.bump();
                    raw.push(self.generator()?);
                }
                Some(c) => return Err(self.error(format!("expected ',' or end of input, found '{c}'"))),
            }
        }
        let max_index = raw.iter().flatten().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let nvars = match vars {
            Some(n) if n < max_index => {
                return Err(Error::VariableOutOfRange {
                    index: max_index,
                    nvars: n,
                })
            }
            Some(n) => n,
            None => max_index,
        };
        let generators = raw
            .iter()
            .map(|f| Monomial::from_factors(nvars, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealDocument {
            vars,
            nvars,
            generators,
            source: Source::Text,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_weighted_path() {
        let doc = parse_ideal("x1*x2^2, x2*x3, x3^2*x4").unwrap();
        let expected = MonomialIdeal::from_exponent_rows(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]]).unwrap();
        assert_eq!(doc.nvars, 4);
        assert_eq!(doc.to_ideal().unwrap(), expected);
    }

    #[test]
    fn single_variable_and_unit() {
        let doc = parse_ideal("x1").unwrap();
        assert_eq!((doc.nvars, doc.generators.len()), (1, 1));
        let unit = parse_ideal("x1^0").unwrap();
        assert!(unit.generators[0].is_one());
        assert!(unit.to_ideal().unwrap().is_unit());
    }

    #[test]
    fn header_and_whitespace() {
        let doc = parse_ideal("vars : 5 ;\n x1 * x2 ^ 3 ,\n\tx4").unwrap();
        assert_eq!((doc.vars, doc.nvars), (Some(5), 5));
        assert_eq!(doc.generators[0].exponents(), &[1, 3, 0, 0, 0]);
        assert!(matches!(parse_ideal("vars: 2; x3"), Err(Error::VariableOutOfRange { index: 3, nvars: 2 })));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_ideal("x1*x0").unwrap_err(),
            Error::Syntax {
                line: 1,
                column: 5,
                message: "variables are numbered from 1".into()
            }
        );
        match parse_ideal("x1,\nx2*y3").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 4)),
            e => panic!("{e}"),
        }
        assert!(parse_ideal("").is_err());
        assert!(parse_ideal("x1,").is_err());
        assert!(parse_ideal("x1^70000").is_err());
        assert!(parse_ideal("x1 x2").is_err());
    }

    #[test]
    fn json_input() {
        let doc = parse_document(r#"{"vars": 3, "generators": [[1,1,0],[0,2,1]]}"#).unwrap();
        assert_eq!(doc.source, Source::Json);
        assert_eq!(doc.to_ideal().unwrap().len(), 2);
        assert!(matches!(parse_json(r#"{"vars": 3, "generators": [[1,1]]}"#), Err(Error::Json(_))));
        assert!(matches!(parse_json(r#"{"vars": 3, "generators": [[1,-1,0]]}"#), Err(Error::Json(_))));
        assert!(matches!(parse_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_monomial("x2^4*x3^4", 4).unwrap().exponents(), &[0, 4, 4, 0]);
        assert!(parse_monomial("1", 2).unwrap().is_one());
        assert!(parse_monomial("x5", 4).is_err());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(rows in proptest::collection::vec(proptest::collection::vec(0u16..4, 4), 1..6)) {
            let gens: Vec<Monomial> = rows.into_iter().map(Monomial::from_exponents).collect();
            let ideal = MonomialIdeal::from_generators(4, gens).unwrap();
            prop_assume!(!ideal.is_unit());
            let text = render_ideal(&ideal);
            prop_assert_eq!(parse_ideal(&text).unwrap().to_ideal().unwrap(), ideal.clone());
            prop_assert_eq!(parse_document(&render_json(&ideal)).unwrap().to_ideal().unwrap(), ideal);
        }
    }
}
