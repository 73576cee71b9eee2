//! Parser for the `name` / `name(a,b,...)` identifiers used to select
//! built-in domains and boundary data.

use crate::error::{Error, Result};

/// A parsed `name(arg, ...)` call. Arguments are plain decimal numbers.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Call {
    pub name: String,
    pub args: Vec<f64>,
}

impl Call {
    pub fn parse(kind: &'static str, spec: &str) -> Result<Call> {
        let malformed = |reason: &str| Error::Malformed {
            kind,
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let text = spec.trim();
        let (name, rest) = match text.find('(') {
            Some(open) => {
                let inner = text[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| malformed("missing closing parenthesis"))?;
                (&text[..open], Some(inner))
            }
            None => (text, None),
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(malformed("expected an identifier"));
        }
        let args = match rest {
            None => Vec::new(),
            Some(inner) if inner.trim().is_empty() => Vec::new(),
            Some(inner) => inner
                .split(',')
                .map(|a| {
                    let a = a.trim();
                    a.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| malformed(&format!("`{a}` is not a finite number")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Call {
            name: name.to_string(),
            args,
        })
    }

    pub fn expect_arity(&self, kind: &'static str, arity: usize) -> Result<()> {
        if self.args.len() == arity {
            Ok(())
        } else {
            Err(Error::Malformed {
                kind,
                spec: self.to_string(),
                reason: format!("`{}` takes {} argument(s), got {}", self.name, arity, self.args.len()),
            })
        }
    }
}

impl std::fmt::Display for Call {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

/// Reads a non-negative integer argument such as a mode number.
pub(crate) fn integer_arg(what: &str, value: f64) -> Result<u32> {
    if value < 0.0 {
        return Err(Error::Parameter(format!("{what} must be non-negative, got {value}")));
    }
    if value.fract() != 0.0 || value > f64::from(u32::MAX) {
        return Err(Error::Parameter(format!("{what} must be an integer, got {value}")));
    }
    Ok(value as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bare_and_called_names() {
        assert_eq!(
            Call::parse("domain", "l_shape").unwrap(),
            Call { name: "l_shape".into(), args: vec![] }
        );
        let c = Call::parse("domain", " annulus( 0.05 , 1 ) ").unwrap();
        assert_eq!(c.name, "annulus");
        assert_eq!(c.args, vec![0.05, 1.0]);
        assert_eq!(c.to_string(), "annulus(0.05,1)");
    }

    #[test]
    fn rejects_garbage() {
        assert!(Call::parse("domain", "disc(1").is_err());
        assert!(Call::parse("domain", "disc(x)").is_err());
        assert!(Call::parse("domain", "").is_err());
        assert!(Call::parse("domain", "di sc").is_err());
        assert!(Call::parse("domain", "disc(inf)").is_err());
    }

    #[test]
    fn integer_args() {
        assert_eq!(integer_arg("m", 3.0).unwrap(), 3);
        assert!(integer_arg("m", -1.0).is_err());
        assert!(integer_arg("m", 1.5).is_err());
    }
}
