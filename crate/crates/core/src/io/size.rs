use std::collections::HashSet;

use super::{tokenize, Cursor, ParseError};
use crate::size::{BaseSize, Evidence, SizeExpr, SizeScript, Statement, RESERVED_NAMES};

pub fn parse_size_script(text: &str, file: &str) -> Result<SizeScript, ParseError> {
    let lines = tokenize(text, file)?;
    let mut script = SizeScript::default();
    let mut declared: HashSet<String> = HashSet::new();
    for line in &lines {
        let mut c = line.cursor();
        c.pos = 1;
        let known = |c: &Cursor<'_>, name: &str, declared: &HashSet<String>| {
            if declared.contains(name) {
                Ok(())
            } else {
                Err(c.error(format!("unknown name `{name}`")))
            }
        };
        let st = match line.keyword() {
            "let" => {
                let name = name(&mut c)?;
                if RESERVED_NAMES.contains(&name.as_str()) {
                    return Err(line.error_at(1, format!("`{name}` is a reserved name")));
                }
                if declared.contains(&name) {
                    return Err(line.error_at(1, format!("duplicate declaration of `{name}`")));
                }
                c.expect("=")?;
                let st = match c.peek() {
                    Some("set") if c.pos + 1 == line.tokens.len() => Statement::Declare {
                        name: name.clone(),
                        size: BaseSize::Set,
                    },
                    Some("W") if c.pos + 1 == line.tokens.len() => Statement::Declare {
                        name: name.clone(),
                        size: BaseSize::W,
                    },
                    _ => Statement::Let {
                        name: name.clone(),
                        expr: expr(&mut c, &declared)?,
                    },
                };
                if matches!(st, Statement::Declare { .. }) {
                    c.pos += 1;
                }
                declared.insert(name);
                st
            }
            "inject" => {
                let from = name(&mut c)?;
                known(&c, &from, &declared).map_err(|mut e| {
                    e.span = line.span(1);
                    e
                })?;
                c.expect("->")?;
                let at = c.pos;
                let to = name(&mut c)?;
                known(&c, &to, &declared).map_err(|mut e| {
                    e.span = line.span(at);
                    e
                })?;
                Statement::Inject { from, to }
            }
            "size" => {
                let n = name(&mut c)?;
                known(&c, &n, &declared).map_err(|mut e| {
                    e.span = line.span(1);
                    e
                })?;
                Statement::Query { name: n }
            }
            other => return Err(line.error_at(0, format!("malformed line: unknown keyword `{other}`"))),
        };
        c.finish()?;
        script.statements.push(st);
    }
    Ok(script)
}

fn name(c: &mut Cursor<'_>) -> Result<String, ParseError> {
    Ok(c.id()?.to_string())
}

const FUNCTIONS: [&str; 7] = ["product", "union", "fnspace", "powerset", "subdomain", "quotient", "morph"];

fn expr(c: &mut Cursor<'_>, declared: &HashSet<String>) -> Result<SizeExpr, ParseError> {
    let start = c.pos;
    let word = name(c)?;
    if !FUNCTIONS.contains(&word.as_str()) || c.peek() != Some("(") {
        if !declared.contains(&word) {
            c.pos = start;
            return Err(c.error(format!("unknown name `{word}`")));
        }
        return Ok(SizeExpr::Name(word));
    }
    c.expect("(")?;
    let binary = |c: &mut Cursor<'_>, sep: &str| -> Result<(Box<SizeExpr>, Box<SizeExpr>), ParseError> {
        let a = expr(c, declared)?;
        c.expect(sep)?;
        let b = expr(c, declared)?;
        c.expect(")")?;
        Ok((Box::new(a), Box::new(b)))
    };
    let e = match word.as_str() {
        "product" => {
            let (a, b) = binary(c, ",")?;
            SizeExpr::Product(a, b)
        }
        "fnspace" => {
            let (a, b) = binary(c, ",")?;
            SizeExpr::FnSpace(a, b)
        }
        "union" => {
            let (index, fiber) = binary(c, ";")?;
            let cofinal = c.peek() == Some("cofinal");
            if cofinal {
                c.pos += 1;
            }
            SizeExpr::Union { index, fiber, cofinal }
        }
        _ => {
            let a = Box::new(expr(c, declared)?);
            c.expect(")")?;
            match word.as_str() {
                "powerset" => SizeExpr::Powerset(a),
                "quotient" => SizeExpr::Quotient(a),
                "morph" => SizeExpr::Morph(a),
                _ => {
                    let ev = match c.peek() {
                        Some("bounded") => Evidence::Bounded,
                        Some("cofinal") => Evidence::Cofinal,
                        _ => Evidence::None,
                    };
                    if ev != Evidence::None {
                        c.pos += 1;
                    }
                    SizeExpr::Subdomain(a, ev)
                }
            }
        }
    };
    Ok(e)
}

pub fn emit_size_script(s: &SizeScript) -> String {
    s.statements.iter().map(|st| format!("{st}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "let a = set\nlet w = W\nlet p = product(a,powerset(a))\nlet u = union(w;a) cofinal\n\
                    let s = subdomain(subdomain(w) bounded)\nlet m = morph(fnspace(a,w))\ninject a -> w\nsize p\n";
        let s = parse_size_script(text, "s").unwrap();
        assert_eq!(s.statements.len(), 8);
        assert_eq!(emit_size_script(&s), text);
        let spaced = parse_size_script("let a = set\nlet p = product( a , a )  # c\n", "s").unwrap();
        assert_eq!(emit_size_script(&spaced), "let a = set\nlet p = product(a,a)\n");
    }

    #[test]
    fn errors() {
        let e = parse_size_script("let a = set\nlet p = product(a,b)\n", "s.size").unwrap_err();
        assert_eq!(e.to_string(), "s.size:2:19: unknown name `b`");
        assert!(parse_size_script("let a = set\nlet a = W\n", "s").is_err());
        assert!(parse_size_script("let W = set\n", "s").is_err());
        assert!(parse_size_script("let a = set\nsize b\n", "s").is_err());
        assert!(parse_size_script("let a = set\nlet p = product(a;a)\n", "s").is_err());
        assert!(parse_size_script("let a = set extra\n", "s").is_err());
    }
}
