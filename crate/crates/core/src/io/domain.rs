use std::collections::HashSet;

use thiserror::Error;

use super::{expect_header, tokenize, ParseError, SourceSpan};
use crate::constructions::{ConstructionError, FnMap};
use crate::domain::{make_domain, ElementId, EqualityPairing, FiniteCollection, LogicalDomain};

#[derive(Debug, Clone)]
pub struct NamedDomain {
    pub name: String,
    pub domain: LogicalDomain,
}

pub fn parse_domain(text: &str, file: &str) -> Result<NamedDomain, ParseError> {
    let lines = tokenize(text, file)?;
    let header = expect_header(&lines, "domain", file)?;
    let mut c = header.cursor();
    c.expect("domain")?;
    let name = c.id()?;
    c.finish()?;

    let mut elements = Vec::new();
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    for line in &lines[1..] {
        let mut c = line.cursor();
        c.pos = 1;
        match line.keyword() {
            "elements" => {
                c.expect(":")?;
                while !c.at_end() {
                    let (x, pos) = c.id_with_pos()?;
                    if !seen.insert(x.clone()) {
                        return Err(line.error_at(pos, format!("duplicate element `{x}`")));
                    }
                    elements.push(x);
                }
            }
            "relate" => {
                let (x, xpos) = c.id_with_pos()?;
                let (y, ypos) = c.id_with_pos()?;
                c.finish()?;
                for (e, p) in [(&x, xpos), (&y, ypos)] {
                    if !seen.contains(e) {
                        return Err(line.error_at(p, format!("unknown element `{e}`")));
                    }
                }
                pairs.push((x, y));
            }
            other => return Err(line.error_at(0, format!("malformed line: unknown keyword `{other}`"))),
        }
    }
    let carrier = FiniteCollection::new(elements).expect("elements checked for duplicates");
    let pairing = EqualityPairing::closure(carrier.clone(), &pairs).expect("related elements checked");
    let domain = make_domain(carrier, Some(pairing)).expect("a closure satisfies the laws");
    Ok(NamedDomain {
        name: name.to_string(),
        domain,
    })
}

/// `relate x r` for every element that is not its own representative.
pub fn emit_domain(d: &NamedDomain) -> String {
    let mut out = format!("domain {}\nelements:", d.name);
    for x in d.domain.carrier().ids() {
        out.push(' ');
        out.push_str(x.as_str());
    }
    out.push('\n');
    for x in d.domain.carrier().ids() {
        let r = d.domain.canonical(x).expect("carrier element");
        if r != x {
            out.push_str(&format!("relate {x} {r}\n"));
        }
    }
    out
}

/// An unresolved map file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub sends: Vec<(ElementId, ElementId)>,
    pub header_span: SourceSpan,
    /// Span of each `send` line's source id.
    pub send_spans: Vec<SourceSpan>,
}

pub fn parse_map(text: &str, file: &str) -> Result<MapDoc, ParseError> {
    let lines = tokenize(text, file)?;
    let header = expect_header(&lines, "map", file)?;
    let mut c = header.cursor();
    c.expect("map")?;
    let name = c.id()?;
    c.expect(":")?;
    let source = c.id()?;
    c.expect("->")?;
    let target = c.id()?;
    c.finish()?;
    let mut doc = MapDoc {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        sends: Vec::new(),
        header_span: header.span(0),
        send_spans: Vec::new(),
    };
    let mut seen = HashSet::new();
    for line in &lines[1..] {
        if line.keyword() != "send" {
            return Err(line.error_at(0, format!("malformed line: unknown keyword `{}`", line.keyword())));
        }
        let mut c = line.cursor();
        c.pos = 1;
        let (x, pos) = c.id_with_pos()?;
        c.expect("->")?;
        let y = c.id()?;
        c.finish()?;
        if !seen.insert(x.clone()) {
            return Err(line.error_at(pos, format!("duplicate assignment for `{x}`")));
        }
        doc.sends.push((x, y));
        doc.send_spans.push(line.span(pos));
    }
    Ok(doc)
}

pub fn emit_map_doc(m: &MapDoc) -> String {
    let mut out = format!("map {} : {} -> {}\n", m.name, m.source, m.target);
    for (x, y) in &m.sends {
        out.push_str(&format!("send {x} -> {y}\n"));
    }
    out
}

/// Canonical map text: every source element, in carrier order, sent to a
/// target representative.
pub fn emit_map(name: &str, source_name: &str, target_name: &str, f: &FnMap) -> String {
    let mut out = format!("map {name} : {source_name} -> {target_name}\n");
    for x in f.source().carrier().ids() {
        out.push_str(&format!("send {x} -> {}\n", f.apply(x).expect("total map")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Binds a map file to its domains. Unknown elements and missing
/// assignments are parse errors; ill-defined maps are construction errors.
pub fn resolve_map(doc: &MapDoc, source: &NamedDomain, target: &NamedDomain) -> Result<FnMap, ResolveError> {
    let at = |span: &SourceSpan, reason: String| ParseError {
        span: span.clone(),
        reason,
    };
    for (expected, got) in [(&doc.source, &source.name), (&doc.target, &target.name)] {
        if expected != got {
            return Err(at(&doc.header_span, format!("map refers to domain `{expected}`, given `{got}`")).into());
        }
    }
    for ((x, y), span) in doc.sends.iter().zip(&doc.send_spans) {
        if !source.domain.carrier().contains(x) {
            return Err(at(span, format!("unknown element `{x}`")).into());
        }
        if !target.domain.carrier().contains(y) {
            return Err(at(span, format!("unknown element `{y}`")).into());
        }
    }
    let assigned: HashSet<&ElementId> = doc.sends.iter().map(|(x, _)| x).collect();
    if let Some(x) = source.domain.carrier().ids().iter().find(|x| !assigned.contains(x)) {
        return Err(at(&doc.header_span, format!("missing assignment for `{x}`")).into());
    }
    Ok(FnMap::new(source.domain.clone(), target.domain.clone(), doc.sends.iter().cloned())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIRS: &str = "domain d\nelements: a b c d\nrelate c a\nrelate d b\n";

    #[test]
    fn domain_round_trip() {
        let d = parse_domain(PAIRS, "d").unwrap();
        assert_eq!(d.domain.rep_count(), 2);
        assert_eq!(emit_domain(&d), PAIRS);
        let messy = parse_domain("domain d\nelements: a b\nelements: c d\nrelate a c\nrelate b d # x\n", "d").unwrap();
        assert_eq!(emit_domain(&messy), PAIRS);
    }

    #[test]
    fn domain_errors() {
        let e = parse_domain("domain d\nelements: a\nrelate a z\n", "d.dom").unwrap_err();
        assert_eq!(e.to_string(), "d.dom:3:10: unknown element `z`");
        assert!(parse_domain("domain d\nelements: a a\n", "d").is_err());
        assert!(parse_domain("domain d\ndomain e\n", "d").is_err());
    }

    #[test]
    fn maps_resolve_and_check_totality() {
        let a = parse_domain(PAIRS, "a").unwrap();
        let b = NamedDomain {
            name: "b".into(),
            domain: LogicalDomain::from_tokens(["x", "y"]).unwrap(),
        };
        let text = "map f : d -> b\nsend a -> x\nsend b -> y\nsend c -> x\nsend d -> y\n";
        let doc = parse_map(text, "f").unwrap();
        assert_eq!(emit_map_doc(&doc), text);
        let f = resolve_map(&doc, &a, &b).unwrap();
        assert_eq!(emit_map("f", "d", "b", &f), text);

        let partial = parse_map("map f : d -> b\nsend a -> x\n", "f").unwrap();
        let err = resolve_map(&partial, &a, &b).unwrap_err();
        assert!(matches!(err, ResolveError::Parse(ref p) if p.reason == "missing assignment for `b`"));

        let bad = parse_map("map f : d -> b\nsend a -> x\nsend b -> y\nsend c -> y\nsend d -> y\n", "f").unwrap();
        assert!(matches!(resolve_map(&bad, &a, &b), Err(ResolveError::Construction(_))));
    }
}
