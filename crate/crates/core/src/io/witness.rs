use std::collections::HashSet;
use std::sync::Arc;

use super::{expect_header, tokenize, ParseError};
use crate::category::{validate_functor, Category, Functor, FunctorSpec, NatViolation, NaturalTransformation};
use crate::domain::ElementId;
use crate::skeleton::{verify_skeleton, SkeletonError, SkeletonResult};

/// The witness file written next to an emitted skeleton: `s`, `q` and the
/// components of `θ₂ : id ⇒ s∘q`, all by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessDoc {
    pub skeleton: String,
    pub category: String,
    pub s: FunctorSpec,
    pub q: FunctorSpec,
    pub theta2: Vec<(ElementId, ElementId)>,
}

pub fn parse_witnesses(text: &str, file: &str) -> Result<WitnessDoc, ParseError> {
    let lines = tokenize(text, file)?;
    let header = expect_header(&lines, "witnesses", file)?;
    let mut c = header.cursor();
    c.expect("witnesses")?;
    let skeleton = c.id()?.to_string();
    c.expect("->")?;
    let category = c.id()?.to_string();
    c.finish()?;
    let mut doc = WitnessDoc {
        skeleton,
        category,
        ..WitnessDoc::default()
    };
    let mut seen: HashSet<(String, String, ElementId)> = HashSet::new();
    for line in &lines[1..] {
        let mut c = line.cursor();
        let which = line.keyword().to_string();
        c.pos = 1;
        let kind = if which == "theta2" {
            "object".to_string()
        } else {
            let k = c.peek().unwrap_or("").to_string();
            if k != "object" && k != "morph" {
                return Err(c.error("expected `object` or `morph`"));
            }
            c.pos += 1;
            k
        };
        let (x, pos) = c.id_with_pos()?;
        c.expect("=")?;
        let y = c.id()?;
        c.finish()?;
        if !seen.insert((which.clone(), kind.clone(), x.clone())) {
            return Err(line.error_at(pos, format!("duplicate assignment for `{x}`")));
        }
        match (which.as_str(), kind.as_str()) {
            ("s", "object") => doc.s.object_map.push((x, y)),
            ("s", _) => doc.s.morph_map.push((x, y)),
            ("q", "object") => doc.q.object_map.push((x, y)),
            ("q", _) => doc.q.morph_map.push((x, y)),
            ("theta2", _) => doc.theta2.push((x, y)),
            (other, _) => return Err(line.error_at(0, format!("malformed line: unknown keyword `{other}`"))),
        }
    }
    Ok(doc)
}

pub(crate) fn emit_witness_doc(w: &WitnessDoc) -> String {
    let mut out = format!("witnesses {} -> {}\n", w.skeleton, w.category);
    for (name, f) in [("s", &w.s), ("q", &w.q)] {
        for (x, y) in &f.object_map {
            out.push_str(&format!("{name} object {x} = {y}\n"));
        }
        for (x, y) in &f.morph_map {
            out.push_str(&format!("{name} morph {x} = {y}\n"));
        }
    }
    for (x, m) in &w.theta2 {
        out.push_str(&format!("theta2 {x} = {m}\n"));
    }
    out
}

pub fn emit_witnesses(r: &SkeletonResult) -> String {
    let a = r.category();
    let doc = WitnessDoc {
        skeleton: r.skeleton.name().to_string(),
        category: a.name().to_string(),
        s: r.s.to_spec(),
        q: r.q.to_spec(),
        theta2: (0..a.object_count())
            .map(|o| (a.object_id(o).clone(), a.morph_id(r.theta2.component(o)).clone()))
            .collect(),
    };
    emit_witness_doc(&doc)
}

#[derive(Debug, Clone)]
pub struct Witnesses {
    pub s: Functor,
    pub q: Functor,
    pub theta2: NaturalTransformation,
}

/// Binds a witness file to `a` and its skeleton and re-checks everything the
/// file claims.
pub fn resolve_witnesses(doc: &WitnessDoc, a: &Arc<Category>, skeleton: &Arc<Category>) -> Result<Witnesses, SkeletonError> {
    if doc.category != a.name() || doc.skeleton != skeleton.name() {
        return Err(SkeletonError::Mismatch("witness file names other categories"));
    }
    let s = validate_functor(skeleton, a, &doc.s)?;
    verify_skeleton(a, &s)?;
    let q = validate_functor(a, skeleton, &doc.q)?;
    if s.then(&q)? != Functor::identity(skeleton) {
        return Err(SkeletonError::QsNotIdentity);
    }
    let mut comps = vec![usize::MAX; a.object_count()];
    for (x, m) in &doc.theta2 {
        match (a.objects().index_of(x), a.morph_index_of(m)) {
            (Some(o), Some(k)) => comps[o] = k,
            _ => return Err(SkeletonError::Mismatch("unknown id in theta2 component")),
        }
    }
    if let Some(o) = comps.iter().position(|&k| k == usize::MAX) {
        return Err(SkeletonError::ComponentNotInvertible {
            object: a.object_id(o).clone(),
        });
    }
    let theta2 = NaturalTransformation::new(Functor::identity(a), q.then(&s)?, comps).map_err(|e| match e {
        NatViolation::NotNatural { morphism } => SkeletonError::NotNatural { morphism },
        other => SkeletonError::Nat(other),
    })?;
    if !theta2.is_natural_equivalence() {
        return Err(SkeletonError::Mismatch("theta2 is not a natural equivalence"));
    }
    for x in 0..skeleton.object_count() {
        let o = s.on_object(x);
        if theta2.component(o) != a.identity(o) {
            return Err(SkeletonError::ImageComponentNotIdentity {
                object: a.object_id(o).clone(),
            });
        }
    }
    Ok(Witnesses { s, q, theta2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::TieBreak;
    use crate::io::{emit_category, parse_category};
    use crate::category::validate_category;
    use crate::samples;
    use crate::skeleton::build_skeleton;

    #[test]
    fn witnesses_round_trip_and_resolve() {
        for c in samples::corpus() {
            let a = Arc::new(c);
            for tb in [TieBreak::Lex, TieBreak::Seed(7)] {
                let r = build_skeleton(&a, tb).unwrap();
                let text = emit_witnesses(&r);
                let doc = parse_witnesses(&text, "w").unwrap();
                assert_eq!(emit_witness_doc(&doc), text);
                let skel_text = emit_category(&r.skeleton);
                let sk = Arc::new(validate_category(&parse_category(&skel_text, "s").unwrap()).unwrap());
                let w = resolve_witnesses(&doc, &a, &sk).unwrap();
                assert_eq!(w.theta2.components(), r.theta2.components());
            }
        }
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let a = Arc::new(samples::one_iso_class());
        let r = build_skeleton(&a, TieBreak::Lex).unwrap();
        let mut doc = parse_witnesses(&emit_witnesses(&r), "w").unwrap();
        let b = a.objects().position("b").unwrap();
        doc.theta2[b].1 = ElementId::new("id_b").unwrap();
        assert!(resolve_witnesses(&doc, &a, &r.skeleton).is_err());
    }
}
