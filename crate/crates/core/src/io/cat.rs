use std::collections::{HashMap, HashSet};

use super::{expect_header, tokenize, ParseError};
use crate::category::{default_identity_name, Category, CategorySpec};
use crate::domain::ElementId;

/// Parses a `.cat` file. Names are resolved here; the axioms are left to
/// [`crate::category::validate_category`].
pub fn parse_category(text: &str, file: &str) -> Result<CategorySpec, ParseError> {
    let lines = tokenize(text, file)?;
    let header = expect_header(&lines, "category", file)?;
    let mut c = header.cursor();
    c.expect("category")?;
    let name = c.id()?;
    c.finish()?;

    let mut spec = CategorySpec {
        name: name.to_string(),
        ..CategorySpec::default()
    };
    let mut objects: HashSet<ElementId> = HashSet::new();
    let mut morphs: HashSet<ElementId> = HashSet::new();
    let mut explicit_ids: HashMap<ElementId, ElementId> = HashMap::new();
    let mut composed: HashSet<(ElementId, ElementId)> = HashSet::new();

    // identity names are known as soon as their object is
    let is_morph = |m: &ElementId, objects: &HashSet<ElementId>, morphs: &HashSet<ElementId>, explicit: &HashMap<ElementId, ElementId>| {
        morphs.contains(m)
            || explicit.values().any(|x| x == m)
            || objects
                .iter()
                .any(|o| !explicit.contains_key(o) && default_identity_name(o) == m.as_str())
    };

    for line in &lines[1..] {
        let mut c = line.cursor();
        match line.keyword() {
            "objects" => {
                c.pos = 1;
                c.expect(":")?;
                while !c.at_end() {
                    let (o, pos) = c.id_with_pos()?;
                    if !objects.insert(o.clone()) {
                        return Err(line.error_at(pos, format!("duplicate element `{o}`")));
                    }
                    spec.objects.push(o);
                }
            }
            "morph" => {
                c.pos = 1;
                let (m, pos) = c.id_with_pos()?;
                c.expect(":")?;
                let (d, dpos) = c.id_with_pos()?;
                c.expect("->")?;
                let (k, kpos) = c.id_with_pos()?;
                c.finish()?;
                for (o, p) in [(&d, dpos), (&k, kpos)] {
                    if !objects.contains(o) {
                        return Err(line.error_at(p, format!("unknown object `{o}`")));
                    }
                }
                if is_morph(&m, &objects, &morphs, &explicit_ids) {
                    return Err(line.error_at(pos, format!("duplicate morphism `{m}`")));
                }
                morphs.insert(m.clone());
                spec.morphisms.push((m, d, k));
            }
            "id" => {
                c.pos = 1;
                let (o, pos) = c.id_with_pos()?;
                c.expect("=")?;
                let (m, mpos) = c.id_with_pos()?;
                c.finish()?;
                if !objects.contains(&o) {
                    return Err(line.error_at(pos, format!("unknown object `{o}`")));
                }
                if explicit_ids.contains_key(&o) {
                    return Err(line.error_at(pos, format!("duplicate identity for `{o}`")));
                }
                if explicit_ids.values().any(|x| x == &m) {
                    return Err(line.error_at(mpos, format!("duplicate identity name `{m}`")));
                }
                explicit_ids.insert(o.clone(), m.clone());
                spec.identities.push((o, m));
            }
            "compose" => {
                c.pos = 1;
                let (f, fpos) = c.id_with_pos()?;
                c.expect("*")?;
                let (g, gpos) = c.id_with_pos()?;
                c.expect("=")?;
                let (h, hpos) = c.id_with_pos()?;
                c.finish()?;
                for (m, p) in [(&f, fpos), (&g, gpos), (&h, hpos)] {
                    if !is_morph(m, &objects, &morphs, &explicit_ids) {
                        return Err(line.error_at(p, format!("unknown morphism `{m}`")));
                    }
                }
                if !composed.insert((f.clone(), g.clone())) {
                    return Err(line.error_at(fpos, format!("duplicate composite `{f} * {g}`")));
                }
                spec.compositions.push((f, g, h));
            }
            other => return Err(line.error_at(0, format!("malformed line: unknown keyword `{other}`"))),
        }
    }
    Ok(spec)
}

/// Emits a description as written, section by section.
pub fn emit_category_spec(spec: &CategorySpec) -> String {
    let mut out = format!("category {}\n", spec.name);
    out.push_str("objects:");
    for o in &spec.objects {
        out.push(' ');
        out.push_str(o.as_str());
    }
    out.push('\n');
    for (o, m) in &spec.identities {
        out.push_str(&format!("id {o} = {m}\n"));
    }
    for (m, d, c) in &spec.morphisms {
        out.push_str(&format!("morph {m} : {d} -> {c}\n"));
    }
    for (f, g, h) in &spec.compositions {
        out.push_str(&format!("compose {f} * {g} = {h}\n"));
    }
    out
}

/// Canonical text of a validated category.
pub fn emit_category(c: &Category) -> String {
    emit_category_spec(&c.to_spec())
}
