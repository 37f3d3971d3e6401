//! Finite categories with explicit composition tables, functors and natural
//! transformations.
//!
//! Composition is written in diagrammatic order: `f * g` means "first `f`,
//! then `g`". Whether two morphisms compose is read from the declared
//! endpoints in the table, never from a comparison of object values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::{disjoint_union, product, DisjointUnion, IndexedFamily};
use crate::domain::{ElementId, FiniteCollection, LogicalDomain};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: ElementId,
    pub dom: usize,
    pub cod: usize,
}

/// Unvalidated description of a category, as read from a `.cat` file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub name: String,
    pub objects: Vec<ElementId>,
    /// `(id, dom, cod)`.
    pub morphisms: Vec<(ElementId, ElementId, ElementId)>,
    /// `(object, identity morphism)`.
    pub identities: Vec<(ElementId, ElementId)>,
    /// `(f, g, f * g)`.
    pub compositions: Vec<(ElementId, ElementId, ElementId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("duplicate object `{0}`")]
    DuplicateObject(ElementId),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(ElementId),
    #[error("duplicate identity for object `{0}`")]
    DuplicateIdentity(ElementId),
    #[error("unknown object `{0}`")]
    UnknownObject(ElementId),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(ElementId),
    #[error("endpoint mismatch: `{morphism}` should be {expected_dom} -> {expected_cod} but is {found_dom} -> {found_cod}")]
    EndpointMismatch {
        morphism: ElementId,
        expected_dom: ElementId,
        expected_cod: ElementId,
        found_dom: ElementId,
        found_cod: ElementId,
    },
    #[error("endpoint mismatch: `{f} * {g}` is declared but codomain of `{f}` is not the domain of `{g}`")]
    NotComposable { f: ElementId, g: ElementId },
    #[error("conflicting composites declared for `{f} * {g}`")]
    ConflictingComposite { f: ElementId, g: ElementId },
    #[error("incomplete composition: no composite for `{f} * {g}`")]
    IncompleteComposition { f: ElementId, g: ElementId },
    #[error("identity law fails for `{f}` against identity `{identity}`")]
    IdentityLaw { f: ElementId, identity: ElementId },
    #[error("associativity fails: ({f} * {g}) * {h} != {f} * ({g} * {h})")]
    Associativity { f: ElementId, g: ElementId, h: ElementId },
}

/// Every violation found, in table order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ViolationReport {
    pub category: String,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category `{}` has {} violation(s)", self.category, self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// A validated finite category.
///
/// Morphisms are ordered with the identities first (in object order),
/// followed by the remaining morphisms in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    name: String,
    objects: FiniteCollection,
    morphisms: Vec<Morphism>,
    morph_index: HashMap<ElementId, usize>,
    identities: Vec<usize>,
    table: Vec<u32>,
    hom: Vec<Vec<usize>>,
}

impl Category {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &FiniteCollection {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_id(&self, a: usize) -> &ElementId {
        self.objects.get(a)
    }

    pub fn object_index(&self, token: &str) -> Option<usize> {
        self.objects.position(token)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morph_id(&self, m: usize) -> &ElementId {
        &self.morphisms[m].id
    }

    pub fn morph_index(&self, token: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id.as_str() == token)
    }

    pub fn morph_index_of(&self, id: &ElementId) -> Option<usize> {
        self.morph_index.get(id).copied()
    }

    pub fn dom(&self, m: usize) -> usize {
        self.morphisms[m].dom
    }

    pub fn cod(&self, m: usize) -> usize {
        self.morphisms[m].cod
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        let a = self.morphisms[m].dom;
        self.identities[a] == m
    }

    /// `f * g`, if the table has an entry for the pair.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let k = self.table[f * self.morphisms.len() + g];
        (k != NONE).then_some(k as usize)
    }

    /// Morphisms `a -> b` in table order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    /// The two-sided inverse of `m`, searched in table order.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (a, b) = (self.dom(m), self.cod(m));
        self.hom(b, a).iter().copied().find(|&j| {
            self.compose(m, j) == Some(self.identity(a)) && self.compose(j, m) == Some(self.identity(b))
        })
    }

    pub fn is_isomorphism(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    /// Back to a description, in canonical order: identities that are not
    /// named `id_<object>`, then non-identity morphisms, then composites of
    /// non-identity pairs.
    pub fn to_spec(&self) -> CategorySpec {
        let mut spec = CategorySpec {
            name: self.name.clone(),
            objects: self.objects.ids().to_vec(),
            ..CategorySpec::default()
        };
        for (a, &m) in self.identities.iter().enumerate() {
            let id = &self.morphisms[m].id;
            if id.as_str() != default_identity_name(self.objects.get(a)) {
                spec.identities.push((self.objects.get(a).clone(), id.clone()));
            }
        }
        for (m, morph) in self.morphisms.iter().enumerate() {
            if !self.is_identity(m) {
                spec.morphisms.push((
                    morph.id.clone(),
                    self.objects.get(morph.dom).clone(),
                    self.objects.get(morph.cod).clone(),
                ));
            }
        }
        for f in 0..self.morphisms.len() {
            if self.is_identity(f) {
                continue;
            }
            for g in 0..self.morphisms.len() {
                if self.is_identity(g) {
                    continue;
                }
                if let Some(h) = self.compose(f, g) {
                    spec.compositions.push((
                        self.morphisms[f].id.clone(),
                        self.morphisms[g].id.clone(),
                        self.morphisms[h].id.clone(),
                    ));
                }
            }
        }
        spec
    }

    /// The objects as a logical domain with token equality.
    pub fn object_domain(&self) -> LogicalDomain {
        LogicalDomain::discrete(self.objects.clone())
    }
}

pub fn default_identity_name(object: &ElementId) -> String {
    format!("id_{object}")
}

/// Checks every category axiom and either returns the category or every
/// violation found.
pub fn validate_category(spec: &CategorySpec) -> Result<Category, ViolationReport> {
    let mut violations = Vec::new();
    let report = |violations: Vec<Violation>| ViolationReport {
        category: spec.name.clone(),
        violations,
    };

    let mut object_ids = Vec::new();
    let mut object_index: HashMap<ElementId, usize> = HashMap::new();
    for o in &spec.objects {
        if object_index.contains_key(o) {
            violations.push(Violation::DuplicateObject(o.clone()));
        } else {
            object_index.insert(o.clone(), object_ids.len());
            object_ids.push(o.clone());
        }
    }

    let mut declared: HashMap<ElementId, (usize, usize)> = HashMap::new();
    let mut declared_order: Vec<ElementId> = Vec::new();
    for (m, d, c) in &spec.morphisms {
        let (Some(&di), Some(&ci)) = (object_index.get(d), object_index.get(c)) else {
            for o in [d, c] {
                if !object_index.contains_key(o) {
                    violations.push(Violation::UnknownObject(o.clone()));
                }
            }
            continue;
        };
        if declared.insert(m.clone(), (di, ci)).is_some() {
            violations.push(Violation::DuplicateMorphism(m.clone()));
        } else {
            declared_order.push(m.clone());
        }
    }

    let mut explicit_identity: HashMap<usize, ElementId> = HashMap::new();
    for (o, m) in &spec.identities {
        let Some(&a) = object_index.get(o) else {
            violations.push(Violation::UnknownObject(o.clone()));
            continue;
        };
        if explicit_identity.insert(a, m.clone()).is_some() {
            violations.push(Violation::DuplicateIdentity(o.clone()));
        }
    }

    let mut morphisms = Vec::new();
    let mut morph_index: HashMap<ElementId, usize> = HashMap::new();
    let mut identities = Vec::new();
    for (a, o) in object_ids.iter().enumerate() {
        let id = explicit_identity
            .get(&a)
            .cloned()
            .unwrap_or_else(|| ElementId::raw(default_identity_name(o)));
        if let Some(&(d, c)) = declared.get(&id) {
            if (d, c) != (a, a) {
                violations.push(Violation::EndpointMismatch {
                    morphism: id.clone(),
                    expected_dom: o.clone(),
                    expected_cod: o.clone(),
                    found_dom: object_ids[d].clone(),
                    found_cod: object_ids[c].clone(),
                });
            }
        }
        if morph_index.contains_key(&id) {
            violations.push(Violation::DuplicateIdentity(o.clone()));
            identities.push(morph_index[&id]);
            continue;
        }
        morph_index.insert(id.clone(), morphisms.len());
        identities.push(morphisms.len());
        morphisms.push(Morphism { id, dom: a, cod: a });
    }
    for m in declared_order {
        if morph_index.contains_key(&m) {
            continue;
        }
        let (dom, cod) = declared[&m];
        morph_index.insert(m.clone(), morphisms.len());
        morphisms.push(Morphism { id: m, dom, cod });
    }
    if !violations.is_empty() {
        return Err(report(violations));
    }

    let n = morphisms.len();
    let is_identity = |m: usize| identities[morphisms[m].dom] == m;
    let mut table = vec![NONE; n * n];
    for f in 0..n {
        table[identities[morphisms[f].dom] * n + f] = f as u32;
        table[f * n + identities[morphisms[f].cod]] = f as u32;
    }

    let mut explicit = vec![false; n * n];
    for (f, g, h) in &spec.compositions {
        let mut unknown = false;
        for m in [f, g, h] {
            if !morph_index.contains_key(m) {
                violations.push(Violation::UnknownMorphism(m.clone()));
                unknown = true;
            }
        }
        if unknown {
            continue;
        }
        let (fi, gi, hi) = (morph_index[f], morph_index[g], morph_index[h]);
        if morphisms[fi].cod != morphisms[gi].dom {
            violations.push(Violation::NotComposable { f: f.clone(), g: g.clone() });
            continue;
        }
        let (ed, ec) = (morphisms[fi].dom, morphisms[gi].cod);
        if (morphisms[hi].dom, morphisms[hi].cod) != (ed, ec) {
            violations.push(Violation::EndpointMismatch {
                morphism: h.clone(),
                expected_dom: object_ids[ed].clone(),
                expected_cod: object_ids[ec].clone(),
                found_dom: object_ids[morphisms[hi].dom].clone(),
                found_cod: object_ids[morphisms[hi].cod].clone(),
            });
            continue;
        }
        if is_identity(fi) || is_identity(gi) {
            let implied = if is_identity(fi) { gi } else { fi };
            if implied != hi {
                let (other, identity) = if is_identity(fi) { (g, f) } else { (f, g) };
                violations.push(Violation::IdentityLaw {
                    f: other.clone(),
                    identity: identity.clone(),
                });
            }
            continue;
        }
        let slot = fi * n + gi;
        if explicit[slot] && table[slot] != hi as u32 {
            violations.push(Violation::ConflictingComposite { f: f.clone(), g: g.clone() });
            continue;
        }
        explicit[slot] = true;
        table[slot] = hi as u32;
    }

    for f in 0..n {
        for g in 0..n {
            if morphisms[f].cod == morphisms[g].dom && table[f * n + g] == NONE {
                violations.push(Violation::IncompleteComposition {
                    f: morphisms[f].id.clone(),
                    g: morphisms[g].id.clone(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(report(violations));
    }

    for f in 0..n {
        for g in 0..n {
            let fg = table[f * n + g];
            if fg == NONE {
                continue;
            }
            for h in 0..n {
                let gh = table[g * n + h];
                if gh == NONE {
                    continue;
                }
                let left = table[fg as usize * n + h];
                let right = table[f * n + gh as usize];
                if left != right {
                    violations.push(Violation::Associativity {
                        f: morphisms[f].id.clone(),
                        g: morphisms[g].id.clone(),
                        h: morphisms[h].id.clone(),
                    });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(report(violations));
    }

    let k = object_ids.len();
    let mut hom = vec![Vec::new(); k * k];
    for (m, morph) in morphisms.iter().enumerate() {
        hom[morph.dom * k + morph.cod].push(m);
    }
    let objects = FiniteCollection::new(object_ids).expect("duplicates already rejected");
    Ok(Category {
        name: spec.name.clone(),
        objects,
        morphisms,
        morph_index,
        identities,
        table,
        hom,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorViolation {
    #[error("no image given for object `{0}`")]
    MissingObject(ElementId),
    #[error("no image given for morphism `{0}`")]
    MissingMorphism(ElementId),
    #[error("unknown object `{0}`")]
    UnknownObject(ElementId),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(ElementId),
    #[error("endpoint mismatch: image of `{morphism}` does not run between the images of its endpoints")]
    EndpointMismatch { morphism: ElementId },
    #[error("identity of `{object}` is not sent to an identity")]
    IdentityNotPreserved { object: ElementId },
    #[error("composition not preserved: F[{f} * {g}] != F[{f}] * F[{g}]")]
    CompositionNotPreserved { f: ElementId, g: ElementId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid functor: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Object and morphism assignments by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorSpec {
    pub object_map: Vec<(ElementId, ElementId)>,
    pub morph_map: Vec<(ElementId, ElementId)>,
}

#[derive(Debug, Clone)]
pub struct Functor {
    source: Arc<Category>,
    target: Arc<Category>,
    object_map: Vec<usize>,
    morph_map: Vec<usize>,
}

/// Resolves names and validates the functor laws exhaustively.
pub fn validate_functor(
    source: &Arc<Category>,
    target: &Arc<Category>,
    spec: &FunctorSpec,
) -> Result<Functor, FunctorReport> {
    let mut violations = Vec::new();
    let mut object_map = vec![usize::MAX; source.object_count()];
    for (x, y) in &spec.object_map {
        match (source.objects().index_of(x), target.objects().index_of(y)) {
            (Some(i), Some(j)) => object_map[i] = j,
            (None, _) => violations.push(FunctorViolation::UnknownObject(x.clone())),
            (_, None) => violations.push(FunctorViolation::UnknownObject(y.clone())),
        }
    }
    let mut morph_map = vec![usize::MAX; source.morphism_count()];
    for (f, g) in &spec.morph_map {
        match (source.morph_index_of(f), target.morph_index_of(g)) {
            (Some(i), Some(j)) => morph_map[i] = j,
            (None, _) => violations.push(FunctorViolation::UnknownMorphism(f.clone())),
            (_, None) => violations.push(FunctorViolation::UnknownMorphism(g.clone())),
        }
    }
    for (a, &img) in object_map.iter().enumerate() {
        if img == usize::MAX {
            violations.push(FunctorViolation::MissingObject(source.object_id(a).clone()));
        }
    }
    for (m, img) in morph_map.iter_mut().enumerate() {
        if *img == usize::MAX {
            // identities may be left implicit
            let a = source.dom(m);
            if source.is_identity(m) && object_map[a] != usize::MAX {
                *img = target.identity(object_map[a]);
            } else {
                violations.push(FunctorViolation::MissingMorphism(source.morph_id(m).clone()));
            }
        }
    }
    if !violations.is_empty() {
        return Err(FunctorReport { violations });
    }
    Functor::from_indices(source.clone(), target.clone(), object_map, morph_map)
}

impl Functor {
    /// Builds a functor from index maps, checking endpoints, identities and composites.
    pub fn from_indices(
        source: Arc<Category>,
        target: Arc<Category>,
        object_map: Vec<usize>,
        morph_map: Vec<usize>,
    ) -> Result<Functor, FunctorReport> {
        let violations = functor_violations(&source, &target, &object_map, &morph_map);
        if violations.is_empty() {
            Ok(Functor {
                source,
                target,
                object_map,
                morph_map,
            })
        } else {
            Err(FunctorReport { violations })
        }
    }

    pub fn identity(c: &Arc<Category>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.object_count()).collect(),
            morph_map: (0..c.morphism_count()).collect(),
        }
    }

    /// The functor sending everything to object `b` and its identity.
    pub fn constant(source: &Arc<Category>, target: &Arc<Category>, b: usize) -> Functor {
        Functor {
            source: source.clone(),
            target: target.clone(),
            object_map: vec![b; source.object_count()],
            morph_map: vec![target.identity(b); source.morphism_count()],
        }
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Category> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morph_map(&self) -> &[usize] {
        &self.morph_map
    }

    pub fn on_object(&self, a: usize) -> usize {
        self.object_map[a]
    }

    pub fn on_morphism(&self, m: usize) -> usize {
        self.morph_map[m]
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn then(&self, g: &Functor) -> Result<Functor, FunctorReport> {
        assert!(
            *self.target == *g.source,
            "composite of functors with mismatched categories"
        );
        let object_map = self.object_map.iter().map(|&a| g.object_map[a]).collect();
        let morph_map = self.morph_map.iter().map(|&m| g.morph_map[m]).collect();
        Functor::from_indices(self.source.clone(), g.target.clone(), object_map, morph_map)
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let bijective = |map: &[usize], n: usize| {
            let mut hit = vec![false; n];
            map.len() == n && map.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
        };
        bijective(&self.object_map, self.target.object_count())
            && bijective(&self.morph_map, self.target.morphism_count())
    }

    pub fn to_spec(&self) -> FunctorSpec {
        FunctorSpec {
            object_map: self
                .object_map
                .iter()
                .enumerate()
                .map(|(a, &b)| (self.source.object_id(a).clone(), self.target.object_id(b).clone()))
                .collect(),
            morph_map: self
                .morph_map
                .iter()
                .enumerate()
                .map(|(m, &n)| (self.source.morph_id(m).clone(), self.target.morph_id(n).clone()))
                .collect(),
        }
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.morph_map == other.morph_map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for Functor {}

pub(crate) fn functor_violations(
    source: &Category,
    target: &Category,
    object_map: &[usize],
    morph_map: &[usize],
) -> Vec<FunctorViolation> {
    let mut out = Vec::new();
    for m in 0..source.morphism_count() {
        let img = morph_map[m];
        if target.dom(img) != object_map[source.dom(m)] || target.cod(img) != object_map[source.cod(m)] {
            out.push(FunctorViolation::EndpointMismatch {
                morphism: source.morph_id(m).clone(),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for a in 0..source.object_count() {
        if morph_map[source.identity(a)] != target.identity(object_map[a]) {
            out.push(FunctorViolation::IdentityNotPreserved {
                object: source.object_id(a).clone(),
            });
        }
    }
    for f in 0..source.morphism_count() {
        for g in 0..source.morphism_count() {
            if let Some(fg) = source.compose(f, g) {
                if target.compose(morph_map[f], morph_map[g]) != Some(morph_map[fg]) {
                    out.push(FunctorViolation::CompositionNotPreserved {
                        f: source.morph_id(f).clone(),
                        g: source.morph_id(g).clone(),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatViolation {
    #[error("functors do not share source and target")]
    Mismatch,
    #[error("component at `{object}` does not run F[{object}] -> G[{object}]")]
    ComponentEndpoint { object: ElementId },
    #[error("naturality fails at `{morphism}`")]
    NotNatural { morphism: ElementId },
}

/// Components `η[a] : F[a] -> G[a]` with `F[f] * η[b] = η[a] * G[f]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformation {
    from: Functor,
    to: Functor,
    components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(from: Functor, to: Functor, components: Vec<usize>) -> Result<Self, NatViolation> {
        if *from.source != *to.source || *from.target != *to.target || components.len() != from.source.object_count() {
            return Err(NatViolation::Mismatch);
        }
        let (a_cat, b_cat) = (&from.source, &from.target);
        for (a, &c) in components.iter().enumerate() {
            if b_cat.dom(c) != from.on_object(a) || b_cat.cod(c) != to.on_object(a) {
                return Err(NatViolation::ComponentEndpoint {
                    object: a_cat.object_id(a).clone(),
                });
            }
        }
        for f in 0..a_cat.morphism_count() {
            let (a, b) = (a_cat.dom(f), a_cat.cod(f));
            let left = b_cat.compose(from.on_morphism(f), components[b]);
            let right = b_cat.compose(components[a], to.on_morphism(f));
            if left.is_none() || left != right {
                return Err(NatViolation::NotNatural {
                    morphism: a_cat.morph_id(f).clone(),
                });
            }
        }
        Ok(NaturalTransformation { from, to, components })
    }

    pub fn identity(f: &Functor) -> Self {
        let components = (0..f.source.object_count()).map(|a| f.target.identity(f.on_object(a))).collect();
        NaturalTransformation {
            from: f.clone(),
            to: f.clone(),
            components,
        }
    }

    pub fn from(&self) -> &Functor {
        &self.from
    }

    pub fn to(&self) -> &Functor {
        &self.to
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    pub fn is_natural_equivalence(&self) -> bool {
        self.components.iter().all(|&c| self.from.target.is_isomorphism(c))
    }

    /// Vertical composite: first `self`, then `other`.
    pub fn then(&self, other: &NaturalTransformation) -> Result<Self, NatViolation> {
        if self.to != other.from {
            return Err(NatViolation::Mismatch);
        }
        let b = &self.from.target;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&x, &y)| b.compose(x, y).ok_or(NatViolation::Mismatch))
            .collect::<Result<Vec<_>, _>>()?;
        NaturalTransformation::new(self.from.clone(), other.to.clone(), components)
    }

    /// Componentwise inverse, when every component is invertible.
    pub fn inverse(&self) -> Option<Self> {
        let b = &self.from.target;
        let components = self
            .components
            .iter()
            .map(|&c| b.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        NaturalTransformation::new(self.to.clone(), self.from.clone(), components).ok()
    }
}

/// The union of all morphism sets, fibered over pairs of objects.
#[derive(Debug, Clone)]
pub struct TotalMorphisms {
    /// `obj × obj`, elements `a.b`.
    pub object_pairs: LogicalDomain,
    /// Elements `a.b.f`, projecting to `a.b`.
    pub union: DisjointUnion,
    /// Union representative position -> morphism index.
    morph_of: Vec<usize>,
}

pub fn total_morphisms(c: &Category) -> TotalMorphisms {
    let objects = c.object_domain();
    let pairs = product(&objects, &objects).expect("object ids are untagged");
    let k = c.object_count();
    let fibers = (0..k * k)
        .map(|p| {
            let ids = c.hom(p / k, p % k).iter().map(|&m| c.morph_id(m).clone());
            LogicalDomain::discrete(FiniteCollection::new(ids).expect("distinct morphism ids"))
        })
        .collect();
    let family = IndexedFamily::new(pairs.domain.clone(), fibers).expect("one fiber per pair");
    let union = disjoint_union(&family).expect("morphism ids are untagged");
    let mut morph_of = vec![0; union.domain.rep_count()];
    for (p, positions) in union.layout.iter().enumerate() {
        for (k_, &u) in positions.iter().enumerate() {
            morph_of[u] = c.hom(p / k, p % k)[k_];
        }
    }
    TotalMorphisms {
        object_pairs: pairs.domain,
        union,
        morph_of,
    }
}

impl TotalMorphisms {
    pub fn len(&self) -> usize {
        self.morph_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morph_of.is_empty()
    }

    pub fn morphism_at(&self, u: usize) -> usize {
        self.morph_of[u]
    }

    pub fn position_of(&self, m: usize) -> usize {
        self.morph_of.iter().position(|&x| x == m).expect("every morphism is in the union")
    }
}
