//! Quotients, disjoint unions with their detector constructions, sections,
//! function spaces and deterministic choice.

use std::collections::HashSet;

use thiserror::Error;

use crate::config::{Limits, ResourceLimit, TieBreak};
use crate::domain::{
    make_domain, Bit, BinaryFn, Detector, DomainError, ElementId, EqualityPairing,
    FiniteCollection, LogicalDomain,
};

/// An equivalence relation is an equality pairing whose laws are checked on use.
pub type EquivalenceRelation = EqualityPairing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("map is not surjective: `{0}` is not hit")]
    NotSurjective(ElementId),
    #[error("map is not total: no assignment for `{0}`")]
    NotTotal(ElementId),
    #[error("conflicting assignments for `{0}`")]
    ConflictingAssignment(ElementId),
    #[error("map does not respect equality: `{0}` = `{1}` but their images differ")]
    NotWellDefined(ElementId, ElementId),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("tagged id `{0}` collides with an existing element")]
    TagCollision(ElementId),
    #[error("{0}")]
    Mismatch(&'static str),
    #[error("embedding into the powerset is not injective")]
    NotInjective,
    #[error(transparent)]
    ResourceLimit(#[from] ResourceLimit),
}

/// A function between logical domains, stored on canonical representatives.
#[derive(Debug, Clone)]
pub struct FnMap {
    source: LogicalDomain,
    target: LogicalDomain,
    /// Source representative position -> target representative position.
    assignment: Vec<usize>,
}

impl FnMap {
    /// Builds a map from `(source element, target element)` pairs. Every
    /// carrier element of the source must be assigned.
    pub fn new(
        source: LogicalDomain,
        target: LogicalDomain,
        pairs: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self, ConstructionError> {
        let n = source.carrier().len();
        let mut image: Vec<Option<usize>> = vec![None; n];
        for (x, y) in pairs {
            let i = source
                .carrier()
                .index_of(&x)
                .ok_or_else(|| ConstructionError::UnknownElement(x.to_string()))?;
            let p = target
                .rep_position(&y)
                .ok_or_else(|| ConstructionError::UnknownElement(y.to_string()))?;
            match image[i] {
                Some(q) if q != p => return Err(ConstructionError::ConflictingAssignment(x)),
                _ => image[i] = Some(p),
            }
        }
        let mut assignment = vec![usize::MAX; source.rep_count()];
        for (i, slot) in image.iter().enumerate() {
            let x = source.carrier().get(i);
            let p = slot.ok_or_else(|| ConstructionError::NotTotal(x.clone()))?;
            let r = source.class_index(i);
            if assignment[r] == usize::MAX {
                assignment[r] = p;
            } else if assignment[r] != p {
                let rep = source.representatives().get(r).clone();
                return Err(ConstructionError::NotWellDefined(rep, x.clone()));
            }
        }
        Ok(FnMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map by evaluating `f` on each source carrier element.
    pub fn from_fn(
        source: LogicalDomain,
        target: LogicalDomain,
        mut f: impl FnMut(&ElementId) -> ElementId,
    ) -> Result<Self, ConstructionError> {
        let pairs: Vec<_> = source.carrier().ids().iter().map(|x| (x.clone(), f(x))).collect();
        FnMap::new(source, target, pairs)
    }

    pub(crate) fn from_positions(source: LogicalDomain, target: LogicalDomain, assignment: Vec<usize>) -> Self {
        debug_assert_eq!(assignment.len(), source.rep_count());
        debug_assert!(assignment.iter().all(|&p| p < target.rep_count()));
        FnMap {
            source,
            target,
            assignment,
        }
    }

    pub fn identity(d: &LogicalDomain) -> Self {
        FnMap::from_positions(d.clone(), d.clone(), (0..d.rep_count()).collect())
    }

    pub fn source(&self) -> &LogicalDomain {
        &self.source
    }

    pub fn target(&self) -> &LogicalDomain {
        &self.target
    }

    /// Representative positions, indexed by source representative position.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply_pos(&self, p: usize) -> usize {
        self.assignment[p]
    }

    /// Image of any source element, as a canonical target representative.
    pub fn apply(&self, x: &ElementId) -> Option<&ElementId> {
        let p = self.source.rep_position(x)?;
        Some(self.target.representatives().get(self.assignment[p]))
    }

    pub fn first_unhit(&self) -> Option<&ElementId> {
        let hit: HashSet<usize> = self.assignment.iter().copied().collect();
        (0..self.target.rep_count())
            .find(|p| !hit.contains(p))
            .map(|p| self.target.representatives().get(p))
    }

    pub fn is_surjective(&self) -> bool {
        self.first_unhit().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let distinct: HashSet<usize> = self.assignment.iter().copied().collect();
        distinct.len() == self.assignment.len()
    }

    pub(crate) fn require_surjective(&self) -> Result<(), ConstructionError> {
        match self.first_unhit() {
            Some(b) => Err(ConstructionError::NotSurjective(b.clone())),
            None => Ok(()),
        }
    }

    /// Source representative positions over target representative `p`.
    pub fn fiber_positions(&self, p: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == p).collect()
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn then(&self, g: &FnMap) -> Result<FnMap, ConstructionError> {
        if self.target.representatives() != g.source.representatives() {
            return Err(ConstructionError::Mismatch("composite of maps with mismatched domains"));
        }
        let assignment = self.assignment.iter().map(|&p| g.assignment[p]).collect();
        Ok(FnMap::from_positions(self.source.clone(), g.target.clone(), assignment))
    }

    /// `k ∘ self` for a binary function `k` on the target representatives.
    pub fn pull_back(&self, k: &[Bit]) -> Vec<Bit> {
        self.assignment.iter().map(|&p| k[p]).collect()
    }

    /// `(source rep, target rep)` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> + '_ {
        self.assignment.iter().enumerate().map(|(i, &p)| {
            (self.source.representatives().get(i), self.target.representatives().get(p))
        })
    }
}

impl PartialEq for FnMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.representatives() == other.source.representatives()
            && self.target.representatives() == other.target.representatives()
            && self.assignment == other.assignment
    }
}

impl Eq for FnMap {}

/// The binary function `# ↦ (# ≃ representative)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub representative: ElementId,
    pub membership: BinaryFn,
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub domain: LogicalDomain,
    pub classes: Vec<EquivClass>,
    /// Surjection from the (identity-equality) carrier onto the classes.
    pub map: FnMap,
}

impl Quotient {
    pub fn class_of(&self, x: &ElementId) -> Option<&EquivClass> {
        self.map.apply(x).and_then(|c| self.domain.rep_position(c)).map(|p| &self.classes[p])
    }
}

/// The domain of equivalence classes, named by their least member.
pub fn quotient(rel: &EquivalenceRelation) -> Result<Quotient, ConstructionError> {
    rel.check_laws()?;
    let carrier = rel.carrier();
    let n = carrier.len();
    let mut rep_of = vec![0usize; n];
    let mut reps = Vec::new();
    for (i, slot) in rep_of.iter_mut().enumerate() {
        let least = (0..n).find(|&j| rel.get(i, j).is_yes()).unwrap_or(i);
        if least == i {
            reps.push(i);
        }
        *slot = least;
    }
    // Equality of classes is read off representatives; it must not depend on
    // which members are used.
    for x in 0..n {
        for x2 in 0..n {
            if rep_of[x] != rep_of[x2] {
                continue;
            }
            for y in 0..n {
                if rel.get(x, y) != rel.get(x2, y) {
                    return Err(DomainError::NonTransitive(
                        carrier.get(x2).clone(),
                        carrier.get(x).clone(),
                        carrier.get(y).clone(),
                    )
                    .into());
                }
            }
        }
    }
    let class_ids = FiniteCollection::new(reps.iter().map(|&r| carrier.get(r).clone()))?;
    let classes = reps
        .iter()
        .map(|&r| EquivClass {
            representative: carrier.get(r).clone(),
            membership: BinaryFn::from_fn(carrier.clone(), |i, _| rel.get(i, r)),
        })
        .collect::<Vec<_>>();
    let pairing = EqualityPairing::new(class_ids.clone(), |f, g| {
        let x = carrier.index_of(f).expect("class id");
        let y = carrier.index_of(g).expect("class id");
        rel.get(x, y)
    });
    let domain = make_domain(class_ids, Some(pairing))?;
    let source = LogicalDomain::discrete(carrier.clone());
    let assignment = rep_of
        .iter()
        .map(|&r| domain.rep_position(carrier.get(r)).expect("class id"))
        .collect();
    let map = FnMap::from_positions(source, domain.clone(), assignment);
    Ok(Quotient {
        domain,
        classes,
        map,
    })
}

/// Domains indexed by the representatives of `index`.
#[derive(Debug, Clone)]
pub struct IndexedFamily {
    index: LogicalDomain,
    fibers: Vec<LogicalDomain>,
}

impl IndexedFamily {
    pub fn new(index: LogicalDomain, fibers: Vec<LogicalDomain>) -> Result<Self, ConstructionError> {
        if fibers.len() != index.rep_count() {
            return Err(ConstructionError::Mismatch("one fiber is required per index representative"));
        }
        Ok(IndexedFamily { index, fibers })
    }

    pub fn index(&self) -> &LogicalDomain {
        &self.index
    }

    pub fn fibers(&self) -> &[LogicalDomain] {
        &self.fibers
    }
}

/// Output of [`disjoint_union`].
#[derive(Debug, Clone)]
pub struct DisjointUnion {
    pub domain: LogicalDomain,
    /// `(b, a) ↦ b`.
    pub projection: FnMap,
    /// Empty-detector assembled from the index and fiber detectors.
    pub detector: Detector,
    /// For each index representative, the union representative positions of
    /// its fiber representatives, in fiber order.
    pub layout: Vec<Vec<usize>>,
}

/// The disjoint union `∐ A_b`, with elements encoded `b.a`.
pub fn disjoint_union(family: &IndexedFamily) -> Result<DisjointUnion, ConstructionError> {
    let index = &family.index;
    let mut ids = Vec::new();
    let mut origin = Vec::new();
    let mut seen = HashSet::new();
    for (bp, b) in index.representatives().ids().iter().enumerate() {
        for (ai, a) in family.fibers[bp].carrier().ids().iter().enumerate() {
            let id = ElementId::tagged(b, a);
            if !seen.insert(id.clone()) {
                return Err(ConstructionError::TagCollision(id));
            }
            ids.push(id);
            origin.push((bp, ai));
        }
    }
    let carrier = FiniteCollection::new(ids)?;
    // (x = y) := (f[x] = f[y]) and (x =_{f[x]} y)
    let table = origin
        .iter()
        .flat_map(|&(bx, ax)| {
            origin.iter().map(move |&(by, ay)| {
                let same_index = Bit::from(bx == by);
                if !same_index.is_yes() {
                    return Bit::No;
                }
                same_index.and(family.fibers[bx].equality().get(ax, ay))
            })
        })
        .collect();
    let pairing = EqualityPairing::from_table(carrier.clone(), table)?;
    let domain = make_domain(carrier, Some(pairing))?;

    let projection_assignment = (0..domain.rep_count())
        .map(|p| origin[domain.rep_carrier_index(p)].0)
        .collect();
    let projection = FnMap::from_positions(domain.clone(), index.clone(), projection_assignment);

    let layout: Vec<Vec<usize>> = family
        .fibers
        .iter()
        .enumerate()
        .map(|(bp, fiber)| {
            let b = index.representatives().get(bp);
            fiber
                .representatives()
                .ids()
                .iter()
                .map(|a| domain.rep_position(&ElementId::tagged(b, a)).expect("tagged id"))
                .collect()
        })
        .collect();

    let index_detector = Detector::direct_scan(index.representatives().clone());
    let fiber_detectors: Vec<Detector> = family
        .fibers
        .iter()
        .map(|f| Detector::direct_scan(f.representatives().clone()))
        .collect();
    let detector = union_detector(
        domain.representatives().clone(),
        index_detector,
        fiber_detectors,
        layout.clone(),
    );
    Ok(DisjointUnion {
        domain,
        projection,
        detector,
        layout,
    })
}

/// Empty-detector on a union: restrict `h` to each fiber, ask the fiber
/// detector, negate, and hand the resulting function on the index to the
/// index detector.
pub fn union_detector(
    over: FiniteCollection,
    index_detector: Detector,
    fiber_detectors: Vec<Detector>,
    layout: Vec<Vec<usize>>,
) -> Detector {
    Detector::new(over, move |h| {
        let nonempty_fibers: Vec<Bit> = layout
            .iter()
            .zip(&fiber_detectors)
            .map(|(positions, det)| {
                let restriction: Vec<Bit> = positions.iter().map(|&p| h[p]).collect();
                det.detect_values(&restriction).not()
            })
            .collect();
        index_detector.detect_values(&nonempty_fibers)
    })
}

/// The empty-detector on `PP[source]` obtained by viewing the source of a
/// surjection as the disjoint union of its fibers.
pub fn union_lemma_detector(f: &FnMap) -> Result<Detector, ConstructionError> {
    f.require_surjective()?;
    let target = f.target().canonicalize();
    let fibers = (0..target.rep_count())
        .map(|p| {
            let ids = f
                .fiber_positions(p)
                .into_iter()
                .map(|i| f.source().representatives().get(i).clone());
            Ok(LogicalDomain::discrete(FiniteCollection::new(ids)?))
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let union = disjoint_union(&IndexedFamily::new(target.clone(), fibers)?)?;
    // union representative -> source representative
    let back: Vec<usize> = (0..union.domain.rep_count())
        .map(|u| {
            let b = union.projection.apply_pos(u);
            let k = union.layout[b].iter().position(|&x| x == u).expect("layout");
            f.fiber_positions(b)[k]
        })
        .collect();
    let det = union.detector;
    Ok(Detector::new(f.source().representatives().clone(), move |h| {
        let transported: Vec<Bit> = back.iter().map(|&i| h[i]).collect();
        det.detect_values(&transported)
    }))
}

/// Detector on `PP[target]`: compose a member with `f` and ask the source detector.
pub fn pushforward_detector(f: &FnMap, source_detector: &Detector) -> Result<Detector, ConstructionError> {
    f.require_surjective()?;
    if source_detector.over() != f.source().representatives() {
        return Err(ConstructionError::Mismatch("detector is not over the map's source"));
    }
    let g = f.clone();
    let det = source_detector.clone();
    Ok(Detector::new(f.target().representatives().clone(), move |k| {
        det.detect_values(&g.pull_back(k))
    }))
}

/// A point preimage with its restricted domain structure.
#[derive(Debug, Clone)]
pub struct FiberDomain {
    pub point: ElementId,
    pub domain: LogicalDomain,
    /// `c = (f[#] = point)` on the source representatives.
    pub membership: BinaryFn,
}

pub fn fiber_domain(f: &FnMap, point: &ElementId) -> Result<FiberDomain, ConstructionError> {
    let p = f
        .target()
        .rep_position(point)
        .ok_or_else(|| ConstructionError::UnknownElement(point.to_string()))?;
    let source = f.source();
    let members: Vec<usize> = (0..source.carrier().len())
        .filter(|&i| f.apply_pos(source.class_index(i)) == p)
        .collect();
    let carrier = FiniteCollection::new(members.iter().map(|&i| source.carrier().get(i).clone()))?;
    let pairing = EqualityPairing::new(carrier.clone(), |x, y| source.equal(x, y).expect("fiber member"));
    let domain = make_domain(carrier, Some(pairing))?;
    let membership = BinaryFn::from_fn(source.representatives().clone(), |i, _| Bit::from(f.apply_pos(i) == p));
    Ok(FiberDomain {
        point: f.target().representatives().get(p).clone(),
        domain,
        membership,
    })
}

/// Empty-detector on the powerset of a fiber, through the injection
/// `h ↦ (c[#] = yes) and (h[#] = yes)` into `PP[source]`.
pub fn fiber_detector(f: &FnMap, fiber: &FiberDomain, source_detector: &Detector) -> Result<Detector, ConstructionError> {
    if source_detector.over() != f.source().representatives() {
        return Err(ConstructionError::Mismatch("detector is not over the map's source"));
    }
    let source = f.source();
    let slot: Vec<Option<usize>> = source
        .representatives()
        .ids()
        .iter()
        .map(|x| fiber.domain.rep_position(x))
        .collect();
    let c: Vec<Bit> = fiber.membership.values().to_vec();
    let det = source_detector.clone();
    Ok(Detector::new(fiber.domain.representatives().clone(), move |h| {
        let extended: Vec<Bit> = slot
            .iter()
            .zip(&c)
            .map(|(s, &ci)| ci.and(s.map_or(Bit::No, |k| h[k])))
            .collect();
        det.detect_values(&extended)
    }))
}

/// All sections of a surjection, enumerated lazily.
#[derive(Debug, Clone)]
pub struct SectionSet {
    pub map: FnMap,
    /// Source representative positions per target representative.
    fibers: Vec<Vec<usize>>,
}

pub fn sections(f: &FnMap, limits: &Limits) -> Result<SectionSet, ConstructionError> {
    f.require_surjective()?;
    let fibers: Vec<Vec<usize>> = (0..f.target().rep_count()).map(|p| f.fiber_positions(p)).collect();
    let set = SectionSet {
        map: f.clone(),
        fibers,
    };
    ResourceLimit::check("sections", set.count(), limits.enumeration)?;
    Ok(set)
}

impl SectionSet {
    pub fn count(&self) -> u128 {
        self.fibers.iter().map(|f| f.len() as u128).product()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }

    /// Lexicographic over target representatives, the last varying fastest.
    pub fn iter(&self) -> impl Iterator<Item = FnMap> + '_ {
        Odometer::new(self.fibers.iter().map(Vec::len).collect()).map(move |digits| {
            let assignment = digits.iter().zip(&self.fibers).map(|(&d, f)| f[d]).collect();
            FnMap::from_positions(self.map.target().clone(), self.map.source().clone(), assignment)
        })
    }

    /// A section as the member of `PP[source]` with one `yes` per fiber.
    pub fn as_powerset_member(&self, g: &FnMap) -> BinaryFn {
        let chosen: HashSet<usize> = g.assignment().iter().copied().collect();
        BinaryFn::from_fn(self.map.source().representatives().clone(), |i, _| Bit::from(chosen.contains(&i)))
    }
}

/// Mixed-radix counter; the last digit varies fastest. A zero radix yields nothing.
pub(crate) struct Odometer {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub(crate) fn new(radices: Vec<usize>) -> Self {
        let next = if radices.iter().any(|&r| r == 0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        Odometer { radices, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for k in (0..succ.len()).rev() {
            succ[k] += 1;
            if succ[k] < self.radices[k] {
                carried = false;
                break;
            }
            succ[k] = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// `a × b`, realized as the disjoint union of copies of `b` indexed by `a`.
pub fn product(a: &LogicalDomain, b: &LogicalDomain) -> Result<DisjointUnion, ConstructionError> {
    let a = a.canonicalize();
    let b = b.canonicalize();
    let fibers = vec![b; a.rep_count()];
    disjoint_union(&IndexedFamily::new(a, fibers)?)
}

/// `fn[a, b]` together with its embedding into `PP[a × b]`.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    pub source: LogicalDomain,
    pub target: LogicalDomain,
    pub product: DisjointUnion,
}

pub fn function_space(a: &LogicalDomain, b: &LogicalDomain, limits: &Limits) -> Result<FunctionSpace, ConstructionError> {
    let count = (b.rep_count() as u128).checked_pow(a.rep_count() as u32).unwrap_or(u128::MAX);
    ResourceLimit::check("function space", count, limits.enumeration)?;
    let space = FunctionSpace {
        source: a.clone(),
        target: b.clone(),
        product: product(a, b)?,
    };
    let mut seen = HashSet::new();
    for g in space.iter() {
        if !seen.insert(space.embed(&g).values().to_vec()) {
            return Err(ConstructionError::NotInjective);
        }
    }
    Ok(space)
}

impl FunctionSpace {
    pub fn count(&self) -> u128 {
        (self.target.rep_count() as u128).pow(self.source.rep_count() as u32)
    }

    /// Lexicographic in the assignment vector, the last source element varying fastest.
    pub fn iter(&self) -> impl Iterator<Item = FnMap> + '_ {
        Odometer::new(vec![self.target.rep_count(); self.source.rep_count()])
            .map(move |digits| FnMap::from_positions(self.source.clone(), self.target.clone(), digits))
    }

    /// The graph of `g` as a member of `PP[source × target]`.
    pub fn embed(&self, g: &FnMap) -> BinaryFn {
        let k = self.target.rep_count();
        let positions: HashSet<usize> = g
            .assignment()
            .iter()
            .enumerate()
            .map(|(x, &y)| self.product.layout[x][y])
            .collect();
        debug_assert_eq!(self.product.layout.iter().map(Vec::len).sum::<usize>(), self.source.rep_count() * k);
        BinaryFn::from_fn(self.product.domain.representatives().clone(), |i, _| Bit::from(positions.contains(&i)))
    }
}

/// A section of `f` picking, in every fiber, the first member in carrier
/// order (or in a seed-permuted order).
pub fn choose_section(f: &FnMap, tie_break: TieBreak) -> Result<FnMap, ConstructionError> {
    f.require_surjective()?;
    let assignment = (0..f.target().rep_count())
        .map(|p| tie_break.order(&f.fiber_positions(p), p as u64)[0])
        .collect();
    Ok(FnMap::from_positions(f.target().clone(), f.source().clone(), assignment))
}

/// The union of subdomains of `ambient`, obtained as the image of the
/// disjoint union of the parts.
#[derive(Debug, Clone)]
pub struct InternalUnion {
    pub disjoint: DisjointUnion,
    pub domain: LogicalDomain,
    /// Surjection from the disjoint union onto `domain`.
    pub surjection: FnMap,
    /// Empty-detector on `domain`, pushed forward along `surjection`.
    pub detector: Detector,
}

pub fn internal_union(ambient: &LogicalDomain, parts: &[BinaryFn]) -> Result<InternalUnion, ConstructionError> {
    let reps = ambient.representatives();
    for part in parts {
        if part.domain() != reps {
            return Err(ConstructionError::Mismatch("parts must be binary functions on the ambient representatives"));
        }
    }
    let index_ids = (0..parts.len()).map(|i| ElementId::raw(format!("p{i}")));
    let index = LogicalDomain::discrete(FiniteCollection::new(index_ids)?);
    let fibers = parts
        .iter()
        .map(|h| Ok(LogicalDomain::discrete(FiniteCollection::new(h.support().cloned())?)))
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let disjoint = disjoint_union(&IndexedFamily::new(index, fibers)?)?;
    let image: Vec<ElementId> = reps
        .ids()
        .iter()
        .enumerate()
        .filter(|(i, _)| parts.iter().any(|h| h.value(*i).is_yes()))
        .map(|(_, id)| id.clone())
        .collect();
    let domain = LogicalDomain::discrete(FiniteCollection::new(image)?);
    let assignment = (0..disjoint.domain.rep_count())
        .map(|u| {
            let b = disjoint.projection.apply_pos(u);
            let k = disjoint.layout[b].iter().position(|&x| x == u).expect("layout");
            let a = parts[b].support().nth(k).expect("support");
            domain.rep_position(a).expect("image")
        })
        .collect();
    let surjection = FnMap::from_positions(disjoint.domain.clone(), domain.clone(), assignment);
    let detector = pushforward_detector(&surjection, &disjoint.detector)?;
    Ok(InternalUnion {
        disjoint,
        domain,
        surjection,
        detector,
    })
}
