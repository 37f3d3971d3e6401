//! Finite collections, binary functions, logical domains and powersets.
//!
//! A [`LogicalDomain`] is quotiented once at construction: every element is
//! assigned the least element of its equality class (in carrier order) as its
//! canonical representative. Downstream code works on representatives, where
//! equality is plain token identity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::config::{Limits, ResourceLimit};

/// The two-element collection `yes/no`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    No,
    Yes,
}

impl Bit {
    pub fn is_yes(self) -> bool {
        self == Bit::Yes
    }

    pub fn and(self, other: Bit) -> Bit {
        Bit::from(self.is_yes() && other.is_yes())
    }

    pub fn or(self, other: Bit) -> Bit {
        Bit::from(self.is_yes() || other.is_yes())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Bit {
        Bit::from(!self.is_yes())
    }

    pub fn implies(self, other: Bit) -> Bit {
        self.not().or(other)
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::Yes
        } else {
            Bit::No
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bit::Yes => "yes",
            Bit::No => "no",
        })
    }
}

/// Separator used by disjoint-union tagging. Never valid inside a user id.
pub const TAG_SEPARATOR: char = '.';

/// An element token. User-supplied ids are letters, digits and underscores;
/// ids produced by tagging may additionally contain [`TAG_SEPARATOR`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(Arc<str>);

impl ElementId {
    /// Validates a user token.
    pub fn new(token: &str) -> Result<Self, DomainError> {
        if token.is_empty() {
            return Err(DomainError::InvalidId(token.to_string(), "empty id"));
        }
        if token.contains(TAG_SEPARATOR) {
            return Err(DomainError::InvalidId(
                token.to_string(),
                "`.` is reserved for disjoint-union tags",
            ));
        }
        if !token.chars().all(is_token_char) {
            return Err(DomainError::InvalidId(
                token.to_string(),
                "ids may only contain letters, digits and `_`",
            ));
        }
        Ok(ElementId(Arc::from(token)))
    }

    /// Builds `<tag>.<inner>`.
    pub fn tagged(tag: &ElementId, inner: &ElementId) -> Self {
        ElementId(Arc::from(format!("{}{}{}", tag.0, TAG_SEPARATOR, inner.0)))
    }

    /// Builds an id without validation. Used for generated names.
    pub(crate) fn raw(s: impl AsRef<str>) -> Self {
        ElementId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_token_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(ElementId),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid id `{0}`: {1}")]
    InvalidId(String, &'static str),
    #[error("equality pairing is not reflexive: ({0}, {0}) is no")]
    NonReflexive(ElementId),
    #[error("equality pairing is not symmetric: ({0}, {1}) is yes but ({1}, {0}) is no")]
    NonSymmetric(ElementId, ElementId),
    #[error("equality pairing is not transitive: ({0}, {1}) and ({1}, {2}) are yes but ({0}, {2}) is no")]
    NonTransitive(ElementId, ElementId, ElementId),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("pairing is defined on a different carrier")]
    CarrierMismatch,
    #[error(transparent)]
    ResourceLimit(#[from] ResourceLimit),
}

struct CollectionInner {
    ids: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
}

/// Duplicate-free sequence of ids in first-appearance order. Cheap to clone.
#[derive(Clone)]
pub struct FiniteCollection(Arc<CollectionInner>);

impl FiniteCollection {
    pub fn new(ids: impl IntoIterator<Item = ElementId>) -> Result<Self, DomainError> {
        let mut out = Vec::new();
        let mut index = HashMap::new();
        for id in ids {
            if index.insert(id.clone(), out.len()).is_some() {
                return Err(DomainError::DuplicateElement(id));
            }
            out.push(id);
        }
        Ok(FiniteCollection(Arc::new(CollectionInner { ids: out, index })))
    }

    /// Parses and validates each token.
    pub fn from_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self, DomainError> {
        let ids = tokens
            .into_iter()
            .map(ElementId::new)
            .collect::<Result<Vec<_>, _>>()?;
        FiniteCollection::new(ids)
    }

    pub fn empty() -> Self {
        FiniteCollection::new(std::iter::empty()).expect("empty collection")
    }

    pub fn len(&self) -> usize {
        self.0.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.ids.is_empty()
    }

    pub fn ids(&self) -> &[ElementId] {
        &self.0.ids
    }

    pub fn get(&self, i: usize) -> &ElementId {
        &self.0.ids[i]
    }

    pub fn index_of(&self, id: &ElementId) -> Option<usize> {
        self.0.index.get(id).copied()
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.0.ids.iter().position(|id| id.as_str() == token)
    }

    pub fn contains(&self, id: &ElementId) -> bool {
        self.0.index.contains_key(id)
    }
}

impl PartialEq for FiniteCollection {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.ids == other.0.ids
    }
}

impl Eq for FiniteCollection {}

impl fmt::Debug for FiniteCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.ids.iter()).finish()
    }
}

/// A total `yes/no`-valued function on a collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFn {
    domain: FiniteCollection,
    values: Vec<Bit>,
}

impl BinaryFn {
    pub fn new(domain: FiniteCollection, values: Vec<Bit>) -> Result<Self, DomainError> {
        if values.len() != domain.len() {
            return Err(DomainError::ArityMismatch {
                expected: domain.len(),
                got: values.len(),
            });
        }
        Ok(BinaryFn { domain, values })
    }

    pub fn from_fn(domain: FiniteCollection, mut f: impl FnMut(usize, &ElementId) -> Bit) -> Self {
        let values = domain.ids().iter().enumerate().map(|(i, id)| f(i, id)).collect();
        BinaryFn { domain, values }
    }

    pub fn constant(domain: FiniteCollection, value: Bit) -> Self {
        let values = vec![value; domain.len()];
        BinaryFn { domain, values }
    }

    pub fn domain(&self) -> &FiniteCollection {
        &self.domain
    }

    pub fn values(&self) -> &[Bit] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Bit {
        self.values[i]
    }

    pub fn value_of(&self, id: &ElementId) -> Option<Bit> {
        self.domain.index_of(id).map(|i| self.values[i])
    }

    /// Direct scan for a `yes` value.
    pub fn is_constantly_no(&self) -> bool {
        self.values.iter().all(|b| !b.is_yes())
    }

    pub fn support(&self) -> impl Iterator<Item = &ElementId> + '_ {
        self.domain
            .ids()
            .iter()
            .zip(&self.values)
            .filter(|(_, b)| b.is_yes())
            .map(|(id, _)| id)
    }
}

impl fmt::Display for BinaryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.support().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// A total pairing `D x D -> yes/no`, stored as a dense table. The laws are
/// not assumed; see [`EqualityPairing::check_laws`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityPairing {
    carrier: FiniteCollection,
    table: Vec<Bit>,
}

impl EqualityPairing {
    pub fn new(carrier: FiniteCollection, mut f: impl FnMut(&ElementId, &ElementId) -> Bit) -> Self {
        let n = carrier.len();
        let mut table = Vec::with_capacity(n * n);
        for x in carrier.ids() {
            for y in carrier.ids() {
                table.push(f(x, y));
            }
        }
        EqualityPairing { carrier, table }
    }

    pub fn from_table(carrier: FiniteCollection, table: Vec<Bit>) -> Result<Self, DomainError> {
        let n = carrier.len();
        if table.len() != n * n {
            return Err(DomainError::ArityMismatch {
                expected: n * n,
                got: table.len(),
            });
        }
        Ok(EqualityPairing { carrier, table })
    }

    /// Token identity.
    pub fn identity(carrier: FiniteCollection) -> Self {
        EqualityPairing::new(carrier, |x, y| Bit::from(x == y))
    }

    /// The reflexive-symmetric-transitive closure of `pairs`.
    pub fn closure(
        carrier: FiniteCollection,
        pairs: &[(ElementId, ElementId)],
    ) -> Result<Self, DomainError> {
        let mut uf = UnionFind::<usize>::new(carrier.len());
        for (a, b) in pairs {
            let ia = carrier
                .index_of(a)
                .ok_or_else(|| DomainError::UnknownElement(a.to_string()))?;
            let ib = carrier
                .index_of(b)
                .ok_or_else(|| DomainError::UnknownElement(b.to_string()))?;
            uf.union(ia, ib);
        }
        let labels = uf.into_labeling();
        let n = carrier.len();
        let table = (0..n * n)
            .map(|k| Bit::from(labels[k / n] == labels[k % n]))
            .collect();
        Ok(EqualityPairing { carrier, table })
    }

    pub fn carrier(&self) -> &FiniteCollection {
        &self.carrier
    }

    pub fn get(&self, i: usize, j: usize) -> Bit {
        self.table[i * self.carrier.len() + j]
    }

    pub fn pair(&self, x: &ElementId, y: &ElementId) -> Option<Bit> {
        let i = self.carrier.index_of(x)?;
        let j = self.carrier.index_of(y)?;
        Some(self.get(i, j))
    }

    /// Full scan of reflexivity, then symmetry, then transitivity. Witnesses
    /// are the first violation in carrier order.
    pub fn check_laws(&self) -> Result<(), DomainError> {
        let n = self.carrier.len();
        let id = |i: usize| self.carrier.get(i).clone();
        for i in 0..n {
            if !self.get(i, i).is_yes() {
                return Err(DomainError::NonReflexive(id(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j).is_yes() && !self.get(j, i).is_yes() {
                    return Err(DomainError::NonSymmetric(id(i), id(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.get(i, j).is_yes() {
                    continue;
                }
                for k in 0..n {
                    if self.get(j, k).is_yes() && !self.get(i, k).is_yes() {
                        return Err(DomainError::NonTransitive(id(i), id(j), id(k)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite carrier with a verified equality pairing and a canonical
/// representative per class.
#[derive(Debug, Clone)]
pub struct LogicalDomain {
    carrier: FiniteCollection,
    equality: EqualityPairing,
    /// Carrier index -> position of its representative in `reps`.
    class_of: Vec<usize>,
    /// Carrier indices of the representatives, ascending.
    rep_index: Vec<usize>,
    reps: FiniteCollection,
}

/// Builds a logical domain. An absent pairing means token identity.
pub fn make_domain(
    carrier: FiniteCollection,
    pairing: Option<EqualityPairing>,
) -> Result<LogicalDomain, DomainError> {
    let equality = match pairing {
        Some(p) => {
            if p.carrier != carrier {
                return Err(DomainError::CarrierMismatch);
            }
            p.check_laws()?;
            p
        }
        None => EqualityPairing::identity(carrier.clone()),
    };
    let n = carrier.len();
    let mut rep_index = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for i in 0..n {
        // Least j with i = j; classes are closed, so it is already numbered when j < i.
        let least = (0..=i).find(|&j| equality.get(i, j).is_yes()).unwrap_or(i);
        if least == i {
            class_of[i] = rep_index.len();
            rep_index.push(i);
        } else {
            class_of[i] = class_of[least];
        }
    }
    let reps = FiniteCollection::new(rep_index.iter().map(|&i| carrier.get(i).clone()))?;
    Ok(LogicalDomain {
        carrier,
        equality,
        class_of,
        rep_index,
        reps,
    })
}

impl LogicalDomain {
    /// Domain whose equality is token identity.
    pub fn discrete(carrier: FiniteCollection) -> Self {
        make_domain(carrier, None).expect("identity pairing satisfies the laws")
    }

    pub fn from_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self, DomainError> {
        Ok(LogicalDomain::discrete(FiniteCollection::from_tokens(tokens)?))
    }

    pub fn carrier(&self) -> &FiniteCollection {
        &self.carrier
    }

    pub fn equality(&self) -> &EqualityPairing {
        &self.equality
    }

    /// Canonical representatives in carrier order.
    pub fn representatives(&self) -> &FiniteCollection {
        &self.reps
    }

    pub fn rep_count(&self) -> usize {
        self.reps.len()
    }

    /// Position (among representatives) of the class of carrier element `i`.
    pub fn class_index(&self, carrier_index: usize) -> usize {
        self.class_of[carrier_index]
    }

    /// Carrier index of the representative at position `p`.
    pub fn rep_carrier_index(&self, p: usize) -> usize {
        self.rep_index[p]
    }

    /// Position of the representative of `id`.
    pub fn rep_position(&self, id: &ElementId) -> Option<usize> {
        self.carrier.index_of(id).map(|i| self.class_of[i])
    }

    pub fn canonical(&self, id: &ElementId) -> Option<&ElementId> {
        self.rep_position(id).map(|p| self.reps.get(p))
    }

    pub fn equal(&self, x: &ElementId, y: &ElementId) -> Option<Bit> {
        self.equality.pair(x, y)
    }

    /// The domain on the representatives alone, with identity equality.
    pub fn canonicalize(&self) -> LogicalDomain {
        LogicalDomain::discrete(self.reps.clone())
    }

    pub fn is_canonical(&self) -> bool {
        self.reps.len() == self.carrier.len()
    }

    /// Members of the carrier in the class at representative position `p`.
    pub fn class_members(&self, p: usize) -> impl Iterator<Item = &ElementId> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == p)
            .map(|(i, _)| self.carrier.get(i))
    }
}

impl PartialEq for LogicalDomain {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.class_of == other.class_of
    }
}

impl Eq for LogicalDomain {}

/// A function `PP[D] -> yes/no`, evaluated on members given as value vectors
/// over the representatives of `D`.
#[derive(Clone)]
pub struct Detector {
    over: FiniteCollection,
    eval: Arc<dyn Fn(&[Bit]) -> Bit + Send + Sync>,
}

impl Detector {
    pub fn new(over: FiniteCollection, eval: impl Fn(&[Bit]) -> Bit + Send + Sync + 'static) -> Self {
        Detector {
            over,
            eval: Arc::new(eval),
        }
    }

    /// The scanning detector available on any finite domain.
    pub fn direct_scan(over: FiniteCollection) -> Self {
        Detector::new(over, |values| Bit::from(values.iter().all(|b| !b.is_yes())))
    }

    pub fn over(&self) -> &FiniteCollection {
        &self.over
    }

    pub fn detect_values(&self, values: &[Bit]) -> Bit {
        assert_eq!(values.len(), self.over.len(), "detector applied to a foreign member");
        (self.eval)(values)
    }

    pub fn detect(&self, member: &BinaryFn) -> Bit {
        assert!(member.domain() == &self.over, "detector applied to a foreign member");
        (self.eval)(member.values())
    }

    /// Evaluates on every member of `p` in enumeration order.
    pub fn tabulate(&self, p: &Powerset) -> Vec<Bit> {
        p.members().map(|h| self.detect(&h)).collect()
    }
}

impl fmt::Debug for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Detector").field("over", &self.over).finish_non_exhaustive()
    }
}

/// All binary functions on the representatives of a domain, produced lazily.
///
/// Member `m` is `yes` at representative `i` iff bit `i` of `m` is set, so the
/// first representative is the least significant digit and member 0 is the
/// constantly-`no` function.
#[derive(Debug, Clone)]
pub struct Powerset {
    base: LogicalDomain,
}

pub fn powerset(d: &LogicalDomain, limits: &Limits) -> Result<Powerset, ResourceLimit> {
    ResourceLimit::check(
        "powerset representatives",
        d.rep_count() as u128,
        limits.powerset_reps as u128,
    )?;
    Ok(Powerset { base: d.clone() })
}

impl Powerset {
    pub fn base(&self) -> &LogicalDomain {
        &self.base
    }

    pub fn over(&self) -> &FiniteCollection {
        self.base.representatives()
    }

    pub fn len(&self) -> u64 {
        1u64 << self.base.rep_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn member(&self, m: u64) -> BinaryFn {
        assert!(m < self.len(), "member index out of range");
        BinaryFn::from_fn(self.over().clone(), |i, _| Bit::from(m >> i & 1 == 1))
    }

    pub fn members(&self) -> impl Iterator<Item = BinaryFn> + '_ {
        (0..self.len()).map(|m| self.member(m))
    }

    pub fn index_of(&self, h: &BinaryFn) -> Option<u64> {
        if h.domain() != self.over() {
            return None;
        }
        Some(
            h.values()
                .iter()
                .enumerate()
                .filter(|(_, b)| b.is_yes())
                .map(|(i, _)| 1u64 << i)
                .sum(),
        )
    }
}

/// The quantification detector of a finite domain: `yes` exactly on the
/// constantly-`no` member.
pub fn empty_detector(p: &Powerset) -> Detector {
    Detector::direct_scan(p.over().clone())
}
