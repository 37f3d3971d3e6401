//! Isomorphism classes, skeleton extraction with an explicit natural
//! equivalence, skeleton verification and uniqueness up to isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{
    validate_category, Category, CategorySpec, Functor, FunctorReport, NatViolation,
    NaturalTransformation, ViolationReport,
};
use crate::config::TieBreak;
use crate::constructions::{choose_section, quotient, ConstructionError, EquivClass, FnMap};
use crate::domain::{Bit, ElementId, EqualityPairing, LogicalDomain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("not skeletal: `{x}` and `{y}` are distinct but isomorphic")]
    NotSkeletal { x: ElementId, y: ElementId },
    #[error("q after s is not the identity functor")]
    QsNotIdentity,
    #[error("component at `{object}` is not invertible")]
    ComponentNotInvertible { object: ElementId },
    #[error("naturality square fails at `{morphism}`")]
    NotNatural { morphism: ElementId },
    #[error("component at the chosen representative `{object}` is not an identity")]
    ImageComponentNotIdentity { object: ElementId },
    #[error("induced map on isomorphism classes is not a bijection at class `{class}`")]
    IsoClassNotBijective { class: ElementId },
    #[error("map on morphisms `{x}` -> `{y}` is not a bijection")]
    MorphismSetNotBijective { x: ElementId, y: ElementId },
    #[error("skeleton {which} is not a skeleton: {reason}")]
    NotASkeleton { which: u8, reason: Box<SkeletonError> },
    #[error("T is not an isomorphism of categories")]
    NotIsomorphism,
    #[error("{0}")]
    Mismatch(&'static str),
    #[error(transparent)]
    Functor(#[from] FunctorReport),
    #[error(transparent)]
    Category(#[from] ViolationReport),
    #[error(transparent)]
    Nat(#[from] NatViolation),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// "Is there an isomorphism X -> Y?" with one witness pair per yes.
#[derive(Debug, Clone)]
pub struct IsoRelation {
    pub pairing: EqualityPairing,
    witnesses: HashMap<(usize, usize), (usize, usize)>,
}

impl IsoRelation {
    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        self.witnesses.contains_key(&(x, y))
    }

    /// An isomorphism `x -> y` and its inverse.
    pub fn witness(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        self.witnesses.get(&(x, y)).copied()
    }
}

/// The logical domain of isomorphism classes and the quotient map onto it.
#[derive(Debug, Clone)]
pub struct IsoClasses {
    pub domain: LogicalDomain,
    /// Objects (in order) onto classes.
    pub quotient_map: FnMap,
    pub classes: Vec<EquivClass>,
}

impl IsoClasses {
    pub fn count(&self) -> usize {
        self.domain.rep_count()
    }

    pub fn class_of_object(&self, a: usize) -> usize {
        self.quotient_map.apply_pos(a)
    }

    pub fn class_id(&self, class: usize) -> &ElementId {
        self.domain.representatives().get(class)
    }

    /// Objects in `class`, in object order.
    pub fn members(&self, class: usize) -> Vec<usize> {
        self.quotient_map.fiber_positions(class)
    }
}

#[derive(Debug, Clone)]
pub struct IsoStructure {
    pub relation: IsoRelation,
    pub classes: IsoClasses,
    /// The subcategory of all isomorphisms.
    pub subcategory: Category,
}

/// Exhaustive inverse search over `morph[X,Y] × morph[Y,X]`.
pub fn iso_classes(c: &Category) -> IsoStructure {
    let n = c.object_count();
    let mut witnesses = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let found = c.hom(x, y).iter().find_map(|&i| {
                c.hom(y, x)
                    .iter()
                    .find(|&&j| c.compose(i, j) == Some(c.identity(x)) && c.compose(j, i) == Some(c.identity(y)))
                    .map(|&j| (i, j))
            });
            if let Some(w) = found {
                witnesses.insert((x, y), w);
            }
        }
    }
    let pairing = EqualityPairing::new(c.objects().clone(), |a, b| {
        let x = c.objects().index_of(a).expect("object");
        let y = c.objects().index_of(b).expect("object");
        Bit::from(witnesses.contains_key(&(x, y)))
    });
    let q = quotient(&pairing).expect("isomorphism is an equivalence relation");
    let classes = IsoClasses {
        domain: q.domain,
        quotient_map: q.map,
        classes: q.classes,
    };
    let subcategory = iso_subcategory(c);
    IsoStructure {
        relation: IsoRelation { pairing, witnesses },
        classes,
        subcategory,
    }
}

fn iso_subcategory(c: &Category) -> Category {
    let isos: Vec<usize> = (0..c.morphism_count()).filter(|&m| c.is_isomorphism(m)).collect();
    let mut spec = CategorySpec {
        name: format!("iso_{}", c.name()),
        objects: c.objects().ids().to_vec(),
        ..CategorySpec::default()
    };
    for a in 0..c.object_count() {
        spec.identities.push((c.object_id(a).clone(), c.morph_id(c.identity(a)).clone()));
    }
    for &m in &isos {
        if !c.is_identity(m) {
            spec.morphisms.push((c.morph_id(m).clone(), c.object_id(c.dom(m)).clone(), c.object_id(c.cod(m)).clone()));
        }
    }
    for &f in &isos {
        for &g in &isos {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.compose(f, g) {
                spec.compositions.push((c.morph_id(f).clone(), c.morph_id(g).clone(), c.morph_id(h).clone()));
            }
        }
    }
    validate_category(&spec).expect("isomorphisms are closed under composition and inverses")
}

/// The function on isomorphism classes induced by a functor.
pub fn induced_iso_map(f: &Functor) -> Result<FnMap, SkeletonError> {
    induced_iso_map_with(f, &iso_classes(f.source()).classes, &iso_classes(f.target()).classes)
}

pub fn induced_iso_map_with(f: &Functor, source: &IsoClasses, target: &IsoClasses) -> Result<FnMap, SkeletonError> {
    let src = f.source();
    let assignment: Vec<usize> = (0..source.count())
        .map(|x| {
            let rep = src.objects().index_of(source.class_id(x)).expect("class named by an object");
            target.class_of_object(f.on_object(rep))
        })
        .collect();
    for a in 0..src.object_count() {
        if target.class_of_object(f.on_object(a)) != assignment[source.class_of_object(a)] {
            return Err(SkeletonError::IsoClassNotBijective {
                class: source.class_id(source.class_of_object(a)).clone(),
            });
        }
    }
    Ok(FnMap::new(
        source.domain.clone(),
        target.domain.clone(),
        assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.class_id(x).clone(), target.class_id(y).clone())),
    )?)
}

/// A functor `q : A -> S` with `q ∘ s = id`, plus the comparison `θ₂`.
#[derive(Debug, Clone)]
pub struct QuasiInverse {
    pub q: Functor,
    /// First-chosen isomorphisms `a -> s(q(a))`.
    pub theta1: Vec<usize>,
    /// `id_A ⇒ s∘q`, components `a -> s(q(a))`, identities on the image of `s`.
    pub theta2: NaturalTransformation,
    /// `s∘q ⇒ id_A`.
    pub theta2_inverse: NaturalTransformation,
}

/// Builds `q` for a functor `s : S -> A` that is injective on isomorphism
/// classes and bijective on morphism sets.
pub fn quasi_inverse(s: &Functor, tie_break: TieBreak) -> Result<QuasiInverse, SkeletonError> {
    let a = s.target().clone();
    let sk = s.source().clone();
    let iso = iso_classes(&a);
    let class = |o: usize| iso.classes.class_of_object(o);

    let mut lift = Vec::with_capacity(a.object_count());
    for o in 0..a.object_count() {
        let x = (0..sk.object_count())
            .find(|&x| class(s.on_object(x)) == class(o))
            .ok_or_else(|| SkeletonError::IsoClassNotBijective {
                class: iso.classes.class_id(class(o)).clone(),
            })?;
        lift.push(x);
    }
    let image = |o: usize| s.on_object(lift[o]);

    let mut theta1 = Vec::with_capacity(a.object_count());
    for o in 0..a.object_count() {
        let candidates = tie_break.order(a.hom(o, image(o)), 1_000 + o as u64);
        let chosen = candidates
            .into_iter()
            .find(|&m| a.is_isomorphism(m))
            .expect("an isomorphism exists within the class");
        theta1.push(chosen);
    }
    // Correct θ₁ so that objects in the image of s get identity components.
    let mut theta2 = Vec::with_capacity(a.object_count());
    for o in 0..a.object_count() {
        let back = a
            .inverse(theta1[image(o)])
            .ok_or_else(|| SkeletonError::ComponentNotInvertible {
                object: a.object_id(image(o)).clone(),
            })?;
        let c = a.compose(theta1[o], back).ok_or(SkeletonError::IsoClassNotBijective {
            class: iso.classes.class_id(class(o)).clone(),
        })?;
        theta2.push(c);
    }

    let inverse2: Vec<usize> = theta2
        .iter()
        .enumerate()
        .map(|(o, &m)| {
            a.inverse(m).ok_or_else(|| SkeletonError::ComponentNotInvertible {
                object: a.object_id(o).clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut morph_map = Vec::with_capacity(a.morphism_count());
    for f in 0..a.morphism_count() {
        let (d, c) = (a.dom(f), a.cod(f));
        let m = a
            .compose(inverse2[d], f)
            .and_then(|x| a.compose(x, theta2[c]))
            .expect("composable by construction");
        let lifted = sk
            .hom(lift[d], lift[c])
            .iter()
            .copied()
            .find(|&k| s.on_morphism(k) == m)
            .ok_or_else(|| SkeletonError::MorphismSetNotBijective {
                x: sk.object_id(lift[d]).clone(),
                y: sk.object_id(lift[c]).clone(),
            })?;
        morph_map.push(lifted);
    }
    let q = Functor::from_indices(a.clone(), sk.clone(), lift.clone(), morph_map)?;
    let sq = q.then(s)?;
    let theta2 = NaturalTransformation::new(Functor::identity(&a), sq, theta2).map_err(|e| match e {
        NatViolation::NotNatural { morphism } => SkeletonError::NotNatural { morphism },
        other => SkeletonError::Nat(other),
    })?;
    let theta2_inverse = theta2.inverse().ok_or(SkeletonError::Mismatch("θ₂ has no inverse"))?;
    Ok(QuasiInverse {
        q,
        theta1,
        theta2,
        theta2_inverse,
    })
}

/// A skeleton `s : S -> A` together with its quasi-inverse.
#[derive(Debug, Clone)]
pub struct SkeletonResult {
    pub skeleton: Arc<Category>,
    /// Chosen representative object per isomorphism class.
    pub section: FnMap,
    pub s: Functor,
    pub q: Functor,
    pub theta1: Vec<usize>,
    pub theta2: NaturalTransformation,
    pub theta2_inverse: NaturalTransformation,
}

pub fn build_skeleton(a: &Arc<Category>, tie_break: TieBreak) -> Result<SkeletonResult, SkeletonError> {
    let iso = iso_classes(a);
    let h = choose_section(&iso.classes.quotient_map, tie_break)?;
    let chosen: Vec<usize> = h.assignment().to_vec();
    let mut class_at = vec![usize::MAX; a.object_count()];
    for (x, &o) in chosen.iter().enumerate() {
        class_at[o] = x;
    }
    let class_name = |o: usize| iso.classes.class_id(class_at[o]).clone();

    let mut spec = CategorySpec {
        name: format!("{}_skel", a.name()),
        objects: (0..iso.classes.count()).map(|x| iso.classes.class_id(x).clone()).collect(),
        ..CategorySpec::default()
    };
    for &o in &chosen {
        spec.identities.push((class_name(o), a.morph_id(a.identity(o)).clone()));
    }
    let kept: Vec<usize> = (0..a.morphism_count())
        .filter(|&m| class_at[a.dom(m)] != usize::MAX && class_at[a.cod(m)] != usize::MAX)
        .collect();
    for &m in &kept {
        if !a.is_identity(m) {
            spec.morphisms.push((a.morph_id(m).clone(), class_name(a.dom(m)), class_name(a.cod(m))));
        }
    }
    for &f in &kept {
        for &g in &kept {
            if a.is_identity(f) || a.is_identity(g) {
                continue;
            }
            if let Some(k) = a.compose(f, g) {
                spec.compositions.push((a.morph_id(f).clone(), a.morph_id(g).clone(), a.morph_id(k).clone()));
            }
        }
    }
    let skeleton = Arc::new(validate_category(&spec)?);
    let morph_map = (0..skeleton.morphism_count())
        .map(|k| a.morph_index_of(skeleton.morph_id(k)).expect("same ids as in A"))
        .collect();
    let s = Functor::from_indices(skeleton.clone(), a.clone(), chosen, morph_map)?;
    let qi = quasi_inverse(&s, tie_break)?;
    let result = SkeletonResult {
        skeleton,
        section: h,
        s,
        q: qi.q,
        theta1: qi.theta1,
        theta2: qi.theta2,
        theta2_inverse: qi.theta2_inverse,
    };
    result.check_invariants()?;
    Ok(result)
}

impl SkeletonResult {
    pub fn category(&self) -> &Arc<Category> {
        self.s.target()
    }

    /// Re-checks every postcondition from the stored data alone.
    pub fn check_invariants(&self) -> Result<(), SkeletonError> {
        let a = self.category();
        let sk = &self.skeleton;
        check_skeletal(sk)?;
        if self.s.then(&self.q)? != Functor::identity(sk) {
            return Err(SkeletonError::QsNotIdentity);
        }
        let sq = self.q.then(&self.s)?;
        for o in 0..a.object_count() {
            let c = self.theta2.component(o);
            if a.dom(c) != o || a.cod(c) != sq.on_object(o) || !a.is_isomorphism(c) {
                return Err(SkeletonError::ComponentNotInvertible {
                    object: a.object_id(o).clone(),
                });
            }
        }
        for f in 0..a.morphism_count() {
            let (d, c) = (a.dom(f), a.cod(f));
            let left = a.compose(f, self.theta2.component(c));
            let right = a.compose(self.theta2.component(d), sq.on_morphism(f));
            if left.is_none() || left != right {
                return Err(SkeletonError::NotNatural {
                    morphism: a.morph_id(f).clone(),
                });
            }
        }
        for &o in self.section.assignment() {
            if self.theta2.component(o) != a.identity(o) {
                return Err(SkeletonError::ImageComponentNotIdentity {
                    object: a.object_id(o).clone(),
                });
            }
        }
        Ok(())
    }
}

fn check_skeletal(sk: &Category) -> Result<(), SkeletonError> {
    for x in 0..sk.object_count() {
        for y in 0..sk.object_count() {
            if x != y && sk.hom(x, y).iter().any(|&m| sk.is_isomorphism(m)) {
                return Err(SkeletonError::NotSkeletal {
                    x: sk.object_id(x).clone(),
                    y: sk.object_id(y).clone(),
                });
            }
        }
    }
    Ok(())
}

/// Checks that `s` is a skeleton of `a`: skeletal source, bijection on
/// isomorphism classes, bijection on every morphism set.
pub fn verify_skeleton(a: &Category, s: &Functor) -> Result<(), SkeletonError> {
    if **s.target() != *a {
        return Err(SkeletonError::Mismatch("functor does not land in the given category"));
    }
    let sk = s.source();
    check_skeletal(sk)?;
    let iso = iso_classes(a);
    let mut hit = vec![false; iso.classes.count()];
    for x in 0..sk.object_count() {
        let c = iso.classes.class_of_object(s.on_object(x));
        if std::mem::replace(&mut hit[c], true) {
            return Err(SkeletonError::IsoClassNotBijective {
                class: iso.classes.class_id(c).clone(),
            });
        }
    }
    if let Some(c) = hit.iter().position(|&h| !h) {
        return Err(SkeletonError::IsoClassNotBijective {
            class: iso.classes.class_id(c).clone(),
        });
    }
    for x in 0..sk.object_count() {
        for y in 0..sk.object_count() {
            let mut images: Vec<usize> = sk.hom(x, y).iter().map(|&m| s.on_morphism(m)).collect();
            images.sort_unstable();
            images.dedup();
            let target = a.hom(s.on_object(x), s.on_object(y));
            if images.len() != sk.hom(x, y).len() || images.len() != target.len() {
                return Err(SkeletonError::MorphismSetNotBijective {
                    x: sk.object_id(x).clone(),
                    y: sk.object_id(y).clone(),
                });
            }
        }
    }
    Ok(())
}

/// An isomorphism `T : S1 -> S2` with `s2 ∘ T` naturally equivalent to `s1`.
#[derive(Debug, Clone)]
pub struct SkeletonIso {
    pub t: Functor,
    /// `s1 ⇒ s2∘T`, every component an isomorphism.
    pub witness: NaturalTransformation,
}

pub fn skeleton_uniqueness(s1: &Functor, s2: &Functor, tie_break: TieBreak) -> Result<SkeletonIso, SkeletonError> {
    let a = s1.target();
    if **a != **s2.target() {
        return Err(SkeletonError::Mismatch("skeleta of different categories"));
    }
    for (which, s) in [(1u8, s1), (2u8, s2)] {
        verify_skeleton(a, s).map_err(|e| SkeletonError::NotASkeleton {
            which,
            reason: Box::new(e),
        })?;
    }
    let qi = quasi_inverse(s2, tie_break)?;
    let t = s1.then(&qi.q)?;
    if !t.is_isomorphism() {
        return Err(SkeletonError::NotIsomorphism);
    }
    let components = (0..s1.source().object_count())
        .map(|x| qi.theta2.component(s1.on_object(x)))
        .collect();
    let witness = NaturalTransformation::new(s1.clone(), t.then(s2)?, components)?;
    if !witness.is_natural_equivalence() {
        return Err(SkeletonError::Mismatch("witness components are not isomorphisms"));
    }
    Ok(SkeletonIso { t, witness })
}
