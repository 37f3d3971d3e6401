//! Exhaustive enumeration of functors and natural transformations, assembled
//! into functor categories.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{
    validate_category, Category, CategorySpec, Functor, NaturalTransformation, TotalMorphisms, ViolationReport,
};
use crate::config::{Limits, ResourceLimit, TieBreak};
use crate::constructions::FnMap;
use crate::domain::ElementId;
use crate::skeleton::{build_skeleton, iso_classes, IsoStructure, SkeletonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorCatError {
    #[error(transparent)]
    ResourceLimit(#[from] ResourceLimit),
    #[error(transparent)]
    Category(#[from] ViolationReport),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error("equivalence classes do not match after reducing to skeleta: {classes} vs {skeletal_classes}")]
    ReductionMismatch { classes: usize, skeletal_classes: usize },
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<(), ResourceLimit> {
        self.used += 1;
        ResourceLimit::check("search nodes", self.used as u128, self.limit as u128)
    }
}

/// All functors `a -> b`, in lexicographic order of (object map, morphism map).
///
/// Object maps are enumerated first; each is extended morphism by morphism,
/// pruning on endpoints, identities and every composite whose three
/// morphisms are already assigned.
pub fn enumerate_functors(a: &Arc<Category>, b: &Arc<Category>, limits: &Limits) -> Result<Vec<Functor>, ResourceLimit> {
    ResourceLimit::check(
        "object pairs",
        (a.object_count() * b.object_count()) as u128,
        limits.object_pairs as u128,
    )?;
    let n = a.morphism_count();
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for f in 0..n {
        for g in 0..n {
            if let Some(h) = a.compose(f, g) {
                checks[f.max(g).max(h)].push((f, g, h));
            }
        }
    }
    let mut budget = Budget {
        used: 0,
        limit: limits.node_budget,
    };
    let mut out = Vec::new();
    let k = a.object_count();
    let mut objects = vec![0usize; k];
    if k > 0 && b.object_count() == 0 {
        return Ok(out);
    }
    loop {
        let mut morphs = vec![usize::MAX; n];
        extend_functor(a, b, &objects, &mut morphs, 0, &checks, &mut budget, &mut out)?;
        // next object map; last object varies fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            objects[pos] += 1;
            if objects[pos] < b.object_count() {
                break;
            }
            objects[pos] = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_functor(
    a: &Arc<Category>,
    b: &Arc<Category>,
    objects: &[usize],
    morphs: &mut [usize],
    m: usize,
    checks: &[Vec<(usize, usize, usize)>],
    budget: &mut Budget,
    out: &mut Vec<Functor>,
) -> Result<(), ResourceLimit> {
    if m == morphs.len() {
        out.push(
            Functor::from_indices(a.clone(), b.clone(), objects.to_vec(), morphs.to_vec())
                .expect("search only emits valid functors"),
        );
        return Ok(());
    }
    let (d, c) = (objects[a.dom(m)], objects[a.cod(m)]);
    let forced;
    let candidates: &[usize] = if a.is_identity(m) {
        forced = [b.identity(d)];
        &forced
    } else {
        b.hom(d, c)
    };
    for &cand in candidates {
        budget.tick()?;
        morphs[m] = cand;
        let ok = checks[m]
            .iter()
            .all(|&(f, g, h)| b.compose(morphs[f], morphs[g]) == Some(morphs[h]));
        if ok {
            extend_functor(a, b, objects, morphs, m + 1, checks, budget, out)?;
        }
    }
    morphs[m] = usize::MAX;
    Ok(())
}

/// All natural transformations `f ⇒ g`, lexicographic in the components.
pub fn enumerate_nat_transformations(
    f: &Functor,
    g: &Functor,
    limits: &Limits,
) -> Result<Vec<NaturalTransformation>, ResourceLimit> {
    let a = f.source();
    let b = f.target();
    let k = a.object_count();
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for m in 0..a.morphism_count() {
        checks[a.dom(m).max(a.cod(m))].push(m);
    }
    let mut budget = Budget {
        used: 0,
        limit: limits.node_budget,
    };
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; k];
    extend_nat(f, g, b, &mut comps, 0, &checks, &mut budget, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_nat(
    f: &Functor,
    g: &Functor,
    b: &Category,
    comps: &mut [usize],
    obj: usize,
    checks: &[Vec<usize>],
    budget: &mut Budget,
    out: &mut Vec<NaturalTransformation>,
) -> Result<(), ResourceLimit> {
    if obj == comps.len() {
        out.push(
            NaturalTransformation::new(f.clone(), g.clone(), comps.to_vec())
                .expect("search only emits natural transformations"),
        );
        return Ok(());
    }
    let a = f.source();
    for &cand in b.hom(f.on_object(obj), g.on_object(obj)) {
        budget.tick()?;
        comps[obj] = cand;
        let natural = checks[obj].iter().all(|&m| {
            let left = b.compose(f.on_morphism(m), comps[a.cod(m)]);
            left.is_some() && left == b.compose(comps[a.dom(m)], g.on_morphism(m))
        });
        if natural {
            extend_nat(f, g, b, comps, obj + 1, checks, budget, out)?;
        }
    }
    comps[obj] = usize::MAX;
    Ok(())
}

/// `funct[a, b]` as a category: functors `F0, F1, ..` and natural
/// transformations composed vertically.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub source: Arc<Category>,
    pub target: Arc<Category>,
    pub functors: Vec<Functor>,
    /// `(from, to, transformation)` in enumeration order.
    pub transformations: Vec<(usize, usize, NaturalTransformation)>,
    pub category: Arc<Category>,
    /// Morphism index of `category` -> index into `transformations`.
    pub morphism_source: Vec<usize>,
}

pub fn functor_category(a: &Arc<Category>, b: &Arc<Category>, limits: &Limits) -> Result<FunctorCategory, FunctorCatError> {
    let functors = enumerate_functors(a, b, limits)?;
    let mut transformations = Vec::new();
    for (i, fi) in functors.iter().enumerate() {
        for (j, fj) in functors.iter().enumerate() {
            for t in enumerate_nat_transformations(fi, fj, limits)? {
                transformations.push((i, j, t));
                ResourceLimit::check(
                    "functor-category morphisms",
                    transformations.len() as u128,
                    limits.functor_cat_morphisms as u128,
                )?;
            }
        }
    }

    let object_name = |i: usize| ElementId::raw(format!("F{i}"));
    let mut names = Vec::with_capacity(transformations.len());
    let mut counter = 0;
    let mut by_components: HashMap<(usize, usize, &[usize]), usize> = HashMap::new();
    for (k, (i, j, t)) in transformations.iter().enumerate() {
        let is_identity = i == j && t.components().iter().all(|&c| b.is_identity(c));
        names.push(if is_identity {
            ElementId::raw(format!("id_F{i}"))
        } else {
            counter += 1;
            ElementId::raw(format!("n{}", counter - 1))
        });
        by_components.insert((*i, *j, t.components()), k);
    }

    let mut spec = CategorySpec {
        name: format!("funct_{}_{}", a.name(), b.name()),
        objects: (0..functors.len()).map(object_name).collect(),
        ..CategorySpec::default()
    };
    for (k, (i, j, _)) in transformations.iter().enumerate() {
        if !names[k].as_str().starts_with("id_") {
            spec.morphisms.push((names[k].clone(), object_name(*i), object_name(*j)));
        }
    }
    for (x, (i, j, s)) in transformations.iter().enumerate() {
        if names[x].as_str().starts_with("id_") {
            continue;
        }
        for (y, (j2, l, t)) in transformations.iter().enumerate() {
            if j2 != j || names[y].as_str().starts_with("id_") {
                continue;
            }
            let comps: Vec<usize> = s
                .components()
                .iter()
                .zip(t.components())
                .map(|(&p, &q)| b.compose(p, q).expect("components compose"))
                .collect();
            let z = by_components[&(*i, *l, comps.as_slice())];
            spec.compositions.push((names[x].clone(), names[y].clone(), names[z].clone()));
        }
    }
    let category = Arc::new(validate_category(&spec)?);
    let morphism_source = (0..category.morphism_count())
        .map(|m| names.iter().position(|n| n == category.morph_id(m)).expect("named transformation"))
        .collect();
    Ok(FunctorCategory {
        source: a.clone(),
        target: b.clone(),
        functors,
        transformations,
        category,
        morphism_source,
    })
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &Functor) -> Option<usize> {
        self.functors
            .iter()
            .position(|g| g.object_map() == f.object_map() && g.morph_map() == f.morph_map())
    }

    pub fn transformation(&self, morphism: usize) -> &NaturalTransformation {
        &self.transformations[self.morphism_source[morphism]].2
    }
}

/// A functor's action on the unions of all morphism sets.
pub fn morphism_function(f: &Functor, source: &TotalMorphisms, target: &TotalMorphisms) -> FnMap {
    let assignment = (0..source.len())
        .map(|u| target.position_of(f.on_morphism(source.morphism_at(u))))
        .collect();
    FnMap::from_positions(
        source.union.domain.clone(),
        target.union.domain.clone(),
        assignment,
    )
}

/// Natural-equivalence classes of functors, with the comparison against the
/// functor category of the skeleta.
#[derive(Debug, Clone)]
pub struct NatEquivClasses {
    pub functor_category: FunctorCategory,
    pub iso: IsoStructure,
    /// Functor index of each class representative.
    pub representatives: Vec<usize>,
    pub skeletal_class_count: usize,
    /// Class of `funct[a,b]` -> class of `funct[skel a, skel b]`, via `F ↦ q_b ∘ F ∘ s_a`.
    pub class_bijection: Vec<usize>,
}

impl NatEquivClasses {
    pub fn count(&self) -> usize {
        self.iso.classes.count()
    }
}

pub fn nat_equiv_classes(a: &Arc<Category>, b: &Arc<Category>, limits: &Limits) -> Result<NatEquivClasses, FunctorCatError> {
    let fc = functor_category(a, b, limits)?;
    let iso = iso_classes(&fc.category);
    let representatives = (0..iso.classes.count())
        .map(|c| iso.classes.members(c)[0])
        .collect::<Vec<_>>();

    let skel_a = build_skeleton(a, TieBreak::Lex)?;
    let skel_b = build_skeleton(b, TieBreak::Lex)?;
    let fc2 = functor_category(&skel_a.skeleton, &skel_b.skeleton, limits)?;
    let iso2 = iso_classes(&fc2.category);
    let skeletal_class_count = iso2.classes.count();

    let mut class_bijection = vec![usize::MAX; iso.classes.count()];
    for (i, f) in fc.functors.iter().enumerate() {
        let reduced = skel_a.s.then(f).and_then(|g| g.then(&skel_b.q)).map_err(SkeletonError::from)?;
        let j = fc2.functor_index(&reduced).expect("reduced functor is enumerated");
        let (ci, cj) = (iso.classes.class_of_object(i), iso2.classes.class_of_object(j));
        if class_bijection[ci] != usize::MAX && class_bijection[ci] != cj {
            return Err(FunctorCatError::ReductionMismatch {
                classes: iso.classes.count(),
                skeletal_classes: skeletal_class_count,
            });
        }
        class_bijection[ci] = cj;
    }
    let mut seen = vec![false; skeletal_class_count];
    let bijective = iso.classes.count() == skeletal_class_count
        && class_bijection.iter().all(|&c| c != usize::MAX && !std::mem::replace(&mut seen[c], true));
    if !bijective {
        return Err(FunctorCatError::ReductionMismatch {
            classes: iso.classes.count(),
            skeletal_classes: skeletal_class_count,
        });
    }
    Ok(NatEquivClasses {
        functor_category: fc,
        iso,
        representatives,
        skeletal_class_count,
        class_bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn arc(c: Category) -> Arc<Category> {
        Arc::new(c)
    }

    #[test]
    fn functor_counts() {
        let limits = Limits::default();
        let arrow = arc(samples::walking_arrow());
        assert_eq!(enumerate_functors(&arrow, &arrow, &limits).unwrap().len(), 3);
        assert_eq!(
            enumerate_functors(&arc(samples::discrete(2)), &arc(samples::discrete(3)), &limits).unwrap().len(),
            9
        );
        let t = arc(samples::terminal());
        for c in samples::corpus() {
            assert_eq!(enumerate_functors(&arc(c), &t, &limits).unwrap().len(), 1);
        }
    }

    #[test]
    fn functors_are_lexicographic() {
        let arrow = arc(samples::walking_arrow());
        let fs = enumerate_functors(&arrow, &arrow, &Limits::default()).unwrap();
        let keys: Vec<(Vec<usize>, Vec<usize>)> =
            fs.iter().map(|f| (f.object_map().to_vec(), f.morph_map().to_vec())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn object_pair_bound() {
        let big = arc(samples::discrete(9));
        let tight = Limits::default();
        assert!(enumerate_functors(&big, &big, &tight).is_err());
        let budget = Limits {
            node_budget: 5,
            ..Limits::default()
        };
        let d4 = arc(samples::discrete(4));
        assert!(enumerate_functors(&d4, &d4, &budget).is_err());
    }

    #[test]
    fn nat_transformations_on_the_arrow() {
        let arrow = arc(samples::walking_arrow());
        let limits = Limits::default();
        let ident = Functor::identity(&arrow);
        assert_eq!(enumerate_nat_transformations(&ident, &ident, &limits).unwrap().len(), 1);
        let k0 = Functor::constant(&arrow, &arrow, 0);
        let k1 = Functor::constant(&arrow, &arrow, 1);
        let ts = enumerate_nat_transformations(&k0, &k1, &limits).unwrap();
        assert_eq!(ts.len(), 1);
        let a = arrow.morph_index("a").unwrap();
        assert_eq!(ts[0].components(), &[a, a]);
        assert!(enumerate_nat_transformations(&k1, &k0, &limits).unwrap().is_empty());
    }

    #[test]
    fn functor_category_of_the_arrow() {
        let arrow = arc(samples::walking_arrow());
        let fc = functor_category(&arrow, &arrow, &Limits::default()).unwrap();
        assert_eq!(fc.category.object_count(), 3);
        // k0 => id, k0 => k1, id => k1 plus the three identities
        assert_eq!(fc.category.morphism_count(), 6);
        let classes = nat_equiv_classes(&arrow, &arrow, &Limits::default()).unwrap();
        assert_eq!(classes.count(), 3);
        assert_eq!(classes.skeletal_class_count, 3);
    }

    #[test]
    fn functor_category_into_terminal_and_from_discrete() {
        let t = arc(samples::terminal());
        for c in samples::corpus() {
            let c = arc(c);
            let fc = functor_category(&c, &t, &Limits::default()).unwrap();
            assert_eq!(fc.category.object_count(), 1);
            assert_eq!(fc.category.morphism_count(), 1);
        }
        let d2 = arc(samples::discrete(2));
        let b = arc(samples::one_iso_class());
        let fc = functor_category(&d2, &b, &Limits::default()).unwrap();
        assert_eq!(fc.category.object_count(), 9);
    }

    #[test]
    fn equivalence_classes_reduce_to_skeleta() {
        let i2 = arc(samples::indiscrete(2));
        let classes = nat_equiv_classes(&i2, &i2, &Limits::default()).unwrap();
        assert_eq!(classes.functor_category.functors.len(), 4);
        assert_eq!(classes.count(), 1);
        assert_eq!(classes.skeletal_class_count, 1);
    }
}
