//! Brute-force oracles. They use only the raw composition table of a
//! category and plain loops, never the enumerators under test.
#![allow(dead_code)]

use ogcat::category::Category;

/// Every tuple in `0..radix` of the given length, first digit slowest.
pub fn tuples(radix: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for d in 0..radix {
                let mut u = t.clone();
                u.push(d);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

pub fn is_functor(a: &Category, b: &Category, objects: &[usize], morphs: &[usize]) -> bool {
    let n = a.morphism_count();
    for m in 0..n {
        let img = morphs[m];
        if b.dom(img) != objects[a.dom(m)] || b.cod(img) != objects[a.cod(m)] {
            return false;
        }
    }
    for o in 0..a.object_count() {
        if morphs[a.identity(o)] != b.identity(objects[o]) {
            return false;
        }
    }
    for f in 0..n {
        for g in 0..n {
            if let Some(h) = a.compose(f, g) {
                if b.compose(morphs[f], morphs[g]) != Some(morphs[h]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All functors by exhaustive assignment of objects and morphisms.
pub fn brute_functors(a: &Category, b: &Category) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for objects in tuples(b.object_count(), a.object_count()) {
        for morphs in tuples(b.morphism_count(), a.morphism_count()) {
            if is_functor(a, b, &objects, &morphs) {
                out.push((objects.clone(), morphs));
            }
        }
    }
    out
}

pub fn brute_inverse(c: &Category, m: usize) -> Option<usize> {
    (0..c.morphism_count()).find(|&k| {
        c.compose(m, k) == Some(c.identity(c.dom(m))) && c.compose(k, m) == Some(c.identity(c.cod(m)))
    })
}

/// Is there a natural isomorphism between the two functors?
pub fn brute_naturally_isomorphic(
    a: &Category,
    b: &Category,
    f: &(Vec<usize>, Vec<usize>),
    g: &(Vec<usize>, Vec<usize>),
) -> bool {
    let per_object: Vec<Vec<usize>> = (0..a.object_count())
        .map(|o| {
            (0..b.morphism_count())
                .filter(|&m| b.dom(m) == f.0[o] && b.cod(m) == g.0[o] && brute_inverse(b, m).is_some())
                .collect()
        })
        .collect();
    let radix = per_object.iter().map(Vec::len).max().unwrap_or(0);
    if per_object.iter().any(Vec::is_empty) {
        return a.object_count() == 0;
    }
    tuples(radix, a.object_count()).into_iter().any(|choice| {
        if choice.iter().zip(&per_object).any(|(&k, opts)| k >= opts.len()) {
            return false;
        }
        let eta: Vec<usize> = choice.iter().zip(&per_object).map(|(&k, opts)| opts[k]).collect();
        (0..a.morphism_count()).all(|m| {
            b.compose(f.1[m], eta[a.cod(m)]) == b.compose(eta[a.dom(m)], g.1[m])
        })
    })
}

/// Number of classes of the "naturally isomorphic" relation.
pub fn brute_class_count(a: &Category, b: &Category) -> usize {
    let fs = brute_functors(a, b);
    let mut class: Vec<usize> = (0..fs.len()).collect();
    for i in 0..fs.len() {
        for j in 0..i {
            if brute_naturally_isomorphic(a, b, &fs[j], &fs[i]) {
                class[i] = class[j];
                break;
            }
        }
    }
    let mut distinct = class.clone();
    distinct.sort();
    distinct.dedup();
    distinct.len()
}

pub fn brute_is_skeletal(c: &Category) -> bool {
    for m in 0..c.morphism_count() {
        if c.dom(m) != c.cod(m) && brute_inverse(c, m).is_some() {
            return false;
        }
    }
    true
}
