//! Small named categories used throughout the tests and the sample corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{validate_category, Category, CategorySpec};
use crate::domain::ElementId;

fn id(s: impl AsRef<str>) -> ElementId {
    ElementId::new(s.as_ref()).expect("sample ids are valid tokens")
}

fn build(spec: CategorySpec) -> Category {
    validate_category(&spec).unwrap_or_else(|r| panic!("sample category is invalid: {r}"))
}

/// `n` objects `o0..`, identities only.
pub fn discrete(n: usize) -> Category {
    build(CategorySpec {
        name: format!("discrete{n}"),
        objects: (0..n).map(|i| id(format!("o{i}"))).collect(),
        ..CategorySpec::default()
    })
}

/// One object, one morphism.
pub fn terminal() -> Category {
    let mut c = discrete(1).to_spec();
    c.name = "terminal".to_string();
    build(c)
}

/// Exactly one morphism `m_i_j` between every ordered pair of distinct objects.
pub fn indiscrete(n: usize) -> Category {
    thin(&format!("indiscrete{n}"), n, |_, _| true)
}

/// The preorder category of a reflexive, transitive relation on `n` objects.
pub fn thin(name: &str, n: usize, mut related: impl FnMut(usize, usize) -> bool) -> Category {
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || related(i, j)).collect()).collect();
    let arrow = |i: usize, j: usize| {
        if i == j {
            id(format!("id_o{i}"))
        } else {
            id(format!("m_{i}_{j}"))
        }
    };
    let mut spec = CategorySpec {
        name: name.to_string(),
        objects: (0..n).map(|i| id(format!("o{i}"))).collect(),
        ..CategorySpec::default()
    };
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] {
                spec.morphisms.push((arrow(i, j), id(format!("o{i}")), id(format!("o{j}"))));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && rel[i][j] && rel[j][k] {
                    spec.compositions.push((arrow(i, j), arrow(j, k), arrow(i, k)));
                }
            }
        }
    }
    build(spec)
}

/// Objects `0`, `1` and one arrow `a : 0 -> 1`.
pub fn walking_arrow() -> Category {
    build(CategorySpec {
        name: "arrow".to_string(),
        objects: vec![id("0"), id("1")],
        morphisms: vec![(id("a"), id("0"), id("1"))],
        ..CategorySpec::default()
    })
}

/// Objects `x`, `y` with mutually inverse `u : x -> y`, `v : y -> x`.
pub fn walking_iso() -> Category {
    build(CategorySpec {
        name: "walking_iso".to_string(),
        objects: vec![id("x"), id("y")],
        morphisms: vec![(id("u"), id("x"), id("y")), (id("v"), id("y"), id("x"))],
        identities: Vec::new(),
        compositions: vec![(id("u"), id("v"), id("id_x")), (id("v"), id("u"), id("id_y"))],
    })
}

/// `a ≅ b` via `u`, `v`, plus `g : a -> c` and `g2 = v * g : b -> c`.
pub fn one_iso_class() -> Category {
    build(CategorySpec {
        name: "three".to_string(),
        objects: vec![id("a"), id("b"), id("c")],
        morphisms: vec![
            (id("u"), id("a"), id("b")),
            (id("v"), id("b"), id("a")),
            (id("g"), id("a"), id("c")),
            (id("g2"), id("b"), id("c")),
        ],
        identities: Vec::new(),
        compositions: vec![
            (id("u"), id("v"), id("id_a")),
            (id("u"), id("g2"), id("g")),
            (id("v"), id("u"), id("id_b")),
            (id("v"), id("g"), id("g2")),
        ],
    })
}

/// The connected groupoid on objects `x`, `y` with automorphism group Z/2.
///
/// A morphism is a triple (source, target, parity); composition adds parities.
pub fn z2_groupoid() -> Category {
    let objects = ["x", "y"];
    let name = |a: usize, b: usize, g: usize| match (a, b, g) {
        (0, 0, 0) => "id_x",
        (1, 1, 0) => "id_y",
        (0, 0, 1) => "s",
        (1, 1, 1) => "r",
        (0, 1, 0) => "u",
        (0, 1, 1) => "t",
        (1, 0, 0) => "v",
        _ => "w",
    };
    let mut spec = CategorySpec {
        name: "z2_groupoid".to_string(),
        objects: objects.iter().map(id).collect(),
        ..CategorySpec::default()
    };
    for a in 0..2 {
        for b in 0..2 {
            for g in 0..2 {
                if !(a == b && g == 0) {
                    spec.morphisms.push((id(name(a, b, g)), id(objects[a]), id(objects[b])));
                }
            }
        }
    }
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for g in 0..2 {
                    for h in 0..2 {
                        if (a == b && g == 0) || (b == c && h == 0) {
                            continue;
                        }
                        spec.compositions.push((id(name(a, b, g)), id(name(b, c, h)), id(name(a, c, (g + h) % 2))));
                    }
                }
            }
        }
    }
    build(spec)
}

/// A random preorder category with at most `max_objects` objects and at
/// most `max_morphisms` morphisms.
pub fn random_thin(seed: u64, max_objects: usize, max_morphisms: usize) -> Category {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=max_objects);
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = i == j || rng.gen_bool(0.35);
            }
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let count = rel.iter().flatten().filter(|&&b| b).count();
        if count <= max_morphisms {
            return thin(&format!("random{seed}"), n, |i, j| rel[i][j]);
        }
    }
}

/// The fixed corpus of small categories.
pub fn corpus() -> Vec<Category> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(discrete(n));
    }
    for n in 2..=4 {
        out.push(indiscrete(n));
    }
    out.push(walking_arrow());
    out.push(walking_iso());
    out.push(one_iso_class());
    out.push(z2_groupoid());
    out
}
