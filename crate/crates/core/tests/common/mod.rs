#![allow(dead_code)]

use treedepth::{edge_ideal, Family, MonomialIdeal, VariableSet};

/// Every caterpillar with n ≤ 4, k ≤ 3 and every lobster with r ≤ 4, p ≤ 2.
pub fn sweep_families() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for k in 2..=3 {
            for l in 1..=k {
                if n > 1 || l == k {
                    out.push(Family::Caterpillar { n, k, l });
                }
            }
        }
    }
    for r in 2..=4 {
        for p in 1..=2 {
            for q in 0..=p {
                out.push(Family::Lobster { r, p, q });
            }
        }
    }
    out
}

pub fn family_power(f: Family, t: u32) -> MonomialIdeal {
    edge_ideal(&f.build().unwrap()).power(t).unwrap()
}

fn named(vars: &[&str], gens: &[&[&str]]) -> MonomialIdeal {
    let v = VariableSet::new(vars.iter().copied()).unwrap();
    let gens: Vec<Vec<(&str, u32)>> = gens
        .iter()
        .map(|g| g.iter().map(|x| (*x, 1)).collect())
        .collect();
    MonomialIdeal::from_named(v, &gens).unwrap()
}

/// Stanley–Reisner ideal of the six-vertex real projective plane: the ten
/// triangles that are not faces. Its depth drops in characteristic 2.
pub fn projective_plane() -> MonomialIdeal {
    let vars = ["a", "b", "c", "d", "e", "f"];
    let non_faces = [
        [0, 1, 3],
        [0, 1, 4],
        [0, 2, 4],
        [0, 2, 5],
        [0, 3, 5],
        [1, 2, 3],
        [1, 2, 5],
        [1, 4, 5],
        [2, 3, 4],
        [3, 4, 5],
    ];
    let gens: Vec<Vec<&str>> = non_faces
        .iter()
        .map(|t| t.iter().map(|&i| vars[i]).collect())
        .collect();
    let refs: Vec<&[&str]> = gens.iter().map(|g| g.as_slice()).collect();
    named(&vars, &refs)
}

/// Squarefree ideals on at most 12 variables: family edge ideals,
/// polarized family squares, and a few hand-picked complexes.
pub fn squarefree_corpus() -> Vec<(String, MonomialIdeal)> {
    let mut out = Vec::new();
    for f in sweep_families() {
        let i = family_power(f, 1);
        if i.nvars() <= 12 {
            out.push((format!("{f:?}"), i.clone()));
        }
        let pol = i.power(2).unwrap().polarize().unwrap().0;
        if pol.nvars() <= 12 {
            out.push((format!("{f:?} squared, polarized"), pol));
        }
    }
    out.push(("single edge".into(), named(&["x", "y"], &[&["x", "y"]])));
    out.push((
        "triangle".into(),
        named(&["x", "y", "z"], &[&["x", "y"], &["y", "z"], &["x", "z"]]),
    ));
    out.push((
        "pentagon".into(),
        named(
            &["a", "b", "c", "d", "e"],
            &[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "e"], &["a", "e"]],
        ),
    ));
    out.push((
        "two cubics".into(),
        named(&["x", "y", "z", "w"], &[&["x", "y", "z"], &["y", "z", "w"]]),
    ));
    out.push(("projective plane".into(), projective_plane()));
    out
}
