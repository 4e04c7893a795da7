//! Benchmark fixtures shared by the criterion targets.

use std::collections::BTreeMap;

use stripcat::{
    CanonicalPoint, DcatMorphism, DcatObject, ExtRat, Fp, Kind, PresentedFunctor,
    SimplicialFunction,
};

/// A cycle on `n` vertices with a zigzag of values, plus a chord every third vertex.
pub fn zigzag_graph(n: usize) -> SimplicialFunction {
    let values: BTreeMap<String, ExtRat> = (0..n)
        .map(|i| {
            (
                format!("v{i}"),
                ExtRat::ratio(((i * 7) % 11) as i64 - 5, 1 + (i % 3) as i64),
            )
        })
        .collect();
    let mut edges: Vec<Vec<String>> = (0..n)
        .map(|i| vec![format!("v{i}"), format!("v{}", (i + 1) % n)])
        .collect();
    edges.extend(
        (0..n)
            .step_by(3)
            .map(|i| vec![format!("v{i}"), format!("v{}", (i + n / 2) % n)]),
    );
    edges.retain(|e| e[0] != e[1]);
    SimplicialFunction::new(values, &edges, Fp::two()).expect("valid graph")
}

/// A triangulated strip of `n` squares with values rising and falling along it.
pub fn triangulated_band(n: usize) -> SimplicialFunction {
    let name = |row: usize, col: usize| format!("r{row}c{col}");
    let mut values = BTreeMap::new();
    for col in 0..=n {
        for row in 0..2 {
            let h = ((col * 5 + row * 3) % 7) as i64 - 3;
            values.insert(name(row, col), ExtRat::int(h));
        }
    }
    let mut triangles = Vec::new();
    for col in 0..n {
        triangles.push(vec![name(0, col), name(1, col), name(0, col + 1)]);
        triangles.push(vec![name(1, col), name(0, col + 1), name(1, col + 1)]);
    }
    SimplicialFunction::new(values, &triangles, Fp::two()).expect("valid band")
}

/// `n` nested closed intervals mapping onto their right halves by restriction.
pub fn restriction_morphism(n: i64) -> DcatMorphism {
    let source: Vec<CanonicalPoint> = (0..n)
        .map(|i| CanonicalPoint::ints(Kind::CC, Some(0), Some(i + 2), 0))
        .collect();
    let target: Vec<CanonicalPoint> = (0..n)
        .map(|i| CanonicalPoint::ints(Kind::CC, Some(1), Some(i + 2), 0))
        .collect();
    let entries: Vec<(usize, usize, i64)> = (0..n as usize).map(|i| (i, i, 1)).collect();
    DcatMorphism::from_entries(
        Fp::new(3).unwrap(),
        DcatObject::new(source),
        DcatObject::new(target),
        &entries,
    )
    .expect("restrictions are allowed")
}

/// The cokernel of the inclusion `F_[0,1) → F_[0,2]` summed `n` times with shifted copies.
pub fn presented_functor(n: i64) -> PresentedFunctor {
    let q: Vec<CanonicalPoint> = (0..n)
        .map(|i| CanonicalPoint::ints(Kind::CO, Some(i), Some(i + 1), 0))
        .collect();
    let p: Vec<CanonicalPoint> = (0..n)
        .map(|i| CanonicalPoint::ints(Kind::CC, Some(i), Some(i + 2), 0))
        .collect();
    let entries: Vec<(usize, usize, i64)> = (0..n as usize).map(|i| (i, i, 1)).collect();
    let delta =
        DcatMorphism::from_entries(Fp::two(), DcatObject::new(q), DcatObject::new(p), &entries)
            .expect("inclusions are allowed");
    PresentedFunctor::new(delta)
}
