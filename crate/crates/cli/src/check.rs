//! The invariant suite behind `stripcat check`.

use std::fmt;

use stripcat::dcat::axioms::check_rectangles;
use stripcat::dcat::sample_points;
use stripcat::epd::{self, evaluate_diagram, interlevel_dim};
use stripcat::k0::K0Element;
use stripcat::presj::equivariant_resolution;
use stripcat::{
    CanonicalPoint, DcatObject, Diagram, ExtRat, Kind, PresentedFunctor, SimplicialFunction,
};

pub enum Outcome {
    Pass(String),
    Fail(String),
}

pub struct Report {
    pub groups: Vec<(&'static str, Outcome)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self
            .groups
            .iter()
            .any(|(_, o)| matches!(o, Outcome::Fail(_)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, outcome) in &self.groups {
            match outcome {
                Outcome::Pass(m) => writeln!(f, "PASS {name}: {m}")?,
                Outcome::Fail(m) => writeln!(f, "FAIL {name}: {m}")?,
            }
        }
        Ok(())
    }
}

fn outcome(r: Result<String, String>) -> Outcome {
    match r {
        Ok(m) => Outcome::Pass(m),
        Err(m) => Outcome::Fail(m),
    }
}

pub fn run(f: &SimplicialFunction) -> Report {
    let mut groups = Vec::new();
    let d = match epd::diagram(f) {
        Ok(d) => d,
        Err(e) => {
            groups.push(("diagram", Outcome::Fail(e.to_string())));
            return Report { groups };
        }
    };
    let object = DcatObject::new(d.expanded());
    groups.push(("routes", routes(f, &d)));
    groups.push(("pointwise", outcome(pointwise(f, &d))));
    groups.push((
        "cohomological",
        outcome(
            check_rectangles(&object)
                .map(|r| {
                    format!(
                        "{} rectangles, {} positions exact",
                        r.rectangles, r.positions
                    )
                })
                .map_err(|e| e.to_string()),
        ),
    ));
    let free = PresentedFunctor::free(f.field(), object);
    groups.push(("resolution", outcome(resolution(&free, &d))));
    groups.push(("k0", outcome(k0(&free, &d))));
    Report { groups }
}

fn routes(f: &SimplicialFunction, d: &Diagram) -> Outcome {
    match epd::diagram_via_sampling(f) {
        Ok(s) if s == *d => Outcome::Pass(format!("{} points agree", d.total())),
        Ok(s) => Outcome::Fail(format!(
            "reduction gives {}, sampling gives {}",
            d.sheaf_string(),
            s.sheaf_string()
        )),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// Interlevel dimensions against the block functor of the diagram on a grid
/// refined by the diagram and the critical values.
fn pointwise(f: &SimplicialFunction, d: &Diagram) -> Result<String, String> {
    let mut corners = d.expanded();
    for v in 0..f.labels().len() {
        let value = ExtRat::Fin(f.value(v).clone());
        corners.push(
            CanonicalPoint::new(Kind::CC, value.clone(), value, 0).map_err(|e| e.to_string())?,
        );
    }
    let probe = DcatObject::new(corners);
    let points = sample_points([&probe]);
    for z in &points {
        let lhs = interlevel_dim(f, z).map_err(|e| e.to_string())?;
        let rhs = evaluate_diagram(d, z);
        if lhs != rhs {
            return Err(format!(
                "interlevel dimension {lhs} but diagram gives {rhs} at {z:?}"
            ));
        }
    }
    Ok(format!("{} sample points agree", points.len()))
}

fn resolution(free: &PresentedFunctor, d: &Diagram) -> Result<String, String> {
    let res = equivariant_resolution(free, 6).map_err(|e| e.to_string())?;
    res.verify(free, &free.sample_points())
        .map_err(|e| e.to_string())?;
    let multiplicity = K0Element::class_of_diagram(d).function;
    if res.betti(0) != multiplicity {
        return Err(format!(
            "β⁰ is {} but the multiplicity function is {multiplicity}",
            res.betti(0)
        ));
    }
    if let Some(n) = (1..res.depth()).find(|&n| !res.betti(n).is_zero()) {
        return Err(format!("β^{n} of a free functor is {}", res.betti(n)));
    }
    Ok(format!(
        "depth {} verified, β⁰ equals the multiplicity function",
        res.depth()
    ))
}

fn k0(free: &PresentedFunctor, d: &Diagram) -> Result<String, String> {
    let by_euler = K0Element::class_of(free).map_err(|e| e.to_string())?;
    let by_diagram = K0Element::class_of_diagram(d);
    if by_euler != by_diagram {
        return Err(format!(
            "χ gives {by_euler}, multiplicities give {by_diagram}"
        ));
    }
    if !stripcat::k0::is_admissible(&by_euler.function) {
        return Err("class is not admissible".into());
    }
    Ok(format!("class {by_euler}"))
}
