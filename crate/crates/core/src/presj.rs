//! Finitely presented functors `F = coker h(δ: Q → P)` on the strip: pointwise
//! dimensions, Betti and Euler functions from equivariant projective
//! resolutions, kernels, cokernels, the horseshoe construction and projective
//! covers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dcat::rep::triangle;
use crate::dcat::solve::{solve, Equation, Term};
use crate::dcat::{sample_points, DcatMorphism, DcatObject, MorphismJson};
use crate::epd::PointJson;
use crate::error::{Error, Result};
use crate::field::{complement_cols, Fp, Mat};
use crate::strip::{CanonicalPoint, StripPoint};

/// A finitely supported integer function on the interior of the strip.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntStripFunction {
    terms: BTreeMap<CanonicalPoint, i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    point: CanonicalPoint,
    coef: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionJson {
    terms: Vec<TermJson>,
}

impl IntStripFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The multiplicity function of the summands of `a`.
    pub fn of_object(a: &DcatObject) -> Self {
        let mut f = Self::zero();
        for c in &a.summands {
            f.add_at(c, 1);
        }
        f
    }

    pub fn get(&self, u: &CanonicalPoint) -> i64 {
        self.terms.get(u).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, u: &CanonicalPoint, c: i64) {
        let v = self.get(u) + c;
        if v == 0 {
            self.terms.remove(u);
        } else {
            self.terms.insert(u.clone(), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalPoint, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &CanonicalPoint> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut f = self.clone();
        for (p, c) in other.iter() {
            f.add_at(p, c);
        }
        f
    }

    pub fn neg(&self) -> Self {
        IntStripFunction {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        IntStripFunction {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), s * c)).collect(),
        }
    }

    /// `u ↦ self(T^k u)`.
    pub fn precompose_t(&self, k: i64) -> Self {
        IntStripFunction {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.t_apply(-k), *c))
                .collect(),
        }
    }

    /// The restriction to points of degree at most `max_deg`.
    pub fn truncate(&self, max_deg: i64) -> Self {
        IntStripFunction {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.deg <= max_deg)
                .map(|(p, c)| (p.clone(), *c))
                .collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn to_json(&self) -> String {
        let j = FunctionJson {
            terms: self
                .iter()
                .map(|(p, c)| TermJson {
                    point: p.clone(),
                    coef: c,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        let j: FunctionJson = serde_json::from_str(s)?;
        let mut f = Self::zero();
        for t in j.terms {
            f.add_at(&t.point, t.coef);
        }
        Ok(f)
    }
}

impl fmt::Display for IntStripFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(p, c)| format!("{p}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `F = coker h(δ)` for a morphism `δ: Q → P` of sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedFunctor {
    pub delta: DcatMorphism,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentedJson {
    #[serde(rename = "Q")]
    pub q: Vec<PointJson>,
    #[serde(rename = "P")]
    pub p: Vec<PointJson>,
    pub delta: MorphismJson,
}

impl PresentedFunctor {
    pub fn new(delta: DcatMorphism) -> Self {
        PresentedFunctor { delta }
    }

    /// `h(P)` itself, presented by the zero map out of the zero object.
    pub fn free(fp: Fp, p: DcatObject) -> Self {
        PresentedFunctor {
            delta: DcatMorphism::zero(fp, DcatObject::zero(), p),
        }
    }

    pub fn zero(fp: Fp) -> Self {
        Self::free(fp, DcatObject::zero())
    }

    pub fn fp(&self) -> Fp {
        self.delta.fp
    }

    pub fn q(&self) -> &DcatObject {
        &self.delta.source
    }

    pub fn p(&self) -> &DcatObject {
        &self.delta.target
    }

    /// `dim F(z) = dim h(P)(z) − rank h(δ)(z)`.
    pub fn dim_at(&self, z: &StripPoint) -> usize {
        self.p().h_eval(z) - self.delta.rank_at(z)
    }

    /// `β⁰(F)(u) = m_u(P) − rank δ_uu`, where `δ_uu` keeps the rows and columns of summands equal to `u`.
    pub fn betti0(&self) -> IntStripFunction {
        let mut f = IntStripFunction::zero();
        for u in distinct(self.p()) {
            let v = multiplicity(self.p(), &u) as i64 - diagonal_rank(&self.delta, &u) as i64;
            f.add_at(&u, v);
        }
        f
    }

    /// Sample points covering every cell where `F` can change.
    pub fn sample_points(&self) -> Vec<StripPoint> {
        sample_points([self.q(), self.p()])
    }

    pub fn to_json(&self) -> PresentedJson {
        PresentedJson {
            q: self.q().to_json(),
            p: self.p().to_json(),
            delta: self.delta.to_json(),
        }
    }

    pub fn from_json(j: &PresentedJson) -> Result<Self> {
        let delta = DcatMorphism::from_json(&j.delta)?;
        let q = DcatObject::from_json(&j.q)?;
        let p = DcatObject::from_json(&j.p)?;
        if q != delta.source || p != delta.target {
            return Err(Error::InvalidInterval(
                "Q and P must be the source and target of delta".into(),
            ));
        }
        Ok(PresentedFunctor { delta })
    }
}

fn distinct(a: &DcatObject) -> Vec<CanonicalPoint> {
    let mut v = a.sorted();
    v.dedup();
    v
}

fn multiplicity(a: &DcatObject, u: &CanonicalPoint) -> usize {
    a.summands.iter().filter(|c| *c == u).count()
}

fn positions(a: &DcatObject, u: &CanonicalPoint) -> Vec<usize> {
    (0..a.len()).filter(|&i| a.summands[i] == *u).collect()
}

/// The rank of the block of `φ` between summands equal to `u` on both sides.
fn diagonal_rank(phi: &DcatMorphism, u: &CanonicalPoint) -> usize {
    let rows = positions(&phi.target, u);
    let cols = positions(&phi.source, u);
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    phi.entries.submatrix(&rows, &cols).rank(phi.fp)
}

/// A projective resolution `… → P₂ → P₁ → P₀` with `maps[k] = δ_{k+1}: P_{k+1} → P_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub terms: Vec<DcatObject>,
    pub maps: Vec<DcatMorphism>,
}

impl Resolution {
    pub fn depth(&self) -> usize {
        self.maps.len()
    }

    /// `βⁿ` from the cochain complexes `Nat(P_•, S_u)`; needs depth at least `n + 1`.
    pub fn betti(&self, n: usize) -> IntStripFunction {
        assert!(n < self.depth(), "resolution too short for degree {n}");
        let mut f = IntStripFunction::zero();
        for u in distinct(&self.terms[n]) {
            let incoming = if n == 0 {
                0
            } else {
                diagonal_rank(&self.maps[n - 1], &u)
            };
            let outgoing = diagonal_rank(&self.maps[n], &u);
            let v = multiplicity(&self.terms[n], &u) as i64 - incoming as i64 - outgoing as i64;
            f.add_at(&u, v);
        }
        f
    }

    /// Checks that consecutive composites vanish and that `h` of the sequence,
    /// augmented by `F`, is exact at every sample point.
    pub fn verify(&self, f: &PresentedFunctor, points: &[StripPoint]) -> Result<()> {
        for k in 1..self.maps.len() {
            if !self.maps[k - 1].compose(&self.maps[k])?.is_zero() {
                return Err(Error::NotExact(format!(
                    "δ_{} ∘ δ_{} is not zero",
                    k,
                    k + 1
                )));
            }
        }
        for z in points {
            // Exactness at P₀: the image of δ₁ is the kernel of h(P₀) → F.
            let kernel0 = self.terms[0].h_eval(z) - f.dim_at(z);
            if self.maps.first().map_or(0, |m| m.rank_at(z)) != kernel0 && !self.maps.is_empty() {
                return Err(Error::NotExact(format!("at P_0 over {z:?}")));
            }
            for k in 1..self.maps.len() {
                let dim = self.terms[k].h_eval(z);
                if self.maps[k - 1].rank_at(z) + self.maps[k].rank_at(z) != dim {
                    return Err(Error::NotExact(format!("at P_{k} over {z:?}")));
                }
            }
        }
        Ok(())
    }
}

/// The equivariant resolution `P₀ = P`, `P₁ = Q`, `P₂ = C[−1]` with `C = cone δ`,
/// and `P_{k+3} = P_k[−1]`, `δ_{k+3} = −δ_k[−1]`.
pub fn equivariant_resolution(f: &PresentedFunctor, depth: usize) -> Result<Resolution> {
    let fp = f.fp();
    let tri = triangle(&f.delta)?;
    let c_minus = tri.cone.shift(-1);
    let base_maps = [
        f.delta.clone(),
        tri.from_cone.shift(-1).neg(),
        tri.to_cone.shift(-1).neg(),
    ];
    let base_terms = [f.p().clone(), f.q().clone(), c_minus];
    let mut terms = Vec::with_capacity(depth + 1);
    let mut maps = Vec::with_capacity(depth);
    for k in 0..=depth {
        let period = (k / 3) as i64;
        terms.push(base_terms[k % 3].shift(-period));
        if k >= 1 {
            let j = (k - 1) % 3;
            let period = ((k - 1) / 3) as i64;
            let sign = if period % 2 == 0 { 1 } else { -1 };
            maps.push(base_maps[j].shift(-period).scale(sign));
        }
    }
    debug_assert!(maps.iter().all(|m| m.fp == fp));
    Ok(Resolution { terms, maps })
}

/// `βⁿ(F)`.
pub fn betti(f: &PresentedFunctor, n: usize) -> Result<IntStripFunction> {
    Ok(equivariant_resolution(f, n + 1)?.betti(n))
}

/// `Σ (−1)ⁿ β⁰(P_n)` over the first three terms of the equivariant resolution.
///
/// The full Euler function is `Σ_j (−1)^j X[−j]`, so `X = χ + χ[−1]` where
/// shifting a function moves its support by one degree.
fn euler_seed(f: &PresentedFunctor) -> Result<(IntStripFunction, Resolution)> {
    let res = equivariant_resolution(f, 2)?;
    let mut x = IntStripFunction::zero();
    for (n, t) in res.terms.iter().enumerate() {
        x = x.add(&IntStripFunction::of_object(t).scale(if n % 2 == 0 { 1 } else { -1 }));
    }
    Ok((x, res))
}

fn shift_fn(f: &IntStripFunction, k: i64) -> IntStripFunction {
    IntStripFunction {
        terms: f.iter().map(|(p, c)| (p.t_apply(k), c)).collect(),
    }
}

/// `χ(F)` restricted to points of degree at most `max_deg`.
pub fn euler_upto(f: &PresentedFunctor, max_deg: i64) -> Result<IntStripFunction> {
    let (x, _) = euler_seed(f)?;
    let Some(lowest) = x.support().map(|p| p.deg).min() else {
        return Ok(IntStripFunction::zero());
    };
    let mut acc = IntStripFunction::zero();
    let mut j = 0i64;
    while lowest + j <= max_deg {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&shift_fn(&x, -j).scale(sign));
        j += 1;
    }
    Ok(acc.truncate(max_deg))
}

/// `χ(F)` when it has finite support.
///
/// Solves `X = Y + Y[−1]` degree by degree from the bottom; the solution is
/// finitely supported exactly when it vanishes above the top degree of `X`.
pub fn euler(f: &PresentedFunctor) -> Result<IntStripFunction> {
    let (x, _) = euler_seed(f)?;
    let (Some(lo), Some(hi)) = (
        x.support().map(|p| p.deg).min(),
        x.support().map(|p| p.deg).max(),
    ) else {
        return Ok(IntStripFunction::zero());
    };
    let mut y = IntStripFunction::zero();
    let mut prev = IntStripFunction::zero();
    for d in lo..=hi + 1 {
        let layer = IntStripFunction {
            terms: x
                .iter()
                .filter(|(p, _)| p.deg == d)
                .map(|(p, c)| (p.clone(), c))
                .collect(),
        };
        let cur = layer.sub(&shift_fn(&prev, -1));
        y = y.add(&cur);
        prev = cur;
    }
    if !prev.is_zero() {
        return Err(Error::InfiniteSupport(format!(
            "the Euler function repeats {prev} along shifts"
        )));
    }
    Ok(y)
}

/// A morphism of presented functors, given by its component on `P` and a lift on `Q`
/// with `δ_t ∘ q_map = p_map ∘ δ_s`.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    pub source: PresentedFunctor,
    pub target: PresentedFunctor,
    pub p_map: DcatMorphism,
    pub q_map: DcatMorphism,
}

impl FunctorMap {
    /// Solves for the lift; fails when `p_map ∘ δ_s` does not factor through `δ_t`.
    pub fn new(
        source: PresentedFunctor,
        target: PresentedFunctor,
        p_map: DcatMorphism,
    ) -> Result<Self> {
        if p_map.source != *source.p() || p_map.target != *target.p() {
            return Err(Error::NotAMorphism(
                "the map does not run between the P-parts".into(),
            ));
        }
        let rhs = p_map.compose(&source.delta)?;
        let eq = Equation {
            terms: vec![Term::new(0).left(target.delta.clone())],
            rhs,
        };
        let lift = solve(
            source.fp(),
            &[(source.q().clone(), target.q().clone())],
            &[eq],
        )?
        .ok_or_else(|| {
            Error::NotAMorphism("the image of the relations is not a relation".into())
        })?;
        let q_map = lift.into_iter().next().expect("one unknown");
        Ok(FunctorMap {
            source,
            target,
            p_map,
            q_map,
        })
    }

    pub fn identity(f: &PresentedFunctor) -> Self {
        FunctorMap {
            source: f.clone(),
            target: f.clone(),
            p_map: DcatMorphism::identity(f.fp(), f.p().clone()),
            q_map: DcatMorphism::identity(f.fp(), f.q().clone()),
        }
    }

    /// `rank` of the induced map `F_s(z) → F_t(z)`.
    pub fn rank_at(&self, z: &StripPoint) -> usize {
        let fp = self.source.fp();
        let d = self.target.delta.h_eval_mor(z);
        let m = self.p_map.h_eval_mor(z);
        d.hcat(&m).rank(fp) - d.rank(fp)
    }

    /// Whether the induced map vanishes at `z`.
    fn is_zero_at(&self, z: &StripPoint) -> bool {
        self.rank_at(z) == 0
    }
}

/// `coker f`, presented by `Q_t ⊕ P_s → P_t`, with the projection from the target.
pub fn cokernel(f: &FunctorMap) -> Result<(PresentedFunctor, FunctorMap)> {
    let delta = f.target.delta.hcat(&f.p_map)?;
    let h = PresentedFunctor::new(delta);
    let proj = FunctorMap::new(
        f.target.clone(),
        h.clone(),
        DcatMorphism::identity(f.target.fp(), f.target.p().clone()),
    )?;
    Ok((h, proj))
}

/// A weak kernel of `h(φ)`: the map `ρ: C[−1] → A` from the triangle of `φ: A → B`,
/// whose image under `h` is the kernel of `h(φ)`.
fn weak_kernel(phi: &DcatMorphism) -> Result<DcatMorphism> {
    let tri = triangle(phi)?;
    Ok(tri.from_cone.shift(-1).neg())
}

/// `ker f` with its inclusion into the source.
///
/// With `ρ: R → P_s ⊕ Q_t` a weak kernel of `(p_map, δ_t)`, the kernel is the image
/// of `h(ρ_P)` in `F_s`. With `ρ': R' → R ⊕ Q_s` a weak kernel of `(ρ_P, δ_s)`, that
/// image is presented by `ρ'_R: R' → R`.
pub fn kernel(f: &FunctorMap) -> Result<(PresentedFunctor, FunctorMap)> {
    let s = &f.source;
    let first = f.p_map.hcat(&f.target.delta)?;
    let rho = weak_kernel(&first)?;
    let rho_p = rho.block(0..s.p().len(), 0..rho.source.len());
    let second = rho_p.hcat(&s.delta)?;
    let rho2 = weak_kernel(&second)?;
    let rho2_r = rho2.block(0..rho_p.source.len(), 0..rho2.source.len());
    let k = PresentedFunctor::new(rho2_r);
    let incl = FunctorMap::new(k.clone(), s.clone(), rho_p)?;
    Ok((k, incl))
}

/// `0 → F → G → H → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: FunctorMap,
    pub right: FunctorMap,
}

impl ShortExact {
    /// Checks exactness at every sample point of the three presentations.
    pub fn new(left: FunctorMap, right: FunctorMap) -> Result<Self> {
        if left.target != right.source {
            return Err(Error::NotExact("the maps are not composable".into()));
        }
        let (f, g, h) = (&left.source, &left.target, &right.target);
        let points = sample_points([f.q(), f.p(), g.q(), g.p(), h.q(), h.p()]);
        let composite = FunctorMap {
            source: f.clone(),
            target: h.clone(),
            p_map: right.p_map.compose(&left.p_map)?,
            q_map: right.q_map.compose(&left.q_map)?,
        };
        for z in &points {
            let (df, dg, dh) = (f.dim_at(z), g.dim_at(z), h.dim_at(z));
            if left.rank_at(z) != df
                || right.rank_at(z) != dh
                || !composite.is_zero_at(z)
                || df + dh != dg
            {
                return Err(Error::NotExact(format!("at {z:?}")));
            }
        }
        Ok(ShortExact { left, right })
    }
}

/// Resolutions `P_•` of `F`, `R_•` of `H`, and the middle resolution
/// `Q_k = P_k ⊕ R_k` of `G` with differentials `[[δ^P_k, λ_k], [0, δ^R_k]]`.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub left: Resolution,
    pub right: Resolution,
    pub middle: Resolution,
    /// The augmentation `Q₀ = P_F ⊕ P_H → P_G`.
    pub augmentation: DcatMorphism,
}

/// The horseshoe construction, made equivariant: the connecting maps `λ₁, λ₂, λ₃`
/// and the lift `σ: R₀ → P_G` are solved jointly so that `λ_{k+3} = −λ_k[−1]`
/// closes up into a complex.
pub fn horseshoe(ses: &ShortExact, depth: usize) -> Result<Horseshoe> {
    let fp = ses.left.source.fp();
    let (f, g, h) = (&ses.left.source, &ses.left.target, &ses.right.target);
    let pr = equivariant_resolution(f, depth.max(4))?;
    let rr = equivariant_resolution(h, depth.max(4))?;
    let (i, p) = (&ses.left.p_map, &ses.right.p_map);
    // Unknowns: σ, ν, λ₁, μ, λ₂, λ₃.
    let unknowns = vec![
        (h.p().clone(), g.p().clone()),
        (h.p().clone(), h.q().clone()),
        (rr.terms[1].clone(), pr.terms[0].clone()),
        (rr.terms[1].clone(), g.q().clone()),
        (rr.terms[2].clone(), pr.terms[1].clone()),
        (rr.terms[3].clone(), pr.terms[2].clone()),
    ];
    let zero = |a: &DcatObject, b: &DcatObject| DcatMorphism::zero(fp, a.clone(), b.clone());
    let eqs = vec![
        // p σ − δ_H ν = id
        Equation {
            terms: vec![
                Term::new(0).left(p.clone()),
                Term::new(1).left(h.delta.clone()).coef(-1),
            ],
            rhs: DcatMorphism::identity(fp, h.p().clone()),
        },
        // i λ₁ + σ δ^R₁ − δ_G μ = 0
        Equation {
            terms: vec![
                Term::new(2).left(i.clone()),
                Term::new(0).right(rr.maps[0].clone()),
                Term::new(3).left(g.delta.clone()).coef(-1),
            ],
            rhs: zero(&rr.terms[1], g.p()),
        },
        // δ^P₁ λ₂ + λ₁ δ^R₂ = 0
        Equation {
            terms: vec![
                Term::new(4).left(pr.maps[0].clone()),
                Term::new(2).right(rr.maps[1].clone()),
            ],
            rhs: zero(&rr.terms[2], &pr.terms[0]),
        },
        // δ^P₂ λ₃ + λ₂ δ^R₃ = 0
        Equation {
            terms: vec![
                Term::new(5).left(pr.maps[1].clone()),
                Term::new(4).right(rr.maps[2].clone()),
            ],
            rhs: zero(&rr.terms[3], &pr.terms[1]),
        },
        // δ^P₃ λ₄ + λ₃ δ^R₄ = 0 with λ₄ = −λ₁[−1]
        Equation {
            terms: vec![
                Term::new(2).shift(-1).coef(-1).left(pr.maps[2].clone()),
                Term::new(5).right(rr.maps[3].clone()),
            ],
            rhs: zero(&rr.terms[4], &pr.terms[2]),
        },
    ];
    let sol = solve(fp, &unknowns, &eqs)?
        .ok_or_else(|| Error::Invariant("the horseshoe system has no solution".into()))?;
    let sigma = &sol[0];
    let lambdas = [sol[2].clone(), sol[4].clone(), sol[5].clone()];
    let augmentation = i.hcat(sigma)?;
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for k in 0..=depth {
        terms.push(pr.terms[k].sum(&rr.terms[k]));
        if k >= 1 {
            let period = ((k - 1) / 3) as i64;
            let sign = if period % 2 == 0 { 1 } else { -1 };
            let lambda = lambdas[(k - 1) % 3].shift(-period).scale(sign);
            let top = pr.maps[k - 1].hcat(&lambda)?;
            let bottom = zero(&pr.terms[k], &rr.terms[k - 1]).hcat(&rr.maps[k - 1])?;
            maps.push(top.vcat(&bottom)?);
        }
    }
    let trim = |r: Resolution| Resolution {
        terms: r.terms[..=depth].to_vec(),
        maps: r.maps[..depth].to_vec(),
    };
    Ok(Horseshoe {
        left: trim(pr),
        right: trim(rr),
        middle: Resolution { terms, maps },
        augmentation,
    })
}

impl Horseshoe {
    /// Checks that the middle resolution is a complex, exact at every sample point,
    /// and that the augmentation is onto `G` with kernel the image of the first map.
    pub fn verify(&self, g: &PresentedFunctor) -> Result<()> {
        let mut objs: Vec<&DcatObject> = self.middle.terms.iter().collect();
        objs.push(g.q());
        objs.push(g.p());
        let points = sample_points(objs);
        let aug = FunctorMap {
            source: PresentedFunctor::free(g.fp(), self.middle.terms[0].clone()),
            target: g.clone(),
            p_map: self.augmentation.clone(),
            q_map: DcatMorphism::zero(g.fp(), DcatObject::zero(), g.q().clone()),
        };
        for z in &points {
            if aug.rank_at(z) != g.dim_at(z) {
                return Err(Error::NotExact(format!(
                    "augmentation is not onto at {z:?}"
                )));
            }
        }
        // With the augmentation onto, exactness at Q₀ is the rank count of Resolution::verify.
        self.middle.verify(g, &points)?;
        if let Some(d1) = self.middle.maps.first() {
            let first = FunctorMap {
                source: PresentedFunctor::free(g.fp(), d1.source.clone()),
                target: g.clone(),
                p_map: self.augmentation.compose(d1)?,
                q_map: DcatMorphism::zero(g.fp(), DcatObject::zero(), g.q().clone()),
            };
            if points.iter().any(|z| !first.is_zero_at(z)) {
                return Err(Error::NotExact(
                    "augmentation does not kill the first relations".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The domain `⊕ ι(u)^{β⁰(u)}` of a projective cover of `F` and the covering map into `P`.
pub fn projective_cover(f: &PresentedFunctor) -> Result<FunctorMap> {
    let fp = f.fp();
    let mut summands = Vec::new();
    let mut columns: Vec<(usize, Vec<(usize, u32)>)> = Vec::new();
    for u in distinct(f.p()) {
        let rows = positions(f.p(), &u);
        let cols = positions(f.q(), &u);
        let d = f.delta.entries.submatrix(&rows, &cols);
        let all = Mat::identity(rows.len());
        for t in complement_cols(fp, &d, &all) {
            let v = all.col(t);
            columns.push((
                summands.len(),
                rows.iter().zip(v).map(|(&r, x)| (r, x)).collect(),
            ));
            summands.push(u.clone());
        }
    }
    let cover = DcatObject::new(summands);
    let mut map = DcatMorphism::zero(fp, cover.clone(), f.p().clone());
    for (c, entries) in columns {
        for (r, v) in entries {
            map.entries.set(r, c, v);
        }
    }
    FunctorMap::new(PresentedFunctor::free(fp, cover), f.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::Kind;

    fn pt(kind: Kind, lo: i64, hi: i64, deg: i64) -> CanonicalPoint {
        CanonicalPoint::ints(kind, Some(lo), Some(hi), deg)
    }

    fn obj(v: &[CanonicalPoint]) -> DcatObject {
        DcatObject::new(v.to_vec())
    }

    fn hood_coker() -> PresentedFunctor {
        let fp = Fp::two();
        let q = obj(&[pt(Kind::CO, 0, 1, 0)]);
        let p = obj(&[pt(Kind::CC, 0, 2, 0)]);
        PresentedFunctor::new(DcatMorphism::from_entries(fp, q, p, &[(0, 0, 1)]).unwrap())
    }

    #[test]
    fn free_functor_is_its_own_resolution() {
        let fp = Fp::new(3).unwrap();
        let p = obj(&[pt(Kind::CC, 0, 2, 0), pt(Kind::CO, 1, 2, 1)]);
        let f = PresentedFunctor::free(fp, p.clone());
        assert_eq!(f.betti0(), IntStripFunction::of_object(&p));
        for n in 1..5 {
            assert!(betti(&f, n).unwrap().is_zero(), "β^{n}");
        }
        assert_eq!(euler(&f).unwrap(), IntStripFunction::of_object(&p));
    }

    #[test]
    fn cokernel_of_identity_vanishes() {
        let fp = Fp::two();
        let p = obj(&[pt(Kind::CO, 0, 2, 0)]);
        let f = PresentedFunctor::new(DcatMorphism::identity(fp, p));
        assert!(f.betti0().is_zero());
        for z in f.sample_points() {
            assert_eq!(f.dim_at(&z), 0);
        }
        assert!(euler(&f).unwrap().is_zero());
    }

    #[test]
    fn resolution_of_hood_cokernel() {
        let f = hood_coker();
        let res = equivariant_resolution(&f, 7).unwrap();
        let mut objs: Vec<&DcatObject> = res.terms.iter().collect();
        objs.push(f.q());
        res.verify(&f, &sample_points(objs)).unwrap();
        // The cone of F_[0,1) → F_[0,2] is F_[1,2], so P₂ = F_[1,2][1].
        assert_eq!(
            res.terms[2].summands,
            vec![pt(Kind::CC, 1, 2, 0).t_apply(-1)]
        );
        for n in 1..4 {
            assert_eq!(
                betti(&f, n + 3).unwrap(),
                betti(&f, n).unwrap().precompose_t(1)
            );
        }
    }

    #[test]
    fn hood_cokernel_is_kernel_out_of_cone() {
        // The triangle Q → P → C → Q[1] identifies coker h(δ) with ker h(C → Q[1]).
        let f = hood_coker();
        let tri = triangle(&f.delta).unwrap();
        for z in f.sample_points() {
            assert_eq!(
                f.dim_at(&z),
                tri.cone.h_eval(&z) - tri.from_cone.rank_at(&z)
            );
        }
    }

    #[test]
    fn euler_of_non_projective_has_infinite_support() {
        let f = hood_coker();
        assert!(matches!(euler(&f), Err(Error::InfiniteSupport(_))));
        let chi = euler_upto(&f, 1).unwrap();
        let mut expected = IntStripFunction::zero();
        for n in 0..20 {
            let b = betti(&f, n).unwrap().truncate(1);
            expected = expected.add(&b.scale(if n % 2 == 0 { 1 } else { -1 }));
        }
        assert_eq!(chi, expected);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let f = hood_coker();
        let (k, _) = kernel(&FunctorMap::identity(&f)).unwrap();
        for z in f.sample_points().iter().chain(&k.sample_points()) {
            assert_eq!(k.dim_at(z), 0);
        }
    }

    #[test]
    fn function_json_round_trip() {
        let mut f = IntStripFunction::zero();
        f.add_at(&pt(Kind::CO, 0, 1, 0), 1);
        f.add_at(&pt(Kind::CO, 1, 2, 1), -1);
        assert_eq!(IntStripFunction::from_json(&f.to_json()).unwrap(), f);
    }
}
