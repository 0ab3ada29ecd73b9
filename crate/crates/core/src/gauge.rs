//! The classical side for dg Lie algebras: the BCH product on `𝔤₀`, the
//! gauge flow as a Maurer–Cartan path, and its conversion into an additive
//! witness `b ∈ G_S`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::Ground;
use crate::ce::{generator_scale, CEPresentation};
use crate::error::{Error, Result};
use crate::graded::{factorial, Scalar};
use crate::homotopy::{gs_act, gs_collapse, same_morphism, theta_inverse, GsElement, Homotopy};
use crate::linf::{trim_poly, LInfinityAlgebra, MCElement, MCPath, NilpotencyBound};

/// An element of `𝔤₀`, as coefficients over the degree 0 basis slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaugeElement(pub Vec<Scalar>);

impl GaugeElement {
    pub fn zero(g: &LInfinityAlgebra) -> Self {
        Self(vec![Scalar::zero(); g.slice(0).len()])
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }
}

fn check_len(g: &LInfinityAlgebra, xi: &GaugeElement) -> Result<()> {
    let n = g.slice(0).len();
    if xi.0.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: xi.0.len(),
        });
    }
    Ok(())
}

/// `[ξ, η]` on `𝔤₀` through `ℓ₂`.
pub fn bracket0(g: &LInfinityAlgebra, xi: &GaugeElement, eta: &GaugeElement) -> Result<GaugeElement> {
    check_len(g, xi)?;
    check_len(g, eta)?;
    let a = g.embed(0, &xi.0)?;
    let b = g.embed(0, &eta.0)?;
    Ok(GaugeElement(g.restrict(0, &g.ell(&[&a, &b]))))
}

/// Length beyond which iterated brackets in `𝔤₀` vanish.
fn bracket_depth(g: &LInfinityAlgebra) -> Result<usize> {
    match g.nilpotency_bound(0)? {
        NilpotencyBound::Bounded(k) => Ok(k.max(1)),
        NilpotencyBound::Unbounded => Err(Error::NotNilpotent("degree 0 part".into())),
    }
}

type Word = Vec<u8>;

fn word_mul(a: &BTreeMap<Word, Scalar>, b: &BTreeMap<Word, Scalar>, cap: usize) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > cap {
                continue;
            }
            let mut w = u.clone();
            w.extend(v);
            *out.entry(w).or_insert_with(Scalar::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `log(e^X e^Y)` in the free associative algebra on `X = 0`, `Y = 1`,
/// truncated above word length `cap`. The constant word is dropped.
fn log_exp_exp(cap: usize) -> BTreeMap<Word, Scalar> {
    let mut z: BTreeMap<Word, Scalar> = BTreeMap::new();
    for a in 0..=cap {
        for b in 0..=cap - a {
            if a + b == 0 {
                continue;
            }
            let mut w = vec![0u8; a];
            w.extend(std::iter::repeat(1u8).take(b));
            z.insert(w, (factorial(a) * factorial(b)).recip());
        }
    }
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    let mut power = z.clone();
    for n in 1..=cap {
        let c = Scalar::new(if n % 2 == 1 { 1 } else { -1 }.into(), (n as i64).into());
        for (w, x) in &power {
            *out.entry(w.clone()).or_insert_with(Scalar::zero) += x * &c;
        }
        power = word_mul(&power, &z, cap);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `log(e^ξ e^η)` via the Dynkin–Specht–Wever projection: a Lie word of
/// length `n` equals `1/n` times its right-nested bracketing.
pub fn bch(g: &LInfinityAlgebra, xi: &GaugeElement, eta: &GaugeElement) -> Result<GaugeElement> {
    check_len(g, xi)?;
    check_len(g, eta)?;
    if !g.is_dgla() {
        return Err(Error::NotDgla);
    }
    let cap = bracket_depth(g)?;
    let letters = [xi, eta];
    let mut out = GaugeElement::zero(g);
    for (w, c) in log_exp_exp(cap) {
        let mut acc = letters[*w.last().expect("nonempty word") as usize].clone();
        for &l in w.iter().rev().skip(1) {
            if acc.is_zero() {
                break;
            }
            acc = bracket0(g, letters[l as usize], &acc)?;
        }
        let weight = c / Scalar::from_integer((w.len() as i64).into());
        out = out.add(&acc.scale(&weight));
    }
    Ok(out)
}

fn require_flow_domain(g: &LInfinityAlgebra) -> Result<()> {
    if !g.is_dgla() {
        return Err(Error::NotDgla);
    }
    for degree in [0, -1, -2] {
        if g.nilpotency_bound(degree)? == NilpotencyBound::Unbounded {
            return Err(Error::NotNilpotent(format!("degree {degree} part")));
        }
    }
    Ok(())
}

/// Integrates the `dt`-component of the Maurer–Cartan equation of
/// `x(t) + ξ(t) dt` from `x(0) = x`, one power of `t` at a time, and
/// certifies the result through [`LInfinityAlgebra::mc_residual_path`].
///
/// `xi` lists the coefficients of `ξ(t)`, lowest power first.
pub fn solve_flow(g: &LInfinityAlgebra, xi: &[GaugeElement], x: &MCElement) -> Result<MCPath> {
    require_flow_domain(g)?;
    for c in xi {
        check_len(g, c)?;
    }
    if !x.is_certified() {
        return Err(Error::NotMaurerCartan("initial point".into()));
    }
    let dim0 = g.slice(0).len();
    let mut path = MCPath {
        x: x.coefficients().iter().map(|c| vec![c.clone()]).collect(),
        xi: (0..dim0)
            .map(|k| trim_poly(xi.iter().map(|c| c.0[k].clone()).collect()))
            .collect(),
    };
    // The coefficient of t^k in the dt-component only sees x up to t^k.
    let cap = (xi.len().max(1)) * (g.dim() + 2) + 2;
    for k in 0..cap {
        let residual = g.mc_residual_path(&path)?;
        if residual.is_zero() {
            break;
        }
        for (p, r) in path.x.iter_mut().zip(&residual.dt_component) {
            let rk = r.get(k).cloned().unwrap_or_else(Scalar::zero);
            p.push(-rk / Scalar::from_integer(((k + 1) as i64).into()));
        }
    }
    for p in &mut path.x {
        *p = trim_poly(std::mem::take(p));
    }
    let residual = g.mc_residual_path(&path)?;
    if !residual.is_zero() {
        return Err(Error::Verification(format!(
            "flow did not terminate within degree {cap}: {residual:?}"
        )));
    }
    Ok(path)
}

/// The path with constant `dt`-component `ξ` starting at `x`.
pub fn gauge_flow(g: &LInfinityAlgebra, xi: &GaugeElement, x: &MCElement) -> Result<MCPath> {
    solve_flow(g, std::slice::from_ref(xi), x)
}

/// Endpoint of [`gauge_flow`].
pub fn gauge_act(g: &LInfinityAlgebra, xi: &GaugeElement, x: &MCElement) -> Result<MCElement> {
    g.certify(&gauge_flow(g, xi, x)?.end())
}

/// `b` with `b(^se) = −κ ξ_e` on generators dual to `𝔤₀` and zero elsewhere:
/// the map `𝔤₀ → G_S(C*(𝔤), 𝕜)` under which a constant gauge path has
/// `dt`-data `(b, 0, …)`.
pub fn additive_from_g0(ce: &CEPresentation, xi: &GaugeElement) -> Result<GsElement<Scalar>> {
    let g = ce.lie();
    check_len(g, xi)?;
    let mut map = vec![Scalar::zero(); ce.algebra().num_generators()];
    let factor = -generator_scale();
    for (&e, c) in g.slice(0).iter().zip(&xi.0) {
        map[ce.generator_of(e)] = c * &factor;
    }
    Ok(GsElement::new(map))
}

/// Inverse of [`additive_from_g0`] on elements supported on degree 1
/// generators.
pub fn additive_to_g0(ce: &CEPresentation, b: &GsElement<Scalar>) -> GaugeElement {
    let factor = -generator_scale();
    GaugeElement(
        ce.lie()
            .slice(0)
            .iter()
            .map(|&e| &b.map()[ce.generator_of(e)] / &factor)
            .collect(),
    )
}

/// The additive witness of an arbitrary certified path: the path as a
/// homotopy, its `dt`-data through `Θ⁻¹`, collapsed to one map. The result
/// is checked to move the start to the end.
pub fn path_to_additive(ce: &CEPresentation, path: &MCPath) -> Result<GsElement<Scalar>> {
    let g = ce.lie();
    let h = Homotopy::new(ce.path_to_homotopy(path)?)?;
    let (gl, phi) = theta_inverse(&h);
    let b = gs_collapse(&Ground, &gl, ce.algebra().num_generators());
    let moved = gs_act(&b, &phi, ce.order())?;
    let end = ce.mc_to_morphism(&g.certify(&path.end())?)?;
    if !same_morphism(&moved, &end) {
        let show = |v: &[Scalar]| g.render_slice(-1, v);
        return Err(Error::Verification(format!(
            "collapsed witness moves {} to {}, not {}",
            show(&path.start()),
            ce.morphism_to_mc(&moved)
                .map(|m| show(m.coefficients()))
                .unwrap_or_else(|e| e.to_string()),
            show(&path.end())
        )));
    }
    Ok(b)
}

/// The additive witness of `gauge_act(ξ, x)`.
pub fn gauge_to_additive(ce: &CEPresentation, xi: &GaugeElement, x: &MCElement) -> Result<GsElement<Scalar>> {
    let g = ce.lie();
    let path = gauge_flow(g, xi, x)?;
    let b = path_to_additive(ce, &path)?;
    // Same check against the separately computed endpoint.
    let target = ce.mc_to_morphism(&gauge_act(g, xi, x)?)?;
    if !same_morphism(&gs_act(&b, &ce.mc_to_morphism(x)?, ce.order())?, &target) {
        return Err(Error::Verification("gauge witness".into()));
    }
    Ok(b)
}

/// One verified gauge move together with its additive witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeWitness {
    pub point: usize,
    pub sample: usize,
    pub image: Vec<Scalar>,
    pub witness: GsElement<Scalar>,
}

/// One additive move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMove {
    pub point: usize,
    pub sample: usize,
    pub image: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrbitReport {
    pub gauge: Vec<GaugeWitness>,
    pub additive: Vec<AdditiveMove>,
}

impl OrbitReport {
    /// Images of point `i` under both actions, the point itself included.
    pub fn orbit_of(&self, i: usize) -> (Vec<&[Scalar]>, Vec<&[Scalar]>) {
        (
            self.gauge
                .iter()
                .filter(|w| w.point == i)
                .map(|w| w.image.as_slice())
                .collect(),
            self.additive
                .iter()
                .filter(|w| w.point == i)
                .map(|w| w.image.as_slice())
                .collect(),
        )
    }
}

/// Moves every point by every gauge sample (with its additive witness) and
/// every additive sample. Work runs in parallel; the report is ordered by
/// `(point, sample)`.
pub fn orbit_compare(
    ce: &CEPresentation,
    xs: &[MCElement],
    gauge_samples: &[GaugeElement],
    additive_samples: &[GsElement<Scalar>],
) -> Result<OrbitReport> {
    let g = ce.lie();
    for x in xs {
        if !x.is_certified() {
            return Err(Error::NotMaurerCartan(g.render_slice(-1, x.coefficients())));
        }
    }
    let gauge_pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..gauge_samples.len()).map(move |j| (i, j)))
        .collect();
    let gauge = gauge_pairs
        .par_iter()
        .map(|&(i, j)| {
            let image = gauge_act(g, &gauge_samples[j], &xs[i])?;
            let witness = gauge_to_additive(ce, &gauge_samples[j], &xs[i])?;
            Ok(GaugeWitness {
                point: i,
                sample: j,
                image: image.coefficients().to_vec(),
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let additive_pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..additive_samples.len()).map(move |j| (i, j)))
        .collect();
    let additive = additive_pairs
        .par_iter()
        .map(|&(i, j)| {
            let phi = ce.mc_to_morphism(&xs[i])?;
            let moved = gs_act(&additive_samples[j], &phi, ce.order())?;
            Ok(AdditiveMove {
                point: i,
                sample: j,
                image: ce.morphism_to_mc(&moved)?.coefficients().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitReport { gauge, additive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::chevalley_eilenberg;
    use crate::acceptance::matrix;
    use crate::graded::{frac, int};
    use crate::linf::tests::{free_odd_y, heisenberg};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn heis3() -> LInfinityAlgebra {
        LInfinityAlgebra::from_entries([("p", 0), ("q", 0), ("r", 0)], 2)
            .unwrap()
            .with_bracket(&["p", "q"], &[("r", int(1))])
            .unwrap()
    }

    /// Filiform: [e1,e2] = e3, [e1,e3] = e4.
    fn filiform() -> LInfinityAlgebra {
        LInfinityAlgebra::from_entries([("e1", 0), ("e2", 0), ("e3", 0), ("e4", 0)], 2)
            .unwrap()
            .with_bracket(&["e1", "e2"], &[("e3", int(1))])
            .unwrap()
            .with_bracket(&["e1", "e3"], &[("e4", int(1))])
            .unwrap()
    }

    fn heis3_module() -> LInfinityAlgebra {
        LInfinityAlgebra::from_entries(
            [("p", 0), ("q", 0), ("r", 0), ("x1", -1), ("x2", -1), ("x3", -1)],
            2,
        )
        .unwrap()
        .with_bracket(&["p", "q"], &[("r", int(1))])
        .unwrap()
        .with_bracket(&["p", "x2"], &[("x1", int(1))])
        .unwrap()
        .with_bracket(&["q", "x3"], &[("x2", int(1))])
        .unwrap()
        .with_bracket(&["r", "x3"], &[("x1", int(1))])
        .unwrap()
    }

    #[test]
    fn matrix_models_are_faithful() {
        // The commutator of the models reproduces the structure constants.
        let e = |i: usize| {
            let mut c = vec![Scalar::zero(); 4];
            c[i] = int(1);
            matrix::filiform(&c)
        };
        let comm = matrix::commutator;
        assert_eq!(matrix::filiform_coords(&comm(&e(0), &e(1))), v(&[0, 0, 1, 0]));
        assert_eq!(matrix::filiform_coords(&comm(&e(0), &e(2))), v(&[0, 0, 0, 1]));
        assert_eq!(matrix::filiform_coords(&comm(&e(1), &e(2))), v(&[0, 0, 0, 0]));
        let g = filiform();
        let b = bracket0(&g, &GaugeElement(v(&[1, 0, 0, 0])), &GaugeElement(v(&[0, 1, 0, 0]))).unwrap();
        assert_eq!(b.0, v(&[0, 0, 1, 0]));
    }

    #[test]
    fn heisenberg_bch_matches_matrices() {
        let g = heis3();
        let p = GaugeElement(v(&[1, 0, 0]));
        let q = GaugeElement(v(&[0, 1, 0]));
        let z = bch(&g, &p, &q).unwrap();
        assert_eq!(z.0, vec![int(1), int(1), frac(1, 2)]);
        let m = matrix::log(&matrix::mul(&matrix::exp(&matrix::heis3(&p.0)), &matrix::exp(&matrix::heis3(&q.0))));
        assert_eq!(m, matrix::heis3(&z.0));
    }

    #[test]
    fn trivial_cases() {
        let g = heis3();
        let xi = GaugeElement(vec![frac(2, 3), int(-1), int(5)]);
        assert_eq!(bch(&g, &xi, &GaugeElement::zero(&g)).unwrap(), xi);
        assert!(bch(&g, &xi, &xi.neg()).unwrap().is_zero());
        let a = heisenberg();
        let s = GaugeElement(vec![int(3)]);
        let t = GaugeElement(vec![frac(-1, 2)]);
        assert_eq!(bch(&a, &s, &t).unwrap(), s.add(&t));
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        (-4i64..=4, 1i64..=3).prop_map(|(p, q)| frac(p, q))
    }

    fn elem(n: usize) -> impl Strategy<Value = GaugeElement> {
        proptest::collection::vec(scalar(), n).prop_map(GaugeElement)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn filiform_bch_matches_matrices(a in elem(4), b in elem(4)) {
            let g = filiform();
            let z = bch(&g, &a, &b).unwrap();
            let m = matrix::log(&matrix::mul(&matrix::exp(&matrix::filiform(&a.0)), &matrix::exp(&matrix::filiform(&b.0))));
            prop_assert_eq!(matrix::filiform_coords(&m), z.0);
        }

        #[test]
        fn bch_is_associative(a in elem(4), b in elem(4), c in elem(4)) {
            let g = filiform();
            let left = bch(&g, &bch(&g, &a, &b).unwrap(), &c).unwrap();
            let right = bch(&g, &a, &bch(&g, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn heisenberg_flow_is_linear_in_t() {
        let g = heisenberg();
        let x = g.certify(&v(&[2, 1])).unwrap();
        let path = gauge_flow(&g, &GaugeElement(v(&[3])), &x).unwrap();
        assert!(g.mc_residual_path(&path).unwrap().is_zero());
        assert_eq!(path.degree_in_t(), 1);
        assert_eq!(path.start(), v(&[2, 1]));
        // The endpoint moves along y by a multiple of sα.
        let end = gauge_act(&g, &GaugeElement(v(&[3])), &x).unwrap();
        assert_eq!(end.coefficients()[0], int(2));
        assert_ne!(end.coefficients()[1], int(1));
        let zero = gauge_act(&g, &GaugeElement::zero(&g), &x).unwrap();
        assert_eq!(zero.coefficients(), x.coefficients());
    }

    #[test]
    fn empty_degree_zero_gives_constant_path() {
        let g = free_odd_y();
        let x = g.certify(&v(&[-2])).unwrap();
        let path = gauge_flow(&g, &GaugeElement(Vec::new()), &x).unwrap();
        assert_eq!(path, MCPath::constant(&v(&[-2]), 0));
    }

    #[test]
    fn heisenberg_witness_is_single_term() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let x = g.certify(&v(&[1, 0])).unwrap();
        let xi = GaugeElement(v(&[1]));
        let b = gauge_to_additive(&ce, &xi, &x).unwrap();
        assert_eq!(b, additive_from_g0(&ce, &xi).unwrap());
        assert_eq!(additive_to_g0(&ce, &b), xi);
        assert!(gauge_to_additive(&ce, &GaugeElement::zero(&g), &x)
            .unwrap()
            .map()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn time_dependent_path_collapses_with_weights() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let x = g.certify(&v(&[1, 0])).unwrap();
        let profile = [GaugeElement(v(&[1])), GaugeElement(v(&[2]))];
        let path = solve_flow(&g, &profile, &x).unwrap();
        let b = path_to_additive(&ce, &path).unwrap();
        // b = b₀ + b₁/2 with both terms nonzero.
        let expect = additive_from_g0(&ce, &GaugeElement(v(&[2]))).unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn gauge_composition_follows_bch() {
        let g = heis3_module();
        let x = g.certify(&v(&[1, -2, 3])).unwrap();
        let xi = GaugeElement(vec![int(1), frac(1, 2), int(0)]);
        let eta = GaugeElement(vec![int(-1), int(2), int(1)]);
        let twice = gauge_act(&g, &eta, &gauge_act(&g, &xi, &x).unwrap()).unwrap();
        let once = gauge_act(&g, &bch(&g, &eta, &xi).unwrap(), &x).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn time_dependent_profile_does_not_collapse_on_non_abelian_fixture() {
        let g = heis3_module();
        let ce = chevalley_eilenberg(&g).unwrap();
        let x = g.certify(&v(&[1, -2, 3])).unwrap();
        let profile = [GaugeElement(v(&[1, 0, 0])), GaugeElement(v(&[0, 1, 0]))];
        let path = solve_flow(&g, &profile, &x).unwrap();
        assert_eq!(path.end(), vec![frac(-1, 2), frac(-1, 2), int(3)]);
        // The path is a certified homotopy, but Σ b_i/(i+1) lands elsewhere.
        match path_to_additive(&ce, &path) {
            Err(Error::Verification(msg)) => assert!(msg.contains("-1/4*x1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_abelian_witnesses_verify() {
        let g = heis3_module();
        let ce = chevalley_eilenberg(&g).unwrap();
        let x = g.certify(&v(&[1, -2, 3])).unwrap();
        let xi = GaugeElement(vec![int(1), frac(1, 2), int(-1)]);
        let b = gauge_to_additive(&ce, &xi, &x).unwrap();
        assert_eq!(additive_to_g0(&ce, &b), xi);
    }

    #[test]
    fn orbit_report_is_ordered() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let xs = vec![g.certify(&v(&[1, 0])).unwrap(), g.certify(&v(&[0, 4])).unwrap()];
        let gs = vec![GaugeElement(v(&[1])), GaugeElement(v(&[-2]))];
        let bs = vec![additive_from_g0(&ce, &GaugeElement(v(&[5]))).unwrap()];
        let report = orbit_compare(&ce, &xs, &gs, &bs).unwrap();
        let order: Vec<_> = report.gauge.iter().map(|w| (w.point, w.sample)).collect();
        assert_eq!(order, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let (gauge, additive) = report.orbit_of(1);
        assert!(gauge.iter().chain(&additive).all(|im| *im == v(&[0, 4]).as_slice()));
    }
}
