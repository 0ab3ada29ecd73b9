//! Homotopies `A → B⊗Λ(t,dt)` out of a Sullivan algebra, their stagewise
//! parametrization by sequences of degree −1 maps, and the resulting actions
//! on `Hom(A, B)`.

use num_traits::One;

use crate::algebra::DgAlgebra;
use crate::cdga::{apply_images, CdgaMorphism, Element, SullivanOrder};
use crate::error::{Error, Result};
use crate::graded::{int, is_odd, Scalar};
use crate::interval::{Interval, IntervalElement};

/// A finitely supported sequence `(b_0, b_1, …)` of degree −1 maps from the
/// generators of `A` to `B`. `maps[i][v] = b_i(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlElement<E> {
    maps: Vec<Vec<E>>,
}

/// A single degree −1 map from the generators of `A` to `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsElement<E> {
    map: Vec<E>,
}

impl<E: Clone> GlElement<E> {
    /// Drops trailing zero maps so that equal sequences compare equal.
    pub fn new<B: DgAlgebra<Elem = E>>(target: &B, mut maps: Vec<Vec<E>>) -> Self {
        while maps
            .last()
            .is_some_and(|m| m.iter().all(|x| target.is_zero(x)))
        {
            maps.pop();
        }
        Self { maps }
    }

    pub fn zero() -> Self {
        Self { maps: Vec::new() }
    }

    /// `(0, …, 0, b, 0, …)` with `b` at position `index`.
    pub fn single<B: DgAlgebra<Elem = E>>(target: &B, index: usize, map: Vec<E>) -> Self {
        let zero = vec![target.zero(); map.len()];
        let mut maps = vec![zero; index];
        maps.push(map);
        Self::new(target, maps)
    }

    pub fn maps(&self) -> &[Vec<E>] {
        &self.maps
    }

    /// Length of the support.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `b_i(v)`, zero past the support.
    pub fn value<B: DgAlgebra<Elem = E>>(&self, target: &B, i: usize, v: usize) -> E {
        self.maps
            .get(i)
            .map(|m| m[v].clone())
            .unwrap_or_else(|| target.zero())
    }

    /// Entrywise sum.
    pub fn add<B: DgAlgebra<Elem = E>>(&self, target: &B, other: &Self, generators: usize) -> Self {
        let n = self.len().max(other.len());
        let maps = (0..n)
            .map(|i| {
                (0..generators)
                    .map(|v| target.add(&self.value(target, i, v), &other.value(target, i, v)))
                    .collect()
            })
            .collect();
        Self::new(target, maps)
    }

    /// Postcomposes every map with an algebra map `B → C`.
    pub fn map<C: DgAlgebra>(&self, target: &C, f: impl Fn(&E) -> C::Elem) -> GlElement<C::Elem> {
        GlElement::new(
            target,
            self.maps.iter().map(|m| m.iter().map(&f).collect()).collect(),
        )
    }
}

impl<E: Clone> GsElement<E> {
    pub fn new(map: Vec<E>) -> Self {
        Self { map }
    }

    pub fn zero<B: DgAlgebra<Elem = E>>(target: &B, generators: usize) -> Self {
        Self {
            map: vec![target.zero(); generators],
        }
    }

    pub fn map(&self) -> &[E] {
        &self.map
    }

    /// `b ↦ (b, 0, 0, …)`.
    pub fn to_gl<B: DgAlgebra<Elem = E>>(&self, target: &B) -> GlElement<E> {
        GlElement::new(target, vec![self.map.clone()])
    }

    pub fn add<B: DgAlgebra<Elem = E>>(&self, target: &B, other: &Self) -> Self {
        Self {
            map: self
                .map
                .iter()
                .zip(&other.map)
                .map(|(x, y)| target.add(x, y))
                .collect(),
        }
    }

    pub fn scale<B: DgAlgebra<Elem = E>>(&self, target: &B, c: &Scalar) -> Self {
        Self {
            map: self.map.iter().map(|x| target.scale(x, c)).collect(),
        }
    }
}

/// A dg map `A → B⊗Λ(t,dt)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy<B: DgAlgebra> {
    morphism: CdgaMorphism<Interval<B>>,
}

impl<B: DgAlgebra> Homotopy<B> {
    /// Wraps a map after checking it commutes with the differentials.
    pub fn new(morphism: CdgaMorphism<Interval<B>>) -> Result<Self> {
        let cert = morphism.certificate();
        if !cert.passed {
            return Err(Error::NotAMorphism(morphism.describe_failure(&cert)));
        }
        Ok(Self { morphism })
    }

    /// `v ↦ φ(v)` as a constant homotopy.
    pub fn constant(phi: &CdgaMorphism<B>) -> Self {
        let ib = Interval::new(phi.target().clone());
        let images = phi.images().iter().map(|x| ib.lift(x)).collect();
        Self {
            morphism: CdgaMorphism::new_unchecked(phi.source().clone(), ib, images),
        }
    }

    pub fn morphism(&self) -> &CdgaMorphism<Interval<B>> {
        &self.morphism
    }

    pub fn interval(&self) -> &Interval<B> {
        self.morphism.target()
    }

    pub fn base(&self) -> &B {
        self.interval().base()
    }

    /// `ev₀∘h`.
    pub fn start(&self) -> CdgaMorphism<B> {
        let ib = self.interval().clone();
        self.morphism.map_target(ib.base().clone(), |x| ib.ev0(x))
    }

    /// `ev₁∘h`.
    pub fn end(&self) -> CdgaMorphism<B> {
        let ib = self.interval().clone();
        self.morphism.map_target(ib.base().clone(), |x| ib.ev1(x))
    }

    pub fn apply(&self, x: &Element) -> IntervalElement<B::Elem> {
        self.morphism.apply(x)
    }

    /// `α_j(x)`: the `t^j` coefficient of `h(x)`, for `j ≥ 1`.
    pub fn alpha(&self, j: usize, x: &Element) -> B::Elem {
        self.interval().t_coefficient(&self.apply(x), j)
    }

    /// `β_i(x) = (−1)^{|x|}·(t^i dt coefficient of h(x))`, applied to each
    /// homogeneous component.
    pub fn beta(&self, i: usize, x: &Element) -> B::Elem {
        let a = self.morphism.source();
        let ib = self.interval();
        let b = ib.base();
        a.homogeneous_components(x)
            .into_iter()
            .fold(b.zero(), |acc, (deg, part)| {
                let c = ib.dt_coefficient(&self.apply(&part), i);
                b.add(&acc, &if is_odd(deg) { b.neg(&c) } else { c })
            })
    }

    /// Checks `−j α_j(x) = dβ_{j−1}(x) + β_{j−1}(dx)` for `j = 1..=max_j`.
    pub fn check_decomposition(&self, x: &Element, max_j: usize) -> bool {
        let a = self.morphism.source();
        let ib = self.interval();
        let b = ib.base();
        // Evaluate h once per homogeneous piece, then read off coefficients.
        let signed = |y: &Element| -> Vec<(bool, IntervalElement<B::Elem>)> {
            a.homogeneous_components(y)
                .into_iter()
                .map(|(deg, part)| (is_odd(deg), self.apply(&part)))
                .collect()
        };
        let beta = |pieces: &[(bool, IntervalElement<B::Elem>)], i: usize| {
            pieces.iter().fold(b.zero(), |acc, (odd, hx)| {
                let c = ib.dt_coefficient(hx, i);
                b.add(&acc, &if *odd { b.neg(&c) } else { c })
            })
        };
        let hx = self.apply(x);
        let px = signed(x);
        let pdx = signed(&a.differential(x));
        (1..=max_j).all(|j| {
            let lhs = b.scale(&ib.t_coefficient(&hx, j), &-int(j as i64));
            let rhs = b.add(&b.d(&beta(&px, j - 1)), &beta(&pdx, j - 1));
            lhs == rhs
        })
    }

    /// Highest power of `t` among the generator images.
    pub fn degree_in_t(&self) -> usize {
        self.morphism
            .images()
            .iter()
            .map(|x| x.t_part().len().max(x.dt_part().len() + 1).saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

fn check_gl<B: DgAlgebra>(gl: &GlElement<B::Elem>, phi: &CdgaMorphism<B>) -> Result<()> {
    let a = phi.source();
    let b = phi.target();
    for (i, m) in gl.maps().iter().enumerate() {
        if m.len() != a.num_generators() {
            return Err(Error::LengthMismatch {
                expected: a.num_generators(),
                found: m.len(),
            });
        }
        for (v, x) in m.iter().enumerate() {
            let expected = a.generator_degree(v) - 1;
            if !b.degree(x).admits(expected) {
                return Err(Error::DegreeMismatch {
                    context: format!("b_{i}({})", a.symbol(v)),
                    expected,
                    found: match b.degree(x) {
                        crate::algebra::Degree::Homogeneous(d) => d,
                        _ => i32::MIN,
                    },
                });
            }
        }
    }
    Ok(())
}

/// The homotopy starting at `φ` whose `dt`-coefficients on generators are
/// given by `gl`, built stage by stage:
///
/// `h(v) = φ(v) − Σ_{j≥1} (d b_{j−1}(v) + β_{j−1}(dv))/j · t^j + (−1)^{|v|} Σ_i b_i(v) t^i dt`.
pub fn theta<B: DgAlgebra>(
    gl: &GlElement<B::Elem>,
    phi: &CdgaMorphism<B>,
    order: &SullivanOrder,
) -> Result<Homotopy<B>> {
    let a = phi.source();
    order.validate(a)?;
    let cert = phi.certificate();
    if !cert.passed {
        return Err(Error::NotAMorphism(phi.describe_failure(&cert)));
    }
    check_gl(gl, phi)?;
    let b = phi.target();
    let ib = Interval::new(b.clone());
    let mut images = vec![ib.zero(); a.num_generators()];
    for v in order.processing_order() {
        let odd = is_odd(a.generator_degree(v));
        let hdv = apply_images(&ib, &images, a.generator_differential(v));
        let top = gl.len().max(hdv.dt_part().len());
        let mut t = vec![phi.image(v).clone()];
        for j in 1..=top {
            let bj = gl.value(b, j - 1, v);
            let c = ib.dt_coefficient(&hdv, j - 1);
            // β_{j−1}(dv) = (−1)^{|v|+1} c
            let beta_dv = if odd { c } else { b.neg(&c) };
            let sum = b.add(&b.d(&bj), &beta_dv);
            t.push(b.scale(&sum, &-Scalar::from_integer((j as i64).into()).recip()));
        }
        let dt = (0..gl.len())
            .map(|i| {
                let x = gl.value(b, i, v);
                if odd {
                    b.neg(&x)
                } else {
                    x
                }
            })
            .collect();
        images[v] = ib.from_parts(t, dt);
    }
    let h = CdgaMorphism::new_unchecked(a.clone(), ib, images);
    let cert = h.certificate();
    if !cert.passed {
        return Err(Error::Verification(format!(
            "stagewise homotopy does not commute with d: {}",
            h.describe_failure(&cert)
        )));
    }
    Ok(Homotopy { morphism: h })
}

/// Recovers `(gl, φ)` from a homotopy: `φ = ev₀∘h` and
/// `b_i(v) = (−1)^{|v|}·(t^i dt coefficient of h(v))`.
pub fn theta_inverse<B: DgAlgebra>(h: &Homotopy<B>) -> (GlElement<B::Elem>, CdgaMorphism<B>) {
    let a = h.morphism.source();
    let ib = h.interval();
    let b = ib.base();
    let len = h
        .morphism
        .images()
        .iter()
        .map(|x| x.dt_part().len())
        .max()
        .unwrap_or(0);
    let maps = (0..len)
        .map(|i| {
            (0..a.num_generators())
                .map(|v| {
                    let c = ib.dt_coefficient(h.morphism.image(v), i);
                    if is_odd(a.generator_degree(v)) {
                        b.neg(&c)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    (GlElement::new(b, maps), h.start())
}

/// `ev₁∘Θ(gl, φ)`.
pub fn gl_act<B: DgAlgebra>(
    gl: &GlElement<B::Elem>,
    phi: &CdgaMorphism<B>,
    order: &SullivanOrder,
) -> Result<CdgaMorphism<B>> {
    Ok(theta(gl, phi, order)?.end())
}

/// The action through `b ↦ (b, 0, …)`.
pub fn gs_act<B: DgAlgebra>(
    b: &GsElement<B::Elem>,
    phi: &CdgaMorphism<B>,
    order: &SullivanOrder,
) -> Result<CdgaMorphism<B>> {
    gl_act(&b.to_gl(phi.target()), phi, order)
}

/// `Σ_i b_i/(i+1)`.
pub fn gs_collapse<B: DgAlgebra>(target: &B, gl: &GlElement<B::Elem>, generators: usize) -> GsElement<B::Elem> {
    let mut map = vec![target.zero(); generators];
    for (i, m) in gl.maps().iter().enumerate() {
        let w = Scalar::new(One::one(), ((i + 1) as i64).into());
        for (slot, x) in map.iter_mut().zip(m) {
            *slot = target.add(slot, &target.scale(x, &w));
        }
    }
    GsElement::new(map)
}

/// Concatenates `h: φ ≃ φ'` and `h': φ' ≃ φ''`. Builds
/// `H = Θ(gl', h): A → B⊗Λ(t,dt)⊗Λ(s,ds)`, where `gl'` is read off `h'` and
/// lifted along `B → B⊗Λ(t,dt)`, and collapses it with `s, t ↦ u`.
pub fn compose_homotopies<B: DgAlgebra>(
    h: &Homotopy<B>,
    h2: &Homotopy<B>,
    order: &SullivanOrder,
) -> Result<Homotopy<B>> {
    if h.end() != h2.start() {
        return Err(Error::EndpointMismatch);
    }
    let (gl2, _) = theta_inverse(h2);
    let ib = h.interval().clone();
    let lifted = gl2.map(&ib, |x| ib.lift(x));
    let big = theta(&lifted, &h.morphism, order)?;
    let outer = big.interval().clone();
    let images = big
        .morphism
        .images()
        .iter()
        .map(|x| outer.chi_collapse(x))
        .collect();
    Homotopy::new(CdgaMorphism::new_unchecked(
        h.morphism.source().clone(),
        ib,
        images,
    ))
}

/// Whether two maps agree on every generator.
pub fn same_morphism<B: DgAlgebra>(f: &CdgaMorphism<B>, g: &CdgaMorphism<B>) -> bool {
    f.images() == g.images()
}

/// Zero test for a whole sequence.
pub fn gl_is_zero<B: DgAlgebra>(target: &B, gl: &GlElement<B::Elem>) -> bool {
    gl.maps().iter().all(|m| m.iter().all(|x| target.is_zero(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ground;
    use crate::cdga::{sullivan_order, FreeCdga};
    use crate::ce::{chevalley_eilenberg, generator_scale};
    use crate::graded::{frac, Convention, GradedBasis};
    use crate::linf::tests::heisenberg;
    use crate::random::{random_gl, Sampler};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn idempotent_algebra() -> FreeCdga {
        FreeCdga::build(
            GradedBasis::new([("a", 0), ("b", -1)], Convention::Cohomological).unwrap(),
            |bare| Ok(vec![bare.zero(), bare.parse_element("a - a^2")?]),
        )
        .unwrap()
    }

    #[test]
    fn zero_sequence_gives_constant_homotopy() {
        let a = idempotent_algebra();
        let id = CdgaMorphism::identity(&a);
        let order = sullivan_order(&a).unwrap();
        let h = theta(&GlElement::zero(), &id, &order).unwrap();
        assert_eq!(h, Homotopy::constant(&id));
        let (gl, phi) = theta_inverse(&h);
        assert!(gl.is_empty());
        assert_eq!(phi, id);
    }

    #[test]
    fn heisenberg_homotopy_by_hand() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let (alpha, beta, s) = (int(2), frac(1, 3), frac(3, 2));
        let phi = ce.mc_to_morphism(&g.certify(&[alpha.clone(), beta.clone()]).unwrap()).unwrap();
        let e = ce.generator_of(0);
        let mut b0 = vec![int(0); 3];
        b0[e] = s.clone();
        let gl = GlElement::new(&Ground, vec![b0]);
        let h = theta(&gl, &phi, ce.order()).unwrap();
        let ib = h.interval().clone();
        let kappa = generator_scale();
        assert_eq!(h.morphism().image(e), &ib.monomial_dt(&-s.clone(), 0));
        assert_eq!(h.morphism().image(ce.generator_of(1)), &ib.lift(&(&kappa * &alpha)));
        // dŷ = −2êx̂ gives h(ŷ) = κβ + 2sκα t.
        let y_image = ib.from_parts(
            vec![&kappa * &beta, int(2) * &s * &kappa * &alpha],
            Vec::new(),
        );
        assert_eq!(h.morphism().image(ce.generator_of(2)), &y_image);
        assert_eq!(theta_inverse(&h), (gl.clone(), phi.clone()));
        let moved = gl_act(&gl, &phi, ce.order()).unwrap();
        let expected = g.certify(&[alpha.clone(), &beta + int(2) * &s * &alpha]).unwrap();
        assert_eq!(moved, ce.mc_to_morphism(&expected).unwrap());
    }

    #[test]
    fn collapse_examples() {
        let m = |x: i64| vec![int(x), int(0)];
        let gl = GlElement::new(&Ground, vec![m(6), m(4), m(3)]);
        assert_eq!(gs_collapse(&Ground, &gl, 2).map(), &[int(6 + 2 + 1), int(0)]);
        let only_b1 = GlElement::single(&Ground, 1, m(4));
        assert_eq!(gs_collapse(&Ground, &only_b1, 2).map(), &[int(2), int(0)]);
        let only_b0 = GlElement::new(&Ground, vec![m(5)]);
        assert_eq!(gs_collapse(&Ground, &only_b0, 2).map(), &[int(5), int(0)]);
    }

    #[test]
    fn self_maps_of_idempotent_algebra() {
        let a = idempotent_algebra();
        let id = CdgaMorphism::identity(&a);
        let order = sullivan_order(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let gl = random_gl(&mut rng, &a, &a, 3);
            let h = theta(&gl, &id, &order).unwrap();
            assert_eq!(theta_inverse(&h), (gl.clone(), id.clone()));
            for x in [a.generator(0), a.generator(1), a.parse_element("a^2*b - a").unwrap()] {
                assert!(h.check_decomposition(&x, h.degree_in_t()));
            }
            let hat = gs_collapse(&a, &gl, 2);
            assert_eq!(gl_act(&gl, &id, &order).unwrap(), gs_act(&hat, &id, &order).unwrap());
        }
        let x = a.sample(-1, &mut rng);
        assert!(a.degree_of(&x).admits(-1));
    }

    #[test]
    fn composition_of_heisenberg_paths() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let phi = ce.mc_to_morphism(&g.certify(&[int(1), int(0)]).unwrap()).unwrap();
        let e = ce.generator_of(0);
        let gl_at = |s: Scalar| {
            let mut b = vec![int(0); 3];
            b[e] = s;
            GlElement::new(&Ground, vec![b])
        };
        let h = theta(&gl_at(int(1)), &phi, ce.order()).unwrap();
        let h2 = theta(&gl_at(frac(1, 2)), &h.end(), ce.order()).unwrap();
        let composite = compose_homotopies(&h, &h2, ce.order()).unwrap();
        assert_eq!(composite, theta(&gl_at(frac(3, 2)), &phi, ce.order()).unwrap());
        let constant = Homotopy::constant(&h.end());
        assert_eq!(compose_homotopies(&h, &constant, ce.order()).unwrap(), h);
        assert!(matches!(
            compose_homotopies(&h2, &h, ce.order()),
            Err(Error::EndpointMismatch)
        ));
    }
}
