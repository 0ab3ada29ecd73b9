//! Seeded random inputs: small rationals, algebra elements, sequences of
//! degree −1 maps and Maurer–Cartan elements.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{DgAlgebra, Ground};
use crate::cdga::{Element, FreeCdga};
use crate::graded::{frac, Scalar};
use crate::homotopy::{GlElement, GsElement};
use crate::linf::{LInfinityAlgebra, MCElement};
use crate::poly::{interpolate, rational_roots};

pub use rand_chacha::ChaCha8Rng;

/// The generator used for every seeded computation.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| random_scalar(rng)).collect()
}

/// Random homogeneous elements of a target algebra.
pub trait Sampler: DgAlgebra {
    fn sample<R: Rng + ?Sized>(&self, degree: i32, rng: &mut R) -> Self::Elem;
}

impl Sampler for Ground {
    fn sample<R: Rng + ?Sized>(&self, degree: i32, rng: &mut R) -> Scalar {
        if degree == 0 {
            random_scalar(rng)
        } else {
            Scalar::zero()
        }
    }
}

impl Sampler for FreeCdga {
    /// A sparse combination of monomials of word length at most 3.
    fn sample<R: Rng + ?Sized>(&self, degree: i32, rng: &mut R) -> Element {
        let mut x = self.zero();
        for m in self.monomials(degree, 3) {
            if rng.gen_bool(0.5) {
                x.add_term(m, random_scalar(rng));
            }
        }
        x
    }
}

/// `(b_0, …, b_{max_index})` with each map present with probability 2/3.
pub fn random_gl<B: Sampler, R: Rng + ?Sized>(
    rng: &mut R,
    source: &FreeCdga,
    target: &B,
    max_index: usize,
) -> GlElement<B::Elem> {
    let maps = (0..=max_index)
        .map(|_| {
            let present = rng.gen_bool(2.0 / 3.0);
            (0..source.num_generators())
                .map(|v| {
                    if present {
                        target.sample(source.generator_degree(v) - 1, rng)
                    } else {
                        target.zero()
                    }
                })
                .collect()
        })
        .collect();
    GlElement::new(target, maps)
}

pub fn random_gs<B: Sampler, R: Rng + ?Sized>(
    rng: &mut R,
    source: &FreeCdga,
    target: &B,
) -> GsElement<B::Elem> {
    GsElement::new(
        (0..source.num_generators())
            .map(|v| target.sample(source.generator_degree(v) - 1, rng))
            .collect(),
    )
}

/// Rational points `λ` with `λ·direction` Maurer–Cartan, found by
/// interpolating the residual along the line and taking rational roots.
pub fn mc_points_on_line(g: &LInfinityAlgebra, direction: &[Scalar]) -> Vec<Scalar> {
    let degree = g.max_arity().max(1);
    let samples: Vec<(Scalar, Vec<Scalar>)> = (0..=degree as i64)
        .map(|k| {
            let lambda = Scalar::from_integer(k.into());
            let point: Vec<Scalar> = direction.iter().map(|c| c * &lambda).collect();
            (lambda, g.mc_residual(&point).expect("slice length matches"))
        })
        .collect();
    let components = samples.first().map_or(0, |(_, r)| r.len());
    let mut candidates: Option<Vec<Scalar>> = None;
    for f in 0..components {
        let pts: Vec<(Scalar, Scalar)> = samples
            .iter()
            .map(|(l, r)| (l.clone(), r[f].clone()))
            .collect();
        if let Some(roots) = rational_roots(&interpolate(&pts)) {
            candidates = Some(match candidates {
                None => roots,
                Some(prev) => prev.into_iter().filter(|r| roots.contains(r)).collect(),
            });
        }
    }
    match candidates {
        Some(c) => c,
        // Every component vanishes identically: the whole line is MC.
        None => Vec::new(),
    }
}

/// A random Maurer–Cartan element: a random vector when it already solves
/// the equation, otherwise a random rational solution on the line through
/// it, falling back to zero.
pub fn random_mc<R: Rng + ?Sized>(g: &LInfinityAlgebra, rng: &mut R) -> MCElement {
    let dim = g.slice(-1).len();
    for _ in 0..8 {
        let v = random_vector(rng, dim);
        if let Ok(x) = g.certify(&v) {
            return x;
        }
        let roots: Vec<Scalar> = mc_points_on_line(g, &v)
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect();
        if !roots.is_empty() {
            let lambda = &roots[rng.gen_range(0..roots.len())];
            let point: Vec<Scalar> = v.iter().map(|c| c * lambda).collect();
            return g.certify(&point).expect("root of the residual");
        }
    }
    g.certify(&vec![Scalar::zero(); dim]).expect("zero is MC")
}
