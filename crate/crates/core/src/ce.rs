//! The decompleted Chevalley–Eilenberg algebra `C*(𝔤) = (Λ(s𝔤)^∨, d)` and the
//! correspondences between Maurer–Cartan data of `𝔤` and dg algebra maps out
//! of `C*(𝔤)`.
//!
//! Generators are `ξ_e = κ·(se)^∨` with `κ = −1/2`, and
//!
//! `dξ_f = −(−1)^{|sf|} Σ_n κ^{1−n} Σ_M ε(M)/mult(M)! · ⟨m_n(M), sf⟩ · ξ_M`
//!
//! over sorted multisets `M`, where `ε(M) = Π_{i<j} (−1)^{|se_i||se_j|}`. With
//! this normalization a coefficient vector `u` gives a dg map `ξ_e ↦ κ u_e`
//! exactly when `Σ se⊗u_e` solves the Maurer–Cartan equation; in the example
//! `dy = z`, `[y,y] = z` one gets `db = a − a²`.

use num_traits::{One, Zero};

use crate::algebra::{DgAlgebra, Ground};
use crate::cdga::{sullivan_order, CdgaMorphism, Element, FreeCdga, SullivanOrder};
use crate::error::{Error, Result};
use crate::graded::{dualize, frac, is_odd, suspend, Convention, GradedBasis, Scalar};
use crate::interval::{Interval, IntervalElement};
use crate::linalg::Subspace;
use crate::linf::{trim_poly, Filtration, LInfinityAlgebra, MCElement, MCPath};

/// Scale relating generators to dual suspended basis vectors.
pub fn generator_scale() -> Scalar {
    frac(-1, 2)
}

/// The filtration `F^k𝔤` behind the Sullivan structure of `C*(𝔤)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEFiltrationReport {
    /// `s_maps[k-1]` lists the arity sequences `(i_1,…,i_k)` of composites
    /// `ℓ_{i_k}∘(⋯ℓ_{i_1}⋯ ∧ Id ∧ ⋯)` with nonzero image.
    pub s_maps: Vec<Vec<Vec<usize>>>,
    /// Minimal number of inputs among the composites in each `S_k`.
    pub tau: Vec<usize>,
    /// `f[k] = F^k𝔤`, from `F⁰ = 𝔤` to the first zero term.
    pub f: Vec<Subspace>,
    /// `v[i] = Ann(sF^i𝔤)` in dual coordinates.
    pub v: Vec<Subspace>,
    /// Stage of the generator dual to each basis element.
    pub stages: Vec<usize>,
}

impl CEFiltrationReport {
    /// `F^k`, zero past the computed range.
    pub fn f_term(&self, k: usize) -> Subspace {
        self.f
            .get(k)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.f[0].ambient()))
    }

    /// Checks `F^k ⊆ Γ^{⌈(k+1)/2⌉}` for every computed `k ≥ 1`.
    pub fn check_lower_central(&self, lcs: &Filtration) -> Vec<(usize, bool)> {
        (1..self.f.len())
            .map(|k| (k, self.f[k].is_subspace_of(&lcs.term((k + 2) / 2))))
            .collect()
    }

    /// Checks `τ(S_k) ≥ ⌈(k+1)/2⌉` for every nonempty `S_k`.
    pub fn check_tau(&self) -> bool {
        self.tau
            .iter()
            .enumerate()
            .all(|(i, &t)| t >= (i + 3) / 2)
    }
}

/// `F^0 = 𝔤`, `F^k = Σ_i ℓ_i(F^{k−1} ∧ 𝔤 ∧ ⋯ ∧ 𝔤)`, until it vanishes.
pub fn ce_sullivan_filtration(g: &LInfinityAlgebra) -> Result<CEFiltrationReport> {
    let n = g.dim();
    let full = Subspace::full(n);
    let mut f = vec![full.clone()];
    let mut s_maps: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut tau = Vec::new();
    // Each composite with its image.
    let mut layer: Vec<(Vec<usize>, Subspace)> = vec![(Vec::new(), full.clone())];
    while !f.last().expect("nonempty").is_zero() {
        if f.len() > n + 1 {
            return Err(Error::NotNilpotent(format!(
                "F^k is still nonzero at k = {}",
                f.len() - 1
            )));
        }
        let mut next = Vec::new();
        let mut total = Subspace::zero(n);
        for (seq, image) in &layer {
            for arity in g.arities() {
                let mut spaces: Vec<&Subspace> = vec![image];
                spaces.extend(std::iter::repeat(&full).take(arity - 1));
                let im = image_of(g, &spaces);
                if im.is_zero() {
                    continue;
                }
                total = total.sum(&im);
                let mut s = seq.clone();
                s.push(arity);
                next.push((s, im));
            }
        }
        if !total.is_zero() && total == *f.last().unwrap() {
            return Err(Error::NotNilpotent(format!(
                "F^{} = F^{} ≠ 0",
                f.len(),
                f.len() - 1
            )));
        }
        if !next.is_empty() {
            tau.push(
                next.iter()
                    .map(|(s, _)| 1 + s.iter().map(|a| a - 1).sum::<usize>())
                    .min()
                    .expect("nonempty"),
            );
            s_maps.push(next.iter().map(|(s, _)| s.clone()).collect());
        }
        f.push(total);
        layer = next;
    }
    let v: Vec<Subspace> = f.iter().map(Subspace::annihilator).collect();
    let stages = (0..n)
        .map(|e| {
            (1..f.len())
                .find(|&i| f[i].basis().iter().all(|w| w[e].is_zero()))
                .expect("the last term is zero")
        })
        .collect();
    Ok(CEFiltrationReport {
        s_maps,
        tau,
        f,
        v,
        stages,
    })
}

fn image_of(g: &LInfinityAlgebra, spaces: &[&Subspace]) -> Subspace {
    let n = g.dim();
    if spaces.iter().any(|s| s.is_zero()) {
        return Subspace::zero(n);
    }
    let mut images = Vec::new();
    let mut choice = vec![0usize; spaces.len()];
    'outer: loop {
        let vecs: Vec<&[Scalar]> = choice
            .iter()
            .zip(spaces)
            .map(|(&c, s)| s.basis()[c].as_slice())
            .collect();
        images.push(g.m(&vecs));
        for pos in 0..spaces.len() {
            choice[pos] += 1;
            if choice[pos] < spaces[pos].dim() {
                continue 'outer;
            }
            choice[pos] = 0;
        }
        return Subspace::span(n, images);
    }
}

/// `C*(𝔤)` together with its identification with `(s𝔤)^∨`.
#[derive(Clone, Debug)]
pub struct CEPresentation {
    lie: LInfinityAlgebra,
    algebra: FreeCdga,
    /// Basis element of `𝔤` behind each generator.
    generator_basis: Vec<usize>,
    /// Generator dual to each basis element.
    basis_generator: Vec<usize>,
    order: SullivanOrder,
    report: CEFiltrationReport,
}

/// `Λ((s𝔤)^∨)` with the CE differential, generators listed in the given
/// basis order. Fails with the generator witnessing `d² ≠ 0`.
fn ce_algebra(g: &LInfinityAlgebra, generator_basis: &[usize]) -> Result<FreeCdga> {
    let n = g.dim();
    let mut basis_generator = vec![0; n];
    for (k, &e) in generator_basis.iter().enumerate() {
        basis_generator[e] = k;
    }
    let duals = dualize(&suspend(g.basis())?);
    let generators = GradedBasis::new(
        generator_basis.iter().map(|&e| {
            let entry = &duals.entries()[e];
            (entry.symbol.clone(), entry.degree)
        }),
        Convention::Cohomological,
    )?;
    let kappa = generator_scale();
    FreeCdga::build(generators, |bare| {
        let mut diffs = vec![bare.zero(); n];
        for arity in g.arities() {
            let kappa_pow = num_traits::pow(kappa.recip(), arity - 1);
            for (key, out) in g.symmetric_entries(arity) {
                let mut eps = false;
                for i in 0..key.len() {
                    for j in i + 1..key.len() {
                        eps ^= is_odd(g.suspended_degree(key[i]))
                            && is_odd(g.suspended_degree(key[j]));
                    }
                }
                let mut weight = kappa_pow.clone();
                let mut run = 1;
                for p in 1..key.len() {
                    if key[p] == key[p - 1] {
                        run += 1;
                        weight /= Scalar::from_integer(run.into());
                    } else {
                        run = 1;
                    }
                }
                if eps {
                    weight = -weight;
                }
                let monomial = key.iter().fold(bare.one(), |acc, &e| {
                    bare.mul(&acc, &bare.generator(basis_generator[e]))
                });
                for (&f, c) in out {
                    let sign = if is_odd(g.suspended_degree(f)) {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    let term = monomial.scale(&(&weight * c * sign));
                    let slot = basis_generator[f];
                    diffs[slot] = diffs[slot].add(&term);
                }
            }
        }
        Ok(diffs)
    })
}

/// Checks the generalized Jacobi identities as `d² = 0` on `C*(𝔤)`, with no
/// nilpotency requirement.
pub fn check_jacobi(g: &LInfinityAlgebra) -> Result<()> {
    ce_algebra(g, &(0..g.dim()).collect::<Vec<_>>()).map(|_| ())
}

/// Builds `C*(𝔤)` with generators in filtration order. Fails when `𝔤` is not
/// nilpotent, or when `d² ≠ 0` (the generalized Jacobi identities fail).
pub fn chevalley_eilenberg(g: &LInfinityAlgebra) -> Result<CEPresentation> {
    let report = ce_sullivan_filtration(g)?;
    let n = g.dim();
    let mut generator_basis: Vec<usize> = (0..n).collect();
    generator_basis.sort_by_key(|&e| (report.stages[e], e));
    let mut basis_generator = vec![0; n];
    for (k, &e) in generator_basis.iter().enumerate() {
        basis_generator[e] = k;
    }
    let algebra = ce_algebra(g, &generator_basis)?;
    let order = SullivanOrder::new(
        generator_basis.iter().map(|&e| report.stages[e]).collect(),
    )?;
    order.validate(&algebra).map_err(|e| {
        Error::Verification(format!("filtration order is not a Sullivan order: {e}"))
    })?;
    Ok(CEPresentation {
        lie: g.clone(),
        algebra,
        generator_basis,
        basis_generator,
        order,
        report,
    })
}

impl CEPresentation {
    pub fn lie(&self) -> &LInfinityAlgebra {
        &self.lie
    }

    pub fn algebra(&self) -> &FreeCdga {
        &self.algebra
    }

    /// The Sullivan order coming from the filtration `F^k`.
    pub fn order(&self) -> &SullivanOrder {
        &self.order
    }

    pub fn report(&self) -> &CEFiltrationReport {
        &self.report
    }

    /// Basis element of `𝔤` dual to generator `k`.
    pub fn basis_of(&self, generator: usize) -> usize {
        self.generator_basis[generator]
    }

    /// Generator dual to basis element `e`.
    pub fn generator_of(&self, e: usize) -> usize {
        self.basis_generator[e]
    }

    /// The greedy order, for comparison with [`Self::order`].
    pub fn greedy_order(&self) -> Result<SullivanOrder> {
        sullivan_order(&self.algebra)
    }

    /// `ξ_e ↦ κ u_e` for coefficients `u` indexed by the basis of `𝔤`.
    /// Compatibility with `d` is not checked.
    pub fn pairing<R: DgAlgebra>(&self, ring: R, u: &[R::Elem]) -> Result<CdgaMorphism<R>> {
        if u.len() != self.lie.dim() {
            return Err(Error::LengthMismatch {
                expected: self.lie.dim(),
                found: u.len(),
            });
        }
        let kappa = generator_scale();
        let images = self
            .generator_basis
            .iter()
            .map(|&e| ring.scale(&u[e], &kappa))
            .collect();
        CdgaMorphism::new(self.algebra.clone(), ring, images)
    }

    /// Inverse of [`Self::pairing`].
    pub fn unpairing<R: DgAlgebra>(&self, phi: &CdgaMorphism<R>) -> Vec<R::Elem> {
        let inv = generator_scale().recip();
        (0..self.lie.dim())
            .map(|e| phi.target().scale(phi.image(self.basis_generator[e]), &inv))
            .collect()
    }

    /// The dg map `C*(𝔤) → 𝕜` of a Maurer–Cartan element.
    pub fn mc_to_morphism(&self, x: &MCElement) -> Result<CdgaMorphism<Ground>> {
        let u = self.lie.embed(-1, x.coefficients())?;
        let phi = self.pairing(Ground, &u)?;
        let cert = phi.certificate();
        if !cert.passed {
            return Err(Error::NotMaurerCartan(phi.describe_failure(&cert)));
        }
        Ok(phi)
    }

    /// Inverse of [`Self::mc_to_morphism`].
    pub fn morphism_to_mc(&self, phi: &CdgaMorphism<Ground>) -> Result<MCElement> {
        if !phi.is_dg_morphism() {
            return Err(Error::NotAMorphism(phi.describe_failure(&phi.certificate())));
        }
        let u = self.unpairing(phi);
        self.lie.certify(&self.lie.restrict(-1, &u))
    }

    /// The homotopy `C*(𝔤) → Λ(t,dt)` of a Maurer–Cartan path.
    pub fn path_to_homotopy(&self, path: &MCPath) -> Result<CdgaMorphism<Interval<Ground>>> {
        let residual = self.lie.mc_residual_path(path)?;
        if !residual.is_zero() {
            return Err(Error::NotMaurerCartan(format!(
                "path residual {residual:?}"
            )));
        }
        let ring = Interval::new(Ground);
        let mut u = vec![ring.zero(); self.lie.dim()];
        for (&e, p) in self.lie.slice(-1).iter().zip(&path.x) {
            u[e] = ring.from_parts(p.clone(), Vec::new());
        }
        for (&e, p) in self.lie.slice(0).iter().zip(&path.xi) {
            u[e] = ring.from_parts(Vec::new(), p.clone());
        }
        let h = self.pairing(ring, &u)?;
        if !h.is_dg_morphism() {
            return Err(Error::Verification(h.describe_failure(&h.certificate())));
        }
        Ok(h)
    }

    /// Inverse of [`Self::path_to_homotopy`].
    pub fn homotopy_to_path(&self, h: &CdgaMorphism<Interval<Ground>>) -> Result<MCPath> {
        if !h.is_dg_morphism() {
            return Err(Error::NotAMorphism(h.describe_failure(&h.certificate())));
        }
        let u: Vec<IntervalElement<Scalar>> = self.unpairing(h);
        Ok(MCPath {
            x: self
                .lie
                .slice(-1)
                .iter()
                .map(|&e| trim_poly(u[e].t_part().to_vec()))
                .collect(),
            xi: self
                .lie
                .slice(0)
                .iter()
                .map(|&e| trim_poly(u[e].dt_part().to_vec()))
                .collect(),
        })
    }

    /// The generator dual to the basis element named `symbol`.
    pub fn generator_element(&self, symbol: &str) -> Result<Element> {
        Ok(self.algebra.generator(self.generator_of(self.lie.index(symbol)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::int;
    use crate::linf::tests::{free_odd_y, heisenberg, truncation_fixture};
    use proptest::prelude::*;

    fn jacobi_violation() -> LInfinityAlgebra {
        LInfinityAlgebra::from_entries([("u", 0), ("v", -1), ("w", -2)], 2)
            .unwrap()
            .with_bracket(&["u"], &[("v", int(1))])
            .unwrap()
            .with_bracket(&["v"], &[("w", int(1))])
            .unwrap()
    }

    #[test]
    fn abelian_has_zero_differential() {
        let g = LInfinityAlgebra::from_entries([("a", 0), ("b", -1), ("c", 1)], 2).unwrap();
        let ce = chevalley_eilenberg(&g).unwrap();
        for i in 0..3 {
            assert!(ce.algebra().generator_differential(i).is_zero());
        }
        assert_eq!(ce.report().f.len(), 2);
        assert!(ce.report().f[1].is_zero());
        assert_eq!(ce.order().num_stages(), 1);
    }

    #[test]
    fn free_odd_y_gives_idempotent_relation() {
        let ce = chevalley_eilenberg(&free_odd_y()).unwrap();
        let alg = ce.algebra();
        assert_eq!(alg.num_generators(), 2);
        let a = ce.generator_element("y").unwrap();
        let b = ce.generator_element("z").unwrap();
        assert_eq!(alg.degree_of(&a), crate::algebra::Degree::Homogeneous(0));
        assert_eq!(alg.degree_of(&b), crate::algebra::Degree::Homogeneous(-1));
        let expected = a.sub(&alg.mul(&a, &a));
        assert_eq!(alg.d(&b), expected);
        assert_eq!(alg.symbol(ce.generator_of(0)), "^sy");
    }

    #[test]
    fn free_odd_y_filtration() {
        let g = free_odd_y();
        let report = ce_sullivan_filtration(&g).unwrap();
        assert_eq!(report.f[1], Subspace::span(2, [vec![int(0), int(1)]]));
        assert!(report.f[2].is_zero());
        assert_eq!(report.stages, vec![1, 2]);
        assert_eq!(report.v[1], Subspace::span(2, [vec![int(1), int(0)]]));
        let lcs = g.lower_central_series().unwrap();
        assert!(report.check_lower_central(&lcs).iter().all(|(_, ok)| *ok));
        assert!(report.check_tau());
    }

    #[test]
    fn heisenberg_differential() {
        let ce = chevalley_eilenberg(&heisenberg()).unwrap();
        let alg = ce.algebra();
        let e = ce.generator_element("e").unwrap();
        let x = ce.generator_element("x").unwrap();
        let y = ce.generator_element("y").unwrap();
        assert!(alg.d(&e).is_zero());
        assert!(alg.d(&x).is_zero());
        // m₂(se, sx) = −sy, so dŷ = −(−1)^{|sy|} κ^{-1} ⟨m₂, sy⟩ ê x̂ = −2 ê x̂.
        assert_eq!(alg.d(&y), alg.mul(&e, &x).scale(&int(-2)));
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        match chevalley_eilenberg(&jacobi_violation()) {
            Err(Error::SquareNonzero { generator, .. }) => assert_eq!(generator, "^sw"),
            other => panic!("expected d² failure, got {other:?}"),
        }
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let g = LInfinityAlgebra::from_entries([("e", 0), ("x", -1)], 2)
            .unwrap()
            .with_bracket(&["e", "x"], &[("x", int(1))])
            .unwrap();
        assert!(matches!(chevalley_eilenberg(&g), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn mc_morphisms_free_odd_y() {
        let g = free_odd_y();
        let ce = chevalley_eilenberg(&g).unwrap();
        let zero = ce.mc_to_morphism(&g.certify(&[int(0)]).unwrap()).unwrap();
        assert!(zero.images().iter().all(Zero::is_zero));
        let phi = ce.mc_to_morphism(&g.certify(&[int(-2)]).unwrap()).unwrap();
        assert_eq!(phi.image(ce.generator_of(0)), &int(1));
        assert_eq!(ce.morphism_to_mc(&phi).unwrap().coefficients(), &[int(-2)]);
        let bad = g.evaluate_mc(&[int(1)]).unwrap();
        assert!(ce.mc_to_morphism(&bad).is_err());
    }

    #[test]
    fn heisenberg_pairing_and_paths() {
        let g = heisenberg();
        let ce = chevalley_eilenberg(&g).unwrap();
        let kappa = generator_scale();
        let (alpha, beta, s) = (int(3), frac(1, 2), int(-2));
        let x = g.certify(&[alpha.clone(), beta.clone()]).unwrap();
        let phi = ce.mc_to_morphism(&x).unwrap();
        assert_eq!(phi.image(ce.generator_of(1)), &(&kappa * &alpha));
        assert_eq!(phi.image(ce.generator_of(2)), &(&kappa * &beta));
        assert_eq!(phi.image(ce.generator_of(0)), &int(0));

        let path = MCPath {
            x: vec![vec![alpha.clone()], vec![beta.clone(), &s * &alpha]],
            xi: vec![vec![s.clone()]],
        };
        let h = ce.path_to_homotopy(&path).unwrap();
        let ring = h.target().clone();
        assert_eq!(
            h.image(ce.generator_of(0)),
            &ring.monomial_dt(&(&kappa * &s), 0)
        );
        assert_eq!(ce.homotopy_to_path(&h).unwrap(), path);
        let end = h.map_target(Ground, |v| ring.ev1(v));
        let moved = g.certify(&[alpha.clone(), &beta + &s * &alpha]).unwrap();
        assert_eq!(end, ce.mc_to_morphism(&moved).unwrap());
        let start = h.map_target(Ground, |v| ring.ev0(v));
        assert_eq!(start, phi);
    }

    #[test]
    fn truncation_fixture_is_valid() {
        let g = truncation_fixture();
        let ce = chevalley_eilenberg(&g).unwrap();
        let greedy = ce.greedy_order().unwrap();
        assert!(greedy.refines_earlier_than(ce.order()));
        let lcs = g.lower_central_series().unwrap();
        assert!(ce.report().check_lower_central(&lcs).iter().all(|(_, ok)| *ok));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| frac(n, d))
    }

    fn poly() -> impl Strategy<Value = Vec<Scalar>> {
        prop::collection::vec(small(), 0..3).prop_map(trim_poly)
    }

    proptest! {
        /// `φ(dξ_f) − dφ(ξ_f) = −κ(−1)^{|sf|} res_f` for the pairing of any
        /// path, comparing the CE differential against the tuple-wise MC sum.
        #[test]
        fn defect_matches_residual(x in prop::collection::vec(poly(), 2), xi in prop::collection::vec(poly(), 1)) {
            for g in [heisenberg(), truncation_fixture().brutal_truncate()] {
                let ce = chevalley_eilenberg(&g).unwrap();
                let ring = Interval::new(Ground);
                let mut u = vec![ring.zero(); g.dim()];
                for (&e, p) in g.slice(-1).iter().zip(&x) {
                    u[e] = ring.from_parts(p.clone(), Vec::new());
                }
                for (&e, p) in g.slice(0).iter().zip(&xi) {
                    u[e] = ring.from_parts(Vec::new(), p.clone());
                }
                let phi = ce.pairing(ring.clone(), &u).unwrap();
                let cert = phi.certificate();
                let res = g.mc_residual_in(&ring, &u).unwrap();
                let kappa = generator_scale();
                for f in 0..g.dim() {
                    let mut expected = ring.scale(&res[f], &-kappa.clone());
                    if is_odd(g.suspended_degree(f)) {
                        expected = ring.neg(&expected);
                    }
                    prop_assert_eq!(&cert.residuals[ce.generator_of(f)], &expected);
                }
            }
        }

        #[test]
        fn heisenberg_round_trips(a in small(), b in small()) {
            let g = heisenberg();
            let ce = chevalley_eilenberg(&g).unwrap();
            let x = g.certify(&[a, b]).unwrap();
            let phi = ce.mc_to_morphism(&x).unwrap();
            prop_assert_eq!(ce.morphism_to_mc(&phi).unwrap(), x);
        }
    }
}
