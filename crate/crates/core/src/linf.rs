//! L∞-algebras given by structure constants.
//!
//! Brackets are stored in the suspended symmetric form: `m_n` is a map
//! `Sym^n(s𝔤) → s𝔤` of degree −1, graded symmetric for the suspended degrees
//! `|se| = |e| + 1`, and keyed by sorted multisets of basis indices. The
//! antisymmetric brackets `ℓ_n` relate to it by
//!
//! `m_n(se_1,…,se_n) = (−1)^{Σ_j (n−j)|se_j|} s ℓ_n(e_1,…,e_n)`.
//!
//! On inputs from `𝔤₋₁` every sign is `+1`, so the Maurer–Cartan sum reads the
//! same in both forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{DgAlgebra, Degree};
use crate::error::{Error, Result};
use crate::graded::{factorial, is_odd, sort_with_sign, Convention, GradedBasis, Scalar, Sign};
use crate::interval::{Interval, IntervalElement};
use crate::algebra::Ground;
use crate::linalg::Subspace;

/// Sparse vector keyed by basis index.
pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInfinityAlgebra {
    basis: GradedBasis,
    /// `ops[n]` maps sorted input multisets to the output of `m_n`.
    ops: BTreeMap<usize, BTreeMap<Vec<usize>, SparseVec>>,
    arity_cap: usize,
}

/// Smallest `k` with `(Γ^k 𝔤)_n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyBound {
    Bounded(usize),
    /// Still nonzero at the last computed term.
    Unbounded,
}

impl NilpotencyBound {
    pub fn bounded(self) -> Option<usize> {
        match self {
            NilpotencyBound::Bounded(k) => Some(k),
            NilpotencyBound::Unbounded => None,
        }
    }
}

impl fmt::Display for NilpotencyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotencyBound::Bounded(k) => write!(f, "{k}"),
            NilpotencyBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// The lower central series `Γ¹ ⊇ Γ² ⊇ ⋯`, stored up to the first zero term
/// or the computation cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    /// `terms[k-1] = Γ^k`.
    terms: Vec<Subspace>,
    basis: GradedBasis,
}

impl Filtration {
    /// `Γ^k`, with `Γ^k = 0` past the stored terms when the last one is zero.
    pub fn term(&self, k: usize) -> Subspace {
        assert!(k >= 1, "the series starts at Γ¹");
        match self.terms.get(k - 1) {
            Some(s) => s.clone(),
            None if self.terms.last().is_some_and(Subspace::is_zero) => {
                Subspace::zero(self.basis.len())
            }
            None => self.terms.last().cloned().expect("Γ¹ is always stored"),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    /// Whether the stored series reached zero.
    pub fn terminates(&self) -> bool {
        self.terms.last().is_some_and(Subspace::is_zero)
    }

    /// `dim (Γ^k)_degree`.
    pub fn dim_in_degree(&self, k: usize, degree: i32) -> usize {
        dim_in_degree(&self.basis, &self.term(k), degree)
    }

    pub fn nilpotency_bound(&self, degree: i32) -> NilpotencyBound {
        for k in 1..=self.terms.len() {
            if self.dim_in_degree(k, degree) == 0 {
                return NilpotencyBound::Bounded(k);
            }
        }
        NilpotencyBound::Unbounded
    }
}

fn dim_in_degree(basis: &GradedBasis, s: &Subspace, degree: i32) -> usize {
    s.basis()
        .iter()
        .filter(|v| {
            v.iter()
                .enumerate()
                .any(|(i, c)| !c.is_zero() && basis.degree(i) == degree)
        })
        .count()
}

/// A point of `𝔤₋₁` with its Maurer–Cartan residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    coefficients: Vec<Scalar>,
    residual: Vec<Scalar>,
}

impl MCElement {
    /// Coefficients over the degree −1 basis slice.
    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// Residual over the degree −2 basis slice.
    pub fn residual(&self) -> &[Scalar] {
        &self.residual
    }

    pub fn is_certified(&self) -> bool {
        self.residual.iter().all(Zero::is_zero)
    }
}

/// `x(t) + ξ(t) dt` with polynomial coefficients (lowest degree first) over
/// the slices `𝔤₋₁` and `𝔤₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCPath {
    pub x: Vec<Vec<Scalar>>,
    pub xi: Vec<Vec<Scalar>>,
}

impl MCPath {
    pub fn constant(x: &[Scalar], dim0: usize) -> Self {
        Self {
            x: x.iter().map(|c| trim_poly(vec![c.clone()])).collect(),
            xi: vec![Vec::new(); dim0],
        }
    }

    pub fn eval_x(&self, t: &Scalar) -> Vec<Scalar> {
        self.x.iter().map(|p| eval_poly(p, t)).collect()
    }

    pub fn start(&self) -> Vec<Scalar> {
        self.eval_x(&Scalar::zero())
    }

    pub fn end(&self) -> Vec<Scalar> {
        self.eval_x(&Scalar::one())
    }

    /// Highest power of `t` among the coefficients.
    pub fn degree_in_t(&self) -> usize {
        self.x
            .iter()
            .chain(&self.xi)
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

/// Residual of a path: the `t`-component over `𝔤₋₂` (the pointwise equation)
/// and the `dt`-component over `𝔤₋₁` (the flow equation), as polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResidual {
    pub t_component: Vec<Vec<Scalar>>,
    pub dt_component: Vec<Vec<Scalar>>,
}

impl PathResidual {
    pub fn is_zero(&self) -> bool {
        self.t_component
            .iter()
            .chain(&self.dt_component)
            .all(Vec::is_empty)
    }
}

pub(crate) fn trim_poly(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn eval_poly(p: &[Scalar], t: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
}

impl LInfinityAlgebra {
    /// The abelian algebra on a homological basis.
    pub fn new(basis: GradedBasis, arity_cap: usize) -> Result<Self> {
        if basis.convention() != Convention::Homological {
            return Err(Error::ConventionMismatch(
                "L∞-algebras are homologically graded",
            ));
        }
        if arity_cap == 0 {
            return Err(Error::InvalidArgument("arity cap must be ≥ 1".into()));
        }
        Ok(Self {
            basis,
            ops: BTreeMap::new(),
            arity_cap,
        })
    }

    pub fn from_entries<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, i32)>,
        arity_cap: usize,
    ) -> Result<Self> {
        Self::new(GradedBasis::new(entries, Convention::Homological)?, arity_cap)
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    /// Largest arity with a nonzero bracket.
    pub fn max_arity(&self) -> usize {
        self.ops.keys().copied().max().unwrap_or(0)
    }

    /// No brackets of arity ≥ 3.
    pub fn is_dgla(&self) -> bool {
        self.max_arity() <= 2
    }

    pub fn is_abelian(&self) -> bool {
        self.ops.is_empty()
    }

    /// Suspended degree `|se|` of a basis element.
    pub fn suspended_degree(&self, i: usize) -> i32 {
        self.basis.degree(i) + 1
    }

    pub fn index(&self, symbol: &str) -> Result<usize> {
        self.basis
            .position(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn slice(&self, degree: i32) -> Vec<usize> {
        self.basis.slice(degree)
    }

    /// Stored entries of `m_n`, keyed by sorted inputs.
    pub fn symmetric_entries(&self, n: usize) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.ops.get(&n).into_iter().flat_map(|m| m.iter())
    }

    pub fn arities(&self) -> Vec<usize> {
        self.ops.keys().copied().collect()
    }

    fn sort_key(&self, inputs: &[usize]) -> (Vec<usize>, Sign) {
        sort_with_sign(inputs, |&i| is_odd(self.suspended_degree(i)))
    }

    /// `(−1)^{Σ_j (n−j)|se_j|}`.
    pub fn decalage_sign(&self, inputs: &[usize]) -> Sign {
        let n = inputs.len();
        let exponent: i64 = inputs
            .iter()
            .enumerate()
            .map(|(j, &i)| (n - 1 - j) as i64 * self.suspended_degree(i) as i64)
            .sum();
        Sign::from_parity(exponent.rem_euclid(2) == 1)
    }

    fn check_inputs(&self, inputs: &[usize], output: &SparseVec) -> Result<()> {
        let n = inputs.len();
        if n == 0 {
            return Err(Error::InvalidArgument("brackets need at least one input".into()));
        }
        if n > self.arity_cap {
            return Err(Error::ArityCap {
                cap: self.arity_cap,
                context: format!("bracket of arity {n}"),
            });
        }
        for &i in inputs.iter().chain(output.keys()) {
            if i >= self.dim() {
                return Err(Error::InvalidArgument(format!("basis index {i} out of range")));
            }
        }
        let expected: i32 =
            inputs.iter().map(|&i| self.basis.degree(i)).sum::<i32>() + n as i32 - 2;
        for &o in output.keys() {
            if self.basis.degree(o) != expected {
                return Err(Error::DegreeMismatch {
                    context: format!("output {} of a bracket of arity {n}", self.basis.symbol(o)),
                    expected,
                    found: self.basis.degree(o),
                });
            }
        }
        Ok(())
    }

    fn store(&mut self, key: Vec<usize>, output: SparseVec, context: &str) -> Result<()> {
        let output: SparseVec = output.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if output.is_empty() {
            return Ok(());
        }
        for w in key.windows(2) {
            if w[0] == w[1] && is_odd(self.suspended_degree(w[0])) {
                return Err(Error::SymmetryViolation(format!(
                    "{context}: repeated input {} has odd suspended degree, the value must vanish",
                    self.basis.symbol(w[0])
                )));
            }
        }
        let n = key.len();
        let table = self.ops.entry(n).or_default();
        if table.contains_key(&key) {
            return Err(Error::SymmetryViolation(format!(
                "{context}: value already determined by another ordering"
            )));
        }
        table.insert(key, output);
        Ok(())
    }

    /// Sets `ℓ_n(e_{i_1},…,e_{i_n})` in antisymmetric notation. Other
    /// orderings follow by graded antisymmetry and must not be set again.
    pub fn set_bracket(&mut self, inputs: &[usize], output: SparseVec) -> Result<()> {
        self.check_inputs(inputs, &output)?;
        let (key, sort_sign) = self.sort_key(inputs);
        let sign = sort_sign * self.decalage_sign(inputs);
        let converted = output.into_iter().map(|(o, c)| (o, sign.apply(c))).collect();
        let context = self.describe_inputs(inputs);
        self.store(key, converted, &context)
    }

    /// Sets `m_n(se_{i_1},…,se_{i_n})` directly.
    pub fn set_symmetric(&mut self, inputs: &[usize], output: SparseVec) -> Result<()> {
        self.check_inputs(inputs, &output)?;
        let (key, sort_sign) = self.sort_key(inputs);
        let converted = output
            .into_iter()
            .map(|(o, c)| (o, sort_sign.apply(c)))
            .collect();
        let context = self.describe_inputs(inputs);
        self.store(key, converted, &context)
    }

    /// Symbol-based convenience for [`Self::set_bracket`].
    pub fn with_bracket(mut self, inputs: &[&str], output: &[(&str, Scalar)]) -> Result<Self> {
        let idx: Vec<usize> = inputs.iter().map(|s| self.index(s)).collect::<Result<_>>()?;
        let mut out = SparseVec::new();
        for (s, c) in output {
            *out.entry(self.index(s)?).or_insert_with(Scalar::zero) += c;
        }
        self.set_bracket(&idx, out)?;
        Ok(self)
    }

    fn describe_inputs(&self, inputs: &[usize]) -> String {
        let syms: Vec<&str> = inputs.iter().map(|&i| self.basis.symbol(i)).collect();
        format!("ℓ_{}({})", inputs.len(), syms.join(","))
    }

    /// `m_n` on basis inputs in any order.
    pub fn m_basis(&self, inputs: &[usize]) -> SparseVec {
        let (key, sign) = self.sort_key(inputs);
        match self.ops.get(&inputs.len()).and_then(|t| t.get(&key)) {
            Some(out) => out.iter().map(|(&o, c)| (o, sign.apply(c.clone()))).collect(),
            None => SparseVec::new(),
        }
    }

    /// `ℓ_n` on basis inputs in any order.
    pub fn ell_basis(&self, inputs: &[usize]) -> SparseVec {
        let sign = self.decalage_sign(inputs);
        self.m_basis(inputs)
            .into_iter()
            .map(|(o, c)| (o, sign.apply(c)))
            .collect()
    }

    fn multilinear(
        &self,
        vectors: &[&[Scalar]],
        f: impl Fn(&[usize]) -> SparseVec,
    ) -> Vec<Scalar> {
        let n = self.dim();
        let supports: Vec<Vec<usize>> = vectors
            .iter()
            .map(|v| (0..n).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        let mut out = vec![Scalar::zero(); n];
        let mut tuple = vec![0usize; vectors.len()];
        fn walk(
            depth: usize,
            coef: Scalar,
            supports: &[Vec<usize>],
            vectors: &[&[Scalar]],
            tuple: &mut Vec<usize>,
            out: &mut [Scalar],
            f: &dyn Fn(&[usize]) -> SparseVec,
        ) {
            if depth == supports.len() {
                for (o, c) in f(tuple) {
                    out[o] += &coef * c;
                }
                return;
            }
            for &i in &supports[depth] {
                tuple[depth] = i;
                walk(depth + 1, &coef * &vectors[depth][i], supports, vectors, tuple, out, f);
            }
        }
        walk(0, Scalar::one(), &supports, vectors, &mut tuple, &mut out, &f);
        out
    }

    /// `m_n` extended multilinearly to dense coordinate vectors.
    pub fn m(&self, vectors: &[&[Scalar]]) -> Vec<Scalar> {
        self.multilinear(vectors, |t| self.m_basis(t))
    }

    /// `ℓ_n` extended multilinearly to dense coordinate vectors.
    pub fn ell(&self, vectors: &[&[Scalar]]) -> Vec<Scalar> {
        self.multilinear(vectors, |t| self.ell_basis(t))
    }

    /// Dense vector from coordinates over a degree slice.
    pub fn embed(&self, degree: i32, coefficients: &[Scalar]) -> Result<Vec<Scalar>> {
        let slice = self.slice(degree);
        if slice.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: slice.len(),
                found: coefficients.len(),
            });
        }
        let mut v = vec![Scalar::zero(); self.dim()];
        for (&i, c) in slice.iter().zip(coefficients) {
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates over a degree slice.
    pub fn restrict(&self, degree: i32, v: &[Scalar]) -> Vec<Scalar> {
        self.slice(degree).iter().map(|&i| v[i].clone()).collect()
    }

    /// `Γ^k` for `k = 1, 2, …` until a zero term or the cap `2·dim + 4`.
    pub fn lower_central_series(&self) -> Result<Filtration> {
        let n = self.dim();
        let cap = 2 * n + 4;
        let mut terms = vec![Subspace::full(n)];
        while terms.len() < cap && !terms.last().expect("nonempty").is_zero() {
            let k = terms.len() + 1;
            let mut generators = Subspace::zero(n);
            for &arity in self.ops.keys().filter(|&&a| a >= 2) {
                let total = k.max(arity);
                for comp in compositions(total, arity) {
                    let spaces: Vec<&Subspace> = comp
                        .iter()
                        .map(|&ki| terms.get(ki - 1).unwrap_or_else(|| terms.last().unwrap()))
                        .collect();
                    generators = generators.sum(&self.image_of(arity, &spaces));
                }
            }
            terms.push(self.ell1_closure(generators)?);
        }
        Ok(Filtration {
            terms,
            basis: self.basis.clone(),
        })
    }

    fn image_of(&self, arity: usize, spaces: &[&Subspace]) -> Subspace {
        let n = self.dim();
        if spaces.iter().any(|s| s.is_zero()) {
            return Subspace::zero(n);
        }
        let mut images = Vec::new();
        let mut choice = vec![0usize; arity];
        loop {
            let vecs: Vec<&[Scalar]> = choice
                .iter()
                .zip(spaces)
                .map(|(&c, s)| s.basis()[c].as_slice())
                .collect();
            images.push(self.m(&vecs));
            let mut pos = 0;
            loop {
                if pos == arity {
                    return Subspace::span(n, images);
                }
                choice[pos] += 1;
                if choice[pos] < spaces[pos].dim() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    fn ell1_closure(&self, start: Subspace) -> Result<Subspace> {
        let n = self.dim();
        let mut current = start;
        for _ in 0..n + 2 {
            let next = current.sum(&self.image_of(1, &[&current]));
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::NotNilpotent(format!(
            "ℓ₁-closure did not stabilize within {} steps",
            n + 2
        )))
    }

    pub fn nilpotency_bound(&self, degree: i32) -> Result<NilpotencyBound> {
        Ok(self.lower_central_series()?.nilpotency_bound(degree))
    }

    /// Drops positive degrees and every bracket output landing there.
    pub fn brutal_truncate(&self) -> LInfinityAlgebra {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.basis.degree(i) <= 0).collect();
        let mut new_index = vec![None; self.dim()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = Some(k);
        }
        let basis = GradedBasis::new(
            keep.iter()
                .map(|&i| (self.basis.symbol(i).to_string(), self.basis.degree(i))),
            Convention::Homological,
        )
        .expect("sub-basis of a valid basis");
        let mut ops: BTreeMap<usize, BTreeMap<Vec<usize>, SparseVec>> = BTreeMap::new();
        for (&n, table) in &self.ops {
            for (key, out) in table {
                let Some(new_key) = key.iter().map(|&i| new_index[i]).collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let new_out: SparseVec = out
                    .iter()
                    .filter_map(|(&o, c)| new_index[o].map(|k| (k, c.clone())))
                    .collect();
                if !new_out.is_empty() {
                    ops.entry(n).or_default().insert(new_key, new_out);
                }
            }
        }
        LInfinityAlgebra {
            basis,
            ops,
            arity_cap: self.arity_cap,
        }
    }

    /// `Σ_n (1/n!) ℓ_n(x,…,x)` over `𝔤₋₂` for `x` given over `𝔤₋₁`.
    pub fn mc_residual(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let full = self.embed(-1, x)?;
        let mut out = vec![Scalar::zero(); self.dim()];
        for table in self.ops.values() {
            for (key, value) in table {
                // Inputs of suspended degree 0: the n!/Π mult! orderings all
                // carry sign +1.
                let mut coef = Scalar::one();
                let mut run = 1usize;
                for (pos, &i) in key.iter().enumerate() {
                    coef *= &full[i];
                    if pos > 0 && key[pos - 1] == i {
                        run += 1;
                        coef /= Scalar::from_integer(run.into());
                    } else {
                        run = 1;
                    }
                }
                if coef.is_zero() {
                    continue;
                }
                for (&o, c) in value {
                    out[o] += &coef * c;
                }
            }
        }
        Ok(self.restrict(-2, &out))
    }

    pub fn certify(&self, x: &[Scalar]) -> Result<MCElement> {
        let residual = self.mc_residual(x)?;
        let element = MCElement {
            coefficients: x.to_vec(),
            residual,
        };
        if !element.is_certified() {
            return Err(Error::NotMaurerCartan(format!(
                "residual {}",
                crate::cdga::render_scalars(element.residual())
            )));
        }
        Ok(element)
    }

    /// The residual without requiring it to vanish.
    pub fn evaluate_mc(&self, x: &[Scalar]) -> Result<MCElement> {
        Ok(MCElement {
            coefficients: x.to_vec(),
            residual: self.mc_residual(x)?,
        })
    }

    /// Maurer–Cartan sum of `Σ_e se⊗u_e` in `s𝔤⊗R`, where `u_e` has
    /// cohomological degree `|se|`. Evaluated over ordered input tuples with
    /// explicit Koszul signs; returns the component of every basis element.
    pub fn mc_residual_in<R: DgAlgebra>(&self, ring: &R, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if u.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        for (e, ue) in u.iter().enumerate() {
            if !ring.degree(ue).admits(self.suspended_degree(e)) {
                return Err(Error::DegreeMismatch {
                    context: format!("coefficient of {}", self.basis.symbol(e)),
                    expected: self.suspended_degree(e),
                    found: match ring.degree(ue) {
                        Degree::Homogeneous(d) => d,
                        _ => i32::MIN,
                    },
                });
            }
        }
        let mut out: Vec<R::Elem> = (0..self.dim())
            .map(|f| {
                let du = ring.d(&u[f]);
                if is_odd(self.suspended_degree(f)) {
                    ring.neg(&du)
                } else {
                    du
                }
            })
            .collect();
        let support: Vec<usize> = (0..self.dim()).filter(|&e| !ring.is_zero(&u[e])).collect();
        for &n in self.ops.keys() {
            let weight = factorial(n).recip();
            let mut tuple = Vec::with_capacity(n);
            self.accumulate_tuples(ring, u, &support, n, &weight, &mut tuple, &mut out);
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn accumulate_tuples<R: DgAlgebra>(
        &self,
        ring: &R,
        u: &[R::Elem],
        support: &[usize],
        n: usize,
        weight: &Scalar,
        tuple: &mut Vec<usize>,
        out: &mut [R::Elem],
    ) {
        if tuple.len() == n {
            let value = self.m_basis(tuple);
            if value.is_empty() {
                return;
            }
            // Moving each r_i to the right past se_j for i < j.
            let mut odd = false;
            for i in 0..n {
                for j in i + 1..n {
                    odd ^= is_odd(self.suspended_degree(tuple[i]))
                        && is_odd(self.suspended_degree(tuple[j]));
                }
            }
            let product = tuple
                .iter()
                .fold(ring.one(), |acc, &e| ring.mul(&acc, &u[e]));
            if ring.is_zero(&product) {
                return;
            }
            let sign = Sign::from_parity(odd).apply(weight.clone());
            for (o, c) in value {
                let term = ring.scale(&product, &(&sign * c));
                out[o] = ring.add(&out[o], &term);
            }
            return;
        }
        for &e in support {
            tuple.push(e);
            self.accumulate_tuples(ring, u, support, n, weight, tuple, out);
            tuple.pop();
        }
    }

    /// Maurer–Cartan sum of `x(t) + ξ(t) dt` in `𝔤⊗Λ(t,dt)`.
    pub fn mc_residual_path(&self, path: &MCPath) -> Result<PathResidual> {
        let ring = Interval::new(Ground);
        let minus1 = self.slice(-1);
        let zero = self.slice(0);
        if path.x.len() != minus1.len() || path.xi.len() != zero.len() {
            return Err(Error::LengthMismatch {
                expected: minus1.len() + zero.len(),
                found: path.x.len() + path.xi.len(),
            });
        }
        let mut u: Vec<IntervalElement<Scalar>> = vec![ring.zero(); self.dim()];
        for (&i, p) in minus1.iter().zip(&path.x) {
            u[i] = ring.from_parts(p.clone(), Vec::new());
        }
        for (&i, p) in zero.iter().zip(&path.xi) {
            u[i] = ring.from_parts(Vec::new(), p.clone());
        }
        let res = self.mc_residual_in(&ring, &u)?;
        Ok(PathResidual {
            t_component: self
                .slice(-2)
                .iter()
                .map(|&f| res[f].t_part().to_vec())
                .collect(),
            dt_component: minus1.iter().map(|&f| res[f].dt_part().to_vec()).collect(),
        })
    }

    pub fn render_vector(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .enumerate()
            .map(|(k, (i, c))| crate::graded::signed_term(c, self.basis.symbol(i), k == 0))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.concat()
        }
    }

    /// Like [`Self::render_vector`] for coordinates over one degree slice.
    pub fn render_slice(&self, degree: i32, coefficients: &[Scalar]) -> String {
        match self.embed(degree, coefficients) {
            Ok(full) => self.render_vector(&full),
            Err(e) => e.to_string(),
        }
    }
}

/// Ordered `parts`-tuples of positive integers summing to `total`.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for LInfinityAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.basis)?;
        for table in self.ops.values() {
            for key in table.keys() {
                let v = self.ell_basis(key);
                let mut dense = vec![Scalar::zero(); self.dim()];
                for (o, c) in v {
                    dense[o] = c;
                }
                writeln!(f, "  {} = {}", self.describe_inputs(key), self.render_vector(&dense))?;
            }
        }
        Ok(())
    }
}
