//! Free graded-commutative dg algebras `Λ(V)` on finitely many generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{DgAlgebra, Degree};
use crate::error::{Error, Result};
use crate::graded::{
    format_scalar, int, is_odd, parse_scalar, signed_term, Convention, GradedBasis, Scalar, Sign,
};
use crate::linalg::rank;

/// Exponent vector over the generators, in generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || allowed(i))
    }
}

/// A sparse sum of monomials with nonzero rational coefficients.
///
/// Monomials are in canonical generator order and the coefficient already
/// carries the Koszul sign of sorting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::unit(arity), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let arity = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.arity);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.arity);
        }
        Element {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn max_word_length(&self) -> u32 {
        self.terms.keys().map(Monomial::word_length).max().unwrap_or(0)
    }
}

#[derive(Debug)]
struct Inner {
    generators: GradedBasis,
    odd: Vec<bool>,
    differential: Vec<Element>,
}

/// `(Λ(V), d)` with `V` finite and cohomologically graded.
#[derive(Clone, Debug)]
pub struct FreeCdga(Arc<Inner>);

impl PartialEq for FreeCdga {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.generators == other.0.generators
                && self.0.differential == other.0.differential)
    }
}

impl FreeCdga {
    /// The free algebra on `generators` with zero differential.
    pub fn new(generators: GradedBasis) -> Result<Self> {
        if generators.convention() != Convention::Cohomological {
            return Err(Error::ConventionMismatch(
                "dg algebra generators must be cohomologically graded",
            ));
        }
        let n = generators.len();
        let odd = (0..n).map(|i| is_odd(generators.degree(i))).collect();
        Ok(Self(Arc::new(Inner {
            generators,
            odd,
            differential: vec![Element::zero(n); n],
        })))
    }

    pub fn from_generators<S: Into<String>>(gens: impl IntoIterator<Item = (S, i32)>) -> Result<Self> {
        Self::new(GradedBasis::new(gens, Convention::Cohomological)?)
    }

    /// The ground field presented as the free algebra on nothing.
    pub fn ground() -> Self {
        Self::new(GradedBasis::empty(Convention::Cohomological)).expect("empty basis")
    }

    /// Same generators, new differential. Checks degrees, the odd-square
    /// rule, and `d∘d = 0` on every generator.
    pub fn with_differential(&self, differential: Vec<Element>) -> Result<Self> {
        let n = self.num_generators();
        if differential.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: differential.len(),
            });
        }
        for (i, dv) in differential.iter().enumerate() {
            self.validate_element(dv)?;
            let expected = self.generator_degree(i) + 1;
            if !self.degree_of(dv).admits(expected) {
                return Err(Error::DegreeMismatch {
                    context: format!("d({})", self.symbol(i)),
                    expected,
                    found: match self.degree_of(dv) {
                        Degree::Homogeneous(d) => d,
                        _ => i32::MIN,
                    },
                });
            }
        }
        let alg = Self(Arc::new(Inner {
            generators: self.0.generators.clone(),
            odd: self.0.odd.clone(),
            differential,
        }));
        for i in 0..n {
            let dd = alg.differential(&alg.0.differential[i]);
            if !dd.is_zero() {
                return Err(Error::SquareNonzero {
                    generator: alg.symbol(i).to_string(),
                    witness: alg.render(&dd),
                });
            }
        }
        Ok(alg)
    }

    /// Builds the differential with a closure that sees the zero-differential
    /// algebra on the same generators.
    pub fn build(
        generators: GradedBasis,
        differential: impl FnOnce(&FreeCdga) -> Result<Vec<Element>>,
    ) -> Result<Self> {
        let bare = Self::new(generators)?;
        let diffs = differential(&bare)?;
        bare.with_differential(diffs)
    }

    pub fn generators(&self) -> &GradedBasis {
        &self.0.generators
    }

    pub fn num_generators(&self) -> usize {
        self.0.generators.len()
    }

    pub fn generator_degree(&self, i: usize) -> i32 {
        self.0.generators.degree(i)
    }

    pub fn is_odd_generator(&self, i: usize) -> bool {
        self.0.odd[i]
    }

    pub fn symbol(&self, i: usize) -> &str {
        self.0.generators.symbol(i)
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut m = Monomial::unit(self.num_generators());
        m.0[i] = 1;
        Element::monomial(m, Scalar::one())
    }

    pub fn generator_by_symbol(&self, symbol: &str) -> Result<Element> {
        self.0
            .generators
            .position(symbol)
            .map(|i| self.generator(i))
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn constant(&self, c: Scalar) -> Element {
        Element::constant(self.num_generators(), c)
    }

    /// `d(v)` for the `i`-th generator.
    pub fn generator_differential(&self, i: usize) -> &Element {
        &self.0.differential[i]
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i32 {
        m.0.iter()
            .enumerate()
            .map(|(i, &e)| e as i32 * self.generator_degree(i))
            .sum()
    }

    pub fn degree_of(&self, x: &Element) -> Degree {
        x.terms
            .keys()
            .fold(Degree::Zero, |acc, m| {
                acc.merge(Degree::Homogeneous(self.monomial_degree(m)))
            })
    }

    /// Splits `x` by degree.
    pub fn homogeneous_components(&self, x: &Element) -> BTreeMap<i32, Element> {
        let mut out: BTreeMap<i32, Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            out.entry(self.monomial_degree(m))
                .or_insert_with(|| Element::zero(x.arity()))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    fn validate_element(&self, x: &Element) -> Result<()> {
        if x.arity != self.num_generators() {
            return Err(Error::AmbientMismatch);
        }
        for m in x.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if self.0.odd[i] && e > 1 {
                    return Err(Error::OddSquare(self.symbol(i).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Product of two canonical monomials with the Koszul sign of reordering,
    /// or `None` when an odd generator would be squared.
    fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, Sign)> {
        let odd = &self.0.odd;
        let mut odd_before = 0usize;
        let mut swaps = 0usize;
        // Walking from the right: each odd factor of `b` at position i must pass
        // the odd factors of `a` at positions > i.
        for i in (0..a.0.len()).rev() {
            if odd[i] {
                if a.0[i] == 1 && b.0[i] == 1 {
                    return None;
                }
                if b.0[i] == 1 {
                    swaps += odd_before;
                }
                if a.0[i] == 1 {
                    odd_before += 1;
                }
            }
        }
        let exps = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        Some((Monomial(exps), Sign::from_parity(swaps % 2 == 1)))
    }

    /// Graded-commutative product.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.arity != self.num_generators() || y.arity != self.num_generators() {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.multiply_unchecked(x, y))
    }

    fn multiply_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(self.num_generators());
        for (ma, ca) in &x.terms {
            for (mb, cb) in &y.terms {
                if let Some((m, sign)) = self.multiply_monomials(ma, mb) {
                    out.add_term(m, sign.apply(ca * cb));
                }
            }
        }
        out
    }

    /// Extends `d` from generators as a degree +1 derivation.
    pub fn differential(&self, x: &Element) -> Element {
        let n = self.num_generators();
        let mut out = Element::zero(n);
        for (m, c) in &x.terms {
            let mut prefix_degree = 0i32;
            for i in 0..n {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let dv = &self.0.differential[i];
                if !dv.is_zero() {
                    let mut prefix = Monomial::unit(n);
                    prefix.0[..i].copy_from_slice(&m.0[..i]);
                    let mut suffix = Monomial::unit(n);
                    suffix.0[i + 1..].copy_from_slice(&m.0[i + 1..]);
                    let mut power = Monomial::unit(n);
                    power.0[i] = e - 1;
                    // d(v^e) = e v^{e-1} dv for v even; e = 1 for v odd.
                    let coef = Sign::from_parity(is_odd(prefix_degree)).apply(c * int(e as i64));
                    let left = Element::monomial(prefix, Scalar::one());
                    let mid = self.multiply_unchecked(&Element::monomial(power, coef), dv);
                    let right = Element::monomial(suffix, Scalar::one());
                    let term = self.multiply_unchecked(&self.multiply_unchecked(&left, &mid), &right);
                    out = out.add(&term);
                }
                prefix_degree += e as i32 * self.generator_degree(i);
            }
        }
        out
    }

    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &Scalar)> = x.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.word_length()
                .cmp(&a.word_length())
                .then_with(|| b.0.cmp(&a.0))
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            out.push_str(&signed_term(c, &self.render_monomial(m), k == 0));
        }
        out
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.symbol(i).to_string()
                } else {
                    format!("{}^{}", self.symbol(i), e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Parses sums like `a^2 - a + 1/2*a*b`. Factors are multiplied in the
    /// order written, so Koszul signs follow that order.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let err = |message: String| Error::Parse {
            line: 0,
            column: 0,
            message,
        };
        let mut out = Element::zero(self.num_generators());
        let cleaned = text.replace(' ', "");
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(out);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (k, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !current.ends_with('^') {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' && k == 0 {
                negative = true;
            } else if ch != '+' {
                current.push(ch);
            }
        }
        terms.push((negative, current));
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(err(format!("empty term in `{text}`")));
            }
            let mut term = self.constant(if neg { -Scalar::one() } else { Scalar::one() });
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| err(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let value = match self.0.generators.position(base) {
                    Some(i) => self.pow(&self.generator(i), exp),
                    None => {
                        let c = parse_scalar(base).map_err(|_| {
                            err(format!("unknown factor `{base}` in `{text}`"))
                        })?;
                        self.constant(num_traits::pow(c, exp as usize))
                    }
                };
                term = self.multiply_unchecked(&term, &value);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// All monomials of the given degree with word length at most `max_len`.
    pub fn monomials(&self, degree: i32, max_len: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.num_generators()];
        self.enumerate_monomials(0, max_len, 0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate_monomials(
        &self,
        i: usize,
        remaining: u32,
        acc: i32,
        target: i32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == self.num_generators() {
            if acc == target {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let cap = if self.0.odd[i] { remaining.min(1) } else { remaining };
        for e in 0..=cap {
            exps[i] = e;
            self.enumerate_monomials(
                i + 1,
                remaining - e,
                acc + e as i32 * self.generator_degree(i),
                target,
                exps,
                out,
            );
        }
        exps[i] = 0;
    }

    /// Degrees reachable by monomials of word length at most `max_len`.
    pub fn reachable_degrees(&self, max_len: u32) -> Vec<i32> {
        let mut degrees = std::collections::BTreeSet::new();
        let mut frontier = std::collections::BTreeSet::from([0i32]);
        degrees.insert(0);
        for _ in 0..max_len {
            let mut next = std::collections::BTreeSet::new();
            for &d in &frontier {
                for i in 0..self.num_generators() {
                    next.insert(d + self.generator_degree(i));
                }
            }
            degrees.extend(next.iter().copied());
            frontier = next;
        }
        degrees.into_iter().collect()
    }
}

impl DgAlgebra for FreeCdga {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::zero(self.num_generators())
    }

    fn one(&self) -> Element {
        self.constant(Scalar::one())
    }

    fn is_zero(&self, x: &Element) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &Element, y: &Element) -> Element {
        x.add(y)
    }

    fn scale(&self, x: &Element, c: &Scalar) -> Element {
        x.scale(c)
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        debug_assert_eq!(x.arity, self.num_generators());
        self.multiply_unchecked(x, y)
    }

    fn d(&self, x: &Element) -> Element {
        self.differential(x)
    }

    fn parity_twist(&self, x: &Element) -> Element {
        Element {
            arity: x.arity,
            terms: x
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if is_odd(self.monomial_degree(m)) {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    fn degree(&self, x: &Element) -> Degree {
        self.degree_of(x)
    }

    fn render(&self, x: &Element) -> String {
        FreeCdga::render(self, x)
    }
}

impl fmt::Display for FreeCdga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Λ({})", self.generators())?;
        for i in 0..self.num_generators() {
            writeln!(
                f,
                "  d({}) = {}",
                self.symbol(i),
                self.render(self.generator_differential(i))
            )?;
        }
        Ok(())
    }
}

/// A dg algebra map out of a free algebra, determined by generator images.
#[derive(Clone, Debug)]
pub struct CdgaMorphism<B: DgAlgebra> {
    source: FreeCdga,
    target: B,
    images: Vec<B::Elem>,
}

impl<B: DgAlgebra> PartialEq for CdgaMorphism<B> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.images == other.images
    }
}

/// Per-generator residuals `φ(dv) − dφ(v)`.
#[derive(Clone, Debug)]
pub struct MorphismCertificate<E> {
    pub residuals: Vec<E>,
    pub passed: bool,
}

impl<B: DgAlgebra> CdgaMorphism<B> {
    /// Graded algebra map with the given generator images. Degrees are
    /// checked here; compatibility with `d` is checked by [`Self::certificate`].
    pub fn new(source: FreeCdga, target: B, images: Vec<B::Elem>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::LengthMismatch {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            let expected = source.generator_degree(i);
            let deg = target.degree(img);
            if !deg.admits(expected) {
                return Err(Error::DegreeMismatch {
                    context: format!("image of {}", source.symbol(i)),
                    expected,
                    found: match deg {
                        Degree::Homogeneous(d) => d,
                        _ => i32::MIN,
                    },
                });
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub(crate) fn new_unchecked(source: FreeCdga, target: B, images: Vec<B::Elem>) -> Self {
        Self {
            source,
            target,
            images,
        }
    }

    /// As [`Self::new`], additionally requiring the certificate to pass.
    pub fn new_checked(source: FreeCdga, target: B, images: Vec<B::Elem>) -> Result<Self> {
        let phi = Self::new(source, target, images)?;
        let cert = phi.certificate();
        if !cert.passed {
            return Err(Error::NotAMorphism(phi.describe_failure(&cert)));
        }
        Ok(phi)
    }

    pub fn source(&self) -> &FreeCdga {
        &self.source
    }

    pub fn target(&self) -> &B {
        &self.target
    }

    pub fn images(&self) -> &[B::Elem] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &B::Elem {
        &self.images[i]
    }

    pub fn apply(&self, x: &Element) -> B::Elem {
        apply_images(&self.target, &self.images, x)
    }

    pub fn certificate(&self) -> MorphismCertificate<B::Elem> {
        let residuals: Vec<B::Elem> = (0..self.source.num_generators())
            .map(|i| {
                let lhs = self.apply(self.source.generator_differential(i));
                let rhs = self.target.d(&self.images[i]);
                self.target.sub(&lhs, &rhs)
            })
            .collect();
        let passed = residuals.iter().all(|r| self.target.is_zero(r));
        MorphismCertificate { residuals, passed }
    }

    pub fn is_dg_morphism(&self) -> bool {
        self.certificate().passed
    }

    pub fn describe_failure(&self, cert: &MorphismCertificate<B::Elem>) -> String {
        cert.residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !self.target.is_zero(r))
            .map(|(i, r)| {
                format!(
                    "φ(d{}) − dφ({}) = {}",
                    self.source.symbol(i),
                    self.source.symbol(i),
                    self.target.render(r)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Postcompose with an algebra map on the target, given elementwise.
    pub fn map_target<C: DgAlgebra>(
        &self,
        target: C,
        f: impl Fn(&B::Elem) -> C::Elem,
    ) -> CdgaMorphism<C> {
        CdgaMorphism {
            source: self.source.clone(),
            target,
            images: self.images.iter().map(f).collect(),
        }
    }

    pub fn render(&self) -> String {
        (0..self.source.num_generators())
            .map(|i| {
                format!(
                    "{} ↦ {}",
                    self.source.symbol(i),
                    self.target.render(&self.images[i])
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl CdgaMorphism<FreeCdga> {
    pub fn identity(a: &FreeCdga) -> Self {
        let images = (0..a.num_generators()).map(|i| a.generator(i)).collect();
        Self::new_unchecked(a.clone(), a.clone(), images)
    }
}

/// Evaluates the algebra map determined by generator images on `x`.
/// Images of generators that do not occur in `x` are never touched.
pub(crate) fn apply_images<B: DgAlgebra>(target: &B, images: &[B::Elem], x: &Element) -> B::Elem {
    let mut powers: BTreeMap<(usize, u32), B::Elem> = BTreeMap::new();
    let mut out = target.zero();
    for (m, c) in x.terms() {
        let mut acc = target.from_scalar(c);
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers
                .entry((i, e))
                .or_insert_with(|| target.pow(&images[i], e))
                .clone();
            acc = target.mul(&acc, &p);
            if target.is_zero(&acc) {
                break;
            }
        }
        out = target.add(&out, &acc);
    }
    out
}

/// Stage index (starting at 1) of every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanOrder {
    stages: Vec<usize>,
}

impl SullivanOrder {
    pub fn new(stages: Vec<usize>) -> Result<Self> {
        if stages.contains(&0) {
            return Err(Error::InvalidOrder("stages start at 1".into()));
        }
        Ok(Self { stages })
    }

    pub fn stage(&self, generator: usize) -> usize {
        self.stages[generator]
    }

    pub fn stages(&self) -> &[usize] {
        &self.stages
    }

    pub fn num_stages(&self) -> usize {
        self.stages.iter().copied().max().unwrap_or(0)
    }

    /// Generators of stage `s`, in generator order.
    pub fn stage_members(&self, s: usize) -> Vec<usize> {
        (0..self.stages.len())
            .filter(|&i| self.stages[i] == s)
            .collect()
    }

    /// Generators sorted by stage, ties broken by generator order.
    pub fn processing_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.stages.len()).collect();
        idx.sort_by_key(|&i| (self.stages[i], i));
        idx
    }

    /// Checks `d(V_i) ⊆ Λ(V_1 ⊕ ⋯ ⊕ V_{i-1})` literally on generators.
    pub fn validate(&self, a: &FreeCdga) -> Result<()> {
        if self.stages.len() != a.num_generators() {
            return Err(Error::InvalidOrder(format!(
                "order covers {} generators, algebra has {}",
                self.stages.len(),
                a.num_generators()
            )));
        }
        for v in 0..a.num_generators() {
            let s = self.stages[v];
            for (m, _) in a.generator_differential(v).terms() {
                if !m.uses_only(|w| self.stages[w] < s) {
                    return Err(Error::InvalidOrder(format!(
                        "d({}) involves generators not of stage < {s}",
                        a.symbol(v)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `self` assigns every generator a stage no later than `other`.
    pub fn refines_earlier_than(&self, other: &SullivanOrder) -> bool {
        self.stages.iter().zip(&other.stages).all(|(a, b)| a <= b)
    }
}

/// Greedy saturation: stage 1 holds the closed generators, stage `i+1` the
/// generators whose differential lives on stages `≤ i`.
pub fn sullivan_order(a: &FreeCdga) -> Result<SullivanOrder> {
    let n = a.num_generators();
    let mut stages = vec![0usize; n];
    let mut assigned = 0;
    let mut stage = 1;
    while assigned < n {
        let ready: Vec<usize> = (0..n)
            .filter(|&v| stages[v] == 0)
            .filter(|&v| {
                a.generator_differential(v)
                    .terms()
                    .all(|(m, _)| m.uses_only(|w| stages[w] != 0 && stages[w] < stage))
            })
            .collect();
        if ready.is_empty() {
            let stuck = (0..n)
                .filter(|&v| stages[v] == 0)
                .map(|v| a.symbol(v).to_string())
                .collect();
            return Err(Error::NotSullivan { stuck });
        }
        for v in ready {
            stages[v] = stage;
            assigned += 1;
        }
        stage += 1;
    }
    SullivanOrder::new(stages)
}

/// Dimensions of the word-length-truncated cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCohomology {
    /// Entry `k` is the dimension computed with word-length cap `k + 1`.
    pub dims: Vec<usize>,
    /// The last three caps agree.
    pub stabilized: bool,
}

/// `dim ker(d|C_{≤N}) − dim(im d ∩ C_{≤N})` in the given degree, where
/// `C_{≤N}` is spanned by monomials of word length at most `N`, for each
/// `N = 1..=cap`. The differential need not preserve word length, so the
/// stabilization flag is a heuristic.
pub fn cohomology_dim(a: &FreeCdga, degree: i32, cap: u32) -> Result<TruncatedCohomology> {
    if cap == 0 {
        return Err(Error::InvalidArgument("word-length cap must be ≥ 1".into()));
    }
    let dims: Vec<usize> = (1..=cap)
        .map(|n| truncated_cohomology_at(a, degree, n))
        .collect();
    Ok(TruncatedCohomology {
        stabilized: stabilized(&dims),
        dims,
    })
}

/// Sum over all degrees reachable with the given cap.
pub fn total_cohomology_dim(a: &FreeCdga, cap: u32) -> Result<TruncatedCohomology> {
    if cap == 0 {
        return Err(Error::InvalidArgument("word-length cap must be ≥ 1".into()));
    }
    let degrees = a.reachable_degrees(cap);
    let dims: Vec<usize> = (1..=cap)
        .map(|n| {
            degrees
                .iter()
                .map(|&d| truncated_cohomology_at(a, d, n))
                .sum()
        })
        .collect();
    Ok(TruncatedCohomology {
        stabilized: stabilized(&dims),
        dims,
    })
}

fn stabilized(dims: &[usize]) -> bool {
    dims.len() >= 3 && dims[dims.len() - 3..].iter().all(|&d| d == dims[dims.len() - 1])
}

fn truncated_cohomology_at(a: &FreeCdga, degree: i32, cap: u32) -> usize {
    let source = a.monomials(degree, cap);
    let below = a.monomials(degree - 1, cap);

    // Kernel of d on C^degree_{≤cap}.
    let images: Vec<Element> = source.iter().map(|m| a.differential(&Element::monomial(m.clone(), Scalar::one()))).collect();
    let ker = source.len() - rank_of_columns(&images);

    // im d ∩ C_{≤cap}: rank(M) − rank(P_long M).
    let below_images: Vec<Element> = below
        .iter()
        .map(|m| a.differential(&Element::monomial(m.clone(), Scalar::one())))
        .collect();
    let long: Vec<Element> = below_images
        .iter()
        .map(|x| {
            let mut y = Element::zero(x.arity());
            for (m, c) in x.terms() {
                if m.word_length() > cap {
                    y.add_term(m.clone(), c.clone());
                }
            }
            y
        })
        .collect();
    let im = rank_of_columns(&below_images) - rank_of_columns(&long);
    ker - im
}

fn rank_of_columns(columns: &[Element]) -> usize {
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for col in columns {
        for (m, _) in col.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<Scalar>> = columns
        .iter()
        .map(|col| {
            let mut row = vec![Scalar::zero(); index.len()];
            for (m, c) in col.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    if index.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// Renders a coefficient table, used by the CLI.
pub fn render_scalars(xs: &[Scalar]) -> String {
    format!(
        "({})",
        xs.iter().map(format_scalar).collect::<Vec<_>>().join(",")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::frac;

    /// `Λ(a, b)` with `|a| = 0`, `|b| = -1`, `db = a² − a`.
    fn idempotent_algebra() -> FreeCdga {
        FreeCdga::build(
            GradedBasis::new([("a", 0), ("b", -1)], Convention::Cohomological).unwrap(),
            |bare| Ok(vec![bare.zero(), bare.parse_element("a^2 - a")?]),
        )
        .unwrap()
    }

    #[test]
    fn even_and_odd_squares() {
        let alg = FreeCdga::from_generators([("a", 0), ("b", 1)]).unwrap();
        let a = alg.generator(0);
        let b = alg.generator(1);
        assert_eq!(alg.mul(&a, &a), alg.parse_element("a^2").unwrap());
        assert!(alg.mul(&b, &b).is_zero());
    }

    #[test]
    fn odd_elements_anticommute() {
        let alg = FreeCdga::from_generators([("u", 1), ("v", 1), ("w", 3), ("c", 2)]).unwrap();
        let x = alg.parse_element("u + 2*w*c").unwrap();
        let y = alg.parse_element("v - w").unwrap();
        assert_eq!(alg.mul(&x, &y), alg.mul(&y, &x).neg());
        let uv = alg.mul(&alg.generator(0), &alg.generator(1));
        let vu = alg.mul(&alg.generator(1), &alg.generator(0));
        assert_eq!(uv, vu.neg());
    }

    #[test]
    fn multiply_checks_ambient() {
        let a = FreeCdga::from_generators([("a", 0)]).unwrap();
        let b = FreeCdga::from_generators([("a", 0), ("b", 1)]).unwrap();
        assert_eq!(
            a.multiply(&a.generator(0), &b.generator(1)),
            Err(Error::AmbientMismatch)
        );
    }

    #[test]
    fn differential_examples() {
        let alg = idempotent_algebra();
        let a = alg.generator(0);
        let b = alg.generator(1);
        assert!(alg.d(&alg.mul(&a, &a)).is_zero());
        assert_eq!(alg.d(&b), alg.parse_element("a^2 - a").unwrap());
        // Leibniz with |a| = 0: d(ab) = a·db = a³ − a².
        assert_eq!(
            alg.d(&alg.mul(&a, &b)),
            alg.parse_element("a^3 - a^2").unwrap()
        );
    }

    #[test]
    fn rejects_nonzero_square() {
        let err = FreeCdga::build(
            GradedBasis::new([("u", 0), ("v", 1), ("w", 2)], Convention::Cohomological).unwrap(),
            |bare| {
                Ok(vec![
                    bare.parse_element("v")?,
                    bare.parse_element("w")?,
                    bare.zero(),
                ])
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::SquareNonzero { ref generator, .. } if generator == "u"));
    }

    #[test]
    fn rejects_wrong_degree_differential() {
        let err = FreeCdga::build(
            GradedBasis::new([("a", 0), ("b", 1)], Convention::Cohomological).unwrap(),
            |bare| Ok(vec![bare.parse_element("a")?, bare.zero()]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn morphism_checks() {
        let alg = idempotent_algebra();
        let id = CdgaMorphism::identity(&alg);
        assert!(id.certificate().passed);

        for (alpha, ok) in [(int(0), true), (int(1), true), (frac(1, 2), false)] {
            let phi =
                CdgaMorphism::new(alg.clone(), crate::algebra::Ground, vec![alpha.clone(), int(0)])
                    .unwrap();
            let cert = phi.certificate();
            assert_eq!(cert.passed, ok);
            if !ok {
                assert_eq!(cert.residuals[1], frac(-1, 4));
            }
        }
        // a ↦ 1 in degree 1 target slot is a degree error.
        assert!(CdgaMorphism::new(alg, crate::algebra::Ground, vec![int(0), int(1)]).is_err());
    }

    #[test]
    fn morphism_roots_by_search() {
        // Rational roots of α² − α found by scanning small fractions.
        let alg = idempotent_algebra();
        let mut roots = Vec::new();
        for num in -6..=6 {
            for den in 1..=4 {
                let alpha = frac(num, den);
                let phi =
                    CdgaMorphism::new(alg.clone(), crate::algebra::Ground, vec![alpha.clone(), int(0)])
                        .unwrap();
                if phi.is_dg_morphism() && !roots.contains(&alpha) {
                    roots.push(alpha);
                }
            }
        }
        roots.sort();
        assert_eq!(roots, vec![int(0), int(1)]);
    }

    #[test]
    fn greedy_sullivan_orders() {
        let closed = FreeCdga::from_generators([("x", 1), ("y", 2)]).unwrap();
        assert_eq!(sullivan_order(&closed).unwrap().stages(), &[1, 1]);

        let alg = idempotent_algebra();
        let order = sullivan_order(&alg).unwrap();
        assert_eq!(order.stages(), &[1, 2]);
        order.validate(&alg).unwrap();

        let stuck = FreeCdga::build(
            GradedBasis::new([("u", 1), ("v", 1)], Convention::Cohomological).unwrap(),
            |bare| Ok(vec![bare.parse_element("u*v")?, bare.parse_element("u*v")?]),
        )
        .unwrap();
        match sullivan_order(&stuck) {
            Err(Error::NotSullivan { stuck }) => assert_eq!(stuck, vec!["u", "v"]),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn invalid_order_is_rejected() {
        let alg = idempotent_algebra();
        let bad = SullivanOrder::new(vec![1, 1]).unwrap();
        assert!(bad.validate(&alg).is_err());
    }

    #[test]
    fn cohomology_of_exterior_generator() {
        let alg = FreeCdga::from_generators([("v", 3)]).unwrap();
        let h = cohomology_dim(&alg, 3, 4).unwrap();
        assert_eq!(h.dims, vec![1, 1, 1, 1]);
        assert!(h.stabilized);
    }

    #[test]
    fn cohomology_of_idempotent_algebra_is_two_dimensional() {
        let alg = idempotent_algebra();
        let h = total_cohomology_dim(&alg, 4).unwrap();
        assert_eq!(h.dims.last(), Some(&2));
        assert!(h.stabilized);
    }

    #[test]
    fn polynomial_ring_does_not_stabilize() {
        let alg = FreeCdga::from_generators([("a", 0)]).unwrap();
        let h = cohomology_dim(&alg, 0, 5).unwrap();
        assert_eq!(h.dims, vec![2, 3, 4, 5, 6]);
        assert!(!h.stabilized);
    }

    #[test]
    fn render_and_parse_agree() {
        let alg = idempotent_algebra();
        let x = alg.parse_element("1/2*a^2*b - 3*a + 7").unwrap();
        assert_eq!(alg.parse_element(&alg.render(&x)).unwrap(), x);
    }
}
