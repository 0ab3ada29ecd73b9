//! Polynomial forms on the interval with coefficients in a dg algebra:
//! `B⊗Λ(t,dt)`, and by iterating, `B⊗Λ(t,dt)⊗Λ(s,ds)`.

use num_traits::{One, Zero};

use crate::algebra::{DgAlgebra, Degree};
use crate::error::{Error, Result};
use crate::graded::{int, Scalar};

/// `Σ_j a_j t^j + Σ_i c_i t^i dt`, with `dt` written to the right of the
/// coefficient. Both lists are trimmed of trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalElement<E> {
    t: Vec<E>,
    dt: Vec<E>,
}

impl<E> IntervalElement<E> {
    /// Coefficients of `t^j`.
    pub fn t_part(&self) -> &[E] {
        &self.t
    }

    /// Coefficients of `t^i dt`.
    pub fn dt_part(&self) -> &[E] {
        &self.dt
    }
}

/// `B⊗Λ(t,dt)` with `|t| = 0`, `|dt| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<B> {
    base: B,
}

/// `B⊗Λ(t,dt)⊗Λ(s,ds)`, with `s` the outer variable.
pub type BiInterval<B> = Interval<Interval<B>>;
pub type BiIntervalElement<E> = IntervalElement<IntervalElement<E>>;

impl<B: DgAlgebra> Interval<B> {
    pub fn new(base: B) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    fn trim(&self, mut v: Vec<B::Elem>) -> Vec<B::Elem> {
        while v.last().is_some_and(|x| self.base.is_zero(x)) {
            v.pop();
        }
        v
    }

    /// Builds an element from coefficient lists, normalizing trailing zeros.
    pub fn from_parts(&self, t: Vec<B::Elem>, dt: Vec<B::Elem>) -> IntervalElement<B::Elem> {
        IntervalElement {
            t: self.trim(t),
            dt: self.trim(dt),
        }
    }

    /// `b ↦ b⊗1`.
    pub fn lift(&self, b: &B::Elem) -> IntervalElement<B::Elem> {
        self.from_parts(vec![b.clone()], Vec::new())
    }

    /// `b t^j`.
    pub fn monomial_t(&self, b: &B::Elem, j: usize) -> IntervalElement<B::Elem> {
        let mut t = vec![self.base.zero(); j + 1];
        t[j] = b.clone();
        self.from_parts(t, Vec::new())
    }

    /// `c t^i dt`.
    pub fn monomial_dt(&self, c: &B::Elem, i: usize) -> IntervalElement<B::Elem> {
        let mut dt = vec![self.base.zero(); i + 1];
        dt[i] = c.clone();
        self.from_parts(Vec::new(), dt)
    }

    pub fn t(&self) -> IntervalElement<B::Elem> {
        self.monomial_t(&self.base.one(), 1)
    }

    pub fn dt(&self) -> IntervalElement<B::Elem> {
        self.monomial_dt(&self.base.one(), 0)
    }

    /// Coefficient of `t^j`, zero past the support.
    pub fn t_coefficient(&self, x: &IntervalElement<B::Elem>, j: usize) -> B::Elem {
        x.t.get(j).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Coefficient of `t^i dt`, zero past the support.
    pub fn dt_coefficient(&self, x: &IntervalElement<B::Elem>, i: usize) -> B::Elem {
        x.dt.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Substitutes `t := value`, `dt := 0`.
    pub fn ev(&self, x: &IntervalElement<B::Elem>, value: &Scalar) -> B::Elem {
        let mut acc = self.base.zero();
        let mut power = Scalar::one();
        for a in &x.t {
            acc = self.base.add(&acc, &self.base.scale(a, &power));
            power *= value;
            if power.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn ev0(&self, x: &IntervalElement<B::Elem>) -> B::Elem {
        self.ev(x, &Scalar::zero())
    }

    pub fn ev1(&self, x: &IntervalElement<B::Elem>) -> B::Elem {
        self.ev(x, &Scalar::one())
    }

    /// The endomorphism `t ↦ t^{n+1}`, `dt ↦ (n+1) t^n dt`.
    pub fn reparam_rho(&self, n: i64, x: &IntervalElement<B::Elem>) -> Result<IntervalElement<B::Elem>> {
        if n < 0 {
            return Err(Error::InvalidArgument(format!("ρ_n needs n ≥ 0, got {n}")));
        }
        let n = n as usize;
        let zero = self.base.zero();
        let mut t = vec![zero.clone(); x.t.len().saturating_sub(1) * (n + 1) + 1];
        for (j, a) in x.t.iter().enumerate() {
            t[j * (n + 1)] = a.clone();
        }
        let factor = int(n as i64 + 1);
        let mut dt = vec![zero; x.dt.len().saturating_sub(1) * (n + 1) + n + 1];
        for (i, c) in x.dt.iter().enumerate() {
            dt[i * (n + 1) + n] = self.base.scale(c, &factor);
        }
        Ok(self.from_parts(t, dt))
    }

    /// Applies an algebra map `B → C` that commutes with the parity twist
    /// coefficientwise.
    pub fn map_coefficients<C: DgAlgebra>(
        &self,
        target: &Interval<C>,
        x: &IntervalElement<B::Elem>,
        f: impl Fn(&B::Elem) -> C::Elem,
    ) -> IntervalElement<C::Elem> {
        target.from_parts(x.t.iter().map(&f).collect(), x.dt.iter().map(&f).collect())
    }

    /// Polynomial in `t` with scalar coefficients, as an element.
    pub fn scalar_polynomial(&self, coefficients: &[Scalar]) -> IntervalElement<B::Elem> {
        self.from_parts(
            coefficients.iter().map(|c| self.base.from_scalar(c)).collect(),
            Vec::new(),
        )
    }
}

impl<B: DgAlgebra> Interval<Interval<B>> {
    /// `t, s ↦ u`, `dt, ds ↦ du`, into `B⊗Λ(u,du)`.
    pub fn chi_collapse(&self, x: &BiIntervalElement<B::Elem>) -> IntervalElement<B::Elem> {
        let inner = &self.base;
        let b = &inner.base;
        let mut t: Vec<B::Elem> = Vec::new();
        let mut dt: Vec<B::Elem> = Vec::new();
        let bump = |v: &mut Vec<B::Elem>, k: usize, c: &B::Elem| {
            if v.len() <= k {
                v.resize(k + 1, b.zero());
            }
            v[k] = b.add(&v[k], c);
        };
        for (k, a) in x.t.iter().enumerate() {
            for (j, c) in a.t.iter().enumerate() {
                bump(&mut t, j + k, c);
            }
            for (i, c) in a.dt.iter().enumerate() {
                bump(&mut dt, i + k, c);
            }
        }
        for (l, c_l) in x.dt.iter().enumerate() {
            for (j, c) in c_l.t.iter().enumerate() {
                bump(&mut dt, j + l, c);
            }
        }
        inner.from_parts(t, dt)
    }

    /// Substitutes the inner variable `t := value`, `dt := 0`, leaving `s`.
    pub fn ev_inner(&self, x: &BiIntervalElement<B::Elem>, value: &Scalar) -> IntervalElement<B::Elem> {
        self.map_coefficients(&self.base, x, |a| self.base.ev(a, value))
    }
}

impl<B: DgAlgebra> DgAlgebra for Interval<B> {
    type Elem = IntervalElement<B::Elem>;

    fn zero(&self) -> Self::Elem {
        IntervalElement {
            t: Vec::new(),
            dt: Vec::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.lift(&self.base.one())
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.t.is_empty() && x.dt.is_empty()
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let sum = |a: &[B::Elem], b: &[B::Elem]| {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| match (a.get(i), b.get(i)) {
                    (Some(p), Some(q)) => self.base.add(p, q),
                    (Some(p), None) | (None, Some(p)) => p.clone(),
                    (None, None) => unreachable!(),
                })
                .collect::<Vec<_>>()
        };
        self.from_parts(sum(&x.t, &y.t), sum(&x.dt, &y.dt))
    }

    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem {
        if c.is_zero() {
            return self.zero();
        }
        self.from_parts(
            x.t.iter().map(|a| self.base.scale(a, c)).collect(),
            x.dt.iter().map(|a| self.base.scale(a, c)).collect(),
        )
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let zero = self.base.zero();
        let mut t = vec![zero.clone(); (x.t.len() + y.t.len()).saturating_sub(1)];
        let dt_len = (x.t.len() + y.dt.len()).max(x.dt.len() + y.t.len());
        let mut dt = vec![zero; dt_len.saturating_sub(1)];
        for (j, a) in x.t.iter().enumerate() {
            for (k, b) in y.t.iter().enumerate() {
                t[j + k] = self.base.add(&t[j + k], &self.base.mul(a, b));
            }
            for (k, c) in y.dt.iter().enumerate() {
                dt[j + k] = self.base.add(&dt[j + k], &self.base.mul(a, c));
            }
        }
        for (i, c) in x.dt.iter().enumerate() {
            for (k, b) in y.t.iter().enumerate() {
                // c dt · b = (−1)^{|b|} c b dt
                let term = self.base.mul(c, &self.base.parity_twist(b));
                dt[i + k] = self.base.add(&dt[i + k], &term);
            }
        }
        self.from_parts(t, dt)
    }

    fn d(&self, x: &Self::Elem) -> Self::Elem {
        let t: Vec<B::Elem> = x.t.iter().map(|a| self.base.d(a)).collect();
        let mut dt: Vec<B::Elem> = x.dt.iter().map(|c| self.base.d(c)).collect();
        if dt.len() + 1 < x.t.len() {
            dt.resize(x.t.len() - 1, self.base.zero());
        }
        for (j, a) in x.t.iter().enumerate().skip(1) {
            let term = self.base.scale(&self.base.parity_twist(a), &int(j as i64));
            dt[j - 1] = self.base.add(&dt[j - 1], &term);
        }
        self.from_parts(t, dt)
    }

    fn parity_twist(&self, x: &Self::Elem) -> Self::Elem {
        self.from_parts(
            x.t.iter().map(|a| self.base.parity_twist(a)).collect(),
            x.dt
                .iter()
                .map(|c| self.base.neg(&self.base.parity_twist(c)))
                .collect(),
        )
    }

    fn degree(&self, x: &Self::Elem) -> Degree {
        let mut deg = Degree::Zero;
        for a in &x.t {
            deg = deg.merge(self.base.degree(a));
        }
        for c in &x.dt {
            let shifted = match self.base.degree(c) {
                Degree::Homogeneous(n) => Degree::Homogeneous(n + 1),
                other => other,
            };
            deg = deg.merge(shifted);
        }
        deg
    }

    fn render(&self, x: &Self::Elem) -> String {
        let mut parts = Vec::new();
        let wrap = |s: String| {
            if s.contains(' ') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        for (j, a) in x.t.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            let c = self.base.render(a);
            parts.push(match j {
                0 => c,
                1 => format!("{}*t", wrap(c)),
                _ => format!("{}*t^{j}", wrap(c)),
            });
        }
        for (i, a) in x.dt.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            let c = wrap(self.base.render(a));
            parts.push(match i {
                0 => format!("{c}*dt"),
                1 => format!("{c}*t*dt"),
                _ => format!("{c}*t^{i}*dt"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
