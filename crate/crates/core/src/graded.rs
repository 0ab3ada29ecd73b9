//! Exact scalars, finite graded bases, degree-homogeneous linear maps and
//! Koszul sign bookkeeping.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field: exact rationals in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Prefix used for suspended symbols.
pub const SUSPENSION_PREFIX: &str = "s";
/// Prefix used for dual symbols.
pub const DUAL_PREFIX: &str = "^";

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse {
        line: 0,
        column: 0,
        message: format!("invalid rational `{text}`"),
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

/// Lowest-terms rendering: `3`, `-1/2`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `(-1)^n` as a scalar.
pub fn parity_sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn is_odd(degree: i32) -> bool {
    degree.rem_euclid(2) == 1
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * int(k as i64))
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_scalar(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => -Scalar::one(),
        }
    }

    pub fn apply(self, c: Scalar) -> Scalar {
        match self {
            Sign::Plus => c,
            Sign::Minus => -c,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) != (rhs == Sign::Minus))
    }
}

/// Sign picked up when the sequence `x_0, …, x_{n-1}` of homogeneous elements
/// is rearranged into `x_{perm[0]}, …, x_{perm[n-1]}`.
///
/// Every transposition of two odd elements contributes a factor `-1`, so the
/// sign is `(-1)^k` with `k` the number of inverted pairs of odd entries.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<Sign> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            expected: degrees.len(),
            found: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(koszul_sign_unchecked(perm, degrees))
}

pub(crate) fn koszul_sign_unchecked(perm: &[usize], degrees: &[i32]) -> Sign {
    let mut odd_inversions = 0usize;
    for i in 0..perm.len() {
        if !is_odd(degrees[perm[i]]) {
            continue;
        }
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && is_odd(degrees[perm[j]]) {
                odd_inversions += 1;
            }
        }
    }
    Sign::from_parity(odd_inversions % 2 == 1)
}

/// Sorts `items` by key and returns the Koszul sign of the sort, using the
/// given parity function for each item.
pub(crate) fn sort_with_sign<T: Ord + Clone>(
    items: &[T],
    odd: impl Fn(&T) -> bool,
) -> (Vec<T>, Sign) {
    let mut perm: Vec<usize> = (0..items.len()).collect();
    perm.sort_by(|&a, &b| items[a].cmp(&items[b]));
    let degrees: Vec<i32> = items.iter().map(|t| i32::from(odd(t))).collect();
    let sign = koszul_sign_unchecked(&perm, &degrees);
    (perm.iter().map(|&p| items[p].clone()).collect(), sign)
}

/// Whether degrees are read homologically (differential lowers degree) or
/// cohomologically (differential raises degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Homological,
    Cohomological,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisEntry {
    pub symbol: String,
    pub degree: i32,
}

/// An ordered finite basis of a graded vector space.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    entries: Vec<BasisEntry>,
    convention: Convention,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.convention == other.convention
    }
}

impl Eq for GradedBasis {}

impl GradedBasis {
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, i32)>,
        convention: Convention,
    ) -> Result<Self> {
        let entries: Vec<BasisEntry> = entries
            .into_iter()
            .map(|(symbol, degree)| BasisEntry {
                symbol: symbol.into(),
                degree,
            })
            .collect();
        let mut index = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if e.symbol.is_empty() || e.symbol.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSymbol(e.symbol.clone()));
            }
            if index.insert(e.symbol.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(e.symbol.clone()));
            }
        }
        Ok(Self {
            entries,
            convention,
            index,
        })
    }

    pub fn empty(convention: Convention) -> Self {
        Self {
            entries: Vec::new(),
            convention,
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.entries[i].degree
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.entries[i].symbol
    }

    pub fn position(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    /// Indices of all entries of the given degree, in basis order.
    pub fn slice(&self, degree: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) == degree).collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.entries.iter().map(|e| e.degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// Suspension `(sV)_n = V_{n-1}` of a homologically graded basis.
pub fn suspend(basis: &GradedBasis) -> Result<GradedBasis> {
    if basis.convention() != Convention::Homological {
        return Err(Error::ConventionMismatch(
            "suspension expects a homologically graded basis",
        ));
    }
    GradedBasis::new(
        basis
            .entries()
            .iter()
            .map(|e| (format!("{SUSPENSION_PREFIX}{}", e.symbol), e.degree + 1)),
        Convention::Homological,
    )
}

/// Linear dual. A homological degree-`m` element dualizes to cohomological
/// degree `m`, and vice versa.
pub fn dualize(basis: &GradedBasis) -> GradedBasis {
    let convention = match basis.convention() {
        Convention::Homological => Convention::Cohomological,
        Convention::Cohomological => Convention::Homological,
    };
    GradedBasis::new(
        basis
            .entries()
            .iter()
            .map(|e| (format!("{DUAL_PREFIX}{}", e.symbol), e.degree)),
        convention,
    )
    .expect("prefixing preserves symbol uniqueness")
}

/// A linear map between graded bases that shifts degree by a fixed amount.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedBasis,
    target: GradedBasis,
    shift: i32,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl GradedMap {
    pub fn zero(source: GradedBasis, target: GradedBasis, shift: i32) -> Self {
        Self {
            source,
            target,
            shift,
            entries: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Sets the coefficient of `target[to]` in the image of `source[from]`.
    pub fn set(&mut self, from: usize, to: usize, value: Scalar) -> Result<()> {
        if value.is_zero() {
            self.entries.remove(&(from, to));
            return Ok(());
        }
        let expected = self.source.degree(from) + self.shift;
        if self.target.degree(to) != expected {
            return Err(Error::DegreeMismatch {
                context: format!(
                    "graded map entry {} -> {}",
                    self.source.symbol(from),
                    self.target.symbol(to)
                ),
                expected,
                found: self.target.degree(to),
            });
        }
        self.entries.insert((from, to), value);
        Ok(())
    }

    pub fn get(&self, from: usize, to: usize) -> Scalar {
        self.entries
            .get(&(from, to))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.target.len()];
        for (&(i, j), c) in &self.entries {
            out[j] += c * &v[i];
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for GradedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", e.symbol, e.degree)?;
        }
        write!(f, "}}")
    }
}

/// `|c|` rendered with an explicit sign for joining terms.
pub(crate) fn signed_term(c: &Scalar, body: &str, first: bool) -> String {
    let neg = c.is_negative();
    let abs = c.abs();
    let coef = if abs.is_one() && !body.is_empty() {
        String::new()
    } else if body.is_empty() {
        format_scalar(&abs)
    } else {
        format!("{}*", format_scalar(&abs))
    };
    match (first, neg) {
        (true, false) => format!("{coef}{body}"),
        (true, true) => format!("-{coef}{body}"),
        (false, false) => format!(" + {coef}{body}"),
        (false, true) => format!(" - {coef}{body}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(entries: &[(&str, i32)]) -> GradedBasis {
        GradedBasis::new(entries.iter().copied(), Convention::Homological).unwrap()
    }

    #[test]
    fn koszul_identity_and_transpositions() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 3, 5]).unwrap(), Sign::Plus);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), Sign::Minus);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]).unwrap(), Sign::Plus);
        assert_eq!(koszul_sign(&[2, 1, 0], &[1, 1, 1]).unwrap(), Sign::Minus);
    }

    #[test]
    fn koszul_rejects_bad_input() {
        assert!(matches!(
            koszul_sign(&[0, 1], &[1]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            koszul_sign(&[0, 0], &[1, 1]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn koszul_sign_is_multiplicative() {
        // Rearranging by tau and then by sigma (acting on the rearranged
        // sequence) equals rearranging by tau∘sigma in one go.
        for n in 0..=5 {
            let perms = permutations(n);
            for degrees in [
                vec![1, 2, 3, -1, 0],
                vec![1, 1, 1, 1, 1],
                vec![0, 1, 0, 1, 1],
            ] {
                let degrees = &degrees[..n];
                for tau in &perms {
                    let permuted: Vec<i32> = tau.iter().map(|&i| degrees[i]).collect();
                    for sigma in &perms {
                        let composite: Vec<usize> = sigma.iter().map(|&i| tau[i]).collect();
                        let lhs = koszul_sign(&composite, degrees).unwrap();
                        let rhs = koszul_sign(tau, degrees).unwrap()
                            * koszul_sign(sigma, &permuted).unwrap();
                        assert_eq!(lhs, rhs, "tau={tau:?} sigma={sigma:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn suspension_shifts_degrees() {
        let b = basis(&[("y", -1)]);
        let s = suspend(&b).unwrap();
        assert_eq!(s.symbol(0), "sy");
        assert_eq!(s.degree(0), 0);
        assert_eq!(suspend(&basis(&[("e", 0)])).unwrap().degree(0), 1);
        assert!(suspend(&GradedBasis::empty(Convention::Homological))
            .unwrap()
            .is_empty());
        let coh = dualize(&b);
        assert!(suspend(&coh).is_err());
    }

    #[test]
    fn dual_of_suspension_places_g_n_minus_1_in_degree_n() {
        let d = dualize(&suspend(&basis(&[("x", -1), ("e", 0)])).unwrap());
        assert_eq!(d.convention(), Convention::Cohomological);
        assert_eq!(d.symbol(0), "^sx");
        assert_eq!(d.degree(0), 0);
        assert_eq!(d.symbol(1), "^se");
        assert_eq!(d.degree(1), 1);
        assert_eq!(dualize(&suspend(&basis(&[("z", -2)])).unwrap()).degree(0), -1);
        assert!(dualize(&GradedBasis::empty(Convention::Homological)).is_empty());
        for x in -4..4 {
            let b = basis(&[("x", x)]);
            assert_eq!(dualize(&suspend(&b).unwrap()).degree(0), x + 1);
        }
    }

    #[test]
    fn basis_rejects_duplicates() {
        assert!(matches!(
            GradedBasis::new([("a", 0), ("a", 1)], Convention::Homological),
            Err(Error::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn graded_map_enforces_shift() {
        let src = basis(&[("a", 0), ("b", 1)]);
        let tgt = basis(&[("c", 1), ("d", 2)]);
        let mut m = GradedMap::zero(src, tgt, 1);
        m.set(0, 0, int(2)).unwrap();
        m.set(1, 1, frac(1, 3)).unwrap();
        assert!(m.set(0, 1, int(1)).is_err());
        assert_eq!(m.apply(&[int(1), int(3)]), vec![int(2), int(1)]);
    }

    #[test]
    fn scalar_parsing_and_printing() {
        assert_eq!(parse_scalar("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
    }

    use proptest::prelude::*;

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn scalar_field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip(), Scalar::one());
            }
            prop_assert!(a.denom().is_positive());
        }
    }
}
