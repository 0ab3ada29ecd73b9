//! Univariate polynomials over ℚ: exact interpolation and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graded::Scalar;
use crate::linf::{eval_poly, trim_poly};

/// Coefficients (lowest degree first) of the polynomial through the points.
pub fn interpolate(points: &[(Scalar, Scalar)]) -> Vec<Scalar> {
    let n = points.len();
    let mut out = vec![Scalar::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Lagrange basis polynomial for node i.
        let mut basis = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Scalar::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let w = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &w;
        }
    }
    trim_poly(out)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots in increasing order, or `None` for the zero
/// polynomial.
pub fn rational_roots(coefficients: &[Scalar]) -> Option<Vec<Scalar>> {
    let p = trim_poly(coefficients.to_vec());
    if p.is_empty() {
        return None;
    }
    let shift = p.iter().take_while(|c| c.is_zero()).count();
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(Scalar::zero());
    }
    let q = &p[shift..];
    if q.len() > 1 {
        let lcm = q
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = q
            .iter()
            .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        for num in divisors(&ints[0]) {
            for den in divisors(ints.last().expect("nonempty")) {
                for sign in [1, -1] {
                    let r = Scalar::new(&num * sign, den.clone());
                    if eval_poly(q, &r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{frac, int};

    #[test]
    fn roots_of_simple_polynomials() {
        // λ + λ²/2
        assert_eq!(
            rational_roots(&[int(0), int(1), frac(1, 2)]),
            Some(vec![int(-2), int(0)])
        );
        // a − a²
        assert_eq!(rational_roots(&[int(0), int(1), int(-1)]), Some(vec![int(0), int(1)]));
        // 6x² − 5x + 1 = (2x−1)(3x−1)
        assert_eq!(
            rational_roots(&[int(1), int(-5), int(6)]),
            Some(vec![frac(1, 3), frac(1, 2)])
        );
        assert_eq!(rational_roots(&[int(1), int(0), int(1)]), Some(vec![]));
        assert_eq!(rational_roots(&[int(0)]), None);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = vec![int(3), frac(-1, 2), int(0), int(2)];
        let pts: Vec<_> = (0..4).map(|x| (int(x), eval_poly(&p, &int(x)))).collect();
        assert_eq!(interpolate(&pts), p);
    }
}
