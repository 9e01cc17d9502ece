//! Univariate polynomials over Q with exact real-root isolation by Sturm
//! sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, midpoint, Rational};

/// Coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(int(0), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&int(0))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        UPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::default(), self.clone());
        }
        let mut q = vec![int(0); r.len() - dd];
        let dl = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / dl;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(UPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`, for a
    /// squarefree polynomial.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.sturm_sequence();
        sign_changes(&seq, a).saturating_sub(sign_changes(&seq, b))
    }

    /// Disjoint isolating intervals `[lo, hi]`, ascending, one per real root of
    /// the squarefree part inside the open interval `(a, b)`. Endpoints are never
    /// roots, and each interval is narrower than `tol`.
    pub fn isolate_roots(&self, a: &Rational, b: &Rational, tol: &Rational) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.squarefree();
        let seq = p.sturm_sequence();
        let mut lo = a.clone();
        let mut hi = b.clone();
        // Roots on the bracket ends are excluded: step inward past them.
        if p.eval(&lo).is_zero() {
            let mut eps = (&hi - &lo) / int(4);
            while p.eval(&(&lo + &eps)).is_zero() || count_between(&seq, &lo, &(&lo + &eps)) > 0 {
                eps /= int(2);
            }
            lo = &lo + &eps;
        }
        if p.eval(&hi).is_zero() {
            let mut eps = (&hi - &lo) / int(4);
            while p.eval(&(&hi - &eps)).is_zero() || count_between(&seq, &(&hi - &eps), &hi) > 1 {
                eps /= int(2);
            }
            hi = &hi - &eps;
        }
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((l, h)) = stack.pop() {
            let n = count_between(&seq, &l, &h);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(p.refine(&l, &h, tol));
                continue;
            }
            let m = midpoint(&l, &h);
            if p.eval(&m).is_zero() {
                let mut eps = (&h - &l) / int(4);
                while p.eval(&(&m - &eps)).is_zero()
                    || p.eval(&(&m + &eps)).is_zero()
                    || count_between(&seq, &(&m - &eps), &(&m + &eps)) != 1
                    || &eps * int(2) >= *tol
                {
                    eps /= int(2);
                }
                out.push((&m - &eps, &m + &eps));
                stack.push((&m + &eps, h));
                stack.push((l, &m - &eps));
                continue;
            }
            stack.push((m.clone(), h));
            stack.push((l, m));
        }
        out.sort();
        out
    }

    /// Bisects an interval holding exactly one simple root with a sign change
    /// until its width is below `tol`. Endpoints stay non-roots.
    fn refine(&self, lo: &Rational, hi: &Rational, tol: &Rational) -> (Rational, Rational) {
        let (mut l, mut h) = (lo.clone(), hi.clone());
        let sl = self.sign_at(&l);
        while &h - &l >= *tol {
            let m = midpoint(&l, &h);
            match self.sign_at(&m) {
                Ordering::Equal => {
                    // Exact rational root: tighten symmetrically around it.
                    let w = tol / int(4);
                    return (&m - &w, &m + &w);
                }
                s if s == sl => l = m,
                _ => h = m,
            }
        }
        (l, h)
    }

    /// Rescales to integer coefficients with positive leading coefficient; a
    /// canonical representative up to positive scalar multiples.
    pub fn primitive(&self) -> UPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<Rational> = self.coeffs.iter().map(|c| c * Rational::from_integer(den.clone())).collect();
        let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let g = if self.lead().is_negative() { -g } else { g };
        UPoly::new(scaled.into_iter().map(|c| c / Rational::from_integer(g.clone())).collect())
    }
}

fn sign_changes(seq: &[UPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for p in seq {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Roots in `(a, b]`.
fn count_between(seq: &[UPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Splits a family of nonzero polynomials into pairwise coprime squarefree
/// monic factors with the same real roots (a gcd-free basis). Constants are
/// dropped.
pub fn coprime_basis(polys: &[UPoly]) -> Vec<UPoly> {
    let mut basis: Vec<UPoly> = Vec::new();
    for p in polys {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut pending = vec![p.squarefree()];
        while let Some(mut q) = pending.pop() {
            let mut k = 0;
            while k < basis.len() && q.degree().unwrap_or(0) > 0 {
                let g = basis[k].gcd(&q);
                if g.degree().unwrap_or(0) == 0 {
                    k += 1;
                    continue;
                }
                let b = basis.swap_remove(k);
                let rest_b = b.div_rem(&g).0.monic();
                q = q.div_rem(&g).0.monic();
                if rest_b.degree().unwrap_or(0) > 0 {
                    pending.push(rest_b);
                }
                basis.push(g);
                // The new `g` divides nothing else already in the basis, since
                // it divides `b`, which was coprime to the rest.
                k = 0;
            }
            if q.degree().unwrap_or(0) > 0 && !basis.contains(&q) {
                basis.push(q);
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_f64};

    #[test]
    fn gcd_and_squarefree() {
        // (x − 1)²(x + 2)
        let p = UPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree(), UPoly::from_ints(&[-2, 1, 1]));
        let q = UPoly::from_ints(&[-1, 1]);
        assert_eq!(p.gcd(&q), q);
    }

    #[test]
    fn isolates_irrational_roots() {
        // x² − 2
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let roots = p.isolate_roots(&int(-10), &int(10), &rat(1, 1_000_000_000));
        assert_eq!(roots.len(), 2);
        assert!((to_f64(&roots[1].0) - core::f64::consts::SQRT_2).abs() < 1e-9);
        assert!((to_f64(&roots[0].1) + core::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn rational_roots_and_bracket_ends() {
        // x(x − 1)(x − 2), bracket [0, 2] so two roots sit on the ends.
        let p = UPoly::from_ints(&[0, 2, -3, 1]);
        let roots = p.isolate_roots(&int(0), &int(2), &rat(1, 1000));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].0 < int(1) && int(1) < roots[0].1);
        let roots = p.isolate_roots(&int(-1), &int(3), &rat(1, 1000));
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn basis_is_coprime() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // (x−1)(x+1)
        let b = UPoly::from_ints(&[-1, 1]); // x − 1
        let c = UPoly::from_ints(&[2, -3, 1]); // (x−1)(x−2)
        let basis = coprime_basis(&[a, b, c]);
        assert_eq!(basis.len(), 3);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                assert_eq!(basis[i].gcd(&basis[j]).degree(), Some(0));
            }
        }
    }
}
