//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are small integer indices; their names live with whoever owns the
//! polynomial (see [`crate::fiber::ParametricFiber`]).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};
use crate::upoly::UPoly;

pub type Var = u16;

/// A monomial as `(variable, exponent)` pairs, sorted by variable, exponents
/// positive. The empty monomial is 1.
pub type Monomial = Vec<(Var, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(int(1))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(alloc::vec![(v, 1)], int(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&(_, e)| e).sum()).max().unwrap_or(0)
    }

    /// Variables that occur, ascending.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Leading coefficient in the internal monomial order (largest monomial).
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Largest monomial dividing every term (the empty monomial for zero).
    pub fn monomial_gcd(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::new() };
        let mut g = first.clone();
        for m in it {
            g.retain_mut(|(v, e)| match m.iter().find(|(w, _)| w == v) {
                Some(&(_, f)) => {
                    *e = (*e).min(f);
                    true
                }
                None => false,
            });
        }
        g
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, d: &Monomial) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let nm: Monomial = m
                .iter()
                .filter_map(|&(v, e)| {
                    let k = d.iter().find(|(w, _)| *w == v).map_or(0, |&(_, f)| f);
                    (e > k).then_some((v, e - k))
                })
                .collect();
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Evaluates at `point[v]` for each variable `v`. Panics if a variable has
    /// no value.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = int(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t *= num_traits::pow(point[v as usize].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().fold(crate::rational::to_f64(c), |t, &(v, e)| t * libm::pow(point[v as usize], e as f64))
            })
            .sum()
    }

    /// Substitutes `value` for `var`.
    pub fn substitute(&self, var: Var, value: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut rest = Monomial::with_capacity(m.len());
            for &(v, e) in m {
                if v == var {
                    c *= num_traits::pow(value.clone(), e as usize);
                } else {
                    rest.push((v, e));
                }
            }
            out.add_term(rest, c);
        }
        out
    }

    /// Renames variables through `map` (old index → new index); the map must
    /// be injective on the variables present.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut nm: Monomial = m.iter().map(|&(v, e)| (map(v), e)).collect();
            nm.sort_unstable();
            out.add_term(nm, c.clone());
        }
        out
    }

    /// View as a univariate polynomial in `var`; `None` if any other variable
    /// occurs.
    pub fn to_univariate(&self, var: Var) -> Option<UPoly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = match m.as_slice() {
                [] => 0,
                [(v, e)] if *v == var => *e as usize,
                _ => return None,
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, int(0));
            }
            coeffs[e] += c;
        }
        Some(UPoly::new(coeffs))
    }

    /// Positive rational `c` such that `self / c` has integer coefficients
    /// with gcd 1.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return int(1);
        }
        Rational::new(num, den).abs()
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.iter().find(|(v, _)| *v == var).map_or(0, |&(_, e)| e)).max().unwrap_or(0)
    }

    /// Coefficients as a polynomial in `var`, lowest degree first.
    fn coefficients_in(&self, var: Var) -> Vec<Poly> {
        let mut out = alloc::vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.iter().find(|(v, _)| *v == var).map_or(0, |&(_, e)| e);
            let rest: Monomial = m.iter().copied().filter(|(v, _)| *v != var).collect();
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn leading_in(&self, var: Var) -> Poly {
        self.coefficients_in(var).pop().unwrap_or_default()
    }

    fn shifted(&self, var: Var, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        self.mul(&Poly { terms: BTreeMap::from([(alloc::vec![(var, k)], int(1))]) })
    }

    /// Content 1 and positive leading coefficient.
    fn unit_normal(&self) -> Poly {
        let mut c = self.content();
        if self.leading_coefficient().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.scale(&(int(1) / c))
    }

    /// The quotient `self / d` when it is a polynomial.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(int(1) / c)));
        }
        let x = d.variables()[0];
        let (m, ld) = (d.degree_in(x), d.leading_in(x));
        let mut r = self.clone();
        let mut q = Poly::zero();
        while !r.is_zero() {
            let n = r.degree_in(x);
            if n < m {
                return None;
            }
            let t = r.leading_in(x).div_exact(&ld)?.shifted(x, n - m);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Greatest common divisor, with content 1 and positive leading
    /// coefficient (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return if other.is_zero() { Poly::zero() } else { other.unit_normal() };
        }
        if other.is_zero() {
            return self.unit_normal();
        }
        let mut vars = self.variables();
        vars.extend(other.variables());
        let Some(&x) = vars.iter().min() else { return Poly::one() };
        let content = |p: &Poly| p.coefficients_in(x).iter().fold(Poly::zero(), |g, c| g.gcd(c));
        let (ca, cb) = (content(self), content(other));
        let c = ca.gcd(&cb);
        let (mut f, mut g) = (self.div_exact(&ca).expect("content divides"), other.div_exact(&cb).expect("content divides"));
        if f.degree_in(x) < g.degree_in(x) {
            core::mem::swap(&mut f, &mut g);
        }
        // Primitive remainder sequence in x.
        while g.degree_in(x) > 0 {
            let r = f.pseudo_rem(&g, x);
            f = g;
            if r.is_zero() {
                return c.mul(&f.primitive_in(x)).unit_normal();
            }
            g = r.primitive_in(x);
        }
        c
    }

    fn primitive_in(&self, x: Var) -> Poly {
        let cont = self.coefficients_in(x).iter().fold(Poly::zero(), |g, c| g.gcd(c));
        self.div_exact(&cont).expect("content divides")
    }

    /// `lc(g)^k · f mod g` in `x`, for the smallest k that keeps it polynomial.
    fn pseudo_rem(&self, g: &Poly, x: Var) -> Poly {
        let (m, lg) = (g.degree_in(x), g.leading_in(x));
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(x) >= m {
            let n = r.degree_in(x);
            r = r.mul(&lg).sub(&r.leading_in(x).shifted(x, n - m).mul(g));
        }
        r
    }

    /// Human-readable form using `names[v]` for variable `v`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = abs.is_one();
            if !unit || m.is_empty() {
                let _ = write!(out, "{abs}");
            }
            for (n, &(v, e)) in m.iter().enumerate() {
                if n > 0 || !unit {
                    out.push('*');
                }
                out.push_str(&names[v as usize]);
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = x.add(&y).mul(&x.sub(&y)); // x² − y²
        let q = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q);
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
        assert_eq!(p.substitute(1, &rat(1, 2)).to_univariate(0).unwrap().eval(&int(1)), rat(3, 4));
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.variables(), vec![0, 1]);
    }

    #[test]
    fn content_and_display() {
        let p = Poly::var(0).scale(&rat(2, 3)).add(&Poly::constant(rat(4, 9)));
        assert_eq!(p.content(), rat(2, 9));
        let names = vec![String::from("x")];
        assert_eq!(Poly::var(0).mul(&Poly::var(0)).sub(&Poly::constant(int(2))).display(&names), "x^2 - 2");
    }

    #[test]
    fn gcd_and_exact_division() {
        let (x, y, z) = (Poly::var(0), Poly::var(1), Poly::var(2));
        let one = Poly::one();
        let common = x.add(&y.scale(&int(2))).sub(&one); // x + 2y - 1
        let a = common.mul(&x.sub(&z)).mul(&y.mul(&y).add(&one));
        let b = common.mul(&y.add(&z.scale(&int(3)))).scale(&rat(-5, 7));
        assert_eq!(a.gcd(&b), common);
        assert_eq!(a.div_exact(&common).unwrap(), x.sub(&z).mul(&y.mul(&y).add(&one)));
        assert!(a.div_exact(&y.add(&z.scale(&int(3)))).is_none());
        assert_eq!(x.gcd(&y), one);
        assert_eq!(x.mul(&x).mul(&y).gcd(&x.mul(&y).mul(&y)), x.mul(&y));
        assert_eq!(Poly::constant(int(6)).gcd(&Poly::constant(int(4))), one);
    }
}
