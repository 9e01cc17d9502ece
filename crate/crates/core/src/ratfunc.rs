//! Multivariate rational functions over Q as unreduced numerator/denominator
//! pairs.
//!
//! Arithmetic takes no polynomial gcd: only scalar content and common monomial
//! factors are cancelled, and equality is decided by cross-multiplication.
//! [`RatFunc::reduced`] cancels the full gcd on request.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{Signed, Zero};

use crate::linalg::Field;
use crate::poly::{Poly, Var};
use crate::rational::{int, Rational};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `num / den`; `None` if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    fn normalized(self) -> Self {
        let RatFunc { num, den } = self;
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let (num, den) = cancel_monomials(num, den);
        // Denominator content 1 and positive leading coefficient.
        let mut scale = den.content();
        if den.leading_coefficient().is_some_and(Signed::is_negative) {
            scale = -scale;
        }
        let inv = int(1) / &scale;
        let (num, den) = (num.scale(&inv), den.scale(&inv));
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&(int(1) / c)), den: Poly::one() };
        }
        // num = c · den.
        if num.term_count() == den.term_count() {
            let (ln, ld) = (num.leading_coefficient().unwrap(), den.leading_coefficient().unwrap());
            let c = ln / ld;
            if num == den.scale(&c) {
                return RatFunc::constant(c);
            }
        }
        RatFunc { num, den }
    }

    /// Numerator and denominator divided by their polynomial gcd.
    pub fn reduced(&self) -> RatFunc {
        let g = self.num.gcd(&self.den);
        let (num, den) = match (self.num.div_exact(&g), self.den.div_exact(&g)) {
            (Some(n), Some(d)) => (n, d),
            _ => return self.clone(),
        };
        RatFunc { num, den }.normalized()
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        (!Zero::is_zero(&d)).then(|| self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitutes `value` for `var`. `None` if the denominator vanishes
    /// identically afterwards.
    pub fn substitute(&self, var: Var, value: &Rational) -> Option<RatFunc> {
        RatFunc::new(self.num.substitute(var, value), self.den.substitute(var, value))
    }

    pub fn rename(&self, map: impl Fn(Var) -> Var + Copy) -> RatFunc {
        RatFunc { num: self.num.rename(map), den: self.den.rename(map) }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn display(&self, names: &[String]) -> String {
        let n = self.num.display(names);
        if self.den.as_constant().is_some() {
            return n;
        }
        let wrap = |s: String, p: &Poly| if p.term_count() > 1 || s.contains('*') { alloc::format!("({s})") } else { s };
        alloc::format!("{}/{}", wrap(n, &self.num), wrap(self.den.display(names), &self.den))
    }
}

fn cancel_monomials(num: Poly, den: Poly) -> (Poly, Poly) {
    let (a, b) = (num.monomial_gcd(), den.monomial_gcd());
    let common: crate::poly::Monomial = a
        .iter()
        .filter_map(|&(v, e)| b.iter().find(|(w, _)| *w == v).map(|&(_, f)| (v, e.min(f))))
        .collect();
    if common.is_empty() {
        return (num, den);
    }
    (num.div_monomial(&common), den.div_monomial(&common))
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::int(0)
    }
    fn one() -> Self {
        RatFunc::int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        RatFunc { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.normalized()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::int(0);
        }
        RatFunc { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(RatFunc { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.normalized())
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.variables();
        let max = vars.last().map_or(0, |&v| v as usize + 1);
        let names: Vec<String> = (0..max).map(|v| alloc::format!("p{v}")).collect();
        f.write_str(&self.display(&names))
    }
}
