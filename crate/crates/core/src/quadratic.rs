//! Exact arithmetic in Z[√2, √3], enough to sign principal minors of Gram
//! matrices whose off-diagonal entries are −2cos(π/m) for m ∈ {2, 3, 4, 6, ∞}.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `a + b√2 + c√3 + d√6`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quad {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Quad {
    pub fn int(n: i64) -> Self {
        Quad { a: n.into(), ..Default::default() }
    }

    pub fn sqrt2(n: i64) -> Self {
        Quad { b: n.into(), ..Default::default() }
    }

    pub fn sqrt3(n: i64) -> Self {
        Quad { c: n.into(), ..Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Exact sign, found by writing the value as `p + q√3` with `p, q ∈ Z[√2]`.
    pub fn sign(&self) -> Ordering {
        let p = (self.a.clone(), self.b.clone());
        let q = (self.c.clone(), self.d.clone());
        let sp = sign_z2(&p.0, &p.1);
        let sq = sign_z2(&q.0, &q.1);
        if sq == Ordering::Equal || sp == sq {
            return if sp == Ordering::Equal { sq } else { sp };
        }
        if sp == Ordering::Equal {
            return sq;
        }
        // Opposite signs: compare p² with 3q².
        let p2 = (&p.0 * &p.0 + 2 * &p.1 * &p.1, 2 * &p.0 * &p.1);
        let q2 = (&q.0 * &q.0 + 2 * &q.1 * &q.1, 2 * &q.0 * &q.1);
        let diff = sign_z2(&(p2.0 - 3 * q2.0), &(p2.1 - 3 * q2.1));
        match diff {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sp,
            Ordering::Less => sq,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * core::f64::consts::SQRT_2 + f(&self.c) * libm::sqrt(3.0) + f(&self.d) * libm::sqrt(6.0)
    }
}

/// Sign of `u + v√2`.
fn sign_z2(u: &BigInt, v: &BigInt) -> Ordering {
    let su = u.sign_ord();
    let sv = v.sign_ord();
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    match (u * u).cmp(&(2 * v * v)) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => su,
        Ordering::Less => sv,
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, o: &Quad) -> Quad {
        Quad { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        // √2√2 = 2, √3√3 = 3, √6√6 = 6, √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2.
        Quad {
            a: a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            b: a * f + b * e + 3 * c * h + 3 * d * g,
            c: a * g + c * e + 2 * b * h + 2 * d * f,
            d: a * h + d * e + b * g + c * f,
        }
    }
}

/// Determinant of the principal submatrix on `idx`.
pub fn principal_minor(m: &[alloc::vec::Vec<Quad>], idx: &[usize]) -> Quad {
    let k = idx.len();
    if k == 0 {
        return Quad::int(1);
    }
    // dp[mask] = det of rows idx[0..popcount(mask)] against the columns in mask.
    let mut dp = alloc::vec![Quad::default(); 1 << k];
    dp[0] = Quad::int(1);
    for mask in 1usize..(1 << k) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Quad::default();
        let mut sign_pos = row.is_multiple_of(2);
        for col in 0..k {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[idx[row]][idx[col]];
            if !entry.is_zero() {
                let term = entry * &dp[mask & !(1 << col)];
                acc = if sign_pos { &acc + &term } else { &acc - &term };
            }
            sign_pos = !sign_pos;
        }
        dp[mask] = acc;
    }
    dp[(1 << k) - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!((&Quad::sqrt2(1) - &Quad::int(1)).sign(), Ordering::Greater);
        assert_eq!((&Quad::sqrt3(1) - &Quad::sqrt2(1)).sign(), Ordering::Greater);
        let five_minus = &Quad::int(5) - &(&Quad::sqrt2(1) * &Quad::sqrt3(2));
        assert_eq!(five_minus.sign(), Ordering::Greater);
        let x = &Quad::sqrt3(1) - &Quad::sqrt2(1);
        let y = &x * &x;
        // (√3 − √2)² = 5 − 2√6
        assert_eq!((&y - &five_minus).sign(), Ordering::Equal);
        assert_eq!((&Quad::int(0) - &Quad::sqrt3(2)).sign(), Ordering::Less);
        let z = &(&Quad::sqrt2(3) + &Quad::sqrt3(-2)) - &Quad::int(1);
        assert_eq!(z.sign(), if z.to_f64() > 0.0 { Ordering::Greater } else { Ordering::Less });
    }

    #[test]
    fn minors_of_small_matrix() {
        let m = alloc::vec![
            alloc::vec![Quad::int(2), Quad::int(-1)],
            alloc::vec![Quad::int(-1), Quad::int(2)],
        ];
        assert_eq!(principal_minor(&m, &[0]), Quad::int(2));
        assert_eq!(principal_minor(&m, &[0, 1]), Quad::int(3));
    }
}
