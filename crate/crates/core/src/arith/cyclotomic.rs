//! The cyclotomic field Q(ζ_l), stored in the power basis 1, ζ, …, ζ^{φ(l)-1}
//! modulo the l-th cyclotomic polynomial.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use smallvec::{smallvec, SmallVec};

use super::Rational;
use crate::error::{Error, Result};

type Coeffs = SmallVec<[Rational; 4]>;

/// Integer data for one field order.
#[derive(Debug)]
struct FieldData {
    /// `powers[j]` = ζ^j written in the power basis, for 0 <= j < l.
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<FieldData>>> = RefCell::new(HashMap::new());
}

fn field(order: u32) -> Rc<FieldData> {
    if let Some(f) = FIELDS.with(|c| c.borrow().get(&order).cloned()) {
        return f;
    }
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x, then reduce the x^deg term with the monic Φ_l
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
    }
    let data = Rc::new(FieldData { powers });
    FIELDS.with(|c| c.borrow_mut().insert(order, data.clone()));
    data
}

/// Φ_n with ascending integer coefficients: x^n - 1 divided exactly by Φ_d
/// for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// An element of Q(ζ_l) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Coeffs,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order 0");
        let deg = if order <= 2 { 1 } else { totient(order) };
        Cyclotomic {
            order,
            coeffs: smallvec![Rational::ZERO; deg],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::ONE)
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(n))
    }

    /// ζ_l^e for any integer exponent.
    pub fn zeta_pow(order: u32, e: i64) -> Self {
        let mut z = Self::zero(order);
        z.add_power(e, &Rational::ONE);
        z
    }

    /// Σ r·ζ^e over the raw terms, reduced to canonical form.
    pub fn canonical(order: u32, raw: &[(i64, Rational)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let mut z = Self::zero(order);
        for (e, r) in raw {
            z.add_power(*e, r);
        }
        Ok(z)
    }

    /// Builds an element directly from power-basis coefficients.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let mut z = Self::zero(order);
        if coeffs.len() != z.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "Q(zeta_{order}) has degree {}, got {} coefficients",
                z.coeffs.len(),
                coeffs.len()
            )));
        }
        z.coeffs.clone_from_slice(coeffs);
        Ok(z)
    }

    fn add_power(&mut self, e: i64, r: &Rational) {
        if r.is_zero() {
            return;
        }
        let j = e.rem_euclid(self.order as i64) as usize;
        if self.order <= 2 {
            if j == 1 && self.order == 2 {
                self.coeffs[0] -= r;
            } else {
                self.coeffs[0] += r;
            }
            return;
        }
        let f = field(self.order);
        for (c, &p) in self.coeffs.iter_mut().zip(&f.powers[j]) {
            if p != 0 {
                *c += &(r * &Rational::from_integer(p));
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// `self += a * b`, the inner loop of every elimination.
    pub fn add_mul(&mut self, a: &Cyclotomic, b: &Cyclotomic) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.coeffs.len() == 1 {
            self.coeffs[0] += &(&a.coeffs[0] * &b.coeffs[0]);
        } else {
            let p = a * b;
            for (c, x) in self.coeffs.iter_mut().zip(&p.coeffs) {
                *c += x;
            }
        }
    }

    /// `self += r * a` for rational r.
    pub fn add_scaled(&mut self, a: &Cyclotomic, r: &Rational) {
        debug_assert_eq!(self.order, a.order);
        if r.is_zero() {
            return;
        }
        for (c, x) in self.coeffs.iter_mut().zip(&a.coeffs) {
            if !x.is_zero() {
                *c += &(x * r);
            }
        }
    }

    /// Multiplicative inverse via the exact solve of (multiplication by self)·x = 1.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coeffs.len();
        if n == 1 {
            let r = self.coeffs[0].recip().ok_or(Error::DivisionByZero)?;
            return Ok(Self::from_rational(self.order, r));
        }
        // column j of the multiplication matrix is self * ζ^j
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::ZERO; n + 1]; n];
        for j in 0..n {
            let col = self * &Self::zeta_pow(self.order, j as i64);
            for i in 0..n {
                rows[i][j] = col.coeffs[i].clone();
            }
        }
        rows[0][n] = Rational::ONE;
        let sol = solve_rational_square(rows).ok_or(Error::DivisionByZero)?;
        Self::from_coeffs(self.order, &sol)
    }

    /// Complex embedding with ζ_l ↦ exp(2πi/l).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = std::f64::consts::TAU * j as f64 / self.order as f64;
            let v = c.to_f64();
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

/// Gauss–Jordan on an augmented n×(n+1) rational system.
fn solve_rational_square(mut rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = rows.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        let inv = rows[col][col].recip()?;
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let d = &rows[col][c] * &f;
                    rows[r][c] -= &d;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let n = self.coeffs.len();
        if n == 1 {
            return Cyclotomic {
                order: self.order,
                coeffs: smallvec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let l = self.order as usize;
        let mut acc = vec![Rational::ZERO; l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % l] += &(a * b);
                }
            }
        }
        let f = field(self.order);
        let mut out: Coeffs = smallvec![Rational::ZERO; n];
        for (j, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < n {
                out[j] += c;
            } else {
                for (o, &p) in out.iter_mut().zip(&f.powers[j]) {
                    if p != 0 {
                        *o += &(c * &Rational::from_integer(p));
                    }
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: out,
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

/// Text form: a polynomial in `z` with rational coefficients, e.g. `1/3 + 2/3*z`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match j {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]_{}", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn w() -> Cyclotomic {
        Cyclotomic::zeta_pow(3, 1)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n), "n = {n}");
        }
    }

    #[test]
    fn canonical_forms() {
        let one = Rational::ONE;
        let z = Cyclotomic::canonical(3, &[(0, one.clone()), (1, one.clone()), (2, one.clone())]).unwrap();
        assert!(z.is_zero());
        assert_eq!(Cyclotomic::canonical(3, &[(4, one.clone())]).unwrap(), w());
        assert_eq!(
            Cyclotomic::canonical(2, &[(1, one.clone())]).unwrap(),
            Cyclotomic::from_integer(2, -1)
        );
        assert_eq!(Cyclotomic::canonical(0, &[]), Err(Error::InvalidOrder));
        assert_eq!(Cyclotomic::zeta_pow(5, -1), Cyclotomic::zeta_pow(5, 4));
    }

    #[test]
    fn field_operations() {
        let w2 = Cyclotomic::zeta_pow(3, 2);
        assert!((&w() * &w2).is_one());

        let one = Cyclotomic::one(3);
        let two = Cyclotomic::from_integer(3, 2);
        let d = &one + &(&two * &w());
        let q = one.try_div(&d).unwrap();
        let expected = Cyclotomic::from_coeffs(3, &[r(-1, 3), r(-2, 3)]).unwrap();
        assert_eq!(q, expected);
        assert!((&q * &d).is_one());

        let a = &two + &w();
        let b = &one + &(&two * &w());
        assert_eq!(&a + &b, Cyclotomic::from_coeffs(3, &[r(3, 1), r(3, 1)]).unwrap());
    }

    #[test]
    fn errors() {
        let a = Cyclotomic::one(3);
        let b = Cyclotomic::one(4);
        assert_eq!(a.try_add(&b), Err(Error::OrderMismatch(3, 4)));
        assert_eq!(a.try_div(&Cyclotomic::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_form() {
        let q = Cyclotomic::from_coeffs(3, &[r(1, 3), r(2, 3)]).unwrap();
        assert_eq!(q.to_string(), "1/3 + 2/3*z");
        let q = Cyclotomic::from_coeffs(5, &[r(0, 1), r(-1, 1), r(0, 1), r(3, 2)]).unwrap();
        assert_eq!(q.to_string(), "-z + 3/2*z^3");
        assert_eq!(Cyclotomic::zero(4).to_string(), "0");
    }

    fn elem(order: u32) -> impl Strategy<Value = Cyclotomic> {
        let n = if order <= 2 { 1 } else { totient(order) };
        proptest::collection::vec((-6i64..7, 1i64..4), n).prop_map(move |v| {
            let c: Vec<Rational> = v.into_iter().map(|(a, b)| r(a, b)).collect();
            Cyclotomic::from_coeffs(order, &c).unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop_oneof![
            Just(1u32),
            Just(2),
            Just(3),
            Just(4),
            Just(5),
            Just(6),
            Just(8),
            Just(12)
        ]
        .prop_flat_map(|l| (elem(l), elem(l), elem(l)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                let q = a.try_div(&b).unwrap();
                prop_assert_eq!(&q * &b, a.clone());
            }
            // the float embedding is a ring homomorphism
            let (pr, pi) = (&a * &b).to_complex();
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
        }
    }
}
