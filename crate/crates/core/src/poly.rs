//! Polynomials in x_1, …, x_m over Q(ζ_l) with the S_m action
//! σ·x_i = x_{σ(i)}, and Specht polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{GModule, Permutation};
use crate::tableaux::Tableau;

pub const MAX_VARS: usize = 8;

/// An exponent vector. Ordered by graded reverse lexicographic order with
/// x_1 > x_2 > … > x_m.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[usize]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::GuardExceeded {
                m: exps.len(),
                limit: MAX_VARS,
            });
        }
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| Error::DimensionMismatch(format!("exponent {e} too large")))?;
        }
        Ok(m)
    }

    /// The variable x_i, 1-based.
    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i - 1] = 1;
        m
    }

    pub fn exponent(&self, i: usize) -> usize {
        self.exps[i - 1] as usize
    }

    pub fn exponents(&self, m: usize) -> Vec<usize> {
        self.exps[..m].iter().map(|&e| e as usize).collect()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a += b;
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for (a, b) in out.exps.iter_mut().zip(&self.exps) {
            *a -= b;
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// σ·x^e: the exponent of x_i moves to x_{σ(i)}.
    pub fn permute(&self, sigma: &Permutation) -> Monomial {
        let mut out = Monomial::default();
        for (i, &img) in sigma.images0().iter().enumerate() {
            out.exps[img as usize] = self.exps[i];
        }
        out
    }

    /// All monomials of total degree `d` in `m` variables, in decreasing
    /// grevlex order.
    pub fn all_of_degree(m: usize, d: usize) -> Vec<Monomial> {
        fn go(m: usize, i: usize, rest: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == m - 1 {
                cur.exps[i] = rest as u8;
                out.push(*cur);
                return;
            }
            for e in 0..=rest {
                cur.exps[i] = e as u8;
                go(m, i + 1, rest - e, cur, out);
            }
            cur.exps[i] = 0;
        }
        if m == 0 {
            return if d == 0 { vec![Monomial::one()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        go(m, 0, d, &mut Monomial::default(), &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn fmt_with(&self, m: usize) -> String {
        let parts: Vec<String> = (1..=m)
            .filter(|&i| self.exponent(i) > 0)
            .map(|i| match self.exponent(i) {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    // smaller power of the last differing variable is larger
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        f.write_str(&self.fmt_with(last))
    }
}

/// A polynomial in m variables over Q(ζ_l); zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    m: usize,
    order: u32,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl MultiPoly {
    pub fn zero(m: usize, order: u32) -> Self {
        assert!(m <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly {
            m,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(m, c.order());
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(m: usize, order: u32) -> Self {
        Self::constant(m, Cyclotomic::one(order))
    }

    /// x_i, 1-based.
    pub fn var(m: usize, order: u32, i: usize) -> Self {
        let mut p = Self::zero(m, order);
        p.add_term(Monomial::var(i), Cyclotomic::one(order));
        p
    }

    pub fn monomial(m: usize, mono: Monomial, c: Cyclotomic) -> Self {
        let mut p = Self::zero(m, c.order());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(m: usize, order: u32, terms: impl IntoIterator<Item = (Monomial, Cyclotomic)>) -> Self {
        let mut p = Self::zero(m, order);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, c: Cyclotomic) {
        debug_assert_eq!(c.order(), self.order);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Cyclotomic {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// The same polynomial with rational coefficients moved into Q(ζ_order).
    pub fn with_order(&self, order: u32) -> Result<Self> {
        let mut p = Self::zero(self.m, order);
        for (mono, c) in &self.terms {
            let r = c.as_rational().ok_or(Error::OrderMismatch(self.order, order))?;
            p.add_term(*mono, Cyclotomic::from_rational(order, r.clone()));
        }
        Ok(p)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "variable count mismatch");
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(*mono, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_integer(self.order, -1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.m, self.order);
        if c.is_zero() {
            return out;
        }
        for (mono, x) in &self.terms {
            out.terms.insert(*mono, x * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Cyclotomic::from_rational(self.order, r.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.m, self.order);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// σ·p with σ·x_i = x_{σ(i)}.
    pub fn permute(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.degree(), self.m, "permutation degree mismatch");
        MultiPoly {
            m: self.m,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (mono.permute(sigma), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of degree d.
    pub fn component(&self, d: usize) -> Self {
        MultiPoly {
            m: self.m,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.degree() == d)
                .map(|(mono, c)| (*mono, c.clone()))
                .collect(),
        }
    }
}

/// σ·p, checked version of [`MultiPoly::permute`].
pub fn permute_poly(sigma: &Permutation, p: &MultiPoly) -> Result<MultiPoly> {
    if sigma.degree() != p.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "S_{} acting on polynomials in {} variables",
            sigma.degree(),
            p.nvars()
        )));
    }
    Ok(p.permute(sigma))
}

/// `coeff*x1^a*x2^b + …`, leading term first.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().rev().enumerate() {
            let compound = c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1;
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, Cyclotomic::from_rational(self.order, -r)),
                _ => (false, c.clone()),
            };
            if idx > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let is_const = mono.degree() == 0;
            let coeff = if compound { format!("({mag})") } else { mag.to_string() };
            match (is_const, mag.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&mono.fmt_with(self.m))?,
                (false, false) => write!(f, "{coeff}*{}", mono.fmt_with(self.m))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The polynomial ring Q(ζ_l)[x_1..x_m] as an S_m-module.
#[derive(Clone, Debug)]
pub struct PolyModule {
    pub m: usize,
    pub order: u32,
}

impl GModule for PolyModule {
    type Elem = MultiPoly;

    fn degree(&self) -> usize {
        self.m
    }

    fn order(&self) -> u32 {
        self.order
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.m, self.order)
    }

    fn act(&self, sigma: &Permutation, v: &MultiPoly) -> MultiPoly {
        v.permute(sigma)
    }

    fn add_scaled(&self, acc: &mut MultiPoly, c: &Cyclotomic, v: &MultiPoly) {
        for (mono, x) in &v.terms {
            acc.add_term(*mono, c * x);
        }
    }
}

/// Δ_Q = Π_columns Π_{i<j} (x_{Q(i,c)} − x_{Q(j,c)}), upper entry minus lower.
pub fn specht_poly(q: &Tableau, order: u32) -> Result<MultiPoly> {
    let m = q.size();
    if !q.is_numbering() {
        return Err(Error::InvalidTableau(format!("{q} is not a numbering")));
    }
    if m > MAX_VARS {
        return Err(Error::GuardExceeded { m, limit: MAX_VARS });
    }
    let mut p = MultiPoly::one(m, order);
    for col in q.columns() {
        for i in 0..col.len() {
            for j in i + 1..col.len() {
                let diff = MultiPoly::var(m, order, col[i]).sub(&MultiPoly::var(m, order, col[j]));
                p = p.mul(&diff);
            }
        }
    }
    Ok(p)
}

/// The permutation w with w(t_λ(c)) = Q(c) for every cell c, so that
/// w·Δ_{t_λ} = Δ_Q.
pub fn relabel_permutation(q: &Tableau) -> Result<Permutation> {
    if !q.is_numbering() {
        return Err(Error::InvalidTableau(format!("{q} is not a numbering")));
    }
    Permutation::from_images(&q.reading_word())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{enumerate_standard, row_reading_numbering, Partition};
    use proptest::prelude::*;

    fn x(m: usize, i: usize) -> MultiPoly {
        MultiPoly::var(m, 1, i)
    }

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[usize]| Monomial::from_exponents(e).unwrap();
        // x1 > x2 > x3
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x1 x3 < x2^2 in grevlex (smaller power of x3 wins)
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        let deg2 = Monomial::all_of_degree(3, 2);
        assert_eq!(deg2.len(), 6);
        assert_eq!(deg2[0], m(&[2, 0, 0]));
        assert_eq!(deg2[5], m(&[0, 0, 2]));
    }

    #[test]
    fn permutation_action() {
        let p = x(2, 1).sub(&x(2, 2));
        assert_eq!(p.permute(&perm("(1 2)")), x(2, 2).sub(&x(2, 1)));
        let q = x(3, 1).sub(&x(3, 3));
        assert_eq!(q.permute(&perm("(1 2 3)")), x(3, 2).sub(&x(3, 1)));
        assert_eq!(q.permute(&Permutation::identity(3)), q);
        assert!(permute_poly(&perm("(1 2)"), &q).is_err());
    }

    #[test]
    fn specht_examples() {
        assert_eq!(specht_poly(&t(&[&[1, 2], &[3]]), 1).unwrap(), x(3, 1).sub(&x(3, 3)));
        assert_eq!(specht_poly(&t(&[&[1, 2, 3, 4]]), 1).unwrap(), MultiPoly::one(4, 1));
        let vdm = x(3, 1)
            .sub(&x(3, 2))
            .mul(&x(3, 1).sub(&x(3, 3)))
            .mul(&x(3, 2).sub(&x(3, 3)));
        assert_eq!(specht_poly(&t(&[&[1], &[2], &[3]]), 1).unwrap(), vdm);
        assert_eq!(
            vdm.to_string(),
            "x1^2*x2 - x1*x2^2 - x1^2*x3 + x2^2*x3 + x1*x3^2 - x2*x3^2"
        );
    }

    #[test]
    fn relabeling() {
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert!(relabel_permutation(&row_reading_numbering(&lam)).unwrap().is_identity());
        assert_eq!(relabel_permutation(&t(&[&[1, 3], &[2]])).unwrap(), perm("3:(2 3)"));
        assert_eq!(relabel_permutation(&t(&[&[1, 3], &[2, 4]])).unwrap(), perm("4:(2 3)"));
        for m in 1..=6 {
            for lam in Partition::all(m) {
                let base = specht_poly(&row_reading_numbering(&lam), 1).unwrap();
                for q in enumerate_standard(&lam) {
                    let w = relabel_permutation(&q).unwrap();
                    let dq = specht_poly(&q, 1).unwrap();
                    assert_eq!(base.permute(&w), dq, "{q}");
                    assert!(dq.is_homogeneous());
                    assert_eq!(dq.total_degree(), Some(lam.n_statistic()));
                }
            }
        }
    }

    #[test]
    fn column_transpositions_negate() {
        for m in 2..=5 {
            for lam in Partition::all(m) {
                for q in enumerate_standard(&lam) {
                    let d = specht_poly(&q, 1).unwrap();
                    for col in q.columns() {
                        for i in 0..col.len() {
                            for j in i + 1..col.len() {
                                let s = Permutation::transposition(m, col[i], col[j]);
                                assert_eq!(d.permute(&s), d.scale_rational(&Rational::from(-1)));
                            }
                        }
                    }
                }
            }
        }
    }

    fn small_poly(m: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0usize..3, m), -3i64..4), 0..5).prop_map(move |ts| {
            MultiPoly::from_terms(
                m,
                1,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), Cyclotomic::from_integer(1, c))),
            )
        })
    }

    fn perm_strategy(m: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=m).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn action_is_a_left_action(
            (s, t, p) in (2usize..7).prop_flat_map(|m| (perm_strategy(m), perm_strategy(m), small_poly(m)))
        ) {
            prop_assert_eq!(p.permute(&t).permute(&s), p.permute(&(&s * &t)));
            for d in 0..7 {
                prop_assert!(p.component(d).permute(&s).is_homogeneous());
            }
        }
    }
}
