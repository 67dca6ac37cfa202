use std::collections::BTreeMap;
use std::fmt;

use super::Permutation;
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A vector space with a left S_m action, so that group-ring elements can act.
pub trait GModule {
    type Elem: Clone;

    fn degree(&self) -> usize;

    fn order(&self) -> u32;

    fn zero(&self) -> Self::Elem;

    fn act(&self, sigma: &Permutation, v: &Self::Elem) -> Self::Elem;

    /// `acc += c * v`
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Cyclotomic, v: &Self::Elem);
}

/// A finite formal sum Σ c_σ σ in K[S_m], K = Q(ζ_l). Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    m: usize,
    order: u32,
    terms: BTreeMap<Permutation, Cyclotomic>,
}

impl GroupAlgebraElement {
    pub fn zero(m: usize, order: u32) -> Self {
        GroupAlgebraElement {
            m,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize, order: u32) -> Self {
        Self::from_perm(&Permutation::identity(m), Cyclotomic::one(order))
    }

    pub fn from_perm(sigma: &Permutation, c: Cyclotomic) -> Self {
        let mut a = Self::zero(sigma.degree(), c.order());
        a.add_term(sigma.clone(), c);
        a
    }

    pub fn from_terms(
        m: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Permutation, Cyclotomic)>,
    ) -> Result<Self> {
        let mut a = Self::zero(m, order);
        for (p, c) in terms {
            if p.degree() != m {
                return Err(Error::DimensionMismatch(format!(
                    "permutation of degree {} in K[S_{m}]",
                    p.degree()
                )));
            }
            if c.order() != order {
                return Err(Error::OrderMismatch(order, c.order()));
            }
            a.add_term(p, c);
        }
        Ok(a)
    }

    fn add_term(&mut self, p: Permutation, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Cyclotomic {
        self.terms
            .get(sigma)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "K[S_{}] and K[S_{}]",
                self.m, other.m
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.m, self.order);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    /// Convolution: (Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ στ.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.m, self.order);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s * t, a * b);
            }
        }
        Ok(out)
    }

    /// The action on a module element: Σ c_σ (σ · v).
    pub fn apply<M: GModule>(&self, module: &M, v: &M::Elem) -> Result<M::Elem> {
        if module.degree() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "K[S_{}] acting on an S_{} module",
                self.m,
                module.degree()
            )));
        }
        if module.order() != self.order {
            return Err(Error::OrderMismatch(self.order, module.order()));
        }
        let mut acc = module.zero();
        for (p, c) in &self.terms {
            let pv = module.act(p, v);
            module.add_scaled(&mut acc, c, &pv);
        }
        Ok(acc)
    }

    /// Coordinates over a list of permutations (missing ones are zero).
    pub fn coordinates(&self, basis: &[Permutation]) -> Vec<Cyclotomic> {
        basis.iter().map(|p| self.coefficient(p)).collect()
    }

    /// Rewrites the coefficients into Q(ζ_l′) when every coefficient is
    /// rational.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        let mut out = Self::zero(self.m, order);
        for (p, c) in &self.terms {
            let r = c.as_rational().ok_or(Error::OrderMismatch(self.order, order))?;
            out.add_term(p.clone(), Cyclotomic::from_rational(order, r.clone()));
        }
        Ok(out)
    }
}

/// K[S_m] acting on itself by left multiplication.
#[derive(Clone, Debug)]
pub struct RegularModule {
    pub m: usize,
    pub order: u32,
}

impl GModule for RegularModule {
    type Elem = GroupAlgebraElement;

    fn degree(&self) -> usize {
        self.m
    }

    fn order(&self) -> u32 {
        self.order
    }

    fn zero(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::zero(self.m, self.order)
    }

    fn act(&self, sigma: &Permutation, v: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.m, self.order);
        for (p, c) in &v.terms {
            out.terms.insert(sigma * p, c.clone());
        }
        out
    }

    fn add_scaled(&self, acc: &mut GroupAlgebraElement, c: &Cyclotomic, v: &GroupAlgebraElement) {
        for (p, x) in &v.terms {
            acc.add_term(p.clone(), c * x);
        }
    }
}

/// `coeff * cycles` terms joined by ` + `, e.g. `1/3 * () + 1/3*z * (1 2 3)`.
impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                    format!("({c}) * {p}")
                } else {
                    format!("{c} * {p}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// 1/n as an element of Q(ζ_l).
pub(crate) fn inverse_count(order: u32, n: usize) -> Cyclotomic {
    Cyclotomic::from_rational(order, Rational::new(1, n as i64))
}
