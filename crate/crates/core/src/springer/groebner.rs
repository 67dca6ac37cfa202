//! Buchberger's algorithm over Q in grevlex order, for homogeneous ideals.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

/// A polynomial over Q with terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    pub(crate) terms: Vec<(Monomial, Rational)>,
}

impl QPoly {
    pub(crate) fn from_map(map: BTreeMap<Monomial, Rational>) -> Self {
        QPoly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub(crate) fn from_multipoly(p: &MultiPoly) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mono, c) in p.terms() {
            let r = c.as_rational().ok_or_else(|| {
                Error::DimensionMismatch(format!("non-rational coefficient {c} in an ideal generator"))
            })?;
            map.insert(*mono, r.clone());
        }
        Ok(QPoly::from_map(map))
    }

    pub(crate) fn to_multipoly(&self, m: usize) -> MultiPoly {
        MultiPoly::from_terms(
            m,
            1,
            self.terms
                .iter()
                .map(|(mono, c)| (*mono, Cyclotomic::from_rational(1, c.clone()))),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead(&self) -> Monomial {
        self.terms[0].0
    }

    fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.recip()) {
            for (_, c) in &mut self.terms {
                *c = &*c * &inv;
            }
        }
        self
    }
}

/// Leading monomials of a basis, with a divisor lookup.
pub(crate) struct Reducer<'a> {
    basis: &'a [QPoly],
    skip: Option<usize>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(basis: &'a [QPoly]) -> Self {
        Reducer { basis, skip: None }
    }

    fn divisor(&self, mono: &Monomial) -> Option<&'a QPoly> {
        self.basis
            .iter()
            .enumerate()
            .find(|(i, g)| Some(*i) != self.skip && !g.is_zero() && g.lead().divides(mono))
            .map(|(_, g)| g)
    }

    /// Full reduction; every basis element must be monic.
    pub(crate) fn reduce_map(&self, mut work: BTreeMap<Monomial, Rational>) -> QPoly {
        let mut rem = Vec::new();
        while let Some((mono, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.divisor(&mono) {
                None => rem.push((mono, c)),
                Some(g) => {
                    let shift = g.lead().quotient(&mono);
                    for (gm, gc) in &g.terms[1..] {
                        let key = gm.mul(&shift);
                        let delta = &c * gc;
                        let e = work.entry(key).or_insert_with(Rational::zero);
                        *e -= &delta;
                        if e.is_zero() {
                            work.remove(&key);
                        }
                    }
                }
            }
        }
        QPoly { terms: rem }
    }

    pub(crate) fn reduce(&self, p: &QPoly) -> QPoly {
        self.reduce_map(p.terms.iter().cloned().collect())
    }
}

fn spoly(f: &QPoly, g: &QPoly) -> BTreeMap<Monomial, Rational> {
    let lcm = f.lead().lcm(&g.lead());
    let sf = f.lead().quotient(&lcm);
    let sg = g.lead().quotient(&lcm);
    let mut work: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in &f.terms[1..] {
        *work.entry(m.mul(&sf)).or_insert_with(Rational::zero) += c;
    }
    for (m, c) in &g.terms[1..] {
        *work.entry(m.mul(&sg)).or_insert_with(Rational::zero) -= c;
    }
    work.retain(|_, c| !c.is_zero());
    work
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    Pair(usize, usize),
    Input(usize),
}

/// A reduced Gröbner basis of the ideal generated by `gens` (rational
/// coefficients, homogeneous generators) in grevlex order with
/// x_1 > … > x_m, sorted by increasing leading monomial; every element is
/// monic.
pub(crate) fn groebner_q(gens: &[QPoly]) -> Vec<QPoly> {
    let mut basis: Vec<QPoly> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    // (degree, sequence, task), smallest degree first
    let mut queue: BinaryHeap<Reverse<(usize, usize, Task)>> = BinaryHeap::new();
    let mut seq = 0usize;
    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() {
            queue.push(Reverse((g.degree(), seq, Task::Input(i))));
            seq += 1;
        }
    }

    while let Some(Reverse((_, _, task))) = queue.pop() {
        let work = match task {
            Task::Input(i) => gens[i].terms.iter().cloned().collect(),
            Task::Pair(i, j) => {
                pending.remove(&(i, j));
                let lcm = basis[i].lead().lcm(&basis[j].lead());
                let chain = (0..basis.len()).any(|k| {
                    k != i
                        && k != j
                        && basis[k].lead().divides(&lcm)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    continue;
                }
                spoly(&basis[i], &basis[j])
            }
        };
        let h = Reducer::new(&basis).reduce_map(work);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let n = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lead().is_coprime(&h.lead()) {
                continue;
            }
            let lcm = g.lead().lcm(&h.lead());
            pending.insert((i, n));
            queue.push(Reverse((lcm.degree(), seq, Task::Pair(i, n))));
            seq += 1;
        }
        basis.push(h);
    }

    // minimalize: drop elements whose leading monomial is a multiple of another's
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| {
                j != i && basis[j].lead().divides(&basis[i].lead()) && (basis[j].lead() != basis[i].lead() || j < i)
            })
        })
        .collect();
    let minimal: Vec<QPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // interreduce tails
    let mut reduced: Vec<QPoly> = (0..minimal.len())
        .map(|i| {
            let reducer = Reducer {
                basis: &minimal,
                skip: Some(i),
            };
            let tail = QPoly {
                terms: minimal[i].terms[1..].to_vec(),
            };
            let mut out = vec![minimal[i].terms[0].clone()];
            out.extend(reducer.reduce(&tail).terms);
            QPoly { terms: out }
        })
        .collect();
    reduced.sort_by_key(QPoly::lead);
    reduced
}

/// Reduced grevlex Gröbner basis of the ideal generated by polynomials with
/// rational coefficients.
pub fn groebner(gens: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let m = first.nvars();
    if gens.iter().any(|g| g.nvars() != m) {
        return Err(Error::DimensionMismatch("generators in different rings".into()));
    }
    let qs = gens.iter().map(QPoly::from_multipoly).collect::<Result<Vec<_>>>()?;
    Ok(groebner_q(&qs).iter().map(|g| g.to_multipoly(m)).collect())
}
