//! The Springer module R_μ = Q[x_1..x_m]/I_μ with its grading and S_m action.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::groebner::{groebner_q, QPoly, Reducer};
use crate::arith::modular::PrimeField;
use crate::arith::{totient, Cyclotomic, ExactMatrix, Rational, Vector};
use crate::error::{Error, Result};
use crate::group::{GModule, Permutation};
use crate::poly::{Monomial, MultiPoly, MAX_VARS};
use crate::tableaux::Partition;

/// Default bound on m for quotient computations.
pub const DEFAULT_QUOTIENT_LIMIT: usize = 6;

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            if m - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

fn elementary(m: usize, vars: &[usize], r: usize) -> QPoly {
    let mut map = BTreeMap::new();
    for s in subsets(vars.len(), r) {
        let mut e = vec![0usize; m];
        for &i in &s {
            e[vars[i - 1] - 1] = 1;
        }
        map.insert(Monomial::from_exponents(&e).expect("m within limit"), Rational::one());
    }
    QPoly::from_map(map)
}

/// d_k(μ): the sum of the last k entries of the conjugate of μ padded to length m.
pub fn tanisaki_threshold(mu: &Partition, k: usize) -> usize {
    let m = mu.size();
    let mut conj = mu.conjugate().parts().to_vec();
    conj.resize(m, 0);
    conj[m - k..].iter().sum()
}

fn tanisaki_q(mu: &Partition) -> Vec<QPoly> {
    let m = mu.size();
    let mut out = Vec::new();
    for k in 1..=m {
        let dk = tanisaki_threshold(mu, k);
        let lo = k.saturating_sub(dk) + 1;
        for s in subsets(m, k) {
            for r in lo..=k {
                out.push(elementary(m, &s, r));
            }
        }
    }
    out
}

/// The generators e_r(x_S), |S| = k, k − d_k(μ) < r ≤ k, of the Tanisaki ideal.
pub fn tanisaki_generators(mu: &Partition) -> Result<Vec<MultiPoly>> {
    check_vars(mu.size())?;
    Ok(tanisaki_q(mu).iter().map(|g| g.to_multipoly(mu.size())).collect())
}

fn check_vars(m: usize) -> Result<()> {
    if m > MAX_VARS {
        return Err(Error::GuardExceeded { m, limit: MAX_VARS });
    }
    Ok(())
}

/// Column-sparse rational matrix: `cols[j]` lists the nonzero entries of column j.
#[derive(Clone, Debug)]
struct SparseMatrix {
    cols: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    fn apply(&self, order: u32, v: &[Cyclotomic]) -> Vector {
        let mut out = vec![Cyclotomic::zero(order); v.len()];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, r) in col {
                out[*i].add_scaled(&v[j], r);
            }
        }
        out
    }
}

/// A sparse matrix over Z/pZ, stored by columns.
#[derive(Clone, Debug)]
pub(crate) struct ModSparseMatrix {
    cols: Vec<Vec<(usize, u64)>>,
}

impl ModSparseMatrix {
    /// Applies the matrix to each of the `stride` interleaved slices of `v`,
    /// whose entry (j, s) sits at j·stride + s.
    pub(crate) fn apply_strided(&self, field: PrimeField, v: &[u64], stride: usize) -> Vec<u64> {
        let mut out = vec![0u64; v.len()];
        for (j, col) in self.cols.iter().enumerate() {
            for s in 0..stride {
                let x = v[j * stride + s];
                if x == 0 {
                    continue;
                }
                for &(i, r) in col {
                    let y = &mut out[i * stride + s];
                    *y = field.add(*y, field.mul(x, r));
                }
            }
        }
        out
    }
}

/// Which graded pieces a [`SubmoduleBasis`] gathers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Degrees d with d ≡ k (mod l).
    Residue { k: usize, l: usize },
    /// A single degree.
    Degree(usize),
}

/// The standard monomials of the selected degrees, concatenated in increasing
/// degree and, within a degree, decreasing grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub mu: Partition,
    pub selection: Selection,
    pub degrees: Vec<usize>,
    offsets: Vec<usize>,
    pub basis: Vec<Monomial>,
}

impl SubmoduleBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.mu.size()
    }

    /// Coordinate range of degree `d` inside this basis.
    pub fn block(&self, d: usize) -> Option<std::ops::Range<usize>> {
        let pos = self.degrees.iter().position(|&e| e == d)?;
        Some(self.offsets[pos]..self.offsets[pos + 1])
    }

    /// Interprets a coordinate vector as a polynomial in standard monomials.
    pub fn to_poly(&self, order: u32, v: &[Cyclotomic]) -> MultiPoly {
        MultiPoly::from_terms(
            self.m(),
            order,
            self.basis.iter().zip(v).map(|(mono, c)| (*mono, c.clone())),
        )
    }
}

/// R_μ with a reduced Gröbner basis of the Tanisaki ideal, its standard
/// monomials per degree, and the matrices of the adjacent transpositions.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    mu: Partition,
    gb: Vec<QPoly>,
    standard: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, (usize, usize)>,
    // adjacent[d][i - 1] is the matrix of s_i = (i i+1) on degree d
    adjacent: Vec<Vec<SparseMatrix>>,
}

impl GradedQuotient {
    pub fn new(mu: &Partition) -> Result<Self> {
        Self::with_limit(mu, DEFAULT_QUOTIENT_LIMIT)
    }

    /// Builds R_μ when |μ| ≤ limit (the limit itself is capped at 8 variables).
    pub fn with_limit(mu: &Partition, limit: usize) -> Result<Self> {
        let m = mu.size();
        let limit = limit.min(MAX_VARS);
        if m > limit {
            return Err(Error::GuardExceeded { m, limit });
        }
        if m == 0 {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        let gb = groebner_q(&tanisaki_q(mu));
        let leads: Vec<Monomial> = gb.iter().map(QPoly::lead).collect();
        let mut standard = Vec::new();
        for d in 0.. {
            let layer: Vec<Monomial> = Monomial::all_of_degree(m, d)
                .into_iter()
                .filter(|mono| !leads.iter().any(|lt| lt.divides(mono)))
                .collect();
            if layer.is_empty() {
                break;
            }
            standard.push(layer);
        }
        let index = standard
            .iter()
            .enumerate()
            .flat_map(|(d, layer)| layer.iter().enumerate().map(move |(i, mono)| (*mono, (d, i))))
            .collect();
        let mut q = GradedQuotient {
            mu: mu.clone(),
            gb,
            standard,
            index,
            adjacent: Vec::new(),
        };
        q.adjacent = (0..q.standard.len())
            .map(|d| {
                (1..m)
                    .map(|i| {
                        let s = Permutation::transposition(m, i, i + 1);
                        let cols = q.standard[d]
                            .iter()
                            .map(|mono| {
                                let image = q.reduce_monomial(&mono.permute(&s));
                                image.terms.into_iter().map(|(mm, c)| (q.index[&mm].1, c)).collect()
                            })
                            .collect();
                        SparseMatrix { cols }
                    })
                    .collect()
            })
            .collect();
        Ok(q)
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn m(&self) -> usize {
        self.mu.size()
    }

    /// The reduced Gröbner basis, increasing leading monomials.
    pub fn groebner_basis(&self) -> Vec<MultiPoly> {
        self.gb.iter().map(|g| g.to_multipoly(self.m())).collect()
    }

    pub fn standard_monomials(&self, d: usize) -> &[Monomial] {
        self.standard.get(d).map_or(&[], Vec::as_slice)
    }

    /// dim R_μ^d for d = 0, 1, …, top degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.standard.iter().map(Vec::len).collect()
    }

    pub fn hilbert(&self) -> BTreeMap<usize, usize> {
        self.graded_dims().into_iter().enumerate().collect()
    }

    pub fn top_degree(&self) -> usize {
        self.standard.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.graded_dims().iter().sum()
    }

    fn reduce_monomial(&self, mono: &Monomial) -> QPoly {
        let mut work = BTreeMap::new();
        work.insert(*mono, Rational::one());
        Reducer::new(&self.gb).reduce_map(work)
    }

    /// The unique representative of p supported on standard monomials.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables, quotient in {}",
                p.nvars(),
                self.m()
            )));
        }
        let order = p.order();
        let width = totient(order);
        let reducer = Reducer::new(&self.gb);
        let mut acc: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for j in 0..width {
            let work: BTreeMap<Monomial, Rational> = p
                .terms()
                .filter_map(|(mono, c)| c.coeffs().get(j).filter(|r| !r.is_zero()).map(|r| (*mono, r.clone())))
                .collect();
            if work.is_empty() {
                continue;
            }
            for (mono, r) in reducer.reduce_map(work).terms {
                acc.entry(mono).or_insert_with(|| vec![Rational::zero(); width])[j] = r;
            }
        }
        let mut out = MultiPoly::zero(self.m(), order);
        for (mono, coeffs) in acc {
            out.add_term(mono, Cyclotomic::from_coeffs(order, &coeffs)?);
        }
        Ok(out)
    }

    fn make_basis(&self, selection: Selection, degrees: Vec<usize>) -> SubmoduleBasis {
        let mut offsets = vec![0];
        let mut basis = Vec::new();
        for &d in &degrees {
            basis.extend_from_slice(&self.standard[d]);
            offsets.push(basis.len());
        }
        SubmoduleBasis {
            mu: self.mu.clone(),
            selection,
            degrees,
            offsets,
            basis,
        }
    }

    /// R_μ(k;l): the degrees d ≡ k (mod l).
    pub fn submodule_basis(&self, k: usize, l: usize) -> Result<SubmoduleBasis> {
        if l == 0 {
            return Err(Error::InvalidOrder);
        }
        let k = k % l;
        let degrees = (0..self.standard.len()).filter(|d| d % l == k).collect();
        Ok(self.make_basis(Selection::Residue { k, l }, degrees))
    }

    /// A single graded piece R_μ^d (empty above the top degree).
    pub fn degree_basis(&self, d: usize) -> SubmoduleBasis {
        let degrees = if d < self.standard.len() { vec![d] } else { Vec::new() };
        self.make_basis(Selection::Degree(d), degrees)
    }

    /// dim R_μ(k;l) for k = 0..l.
    pub fn submodule_dims(&self, l: usize) -> Result<Vec<usize>> {
        (0..l).map(|k| Ok(self.submodule_basis(k, l)?.dim())).collect()
    }

    /// Coordinates of the image of p in `b`; fails when the normal form has
    /// support outside the selected degrees.
    pub fn coordinates(&self, b: &SubmoduleBasis, p: &MultiPoly) -> Result<Vector> {
        let nf = self.normal_form(p)?;
        let mut v = vec![Cyclotomic::zero(p.order()); b.dim()];
        for (mono, c) in nf.terms() {
            let (d, i) = self.index[mono];
            let range = b
                .block(d)
                .ok_or_else(|| Error::DimensionMismatch(format!("component in degree {d} outside the submodule")))?;
            v[range.start + i] = c.clone();
        }
        Ok(v)
    }

    /// s_i · v for the adjacent transposition (i i+1), 1 ≤ i < m.
    pub fn act_adjacent(&self, b: &SubmoduleBasis, i: usize, v: &[Cyclotomic]) -> Vector {
        let order = v.first().map_or(1, Cyclotomic::order);
        let mut out = Vec::with_capacity(v.len());
        for (pos, &d) in b.degrees.iter().enumerate() {
            let block = &v[b.offsets[pos]..b.offsets[pos + 1]];
            out.extend(self.adjacent[d][i - 1].apply(order, block));
        }
        out
    }

    /// The matrices of s_1..s_{m−1} on `b` reduced modulo p, or `None` when p
    /// divides a denominator.
    pub(crate) fn adjacent_mod(&self, b: &SubmoduleBasis, field: PrimeField) -> Option<Vec<ModSparseMatrix>> {
        (1..self.m())
            .map(|i| {
                let mut cols = Vec::with_capacity(b.dim());
                for (pos, &d) in b.degrees.iter().enumerate() {
                    let offset = b.offsets[pos];
                    for col in &self.adjacent[d][i - 1].cols {
                        let reduced = col
                            .iter()
                            .map(|(r, c)| Some((offset + r, field.reduce(c)?)))
                            .collect::<Option<Vec<_>>>()?;
                        cols.push(reduced);
                    }
                }
                Some(ModSparseMatrix { cols })
            })
            .collect()
    }

    /// σ · v, through a reduced word of σ.
    pub fn act(&self, b: &SubmoduleBasis, sigma: &Permutation, v: &[Cyclotomic]) -> Vector {
        let mut out = v.to_vec();
        for &i in sigma.reduced_word().iter().rev() {
            out = self.act_adjacent(b, i, &out);
        }
        out
    }

    /// The matrix of v ↦ σ·v in the basis `b`.
    pub fn action_matrix(&self, sigma: &Permutation, b: &SubmoduleBasis, order: u32) -> Result<ExactMatrix> {
        if sigma.degree() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "S_{} acting on R_μ with m = {}",
                sigma.degree(),
                self.m()
            )));
        }
        let n = b.dim();
        let cols = (0..n)
            .map(|j| {
                let mut e = vec![Cyclotomic::zero(order); n];
                e[j] = Cyclotomic::one(order);
                self.act(b, sigma, &e)
            })
            .collect();
        ExactMatrix::from_columns(order, n, cols)
    }

    /// trace(σ on b), rational because the action is defined over Q.
    pub fn trace(&self, sigma: &Permutation, b: &SubmoduleBasis) -> Rational {
        let word: Vec<usize> = sigma.reduced_word();
        let n = b.dim();
        let mut total = Rational::zero();
        for j in 0..n {
            let mut e = vec![Cyclotomic::zero(1); n];
            e[j] = Cyclotomic::one(1);
            for &i in word.iter().rev() {
                e = self.act_adjacent(b, i, &e);
            }
            total += e[j].as_rational().expect("rational action");
        }
        total
    }

    pub fn module<'a>(&'a self, basis: &'a SubmoduleBasis, order: u32) -> QuotientModule<'a> {
        QuotientModule {
            quotient: self,
            basis,
            order,
        }
    }
}

/// A submodule of R_μ ⊗ Q(ζ_l) as a [`GModule`] on coordinate vectors.
#[derive(Clone, Copy, Debug)]
pub struct QuotientModule<'a> {
    pub quotient: &'a GradedQuotient,
    pub basis: &'a SubmoduleBasis,
    pub order: u32,
}

impl GModule for QuotientModule<'_> {
    type Elem = Vector;

    fn degree(&self) -> usize {
        self.quotient.m()
    }

    fn order(&self) -> u32 {
        self.order
    }

    fn zero(&self) -> Vector {
        vec![Cyclotomic::zero(self.order); self.basis.dim()]
    }

    fn act(&self, sigma: &Permutation, v: &Vector) -> Vector {
        self.quotient.act(self.basis, sigma, v)
    }

    fn add_scaled(&self, acc: &mut Vector, c: &Cyclotomic, v: &Vector) {
        crate::arith::axpy(acc, c, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::specht_poly;
    use crate::tableaux::{is_l_partition, Tableau};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn generator_shapes() {
        let m3 = p(&[1, 1, 1]);
        let gens = tanisaki_generators(&m3).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0].to_string(), "x1 + x2 + x3");
        let mu = p(&[2, 2]);
        assert_eq!(
            (1..=4).map(|k| tanisaki_threshold(&mu, k)).collect::<Vec<_>>(),
            vec![0, 0, 2, 4]
        );
        // e_2, e_3 on four triples plus e_1..e_4 of all four variables
        assert_eq!(tanisaki_generators(&mu).unwrap().len(), 8 + 4);
        let row = p(&[4]);
        assert!((1..=4).all(|k| tanisaki_threshold(&row, k) == k));
    }

    #[test]
    fn coinvariant_s2_and_s3() {
        let q = GradedQuotient::new(&p(&[1, 1])).unwrap();
        assert_eq!(q.groebner_basis().len(), 2);
        assert_eq!(q.standard_monomials(1), &[Monomial::var(2)]);
        let x1 = MultiPoly::var(2, 1, 1);
        assert_eq!(
            q.normal_form(&x1).unwrap(),
            MultiPoly::var(2, 1, 2).scale_rational(&Rational::from(-1))
        );

        let q = GradedQuotient::new(&p(&[1, 1, 1])).unwrap();
        assert_eq!(q.graded_dims(), vec![1, 2, 2, 1]);
        assert_eq!(q.submodule_dims(3).unwrap(), vec![2, 2, 2]);
        for g in tanisaki_generators(&p(&[1, 1, 1])).unwrap() {
            assert!(q.normal_form(&g).unwrap().is_zero());
        }
        let vdm = specht_poly(&Tableau::new(vec![vec![1], vec![2], vec![3]]).unwrap(), 1).unwrap();
        assert!(!q.normal_form(&vdm).unwrap().is_zero());
        let top = q.degree_basis(3);
        let s = Permutation::transposition(3, 1, 2);
        let mat = q.action_matrix(&s, &top, 1).unwrap();
        assert_eq!(
            mat,
            ExactMatrix::from_rows(1, 1, vec![vec![Cyclotomic::from_integer(1, -1)]]).unwrap()
        );
    }

    #[test]
    fn single_row_is_trivial() {
        for m in 1..=5 {
            let q = GradedQuotient::new(&p(&[m])).unwrap();
            assert_eq!(q.graded_dims(), vec![1]);
        }
    }

    #[test]
    fn total_dimension_and_coincidence() {
        for m in 1..=5 {
            for mu in Partition::all(m) {
                let q = GradedQuotient::new(&mu).unwrap();
                let expected = factorial(m) / mu.parts().iter().map(|&x| factorial(x)).product::<usize>();
                assert_eq!(q.dim(), expected, "{mu}");
                assert_eq!(q.top_degree(), mu.n_statistic(), "{mu}");
                for l in 1..=m {
                    if is_l_partition(&mu, l) {
                        let dims = q.submodule_dims(l).unwrap();
                        assert!(dims.iter().all(|&d| d == dims[0]), "{mu} l={l}: {dims:?}");
                    }
                }
            }
        }
        let q = GradedQuotient::new(&p(&[2, 2])).unwrap();
        assert_eq!(q.dim(), 6);
        assert_eq!(q.submodule_dims(2).unwrap(), vec![3, 3]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            GradedQuotient::new(&p(&[4, 3])),
            Err(Error::GuardExceeded { m: 7, limit: 6 })
        ));
    }

    /// Number of cosets of S_μ fixed by σ: fillings of t_μ's rows by labels
    /// (words of content μ) invariant under σ.
    fn fixed_words(mu: &Partition, sigma: &Permutation) -> usize {
        let m = mu.size();
        let mut content: Vec<usize> = Vec::new();
        for (r, &len) in mu.parts().iter().enumerate() {
            content.extend(std::iter::repeat(r).take(len));
        }
        let mut words = vec![content];
        words[0].sort();
        let mut cur = words[0].clone();
        // all distinct permutations of the content
        let mut all = vec![cur.clone()];
        loop {
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            all.push(cur.clone());
        }
        all.iter()
            .filter(|w| (1..=m).all(|i| w[sigma.apply(i) - 1] == w[i - 1]))
            .count()
    }

    #[test]
    fn trace_is_permutation_character() {
        for m in 1..=5 {
            for mu in Partition::all(m) {
                let q = GradedQuotient::new(&mu).unwrap();
                let all = q.submodule_basis(0, 1).unwrap();
                for ct in Partition::all(m) {
                    let sigma = Permutation::class_representative(&ct);
                    let t = q.trace(&sigma, &all);
                    assert_eq!(t, Rational::from(fixed_words(&mu, &sigma) as i64), "{mu} at {ct}");
                }
            }
        }
    }

    #[test]
    fn action_is_multiplicative() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for mu in [p(&[2, 1, 1, 1]), p(&[2, 2, 1]), p(&[3, 2])] {
            let q = GradedQuotient::new(&mu).unwrap();
            let b = q.submodule_basis(1, 2).unwrap();
            let all = Permutation::all(5);
            for _ in 0..10 {
                let s = all.choose(&mut rng).unwrap();
                let t = all.choose(&mut rng).unwrap();
                let ms = q.action_matrix(s, &b, 1).unwrap();
                let mt = q.action_matrix(t, &b, 1).unwrap();
                assert_eq!(q.action_matrix(&(s * t), &b, 1).unwrap(), ms.mul(&mt).unwrap());
            }
            assert_eq!(
                q.action_matrix(&Permutation::identity(5), &b, 1).unwrap(),
                ExactMatrix::identity(b.dim(), 1)
            );
        }
    }

    #[test]
    fn normal_form_over_cyclotomics() {
        let q = GradedQuotient::new(&p(&[1, 1, 1])).unwrap();
        let w = Cyclotomic::zeta_pow(3, 1);
        let x = |i| MultiPoly::var(3, 3, i);
        // ω(x1 + x2 + x3) + x1 x2 reduces like its rational parts
        let f = x(1).add(&x(2)).add(&x(3)).scale(&w).add(&x(1).mul(&x(2)));
        let g = x(1).mul(&x(2));
        assert_eq!(q.normal_form(&f).unwrap(), q.normal_form(&g).unwrap());
        let h = x(1).scale(&w);
        let nf = q.normal_form(&h).unwrap();
        assert_eq!(nf, q.normal_form(&x(1)).unwrap().scale(&w));
    }
}
