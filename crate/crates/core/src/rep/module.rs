use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::arith::modular::{large_primes, CrtVector, ModEchelon, PrimeField};
use crate::arith::{Cyclotomic, EchelonBasis, Rational, Vector};
use crate::error::{Error, Result};
use crate::group::{ClassFunction, GModule, GroupAlgebraElement, Permutation};
use crate::poly::MultiPoly;
use crate::springer::{GradedQuotient, ModSparseMatrix, SubmoduleBasis};
use crate::tableaux::Partition;

/// R_μ(k;l) ⊗ Q(ζ_l), elements stored as coordinates in the standard-monomial
/// basis.
#[derive(Clone, Debug)]
pub struct SpringerModule {
    quotient: Arc<GradedQuotient>,
    basis: SubmoduleBasis,
    k: usize,
    l: usize,
    // prime → adjacent transposition matrices mod p (None: p divides a denominator)
    modular: Arc<Mutex<HashMap<u64, Option<Arc<Vec<ModSparseMatrix>>>>>>,
}

impl SpringerModule {
    /// Builds R_μ and selects the degrees ≡ k (mod l).
    pub fn new(mu: &Partition, k: usize, l: usize) -> Result<Self> {
        Self::from_quotient(Arc::new(GradedQuotient::new(mu)?), k, l)
    }

    pub fn from_quotient(quotient: Arc<GradedQuotient>, k: usize, l: usize) -> Result<Self> {
        let basis = quotient.submodule_basis(k, l)?;
        Ok(SpringerModule {
            quotient,
            basis,
            k: k % l,
            l,
            modular: Arc::default(),
        })
    }

    pub fn quotient(&self) -> &Arc<GradedQuotient> {
        &self.quotient
    }

    pub fn basis(&self) -> &SubmoduleBasis {
        &self.basis
    }

    pub fn mu(&self) -> &Partition {
        self.quotient.mu()
    }

    pub fn m(&self) -> usize {
        self.quotient.m()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// The coefficient field is Q(ζ_l).
    pub fn field_order(&self) -> u32 {
        self.l as u32
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Cyclotomic::zero(self.field_order()); self.dim()]
    }

    pub fn unit_vector(&self, j: usize) -> Vector {
        let mut v = self.zero_vector();
        v[j] = Cyclotomic::one(self.field_order());
        v
    }

    pub fn act(&self, sigma: &Permutation, v: &[Cyclotomic]) -> Vector {
        self.quotient.act(&self.basis, sigma, v)
    }

    pub fn act_adjacent(&self, i: usize, v: &[Cyclotomic]) -> Vector {
        self.quotient.act_adjacent(&self.basis, i, v)
    }

    /// a·v for a group-ring element a.
    pub fn apply(&self, a: &GroupAlgebraElement, v: &Vector) -> Result<Vector> {
        a.apply(self, v)
    }

    /// Coordinates of the image of a polynomial; rational polynomials are
    /// lifted into Q(ζ_l).
    pub fn coordinates(&self, p: &MultiPoly) -> Result<Vector> {
        let p = if p.order() == self.field_order() {
            p.clone()
        } else {
            p.with_order(self.field_order())?
        };
        self.quotient.coordinates(&self.basis, &p)
    }

    pub fn to_poly(&self, v: &[Cyclotomic]) -> MultiPoly {
        self.basis.to_poly(self.field_order(), v)
    }

    pub fn trace(&self, sigma: &Permutation) -> Rational {
        self.quotient.trace(sigma, &self.basis)
    }

    /// The character σ ↦ trace(σ) of the submodule, valued in Q(ζ_l).
    pub fn character(&self) -> Result<ClassFunction> {
        let order = self.field_order();
        ClassFunction::from_fn(self.m(), |g| Ok(Cyclotomic::from_rational(order, self.trace(g))))
    }

    /// dim span{σ·v : σ ∈ S_m}, by closing under adjacent transpositions;
    /// stops early once `stop_at` is reached.
    pub fn orbit_rank(&self, v: &[Cyclotomic], stop_at: usize) -> usize {
        let mut ech = EchelonBasis::new(self.field_order(), self.dim());
        if !ech.insert(v.to_vec()) {
            return 0;
        }
        let mut queue = vec![v.to_vec()];
        while let Some(u) = queue.pop() {
            if ech.rank() >= stop_at {
                break;
            }
            for i in 1..self.m() {
                let w = self.act_adjacent(i, &u);
                if ech.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        ech.rank()
    }

    /// Whether v generates the module: its orbit spans everything.
    ///
    /// First tried modulo large primes on the Q-span of ζ^i·v, i < [Q(ζ):Q]:
    /// a full orbit rank mod p proves generation, and a deficient one is
    /// confirmed by an exact rational functional vanishing on every σζ^i·v.
    /// Otherwise the orbit is closed exactly.
    pub fn generates(&self, v: &[Cyclotomic]) -> bool {
        if self.dim() == 0 {
            return false;
        }
        if let Some(answer) = self.modular_generates(v) {
            return answer;
        }
        self.orbit_rank(v, self.dim()) == self.dim()
    }

    fn adjacent_mod(&self, field: PrimeField) -> Option<Arc<Vec<ModSparseMatrix>>> {
        let mut cache = self.modular.lock().expect("cache lock");
        cache
            .entry(field.p)
            .or_insert_with(|| self.quotient.adjacent_mod(&self.basis, field).map(Arc::new))
            .clone()
    }

    /// ζ^i·v for i < [Q(ζ):Q].
    fn zeta_multiples(&self, v: &[Cyclotomic]) -> Vec<Vector> {
        let order = self.field_order();
        let degree = Cyclotomic::zero(order).coeffs().len();
        (0..degree)
            .map(|i| {
                let z = Cyclotomic::zeta_pow(order, i as i64);
                v.iter().map(|c| c * &z).collect()
            })
            .collect()
    }

    fn modular_generates(&self, v: &[Cyclotomic]) -> Option<bool> {
        const MAX_PRIMES: usize = 40;
        let starts = self.zeta_multiples(v);
        let stride = starts.len();
        let total = self.dim() * stride;
        // (rank, pivots, accumulated annihilator) for the best reduction so far
        let mut best: Option<(usize, Vec<usize>, CrtVector)> = None;
        'primes: for &p in large_primes().iter().take(MAX_PRIMES) {
            let field = PrimeField::new(p);
            let Some(mats) = self.adjacent_mod(field) else {
                continue;
            };
            let mut ech = ModEchelon::new(field);
            let mut queue = Vec::new();
            for start in &starts {
                let mut flat = Vec::with_capacity(total);
                for c in start {
                    for r in c.coeffs() {
                        let Some(x) = field.reduce(r) else {
                            continue 'primes;
                        };
                        flat.push(x);
                    }
                }
                if ech.insert(flat.clone()) {
                    queue.push(flat);
                }
            }
            if ech.rank() == 0 {
                return Some(false);
            }
            while let Some(u) = queue.pop() {
                for mat in mats.iter() {
                    let w = mat.apply_strided(field, &u, stride);
                    if ech.insert(w.clone()) {
                        queue.push(w);
                    }
                }
                if ech.rank() == total {
                    return Some(true);
                }
            }
            let (pivots, phi) = ech.first_annihilator(total).expect("rank below dimension");
            let rank = ech.rank();
            // unlucky primes give a smaller rank or later pivots
            match &mut best {
                Some((r, piv, crt)) if *r == rank && *piv == pivots => crt.absorb(p, &phi),
                Some((r, piv, _)) if rank < *r || (rank == *r && pivots > *piv) => continue,
                _ => best = Some((rank, pivots, CrtVector::new(p, &phi))),
            }
            let (_, _, crt) = best.as_ref().expect("just set");
            if let Some(phi) = crt.reconstruct() {
                if self.annihilates_orbit(&phi, v, stride) {
                    return Some(false);
                }
            }
        }
        None
    }

    /// Whether φ(σζ^i·v) = 0 for every σ ∈ S_m and i < `stride`, exactly, with
    /// φ acting on interleaved power-basis coordinates.
    fn annihilates_orbit(&self, phi: &[Rational], v: &[Cyclotomic], stride: usize) -> bool {
        let vanishes = |w: &[Cyclotomic]| {
            self.zeta_multiples(w).iter().all(|u| {
                let mut acc = Rational::zero();
                for (j, c) in u.iter().enumerate() {
                    for (s, x) in c.coeffs().iter().enumerate() {
                        let f = &phi[j * stride + s];
                        if !f.is_zero() && !x.is_zero() {
                            acc = &acc + &(f * x);
                        }
                    }
                }
                acc.is_zero()
            })
        };
        if !vanishes(v) {
            return false;
        }
        let m = self.m();
        let mut seen = HashSet::from([Permutation::identity(m)]);
        let mut queue = vec![(Permutation::identity(m), v.to_vec())];
        while let Some((sigma, w)) = queue.pop() {
            for i in 1..m {
                let next = &Permutation::transposition(m, i, i + 1) * &sigma;
                if seen.insert(next.clone()) {
                    let u = self.act_adjacent(i, &w);
                    if !vanishes(&u) {
                        return false;
                    }
                    queue.push((next, u));
                }
            }
        }
        true
    }

    pub(crate) fn check_vector(&self, v: &[Cyclotomic]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a module of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        if v.iter().any(|c| c.order() != self.field_order()) {
            return Err(Error::OrderMismatch(self.field_order(), v[0].order()));
        }
        Ok(())
    }
}

impl GModule for SpringerModule {
    type Elem = Vector;

    fn degree(&self) -> usize {
        self.m()
    }

    fn order(&self) -> u32 {
        self.field_order()
    }

    fn zero(&self) -> Vector {
        self.zero_vector()
    }

    fn act(&self, sigma: &Permutation, v: &Vector) -> Vector {
        SpringerModule::act(self, sigma, v)
    }

    fn add_scaled(&self, acc: &mut Vector, c: &Cyclotomic, v: &Vector) {
        crate::arith::axpy(acc, c, v);
    }
}
