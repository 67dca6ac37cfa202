//! The subgroups S_μ, ⟨a_{μ,l}⟩ and H_μ(l) = S_μ ⋊ ⟨a_{μ,l}⟩ of S_m, the
//! one-dimensional character Z_μ(k;l), and the symmetrizers built from them.

use std::collections::{BTreeMap, HashSet};

use super::algebra::inverse_count;
use super::{GroupAlgebraElement, Permutation};
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::tableaux::{is_l_partition, row_reading_numbering, Partition, Tableau};

/// Subgroups are stored by explicit enumeration up to this degree.
pub const SUBGROUP_DEGREE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Young(Partition),
    Cyclic { mu: Partition, l: usize },
    Semidirect { mu: Partition, l: usize },
}

/// An explicitly enumerated subgroup of S_m, elements sorted.
#[derive(Clone, Debug)]
pub struct SubgroupEnum {
    kind: SubgroupKind,
    m: usize,
    elements: Vec<Permutation>,
    lookup: HashSet<Permutation>,
}

impl SubgroupEnum {
    fn from_elements(kind: SubgroupKind, m: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let lookup = elements.iter().cloned().collect();
        SubgroupEnum {
            kind,
            m,
            elements,
            lookup,
        }
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.lookup.contains(g)
    }

    /// Closed under products and inverses, contains ε.
    pub fn is_closed(&self) -> bool {
        self.contains(&Permutation::identity(self.m))
            && self
                .elements
                .iter()
                .all(|g| self.contains(&g.inverse()) && self.elements.iter().all(|h| self.contains(&(g * h))))
    }
}

fn guard(m: usize) -> Result<()> {
    if m > SUBGROUP_DEGREE_LIMIT {
        Err(Error::GuardExceeded {
            m,
            limit: SUBGROUP_DEGREE_LIMIT,
        })
    } else {
        Ok(())
    }
}

fn require_l_partition(mu: &Partition, l: usize) -> Result<()> {
    if l == 0 || !is_l_partition(mu, l) {
        Err(Error::NotLPartition {
            mu: mu.parts().to_vec(),
            l,
        })
    } else {
        Ok(())
    }
}

/// a_{T,l}: the product over blocks of l consecutive equal rows of the
/// l-cycles (T_{li+1,j}, …, T_{li+l,j}), one per column.
pub fn a_cycle(t: &Tableau, l: usize) -> Result<Permutation> {
    let mu = t.shape();
    require_l_partition(mu, l)?;
    if !t.is_numbering() {
        return Err(Error::InvalidTableau(format!("{t} is not a numbering")));
    }
    let mut cycles = Vec::new();
    for block in (0..mu.len()).step_by(l) {
        for j in 0..mu.parts()[block] {
            cycles.push((0..l).map(|r| t.get(block + r, j)).collect::<Vec<_>>());
        }
    }
    if l == 1 {
        return Ok(Permutation::identity(t.size()));
    }
    Permutation::from_cycles(t.size(), &cycles)
}

/// a_{μ,l} = a_{t_μ,l}.
pub fn a_mu(mu: &Partition, l: usize) -> Result<Permutation> {
    a_cycle(&row_reading_numbering(mu), l)
}

/// S_μ: permutations preserving each block of consecutive numbers
/// {prefix+1, …, prefix+μ_i}.
pub fn young_subgroup(mu: &Partition) -> Result<SubgroupEnum> {
    let m = mu.size();
    guard(m)?;
    let mut elements = vec![Permutation::identity(m)];
    for (&len, &off) in mu.parts().iter().zip(&mu.row_offsets()) {
        let block: Vec<Permutation> = Permutation::all(len)
            .into_iter()
            .map(|p| {
                let mut images: Vec<usize> = (1..=m).collect();
                for i in 0..len {
                    images[off + i] = off + p.apply(i + 1);
                }
                Permutation::from_images(&images).expect("block permutation")
            })
            .collect();
        elements = elements.iter().flat_map(|g| block.iter().map(move |b| g * b)).collect();
    }
    Ok(SubgroupEnum::from_elements(
        SubgroupKind::Young(mu.clone()),
        m,
        elements,
    ))
}

/// The cyclic group ⟨a_{μ,l}⟩ of order l.
pub fn cyclic_subgroup(mu: &Partition, l: usize) -> Result<SubgroupEnum> {
    require_l_partition(mu, l)?;
    guard(mu.size())?;
    let a = a_mu(mu, l)?;
    let elements = (0..l as i64).map(|j| a.pow(j)).collect();
    Ok(SubgroupEnum::from_elements(
        SubgroupKind::Cyclic { mu: mu.clone(), l },
        mu.size(),
        elements,
    ))
}

/// H_μ(l) = S_μ ⋊ ⟨a_{μ,l}⟩, with its structural claims checked.
pub fn semidirect_h(mu: &Partition, l: usize) -> Result<SubgroupEnum> {
    require_l_partition(mu, l)?;
    let young = young_subgroup(mu)?;
    let a = a_mu(mu, l)?;
    let m = mu.size();
    let powers: Vec<Permutation> = (0..l as i64).map(|j| a.pow(j)).collect();
    if !a.pow(l as i64).is_identity() {
        return Err(Error::Internal(format!(
            "a_{{mu,l}} = {a} does not have order dividing {l}"
        )));
    }
    let a_inv = a.inverse();
    if !young.elements().iter().all(|s| young.contains(&(&(&a * s) * &a_inv))) {
        return Err(Error::Internal("a_{mu,l} does not normalize S_mu".into()));
    }
    let products: Vec<Permutation> = young
        .elements()
        .iter()
        .flat_map(|s| powers.iter().map(move |p| s * p))
        .collect();
    let h = SubgroupEnum::from_elements(SubgroupKind::Semidirect { mu: mu.clone(), l }, m, products);
    if h.len() != young.len() * l {
        return Err(Error::Internal(format!(
            "|H| = {} but |S_mu| * l = {}: factorization is not unique",
            h.len(),
            young.len() * l
        )));
    }
    if !h.is_closed() {
        return Err(Error::Internal("H_mu(l) is not closed".into()));
    }
    Ok(h)
}

/// Z_μ(k;l): the character of H_μ(l) with a_{μ,l} ↦ ζ_l^k and S_μ ↦ 1.
#[derive(Clone, Debug)]
pub struct ZetaCharacter {
    mu: Partition,
    k: usize,
    l: usize,
    a: Permutation,
    young: SubgroupEnum,
}

impl ZetaCharacter {
    pub fn new(mu: &Partition, k: usize, l: usize) -> Result<Self> {
        require_l_partition(mu, l)?;
        Ok(ZetaCharacter {
            mu: mu.clone(),
            k: k % l,
            l,
            a: a_mu(mu, l)?,
            young: young_subgroup(mu)?,
        })
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn young(&self) -> &SubgroupEnum {
        &self.young
    }

    pub fn order(&self) -> u32 {
        self.l as u32
    }

    /// The exponent j in g = σ·a^j, σ ∈ S_μ.
    pub fn factor(&self, g: &Permutation) -> Result<usize> {
        if g.degree() != self.mu.size() {
            return Err(Error::NotInSubgroup(g.to_string()));
        }
        let a_inv = self.a.inverse();
        let mut cur = g.clone();
        for j in 0..self.l {
            if self.young.contains(&cur) {
                return Ok(j);
            }
            cur = &cur * &a_inv;
        }
        Err(Error::NotInSubgroup(g.to_string()))
    }

    pub fn value(&self, g: &Permutation) -> Result<Cyclotomic> {
        let j = self.factor(g)?;
        Ok(Cyclotomic::zeta_pow(self.order(), (self.k * j) as i64))
    }
}

/// e_ζ = (1/|H|) Σ_{σ∈H} ζ(σ^{-1}) σ.
pub fn symmetrizer(
    h: &SubgroupEnum,
    order: u32,
    zeta: impl Fn(&Permutation) -> Result<Cyclotomic>,
) -> Result<GroupAlgebraElement> {
    let scale = inverse_count(order, h.len());
    let terms = h
        .elements()
        .iter()
        .map(|s| Ok((s.clone(), &zeta(&s.inverse())? * &scale)))
        .collect::<Result<Vec<_>>>()?;
    GroupAlgebraElement::from_terms(h.degree(), order, terms)
}

/// e(S_μ) = (1/|S_μ|) Σ_{σ∈S_μ} σ, with coefficients in Q(ζ_order).
pub fn young_symmetrizer(mu: &Partition, order: u32) -> Result<GroupAlgebraElement> {
    let young = young_subgroup(mu)?;
    symmetrizer(&young, order, |_| Ok(Cyclotomic::one(order)))
}

/// c_μ(k;l) = (1/l) Σ_{j} ζ_l^{-kj} a_{μ,l}^j.
pub fn c_mu(mu: &Partition, k: usize, l: usize) -> Result<GroupAlgebraElement> {
    require_l_partition(mu, l)?;
    let a = a_mu(mu, l)?;
    let order = l as u32;
    let scale = Cyclotomic::from_rational(order, Rational::new(1, l as i64));
    let terms = (0..l as i64).map(|j| (a.pow(j), &Cyclotomic::zeta_pow(order, -(k as i64) * j) * &scale));
    GroupAlgebraElement::from_terms(mu.size(), order, terms)
}

/// z_μ(k;l) = c_μ(k;l) · e(S_μ).
pub fn z_mu(mu: &Partition, k: usize, l: usize) -> Result<GroupAlgebraElement> {
    c_mu(mu, k, l)?.product(&young_symmetrizer(mu, l as u32)?)
}

/// One representative per left coset τH, the lexicographically smallest.
pub fn coset_reps(h: &SubgroupEnum, m: usize) -> Result<Vec<Permutation>> {
    guard(m)?;
    if h.degree() != m {
        return Err(Error::DimensionMismatch(format!(
            "subgroup of S_{} inside S_{m}",
            h.degree()
        )));
    }
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for tau in Permutation::all(m) {
        if covered.contains(&tau) {
            continue;
        }
        for g in h.elements() {
            covered.insert(&tau * g);
        }
        reps.push(tau);
    }
    Ok(reps)
}

/// A class function on S_m: one value per cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    m: usize,
    values: BTreeMap<Partition, Cyclotomic>,
}

impl ClassFunction {
    pub fn new(m: usize, values: BTreeMap<Partition, Cyclotomic>) -> Result<Self> {
        if values.len() != Partition::all(m).len() || values.keys().any(|p| p.size() != m) {
            return Err(Error::DimensionMismatch(format!(
                "class function on S_{m} must have a value on every class"
            )));
        }
        Ok(ClassFunction { m, values })
    }

    /// Evaluates `f` on a representative of each class.
    pub fn from_fn(m: usize, mut f: impl FnMut(&Permutation) -> Result<Cyclotomic>) -> Result<Self> {
        let values = Partition::all(m)
            .into_iter()
            .map(|c| {
                let v = f(&Permutation::class_representative(&c))?;
                Ok((c, v))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ClassFunction { m, values })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn value(&self, class: &Partition) -> Option<&Cyclotomic> {
        self.values.get(class)
    }

    pub fn values(&self) -> &BTreeMap<Partition, Cyclotomic> {
        &self.values
    }

    /// Classes where the two functions differ.
    pub fn differences(&self, other: &ClassFunction) -> Vec<Partition> {
        self.values
            .iter()
            .filter(|(c, v)| other.values.get(*c) != Some(*v))
            .map(|(c, _)| c.clone())
            .collect()
    }
}

/// |class of cycle type ν| = m! / z_ν.
pub fn class_size(nu: &Partition) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let z: u128 = nu
        .multiplicities()
        .iter()
        .map(|&(len, c)| (len as u128).pow(c as u32) * fact(c))
        .product();
    fact(nu.size()) / z
}

/// Frobenius induction of Z_μ(k;l) from H_μ(l) to S_m:
/// χ(g) = (1/|H|) Σ_{x∈S_m, xgx⁻¹∈H} ζ(xgx⁻¹).
pub fn induced_character(mu: &Partition, k: usize, l: usize) -> Result<ClassFunction> {
    let h = semidirect_h(mu, l)?;
    let zeta = ZetaCharacter::new(mu, k, l)?;
    let m = mu.size();
    let all = Permutation::all(m);
    let order = l as u32;
    let scale = inverse_count(order, h.len());
    ClassFunction::from_fn(m, |g| {
        let mut acc = Cyclotomic::zero(order);
        for x in &all {
            let c = &(x * g) * &x.inverse();
            if h.contains(&c) {
                acc = &acc + &zeta.value(&c)?;
            }
        }
        Ok(&acc * &scale)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::RegularModule;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn l_partitions(max_m: usize) -> Vec<(Partition, usize)> {
        let mut out = Vec::new();
        for m in 1..=max_m {
            for mu in Partition::all(m) {
                for l in 1..=m {
                    if is_l_partition(&mu, l) {
                        out.push((mu.clone(), l));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn a_cycles() {
        let t = row_reading_numbering(&p(&[2, 2, 1, 1]));
        assert_eq!(a_cycle(&t, 2).unwrap(), perm("6:(1 3)(2 4)(5 6)"));
        assert_eq!(a_mu(&p(&[1, 1, 1]), 3).unwrap(), perm("(1 2 3)"));
        assert_eq!(a_mu(&p(&[2, 2]), 2).unwrap(), perm("(1 3)(2 4)"));
        assert!(matches!(a_mu(&p(&[2, 1]), 2), Err(Error::NotLPartition { .. })));
    }

    #[test]
    fn young_subgroups() {
        assert_eq!(young_subgroup(&p(&[1, 1, 1])).unwrap().len(), 1);
        assert_eq!(
            young_subgroup(&p(&[2, 1])).unwrap().elements(),
            &[perm("3:()"), perm("3:(1 2)")]
        );
        let y = young_subgroup(&p(&[2, 2])).unwrap();
        assert_eq!(y.len(), 4);
        for s in ["4:()", "4:(1 2)", "4:(3 4)", "4:(1 2)(3 4)"] {
            assert!(y.contains(&perm(s)));
        }
        assert!(matches!(
            young_subgroup(&p(&[5, 4])),
            Err(Error::GuardExceeded { m: 9, .. })
        ));
    }

    #[test]
    fn semidirect_products() {
        let h = semidirect_h(&p(&[1, 1, 1]), 3).unwrap();
        assert_eq!(h.elements(), &[perm("3:()"), perm("(1 2 3)"), perm("(1 3 2)")]);
        assert_eq!(semidirect_h(&p(&[2, 2]), 2).unwrap().len(), 8);
        assert_eq!(semidirect_h(&p(&[1, 1]), 2).unwrap().len(), 2);
        for (mu, l) in l_partitions(6) {
            let h = semidirect_h(&mu, l).unwrap();
            let y = young_subgroup(&mu).unwrap();
            assert_eq!(h.len(), y.len() * l);
            assert!(h.is_closed());
        }
    }

    #[test]
    fn zeta_values() {
        let z = ZetaCharacter::new(&p(&[1, 1, 1]), 1, 3).unwrap();
        assert!(z.value(&perm("3:()")).unwrap().is_one());
        assert_eq!(z.value(&perm("(1 2 3)")).unwrap(), Cyclotomic::zeta_pow(3, 1));
        assert!(matches!(z.value(&perm("3:(1 2)")), Err(Error::NotInSubgroup(_))));
        let z = ZetaCharacter::new(&p(&[2, 2]), 1, 2).unwrap();
        let g = &perm("4:(1 2)") * z.a();
        assert_eq!(z.value(&g).unwrap(), Cyclotomic::from_integer(2, -1));
    }

    #[test]
    fn zeta_is_multiplicative_and_factorization_unique() {
        for (mu, l) in l_partitions(6) {
            let h = semidirect_h(&mu, l).unwrap();
            for k in 0..l {
                let z = ZetaCharacter::new(&mu, k, l).unwrap();
                for g in h.elements() {
                    // exactly one j with g a^{-j} in S_mu
                    let hits = (0..l as i64)
                        .filter(|&j| z.young().contains(&(g * &z.a().pow(-j))))
                        .count();
                    assert_eq!(hits, 1);
                    for x in h.elements() {
                        let lhs = z.value(&(g * x)).unwrap();
                        let rhs = &z.value(g).unwrap() * &z.value(x).unwrap();
                        assert_eq!(lhs, rhs, "mu={mu} l={l} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetrizer_examples() {
        let triv = SubgroupEnum::from_elements(SubgroupKind::Young(p(&[1, 1])), 2, vec![perm("2:()")]);
        let e = symmetrizer(&triv, 1, |_| Ok(Cyclotomic::one(1))).unwrap();
        assert_eq!(e, GroupAlgebraElement::identity(2, 1));

        let c = c_mu(&p(&[1, 1, 1]), 0, 3).unwrap();
        let third = Cyclotomic::from_rational(3, Rational::new(1, 3));
        for s in ["3:()", "(1 2 3)", "(1 3 2)"] {
            assert_eq!(c.coefficient(&perm(s)), third);
        }
        assert_eq!(c.len(), 3);

        // z_(2,2)(1;2) = (1/8) Σ (-1)^j σ a^j
        let z = z_mu(&p(&[2, 2]), 1, 2).unwrap();
        assert_eq!(z.len(), 8);
        let a = a_mu(&p(&[2, 2]), 2).unwrap();
        for s in young_subgroup(&p(&[2, 2])).unwrap().elements() {
            assert_eq!(z.coefficient(s), Cyclotomic::from_rational(2, Rational::new(1, 8)));
            assert_eq!(
                z.coefficient(&(s * &a)),
                Cyclotomic::from_rational(2, Rational::new(-1, 8))
            );
        }
    }

    #[test]
    fn symmetrizers_are_idempotent_and_match_definition() {
        for (mu, l) in l_partitions(5) {
            let h = semidirect_h(&mu, l).unwrap();
            let order = l as u32;
            let e = young_symmetrizer(&mu, order).unwrap();
            assert_eq!(e.product(&e).unwrap(), e);
            for k in 0..l {
                let zc = ZetaCharacter::new(&mu, k, l).unwrap();
                let z = z_mu(&mu, k, l).unwrap();
                let ez = symmetrizer(&h, order, |g| zc.value(g)).unwrap();
                assert_eq!(z, ez, "mu={mu} k={k} l={l}");
                assert_eq!(z.product(&z).unwrap(), z);
                assert_eq!(z.product(&e).unwrap(), z);
                // σ z = ζ(σ) z for σ in H
                let reg = RegularModule { m: mu.size(), order };
                for s in h.elements() {
                    let lhs = GroupAlgebraElement::from_perm(s, Cyclotomic::one(order))
                        .apply(&reg, &z)
                        .unwrap();
                    assert_eq!(lhs, z.scale(&zc.value(s).unwrap()));
                }
            }
        }
    }

    #[test]
    fn cosets() {
        let s3 = young_subgroup(&p(&[3])).unwrap();
        assert_eq!(coset_reps(&s3, 3).unwrap(), vec![perm("3:()")]);
        let h = semidirect_h(&p(&[1, 1, 1]), 3).unwrap();
        assert_eq!(coset_reps(&h, 3).unwrap().len(), 2);
        let h = semidirect_h(&p(&[2, 2]), 2).unwrap();
        let reps = coset_reps(&h, 4).unwrap();
        assert_eq!(reps.len(), 3);
        // the representatives land in distinct cosets
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!h.contains(&(&a.inverse() * b)));
            }
        }
    }

    #[test]
    fn induced_characters() {
        let chi = induced_character(&p(&[1, 1, 1]), 0, 3).unwrap();
        assert_eq!(chi.value(&p(&[1, 1, 1])).unwrap(), &Cyclotomic::from_integer(3, 2));
        for (mu, l) in l_partitions(5) {
            let young = young_subgroup(&mu).unwrap().len();
            let fact: usize = (1..=mu.size()).product();
            for k in 0..l {
                let chi = induced_character(&mu, k, l).unwrap();
                let id = Partition::new(vec![1; mu.size()]).unwrap();
                assert_eq!(
                    chi.value(&id).unwrap(),
                    &Cyclotomic::from_integer(l as u32, (fact / (young * l)) as i64)
                );
            }
        }
        // Ind_{H_(2,2)(2)}^{S_4} Z(1;2) at a transposition: brute force over S_4
        let chi = induced_character(&p(&[2, 2]), 1, 2).unwrap();
        let h = semidirect_h(&p(&[2, 2]), 2).unwrap();
        let z = ZetaCharacter::new(&p(&[2, 2]), 1, 2).unwrap();
        let g = perm("4:(1 2)");
        let mut total = 0i64;
        for x in Permutation::all(4) {
            let c = &(&x * &g) * &x.inverse();
            if h.contains(&c) {
                total += z.value(&c).unwrap().as_rational().unwrap().to_i64().unwrap();
            }
        }
        assert_eq!(total % 8, 0);
        assert_eq!(
            chi.value(&p(&[2, 1, 1])).unwrap(),
            &Cyclotomic::from_integer(2, total / 8)
        );
        assert_eq!(total / 8, 1);
    }

    #[test]
    fn class_sizes() {
        let total: u128 = Partition::all(6).iter().map(class_size).sum();
        assert_eq!(total, 720);
        assert_eq!(class_size(&p(&[2, 1, 1])), 6);
    }
}
