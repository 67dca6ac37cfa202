use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decompose::{Decomposition, GenericityReport};
use super::module::SpringerModule;
use crate::arith::{axpy, greedy_max_independent, Cyclotomic, Vector};
use crate::error::{Error, Result};
use crate::group::{a_mu, young_symmetrizer, z_mu, GroupAlgebraElement};
use crate::poly::{specht_poly, Monomial, MultiPoly, PolyModule};
use crate::springer::GradedQuotient;
use crate::tableaux::{enumerate_semistandard, is_l_partition, standardize, two_row_tableau, Partition, Tableau};

/// Indices of a maximal linearly independent prefix-greedy subfamily.
pub fn independent_polys(polys: &[MultiPoly]) -> Vec<usize> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let order = first.order();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (mono, _) in p.terms() {
            let n = index.len();
            index.entry(*mono).or_insert(n);
        }
    }
    let vectors: Vec<Vector> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Cyclotomic::zero(order); index.len()];
            for (mono, c) in p.terms() {
                v[index[mono]] = c.clone();
            }
            v
        })
        .collect();
    greedy_max_independent(&vectors)
}

/// How the procedure chose tableaux for one shape.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeChoice {
    pub lambda: Partition,
    pub multiplicity: usize,
    /// Standardizations of the semi-standard tableaux of weight μ.
    pub candidates: Vec<Tableau>,
    /// Candidates with independent e(S_μ)Δ_Q.
    pub independent_symmetrized: Vec<Tableau>,
    /// Of those, the ones with independent z·Δ_Q.
    pub independent_projected: Vec<Tableau>,
    /// Q_1..Q_d paired with seeds P_1..P_d.
    pub selected: Vec<Tableau>,
}

/// Output of the generic-element procedure.
#[derive(Clone, Debug)]
pub struct GenericElement {
    pub f: Vector,
    pub zf: Vector,
    pub choices: Vec<ShapeChoice>,
    pub genericity: GenericityReport,
}

/// Runs the procedure on R_μ(k;l): f = Σ_λ Σ_i w_{Q_i}·v_i and the result
/// z_μ(k;l)·f must be generic.
pub fn construct_generic(dec: &Decomposition) -> Result<GenericElement> {
    construct_generic_with_order(dec, None)
}

/// As [`construct_generic`], optionally shuffling every candidate list with a
/// seeded generator before the greedy selections.
pub fn construct_generic_with_order(dec: &Decomposition, shuffle_seed: Option<u64>) -> Result<GenericElement> {
    let module = dec.module();
    let (mu, k, l) = (module.mu().clone(), module.k(), module.l());
    if !is_l_partition(&mu, l) {
        return Err(Error::NotLPartition {
            mu: mu.parts().to_vec(),
            l,
        });
    }
    let order = module.field_order();
    let m = module.m();
    let z = z_mu(&mu, k, l)?;
    let e = young_symmetrizer(&mu, order)?;
    let polys = PolyModule { m, order };
    let mut rng = shuffle_seed.map(ChaCha8Rng::seed_from_u64);

    let mut f = module.zero_vector();
    let mut choices = Vec::new();
    for block in dec.blocks() {
        let lambda = &block.lambda;
        let mut candidates = enumerate_semistandard(lambda, &mu)
            .iter()
            .map(|t| standardize(t, &mu))
            .collect::<Result<Vec<_>>>()?;
        if let Some(rng) = rng.as_mut() {
            candidates.shuffle(rng);
        }
        let deltas = candidates
            .iter()
            .map(|q| specht_poly(q, order))
            .collect::<Result<Vec<_>>>()?;
        let symmetrized = deltas.iter().map(|d| e.apply(&polys, d)).collect::<Result<Vec<_>>>()?;
        let first: Vec<usize> = independent_polys(&symmetrized);
        let projected = first
            .iter()
            .map(|&i| z.apply(&polys, &deltas[i]))
            .collect::<Result<Vec<_>>>()?;
        let second: Vec<usize> = independent_polys(&projected).into_iter().map(|j| first[j]).collect();
        if second.len() < block.multiplicity {
            return Err(Error::ProcedureFailure {
                lambda: lambda.parts().to_vec(),
                found: second.len(),
                needed: block.multiplicity,
            });
        }
        let selected: Vec<Tableau> = second[..block.multiplicity]
            .iter()
            .map(|&i| candidates[i].clone())
            .collect();
        let one = Cyclotomic::one(order);
        for (i, q) in selected.iter().enumerate() {
            let w = crate::poly::relabel_permutation(q)?;
            axpy(&mut f, &one, &module.act(&w, &block.seeds[i]));
        }
        choices.push(ShapeChoice {
            lambda: lambda.clone(),
            multiplicity: block.multiplicity,
            independent_symmetrized: first.iter().map(|&i| candidates[i].clone()).collect(),
            independent_projected: second.iter().map(|&i| candidates[i].clone()).collect(),
            candidates,
            selected,
        });
    }
    let zf = module.apply(&z, &f)?;
    let genericity = dec.is_generic(&zf)?;
    if !genericity.generic {
        return Err(Error::Internal(format!(
            "procedure output z·f is not generic in R_{mu}({k};{l})"
        )));
    }
    Ok(GenericElement {
        f,
        zf,
        choices,
        genericity,
    })
}

fn two_row_shape(n: usize, k: usize) -> Result<Partition> {
    Partition::new([2 * n - k, k].into_iter().filter(|&x| x > 0).collect())
}

/// a_{(n,n),2}·Δ_{t′} = (−1)^k Δ_{t′} for t′ = t′_{(2n−k,k)}.
pub fn two_row_sign_law(n: usize, k: usize) -> Result<bool> {
    let mu = Partition::new(vec![n, n])?;
    let a = a_mu(&mu, 2)?;
    let delta = specht_poly(&two_row_tableau(n, k)?, 1)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    Ok(delta.permute(&a) == delta.scale_rational(&sign.into()))
}

/// The semi-standard tableau of shape (2n−k,k) and weight (n,n) is unique and
/// standardizes to t′_{(2n−k,k)}.
pub fn two_row_unique_ssyt(n: usize, k: usize) -> Result<bool> {
    let mu = Partition::new(vec![n, n])?;
    let ssyt = enumerate_semistandard(&two_row_shape(n, k)?, &mu);
    Ok(ssyt.len() == 1 && standardize(&ssyt[0], &mu)? == two_row_tableau(n, k)?)
}

/// f^{(i)} = e(S_{(n,n)}) Σ_{0≤k≤n, k≡i (2)} Δ_{t′_{(2n−k,k)}}, over Q(ζ_2).
pub fn two_rows_generic(n: usize, i: usize) -> Result<MultiPoly> {
    if n == 0 || i > 1 {
        return Err(Error::InvalidTwoRowIndex { n, k: i });
    }
    let mu = Partition::new(vec![n, n])?;
    let m = 2 * n;
    let mut sum = MultiPoly::zero(m, 2);
    for k in (i..=n).step_by(2) {
        sum = sum.add(&specht_poly(&two_row_tableau(n, k)?, 2)?);
    }
    young_symmetrizer(&mu, 2)?.apply(&PolyModule { m, order: 2 }, &sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoRowReport {
    pub n: usize,
    pub i: usize,
    pub f: String,
    /// (k, holds) for 0 ≤ k ≤ n.
    pub sign_law: Vec<(usize, bool)>,
    pub unique_ssyt: Vec<(usize, bool)>,
    /// `None` when R_{(n,n)} is beyond the quotient limit.
    pub generic: Option<bool>,
    pub generates: Option<bool>,
}

impl TwoRowReport {
    pub fn passed(&self) -> bool {
        self.sign_law.iter().all(|x| x.1)
            && self.unique_ssyt.iter().all(|x| x.1)
            && self.generic != Some(false)
            && self.generates != Some(false)
    }
}

/// Everything the two-row theorem asserts for (n, i); the quotient-level
/// checks run when 2n ≤ `quotient_limit`.
pub fn two_rows_report(n: usize, i: usize, quotient_limit: usize) -> Result<TwoRowReport> {
    let f = two_rows_generic(n, i)?;
    let sign_law = (0..=n)
        .map(|k| Ok((k, two_row_sign_law(n, k)?)))
        .collect::<Result<_>>()?;
    let unique_ssyt = (0..=n)
        .map(|k| Ok((k, two_row_unique_ssyt(n, k)?)))
        .collect::<Result<_>>()?;
    let (generic, generates) = if 2 * n <= quotient_limit {
        let mu = Partition::new(vec![n, n])?;
        let q = Arc::new(GradedQuotient::with_limit(&mu, quotient_limit)?);
        let module = SpringerModule::from_quotient(q, i, 2)?;
        let dec = Decomposition::new(&module)?;
        let z: GroupAlgebraElement = z_mu(&mu, i, 2)?;
        let zf = module.apply(&z, &module.coordinates(&f)?)?;
        (Some(dec.is_generic(&zf)?.generic), Some(dec.generates(&zf)))
    } else {
        (None, None)
    };
    Ok(TwoRowReport {
        n,
        i,
        f: f.to_string(),
        sign_law,
        unique_ssyt,
        generic,
        generates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn coinvariant_s3_procedure() {
        let mu = p(&[1, 1, 1]);
        let q = Arc::new(GradedQuotient::new(&mu).unwrap());
        for k in 0..3 {
            let module = SpringerModule::from_quotient(q.clone(), k, 3).unwrap();
            let dec = Decomposition::new(&module).unwrap();
            let g = construct_generic(&dec).unwrap();
            assert!(g.genericity.generic);
            assert!(dec.generates(&g.zf));
            if k == 1 {
                assert_eq!(g.choices.len(), 1);
                assert_eq!(g.choices[0].lambda, p(&[2, 1]));
            }
            if k == 0 {
                // trivial part in degree 0, sign part in degree 3
                let shapes: Vec<_> = g.choices.iter().map(|c| c.lambda.clone()).collect();
                assert_eq!(shapes, vec![p(&[3]), p(&[1, 1, 1])]);
            }
        }
    }

    #[test]
    fn two_rows_small() {
        let f1 = two_rows_generic(1, 1).unwrap();
        assert_eq!(f1, MultiPoly::var(2, 2, 1).sub(&MultiPoly::var(2, 2, 2)));
        assert_eq!(two_rows_generic(1, 0).unwrap(), MultiPoly::one(2, 2));
        assert!(two_row_sign_law(2, 1).unwrap());
        assert!(two_row_sign_law(2, 2).unwrap());
        for i in 0..2 {
            let r = two_rows_report(2, i, 6).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.generic, Some(true));
        }
        assert!(two_rows_generic(0, 0).is_err());
    }

    #[test]
    fn rejects_non_l_partition() {
        let module = SpringerModule::new(&p(&[2, 1]), 0, 2);
        // the module exists, the procedure refuses it
        let dec = Decomposition::new(&module.unwrap()).unwrap();
        assert!(matches!(construct_generic(&dec), Err(Error::NotLPartition { .. })));
    }
}
