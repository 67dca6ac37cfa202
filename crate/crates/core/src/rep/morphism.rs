use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decompose::{Decomposition, GenericityReport};
use super::module::SpringerModule;
use crate::arith::{scale_vector, Cyclotomic, EchelonBasis, ExactMatrix, Vector};
use crate::error::{Error, Result};
use crate::group::{
    coset_reps, induced_character, semidirect_h, z_mu, ClassFunction, GModule, GroupAlgebraElement, Permutation,
    RegularModule, SubgroupEnum, ZetaCharacter,
};
use crate::springer::GradedQuotient;
use crate::tableaux::{is_l_partition, Partition};

/// Which module the induced module Ind_H^{S_m} Z_μ(k;l) is mapped into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismTarget {
    /// R_μ(k;l), with ε⊗1 ↦ z·f.
    Springer,
    /// K[S_m]z, with ε⊗1 ↦ z.
    GroupRing,
}

/// Outcome of checking τH ↦ τ·F on coset representatives.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub target: MorphismTarget,
    pub mu: Partition,
    pub k: usize,
    pub l: usize,
    /// [S_m : H_μ(l)].
    pub index: usize,
    pub target_dim: usize,
    /// The image F of ε⊗1, as text.
    pub image: String,
    pub well_defined: bool,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub equivariant: bool,
    /// Permutations used for the equivariance check.
    pub equivariance_checked: Vec<String>,
    pub coset_representatives: Vec<String>,
    /// Column j is τ_j·F in the target's coordinates.
    pub matrix: Vec<Vec<String>>,
    pub genericity: Option<GenericityReport>,
}

impl MorphismReport {
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.equivariant
    }
}

struct InducedSetup {
    h: SubgroupEnum,
    zeta: ZetaCharacter,
    reps: Vec<Permutation>,
    // g ↦ (j, h) with g = τ_j h
    coset_of: HashMap<Permutation, (usize, Permutation)>,
}

impl InducedSetup {
    fn new(mu: &Partition, k: usize, l: usize) -> Result<Self> {
        let h = semidirect_h(mu, l)?;
        let zeta = ZetaCharacter::new(mu, k, l)?;
        let reps = coset_reps(&h, mu.size())?;
        let mut coset_of = HashMap::new();
        for (j, t) in reps.iter().enumerate() {
            for g in h.elements() {
                coset_of.insert(t * g, (j, g.clone()));
            }
        }
        Ok(InducedSetup {
            h,
            zeta,
            reps,
            coset_of,
        })
    }

    /// Adjacent transpositions and `extra` random permutations.
    fn test_permutations(&self, m: usize, extra: usize, seed: u64) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = (1..m).map(|i| Permutation::transposition(m, i, i + 1)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<usize> = (1..=m).collect();
        for _ in 0..extra {
            images.shuffle(&mut rng);
            out.push(Permutation::from_images(&images).expect("shuffle is a bijection"));
        }
        out
    }
}

struct MapCheck {
    well_defined: bool,
    rank: usize,
    equivariant: bool,
    checked: Vec<String>,
    matrix: Vec<Vec<String>>,
}

fn check_map<M: GModule>(
    module: &M,
    setup: &InducedSetup,
    image: &M::Elem,
    projector: &GroupAlgebraElement,
    to_vec: impl Fn(&M::Elem) -> Vector,
    seed: u64,
) -> Result<MapCheck> {
    let order = module.order();
    let m = module.degree();
    let fv = to_vec(image);
    let mut well_defined = to_vec(&projector.apply(module, image)?) == fv;
    for h in setup.h.elements() {
        let lhs = to_vec(&module.act(h, image));
        let rhs = scale_vector(&fv, &setup.zeta.value(h)?);
        well_defined &= lhs == rhs;
    }
    let columns: Vec<Vector> = setup.reps.iter().map(|t| to_vec(&module.act(t, image))).collect();
    let mut ech = EchelonBasis::new(order, fv.len());
    for c in &columns {
        ech.insert(c.clone());
    }
    let sigmas = setup.test_permutations(m, 3, seed);
    let mut equivariant = true;
    for sigma in &sigmas {
        for t in &setup.reps {
            let (jj, h) = &setup.coset_of[&(sigma * t)];
            let lhs = to_vec(&module.act(sigma, &module.act(t, image)));
            let rhs = scale_vector(&columns[*jj], &setup.zeta.value(h)?);
            equivariant &= lhs == rhs;
        }
    }
    let matrix = ExactMatrix::from_columns(order, fv.len(), columns)?;
    Ok(MapCheck {
        well_defined,
        rank: ech.rank(),
        equivariant,
        checked: sigmas.iter().map(ToString::to_string).collect(),
        matrix: (0..matrix.rows())
            .map(|i| matrix.row(i).iter().map(ToString::to_string).collect())
            .collect(),
    })
}

fn require_l_partition(mu: &Partition, l: usize) -> Result<()> {
    if l == 0 || !is_l_partition(mu, l) {
        return Err(Error::NotLPartition {
            mu: mu.parts().to_vec(),
            l,
        });
    }
    Ok(())
}

/// Checks that τH ↦ τ·(z·f) is a well-defined S_m-isomorphism from
/// Ind_H^{S_m} Z_μ(k;l) onto R_μ(k;l).
pub fn verify_morphism(dec: &Decomposition, f: &[Cyclotomic], seed: u64) -> Result<MorphismReport> {
    let module = dec.module();
    let (mu, k, l) = (module.mu().clone(), module.k(), module.l());
    require_l_partition(&mu, l)?;
    let setup = InducedSetup::new(&mu, k, l)?;
    let z = z_mu(&mu, k, l)?;
    let image = module.apply(&z, &f.to_vec())?;
    let check = check_map(module, &setup, &image, &z, Clone::clone, seed)?;
    let index = setup.reps.len();
    Ok(MorphismReport {
        target: MorphismTarget::Springer,
        mu,
        k,
        l,
        index,
        target_dim: module.dim(),
        image: module.to_poly(&image).to_string(),
        well_defined: check.well_defined,
        rank: check.rank,
        injective: check.rank == index,
        surjective: check.rank == module.dim(),
        equivariant: check.equivariant,
        equivariance_checked: check.checked,
        coset_representatives: setup.reps.iter().map(ToString::to_string).collect(),
        matrix: check.matrix,
        genericity: Some(dec.is_generic(&image)?),
    })
}

/// Checks that τH ↦ τz is an isomorphism from Ind_H^{S_m} Z_μ(k;l) onto the
/// left ideal K[S_m]z.
pub fn verify_group_ring_model(mu: &Partition, k: usize, l: usize, seed: u64) -> Result<MorphismReport> {
    require_l_partition(mu, l)?;
    let m = mu.size();
    let setup = InducedSetup::new(mu, k, l)?;
    let z = z_mu(mu, k, l)?;
    let order = l as u32;
    let regular = RegularModule { m, order };
    let all = Permutation::all(m);
    let to_vec = |a: &GroupAlgebraElement| a.coordinates(&all);
    let check = check_map(&regular, &setup, &z, &z, to_vec, seed)?;
    // dim K[S_m]z: close span{z} under left multiplication by adjacent transpositions
    let mut ech = EchelonBasis::new(order, all.len());
    ech.insert(to_vec(&z));
    let mut queue = vec![z.clone()];
    while let Some(a) = queue.pop() {
        for i in 1..m {
            let b = regular.act(&Permutation::transposition(m, i, i + 1), &a);
            if ech.insert(to_vec(&b)) {
                queue.push(b);
            }
        }
    }
    let index = setup.reps.len();
    Ok(MorphismReport {
        target: MorphismTarget::GroupRing,
        mu: mu.clone(),
        k: k % l,
        l,
        index,
        target_dim: ech.rank(),
        image: z.to_string(),
        well_defined: check.well_defined,
        rank: check.rank,
        injective: check.rank == index,
        surjective: check.rank == ech.rank(),
        equivariant: check.equivariant,
        equivariance_checked: check.checked,
        coset_representatives: setup.reps.iter().map(ToString::to_string).collect(),
        matrix: check.matrix,
        genericity: None,
    })
}

/// The character of R_μ(k;l) from traces of the quotient action.
pub fn character_of_submodule(quotient: &Arc<GradedQuotient>, k: usize, l: usize) -> Result<ClassFunction> {
    SpringerModule::from_quotient(quotient.clone(), k, l)?.character()
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueComparison {
    pub k: usize,
    pub dim: usize,
    /// class → value, both sides as text.
    pub induced: BTreeMap<String, String>,
    pub submodule: BTreeMap<String, String>,
    /// Classes where the two characters differ.
    pub mismatches: Vec<Partition>,
}

/// Character identities char R_μ(k;l) = Ind_{H_μ(l)}^{S_m} Z_μ(k;l) for all k.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub mu: Partition,
    pub l: usize,
    pub residues: Vec<ResidueComparison>,
    pub dims_constant: bool,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.dims_constant && self.residues.iter().all(|r| r.mismatches.is_empty())
    }
}

fn class_text(chi: &ClassFunction) -> BTreeMap<String, String> {
    chi.values()
        .iter()
        .map(|(c, v)| (c.to_string(), v.to_string()))
        .collect()
}

pub fn verify_presentation(quotient: &Arc<GradedQuotient>, l: usize) -> Result<PresentationReport> {
    let mu = quotient.mu().clone();
    require_l_partition(&mu, l)?;
    let mut residues = Vec::new();
    for k in 0..l {
        let induced = induced_character(&mu, k, l)?;
        let module = SpringerModule::from_quotient(quotient.clone(), k, l)?;
        let submodule = module.character()?;
        residues.push(ResidueComparison {
            k,
            dim: module.dim(),
            mismatches: induced.differences(&submodule),
            induced: class_text(&induced),
            submodule: class_text(&submodule),
        });
    }
    let dims_constant = residues.iter().all(|r| r.dim == residues[0].dim);
    Ok(PresentationReport {
        mu,
        l,
        residues,
        dims_constant,
    })
}
