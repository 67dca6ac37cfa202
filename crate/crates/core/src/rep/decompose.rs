use std::collections::BTreeMap;

use serde::Serialize;

use super::character::{mn_character, multiplicity_in, specht_dimension};
use super::module::SpringerModule;
use crate::arith::{axpy, CoordinateSolver, Cyclotomic, EchelonBasis, ExactMatrix, Rational, Vector};
use crate::error::{Error, Result};
use crate::group::Permutation;
use crate::poly::relabel_permutation;
use crate::tableaux::{enumerate_standard, row_reading_numbering, Partition, Tableau};

/// All permutations preserving each block (a set partition of 1..=m).
pub fn block_stabilizer(m: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(m)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let mut local = Vec::new();
        for p in Permutation::all(block.len()) {
            let mut images: Vec<usize> = (1..=m).collect();
            for (i, &x) in block.iter().enumerate() {
                images[x - 1] = block[p.apply(i + 1) - 1];
            }
            local.push(Permutation::from_images(&images).expect("bijection"));
        }
        out = out.iter().flat_map(|a| local.iter().map(move |b| a * b)).collect();
    }
    out
}

/// y_{t_λ}·v = (Σ_{column stabilizer} sgn(σ)σ)(Σ_{row stabilizer} τ)·v.
pub fn young_projector_apply(
    module: &SpringerModule,
    rows: &[Permutation],
    cols: &[Permutation],
    v: &[Cyclotomic],
) -> Vector {
    let mut r = module.zero_vector();
    let one = Cyclotomic::one(module.field_order());
    for t in rows {
        axpy(&mut r, &one, &module.act(t, v));
    }
    let mut out = module.zero_vector();
    let minus = Cyclotomic::from_integer(module.field_order(), -1);
    for s in cols {
        axpy(&mut out, if s.sign() > 0 { &one } else { &minus }, &module.act(s, &r));
    }
    out
}

/// The λ-isotypic part of a module: seeds v_1..v_d in y_{t_λ}·V and the
/// standard tableaux Q indexing the basis {w_Q·v_i} of each copy.
#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub tableaux: Vec<Tableau>,
    pub relabel: Vec<Permutation>,
    pub seeds: Vec<Vector>,
}

impl IsotypicBlock {
    pub fn specht_dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Δ^{P_i}_Q realized as w_Q·v_i.
    pub fn copy_vector(&self, module: &SpringerModule, i: usize, q: usize) -> Vector {
        module.act(&self.relabel[q], &self.seeds[i])
    }
}

/// Per-shape genericity data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeGenericity {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub generic: bool,
    pub shapes: Vec<ShapeGenericity>,
}

/// One isotypic block of a [`DecompositionReport`]; vectors and matrices as
/// text, coordinates in the standard-monomial basis.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeReport {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub specht_dim: usize,
    pub tableaux: Vec<Tableau>,
    pub seeds: Vec<Vec<String>>,
    /// Component matrix of the reported element, when one was given.
    pub component_matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub mu: Partition,
    pub k: usize,
    pub l: usize,
    pub dim: usize,
    pub shapes: Vec<ShapeReport>,
}

fn vector_text(v: &[Cyclotomic]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// An isotypic decomposition of a [`SpringerModule`] with a coordinate solver
/// for the adapted basis {w_Q·v_i}.
#[derive(Clone, Debug)]
pub struct Decomposition {
    module: SpringerModule,
    blocks: Vec<IsotypicBlock>,
    offsets: Vec<usize>,
    family: Vec<Vector>,
    solver: CoordinateSolver,
}

/// d_λ for every λ ⊢ m, from traces of the action.
pub fn multiplicities(module: &SpringerModule) -> Result<BTreeMap<Partition, usize>> {
    let chi = module.character()?;
    let mut out = BTreeMap::new();
    let mut total = 0;
    for lambda in Partition::all(module.m()) {
        let d = multiplicity_in(&lambda, &chi)?;
        total += d * specht_dimension(&lambda);
        out.insert(lambda, d);
    }
    if total != module.dim() {
        return Err(Error::Internal(format!(
            "multiplicities account for dimension {total}, module has {}",
            module.dim()
        )));
    }
    Ok(out)
}

/// d_λ independent vectors y_{t_λ}·b_j, taken greedily over the basis.
pub fn seed_space(module: &SpringerModule, lambda: &Partition, d: usize) -> Result<Vec<Vector>> {
    let m = module.m();
    let t = row_reading_numbering(lambda);
    let rows = block_stabilizer(m, t.rows());
    let cols = block_stabilizer(m, &t.columns());
    let mut ech = EchelonBasis::new(module.field_order(), module.dim());
    let mut seeds = Vec::new();
    for j in 0..module.dim() {
        if seeds.len() == d {
            break;
        }
        let v = young_projector_apply(module, &rows, &cols, &module.unit_vector(j));
        if ech.insert(v.clone()) {
            seeds.push(v);
        }
    }
    if seeds.len() != d {
        return Err(Error::Internal(format!(
            "image of the Young symmetrizer for {lambda} has dimension {}, expected {d}",
            seeds.len()
        )));
    }
    Ok(seeds)
}

impl Decomposition {
    pub fn new(module: &SpringerModule) -> Result<Self> {
        let mults = multiplicities(module)?;
        let mut blocks = Vec::new();
        for (lambda, &d) in &mults {
            if d == 0 {
                continue;
            }
            let seeds = seed_space(module, lambda, d)?;
            let tableaux = enumerate_standard(lambda);
            let relabel = tableaux.iter().map(relabel_permutation).collect::<Result<Vec<_>>>()?;
            blocks.push(IsotypicBlock {
                lambda: lambda.clone(),
                multiplicity: d,
                tableaux,
                relabel,
                seeds,
            });
        }
        // decreasing shapes, matching Partition::all
        blocks.sort_by(|a, b| b.lambda.parts().cmp(a.lambda.parts()));
        let mut family = Vec::with_capacity(module.dim());
        let mut offsets = vec![0];
        for block in &blocks {
            for i in 0..block.multiplicity {
                for q in 0..block.specht_dim() {
                    family.push(block.copy_vector(module, i, q));
                }
            }
            offsets.push(family.len());
        }
        let solver = CoordinateSolver::new(module.field_order(), module.dim(), &family)
            .map_err(|_| Error::Internal("the copies w_Q·v_i are not independent".into()))?;
        if family.len() != module.dim() {
            return Err(Error::Internal("adapted basis has the wrong size".into()));
        }
        Ok(Decomposition {
            module: module.clone(),
            blocks,
            offsets,
            family,
            solver,
        })
    }

    pub fn module(&self) -> &SpringerModule {
        &self.module
    }

    pub fn blocks(&self) -> &[IsotypicBlock] {
        &self.blocks
    }

    pub fn block(&self, lambda: &Partition) -> Option<&IsotypicBlock> {
        self.blocks.iter().find(|b| &b.lambda == lambda)
    }

    pub fn multiplicity(&self, lambda: &Partition) -> usize {
        self.block(lambda).map_or(0, |b| b.multiplicity)
    }

    /// Coordinates of v in the adapted basis, block by block.
    pub fn adapted_coordinates(&self, v: &[Cyclotomic]) -> Result<Vector> {
        self.module.check_vector(v)?;
        self.solver
            .solve(v)
            .ok_or_else(|| Error::Internal("adapted basis does not span the module".into()))
    }

    /// The vector with the given adapted coordinates.
    pub fn from_adapted(&self, coords: &[Cyclotomic]) -> Vector {
        let mut out = self.module.zero_vector();
        for (c, v) in coords.iter().zip(&self.family) {
            if !c.is_zero() {
                axpy(&mut out, c, v);
            }
        }
        out
    }

    /// The adapted basis: block by block, copy by copy, then by standard Q.
    pub fn adapted_basis(&self) -> &[Vector] {
        &self.family
    }

    /// Range of adapted coordinates belonging to λ.
    pub fn block_range(&self, lambda: &Partition) -> Option<std::ops::Range<usize>> {
        let pos = self.blocks.iter().position(|b| &b.lambda == lambda)?;
        Some(self.offsets[pos]..self.offsets[pos + 1])
    }

    fn reshape(&self, pos: usize, coords: &[Cyclotomic]) -> Result<ExactMatrix> {
        let block = &self.blocks[pos];
        let slice = &coords[self.offsets[pos]..self.offsets[pos + 1]];
        let f = block.specht_dim();
        let rows = slice.chunks(f).map(<[Cyclotomic]>::to_vec).collect();
        ExactMatrix::from_rows(self.module.field_order(), f, rows)
    }

    /// d_λ × f_λ matrix whose row i holds the λ-component of v in copy i,
    /// in the basis {w_Q·v_i}_Q.
    pub fn component_matrix(&self, v: &[Cyclotomic], lambda: &Partition) -> Result<ExactMatrix> {
        let coords = self.adapted_coordinates(v)?;
        match self.blocks.iter().position(|b| &b.lambda == lambda) {
            Some(pos) => self.reshape(pos, &coords),
            None => Ok(ExactMatrix::zeros(
                0,
                specht_dimension(lambda),
                self.module.field_order(),
            )),
        }
    }

    /// The same matrix computed through the central idempotent
    /// (f_λ/m!) Σ_σ χ_λ(σ) σ.
    pub fn component_matrix_via_projector(&self, v: &[Cyclotomic], lambda: &Partition) -> Result<ExactMatrix> {
        self.module.check_vector(v)?;
        let order = self.module.field_order();
        let m = self.module.m();
        let mut projected = self.module.zero_vector();
        let mut fact = 1i64;
        for i in 2..=m as i64 {
            fact *= i;
        }
        for sigma in Permutation::all(m) {
            let chi = mn_character(lambda, &sigma.cycle_type())?;
            if chi != 0 {
                let c = Cyclotomic::from_integer(order, chi);
                axpy(&mut projected, &c, &self.module.act(&sigma, v));
            }
        }
        let scale = Cyclotomic::from_rational(order, Rational::new(specht_dimension(lambda) as i64, fact));
        let projected: Vector = projected.iter().map(|x| x * &scale).collect();
        let coords = self.adapted_coordinates(&projected)?;
        let Some(pos) = self.blocks.iter().position(|b| &b.lambda == lambda) else {
            return if crate::arith::is_zero_vector(&projected) {
                Ok(ExactMatrix::zeros(0, specht_dimension(lambda), order))
            } else {
                Err(Error::Internal(format!("nonzero projection onto absent {lambda}")))
            };
        };
        for (p, _) in self.blocks.iter().enumerate().filter(|&(p, _)| p != pos) {
            if coords[self.offsets[p]..self.offsets[p + 1]]
                .iter()
                .any(|c| !c.is_zero())
            {
                return Err(Error::Internal("projection leaks into another isotypic block".into()));
            }
        }
        self.reshape(pos, &coords)
    }

    /// Full row rank of every component matrix.
    pub fn is_generic(&self, v: &[Cyclotomic]) -> Result<GenericityReport> {
        let coords = self.adapted_coordinates(v)?;
        let mut shapes = Vec::new();
        for (pos, block) in self.blocks.iter().enumerate() {
            let rank = self.reshape(pos, &coords)?.rank();
            shapes.push(ShapeGenericity {
                lambda: block.lambda.clone(),
                multiplicity: block.multiplicity,
                rank,
            });
        }
        let generic = self.module.dim() > 0 && shapes.iter().all(|s| s.rank == s.multiplicity);
        Ok(GenericityReport { generic, shapes })
    }

    pub fn generates(&self, v: &[Cyclotomic]) -> bool {
        self.module.generates(v)
    }

    /// Multiplicities, seeds and, for `f`, the component matrices.
    pub fn report(&self, f: Option<&[Cyclotomic]>) -> Result<DecompositionReport> {
        let coords = f.map(|v| self.adapted_coordinates(v)).transpose()?;
        let shapes = self
            .blocks
            .iter()
            .enumerate()
            .map(|(pos, block)| {
                let component_matrix = coords
                    .as_ref()
                    .map(|c| {
                        let mat = self.reshape(pos, c)?;
                        Ok::<_, Error>((0..mat.rows()).map(|i| vector_text(mat.row(i))).collect())
                    })
                    .transpose()?;
                Ok(ShapeReport {
                    lambda: block.lambda.clone(),
                    multiplicity: block.multiplicity,
                    specht_dim: block.specht_dim(),
                    tableaux: block.tableaux.clone(),
                    seeds: block.seeds.iter().map(|v| vector_text(v)).collect(),
                    component_matrix,
                })
            })
            .collect::<Result<_>>()?;
        Ok(DecompositionReport {
            mu: self.module.mu().clone(),
            k: self.module.k(),
            l: self.module.l(),
            dim: self.module.dim(),
            shapes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_zero_vector;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn stabilizer_sizes() {
        let t = row_reading_numbering(&p(&[3, 2]));
        assert_eq!(block_stabilizer(5, t.rows()).len(), 12);
        assert_eq!(block_stabilizer(5, &t.columns()).len(), 4);
    }

    #[test]
    fn coinvariant_s3_multiplicities() {
        let m = p(&[1, 1, 1]);
        let r1 = SpringerModule::new(&m, 1, 3).unwrap();
        let d = multiplicities(&r1).unwrap();
        assert_eq!(d[&p(&[2, 1])], 1);
        assert_eq!(d[&p(&[3])] + d[&p(&[1, 1, 1])], 0);
        let r0 = SpringerModule::new(&m, 0, 3).unwrap();
        let d = multiplicities(&r0).unwrap();
        assert_eq!((d[&p(&[3])], d[&p(&[2, 1])], d[&p(&[1, 1, 1])]), (1, 0, 1));

        let dec = Decomposition::new(&r0).unwrap();
        let triv = &dec.block(&p(&[3])).unwrap().seeds[0];
        let sign = &dec.block(&p(&[1, 1, 1])).unwrap().seeds[0];
        // trivial seed lives in degree 0, the sign seed in degree 3
        let deg0 = r0.basis().block(0).unwrap();
        assert!(triv.iter().enumerate().all(|(i, c)| deg0.contains(&i) || c.is_zero()));
        assert!(sign[deg0.clone()].iter().all(Cyclotomic::is_zero));
        assert!(!is_zero_vector(sign));
    }

    #[test]
    fn projector_agrees_with_adapted_basis() {
        for (mu, k, l) in [
            (p(&[1, 1, 1]), 0, 1),
            (p(&[2, 2]), 1, 2),
            (p(&[2, 1, 1]), 0, 1),
            (p(&[1, 1, 1]), 2, 3),
        ] {
            let module = SpringerModule::new(&mu, k, l).unwrap();
            let dec = Decomposition::new(&module).unwrap();
            let order = module.field_order();
            let v: Vector = (0..module.dim())
                .map(|j| Cyclotomic::from_integer(order, (j as i64 * 7 + 3) % 5 - 2))
                .collect();
            for lambda in Partition::all(mu.size()) {
                assert_eq!(
                    dec.component_matrix(&v, &lambda).unwrap(),
                    dec.component_matrix_via_projector(&v, &lambda).unwrap(),
                    "{mu} {k} {l} {lambda}"
                );
            }
        }
    }

    #[test]
    fn seeds_transport_equivariantly() {
        // σ·(w_Q v_i) has the same coordinates in copy i as σ·Δ_Q in the
        // Specht basis, for every copy i
        let module = SpringerModule::new(&p(&[1, 1, 1, 1]), 0, 1).unwrap();
        let dec = Decomposition::new(&module).unwrap();
        let lam = p(&[2, 1, 1]);
        let block = dec.block(&lam).unwrap();
        assert!(block.multiplicity >= 2);
        for sigma in Permutation::all(4) {
            let images: Vec<ExactMatrix> = (0..block.multiplicity)
                .map(|i| {
                    let u = module.act(&sigma, &block.copy_vector(&module, i, 1));
                    dec.component_matrix(&u, &lam).unwrap()
                })
                .collect();
            for (i, mat) in images.iter().enumerate() {
                for r in 0..block.multiplicity {
                    if r == i {
                        assert_eq!(mat.row(r), images[0].row(0));
                    } else {
                        assert!(mat.row(r).iter().all(Cyclotomic::is_zero));
                    }
                }
            }
        }
    }

    #[test]
    fn sum_of_seeds_is_diagonal() {
        // the seeds share one Specht vector, so v_1 + v_2 has proportional rows
        let module = SpringerModule::new(&p(&[1, 1, 1]), 0, 1).unwrap();
        let dec = Decomposition::new(&module).unwrap();
        let lam = p(&[2, 1]);
        let block = dec.block(&lam).unwrap();
        assert_eq!(block.multiplicity, 2);
        let add = |a: &[Cyclotomic], b: &[Cyclotomic]| -> Vector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let diagonal = add(&block.seeds[0], &block.seeds[1]);
        assert!(!dec.is_generic(&diagonal).unwrap().generic);
        assert!(!dec.generates(&diagonal));
        let twisted = add(&block.copy_vector(&module, 0, 0), &block.copy_vector(&module, 1, 1));
        assert_eq!(dec.component_matrix(&twisted, &lam).unwrap().rank(), 2);
    }

    #[test]
    fn zero_is_not_generic() {
        let module = SpringerModule::new(&p(&[2, 1]), 0, 1).unwrap();
        let dec = Decomposition::new(&module).unwrap();
        let z = module.zero_vector();
        assert!(!dec.is_generic(&z).unwrap().generic);
        assert!(!dec.generates(&z));
    }
}
