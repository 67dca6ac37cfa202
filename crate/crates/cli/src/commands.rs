use std::collections::BTreeMap;
use std::sync::Arc;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use springer_core::group::{semidirect_h, z_mu, GModule, RegularModule, ZetaCharacter};
use springer_core::rep::{
    construct_generic, two_rows_report, verify_group_ring_model, verify_morphism, verify_presentation, Decomposition,
    GenericElement, SpringerModule,
};
use springer_core::springer::GradedQuotient;
use springer_core::tableaux::{is_l_partition, Partition};
use springer_core::{Cyclotomic, Error, Result};

use crate::report::{Check, Report};

/// Seed for the random permutations of the equivariance checks.
const MORPHISM_SEED: u64 = 17;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// m!/∏μ_i!, the expected dimension of R_μ.
fn multinomial(mu: &Partition) -> u128 {
    factorial(mu.size()) / mu.parts().iter().map(|&p| factorial(p)).product::<u128>()
}

fn require_l_partition(mu: &Partition, l: usize) -> Result<()> {
    if is_l_partition(mu, l) {
        Ok(())
    } else {
        Err(Error::NotLPartition {
            mu: mu.parts().to_vec(),
            l,
        })
    }
}

fn residues(k: Option<usize>, l: usize) -> Vec<usize> {
    match k {
        Some(k) => vec![k % l],
        None => (0..l).collect(),
    }
}

/// Runs the procedure, turning a procedure failure into a failed check.
fn procedure(dec: &Decomposition, k: usize, checks: &mut Vec<Check>) -> Result<Option<GenericElement>> {
    match construct_generic(dec) {
        Ok(g) => Ok(Some(g)),
        Err(e @ Error::ProcedureFailure { .. }) => {
            checks.push(Check::new(format!("procedure k={k}"), false, e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn dims(mu: &Partition, l: usize, limit: usize) -> Result<Report> {
    let q = GradedQuotient::with_limit(mu, limit)?;
    let submodules = q.submodule_dims(l)?;
    let l_partition = is_l_partition(mu, l);
    let hilbert: BTreeMap<String, usize> = q.hilbert().iter().map(|(d, n)| (d.to_string(), *n)).collect();
    let by_k: BTreeMap<String, usize> = submodules
        .iter()
        .enumerate()
        .map(|(k, n)| (k.to_string(), *n))
        .collect();
    let expected = multinomial(mu);
    let mut checks = vec![
        Check::new(
            "dimension",
            q.dim() as u128 == expected,
            format!("dim R_μ = {}, m!/∏μ_i! = {expected}", q.dim()),
        ),
        Check::new(
            "residues partition the grading",
            submodules.iter().sum::<usize>() == q.dim(),
            format!("Σ_k dim R_μ(k;{l}) = {}", submodules.iter().sum::<usize>()),
        ),
    ];
    if l_partition {
        checks.push(Check::new(
            "dimension coincidence",
            submodules.iter().all(|&d| d == submodules[0]),
            format!("dim R_μ(k;{l}) = {submodules:?}"),
        ));
    }
    let results = json!({
        "dim": q.dim(),
        "top_degree": q.top_degree(),
        "hilbert": hilbert,
        "submodules": by_k,
        "l_partition": l_partition,
        "groebner_basis": q.groebner_basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Report {
        command: "dims",
        mu: Some(mu.parts().to_vec()),
        l: Some(l),
        results,
        checks,
    })
}

pub fn generic(mu: &Partition, l: usize, k: Option<usize>, limit: usize) -> Result<Report> {
    require_l_partition(mu, l)?;
    let q = Arc::new(GradedQuotient::with_limit(mu, limit)?);
    let mut checks = Vec::new();
    let mut entries = Vec::new();
    for k in residues(k, l) {
        let module = SpringerModule::from_quotient(q.clone(), k, l)?;
        let dec = Decomposition::new(&module)?;
        let Some(g) = procedure(&dec, k, &mut checks)? else {
            continue;
        };
        let generates = dec.generates(&g.zf);
        checks.push(Check::new(
            format!("z·f generic k={k}"),
            g.genericity.generic,
            g.genericity
                .shapes
                .iter()
                .map(|s| format!("{}: rank {}/{}", s.lambda, s.rank, s.multiplicity))
                .collect::<Vec<_>>()
                .join(", "),
        ));
        checks.push(Check::new(
            format!("z·f generates k={k}"),
            generates,
            format!("orbit spans dimension {}", module.dim()),
        ));
        entries.push(json!({
            "k": k,
            "dim": module.dim(),
            "f": module.to_poly(&g.f).to_string(),
            "zf": module.to_poly(&g.zf).to_string(),
            "genericity": to_value(&g.genericity),
            "generates": generates,
            "choices": to_value(&g.choices),
            "decomposition": to_value(&dec.report(Some(&g.zf))?),
        }));
    }
    Ok(Report {
        command: "generic",
        mu: Some(mu.parts().to_vec()),
        l: Some(l),
        results: json!({ "residues": entries }),
        checks,
    })
}

/// Procedure output and both morphism reports for one residue.
fn verify_residue(q: &Arc<GradedQuotient>, k: usize, l: usize) -> Result<(Value, Vec<Check>)> {
    let mu = q.mu().clone();
    let module = SpringerModule::from_quotient(q.clone(), k, l)?;
    let dec = Decomposition::new(&module)?;
    let mut checks = Vec::new();
    let springer = match procedure(&dec, k, &mut checks)? {
        Some(g) => {
            let r = verify_morphism(&dec, &g.f, MORPHISM_SEED)?;
            checks.push(Check::new(
                format!("Ind → R_μ({k};{l}) isomorphism"),
                r.is_isomorphism(),
                format!(
                    "well-defined {}, rank {} of index {} and dim {}, equivariant {}",
                    r.well_defined, r.rank, r.index, r.target_dim, r.equivariant
                ),
            ));
            to_value(&r)
        }
        None => Value::Null,
    };
    let gr = verify_group_ring_model(&mu, k, l, MORPHISM_SEED)?;
    checks.push(Check::new(
        format!("Ind → K[S_m]z isomorphism k={k}"),
        gr.is_isomorphism() && gr.rank == gr.index,
        format!(
            "well-defined {}, rank {} of index {} and dim {}, equivariant {}",
            gr.well_defined, gr.rank, gr.index, gr.target_dim, gr.equivariant
        ),
    ));
    Ok((
        json!({ "k": k, "springer": springer, "group_ring": to_value(&gr) }),
        checks,
    ))
}

pub fn verify(mu: &Partition, l: usize, k: Option<usize>, limit: usize) -> Result<Report> {
    require_l_partition(mu, l)?;
    let q = Arc::new(GradedQuotient::with_limit(mu, limit)?);
    let presentation = verify_presentation(&q, l)?;
    let mut checks = vec![Check::new(
        "dimension coincidence",
        presentation.dims_constant,
        format!(
            "dims {:?}",
            presentation.residues.iter().map(|r| r.dim).collect::<Vec<_>>()
        ),
    )];
    for r in &presentation.residues {
        checks.push(Check::new(
            format!("character k={}", r.k),
            r.mismatches.is_empty(),
            if r.mismatches.is_empty() {
                format!("Ind character equals char R_μ({};{l}) on all classes", r.k)
            } else {
                format!(
                    "differs on {:?}",
                    r.mismatches.iter().map(ToString::to_string).collect::<Vec<_>>()
                )
            },
        ));
    }
    // residues are independent; merge in order of k
    let ks = residues(k, l);
    let outcomes: Vec<Result<(Value, Vec<Check>)>> = thread::scope(|s| {
        let handles: Vec<_> = ks
            .iter()
            .map(|&k| {
                let q = &q;
                s.spawn(move || verify_residue(q, k, l))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    let mut morphisms = Vec::new();
    for outcome in outcomes {
        let (value, c) = outcome?;
        morphisms.push(value);
        checks.extend(c);
    }
    Ok(Report {
        command: "verify",
        mu: Some(mu.parts().to_vec()),
        l: Some(l),
        results: json!({ "presentation": to_value(&presentation), "morphisms": morphisms }),
        checks,
    })
}

pub fn two_rows(n: usize, i: Option<usize>, limit: usize) -> Result<Report> {
    if n == 0 {
        return Err(Error::InvalidTwoRowIndex { n, k: i.unwrap_or(0) });
    }
    if 2 * n > limit {
        return Err(Error::GuardExceeded { m: 2 * n, limit });
    }
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for i in residues(i, 2) {
        let r = two_rows_report(n, i, limit)?;
        let failing = |xs: &[(usize, bool)]| xs.iter().filter(|x| !x.1).map(|x| x.0).collect::<Vec<_>>();
        checks.push(Check::new(
            format!("sign law i={i}"),
            r.sign_law.iter().all(|x| x.1),
            format!("a·Δ = (−1)^k Δ for 0 ≤ k ≤ {n}; failing k: {:?}", failing(&r.sign_law)),
        ));
        checks.push(Check::new(
            format!("unique SSYT i={i}"),
            r.unique_ssyt.iter().all(|x| x.1),
            format!("shape (2n−k,k), weight (n,n); failing k: {:?}", failing(&r.unique_ssyt)),
        ));
        checks.push(Check::new(
            format!("z·f^({i}) generic"),
            r.generic == Some(true),
            format!("in R_({n},{n})({i};2)"),
        ));
        checks.push(Check::new(
            format!("z·f^({i}) generates"),
            r.generates == Some(true),
            format!("in R_({n},{n})({i};2)"),
        ));
        reports.push(to_value(&r));
    }
    Ok(Report {
        command: "two-rows",
        mu: Some(vec![n, n]),
        l: Some(2),
        results: json!({ "reports": reports }),
        checks,
    })
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize, order: u32) -> Vec<Cyclotomic> {
    (0..dim)
        .map(|_| {
            let c = Cyclotomic::from_integer(order, rng.gen_range(-2..=2));
            &c * &Cyclotomic::zeta_pow(order, rng.gen_range(0..order as i64))
        })
        .collect()
}

/// Every check of the library at one (μ, l), m ≤ 5.
fn selftest_case(mu: &Partition, l: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let q = Arc::new(GradedQuotient::new(mu)?);
    let tag = format!("{mu} l={l}");
    let mut checks = Vec::new();
    checks.push(Check::new(
        format!("dimension {tag}"),
        q.dim() as u128 == multinomial(mu),
        format!("dim R_μ = {}", q.dim()),
    ));
    let presentation = verify_presentation(&q, l)?;
    checks.push(Check::new(
        format!("presentation {tag}"),
        presentation.passed(),
        format!(
            "dims {:?}",
            presentation.residues.iter().map(|r| r.dim).collect::<Vec<_>>()
        ),
    ));
    let h = semidirect_h(mu, l)?;
    let order = l as u32;
    let regular = RegularModule { m: mu.size(), order };
    for k in 0..l {
        let z = z_mu(mu, k, l)?;
        let zeta = ZetaCharacter::new(mu, k, l)?;
        let mut semi_invariant = true;
        for g in h.elements() {
            semi_invariant &= regular.act(g, &z) == z.scale(&zeta.value(g)?);
        }
        checks.push(Check::new(
            format!("symmetrizer {tag} k={k}"),
            z.product(&z)? == z && semi_invariant,
            "z² = z and σz = ζ(σ)z on H",
        ));
        let module = SpringerModule::from_quotient(q.clone(), k, l)?;
        let dec = Decomposition::new(&module)?;
        let mut agree = 0;
        let mut samples = vec![random_vector(rng, module.dim(), order)];
        if let Some(block) = dec.blocks().first() {
            // drop one copy of the first shape: never generic
            let mut coords = dec.adapted_coordinates(&samples[0])?;
            let range = dec.block_range(&block.lambda).expect("block present");
            for c in &mut coords[range.start..range.start + block.specht_dim()] {
                *c = Cyclotomic::zero(order);
            }
            samples.push(dec.from_adapted(&coords));
        }
        for v in &samples {
            agree += usize::from(dec.is_generic(v)?.generic == dec.generates(v));
        }
        checks.push(Check::new(
            format!("generic ⇔ generates {tag} k={k}"),
            agree == samples.len(),
            format!("{agree}/{} samples agree", samples.len()),
        ));
        let mut sub = Vec::new();
        let Some(g) = procedure(&dec, k, &mut sub)? else {
            checks.extend(sub);
            continue;
        };
        checks.push(Check::new(
            format!("procedure {tag} k={k}"),
            g.genericity.generic && dec.generates(&g.zf),
            "z·f generic and generating",
        ));
        let r = verify_morphism(&dec, &g.f, MORPHISM_SEED)?;
        let gr = verify_group_ring_model(mu, k, l, MORPHISM_SEED)?;
        checks.push(Check::new(
            format!("isomorphisms {tag} k={k}"),
            r.is_isomorphism() && gr.is_isomorphism() && gr.rank == gr.index,
            format!(
                "index {}, dim R_μ(k;l) = {}, dim K[S_m]z = {}",
                r.index, r.target_dim, gr.target_dim
            ),
        ));
    }
    Ok(checks)
}

pub fn selftest() -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut checks = Vec::new();
    let mut cases = Vec::new();
    for m in 1..=5 {
        for mu in Partition::all(m) {
            for l in (1..=m).filter(|&l| is_l_partition(&mu, l)) {
                checks.extend(selftest_case(&mu, l, &mut rng)?);
                cases.push(json!({ "mu": mu.parts(), "l": l }));
            }
        }
    }
    Ok(Report {
        command: "selftest",
        mu: None,
        l: None,
        results: json!({ "cases": cases }),
        checks,
    })
}
