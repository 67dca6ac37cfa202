//! Irreducible characters of S_m by the Murnaghan–Nakayama rule.

use std::collections::BTreeMap;

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{class_size, ClassFunction};
use crate::tableaux::Partition;

/// χ_λ at the class of cycle type `class`.
pub fn mn_character(lambda: &Partition, class: &Partition) -> Result<i64> {
    if lambda.size() != class.size() {
        return Err(Error::DimensionMismatch(format!(
            "character of a partition of {} at a class of S_{}",
            lambda.size(),
            class.size()
        )));
    }
    let n = lambda.len();
    // beta set: λ_i + (n − i), strictly decreasing
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + n - 1 - i).collect();
    let mut memo = BTreeMap::new();
    Ok(mn_rec(&beta, class.parts(), &mut memo))
}

fn mn_rec(beta: &[usize], cycles: &[usize], memo: &mut BTreeMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // the leg length counts beads jumped over
        let height = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.to_vec();
        next[i] = b - r;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// f_λ = χ_λ(1^m), the dimension of the Specht module.
pub fn specht_dimension(lambda: &Partition) -> usize {
    let ones = Partition::new(vec![1; lambda.size()]).expect("valid partition");
    mn_character(lambda, &ones).expect("same size") as usize
}

/// ⟨χ_λ, χ⟩ = (1/m!) Σ_classes |C| χ_λ(C) χ(C)^* for a class function with
/// rational values; errors if the result is not a non-negative integer.
pub fn multiplicity_in(lambda: &Partition, chi: &ClassFunction) -> Result<usize> {
    let m = chi.degree();
    let mut acc = Rational::zero();
    let mut total: u128 = 0;
    for (class, value) in chi.values() {
        let v = value
            .as_rational()
            .ok_or_else(|| Error::Internal(format!("character value {value} at {class} is not rational")))?;
        let size = class_size(class);
        total += size;
        acc += &(&Rational::from(size as i64 * mn_character(lambda, class)?) * v);
    }
    let mult = &acc / &Rational::from(total as i64);
    if total != (1..=m as u128).product::<u128>() {
        return Err(Error::Internal("class sizes do not sum to m!".into()));
    }
    match mult.to_i64() {
        Some(d) if d >= 0 && mult.is_integer() => Ok(d as usize),
        _ => Err(Error::Internal(format!("multiplicity of {lambda} is {mult}"))),
    }
}

/// The irreducible character χ_λ as a class function over Q(ζ_order).
pub fn irreducible_character(lambda: &Partition, order: u32) -> Result<ClassFunction> {
    let m = lambda.size();
    let values = Partition::all(m)
        .into_iter()
        .map(|c| {
            let v = mn_character(lambda, &c)?;
            Ok((c, Cyclotomic::from_integer(order, v)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    ClassFunction::new(m, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;
    use crate::tableaux::enumerate_standard;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn spec_values() {
        assert_eq!(mn_character(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(mn_character(&p(&[2, 1]), &p(&[2])).is_err());
        for m in 1..=6 {
            for c in Partition::all(m) {
                assert_eq!(mn_character(&p(&[m]), &c).unwrap(), 1);
            }
        }
    }

    #[test]
    fn degrees_and_sign() {
        for m in 1..=7 {
            for lam in Partition::all(m) {
                assert_eq!(specht_dimension(&lam), enumerate_standard(&lam).len());
                // tensoring with the sign character conjugates the shape
                for c in Partition::all(m) {
                    let sign = Permutation::class_representative(&c).sign();
                    assert_eq!(
                        mn_character(&lam.conjugate(), &c).unwrap(),
                        sign * mn_character(&lam, &c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn orthogonality() {
        for m in 1..=6 {
            let parts = Partition::all(m);
            for a in &parts {
                let chi = irreducible_character(a, 1).unwrap();
                for b in &parts {
                    assert_eq!(multiplicity_in(b, &chi).unwrap(), usize::from(a == b));
                }
            }
        }
    }
}
