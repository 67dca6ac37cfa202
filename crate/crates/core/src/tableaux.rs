//! Partitions, numberings, standard and semi-standard tableaux.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `m`: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// n(λ) = Σ (i-1) λ_i, the degree of a Specht polynomial of this shape.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Row index (0-based) of each cell of the row-reading numbering:
    /// `row_of[i]` is the row of number `i + 1`.
    pub fn row_of_numbers(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| std::iter::repeat(r).take(p))
            .collect()
    }

    /// First number in each row of the row-reading numbering, minus one.
    pub fn row_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&p| {
                let o = acc;
                acc += p;
                o
            })
            .collect()
    }

    /// Multiplicity of each part size, as (size, count) in decreasing size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((s, c)) if *s == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All partitions of `m`, in decreasing lexicographic order.
    pub fn all(m: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Is `(i, j)` (0-based) a cell of the diagram?
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.parts.get(i).is_some_and(|&p| j < p)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses comma-separated parts, optionally wrapped in parentheses: `2,2,1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Err(Error::InvalidPartition(format!("`{s}` is empty")));
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("`{s}`: bad part `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// True iff every part multiplicity of `mu` is divisible by `l`.
pub fn is_l_partition(mu: &Partition, l: usize) -> bool {
    l >= 1 && mu.multiplicities().iter().all(|&(_, c)| c % l == 0)
}

/// A filling of a Young diagram by positive integers, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape =
            Partition::new(rows.iter().map(Vec::len).collect()).map_err(|e| Error::InvalidTableau(e.to_string()))?;
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::InvalidTableau("entries must be positive".into()));
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i][j]
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entries of column `j`, top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|j| self.column(j)).collect()
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Bijective onto {1, …, m}.
    pub fn is_numbering(&self) -> bool {
        let m = self.size();
        let mut seen = vec![false; m + 1];
        for &x in self.rows.iter().flatten() {
            if x > m || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Rows weakly increasing, columns strictly increasing.
    fn is_column_strict(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
        rows_ok && cols_ok
    }

    pub fn is_standard(&self) -> bool {
        self.is_numbering() && self.is_column_strict()
    }

    pub fn weight(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut w = vec![0; max];
        for &x in self.rows.iter().flatten() {
            w[x - 1] += 1;
        }
        w
    }

    pub fn is_semistandard_with_weight(&self, weight: &[usize]) -> bool {
        if !self.is_column_strict() {
            return false;
        }
        let mut w = self.weight();
        let mut expected = weight.to_vec();
        while w.last() == Some(&0) {
            w.pop();
        }
        while expected.last() == Some(&0) {
            expected.pop();
        }
        w == expected
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        f.write_str("]")
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        Tableau::new(rows).map_err(serde::de::Error::custom)
    }
}

/// t_μ: 1..m written left to right along the rows, top row first.
pub fn row_reading_numbering(mu: &Partition) -> Tableau {
    let mut next = 0;
    let rows = mu
        .parts()
        .iter()
        .map(|&p| {
            let row = (next + 1..=next + p).collect();
            next += p;
            row
        })
        .collect();
    Tableau {
        shape: mu.clone(),
        rows,
    }
}

/// All standard tableaux of shape `lambda`, sorted by reading word.
pub fn enumerate_standard(lambda: &Partition) -> Vec<Tableau> {
    let mut out = enumerate_semistandard(
        lambda,
        &Partition {
            parts: vec![1; lambda.size()],
        },
    );
    out.sort_by(|a, b| a.reading_word().cmp(&b.reading_word()));
    out
}

/// All semi-standard tableaux of shape `lambda` and weight `weight`, sorted by
/// reading word. Entry `v` occupies a horizontal strip of `weight[v-1]` cells.
pub fn enumerate_semistandard(lambda: &Partition, weight: &Partition) -> Vec<Tableau> {
    if lambda.size() != weight.size() {
        return Vec::new();
    }
    let nrows = lambda.len();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    let mut out = Vec::new();

    // Add `count` copies of `value` as a horizontal strip, distributing them
    // over rows starting at `row`.
    fn strip(
        lambda: &Partition,
        weight: &Partition,
        value: usize,
        row: usize,
        count: usize,
        rows: &mut Vec<Vec<usize>>,
        base: &[usize],
        out: &mut Vec<Tableau>,
    ) {
        if count == 0 {
            if value == weight.len() {
                out.push(Tableau {
                    shape: lambda.clone(),
                    rows: rows.clone(),
                });
            } else {
                let base: Vec<usize> = rows.iter().map(Vec::len).collect();
                strip(lambda, weight, value + 1, 0, weight.parts()[value], rows, &base, out);
            }
            return;
        }
        if row == lambda.len() {
            return;
        }
        let cur = base[row];
        // horizontal strip: cells in this row must lie below the previous
        // shape of the row above
        let limit_above = if row == 0 { usize::MAX } else { base[row - 1] };
        let max_here = lambda.parts()[row].min(limit_above).saturating_sub(cur).min(count);
        for take in (0..=max_here).rev() {
            rows[row].extend(std::iter::repeat(value).take(take));
            strip(lambda, weight, value, row + 1, count - take, rows, base, out);
            let new_len = rows[row].len() - take;
            rows[row].truncate(new_len);
        }
    }

    if weight.is_empty() {
        return vec![Tableau {
            shape: lambda.clone(),
            rows,
        }];
    }
    let base = vec![0; nrows];
    strip(lambda, weight, 1, 0, weight.parts()[0], &mut rows, &base, &mut out);
    out.retain(|t| t.is_semistandard_with_weight(weight.parts()));
    out.sort_by(|a, b| a.reading_word().cmp(&b.reading_word()));
    out
}

/// ν_μ ∘ Q: each entry i replaced by the (1-based) row of i in t_μ.
pub fn nu_compose(q: &Tableau, mu: &Partition) -> Result<Tableau> {
    if q.size() != mu.size() || !q.is_numbering() {
        return Err(Error::InvalidTableau(format!(
            "{q} is not a numbering of size {}",
            mu.size()
        )));
    }
    let row_of = mu.row_of_numbers();
    let rows = q
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| row_of[x - 1] + 1).collect())
        .collect();
    Ok(Tableau {
        shape: q.shape.clone(),
        rows,
    })
}

/// The standard tableau Q with ν_μ ∘ Q = T: the cells of T holding v receive
/// the numbers of row v of t_μ, increasing from left to right.
pub fn standardize(t: &Tableau, mu: &Partition) -> Result<Tableau> {
    if !t.is_semistandard_with_weight(mu.parts()) {
        return Err(Error::InvalidTableau(format!(
            "{t} is not semi-standard with weight {mu}"
        )));
    }
    let offsets = mu.row_offsets();
    let mut cells: Vec<(usize, usize, usize)> = Vec::new(); // (value, col, row)
    for (i, r) in t.rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            cells.push((v, j, i));
        }
    }
    cells.sort_unstable();
    let mut rows: Vec<Vec<usize>> = t.rows.iter().map(|r| vec![0; r.len()]).collect();
    let mut counter = vec![0usize; mu.len()];
    for (v, j, i) in cells {
        counter[v - 1] += 1;
        rows[i][j] = offsets[v - 1] + counter[v - 1];
    }
    let q = Tableau {
        shape: t.shape.clone(),
        rows,
    };
    if !q.is_standard() || nu_compose(&q, mu)? != *t {
        return Err(Error::Internal(format!("standardization of {t} failed its post-check")));
    }
    Ok(q)
}

/// t′_{(2n-k,k)}: second row n+1..n+k, first row the remaining numbers.
pub fn two_row_tableau(n: usize, k: usize) -> Result<Tableau> {
    if k > n {
        return Err(Error::InvalidTwoRowIndex { n, k });
    }
    let second: Vec<usize> = (n + 1..=n + k).collect();
    let first: Vec<usize> = (1..=2 * n).filter(|x| !second.contains(x)).collect();
    let rows = if k == 0 { vec![first] } else { vec![first, second] };
    let t = Tableau::new(rows)?;
    if !t.is_standard() {
        return Err(Error::Internal(format!("{t} is not standard")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// m! / Π hook lengths.
    fn hook_count(lambda: &Partition) -> usize {
        let conj = lambda.conjugate();
        let mut prod: u128 = 1;
        for (i, &row) in lambda.parts().iter().enumerate() {
            for j in 0..row {
                prod *= (row - j + conj.parts()[j] - i - 1) as u128;
            }
        }
        let fact: u128 = (1..=lambda.size() as u128).product();
        (fact / prod) as usize
    }

    /// Every filling of λ by a multiset, checked against the SSYT conditions.
    fn brute_force_kostka(lambda: &Partition, weight: &Partition) -> usize {
        let mut entries: Vec<usize> = Vec::new();
        for (v, &c) in weight.parts().iter().enumerate() {
            entries.extend(std::iter::repeat(v + 1).take(c));
        }
        let mut count = 0;
        let mut perm = entries.clone();
        perm.sort();
        loop {
            let mut it = perm.iter().copied();
            let rows: Vec<Vec<usize>> = lambda
                .parts()
                .iter()
                .map(|&len| (0..len).map(|_| it.next().unwrap()).collect())
                .collect();
            if Tableau::new(rows).unwrap().is_semistandard_with_weight(weight.parts()) {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        count
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn partition_validation_and_parsing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("2,2,1".parse::<Partition>().unwrap(), p(&[2, 2, 1]));
        assert_eq!("(3, 1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("2,x".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::all(5).len(), 7);
    }

    #[test]
    fn l_partitions() {
        assert!(is_l_partition(&p(&[1, 1, 1]), 3));
        assert!(is_l_partition(&p(&[2, 2, 1, 1]), 2));
        assert!(!is_l_partition(&p(&[2, 1]), 2));
        assert!(is_l_partition(&p(&[2, 1]), 1));
    }

    #[test]
    fn row_reading() {
        assert_eq!(row_reading_numbering(&p(&[2, 2, 1])), t(&[&[1, 2], &[3, 4], &[5]]));
        assert_eq!(row_reading_numbering(&p(&[3])), t(&[&[1, 2, 3]]));
        assert_eq!(row_reading_numbering(&p(&[1, 1, 1])), t(&[&[1], &[2], &[3]]));
        for m in 1..=6 {
            for mu in Partition::all(m) {
                assert!(row_reading_numbering(&mu).is_standard());
            }
        }
    }

    #[test]
    fn standard_enumeration() {
        assert_eq!(
            enumerate_standard(&p(&[2, 1])),
            vec![t(&[&[1, 2], &[3]]), t(&[&[1, 3], &[2]])]
        );
        assert_eq!(enumerate_standard(&p(&[4])).len(), 1);
        assert_eq!(enumerate_standard(&p(&[2, 2])).len(), 2);
        for m in 1..=6 {
            for lambda in Partition::all(m) {
                let syt = enumerate_standard(&lambda);
                assert_eq!(syt.len(), hook_count(&lambda), "{lambda}");
                assert!(syt.iter().all(Tableau::is_standard));
            }
        }
    }

    #[test]
    fn semistandard_enumeration() {
        assert_eq!(enumerate_semistandard(&p(&[2, 1]), &p(&[1, 1, 1])).len(), 2);
        assert_eq!(enumerate_semistandard(&p(&[1, 1, 1]), &p(&[2, 1])).len(), 0);
        for n in 1..=4 {
            for k in 0..=n {
                let ss = enumerate_semistandard(&p(&[2 * n - k, k][..if k == 0 { 1 } else { 2 }]), &p(&[n, n]));
                assert_eq!(ss.len(), 1, "n={n} k={k}");
            }
        }
        for m in 1..=5 {
            for lambda in Partition::all(m) {
                for mu in Partition::all(m) {
                    assert_eq!(
                        enumerate_semistandard(&lambda, &mu).len(),
                        brute_force_kostka(&lambda, &mu),
                        "{lambda} {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn nu_composition() {
        let mu = p(&[2, 1]);
        assert_eq!(nu_compose(&t(&[&[1, 2], &[3]]), &mu).unwrap(), t(&[&[1, 1], &[2]]));
        assert_eq!(nu_compose(&t(&[&[1, 3], &[2]]), &mu).unwrap(), t(&[&[1, 2], &[1]]));
        for mu in Partition::all(5) {
            let tm = row_reading_numbering(&mu);
            let nu = nu_compose(&tm, &mu).unwrap();
            for (i, r) in nu.rows().iter().enumerate() {
                assert!(r.iter().all(|&x| x == i + 1));
            }
        }
    }

    #[test]
    fn standardization() {
        let q = standardize(&t(&[&[1, 1], &[2]]), &p(&[2, 1])).unwrap();
        assert_eq!(q, t(&[&[1, 2], &[3]]));
        assert!(standardize(&t(&[&[1, 2], &[2]]), &p(&[2, 1])).is_err());
        // [1,2,3]/[4] is another standard preimage; equal entries are numbered
        // left to right, which yields t'_(3,1)
        let q = standardize(&t(&[&[1, 1, 2], &[2]]), &p(&[2, 2])).unwrap();
        assert_eq!(q, t(&[&[1, 2, 4], &[3]]));
        assert_eq!(
            nu_compose(&t(&[&[1, 2, 3], &[4]]), &p(&[2, 2])).unwrap(),
            t(&[&[1, 1, 2], &[2]])
        );
        // brute force: the standardization is the unique standard preimage
        for m in 1..=5 {
            for lambda in Partition::all(m) {
                for mu in Partition::all(m) {
                    for ss in enumerate_semistandard(&lambda, &mu) {
                        let q = standardize(&ss, &mu).unwrap();
                        let preimages: Vec<Tableau> = enumerate_standard(&lambda)
                            .into_iter()
                            .filter(|s| nu_compose(s, &mu).unwrap() == ss)
                            .collect();
                        assert!(preimages.contains(&q));
                        assert_eq!(standardize(&nu_compose(&q, &mu).unwrap(), &mu).unwrap(), q);
                    }
                }
            }
        }
    }

    #[test]
    fn two_row_tableaux() {
        assert_eq!(two_row_tableau(2, 1).unwrap(), t(&[&[1, 2, 4], &[3]]));
        assert_eq!(two_row_tableau(2, 0).unwrap(), t(&[&[1, 2, 3, 4]]));
        assert_eq!(two_row_tableau(3, 2).unwrap(), t(&[&[1, 2, 3, 6], &[4, 5]]));
        assert!(two_row_tableau(2, 3).is_err());
        for n in 1..=4 {
            let mu = p(&[n, n]);
            for k in 0..=n {
                let shape = two_row_tableau(n, k).unwrap().shape().clone();
                let ss = enumerate_semistandard(&shape, &mu);
                assert_eq!(ss.len(), 1);
                assert_eq!(standardize(&ss[0], &mu).unwrap(), two_row_tableau(n, k).unwrap());
            }
        }
    }

    #[test]
    fn tableau_text_form() {
        let q = t(&[&[1, 2], &[3]]);
        assert_eq!(q.to_string(), "[[1,2],[3]]");
    }
}
