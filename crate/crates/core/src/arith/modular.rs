//! Prime-field linear algebra used to accelerate exact rank questions.
//!
//! Ranks computed modulo a prime are lower bounds for ranks over Q; callers
//! only draw conclusions that are certified exactly.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest primes below 2^62, in decreasing order.
pub(crate) fn large_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while out.len() < 48 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Arithmetic in Z/pZ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        pow_mod(a, self.p - 2, self.p)
    }

    fn residue(self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        u64::try_from(r).expect("residue below p")
    }

    /// The image of a rational, or `None` when p divides its denominator.
    pub fn reduce(self, r: &Rational) -> Option<u64> {
        if let Some((n, d)) = r.small_parts() {
            let den = (d as i128).rem_euclid(self.p as i128) as u64;
            if den == 0 {
                return None;
            }
            let num = (n as i128).rem_euclid(self.p as i128) as u64;
            return Some(self.mul(num, self.inv(den)));
        }
        let den = self.residue(&r.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.residue(&r.numer()), self.inv(den)))
    }
}

/// Semi-echelon rows over Z/pZ with monic pivots.
#[derive(Clone, Debug)]
pub(crate) struct ModEchelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(field: PrimeField) -> Self {
        ModEchelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }

    /// Pivot columns of the reduced row echelon form of the span, and the
    /// kernel vector φ (Uφ = 0 for every stored row U) that has a 1 at the
    /// first non-pivot column and zeros at the other non-pivot columns.
    /// `None` when the rows span everything.
    pub fn first_annihilator(&self, len: usize) -> Option<(Vec<usize>, Vec<u64>)> {
        let f = self.field;
        let mut rows: Vec<(usize, Vec<u64>)> = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        // back substitution to reduced form
        for i in (0..rows.len()).rev() {
            let (pi, ri) = (rows[i].0, rows[i].1.clone());
            for row in rows.iter_mut().take(i) {
                let c = row.1[pi];
                if c != 0 {
                    for (x, &y) in row.1.iter_mut().zip(&ri) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(c, y));
                        }
                    }
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let free = (0..len).find(|c| !pivots.contains(c))?;
        let mut phi = vec![0u64; len];
        phi[free] = 1;
        for (p, row) in &rows {
            phi[*p] = f.sub(0, row[free]);
        }
        Some((pivots, phi))
    }
}

/// Residues combined by the Chinese remainder theorem.
#[derive(Clone, Debug)]
pub(crate) struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(p: u64, residues: &[u64]) -> Self {
        CrtVector {
            modulus: BigInt::from(p),
            values: residues.iter().map(|&r| BigInt::from(r)).collect(),
        }
    }

    pub fn absorb(&mut self, p: u64, residues: &[u64]) {
        let pb = BigInt::from(p);
        let m_inv = {
            let field = PrimeField::new(p);
            let m_mod = field.residue(&self.modulus);
            BigInt::from(field.inv(m_mod))
        };
        for (x, &r) in self.values.iter_mut().zip(residues) {
            // x' ≡ x (mod M), x' ≡ r (mod p)
            let t = ((BigInt::from(r) - &*x) * &m_inv).mod_floor(&pb);
            *x += &self.modulus * t;
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every entry, when all succeed.
    pub fn reconstruct(&self) -> Option<Vec<Rational>> {
        self.values
            .iter()
            .map(|x| rational_reconstruction(x, &self.modulus))
            .collect()
    }
}

/// The fraction a/b with |a|, b ≤ sqrt(M/2) and a ≡ x·b (mod M), if any.
pub(crate) fn rational_reconstruction(x: &BigInt, modulus: &BigInt) -> Option<Rational> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::from_bigints(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64((1u64 << 62) - 1));
        let ps = large_primes();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        // trial division on the smallest candidate's neighbourhood is too slow;
        // cross-check a smaller range instead
        let small: Vec<u64> = (2..200).filter(|&n| is_prime_u64(n)).collect();
        let naive: Vec<u64> = (2..200u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        assert_eq!(small, naive);
    }

    #[test]
    fn reconstructs_fractions() {
        let ps = large_primes();
        let values = [
            Rational::new(-22, 7),
            Rational::new(355, 113),
            Rational::zero(),
            Rational::from_integer(5),
        ];
        let residues = |p: u64| -> Vec<u64> { values.iter().map(|r| PrimeField::new(p).reduce(r).unwrap()).collect() };
        let mut crt = CrtVector::new(ps[0], &residues(ps[0]));
        crt.absorb(ps[1], &residues(ps[1]));
        assert_eq!(crt.reconstruct().unwrap(), values.to_vec());
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let f = PrimeField::new(101);
        let mut e = ModEchelon::new(f);
        assert!(e.insert(vec![1, 2, 3, 4]));
        assert!(e.insert(vec![0, 1, 1, 1]));
        assert!(!e.insert(vec![1, 3, 4, 5]));
        let (pivots, phi) = e.first_annihilator(4).unwrap();
        assert_eq!(pivots, vec![0, 1]);
        for row in [[1u64, 2, 3, 4], [0, 1, 1, 1]] {
            let dot = row.iter().zip(&phi).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert_eq!(dot, 0);
        }
    }
}
