//! Kernel computation modulo word-sized primes with rational
//! reconstruction. Every result is certified over the rationals before it is
//! returned; the fraction-free path is the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{QMatrix, Rat};

use super::NullspaceBasis;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, largest first.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn reduce(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let to_u = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits");
    let d = to_u(r.denom());
    (d != 0).then(|| mul_mod(to_u(r.numer()), inv_mod(d, p), p))
}

/// Incremental late-pivot row reduction modulo a prime.
pub(crate) struct ModReducer {
    p: u64,
    cols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModReducer {
    pub(crate) fn new(cols: usize) -> Self {
        Self::with_prime(cols, primes(1)[0])
    }

    fn with_prime(cols: usize, p: u64) -> Self {
        ModReducer { p, cols, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add a row; `None` if a denominator vanishes modulo the prime.
    pub(crate) fn insert(&mut self, row: &[Rat]) -> Option<bool> {
        let p = self.p;
        let mut row = row.iter().map(|x| reduce(x, p)).collect::<Option<Vec<u64>>>()?;
        for (pc, r) in &self.rows {
            let f = row[*pc];
            if f != 0 {
                let nf = p - f;
                for (x, y) in row.iter_mut().zip(r) {
                    if *y != 0 {
                        *x = (*x + mul_mod(nf, *y, p)) % p;
                    }
                }
            }
        }
        let Some(pc) = (0..self.cols).rev().find(|&c| row[c] != 0) else { return Some(false) };
        let inv = inv_mod(row[pc], p);
        for x in row.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for (_, r) in self.rows.iter_mut() {
            let f = r[pc];
            if f != 0 {
                let nf = p - f;
                for (x, y) in r.iter_mut().zip(&row) {
                    if *y != 0 {
                        *x = (*x + mul_mod(nf, *y, p)) % p;
                    }
                }
            }
        }
        self.rows.push((pc, row));
        Some(true)
    }

    fn kernel(&self) -> (Vec<usize>, Vec<Vec<u64>>) {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.rows.iter().any(|(pc, _)| pc == c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (pc, r) in &self.rows {
                    v[*pc] = (self.p - r[f]) % self.p;
                }
                v
            })
            .collect();
        (free, vectors)
    }
}

/// Late-pivot kernel modulo `p`: free columns and one vector per free column.
fn kernel_mod(m: &QMatrix, p: u64) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let mut red = ModReducer::with_prime(m.cols(), p);
    for i in 0..m.rows() {
        if red.rank() == m.cols() {
            break;
        }
        red.insert(m.row(i))?;
    }
    Some(red.kernel())
}

/// Smallest `n/d` with `n = a d (mod m)` and `|n|, d <= sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let r = Rat::new(r1, t1);
    (r.numer() - a * r.denom()).mod_floor(m).is_zero().then_some(r)
}

fn certify(m: &QMatrix, vectors: &[Vec<Rat>]) -> bool {
    vectors.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero))
}

/// Exact kernel of `m` with the same normalization as [`QMatrix::nullspace`]:
/// free parameters are the earliest columns, each vector has a one at its
/// free column and zeros at the others.
pub fn nullspace_exact(m: &QMatrix) -> NullspaceBasis<Rat> {
    let cols = m.cols();
    let mut modulus = BigInt::one();
    let mut acc: Option<(Vec<usize>, Vec<Vec<BigInt>>)> = None;
    for p in primes(6) {
        let Some((free, vecs)) = kernel_mod(m, p) else { continue };
        let pb = BigInt::from(p);
        acc = match acc.take() {
            // this prime lost rank; keep the earlier residues
            Some((f0, v0)) if f0.len() < free.len() => Some((f0, v0)),
            Some((f0, v0)) if f0 == free => {
                let inv = BigInt::from(inv_mod((&modulus % &pb).to_u64().expect("residue fits"), p));
                let combined = v0
                    .iter()
                    .zip(&vecs)
                    .map(|(a, b)| {
                        a.iter()
                            .zip(b)
                            .map(|(x, y)| {
                                let t = ((BigInt::from(*y) - x) * &inv).mod_floor(&pb);
                                x + &modulus * t
                            })
                            .collect()
                    })
                    .collect();
                modulus *= &pb;
                Some((free, combined))
            }
            _ => {
                modulus = pb;
                Some((free, vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()))
            }
        };
        let Some((free, residues)) = &acc else { continue };
        let candidate: Option<Vec<Vec<Rat>>> =
            residues.iter().map(|v| v.iter().map(|x| reconstruct(x, &modulus)).collect()).collect();
        if let Some(vectors) = candidate {
            if certify(m, &vectors) {
                // Each vector starts at its own free column and vanishes at
                // the other free columns: this is already the canonical basis.
                return NullspaceBasis { vectors, rank: cols - free.len(), free: free.clone() };
            }
        }
    }
    m.nullspace()
}

/// Exact rank, certified through the kernel.
pub fn rank_exact(m: &QMatrix) -> usize {
    m.cols() - nullspace_exact(m).vectors.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        let cols = rows[0].len();
        QMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect())
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes(3);
        assert!(ps.iter().all(|&p| p < 1 << 62 && is_prime(p)));
        assert!(!is_prime(1 << 61));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(primes(1)[0]);
        for (n, d) in [(3i64, 7i64), (-22, 9), (0, 1), (1, 1_000_003)] {
            let r = Rat::new(n.into(), d.into());
            let a = BigInt::from(reduce(&r, primes(1)[0]).unwrap());
            assert_eq!(reconstruct(&a, &m), Some(r));
        }
    }

    #[test]
    fn agrees_with_fraction_free() {
        let a = q(&[&[1, 2, 0, 3, 5], &[2, 4, 1, 1, 0], &[3, 6, 1, 4, 5], &[0, 0, 5, 1, -7]]);
        assert_eq!(nullspace_exact(&a), a.nullspace());
        let z = QMatrix::zeros(2, 3);
        assert_eq!(nullspace_exact(&z), z.nullspace());
        assert_eq!(rank_exact(&QMatrix::identity(3)), 3);
    }
}
