//! Reduction of `Z[beta]` to a prime field, for rank lower bounds.
//!
//! A ring map `Z[beta] -> F_p` sends every minor to its residue, so the rank of
//! a reduced matrix never exceeds the rank of the original. Equality with an
//! a-priori upper bound therefore certifies an exact rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::echelon::{Zq, ZqRing};

/// `Z[beta] -> F_p`, `beta -> root`. Primes stay below `2^31` so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP {
    pub p: u64,
    root: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Tonelli-Shanks; `n` must be a non-zero square mod the odd prime `p`.
fn sqrt_mod(n: u64, p: u64) -> u64 {
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).unwrap();
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(n, q, p), pow_mod(n, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl ModP {
    /// Largest prime `p < 2^31` over which the minimal polynomial of `beta` has a
    /// simple root.
    pub fn for_ring(ring: &ZqRing) -> ModP {
        let (m1, m0) = ring.relation();
        let mut p = (1u64 << 31) - 1;
        loop {
            p -= 1;
            if !is_prime(p) {
                continue;
            }
            if ring.is_rational() {
                return ModP { p, root: 0 };
            }
            // beta^2 - m1 beta - m0: discriminant m1^2 + 4 m0
            let (a1, a0) = (residue(m1, p), residue(m0, p));
            let disc = (a1 * a1 + 4 * a0) % p;
            if disc == 0 || pow_mod(disc, (p - 1) / 2, p) != 1 {
                continue;
            }
            let s = sqrt_mod(disc, p);
            let root = (a1 + s) % p * ModP::inverse_in(2, p) % p;
            return ModP { p, root };
        }
    }

    fn inverse_in(x: u64, p: u64) -> u64 {
        pow_mod(x, p - 2, p)
    }

    pub fn inv(&self, x: u64) -> u64 {
        Self::inverse_in(x, self.p)
    }

    pub fn reduce(&self, z: &Zq) -> u64 {
        let a = residue(&z.a, self.p);
        if self.root == 0 {
            return a;
        }
        (a + residue(&z.b, self.p) * self.root) % self.p
    }
}

/// Incremental row echelon form over `F_p`, rank only.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    f: ModP,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl ModEchelon {
    pub fn new(f: ModP, ncols: usize) -> Self {
        ModEchelon { f, pivots: vec![None; ncols], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entries must already be reduced mod `p`.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.f.p;
        for c in 0..v.len() {
            if v[c] == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(row) => {
                    let k = p - v[c];
                    for j in c..v.len() {
                        if row[j] != 0 {
                            v[j] = (v[j] + k * row[j]) % p;
                        }
                    }
                }
                None => {
                    let inv = self.f.inv(v[c]);
                    for x in v[c..].iter_mut() {
                        *x = *x * inv % p;
                    }
                    self.pivots[c] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}
