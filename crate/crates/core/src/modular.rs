//! Residue arithmetic in `Z_m` on plain coordinate vectors.

use crate::error::{Error, Result};

/// Largest supported modulus; keeps every product of two residues below 2^62.
pub const MAX_MODULUS: u32 = 1 << 30;

pub fn is_prime(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= m as u64 {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(m: u32) -> Result<()> {
    if is_prime(m) {
        Ok(())
    } else {
        Err(Error::UnsupportedModulus(m))
    }
}

#[inline]
pub fn reduce(v: i64, m: u32) -> u32 {
    v.rem_euclid(m as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 + b as u64) % m as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 + m as u64 - b as u64) % m as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 * b as u64) % m as u64) as u32
}

#[inline]
pub fn neg(a: u32, m: u32) -> u32 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Inverse modulo a prime `p`, by Fermat.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub fn vadd(a: &[u32], b: &[u32], m: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| add(x, y, m)).collect()
}

pub fn vsub(a: &[u32], b: &[u32], m: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| sub(x, y, m)).collect()
}

pub fn vneg(a: &[u32], m: u32) -> Vec<u32> {
    a.iter().map(|&x| neg(x, m)).collect()
}

pub fn vscale(c: u32, a: &[u32], m: u32) -> Vec<u32> {
    a.iter().map(|&x| mul(c, x, m)).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [u32], c: u32, v: &[u32], m: u32) {
    if c == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = ((*a as u64 + c as u64 * x as u64) % m as u64) as u32;
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Odometer over all vectors of `Z_m^len`, coordinate 0 varying fastest.
#[derive(Debug, Clone)]
pub struct Counter {
    current: Vec<u32>,
    modulus: u32,
    done: bool,
}

impl Counter {
    pub fn new(len: usize, modulus: u32) -> Self {
        Counter {
            current: vec![0; len],
            modulus,
            done: false,
        }
    }
}

impl Iterator for Counter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut carry = true;
        for c in self.current.iter_mut() {
            *c += 1;
            if *c == self.modulus {
                *c = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            self.done = true;
        }
        Some(out)
    }
}

/// All `Z_m`-combinations of `generators`, in counter order over the coefficients.
pub fn span_elements(generators: &[Vec<u32>], width: usize, m: u32) -> Vec<Vec<u32>> {
    Counter::new(generators.len(), m)
        .map(|coeffs| {
            let mut v = vec![0; width];
            for (c, g) in coeffs.iter().zip(generators) {
                axpy(&mut v, *c, g, m);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&m| is_prime(m)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverses_mod_seven() {
        for a in 1..7 {
            assert_eq!(mul(a, inv(a, 7), 7), 1);
        }
    }

    #[test]
    fn counter_visits_everything_once() {
        let all: Vec<_> = Counter::new(3, 3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[1], vec![1, 0, 0]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 27);
    }

    #[test]
    fn empty_counter_yields_the_empty_vector() {
        assert_eq!(Counter::new(0, 5).count(), 1);
    }

    #[test]
    fn reduce_negative() {
        assert_eq!(reduce(-63, 5), 2);
        assert_eq!(reduce(-14, 5), 1);
    }
}
