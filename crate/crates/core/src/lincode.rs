//! Small linear codes over F_q held by an independent generator, with
//! exhaustive enumeration for the brute-force minimality oracles.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::FqArith;
use crate::linalg::{Arith, PrimeField, Rref};
use crate::par::{self, Exec};

/// A linear code with messages indexed by base-q digit vectors (digit i
/// multiplies generator row i).
#[derive(Clone, Debug)]
pub struct LinearCode {
    q: u32,
    len: usize,
    gen: Vec<Vec<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    /// Indices into the input rows that were kept.
    kept: Vec<usize>,
}

/// Codeword caps for [`EnumeratedCode`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    /// Maximum number of codewords q^k.
    pub max_codewords: u64,
    /// Maximum estimated inner-loop operations for any single method.
    pub max_work: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_codewords: 1 << 22,
            max_work: 1 << 36,
        }
    }
}

impl LinearCode {
    /// Keeps the rows that are independent of their predecessors.
    pub fn from_rows<A: Arith + Copy + QSize>(arith: A, rows: Vec<Vec<u32>>) -> Self {
        let q = arith.q_size();
        let len = rows.first().map_or(0, Vec::len);
        let mut rref = Rref::new(arith, len);
        let mut gen = Vec::new();
        let mut kept = Vec::new();
        for (i, r) in rows.into_iter().enumerate() {
            if rref.insert(r.clone()) {
                gen.push(r);
                kept.push(i);
            }
        }
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = arith.add(a, b);
                mul[(a * q + b) as usize] = arith.mul(a, b);
            }
        }
        LinearCode {
            q,
            len,
            gen,
            add,
            mul,
            kept,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }

    /// Which input rows form the generator.
    pub fn kept_rows(&self) -> &[usize] {
        &self.kept
    }

    pub fn message_count(&self) -> u64 {
        (self.q as u64).pow(self.dim() as u32)
    }

    fn fadd(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    fn fmul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn digits(&self, msg: u64) -> Vec<u32> {
        let mut m = msg;
        (0..self.dim())
            .map(|_| {
                let d = (m % self.q as u64) as u32;
                m /= self.q as u64;
                d
            })
            .collect()
    }

    pub fn index(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.q as u64 + d as u64)
    }

    pub fn codeword(&self, msg: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.len];
        for (d, row) in self.digits(msg).into_iter().zip(&self.gen) {
            if d == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = self.fadd(*o, self.fmul(d, r));
            }
        }
        out
    }

    /// Message of m1 + a·m2.
    pub fn combine(&self, m1: u64, a: u32, m2: u64) -> u64 {
        let d1 = self.digits(m1);
        let d2 = self.digits(m2);
        let s: Vec<u32> = d1
            .iter()
            .zip(&d2)
            .map(|(&x, &y)| self.fadd(x, self.fmul(a, y)))
            .collect();
        self.index(&s)
    }

    /// One message per projective class: the lowest nonzero digit is 1.
    pub fn projective_reps(&self) -> Vec<u64> {
        (1..self.message_count())
            .filter(|&m| self.digits(m).into_iter().find(|&d| d != 0) == Some(1))
            .collect()
    }

    pub fn enumerate(&self, exec: Exec, guard: Guard) -> Result<EnumeratedCode<'_>> {
        let n = self.message_count();
        if n > guard.max_codewords {
            return Err(Error::GuardExceeded(format!(
                "{n} codewords exceed the cap of {}",
                guard.max_codewords
            )));
        }
        if n * self.len as u64 > guard.max_work {
            return Err(Error::GuardExceeded("codeword table too large".into()));
        }
        let supports = par::map_range(exec, n as usize, |m| {
            let mut bs = FixedBitSet::with_capacity(self.len);
            for (i, c) in self.codeword(m as u64).into_iter().enumerate() {
                if c != 0 {
                    bs.insert(i);
                }
            }
            bs
        });
        let weights = supports.iter().map(|b| b.count_ones(..) as u64).collect();
        Ok(EnumeratedCode {
            code: self,
            supports,
            weights,
            exec,
            guard,
        })
    }
}

/// Field size of an arithmetic.
pub trait QSize {
    fn q_size(&self) -> u32;
}

impl QSize for FqArith<'_> {
    fn q_size(&self) -> u32 {
        self.q()
    }
}

impl QSize for PrimeField {
    fn q_size(&self) -> u32 {
        self.0
    }
}

/// All supports and weights of a [`LinearCode`].
pub struct EnumeratedCode<'c> {
    code: &'c LinearCode,
    supports: Vec<FixedBitSet>,
    weights: Vec<u64>,
    exec: Exec,
    guard: Guard,
}

/// (covering, covered) messages.
pub type CoverPair = (u64, u64);

impl EnumeratedCode<'_> {
    pub fn code(&self) -> &LinearCode {
        self.code
    }

    pub fn weight(&self, msg: u64) -> u64 {
        self.weights[msg as usize]
    }

    pub fn support(&self, msg: u64) -> &FixedBitSet {
        &self.supports[msg as usize]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    fn multiples(&self, msg: u64) -> Vec<u64> {
        (1..self.code.q)
            .map(|a| self.code.combine(0, a, msg))
            .collect()
    }

    fn check_work(&self, work: u64) -> Result<()> {
        if work > self.guard.max_work {
            return Err(Error::GuardExceeded(format!(
                "{work} operations exceed the cap of {}",
                self.guard.max_work
            )));
        }
        Ok(())
    }

    /// For codeword `c_prime`, the first nonzero codeword not proportional
    /// to it whose support lies inside supp(c_prime).
    pub fn covered_by(&self, c_prime: u64) -> Option<u64> {
        let sup = &self.supports[c_prime as usize];
        let w = self.weights[c_prime as usize];
        let mult = self.multiples(c_prime);
        (1..self.weights.len() as u64).find(|&c| {
            self.weights[c as usize] <= w
                && !mult.contains(&c)
                && self.supports[c as usize].is_subset(sup)
        })
    }

    /// Per projective representative: `None` if minimal, else the covered codeword.
    pub fn cover_per_codeword(&self) -> Result<Vec<(u64, Option<u64>)>> {
        let reps = self.code.projective_reps();
        self.check_work(
            reps.len() as u64 * self.weights.len() as u64 * (self.code.len as u64).div_ceil(64),
        )?;
        Ok(par::map_range(self.exec, reps.len(), |i| {
            (reps[i], self.covered_by(reps[i]))
        }))
    }

    /// First covering pair in representative order, if any.
    pub fn cover_oracle(&self) -> Result<Option<CoverPair>> {
        let reps = self.code.projective_reps();
        self.check_work(
            reps.len() as u64 * self.weights.len() as u64 * (self.code.len as u64).div_ceil(64),
        )?;
        let hit = par::find_first(self.exec, reps.len(), |i| {
            self.covered_by(reps[i]).is_some()
        });
        Ok(hit.map(|i| (reps[i], self.covered_by(reps[i]).unwrap())))
    }

    /// Σ_{a∈F_q^*} wt(c′+ac) = (q−1)·wt(c′) − wt(c)
    pub fn heng_equality(&self, c_prime: u64, c: u64) -> bool {
        let q = self.code.q as u64;
        let lhs: u64 = (1..self.code.q)
            .map(|a| self.weights[self.code.combine(c_prime, a, c) as usize])
            .sum();
        lhs + self.weights[c as usize] == (q - 1) * self.weights[c_prime as usize]
    }

    /// The equality is scale-invariant in c, so c ranges over representatives too.
    fn heng_witness(&self, c_prime: u64, reps: &[u64]) -> Option<u64> {
        reps.iter()
            .copied()
            .find(|&c| c != c_prime && self.heng_equality(c_prime, c))
    }

    pub fn heng_per_codeword(&self) -> Result<Vec<(u64, Option<u64>)>> {
        let reps = self.code.projective_reps();
        self.check_work(
            (reps.len() as u64).pow(2) * (self.code.q as u64 - 1) * self.code.dim() as u64,
        )?;
        Ok(par::map_range(self.exec, reps.len(), |i| {
            (reps[i], self.heng_witness(reps[i], &reps))
        }))
    }

    pub fn heng(&self) -> Result<Option<CoverPair>> {
        let reps = self.code.projective_reps();
        self.check_work(
            (reps.len() as u64).pow(2) * (self.code.q as u64 - 1) * self.code.dim() as u64,
        )?;
        let hit = par::find_first(self.exec, reps.len(), |i| {
            self.heng_witness(reps[i], &reps).is_some()
        });
        Ok(hit.map(|i| (reps[i], self.heng_witness(reps[i], &reps).unwrap())))
    }
}
