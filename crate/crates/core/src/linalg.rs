//! Row reduction over small finite fields.
//!
//! Scalars are plain `u32` labels whose meaning is fixed by an [`Arith`]
//! implementation: residues for a prime field, subfield labels for F_q.

/// Field arithmetic on `u32` labels, with 0 the additive and 1 the
/// multiplicative identity.
pub trait Arith {
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: u32) -> u32;
}

/// Residue arithmetic modulo a prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField(pub u32);

impl Arith for PrimeField {
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        crate::poly::pow_mod(a as u64, (self.0 - 2) as u64, self.0 as u64) as u32
    }
}

/// An incrementally built basis in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<A: Arith> {
    arith: A,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl<A: Arith> Rref<A> {
    pub fn new(arith: A, ncols: usize) -> Self {
        Rref {
            arith,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Subtract the basis from `v` in place; the residue is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = self.arith.sub(*x, self.arith.mul(c, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add `v` to the basis. Returns false when it was already in the span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.arith.inv(v[pc]);
        for x in v.iter_mut() {
            *x = self.arith.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = self.arith.sub(*x, self.arith.mul(c, r));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Basis of the right null space {x : row·x = 0 for every row}.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.ncols];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u32; self.ncols];
                x[free] = 1;
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    // pivot entry is 1: x_pc = -row[free]
                    x[pc] = self.arith.sub(0, row[free]);
                }
                x
            })
            .collect()
    }
}

/// Rank of the matrix with the given rows.
pub fn rank<A: Arith>(arith: A, rows: &[Vec<u32>], ncols: usize) -> usize {
    let mut r = Rref::new(arith, ncols);
    for row in rows {
        r.insert(row.clone());
    }
    r.rank()
}
