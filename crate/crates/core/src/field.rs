//! Table-driven arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m}.
//!
//! Elements are stored by their coefficient code: the polynomial
//! `Σ c_j X^j` over F_p maps to the integer `Σ c_j p^j`. Code 0 is zero and
//! the prime subfield occupies codes `0..p`. Discrete logarithms relative to
//! a fixed primitive element γ are available through [`FieldTower::log`].

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Arith, PrimeField, Rref};
use crate::par::{self, Exec};
use crate::poly;

/// Largest field the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 26;

/// Parameters of the tower: F_{q^m} with q = p^e, defined by a monic
/// irreducible polynomial of degree e·m over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    /// Coefficients over F_p, low degree first. `None` selects the built-in default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    /// Require the residue of X itself to be primitive.
    #[serde(default)]
    pub generator_check: bool,
}

impl FieldSpec {
    pub fn new(p: u32, e: u32, m: u32) -> Self {
        FieldSpec {
            p,
            e,
            m,
            modulus: None,
            generator_check: false,
        }
    }

    pub fn with_modulus(mut self, modulus: Vec<u32>) -> Self {
        self.modulus = Some(modulus);
        self
    }
}

/// An element of F_{q^m}, identified by its coefficient code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A level of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// F_p
    Prime,
    /// F_q
    Sub,
    /// F_{q^m}
    Top,
}

/// Immutable field tables shared by every other module.
#[derive(Debug)]
pub struct FieldTower {
    p: u32,
    e: u32,
    m: u32,
    q: u64,
    size: u64,
    modulus: Vec<u32>,
    gamma: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    tr_abs: Vec<u32>,
    tr_rel: Vec<u32>,
    sub_codes: Vec<u32>,
}

impl FieldTower {
    /// Build the tower, validating the modulus and filling exp/log and trace tables.
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let FieldSpec { p, e, m, .. } = *spec;
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidField("e and m must be positive".into()));
        }
        let n = e
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidField("e·m overflows".into()))?;
        let size = (p as u64)
            .checked_pow(n)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge {
                size: (p as f64).powi(n as i32) as u64,
            })?;
        let q = (p as u64).pow(e);

        let modulus = match &spec.modulus {
            Some(f) => f.clone(),
            None => poly::default_modulus(p, n),
        };
        if modulus.len() != n as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has {} coefficients, expected {}",
                modulus.len(),
                n + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }

        let order = size - 1;
        let (gamma_poly, exp) = match walk_powers(&[0, 1], &modulus, p, order) {
            Ok(exp) => (vec![0, 1], exp),
            Err(found) => {
                if spec.generator_check {
                    return Err(Error::NotPrimitive {
                        order: found,
                        expected: order,
                    });
                }
                let g = find_primitive(&modulus, p, size);
                let exp =
                    walk_powers(&g, &modulus, p, order).expect("element selected as primitive");
                (g, exp)
            }
        };
        let gamma = Elem(digits_to_code(&gamma_poly, p));
        let mut log = vec![u32::MAX; size as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }

        let sub_step = order / (q - 1);
        let mut sub_codes: Vec<u32> = std::iter::once(0)
            .chain((0..q - 1).map(|j| exp[(j * sub_step) as usize]))
            .collect();
        sub_codes.sort_unstable();

        let mut tower = FieldTower {
            p,
            e,
            m,
            q,
            size,
            modulus,
            gamma,
            exp,
            log,
            tr_abs: Vec::new(),
            tr_rel: Vec::new(),
            sub_codes,
        };
        tower.tr_rel = par::map_range(Exec::default(), size as usize, |c| {
            tower.power_sum(Elem(c as u32), q, m).0
        });
        tower.tr_abs = par::map_range(Exec::default(), size as usize, |c| {
            tower.power_sum(Elem(c as u32), p as u64, n).0
        });
        debug_assert!(tower.tr_abs.iter().all(|&t| t < p));
        Ok(tower)
    }

    /// Σ_{i<count} x^{base^i}
    fn power_sum(&self, x: Elem, base: u64, count: u32) -> Elem {
        if x.is_zero() {
            return Elem::ZERO;
        }
        let order = self.order();
        let lx = self.log[x.0 as usize] as u64;
        let mut acc = Elem::ZERO;
        let mut pw = 1u64;
        for _ in 0..count {
            acc = self.add(acc, Elem(self.exp[(lx * pw % order) as usize]));
            pw = pw * base % order;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Degree of F_{q^m} over F_p.
    pub fn n(&self) -> u32 {
        self.e * self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// q^m
    pub fn size(&self) -> u64 {
        self.size
    }
    /// q^m − 1
    pub fn order(&self) -> u64 {
        self.size - 1
    }
    /// (q^m − 1)/(q − 1): the number of F_q^*-classes in F_{q^m}^*.
    pub fn class_count(&self) -> u64 {
        self.order() / (self.q - 1)
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    /// Element from a code; `None` when out of range.
    pub fn elem(&self, code: u32) -> Option<Elem> {
        ((code as u64) < self.size).then_some(Elem(code))
    }

    /// γ^i
    pub fn pow_gamma(&self, i: u64) -> Elem {
        Elem(self.exp[(i % self.order()) as usize])
    }

    pub fn log(&self, x: Elem) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    /// Every element in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size as u32).map(Elem)
    }

    /// Nonzero elements in ascending discrete-log order (γ^0, γ^1, …).
    pub fn nonzero_by_log(&self) -> impl Iterator<Item = Elem> + '_ {
        self.exp.iter().map(|&c| Elem(c))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        // a + b = a(1 + b/a)
        let order = self.order() as u32;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let ratio = self.exp[((lb + order - la) % order) as usize];
        let digit = ratio % self.p;
        let s = if digit == self.p - 1 {
            ratio - (self.p - 1)
        } else {
            ratio + 1
        };
        if s == 0 {
            return Elem::ZERO;
        }
        let ls = self.log[s as usize];
        Elem(self.exp[((la as u64 + ls as u64) % order as u64) as usize])
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let half = self.order() / 2;
        Elem(self.exp[((self.log[a.0 as usize] as u64 + half) % self.order()) as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Elem(self.exp[(s % self.order()) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let l = self.log(a)? as u64;
        Some(Elem(self.exp[((self.order() - l) % self.order()) as usize]))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(l) => {
                let o = self.order() as u128;
                Elem(self.exp[((l as u128 * k as u128) % o) as usize])
            }
        }
    }

    /// Scale by an element of the prime field given as a residue.
    pub fn scale(&self, c: u32, a: Elem) -> Elem {
        self.mul(Elem(c % self.p), a)
    }

    /// Tr_{F_{q^m}/F_q}
    pub fn trace_sub(&self, x: Elem) -> Elem {
        Elem(self.tr_rel[x.0 as usize])
    }

    /// Tr_{F_{q^m}/F_p} as a residue.
    pub fn trace_abs(&self, x: Elem) -> u32 {
        self.tr_abs[x.0 as usize]
    }

    /// Absolute-trace table indexed by code.
    pub fn trace_abs_table(&self) -> &[u32] {
        &self.tr_abs
    }

    /// Trace of `x` down to `level` (the identity for [`Level::Top`]).
    pub fn trace(&self, x: Elem, level: Level) -> Elem {
        match level {
            Level::Top => x,
            Level::Sub => self.trace_sub(x),
            Level::Prime => Elem(self.trace_abs(x)),
        }
    }

    pub fn level_size(&self, level: Level) -> u64 {
        match level {
            Level::Prime => self.p as u64,
            Level::Sub => self.q,
            Level::Top => self.size,
        }
    }

    /// The image of F_q (or F_p) inside F_{q^m}, sorted by code.
    pub fn subfield(&self, level: Level) -> Vec<Elem> {
        match level {
            Level::Prime => (0..self.p).map(Elem).collect(),
            Level::Sub => self.sub_codes.iter().map(|&c| Elem(c)).collect(),
            Level::Top => self.elements().collect(),
        }
    }

    pub fn in_subfield(&self, x: Elem, level: Level) -> bool {
        match level {
            Level::Prime => x.0 < self.p,
            Level::Sub => self.sub_codes.binary_search(&x.0).is_ok(),
            Level::Top => true,
        }
    }

    /// F_q^*: the subgroup generated by γ^{(q^m−1)/(q−1)}.
    pub fn sub_units(&self) -> Vec<Elem> {
        let step = self.class_count();
        (0..self.q - 1).map(|j| self.pow_gamma(j * step)).collect()
    }

    /// Generator ω = γ^{(q^m−1)/(q−1)} of F_q^*.
    pub fn sub_generator(&self) -> Elem {
        self.pow_gamma(self.class_count())
    }

    /// Coefficient digits over F_p (length n).
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut c = x.0;
        (0..self.n())
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> Elem {
        Elem(digits_to_code(d, self.p))
    }

    /// F_p-basis {ω^j : j < e} of F_q.
    fn sub_basis(&self) -> Vec<Elem> {
        let w = self.sub_generator();
        (0..self.e as u64).map(|j| self.pow(w, j)).collect()
    }

    /// The F_q-linear span ⟨S⟩.
    pub fn span(&self, set: &[Elem]) -> Subspace {
        let mut sp = Subspace::zero(self);
        let basis = self.sub_basis();
        for &s in set {
            if s.is_zero() {
                continue;
            }
            for &w in &basis {
                sp.insert(self, self.mul(w, s));
            }
            if sp.dim_fp() == self.n() as usize {
                break;
            }
        }
        sp
    }

    /// L(S) = {x : Tr_{q^m/q}(xs) = 0 for all s ∈ S}.
    pub fn annihilator(&self, set: &[Elem]) -> Subspace {
        let sp = self.span(set);
        self.annihilator_of(&sp)
    }

    /// Annihilator of an F_q-subspace under the trace form.
    pub fn annihilator_of(&self, sp: &Subspace) -> Subspace {
        let n = self.n() as usize;
        let f = PrimeField(self.p);
        let mut system = Rref::new(f, n);
        for b in sp.basis_elems(self) {
            let row: Vec<u32> = (0..n)
                .map(|j| self.trace_abs(self.mul(b, Elem((self.p as u64).pow(j as u32) as u32))))
                .collect();
            system.insert(row);
        }
        let mut out = Subspace::zero(self);
        for v in system.nullspace() {
            out.insert(self, self.from_digits(&v));
        }
        out
    }

    /// L(a), the hyperplane {x : Tr_{q^m/q}(xa) = 0}.
    pub fn hyperplane(&self, a: Elem) -> Result<Subspace> {
        if a.is_zero() {
            return Err(Error::Domain(
                "L(0) is the whole field, not a hyperplane".into(),
            ));
        }
        Ok(self.annihilator(&[a]))
    }

    /// Membership bitset over codes for a list of elements.
    pub fn bitset(&self, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
        let mut bs = FixedBitSet::with_capacity(self.size as usize);
        for x in elems {
            bs.insert(x.0 as usize);
        }
        bs
    }

    /// F_q arithmetic on subfield labels.
    pub fn fq(&self) -> FqArith<'_> {
        FqArith { tower: self }
    }
}

fn digits_to_code(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

/// Powers of `g` modulo `f`, as codes. `Err(k)` when g has order k < `order`.
fn walk_powers(g: &[u32], f: &[u32], p: u32, order: u64) -> std::result::Result<Vec<u32>, u64> {
    let n = f.len() - 1;
    let is_x = g == [0, 1];
    let mut cur = vec![0u32; n];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(order as usize);
    for k in 0..order {
        if k > 0 && cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
            return Err(k);
        }
        exp.push(digits_to_code(&cur, p));
        if is_x {
            let top = cur[n - 1];
            for i in (1..n).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    let sub = (top as u64 * f[i] as u64 % p as u64) as u32;
                    *c = (*c + p - sub) % p;
                }
            }
        } else {
            let mut next = poly::mul_mod(&cur, g, f, p);
            next.resize(n, 0);
            cur = next;
        }
    }
    if n > 0 && cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
        Ok(exp)
    } else {
        Err(order)
    }
}

fn find_primitive(f: &[u32], p: u32, size: u64) -> Vec<u32> {
    let n = f.len() - 1;
    let order = size - 1;
    let factors = poly::prime_factors(order);
    for code in 2..size {
        let mut g = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            g.push((c % p as u64) as u32);
            c /= p as u64;
        }
        let primitive = factors.iter().all(|&r| {
            let mut h = poly::pow_poly(&g, order / r, f, p);
            h.resize(n, 0);
            !(h[0] == 1 && h[1..].iter().all(|&x| x == 0))
        });
        if primitive {
            return g;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// An F_q-subspace of F_{q^m}, held as an F_p basis in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Rref<PrimeField>,
    e: u32,
}

impl Subspace {
    pub fn zero(tower: &FieldTower) -> Self {
        Subspace {
            basis: Rref::new(PrimeField(tower.p), tower.n() as usize),
            e: tower.e,
        }
    }

    pub fn whole(tower: &FieldTower) -> Self {
        let mut s = Subspace::zero(tower);
        for j in 0..tower.n() {
            s.insert(tower, Elem((tower.p as u64).pow(j) as u32));
        }
        s
    }

    fn insert(&mut self, tower: &FieldTower, x: Elem) -> bool {
        self.basis.insert(tower.digits(x))
    }

    pub fn dim_fp(&self) -> usize {
        self.basis.rank()
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.basis.rank() / self.e as usize
    }

    pub fn size(&self, tower: &FieldTower) -> u64 {
        (tower.p as u64).pow(self.dim_fp() as u32)
    }

    pub fn contains(&self, tower: &FieldTower, x: Elem) -> bool {
        self.basis.contains(&tower.digits(x))
    }

    pub fn basis_elems(&self, tower: &FieldTower) -> Vec<Elem> {
        self.basis
            .rows()
            .iter()
            .map(|r| tower.from_digits(r))
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace, tower: &FieldTower) -> bool {
        self.basis_elems(tower)
            .into_iter()
            .all(|b| other.contains(tower, b))
    }

    pub fn same_as(&self, other: &Subspace, tower: &FieldTower) -> bool {
        self.dim_fp() == other.dim_fp() && self.is_subspace_of(other, tower)
    }

    /// All elements, in no particular order.
    pub fn elements(&self, tower: &FieldTower) -> Vec<Elem> {
        let basis = self.basis_elems(tower);
        let mut out = vec![Elem::ZERO];
        for b in basis {
            let mut next = Vec::with_capacity(out.len() * tower.p as usize);
            for c in 0..tower.p {
                let cb = tower.scale(c, b);
                next.extend(out.iter().map(|&x| tower.add(x, cb)));
            }
            out = next;
        }
        out
    }
}

/// F_q arithmetic on labels: label `i` is the i-th smallest code of F_q,
/// so 0 is zero, 1 is one, and for prime q the label equals the residue.
#[derive(Clone, Copy, Debug)]
pub struct FqArith<'a> {
    tower: &'a FieldTower,
}

impl<'a> FqArith<'a> {
    pub fn q(&self) -> u32 {
        self.tower.q as u32
    }

    pub fn elem(&self, label: u32) -> Elem {
        Elem(self.tower.sub_codes[label as usize])
    }

    /// Label of an element of F_q. Panics if `x` lies outside the subfield.
    pub fn label(&self, x: Elem) -> u32 {
        self.tower
            .sub_codes
            .binary_search(&x.0)
            .expect("element of F_q") as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.label(self.tower.neg(self.elem(a)))
    }
}

impl Arith for FqArith<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.label(self.tower.add(self.elem(a), self.elem(b)))
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.label(self.tower.sub(self.elem(a), self.elem(b)))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.label(self.tower.mul(self.elem(a), self.elem(b)))
    }
    fn inv(&self, a: u32) -> u32 {
        self.label(self.tower.inv(self.elem(a)).expect("nonzero"))
    }
}
