//! Additive character sums Ψ_a(S) = Σ_{x∈S} ζ_p^{Tr(ax)} and full spectra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower, Level};
use crate::par::{self, Exec};
use crate::subset::SubsetD;

/// Number of x ∈ S with Tr_{q^m/p}(ax) = t, for each t ∈ F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCountTable {
    pub counts: Vec<u64>,
}

impl TraceCountTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn value(&self, p: u32) -> CyclotomicInt {
        let c: Vec<i64> = self.counts.iter().map(|&c| c as i64).collect();
        CyclotomicInt::from_exponent_counts(p, &c)
    }
}

pub fn trace_counts(
    tower: &FieldTower,
    a: Elem,
    set: impl IntoIterator<Item = Elem>,
) -> TraceCountTable {
    let mut counts = vec![0u64; tower.p() as usize];
    for x in set {
        counts[tower.trace_abs(tower.mul(a, x)) as usize] += 1;
    }
    TraceCountTable { counts }
}

/// Ψ_a(S) for a subset.
pub fn psi_sum(tower: &FieldTower, a: Elem, set: &SubsetD) -> CyclotomicInt {
    trace_counts(tower, a, set.iter()).value(tower.p())
}

/// Ψ_a over an arbitrary list of elements (repetitions counted).
pub fn psi_sum_elems(tower: &FieldTower, a: Elem, elems: &[Elem]) -> CyclotomicInt {
    trace_counts(tower, a, elems.iter().copied()).value(tower.p())
}

/// Checks Ψ_{λa}(S) = Ψ_a(S). Requires λ ∈ F_q^* and S to be F_q^*-invariant.
pub fn scaled_sum_invariance_check(
    tower: &FieldTower,
    a: Elem,
    lambda: Elem,
    set: &SubsetD,
) -> Result<bool> {
    if lambda.is_zero() || !tower.in_subfield(lambda, Level::Sub) {
        return Err(Error::Precondition("λ must lie in F_q^*".into()));
    }
    if !crate::pds::is_fq_invariant(tower, set) {
        return Err(Error::Precondition("S is not F_q^*-invariant".into()));
    }
    Ok(psi_sum(tower, tower.mul(lambda, a), set) == psi_sum(tower, a, set))
}

/// Σ_{λ∈F_q} Ψ(λx): q when Tr_{q^m/q}(x) = 0, else 0.
pub fn orthogonality_sum(tower: &FieldTower, x: Elem) -> i64 {
    let scaled: Vec<Elem> = tower
        .subfield(Level::Sub)
        .into_iter()
        .map(|l| tower.mul(l, x))
        .collect();
    psi_sum_elems(tower, Elem::ONE, &scaled)
        .rational()
        .expect("orthogonality sums are rational")
}

/// Algorithm used by [`full_spectrum_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// One pass over S per a.
    Pointwise,
    /// All a at once via a transform over (F_p)^n.
    Transform,
    /// Pointwise up to 10^5 elements, transform above.
    Auto,
}

const POINTWISE_LIMIT: u64 = 100_000;

/// Trace-count tables of Ψ_a(S) for every a, indexed by element code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    p: u32,
    k: u64,
    counts: Vec<u32>,
}

/// Distinct rational values over a ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumValue {
    pub theta: i64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumExport {
    pub k: u64,
    pub values: Vec<SpectrumValue>,
    pub all_rational: bool,
}

impl Spectrum {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.counts.len() / self.p as usize
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self, a: Elem) -> &[u32] {
        let p = self.p as usize;
        let i = a.code() as usize * p;
        &self.counts[i..i + p]
    }

    pub fn value(&self, a: Elem) -> CyclotomicInt {
        CyclotomicInt::from_exponent_counts(self.p, self.counts(a))
    }

    /// Ψ_a(S) when it is a rational integer.
    pub fn rational(&self, a: Elem) -> Option<i64> {
        let c = self.counts(a);
        c[1..]
            .iter()
            .all(|&x| x == c[1])
            .then(|| c[0] as i64 - c.get(1).copied().unwrap_or(0) as i64)
    }

    pub fn all_rational(&self) -> bool {
        (1..self.len()).all(|i| self.rational(Elem(i as u32)).is_some())
    }

    /// Value multiset over a ≠ 0, or `None` if some value is irrational.
    pub fn restricted_values(&self) -> Option<BTreeMap<i64, u64>> {
        let mut out = BTreeMap::new();
        for i in 1..self.len() {
            *out.entry(self.rational(Elem(i as u32))?).or_insert(0) += 1;
        }
        Some(out)
    }

    pub fn export(&self) -> SpectrumExport {
        let values = self
            .restricted_values()
            .unwrap_or_default()
            .into_iter()
            .rev()
            .map(|(theta, multiplicity)| SpectrumValue {
                theta,
                multiplicity,
            })
            .collect();
        SpectrumExport {
            k: self.k,
            values,
            all_rational: self.all_rational(),
        }
    }
}

pub fn full_spectrum(tower: &FieldTower, set: &SubsetD) -> Spectrum {
    full_spectrum_with(tower, set, SpectrumMethod::Auto, Exec::default())
}

pub fn full_spectrum_with(
    tower: &FieldTower,
    set: &SubsetD,
    method: SpectrumMethod,
    exec: Exec,
) -> Spectrum {
    let method = match method {
        SpectrumMethod::Auto if tower.size() > POINTWISE_LIMIT => SpectrumMethod::Transform,
        SpectrumMethod::Auto => SpectrumMethod::Pointwise,
        m => m,
    };
    let counts = match method {
        SpectrumMethod::Transform => transform_counts(tower, set, exec),
        _ => pointwise_counts(tower, set, exec),
    };
    Spectrum {
        p: tower.p(),
        k: set.len() as u64,
        counts,
    }
}

fn pointwise_counts(tower: &FieldTower, set: &SubsetD, exec: Exec) -> Vec<u32> {
    let p = tower.p() as usize;
    let elems = set.elems();
    let tr = tower.trace_abs_table();
    let rows = par::map_range(exec, tower.size() as usize, |code| {
        let a = Elem(code as u32);
        let mut c = vec![0u32; p];
        for &x in &elems {
            c[tr[tower.mul(a, x).code() as usize] as usize] += 1;
        }
        c
    });
    rows.concat()
}

/// Computes G(w)[t] = #{x ∈ S : ⟨x, w⟩ = t} for every w ∈ F_p^n, one coordinate
/// at a time, then reads Ψ_a off at w(a)_j = Tr(a·X^j).
fn transform_counts(tower: &FieldTower, set: &SubsetD, exec: Exec) -> Vec<u32> {
    let p = tower.p() as usize;
    let size = tower.size() as usize;
    let mut data = vec![0u32; size * p];
    for x in set.iter() {
        data[x.code() as usize * p] = 1;
    }
    let mut stride = 1usize;
    while stride < size {
        let block = stride * p;
        par::for_each_chunk_mut(exec, &mut data, block * p, |chunk| {
            let mut scratch = vec![0u32; p * p];
            for o in 0..stride {
                for x in 0..p {
                    let at = (o + x * stride) * p;
                    scratch[x * p..(x + 1) * p].copy_from_slice(&chunk[at..at + p]);
                }
                for w in 0..p {
                    let at = (o + w * stride) * p;
                    let out = &mut chunk[at..at + p];
                    out.fill(0);
                    for x in 0..p {
                        let shift = x * w % p;
                        let v = &scratch[x * p..(x + 1) * p];
                        for t in 0..p {
                            out[(t + shift) % p] += v[t];
                        }
                    }
                }
            }
        });
        stride = block;
    }

    let n = tower.n() as usize;
    let basis: Vec<Elem> = (0..n).map(|j| Elem((p as u32).pow(j as u32))).collect();
    let tr = tower.trace_abs_table();
    let rows = par::map_range(exec, size, |code| {
        let a = Elem(code as u32);
        let mut w = 0usize;
        for j in (0..n).rev() {
            w = w * p + tr[tower.mul(a, basis[j]).code() as usize] as usize;
        }
        data[w * p..(w + 1) * p].to_vec()
    });
    rows.concat()
}
