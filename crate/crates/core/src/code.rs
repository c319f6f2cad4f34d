//! The code C(M_D): c(u,v) = (u·f_D(x) + Tr_{q^m/q}(vx))_x over x ∈ F_{q^m}^*,
//! coordinates in ascending discrete-log order.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::charsum::{psi_sum, psi_sum_elems, Spectrum};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower, Level, Subspace};
use crate::linalg::{self, Arith};
use crate::lincode::LinearCode;
use crate::par::{self, Exec};
use crate::pds::{is_fq_invariant, PdsCertificate};
use crate::subset::SubsetD;

/// Weight ↦ frequency.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution(pub BTreeMap<u64, u64>);

impl WeightDistribution {
    pub fn add(&mut self, w: u64, freq: u64) {
        if freq > 0 {
            *self.0.entry(w).or_insert(0) += freq;
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.0.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_max_nonzero(&self) -> Option<(u64, u64)> {
        let nz = self.nonzero_weights();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn as_pairs(&self) -> Vec<(u64, u64)> {
        self.0.iter().map(|(&w, &f)| (w, f)).collect()
    }
}

impl FromIterator<(u64, u64)> for WeightDistribution {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut d = WeightDistribution::default();
        for (w, f) in iter {
            d.add(w, f);
        }
        d
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            w: u64,
            freq: u64,
        }
        s.collect_seq(self.0.iter().map(|(&w, &freq)| Row { w, freq }))
    }
}

/// ω_min/ω_max > (q−1)/q, compared exactly.
pub fn ab_condition(dist: &WeightDistribution, q: u64) -> Result<bool> {
    let (lo, hi) = dist
        .min_max_nonzero()
        .ok_or_else(|| Error::Domain("no nonzero weights".into()))?;
    Ok(q as u128 * lo as u128 > (q as u128 - 1) * hi as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightClass {
    Three,
    Four,
}

fn base_weight(q: u64, m: u32) -> i64 {
    (q.pow(m) - q.pow(m - 1)) as i64
}

/// Weight distribution of C(M_D) for an F_q^*-invariant PDS, with coinciding
/// weights merged. The second component lists weights that absorbed a collision.
pub fn weight_distribution_predicted(
    cert: &PdsCertificate,
    q: u64,
    m: u32,
) -> (WeightDistribution, Vec<u64>) {
    let b = base_weight(q, m);
    let rows = [
        (0i64, 1u64),
        (cert.k as i64, q - 1),
        (b, q.pow(m) - 1),
        (b + cert.theta1, cert.m1 * (q - 1)),
        (b + cert.theta2, cert.m2 * (q - 1)),
    ];
    let mut dist = WeightDistribution::default();
    let mut merged = Vec::new();
    for (w, f) in rows {
        let w = w as u64;
        if f > 0 && dist.0.contains_key(&w) {
            merged.push(w);
        }
        dist.add(w, f);
    }
    (dist, merged)
}

/// Three nonzero weights iff k coincides with one of the other predicted weights.
pub fn weight_class(cert: &PdsCertificate, q: u64, m: u32) -> WeightClass {
    let b = base_weight(q, m);
    let k = cert.k as i64;
    if [b, b + cert.theta1, b + cert.theta2].contains(&k) {
        WeightClass::Three
    } else {
        WeightClass::Four
    }
}

/// k ≤ (q−1)² q^{m−2}, under which a minimal C(M_D) fails the AB condition.
pub fn ab_violation_predicted(cert: &PdsCertificate, q: u64, m: u32) -> bool {
    m >= 2 && cert.k <= (q - 1).pow(2) * q.pow(m - 2)
}

/// Work cap for exhaustive weight enumeration, in coordinate evaluations.
pub const DEFAULT_WEIGHT_WORK: u64 = 1 << 36;

/// C(M_D) over a fixed tower.
pub struct MdCode<'t> {
    tower: &'t FieldTower,
    d: SubsetD,
    coords: Vec<Elem>,
}

impl<'t> MdCode<'t> {
    pub fn new(tower: &'t FieldTower, d: SubsetD) -> Self {
        let coords = tower.nonzero_by_log().collect();
        MdCode { tower, d, coords }
    }

    pub fn tower(&self) -> &'t FieldTower {
        self.tower
    }

    pub fn set(&self) -> &SubsetD {
        &self.d
    }

    pub fn length(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate points in canonical order.
    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// M_D: (1, r) for r ∈ D and (0, r) for r ∉ D, in canonical order.
    pub fn defining_set(&self) -> Vec<(u32, Elem)> {
        self.coords
            .iter()
            .map(|&r| (self.d.contains(r) as u32, r))
            .collect()
    }

    /// c(u, v) as F_q labels; `u` is an F_q label.
    pub fn codeword(&self, u: u32, v: Elem) -> Vec<u32> {
        let f = self.tower.fq();
        self.coords
            .iter()
            .map(|&x| {
                let t = f.label(self.tower.trace_sub(self.tower.mul(v, x)));
                if self.d.contains(x) {
                    f.add(u, t)
                } else {
                    t
                }
            })
            .collect()
    }

    pub fn weight(&self, u: u32, v: Elem) -> u64 {
        self.codeword(u, v).iter().filter(|&&c| c != 0).count() as u64
    }

    /// Weight from Ψ_v(D); valid for F_q^*-invariant D.
    pub fn weight_closed(&self, u: u32, v: Elem, spectrum: &Spectrum) -> Option<u64> {
        let q = self.tower.q();
        let m = self.tower.m();
        Some(match (u == 0, v.is_zero()) {
            (true, true) => 0,
            (false, true) => self.d.len() as u64,
            (true, false) => base_weight(q, m) as u64,
            (false, false) => (base_weight(q, m) + spectrum.rational(v)?) as u64,
        })
    }

    /// Rows c(1, 0) and c(0, γ^i) for i < m.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        std::iter::once(self.codeword(1, Elem::ZERO))
            .chain((0..self.tower.m() as u64).map(|i| self.codeword(0, self.tower.pow_gamma(i))))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        linalg::rank(self.tower.fq(), &self.generator_rows(), self.length())
    }

    /// Whether f_D agrees with an additive map on F_{q^m}.
    pub fn f_d_is_linear(&self) -> bool {
        let t = self.tower;
        if t.q() > 2 && self.d.is_proper(t) && is_fq_invariant(t, &self.d) {
            // x, λx, (λ+1)x ∈ D with λ ∉ {0, −1} forces 1 + 1 = 1
            return false;
        }
        if t.size() <= 1 << 12 {
            let f = |x: Elem| self.d.contains(x) as u32;
            let fq = t.fq();
            return t
                .elements()
                .all(|x| t.elements().all(|y| f(t.add(x, y)) == fq.add(f(x), f(y))));
        }
        self.dimension() <= t.m() as usize
    }

    /// Basis rows of the code as whitespace-separated F_q labels, one per line.
    pub fn generator_matrix_text(&self) -> String {
        self.to_linear_code()
            .generator()
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    pub fn to_linear_code(&self) -> LinearCode {
        LinearCode::from_rows(self.tower.fq(), self.generator_rows())
    }

    /// Every codeword evaluated coordinate by coordinate.
    pub fn weight_distribution_direct(
        &self,
        exec: Exec,
        max_work: u64,
    ) -> Result<WeightDistribution> {
        let t = self.tower;
        let q = t.q() as usize;
        let work = t.q() * t.size() * self.length() as u64;
        if work > max_work {
            return Err(Error::GuardExceeded(format!(
                "{work} coordinate evaluations exceed the cap of {max_work}"
            )));
        }
        let f = t.fq();
        let k = self.d.len() as u64;
        // For each v: weight of c(u, v) is #{x ∉ D : Tr(vx) ≠ 0} + #{x ∈ D : Tr(vx) ≠ −u}.
        let per_v = par::map_range(exec, t.size() as usize, |code| {
            let v = Elem(code as u32);
            let mut out_nonzero = 0u64;
            let mut hist_in = vec![0u64; q];
            for &x in &self.coords {
                let tr = f.label(t.trace_sub(t.mul(v, x)));
                if self.d.contains(x) {
                    hist_in[tr as usize] += 1;
                } else if tr != 0 {
                    out_nonzero += 1;
                }
            }
            (0..q as u32)
                .map(|u| out_nonzero + k - hist_in[f.neg(u) as usize])
                .collect::<Vec<_>>()
        });
        Ok(per_v.into_iter().flatten().map(|w| (w, 1)).collect())
    }

    /// Distribution via Ψ_v(D); requires an F_q^*-invariant D.
    pub fn weight_distribution_closed(&self, spectrum: &Spectrum) -> Result<WeightDistribution> {
        if !is_fq_invariant(self.tower, &self.d) {
            return Err(Error::Precondition(
                "closed-form weights need F_q^*-invariant D".into(),
            ));
        }
        let q = self.tower.q();
        let mut dist = WeightDistribution::default();
        dist.add(0, 1);
        dist.add(self.d.len() as u64, q - 1);
        dist.add(base_weight(q, self.tower.m()) as u64, self.tower.order());
        for v in self.tower.elements().skip(1) {
            let w = self
                .weight_closed(1, v, spectrum)
                .ok_or_else(|| Error::Precondition("irrational character value".into()))?;
            dist.add(w, q - 1);
        }
        Ok(dist)
    }
}

/// D_{(y,z)} = {x ∈ D : Tr(xz) = −y}, with y an F_q label.
pub fn d_yz(tower: &FieldTower, d: &SubsetD, y: u32, z: Elem) -> Vec<Elem> {
    let f = tower.fq();
    let target = f.elem(f.neg(y));
    d.iter()
        .filter(|&x| tower.trace_sub(tower.mul(x, z)) == target)
        .collect()
}

/// D̄_z = {x ∉ D ∪ {0} : Tr(xz) = 0}.
pub fn dbar_z(tower: &FieldTower, d: &SubsetD, z: Elem) -> Vec<Elem> {
    tower
        .nonzero_by_log()
        .filter(|&x| !d.contains(x) && tower.trace_sub(tower.mul(x, z)).is_zero())
        .collect()
}

pub fn dyz_size_direct(tower: &FieldTower, d: &SubsetD, y: u32, z: Elem) -> u64 {
    d_yz(tower, d, y, z).len() as u64
}

/// (|D| − Ψ(zD))/q for y ≠ 0 and (|D| + (q−1)Ψ(zD))/q for y = 0.
pub fn dyz_size_closed(tower: &FieldTower, d: &SubsetD, y: u32, z: Elem) -> Result<u64> {
    if z.is_zero() {
        return Err(Error::Domain("z must be nonzero".into()));
    }
    if !is_fq_invariant(tower, d) {
        return Err(Error::Precondition(
            "closed form needs F_q^*-invariant D".into(),
        ));
    }
    let psi = psi_sum(tower, z, d)
        .rational()
        .expect("Ψ_z of an F_q^*-invariant set is rational");
    let (k, q) = (d.len() as i64, tower.q() as i64);
    let num = if y == 0 { k + (q - 1) * psi } else { k - psi };
    Ok((num / q) as u64)
}

/// P_{(y,z)} in its two forms.
pub struct Pyz {
    /// L((D_{(y,z)} − D_{(y,z)}) ∪ D̄_z)
    pub annihilator: Subspace,
    /// {a : Ψ_a(D̄_z) = |D̄_z|, |Ψ_{λa}(D_{(y,z)})| = |D_{(y,z)}| ∀λ ∈ F_q^*},
    /// computed when D is F_q^*-invariant.
    pub character_form: Option<Vec<Elem>>,
}

pub fn p_yz(tower: &FieldTower, d: &SubsetD, y: u32, z: Elem) -> Pyz {
    let dyz = d_yz(tower, d, y, z);
    let dbz = dbar_z(tower, d, z);
    let mut gens = dbz.clone();
    for &a in &dyz {
        for &b in &dyz {
            gens.push(tower.sub(a, b));
        }
    }
    let annihilator = tower.annihilator(&gens);
    let character_form = is_fq_invariant(tower, d).then(|| {
        let p = tower.p();
        let nd = dbz.len() as i64;
        let ny = CyclotomicInt::from_int(p, (dyz.len() * dyz.len()) as i64);
        let lambdas = tower.sub_units();
        tower
            .elements()
            .filter(|&a| {
                psi_sum_elems(tower, a, &dbz).rational() == Some(nd)
                    && lambdas
                        .iter()
                        .all(|&l| psi_sum_elems(tower, tower.mul(l, a), &dyz).norm_sq() == ny)
            })
            .collect()
    });
    Pyz {
        annihilator,
        character_form,
    }
}

/// ⟨z⟩ as an F_q-subspace.
pub fn line(tower: &FieldTower, z: Elem) -> Subspace {
    tower.span(&[z])
}

/// Elements of F_q in label order, for iterating y.
pub fn fq_labels(tower: &FieldTower) -> impl Iterator<Item = u32> {
    0..tower.level_size(Level::Sub) as u32
}
