//! Candidate sets D (cyclotomic unions, quadrics) and partial-difference-set
//! verification through the character spectrum or direct difference counts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::charsum::{full_spectrum, Spectrum};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::linalg;
use crate::subset::{Origin, QuadricKind, SubsetD};

/// Latin-square classification of srg parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LatinType {
    Latin,
    NegativeLatin,
    Neither,
}

/// Parameters and restricted eigenvalues of a verified PDS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdsCertificate {
    pub v: u64,
    pub k: u64,
    pub lambda: i64,
    pub mu: i64,
    pub theta1: i64,
    pub theta2: i64,
    pub m1: u64,
    pub m2: u64,
    pub type_flag: LatinType,
    pub r: Option<i64>,
    pub epsilon: Option<i64>,
}

impl PdsCertificate {
    /// Completes a certificate from eigenvalue data via the srg identities.
    pub fn from_eigenvalues(v: u64, k: u64, theta1: i64, theta2: i64, m1: u64, m2: u64) -> Self {
        let mu = k as i64 + theta1 * theta2;
        let lambda = mu + theta1 + theta2;
        let (type_flag, r, epsilon) = match latin_params(v, k, lambda, mu) {
            Some(lp) => (
                if lp.epsilon == 1 {
                    LatinType::Latin
                } else {
                    LatinType::NegativeLatin
                },
                Some(lp.r),
                Some(lp.epsilon),
            ),
            None => (LatinType::Neither, None, None),
        };
        PdsCertificate {
            v,
            k,
            lambda,
            mu,
            theta1,
            theta2,
            m1,
            m2,
            type_flag,
            r,
            epsilon,
        }
    }

    /// Recomputes θ1, θ2, m1, m2 from (v, k, λ, μ) alone and compares.
    pub fn srg_closed_forms_agree(&self) -> bool {
        let (v, k) = (self.v as i64, self.k as i64);
        let d = self.lambda - self.mu;
        let delta = d * d + 4 * (k - self.mu);
        let Some(s) = isqrt_exact(delta) else {
            return false;
        };
        if (d + s) % 2 != 0 {
            return false;
        }
        let (t1, t2) = ((d + s) / 2, (d - s) / 2);
        let num = 2 * k + (v - 1) * d;
        if s == 0 || num % s != 0 || ((v - 1) - num / s) % 2 != 0 {
            return false;
        }
        let m1 = ((v - 1) - num / s) / 2;
        let m2 = ((v - 1) + num / s) / 2;
        t1 == self.theta1
            && t2 == self.theta2
            && m1 == self.m1 as i64
            && m2 == self.m2 as i64
            && self.m1 + self.m2 == self.v - 1
            && k + self.m1 as i64 * self.theta1 + self.m2 as i64 * self.theta2 == 0
    }
}

fn isqrt_exact(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&c| c >= 0 && c * c == x)
}

/// (n, ε, r) for parameters (n², r(n−ε), εn+r²−3εr, r²−εr).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatinParams {
    pub n: i64,
    pub epsilon: i64,
    pub r: i64,
}

impl LatinParams {
    pub fn v(&self) -> u64 {
        (self.n * self.n) as u64
    }
    pub fn k(&self) -> u64 {
        (self.r * (self.n - self.epsilon)) as u64
    }
    pub fn lambda(&self) -> i64 {
        self.epsilon * self.n + self.r * self.r - 3 * self.epsilon * self.r
    }
    pub fn mu(&self) -> i64 {
        self.r * self.r - self.epsilon * self.r
    }
    /// Restricted eigenvalues (positive, negative).
    pub fn thetas(&self) -> (i64, i64) {
        if self.epsilon == 1 {
            (self.n - self.r, -self.r)
        } else {
            (self.r, self.r - self.n)
        }
    }
}

/// Detects Latin or negative Latin square type.
pub fn latin_params(v: u64, k: u64, lambda: i64, mu: i64) -> Option<LatinParams> {
    let n = isqrt_exact(v as i64)?;
    [1i64, -1].into_iter().find_map(|epsilon| {
        let den = n - epsilon;
        if den <= 0 || k as i64 % den != 0 {
            return None;
        }
        let lp = LatinParams {
            n,
            epsilon,
            r: k as i64 / den,
        };
        (lp.lambda() == lambda && lp.mu() == mu).then_some(lp)
    })
}

fn check_cyclotomic(tower: &FieldTower, n: u64, j: &[u64]) -> Result<()> {
    if n == 0 || !tower.order().is_multiple_of(n) {
        return Err(Error::InvalidSubset(format!(
            "N = {n} does not divide q^m − 1 = {}",
            tower.order()
        )));
    }
    if let Some(&bad) = j.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidSubset(format!(
            "{bad} is not a residue mod {n}"
        )));
    }
    Ok(())
}

/// The N cyclotomic classes C_i = γ^i C_0, each listed by ascending log.
pub fn cyclotomic_classes(tower: &FieldTower, n: u64) -> Result<Vec<Vec<Elem>>> {
    check_cyclotomic(tower, n, &[])?;
    let len = tower.order() / n;
    Ok((0..n)
        .map(|i| (0..len).map(|j| tower.pow_gamma(j * n + i)).collect())
        .collect())
}

/// D_J = ∪_{j∈J} C_j.
pub fn build_dj(tower: &FieldTower, n: u64, j: &[u64]) -> Result<SubsetD> {
    check_cyclotomic(tower, n, j)?;
    let set: BTreeSet<u64> = j.iter().copied().collect();
    if set.is_empty() || set.len() as u64 >= n {
        return Err(Error::InvalidSubset(format!(
            "J must be a nonempty proper subset of Z_{n}"
        )));
    }
    if tower.q() % 2 == 1 {
        let half = tower.order() / 2;
        if !half.is_multiple_of(n) {
            return Err(Error::InvalidSubset(format!(
                "for odd q, N must divide (q^m − 1)/2 = {half}"
            )));
        }
        if set.iter().any(|&x| !set.contains(&((x + half) % n))) {
            return Err(Error::InvalidSubset(
                "for odd q, J + (q^m − 1)/2 must equal J mod N".into(),
            ));
        }
    }
    let mut bits = tower.bitset(std::iter::empty());
    for (i, x) in tower.nonzero_by_log().enumerate() {
        if set.contains(&(i as u64 % n)) {
            bits.insert(x.code() as usize);
        }
    }
    SubsetD::from_bitset(
        bits,
        Origin::Cyclotomic {
            n,
            j: set.into_iter().collect(),
        },
    )
}

/// λd ∈ D for all λ ∈ F_q^*, d ∈ D.
pub fn is_fq_invariant(tower: &FieldTower, d: &SubsetD) -> bool {
    let w = tower.sub_generator();
    d.iter().all(|x| d.contains(tower.mul(w, x)))
}

/// Invariance of J under ρ: j ↦ j + (q^m−1)/(q−1) mod N.
pub fn is_rho_invariant(tower: &FieldTower, n: u64, j: &[u64]) -> bool {
    let shift = tower.class_count() % n;
    j.iter().all(|&x| j.contains(&((x + shift) % n)))
}

fn check_pds_shape(tower: &FieldTower, d: &SubsetD) -> Result<()> {
    if !d.is_proper(tower) {
        return Err(Error::NotPds(
            "D must be nonempty and proper (the graph is complete or edgeless)".into(),
        ));
    }
    if !d.is_symmetric(tower) {
        return Err(Error::NotPds("−D ≠ D".into()));
    }
    Ok(())
}

/// Spectral PDS test; returns the certificate or a description of the failure.
pub fn verify_pds_spectral(tower: &FieldTower, d: &SubsetD) -> Result<PdsCertificate> {
    check_pds_shape(tower, d)?;
    certificate_from_spectrum(tower, &full_spectrum(tower, d))
}

/// Certificate from a precomputed spectrum of D.
pub fn certificate_from_spectrum(tower: &FieldTower, sp: &Spectrum) -> Result<PdsCertificate> {
    let values = sp.restricted_values().ok_or_else(|| {
        let a = (1..sp.len())
            .find(|&i| sp.rational(Elem(i as u32)).is_none())
            .unwrap_or(0);
        Error::NotPds(format!(
            "Ψ_a(D) is irrational at a = γ^{}",
            tower.log(Elem(a as u32)).unwrap_or(0)
        ))
    })?;
    if values.len() != 2 {
        return Err(Error::NotPds(format!(
            "{} distinct restricted values, expected 2: {:?}",
            values.len(),
            values.keys().collect::<Vec<_>>()
        )));
    }
    let mut it = values.into_iter();
    let (t2, m2) = it.next().unwrap();
    let (t1, m1) = it.next().unwrap();
    // θ1 = 0 is the complete multipartite case
    if !(t1 >= 0 && t2 < 0) {
        return Err(Error::NotPds(format!(
            "restricted values {t1}, {t2} are not of the form θ1 ≥ 0 > θ2"
        )));
    }
    Ok(PdsCertificate::from_eigenvalues(
        tower.size(),
        sp.k(),
        t1,
        t2,
        m1,
        m2,
    ))
}

/// Field-size cap for [`verify_pds_direct`].
pub const DIRECT_PDS_LIMIT: u64 = 10_000;

/// Outcome of the combinatorial PDS test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DirectVerdict {
    Pds {
        lambda: u64,
        mu: u64,
    },
    /// Two differences of the same kind (both in D or both outside D ∪ {0})
    /// with different counts |D ∩ (D + g)|.
    NotPds {
        g1_log: u32,
        count1: u64,
        g2_log: u32,
        count2: u64,
    },
}

/// Counts |D ∩ (D+g)| directly, over one g per F_q^*-class when D is invariant.
pub fn verify_pds_direct(tower: &FieldTower, d: &SubsetD) -> Result<DirectVerdict> {
    if tower.size() > DIRECT_PDS_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "direct PDS check limited to {DIRECT_PDS_LIMIT} elements"
        )));
    }
    check_pds_shape(tower, d).map_err(|e| Error::Precondition(e.to_string()))?;
    let reps = if is_fq_invariant(tower, d) {
        tower.class_count()
    } else {
        tower.order()
    };
    let members = d.elems();
    let mut seen: [Option<(u32, u64)>; 2] = [None, None];
    for i in 0..reps {
        let g = tower.pow_gamma(i);
        let count = members
            .iter()
            .filter(|&&x| d.contains(tower.sub(x, g)))
            .count() as u64;
        let slot = &mut seen[d.contains(g) as usize];
        match *slot {
            None => *slot = Some((i as u32, count)),
            Some((l, c)) if c != count => {
                return Ok(DirectVerdict::NotPds {
                    g1_log: l,
                    count1: c,
                    g2_log: i as u32,
                    count2: count,
                })
            }
            _ => {}
        }
    }
    Ok(DirectVerdict::Pds {
        lambda: seen[1].map_or(0, |s| s.1),
        mu: seen[0].map_or(0, |s| s.1),
    })
}

/// Eigenvalue data predicted for a semiprimitive cyclotomic union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicPrediction {
    pub l1: u32,
    pub t: u32,
    pub u: u64,
    pub k: u64,
    /// θ1 and θ2 in the lemma's labelling; θ1 is negative when t is odd.
    pub theta1: i64,
    pub theta2: i64,
    pub epsilon: i64,
    /// Ψ(γ^i D) for i in 0..N.
    pub coset_values: Vec<i64>,
}

impl CyclotomicPrediction {
    pub fn latin_type(&self) -> LatinType {
        if self.t % 2 == 1 {
            LatinType::Latin
        } else {
            LatinType::NegativeLatin
        }
    }

    /// Certificate with θ1 > 0 > θ2 ordering.
    pub fn certificate(&self, tower: &FieldTower) -> PdsCertificate {
        let (a, ma) = (self.theta1, tower.order() - self.k);
        let (b, mb) = (self.theta2, self.k);
        let ((t1, m1), (t2, m2)) = if a > b {
            ((a, ma), (b, mb))
        } else {
            ((b, mb), (a, ma))
        };
        PdsCertificate::from_eigenvalues(tower.size(), self.k, t1, t2, m1, m2)
    }
}

/// Smallest ℓ ≤ em/2 with p^ℓ ≡ −1 (mod N).
pub fn semiprimitive_l1(tower: &FieldTower, n: u64) -> Option<u32> {
    let p = tower.p() as u64;
    let mut pw = 1u64;
    for l in 1..=tower.n() / 2 {
        pw = pw * p % n;
        if (pw + 1).is_multiple_of(n) {
            return Some(l);
        }
    }
    None
}

pub fn predicted_cyclotomic_eigenvalues(
    tower: &FieldTower,
    n: u64,
    j: &[u64],
) -> Result<CyclotomicPrediction> {
    if n <= 1 {
        return Err(Error::Precondition(
            "N must be a proper divisor other than 1".into(),
        ));
    }
    // Validates N | q^m − 1, J, and the odd-q side conditions.
    let d = build_dj(tower, n, j)?;
    if !tower.n().is_multiple_of(2) {
        return Err(Error::Precondition("em must be even".into()));
    }
    let l1 = semiprimitive_l1(tower, n).ok_or_else(|| {
        Error::Precondition(format!(
            "no ℓ in 1..={} with p^ℓ ≡ −1 mod {n}",
            tower.n() / 2
        ))
    })?;
    if !tower.n().is_multiple_of(2 * l1) {
        return Err(Error::Precondition(format!(
            "2ℓ1 = {} does not divide em",
            2 * l1
        )));
    }
    let t = tower.n() / (2 * l1);
    let sqrt_q = (tower.p() as i64).pow(tower.n() / 2);
    let sign = if t.is_multiple_of(2) { 1 } else { -1 };
    let u = j.iter().collect::<BTreeSet<_>>().len() as u64;
    let num = u as i64 * (-1 + sign * sqrt_q);
    if num % n as i64 != 0 {
        return Err(Error::Construction("θ1 is not integral".into()));
    }
    let theta1 = num / n as i64;
    let theta2 = theta1 - sign * sqrt_q;
    let pl1 = (tower.p() as u64).pow(l1);
    let epsilon = if n.is_multiple_of(2) && ((pl1 + 1) / n) % 2 == 1 {
        -1
    } else {
        1
    };
    let eps_t = if epsilon == -1 && t % 2 == 1 { -1 } else { 1 };
    let shift = if eps_t == 1 { 0 } else { n / 2 };
    let coset_values = (0..n)
        .map(|i| {
            // i ∈ −J + shift  ⟺  shift − i ∈ J
            let r = (shift + n - i % n) % n;
            if j.contains(&r) {
                theta2
            } else {
                theta1
            }
        })
        .collect();
    Ok(CyclotomicPrediction {
        l1,
        t,
        u,
        k: d.len() as u64,
        theta1,
        theta2,
        epsilon,
        coset_values,
    })
}

/// Q(x) = Σ_{i≤j} A_ij x_i x_j over F_q labels, with x ↦ Σ x_i γ^i.
pub struct QuadricPds {
    pub set: SubsetD,
    pub kind: QuadricKind,
    pub predicted: LatinParams,
}

/// Standard Gram matrix of each kind in dimension m: hyperbolic pairs,
/// with the last pair replaced by an anisotropic binary form for elliptic.
pub fn standard_gram(tower: &FieldTower, kind: QuadricKind) -> Result<Vec<Vec<u32>>> {
    let m = tower.m() as usize;
    if !m.is_multiple_of(2) {
        return Err(Error::Domain("quadrics need even m".into()));
    }
    let mut a = vec![vec![0u32; m]; m];
    for i in (0..m).step_by(2) {
        a[i][i + 1] = 1;
    }
    if kind == QuadricKind::Elliptic {
        let f = tower.fq();
        let q = tower.q() as u32;
        // x² + xy + c·y² anisotropic iff t² + t + c has no root in F_q
        let c = (1..q)
            .find(|&c| {
                (0..q).all(|t| {
                    use crate::linalg::Arith;
                    f.add(f.add(f.mul(t, t), t), c) != 0
                })
            })
            .expect("an irreducible t² + t + c exists");
        a[m - 2][m - 2] = 1;
        a[m - 1][m - 1] = c;
    }
    Ok(a)
}

fn eval_form(f: &crate::field::FqArith<'_>, a: &[Vec<u32>], x: &[u32]) -> u32 {
    use crate::linalg::Arith;
    let mut s = 0;
    for i in 0..x.len() {
        for j in 0..x.len() {
            if a[i][j] != 0 && x[i] != 0 && x[j] != 0 {
                s = f.add(s, f.mul(a[i][j], f.mul(x[i], x[j])));
            }
        }
    }
    s
}

/// Zero set of a nondegenerate quadratic form as a subset of F_{q^m}^*.
pub fn quadric_pds(
    tower: &FieldTower,
    gram: &[Vec<u32>],
    kind: Option<QuadricKind>,
) -> Result<QuadricPds> {
    let m = tower.m() as usize;
    let q = tower.q();
    if !m.is_multiple_of(2) || m < 4 || (m == 4 && q == 2) {
        return Err(Error::Domain(
            "quadric PDS need even m ≥ 4 and (m, q) ≠ (4, 2)".into(),
        ));
    }
    if gram.len() != m || gram.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidSubset(format!("Gram matrix must be {m}×{m}")));
    }
    if gram.iter().flatten().any(|&x| x as u64 >= q) {
        return Err(Error::InvalidSubset(
            "Gram entry is not an F_q label".into(),
        ));
    }
    let f = tower.fq();
    {
        use crate::linalg::Arith;
        let polar: Vec<Vec<u32>> = (0..m)
            .map(|i| (0..m).map(|j| f.add(gram[i][j], gram[j][i])).collect())
            .collect();
        if linalg::rank(f, &polar, m) != m {
            return Err(Error::Domain("quadratic form is degenerate".into()));
        }
    }
    let basis: Vec<Elem> = (0..m as u64).map(|i| tower.pow_gamma(i)).collect();
    let mut zeros = Vec::new();
    let mut x = vec![0u32; m];
    for _ in 1..q.pow(m as u32) {
        // odometer over F_q^m \ {0}
        for xi in x.iter_mut() {
            *xi += 1;
            if *xi as u64 == q {
                *xi = 0;
            } else {
                break;
            }
        }
        if eval_form(&f, gram, &x) == 0 {
            let mut e = Elem::ZERO;
            for (i, &c) in x.iter().enumerate() {
                if c != 0 {
                    e = tower.add(e, tower.mul(f.elem(c), basis[i]));
                }
            }
            zeros.push(e);
        }
    }
    let half = q.pow(m as u32 / 2);
    let low = q.pow(m as u32 / 2 - 1);
    let found = if zeros.len() as u64 == (half - 1) * (low + 1) {
        QuadricKind::Hyperbolic
    } else if zeros.len() as u64 == (half + 1) * (low - 1) {
        QuadricKind::Elliptic
    } else {
        return Err(Error::Construction(format!(
            "{} nonzero singular vectors fits neither quadric type",
            zeros.len()
        )));
    };
    if let Some(k) = kind {
        if k != found {
            return Err(Error::InvalidSubset(format!(
                "form is {found:?}, not {k:?}"
            )));
        }
    }
    let (epsilon, r) = match found {
        QuadricKind::Hyperbolic => (1, low as i64 + 1),
        QuadricKind::Elliptic => (-1, low as i64 - 1),
    };
    let set = SubsetD::from_elems(
        tower,
        &zeros,
        Origin::Quadric {
            kind: found,
            gram: gram.to_vec(),
        },
    )?;
    Ok(QuadricPds {
        set,
        kind: found,
        predicted: LatinParams {
            n: half as i64,
            epsilon,
            r,
        },
    })
}
