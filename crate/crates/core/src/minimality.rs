//! Minimality verdicts for C(M_D): brute-force cover oracle, the Heng weight
//! criterion, the span criterion over (y, z), and parameter-level sufficient
//! conditions for PDS inputs.

use serde::Serialize;

use crate::code::{d_yz, dbar_z, fq_labels, MdCode};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::lincode::{EnumeratedCode, Guard};
use crate::par::{self, Exec};
use crate::pds::{is_rho_invariant, predicted_cyclotomic_eigenvalues, LatinType, PdsCertificate};
use crate::subset::SubsetD;

/// A codeword c(u, v), with u an F_q label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodewordId {
    pub u: u32,
    /// Discrete log of v; `None` for v = 0.
    pub v_log: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// supp(covered) ⊆ supp(covering) with the two independent.
    Cover {
        covering: CodewordId,
        covered: CodewordId,
    },
    /// Σ_a wt(c′ + ac) = (q−1)wt(c′) − wt(c).
    Heng { c_prime: CodewordId, c: CodewordId },
    /// D̄ spans only an F_q-subspace of the given dimension.
    SpanDeficient { dim: usize },
    /// D_{(y,z)} = ∅.
    EmptyDyz { y: u32, z_log: u32 },
    /// P_{(y,z)} ⊄ ⟨z⟩: the differences and D̄_z span a space of this F_q-dimension.
    PyzTooLarge { y: u32, z_log: u32, span_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Minimal {
        #[serde(skip_serializing_if = "Vec::is_empty")]
        fired: Vec<String>,
    },
    NotMinimal {
        witness: Witness,
    },
    Inconclusive {
        note: String,
    },
    NotRun {
        reason: String,
    },
}

impl Verdict {
    pub fn minimal() -> Self {
        Verdict::Minimal { fired: Vec::new() }
    }

    /// `Some(true)` for Minimal, `Some(false)` for NotMinimal.
    pub fn definite(&self) -> Option<bool> {
        match self {
            Verdict::Minimal { .. } => Some(true),
            Verdict::NotMinimal { .. } => Some(false),
            _ => None,
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.definite() == Some(true)
    }

    pub fn is_not_run(&self) -> bool {
        matches!(self, Verdict::NotRun { .. })
    }

    fn not_run(reason: impl Into<String>) -> Self {
        Verdict::NotRun {
            reason: reason.into(),
        }
    }

    fn from_guard(e: Error) -> Self {
        Verdict::not_run(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Cover,
    Heng,
    Snc,
    Pds,
    Latin,
    Cyclotomic,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Cover,
        Method::Heng,
        Method::Snc,
        Method::Pds,
        Method::Latin,
        Method::Cyclotomic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cover => "cover",
            Method::Heng => "heng",
            Method::Snc => "snc",
            Method::Pds => "pds",
            Method::Latin => "latin",
            Method::Cyclotomic => "cyclotomic",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Per-method verdicts. Unselected methods are `NotRun`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub cover: Verdict,
    pub heng: Verdict,
    pub snc: Verdict,
    pub pds_sufficient: Verdict,
    pub latin_sufficient: Verdict,
    pub cyclotomic_sufficient: Verdict,
}

impl MinimalityReport {
    fn all(&self) -> [&Verdict; 6] {
        [
            &self.cover,
            &self.heng,
            &self.snc,
            &self.pds_sufficient,
            &self.latin_sufficient,
            &self.cyclotomic_sufficient,
        ]
    }

    /// No two definite verdicts disagree.
    pub fn consistent(&self) -> bool {
        let d: Vec<bool> = self.all().iter().filter_map(|v| v.definite()).collect();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// The common definite verdict, if any method reached one.
    pub fn overall(&self) -> Option<bool> {
        self.all().iter().find_map(|v| v.definite())
    }

    pub fn any_not_run(&self, selected: &[Method]) -> bool {
        selected.iter().any(|&m| self.get(m).is_not_run())
    }

    pub fn get(&self, m: Method) -> &Verdict {
        match m {
            Method::Cover => &self.cover,
            Method::Heng => &self.heng,
            Method::Snc => &self.snc,
            Method::Pds => &self.pds_sufficient,
            Method::Latin => &self.latin_sufficient,
            Method::Cyclotomic => &self.cyclotomic_sufficient,
        }
    }
}

/// Maps a message of the enumerated code back to (u, v).
fn codeword_id(code: &MdCode<'_>, msg: u64, lin: &crate::lincode::LinearCode) -> CodewordId {
    let t = code.tower();
    let f = t.fq();
    let digits = lin.digits(msg);
    let mut full = vec![0u32; t.m() as usize + 1];
    for (d, &row) in digits.iter().zip(lin.kept_rows()) {
        full[row] = *d;
    }
    let mut v = Elem::ZERO;
    for (i, &c) in full[1..].iter().enumerate() {
        if c != 0 {
            v = t.add(v, t.mul(f.elem(c), t.pow_gamma(i as u64)));
        }
    }
    CodewordId {
        u: full[0],
        v_log: t.log(v),
    }
}

fn with_enumeration<F>(code: &MdCode<'_>, exec: Exec, guard: Guard, f: F) -> Verdict
where
    F: FnOnce(&EnumeratedCode<'_>, &crate::lincode::LinearCode) -> Result<Verdict>,
{
    let t = code.tower();
    if t.q() * t.size() > guard.max_codewords {
        return Verdict::not_run(format!(
            "q^(m+1) = {} exceeds the codeword cap of {}",
            t.q() * t.size(),
            guard.max_codewords
        ));
    }
    let lin = code.to_linear_code();
    match lin.enumerate(exec, guard).and_then(|e| f(&e, &lin)) {
        Ok(v) => v,
        Err(e) => Verdict::from_guard(e),
    }
}

/// Exhaustive support-containment search.
pub fn minimality_cover_oracle(code: &MdCode<'_>, exec: Exec, guard: Guard) -> Verdict {
    with_enumeration(code, exec, guard, |e, lin| {
        Ok(match e.cover_oracle()? {
            None => Verdict::minimal(),
            Some((big, small)) => Verdict::NotMinimal {
                witness: Witness::Cover {
                    covering: codeword_id(code, big, lin),
                    covered: codeword_id(code, small, lin),
                },
            },
        })
    })
}

/// Weight-sum criterion over all independent pairs.
pub fn minimality_heng(code: &MdCode<'_>, exec: Exec, guard: Guard) -> Verdict {
    with_enumeration(code, exec, guard, |e, lin| {
        Ok(match e.heng()? {
            None => Verdict::minimal(),
            Some((cp, c)) => Verdict::NotMinimal {
                witness: Witness::Heng {
                    c_prime: codeword_id(code, cp, lin),
                    c: codeword_id(code, c, lin),
                },
            },
        })
    })
}

/// Per-codeword agreement of the cover and Heng scans: pairs of (codeword, minimal?).
pub fn per_codeword_verdicts(
    code: &MdCode<'_>,
    exec: Exec,
    guard: Guard,
) -> Result<Vec<(CodewordId, bool, bool)>> {
    let lin = code.to_linear_code();
    let e = lin.enumerate(exec, guard)?;
    let cover = e.cover_per_codeword()?;
    let heng = e.heng_per_codeword()?;
    Ok(cover
        .into_iter()
        .zip(heng)
        .map(|((m, a), (_, b))| (codeword_id(code, m, &lin), a.is_none(), b.is_none()))
        .collect())
}

/// Default work cap for the span criterion, in element visits.
pub const DEFAULT_SNC_WORK: u64 = 1 << 34;

/// Span criterion: ⟨D̄⟩ = F_{q^m}, and for every y and z ≠ 0, D_{(y,z)} ≠ ∅ and
/// ⟨(D_{(y,z)} − d_0) ∪ D̄_z⟩ = L(z). With `reduce`, z runs over one
/// representative per F_q^*-class.
pub fn minimality_snc(
    tower: &FieldTower,
    d: &SubsetD,
    exec: Exec,
    guard: Guard,
    reduce: bool,
) -> Verdict {
    if tower.q() * tower.size() > guard.max_codewords {
        return Verdict::not_run(format!(
            "q^(m+1) = {} exceeds the cap of {}",
            tower.q() * tower.size(),
            guard.max_codewords
        ));
    }
    let zs = if reduce {
        tower.class_count()
    } else {
        tower.order()
    };
    let work = zs * tower.size();
    if work > guard.max_work.min(DEFAULT_SNC_WORK) {
        return Verdict::not_run(format!("{work} element visits exceed the span-check cap"));
    }
    let dbar = d.complement().elems();
    let whole = tower.span(&dbar);
    if whole.dim() < tower.m() as usize {
        return Verdict::NotMinimal {
            witness: Witness::SpanDeficient { dim: whole.dim() },
        };
    }
    let target = (tower.n() - tower.e()) as usize;
    let failure = par::find_first(exec, zs as usize, |i| {
        snc_failure(tower, d, tower.pow_gamma(i as u64), target).is_some()
    });
    match failure {
        None => Verdict::minimal(),
        Some(i) => Verdict::NotMinimal {
            witness: snc_failure(tower, d, tower.pow_gamma(i as u64), target).unwrap(),
        },
    }
}

fn snc_failure(tower: &FieldTower, d: &SubsetD, z: Elem, target_fp: usize) -> Option<Witness> {
    let z_log = tower.log(z).unwrap();
    let base = tower.span(&dbar_z(tower, d, z));
    for y in fq_labels(tower) {
        let dyz = d_yz(tower, d, y, z);
        let Some(&d0) = dyz.first() else {
            return Some(Witness::EmptyDyz { y, z_log });
        };
        let mut sp = base.clone();
        if sp.dim_fp() < target_fp {
            let diffs: Vec<Elem> = dyz[1..].iter().map(|&x| tower.sub(x, d0)).collect();
            sp = tower.span(&[sp.basis_elems(tower), diffs].concat());
        }
        if sp.dim_fp() < target_fp {
            return Some(Witness::PyzTooLarge {
                y,
                z_log,
                span_dim: sp.dim(),
            });
        }
    }
    None
}

/// Which sufficient conditions of the PDS theorem hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdsConditions {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3a: bool,
    pub cond3b: bool,
    pub cond3c: bool,
}

impl PdsConditions {
    pub fn fired(&self) -> Vec<String> {
        [
            ("3a", self.cond3a),
            ("3b", self.cond3b),
            ("3c", self.cond3c),
        ]
        .into_iter()
        .filter(|x| x.1)
        .map(|x| x.0.to_string())
        .collect()
    }
}

pub fn pds_conditions(cert: &PdsCertificate, q: u64, m: u32) -> PdsConditions {
    let (k, t1, t2) = (cert.k as i128, cert.theta1 as i128, cert.theta2 as i128);
    let (q, qm) = (q as i128, (q as i128).pow(m));
    let t0 = t1.abs().max(t2.abs());
    PdsConditions {
        cond1: k - t2 != qm,
        cond2: k > t1 && k > -(q - 1) * t2,
        cond3a: k < qm + q * t2 - (q - 1) * t1,
        cond3b: k > (q * t0 + t1).max(q * t0 - (q - 1) * t2),
        cond3c: qm / q + t2 - t1 > t0,
    }
}

/// Minimal when conditions 1, 2 and one of 3a–3c hold; never NotMinimal.
pub fn minimality_pds_sufficient(cert: &PdsCertificate, q: u64, m: u32) -> Verdict {
    let c = pds_conditions(cert, q, m);
    let fired = c.fired();
    if c.cond1 && c.cond2 && !fired.is_empty() {
        return Verdict::Minimal { fired };
    }
    let note = if !c.cond2 {
        "condition 2 fails, which is necessary for minimality; confirm with the cover oracle"
            .to_string()
    } else if !c.cond1 {
        "condition 1 fails".to_string()
    } else {
        "none of 3a, 3b, 3c holds".to_string()
    };
    Verdict::Inconclusive { note }
}

fn sqrt_qm(q: u64, m: u32) -> Option<i64> {
    let v = q.pow(m) as i64;
    let r = (v as f64).sqrt().round() as i64;
    (r * r == v).then_some(r)
}

fn shape_ok(q: u64, m: u32) -> Option<String> {
    if m < 4 {
        return Some("needs m ≥ 4".into());
    }
    if m == 4 && q == 2 {
        return Some("excluded case (m, q) = (4, 2)".into());
    }
    if sqrt_qm(q, m).is_none() {
        return Some("q^m is not a square".into());
    }
    None
}

/// Sufficient condition for (negative) Latin square type parameters.
pub fn minimality_latin_sufficient(cert: &PdsCertificate, q: u64, m: u32) -> Verdict {
    if cert.type_flag == LatinType::Neither {
        return Verdict::not_run("parameters are not of Latin square type");
    }
    if let Some(why) = shape_ok(q, m) {
        return Verdict::not_run(why);
    }
    let s = sqrt_qm(q, m).unwrap();
    let (r, eps) = (cert.r.unwrap(), cert.epsilon.unwrap());
    let q = q as i64;
    let holds = if eps == 1 {
        r != s && r > 1
    } else {
        r != s - 1 && r * (s + q) > (q - 1) * s
    };
    if holds {
        Verdict::minimal()
    } else {
        Verdict::Inconclusive {
            note: format!("r = {r} misses the ε = {eps} bound"),
        }
    }
}

/// Sufficient condition for semiprimitive cyclotomic unions D_J.
pub fn minimality_cyclotomic_sufficient(tower: &FieldTower, n: u64, j: &[u64]) -> Verdict {
    let (q, m) = (tower.q(), tower.m());
    if let Some(why) = shape_ok(q, m) {
        return Verdict::not_run(why);
    }
    if !is_rho_invariant(tower, n, j) {
        return Verdict::not_run("J is not invariant under ρ");
    }
    let pred = match predicted_cyclotomic_eigenvalues(tower, n, j) {
        Ok(p) => p,
        Err(e) => return Verdict::not_run(e.to_string()),
    };
    let s = sqrt_qm(q, m).unwrap() as i128;
    let (u, n, q) = (pred.u as i128, n as i128, q as i128);
    let holds = if pred.t % 2 == 1 {
        u * (s + 1) != s * n && u * (s + 1) > n
    } else {
        u * (s + q) * (s - 1) > (q - 1) * s * n
    };
    if holds {
        Verdict::minimal()
    } else {
        Verdict::Inconclusive {
            note: format!("u = {u} misses the t = {} bound", pred.t),
        }
    }
}

/// Options for [`analyze`].
#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub exec: Exec,
    pub guard: Guard,
}

/// Runs the selected methods. `cert` feeds the parameter-level methods; they
/// are `NotRun` without it.
pub fn analyze(
    code: &MdCode<'_>,
    cert: Option<&PdsCertificate>,
    methods: &[Method],
    opts: AnalyzeOptions,
) -> MinimalityReport {
    let t = code.tower();
    let d = code.set();
    let (q, m) = (t.q(), t.m());
    let skipped = || Verdict::not_run("not selected");
    let sel = |x: Method| methods.contains(&x);
    let no_cert = || Verdict::not_run("no verified PDS certificate");
    MinimalityReport {
        cover: if sel(Method::Cover) {
            minimality_cover_oracle(code, opts.exec, opts.guard)
        } else {
            skipped()
        },
        heng: if sel(Method::Heng) {
            minimality_heng(code, opts.exec, opts.guard)
        } else {
            skipped()
        },
        snc: if sel(Method::Snc) {
            minimality_snc(t, d, opts.exec, opts.guard, true)
        } else {
            skipped()
        },
        pds_sufficient: match (sel(Method::Pds), cert) {
            (false, _) => skipped(),
            (true, None) => no_cert(),
            (true, Some(c)) => minimality_pds_sufficient(c, q, m),
        },
        latin_sufficient: match (sel(Method::Latin), cert) {
            (false, _) => skipped(),
            (true, None) => no_cert(),
            (true, Some(c)) => minimality_latin_sufficient(c, q, m),
        },
        cyclotomic_sufficient: if !sel(Method::Cyclotomic) {
            skipped()
        } else if let crate::subset::Origin::Cyclotomic { n, j } = d.origin() {
            minimality_cyclotomic_sufficient(t, *n, j)
        } else {
            Verdict::not_run("D is not a cyclotomic union")
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::pds::{build_dj, verify_pds_spectral};
    use crate::subset::Origin;

    fn tower(p: u32, e: u32, m: u32) -> FieldTower {
        FieldTower::new(&FieldSpec::new(p, e, m)).unwrap()
    }

    fn hyperplane_minus_zero(t: &FieldTower) -> SubsetD {
        let h = t.hyperplane(Elem::ONE).unwrap();
        let e: Vec<Elem> = h.elements(t).into_iter().filter(|x| !x.is_zero()).collect();
        SubsetD::from_elems(t, &e, Origin::Explicit).unwrap()
    }

    #[test]
    fn conditions_on_known_certificates() {
        let row1 = PdsCertificate::from_eigenvalues(243, 22, 4, -5, 132, 110);
        let c = pds_conditions(&row1, 3, 5);
        assert!(c.cond1 && c.cond2 && c.cond3a);
        let comp = PdsCertificate::from_eigenvalues(243, 220, 4, -5, 110, 132);
        let c = pds_conditions(&comp, 3, 5);
        assert!(c.cond1 && c.cond2 && c.cond3b && !c.cond3a);
        let ex31 = PdsCertificate::from_eigenvalues(256, 204, 12, -4, 51, 204);
        let c = pds_conditions(&ex31, 4, 4);
        assert_eq!(c.fired(), vec!["3b", "3c"]);
        assert!(minimality_pds_sufficient(&ex31, 4, 4).is_minimal());
    }

    #[test]
    fn latin_boundaries() {
        let mut c = PdsCertificate::from_eigenvalues(81, 32, 5, -4, 32, 48);
        assert_eq!(c.type_flag, LatinType::Latin);
        assert!(minimality_latin_sufficient(&c, 3, 4).is_minimal());
        c.r = Some(1);
        assert!(matches!(
            minimality_latin_sufficient(&c, 3, 4),
            Verdict::Inconclusive { .. }
        ));
        let ell = PdsCertificate::from_eigenvalues(81, 20, 2, -7, 60, 20);
        assert_eq!((ell.epsilon, ell.r), (Some(-1), Some(2)));
        assert!(minimality_latin_sufficient(&ell, 3, 4).is_minimal());
        let row1 = PdsCertificate::from_eigenvalues(243, 22, 4, -5, 132, 110);
        assert!(minimality_latin_sufficient(&row1, 3, 5).is_not_run());
    }

    #[test]
    fn broken_hyperplane_set_is_not_minimal_everywhere() {
        let t = tower(3, 1, 4);
        let d = hyperplane_minus_zero(&t);
        let cert = verify_pds_spectral(&t, &d).unwrap();
        assert_eq!(cert.theta1, cert.k as i64);
        assert!(!pds_conditions(&cert, 3, 4).cond2);
        let code = MdCode::new(&t, d.clone());
        let rep = analyze(&code, Some(&cert), &Method::ALL, AnalyzeOptions::default());
        assert!(rep.consistent());
        assert_eq!(rep.cover.definite(), Some(false));
        assert_eq!(rep.heng.definite(), Some(false));
        assert_eq!(rep.snc.definite(), Some(false));
        assert!(matches!(rep.pds_sufficient, Verdict::Inconclusive { .. }));

        let comp = d.complement();
        let code = MdCode::new(&t, comp.clone());
        assert!(matches!(
            minimality_snc(&t, &comp, Exec::default(), Guard::default(), true),
            Verdict::NotMinimal {
                witness: Witness::SpanDeficient { dim: 3 }
            }
        ));
        assert_eq!(
            minimality_cover_oracle(&code, Exec::default(), Guard::default()).definite(),
            Some(false)
        );
    }

    #[test]
    fn reduction_does_not_change_snc() {
        let t = tower(3, 1, 4);
        for j in [vec![0u64], vec![1], vec![0, 2], vec![1, 3, 4]] {
            let d = build_dj(&t, 5, &j).unwrap();
            let a = minimality_snc(&t, &d, Exec::default(), Guard::default(), true);
            let b = minimality_snc(&t, &d, Exec::Sequential, Guard::default(), false);
            assert_eq!(a.definite(), b.definite(), "J = {j:?}");
            let code = MdCode::new(&t, d);
            let c = minimality_cover_oracle(&code, Exec::default(), Guard::default());
            assert_eq!(a.definite(), c.definite(), "J = {j:?}");
        }
    }

    #[test]
    fn trace_code_toy_is_minimal() {
        // u fixed to 0: the trace code, every nonzero word of weight q^m − q^{m−1}
        let t = tower(3, 1, 3);
        let code = MdCode::new(&t, SubsetD::empty(&t));
        let rows: Vec<Vec<u32>> = code.generator_rows().into_iter().skip(1).collect();
        let lin = crate::lincode::LinearCode::from_rows(t.fq(), rows);
        let e = lin.enumerate(Exec::default(), Guard::default()).unwrap();
        assert!(e.weights()[1..].iter().all(|&w| w == 18));
        assert_eq!(e.cover_oracle().unwrap(), None);
    }

    #[test]
    fn not_run_on_guard() {
        let t = tower(3, 1, 5);
        let d = build_dj(&t, 11, &[0]).unwrap();
        let code = MdCode::new(&t, d.clone());
        let g = Guard {
            max_codewords: 100,
            max_work: 1 << 30,
        };
        assert!(minimality_cover_oracle(&code, Exec::default(), g).is_not_run());
        assert!(minimality_snc(&t, &d, Exec::default(), g, true).is_not_run());
    }
}
