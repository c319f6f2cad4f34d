//! The four subcommands. Each returns a JSON value, a table rendering, and
//! the process status.

use std::fmt;

use mincodes::blocking::{
    cutting_condition2, is_cutting_vectorial_blocking, BlockingVerdict, CONDITION2_READING,
};
use mincodes::charsum::{full_spectrum_with, Spectrum, SpectrumExport, SpectrumMethod};
use mincodes::code::{
    ab_condition, ab_violation_predicted, weight_class, weight_distribution_predicted, MdCode,
    WeightClass, WeightDistribution, DEFAULT_WEIGHT_WORK,
};
use mincodes::lincode::Guard;
use mincodes::minimality::{analyze, AnalyzeOptions, Method, MinimalityReport, Verdict};
use mincodes::pds::{
    certificate_from_spectrum, is_fq_invariant, predicted_cyclotomic_eigenvalues,
    verify_pds_direct, CyclotomicPrediction, DirectVerdict, PdsCertificate, DIRECT_PDS_LIMIT,
};
use mincodes::recipes::SubsetSpec;
use mincodes::sss::{AccessReport, Scheme};
use mincodes::{Error, Exec, FieldSpec, FieldTower, Origin, SubsetD};
use serde::Serialize;
use serde_json::Value;

use crate::input::{resolve, Instance};
use crate::{table, BlockingArgs, CodeArgs, Common, Side, SssArgs, Target};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 3;
pub const EXIT_PARTIAL: u8 = 4;

#[derive(Debug)]
pub enum CmdError {
    /// Bad flags or specs: exit 2.
    Config(String),
    /// The input fails verification (e.g. not a PDS): exit 3.
    Negative(String),
    /// Anything else: exit 1.
    Internal(String),
}

impl CmdError {
    pub fn code(&self) -> u8 {
        match self {
            CmdError::Internal(_) => 1,
            CmdError::Config(_) => 2,
            CmdError::Negative(_) => EXIT_NEGATIVE,
        }
    }

    pub fn from_lib(e: Error) -> Self {
        match e {
            Error::NotPds(_) => CmdError::Negative(e.to_string()),
            Error::GuardExceeded(_) => CmdError::Internal(e.to_string()),
            e => CmdError::Config(e.to_string()),
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Config(s) | CmdError::Negative(s) | CmdError::Internal(s) => f.write_str(s),
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub warnings: Vec<String>,
    pub status: u8,
}

fn to_json<T: Serialize>(x: &T) -> Result<Value, CmdError> {
    serde_json::to_value(x).map_err(|e| CmdError::Internal(e.to_string()))
}

#[derive(Serialize)]
pub struct InstanceInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    pub field: FieldSpec,
    pub modulus: Vec<u32>,
    pub subset: SubsetSpec,
    pub k: usize,
}

fn info(inst: &Instance) -> InstanceInfo {
    InstanceInfo {
        recipe: inst.name.clone(),
        field: inst.field.clone(),
        modulus: inst.tower.modulus().to_vec(),
        subset: inst.subset.clone(),
        k: inst.d.len(),
    }
}

/// Spectrum and certificate, or the reason D is not a PDS.
fn certify(t: &FieldTower, d: &SubsetD, exec: Exec) -> (Spectrum, Result<PdsCertificate, String>) {
    let sp = full_spectrum_with(t, d, SpectrumMethod::Auto, exec);
    let cert = if !d.is_proper(t) {
        Err("D must be nonempty and proper".to_string())
    } else if !d.is_symmetric(t) {
        Err("−D ≠ D".to_string())
    } else {
        certificate_from_spectrum(t, &sp).map_err(|e| e.to_string())
    };
    (sp, cert)
}

#[derive(Serialize)]
pub struct PdsReport {
    pub instance: InstanceInfo,
    pub fq_invariant: bool,
    pub is_pds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PdsCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srg_closed_forms_agree: Option<bool>,
    pub spectrum: SpectrumExport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<DirectVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<CyclotomicPrediction>,
}

pub fn pds(c: &Common, exec: Exec) -> Result<Outcome, CmdError> {
    let inst = resolve(c)?;
    let (t, d) = (&inst.tower, &inst.d);
    let (sp, cert) = certify(t, d, exec);
    let mut warnings = Vec::new();
    let fq_invariant = is_fq_invariant(t, d);
    if !fq_invariant {
        warnings.push("D is not F_q^*-invariant".into());
    }
    let direct = if t.size() <= DIRECT_PDS_LIMIT && d.is_proper(t) && d.is_symmetric(t) {
        verify_pds_direct(t, d).ok()
    } else {
        None
    };
    let prediction = match d.origin() {
        Origin::Cyclotomic { n, j } => predicted_cyclotomic_eigenvalues(t, *n, j).ok(),
        _ => None,
    };
    let report = PdsReport {
        instance: info(&inst),
        fq_invariant,
        is_pds: cert.is_ok(),
        srg_closed_forms_agree: cert.as_ref().ok().map(|c| c.srg_closed_forms_agree()),
        certificate: cert.as_ref().ok().cloned(),
        failure: cert.as_ref().err().cloned(),
        spectrum: sp.export(),
        direct,
        prediction,
    };
    let status = if report.is_pds {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome {
        table: table::pds(&report),
        json: to_json(&report)?,
        warnings,
        status,
    })
}

fn parse_methods(s: &str) -> Result<Vec<Method>, CmdError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Method::ALL);
        } else {
            out.push(
                Method::parse(part)
                    .ok_or_else(|| CmdError::Config(format!("unknown method {part:?}")))?,
            );
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(CmdError::Config("select at least one method".into()));
    }
    Ok(out)
}

fn guard_from(arg: Option<u64>) -> Result<Guard, CmdError> {
    let mut g = Guard::default();
    if let Some(n) = arg {
        if n == 0 {
            return Err(CmdError::Config(
                "--guard-codewords must be positive".into(),
            ));
        }
        g.max_codewords = n;
    }
    Ok(g)
}

#[derive(Serialize)]
pub struct CodeReport {
    pub instance: InstanceInfo,
    pub length: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightDistribution>,
    pub weights_source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_weights: Option<WeightDistribution>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub merged_weights: Vec<u64>,
    pub minimal: serde_json::Map<String, Value>,
    pub overall_minimal: Option<bool>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ab_condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ab_violation_predicted: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_class: Option<WeightClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PdsCertificate>,
}

pub fn code(a: &CodeArgs, exec: Exec) -> Result<Outcome, CmdError> {
    let methods = parse_methods(&a.methods)?;
    let guard = guard_from(a.guard_codewords)?;
    let inst = resolve(&a.common)?;
    let (t, d) = (&inst.tower, &inst.d);
    let (q, m) = (t.q(), t.m());
    let (sp, cert) = certify(t, d, exec);
    let cert = cert.ok();
    let code = MdCode::new(t, d.clone());
    let mut warnings = Vec::new();

    let (weights, source) = match code.weight_distribution_direct(exec, DEFAULT_WEIGHT_WORK) {
        Ok(w) => (Some(w), "direct"),
        Err(_) => match code.weight_distribution_closed(&sp) {
            Ok(w) => (Some(w), "character_sums"),
            Err(_) => {
                warnings.push("weight distribution skipped: enumeration over budget".into());
                (None, "none")
            }
        },
    };
    let (predicted, merged) = match &cert {
        Some(c) => {
            let (p, merged) = weight_distribution_predicted(c, q, m);
            (Some(p), merged)
        }
        None => (None, Vec::new()),
    };
    let report = analyze(
        &code,
        cert.as_ref(),
        &methods,
        AnalyzeOptions { exec, guard },
    );
    let guarded: Vec<&str> = [Method::Cover, Method::Heng, Method::Snc]
        .into_iter()
        .filter(|&x| methods.contains(&x) && report.get(x).is_not_run())
        .map(Method::name)
        .collect();
    for name in &guarded {
        if let Verdict::NotRun { reason } = report.get(Method::parse(name).unwrap()) {
            warnings.push(format!("{name} not run: {reason}"));
        }
    }
    if !report.consistent() {
        return Err(CmdError::Internal(format!(
            "minimality methods disagree: {report:?}"
        )));
    }
    let mut minimal = serde_json::Map::new();
    for &x in &methods {
        minimal.insert(report_key(x).into(), to_json(report.get(x))?);
    }
    let class = cert.as_ref().map(|c| weight_class(c, q, m)).or_else(|| {
        weights
            .as_ref()
            .and_then(|w| match w.nonzero_weights().len() {
                3 => Some(WeightClass::Three),
                4 => Some(WeightClass::Four),
                _ => None,
            })
    });
    let out = CodeReport {
        instance: info(&inst),
        length: code.length(),
        dim: code.dimension(),
        ab_condition: weights.as_ref().and_then(|w| ab_condition(w, q).ok()),
        ab_violation_predicted: cert.as_ref().map(|c| ab_violation_predicted(c, q, m)),
        weights,
        weights_source: source,
        predicted_weights: predicted,
        merged_weights: merged,
        minimal,
        overall_minimal: report.overall(),
        consistent: true,
        weight_class: class,
        certificate: cert,
    };
    if let Some(path) = &a.generator {
        std::fs::write(path, code.generator_matrix_text())
            .map_err(|e| CmdError::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    let status = if !guarded.is_empty() && out.overall_minimal.is_none() {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        table: table::code(&out, &methods, &report),
        json: to_json(&out)?,
        warnings,
        status,
    })
}

pub fn report_key(m: Method) -> &'static str {
    match m {
        Method::Pds => "pds_sufficient",
        Method::Latin => "latin_sufficient",
        Method::Cyclotomic => "cyclotomic_sufficient",
        other => other.name(),
    }
}

#[derive(Serialize)]
pub struct BlockingReport {
    pub instance: InstanceInfo,
    pub target: &'static str,
    pub size: usize,
    #[serde(flatten)]
    pub verdict: BlockingVerdict,
    pub condition2: bool,
    pub condition2_reading: &'static str,
}

pub fn blocking(a: &BlockingArgs, exec: Exec) -> Result<Outcome, CmdError> {
    let inst = resolve(&a.common)?;
    let (t, d) = (&inst.tower, &inst.d);
    let (s, target) = match a.target {
        Target::Dbar => (d.complement(), "dbar"),
        Target::D => (d.clone(), "d"),
    };
    let report = BlockingReport {
        instance: info(&inst),
        target,
        size: s.len(),
        verdict: is_cutting_vectorial_blocking(t, &s, exec),
        condition2: cutting_condition2(t, d, exec),
        condition2_reading: CONDITION2_READING,
    };
    Ok(Outcome {
        table: table::blocking(&report),
        json: to_json(&report)?,
        warnings: Vec::new(),
        status: EXIT_OK,
    })
}

#[derive(Serialize)]
pub struct SpotCheck {
    pub sampled: usize,
    pub recovered: usize,
}

#[derive(Serialize)]
pub struct SssReport {
    pub instance: InstanceInfo,
    pub code_minimal: Option<bool>,
    #[serde(flatten)]
    pub access: AccessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_check: Option<SpotCheck>,
}

/// Coordinates up to which the dual generator is built for spot checks.
const SPOT_CHECK_MAX_LENGTH: usize = 4096;

pub fn sss(a: &SssArgs, exec: Exec) -> Result<Outcome, CmdError> {
    let guard = guard_from(a.guard_codewords)?;
    let inst = resolve(&a.common)?;
    let (t, d) = (&inst.tower, &inst.d);
    let x1 = match (a.x1_log, a.x1) {
        (Some(l), _) if l >= t.order() => {
            return Err(CmdError::Config(format!(
                "--x1-log must be below {}",
                t.order()
            )))
        }
        (Some(l), _) => t.pow_gamma(l),
        (None, Some(side)) => {
            let s = if side == Side::InD {
                d.clone()
            } else {
                d.complement()
            };
            let l = *s
                .logs(t)
                .first()
                .ok_or_else(|| CmdError::Config("the chosen side is empty".into()))?;
            t.pow_gamma(l as u64)
        }
        (None, None) => t.pow_gamma(0),
    };
    let (_, cert) = certify(t, d, exec);
    let code = MdCode::new(t, d.clone());
    let methods = [
        Method::Cover,
        Method::Pds,
        Method::Latin,
        Method::Cyclotomic,
    ];
    let mr: MinimalityReport = analyze(
        &code,
        cert.as_ref().ok(),
        &methods,
        AnalyzeOptions { exec, guard },
    );
    let code_minimal = mr.overall();
    let mut warnings = Vec::new();
    if code_minimal != Some(true) {
        warnings.push(
            "the code is not known to be minimal; access sets need not match codewords".into(),
        );
    }
    let scheme = Scheme::new(&code, x1).map_err(CmdError::from_lib)?;
    let access = scheme.report(exec, code_minimal == Some(true), guard);
    let spot_check = if a.spot_check == 0 {
        None
    } else if code.length() > SPOT_CHECK_MAX_LENGTH {
        warnings.push(format!(
            "recovery spot check skipped above {SPOT_CHECK_MAX_LENGTH} coordinates"
        ));
        None
    } else {
        let dual = scheme.dual_generator();
        let words = scheme.access_codewords();
        let step = (words.len() / a.spot_check).max(1);
        let sample: Vec<_> = words.iter().step_by(step).take(a.spot_check).collect();
        let recovered = sample
            .iter()
            .filter(|&&&(u, v)| scheme.access_set_recovers(u, v, &dual))
            .count();
        Some(SpotCheck {
            sampled: sample.len(),
            recovered,
        })
    };
    let report = SssReport {
        instance: info(&inst),
        code_minimal,
        access,
        spot_check,
    };
    Ok(Outcome {
        table: table::sss(&report),
        json: to_json(&report)?,
        warnings,
        status: EXIT_OK,
    })
}
