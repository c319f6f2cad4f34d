//! Aligned plain-text renderings of the reports.

use mincodes::minimality::{Method, MinimalityReport, Verdict};

use crate::commands::{report_key, BlockingReport, CodeReport, PdsReport, SssReport};

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i == 0 {
                    format!("{s:<w$}", w = widths[i])
                } else {
                    format!("{s:>w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn field_line(r: &crate::commands::InstanceInfo) -> String {
    let f = &r.field;
    let name = r
        .recipe
        .as_deref()
        .map(|n| format!("{n}: "))
        .unwrap_or_default();
    format!(
        "{name}F_{{{}^{}}} over F_{{{}}}, |D| = {}\n",
        f.p.pow(f.e),
        f.m,
        f.p.pow(f.e),
        r.k
    )
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

pub fn pds(r: &PdsReport) -> String {
    let mut out = field_line(&r.instance);
    match &r.certificate {
        Some(c) => {
            let rows = vec![
                [
                    "v", "k", "lambda", "mu", "theta1", "theta2", "m1", "m2", "type", "r", "eps",
                ]
                .map(String::from)
                .to_vec(),
                vec![
                    c.v.to_string(),
                    c.k.to_string(),
                    c.lambda.to_string(),
                    c.mu.to_string(),
                    c.theta1.to_string(),
                    c.theta2.to_string(),
                    c.m1.to_string(),
                    c.m2.to_string(),
                    format!("{:?}", c.type_flag),
                    opt(c.r),
                    opt(c.epsilon),
                ],
            ];
            out.push_str(&grid(&rows));
        }
        None => out.push_str(&format!(
            "not a PDS: {}\n",
            r.failure.as_deref().unwrap_or("")
        )),
    }
    out.push_str(&format!("F_q^*-invariant: {}\n", r.fq_invariant));
    out
}

fn verdict_text(v: &Verdict) -> (String, String) {
    match v {
        Verdict::Minimal { fired } if fired.is_empty() => ("minimal".into(), String::new()),
        Verdict::Minimal { fired } => ("minimal".into(), format!("via {}", fired.join(", "))),
        Verdict::NotMinimal { witness } => (
            "not minimal".into(),
            serde_json::to_string(witness).unwrap_or_default(),
        ),
        Verdict::Inconclusive { note } => ("inconclusive".into(), note.clone()),
        Verdict::NotRun { reason } => ("not run".into(), reason.clone()),
    }
}

pub fn code(r: &CodeReport, methods: &[Method], report: &MinimalityReport) -> String {
    let mut out = field_line(&r.instance);
    out.push_str(&format!("[{}, {}] code\n\n", r.length, r.dim));
    if let Some(w) = &r.weights {
        let mut rows = vec![vec!["weight".to_string(), "frequency".to_string()]];
        rows.extend(
            w.as_pairs()
                .into_iter()
                .map(|(a, b)| vec![a.to_string(), b.to_string()]),
        );
        out.push_str(&grid(&rows));
        out.push_str(&format!("({})\n\n", r.weights_source));
    }
    let mut rows = vec![vec![
        "method".to_string(),
        "verdict".to_string(),
        String::new(),
    ]];
    for &m in methods {
        let (v, note) = verdict_text(report.get(m));
        rows.push(vec![report_key(m).to_string(), v, note]);
    }
    out.push_str(&grid(&rows));
    out.push_str(&format!(
        "\nAB condition: {}\nweight class: {}\n",
        opt(r.ab_condition),
        r.weight_class
            .map_or("-".into(), |c| format!("{c:?}").to_lowercase())
    ));
    out
}

pub fn blocking(r: &BlockingReport) -> String {
    let v = &r.verdict;
    let mut out = field_line(&r.instance);
    let rows: Vec<Vec<String>> = [
        ("target", r.target.to_string()),
        ("size", r.size.to_string()),
        ("blocking", v.blocking.to_string()),
        ("contains hyperplane", v.contains_subspace.to_string()),
        ("cutting", v.cutting.to_string()),
        ("cutting blocking set", v.cutting_blocking_set.to_string()),
        (
            "witness",
            v.witness.map_or("-".into(), |w| {
                format!("L(γ^{}) ⊆ L(γ^{})", w.h1_log, w.h2_log)
            }),
        ),
        ("condition 2", r.condition2.to_string()),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    out.push_str(&grid(&rows));
    out
}

pub fn sss(r: &SssReport) -> String {
    let a = &r.access;
    let mut out = field_line(&r.instance);
    out.push_str(&format!(
        "x1 = γ^{} ({}), minimal access sets: {}\n",
        a.x1_log,
        if a.x1_in_dbar { "in D̄" } else { "in D" },
        a.total
    ));
    let mut rows = vec![vec!["N_x".to_string(), "participants".to_string()]];
    rows.extend(
        a.coverage_classes
            .iter()
            .map(|c| vec![c.n.to_string(), c.count.to_string()]),
    );
    out.push_str(&grid(&rows));
    out.push_str(&format!(
        "coverage: {}\n",
        match a.closed_form_agrees {
            Some(true) => "enumerated, matches closed form",
            Some(false) => "enumerated, differs from closed form",
            None => "closed form",
        }
    ));
    out.push_str(&format!(
        "classification: {}\n",
        format!("{:?}", a.classification).to_lowercase()
    ));
    if !a.dictators_log.is_empty() {
        let logs: Vec<String> = a.dictators_log.iter().map(|l| format!("γ^{l}")).collect();
        out.push_str(&format!("dictators: {}\n", logs.join(", ")));
    }
    if let Some(s) = &r.spot_check {
        out.push_str(&format!(
            "recovery spot check: {}/{}\n",
            s.recovered, s.sampled
        ));
    }
    out
}
