//! Secret sharing from C(M_D)^⊥: minimal access sets correspond to codewords
//! of C(M_D) equal to 1 at the dealer coordinate x1.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::MdCode;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{Arith, Rref};
use crate::lincode::Guard;
use crate::par::{self, Exec};

/// A scheme: the code together with the dealer coordinate x1.
pub struct Scheme<'c, 't> {
    pub code: &'c MdCode<'t>,
    pub x1: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Dictatorial,
    Democratic,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageClass {
    pub n: u64,
    pub count: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageSource {
    Enumerated,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessReport {
    pub x1_log: u32,
    #[serde(rename = "x1_in_Dbar")]
    pub x1_in_dbar: bool,
    /// Codewords with value 1 at x1.
    pub total: u64,
    /// How many of those are minimal codewords, when the code is not known minimal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_total: Option<u64>,
    pub coverage_classes: Vec<CoverageClass>,
    pub classification: Classification,
    /// Participants covered by every minimal access set.
    pub dictators_log: Vec<u32>,
    /// Whether the coverage was enumerated or taken from the closed form.
    pub coverage_source: CoverageSource,
    /// Agreement of the enumerated coverage with the closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_agrees: Option<bool>,
}

impl<'c, 't> Scheme<'c, 't> {
    pub fn new(code: &'c MdCode<'t>, x1: Elem) -> Result<Self> {
        if x1.is_zero() {
            return Err(Error::Domain("x1 must be nonzero".into()));
        }
        Ok(Scheme { code, x1 })
    }

    fn x1_pos(&self) -> usize {
        self.code.tower().log(self.x1).unwrap() as usize
    }

    /// (u, v) with c(u, v)_{x1} = 1, all q^m of them when the code has full dimension.
    pub fn access_codewords(&self) -> Vec<(u32, Elem)> {
        let t = self.code.tower();
        let f = t.fq();
        let in_d = self.code.set().contains(self.x1);
        let mut out = Vec::new();
        for u in 0..t.q() as u32 {
            for v in t.elements() {
                let tr = f.label(t.trace_sub(t.mul(v, self.x1)));
                let val = if in_d { f.add(u, tr) } else { tr };
                if val == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn minimal_access_count(&self) -> u64 {
        self.access_codewords().len() as u64
    }

    /// Value-1 codewords that are minimal codewords, by the cover oracle.
    pub fn minimal_access_count_oracle(&self, exec: Exec, guard: Guard) -> Result<u64> {
        let lin = self.code.to_linear_code();
        if lin.dim() != self.code.tower().m() as usize + 1 {
            return Err(Error::Precondition(
                "code does not have full dimension".into(),
            ));
        }
        let e = lin.enumerate(exec, guard)?;
        let x1p = self.x1_pos();
        Ok(par::sum_range(exec, lin.message_count() as usize, |i| {
            (lin.codeword(i as u64)[x1p] == 1 && e.covered_by(i as u64).is_none()) as u64
        }))
    }

    /// N_{x_i} for every participant x_i ≠ x1, by enumeration.
    pub fn participant_coverage(&self, exec: Exec) -> Vec<(Elem, u64)> {
        let words = self.access_codewords();
        let x1p = self.x1_pos();
        let len = self.code.length();
        let counts = par::accumulate(exec, words.len(), len, |i, acc| {
            let (u, v) = words[i];
            for (a, c) in acc.iter_mut().zip(self.code.codeword(u, v)) {
                *a += (c != 0) as u64;
            }
        });
        self.code
            .coords()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != x1p)
            .map(|(i, &x)| (x, counts[i]))
            .collect()
    }

    /// q^m when x1 ∉ D and x_i ∈ F_q^* x1, else q^m − q^{m−1}.
    pub fn coverage_closed_form(&self, xi: Elem) -> u64 {
        let t = self.code.tower();
        let (q, m) = (t.q(), t.m());
        let dbar = !self.code.set().contains(self.x1);
        if dbar && t.sub_units().iter().any(|&a| t.mul(a, self.x1) == xi) {
            q.pow(m)
        } else {
            q.pow(m) - q.pow(m - 1)
        }
    }

    /// Participants whose coverage equals the number of access sets.
    pub fn dictators(&self, coverage: &[(Elem, u64)], total: u64) -> Vec<Elem> {
        coverage
            .iter()
            .filter(|&&(_, n)| n == total)
            .map(|&(x, _)| x)
            .collect()
    }

    pub fn classify(&self, coverage: &[(Elem, u64)], total: u64) -> Classification {
        if !self.dictators(coverage, total).is_empty() {
            Classification::Dictatorial
        } else if coverage.windows(2).all(|w| w[0].1 == w[1].1) {
            Classification::Democratic
        } else {
            Classification::Neither
        }
    }

    pub fn report(&self, exec: Exec, known_minimal: bool, guard: Guard) -> AccessReport {
        let t = self.code.tower();
        let total = self.minimal_access_count();
        let work = total.saturating_mul(self.code.length() as u64);
        let (coverage, source) = if work <= guard.max_work {
            (self.participant_coverage(exec), CoverageSource::Enumerated)
        } else {
            let x1p = self.x1_pos();
            let cov = self
                .code
                .coords()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != x1p)
                .map(|(_, &x)| (x, self.coverage_closed_form(x)))
                .collect();
            (cov, CoverageSource::ClosedForm)
        };
        let mut classes: BTreeMap<u64, u64> = BTreeMap::new();
        for &(_, n) in &coverage {
            *classes.entry(n).or_insert(0) += 1;
        }
        let closed_form_agrees = (source == CoverageSource::Enumerated).then(|| {
            coverage
                .iter()
                .all(|&(x, n)| n == self.coverage_closed_form(x))
        });
        AccessReport {
            x1_log: t.log(self.x1).unwrap(),
            x1_in_dbar: !self.code.set().contains(self.x1),
            total,
            minimal_total: (!known_minimal)
                .then(|| self.minimal_access_count_oracle(exec, guard).ok())
                .flatten(),
            coverage_classes: classes
                .into_iter()
                .rev()
                .map(|(n, count)| CoverageClass { n, count })
                .collect(),
            classification: self.classify(&coverage, total),
            dictators_log: self
                .dictators(&coverage, total)
                .into_iter()
                .map(|x| t.log(x).unwrap())
                .collect(),
            coverage_source: source,
            closed_form_agrees,
        }
    }

    /// Checks that the participants in supp(c(u,v)) \ {x1} recover the secret:
    /// column x1 of a generator of C^⊥ lies in the span of their columns, and
    /// dropping any single participant loses it.
    pub fn access_set_recovers(&self, u: u32, v: Elem, dual: &[Vec<u32>]) -> bool {
        let t = self.code.tower();
        let f = t.fq();
        let c = self.code.codeword(u, v);
        let x1p = self.x1_pos();
        if c[x1p] != 1 {
            return false;
        }
        let members: Vec<usize> = (0..c.len()).filter(|&i| i != x1p && c[i] != 0).collect();
        let column = |j: usize| dual.iter().map(|r| r[j]).collect::<Vec<u32>>();
        let spans = |cols: &[usize]| {
            let mut r = Rref::new(f, dual.len());
            for &j in cols {
                r.insert(column(j));
            }
            r.contains(&column(x1p))
        };
        spans(&members) && (members.is_empty() || !spans(&members[1..]))
    }

    /// Generator rows of C(M_D)^⊥.
    pub fn dual_generator(&self) -> Vec<Vec<u32>> {
        let f = self.code.tower().fq();
        let mut r = Rref::new(f, self.code.length());
        for row in self.code.generator_rows() {
            r.insert(row);
        }
        r.nullspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, FieldTower};
    use crate::pds::build_dj;

    #[test]
    fn small_scheme_counts() {
        let t = FieldTower::new(&FieldSpec::new(3, 1, 4)).unwrap();
        let d = build_dj(&t, 5, &[1]).unwrap();
        let code = MdCode::new(&t, d.clone());
        let x_in = d.iter().next().unwrap();
        let x_out = d.complement().iter().next().unwrap();
        for x1 in [x_in, x_out] {
            let s = Scheme::new(&code, x1).unwrap();
            assert_eq!(s.minimal_access_count(), 81);
            let rep = s.report(Exec::default(), true, Guard::default());
            assert_eq!(rep.closed_form_agrees, Some(true));
        }
    }
}
