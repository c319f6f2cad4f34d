//! F_q-linear maps of F_{q^m} as reduced q-polynomials Σ a_i X^{q^i}, their
//! trace duals, and automorphisms of D acting on C(M_D).

use serde::{Deserialize, Serialize};

use crate::code::MdCode;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::par::{self, Exec};
use crate::subset::SubsetD;

/// f(X) = Σ_{i<m} a_i X^{q^i}
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<Elem>,
}

/// JSON form: discrete logs of the coefficients, `null` for zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomialSpec {
    pub coeffs_logs: Vec<Option<u64>>,
}

impl QPolynomial {
    pub fn new(tower: &FieldTower, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() != tower.m() as usize {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                tower.m(),
                coeffs.len()
            )));
        }
        Ok(QPolynomial { coeffs })
    }

    pub fn from_spec(tower: &FieldTower, spec: &QPolynomialSpec) -> Result<Self> {
        let coeffs = spec
            .coeffs_logs
            .iter()
            .map(|l| l.map_or(Elem::ZERO, |l| tower.pow_gamma(l)))
            .collect();
        Self::new(tower, coeffs)
    }

    pub fn to_spec(&self, tower: &FieldTower) -> QPolynomialSpec {
        QPolynomialSpec {
            coeffs_logs: self
                .coeffs
                .iter()
                .map(|&a| tower.log(a).map(u64::from))
                .collect(),
        }
    }

    /// X^{q^i}
    pub fn monomial(tower: &FieldTower, i: u32, a: Elem) -> Self {
        let mut coeffs = vec![Elem::ZERO; tower.m() as usize];
        coeffs[(i % tower.m()) as usize] = a;
        QPolynomial { coeffs }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::monomial(tower, 0, Elem::ONE)
    }

    /// x ↦ λx
    pub fn scalar(tower: &FieldTower, lambda: Elem) -> Self {
        Self::monomial(tower, 0, lambda)
    }

    /// x ↦ x^q
    pub fn frobenius_q(tower: &FieldTower) -> Self {
        Self::monomial(tower, 1, Elem::ONE)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn eval(&self, tower: &FieldTower, x: Elem) -> Elem {
        let q = tower.q();
        let mut acc = Elem::ZERO;
        let mut xp = x;
        for &a in &self.coeffs {
            acc = tower.add(acc, tower.mul(a, xp));
            xp = tower.pow(xp, q);
        }
        acc
    }

    /// f̃ with ã_i = a_{m−i}^{q^i}, indices mod m.
    pub fn trace_dual(&self, tower: &FieldTower) -> Self {
        let m = self.coeffs.len();
        let coeffs = (0..m)
            .map(|i| tower.pow(self.coeffs[(m - i) % m], tower.q().pow(i as u32)))
            .collect();
        QPolynomial { coeffs }
    }

    /// self ∘ other
    pub fn compose(&self, tower: &FieldTower, other: &Self) -> Self {
        let m = self.coeffs.len();
        let mut coeffs = vec![Elem::ZERO; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let qi = tower.q().pow(i as u32);
            for (j, &b) in other.coeffs.iter().enumerate() {
                let c = &mut coeffs[(i + j) % m];
                *c = tower.add(*c, tower.mul(a, tower.pow(b, qi)));
            }
        }
        QPolynomial { coeffs }
    }

    /// Trivial kernel, tested on the F_q-basis γ^0, …, γ^{m−1}.
    pub fn is_bijective(&self, tower: &FieldTower) -> bool {
        let images: Vec<Elem> = (0..tower.m() as u64)
            .map(|i| self.eval(tower, tower.pow_gamma(i)))
            .collect();
        tower.span(&images).dim() == tower.m() as usize
    }
}

/// Whether `map` sends D into (hence onto, when injective) D.
pub fn preserves_set(d: &SubsetD, map: impl Fn(Elem) -> Elem) -> bool {
    d.iter().all(|x| d.contains(map(x)))
}

/// Bijective and g(D) = D.
pub fn is_automorphism_of(tower: &FieldTower, d: &SubsetD, g: &QPolynomial) -> bool {
    g.is_bijective(tower) && preserves_set(d, |x| g.eval(tower, x))
}

/// x ↦ x^p preserves D. This map is F_p-linear and F_q-semilinear, so only set
/// preservation is checked.
pub fn frobenius_p_preserves(tower: &FieldTower, d: &SubsetD) -> bool {
    let p = tower.p() as u64;
    preserves_set(d, |x| tower.pow(x, p))
}

/// First (u, v) for which c(u,v)_{g(x)} = c(u, g̃(v))_x fails at some x.
pub fn induced_identity_failure(
    code: &MdCode<'_>,
    g: &QPolynomial,
    exec: Exec,
) -> Option<(u32, Elem)> {
    let t = code.tower();
    let dual = g.trace_dual(t);
    let perm: Vec<usize> = code
        .coords()
        .iter()
        .map(|&x| t.log(g.eval(t, x)).map_or(usize::MAX, |l| l as usize))
        .collect();
    let q = t.q() as usize;
    let hit = par::find_first(exec, q * t.size() as usize, |i| {
        let (u, v) = ((i % q) as u32, Elem((i / q) as u32));
        let c = code.codeword(u, v);
        let image = code.codeword(u, dual.eval(t, v));
        perm.iter()
            .zip(&image)
            .any(|(&pi, &rhs)| pi == usize::MAX || c[pi] != rhs)
    });
    hit.map(|i| ((i % q) as u32, Elem((i / q) as u32)))
}

/// Checks c(u,v)^g = c(u, g̃(v)) for every (u, v); g must be an automorphism of D.
pub fn induced_code_automorphism_check(
    code: &MdCode<'_>,
    g: &QPolynomial,
    exec: Exec,
) -> Result<bool> {
    if !is_automorphism_of(code.tower(), code.set(), g) {
        return Err(Error::Precondition("g is not an automorphism of D".into()));
    }
    Ok(induced_identity_failure(code, g, exec).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::pds::build_dj;

    fn tower(p: u32, e: u32, m: u32) -> FieldTower {
        FieldTower::new(&FieldSpec::new(p, e, m)).unwrap()
    }

    #[test]
    fn linearity_and_identity() {
        let t = tower(2, 2, 3);
        let f = QPolynomial::new(&t, vec![t.pow_gamma(5), Elem::ZERO, t.pow_gamma(11)]).unwrap();
        let id = QPolynomial::identity(&t);
        assert_eq!(id.trace_dual(&t), id);
        for l in t.subfield(crate::field::Level::Sub) {
            for x in t.elements().step_by(5) {
                for y in t.elements().step_by(9) {
                    let lhs = f.eval(&t, t.add(t.mul(l, x), y));
                    let rhs = t.add(t.mul(l, f.eval(&t, x)), f.eval(&t, y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_dual_is_inverse_power() {
        let t = tower(3, 1, 4);
        let fr = QPolynomial::frobenius_q(&t);
        let d = fr.trace_dual(&t);
        assert_eq!(d, QPolynomial::monomial(&t, 3, Elem::ONE));
        for x in t.elements() {
            for y in t.elements() {
                let a = t.trace_sub(t.mul(fr.eval(&t, x), y));
                let b = t.trace_sub(t.mul(d.eval(&t, y), x));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn multiplication_and_shift() {
        let t = tower(2, 2, 4);
        let d = build_dj(&t, 5, &[1, 2, 3, 4]).unwrap();
        for l in t.sub_units() {
            assert!(is_automorphism_of(&t, &d, &QPolynomial::scalar(&t, l)));
        }
        assert!(!is_automorphism_of(
            &t,
            &d,
            &QPolynomial::scalar(&t, t.gamma())
        ));
        assert!(frobenius_p_preserves(&t, &d));
        let zero = QPolynomial::scalar(&t, Elem::ZERO);
        assert!(!zero.is_bijective(&t));
    }

    #[test]
    fn non_automorphism_breaks_identity() {
        let t = tower(3, 1, 4);
        let d = build_dj(&t, 5, &[0]).unwrap();
        let code = MdCode::new(&t, d);
        let g = QPolynomial::scalar(&t, t.gamma());
        assert!(g.is_bijective(&t));
        let (u, _) = induced_identity_failure(&code, &g, Exec::default()).unwrap();
        assert_ne!(u, 0);
        assert!(induced_code_automorphism_check(&code, &g, Exec::default()).is_err());
    }
}
