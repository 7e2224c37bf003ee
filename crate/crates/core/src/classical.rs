//! The classical Mathai–Quillen Thom form of a metric connection, computed
//! with single forms only.
//!
//! This path shares the form arithmetic with the pair construction but
//! nothing else: the curvature comes from `R = dη + η∧η`, `∇v` is written
//! out in the frame, and the exponential is a product instead of a series.
//! It serves as the oracle for the `ω = 0, Φ = 0` degeneration.

use crate::cone::ConnectionMatrix;
use crate::form::{ChartSpec, Form};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{Scalar, Variable};
use crate::thom::{build_u, ConnectionData};

/// `R_ij = dη_ij + Σ_k η_ik ∧ η_kj`.
pub fn curvature_matrix(eta: &ConnectionMatrix) -> Vec<Vec<Form>> {
    let n = eta.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut r = eta.entry(i, j).exterior_d();
                    for k in 0..n {
                        r += &eta.entry(i, k).wedge(eta.entry(k, j));
                    }
                    r
                })
                .collect()
        })
        .collect()
}

/// `∇v = Σ_k dy_k ⊗ e_k + Σ_{k,l} y_k η_lk ⊗ e_l`.
pub fn covariant_section(chart: ChartSpec, eta: &ConnectionMatrix) -> Form {
    let mut out = Form::zero(chart);
    for k in 1..=chart.n() {
        let e_k = Form::e(chart, k);
        out += &Form::dy(chart, k).wedge(&e_k);
        let y_k = Scalar::var(Variable::Y(k as u16));
        for l in 1..=chart.n() {
            out += &eta
                .entry(l - 1, k - 1)
                .wedge(&Form::e(chart, l))
                .mul_scalar(&y_k);
        }
    }
    out
}

/// `Σ_{i<j} R_ji ⊗ e_i ∧ e_j`.
pub fn curvature_two_vector(chart: ChartSpec, eta: &ConnectionMatrix) -> Form {
    let r = curvature_matrix(eta);
    let mut out = Form::zero(chart);
    for i in 1..=chart.n() {
        for j in i + 1..=chart.n() {
            let e_ij = Form::e(chart, i).wedge(&Form::e(chart, j));
            out += &r[j - 1][i - 1].wedge(&e_ij);
        }
    }
    out
}

/// `exp` of a form whose terms all have even total parity and are nilpotent.
///
/// Such terms commute and square to zero, so `exp(Σ t) = Π (1 + t)`.
pub fn exp_even_nilpotent(a: &Form) -> Form {
    let chart = a.chart();
    let mut acc = Form::one(chart);
    for (key, coeff) in a.terms() {
        assert!(
            key.parity() == 0 && (key.one_forms | key.fiber) != 0,
            "exp_even_nilpotent on a term that is odd or of degree 0"
        );
        let t = Form::term(chart, *key, coeff.clone());
        acc += &acc.wedge(&t);
    }
    acc
}

/// `(-1)^{n(n+1)/2} s^{-n} ∫^B exp(-|v|²/2 - ∇v + R)`.
pub fn classical_thom_form(chart: ChartSpec, eta: &ConnectionMatrix) -> Form {
    let n = chart.n();
    let exponent = &curvature_two_vector(chart, eta) - &covariant_section(chart, eta);
    let weighted = Form::gaussian(chart, 1).wedge(&exp_even_nilpotent(&exponent));
    let mut norm = Scalar::s_power(-(n as i32));
    if (n * (n + 1) / 2) % 2 == 1 {
        norm = -norm;
    }
    weighted.berezin().mul_scalar(&norm)
}

/// Compares the pair construction with `ω = 0`, `Φ = 0` against the
/// classical form: the second slot must vanish and the first must agree
/// term for term.
pub fn check_classical_compare(data: &ConnectionData) -> VerificationReport {
    let degenerate = data.classical_degeneration();
    let mut report = ReportBuilder::new("classical-compare", degenerate.fingerprint());
    match build_u(&degenerate) {
        Ok(thom) => {
            let classical = classical_thom_form(data.chart, &data.eta);
            report.set("u_terms", thom.u.monomial_count() as u64);
            report.set("classical_terms", classical.monomial_count() as u64);
            report.assert_zero_form("second slot of U", &thom.u.second);
            report.assert_zero_form("first slot of U - classical", &(&thom.u.first - &classical));
        }
        Err(e) => report.fail("build U", "-", e.to_string(), "-".into()),
    }
    report.finish()
}
