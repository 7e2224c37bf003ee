//! Construction of the mapping cone Thom form and its theorem-level checks.
//!
//! Everything happens on one chart of the total space with the fixed
//! orthonormal frame `e1..en`, coordinates `x` on the base, fiber
//! coordinates `y` and the tautological section `v = Σ y_k e_k`.

use num_traits::One;

use crate::cone::{
    check_omega, cone_covariant_unchecked, cone_d_unchecked, nabla_tilde, pair_berezin,
    pair_contract_v, pair_wedge_unchecked, phi_lambda, ConePair, ConnectionMatrix,
    EndomorphismField,
};
use crate::error::{Error, Result};
use crate::form::{merge_sign, ChartSpec, Form, FormTerm};
use crate::instance::fingerprint;
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{rational, rational_int, Monomial, Rational, Scalar, Variable};

/// Frame data of a Euclidean mapping cone covariant derivative together
/// with the closed base 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    pub chart: ChartSpec,
    pub eta: ConnectionMatrix,
    pub phi: EndomorphismField,
    pub omega: Form,
    pub t_dependent: bool,
}

impl ConnectionData {
    pub fn new(
        chart: ChartSpec,
        eta: ConnectionMatrix,
        phi: EndomorphismField,
        omega: Form,
    ) -> Result<Self> {
        if eta.n() != chart.n() || phi.n() != chart.n() || omega.chart() != chart {
            return Err(Error::Schema(
                "connection data does not match the chart".into(),
            ));
        }
        // Skewness and base-ness of eta/phi are enforced by their constructors.
        check_omega(&omega)?;
        let t_dependent = eta
            .entries()
            .iter()
            .flatten()
            .any(|f| f.terms().any(|(_, s)| s.depends_on(|v| v == Variable::T)))
            || phi
                .entries()
                .iter()
                .flatten()
                .any(|s| s.depends_on(|v| v == Variable::T));
        Ok(ConnectionData {
            chart,
            eta,
            phi,
            omega,
            t_dependent,
        })
    }

    /// No validation at all; for negative controls in test harnesses.
    pub fn new_unchecked(
        chart: ChartSpec,
        eta: ConnectionMatrix,
        phi: EndomorphismField,
        omega: Form,
    ) -> Self {
        ConnectionData {
            chart,
            eta,
            phi,
            omega,
            t_dependent: true,
        }
    }

    /// The same connection with `ω = 0` and `Φ = 0`.
    pub fn classical_degeneration(&self) -> ConnectionData {
        ConnectionData {
            chart: self.chart,
            eta: self.eta.clone(),
            phi: EndomorphismField::zero(self.chart),
            omega: Form::zero(self.chart),
            t_dependent: self.t_dependent,
        }
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(self)
    }

    fn covariant(&self, p: &ConePair) -> ConePair {
        cone_covariant_unchecked(&self.eta, &self.phi, &self.omega, p)
    }
}

/// `(-1)^{n(n+1)/2} s^{-n}`, i.e. `(-1)^{n(n+1)/2} (2π)^{-n/2}`.
pub fn thom_normalization(n: usize) -> Scalar {
    let sign = if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Scalar::s_power(-(n as i32)).scale_int(sign)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomForm {
    pub u: ConePair,
    pub normalization: Scalar,
}

impl ThomForm {
    /// Degrees `(n, n-1)` and Gaussian weight 1 on every term, or a
    /// description of the first violation.
    pub fn shape_violation(&self) -> Option<String> {
        let n = self.u.chart().n() as u32;
        for (slot, form, degree) in [
            ("first", &self.u.first, n),
            ("second", &self.u.second, n - 1),
        ] {
            for (k, _) in form.terms() {
                if k.form_degree() != degree || k.gauss != 1 || k.fiber != 0 {
                    return Some(format!(
                        "{slot} slot term {} (degree {}, weight {})",
                        k.describe(&form.chart()),
                        k.form_degree(),
                        k.gauss
                    ));
                }
            }
        }
        None
    }
}

/// `v = Σ y_k ⊗ e_k`.
pub fn tautological_v(chart: ChartSpec) -> Form {
    let mut v = Form::zero(chart);
    for k in 1..=chart.n() {
        v += &Form::e(chart, k).mul_scalar(&Scalar::var(Variable::Y(k as u16)));
    }
    v
}

/// `|v|^2 / 2` as a plain function.
pub fn half_norm_sq(chart: ChartSpec) -> Scalar {
    let mut s = Scalar::zero();
    for k in 1..=chart.n() {
        s.add_term(Monomial::power(Variable::Y(k as u16), 2), rational(1, 2));
    }
    s
}

fn pair_bit(i: usize, j: usize) -> u64 {
    (1u64 << (i - 1)) | (1u64 << (j - 1))
}

/// Collects `Σ_{i<j} ⟨w_i, e_j⟩ ⊗ (e_i ∧ e_j)` from fiber-degree-1 forms `w_i`.
fn assemble_two_vector(chart: ChartSpec, columns: &[Form]) -> Form {
    let n = chart.n();
    let mut out = Form::zero(chart);
    for i in 1..=n {
        for j in i + 1..=n {
            let coeff = columns[i - 1].fiber_component(1 << (j - 1));
            out += &coeff.tensor_fiber(pair_bit(i, j));
        }
    }
    out
}

/// `Q = Σ_{i<j} ⟨∇²e_i + ω∧Φe_i, e_j⟩ ⊗ e_i∧e_j` and
/// `S = Σ_{i<j} ⟨Φ∇e_i - ∇Φe_i, e_j⟩ ⊗ e_i∧e_j`, computed by applying the
/// operators to the frame.
pub fn build_qs(data: &ConnectionData) -> (Form, Form) {
    let chart = data.chart;
    let mut q_cols = Vec::with_capacity(chart.n());
    let mut s_cols = Vec::with_capacity(chart.n());
    for i in 1..=chart.n() {
        let e = Form::e(chart, i);
        let nabla_e = nabla_tilde(&data.eta, &e);
        let phi_e = phi_lambda(&data.phi, &e);
        let mut q = nabla_tilde(&data.eta, &nabla_e);
        q += &data.omega.wedge(&phi_e);
        let mut s = phi_lambda(&data.phi, &nabla_e);
        s -= &nabla_tilde(&data.eta, &phi_e);
        q_cols.push(q);
        s_cols.push(s);
    }
    (
        assemble_two_vector(chart, &q_cols),
        assemble_two_vector(chart, &s_cols),
    )
}

/// `(Q, S)` from the closed-form matrix expressions
/// `R_ji + φ_ji ω` and `φ_jk η_ki - dφ_ji - φ_ki η_jk`, with
/// `R = dη + η∧η`.
pub fn build_qs_matrix(data: &ConnectionData) -> (Form, Form) {
    let chart = data.chart;
    let n = chart.n();
    let eta = |a: usize, b: usize| data.eta.entry(a, b);
    let phi = |a: usize, b: usize| data.phi.entry(a, b);
    let mut q = Form::zero(chart);
    let mut s = Form::zero(chart);
    for i in 0..n {
        for j in i + 1..n {
            let mut r_ji = eta(j, i).exterior_d();
            for k in 0..n {
                r_ji += &eta(j, k).wedge(eta(k, i));
            }
            r_ji += &data.omega.mul_scalar(phi(j, i));
            q += &r_ji.tensor_fiber(pair_bit(i + 1, j + 1));

            let mut s_ij = -Form::scalar(chart, phi(j, i).clone()).exterior_d();
            for k in 0..n {
                s_ij += &eta(k, i).mul_scalar(phi(j, k));
                s_ij -= &eta(j, k).mul_scalar(phi(k, i));
            }
            s += &s_ij.tensor_fiber(pair_bit(i + 1, j + 1));
        }
    }
    (q, s)
}

/// `𝔸(v, 0) = (∇v, Φv)`.
pub fn covariant_of_v(data: &ConnectionData) -> ConePair {
    data.covariant(&ConePair::from_first(tautological_v(data.chart)))
}

/// `A = (|v|²/2, 0) + 𝔸(v, 0) - (Q, S)`.
pub fn build_a(data: &ConnectionData) -> ConePair {
    let chart = data.chart;
    let (q, s) = build_qs(data);
    let mut a = ConePair::from_first(Form::scalar(chart, half_norm_sq(chart)));
    a += &covariant_of_v(data);
    a -= &ConePair {
        first: q,
        second: s,
    };
    a
}

/// `e^{-A}` together with the first vanishing wedge power of the nilpotent part.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub value: ConePair,
    pub vanishing_power: usize,
    pub max_power_terms: usize,
}

/// `e^{-A} = exp(-|v|²/2) Σ_k (-N)^k / k!` where `N` is `A` minus its
/// scalar part. The series is summed until a wedge power is exactly zero.
pub fn pair_exp_neg_a(a: &ConePair) -> Result<Exponential> {
    let chart = a.chart();
    let scalar_part = a.first.filter(|k| k.fiber_degree() == 0);
    let expected = Form::scalar(chart, half_norm_sq(chart));
    if scalar_part != expected {
        return Err(Error::MalformedA(format!(
            "fiber-degree-0 part of the first slot is {scalar_part}, expected |v|^2/2"
        )));
    }
    if a.second.min_fiber_degree() == Some(0) {
        return Err(Error::MalformedA(
            "second slot has a fiber-degree-0 term".into(),
        ));
    }
    let neg_n = ConePair {
        first: -a.first.filter(|k| k.fiber_degree() > 0),
        second: -&a.second,
    };
    // fiber degree grows by at least one per factor
    let limit = chart.n() + 2;
    let mut sum = ConePair::one(chart);
    let mut power = ConePair::one(chart);
    let mut factorial = Rational::one();
    let mut max_power_terms = 0;
    for k in 1..=limit {
        power = pair_wedge_unchecked(&power, &neg_n);
        if power.is_zero() {
            let gauss = Form::gaussian(chart, 1);
            let value = ConePair {
                first: gauss.wedge(&sum.first),
                second: gauss.wedge(&sum.second),
            };
            return Ok(Exponential {
                value,
                vanishing_power: k,
                max_power_terms,
            });
        }
        max_power_terms = max_power_terms.max(power.monomial_count());
        factorial *= rational_int(k as i64);
        sum += &power.scale(&(Rational::one() / &factorial));
    }
    Err(Error::ExpDidNotTerminate(limit))
}

/// `U = (-1)^{n(n+1)/2} s^{-n} ∫^B e^{-A}`.
pub fn build_u(data: &ConnectionData) -> Result<ThomForm> {
    Ok(build_u_with_stats(data)?.0)
}

pub fn build_u_with_stats(data: &ConnectionData) -> Result<(ThomForm, Exponential)> {
    let a = build_a(data);
    let exp = pair_exp_neg_a(&a)?;
    let normalization = thom_normalization(data.chart.n());
    let u = pair_berezin(&exp.value).mul_scalar(&normalization);
    Ok((ThomForm { u, normalization }, exp))
}

/// `∫ y^{2k} exp(-y²/2) dy = (2k-1)!! s`, zero for odd powers.
pub fn gaussian_moment(power: u32) -> Scalar {
    if power % 2 == 1 {
        return Scalar::zero();
    }
    let mut dfact = Rational::one();
    let mut odd = 1i64;
    while odd < power as i64 {
        dfact *= rational_int(odd);
        odd += 2;
    }
    Scalar::s_power(1).scale(&dfact)
}

fn integrate_form(form: &Form) -> Result<Form> {
    let chart = form.chart();
    let n = chart.n();
    let dy = chart.dy_mask();
    let mut out = Form::zero(chart);
    for (k, coeff) in form.terms() {
        if k.one_forms & dy != dy {
            continue;
        }
        match k.gauss {
            0 => {
                return Err(Error::DivergentIntegral {
                    term: k.describe(&chart),
                })
            }
            1 => {}
            g => return Err(Error::UnsupportedWeight { weight: g }),
        }
        let base = k.one_forms & chart.dx_mask();
        let sign = merge_sign(base, dy);
        let mut integrated = Scalar::zero();
        for (mono, c) in coeff.terms() {
            let (ys, rest) = mono.split_fiber(n);
            if ys.iter().any(|e| e % 2 == 1) {
                continue;
            }
            let mut factor = Scalar::monomial(rest, c.clone());
            for e in ys {
                factor = &factor * &gaussian_moment(e);
            }
            integrated += &factor;
        }
        if sign < 0 {
            integrated = -integrated;
        }
        out.add_term(FormTerm::new(0, base, k.fiber), &integrated);
    }
    Ok(out)
}

/// Integration along the fiber: terms with the full `dy1…dyn` block and
/// Gaussian weight 1 are integrated against the exact moment table, every
/// other term contributes zero. Orientation: `(dx part) ∧ dy1 ∧ … ∧ dyn`
/// integrates with sign `+1`.
pub fn fiber_integrate(p: &ConePair) -> Result<ConePair> {
    Ok(ConePair {
        first: integrate_form(&p.first)?,
        second: integrate_form(&p.second)?,
    })
}

/// `Y = Σ_{i<j} ⟨(d∇/dt) e_i, e_j⟩ ⊗ e_i∧e_j`, `Z = Σ_{i<j} ⟨(dΦ/dt) e_i, e_j⟩ ⊗ e_i∧e_j`.
pub fn build_yz(data: &ConnectionData) -> (Form, Form) {
    let chart = data.chart;
    let eta_dot = data.eta.partial_t();
    let phi_dot = data.phi.partial_t();
    let mut y_cols = Vec::with_capacity(chart.n());
    let mut z_cols = Vec::with_capacity(chart.n());
    for i in 1..=chart.n() {
        let e = Form::e(chart, i);
        // e_i has constant coefficients, so only the connection part survives
        y_cols.push(nabla_tilde(&eta_dot, &e));
        z_cols.push(phi_lambda(&phi_dot, &e));
    }
    (
        assemble_two_vector(chart, &y_cols),
        assemble_two_vector(chart, &z_cols),
    )
}

/// Residual of `𝔸(Q, S) = (0, 0)`.
pub fn bianchi_residual(data: &ConnectionData) -> ConePair {
    let (q, s) = build_qs(data);
    data.covariant(&ConePair {
        first: q,
        second: s,
    })
}

pub fn check_bianchi(data: &ConnectionData) -> VerificationReport {
    let mut report = ReportBuilder::new("bianchi", data.fingerprint());
    let (q, s) = build_qs(data);
    report.set("q_terms", q.monomial_count() as u64);
    report.set("s_terms", s.monomial_count() as u64);
    let residual = data.covariant(&ConePair {
        first: q.clone(),
        second: s.clone(),
    });
    report.assert_zero_pair("A(Q,S)", &residual);
    let (qm, sm) = build_qs_matrix(data);
    report.assert_zero_pair(
        "Q,S operational vs matrix formula",
        &ConePair {
            first: &q - &qm,
            second: &s - &sm,
        },
    );
    report.finish()
}

/// The three identities behind `(𝔸 + v⌟) A = 0`, then that identity itself.
pub fn check_a_annihilated(data: &ConnectionData, report: &mut ReportBuilder) {
    let chart = data.chart;
    let v = tautological_v(chart);
    let (q, s) = build_qs(data);
    let phi_v = phi_lambda(&data.phi, &v);
    report.assert_zero_form("<Phi v, v> = 0", &phi_v.contract_v());

    let nabla_v = nabla_tilde(&data.eta, &v);
    let mut curv_v = nabla_tilde(&data.eta, &nabla_v);
    curv_v += &data.omega.wedge(&phi_v);
    report.assert_zero_form("v-contract Q", &(&q.contract_v() - &curv_v));

    let mut comm_v = phi_lambda(&data.phi, &nabla_v);
    comm_v -= &nabla_tilde(&data.eta, &phi_v);
    report.assert_zero_form("v-contract S", &(&(-s.contract_v()) - &comm_v));

    let a = build_a(data);
    let mut total = data.covariant(&a);
    total += &pair_contract_v(&a);
    report.assert_zero_pair("(A + v-contract) A", &total);
}

pub fn check_closed(data: &ConnectionData) -> VerificationReport {
    let mut report = ReportBuilder::new("closed", data.fingerprint());
    check_a_annihilated(data, &mut report);
    match build_u_with_stats(data) {
        Ok((thom, exp)) => {
            report.set("exp_terms", exp.value.monomial_count() as u64);
            report.set("exp_max_power_terms", exp.max_power_terms as u64);
            report.set("exp_vanishing_power", exp.vanishing_power as u64);
            report.set("u_terms", thom.u.monomial_count() as u64);
            let n = data.chart.n();
            report.assert_true("exp truncation bound", exp.vanishing_power <= n + 1, || {
                format!(
                    "(-N)^k first vanished at k = {} > n + 1",
                    exp.vanishing_power
                )
            });
            let shape = thom.shape_violation();
            report.assert_true("U degrees (n, n-1)", shape.is_none(), || {
                shape.unwrap_or_default()
            });
            let closed = cone_d_unchecked(&thom.u, &data.omega);
            report.assert_zero_pair("d^omega U", &closed);
        }
        Err(e) => report.fail("build U", "-", e.to_string(), "-".into()),
    }
    report.finish()
}

pub fn check_fiber(data: &ConnectionData) -> VerificationReport {
    let mut report = ReportBuilder::new("fiber", data.fingerprint());
    let chart = data.chart;
    match build_u(data).and_then(|thom| fiber_integrate(&thom.u)) {
        Ok(integral) => {
            report.value(integral.to_string());
            let residual = &integral - &ConePair::one(chart);
            report.assert_zero_pair("fiber integral = (1, 0)", &residual);
        }
        Err(e) => report.fail("fiber integral", "-", e.to_string(), "-".into()),
    }
    report.finish()
}

/// Residual of `d^ω ∫^B(α, β) = ∫^B (𝔸 + v⌟)(α, β)`.
pub fn berezin_commutation_residual(data: &ConnectionData, p: &ConePair) -> ConePair {
    let lhs = cone_d_unchecked(&pair_berezin(p), &data.omega);
    let mut inner = data.covariant(p);
    inner += &pair_contract_v(p);
    &lhs - &pair_berezin(&inner)
}

/// Residual of `∫^B 𝔸(α, β) = d^ω ∫^B(α, β)` for base pairs.
pub fn base_berezin_residual(data: &ConnectionData, p: &ConePair) -> ConePair {
    let lhs = cone_d_unchecked(&pair_berezin(p), &data.omega);
    &lhs - &pair_berezin(&data.covariant(p))
}

/// Transgression: the identity `𝔸(Y, Z) = (∂Q/∂t, ∂S/∂t)`, the
/// intermediate `∂A/∂t = -(𝔸 + v⌟)(Y, Z)`, and
/// `∂U/∂t = d^ω (c ∫^B (Y, Z) ∧ e^{-A})`.
pub fn check_transgression(data: &ConnectionData) -> VerificationReport {
    let mut report = ReportBuilder::new("transgression", data.fingerprint());
    let chart = data.chart;
    let (y, z) = build_yz(data);
    let yz = ConePair {
        first: y,
        second: z,
    };
    report.set("yz_terms", yz.monomial_count() as u64);
    let (q, s) = build_qs(data);
    let dqs = ConePair {
        first: q.partial_t(),
        second: s.partial_t(),
    };
    let cov_yz = data.covariant(&yz);
    report.assert_zero_pair("A(Y,Z) = d(Q,S)/dt", &(&cov_yz - &dqs));

    let a = build_a(data);
    let mut rhs_a = cov_yz.clone();
    rhs_a += &pair_contract_v(&yz);
    let da = a.partial_t();
    report.assert_zero_pair("dA/dt = -(A + v-contract)(Y,Z)", &(&da + &rhs_a));

    match pair_exp_neg_a(&a) {
        Ok(exp) => {
            let normalization = thom_normalization(chart.n());
            let u = pair_berezin(&exp.value).mul_scalar(&normalization);
            let lhs = u.partial_t();
            let primitive =
                pair_berezin(&pair_wedge_unchecked(&yz, &exp.value)).mul_scalar(&normalization);
            report.set("primitive_terms", primitive.monomial_count() as u64);
            let rhs = cone_d_unchecked(&primitive, &data.omega);
            report.set("du_dt_terms", lhs.monomial_count() as u64);
            report.assert_zero_pair("dU/dt = d^omega(primitive)", &(&lhs - &rhs));
        }
        Err(e) => report.fail("exp(-A)", "-", e.to_string(), "-".into()),
    }
    report.finish()
}

/// `ϱ(α, β) = (α + μ∧β, β)`.
pub fn rho(mu: &Form, p: &ConePair) -> ConePair {
    ConePair {
        first: &p.first + &mu.wedge(&p.second),
        second: p.second.clone(),
    }
}

/// Residual of `d^ω ϱ(p) = ϱ d^{ω + dμ}(p)`.
pub fn rho_residual(mu: &Form, p: &ConePair, omega: &Form) -> ConePair {
    let lhs = cone_d_unchecked(&rho(mu, p), omega);
    let shifted = omega + &mu.exterior_d();
    let rhs = rho(mu, &cone_d_unchecked(p, &shifted));
    &lhs - &rhs
}

pub fn rho_conjugation_check(
    mu: &Form,
    p: &ConePair,
    omega: &Form,
    fingerprint: &str,
) -> VerificationReport {
    let mut report = ReportBuilder::new("rho", fingerprint);
    report.assert_zero_pair(
        "d^omega rho = rho d^(omega + d mu)",
        &rho_residual(mu, p, omega),
    );
    report.finish()
}
