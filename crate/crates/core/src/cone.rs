//! Mapping cone pairs and the operators acting on them.
//!
//! A [`ConePair`] `(a, b)` stands for an element of `Ω^i ⊕ Ω^{i-1}`.
//! Products follow the componentwise rule
//!
//! ```text
//! (a, b) ∧ (c, d) = (a∧c, b∧c + â∧d)
//! ```
//!
//! where `â` multiplies each term of `a` by `(-1)^{form degree + fiber degree}`.
//! This is the rule for `a + θb` with `θ` odd and `dθ = ω`, and it makes
//! `d^ω`, `∇̃`, `Φ^Λ` and contraction act as graded derivations of the product.
//! On terms with even form degree it agrees with the sign
//! `(-1)^{|x|(|δ|+1)}` on `(α⊗x) ∧ (δ⊗v)`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::form::{merge_sign, ChartSpec, Form, FormTerm};
use crate::scalar::{Scalar, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConePair {
    pub first: Form,
    pub second: Form,
}

impl ConePair {
    pub fn new(first: Form, second: Form) -> Result<Self> {
        if first.chart() != second.chart() {
            let (l, r) = (first.chart(), second.chart());
            return Err(Error::ChartMismatch {
                left_m: l.m(),
                left_n: l.n(),
                right_m: r.m(),
                right_n: r.n(),
            });
        }
        Ok(ConePair { first, second })
    }

    pub fn zero(chart: ChartSpec) -> Self {
        ConePair {
            first: Form::zero(chart),
            second: Form::zero(chart),
        }
    }

    /// The unit `(1, 0)`.
    pub fn one(chart: ChartSpec) -> Self {
        ConePair {
            first: Form::one(chart),
            second: Form::zero(chart),
        }
    }

    pub fn from_first(first: Form) -> Self {
        let chart = first.chart();
        ConePair {
            first,
            second: Form::zero(chart),
        }
    }

    pub fn from_second(second: Form) -> Self {
        let chart = second.chart();
        ConePair {
            first: Form::zero(chart),
            second,
        }
    }

    pub fn chart(&self) -> ChartSpec {
        self.first.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> ConePair {
        ConePair {
            first: f(&self.first),
            second: f(&self.second),
        }
    }

    pub fn scale(&self, c: &crate::scalar::Rational) -> ConePair {
        self.map(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, c: &Scalar) -> ConePair {
        self.map(|f| f.mul_scalar(c))
    }

    pub fn partial_t(&self) -> ConePair {
        self.map(Form::partial_t)
    }

    pub fn monomial_count(&self) -> usize {
        self.first.monomial_count() + self.second.monomial_count()
    }

    /// First nonzero term, tagged with its slot.
    pub fn first_nonzero(&self) -> Option<(&'static str, String, Scalar)> {
        self.first
            .first_term()
            .map(|(t, s)| ("first", t, s))
            .or_else(|| self.second.first_term().map(|(t, s)| ("second", t, s)))
    }
}

impl fmt::Display for ConePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

impl AddAssign<&ConePair> for ConePair {
    fn add_assign(&mut self, rhs: &ConePair) {
        self.first += &rhs.first;
        self.second += &rhs.second;
    }
}

impl SubAssign<&ConePair> for ConePair {
    fn sub_assign(&mut self, rhs: &ConePair) {
        self.first -= &rhs.first;
        self.second -= &rhs.second;
    }
}

impl Add for &ConePair {
    type Output = ConePair;

    fn add(self, rhs: &ConePair) -> ConePair {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ConePair {
    type Output = ConePair;

    fn sub(self, rhs: &ConePair) -> ConePair {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ConePair {
    type Output = ConePair;

    fn neg(self) -> ConePair {
        self.map(|f| -f)
    }
}

/// Skew matrix of base functions, the frame representation of `Φ`:
/// `Φ e_j = Σ_i phi[i][j] e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismField {
    phi: Vec<Vec<Scalar>>,
}

impl EndomorphismField {
    pub fn new(chart: ChartSpec, phi: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = chart.n();
        check_square(&phi, n, "phi")?;
        for (i, row) in phi.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                chart.check_scalar(s)?;
                if s.depends_on(|v| matches!(v, Variable::Y(_))) || s.has_s() {
                    return Err(Error::NotBaseForm {
                        what: format!("phi[{}][{}]", i + 1, j + 1),
                        reason: "depends on fiber coordinates or s".into(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let sum = &phi[i][j] + &phi[j][i];
                if !sum.is_zero() {
                    return Err(Error::NotSkew {
                        what: "phi",
                        i: i + 1,
                        j: j + 1,
                        detail: format!("phi[{0}][{1}] + phi[{1}][{0}] = {sum}", i + 1, j + 1),
                    });
                }
            }
        }
        Ok(EndomorphismField { phi })
    }

    /// Skips validation; only for negative controls.
    pub fn new_unchecked(phi: Vec<Vec<Scalar>>) -> Self {
        EndomorphismField { phi }
    }

    pub fn zero(chart: ChartSpec) -> Self {
        let n = chart.n();
        EndomorphismField {
            phi: vec![vec![Scalar::zero(); n]; n],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.phi[i][j]
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn partial_t(&self) -> EndomorphismField {
        EndomorphismField {
            phi: self
                .phi
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| s.partial_unchecked(Variable::T))
                        .collect()
                })
                .collect(),
        }
    }

    fn as_forms(&self, chart: ChartSpec) -> Vec<Vec<Form>> {
        self.phi
            .iter()
            .map(|row| row.iter().map(|s| Form::scalar(chart, s.clone())).collect())
            .collect()
    }
}

/// Skew matrix of base 1-forms: `∇ e_j = Σ_i eta[i][j] ⊗ e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMatrix {
    eta: Vec<Vec<Form>>,
}

impl ConnectionMatrix {
    pub fn new(chart: ChartSpec, eta: Vec<Vec<Form>>) -> Result<Self> {
        let n = chart.n();
        check_square(&eta, n, "eta")?;
        for (i, row) in eta.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.chart() != chart {
                    return Err(Error::ChartMismatch {
                        left_m: chart.m(),
                        left_n: chart.n(),
                        right_m: f.chart().m(),
                        right_n: f.chart().n(),
                    });
                }
                check_base_form(f, 1, &format!("eta[{}][{}]", i + 1, j + 1))?;
            }
        }
        for i in 0..n {
            for j in i..n {
                let sum = &eta[i][j] + &eta[j][i];
                if !sum.is_zero() {
                    return Err(Error::NotSkew {
                        what: "eta",
                        i: i + 1,
                        j: j + 1,
                        detail: format!("eta[{0}][{1}] + eta[{1}][{0}] = {sum}", i + 1, j + 1),
                    });
                }
            }
        }
        Ok(ConnectionMatrix { eta })
    }

    pub fn new_unchecked(eta: Vec<Vec<Form>>) -> Self {
        ConnectionMatrix { eta }
    }

    pub fn zero(chart: ChartSpec) -> Self {
        let n = chart.n();
        ConnectionMatrix {
            eta: vec![vec![Form::zero(chart); n]; n],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Form {
        &self.eta[i][j]
    }

    pub fn entries(&self) -> &[Vec<Form>] {
        &self.eta
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn partial_t(&self) -> ConnectionMatrix {
        ConnectionMatrix {
            eta: self
                .eta
                .iter()
                .map(|row| row.iter().map(Form::partial_t).collect())
                .collect(),
        }
    }
}

fn check_square<T>(rows: &[Vec<T>], n: usize, what: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema(format!("{what} must be a {n}x{n} matrix")));
    }
    Ok(())
}

/// Checks that `f` is a homogeneous base form of the given degree: only dx
/// generators, no fiber factor, no Gaussian weight, no y or s dependence.
pub fn check_base_form(f: &Form, degree: u32, what: &str) -> Result<()> {
    let chart = f.chart();
    for (k, s) in f.terms() {
        let reason = if k.fiber != 0 {
            Some("has a fiber factor".to_string())
        } else if k.gauss != 0 {
            Some("has a Gaussian weight".to_string())
        } else if k.one_forms & !chart.dx_mask() != 0 {
            Some("contains dy".to_string())
        } else if k.form_degree() != degree {
            Some(format!("has a term of degree {}", k.form_degree()))
        } else if s.depends_on(|v| matches!(v, Variable::Y(_))) {
            Some("depends on fiber coordinates".to_string())
        } else if s.has_s() {
            Some("depends on s".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(Error::NotBaseForm {
                what: what.to_string(),
                reason,
            });
        }
        chart.check_scalar(s)?;
    }
    Ok(())
}

/// Validates that `omega` is a closed base 2-form.
pub fn check_omega(omega: &Form) -> Result<()> {
    check_base_form(omega, 2, "omega")?;
    check_closed(omega)
}

/// Validates `d(omega) = 0` only; `omega` may live on the total space.
pub fn check_closed(omega: &Form) -> Result<()> {
    match omega.exterior_d().first_term() {
        None => Ok(()),
        Some((term, coeff)) => Err(Error::NotClosed {
            term: format!("({coeff}) {term}"),
        }),
    }
}

pub fn pair_wedge(p: &ConePair, q: &ConePair) -> Result<ConePair> {
    if p.chart() != q.chart() {
        let (l, r) = (p.chart(), q.chart());
        return Err(Error::ChartMismatch {
            left_m: l.m(),
            left_n: l.n(),
            right_m: r.m(),
            right_n: r.n(),
        });
    }
    Ok(pair_wedge_unchecked(p, q))
}

pub(crate) fn pair_wedge_unchecked(p: &ConePair, q: &ConePair) -> ConePair {
    let first = p.first.wedge(&q.first);
    let mut second = p.second.wedge(&q.first);
    if !q.second.is_zero() {
        second += &p.first.total_parity_flip().wedge(&q.second);
    }
    ConePair { first, second }
}

/// `d^ω (α, β) = (dα + ω∧β, -dβ)` for a closed base 2-form `ω`.
pub fn cone_d(p: &ConePair, omega: &Form) -> Result<ConePair> {
    check_omega(omega)?;
    Ok(cone_d_unchecked(p, omega))
}

/// Same formula, no validation of `omega`. Used for total-space 2-forms and
/// negative controls.
pub fn cone_d_unchecked(p: &ConePair, omega: &Form) -> ConePair {
    let mut first = p.first.exterior_d();
    first += &omega.wedge(&p.second);
    ConePair {
        first,
        second: -p.second.exterior_d(),
    }
}

/// Replaces each fiber generator `e_k` by `Σ_l c[l][k] ⊗ e_l`, summed over
/// positions. `c` entries carry no fiber factor. With `graded`, the
/// replacement is wedged from the right of the form part with the sign
/// `(-1)^{deg}` of that form part.
fn fiber_derivation(a: &Form, c: &[Vec<Form>], graded: bool) -> Form {
    let chart = a.chart();
    let n = chart.n();
    let mut out = Form::zero(chart);
    for (key, p) in a.terms() {
        if key.fiber == 0 {
            continue;
        }
        let head = Form::term(chart, FormTerm { fiber: 0, ..*key }, p.clone());
        let outer = if graded && key.form_degree() % 2 == 1 {
            -1
        } else {
            1
        };
        let mut pos = 0u32;
        for k in 0..n {
            let bit_k = 1u64 << k;
            if key.fiber & bit_k == 0 {
                continue;
            }
            let rest = key.fiber & !bit_k;
            let move_out = if pos.is_multiple_of(2) { 1 } else { -1 };
            pos += 1;
            for (l, row) in c.iter().enumerate() {
                let entry = &row[k];
                if entry.is_zero() {
                    continue;
                }
                let bit_l = 1u64 << l;
                let move_in = merge_sign(bit_l, rest);
                if move_in == 0 {
                    continue;
                }
                let mut prod = head.wedge(entry).tensor_fiber(rest | bit_l);
                if outer * move_out * move_in < 0 {
                    prod = -prod;
                }
                out += &prod;
            }
        }
    }
    out
}

/// The derivation `Φ^Λ` induced by `Φ` on the fiber factor.
pub fn phi_lambda(phi: &EndomorphismField, a: &Form) -> Form {
    fiber_derivation(a, &phi.as_forms(a.chart()), false)
}

/// Covariant derivative on `Λ*E`-valued forms:
/// `∇(α ⊗ e_J) = dα ⊗ e_J + (-1)^{deg α} α ∧ ∇(e_J)`.
pub fn nabla_tilde(eta: &ConnectionMatrix, a: &Form) -> Form {
    let mut out = a.exterior_d();
    out += &fiber_derivation(a, &eta.eta, true);
    out
}

/// `𝔸(α, β) = (∇α + ω∧β, Φ^Λ α - ∇β)`.
pub fn cone_covariant(
    eta: &ConnectionMatrix,
    phi: &EndomorphismField,
    omega: &Form,
    p: &ConePair,
) -> Result<ConePair> {
    check_omega(omega)?;
    Ok(cone_covariant_unchecked(eta, phi, omega, p))
}

pub fn cone_covariant_unchecked(
    eta: &ConnectionMatrix,
    phi: &EndomorphismField,
    omega: &Form,
    p: &ConePair,
) -> ConePair {
    let mut first = nabla_tilde(eta, &p.first);
    first += &omega.wedge(&p.second);
    let mut second = phi_lambda(phi, &p.first);
    second -= &nabla_tilde(eta, &p.second);
    ConePair { first, second }
}

/// `v⌟(α, β) = (v⌟α, -v⌟β)`.
pub fn pair_contract_v(p: &ConePair) -> ConePair {
    ConePair {
        first: p.first.contract_v(),
        second: -p.second.contract_v(),
    }
}

pub fn pair_berezin(p: &ConePair) -> ConePair {
    p.map(Form::berezin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_int;

    fn chart(m: usize, n: usize) -> ChartSpec {
        ChartSpec::new(m, n).unwrap()
    }

    fn x(i: u16) -> Scalar {
        Scalar::var(Variable::X(i))
    }

    fn y(j: u16) -> Scalar {
        Scalar::var(Variable::Y(j))
    }

    fn sample_pair(c: ChartSpec) -> ConePair {
        let a = &Form::dx(c, 1).wedge(&Form::e(c, 1)).mul_scalar(&x(2))
            + &Form::e(c, 2).mul_scalar(&y(1));
        let b = &Form::gaussian(c, 1).wedge(&Form::e(c, 1)).mul_scalar(&x(1))
            + &Form::dy(c, 2).mul_scalar(&y(2));
        ConePair::new(a, b).unwrap()
    }

    fn rotation_phi(c: ChartSpec, coeff: Scalar) -> EndomorphismField {
        let z = Scalar::zero();
        EndomorphismField::new(c, vec![vec![z.clone(), -coeff.clone()], vec![coeff, z]]).unwrap()
    }

    fn simple_eta(c: ChartSpec) -> ConnectionMatrix {
        let f = Form::dx(c, 1).mul_scalar(&x(2));
        let z = Form::zero(c);
        ConnectionMatrix::new(c, vec![vec![z.clone(), -&f], vec![f, z]]).unwrap()
    }

    #[test]
    fn unit_of_pair_algebra() {
        let c = chart(2, 2);
        let p = sample_pair(c);
        assert_eq!(pair_wedge(&ConePair::one(c), &p).unwrap(), p);
        assert_eq!(pair_wedge(&p, &ConePair::one(c)).unwrap(), p);
    }

    #[test]
    fn second_components_never_multiply() {
        let c = chart(1, 1);
        let z1 = ConePair::from_second(Form::one(c));
        assert!(pair_wedge(&z1, &z1).unwrap().is_zero());
    }

    #[test]
    fn scalar_times_second_slot() {
        let c = chart(0, 1);
        let p = ConePair::from_first(Form::scalar(c, y(1)));
        let q = ConePair::from_second(Form::one(c));
        let expect = ConePair::from_second(Form::scalar(c, y(1)));
        assert_eq!(pair_wedge(&p, &q).unwrap(), expect);
    }

    #[test]
    fn cone_d_of_zero_one_is_omega() {
        let c = chart(2, 1);
        let omega = Form::dx(c, 1).wedge(&Form::dx(c, 2));
        let p = ConePair::from_second(Form::one(c));
        assert_eq!(cone_d(&p, &omega).unwrap(), ConePair::from_first(omega));
    }

    #[test]
    fn cone_d_is_nilpotent() {
        let c = chart(2, 2);
        let omega = Form::dx(c, 1).wedge(&Form::dx(c, 2)).mul_scalar(&x(1));
        let p = sample_pair(c);
        let dd = cone_d(&cone_d(&p, &omega).unwrap(), &omega).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn cone_d_rejects_bad_omega() {
        let c = chart(3, 1);
        let not_closed = Form::dx(c, 1).wedge(&Form::dx(c, 2)).mul_scalar(&x(3));
        let p = ConePair::zero(c);
        assert!(matches!(
            cone_d(&p, &not_closed),
            Err(Error::NotClosed { .. })
        ));
        let fiber = Form::dy(c, 1).wedge(&Form::dx(c, 1));
        assert!(matches!(cone_d(&p, &fiber), Err(Error::NotBaseForm { .. })));
        let one_form = Form::dx(c, 1);
        assert!(cone_d(&p, &one_form).is_err());
    }

    #[test]
    fn phi_lambda_examples() {
        let c = chart(1, 2);
        let coeff = Scalar::integer(3);
        let phi = rotation_phi(c, coeff.clone());
        assert!(phi_lambda(&phi, &Form::scalar(c, x(1))).is_zero());
        assert_eq!(
            phi_lambda(&phi, &Form::e(c, 1)),
            Form::e(c, 2).mul_scalar(&coeff)
        );
        let top = Form::e(c, 1).wedge(&Form::e(c, 2));
        assert!(phi_lambda(&phi, &top).is_zero());
    }

    #[test]
    fn non_skew_phi_is_rejected() {
        let c = chart(1, 2);
        let bad = vec![
            vec![Scalar::zero(), Scalar::integer(1)],
            vec![Scalar::integer(1), Scalar::zero()],
        ];
        let err = EndomorphismField::new(c, bad).unwrap_err();
        assert!(matches!(
            err,
            Error::NotSkew {
                what: "phi",
                i: 1,
                j: 2,
                ..
            }
        ));
    }

    #[test]
    fn y_dependent_eta_is_rejected() {
        let c = chart(1, 2);
        let f = Form::dx(c, 1).mul_scalar(&y(1));
        let z = Form::zero(c);
        let err = ConnectionMatrix::new(c, vec![vec![z.clone(), -&f], vec![f, z]]).unwrap_err();
        assert!(matches!(err, Error::NotBaseForm { .. }));
    }

    #[test]
    fn nabla_with_zero_connection_is_d() {
        let c = chart(2, 2);
        let a = sample_pair(c).first;
        assert_eq!(nabla_tilde(&ConnectionMatrix::zero(c), &a), a.exterior_d());
    }

    #[test]
    fn nabla_of_frame_and_its_square() {
        let c = chart(2, 2);
        let eta = simple_eta(c);
        for j in 1..=2 {
            let mut expect = Form::zero(c);
            for i in 1..=2 {
                expect += &eta.entry(i - 1, j - 1).tensor_fiber(1 << (i - 1));
            }
            let first = nabla_tilde(&eta, &Form::e(c, j));
            assert_eq!(first, expect);

            let mut curvature = Form::zero(c);
            for i in 1..=2 {
                let mut r = eta.entry(i - 1, j - 1).exterior_d();
                for k in 0..2 {
                    r += &eta.entry(i - 1, k).wedge(eta.entry(k, j - 1));
                }
                curvature += &r.tensor_fiber(1 << (i - 1));
            }
            assert_eq!(nabla_tilde(&eta, &first), curvature);
        }
    }

    #[test]
    fn covariant_on_frame_pairs() {
        let c = chart(2, 2);
        let eta = simple_eta(c);
        let phi = rotation_phi(c, x(1));
        let omega = Form::dx(c, 1).wedge(&Form::dx(c, 2));
        for j in 1..=2 {
            let ej = Form::e(c, j);
            let got =
                cone_covariant(&eta, &phi, &omega, &ConePair::from_first(ej.clone())).unwrap();
            let mut first = Form::zero(c);
            let mut second = Form::zero(c);
            for i in 1..=2 {
                first += &eta.entry(i - 1, j - 1).tensor_fiber(1 << (i - 1));
                second += &Form::e(c, i).mul_scalar(phi.entry(i - 1, j - 1));
            }
            assert_eq!(got, ConePair::new(first.clone(), second).unwrap());

            let got =
                cone_covariant(&eta, &phi, &omega, &ConePair::from_second(ej.clone())).unwrap();
            assert_eq!(got, ConePair::new(omega.wedge(&ej), -first).unwrap());
        }
    }

    #[test]
    fn trivial_covariant_reduces_to_cone_d() {
        let c = chart(2, 2);
        let p = sample_pair(c);
        let zero = Form::zero(c);
        let got = cone_covariant(
            &ConnectionMatrix::zero(c),
            &EndomorphismField::zero(c),
            &zero,
            &p,
        )
        .unwrap();
        assert_eq!(got, cone_d(&p, &zero).unwrap());
    }

    #[test]
    fn pair_contraction_signs() {
        let c = chart(0, 1);
        let p = ConePair::from_first(Form::e(c, 1));
        assert_eq!(
            pair_contract_v(&p),
            ConePair::from_first(Form::scalar(c, y(1)))
        );
        let q = ConePair::from_second(Form::e(c, 1));
        assert_eq!(
            pair_contract_v(&q),
            ConePair::from_second(Form::scalar(c, -y(1)))
        );
        let c2 = chart(2, 2);
        assert!(pair_contract_v(&pair_contract_v(&sample_pair(c2))).is_zero());
    }

    #[test]
    fn pair_berezin_extracts_top() {
        let c = chart(1, 2);
        let alpha = Form::dx(c, 1).mul_scalar(&x(1));
        let p = ConePair::from_first(alpha.tensor_fiber(c.top_fiber()));
        assert_eq!(pair_berezin(&p), ConePair::from_first(alpha));
        assert!(pair_berezin(&sample_pair(c)).is_zero());
    }

    #[test]
    fn berezin_commutes_with_covariant_for_base_pair() {
        let c = chart(2, 2);
        let eta = simple_eta(c);
        let phi = rotation_phi(c, x(2));
        let omega = Form::dx(c, 1)
            .wedge(&Form::dx(c, 2))
            .scale(&rational_int(2));
        let top = c.top_fiber();
        let alpha = &Form::scalar(c, x(1)).tensor_fiber(top) + &Form::dx(c, 2).tensor_fiber(1);
        let beta = Form::dx(c, 1).mul_scalar(&x(2)).tensor_fiber(top);
        let p = ConePair::new(alpha, beta).unwrap();
        let lhs = cone_d(&pair_berezin(&p), &omega).unwrap();
        let rhs = pair_berezin(&cone_covariant(&eta, &phi, &omega, &p).unwrap());
        assert_eq!(lhs, rhs);
    }
}
