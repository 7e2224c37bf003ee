//! Named check suites over instances, single or batched.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::classical::check_classical_compare;
use crate::cone::{
    cone_covariant_unchecked, cone_d_unchecked, pair_berezin, pair_contract_v,
    pair_wedge_unchecked, phi_lambda, ConePair,
};
use crate::error::{Error, Result};
use crate::form::{ChartSpec, Form};
use crate::instance::{check_rng, random_form, random_pair, FormSpec};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::{Scalar, Variable};
use crate::thom::{
    base_berezin_residual, berezin_commutation_residual, check_bianchi, check_closed, check_fiber,
    check_transgression, rho_residual, ConnectionData,
};

/// Random pairs drawn per instance by the randomized suites.
pub const PAIRS_PER_INSTANCE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    Bianchi,
    Closed,
    Fiber,
    BerezinCommute,
    ConePairLaws,
    Transgression,
    Rho,
    ClassicalCompare,
    All,
}

impl CheckName {
    /// The checks run by `all`.
    pub const SUITE: [CheckName; 7] = [
        CheckName::Bianchi,
        CheckName::Closed,
        CheckName::Fiber,
        CheckName::BerezinCommute,
        CheckName::ConePairLaws,
        CheckName::Transgression,
        CheckName::Rho,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Bianchi => "bianchi",
            CheckName::Closed => "closed",
            CheckName::Fiber => "fiber",
            CheckName::BerezinCommute => "berezin-commute",
            CheckName::ConePairLaws => "cone-pair-laws",
            CheckName::Transgression => "transgression",
            CheckName::Rho => "rho",
            CheckName::ClassicalCompare => "classical-compare",
            CheckName::All => "all",
        }
    }

    pub fn expand(self) -> Vec<CheckName> {
        match self {
            CheckName::All => Self::SUITE.to_vec(),
            other => vec![other],
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::SUITE
            .iter()
            .chain(&[CheckName::ClassicalCompare, CheckName::All])
            .find(|c| c.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// Berezin commutation on base pairs and the total-space commutation on pairs with
/// Gaussian weights.
pub fn check_berezin_commute(data: &ConnectionData) -> VerificationReport {
    let fp = data.fingerprint();
    let mut report = ReportBuilder::new("berezin-commute", fp.as_str());
    let mut rng = check_rng(&fp, 0xB3);
    let chart = data.chart;
    for _ in 0..PAIRS_PER_INSTANCE {
        let p = random_pair(&mut rng, chart, &FormSpec::base());
        report.assert_zero_pair("base pair", &base_berezin_residual(data, &p));
        let q = random_pair(&mut rng, chart, &FormSpec::total());
        report.assert_zero_pair("total-space pair", &berezin_commutation_residual(data, &q));
        report.bump("pairs", 2);
    }
    report.finish()
}

/// `(𝔸 + v⌟)` on the instance.
fn twisted_operator(data: &ConnectionData, p: &ConePair) -> ConePair {
    let mut out = cone_covariant_unchecked(&data.eta, &data.phi, &data.omega, p);
    out += &pair_contract_v(p);
    out
}

/// `(-1)^{total parity}` applied termwise to both slots of a pair; the pair
/// `(α, β)` has parity that of `α`, and of `β` plus one.
fn pair_parity_flip(p: &ConePair) -> ConePair {
    let flip = |f: &Form, shift: u32| {
        let mut out = Form::zero(f.chart());
        for (k, s) in f.terms() {
            let c = if (k.parity() + shift) % 2 == 1 {
                -s
            } else {
                s.clone()
            };
            out.add_term(*k, &c);
        }
        out
    };
    ConePair {
        first: flip(&p.first, 0),
        second: flip(&p.second, 1),
    }
}

/// Graded Leibniz residual `D(p∧q) - Dp∧q - p̂∧Dq` for an odd operator `D`.
fn leibniz_residual(d: impl Fn(&ConePair) -> ConePair, p: &ConePair, q: &ConePair) -> ConePair {
    let lhs = d(&pair_wedge_unchecked(p, q));
    let mut rhs = pair_wedge_unchecked(&d(p), q);
    rhs += &pair_wedge_unchecked(&pair_parity_flip(p), &d(q));
    &lhs - &rhs
}

/// Algebraic laws of the pair structure on random pairs: unit and
/// associativity of the product, `d^ω ∘ d^ω = 0`, the Leibniz rule for
/// `d^ω` and `𝔸 + v⌟`, nilpotency of `v⌟`, `Φ^Λ` as a derivation and
/// `∫^B Φ^Λ = 0`.
pub fn check_cone_pair_laws(data: &ConnectionData) -> VerificationReport {
    let fp = data.fingerprint();
    let mut report = ReportBuilder::new("cone-pair-laws", fp.as_str());
    let mut rng = check_rng(&fp, 0xC0);
    let chart = data.chart;
    let omega = &data.omega;
    for _ in 0..PAIRS_PER_INSTANCE {
        let spec = FormSpec::total();
        let p = random_pair(&mut rng, chart, &spec);
        let q = random_pair(&mut rng, chart, &spec);
        let r = random_pair(&mut rng, chart, &spec);
        let one = ConePair::one(chart);
        report.assert_zero_pair("(1,0) unit", &(&pair_wedge_unchecked(&one, &p) - &p));
        report.assert_zero_pair("unit on the right", &(&pair_wedge_unchecked(&p, &one) - &p));
        let left = pair_wedge_unchecked(&pair_wedge_unchecked(&p, &q), &r);
        let right = pair_wedge_unchecked(&p, &pair_wedge_unchecked(&q, &r));
        report.assert_zero_pair("associativity", &(&left - &right));
        let dd = cone_d_unchecked(&cone_d_unchecked(&p, omega), omega);
        report.assert_zero_pair("d^omega d^omega", &dd);
        report.assert_zero_pair(
            "d^omega Leibniz",
            &leibniz_residual(|x| cone_d_unchecked(x, omega), &p, &q),
        );
        report.assert_zero_pair(
            "(A + v-contract) Leibniz",
            &leibniz_residual(|x| twisted_operator(data, x), &p, &q),
        );
        report.assert_zero_pair(
            "v-contract nilpotent",
            &pair_contract_v(&pair_contract_v(&p)),
        );
        let a = random_form(&mut rng, chart, &spec);
        let b = random_form(&mut rng, chart, &spec);
        let derivation = &phi_lambda(&data.phi, &a.wedge(&b))
            - &(&phi_lambda(&data.phi, &a).wedge(&b) + &a.wedge(&phi_lambda(&data.phi, &b)));
        report.assert_zero_form("Phi derivation", &derivation);
        report.assert_zero_form("Berezin of Phi", &phi_lambda(&data.phi, &a).berezin());
        report.bump("pairs", 3);
    }
    let pb = pair_berezin(&ConePair::zero(chart));
    report.assert_zero_pair("Berezin of zero", &pb);
    report.finish()
}

/// The 1-forms `μ` used by the conjugation check: `x1 dx2` when the base
/// allows it, `y1 dy1`, and a random total-space 1-form.
pub fn rho_test_forms<R: Rng>(rng: &mut R, chart: ChartSpec) -> Vec<Form> {
    let mut out = Vec::new();
    if chart.m() >= 2 {
        out.push(Form::dx(chart, 2).mul_scalar(&Scalar::var(Variable::X(1))));
    }
    out.push(Form::dy(chart, 1).mul_scalar(&Scalar::var(Variable::Y(1))));
    let spec = FormSpec {
        fiber: false,
        max_gauss: 0,
        ..FormSpec::total()
    };
    let random = random_form(rng, chart, &spec).filter(|k| k.form_degree() == 1);
    out.push(random);
    out
}

/// `d^ω ϱ = ϱ d^{ω + dμ}` for several `μ` on random pairs.
pub fn check_rho(data: &ConnectionData) -> VerificationReport {
    let fp = data.fingerprint();
    let mut report = ReportBuilder::new("rho", fp.as_str());
    let mut rng = check_rng(&fp, 0x70);
    let chart = data.chart;
    for mu in rho_test_forms(&mut rng, chart) {
        for _ in 0..PAIRS_PER_INSTANCE {
            let p = random_pair(&mut rng, chart, &FormSpec::total());
            report.assert_zero_pair(
                "d^omega rho = rho d^(omega + d mu)",
                &rho_residual(&mu, &p, &data.omega),
            );
            report.bump("pairs", 1);
        }
    }
    report.finish()
}

pub fn run_check(name: CheckName, data: &ConnectionData) -> Vec<VerificationReport> {
    name.expand()
        .into_iter()
        .map(|c| match c {
            CheckName::Bianchi => check_bianchi(data),
            CheckName::Closed => check_closed(data),
            CheckName::Fiber => check_fiber(data),
            CheckName::BerezinCommute => check_berezin_commute(data),
            CheckName::ConePairLaws => check_cone_pair_laws(data),
            CheckName::Transgression => check_transgression(data),
            CheckName::Rho => check_rho(data),
            CheckName::ClassicalCompare => check_classical_compare(data),
            CheckName::All => unreachable!("expanded above"),
        })
        .collect()
}

/// Runs `name` on every instance in parallel. Reports are ordered by
/// instance fingerprint, then by check order within the suite.
pub fn run_batch(name: CheckName, instances: &[ConnectionData]) -> Vec<VerificationReport> {
    let mut per_instance: Vec<(String, Vec<VerificationReport>)> = instances
        .par_iter()
        .map(|d| (d.fingerprint(), run_check(name, d)))
        .collect();
    per_instance.sort_by(|a, b| a.0.cmp(&b.0));
    per_instance.into_iter().flat_map(|(_, r)| r).collect()
}
