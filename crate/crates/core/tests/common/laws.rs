//! Algebraic laws as functions of a seed. Each returns a description of the
//! first violation.

#![allow(clippy::eq_op)]

use std::collections::HashMap;

use cone_thom::cone::{
    cone_covariant, cone_d, nabla_tilde, pair_contract_v, pair_wedge, phi_lambda, ConePair,
};
use cone_thom::form::{ChartSpec, Form};
use cone_thom::instance::{
    generate, random_form, random_pair, random_scalar, FormSpec, GenConfig, PolySpec,
};
use cone_thom::scalar::{Scalar, Variable};
use cone_thom::thom::{
    base_berezin_residual, berezin_commutation_residual, rho_residual, ConnectionData,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{random_rotation, rng};

pub type Law = fn(u64) -> Result<(), String>;

/// Every law with its name.
pub const ALL: &[(&str, Law)] = &[
    ("scalar ring axioms", scalar_ring),
    ("partial derivatives commute", derivatives_commute),
    (
        "numeric evaluation is a homomorphism",
        evaluation_homomorphism,
    ),
    ("wedge associativity", wedge_associative),
    ("graded commutativity", graded_commutative),
    ("d^2 = 0", d_squared),
    ("d Leibniz on scalar-valued forms", d_leibniz),
    ("nabla Leibniz", nabla_leibniz),
    ("contraction nilpotency", contraction_nilpotent),
    ("Berezin SO-frame invariance", berezin_rotation_invariant),
    ("Phi derivation", phi_derivation),
    ("Berezin kills Phi", berezin_of_phi),
    ("pair unit and associativity", pair_associative),
    ("cone d^2 = 0", cone_d_squared),
    ("cone d Leibniz", cone_d_leibniz),
    ("(A + v-contract) Leibniz", twisted_leibniz),
    ("pair contraction nilpotency", pair_contraction_nilpotent),
    ("Berezin commutation on base pairs", berezin_base),
    ("Berezin commutation on total-space pairs", berezin_total),
    ("rho conjugation", rho_conjugation),
];

fn random_shape(r: &mut ChaCha8Rng) -> ChartSpec {
    ChartSpec::new(r.random_range(0..=3), r.random_range(1..=4)).unwrap()
}

fn instance(r: &mut ChaCha8Rng) -> ConnectionData {
    let c = random_shape(r);
    generate(&GenConfig::new(c.m(), c.n(), r.random())).unwrap()
}

fn poly(max_degree: u32) -> PolySpec {
    PolySpec {
        max_degree,
        max_terms: 3,
        coeff_bound: 9,
        t_degree: 1,
        fiber: true,
    }
}

fn expect_zero(what: &str, f: &Form) -> Result<(), String> {
    match f.first_term() {
        None => Ok(()),
        Some((term, coeff)) => Err(format!("{what}: ({coeff}) {term}")),
    }
}

fn expect_zero_pair(what: &str, p: &ConePair) -> Result<(), String> {
    expect_zero(&format!("{what}, first slot"), &p.first)?;
    expect_zero(&format!("{what}, second slot"), &p.second)
}

fn expect_eq(what: &str, a: &Scalar, b: &Scalar) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

/// Termwise sign `(-1)^{form degree + fiber degree + shift}`.
fn parity_flip(f: &Form, shift: u32) -> Form {
    let mut out = Form::zero(f.chart());
    for (k, s) in f.terms() {
        let c = if (k.form_degree() + k.fiber_degree() + shift) % 2 == 1 {
            -s
        } else {
            s.clone()
        };
        out.add_term(*k, &c);
    }
    out
}

fn pair_flip(p: &ConePair) -> ConePair {
    ConePair {
        first: parity_flip(&p.first, 0),
        second: parity_flip(&p.second, 1),
    }
}

fn pw(p: &ConePair, q: &ConePair) -> ConePair {
    pair_wedge(p, q).unwrap()
}

pub fn scalar_ring(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let [a, b, d] = [(); 3].map(|_| random_scalar(&mut r, c, &poly(3)));
    expect_eq("a+b = b+a", &(&a + &b), &(&b + &a))?;
    expect_eq("ab = ba", &(&a * &b), &(&b * &a))?;
    expect_eq("(a+b)+d = a+(b+d)", &(&(&a + &b) + &d), &(&a + &(&b + &d)))?;
    expect_eq("(ab)d = a(bd)", &(&(&a * &b) * &d), &(&a * &(&b * &d)))?;
    expect_eq(
        "a(b+d) = ab+ad",
        &(&a * &(&b + &d)),
        &(&(&a * &b) + &(&a * &d)),
    )?;
    expect_eq("a - a = 0", &(&a - &a), &Scalar::zero())?;
    expect_eq("1 a = a", &(&Scalar::one() * &a), &a)
}

pub fn derivatives_commute(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let a = random_scalar(&mut r, c, &poly(4));
    let mut vars: Vec<Variable> = (1..=c.m()).map(|i| Variable::X(i as u16)).collect();
    vars.extend((1..=c.n()).map(|j| Variable::Y(j as u16)));
    vars.push(Variable::T);
    let u = vars[r.random_range(0..vars.len())];
    let v = vars[r.random_range(0..vars.len())];
    let uv = a
        .partial_derivative(v)
        .unwrap()
        .partial_derivative(u)
        .unwrap();
    let vu = a
        .partial_derivative(u)
        .unwrap()
        .partial_derivative(v)
        .unwrap();
    expect_eq(&format!("d/d{u} d/d{v}"), &uv, &vu)
}

pub fn evaluation_homomorphism(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let spec = PolySpec {
        max_degree: 3,
        max_terms: 4,
        coeff_bound: 1000,
        t_degree: 0,
        fiber: true,
    };
    let a = random_scalar(&mut r, c, &spec);
    let b = random_scalar(&mut r, c, &spec);
    let mut point = HashMap::new();
    for i in 1..=c.m() {
        point.insert(Variable::X(i as u16), r.random_range(-1.5..1.5));
    }
    for j in 1..=c.n() {
        point.insert(Variable::Y(j as u16), r.random_range(-1.5..1.5));
    }
    point.insert(Variable::T, r.random_range(-1.5..1.5));
    let s = (2.0 * std::f64::consts::PI).sqrt();
    let ev = |x: &Scalar| x.evaluate_numeric(&point, s).unwrap();
    let (va, vb) = (ev(&a), ev(&b));
    for (what, exact, numeric) in [
        ("sum", ev(&(&a + &b)), va + vb),
        ("product", ev(&(&a * &b)), va * vb),
    ] {
        if (exact - numeric).abs() > 1e-9 * exact.abs().max(1.0) {
            return Err(format!("{what}: {exact} vs {numeric}"));
        }
    }
    Ok(())
}

pub fn wedge_associative(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let [a, b, d] = [(); 3].map(|_| random_form(&mut r, c, &FormSpec::total()));
    let lhs = a.wedge(&b).wedge(&d);
    let rhs = a.wedge(&b.wedge(&d));
    expect_zero("(a^b)^d - a^(b^d)", &(&lhs - &rhs))
}

pub fn graded_commutative(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let spec = FormSpec {
        max_form_terms: 1,
        ..FormSpec::total()
    };
    let a = random_form(&mut r, c, &spec);
    let b = random_form(&mut r, c, &spec);
    let (Some((ka, _)), Some((kb, _))) = (a.terms().next(), b.terms().next()) else {
        return Ok(());
    };
    let sign = if ka.parity() * kb.parity() == 1 {
        -1
    } else {
        1
    };
    let lhs = a.wedge(&b);
    let rhs = b.wedge(&a).scale(&cone_thom::scalar::rational_int(sign));
    expect_zero("a^b - (-1)^{p(a)p(b)} b^a", &(&lhs - &rhs))
}

pub fn d_squared(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let a = random_form(&mut r, c, &FormSpec::total());
    expect_zero("d(d a)", &a.exterior_d().exterior_d())
}

pub fn d_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let spec = FormSpec {
        fiber: false,
        ..FormSpec::total()
    };
    let a = random_form(&mut r, c, &spec);
    let b = random_form(&mut r, c, &spec);
    let lhs = a.wedge(&b).exterior_d();
    let rhs = &a.exterior_d().wedge(&b) + &parity_flip(&a, 0).wedge(&b.exterior_d());
    expect_zero("d(a^b) - da^b - (-1)^a a^db", &(&lhs - &rhs))
}

pub fn nabla_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let c = data.chart;
    let a = random_form(&mut r, c, &FormSpec::total());
    let b = random_form(&mut r, c, &FormSpec::total());
    let nab = |f: &Form| nabla_tilde(&data.eta, f);
    let lhs = nab(&a.wedge(&b));
    let rhs = &nab(&a).wedge(&b) + &parity_flip(&a, 0).wedge(&nab(&b));
    expect_zero("nabla(a^b) - nabla a^b - (-1)^a a^nabla b", &(&lhs - &rhs))
}

pub fn contraction_nilpotent(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let a = random_form(&mut r, c, &FormSpec::total());
    expect_zero("v-contract twice", &a.contract_v().contract_v())
}

pub fn berezin_rotation_invariant(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let a = random_form(&mut r, c, &FormSpec::total());
    let rot = random_rotation(&mut r, c.n());
    let rotated = a.frame_rotate(&rot).map_err(|e| e.to_string())?;
    expect_zero(
        "Berezin(R a) - Berezin(a)",
        &(&rotated.berezin() - &a.berezin()),
    )
}

pub fn phi_derivation(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let c = data.chart;
    let spec = FormSpec {
        dy: false,
        ..FormSpec::total()
    };
    let a = random_form(&mut r, c, &spec).filter(|k| k.form_degree() == 0);
    let b = random_form(&mut r, c, &spec).filter(|k| k.form_degree() == 0);
    let ph = |f: &Form| phi_lambda(&data.phi, f);
    let lhs = ph(&a.wedge(&b));
    let rhs = &ph(&a).wedge(&b) + &a.wedge(&ph(&b));
    expect_zero("Phi(a^b) - Phi a^b - a^Phi b", &(&lhs - &rhs))
}

pub fn berezin_of_phi(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let a = random_form(&mut r, data.chart, &FormSpec::total());
    expect_zero("Berezin(Phi a)", &phi_lambda(&data.phi, &a).berezin())
}

pub fn pair_associative(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let [p, q, s] = [(); 3].map(|_| random_pair(&mut r, c, &FormSpec::total()));
    let one = ConePair::one(c);
    expect_zero_pair("(1,0)^p - p", &(&pw(&one, &p) - &p))?;
    expect_zero_pair("p^(1,0) - p", &(&pw(&p, &one) - &p))?;
    expect_zero_pair(
        "(p^q)^s - p^(q^s)",
        &(&pw(&pw(&p, &q), &s) - &pw(&p, &pw(&q, &s))),
    )
}

pub fn cone_d_squared(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let p = random_pair(&mut r, data.chart, &FormSpec::total());
    let d = |x: &ConePair| cone_d(x, &data.omega).unwrap();
    expect_zero_pair("d^omega d^omega p", &d(&d(&p)))
}

fn leibniz(op: impl Fn(&ConePair) -> ConePair, p: &ConePair, q: &ConePair) -> ConePair {
    let lhs = op(&pw(p, q));
    let mut rhs = pw(&op(p), q);
    rhs += &pw(&pair_flip(p), &op(q));
    &lhs - &rhs
}

pub fn cone_d_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let [p, q] = [(); 2].map(|_| random_pair(&mut r, data.chart, &FormSpec::total()));
    let res = leibniz(|x| cone_d(x, &data.omega).unwrap(), &p, &q);
    expect_zero_pair("d^omega(p^q) - d^omega p^q - p^ ^ d^omega q", &res)
}

pub fn twisted_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let [p, q] = [(); 2].map(|_| random_pair(&mut r, data.chart, &FormSpec::total()));
    let op = |x: &ConePair| {
        let mut out = cone_covariant(&data.eta, &data.phi, &data.omega, x).unwrap();
        out += &pair_contract_v(x);
        out
    };
    expect_zero_pair("(A + v-contract) Leibniz", &leibniz(op, &p, &q))
}

pub fn pair_contraction_nilpotent(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_shape(&mut r);
    let p = random_pair(&mut r, c, &FormSpec::total());
    expect_zero_pair("v-contract twice", &pair_contract_v(&pair_contract_v(&p)))
}

pub fn berezin_base(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let p = random_pair(&mut r, data.chart, &FormSpec::base());
    expect_zero_pair(
        "d^omega Berezin p - Berezin A p",
        &base_berezin_residual(&data, &p),
    )
}

pub fn berezin_total(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let p = random_pair(&mut r, data.chart, &FormSpec::total());
    let res = berezin_commutation_residual(&data, &p);
    expect_zero_pair("d^omega Berezin p - Berezin (A + v-contract) p", &res)
}

pub fn rho_conjugation(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let data = instance(&mut r);
    let c = data.chart;
    let spec = FormSpec {
        fiber: false,
        max_gauss: 0,
        ..FormSpec::total()
    };
    let mu = random_form(&mut r, c, &spec).filter(|k| k.form_degree() == 1);
    let p = random_pair(&mut r, c, &FormSpec::total());
    expect_zero_pair(
        "d^omega rho - rho d^(omega + d mu)",
        &rho_residual(&mu, &p, &data.omega),
    )
}
