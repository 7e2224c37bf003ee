//! JSON-compatible encodings of scalars, forms and pairs.
//!
//! * rational: `"p/q"`
//! * monomial: `{"x1": 2, "s": -3}`
//! * scalar: `[{"mono": {...}, "coeff": "p/q"}, ...]`
//! * form: `[{"gauss": 0, "d": ["dx1", "dy2"], "e": ["e1"], "coeff": scalar}, ...]`
//! * pair: `{"first": form, "second": form}`
//!
//! Generator lists may be given in any order on load; they are sorted with
//! the corresponding permutation sign.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::ConePair;
use crate::error::{Error, Result};
use crate::form::{merge_sign, ChartSpec, Form, FormTerm};
use crate::scalar::{format_rational, parse_rational, Monomial, Scalar, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTermWire {
    pub mono: BTreeMap<String, i64>,
    pub coeff: String,
}

pub type ScalarWire = Vec<ScalarTermWire>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermWire {
    #[serde(default)]
    pub gauss: u32,
    #[serde(default)]
    pub d: Vec<String>,
    #[serde(default)]
    pub e: Vec<String>,
    pub coeff: ScalarWire,
}

pub type FormWire = Vec<FormTermWire>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePairWire {
    pub first: FormWire,
    pub second: FormWire,
}

pub fn scalar_to_wire(s: &Scalar) -> ScalarWire {
    s.terms()
        .map(|(m, c)| {
            let mut mono: BTreeMap<String, i64> = m
                .variables()
                .map(|(v, e)| (v.to_string(), e as i64))
                .collect();
            if m.s_exponent() != 0 {
                mono.insert("s".into(), m.s_exponent() as i64);
            }
            ScalarTermWire {
                mono,
                coeff: format_rational(c),
            }
        })
        .collect()
}

pub fn scalar_from_wire(chart: ChartSpec, w: &ScalarWire) -> Result<Scalar> {
    let mut out = Scalar::zero();
    for term in w {
        let mut pairs = Vec::with_capacity(term.mono.len());
        for (name, &e) in &term.mono {
            let v: Variable = name.parse()?;
            if !chart.declares(v) {
                return Err(Error::UndeclaredVariable {
                    var: v,
                    m: chart.m(),
                    n: chart.n(),
                });
            }
            if v != Variable::S && e < 0 {
                return Err(Error::Parse(format!("negative exponent on {name}")));
            }
            let e =
                i32::try_from(e).map_err(|_| Error::Parse(format!("exponent {e} too large")))?;
            pairs.push((v, e));
        }
        out.add_term(Monomial::from_pairs(pairs), parse_rational(&term.coeff)?);
    }
    Ok(out)
}

fn names_of(mask: u64, name: impl Fn(usize) -> String) -> Vec<String> {
    (0..64).filter(|b| mask & (1 << b) != 0).map(name).collect()
}

pub fn form_to_wire(f: &Form) -> FormWire {
    let chart = f.chart();
    f.terms()
        .map(|(k, s)| FormTermWire {
            gauss: k.gauss,
            d: names_of(k.one_forms, |b| chart.one_form_name(b)),
            e: names_of(k.fiber, |b| format!("e{}", b + 1)),
            coeff: scalar_to_wire(s),
        })
        .collect()
}

/// Sorts a generator list, returning (mask, sign) or `None` on a repeat.
fn canonical_set(bits: impl IntoIterator<Item = u64>) -> Option<(u64, i32)> {
    let mut mask = 0u64;
    let mut sign = 1;
    for bit in bits {
        // appending `bit` after the current set
        let s = merge_sign(mask, bit);
        if s == 0 {
            return None;
        }
        sign *= s;
        mask |= bit;
    }
    Some((mask, sign))
}

pub fn form_from_wire(chart: ChartSpec, w: &FormWire) -> Result<Form> {
    let mut out = Form::zero(chart);
    for term in w {
        let d_bits = term
            .d
            .iter()
            .map(|n| chart.parse_one_form(n))
            .collect::<Result<Vec<_>>>()?;
        let e_bits = term
            .e
            .iter()
            .map(|n| chart.parse_fiber(n))
            .collect::<Result<Vec<_>>>()?;
        let coeff = scalar_from_wire(chart, &term.coeff)?;
        let (Some((d, sd)), Some((e, se))) = (canonical_set(d_bits), canonical_set(e_bits)) else {
            continue;
        };
        let coeff = if sd * se < 0 { -coeff } else { coeff };
        out.add_term(FormTerm::new(term.gauss, d, e), &coeff);
    }
    Ok(out)
}

pub fn pair_to_wire(p: &ConePair) -> ConePairWire {
    ConePairWire {
        first: form_to_wire(&p.first),
        second: form_to_wire(&p.second),
    }
}

pub fn pair_from_wire(chart: ChartSpec, w: &ConePairWire) -> Result<ConePair> {
    ConePair::new(
        form_from_wire(chart, &w.first)?,
        form_from_wire(chart, &w.second)?,
    )
}
